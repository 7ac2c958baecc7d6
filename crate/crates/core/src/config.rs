//! The embedded-curve data model.
//!
//! A configuration records a union of simple closed curves on an ambient
//! surface as a signed combinatorial map: curves visit crossings (and
//! basepoints) in cyclic order, every arc between consecutive visits carries
//! a band-twist sign, and the complementary faces of the thickened union are
//! filled by named regions carrying surface types.
//!
//! The local picture at a crossing is fixed: the two strands interleave
//! strictly, and the rotation reads (first-in, second-in, first-out,
//! second-out) counterclockwise. All remaining embedding freedom lives in
//! the arc signs; flipping the local orientation at a vertex is a gauge move
//! that swaps the crossing's strand order and negates the incident signs.

use crate::surface::SurfaceInvariants;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type CurveIdx = usize;
pub type VertexIdx = usize;
pub type ArcIdx = usize;
pub type FaceIdx = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("crossing `{name}` must be visited exactly once by each of its two curves")]
    CrossingArity { name: String },
    #[error("curve `{0}` has no visits")]
    EmptyCurve(String),
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VisitRef {
    Crossing(usize),
    Basepoint(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    /// Cyclic visit list; arc i runs from visit i to visit i+1 (mod n).
    pub visits: Vec<VisitRef>,
    /// Band-twist sign per arc, +1 or -1, aligned with `visits`.
    pub signs: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub name: String,
    /// Strand order fixing the local rotation (first-in, second-in,
    /// first-out, second-out).
    pub first: CurveIdx,
    pub second: CurveIdx,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basepoint {
    pub name: String,
    pub curve: CurveIdx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AttachFlag {
    Match,
    Reverse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub name: String,
    pub surface: SurfaceInvariants,
    /// Canonical face ids this region is glued to.
    pub faces: Vec<FaceIdx>,
    /// Orientation flag per glued face, parallel to `faces`.
    pub attach: Vec<AttachFlag>,
    /// How many of this region's boundary circles are ambient boundary.
    pub boundary_collar: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub ambient: SurfaceInvariants,
    pub curves: Vec<Curve>,
    pub crossings: Vec<Crossing>,
    pub basepoints: Vec<Basepoint>,
    pub regions: Vec<Region>,
}

impl Config {
    pub fn curve_index(&self, name: &str) -> Result<CurveIdx, ConfigError> {
        self.curves
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| ConfigError::UnknownCurve(name.to_string()))
    }

    pub fn curve_name(&self, idx: CurveIdx) -> &str {
        &self.curves[idx].name
    }

    /// Vertex index of a visit: crossings first, then basepoints.
    pub fn vertex_of(&self, v: VisitRef) -> VertexIdx {
        match v {
            VisitRef::Crossing(i) => i,
            VisitRef::Basepoint(j) => self.crossings.len() + j,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.crossings.len() + self.basepoints.len()
    }

    /// Total number of arcs over all curves.
    pub fn n_arcs(&self) -> usize {
        self.curves.iter().map(|c| c.visits.len()).sum()
    }

    /// Sign product along a curve; -1 means one-sided.
    pub fn sign_product(&self, curve: CurveIdx) -> i8 {
        self.curves[curve].signs.iter().product()
    }

    /// Number of crossings shared by two distinct curves.
    pub fn crossing_count(&self, a: CurveIdx, b: CurveIdx) -> usize {
        self.crossings
            .iter()
            .filter(|x| (x.first == a && x.second == b) || (x.first == b && x.second == a))
            .count()
    }
}

/// What sits at a vertex of a signed map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    /// Transverse crossing of two strands with the fixed interleaved
    /// rotation; the payload orders the strands.
    Crossing { first: usize, second: usize },
    /// Marked point of degree two on a single strand.
    Degree2,
}

/// A signed rotation system. Darts are arc ends: dart 2a is the tail of arc
/// a (start of the arc in curve direction), dart 2a+1 its head.
#[derive(Debug, Clone)]
pub struct Map {
    pub n_vertices: usize,
    /// (curve, position) label per arc, for reporting.
    pub arc_curve: Vec<usize>,
    pub arc_pos: Vec<usize>,
    pub arc_sign: Vec<i8>,
    /// First arc index of each curve.
    pub arc_base: Vec<usize>,
    /// Counterclockwise dart order per vertex.
    pub rotations: Vec<Vec<usize>>,
    pub dart_vertex: Vec<usize>,
    pub dart_rotpos: Vec<usize>,
}

impl Map {
    /// Build a map from closed curve walks. `walks[c]` lists the vertices
    /// visited by curve c together with the arc signs; `kinds[v]` fixes the
    /// rotation at each vertex. Every `Crossing` vertex must be visited
    /// exactly once by each of its two strands.
    pub fn build(
        walks: &[(Vec<VertexIdx>, Vec<i8>)],
        kinds: &[VertexKind],
    ) -> Result<Map, ConfigError> {
        let n_vertices = kinds.len();
        let mut arc_curve = Vec::new();
        let mut arc_pos = Vec::new();
        let mut arc_sign = Vec::new();
        let mut arc_base = Vec::with_capacity(walks.len());
        // (in_dart, out_dart) per (vertex, curve) incidence
        let mut incidences: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n_vertices];

        for (c, (visits, signs)) in walks.iter().enumerate() {
            arc_base.push(arc_curve.len());
            if visits.is_empty() {
                return Err(ConfigError::EmptyCurve(format!("curve #{c}")));
            }
            debug_assert_eq!(visits.len(), signs.len());
            let n = visits.len();
            let first_arc = arc_curve.len();
            for (i, &sign) in signs.iter().enumerate() {
                arc_curve.push(c);
                arc_pos.push(i);
                arc_sign.push(sign);
                let _ = i;
            }
            for i in 0..n {
                let v = visits[i];
                // dart arriving at visit i is the head of arc i-1; dart
                // leaving is the tail of arc i
                let in_arc = first_arc + (i + n - 1) % n;
                let out_arc = first_arc + i;
                incidences[v].push((c, 2 * in_arc + 1, 2 * out_arc));
            }
        }

        let n_darts = 2 * arc_curve.len();
        let mut rotations = vec![Vec::new(); n_vertices];
        for (v, kind) in kinds.iter().enumerate() {
            let inc = &incidences[v];
            match *kind {
                VertexKind::Crossing { first, second } => {
                    if inc.len() != 2 {
                        return Err(ConfigError::CrossingArity { name: format!("vertex #{v}") });
                    }
                    let a = inc.iter().find(|(c, _, _)| *c == first);
                    let b = inc.iter().find(|(c, _, _)| *c == second);
                    match (a, b) {
                        (Some(&(_, a_in, a_out)), Some(&(_, b_in, b_out))) => {
                            rotations[v] = vec![a_in, b_in, a_out, b_out];
                        }
                        _ => {
                            return Err(ConfigError::CrossingArity {
                                name: format!("vertex #{v}"),
                            })
                        }
                    }
                }
                VertexKind::Degree2 => {
                    if inc.len() != 1 {
                        return Err(ConfigError::CrossingArity { name: format!("vertex #{v}") });
                    }
                    let (_, in_dart, out_dart) = inc[0];
                    rotations[v] = vec![in_dart, out_dart];
                }
            }
        }

        let mut dart_vertex = vec![usize::MAX; n_darts];
        let mut dart_rotpos = vec![usize::MAX; n_darts];
        for (v, rot) in rotations.iter().enumerate() {
            for (p, &d) in rot.iter().enumerate() {
                dart_vertex[d] = v;
                dart_rotpos[d] = p;
            }
        }
        if dart_vertex.iter().any(|&v| v == usize::MAX) {
            return Err(ConfigError::Internal("dart without vertex".into()));
        }

        Ok(Map {
            n_vertices,
            arc_curve,
            arc_pos,
            arc_sign,
            arc_base,
            rotations,
            dart_vertex,
            dart_rotpos,
        })
    }

    /// Full map of a configuration. Requires crossing arity to hold.
    pub fn of_config(config: &Config) -> Result<Map, ConfigError> {
        // check arity up front for a named error
        for (xi, x) in config.crossings.iter().enumerate() {
            for cu in [x.first, x.second] {
                let hits = config.curves[cu]
                    .visits
                    .iter()
                    .filter(|v| **v == VisitRef::Crossing(xi))
                    .count();
                if hits != 1 {
                    return Err(ConfigError::CrossingArity { name: x.name.clone() });
                }
            }
            if x.first == x.second {
                return Err(ConfigError::CrossingArity { name: x.name.clone() });
            }
        }
        let walks: Vec<(Vec<VertexIdx>, Vec<i8>)> = config
            .curves
            .iter()
            .map(|c| (c.visits.iter().map(|&v| config.vertex_of(v)).collect(), c.signs.clone()))
            .collect();
        let mut kinds = Vec::with_capacity(config.n_vertices());
        for x in &config.crossings {
            kinds.push(VertexKind::Crossing { first: x.first, second: x.second });
        }
        for _ in &config.basepoints {
            kinds.push(VertexKind::Degree2);
        }
        Map::build(&walks, &kinds)
    }

    pub fn n_arcs(&self) -> usize {
        self.arc_curve.len()
    }

    pub fn n_darts(&self) -> usize {
        2 * self.n_arcs()
    }

    /// Other end of the same arc.
    pub fn alpha(&self, dart: usize) -> usize {
        dart ^ 1
    }

    /// Next dart around the vertex (counterclockwise when `forward`).
    pub fn sigma(&self, dart: usize, forward: bool) -> usize {
        let v = self.dart_vertex[dart];
        let rot = &self.rotations[v];
        let p = self.dart_rotpos[dart];
        let n = rot.len();
        if forward {
            rot[(p + 1) % n]
        } else {
            rot[(p + n - 1) % n]
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.n_arcs() as i64
    }

    pub fn tail_vertex(&self, arc: ArcIdx) -> usize {
        self.dart_vertex[2 * arc]
    }

    pub fn head_vertex(&self, arc: ArcIdx) -> usize {
        self.dart_vertex[2 * arc + 1]
    }

    pub fn is_loop(&self, arc: ArcIdx) -> bool {
        self.tail_vertex(arc) == self.head_vertex(arc)
    }
}
