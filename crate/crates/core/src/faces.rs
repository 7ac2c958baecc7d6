//! Boundary tracing for signed rotation systems.
//!
//! The thickened curve union is a band surface: a disc per vertex, a band
//! per arc, a half-twist in the band exactly when the arc sign is -1. Its
//! boundary circles are the faces of the map. Tracing works on states
//! (dart, o) with o in {+,-}: we have just arrived at the dart's vertex and
//! will walk the disc corner in direction o. The step is
//!
//! ```text
//! (d, o)  ->  (alpha(e), o * sign(e))    with e = sigma^o(d),
//! ```
//!
//! consuming one corner and one band side. The reverse traversal of the same
//! circle is the orbit of (sigma^o(d), -o), so faces are orbit pairs under
//! that mirror map and the degree of a face is its orbit length.

use crate::config::{ArcIdx, Map};
use crate::surface::{SurfaceError, SurfaceInvariants};
use crate::util::ParityUnionFind;

/// One band side traversed by a boundary walk. `side` is named at the arc's
/// tail: side 0 touches the counterclockwise end of the tail attachment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Segment {
    pub arc: ArcIdx,
    pub side: u8,
    pub forward: bool,
}

#[derive(Debug, Clone)]
pub struct Face {
    /// Cyclic boundary walk, rotated/oriented canonically.
    pub walk: Vec<Segment>,
    /// State at the walk start (dart and corner direction), anchoring
    /// orientation constraints for region gluing.
    pub anchor_dart: usize,
    pub anchor_neg: bool,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.walk.len()
    }

    pub fn min_side(&self) -> (ArcIdx, u8) {
        self.walk.iter().map(|s| (s.arc, s.side)).min().unwrap()
    }

    pub fn anchor_vertex(&self, map: &Map) -> usize {
        map.dart_vertex[self.anchor_dart]
    }
}

/// One step of a boundary walk: the corner walked (at `vertex`, in direction
/// `neg`) followed by the band side crossed.
#[derive(Debug, Clone, Copy)]
pub struct Transition {
    pub vertex: usize,
    pub neg: bool,
    /// The two darts flanking the corner: the dart arrived on and the dart
    /// left through.
    pub dart_in: usize,
    pub dart_out: usize,
    pub segment: Segment,
}

/// Re-trace a face's orbit from its anchor, yielding the corner/segment
/// sequence aligned with `face.walk`.
pub fn face_transitions(map: &Map, face: &Face) -> Vec<Transition> {
    let mut out = Vec::with_capacity(face.walk.len());
    let (mut d, mut neg) = (face.anchor_dart, face.anchor_neg);
    for _ in 0..face.walk.len() {
        let e = map.sigma(d, !neg);
        let (nd, nneg, seg) = state_next(map, d, neg);
        out.push(Transition {
            vertex: map.dart_vertex[d],
            neg,
            dart_in: d,
            dart_out: e,
            segment: seg,
        });
        d = nd;
        neg = nneg;
    }
    debug_assert_eq!(
        out.iter().map(|t| t.segment).collect::<Vec<_>>(),
        face.walk,
        "orbit re-trace must reproduce the stored walk"
    );
    out
}

#[derive(Debug, Clone)]
pub struct Faces {
    pub faces: Vec<Face>,
    /// face id per (arc, side)
    pub side_face: Vec<[usize; 2]>,
}

impl Faces {
    pub fn face_of(&self, arc: ArcIdx, side: u8) -> usize {
        self.side_face[arc][side as usize]
    }
}

fn state_next(map: &Map, dart: usize, neg: bool) -> (usize, bool, Segment) {
    let e = map.sigma(dart, !neg);
    let arc = e / 2;
    let sign = map.arc_sign[arc];
    let forward = e % 2 == 0;
    let side = if forward {
        // leaving the tail: o=+1 exits at the clockwise end (side 1)
        if neg {
            0
        } else {
            1
        }
    } else {
        // leaving the head; the tail-anchored side name depends on the twist
        match (neg, sign > 0) {
            (false, true) => 0,
            (false, false) => 1,
            (true, true) => 1,
            (true, false) => 0,
        }
    };
    let new_neg = neg ^ (sign < 0);
    (map.alpha(e), new_neg, Segment { arc, side, forward })
}

fn state_mirror(map: &Map, dart: usize, neg: bool) -> (usize, bool) {
    (map.sigma(dart, !neg), !neg)
}

fn encode(dart: usize, neg: bool) -> usize {
    2 * dart + neg as usize
}

/// Trace all boundary circles. Segment sets partition the arc sides; the sum
/// of face degrees is twice the number of arcs.
///
/// On orientable map components, faces are stored traversed in the boundary
/// direction induced by the component's reference orientation (the vertex
/// 2-coloring with the least vertex positive), so that gluing a region with
/// all-match flags is the orientation-compatible gluing. On nonorientable
/// components the direction is the lexicographic minimum.
pub fn trace_faces(map: &Map) -> Faces {
    // reference orientation per vertex where the component is orientable
    let comps = map_components(map);
    let mut vertex_color: Vec<Option<bool>> = vec![None; map.n_vertices];
    {
        let mut uf = ParityUnionFind::new(map.n_vertices);
        for arc in 0..map.n_arcs() {
            uf.union(map.tail_vertex(arc), map.head_vertex(arc), map.arc_sign[arc] < 0);
        }
        for v in 0..map.n_vertices {
            if comps.orientable[comps.vertex_comp[v]] {
                let (_, parity) = uf.find(v);
                vertex_color[v] = Some(parity);
            }
        }
    }

    let n_states = 2 * map.n_darts();
    let mut visited = vec![false; n_states];
    let mut faces: Vec<Face> = Vec::new();

    for s0 in 0..n_states {
        if visited[s0] {
            continue;
        }
        // collect the orbit: states aligned with the segment each consumes
        let mut states = Vec::new();
        let mut segs = Vec::new();
        let (mut d, mut neg) = (s0 / 2, s0 % 2 == 1);
        loop {
            let s = encode(d, neg);
            if visited[s] {
                break;
            }
            visited[s] = true;
            let (nd, nneg, seg) = state_next(map, d, neg);
            states.push((d, neg));
            segs.push(seg);
            d = nd;
            neg = nneg;
        }
        // mark the mirror orbit visited
        let mut mirror_states = Vec::new();
        let mut mirror_segs = Vec::new();
        {
            let (m0, mneg0) = state_mirror(map, states[0].0, states[0].1);
            let (mut d, mut neg) = (m0, mneg0);
            loop {
                let s = encode(d, neg);
                if visited[s] && !mirror_states.is_empty() {
                    break;
                }
                if visited[s] && mirror_states.is_empty() && s != encode(m0, mneg0) {
                    break;
                }
                visited[s] = true;
                let (nd, nneg, seg) = state_next(map, d, neg);
                mirror_states.push((d, neg));
                mirror_segs.push(seg);
                d = nd;
                neg = nneg;
                if (d, neg) == (m0, mneg0) {
                    break;
                }
            }
        }
        debug_assert_eq!(states.len(), mirror_states.len());

        // canonical representative: least rotated segment sequence over the
        // orbit and its mirror
        let key = |segs: &[Segment], start: usize| -> Vec<(ArcIdx, u8, bool)> {
            (0..segs.len())
                .map(|i| {
                    let s = segs[(start + i) % segs.len()];
                    (s.arc, s.side, s.forward)
                })
                .collect()
        };
        // on orientable components only the boundary-oriented orbit is
        // admissible: the invariant color(vertex) ^ neg is constant along an
        // orbit and distinguishes the two directions
        let admissible = |sts: &[(usize, bool)]| -> bool {
            let (d, neg) = sts[0];
            match vertex_color[map.dart_vertex[d]] {
                Some(color) => color == neg,
                None => true,
            }
        };
        let mut best: Option<(Vec<(ArcIdx, u8, bool)>, bool, usize)> = None;
        for (mirror, ss, sts) in
            [(false, &segs, &states), (true, &mirror_segs, &mirror_states)]
        {
            if !admissible(sts) {
                continue;
            }
            for start in 0..ss.len() {
                let k = key(ss, start);
                if best.as_ref().map_or(true, |(bk, _, _)| k < *bk) {
                    best = Some((k, mirror, start));
                }
            }
        }
        let (_, use_mirror, start) = best.unwrap();
        let (ss, sts) = if use_mirror { (&mirror_segs, &mirror_states) } else { (&segs, &states) };
        let n = ss.len();
        let walk: Vec<Segment> = (0..n).map(|i| ss[(start + i) % n]).collect();
        let (ad, aneg) = sts[start];
        faces.push(Face { walk, anchor_dart: ad, anchor_neg: aneg });
    }

    faces.sort_by_key(|f| f.min_side());
    let mut side_face = vec![[usize::MAX; 2]; map.n_arcs()];
    for (fi, f) in faces.iter().enumerate() {
        for s in &f.walk {
            side_face[s.arc][s.side as usize] = fi;
        }
    }
    debug_assert!(side_face.iter().all(|p| p[0] != usize::MAX && p[1] != usize::MAX));
    Faces { faces, side_face }
}

/// Per-component connectivity and sign-balance of a map.
#[derive(Debug, Clone)]
pub struct MapComponents {
    pub vertex_comp: Vec<usize>,
    pub n_components: usize,
    pub orientable: Vec<bool>,
    pub chi: Vec<i64>,
}

pub fn map_components(map: &Map) -> MapComponents {
    let n = map.n_vertices;
    let mut uf = ParityUnionFind::new(n);
    for arc in 0..map.n_arcs() {
        let t = map.tail_vertex(arc);
        let h = map.head_vertex(arc);
        uf.union(t, h, map.arc_sign[arc] < 0);
    }
    let vertex_comp = uf.component_ids();
    let n_components = vertex_comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut orientable = vec![true; n_components];
    let mut chi = vec![0i64; n_components];
    for v in 0..n {
        chi[vertex_comp[v]] += 1;
    }
    for arc in 0..map.n_arcs() {
        let t = map.tail_vertex(arc);
        chi[vertex_comp[t]] -= 1;
        let h = map.head_vertex(arc);
        let (rt, pt) = uf.find(t);
        let (rh, ph) = uf.find(h);
        debug_assert_eq!(rt, rh);
        if (pt ^ ph) != (map.arc_sign[arc] < 0) {
            orientable[vertex_comp[t]] = false;
        }
    }
    MapComponents { vertex_comp, n_components, orientable, chi }
}

/// Invariants of the thickened map, which must be connected: chi = V - E,
/// boundary = face count, orientability by sign balance.
pub fn thickened_invariants(map: &Map) -> Result<SurfaceInvariants, SurfaceError> {
    let comps = map_components(map);
    if comps.n_components != 1 {
        return Err(SurfaceError::NotApplicable(format!(
            "thickened map has {} components",
            comps.n_components
        )));
    }
    let faces = trace_faces(map);
    SurfaceInvariants::from_chi(
        comps.orientable[0],
        map.euler_characteristic(),
        0,
        faces.faces.len() as u32,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::VertexKind;

    fn one_curve_map(sign: i8) -> Map {
        Map::build(&[(vec![0], vec![sign])], &[VertexKind::Degree2]).unwrap()
    }

    #[test]
    fn untwisted_loop_has_two_faces() {
        let map = one_curve_map(1);
        let faces = trace_faces(&map);
        assert_eq!(faces.faces.len(), 2);
        assert!(faces.faces.iter().all(|f| f.degree() == 1));
        let nu = thickened_invariants(&map).unwrap();
        assert_eq!(nu, SurfaceInvariants::annulus());
    }

    #[test]
    fn twisted_loop_has_one_face() {
        let map = one_curve_map(-1);
        let faces = trace_faces(&map);
        assert_eq!(faces.faces.len(), 1);
        assert_eq!(faces.faces[0].degree(), 2);
        let nu = thickened_invariants(&map).unwrap();
        assert_eq!(nu, SurfaceInvariants::moebius_band());
    }

    /// Chain of n curves: consecutive curves cross once, all signs +.
    fn chain_map(n: usize) -> Map {
        // vertices 0..n-1: crossing i between curves i and i+1
        let mut walks = Vec::new();
        for c in 0..n {
            let visits: Vec<usize> = match (c == 0, c == n - 1) {
                (true, true) => vec![],
                (true, false) => vec![0],
                (false, true) => vec![n - 2],
                (false, false) => vec![c - 1, c],
            };
            let signs = vec![1i8; visits.len()];
            walks.push((visits, signs));
        }
        let kinds: Vec<VertexKind> =
            (0..n - 1).map(|i| VertexKind::Crossing { first: i, second: i + 1 }).collect();
        Map::build(&walks, &kinds).unwrap()
    }

    #[test]
    fn chain_of_three_has_two_faces() {
        let map = chain_map(3);
        let faces = trace_faces(&map);
        assert_eq!(faces.faces.len(), 2);
        let total: usize = faces.faces.iter().map(|f| f.degree()).sum();
        assert_eq!(total, 2 * map.n_arcs());
        // genus 1 with two boundary circles
        assert_eq!(thickened_invariants(&map).unwrap(), SurfaceInvariants::orientable(1, 0, 2));
    }

    #[test]
    fn chain_of_five_is_genus_two() {
        let map = chain_map(5);
        assert_eq!(thickened_invariants(&map).unwrap(), SurfaceInvariants::orientable(2, 0, 2));
    }

    #[test]
    fn even_chains_have_one_boundary_circle() {
        for n in [2usize, 4, 6] {
            let map = chain_map(n);
            let nu = thickened_invariants(&map).unwrap();
            assert_eq!(nu.boundary, 1, "chain of {n}");
            assert_eq!(nu.euler_characteristic(), 1 - n as i64);
            assert!(nu.orientable);
        }
    }

    /// Two curves crossing once on the torus: the thickened union is a
    /// one-holed torus.
    #[test]
    fn torus_wedge() {
        let map = Map::build(
            &[(vec![0], vec![1]), (vec![0], vec![1])],
            &[VertexKind::Crossing { first: 0, second: 1 }],
        )
        .unwrap();
        let faces = trace_faces(&map);
        assert_eq!(faces.faces.len(), 1);
        assert_eq!(faces.faces[0].degree(), 4);
        assert_eq!(thickened_invariants(&map).unwrap(), SurfaceInvariants::orientable(1, 0, 1));
    }

    /// Triangle: three curves pairwise crossing once. Curve 0 carries the
    /// given signs; all other arcs are +.
    fn triangle_map(c0_signs: [i8; 2], swap_one: bool) -> Map {
        // crossings: 0 = (0,1), 1 = (1,2), 2 = (0,2)
        let walks = vec![
            (vec![0, 2], c0_signs.to_vec()),
            (vec![0, 1], vec![1, 1]),
            (vec![1, 2], vec![1, 1]),
        ];
        let kinds = vec![
            VertexKind::Crossing { first: 0, second: 1 },
            VertexKind::Crossing { first: 1, second: 2 },
            VertexKind::Crossing {
                first: if swap_one { 2 } else { 0 },
                second: if swap_one { 0 } else { 2 },
            },
        ];
        Map::build(&walks, &kinds).unwrap()
    }

    /// A nonorientable triangle of two-sided curves: both of curve 0's arcs
    /// twisted, so its own sign product stays +1 but the mixed cycle through
    /// the three crossings is unbalanced. Its neighborhood must be N_{4,1}.
    #[test]
    fn twisted_triangle_is_n41() {
        let mut found = false;
        for swap in [false, true] {
            let map = triangle_map([-1, -1], swap);
            let nu = thickened_invariants(&map).unwrap();
            assert!(!nu.orientable);
            assert_eq!(nu.euler_characteristic(), -3);
            if nu == SurfaceInvariants::nonorientable(4, 0, 1) {
                found = true;
            }
        }
        assert!(found, "no arrangement traced to N_{{4,1}}");
    }

    #[test]
    fn triangle_face_degree_conservation() {
        for (signs, swap) in
            [([1i8, 1], false), ([1, 1], true), ([-1, -1], false), ([-1, -1], true)]
        {
            let map = triangle_map(signs, swap);
            let faces = trace_faces(&map);
            let total: usize = faces.faces.iter().map(|f| f.degree()).sum();
            assert_eq!(total, 2 * map.n_arcs());
        }
    }

    #[test]
    fn all_plus_is_orientable() {
        for n in 2..6 {
            let map = chain_map(n);
            let comps = map_components(&map);
            assert!(comps.orientable.iter().all(|&o| o));
        }
        let map = triangle_map([1, 1], true);
        assert!(map_components(&map).orientable[0]);
    }
}
