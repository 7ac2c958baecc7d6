//! Assembly and cutting.
//!
//! A configuration assembles to a surface: the thickened map plus the filled
//! regions, glued along faces with the declared orientation flags. Cutting
//! along a subset of curves removes the thickened sub-map and reports the
//! complement components, reattaching regions and the remaining curves'
//! material.
//!
//! Orientation bookkeeping runs on a parity constraint system: one variable
//! per vertex disc and per region, one constraint per arc (its sign) and per
//! region attachment (the face's anchor direction combined with the flag).
//! The glued surface is orientable iff every piece is and the system is
//! satisfiable.

use crate::config::{ArcIdx, Config, ConfigError, CurveIdx, Map, VertexKind, VisitRef};
use crate::errors::TopoError;
use crate::faces::{face_transitions, trace_faces, Faces};
use crate::surface::SurfaceInvariants;
use crate::util::ParityUnionFind;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// A structural defect found by validation. Violations are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    CrossingArity { name: String },
    FaceUnassigned { face: usize },
    RegionBoundaryMismatch { region: String, type_boundary: u32, faces_plus_collar: u32 },
    PunctureCountMismatch { regions_total: u32, ambient: u32 },
    BoundaryCollarMismatch { regions_total: u32, ambient: u32 },
    AssemblyMismatch { computed: String, declared: String },
    Disconnected,
    Bigon { face: usize, curves: [String; 2] },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CrossingArity { name } => write!(f, "crossing {name} has wrong arity"),
            Violation::FaceUnassigned { face } => write!(f, "face f{face} not assigned"),
            Violation::RegionBoundaryMismatch { region, type_boundary, faces_plus_collar } => {
                write!(
                    f,
                    "region {region}: type has {type_boundary} boundary circles but \
                     faces+collar = {faces_plus_collar}"
                )
            }
            Violation::PunctureCountMismatch { regions_total, ambient } => {
                write!(f, "regions carry {regions_total} punctures, ambient has {ambient}")
            }
            Violation::BoundaryCollarMismatch { regions_total, ambient } => {
                write!(f, "regions carry {regions_total} collars, ambient has {ambient}")
            }
            Violation::AssemblyMismatch { computed, declared } => {
                write!(f, "assembles to {computed}, declared {declared}")
            }
            Violation::Disconnected => write!(f, "assembled surface is disconnected"),
            Violation::Bigon { face, curves } => {
                write!(f, "bigon: face f{face} between {} and {}", curves[0], curves[1])
            }
        }
    }
}

/// Map, faces and face-to-region table of a configuration, computed once per
/// operation.
pub struct Analysis {
    pub map: Map,
    pub faces: Faces,
    /// region index per face; usize::MAX when unassigned
    pub region_of_face: Vec<usize>,
}

pub fn analyze(config: &Config) -> Result<Analysis, ConfigError> {
    let map = Map::of_config(config)?;
    let faces = trace_faces(&map);
    let mut region_of_face = vec![usize::MAX; faces.faces.len()];
    for (ri, r) in config.regions.iter().enumerate() {
        for &f in &r.faces {
            if f < region_of_face.len() {
                region_of_face[f] = ri;
            }
        }
    }
    Ok(Analysis { map, faces, region_of_face })
}

/// Recompute the total surface from the pieces. The result must equal the
/// declared ambient; the error carries both sides.
pub fn assemble(config: &Config) -> Result<SurfaceInvariants, TopoError> {
    let analysis = analyze(config)?;
    assemble_with(config, &analysis)
}

pub fn assemble_with(config: &Config, analysis: &Analysis) -> Result<SurfaceInvariants, TopoError> {
    let map = &analysis.map;
    let nv = map.n_vertices;
    let nr = config.regions.len();
    if nv + nr == 0 {
        return Err(TopoError::InvalidConfig("nothing to assemble".into()));
    }
    for (f, &r) in analysis.region_of_face.iter().enumerate() {
        if r == usize::MAX {
            return Err(TopoError::InvalidConfig(format!("face f{f} not assigned to a region")));
        }
    }

    let mut parity = ParityUnionFind::new(nv + nr);
    let mut conflict = false;
    for arc in 0..map.n_arcs() {
        conflict |= !parity.union(map.tail_vertex(arc), map.head_vertex(arc), map.arc_sign[arc] < 0);
    }
    for (ri, r) in config.regions.iter().enumerate() {
        for (&f, &flag) in r.faces.iter().zip(r.attach.iter()) {
            let face = &analysis.faces.faces[f];
            let p = face.anchor_neg ^ (flag == crate::config::AttachFlag::Reverse);
            conflict |= !parity.union(nv + ri, face.anchor_vertex(map), p);
        }
    }

    // connectivity over the same incidences
    let mut comps = BTreeSet::new();
    for node in 0..nv + nr {
        comps.insert(parity.find(node).0);
    }
    if comps.len() != 1 {
        return Err(TopoError::InvalidConfig("assembled surface is disconnected".into()));
    }

    let chi = map.euler_characteristic()
        + config.regions.iter().map(|r| r.surface.euler_characteristic()).sum::<i64>();
    let punctures: u32 = config.regions.iter().map(|r| r.surface.punctures).sum();
    let boundary: u32 = config.regions.iter().map(|r| r.boundary_collar).sum();
    let orientable = !conflict && config.regions.iter().all(|r| r.surface.orientable);

    let computed = SurfaceInvariants::from_chi(orientable, chi, punctures, boundary)
        .map_err(|e| TopoError::AssemblyMismatch {
            computed: format!("(orientable={orientable}, chi={chi}, k={punctures}, r={boundary}: {e})"),
            declared: config.ambient.literal(),
        })?;
    if computed != config.ambient {
        return Err(TopoError::AssemblyMismatch {
            computed: computed.literal(),
            declared: config.ambient.literal(),
        });
    }
    Ok(computed)
}

/// All structural violations of a configuration. Empty iff the configuration
/// is valid and bigon-free.
pub fn validate_config(config: &Config) -> Vec<Violation> {
    let mut out = Vec::new();

    // arity must hold before anything map-based can run
    let analysis = match analyze(config) {
        Ok(a) => a,
        Err(ConfigError::CrossingArity { name }) => {
            out.push(Violation::CrossingArity { name });
            return out;
        }
        Err(e) => {
            out.push(Violation::AssemblyMismatch {
                computed: format!("unbuildable: {e}"),
                declared: config.ambient.literal(),
            });
            return out;
        }
    };

    for (f, &r) in analysis.region_of_face.iter().enumerate() {
        if r == usize::MAX {
            out.push(Violation::FaceUnassigned { face: f });
        }
    }
    for r in &config.regions {
        let fc = r.faces.len() as u32 + r.boundary_collar;
        if r.surface.boundary != fc {
            out.push(Violation::RegionBoundaryMismatch {
                region: r.name.clone(),
                type_boundary: r.surface.boundary,
                faces_plus_collar: fc,
            });
        }
    }
    let kp: u32 = config.regions.iter().map(|r| r.surface.punctures).sum();
    if kp != config.ambient.punctures {
        out.push(Violation::PunctureCountMismatch { regions_total: kp, ambient: config.ambient.punctures });
    }
    let rc: u32 = config.regions.iter().map(|r| r.boundary_collar).sum();
    if rc != config.ambient.boundary {
        out.push(Violation::BoundaryCollarMismatch { regions_total: rc, ambient: config.ambient.boundary });
    }

    if out.is_empty() {
        match assemble_with(config, &analysis) {
            Ok(_) => {}
            Err(TopoError::AssemblyMismatch { computed, declared }) => {
                out.push(Violation::AssemblyMismatch { computed, declared });
            }
            Err(TopoError::InvalidConfig(msg)) if msg.contains("disconnected") => {
                out.push(Violation::Disconnected);
            }
            Err(e) => out.push(Violation::AssemblyMismatch {
                computed: e.to_string(),
                declared: config.ambient.literal(),
            }),
        }
    }

    // bigon: a degree-2 disc face between two distinct curves
    for (fi, face) in analysis.faces.faces.iter().enumerate() {
        if face.degree() != 2 {
            continue;
        }
        let c0 = analysis.map.arc_curve[face.walk[0].arc];
        let c1 = analysis.map.arc_curve[face.walk[1].arc];
        if c0 == c1 {
            continue;
        }
        let ri = analysis.region_of_face[fi];
        if ri != usize::MAX && config.regions[ri].surface.is_disc() {
            out.push(Violation::Bigon {
                face: fi,
                curves: [config.curves[c0].name.clone(), config.curves[c1].name.clone()],
            });
        }
    }

    out
}

/// The merged map of a curve subset: crossings with curves outside the
/// subset are smoothed away (signs multiply), and a curve left with no
/// internal crossing gets a synthetic basepoint.
pub struct SubMap {
    pub map: Map,
    /// subset curves in configuration index order; sub-map walk i belongs to
    /// sub_curves[i]
    pub sub_curves: Vec<CurveIdx>,
    /// per full arc: Some((sub arc, side flip)) for arcs of subset curves
    pub full_arc_to_sub: Vec<Option<(ArcIdx, bool)>>,
    /// per configuration crossing: both strands in the subset
    pub internal_crossing: Vec<bool>,
}

pub fn sub_map(config: &Config, full_map: &Map, subset: &[CurveIdx]) -> Result<SubMap, TopoError> {
    let mut in_subset = vec![false; config.curves.len()];
    for &c in subset {
        if c >= config.curves.len() {
            return Err(TopoError::UnknownCurve(format!("curve index {c}")));
        }
        in_subset[c] = true;
    }
    let sub_curves: Vec<CurveIdx> =
        (0..config.curves.len()).filter(|&c| in_subset[c]).collect();

    let internal_crossing: Vec<bool> = config
        .crossings
        .iter()
        .map(|x| in_subset[x.first] && in_subset[x.second])
        .collect();

    // sub vertices: internal crossings keep their identity, then one
    // synthetic basepoint per crossing-free subset curve
    let mut sub_vertex_of_crossing = vec![usize::MAX; config.crossings.len()];
    let mut next_vertex = 0;
    for (xi, &int) in internal_crossing.iter().enumerate() {
        if int {
            sub_vertex_of_crossing[xi] = next_vertex;
            next_vertex += 1;
        }
    }
    let mut kinds: Vec<VertexKind> = Vec::new();
    for (xi, &int) in internal_crossing.iter().enumerate() {
        if int {
            let x = &config.crossings[xi];
            let first = sub_curves.iter().position(|&c| c == x.first).unwrap();
            let second = sub_curves.iter().position(|&c| c == x.second).unwrap();
            kinds.push(VertexKind::Crossing { first, second });
        }
    }

    let mut walks: Vec<(Vec<usize>, Vec<i8>)> = Vec::new();
    let mut full_arc_to_sub: Vec<Option<(ArcIdx, bool)>> = vec![None; full_map.n_arcs()];
    let mut sub_arc_count = 0;

    for (slot, &c) in sub_curves.iter().enumerate() {
        let curve = &config.curves[c];
        let n = curve.visits.len();
        let internal_positions: Vec<usize> = (0..n)
            .filter(|&i| match curve.visits[i] {
                VisitRef::Crossing(xi) => internal_crossing[xi],
                VisitRef::Basepoint(_) => false,
            })
            .collect();
        let base = full_map.arc_base[c];

        if internal_positions.is_empty() {
            // one merged loop arc anchored at position 0, with a synthetic
            // basepoint vertex
            let sign: i8 = curve.signs.iter().product();
            let v = next_vertex;
            next_vertex += 1;
            kinds.push(VertexKind::Degree2);
            walks.push((vec![v], vec![sign]));
            let mut acc = 1i8;
            for p in 0..n {
                full_arc_to_sub[base + p] = Some((sub_arc_count, acc < 0));
                acc *= curve.signs[p];
            }
            sub_arc_count += 1;
            let _ = slot;
        } else {
            let m = internal_positions.len();
            let mut vertices = Vec::with_capacity(m);
            let mut signs = Vec::with_capacity(m);
            for j in 0..m {
                let start = internal_positions[j];
                let end = internal_positions[(j + 1) % m]; // exclusive, cyclic
                let xi = match curve.visits[start] {
                    VisitRef::Crossing(xi) => xi,
                    _ => unreachable!(),
                };
                vertices.push(sub_vertex_of_crossing[xi]);
                // merged arc covers full arcs start, start+1, ..., end-1
                let mut acc = 1i8;
                let mut p = start;
                loop {
                    full_arc_to_sub[base + p] = Some((sub_arc_count + j, acc < 0));
                    acc *= curve.signs[p];
                    p = (p + 1) % n;
                    if p == end {
                        break;
                    }
                }
                signs.push(acc);
            }
            walks.push((vertices, signs));
            sub_arc_count += m;
        }
    }

    let map = Map::build(&walks, &kinds)?;
    debug_assert_eq!(map.n_arcs(), sub_arc_count);
    Ok(SubMap { map, sub_curves, full_arc_to_sub, internal_crossing })
}

/// Invariants of a tubular neighborhood of the subset's curve union: chi is
/// vertices minus arcs of the merged sub-map, the boundary count is its face
/// count, orientability is sign balance.
pub fn neighborhood_invariants(
    config: &Config,
    subset: &[CurveIdx],
) -> Result<SurfaceInvariants, TopoError> {
    if subset.is_empty() {
        return Err(TopoError::PreconditionViolated("empty subset".into()));
    }
    let full_map = Map::of_config(config)?;
    let sm = sub_map(config, &full_map, subset)?;
    crate::faces::thickened_invariants(&sm.map).map_err(TopoError::Surface)
}

/// One complement component of a cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutComponent {
    pub surface: SurfaceInvariants,
    /// configuration curves (outside the subset) living in this component
    pub curves: Vec<CurveIdx>,
    /// boundary circles coming from the cut itself (rest are ambient collar)
    pub cut_circles: u32,
}

#[derive(Debug, Clone)]
pub struct CutResult {
    pub components: Vec<CutComponent>,
    /// invariants of the removed neighborhood's map: chi = V - E
    pub nu_chi: i64,
    pub nu_faces: usize,
}

impl CutResult {
    pub fn surfaces(&self) -> Vec<SurfaceInvariants> {
        self.components.iter().map(|c| c.surface).collect()
    }
}

/// Cut the configured surface along the subset's thickened union and
/// classify every complement component.
pub fn cut_along(config: &Config, subset: &[CurveIdx]) -> Result<CutResult, TopoError> {
    let analysis = analyze(config)?;
    cut_along_with(config, &analysis, subset)
}

pub fn cut_along_with(
    config: &Config,
    analysis: &Analysis,
    subset: &[CurveIdx],
) -> Result<CutResult, TopoError> {
    for (f, &r) in analysis.region_of_face.iter().enumerate() {
        if r == usize::MAX {
            return Err(TopoError::InvalidConfig(format!("face f{f} not assigned to a region")));
        }
    }
    if subset.is_empty() {
        return Ok(CutResult {
            components: vec![CutComponent {
                surface: config.ambient,
                curves: (0..config.curves.len()).collect(),
                cut_circles: 0,
            }],
            nu_chi: 0,
            nu_faces: 0,
        });
    }

    let map = &analysis.map;
    let sm = sub_map(config, map, subset)?;
    let sub_faces = trace_faces(&sm.map);
    let n_subfaces = sub_faces.faces.len();
    let mut in_subset = vec![false; config.curves.len()];
    for &c in &sm.sub_curves {
        in_subset[c] = true;
    }

    // --- leftover graph nodes ---
    // pure crossings and basepoints of leftover curves keep their vertex;
    // each strand end of a leftover curve at a mixed crossing gets a stub
    // (the half disc left when the subset strand is removed).
    let ncross = config.crossings.len();
    let mut l_node_of_vertex = vec![usize::MAX; map.n_vertices];
    let mut n_l = 0;
    for (xi, x) in config.crossings.iter().enumerate() {
        if !in_subset[x.first] && !in_subset[x.second] {
            l_node_of_vertex[xi] = n_l;
            n_l += 1;
        }
    }
    for (pi, p) in config.basepoints.iter().enumerate() {
        if !in_subset[p.curve] {
            l_node_of_vertex[ncross + pi] = n_l;
            n_l += 1;
        }
    }
    // stubs keyed by (crossing, In=0 | Out=1) of the leftover strand
    let mut stub_node: Vec<[usize; 2]> = vec![[usize::MAX; 2]; ncross];
    let is_mixed = |xi: usize| {
        let x = &config.crossings[xi];
        in_subset[x.first] != in_subset[x.second]
    };
    for xi in 0..ncross {
        if is_mixed(xi) {
            stub_node[xi] = [n_l, n_l + 1];
            n_l += 2;
        }
    }

    let nr = config.regions.len();
    // attribution: [L nodes][regions][subfaces]; parity: [L nodes][regions]
    let mut attribution = ParityUnionFind::new(n_l + nr + n_subfaces);
    let mut parity = ParityUnionFind::new(n_l + nr);
    let mut conflict_nodes: Vec<usize> = Vec::new();

    let region_node = |ri: usize| n_l + ri;
    let subface_node = |sf: usize| n_l + nr + sf;

    // node of a leftover arc end: the vertex's L node, or the stub
    let leftover_end_node = |dart: usize| -> usize {
        let v = map.dart_vertex[dart];
        if l_node_of_vertex[v] != usize::MAX {
            return l_node_of_vertex[v];
        }
        // mixed crossing: head darts arrive (In), tail darts leave (Out)
        let inout = if dart % 2 == 1 { 0 } else { 1 };
        stub_node[v][inout]
    };

    // leftover arcs
    for arc in 0..map.n_arcs() {
        if in_subset[map.arc_curve[arc]] {
            continue;
        }
        let t = leftover_end_node(2 * arc);
        let h = leftover_end_node(2 * arc + 1);
        attribution.union(t, h, false);
        if !parity.union(t, h, map.arc_sign[arc] < 0) {
            conflict_nodes.push(t);
        }
    }

    // subface lookup for a full (arc, side) on a subset curve
    let subface_of_full_side = |arc: usize, side: u8| -> usize {
        let (sa, flip) = sm.full_arc_to_sub[arc].expect("subset arc");
        let s = side ^ (flip as u8);
        sub_faces.face_of(sa, s)
    };

    // stub-to-subface adjacency at each mixed crossing
    for (xi, x) in config.crossings.iter().enumerate() {
        if !is_mixed(xi) {
            continue;
        }
        let sub_curve = if in_subset[x.first] { x.first } else { x.second };
        let curve = &config.curves[sub_curve];
        let pos = curve
            .visits
            .iter()
            .position(|v| *v == VisitRef::Crossing(xi))
            .expect("crossing visited");
        let n = curve.visits.len();
        let base = map.arc_base[sub_curve];
        let arc_in = base + (pos + n - 1) % n;
        let arc_out = base + pos;
        // the incoming strand's counterclockwise head end borders the
        // leftover In half-disc; the outgoing strand's side 0 borders Out
        let side_in: u8 = if map.arc_sign[arc_in] > 0 { 1 } else { 0 };
        attribution.union(stub_node[xi][0], subface_node(subface_of_full_side(arc_in, side_in)), false);
        attribution.union(stub_node[xi][1], subface_node(subface_of_full_side(arc_out, 0)), false);
    }

    // walk every full face, classifying corners and segments
    let mut run_corrections = vec![0i64; n_l + nr + n_subfaces]; // per attribution root later
    let mut face_runs: Vec<(usize, i64)> = Vec::new(); // (region node, runs)
    for (fi, face) in analysis.faces.faces.iter().enumerate() {
        let ri = analysis.region_of_face[fi];
        let rnode = region_node(ri);
        let flag = {
            let r = &config.regions[ri];
            let k = r.faces.iter().position(|&f| f == fi).unwrap();
            r.attach[k]
        };
        let transitions = face_transitions(map, face);
        // kept flags: corner then segment, alternating
        let mut kept = Vec::with_capacity(2 * transitions.len());
        for t in &transitions {
            // corner
            let v = t.vertex;
            let corner_kept = if l_node_of_vertex[v] != usize::MAX {
                Some(l_node_of_vertex[v])
            } else if v < ncross && is_mixed(v) {
                // the leftover dart flanking this corner
                let x = &config.crossings[v];
                let leftover_curve = if in_subset[x.first] { x.second } else { x.first };
                let ld = if map.arc_curve[t.dart_in / 2] == leftover_curve {
                    t.dart_in
                } else {
                    debug_assert_eq!(map.arc_curve[t.dart_out / 2], leftover_curve);
                    t.dart_out
                };
                let inout = if ld % 2 == 1 { 0 } else { 1 };
                Some(stub_node[v][inout])
            } else {
                None
            };
            if let Some(node) = corner_kept {
                attribution.union(rnode, node, false);
                if node < n_l {
                    let p = t.neg ^ (flag == crate::config::AttachFlag::Reverse);
                    if !parity.union(rnode, node, p) {
                        conflict_nodes.push(node);
                    }
                }
            }
            kept.push(corner_kept.is_some());
            // segment
            let seg = t.segment;
            if in_subset[map.arc_curve[seg.arc]] {
                let sf = subface_of_full_side(seg.arc, seg.side);
                attribution.union(rnode, subface_node(sf), false);
                kept.push(false);
            } else {
                kept.push(true);
            }
        }
        // count maximal kept runs cyclically
        let total = kept.len();
        let kept_count = kept.iter().filter(|&&k| k).count();
        if kept_count == total {
            face_runs.push((rnode, 0)); // full-circle gluing
        } else {
            let mut runs = 0;
            for i in 0..total {
                if kept[i] && !kept[(i + total - 1) % total] {
                    runs += 1;
                }
            }
            face_runs.push((rnode, runs));
        }
    }

    // mark nonorientable components
    let comp_ids = attribution.component_ids();
    let n_comps = comp_ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut comp_nonorientable = vec![false; n_comps];
    for node in conflict_nodes {
        comp_nonorientable[comp_ids[node]] = true;
    }

    // accumulate per component
    let mut chi = vec![0i64; n_comps];
    let mut punctures = vec![0u32; n_comps];
    let mut collars = vec![0u32; n_comps];
    let mut cut_circles = vec![0u32; n_comps];
    let mut comp_curves: Vec<Vec<CurveIdx>> = vec![Vec::new(); n_comps];
    let mut seen = vec![false; n_comps];

    for node in 0..n_l {
        chi[comp_ids[node]] += 1;
        seen[comp_ids[node]] = true;
    }
    for arc in 0..map.n_arcs() {
        if !in_subset[map.arc_curve[arc]] {
            chi[comp_ids[leftover_end_node(2 * arc)]] -= 1;
        }
    }
    for (ri, r) in config.regions.iter().enumerate() {
        let comp = comp_ids[region_node(ri)];
        chi[comp] += r.surface.euler_characteristic();
        punctures[comp] += r.surface.punctures;
        collars[comp] += r.boundary_collar;
        if !r.surface.orientable {
            comp_nonorientable[comp] = true;
        }
        seen[comp] = true;
    }
    for (rnode, runs) in face_runs {
        chi[comp_ids[rnode]] -= runs;
    }
    for sf in 0..n_subfaces {
        let comp = comp_ids[subface_node(sf)];
        cut_circles[comp] += 1;
        if !seen[comp] {
            return Err(TopoError::Internal(format!(
                "cut circle {sf} attached to no material"
            )));
        }
    }
    for (c, curve) in config.curves.iter().enumerate() {
        if in_subset[c] {
            continue;
        }
        let dart = 2 * map.arc_base[c];
        comp_curves[comp_ids[leftover_end_node(dart)]].push(c);
        let _ = curve;
    }
    let _ = &mut run_corrections;

    let mut components = Vec::new();
    for comp in 0..n_comps {
        if !seen[comp] {
            continue;
        }
        let boundary = cut_circles[comp] + collars[comp];
        let orientable = !comp_nonorientable[comp];
        let surface = SurfaceInvariants::from_chi(orientable, chi[comp], punctures[comp], boundary)
            .map_err(|e| {
                TopoError::Internal(format!(
                    "cut component not a surface: chi={}, k={}, b={}, orientable={}: {}",
                    chi[comp], punctures[comp], boundary, orientable, e
                ))
            })?;
        components.push(CutComponent {
            surface,
            curves: std::mem::take(&mut comp_curves[comp]),
            cut_circles: cut_circles[comp],
        });
    }
    components.sort_by_key(|c| (c.surface, c.curves.clone()));

    // conservation: complement chi plus the removed neighborhood's chi must
    // equal the ambient
    let nu_chi = sm.map.euler_characteristic();
    let total: i64 = components.iter().map(|c| c.surface.euler_characteristic()).sum();
    if total + nu_chi != config.ambient.euler_characteristic() {
        return Err(TopoError::Internal(format!(
            "cut accounting broke: components {total} + nu {nu_chi} != ambient {}",
            config.ambient.euler_characteristic()
        )));
    }

    Ok(CutResult { components, nu_chi, nu_faces: n_subfaces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_config;

    /// Torus as two curves crossing once with a single disc region.
    const TORUS: &str = "\
surface S1k0
curve a
curve b
cross x a b
seq a: x
seq b: x
region R faces=f0 type=S0k0b1 attach=f0:match
";

    #[test]
    fn torus_assembles() {
        let cfg = parse_config(TORUS).unwrap();
        assert_eq!(assemble(&cfg).unwrap(), SurfaceInvariants::orientable(1, 0, 0));
        assert!(validate_config(&cfg).is_empty());
    }

    #[test]
    fn torus_cut_along_one_curve_is_annulus() {
        let cfg = parse_config(TORUS).unwrap();
        let cut = cut_along(&cfg, &[0]).unwrap();
        assert_eq!(cut.surfaces(), vec![SurfaceInvariants::annulus()]);
        assert_eq!(cut.components[0].curves, vec![1]);
        let cut2 = cut_along(&cfg, &[0, 1]).unwrap();
        assert_eq!(cut2.surfaces(), vec![SurfaceInvariants::disc()]);
    }

    /// Separating curve on N_5: a one-holed torus (containing a chain a, b)
    /// on one side, N_{3,1} on the other.
    const FIG1: &str = "\
surface N5k0
curve a
curve b
curve c
cross x1 a b
basept p c
seq a: x1
seq b: x1
seq c: p
region R1 faces=f0,f1 type=S0k0b2 attach=f0:match,f1:match
region R2 faces=f2 type=N3k0b1 attach=f2:match
";

    #[test]
    fn one_holed_torus_config_assembles_and_cuts() {
        let cfg = parse_config(FIG1).unwrap();
        assert!(validate_config(&cfg).is_empty());
        assert_eq!(assemble(&cfg).unwrap(), SurfaceInvariants::nonorientable(5, 0, 0));
        let c = cfg.curve_index("c").unwrap();
        let cut = cut_along(&cfg, &[c]).unwrap();
        let mut surfaces = cut.surfaces();
        surfaces.sort();
        assert_eq!(
            surfaces,
            vec![
                SurfaceInvariants::nonorientable(3, 0, 1),
                SurfaceInvariants::orientable(1, 0, 1),
            ]
        );
        // a and b live on the torus side
        let torus_side = cut
            .components
            .iter()
            .find(|k| k.surface == SurfaceInvariants::orientable(1, 0, 1))
            .unwrap();
        assert_eq!(torus_side.curves.len(), 2);
    }

    #[test]
    fn cutting_along_the_chain_in_fig1() {
        let cfg = parse_config(FIG1).unwrap();
        // cutting along "a" alone: complement of a nonseparating curve on N5
        let a = cfg.curve_index("a").unwrap();
        let cut = cut_along(&cfg, &[a]).unwrap();
        assert_eq!(cut.components.len(), 1);
        let comp = &cut.components[0].surface;
        assert_eq!(comp.euler_characteristic(), -3);
        assert_eq!(comp.boundary, 2);
        assert!(!comp.orientable);
        // cutting along the whole chain {a, b}: neighborhood is a one-holed
        // torus, complement is N_{3,1} plus the annulus material around c
        let b = cfg.curve_index("b").unwrap();
        let cut = cut_along(&cfg, &[a, b]).unwrap();
        assert_eq!(cut.nu_chi, -1);
        assert_eq!(cut.nu_faces, 1);
        let total: i64 = cut.components.iter().map(|c| c.surface.euler_characteristic()).sum();
        assert_eq!(total + cut.nu_chi, cfg.ambient.euler_characteristic());
        assert_eq!(cut.components.len(), 1);
        assert_eq!(cut.components[0].surface, SurfaceInvariants::nonorientable(3, 0, 1));
    }

    #[test]
    fn mismatched_assembly_detected() {
        let bad = "\
surface N5k0
curve c
basept p c
region R1 faces=f0 type=N1k0b1 attach=f0:match
region R2 faces=f1 type=N2k0b1 attach=f1:match
";
        let cfg = parse_config(bad).unwrap();
        let violations = validate_config(&cfg);
        assert!(violations.iter().any(|v| matches!(v, Violation::AssemblyMismatch { .. })));
    }

    #[test]
    fn reverse_attachment_makes_klein_bottle() {
        // one curve on the torus vs the Klein bottle: same pieces, the
        // attachment flag decides orientability
        let torus = "\
surface S1k0
curve c
basept p c
region R faces=f0,f1 type=S0k0b2 attach=f0:match,f1:match
";
        let klein = "\
surface N2k0
curve c
basept p c
region R faces=f0,f1 type=S0k0b2 attach=f0:match,f1:reverse
";
        assert!(validate_config(&parse_config(torus).unwrap()).is_empty());
        assert!(validate_config(&parse_config(klein).unwrap()).is_empty());
    }

    #[test]
    fn bigon_detected() {
        // two curves crossing twice bounding an empty disc
        let bigon = "\
surface S2k0
curve a
curve b
cross x a b
cross y b a
seq a: x y
seq b: x y
region D faces=f0 type=S0k0b1
region R1 faces=f1 type=S1k0b1
region R2 faces=f2 type=S1k0b1
region R3 faces=f3 type=S0k0b1
";
        let cfg = parse_config(bigon).unwrap();
        let v = validate_config(&cfg);
        assert!(
            v.iter().any(|x| matches!(x, Violation::Bigon { .. })),
            "expected a bigon, got {v:?}"
        );
    }

    #[test]
    fn puncture_mismatch_detected() {
        let bad = "\
surface N5k2
curve c
basept p c
region R1 faces=f0 type=N1k0b1 attach=f0:match
region R2 faces=f1 type=N3k1b1 attach=f1:match
";
        let cfg = parse_config(bad).unwrap();
        assert!(validate_config(&cfg)
            .iter()
            .any(|v| matches!(v, Violation::PunctureCountMismatch { .. })));
    }
}
