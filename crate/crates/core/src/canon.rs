//! Canonical form for configurations.
//!
//! Canonical serialization: curves alphabetical, redundant basepoints
//! dropped, visit lists rotated to the least crossing id, signs gauge-fixed
//! over a spanning forest (flipping a vertex's local orientation negates the
//! incident non-loop signs and swaps the crossing's strand order), regions
//! ordered by least face. `Full` relabeling additionally renames everything
//! positionally and minimizes over curve orderings and rotations, which
//! identifies configurations that differ only by generation history.

use crate::config::{
    AttachFlag, Basepoint, Config, Crossing, Curve, Map, Region, VisitRef,
};
use crate::errors::TopoError;
use crate::faces::trace_faces;
use crate::parse::{parse_config, to_text};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relabel {
    /// Keep all user names; normalize order, rotation, gauge.
    Keep,
    /// Positional names for everything; minimize over curve orderings and
    /// rotations. Used for enumeration dedup.
    Full,
}

const FULL_PERM_CAP: usize = 5;
const FULL_ROT_CAP: usize = 4096;

/// Canonical text of a configuration.
pub fn canonical_text(config: &Config, mode: Relabel) -> Result<String, TopoError> {
    match mode {
        Relabel::Keep => {
            let order = sorted_curve_order(config);
            let rotations = least_name_rotations(config, &order);
            variant_text(config, &order, &rotations, false)
        }
        Relabel::Full => {
            let n = config.curves.len();
            let perms: Vec<Vec<usize>> = if n <= FULL_PERM_CAP {
                permutations(n)
            } else {
                vec![sorted_curve_order(config)]
            };
            let mut best: Option<String> = None;
            for perm in &perms {
                let rot_counts: Vec<usize> =
                    perm.iter().map(|&c| config.curves[c].visits.len().max(1)).collect();
                let total: usize = rot_counts.iter().product();
                let combos: Vec<Vec<usize>> = if total <= FULL_ROT_CAP {
                    rotation_combos(&rot_counts)
                } else {
                    vec![vec![0; rot_counts.len()]]
                };
                for rot in &combos {
                    let text = variant_text(config, perm, rot, true)?;
                    if best.as_ref().map_or(true, |b| text < *b) {
                        best = Some(text);
                    }
                }
            }
            Ok(best.unwrap())
        }
    }
}

/// Canonicalize into a configuration value.
pub fn canonicalize(config: &Config, mode: Relabel) -> Result<Config, TopoError> {
    let text = canonical_text(config, mode)?;
    parse_config(&text).map_err(|e| TopoError::Internal(format!("canonical text reparse: {e}")))
}

fn sorted_curve_order(config: &Config) -> Vec<usize> {
    let mut order: Vec<usize> = (0..config.curves.len()).collect();
    order.sort_by(|&a, &b| config.curves[a].name.cmp(&config.curves[b].name));
    order
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

fn rotation_combos(counts: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &c in counts {
        let mut next = Vec::with_capacity(out.len() * c);
        for prefix in &out {
            for r in 0..c {
                let mut p = prefix.clone();
                p.push(r);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Rotations starting each visit list at its least crossing name.
fn least_name_rotations(config: &Config, order: &[usize]) -> Vec<usize> {
    order
        .iter()
        .map(|&c| {
            let curve = &config.curves[c];
            let mut best: Option<(&str, usize)> = None;
            for (i, v) in curve.visits.iter().enumerate() {
                if let VisitRef::Crossing(xi) = v {
                    let name = config.crossings[*xi].name.as_str();
                    if best.map_or(true, |(bn, _)| name < bn) {
                        best = Some((name, i));
                    }
                }
            }
            best.map_or(0, |(_, i)| i)
        })
        .collect()
}

/// Merge a visit list keeping only flagged positions; returns the merged
/// list plus, per old arc position, the (merged position, side flip) pair.
fn merge_visits(
    visits: &[VisitRef],
    signs: &[i8],
    keep: &[bool],
) -> (Vec<VisitRef>, Vec<i8>, Vec<(usize, bool)>) {
    let n = visits.len();
    let kept: Vec<usize> = (0..n).filter(|&i| keep[i]).collect();
    assert!(!kept.is_empty());
    let m = kept.len();
    let mut new_visits = Vec::with_capacity(m);
    let mut new_signs = Vec::with_capacity(m);
    let mut arc_map = vec![(usize::MAX, false); n];
    for j in 0..m {
        let start = kept[j];
        let end = kept[(j + 1) % m];
        new_visits.push(visits[start]);
        let mut acc = 1i8;
        let mut p = start;
        loop {
            arc_map[p] = (j, acc < 0);
            acc *= signs[p];
            p = (p + 1) % n;
            if p == end {
                break;
            }
        }
        new_signs.push(acc);
    }
    (new_visits, new_signs, arc_map)
}

/// Produce the serialized form of one (curve order, rotation) variant.
fn variant_text(
    config: &Config,
    order: &[usize],
    rotations: &[usize],
    rename: bool,
) -> Result<String, TopoError> {
    let old_map = Map::of_config(config)?;
    let old_faces = trace_faces(&old_map);

    // --- step 1: per curve, drop redundant basepoints and rotate ---
    // arc-level composition: old global arc -> (new global arc, side flip)
    let n = config.curves.len();
    let mut new_curves: Vec<Curve> = Vec::with_capacity(n);
    let mut old_arc_map: Vec<(usize, bool)> = vec![(usize::MAX, false); old_map.n_arcs()];
    let mut kept_basepoints: Vec<usize> = Vec::new(); // old bp indices in new order
    let mut new_arc_base = Vec::with_capacity(n);
    let mut arc_count = 0;

    for (slot, &c) in order.iter().enumerate() {
        let curve = &config.curves[c];
        let has_crossing = curve.visits.iter().any(|v| matches!(v, VisitRef::Crossing(_)));
        let mut keep: Vec<bool> = curve
            .visits
            .iter()
            .map(|v| matches!(v, VisitRef::Crossing(_)))
            .collect();
        if !has_crossing {
            // keep exactly one basepoint: least name for stability
            let mut best: Option<(&str, usize)> = None;
            for (i, v) in curve.visits.iter().enumerate() {
                if let VisitRef::Basepoint(pi) = v {
                    let name = config.basepoints[*pi].name.as_str();
                    if best.map_or(true, |(bn, _)| name < bn) {
                        best = Some((name, i));
                    }
                }
            }
            keep[best.expect("curve with no visits").1] = true;
        }
        let (mv, ms, amap) = merge_visits(&curve.visits, &curve.signs, &keep);
        // rotate merged list so that it starts at merged position `rot`
        let m = mv.len();
        let rot = rotations[slot] % m;
        let visits: Vec<VisitRef> = (0..m).map(|i| mv[(rot + i) % m]).collect();
        let signs: Vec<i8> = (0..m).map(|i| ms[(rot + i) % m]).collect();
        for (p, &(mp, flip)) in amap.iter().enumerate() {
            let new_local = (mp + m - rot) % m;
            old_arc_map[old_map.arc_base[c] + p] = (arc_count + new_local, flip);
        }
        for v in &visits {
            if let VisitRef::Basepoint(pi) = v {
                kept_basepoints.push(*pi);
            }
        }
        new_arc_base.push(arc_count);
        arc_count += m;
        new_curves.push(Curve { name: curve.name.clone(), visits, signs });
    }

    // --- step 2: reindex crossing/basepoint references ---
    let mut new_crossings: Vec<Crossing> = Vec::new();
    let mut crossing_new_index = vec![usize::MAX; config.crossings.len()];
    if rename {
        // appearance order over the rotated visit lists
        for curve in &new_curves {
            for v in &curve.visits {
                if let VisitRef::Crossing(xi) = v {
                    if crossing_new_index[*xi] == usize::MAX {
                        crossing_new_index[*xi] = new_crossings.len();
                        new_crossings.push(config.crossings[*xi].clone());
                    }
                }
            }
        }
    } else {
        let mut order_x: Vec<usize> = (0..config.crossings.len()).collect();
        order_x.sort_by(|&a, &b| config.crossings[a].name.cmp(&config.crossings[b].name));
        for xi in order_x {
            crossing_new_index[xi] = new_crossings.len();
            new_crossings.push(config.crossings[xi].clone());
        }
    }
    let mut bp_new_index = vec![usize::MAX; config.basepoints.len()];
    let mut new_basepoints: Vec<Basepoint> = Vec::new();
    {
        let mut kept = kept_basepoints.clone();
        if !rename {
            kept.sort_by(|&a, &b| config.basepoints[a].name.cmp(&config.basepoints[b].name));
        }
        for pi in kept {
            bp_new_index[pi] = new_basepoints.len();
            new_basepoints.push(config.basepoints[pi].clone());
        }
    }
    let old_curve_slot = |c: usize| order.iter().position(|&x| x == c).unwrap();
    for x in &mut new_crossings {
        x.first = old_curve_slot(x.first);
        x.second = old_curve_slot(x.second);
    }
    for p in &mut new_basepoints {
        p.curve = old_curve_slot(p.curve);
    }
    for curve in &mut new_curves {
        for v in &mut curve.visits {
            *v = match *v {
                VisitRef::Crossing(xi) => VisitRef::Crossing(crossing_new_index[xi]),
                VisitRef::Basepoint(pi) => VisitRef::Basepoint(bp_new_index[pi]),
            };
        }
    }
    if rename {
        for (i, c) in new_curves.iter_mut().enumerate() {
            c.name = format!("c{}", i + 1);
        }
        for (i, x) in new_crossings.iter_mut().enumerate() {
            x.name = format!("x{}", i + 1);
        }
        for (i, p) in new_basepoints.iter_mut().enumerate() {
            p.name = format!("p{}", i + 1);
        }
    }

    let mut work = Config {
        ambient: config.ambient,
        curves: new_curves,
        crossings: new_crossings,
        basepoints: new_basepoints,
        regions: Vec::new(),
    };

    // --- step 3: gauge fix over a spanning forest ---
    let map = Map::of_config(&work)?;
    let nv = map.n_vertices;
    let mut flipped = vec![false; nv];
    {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for arc in 0..map.n_arcs() {
            incident[map.tail_vertex(arc)].push(arc);
            incident[map.head_vertex(arc)].push(arc);
        }
        for lists in &mut incident {
            lists.sort_unstable();
            lists.dedup();
        }
        let mut visited = vec![false; nv];
        for root in 0..nv {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut component = vec![root];
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &arc in &incident[u] {
                    if map.is_loop(arc) {
                        continue;
                    }
                    let w = map.tail_vertex(arc) + map.head_vertex(arc) - u;
                    if visited[w] {
                        continue;
                    }
                    visited[w] = true;
                    flipped[w] = flipped[u] ^ (map.arc_sign[arc] < 0);
                    component.push(w);
                    queue.push_back(w);
                }
            }
            // residual gauge: flipping the whole component keeps every sign
            // but swaps every crossing's strand order; normalize so the
            // least crossing reads (earlier curve, later curve)
            if let Some(&least_crossing) =
                component.iter().filter(|&&v| v < work.crossings.len()).min()
            {
                let x = &work.crossings[least_crossing];
                let eff_swapped = flipped[least_crossing];
                let (f, s) = if eff_swapped { (x.second, x.first) } else { (x.first, x.second) };
                if f > s {
                    for &v in &component {
                        flipped[v] = !flipped[v];
                    }
                }
            }
        }
    }
    // apply: negate non-loop arcs with exactly one flipped end, swap strand
    // order at flipped crossings
    for (c, curve) in work.curves.iter_mut().enumerate() {
        let base = map.arc_base[c];
        for (i, s) in curve.signs.iter_mut().enumerate() {
            let arc = base + i;
            let t = map.tail_vertex(arc);
            let h = map.head_vertex(arc);
            if t != h && (flipped[t] ^ flipped[h]) {
                *s = -*s;
            }
        }
    }
    for (xi, x) in work.crossings.iter_mut().enumerate() {
        if flipped[xi] {
            std::mem::swap(&mut x.first, &mut x.second);
        }
    }
    // side labels swap where the tail vertex flipped
    let gauge_flip: Vec<bool> = (0..map.n_arcs()).map(|a| flipped[map.tail_vertex(a)]).collect();

    // --- step 4: remap regions onto the new face order ---
    let new_map = Map::of_config(&work)?;
    let new_faces = trace_faces(&new_map);
    if new_faces.faces.len() != old_faces.faces.len() {
        return Err(TopoError::Internal("face count changed under canonicalization".into()));
    }
    let mut regions: Vec<Region> = Vec::new();
    for r in &config.regions {
        let mut faces = Vec::with_capacity(r.faces.len());
        let mut attach = Vec::with_capacity(r.faces.len());
        for (&f, &flag) in r.faces.iter().zip(r.attach.iter()) {
            let seg = old_faces.faces[f].walk[0];
            let (arc1, flip1) = old_arc_map[seg.arc];
            let side1 = seg.side ^ (flip1 as u8) ^ (gauge_flip[arc1] as u8);
            let nf = new_faces.face_of(arc1, side1);
            let entry = new_faces.faces[nf]
                .walk
                .iter()
                .find(|s| s.arc == arc1 && s.side == side1)
                .expect("segment present in its face");
            let toggled = entry.forward != seg.forward;
            faces.push(nf);
            attach.push(match (flag, toggled) {
                (AttachFlag::Match, false) | (AttachFlag::Reverse, true) => AttachFlag::Match,
                _ => AttachFlag::Reverse,
            });
        }
        // sort each region's face list; flipping a region's orientation
        // toggles all its flags, so normalize the first flag to match
        let mut paired: Vec<(usize, AttachFlag)> = faces.into_iter().zip(attach).collect();
        paired.sort_by_key(|(f, _)| *f);
        let toggle = paired.first().is_some_and(|(_, a)| *a == AttachFlag::Reverse);
        if toggle {
            for (_, a) in &mut paired {
                *a = if *a == AttachFlag::Match { AttachFlag::Reverse } else { AttachFlag::Match };
            }
        }
        regions.push(Region {
            name: r.name.clone(),
            surface: r.surface,
            faces: paired.iter().map(|(f, _)| *f).collect(),
            attach: paired.iter().map(|(_, a)| *a).collect(),
            boundary_collar: r.boundary_collar,
        });
    }
    regions.sort_by_key(|r| r.faces.first().copied().unwrap_or(usize::MAX));
    if rename {
        for (i, r) in regions.iter_mut().enumerate() {
            r.name = format!("R{}", i + 1);
        }
    } else {
        // stable order but keep names
    }
    work.regions = regions;

    Ok(to_text(&work))
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn keep_mode_is_idempotent() {
        let cfg = parse_config(FIG1).unwrap();
        let t1 = canonical_text(&cfg, Relabel::Keep).unwrap();
        let cfg2 = parse_config(&t1).unwrap();
        let t2 = canonical_text(&cfg2, Relabel::Keep).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn full_mode_is_idempotent() {
        let cfg = parse_config(FIG1).unwrap();
        let t1 = canonical_text(&cfg, Relabel::Full).unwrap();
        let cfg2 = parse_config(&t1).unwrap();
        let t2 = canonical_text(&cfg2, Relabel::Full).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn full_mode_identifies_renamed_configs() {
        let renamed = "\
surface N5k0
curve z
curve b
curve q
cross k1 q z
basept w b
seq q: k1
seq z: k1
seq b: w
region S1 faces=f0,f1 type=S0k0b2 attach=f0:match,f1:match
region S2 faces=f2 type=N3k0b1 attach=f2:match
";
        let a = parse_config(FIG1).unwrap();
        let b = parse_config(renamed).unwrap();
        // same picture: chain pair {a,b}/{q,z} plus a separate curve, with
        // the same region structure
        assert_eq!(
            canonical_text(&a, Relabel::Full).unwrap(),
            canonical_text(&b, Relabel::Full).unwrap()
        );
    }

    #[test]
    fn gauge_fix_normalizes_vertex_flips() {
        // flipping the local orientation at crossing x swaps its strand
        // order and negates all four incident (non-loop) arc signs; the two
        // files below differ by exactly that move
        let plain = "\
surface S2k0
curve a
curve b
cross x a b
cross y b a
seq a: x y
seq b: x y
";
        let flipped = "\
surface S2k0
curve a
curve b
cross x b a
cross y b a
seq a: x y
seq b: x y
arc a 0 sign=-
arc a 1 sign=-
arc b 0 sign=-
arc b 1 sign=-
";
        let p = parse_config(plain).unwrap();
        let f = parse_config(flipped).unwrap();
        assert_eq!(
            canonical_text(&p, Relabel::Keep).unwrap(),
            canonical_text(&f, Relabel::Keep).unwrap()
        );
    }

    #[test]
    fn rotation_normalized_to_least_crossing() {
        let a = "\
surface S2k0
curve a
curve b
cross x1 a b
cross x2 b a
seq a: x1 x2
seq b: x1 x2
";
        let b = "\
surface S2k0
curve a
curve b
cross x1 a b
cross x2 b a
seq a: x2 x1
seq b: x2 x1
";
        let ca = canonical_text(&parse_config(a).unwrap(), Relabel::Keep).unwrap();
        let cb = canonical_text(&parse_config(b).unwrap(), Relabel::Keep).unwrap();
        assert_eq!(ca, cb);
        assert!(ca.contains("seq a: x1 x2"));
    }

    #[test]
    fn canonicalization_preserves_validity() {
        use crate::assemble::validate_config;
        let cfg = parse_config(FIG1).unwrap();
        assert!(validate_config(&cfg).is_empty());
        for mode in [Relabel::Keep, Relabel::Full] {
            let canon = canonicalize(&cfg, mode).unwrap();
            assert!(
                validate_config(&canon).is_empty(),
                "canonical form must stay valid in {mode:?} mode"
            );
        }
    }
}
