//! Enumeration of embedded candidate curves as configuration extensions.
//!
//! Candidates are built as region walks: a crossing-free candidate is an
//! essential circle inside one region (enumerated through the surgery table
//! for circles), a crossing candidate is a closed alternating sequence of
//! arc crossings and region passages. Every candidate is synthesized into a
//! full configuration and re-validated through the standard pipeline; the
//! region splitting choices that survive assembly plus the remerge guard are
//! exactly the realizable ones, so overgeneration is safe.

use crate::assemble::{analyze, cut_along_with, validate_config, Analysis};
use crate::canon::{canonical_text, Relabel};
use crate::config::{
    AttachFlag, Basepoint, Config, Crossing, Curve, CurveIdx, FaceIdx, Map, Region, VisitRef,
};
use crate::errors::TopoError;
use crate::faces::{trace_faces, Faces};
use crate::ops::{chain_grade_class, classify_curve_idx, Sidedness};
use crate::search::{CandidateSpec, SearchBudget};
use crate::surface::SurfaceInvariants;
use std::collections::BTreeMap;

const MAX_ARC_ORDERINGS: usize = 24;
const MAX_REGION_STRUCTURES: usize = 4096;

/// A configuration extension embedding one new curve.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub config: Config,
    pub curve: String,
    pub canonical: String,
}

/// All essential embedded curves satisfying the intersection spec, up to the
/// budget, in canonical order.
pub fn enumerate_candidate_curves(
    config: &Config,
    spec: &CandidateSpec,
    budget: &SearchBudget,
) -> Result<Vec<Candidate>, TopoError> {
    let analysis = crate::ops::ensure_clean(config)?;
    let mut out: Vec<Candidate> = Vec::new();

    let curve_name = fresh_name(config, "z");

    // crossing-free candidates are admissible only when the spec doesn't
    // demand positive intersection with anything
    if spec.exact.values().all(|&n| n == 0) {
        circle_candidates(config, &analysis, &curve_name, spec, &mut out)?;
    }
    walk_candidates(config, &analysis, &curve_name, spec, budget, &mut out)?;

    out.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    out.dedup_by(|a, b| a.canonical == b.canonical);
    out.truncate(budget.max_candidates);
    Ok(out)
}

pub fn fresh_name(config: &Config, want: &str) -> String {
    let clash = |n: &str| {
        config.curves.iter().any(|c| c.name == n)
            || config.crossings.iter().any(|x| x.name == n)
            || config.basepoints.iter().any(|p| p.name == n)
    };
    if !clash(want) {
        return want.to_string();
    }
    for i in 1.. {
        let name = format!("{want}{i}");
        if !clash(&name) {
            return name;
        }
    }
    unreachable!()
}

/// Candidate passes every requested post-filter.
fn candidate_filter(
    config: &Config,
    extension: &Config,
    spec: &CandidateSpec,
    new_idx: CurveIdx,
) -> Result<bool, TopoError> {
    if !validate_config(extension).is_empty() {
        return Ok(false);
    }
    let analysis = analyze(extension)?;
    let class = classify_curve_idx(extension, &analysis, new_idx)?;
    if class.is_trivial() {
        return Ok(false);
    }
    if (spec.two_sided || spec.chain_grade) && class.sidedness != Sidedness::TwoSided {
        return Ok(false);
    }
    if spec.chain_grade && !chain_grade_class(extension, &class) {
        return Ok(false);
    }
    // remerge guard: cutting the extension along all old curves must
    // reproduce the old region inventory exactly
    let old_idx: Vec<CurveIdx> = (0..extension.curves.len()).filter(|&c| c != new_idx).collect();
    if !old_idx.is_empty() {
        let cut = cut_along_with(extension, &analysis, &old_idx)?;
        let mut got: Vec<SurfaceInvariants> = cut.surfaces();
        let mut want: Vec<SurfaceInvariants> = config.regions.iter().map(|r| r.surface).collect();
        got.sort();
        want.sort();
        if got != want {
            return Ok(false);
        }
    }
    Ok(true)
}

fn push_candidate(
    config: &Config,
    extension: Config,
    curve_name: &str,
    spec: &CandidateSpec,
    out: &mut Vec<Candidate>,
) -> Result<(), TopoError> {
    let new_idx = extension.curves.len() - 1;
    if candidate_filter(config, &extension, spec, new_idx)? {
        let canonical = canonical_text(&extension, Relabel::Keep)?;
        out.push(Candidate { config: extension, curve: curve_name.to_string(), canonical });
    }
    Ok(())
}

// ---------------------------------------------------------------------
// crossing-free candidates: essential circles inside one region
// ---------------------------------------------------------------------

struct PiecePlan {
    surface: SurfaceInvariants,
    old_faces: Vec<usize>, // positions into the split region's face list
    collar: u32,
    new_faces: Vec<FaceIdx>,
    new_flags: Vec<AttachFlag>,
}

fn circle_candidates(
    config: &Config,
    analysis: &Analysis,
    curve_name: &str,
    spec: &CandidateSpec,
    out: &mut Vec<Candidate>,
) -> Result<(), TopoError> {
    let old_face_count = analysis.faces.faces.len();
    for (ri, region) in config.regions.iter().enumerate() {
        let s = region.surface;
        let nf = region.faces.len();
        let all: Vec<usize> = (0..nf).collect();
        let f0 = old_face_count; // two-sided: z's side-0 face; side-1 is f0+1
        let mut plans: Vec<(i8, Vec<PiecePlan>)> = Vec::new();

        // --- two-sided separating: R -> (Q1 | z | Q2) ---
        for subset_mask in 0..(1u32 << nf) {
            let f1: Vec<usize> =
                all.iter().copied().filter(|i| subset_mask & (1 << i) != 0).collect();
            let f2: Vec<usize> =
                all.iter().copied().filter(|i| subset_mask & (1 << i) == 0).collect();
            for c1 in 0..=region.boundary_collar {
                let c2 = region.boundary_collar - c1;
                for k1 in 0..=s.punctures {
                    let k2 = s.punctures - k1;
                    let b1 = f1.len() as u32 + c1 + 1;
                    let b2 = f2.len() as u32 + c2 + 1;
                    for (t1, t2) in split_types(s) {
                        let q1 = SurfaceInvariants {
                            orientable: t1.0,
                            genus: t1.1,
                            punctures: k1,
                            boundary: b1,
                        };
                        let q2 = SurfaceInvariants {
                            orientable: t2.0,
                            genus: t2.1,
                            punctures: k2,
                            boundary: b2,
                        };
                        for fl1 in [AttachFlag::Match, AttachFlag::Reverse] {
                            for fl2 in [AttachFlag::Match, AttachFlag::Reverse] {
                                plans.push((
                                    1,
                                    vec![
                                        PiecePlan {
                                            surface: q1,
                                            old_faces: f1.clone(),
                                            collar: c1,
                                            new_faces: vec![f0],
                                            new_flags: vec![fl1],
                                        },
                                        PiecePlan {
                                            surface: q2,
                                            old_faces: f2.clone(),
                                            collar: c2,
                                            new_faces: vec![f0 + 1],
                                            new_flags: vec![fl2],
                                        },
                                    ],
                                ));
                            }
                        }
                    }
                }
            }
        }

        // --- two-sided nonseparating: R -> Q with both z sides ---
        for q in nonsep_two_sided_types(s) {
            for fl1 in [AttachFlag::Match, AttachFlag::Reverse] {
                for fl2 in [AttachFlag::Match, AttachFlag::Reverse] {
                    plans.push((
                        1,
                        vec![PiecePlan {
                            surface: q,
                            old_faces: all.clone(),
                            collar: region.boundary_collar,
                            new_faces: vec![f0, f0 + 1],
                            new_flags: vec![fl1, fl2],
                        }],
                    ));
                }
            }
        }

        // --- one-sided: R -> Q with z's single face ---
        for q in one_sided_types(s) {
            for fl in [AttachFlag::Match, AttachFlag::Reverse] {
                plans.push((
                    -1,
                    vec![PiecePlan {
                        surface: q,
                        old_faces: all.clone(),
                        collar: region.boundary_collar,
                        new_faces: vec![f0],
                        new_flags: vec![fl],
                    }],
                ));
            }
        }

        for (sign, pieces) in plans {
            let ext = build_circle_extension(config, ri, sign, &pieces, curve_name);
            push_candidate(config, ext, curve_name, spec, out)?;
        }
    }
    Ok(())
}

/// Splitting a surface along an essential two-sided separating circle:
/// orientability/genus pairs for the two pieces.
fn split_types(s: SurfaceInvariants) -> Vec<((bool, u32), (bool, u32))> {
    let mut out = Vec::new();
    if s.orientable {
        for g1 in 0..=s.genus {
            out.push(((true, g1), (true, s.genus - g1)));
        }
    } else {
        for g1 in 1..s.genus {
            out.push(((false, g1), (false, s.genus - g1)));
        }
        let mut h = 0;
        while 2 * h < s.genus {
            let g2 = s.genus - 2 * h;
            out.push(((true, h), (false, g2)));
            out.push(((false, g2), (true, h)));
            h += 1;
        }
    }
    out
}

fn nonsep_two_sided_types(s: SurfaceInvariants) -> Vec<SurfaceInvariants> {
    let mut out = Vec::new();
    let b = s.boundary + 2;
    if s.orientable {
        if s.genus >= 1 {
            out.push(SurfaceInvariants::orientable(s.genus - 1, s.punctures, b));
        }
    } else {
        if s.genus >= 3 {
            out.push(SurfaceInvariants::nonorientable(s.genus - 2, s.punctures, b));
        }
        if s.genus % 2 == 0 {
            out.push(SurfaceInvariants::orientable((s.genus - 2) / 2, s.punctures, b));
        }
    }
    out
}

fn one_sided_types(s: SurfaceInvariants) -> Vec<SurfaceInvariants> {
    let mut out = Vec::new();
    if s.orientable {
        return out;
    }
    let b = s.boundary + 1;
    if s.genus >= 2 {
        out.push(SurfaceInvariants::nonorientable(s.genus - 1, s.punctures, b));
    }
    if s.genus % 2 == 1 {
        out.push(SurfaceInvariants::orientable((s.genus - 1) / 2, s.punctures, b));
    }
    out
}

fn build_circle_extension(
    config: &Config,
    split_region: usize,
    sign: i8,
    pieces: &[PiecePlan],
    curve_name: &str,
) -> Config {
    let mut ext = config.clone();
    let bp_name = fresh_name(config, "p");
    let bp_index = ext.basepoints.len();
    ext.basepoints.push(Basepoint { name: bp_name, curve: ext.curves.len() });
    ext.curves.push(Curve {
        name: curve_name.to_string(),
        visits: vec![VisitRef::Basepoint(bp_index)],
        signs: vec![sign],
    });

    let old = ext.regions.remove(split_region);
    for (pi, plan) in pieces.iter().enumerate() {
        let mut faces: Vec<FaceIdx> = plan.old_faces.iter().map(|&i| old.faces[i]).collect();
        let mut attach: Vec<AttachFlag> = plan.old_faces.iter().map(|&i| old.attach[i]).collect();
        faces.extend_from_slice(&plan.new_faces);
        attach.extend_from_slice(&plan.new_flags);
        ext.regions.push(Region {
            name: format!("{}s{}", old.name, pi + 1),
            surface: plan.surface,
            faces,
            attach,
            boundary_collar: plan.collar,
        });
    }
    ext
}

// ---------------------------------------------------------------------
// crossing candidates: closed port walks
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct WalkEvent {
    arc: usize,
    entry_side: u8,
}

fn walk_candidates(
    config: &Config,
    analysis: &Analysis,
    curve_name: &str,
    spec: &CandidateSpec,
    budget: &SearchBudget,
    out: &mut Vec<Candidate>,
) -> Result<(), TopoError> {
    if config.curves.is_empty() {
        return Ok(());
    }
    let map = &analysis.map;
    let region_of_side =
        |arc: usize, side: u8| analysis.region_of_face[analysis.faces.face_of(arc, side)];

    let max_new = budget
        .max_arcs
        .min(budget.max_crossings.saturating_sub(config.crossings.len()));
    if max_new == 0 {
        return Ok(());
    }

    // DFS over event sequences; the first event must be minimal in its walk
    let mut events: Vec<WalkEvent> = Vec::new();
    for arc in 0..map.n_arcs() {
        for side in [0u8, 1] {
            events.push(WalkEvent { arc, entry_side: side });
        }
    }

    let mut walk: Vec<WalkEvent> = Vec::new();
    let mut counts: BTreeMap<CurveIdx, u32> = BTreeMap::new();
    let mut walks: Vec<Vec<WalkEvent>> = Vec::new();

    struct Dfs<'a> {
        config: &'a Config,
        map: &'a Map,
        spec: &'a CandidateSpec,
        max_new: usize,
        events: &'a [WalkEvent],
        walks: &'a mut Vec<Vec<WalkEvent>>,
        cap: usize,
    }

    impl<'a> Dfs<'a> {
        fn admissible(&self, counts: &BTreeMap<CurveIdx, u32>, e: WalkEvent) -> bool {
            let cu = self.map.arc_curve[e.arc];
            match self.spec.exact.get(&cu) {
                Some(&limit) => counts.get(&cu).copied().unwrap_or(0) < limit,
                None => true,
            }
        }

        fn closes(&self, counts: &BTreeMap<CurveIdx, u32>) -> bool {
            self.spec
                .exact
                .iter()
                .all(|(cu, &want)| counts.get(cu).copied().unwrap_or(0) == want)
        }

        fn go(
            &mut self,
            walk: &mut Vec<WalkEvent>,
            counts: &mut BTreeMap<CurveIdx, u32>,
            region_of_side: &dyn Fn(usize, u8) -> usize,
        ) {
            if self.walks.len() >= self.cap {
                return;
            }
            let exit_region = {
                let last = *walk.last().unwrap();
                region_of_side(last.arc, 1 - last.entry_side)
            };
            let start_region = {
                let first = walk[0];
                region_of_side(first.arc, first.entry_side)
            };
            if exit_region == start_region && self.closes(counts) {
                self.walks.push(walk.clone());
                if self.walks.len() >= self.cap {
                    return;
                }
            }
            if walk.len() >= self.max_new {
                return;
            }
            for &e in self.events {
                if e < walk[0] {
                    continue; // canonical rotation start
                }
                if region_of_side(e.arc, e.entry_side) != exit_region {
                    continue;
                }
                if !self.admissible(counts, e) {
                    continue;
                }
                walk.push(e);
                *counts.entry(self.map.arc_curve[e.arc]).or_insert(0) += 1;
                self.go(walk, counts, region_of_side);
                walk.pop();
                let cu = self.map.arc_curve[e.arc];
                *counts.get_mut(&cu).unwrap() -= 1;
            }
        }
    }

    let mut dfs = Dfs {
        config,
        map,
        spec,
        max_new,
        events: &events,
        walks: &mut walks,
        cap: budget.max_candidates.saturating_mul(4).max(1024),
    };
    for &e in &events {
        if !dfs.admissible(&counts, e) {
            continue;
        }
        walk.push(e);
        *counts.entry(map.arc_curve[e.arc]).or_insert(0) += 1;
        dfs.go(&mut walk, &mut counts, &region_of_side);
        walk.pop();
        let cu = map.arc_curve[e.arc];
        *counts.get_mut(&cu).unwrap() -= 1;
    }

    let _ = dfs;
    for w in walks {
        realize_walk(config, analysis, &w, curve_name, spec, out)?;
    }
    Ok(())
}

/// Build every realization of one closed walk: arc orderings, sign patterns,
/// and region structures, filtered through the validator.
fn realize_walk(
    config: &Config,
    analysis: &Analysis,
    walk: &[WalkEvent],
    curve_name: &str,
    spec: &CandidateSpec,
    out: &mut Vec<Candidate>,
) -> Result<(), TopoError> {
    let m = walk.len();
    let map = &analysis.map;

    // group events per crossed arc
    let mut per_arc: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, e) in walk.iter().enumerate() {
        per_arc.entry(e.arc).or_default().push(i);
    }
    // orderings of events along each arc
    let mut ordering_sets: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
    for (&arc, evs) in &per_arc {
        let perms = permutations_of(evs);
        ordering_sets.push((arc, perms));
    }
    let mut ordering_choices: Vec<BTreeMap<usize, Vec<usize>>> = vec![BTreeMap::new()];
    for (arc, perms) in &ordering_sets {
        let mut next = Vec::new();
        for base in &ordering_choices {
            for p in perms {
                let mut b = base.clone();
                b.insert(*arc, p.clone());
                next.push(b);
            }
            if next.len() > MAX_ARC_ORDERINGS {
                next.truncate(MAX_ARC_ORDERINGS);
                break;
            }
        }
        ordering_choices = next;
    }

    for ordering in &ordering_choices {
        for sign_bits in 0..(1u32 << m) {
            let signs: Vec<i8> =
                (0..m).map(|i| if sign_bits & (1 << i) != 0 { -1 } else { 1 }).collect();
            realize_with_choices(
                config, analysis, walk, ordering, &signs, curve_name, spec, out,
            )?;
        }
    }
    let _ = map;
    Ok(())
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest: Vec<usize> = items.to_vec();
        rest.remove(i);
        for mut tail in permutations_of(&rest) {
            let mut v = vec![x];
            v.append(&mut tail);
            out.push(v);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn realize_with_choices(
    config: &Config,
    analysis: &Analysis,
    walk: &[WalkEvent],
    ordering: &BTreeMap<usize, Vec<usize>>,
    signs: &[i8],
    curve_name: &str,
    spec: &CandidateSpec,
    out: &mut Vec<Candidate>,
) -> Result<(), TopoError> {
    let m = walk.len();
    let map = &analysis.map;
    let new_curve_idx = config.curves.len();

    // fresh crossing names q1..qm, one per walk event
    let mut base = String::from("q");
    loop {
        let clash = (1..=m).any(|i| {
            let n = format!("{base}{i}");
            config.crossings.iter().any(|x| x.name == n)
                || config.basepoints.iter().any(|p| p.name == n)
        });
        if !clash {
            break;
        }
        base.push('q');
    }
    let cross_base = config.crossings.len();

    let mut ext = config.clone();
    for (i, e) in walk.iter().enumerate() {
        let u = map.arc_curve[e.arc];
        // entering from side 0 reads (old, new), from side 1 (new, old)
        let (first, second) =
            if e.entry_side == 0 { (u, new_curve_idx) } else { (new_curve_idx, u) };
        ext.crossings.push(Crossing { name: format!("{base}{}", i + 1), first, second });
    }

    // subdivide old curves: insert the new crossings into visit lists; the
    // original twist rides on the last piece so side labels are preserved
    // on every piece
    for (c, curve) in ext.curves.iter_mut().enumerate() {
        let old = &config.curves[c];
        let mut visits = Vec::new();
        let mut sgn = Vec::new();
        for (pos, v) in old.visits.iter().enumerate() {
            visits.push(*v);
            let arc = map.arc_base[c] + pos;
            let evs: &[usize] = ordering.get(&arc).map(|e| e.as_slice()).unwrap_or(&[]);
            for &event_idx in evs {
                sgn.push(1);
                visits.push(VisitRef::Crossing(cross_base + event_idx));
            }
            sgn.push(old.signs[pos]);
        }
        debug_assert_eq!(visits.len(), sgn.len());
        curve.visits = visits;
        curve.signs = sgn;
    }
    // the new curve
    ext.curves.push(Curve {
        name: curve_name.to_string(),
        visits: (0..m).map(|i| VisitRef::Crossing(cross_base + i)).collect(),
        signs: signs.to_vec(),
    });

    // map from new arcs to zones (old regions)
    let new_map = match Map::of_config(&ext) {
        Ok(m) => m,
        Err(_) => return Ok(()),
    };
    let new_faces = trace_faces(&new_map);
    // new arc -> old arc for old curves (piece of the subdivided arc)
    let mut new_arc_to_old: Vec<Option<usize>> = vec![None; new_map.n_arcs()];
    for c in 0..config.curves.len() {
        let old = &config.curves[c];
        let mut new_pos = 0;
        for (pos, _) in old.visits.iter().enumerate() {
            let arc = map.arc_base[c] + pos;
            let pieces = ordering.get(&arc).map_or(0, |e| e.len()) + 1;
            for _ in 0..pieces {
                new_arc_to_old[new_map.arc_base[c] + new_pos] = Some(arc);
                new_pos += 1;
            }
        }
    }
    // zone per new face
    let zone_of_face = |f: usize| -> usize {
        for seg in &new_faces.faces[f].walk {
            if let Some(old_arc) = new_arc_to_old[seg.arc] {
                return analysis.region_of_face[analysis.faces.face_of(old_arc, seg.side)];
            }
        }
        // all segments on the new curve: region entered by its passage
        let seg = new_faces.faces[f].walk[0];
        let pos = new_map.arc_pos[seg.arc];
        let e = walk[pos];
        analysis.region_of_face[analysis.faces.face_of(e.arc, 1 - e.entry_side)]
    };
    let n_new_faces = new_faces.faces.len();
    let mut zone_faces: Vec<Vec<usize>> = vec![Vec::new(); config.regions.len()];
    for f in 0..n_new_faces {
        zone_faces[zone_of_face(f)].push(f);
    }
    // passages per region
    let mut passages = vec![0usize; config.regions.len()];
    for e in walk {
        passages[analysis.region_of_face[analysis.faces.face_of(e.arc, 1 - e.entry_side)]] += 1;
    }

    // untouched regions map over directly; touched regions enumerate pieces
    let mut fixed_regions: Vec<Region> = Vec::new();
    let mut touched: Vec<usize> = Vec::new();
    for (ri, r) in config.regions.iter().enumerate() {
        if passages[ri] == 0 {
            if zone_faces[ri].len() != r.faces.len() {
                return Ok(()); // structural surprise; drop this realization
            }
            let mut faces = Vec::new();
            let mut attach = Vec::new();
            for (&old_f, &flag) in r.faces.iter().zip(r.attach.iter()) {
                match remap_face(analysis, old_f, flag, &new_arc_to_old, &new_faces) {
                    Some((nf, fl)) => {
                        faces.push(nf);
                        attach.push(fl);
                    }
                    None => return Ok(()),
                }
            }
            fixed_regions.push(Region {
                name: r.name.clone(),
                surface: r.surface,
                faces,
                attach,
                boundary_collar: r.boundary_collar,
            });
        } else {
            touched.push(ri);
        }
    }

    // enumerate piece structures for each touched region independently,
    // then take the product
    let mut structures: Vec<Vec<Vec<Region>>> = Vec::new();
    for &ri in &touched {
        let r = &config.regions[ri];
        let opts = piece_structures(r, &zone_faces[ri], passages[ri]);
        if opts.is_empty() {
            return Ok(());
        }
        structures.push(opts);
    }

    let mut combos: Vec<Vec<Region>> = vec![fixed_regions];
    for opts in &structures {
        let mut next = Vec::new();
        for base in &combos {
            for opt in opts {
                let mut b = base.clone();
                b.extend(opt.iter().cloned());
                next.push(b);
                if next.len() > MAX_REGION_STRUCTURES {
                    break;
                }
            }
            if next.len() > MAX_REGION_STRUCTURES {
                break;
            }
        }
        combos = next;
    }

    for regions in combos {
        let mut e = ext.clone();
        e.regions = regions;
        push_candidate(config, e, curve_name, spec, out)?;
    }
    Ok(())
}

/// Map an old face (with its attach flag) onto the retraced structure.
fn remap_face(
    analysis: &Analysis,
    old_face: usize,
    flag: AttachFlag,
    new_arc_to_old: &[Option<usize>],
    new_faces: &Faces,
) -> Option<(usize, AttachFlag)> {
    let seg = analysis.faces.faces[old_face].walk[0];
    // find a new arc that is a piece of this old arc carrying the same side
    let new_arc = new_arc_to_old.iter().position(|&o| o == Some(seg.arc))?;
    let nf = new_faces.face_of(new_arc, seg.side);
    let entry = new_faces.faces[nf].walk.iter().find(|s| s.arc == new_arc && s.side == seg.side)?;
    let toggled = entry.forward != seg.forward;
    let fl = match (flag, toggled) {
        (AttachFlag::Match, false) | (AttachFlag::Reverse, true) => AttachFlag::Match,
        _ => AttachFlag::Reverse,
    };
    Some((nf, fl))
}

/// All piece structures of a region cut by `passages` arcs whose zone traced
/// to `faces`: piece types, face distributions, collar and puncture splits.
fn piece_structures(region: &Region, faces: &[usize], passages: usize) -> Vec<Vec<Region>> {
    let s = region.surface;
    let target_chi = s.euler_characteristic() + passages as i64;
    let max_pieces = (passages + 1).min(faces.len() + region.boundary_collar as usize);
    let mut out = Vec::new();

    for q in 1..=max_pieces.max(1) {
        // assign each face to one of q pieces
        let assignments = face_assignments(faces.len(), q);
        for assign in &assignments {
            let mut piece_faces: Vec<Vec<usize>> = vec![Vec::new(); q];
            for (fi, &p) in assign.iter().enumerate() {
                piece_faces[p].push(faces[fi]);
            }
            for collars in compositions(region.boundary_collar, q) {
                // every piece needs at least one boundary circle
                if piece_faces
                    .iter()
                    .zip(&collars)
                    .any(|(f, &c)| f.is_empty() && c == 0)
                {
                    continue;
                }
                for punct in compositions(s.punctures, q) {
                    for types in type_choices(q, target_chi, &piece_faces, &collars, &punct, s) {
                        let mut regions = Vec::with_capacity(q);
                        for (pi, ty) in types.iter().enumerate() {
                            let attach = vec![AttachFlag::Match; piece_faces[pi].len()];
                            regions.push(Region {
                                name: format!("{}s{}", region.name, pi + 1),
                                surface: *ty,
                                faces: piece_faces[pi].clone(),
                                attach,
                                boundary_collar: collars[pi],
                            });
                        }
                        // enumerate attach flags only on the faces of split
                        // regions, bounded
                        out.extend(flag_variants(regions));
                        if out.len() > MAX_REGION_STRUCTURES {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

fn face_assignments(n: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        out.push(cur.clone());
        // increment base-q counter
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            cur[i] += 1;
            if cur[i] < q {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Orientability/genus choices per piece with the exact chi sum.
fn type_choices(
    q: usize,
    target_chi: i64,
    piece_faces: &[Vec<usize>],
    collars: &[u32],
    punct: &[u32],
    parent: SurfaceInvariants,
) -> Vec<Vec<SurfaceInvariants>> {
    // bound genus by the chi budget
    fn rec(
        i: usize,
        q: usize,
        remaining_chi: i64,
        acc: &mut Vec<SurfaceInvariants>,
        piece_faces: &[Vec<usize>],
        collars: &[u32],
        punct: &[u32],
        parent: SurfaceInvariants,
        out: &mut Vec<Vec<SurfaceInvariants>>,
    ) {
        if i == q {
            if remaining_chi == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let b = piece_faces[i].len() as u32 + collars[i];
        let k = punct[i];
        // chi of this piece ranges down from 2 - k - b (genus 0/1)
        let base = 2 - k as i64 - b as i64;
        for orientable in [true, false] {
            if orientable && !parent.orientable && false {
                // pieces of nonorientable parents may still be orientable
            }
            let mut g = if orientable { 0 } else { 1 };
            loop {
                let chi = if orientable { base - 2 * g as i64 } else { base - g as i64 };
                // remaining pieces can contribute at most base-like chi each
                if chi < remaining_chi - 2 * (q - i - 1) as i64 * 2 - 64 {
                    break;
                }
                let s = SurfaceInvariants { orientable, genus: g, punctures: k, boundary: b };
                if s.euler_characteristic() + max_possible(q - i - 1) >= remaining_chi {
                    acc.push(s);
                    rec(i + 1, q, remaining_chi - s.euler_characteristic(), acc, piece_faces, collars, punct, parent, out);
                    acc.pop();
                }
                if chi <= remaining_chi - (q - i - 1) as i64 * min_piece_chi() {
                    break;
                }
                g += 1;
                if g > 64 {
                    break;
                }
            }
        }
    }
    fn max_possible(pieces: usize) -> i64 {
        // a piece has chi at most 1 (a disc)
        pieces as i64
    }
    fn min_piece_chi() -> i64 {
        -64
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    rec(0, q, target_chi, &mut acc, piece_faces, collars, punct, parent, &mut out);
    out
}

/// Attach-flag variants over the new regions' faces.
fn flag_variants(regions: Vec<Region>) -> Vec<Vec<Region>> {
    let total: usize = regions.iter().map(|r| r.faces.len()).sum();
    if total > 10 {
        return vec![regions];
    }
    let mut out = Vec::new();
    for bits in 0..(1u32 << total) {
        let mut rs = regions.clone();
        let mut i = 0;
        for r in &mut rs {
            for a in &mut r.attach {
                *a = if bits & (1 << i) != 0 { AttachFlag::Reverse } else { AttachFlag::Match };
                i += 1;
            }
        }
        out.push(rs);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_config;

    #[test]
    fn projective_plane_core_curve() {
        // the empty configuration on N_1; the only essential circle is the
        // one-sided core
        let cfg = Config {
            ambient: SurfaceInvariants::nonorientable(1, 0, 0),
            curves: vec![],
            crossings: vec![],
            basepoints: vec![],
            regions: vec![Region {
                name: "R1".into(),
                surface: SurfaceInvariants::nonorientable(1, 0, 0),
                faces: vec![],
                attach: vec![],
                boundary_collar: 0,
            }],
        };
        let spec = CandidateSpec::default();
        let cands =
            enumerate_candidate_curves(&cfg, &spec, &SearchBudget::default()).unwrap();
        assert_eq!(cands.len(), 1, "N_1 carries exactly the core curve");
        let c = &cands[0];
        assert_eq!(c.config.sign_product(c.config.curves.len() - 1), -1);
    }

    #[test]
    fn no_essential_curves_inside_pants() {
        let cfg = Config {
            ambient: SurfaceInvariants::orientable(0, 0, 3),
            curves: vec![],
            crossings: vec![],
            basepoints: vec![],
            regions: vec![Region {
                name: "R1".into(),
                surface: SurfaceInvariants::orientable(0, 0, 3),
                faces: vec![],
                attach: vec![],
                boundary_collar: 3,
            }],
        };
        let spec = CandidateSpec::default();
        let cands =
            enumerate_candidate_curves(&cfg, &spec, &SearchBudget::default()).unwrap();
        assert!(cands.is_empty(), "every circle in pants is trivial, got {}", cands.len());
    }

    #[test]
    fn torus_curves_from_empty() {
        let cfg = Config {
            ambient: SurfaceInvariants::orientable(1, 0, 0),
            curves: vec![],
            crossings: vec![],
            basepoints: vec![],
            regions: vec![Region {
                name: "R1".into(),
                surface: SurfaceInvariants::orientable(1, 0, 0),
                faces: vec![],
                attach: vec![],
                boundary_collar: 0,
            }],
        };
        let spec = CandidateSpec::default();
        let cands =
            enumerate_candidate_curves(&cfg, &spec, &SearchBudget::default()).unwrap();
        // the torus has one essential unoriented circle type at this level:
        // the nonseparating one (complement an annulus)
        assert_eq!(cands.len(), 1);
    }

    #[test]
    fn braid_partner_exists_on_the_one_holed_torus_side() {
        let fig1 = "\
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
        let cfg = parse_config(fig1).unwrap();
        let a = cfg.curve_index("a").unwrap();
        let c = cfg.curve_index("c").unwrap();
        // a curve meeting a exactly once and disjoint from c: b is one, and
        // the enumeration must find at least one embedded representative
        let spec = CandidateSpec::default().with(a, 1).with(c, 0);
        let budget = SearchBudget { max_arcs: 2, ..Default::default() };
        let cands = enumerate_candidate_curves(&cfg, &spec, &budget).unwrap();
        assert!(!cands.is_empty());
        for cand in &cands {
            let zi = cand.config.curve_index(&cand.curve).unwrap();
            assert_eq!(cand.config.crossing_count(zi, a), 1);
            assert_eq!(cand.config.crossing_count(zi, c), 0);
        }
    }
}
