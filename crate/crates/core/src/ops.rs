//! Curve-level topology: intersection numbers, cutting, classification, and
//! recognition of structured systems (chains, trees, triangles, separating
//! pairs).

use crate::assemble::{analyze, cut_along_with, validate_config, Analysis, CutResult, Violation};
use crate::config::{Config, CurveIdx};
use crate::errors::TopoError;
use crate::surface::SurfaceInvariants;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sidedness {
    OneSided,
    TwoSided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Triviality {
    BoundsDisc,
    BoundsOncePuncturedDisc,
    BoundsMoebius,
    BoundaryParallel,
    NonTrivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Separation {
    Separating(Vec<SurfaceInvariants>),
    NonSeparating(SurfaceInvariants),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub sidedness: Sidedness,
    pub trivial: Triviality,
    pub separation: Separation,
    /// two-sided with orientable complement on a nonorientable ambient
    pub characteristic: bool,
}

impl CurveClass {
    pub fn is_nonseparating(&self) -> bool {
        matches!(self.separation, Separation::NonSeparating(_))
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial != Triviality::NonTrivial
    }
}

/// Validate and analyze; bigons poison every geometric intersection count,
/// so they get a dedicated error.
pub fn ensure_clean(config: &Config) -> Result<Analysis, TopoError> {
    let violations = validate_config(config);
    if violations.iter().any(|v| matches!(v, Violation::Bigon { .. })) {
        return Err(TopoError::BigonPresent);
    }
    if let Some(v) = violations.first() {
        return Err(TopoError::InvalidConfig(v.to_string()));
    }
    analyze(config).map_err(TopoError::Config)
}

/// Geometric intersection number of two distinct curves: the number of
/// shared crossings, valid because bigon-free configurations are in minimal
/// position.
pub fn intersection_number(config: &Config, a: &str, b: &str) -> Result<u32, TopoError> {
    let ai = config.curve_index(a)?;
    let bi = config.curve_index(b)?;
    if ai == bi {
        return Err(TopoError::PreconditionViolated("self-intersection is undefined".into()));
    }
    ensure_clean(config)?;
    Ok(config.crossing_count(ai, bi) as u32)
}

pub fn intersection_number_idx(config: &Config, a: CurveIdx, b: CurveIdx) -> u32 {
    config.crossing_count(a, b) as u32
}

/// Classify one curve: sidedness from the sign product, separation and
/// triviality from cutting, characteristic from complement orientability.
pub fn classify_curve(config: &Config, name: &str) -> Result<CurveClass, TopoError> {
    let idx = config.curve_index(name)?;
    let analysis = ensure_clean(config)?;
    classify_curve_idx(config, &analysis, idx)
}

pub fn classify_curve_idx(
    config: &Config,
    analysis: &Analysis,
    idx: CurveIdx,
) -> Result<CurveClass, TopoError> {
    let sidedness =
        if config.sign_product(idx) < 0 { Sidedness::OneSided } else { Sidedness::TwoSided };
    let cut = cut_along_with(config, analysis, &[idx])?;
    let separation = if cut.components.len() == 1 {
        Separation::NonSeparating(cut.components[0].surface)
    } else {
        Separation::Separating(cut.surfaces())
    };

    let trivial = if sidedness == Sidedness::OneSided {
        Triviality::NonTrivial
    } else {
        let mut t = Triviality::NonTrivial;
        for comp in &cut.components {
            let s = comp.surface;
            if cut.components.len() > 1 && s.is_disc() {
                t = Triviality::BoundsDisc;
                break;
            }
            if cut.components.len() > 1 && s.is_once_punctured_disc() {
                t = Triviality::BoundsOncePuncturedDisc;
                break;
            }
            if cut.components.len() > 1 && s.is_moebius_band() {
                t = Triviality::BoundsMoebius;
                break;
            }
            // annulus between the curve and an ambient boundary circle
            if cut.components.len() > 1
                && s.is_annulus()
                && comp.cut_circles == 1
                && comp.curves.is_empty()
            {
                t = Triviality::BoundaryParallel;
                break;
            }
        }
        t
    };

    let characteristic = !config.ambient.orientable
        && sidedness == Sidedness::TwoSided
        && cut.components.iter().all(|c| c.surface.orientable);

    Ok(CurveClass { sidedness, trivial, separation, characteristic })
}

/// True iff the named curves realize the declared adjacency exactly:
/// intersection one on edges, zero off edges.
pub fn recognize_pattern(
    config: &Config,
    vertices: &[&str],
    edges: &[(usize, usize)],
) -> Result<bool, TopoError> {
    let idx: Vec<CurveIdx> =
        vertices.iter().map(|n| config.curve_index(n)).collect::<Result<_, _>>()?;
    ensure_clean(config)?;
    Ok(pattern_matches(config, &idx, edges))
}

pub fn pattern_matches(config: &Config, idx: &[CurveIdx], edges: &[(usize, usize)]) -> bool {
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return false;
            }
            let want = u32::from(edges.contains(&(i, j)) || edges.contains(&(j, i)));
            if intersection_number_idx(config, idx[i], idx[j]) != want {
                return false;
            }
        }
    }
    true
}

pub fn path_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

pub fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// A curve admissible in chains and trees: two-sided, nontrivial,
/// nonseparating, and (on nonorientable ambients) with nonorientable
/// complement.
pub fn chain_grade(config: &Config, analysis: &Analysis, idx: CurveIdx) -> Result<bool, TopoError> {
    let class = classify_curve_idx(config, analysis, idx)?;
    Ok(chain_grade_class(config, &class))
}

pub fn chain_grade_class(config: &Config, class: &CurveClass) -> bool {
    if class.sidedness != Sidedness::TwoSided || class.is_trivial() {
        return false;
    }
    match &class.separation {
        Separation::NonSeparating(comp) => config.ambient.orientable || !comp.orientable,
        Separation::Separating(_) => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TriangleType {
    OrientationPreserving,
    OrientationReversing,
}

/// A triangle is three admissible curves pairwise intersecting once. Its
/// type is read off the orientability of the thickened union; a reversing
/// triangle's neighborhood is always N_{4,1}.
pub fn triangle_type(
    config: &Config,
    a1: &str,
    a2: &str,
    a3: &str,
) -> Result<(TriangleType, SurfaceInvariants), TopoError> {
    let idx: Vec<CurveIdx> = [a1, a2, a3]
        .iter()
        .map(|n| config.curve_index(n))
        .collect::<Result<_, _>>()?;
    let analysis = ensure_clean(config)?;
    if !pattern_matches(config, &idx, &complete_edges(3)) {
        return Err(TopoError::NotATriangle(format!(
            "{a1},{a2},{a3} do not pairwise intersect once"
        )));
    }
    for &i in &idx {
        if !chain_grade(config, &analysis, i)? {
            return Err(TopoError::NotATriangle(format!(
                "curve {} is not two-sided nonseparating with nonorientable complement",
                config.curve_name(i)
            )));
        }
    }
    let nu = crate::assemble::neighborhood_invariants(config, &idx)?;
    let ty = if nu.orientable {
        TriangleType::OrientationPreserving
    } else {
        TriangleType::OrientationReversing
    };
    Ok((ty, nu))
}

/// Do two disjoint admissible curves jointly separate the surface?
pub fn separating_pair_direct(config: &Config, a1: &str, a2: &str) -> Result<bool, TopoError> {
    let i1 = config.curve_index(a1)?;
    let i2 = config.curve_index(a2)?;
    let analysis = ensure_clean(config)?;
    check_pair_preconditions(config, &analysis, i1, i2)?;
    let cut = cut_along_with(config, &analysis, &[i1, i2])?;
    Ok(cut.components.len() == 2)
}

pub fn check_pair_preconditions(
    config: &Config,
    analysis: &Analysis,
    i1: CurveIdx,
    i2: CurveIdx,
) -> Result<(), TopoError> {
    if i1 == i2 {
        return Err(TopoError::PreconditionViolated("pair needs two distinct curves".into()));
    }
    if intersection_number_idx(config, i1, i2) != 0 {
        return Err(TopoError::PreconditionViolated("pair must be disjoint".into()));
    }
    for idx in [i1, i2] {
        let class = classify_curve_idx(config, analysis, idx)?;
        if class.sidedness != Sidedness::TwoSided {
            return Err(TopoError::PreconditionViolated(format!(
                "curve {} is one-sided",
                config.curve_name(idx)
            )));
        }
        match &class.separation {
            Separation::Separating(_) => {
                return Err(TopoError::PreconditionViolated(format!(
                    "curve {} separates alone",
                    config.curve_name(idx)
                )));
            }
            Separation::NonSeparating(comp) => {
                if comp.orientable && !config.ambient.orientable {
                    return Err(TopoError::PreconditionViolated(format!(
                        "curve {} has orientable complement",
                        config.curve_name(idx)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// True iff cutting along the chain's neighborhood leaves a disc component.
pub fn chain_separates_disc(config: &Config, chain: &[&str]) -> Result<bool, TopoError> {
    let idx: Vec<CurveIdx> =
        chain.iter().map(|n| config.curve_index(n)).collect::<Result<_, _>>()?;
    let analysis = ensure_clean(config)?;
    if !pattern_matches(config, &idx, &path_edges(idx.len())) {
        return Err(TopoError::NotAChain(format!("{} curves do not form a chain", idx.len())));
    }
    let cut = cut_along_with(config, &analysis, &idx)?;
    Ok(cut.components.iter().any(|c| c.surface.is_disc()))
}

/// Cut along a set of named curves.
pub fn cut_along_names(config: &Config, names: &[&str]) -> Result<CutResult, TopoError> {
    let idx: Vec<CurveIdx> =
        names.iter().map(|n| config.curve_index(n)).collect::<Result<_, _>>()?;
    let analysis = ensure_clean(config)?;
    cut_along_with(config, &analysis, &idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_config;

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
    fn classify_separating_curve() {
        let cfg = parse_config(FIG1).unwrap();
        let class = classify_curve(&cfg, "c").unwrap();
        assert_eq!(class.sidedness, Sidedness::TwoSided);
        assert_eq!(class.trivial, Triviality::NonTrivial);
        assert!(!class.characteristic);
        match &class.separation {
            Separation::Separating(parts) => {
                assert!(parts.contains(&SurfaceInvariants::orientable(1, 0, 1)));
                assert!(parts.contains(&SurfaceInvariants::nonorientable(3, 0, 1)));
            }
            _ => panic!("c must separate"),
        }
    }

    #[test]
    fn chain_members_are_chain_grade() {
        let cfg = parse_config(FIG1).unwrap();
        let analysis = ensure_clean(&cfg).unwrap();
        for name in ["a", "b"] {
            let idx = cfg.curve_index(name).unwrap();
            assert!(chain_grade(&cfg, &analysis, idx).unwrap(), "curve {name}");
        }
        let c = cfg.curve_index("c").unwrap();
        assert!(!chain_grade(&cfg, &analysis, c).unwrap());
    }

    #[test]
    fn intersection_numbers() {
        let cfg = parse_config(FIG1).unwrap();
        assert_eq!(intersection_number(&cfg, "a", "b").unwrap(), 1);
        assert_eq!(intersection_number(&cfg, "a", "c").unwrap(), 0);
        assert!(intersection_number(&cfg, "a", "a").is_err());
        assert!(recognize_pattern(&cfg, &["a", "b"], &[(0, 1)]).unwrap());
        assert!(!recognize_pattern(&cfg, &["a", "c"], &[(0, 1)]).unwrap());
    }

    #[test]
    fn one_sided_core_of_projective_plane() {
        let n1 = "\
surface N1k0
curve c
basept p c
arc c 0 sign=-
region R faces=f0 type=S0k0b1 attach=f0:match
";
        let cfg = parse_config(n1).unwrap();
        let class = classify_curve(&cfg, "c").unwrap();
        assert_eq!(class.sidedness, Sidedness::OneSided);
        assert_eq!(class.trivial, Triviality::NonTrivial);
        match class.separation {
            Separation::NonSeparating(s) => assert!(s.is_disc()),
            _ => panic!(),
        }
    }

    #[test]
    fn moebius_bounding_curve_is_trivial() {
        // two-sided curve cutting N_5 into a Moebius band and N_{4,1}
        let cfg = parse_config(
            "\
surface N5k0
curve c
basept p c
region M faces=f0 type=N1k0b1 attach=f0:match
region R faces=f1 type=N4k0b1 attach=f1:match
",
        )
        .unwrap();
        let class = classify_curve(&cfg, "c").unwrap();
        assert_eq!(class.trivial, Triviality::BoundsMoebius);
    }

    #[test]
    fn characteristic_curve_on_n6() {
        // c two-sided with connected orientable complement: N_6 = S_2 glued
        // to itself through the curve with a reversal
        let cfg = parse_config(
            "\
surface N6k0
curve c
basept p c
region R faces=f0,f1 type=S2k0b2 attach=f0:match,f1:reverse
",
        )
        .unwrap();
        assert!(crate::assemble::validate_config(&cfg).is_empty(), "{:?}", crate::assemble::validate_config(&cfg));
        let class = classify_curve(&cfg, "c").unwrap();
        assert!(class.characteristic);
        match class.separation {
            Separation::NonSeparating(s) => {
                assert_eq!(s, SurfaceInvariants::orientable(2, 0, 2));
            }
            _ => panic!("characteristic curve is nonseparating"),
        }
    }

    #[test]
    fn separating_pair_on_n6() {
        // two disjoint curves on N_6 with a two-holed Klein piece between
        // them on each side
        let cfg = parse_config(
            "\
surface N6k0
curve a
curve b
basept p a
basept q b
region R1 faces=f0,f2 type=N2k0b2 attach=f0:match,f2:match
region R2 faces=f1,f3 type=N2k0b2 attach=f1:match,f3:match
",
        )
        .unwrap();
        assert!(crate::assemble::validate_config(&cfg).is_empty());
        assert!(separating_pair_direct(&cfg, "a", "b").unwrap());
    }

    #[test]
    fn non_separating_pair_on_n6() {
        // a single complementary piece touching all four circle sides:
        // cutting along the pair stays connected
        let cfg = parse_config(
            "\
surface N6k0
curve a
curve b
basept p a
basept q b
region R faces=f0,f1,f2,f3 type=N2k0b4
",
        )
        .unwrap();
        assert!(crate::assemble::validate_config(&cfg).is_empty());
        let got = separating_pair_direct(&cfg, "a", "b").unwrap();
        assert!(!got);
    }
}
