//! Bounded brute-force machinery: enumerate candidate curves and whole
//! configurations at desk scale, certify bounded maximality, and audit the
//! algebraic checkers against direct topological computation.

pub mod audit;
pub mod candidates;
pub mod corpus;
pub mod maximality;

use crate::config::CurveIdx;
use serde::Serialize;
use std::collections::BTreeMap;

/// Enumeration limits. Order of emission is always the canonical
/// flag-lexicographic order, a pure function of configuration and budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// region passages (= crossings) per candidate curve
    pub max_arcs: usize,
    /// total crossings per configuration
    pub max_crossings: usize,
    /// cap on emitted candidates per enumeration call
    pub max_candidates: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_arcs: 6, max_crossings: 6, max_candidates: 4096 }
    }
}

impl SearchBudget {
    /// Parse an override like `arcs=4,crossings=5,candidates=1000`.
    pub fn parse_override(s: &str) -> Option<SearchBudget> {
        let mut b = SearchBudget::default();
        for part in s.split(',') {
            let (k, v) = part.split_once('=')?;
            let v: usize = v.trim().parse().ok()?;
            match k.trim() {
                "arcs" => b.max_arcs = v,
                "crossings" => b.max_crossings = v,
                "candidates" => b.max_candidates = v,
                _ => return None,
            }
        }
        Some(b)
    }
}

/// Outcome of a bounded existence/maximality check. Search exhaustion is
/// never promoted to a positive verdict; only topological certificates are.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BoundedVerdict {
    CertifiedTrue { certificate: String },
    CertifiedFalse { witness: String },
    InconclusiveAtBound { bound: usize },
}

impl BoundedVerdict {
    pub fn is_true(&self) -> bool {
        matches!(self, BoundedVerdict::CertifiedTrue { .. })
    }
    pub fn is_false(&self) -> bool {
        matches!(self, BoundedVerdict::CertifiedFalse { .. })
    }
}

/// Intersection requirements for candidate curves. Curves not listed may be
/// crossed freely.
#[derive(Debug, Clone, Default)]
pub struct CandidateSpec {
    pub exact: BTreeMap<CurveIdx, u32>,
    /// demand a two-sided candidate
    pub two_sided: bool,
    /// demand two-sided + nontrivial + nonseparating (+ nonorientable
    /// complement on nonorientable ambients)
    pub chain_grade: bool,
}

impl CandidateSpec {
    pub fn disjoint_from(curves: impl IntoIterator<Item = CurveIdx>) -> Self {
        let mut spec = CandidateSpec::default();
        for c in curves {
            spec.exact.insert(c, 0);
        }
        spec
    }

    pub fn with(mut self, curve: CurveIdx, count: u32) -> Self {
        self.exact.insert(curve, count);
        self
    }
}
