//! Simple closed curve systems on punctured nonorientable (and orientable)
//! surfaces, modeled as signed combinatorial maps.
//!
//! The crate provides the data model and text format for curve
//! configurations, face tracing and neighborhood invariants, cutting and
//! curve classification, checkers for structured systems (chains, trees,
//! triangles, separating pairs, maximal abelian systems), the certificate
//! classifier for twists about separating curves, and a bounded brute-force
//! layer that enumerates configurations at desk scale and audits the
//! checkers against direct topological computation.

pub mod assemble;
pub mod canon;
pub mod config;
pub mod errors;
pub mod faces;
pub mod ops;
pub mod parse;
pub mod surface;
pub mod util;

pub use assemble::{assemble, cut_along, neighborhood_invariants, validate_config, Violation};
pub use config::{AttachFlag, Config, ConfigError, Crossing, Curve, Map, Region, VisitRef};
pub use errors::TopoError;
pub use parse::{parse_config, to_text, ParseError};
pub use surface::{expected_abelian_rank, expected_abelian_rank_with_s, SurfaceError, SurfaceInvariants};
