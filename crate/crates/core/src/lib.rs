//! Combinatorial calculus of C*-surfaces.
//!
//! Start from a DPD presentation (a pair of Q-divisors on a curve), build the
//! boundary of its natural equivariant completion, resolve singularities into
//! weighted chains, normalize zigzags to standard form, and decide the
//! classification predicates on the result.
//!
//! ```
//! use cstar_core::classify::{extended_graph, picard_rank_of_pair};
//! use cstar_core::dpd::{resolved_boundary_zigzag, DpdPair};
//! use cstar_core::standard::standardize;
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let p = DpdPair::from_json(r#"{"d_plus":{"p0":"-1/2"},"d_minus":{"p1":"-1/2"}}"#)?;
//! let boundary = resolved_boundary_zigzag(&p)?.unwrap();
//! let (std_form, log) = standardize(&boundary)?;
//! assert_eq!(std_form.to_string(), "[[0,0,(-2)_3]]");
//! assert_eq!(boundary.replay(&log)?, std_form);
//! assert_eq!(picard_rank_of_pair(&p)?, 1);
//! let ext = extended_graph(&p)?;
//! assert!(ext.blowdown_to_standard()?.is_some());
//! # Ok(())
//! # }
//! ```

pub mod arith;
pub mod classify;
pub mod cli;
pub mod contract;
pub mod corpus;
pub mod dpd;
pub mod graph;
pub mod linalg;
pub mod render;
pub mod standard;
pub mod zigzag;

pub use arith::{cf_eval, dual_residue, floor_frac, hj_expand, HjPair, Rational};
pub use contract::{contract_subchain, is_contractible_to, ContractionTarget};
pub use graph::{GraphError, Shape, Site, Vertex, VertexKind, WeightedGraph};
pub use standard::{standardize, standardize_with, StandardizeOptions};
pub use zigzag::{elementary_transformation, Side, Step, TransformationLog, Zigzag};
