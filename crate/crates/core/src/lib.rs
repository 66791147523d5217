//! Exact computations for symbolic powers `I^(m)` of the ideal of `l + 1`
//! points in the projective plane, `l` of which lie on a line.
//!
//! The divisor-theoretic pipeline works on the blow-up `X` of the plane at the
//! points: [`divisor_lattice`] provides the class group and its intersection
//! form, [`nef_reduction`] reduces fat-point classes to nef classes and
//! evaluates `h^0` by Riemann-Roch, [`generator_counter`] turns those numbers
//! into Hilbert functions and minimal-generator tables, and [`gin_builder`]
//! assembles the reverse-lexicographic generic initial ideal, its Newton
//! polytope and the limiting shape.
//!
//! [`oracle`] recomputes the same invariants from explicit point coordinates
//! with exact linear algebra and shares no code path with the divisor side.

pub mod divisor_lattice;
pub mod error;
pub mod generator_counter;
pub mod gin_builder;
pub mod nef_reduction;
pub mod oracle;

pub use divisor_lattice::{Configuration, DivisorClass, NegCurve, NegCurveKind, NegCurveSet};
pub use error::{Error, Result};
pub use generator_counter::{
    closed_form_table, generator_table, hilbert_function, next_degree_gen_count, GeneratorTable,
};
pub use gin_builder::{
    build_staircase, limiting_shape, newton_polytope, polytope_area, scaled_polytope, GinStaircase,
    Point2, Polytope2D,
};
pub use nef_reduction::{closed_form_h, h0, is_nef, reduce_to_nef, Outcome, ReductionResult};
