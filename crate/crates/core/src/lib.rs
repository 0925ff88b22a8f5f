//! Exact polyvector calculus on `K[x, y, z]`: Schouten brackets,
//! Chevalley-Eilenberg cohomology of the Heisenberg algebra with values in
//! its symmetric algebra, and the order by order homotopy transfer of the
//! bracket to cohomology.

pub mod cohomology;
pub mod error;
pub mod json;
pub mod poly;
pub mod polyvector;
pub mod sample;
pub mod schouten;
pub mod text;
pub mod transfer;

pub use cohomology::{
    hamiltonian_field, poisson, reconstruct_potential, CohClass, Gauge, Heisenberg, NormalForm,
};
pub use error::{Error, ParseError, Result};
pub use poly::{Monomial, Poly, Rational, Var};
pub use polyvector::{Blade, Grading, PolyVector};
pub use schouten::{delta_ce, schouten_closed, schouten_oracle, BracketKind};
pub use text::{parse_class, parse_poly, parse_pv};
pub use transfer::{
    d2, koszul_sign, phi2, shifted_bracket, ClassWord, DValue, ResidualReport, TransferTable,
};
