//! Polynomial systems whose solutions descend a complex along a Koszul
//! extension, with verification and reconstruction of solutions.
//!
//! Unknowns: `X_n` (the differential of the descended complex `A`), `Y_n`
//! (a `K`-linear map `F -> K ⊗ A`) and `Z_n` (a contraction of its cone).

mod assign;
mod poly;
mod system;
mod window;

pub use assign::{
    canonical_solution, coefficient_hom, conjugate, invert, reconstruct, verify_assignment, Assignment, DescentCertificate,
    VerifyReport,
};
pub use poly::{Family, SymMatrix, SymPoly, Var};
pub use system::{
    build_b_concrete, build_b_symbolic, generate_system, w_matrix, Equation, PolynomialSystem, Position, SystemShape, Tag,
};
pub use window::{truncate_extend, WindowCertificate};
