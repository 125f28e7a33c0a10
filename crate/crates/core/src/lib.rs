//! Exact computations around Koszul complexes over local rings: rings and
//! linear algebra, chain complexes, the Koszul DG algebra and its DG
//! modules, the polynomial descent system for DG module structures, and
//! windowed duality checks.

pub mod cli;
pub mod complex;
pub mod descent;
pub mod dg;
pub mod duality;
pub mod error;
pub mod format;
pub mod koszul;
pub mod linear;
pub mod ring;
#[doc(hidden)]
pub mod testing;

pub use error::{Error, Result};
pub use ring::{Elem, Matrix, Ring, RingHom};
