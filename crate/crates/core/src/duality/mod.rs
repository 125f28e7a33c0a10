//! Windowed duality checks over rings with exact linear algebra: the
//! homothety and biduality maps for semidualizing modules, Ext tables,
//! Ext-vanishing through Koszul complexes, and verification of liftings.
//!
//! Modules are given by presentation matrices. Resolutions are computed to
//! a finite depth, so every verdict carries its window `D`.

mod ext;
mod presented;
mod sdc;

pub use ext::{
    check_regular, compare_liftings, ext_sup_via_koszul, ext_table, ext_table_with_budget, find_isomorphism, induces_iso,
    lifting_verify, ExtSupReport, ExtTable, IsoSearch, LiftingVerdict,
};
pub use presented::{homology_iso_at, minimize_complex, resolve, Blocks, Presentation, PresentedComplex, Resolution};
pub use sdc::{
    biduality_check, homothety_check, homothety_check_with_budget, koszul_sdc_transfer, koszul_sdc_transfer_with_budget, BidualityOutcome, BidualityVerdict,
    DegreeEvidence, SdcOutcome, SdcVerdict, DEFAULT_BUDGET,
};
