//! Exact verification of flag-algebra certificates.
//!
//! The crate enumerates admissible graphs and flags, computes pair densities
//! over hosts, checks positive semidefiniteness in rational arithmetic, and
//! verifies certificates of the form
//! `max_H (d_A(H) + Σ_i c_H(σ_i, m_i, Q_i)) <= bound`.
//!
//! ```
//! let report = flagcert::certificate::verify(&flagcert::pentagon::certificate()).unwrap();
//! assert_eq!(report.bound.to_string(), "24/625");
//! ```
//!
//! The `book/` directory holds a guide whose examples run as doc-tests.

pub mod blowup;
pub mod certificate;
pub mod error;
pub mod flag;
pub mod graph;
pub mod linalg;
pub mod pentagon;
pub mod sdp;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/flags.md")]
    mod flags {}
    #[doc = include_str!("../../../book/src/densities.md")]
    mod densities {}
    #[doc = include_str!("../../../book/src/psd.md")]
    mod psd {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/pentagon.md")]
    mod pentagon {}
    #[doc = include_str!("../../../book/src/blowups.md")]
    mod blowups {}
    #[doc = include_str!("../../../book/src/sdp.md")]
    mod sdp {}
}
