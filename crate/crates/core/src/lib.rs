pub mod constructions;
pub mod error;
pub mod lemmas;
mod packed;
pub mod polymatrix;
pub mod polyring;
pub mod posetkit;
pub mod signvec;
pub mod system;
pub mod varchenko;

pub use error::{Error, Result};
pub use lemmas::LemmaReport;
pub use polymatrix::PolyMatrix;
pub use polyring::{Factorization, Poly, Variable};
pub use posetkit::FinitePoset;
pub use signvec::{ElementSet, GroundSet, Sign, SignVector};
pub use system::SignSystem;
pub use varchenko::{
    build_signed, build_unsigned, build_unsigned_from_topes, closed_form_det, verify, verify_factor_chain,
    ElementOrder, FactorReport, VarchenkoMatrix, VerifyOptions,
};
