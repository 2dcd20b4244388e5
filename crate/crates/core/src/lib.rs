//! Exact-arithmetic construction of matrices in principal congruence
//! subgroups of SL_{k+1}(Z) and Sp_{2k}(Z) with prescribed row residues
//! modulo mutually co-maximal ideals, together with weighted generalized
//! projective spaces over finite quotients and decision procedures for
//! the USC, SAP, and GE ring conditions at desk scale.

pub mod conditions;
pub mod error;
pub mod exactring;
pub mod jsonio;
pub mod lifting;
pub mod matgroup;
pub mod projspace;
pub mod sampling;

pub use error::{Error, Result};
