//! Computational toolkit for Kummer-surface fibred Calabi-Yau threefolds
//! obtained from M-polarized K3 families.

pub mod error;
pub mod exact_algebra;
pub mod family_x2;
pub mod hodge;
pub mod hurwitz;
pub mod kodaira;
pub mod monodromy;
pub mod mpolar;
pub mod numeric;
pub mod perm;

pub use error::{Error, Result};
