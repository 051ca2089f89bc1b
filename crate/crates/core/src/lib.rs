//! Codes over `R = F2 + uF2 + u^2F2` (`u^3 = u`) and their binary Gray images.

pub mod error;
pub mod circulant;
pub mod exec;
pub mod extend;
pub mod gf2;
pub mod harness;
pub mod qr;
pub mod ring;
pub mod rmatrix;
pub mod weights;

pub use error::{Error, Result};
pub use exec::Exec;
pub use gf2::{BitMatrix, BitVector};
pub use ring::RingElement;
pub use rmatrix::{RMatrix, RVector};
