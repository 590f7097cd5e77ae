//! Units of the integral group rings `ZC_{p^n}`: exact arithmetic, the
//! cyclotomic and Hoechsmann unit families, kernel lifts between levels, and
//! certificates for every construction.

pub mod arith;
mod bigser;
pub mod certificate;
pub mod context;
pub mod cyclotomic;
pub mod embedding;
pub mod error;
pub mod fixtures;
pub mod independence;
pub mod kernel;
pub mod linalg;
pub mod maps;
pub mod ring;
pub mod text;
pub mod units;
pub mod verify;
pub mod xadic;

pub use cyclotomic::CycInt;
pub use error::{Error, Result};
pub use ring::GroupRingElem;
pub use xadic::XAdicElem;
