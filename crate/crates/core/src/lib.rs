pub mod census;
pub mod config;
pub mod cli;
pub mod error;
pub mod family;
pub mod formats;
pub mod frieze;
pub mod gf;
pub mod limits;
pub mod projlin;

pub use error::{FriezeError, Result};
pub use family::Family;
pub use gf::{make_field, Field, FieldElem};
pub use limits::Limits;
