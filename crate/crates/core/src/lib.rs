pub mod algebra;
pub mod error;
pub mod pieri;
pub mod resolution;
pub mod schur;
pub mod tableaux;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/tableaux.md")]
    mod tableaux {}
    #[doc = include_str!("../../../book/src/pieri.md")]
    mod pieri {}
    #[doc = include_str!("../../../book/src/resolutions.md")]
    mod resolutions {}
}
