pub mod catalan;
pub mod chern;
pub mod chow;
pub mod error;
pub mod poly;
pub mod rational;
pub mod sample;
pub mod scalar;
pub mod series;
pub mod stability;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/chow.md")]
    mod chow {}
    #[doc = include_str!("../../../book/src/chern.md")]
    mod chern {}
    #[doc = include_str!("../../../book/src/stability.md")]
    mod stability {}
    #[doc = include_str!("../../../book/src/catalan.md")]
    mod catalan {}
}
