pub mod category;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod homalg;
pub mod specseq;
pub mod sset;
pub mod theorems;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/semi-simplicial.md")]
    mod semi_simplicial {}
    #[doc = include_str!("../../../book/src/simplicial.md")]
    mod simplicial {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/products.md")]
    mod products {}
    #[doc = include_str!("../../../book/src/categories.md")]
    mod categories {}
    #[doc = include_str!("../../../book/src/monoids.md")]
    mod monoids {}
    #[doc = include_str!("../../../book/src/spectral-sequences.md")]
    mod spectral_sequences {}
    #[doc = include_str!("../../../book/src/checks.md")]
    mod checks {}
    #[doc = include_str!("../../../book/src/fixtures.md")]
    mod fixtures {}
}
