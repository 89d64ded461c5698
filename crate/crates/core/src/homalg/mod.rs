//! Exact homological algebra over the integers and over fields.

pub mod bicomplex;
pub mod complex;
pub mod field;
pub mod group;
pub mod homology_map;
pub mod homotopy;
pub mod kunneth;
pub mod map;
pub mod matrix;
pub mod snf;

pub use bicomplex::DoubleComplex;
pub use complex::{ChainComplex, HomologyGroup, Ring};
pub use group::FPAbelianGroup;
pub use homotopy::{chain_homotopy_from_certificate, CertifiedHomotopy};
pub use homology_map::{induced_map, induced_maps_agree, HomologyBasis, InducedMap};
pub use kunneth::kunneth;
pub use map::{is_homology_iso, mapping_cone, ChainHomotopy, ChainMap};
pub use matrix::IntMatrix;
pub use snf::{invariant_factors, rank_mod_p, smith_normal_form, SmithForm};
