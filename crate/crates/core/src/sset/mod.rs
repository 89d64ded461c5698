//! Semi-simplicial and simplicial sets.

pub mod bisimplicial;
pub mod certificate;
pub mod random;
pub mod semi;
pub mod simplicial;
pub mod word;

pub use certificate::{CertificateFailure, CertificateKind, CertificateReport, HomotopyCertificate};
pub use bisimplicial::{interior_product, BiSemiSimplicialSet, BiSimplicialSet};
pub use random::{random_semi_simplicial, random_simplicial, RandomShape};
pub use semi::{PathSpace, SSetMap, SegalMap, SemiSimplicialSet, ValidationReport, Violation};
pub use simplicial::{EnumeratedSimplicialSet, SimplicialSet};
pub use word::{DegeneracyWord, SimplexRef};
