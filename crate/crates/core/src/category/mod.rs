//! Finite categories, functors, monoids and the constructions built from them.

pub mod category;
pub mod functor;
pub mod monoid;
pub mod resolution;

pub use category::{Composite, FinNonUnitalCategory};
pub use functor::{nat_trans_homotopy, FunctorData, NatTransData};
pub use monoid::{
    bar_construction, bar_extra_degeneracy, grothendieck_group, grothendieck_group_of_table, FinMonoid, MonoidAction,
    MonoidPresentation, Side,
};
pub use resolution::CommaResolution;
