//! Hilbert–Samuel functions, Hilbert coefficients, sectional genera and
//! indices of reducibility for primary ideals of quotient rings of
//! polynomial rings and of affine semigroup rings.

pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod poly;
pub mod report;
pub mod ring;
pub mod semigroup;
pub mod spec;
pub mod verdict;
