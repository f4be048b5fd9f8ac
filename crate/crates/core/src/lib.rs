//! Counting and Wilf classification of signed permutations that avoid
//! signed patterns.
//!
//! A signed permutation of length n over r signs is a permutation of
//! `{1..n}` with a sign from `{1..r}` attached to each entry; E_n^r is the
//! set of all n!·r^n of them. A signed pattern occurs when some subsequence
//! is order-isomorphic to the pattern's symbols and carries exactly its
//! signs.
//!
//! Counts are available four ways, which the tests hold against each other:
//! exhaustive search ([`enumerate`]), closed forms and recurrences
//! ([`formulas`]), and exponential generating functions over exact rational
//! power series ([`series`]). [`wilf`] partitions pattern pairs into
//! classes by count sequence.

pub mod cli;
pub mod combinat;
pub mod containment;
pub mod enumerate;
pub mod error;
pub mod formulas;
pub mod pattern;
pub mod registry;
pub mod series;
pub mod symmetry;
pub mod wilf;

pub use containment::{avoids, contains};
pub use enumerate::{count_avoiders, count_plain_avoiders, fingerprint, CountSequence, SearchConfig};
pub use error::{Error, Result};
pub use pattern::{PatternSet, PlainPattern, SignedPattern, SignedPermutation};
pub use series::PowerSeries;
pub use symmetry::{canonical_form, symmetry_orbit, SymmetryElement};
