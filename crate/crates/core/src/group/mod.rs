//! Words, finite presentations, homomorphisms, and exhaustive enumeration of
//! homomorphisms into finite permutation groups.
//!
//! Nothing here decides the word problem. Equality of group elements is only
//! ever witnessed by free reduction or by evaluating in permutation probes.

mod finite;
mod hom;
mod perm;
mod presentation;
mod search;
mod word;

use thiserror::Error;

pub use finite::presentation_of_perm_group;
pub use hom::{verify_hom, PermHom, WordHom};
pub use perm::{Perm, PermGroupTarget, MAX_DEGREE, MAX_TABLE_ORDER};
pub use presentation::{add_relations, cyclic_normal_form, free_product, Presentation};
pub use search::{
    canonical_form, count_homs, count_homs_with, count_transitive_reps, count_transitive_reps_with,
    enumerate_homs, enumerate_homs_with, fingerprint, fingerprint_with, orbits, transitive_reps,
    HomFingerprint,
};
pub use word::{reduce_word, GenId, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator `{0}` is listed twice")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed generator id `{0}`, expected namespace.index")]
    BadGenerator(String),
    #[error("namespace `{0}` occurs in both factors")]
    NamespaceCollision(String),
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("element list is not closed under composition and inverse")]
    NotClosed,
    #[error("degree {0} is too large")]
    DegreeTooLarge(usize),
    #[error("probe group of order {0} is too large for a multiplication table")]
    TargetTooLarge(usize),
    #[error("unknown probe group `{0}` (expected Z/n, S_n with n <= 6, or D_n)")]
    UnknownProbe(String),
}
