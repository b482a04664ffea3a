//! Decides whether the antisymmetric elements of a group ring under an
//! oriented involution commute, both by brute force over a generating set and
//! by a structural classification, and cross-checks the two.

pub mod classify;
pub mod coset;
pub mod group;
pub mod groupring;
pub mod harness;
pub mod orient;
pub mod presdsl;
pub mod ring;
pub mod structure;

pub use classify::{CaseId, Classifier, TheoremCase};
pub use group::{FiniteGroup, Subgroup};
pub use groupring::{is_skew_commutative, phi_sigma, GroupRingElement, SkewVerdict};
pub use orient::{enumerate_kernels, Orientation};
pub use presdsl::{parse_presentation, Presentation, Word};
pub use ring::{CoeffRing, RingClass};
