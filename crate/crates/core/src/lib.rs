//! Geometric intersection and self-intersection numbers of closed curves on
//! a closed orientable surface of genus `g >= 2`, computed symbolically from
//! words in the standard generators of the fundamental group.
//!
//! Pipeline: [`rewrite::normal_form`] solves the word problem with a
//! complete rewriting system, [`cyclic::cyclic_normal_form`] picks a
//! cyclically reduced representative of a conjugacy class,
//! [`cvp::enumerate_components`] lists the common-value components of two
//! such words, and [`index`] evaluates their indices and the resulting
//! minimal intersection counts. [`hyperbolic`] is a floating-point
//! cross-check against explicit Fuchsian generators.

pub mod cvp;
pub mod cyclic;
pub mod error;
pub mod gs_verify;
pub mod hyperbolic;
pub mod index;
pub mod rewrite;
pub mod word;

pub use error::{Error, Result};
pub use word::{format_word, parse_word, Genus, Letter, Word};
