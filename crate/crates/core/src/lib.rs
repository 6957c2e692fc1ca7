//! Finite truncated Kan complexes and low-dimensional groupoids.
//!
//! The crate implements, at desk scale and with exhaustive verification:
//!
//! * [`sset`] — finite truncated simplicial sets, cycles, horns, discs and
//!   simplicial maps;
//! * [`kan`] — the n-category / n-groupoid axioms, horn fillers, homotopy
//!   sets and weak-equivalence checking;
//! * [`gpd`] — ordinary finite groupoids, pushouts along fully faithful
//!   maps, co-span composition and G-sets with the pushforward/pullback
//!   adjunction;
//! * [`homspaces`] — under-categories and hom-groupoids over discs, with
//!   the induced-map and Kan-fibration checks;
//! * [`yoneda`] — the object-indexed hom-groupoid families attached to
//!   edges and 2-cells of a 2-groupoid, their coherence law, and the
//!   recovery round-trips;
//! * [`testkit`] — deterministic generators of desk-scale instances;
//! * [`serial`] — the JSON file formats.

pub mod gpd;
pub mod homspaces;
pub mod kan;
pub mod serial;
pub mod sset;
pub mod testkit;
pub mod yoneda;
