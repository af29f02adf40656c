//! Exact arithmetic for free nilpotent groups `N_{r,k}`.
//!
//! The crate decides the word problem and computes Mal'cev coordinates two
//! independent ways:
//!
//! * [`geometry`] draws a word's prefix curve on the Cayley graph of the
//!   class-(k-1) group, closes it, and reads the top coordinates off oriented
//!   areas of plane projections;
//! * [`magnus`] embeds words into a degree-truncated free associative ring
//!   (`s_i -> 1 + x_i`) and peels coordinates degree by degree.
//!
//! The two routes share nothing but the [`basis`] enumeration, which is what
//! makes their agreement a meaningful check. [`words`] holds the raw word
//! plumbing.

pub mod basis;
pub mod geometry;
pub mod magnus;
pub mod words;
