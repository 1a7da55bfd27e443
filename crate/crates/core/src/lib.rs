//! Skew-product quivers, free group actions and their quotients, with
//! finite-dimensional invariants of the associated quiver algebras.
//!
//! The pieces fit together like this:
//!
//! - [`quiver`]: finite weighted quivers, morphisms, isomorphism search.
//! - [`group`]: finite groups from Cayley tables and right actions on quivers.
//! - [`skew`]: skew products, translation actions, quotients with weight
//!   descent and lift, and reconstruction of a skew-product structure from
//!   any free action.
//! - [`cstar`]: regular vertices, K-theory via Smith normal form, and block
//!   structures and gradings of acyclic quiver algebras.
//! - [`verify`]: a self-checking suite tying all of the above together.
//! - [`cli`]: JSON documents, DOT export and the `skewquiver` commands.
//!
//! ```
//! use skewquiver::group::make_cyclic;
//! use skewquiver::quiver::{FiniteQuiver, Weight};
//! use skewquiver::skew::{check_skew_orbit, skew_product, Cocycle};
//!
//! let q = FiniteQuiver::from_parts(&["v"], &[("e", "v", "v", Weight::from_integer(1))]).unwrap();
//! let k = Cocycle::from_indices(&q, make_cyclic(2).unwrap(), &[1]);
//! let f = skew_product(&q, &k).unwrap();
//! assert_eq!(f.vertices(), ["v@0", "v@1"]);
//! check_skew_orbit(&q, &k).unwrap();
//! ```

pub mod cli;
pub mod cstar;
pub mod fixtures;
pub mod group;
pub mod quiver;
pub mod skew;
pub mod verify;
