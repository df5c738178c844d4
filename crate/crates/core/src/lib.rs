//! Zero-error coding for the (1,w) skew channel.
//!
//! A block of `w` binary slots is sent over a channel that shifts every
//! pulse by half a slot, right in the first slot of the block, left in the
//! last, and either way in between. Two words are confusable when some
//! pair of shift patterns makes their outputs coincide. The modules here
//! model that channel on an integer half-slot grid, build its
//! confusability graph, and implement the optimal code whose size is the
//! shifted Fibonacci number `F_w` (`F_0 = 1`, `F_1 = 2`).
//!
//! - [`words`]: binary words and their offset-tuple representation.
//! - [`channel`]: skew patterns, transmission and the brute-force
//!   confusability oracle.
//! - [`graph`]: weight components of the confusability graph and an exact
//!   maximum independent set search.
//! - [`code`]: the even-offset codebook, message ranking and the decoder.
//! - [`capacity`]: exact `F_w`, `C_{1,w}`, the Binet form and certified
//!   bounds.

pub mod capacity;
pub mod channel;
pub mod code;
mod error;
pub mod graph;
pub mod words;

pub use error::{Error, Result};
