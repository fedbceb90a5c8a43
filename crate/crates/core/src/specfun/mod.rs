//! Special functions: Airy Ai (with derivative and zeros) and the order-zero
//! Bessel functions J0, I0, K0.
//!
//! Everything here is a pure function of its arguments.

mod airy;
mod bessel;
mod dd;

pub use airy::{airy_ai, airy_ai_pair, airy_ai_prime, airy_ai_zero, AiryPair, AiryZeroIndex};
pub use bessel::{bessel_i0, bessel_j0, bessel_k0};
