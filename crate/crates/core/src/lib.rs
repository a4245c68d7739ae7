//! Numerical tools for rational and transcendental maps with cycles of Herman rings.
//!
//! The crate evaluates the map families on the Riemann sphere, classifies orbits,
//! estimates rotation numbers, searches parameter slices, checks the quadratic-like
//! structure of λz²e^z and renders fate images.

pub mod arithmetic;
pub mod dynamics;
pub mod error;
pub mod maps;
pub mod poly;
pub mod quadlike;
pub mod render;
pub mod sphere;

pub use error::{Error, Result};
pub use maps::MapSpec;
pub use num_complex::Complex64;
pub use sphere::SpherePoint;
