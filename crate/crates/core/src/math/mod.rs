//! Special functions and generic numerical utilities.

mod hermite;
mod quadrature;
mod roots;

pub use hermite::{hermite_pair, hermite_unchecked, ln_factorial, HermitePair};
pub use quadrature::{integrate, integrate_with, QuadratureOptions, QuadratureResult};
pub use roots::{find_root, find_root_with, RootOptions};
