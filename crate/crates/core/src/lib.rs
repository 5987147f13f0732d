//! Analysis of mixed polynomial germs `(C^2, 0) -> (C, 0)`.
//!
//! The crate provides exact sparse arithmetic on polynomials in `u`, `v`,
//! `conj(u)`, `conj(v)`, Newton boundary geometry, the singular system and
//! its realification, a certified emptiness/witness solver over weighted
//! slices, the six non-degeneracy predicates with their implication engine,
//! the semiholomorphic loop toolkit, and the Milnor-set machinery.

pub mod gaussian;
pub mod milnor;
pub mod newton;
pub mod nondeg;
pub mod numeric;
pub mod parse;
pub mod poly;
pub mod report;
pub mod semiholo;
pub mod singular;
pub mod solver;

pub use gaussian::GaussianRational;
pub use newton::{build_boundary, face_function, graded_part, radial_degree, refine_fan, NewtonBoundary, WeightVector};
pub use parse::{format_polynomial, parse, parse_with, ParseOptions};
pub use poly::{Exps, MixedPolynomial, Var};
pub use singular::{axis_restrict, realify, singular_system, Axis, SingularSystem};

/// Concrete complex scalar used at numeric evaluation boundaries.
pub type Complex64 = num_complex::Complex<f64>;
/// Interval scalar used for certified enclosures.
pub type CInterval = numeric::ComplexInterval;

/// A point of `C^2` in either numeric kind.
#[derive(Clone, Copy, Debug)]
pub struct ComplexPoint {
    pub u: Complex64,
    pub v: Complex64,
}

impl ComplexPoint {
    pub fn new(u: Complex64, v: Complex64) -> Self {
        ComplexPoint { u, v }
    }

    pub fn from_re(u: f64, v: f64) -> Self {
        ComplexPoint {
            u: Complex64::new(u, 0.0),
            v: Complex64::new(v, 0.0),
        }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.u.re, self.u.im, self.v.re, self.v.im]
    }

    pub fn from_coords(x: &[f64; 4]) -> Self {
        ComplexPoint {
            u: Complex64::new(x[0], x[1]),
            v: Complex64::new(x[2], x[3]),
        }
    }
}
