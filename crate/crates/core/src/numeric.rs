//! Numeric kinds used at evaluation boundaries: complex doubles and complex
//! intervals, unified behind [`ComplexScalar`] so evaluation code is written
//! once. Symbolic work stays exact; these types appear only when a value is
//! actually computed.

use crate::gaussian::GaussianRational;
use num_complex::Complex64;

/// Scalar kinds a mixed polynomial can be evaluated over.
pub trait ComplexScalar: Clone {
    fn zero_val() -> Self;
    fn from_gaussian(c: &GaussianRational) -> Self;
    fn conj_val(&self) -> Self;
    fn add_val(&self, rhs: &Self) -> Self;
    fn mul_val(&self, rhs: &Self) -> Self;

    /// `[x^0, x^1, ..., x^n]`.
    fn power_table(x: Self, n: u32) -> Vec<Self> {
        let mut out = Vec::with_capacity(n as usize + 1);
        let mut acc = Self::from_gaussian(&GaussianRational::one());
        out.push(acc.clone());
        for _ in 0..n {
            acc = acc.mul_val(&x);
            out.push(acc.clone());
        }
        out
    }
}

impl ComplexScalar for Complex64 {
    fn zero_val() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_gaussian(c: &GaussianRational) -> Self {
        let (re, im) = c.to_f64_parts();
        Complex64::new(re, im)
    }
    fn conj_val(&self) -> Self {
        self.conj()
    }
    fn add_val(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_val(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

const ULPS: u32 = 1;

fn next_down(x: f64) -> f64 {
    if x.is_nan() || x == f64::NEG_INFINITY {
        return x;
    }
    if x == 0.0 {
        return -f64::from_bits(1);
    }
    let bits = x.to_bits();
    f64::from_bits(if x > 0.0 { bits - 1 } else { bits + 1 })
}

fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    f64::from_bits(if x > 0.0 { bits + 1 } else { bits - 1 })
}

fn widen_lo(x: f64) -> f64 {
    let mut y = x;
    for _ in 0..ULPS {
        y = next_down(y);
    }
    y
}

fn widen_hi(x: f64) -> f64 {
    let mut y = x;
    for _ in 0..ULPS {
        y = next_up(y);
    }
    y
}

/// A closed real interval with outward rounding by ulp widening.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "bad interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    /// Encloses an exact rational, widening one ulp on each side.
    pub fn from_rational(r: &num_rational::BigRational) -> Self {
        use num_traits::ToPrimitive;
        let x = r.to_f64().unwrap_or(f64::NAN);
        Interval::new(widen_lo(x), widen_hi(x))
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && 0.0 <= self.hi
    }

    /// Mignitude: the minimal absolute value over the interval.
    pub fn mig(&self) -> f64 {
        if self.contains_zero() {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    /// Magnitude: the maximal absolute value over the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(widen_lo(self.lo + o.lo), widen_hi(self.hi + o.hi))
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval::new(widen_lo(self.lo - o.hi), widen_hi(self.hi - o.lo))
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(widen_lo(lo), widen_hi(hi))
    }

    pub fn scale(&self, k: f64) -> Interval {
        if k >= 0.0 {
            Interval::new(widen_lo(self.lo * k), widen_hi(self.hi * k))
        } else {
            Interval::new(widen_lo(self.hi * k), widen_hi(self.lo * k))
        }
    }

    /// `x^n` with the even-power tightening.
    pub fn powi(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::ONE;
        }
        let a = self.lo.powi(n as i32);
        let b = self.hi.powi(n as i32);
        if n % 2 == 1 || self.lo >= 0.0 {
            Interval::new(widen_lo(a), widen_hi(b))
        } else if self.hi <= 0.0 {
            Interval::new(widen_lo(b), widen_hi(a))
        } else {
            Interval::new(0.0, widen_hi(a.max(b)))
        }
    }

    /// Reciprocal; requires the interval to exclude zero.
    pub fn recip(&self) -> Interval {
        assert!(!self.contains_zero(), "interval reciprocal through zero");
        Interval::new(widen_lo(1.0 / self.hi), widen_hi(1.0 / self.lo))
    }

    /// Sound enclosure of the cosine. Trusts libm to ~1 ulp and widens by a
    /// few ulps; extrema are included whenever a multiple of pi may lie inside.
    pub fn cos(&self) -> Interval {
        if self.width() >= 2.0 * std::f64::consts::PI {
            return Interval::new(-1.0, 1.0);
        }
        let fuzz = 1e-9;
        let ca = self.lo.cos();
        let cb = self.hi.cos();
        let mut lo = ca.min(cb);
        let mut hi = ca.max(cb);
        // k*pi in [lo, hi] -> extremum (-1)^k attained
        let k_lo = (self.lo / std::f64::consts::PI - fuzz).ceil() as i64;
        let k_hi = (self.hi / std::f64::consts::PI + fuzz).floor() as i64;
        for k in k_lo..=k_hi {
            if k.rem_euclid(2) == 0 {
                hi = 1.0;
            } else {
                lo = -1.0;
            }
        }
        Interval::new(
            (widen_lo(lo) - 4.0 * f64::EPSILON).max(-1.0),
            (widen_hi(hi) + 4.0 * f64::EPSILON).min(1.0),
        )
    }

    pub fn sin(&self) -> Interval {
        self.sub(&Interval::point(std::f64::consts::FRAC_PI_2)).neg().cos()
    }

    /// Square root of a nonnegative interval (lower end clamped at 0).
    pub fn sqrt(&self) -> Interval {
        let lo = self.lo.max(0.0);
        Interval::new(widen_lo(lo.sqrt()), widen_hi(self.hi.max(0.0).sqrt()))
    }
}

/// Rectangular complex interval.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn point(z: Complex64) -> Self {
        ComplexInterval {
            re: Interval::point(z.re),
            im: Interval::point(z.im),
        }
    }

    pub fn from_gaussian(c: &GaussianRational) -> Self {
        ComplexInterval {
            re: Interval::from_rational(&c.re),
            im: Interval::from_rational(&c.im),
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Lower bound for |z| over the rectangle.
    pub fn abs_lower(&self) -> f64 {
        let a = self.re.mig();
        let b = self.im.mig();
        (a * a + b * b).sqrt()
    }

    /// Upper bound for |z| over the rectangle.
    pub fn abs_upper(&self) -> f64 {
        let a = self.re.mag();
        let b = self.im.mag();
        widen_hi((a * a + b * b).sqrt())
    }

    pub fn add(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn mul(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn conj(&self) -> ComplexInterval {
        ComplexInterval::new(self.re, self.im.neg())
    }

    pub fn scale_real(&self, k: &Interval) -> ComplexInterval {
        ComplexInterval::new(self.re.mul(k), self.im.mul(k))
    }
}

impl ComplexScalar for ComplexInterval {
    fn zero_val() -> Self {
        ComplexInterval::new(Interval::ZERO, Interval::ZERO)
    }
    fn from_gaussian(c: &GaussianRational) -> Self {
        ComplexInterval::from_gaussian(c)
    }
    fn conj_val(&self) -> Self {
        self.conj()
    }
    fn add_val(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn mul_val(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
}
