//! Sparse mixed polynomials in `u`, `v` and their conjugates, with exact
//! Gaussian-rational coefficients.
//!
//! A term is `c * u^nu1 * v^nu2 * conj(u)^mu1 * conj(v)^mu2`. Terms are kept
//! in a `BTreeMap` keyed lexicographically on `(nu1, nu2, mu1, mu2)`, which
//! fixes the canonical ordering used by formatting and hashing. Zero
//! coefficients are never stored.

use crate::gaussian::GaussianRational;
use crate::numeric::ComplexScalar;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// One of the four formal variables of a mixed polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    U,
    UBar,
    V,
    VBar,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::U, Var::UBar, Var::V, Var::VBar];

    /// The conjugate partner variable.
    pub fn conj(self) -> Var {
        match self {
            Var::U => Var::UBar,
            Var::UBar => Var::U,
            Var::V => Var::VBar,
            Var::VBar => Var::V,
        }
    }

    /// Index of the complex coordinate this variable belongs to: 0 for the
    /// u-pair, 1 for the v-pair.
    pub fn pair(self) -> usize {
        match self {
            Var::U | Var::UBar => 0,
            Var::V | Var::VBar => 1,
        }
    }
}

/// Exponent quadruple `(nu1, nu2, mu1, mu2)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Exps {
    pub nu1: u32,
    pub nu2: u32,
    pub mu1: u32,
    pub mu2: u32,
}

impl Exps {
    pub fn new(nu1: u32, nu2: u32, mu1: u32, mu2: u32) -> Self {
        Exps { nu1, nu2, mu1, mu2 }
    }

    pub fn zero() -> Self {
        Exps::new(0, 0, 0, 0)
    }

    pub fn get(&self, x: Var) -> u32 {
        match x {
            Var::U => self.nu1,
            Var::UBar => self.mu1,
            Var::V => self.nu2,
            Var::VBar => self.mu2,
        }
    }

    pub fn set(&mut self, x: Var, e: u32) {
        match x {
            Var::U => self.nu1 = e,
            Var::UBar => self.mu1 = e,
            Var::V => self.nu2 = e,
            Var::VBar => self.mu2 = e,
        }
    }

    fn add(&self, other: &Exps) -> Exps {
        Exps {
            nu1: self.nu1 + other.nu1,
            nu2: self.nu2 + other.nu2,
            mu1: self.mu1 + other.mu1,
            mu2: self.mu2 + other.mu2,
        }
    }

    /// Support point `nu + mu` in the (u-total, v-total) lattice.
    pub fn support_point(&self) -> (u32, u32) {
        (self.nu1 + self.mu1, self.nu2 + self.mu2)
    }

    /// Swaps `nu <-> mu`, as conjugation does.
    pub fn conj(&self) -> Exps {
        Exps {
            nu1: self.mu1,
            nu2: self.mu2,
            mu1: self.nu1,
            mu2: self.nu2,
        }
    }
}

/// A mixed polynomial in canonical form.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MixedPolynomial {
    terms: BTreeMap<Exps, GaussianRational>,
}

impl MixedPolynomial {
    pub fn zero() -> Self {
        MixedPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = MixedPolynomial::zero();
        p.add_term(Exps::zero(), c);
        p
    }

    pub fn one() -> Self {
        MixedPolynomial::constant(GaussianRational::one())
    }

    pub fn var(x: Var) -> Self {
        let mut e = Exps::zero();
        e.set(x, 1);
        MixedPolynomial::monomial(e, GaussianRational::one())
    }

    pub fn monomial(e: Exps, c: GaussianRational) -> Self {
        let mut p = MixedPolynomial::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exps, GaussianRational)>) -> Self {
        let mut p = MixedPolynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Adds `c * z^e` into the polynomial, keeping canonical form.
    pub fn add_term(&mut self, e: Exps, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exps) -> GaussianRational {
        self.terms.get(e).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(&Exps::zero())
    }

    /// `supp(f)`: the set of `nu + mu` over nonzero terms.
    pub fn support(&self) -> BTreeSet<(u32, u32)> {
        self.terms.keys().map(|e| e.support_point()).collect()
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|e| [e.nu1, e.nu2, e.mu1, e.mu2])
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &GaussianRational) -> MixedPolynomial {
        if c.is_zero() {
            return MixedPolynomial::zero();
        }
        MixedPolynomial {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Mixed conjugate: `conj(f)(z, zbar) = conj(f(z, zbar))` pointwise.
    pub fn conjugate(&self) -> MixedPolynomial {
        MixedPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.conj(), c.conj()))
                .collect(),
        }
    }

    /// Formal Wirtinger derivative with respect to one of the four variables.
    pub fn wirtinger(&self, x: Var) -> MixedPolynomial {
        let mut out = MixedPolynomial::zero();
        for (e, c) in &self.terms {
            let k = e.get(x);
            if k == 0 {
                continue;
            }
            let mut e2 = *e;
            e2.set(x, k - 1);
            out.add_term(e2, c * &GaussianRational::from_int(k as i64));
        }
        out
    }

    pub fn pow(&self, n: u32) -> MixedPolynomial {
        let mut acc = MixedPolynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes 0 for a complex coordinate pair (both the variable and its
    /// conjugate), keeping only the terms free of that pair.
    pub fn restrict_pair_to_zero(&self, pair: usize) -> MixedPolynomial {
        MixedPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| match pair {
                    0 => e.nu1 == 0 && e.mu1 == 0,
                    _ => e.nu2 == 0 && e.mu2 == 0,
                })
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// True when some term has a positive exponent of `x`.
    pub fn depends_on(&self, x: Var) -> bool {
        self.terms.keys().any(|e| e.get(x) > 0)
    }

    /// Evaluates at `(u, v)` for any scalar kind (double or interval).
    pub fn evaluate<S: ComplexScalar>(&self, u: S, v: S) -> S {
        let ub = u.conj_val();
        let vb = v.conj_val();
        let max = |f: fn(&Exps) -> u32| self.terms.keys().map(f).max().unwrap_or(0);
        let pu = S::power_table(u, max(|e| e.nu1));
        let pub_ = S::power_table(ub, max(|e| e.mu1));
        let pv = S::power_table(v, max(|e| e.nu2));
        let pvb = S::power_table(vb, max(|e| e.mu2));
        let mut acc = S::zero_val();
        for (e, c) in &self.terms {
            let m = S::from_gaussian(c)
                .mul_val(&pu[e.nu1 as usize])
                .mul_val(&pub_[e.mu1 as usize])
                .mul_val(&pv[e.nu2 as usize])
                .mul_val(&pvb[e.mu2 as usize]);
            acc = acc.add_val(&m);
        }
        acc
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn evaluate_exact(
        &self,
        u: &GaussianRational,
        v: &GaussianRational,
    ) -> GaussianRational {
        let ub = u.conj();
        let vb = v.conj();
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            m *= &u.pow(e.nu1);
            m *= &ub.pow(e.mu1);
            m *= &v.pow(e.nu2);
            m *= &vb.pow(e.mu2);
            acc += &m;
        }
        acc
    }

    /// Record of which variables the polynomial depends on, plus the
    /// semiholomorphic flags.
    pub fn variable_dependence(&self) -> VariableDependence {
        VariableDependence {
            u: self.depends_on(Var::U),
            u_bar: self.depends_on(Var::UBar),
            v: self.depends_on(Var::V),
            v_bar: self.depends_on(Var::VBar),
        }
    }
}

/// Dependence flags for the four variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct VariableDependence {
    pub u: bool,
    pub u_bar: bool,
    pub v: bool,
    pub v_bar: bool,
}

impl VariableDependence {
    /// Independent of `conj(u)`.
    pub fn u_semiholomorphic(&self) -> bool {
        !self.u_bar
    }

    /// Independent of `conj(v)`.
    pub fn v_semiholomorphic(&self) -> bool {
        !self.v_bar
    }
}

impl Add for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn add(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn sub(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn mul(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        let mut out = MixedPolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn neg(self) -> MixedPolynomial {
        MixedPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for MixedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parse::format_polynomial(self))
    }
}

impl fmt::Debug for MixedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn p(s: &str) -> MixedPolynomial {
        parse(s).unwrap()
    }

    #[test]
    fn add_negate_gives_zero() {
        let f = p("v*conj(v) - u*conj(u) + conj(v)*u^2");
        assert!((&f - &f).is_zero());
        let negf = -&f;
        assert!((&f + &negf).is_zero());
    }

    #[test]
    fn monomial_product() {
        let prod = &MixedPolynomial::var(Var::U) * &MixedPolynomial::var(Var::UBar);
        let mut expected = MixedPolynomial::zero();
        expected.add_term(Exps::new(1, 0, 1, 0), GaussianRational::one());
        assert_eq!(prod, expected);
    }

    #[test]
    fn conjugate_swaps_monomial() {
        let f = p("conj(v)*u^2");
        assert_eq!(f.conjugate(), p("v*conj(u)^2"));
        assert!(MixedPolynomial::zero().conjugate().is_zero());
        assert_eq!(f.conjugate().conjugate(), f);
    }

    #[test]
    fn wirtinger_examples() {
        let ex1 = p("v*conj(v) - u*conj(u) + conj(v)*u^2");
        assert_eq!(ex1.wirtinger(Var::U), p("2*conj(v)*u - conj(u)"));
        assert_eq!(ex1.wirtinger(Var::UBar), p("0 - u"));
        assert!(MixedPolynomial::one().wirtinger(Var::V).is_zero());
    }

    #[test]
    fn support_examples() {
        let ex1 = p("v*conj(v) - u*conj(u) + conj(v)*u^2");
        let s: Vec<_> = ex1.support().into_iter().collect();
        assert_eq!(s, vec![(0, 2), (2, 0), (2, 1)]);
        let ex2 = p("u^10 + u^2*v + (v*conj(v))^2 + conj(u)*v^3");
        let s2: Vec<_> = ex2.support().into_iter().collect();
        assert_eq!(s2, vec![(0, 4), (1, 3), (2, 1), (10, 0)]);
        assert!(MixedPolynomial::zero().support().is_empty());
    }

    #[test]
    fn cancel_to_zero() {
        assert!(p("u - u").is_zero());
    }

    #[test]
    fn evaluate_examples() {
        let ex1 = p("v*conj(v) - u*conj(u) + conj(v)*u^2");
        let one = GaussianRational::one();
        assert_eq!(ex1.evaluate_exact(&one, &one), GaussianRational::one());
        let zero = GaussianRational::zero();
        assert!(ex1.evaluate_exact(&zero, &zero).is_zero());
    }

    #[test]
    fn dependence_examples() {
        let ex1 = p("v*conj(v) - u*conj(u) + conj(v)*u^2");
        let d = ex1.variable_dependence();
        assert!(d.u && d.u_bar && d.v && d.v_bar);
        assert!(!d.u_semiholomorphic());

        let face = p("u^2*v + (v*conj(v))^2");
        let d = face.variable_dependence();
        assert!(d.u_semiholomorphic());
        assert!(!d.u_bar);

        let just_u = p("u");
        let d = just_u.variable_dependence();
        assert!(d.u && !d.u_bar && !d.v && !d.v_bar);
    }
}
