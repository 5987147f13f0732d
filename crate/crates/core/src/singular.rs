//! The singular system `(s1, s2, s3)` of a mixed polynomial, its
//! semiholomorphic reduction, axis restrictions, and realification to
//! polynomial systems over the four real coordinates.

use crate::gaussian::GaussianRational;
use crate::newton::NewtonError;
use crate::poly::{MixedPolynomial, Var};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Which complex coordinate an axis restriction sets to zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    /// Substitute `u = 0`: the result lives on the v-line.
    UZero,
    /// Substitute `v = 0`: the result lives on the u-line.
    VZero,
}

/// The defining system of the singular set.
#[derive(Clone, Debug)]
pub struct SingularSystem {
    /// `f_u * conj(f_vbar) - conj(f_ubar) * f_v`.
    pub s1: MixedPolynomial,
    /// `|f_u|^2 - |f_ubar|^2`.
    pub s2: MixedPolynomial,
    /// `|f_v|^2 - |f_vbar|^2`.
    pub s3: MixedPolynomial,
    /// For a semiholomorphic `f` the system collapses to two equations.
    pub reduced: Option<ReducedSystem>,
}

/// Two-equation description of the singular set of a semiholomorphic
/// polynomial.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    /// Which conjugate variable is absent from `f`.
    pub kind: SemiholoKind,
    /// The derivative equation (`f_u` or `f_v`).
    pub derivative: MixedPolynomial,
    /// The remaining real equation (`s3` or `s2`).
    pub real_part: MixedPolynomial,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SemiholoKind {
    USemiholomorphic,
    VSemiholomorphic,
}

impl SingularSystem {
    pub fn members(&self) -> [&MixedPolynomial; 3] {
        [&self.s1, &self.s2, &self.s3]
    }
}

/// Builds the singular system of `f`. Errors on the zero polynomial.
pub fn singular_system(f: &MixedPolynomial) -> Result<SingularSystem, NewtonError> {
    if f.is_zero() {
        return Err(NewtonError::EmptySupport);
    }
    let fu = f.wirtinger(Var::U);
    let fub = f.wirtinger(Var::UBar);
    let fv = f.wirtinger(Var::V);
    let fvb = f.wirtinger(Var::VBar);

    let s1 = &(&fu * &fvb.conjugate()) - &(&fub.conjugate() * &fv);
    let s2 = &(&fu * &fu.conjugate()) - &(&fub * &fub.conjugate());
    let s3 = &(&fv * &fv.conjugate()) - &(&fvb * &fvb.conjugate());

    let dep = f.variable_dependence();
    let reduced = if dep.u_semiholomorphic() {
        Some(ReducedSystem {
            kind: SemiholoKind::USemiholomorphic,
            derivative: fu,
            real_part: s3.clone(),
        })
    } else if dep.v_semiholomorphic() {
        Some(ReducedSystem {
            kind: SemiholoKind::VSemiholomorphic,
            derivative: fv,
            real_part: s2.clone(),
        })
    } else {
        None
    };

    Ok(SingularSystem { s1, s2, s3, reduced })
}

/// Substitutes zero for one complex coordinate (and its conjugate).
pub fn axis_restrict(f: &MixedPolynomial, axis: Axis) -> MixedPolynomial {
    match axis {
        Axis::UZero => f.restrict_pair_to_zero(0),
        Axis::VZero => f.restrict_pair_to_zero(1),
    }
}

/// A polynomial with exact rational coefficients in the real coordinates
/// `(x1, y1, x2, y2) = (Re u, Im u, Re v, Im v)`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct RealPolynomial {
    pub terms: BTreeMap<[u32; 4], BigRational>,
}

impl RealPolynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: [u32; 4], c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn evaluate(&self, x: &[f64; 4]) -> f64 {
        use num_traits::ToPrimitive;
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut m = c.to_f64().unwrap_or(f64::NAN);
            for (xi, &ei) in x.iter().zip(e.iter()) {
                m *= xi.powi(ei as i32);
            }
            acc += m;
        }
        acc
    }

    pub fn evaluate_exact(&self, x: &[BigRational; 4]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (xi, &ei) in x.iter().zip(e.iter()) {
                for _ in 0..ei {
                    m *= xi;
                }
            }
            acc += m;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> RealPolynomial {
        let mut out = RealPolynomial::default();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[var] -= 1;
            out.add_term(e2, c * BigRational::from_integer(e[var].into()));
        }
        out
    }

    pub fn evaluate_interval(&self, x: &[crate::numeric::Interval; 4]) -> crate::numeric::Interval {
        use crate::numeric::Interval;
        let max_deg = |i: usize| self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
        let mut pows: [Vec<Interval>; 4] = [vec![], vec![], vec![], vec![]];
        for i in 0..4 {
            let n = max_deg(i);
            let mut tab = Vec::with_capacity(n as usize + 1);
            tab.push(Interval::ONE);
            for k in 1..=n {
                tab.push(if k % 2 == 0 || k == 1 {
                    x[i].powi(k)
                } else {
                    tab[k as usize - 1].mul(&x[i])
                });
            }
            pows[i] = tab;
        }
        let mut acc = Interval::ZERO;
        for (e, c) in &self.terms {
            let mut m = Interval::from_rational(c);
            for i in 0..4 {
                m = m.mul(&pows[i][e[i] as usize]);
            }
            acc = acc.add(&m);
        }
        acc
    }
}

/// Real-and-imaginary-part expansion of one mixed polynomial.
#[derive(Clone, Debug)]
pub struct RealifiedMember {
    /// Index of the source polynomial in the input sequence.
    pub source: usize,
    pub real: RealPolynomial,
    /// Absent when the source is real-valued (fixed by conjugation).
    pub imag: Option<RealPolynomial>,
}

/// A system of real polynomials equivalent to the common zeros of the
/// sources.
#[derive(Clone, Debug, Default)]
pub struct RealSystem {
    pub members: Vec<RealifiedMember>,
}

impl RealSystem {
    /// Flat list of the real equations.
    pub fn equations(&self) -> Vec<&RealPolynomial> {
        let mut out = Vec::new();
        for m in &self.members {
            out.push(&m.real);
            if let Some(im) = &m.imag {
                out.push(im);
            }
        }
        out
    }
}

/// Expands each mixed polynomial exactly in `(x1, y1, x2, y2)`. Real-valued
/// members contribute one polynomial, complex-valued ones two; identically
/// zero members are dropped.
pub fn realify(polys: &[&MixedPolynomial]) -> RealSystem {
    let mut members = Vec::new();
    for (idx, f) in polys.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let (re, im) = realify_one(f);
        let real_valued = f.conjugate() == **f;
        debug_assert!(!real_valued || im.is_zero());
        members.push(RealifiedMember {
            source: idx,
            real: re,
            imag: if real_valued { None } else { Some(im) },
        });
    }
    RealSystem { members }
}

/// Exact expansion of `f(x1 + i y1, x2 + i y2)` into real and imaginary
/// parts.
pub fn realify_one(f: &MixedPolynomial) -> (RealPolynomial, RealPolynomial) {
    // complex polynomial in four real variables: map exponent -> gaussian coeff
    type CPoly = BTreeMap<[u32; 4], GaussianRational>;

    fn cpoly_mul(a: &CPoly, b: &CPoly) -> CPoly {
        let mut out = CPoly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                let c = ca * cb;
                let slot = out.entry(e).or_insert_with(GaussianRational::zero);
                *slot += &c;
                if slot.is_zero() {
                    out.remove(&e);
                }
            }
        }
        out
    }

    fn var_poly(re_idx: usize, conj: bool) -> CPoly {
        // x + i y or x - i y
        let mut p = CPoly::new();
        let mut ex = [0u32; 4];
        ex[re_idx] = 1;
        p.insert(ex, GaussianRational::one());
        let mut ey = [0u32; 4];
        ey[re_idx + 1] = 1;
        p.insert(
            ey,
            if conj {
                -GaussianRational::i()
            } else {
                GaussianRational::i()
            },
        );
        p
    }

    fn pow(base: &CPoly, n: u32) -> CPoly {
        let mut acc = CPoly::new();
        acc.insert([0; 4], GaussianRational::one());
        for _ in 0..n {
            acc = cpoly_mul(&acc, base);
        }
        acc
    }

    let u = var_poly(0, false);
    let ub = var_poly(0, true);
    let v = var_poly(2, false);
    let vb = var_poly(2, true);

    let mut total = CPoly::new();
    for (e, c) in f.terms() {
        let mut m = CPoly::new();
        m.insert([0; 4], c.clone());
        m = cpoly_mul(&m, &pow(&u, e.nu1));
        m = cpoly_mul(&m, &pow(&ub, e.mu1));
        m = cpoly_mul(&m, &pow(&v, e.nu2));
        m = cpoly_mul(&m, &pow(&vb, e.mu2));
        for (ex, cx) in m {
            let slot = total.entry(ex).or_insert_with(GaussianRational::zero);
            *slot += &cx;
            if slot.is_zero() {
                total.remove(&ex);
            }
        }
    }

    let mut re = RealPolynomial::default();
    let mut im = RealPolynomial::default();
    for (e, c) in total {
        re.add_term(e, c.re);
        im.add_term(e, c.im);
    }
    (re, im)
}
