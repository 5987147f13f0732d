//! The semiholomorphic toolkit: g-polynomials of boundary faces, critical
//! value loop tracking, argument-derivative analysis, the (S-i)/(S-ii) and
//! (M-i)-(M-iii) condition records, the non-isolatedness flag, and the
//! loop-to-polynomial construction.

use crate::gaussian::GaussianRational;
use crate::newton::{build_boundary, face_function, radial_degree, WeightVector};
use crate::nondeg::{Analyzer, NondegError, Status};
use crate::poly::{Exps, MixedPolynomial, Var};
use crate::singular::singular_system;
use crate::solver::Witness;
use num_complex::Complex64;
use num_rational::Rational64;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum SemiholoError {
    #[error("polynomial is not u-semiholomorphic")]
    NotSemiholomorphic,
    #[error("the u-derivative vanishes identically")]
    DerivativeVanishes,
    #[error("no compact 1-face with index {0}")]
    NoSuchFace(usize),
    #[error("loop coefficients are not 2-periodic (odd frequency {0})")]
    NotTwoPeriodic(i64),
    #[error("scaling exponent too small or parity-incompatible; smallest usable value is {k_min}")]
    KTooSmall { k_min: u32 },
    #[error("critical value of track {track} hits zero near t = {t}")]
    CriticalValueHitsZero { track: usize, t: f64 },
    #[error("track collision near t = {t}")]
    TrackCollision { t: f64 },
    #[error("leading coefficient vanishes near t = {t}")]
    LeadingCoefficientVanishes { t: f64 },
    #[error("root tracking failed: {0}")]
    TrackingFailed(String),
    #[error("grid refinement cannot separate a zero near t = {t}")]
    UnresolvedZero { t: f64 },
    #[error(transparent)]
    Nondeg(#[from] NondegError),
}

/// A trigonometric polynomial `sum_m c_m e^{i m t}` with exact coefficients.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct TrigPoly {
    pub terms: BTreeMap<i64, GaussianRational>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut t = TrigPoly::default();
        t.add(0, c);
        t
    }

    pub fn add(&mut self, freq: i64, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(freq)
            .or_insert_with(GaussianRational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&freq);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let (re, im) = c.to_f64_parts();
            acc += Complex64::new(re, im) * Complex64::from_polar(1.0, *m as f64 * t);
        }
        acc
    }

    /// d/dt, multiplying each harmonic by `i m`.
    pub fn derivative(&self) -> TrigPoly {
        let mut out = TrigPoly::default();
        for (m, c) in &self.terms {
            out.add(*m, &GaussianRational::from_ratio_im(*m, 1) * c);
        }
        out
    }

    pub fn two_periodic(&self) -> Result<(), SemiholoError> {
        for m in self.terms.keys() {
            if m.rem_euclid(2) != 0 {
                return Err(SemiholoError::NotTwoPeriodic(*m));
            }
        }
        Ok(())
    }

    pub fn max_abs_freq(&self) -> i64 {
        self.terms.keys().map(|m| m.abs()).max().unwrap_or(0)
    }

    /// Rescales the parameter: `t -> factor * t`.
    pub fn scale_freq(&self, factor: i64) -> TrigPoly {
        TrigPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m * factor, c.clone()))
                .collect(),
        }
    }
}

/// The r-independent rescaling of a face function on the `|v| = r` slice.
///
/// `coeffs[(a, b)]` is the trig-polynomial coefficient of `u^a conj(u)^b`.
#[derive(Clone, Debug)]
pub struct GPolynomial {
    pub face_index: usize,
    pub weight: WeightVector,
    pub k: Rational64,
    pub radial_degree: u64,
    pub coeffs: BTreeMap<(u32, u32), TrigPoly>,
}

impl GPolynomial {
    /// g-function of an arbitrary nonzero polynomial with a given weight.
    /// The polynomial is replaced by its `P`-face first, so the result is
    /// always r-independent.
    pub fn from_weight(g: &MixedPolynomial, weight: WeightVector) -> GPolynomial {
        let face = face_function(g, weight).expect("nonzero polynomial");
        let d = radial_degree(g, weight).expect("nonzero polynomial");
        let mut coeffs: BTreeMap<(u32, u32), TrigPoly> = BTreeMap::new();
        for (e, c) in face.terms() {
            let freq = e.nu2 as i64 - e.mu2 as i64;
            coeffs
                .entry((e.nu1, e.mu1))
                .or_insert_with(TrigPoly::zero)
                .add(freq, c.clone());
        }
        coeffs.retain(|_, t| !t.is_zero());
        GPolynomial {
            face_index: 0,
            weight,
            k: weight.slope(),
            radial_degree: d,
            coeffs,
        }
    }

    /// True when no `conj(u)` appears: each `g_t` is then a univariate
    /// complex polynomial in `u`.
    pub fn is_univariate(&self) -> bool {
        self.coeffs.keys().all(|(_, b)| *b == 0)
    }

    pub fn degree_u(&self) -> u32 {
        self.coeffs.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    /// Dense univariate coefficient list `[c_0(t), ..., c_s(t)]`.
    pub fn univariate_coeffs(&self, t: f64) -> Vec<Complex64> {
        let s = self.degree_u() as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); s + 1];
        for ((a, b), tp) in &self.coeffs {
            debug_assert_eq!(*b, 0);
            out[*a as usize] += tp.eval(t);
        }
        out
    }

    pub fn eval(&self, u: Complex64, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((a, b), tp) in &self.coeffs {
            acc += tp.eval(t) * u.powu(*a) * u.conj().powu(*b);
        }
        acc
    }

    /// d/dt of the whole family.
    pub fn t_derivative(&self) -> GPolynomial {
        GPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, tp)| (*k, tp.derivative()))
                .collect(),
            ..self.clone()
        }
    }

    /// Formal u-derivative (univariate families only).
    pub fn u_derivative(&self) -> GPolynomial {
        let mut coeffs: BTreeMap<(u32, u32), TrigPoly> = BTreeMap::new();
        for ((a, b), tp) in &self.coeffs {
            debug_assert_eq!(*b, 0);
            if *a == 0 {
                continue;
            }
            let mut scaled = TrigPoly::zero();
            for (m, c) in &tp.terms {
                scaled.add(*m, &GaussianRational::from_int(*a as i64) * c);
            }
            coeffs.insert((*a - 1, 0), scaled);
        }
        GPolynomial {
            coeffs,
            ..self.clone()
        }
    }
}

/// The g-polynomial of the i-th (1-based) compact 1-face of the boundary.
pub fn g_polynomial(f: &MixedPolynomial, i: usize) -> Result<GPolynomial, SemiholoError> {
    let boundary = build_boundary(f).map_err(NondegError::Newton)?;
    let face = boundary
        .one_faces
        .get(i.checked_sub(1).ok_or(SemiholoError::NoSuchFace(i))?)
        .ok_or(SemiholoError::NoSuchFace(i))?;
    let mut g = GPolynomial::from_weight(f, face.weight);
    g.face_index = i;
    Ok(g)
}

/// One tracked critical value sample.
#[derive(Clone, Copy, Debug)]
pub struct TrackSample {
    pub t: f64,
    /// Critical point of `g_t`.
    pub c: Complex64,
    /// Critical value `g_t(c)`.
    pub v: Complex64,
    /// `d arg(v)/dt`, computed by implicit differentiation.
    pub darg_dt: f64,
}

#[derive(Clone, Debug)]
pub struct CriticalValueTrack {
    pub index: usize,
    pub samples: Vec<TrackSample>,
    /// Largest jump of the critical point between grid neighbours.
    pub max_step_jump: f64,
}

/// Durand-Kerner all-roots solver for a dense complex polynomial given by
/// coefficients `[c_0, ..., c_s]`.
fn all_roots(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let s = coeffs.len() - 1;
    if s == 0 {
        return Some(vec![]);
    }
    let lead = coeffs[s];
    if lead.norm() < 1e-12 {
        return None;
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let bound = 1.0
        + monic[..s]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..s).map(|j| seed.powu(j as u32 + 1) * bound).collect();
    for _ in 0..400 {
        let mut shift = 0.0f64;
        for j in 0..s {
            let mut num = eval_dense(&monic, roots[j]);
            for l in 0..s {
                if l != j {
                    num /= roots[j] - roots[l];
                }
            }
            roots[j] -= num;
            shift = shift.max(num.norm());
        }
        if shift < 1e-13 {
            break;
        }
    }
    for r in &roots {
        if eval_dense(&monic, *r).norm() > 1e-7 * (1.0 + r.norm().powi(s as i32)) {
            return None;
        }
    }
    Some(roots)
}

fn eval_dense(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn eval_dense_derivative(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * z + c * j as f64;
    }
    acc
}

/// Newton-polishes a root of the dense polynomial from a seed.
fn polish_root(coeffs: &[Complex64], seed: Complex64) -> Option<Complex64> {
    let mut z = seed;
    for _ in 0..60 {
        let f = eval_dense(coeffs, z);
        if f.norm() < 1e-14 {
            return Some(z);
        }
        let d = eval_dense_derivative(coeffs, z);
        if d.norm() < 1e-14 {
            return None;
        }
        let step = f / d;
        z -= step;
        if step.norm() < 1e-15 {
            break;
        }
    }
    if eval_dense(coeffs, z).norm() < 1e-9 {
        Some(z)
    } else {
        None
    }
}

/// Tracks the roots of a t-family of dense univariate polynomials over a
/// uniform grid by Newton continuation, with collision detection and grid
/// doubling on ambiguity.
#[allow(clippy::mut_range_bound)] // doubling the grid always restarts the retry loop
fn track_root_family(
    coeff_fn: &dyn Fn(f64) -> Vec<Complex64>,
    mut grid: usize,
) -> Result<Vec<Vec<(f64, Complex64)>>, SemiholoError> {
    let cap = 1 << 20;
    'retry: loop {
        let step = std::f64::consts::TAU / grid as f64;
        let c0 = coeff_fn(0.0);
        let Some(mut roots) = all_roots(&c0) else {
            return Err(SemiholoError::LeadingCoefficientVanishes { t: 0.0 });
        };
        let nroots = roots.len();
        if nroots == 0 {
            return Ok(vec![]);
        }
        roots.sort_by(|a, b| {
            (a.re, a.im)
                .partial_cmp(&(b.re, b.im))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let mut tracks: Vec<Vec<(f64, Complex64)>> =
            roots.iter().map(|r| vec![(0.0, *r)]).collect();
        for k in 1..=grid {
            let t = k as f64 * step;
            let coeffs = coeff_fn(t);
            let mut new_roots = Vec::with_capacity(nroots);
            for tr in &tracks {
                let seed = tr.last().unwrap().1;
                match polish_root(&coeffs, seed) {
                    Some(r) => new_roots.push(r),
                    None => {
                        if grid * 2 <= cap {
                            grid *= 2;
                            continue 'retry;
                        }
                        return Err(SemiholoError::TrackingFailed(format!(
                            "no convergence at t = {t}"
                        )));
                    }
                }
            }
            for a in 0..nroots {
                for b in a + 1..nroots {
                    if (new_roots[a] - new_roots[b]).norm() < 1e-9 {
                        if grid * 2 <= cap {
                            grid *= 2;
                            continue 'retry;
                        }
                        return Err(SemiholoError::TrackCollision { t });
                    }
                }
            }
            // a root moving much further than the grid step hints at a lost
            // track
            let max_jump = tracks
                .iter()
                .zip(&new_roots)
                .map(|(tr, r)| (tr.last().unwrap().1 - r).norm())
                .fold(0.0f64, f64::max);
            if max_jump > 0.5 && grid * 2 <= cap {
                grid *= 2;
                continue 'retry;
            }
            for (tr, r) in tracks.iter_mut().zip(&new_roots) {
                tr.push((t, *r));
            }
        }
        return Ok(tracks);
    }
}

/// Tracks the critical values of a univariate g-polynomial family.
pub fn track_critical_values(
    g: &GPolynomial,
    grid: usize,
) -> Result<Vec<CriticalValueTrack>, SemiholoError> {
    if !g.is_univariate() {
        return Err(SemiholoError::NotSemiholomorphic);
    }
    if g.degree_u() < 2 {
        return Err(SemiholoError::DerivativeVanishes);
    }
    let gu = g.u_derivative();
    let gt = g.t_derivative();
    let coeff_fn = |t: f64| gu.univariate_coeffs(t);
    let tracks = track_root_family(&coeff_fn, grid)?;
    let mut out = Vec::new();
    for (idx, tr) in tracks.into_iter().enumerate() {
        let mut samples = Vec::with_capacity(tr.len());
        let mut max_jump = 0.0f64;
        let mut prev: Option<Complex64> = None;
        for (t, c) in tr {
            let v = g.eval(c, t);
            if v.norm() < 1e-12 {
                return Err(SemiholoError::CriticalValueHitsZero { track: idx, t });
            }
            // envelope: dv/dt equals the partial t-derivative at a critical
            // point
            let vdot = gt.eval(c, t);
            let darg = (vdot / v).im;
            if let Some(p) = prev {
                max_jump = max_jump.max((c - p).norm());
            }
            prev = Some(c);
            samples.push(TrackSample {
                t,
                c,
                v,
                darg_dt: darg,
            });
        }
        out.push(CriticalValueTrack {
            index: idx,
            samples,
            max_step_jump: max_jump,
        });
    }
    Ok(out)
}

/// Classification of one zero of the argument derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroKind {
    /// Sign change of the derivative.
    Transverse,
    /// The zero is a local extremum of the derivative (tangential touch).
    DegenerateExtremum,
}

#[derive(Clone, Copy, Debug)]
pub struct ArgCriticalPoint {
    pub track: usize,
    pub t: f64,
    pub kind: ZeroKind,
    pub second_derivative: f64,
}

#[derive(Clone, Debug, Default)]
pub struct ArgAnalysis {
    pub points: Vec<ArgCriticalPoint>,
    /// Tracks on which the argument derivative vanishes identically.
    pub identically_zero_tracks: Vec<usize>,
}

/// Finds and classifies the zeros of a sampled periodic function, refining
/// sign changes by bisection and tangential touches by golden-section
/// minimization of the square.
pub fn classify_zeros(
    func: &dyn Fn(f64) -> f64,
    grid: usize,
    track: usize,
) -> Result<Vec<ArgCriticalPoint>, SemiholoError> {
    let step = std::f64::consts::TAU / grid as f64;
    let vals: Vec<f64> = (0..=grid).map(|k| func(k as f64 * step)).collect();
    let scale = vals.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
    if scale < 1e-10 {
        return Ok(vec![]);
    }
    let mut points: Vec<ArgCriticalPoint> = Vec::new();
    let fresh = |t: f64, points: &[ArgCriticalPoint]| -> bool {
        let t = t.rem_euclid(std::f64::consts::TAU);
        !points.iter().any(|p| angle_distance(p.t, t) < 1e-6)
    };

    // grid values this close to zero are treated as noise anchors: the
    // touch scan below handles their neighbourhoods
    let noise = 1e-12 * scale;

    // transverse zeros: bisect sign changes
    for k in 0..grid {
        let (a, b) = (k as f64 * step, (k + 1) as f64 * step);
        let (fa, fb) = (vals[k], vals[k + 1]);
        if fa.abs() <= noise || fb.abs() <= noise {
            continue;
        }
        if fa * fb < 0.0 {
            let mut lo = a;
            let mut hi = b;
            let mut flo = fa;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let fm = func(mid);
                if flo * fm <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
                if hi - lo < 1e-12 {
                    break;
                }
            }
            let t = 0.5 * (lo + hi);
            if fresh(t, &points) {
                let d = step / 8.0;
                let (left, right) = (func(t - d), func(t + d));
                let kind = if left * right < 0.0 {
                    ZeroKind::Transverse
                } else {
                    ZeroKind::DegenerateExtremum
                };
                let second = (right - 2.0 * func(t) + left) / (d * d);
                points.push(ArgCriticalPoint {
                    track,
                    t: t.rem_euclid(std::f64::consts::TAU),
                    kind,
                    second_derivative: second,
                });
            }
        }
    }

    // tangential zeros: local minima of the square that reach zero
    for k in 0..grid {
        let prev = vals[(k + grid - 1) % grid];
        let cur = vals[k];
        let next = vals[k + 1];
        if cur.abs() <= prev.abs() && cur.abs() <= next.abs() && cur.abs() < 1e-3 * scale {
            let mut lo = (k as f64 - 1.0) * step;
            let mut hi = (k as f64 + 1.0) * step;
            let sq = |t: f64| {
                let v = func(t);
                v * v
            };
            for _ in 0..80 {
                let m1 = lo + 0.382 * (hi - lo);
                let m2 = lo + 0.618 * (hi - lo);
                if sq(m1) < sq(m2) {
                    hi = m2;
                } else {
                    lo = m1;
                }
                if hi - lo < 1e-12 {
                    break;
                }
            }
            let t = 0.5 * (lo + hi);
            let val = func(t);
            if val.abs() >= 1e-8 * scale.max(1.0) && val.abs() < 1e-6 * scale.max(1.0) {
                // too small to call nonzero, too large to call a zero
                return Err(SemiholoError::UnresolvedZero { t });
            }
            if val.abs() < 1e-8 * scale.max(1.0) && fresh(t, &points) {
                let d = step / 8.0;
                let left = func(t - d);
                let right = func(t + d);
                let kind = if left * right < 0.0 {
                    ZeroKind::Transverse
                } else {
                    ZeroKind::DegenerateExtremum
                };
                let second = (right - 2.0 * val + left) / (d * d);
                points.push(ArgCriticalPoint {
                    track,
                    t: t.rem_euclid(std::f64::consts::TAU),
                    kind,
                    second_derivative: second,
                });
            }
        }
    }
    points.sort_by(|a, b| a.t.partial_cmp(&b.t).unwrap());
    Ok(points)
}

fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

/// Zeros of `d arg(v_j)/dt` over the tracked critical values.
pub fn arg_derivative_zeros(
    tracks: &[CriticalValueTrack],
    g: &GPolynomial,
) -> Result<ArgAnalysis, SemiholoError> {
    let gt = g.t_derivative();
    let gu = g.u_derivative();
    let mut analysis = ArgAnalysis::default();
    for tr in tracks {
        let grid = tr.samples.len() - 1;
        let max_abs = tr
            .samples
            .iter()
            .map(|s| s.darg_dt.abs())
            .fold(0.0f64, f64::max);
        if max_abs < 1e-10 {
            analysis.identically_zero_tracks.push(tr.index);
            continue;
        }
        let func = |t: f64| {
            let tm = t.rem_euclid(std::f64::consts::TAU);
            let k = ((tm / std::f64::consts::TAU) * grid as f64).round() as usize % grid;
            let seed = tr.samples[k].c;
            let coeffs = gu.univariate_coeffs(t);
            let c = polish_root(&coeffs, seed).unwrap_or(seed);
            let v = g.eval(c, t);
            (gt.eval(c, t) / v).im
        };
        let mut pts = classify_zeros(&func, grid, tr.index)?;
        analysis.points.append(&mut pts);
    }
    analysis
        .points
        .sort_by(|a, b| a.t.partial_cmp(&b.t).unwrap());
    Ok(analysis)
}

/// Argument-derivative analysis of an explicit loop `v(t)`.
pub fn analyze_loop_argument(v: &TrigPoly, grid: usize) -> Result<ArgAnalysis, SemiholoError> {
    let vd = v.derivative();
    for k in 0..grid {
        let t = k as f64 * std::f64::consts::TAU / grid as f64;
        if v.eval(t).norm() < 1e-9 {
            return Err(SemiholoError::CriticalValueHitsZero { track: 0, t });
        }
    }
    let func = |t: f64| {
        let val = v.eval(t);
        (vd.eval(t) / val).im
    };
    let vals: Vec<f64> = (0..grid)
        .map(|k| func(k as f64 * std::f64::consts::TAU / grid as f64))
        .collect();
    let mut analysis = ArgAnalysis::default();
    if vals.iter().all(|x| x.abs() < 1e-10) {
        analysis.identically_zero_tracks.push(0);
        return Ok(analysis);
    }
    analysis.points = classify_zeros(&func, grid, 0)?;
    Ok(analysis)
}

/// Record produced by the (S-i)/(S-ii) analysis of a u-semiholomorphic germ.
#[derive(Clone, Debug)]
pub struct SConditions {
    pub s_i: Status,
    pub s_ii: Status,
    /// When both conditions hold, isolation is equivalent to strong partial
    /// non-degeneracy.
    pub equivalence_enabled: bool,
    /// Set when a transverse zero was found along a root curve: the germ has
    /// a non-isolated singularity.
    pub non_isolated: Option<Witness>,
}

/// Record produced by the (M-i)-(M-iii) analysis of a general mixed germ.
#[derive(Clone, Debug)]
pub struct MConditions {
    pub m_i: Status,
    pub m_ii: Status,
    pub m_iii: Status,
    pub equivalence_enabled: bool,
    pub non_isolated: Option<Witness>,
}

fn status_and(parts: &[&Status]) -> Status {
    for s in parts {
        if let Status::Fails { witness } = s {
            return Status::Fails {
                witness: witness.clone(),
            };
        }
    }
    for s in parts {
        if let Status::Unknown { reason } = s {
            return Status::Unknown {
                reason: reason.clone(),
            };
        }
    }
    Status::Holds
}

fn slice_witness(u: Complex64, t: f64) -> Witness {
    let v = Complex64::from_polar(1.0, t);
    Witness {
        u: [u.re, u.im],
        v: [v.re, v.im],
        exact: None,
        certification: crate::solver::Certification::Krawczyk,
        box_radius: f64::NAN,
    }
}

/// Evaluates the (S-i) and (S-ii) conditions of a u-semiholomorphic germ.
pub fn check_s_conditions(
    f: &MixedPolynomial,
    analyzer: &Analyzer,
    grid: usize,
) -> Result<SConditions, SemiholoError> {
    if f.depends_on(Var::UBar) {
        return Err(SemiholoError::NotSemiholomorphic);
    }
    let fu = f.wirtinger(Var::U);
    if fu.is_zero() {
        return Err(SemiholoError::DerivativeVanishes);
    }
    let s3 = singular_system(f).map_err(NondegError::Newton)?.s3;

    let s_i = analyzer.check_inner_of(&fu, false)?.status;

    // (S-ii): along the root curves of the rescaled P_i-faces of f_u, the
    // rescaled P_i-face of s3 must not have a vanishing local extremum
    let boundary = build_boundary(f).map_err(NondegError::Newton)?;
    let mut s_ii = Status::Holds;
    let mut non_isolated = None;
    for face in &boundary.one_faces {
        let h = GPolynomial::from_weight(&fu, face.weight);
        if !h.is_univariate() {
            if !s_ii.fails() {
                s_ii = Status::Unknown {
                    reason: "face of the u-derivative is not holomorphic in u".into(),
                };
            }
            continue;
        }
        if s3.is_zero() {
            if !s_ii.fails() {
                s_ii = Status::Unknown {
                    reason: "s3 vanishes identically".into(),
                };
            }
            continue;
        }
        let sigma = GPolynomial::from_weight(&s3, face.weight);
        if h.degree_u() == 0 {
            // constant-in-u face: a single-harmonic coefficient never
            // vanishes, so there are no roots to parametrize
            match h.coeffs.values().next() {
                None => {}
                Some(tp) if tp.terms.len() == 1 => {}
                Some(tp) => {
                    let has_zero = (0..grid).any(|k| {
                        tp.eval(k as f64 * std::f64::consts::TAU / grid as f64).norm() < 1e-9
                    });
                    if has_zero && !s_ii.fails() {
                        s_ii = Status::Unknown {
                            reason: "u-free face of f_u has zeros; no parametrization".into(),
                        };
                    }
                }
            }
            continue;
        }
        let coeff_fn = |t: f64| h.univariate_coeffs(t);
        let tracks = track_root_family(&coeff_fn, grid)?;
        for (idx, tr) in tracks.iter().enumerate() {
            let n = tr.len() - 1;
            let func = |t: f64| {
                let tm = t.rem_euclid(std::f64::consts::TAU);
                let k = ((tm / std::f64::consts::TAU) * n as f64).round() as usize % n;
                let seed = tr[k].1;
                let coeffs = h.univariate_coeffs(t);
                let c = polish_root(&coeffs, seed).unwrap_or(seed);
                sigma.eval(c, t).re
            };
            let vals: Vec<f64> = (0..n)
                .map(|k| func(k as f64 * std::f64::consts::TAU / n as f64))
                .collect();
            if vals.iter().all(|x| x.abs() < 1e-10) {
                if !s_ii.fails() {
                    s_ii = Status::Unknown {
                        reason: "the s3 face vanishes along a whole root curve".into(),
                    };
                }
                continue;
            }
            let points = match classify_zeros(&func, n, idx) {
                Ok(points) => points,
                Err(SemiholoError::UnresolvedZero { t }) => {
                    if !s_ii.fails() {
                        s_ii = Status::Unknown {
                            reason: format!("unresolved zero candidate near t = {t:.6}"),
                        };
                    }
                    continue;
                }
                Err(e) => return Err(e),
            };
            for pt in points {
                let k = ((pt.t / std::f64::consts::TAU) * n as f64).round() as usize % n;
                let coeffs = h.univariate_coeffs(pt.t);
                let c = polish_root(&coeffs, tr[k].1).unwrap_or(tr[k].1);
                match pt.kind {
                    ZeroKind::DegenerateExtremum => {
                        if !s_ii.fails() {
                            s_ii = Status::Fails {
                                witness: Box::new(slice_witness(c, pt.t)),
                            };
                        }
                    }
                    ZeroKind::Transverse => {
                        non_isolated.get_or_insert_with(|| slice_witness(c, pt.t));
                    }
                }
            }
        }
    }
    let equivalence_enabled = s_i.holds() && s_ii.holds() && non_isolated.is_none();
    Ok(SConditions {
        s_i,
        s_ii,
        equivalence_enabled,
        non_isolated,
    })
}

/// Evaluates the (M-i)-(M-iii) conditions of a mixed germ.
pub fn check_m_conditions(
    f: &MixedPolynomial,
    analyzer: &Analyzer,
    grid: usize,
) -> Result<MConditions, SemiholoError> {
    use crate::solver::{
        decide_empty, solve_axis_system, DomainKind, SolveDomain, SolveError, VerdictStatus,
    };
    let sys = singular_system(f).map_err(NondegError::Newton)?;
    let s1 = &sys.s1;

    if s1.is_zero() {
        // no boundary of s1 to quantify over: the conditions are vacuous
        return Ok(MConditions {
            m_i: Status::Holds,
            m_ii: Status::Holds,
            m_iii: Status::Holds,
            equivalence_enabled: true,
            non_isolated: None,
        });
    }

    let nice = analyzer.check_nice_of(s1)?.status;
    let inner = analyzer.check_inner_of(s1, false)?.status;
    let m_i = status_and(&[&nice, &inner]);

    let boundary = build_boundary(s1).map_err(NondegError::Newton)?;
    let cfg = *analyzer.config();

    // (M-iii): faces of the four partial derivatives, on the torus and on
    // both punctured axes
    let derivs: Vec<MixedPolynomial> = [Var::V, Var::VBar, Var::U, Var::UBar]
        .iter()
        .map(|x| f.wirtinger(*x))
        .collect();
    let mut m_iii = Status::Holds;
    'outer: for face in &boundary.one_faces {
        let w = face.weight;
        let full: Vec<MixedPolynomial> = derivs
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| face_function(d, w).expect("nonzero"))
            .collect();
        let refs: Vec<&MixedPolynomial> = full.iter().collect();
        if refs.is_empty() {
            m_iii = Status::Fails {
                witness: Box::new(Witness::exact_point(
                    &GaussianRational::one(),
                    &GaussianRational::one(),
                )),
            };
            break;
        }
        match decide_empty(&refs, &SolveDomain::torus(w), &cfg) {
            Ok(v) => match v.status {
                VerdictStatus::Empty => {}
                VerdictStatus::Witness(wit) => {
                    m_iii = Status::Fails {
                        witness: Box::new(wit),
                    };
                    break 'outer;
                }
                VerdictStatus::Unknown { reason } => {
                    m_iii = Status::Unknown { reason };
                }
            },
            Err(SolveError::DegenerateSystem) => {
                m_iii = Status::Fails {
                    witness: Box::new(Witness::exact_point(
                        &GaussianRational::one(),
                        &GaussianRational::one(),
                    )),
                };
                break 'outer;
            }
            Err(e) => return Err(SemiholoError::Nondeg(NondegError::Solver(e))),
        }
        for (pair, kind) in [(1usize, DomainKind::AxisU), (0usize, DomainKind::AxisV)] {
            let restricted: Vec<MixedPolynomial> = derivs
                .iter()
                .map(|d| d.restrict_pair_to_zero(pair))
                .filter(|d| !d.is_zero())
                .map(|d| face_function(&d, w).expect("nonzero"))
                .collect();
            let refs: Vec<&MixedPolynomial> = restricted.iter().collect();
            let degenerate_wit = || match kind {
                DomainKind::AxisU => {
                    Witness::exact_point(&GaussianRational::one(), &GaussianRational::zero())
                }
                _ => Witness::exact_point(&GaussianRational::zero(), &GaussianRational::one()),
            };
            if refs.is_empty() {
                m_iii = Status::Fails {
                    witness: Box::new(degenerate_wit()),
                };
                break 'outer;
            }
            match solve_axis_system(&refs, kind, &cfg) {
                Ok(v) => match v.status {
                    VerdictStatus::Empty => {}
                    VerdictStatus::Witness(wit) => {
                        m_iii = Status::Fails {
                            witness: Box::new(wit),
                        };
                        break 'outer;
                    }
                    VerdictStatus::Unknown { reason } => {
                        m_iii = Status::Unknown { reason };
                    }
                },
                Err(SolveError::DegenerateSystem) => {
                    m_iii = Status::Fails {
                        witness: Box::new(degenerate_wit()),
                    };
                    break 'outer;
                }
                Err(e) => return Err(SemiholoError::Nondeg(NondegError::Solver(e))),
            }
        }
    }

    // (M-ii): along root curves of the rescaled faces of s1, the rescaled
    // faces of s2 and s3 must not have vanishing local extrema
    let mut m_ii = Status::Holds;
    let mut non_isolated = None;
    for face in &boundary.one_faces {
        let w = face.weight;
        let g1 = GPolynomial::from_weight(s1, w);
        let others: Vec<GPolynomial> = [&sys.s2, &sys.s3]
            .iter()
            .filter(|s| !s.is_zero())
            .map(|s| GPolynomial::from_weight(s, w))
            .collect();
        match trace_mixed_root_curves(&g1, grid.clamp(64, 256)) {
            Ok(curves) => {
                for curve in &curves {
                    for sg in &others {
                        let vals: Vec<f64> =
                            curve.iter().map(|(t, u)| sg.eval(*u, *t).re).collect();
                        let scale = vals.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
                        if scale < 1e-10 {
                            if !m_ii.fails() {
                                m_ii = Status::Unknown {
                                    reason: "a singular-system face vanishes along a root curve"
                                        .into(),
                                };
                            }
                            continue;
                        }
                        let n = vals.len();
                        for i in 0..n {
                            let prev = vals[(i + n - 1) % n];
                            let cur = vals[i];
                            let next = vals[(i + 1) % n];
                            if cur.abs() < 1e-8 * scale.max(1.0) {
                                let (t, u) = curve[i];
                                if prev * next > 0.0 {
                                    if !m_ii.fails() {
                                        m_ii = Status::Fails {
                                            witness: Box::new(slice_witness(u, t)),
                                        };
                                    }
                                } else if prev * next < 0.0 {
                                    non_isolated.get_or_insert_with(|| slice_witness(u, t));
                                }
                            }
                        }
                    }
                }
            }
            Err(reason) => {
                if m_ii.holds() {
                    m_ii = Status::Unknown { reason };
                }
            }
        }
    }

    let equivalence_enabled =
        m_i.holds() && m_ii.holds() && m_iii.holds() && non_isolated.is_none();
    Ok(MConditions {
        m_i,
        m_ii,
        m_iii,
        equivalence_enabled,
        non_isolated,
    })
}

/// Traces the root curves of a mixed g-function `G(u, conj(u), e^{it})` by
/// seeding 2-D Newton at t = 0 and continuing around the circle. Returns
/// sampled curves as `(t, u)` lists; errors with a reason on ambiguity.
fn trace_mixed_root_curves(
    g: &GPolynomial,
    grid: usize,
) -> Result<Vec<Vec<(f64, Complex64)>>, String> {
    let newton_2d = |t: f64, seed: Complex64| -> Option<Complex64> {
        let mut u = seed;
        for _ in 0..80 {
            let val = g.eval(u, t);
            if val.norm() < 1e-12 {
                return Some(u);
            }
            let hstep = 1e-6 * (1.0 + u.norm());
            let dx = (g.eval(u + hstep, t) - g.eval(u - hstep, t)) / (2.0 * hstep);
            let dy = (g.eval(u + Complex64::new(0.0, hstep), t)
                - g.eval(u - Complex64::new(0.0, hstep), t))
                / (2.0 * hstep);
            let a = [[dx.re, dy.re], [dx.im, dy.im]];
            let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
            if det.abs() < 1e-14 {
                return None;
            }
            let rhs = [val.re, val.im];
            let step = Complex64::new(
                (rhs[0] * a[1][1] - rhs[1] * a[0][1]) / det,
                (rhs[1] * a[0][0] - rhs[0] * a[1][0]) / det,
            );
            u -= step;
            if step.norm() < 1e-15 {
                break;
            }
        }
        if g.eval(u, t).norm() < 1e-9 {
            Some(u)
        } else {
            None
        }
    };

    let mut seeds: Vec<Complex64> = Vec::new();
    for ring in 1..=4 {
        let r = ring as f64 * 0.5;
        for a in 0..12 {
            let ang = a as f64 * std::f64::consts::TAU / 12.0;
            if let Some(u) = newton_2d(0.0, Complex64::from_polar(r, ang)) {
                if u.norm() > 1e-6 && !seeds.iter().any(|s| (s - u).norm() < 1e-6) {
                    seeds.push(u);
                }
            }
        }
    }
    if seeds.is_empty() {
        return Ok(vec![]);
    }
    seeds.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let step = std::f64::consts::TAU / grid as f64;
    let mut curves: Vec<Vec<(f64, Complex64)>> =
        seeds.iter().map(|u| vec![(0.0, *u)]).collect();
    for k in 1..=grid {
        let t = k as f64 * step;
        for curve in curves.iter_mut() {
            let seed = curve.last().unwrap().1;
            match newton_2d(t, seed) {
                Some(u) => {
                    if (u - seed).norm() > 0.5 {
                        return Err(format!("root curve jump at t = {t}"));
                    }
                    curve.push((t, u));
                }
                None => return Err(format!("root curve lost at t = {t}")),
            }
        }
    }
    Ok(curves)
}

/// A monic degree-`s` loop of u-polynomials with 2-periodic trig
/// coefficients.
#[derive(Clone, Debug)]
pub struct LoopSpec {
    pub degree: u32,
    /// Coefficients of `u^j` for `j < degree`; the top coefficient is 1.
    pub coeffs: BTreeMap<u32, TrigPoly>,
}

impl LoopSpec {
    /// Smallest scaling exponent that turns every harmonic into a lattice
    /// monomial.
    pub fn minimal_k(&self) -> Result<u32, SemiholoError> {
        for tp in self.coeffs.values() {
            tp.two_periodic()?;
        }
        let bound = 2 * self.max_freq() as u32 + 2;
        for k in 1..=bound {
            if self.valid_k(k) {
                return Ok(k);
            }
        }
        Err(SemiholoError::KTooSmall { k_min: bound })
    }

    fn max_freq(&self) -> i64 {
        self.coeffs
            .values()
            .map(|t| t.max_abs_freq())
            .max()
            .unwrap_or(0)
    }

    pub fn valid_k(&self, k: u32) -> bool {
        let s = self.degree;
        for (j, tp) in &self.coeffs {
            let drop = (s - j) as i64 * k as i64;
            for m in tp.terms.keys() {
                if drop < m.abs() || (drop - m).rem_euclid(2) != 0 {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds the radially weighted homogeneous u-semiholomorphic polynomial
/// whose g-polynomial is the given loop, using the scaling exponent `k`.
pub fn construct_from_loop(spec: &LoopSpec, k: u32) -> Result<MixedPolynomial, SemiholoError> {
    for tp in spec.coeffs.values() {
        tp.two_periodic()?;
    }
    let k_min = spec.minimal_k()?;
    if k < k_min || !spec.valid_k(k) {
        return Err(SemiholoError::KTooSmall { k_min });
    }
    let s = spec.degree;
    let mut f = MixedPolynomial::monomial(Exps::new(s, 0, 0, 0), GaussianRational::one());
    for (j, tp) in &spec.coeffs {
        let drop = ((s - j) * k) as i64;
        for (m, c) in &tp.terms {
            let a = (drop + m) / 2;
            let b = (drop - m) / 2;
            debug_assert!(a >= 0 && b >= 0);
            f.add_term(Exps::new(*j, a as u32, 0, b as u32), c.clone());
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn p(s: &str) -> MixedPolynomial {
        parse(s).unwrap()
    }

    /// The worked loop: `cos t - cos 2t + 1 - i (sin t - sin 3t / 3)`.
    pub(crate) fn paper_loop() -> TrigPoly {
        let mut v = TrigPoly::zero();
        let half = || GaussianRational::from_ratio(1, 2);
        // cos t
        v.add(1, half());
        v.add(-1, half());
        // - cos 2t
        v.add(2, -half());
        v.add(-2, -half());
        // + 1
        v.add(0, GaussianRational::one());
        // - i sin t = -(e^{it} - e^{-it})/2
        v.add(1, -half());
        v.add(-1, half());
        // + i sin(3t)/3 = (e^{3it} - e^{-3it})/6
        v.add(3, GaussianRational::from_ratio(1, 6));
        v.add(-3, GaussianRational::from_ratio(-1, 6));
        v
    }

    #[test]
    fn paper_loop_values() {
        let v = paper_loop();
        let v0 = v.eval(0.0);
        assert!((v0 - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let vpi = v.eval(std::f64::consts::PI);
        assert!((vpi - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn g_polynomial_of_ex2_first_face() {
        let f = p("u^10 + u^2*v + (v*conj(v))^2 + conj(u)*v^3");
        let g = g_polynomial(&f, 1).unwrap();
        assert!(g.is_univariate());
        assert_eq!(g.degree_u(), 2);
        // g(u, t) = u^2 e^{it} + 1
        let val = g.eval(Complex64::new(1.0, 0.0), 0.0);
        assert!((val - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        let val = g.eval(Complex64::new(0.0, 0.0), 1.234);
        assert!((val - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(g_polynomial(&f, 3).is_err());
    }

    #[test]
    fn g_polynomial_r_independence() {
        use num_complex::Complex64 as C;
        let f = p("u^10 + u^2*v + (v*conj(v))^2 + conj(u)*v^3");
        let boundary = build_boundary(&f).unwrap();
        for (i, face) in boundary.one_faces.iter().enumerate() {
            let g = g_polynomial(&f, i + 1).unwrap();
            let w = face.weight;
            let fp = face_function(&f, w).unwrap();
            let d = radial_degree(&f, w).unwrap() as f64;
            let k = w.p1 as f64 / w.p2 as f64;
            for r in [0.5f64, 1.0, 2.0] {
                for (u0, t) in [(C::new(0.3, 0.4), 0.7), (C::new(-1.1, 0.2), 2.9)] {
                    let lhs = g.eval(u0, t);
                    let scaled_u = u0 * r.powf(k);
                    let v = C::from_polar(r, t);
                    let rhs = fp.evaluate(scaled_u, v) * r.powf(-d / w.p2 as f64);
                    assert!(
                        (lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()),
                        "r={r} lhs={lhs} rhs={rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn constant_rotation_has_no_arg_critical_points() {
        // g_t(u) = u^2 + e^{2it}: v(t) = e^{2it}, darg/dt = 2
        let mut spec = LoopSpec {
            degree: 2,
            coeffs: BTreeMap::new(),
        };
        let mut a0 = TrigPoly::zero();
        a0.add(2, GaussianRational::one());
        spec.coeffs.insert(0, a0);
        let f = construct_from_loop(&spec, spec.minimal_k().unwrap()).unwrap();
        let g = g_polynomial(&f, 1).unwrap();
        let tracks = track_critical_values(&g, 512).unwrap();
        assert_eq!(tracks.len(), 1);
        for s in &tracks[0].samples {
            assert!((s.darg_dt - 2.0).abs() < 1e-9, "darg = {}", s.darg_dt);
        }
        let analysis = arg_derivative_zeros(&tracks, &g).unwrap();
        assert!(analysis.points.is_empty());
    }

    #[test]
    fn paper_loop_has_degenerate_zeros_at_0_and_pi() {
        let analysis = analyze_loop_argument(&paper_loop(), 2048).unwrap();
        let zeros = &analysis.points;
        assert_eq!(zeros.len(), 2, "{zeros:?}");
        let near_zero = zeros
            .iter()
            .filter(|z| angle_distance(z.t, 0.0) < 1e-6)
            .count();
        let near_pi = zeros
            .iter()
            .filter(|z| angle_distance(z.t, std::f64::consts::PI) < 1e-6)
            .count();
        assert_eq!((near_zero, near_pi), (1, 1), "{zeros:?}");
        for z in zeros {
            assert_eq!(z.kind, ZeroKind::DegenerateExtremum, "{z:?}");
        }
    }

    #[test]
    fn synthetic_transverse_zeros() {
        // derivative profile 1 - 2 sin t: zeros at pi/6 and 5 pi/6, both
        // transverse
        let func = |t: f64| 1.0 - 2.0 * t.sin();
        let points = classify_zeros(&func, 2048, 0).unwrap();
        assert_eq!(points.len(), 2);
        for pt in &points {
            assert_eq!(pt.kind, ZeroKind::Transverse);
        }
        assert!((points[0].t - std::f64::consts::FRAC_PI_6).abs() < 1e-8);
        assert!((points[1].t - 5.0 * std::f64::consts::FRAC_PI_6).abs() < 1e-8);
    }

    #[test]
    fn identically_zero_profile_flagged() {
        let v = TrigPoly::constant(GaussianRational::one());
        let analysis = analyze_loop_argument(&v, 256).unwrap();
        assert_eq!(analysis.identically_zero_tracks, vec![0]);
        assert!(analysis.points.is_empty());
    }

    #[test]
    fn construct_from_loop_matches_paper_polynomial() {
        // the doubled loop v(2t) as the constant coefficient, s = 2, k = 3
        let mut spec = LoopSpec {
            degree: 2,
            coeffs: BTreeMap::new(),
        };
        spec.coeffs.insert(0, paper_loop().scale_freq(2));
        assert_eq!(spec.minimal_k().unwrap(), 3);
        let f = construct_from_loop(&spec, 3).unwrap();
        let expected = p("u^2 + (v*conj(v))^3 \
            + (v*conj(v))^2 * ((v^2 + conj(v)^2) / 2) \
            - v*conj(v) * ((v^4 + conj(v)^4) / 2) \
            - i*((v*conj(v))^2 * ((v^2 - conj(v)^2) / (2*i)) \
                 - ((v^6 - conj(v)^6) / (2*i)) / 3)");
        assert_eq!(f, expected);
        assert!(matches!(
            construct_from_loop(&spec, 2),
            Err(SemiholoError::KTooSmall { k_min: 3 })
        ));
    }

    #[test]
    fn construct_constant_loop() {
        let spec = LoopSpec {
            degree: 2,
            coeffs: BTreeMap::new(),
        };
        let f = construct_from_loop(&spec, 4).unwrap();
        assert_eq!(f, p("u^2"));
    }

    #[test]
    fn odd_frequency_rejected() {
        let mut spec = LoopSpec {
            degree: 2,
            coeffs: BTreeMap::new(),
        };
        let mut a0 = TrigPoly::zero();
        a0.add(1, GaussianRational::one());
        spec.coeffs.insert(0, a0);
        assert!(matches!(
            construct_from_loop(&spec, 6),
            Err(SemiholoError::NotTwoPeriodic(1))
        ));
    }

    #[test]
    fn construct_round_trip_random_specs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let degree = rng.gen_range(2..4u32);
            let mut coeffs = BTreeMap::new();
            for j in 0..degree {
                let mut tp = TrigPoly::zero();
                for _ in 0..rng.gen_range(1..3) {
                    let m = 2 * rng.gen_range(-2i64..3);
                    tp.add(m, GaussianRational::from_ratio(rng.gen_range(-3i64..4), 1));
                }
                if !tp.is_zero() {
                    coeffs.insert(j, tp);
                }
            }
            let spec = LoopSpec { degree, coeffs };
            let Ok(kmin) = spec.minimal_k() else { continue };
            let f = construct_from_loop(&spec, kmin).unwrap();
            let g = g_polynomial(&f, 1).unwrap();
            for trial in 0..20 {
                let t = trial as f64 * 0.31;
                let u = Complex64::new(0.3 + 0.1 * trial as f64, -0.2);
                let mut expected = u.powu(spec.degree);
                for (j, tp) in &spec.coeffs {
                    expected += tp.eval(t) * u.powu(*j);
                }
                let got = g.eval(u, t);
                assert!(
                    (got - expected).norm() < 1e-10 * (1.0 + expected.norm()),
                    "mismatch at t={t}: {got} vs {expected}"
                );
            }
        }
    }

    fn analyzer_for(f: &MixedPolynomial) -> Analyzer {
        use crate::nondeg::ClassifyOptions;
        use crate::solver::SolverConfig;
        Analyzer::new(f, SolverConfig::default(), ClassifyOptions::default()).unwrap()
    }

    #[test]
    fn s_conditions_brieskorn() {
        let f = p("u^2 + v^3");
        let rec = check_s_conditions(&f, &analyzer_for(&f), 256).unwrap();
        assert!(rec.s_i.holds(), "{:?}", rec.s_i);
        assert!(rec.s_ii.holds(), "{:?}", rec.s_ii);
        assert!(rec.equivalence_enabled);
        assert!(rec.non_isolated.is_none());
    }

    #[test]
    fn m_conditions_brieskorn() {
        let f = p("u^2 + v^3");
        let rec = check_m_conditions(&f, &analyzer_for(&f), 256).unwrap();
        assert!(rec.m_i.holds());
        assert!(rec.m_ii.holds());
        assert!(rec.m_iii.holds());
        assert!(rec.equivalence_enabled);
    }

    #[test]
    fn m_conditions_ex1_axis_systems_hold() {
        let f = p("v*conj(v) - u*conj(u) + conj(v)*u^2");
        let rec = check_m_conditions(&f, &analyzer_for(&f), 128).unwrap();
        assert!(rec.m_iii.holds(), "{:?}", rec.m_iii);
    }

    #[test]
    fn rejects_non_semiholomorphic() {
        let f = p("v*conj(v) - u*conj(u) + conj(v)*u^2");
        assert!(matches!(
            check_s_conditions(&f, &analyzer_for(&f), 128),
            Err(SemiholoError::NotSemiholomorphic)
        ));
    }
}
