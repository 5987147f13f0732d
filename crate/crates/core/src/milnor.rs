//! Milnor-set machinery: the auxiliary w-polynomial pairs whose common zeros
//! are critical points of the face function, the numerical Milnor-set
//! residual, sphere probing, and the strong-Milnor-condition inference
//! rules.

use crate::gaussian::GaussianRational;
use crate::newton::{graded_part, radial_degree, NewtonError, WeightVector};
use crate::nondeg::{ClassificationReport, Property, Provenance, PropertyVerdict, Status};
use crate::poly::{MixedPolynomial, Var};
use crate::solver::SolveStats;
use crate::ComplexPoint;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum MilnorError {
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("point lies on the variety of f (|f| = {value:.3e})")]
    OnVariety { value: f64 },
    #[error(transparent)]
    Newton(#[from] NewtonError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WVariant {
    /// Graded at degrees `d - p1`, `d - p2` where `d = d(P; f)`.
    Plain,
    /// Graded at `d_i = min(d(P; f_x), d(P; f_xbar))` per coordinate.
    Tilde,
}

/// The auxiliary pair `(w1, w2)`; common zeros are critical points of `f_P`.
#[derive(Clone, Debug)]
pub struct WPair {
    pub w1: MixedPolynomial,
    pub w2: MixedPolynomial,
    pub variant: WVariant,
    pub weight: WeightVector,
    pub alpha: GaussianRational,
}

/// Builds `w1 = i (alpha conj(f_u)_P - conj(alpha) (f_ubar)_P)` graded at the
/// variant degree, and the analogous `w2` for the v-pair.
pub fn w_pair(
    f: &MixedPolynomial,
    weight: WeightVector,
    alpha: &GaussianRational,
    variant: WVariant,
) -> Result<WPair, MilnorError> {
    if alpha.is_zero() {
        return Err(MilnorError::ZeroAlpha);
    }
    if f.is_zero() {
        return Err(MilnorError::Newton(NewtonError::EmptySupport));
    }
    let d = radial_degree(f, weight)?;
    let alpha_bar = alpha.conj();
    let i_unit = MixedPolynomial::constant(GaussianRational::i());

    let build = |x: Var, p_drop: u64| -> MixedPolynomial {
        let fx = f.wirtinger(x);
        let fxbar = f.wirtinger(x.conj());
        let combo = &fx.conjugate().scale(alpha) - &fxbar.scale(&alpha_bar);
        let degree = match variant {
            WVariant::Plain => {
                let Some(dd) = d.checked_sub(p_drop) else {
                    return MixedPolynomial::zero();
                };
                dd
            }
            WVariant::Tilde => {
                let du = radial_degree(&fx, weight).ok();
                let dub = radial_degree(&fxbar, weight).ok();
                match (du, dub) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (None, None) => return MixedPolynomial::zero(),
                }
            }
        };
        &i_unit * &graded_part(&combo, weight, degree)
    };

    Ok(WPair {
        w1: build(Var::U, weight.p1),
        w2: build(Var::V, weight.p2),
        variant,
        weight,
        alpha: alpha.clone(),
    })
}

/// Distance of `i (f conj(df) - conj(f) dbar f)(z)` from the real line
/// through `z`, measured real-bilinearly in `R^4`. Zero (up to tolerance)
/// exactly on the Milnor set of the argument map.
#[derive(Clone, Copy, Debug)]
pub struct MilnorResidual {
    pub point: ComplexPoint,
    pub residual: f64,
    /// The least-squares real scale factor.
    pub lambda: f64,
}

pub fn milnor_residual(
    f: &MixedPolynomial,
    z: &ComplexPoint,
    variety_tol: f64,
) -> Result<MilnorResidual, MilnorError> {
    let fv = f.evaluate(z.u, z.v);
    if fv.norm() <= variety_tol {
        return Err(MilnorError::OnVariety { value: fv.norm() });
    }
    let fu = f.wirtinger(Var::U).evaluate(z.u, z.v);
    let fvv = f.wirtinger(Var::V).evaluate(z.u, z.v);
    let fub = f.wirtinger(Var::UBar).evaluate(z.u, z.v);
    let fvb = f.wirtinger(Var::VBar).evaluate(z.u, z.v);
    let i = Complex64::new(0.0, 1.0);
    let m1 = i * (fv * fu.conj() - fv.conj() * fub);
    let m2 = i * (fv * fvv.conj() - fv.conj() * fvb);

    let zr = [z.u.re, z.u.im, z.v.re, z.v.im];
    let mr = [m1.re, m1.im, m2.re, m2.im];
    let zz: f64 = zr.iter().map(|x| x * x).sum();
    let mz: f64 = zr.iter().zip(mr.iter()).map(|(a, b)| a * b).sum();
    let lambda = if zz > 0.0 { mz / zz } else { 0.0 };
    let residual = zr
        .iter()
        .zip(mr.iter())
        .map(|(a, b)| (b - lambda * a).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(MilnorResidual {
        point: *z,
        residual,
        lambda,
    })
}

/// One row of the sphere-probe CSV.
#[derive(Clone, Copy, Debug)]
pub struct ProbeSample {
    pub radius: f64,
    pub index: u32,
    pub residual: f64,
}

/// Samples the Milnor residual on spheres of decreasing radius with a
/// fixed-seed stratified sampler. Advisory output, not a certificate.
pub fn probe_spheres(
    f: &MixedPolynomial,
    radii: &[f64],
    samples_per_radius: u32,
    seed: u64,
) -> Vec<ProbeSample> {
    use rand::{Rng, SeedableRng};
    let mut out = Vec::new();
    for &radius in radii {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ radius.to_bits());
        for index in 0..samples_per_radius {
            // stratified over the angle of the first coordinate pair
            let base = index as f64 / samples_per_radius as f64 * std::f64::consts::TAU;
            let x: [f64; 4] = [
                rng.gen_range(-1.0..1.0) + base.cos(),
                rng.gen_range(-1.0..1.0) + base.sin(),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let norm: f64 = x.iter().map(|a| a * a).sum::<f64>().sqrt();
            if norm == 0.0 {
                continue;
            }
            let scaled = ComplexPoint::from_coords(&[
                x[0] / norm * radius,
                x[1] / norm * radius,
                x[2] / norm * radius,
                x[3] / norm * radius,
            ]);
            let residual = match milnor_residual(f, &scaled, 0.0) {
                Ok(r) => r.residual,
                Err(_) => f64::NAN,
            };
            out.push(ProbeSample {
                radius,
                index,
                residual,
            });
        }
    }
    out
}

/// Inference of the strong Milnor condition from a classification report.
///
/// Strong inner non-degeneracy forces the condition; for radially weighted
/// homogeneous germs that are weakly isolated but not isolated the condition
/// fails; otherwise the verdict stays unknown.
pub fn smc_infer(report: &ClassificationReport) -> PropertyVerdict {
    let sind_holds = report
        .status(Property::Sind)
        .map(Status::holds)
        .unwrap_or(false);
    if sind_holds {
        return PropertyVerdict {
            property: Property::Smc,
            status: Status::Holds,
            provenance: Provenance::Implied {
                rule: "SIND => strong Milnor condition".into(),
            },
            stats: SolveStats::default(),
        };
    }
    if report.rwh.is_some() {
        let weakly = report.status(Property::WeaklyIsolated);
        let isolated = report.status(Property::Isolated);
        if let (Some(Status::Holds), Some(Status::Fails { witness })) = (weakly, isolated) {
            return PropertyVerdict {
                property: Property::Smc,
                status: Status::Fails {
                    witness: witness.clone(),
                },
                provenance: Provenance::Implied {
                    rule: "weakly isolated RWH germ without isolation fails the strong Milnor condition".into(),
                },
                stats: SolveStats::default(),
            };
        }
    }
    PropertyVerdict {
        property: Property::Smc,
        status: Status::Unknown {
            reason: "no inference rule applies".into(),
        },
        provenance: Provenance::Implied {
            rule: "no rule fired".into(),
        },
        stats: SolveStats::default(),
    }
}
