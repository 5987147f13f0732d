//! Certified emptiness / witness search for systems of mixed polynomials
//! over the domains the non-degeneracy conditions quantify over.
//!
//! Systems handed to [`verify_empty`] must be radially weighted homogeneous
//! with respect to the domain weight; their zero sets are then cones under
//! the weighted scaling action and it suffices to search the compact
//! weighted slice, parametrized by two charts (one complex coordinate on the
//! unit circle, the other inside the unit disc). Branch-and-prune with
//! interval enclosures proves emptiness; Krawczyk contraction (or exact
//! rational evaluation) certifies witnesses. UNKNOWN is an honest outcome.

mod axis;
mod chart;
mod krawczyk;
mod real;

pub use axis::solve_axis_system;
pub use krawczyk::{certify, certify_prepared, CertifyReport};
pub use real::PreparedRealSystem;

use crate::gaussian::GaussianRational;
use crate::newton::WeightVector;
use crate::poly::MixedPolynomial;
use crate::ComplexPoint;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Search domain for a system solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DomainKind {
    /// `(C*)^2`.
    Torus2,
    /// `C^2` minus the line `v = 0`.
    OffVAxis,
    /// `C^2` minus the line `u = 0`.
    OffUAxis,
    /// The punctured u-line `{(u, 0) : u != 0}`.
    AxisU,
    /// The punctured v-line `{(0, v) : v != 0}`.
    AxisV,
}

impl DomainKind {
    /// Is a point with the given axis memberships inside the domain?
    /// `u_zero` / `v_zero` say whether the respective coordinate vanishes.
    pub fn admits(&self, u_zero: bool, v_zero: bool) -> bool {
        if u_zero && v_zero {
            return false; // the origin is never part of a punctured domain
        }
        match self {
            DomainKind::Torus2 => !u_zero && !v_zero,
            DomainKind::OffVAxis => !v_zero,
            DomainKind::OffUAxis => !u_zero,
            DomainKind::AxisU => v_zero && !u_zero,
            DomainKind::AxisV => u_zero && !v_zero,
        }
    }
}

/// A solve domain: the region plus the weight vector used for slicing.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SolveDomain {
    pub kind: DomainKind,
    pub weight: WeightVector,
}

impl SolveDomain {
    pub fn new(kind: DomainKind, weight: WeightVector) -> Self {
        SolveDomain { kind, weight }
    }

    pub fn torus(weight: WeightVector) -> Self {
        SolveDomain::new(DomainKind::Torus2, weight)
    }
}

/// Numeric configuration. Defaults reproduce the acceptance suite.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub residual_tol: f64,
    pub max_depth: u32,
    pub min_width: f64,
    pub multistart: u32,
    pub seed: u64,
    pub rho_floor: f64,
    pub box_radius: f64,
    pub max_boxes: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            residual_tol: 1e-12,
            max_depth: 40,
            min_width: 1e-9,
            multistart: 256,
            seed: 0,
            rho_floor: 0.0,
            box_radius: 2.0,
            max_boxes: 400_000,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("every system member is identically zero; all domain points are solutions")]
    DegenerateSystem,
    #[error("system member {member} is not radially weighted homogeneous for the given weight")]
    NotHomogeneous { member: usize },
    #[error("axis systems must depend on a single complex coordinate pair")]
    NotUnivariatePair,
    #[error("empty system")]
    EmptySystem,
}

/// How a witness was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certification {
    /// The point has exact rational coordinates and every member evaluates
    /// to exactly zero.
    ExactArithmetic,
    /// Krawczyk contraction on a square realified subsystem plus interval
    /// enclosure of the remaining equations.
    Krawczyk,
}

/// A certified common zero inside the domain.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub u: [f64; 2],
    pub v: [f64; 2],
    /// Exact coordinates, when certification was by rational arithmetic.
    pub exact: Option<String>,
    pub certification: Certification,
    /// Radius of the certification box (0 for exact witnesses).
    pub box_radius: f64,
}

impl Witness {
    pub fn point(&self) -> ComplexPoint {
        ComplexPoint::new(
            Complex64::new(self.u[0], self.u[1]),
            Complex64::new(self.v[0], self.v[1]),
        )
    }

    pub fn exact_point(u: &GaussianRational, v: &GaussianRational) -> Witness {
        let (ur, ui) = u.to_f64_parts();
        let (vr, vi) = v.to_f64_parts();
        Witness {
            u: [ur, ui],
            v: [vr, vi],
            exact: Some(format!("({}, {})", u, v)),
            certification: Certification::ExactArithmetic,
            box_radius: 0.0,
        }
    }
}

/// Subdivision statistics carried by every verdict.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct SolveStats {
    pub boxes_processed: u64,
    pub max_depth_reached: u32,
    pub samples: u32,
    pub exact_probes: u32,
}

impl SolveStats {
    pub fn merge(&mut self, other: &SolveStats) {
        self.boxes_processed += other.boxes_processed;
        self.max_depth_reached = self.max_depth_reached.max(other.max_depth_reached);
        self.samples += other.samples;
        self.exact_probes += other.exact_probes;
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum VerdictStatus {
    /// Certified: no common zero in the domain.
    Empty,
    /// Certified common zero.
    Witness(Witness),
    /// Could not decide.
    Unknown { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub stats: SolveStats,
}

impl Verdict {
    pub fn empty(stats: SolveStats) -> Self {
        Verdict {
            status: VerdictStatus::Empty,
            stats,
        }
    }

    pub fn witness(w: Witness, stats: SolveStats) -> Self {
        Verdict {
            status: VerdictStatus::Witness(w),
            stats,
        }
    }

    pub fn unknown(reason: impl Into<String>, stats: SolveStats) -> Self {
        Verdict {
            status: VerdictStatus::Unknown {
                reason: reason.into(),
            },
            stats,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.status, VerdictStatus::Empty)
    }

    pub fn is_witness(&self) -> bool {
        matches!(self.status, VerdictStatus::Witness(_))
    }
}

/// Drops identically-zero members. Errors when nothing remains (every point
/// of the domain solves the system) or the input was empty.
fn active_members<'a>(
    system: &[&'a MixedPolynomial],
) -> Result<Vec<&'a MixedPolynomial>, SolveError> {
    if system.is_empty() {
        return Err(SolveError::EmptySystem);
    }
    let live: Vec<_> = system.iter().copied().filter(|m| !m.is_zero()).collect();
    if live.is_empty() {
        return Err(SolveError::DegenerateSystem);
    }
    Ok(live)
}

fn check_homogeneous(
    members: &[&MixedPolynomial],
    weight: WeightVector,
) -> Result<(), SolveError> {
    for (i, m) in members.iter().enumerate() {
        let mut degs = m.terms().map(|(e, _)| weight.rdeg_point(e.support_point()));
        if let Some(d0) = degs.next() {
            if degs.any(|d| d != d0) {
                return Err(SolveError::NotHomogeneous { member: i });
            }
        }
    }
    Ok(())
}

/// Candidate points with exact coordinates probed before any numerics.
fn exact_probe_points(kind: DomainKind) -> Vec<(GaussianRational, GaussianRational)> {
    let units = || {
        vec![
            GaussianRational::one(),
            -GaussianRational::one(),
            GaussianRational::i(),
            -GaussianRational::i(),
        ]
    };
    let zero = GaussianRational::zero;
    let mut pts = Vec::new();
    match kind {
        DomainKind::Torus2 => {
            for a in units() {
                for b in units() {
                    pts.push((a.clone(), b));
                }
            }
        }
        DomainKind::OffVAxis => {
            for b in units() {
                pts.push((zero(), b.clone()));
                for a in units() {
                    pts.push((a, b.clone()));
                }
            }
        }
        DomainKind::OffUAxis => {
            for a in units() {
                pts.push((a.clone(), zero()));
                for b in units() {
                    pts.push((a.clone(), b));
                }
            }
        }
        DomainKind::AxisU => {
            for a in units() {
                pts.push((a, zero()));
            }
        }
        DomainKind::AxisV => {
            for b in units() {
                pts.push((zero(), b));
            }
        }
    }
    pts
}

/// Tries the exact probe points; a hit is a witness certified by rational
/// arithmetic.
fn exact_probe(
    members: &[&MixedPolynomial],
    kind: DomainKind,
    stats: &mut SolveStats,
) -> Option<Witness> {
    for (u, v) in exact_probe_points(kind) {
        stats.exact_probes += 1;
        if members
            .iter()
            .all(|m| m.evaluate_exact(&u, &v).is_zero())
        {
            return Some(Witness::exact_point(&u, &v));
        }
    }
    None
}

/// Certified emptiness check on a weighted-homogeneous system.
///
/// Returns `Empty` only when every part of the domain has been excluded by
/// interval enclosures (with the near-axis tube handled separately when the
/// axis is excluded but carries zeros). May also return a certified
/// `Witness`, or `Unknown`.
pub fn verify_empty(
    system: &[&MixedPolynomial],
    dom: &SolveDomain,
    cfg: &SolverConfig,
) -> Result<Verdict, SolveError> {
    let members = active_members(system)?;
    match dom.kind {
        DomainKind::AxisU | DomainKind::AxisV => {
            return solve_axis_system(&members, dom.kind, cfg);
        }
        _ => {}
    }
    check_homogeneous(&members, dom.weight)?;

    let mut stats = SolveStats::default();
    if let Some(w) = exact_probe(&members, dom.kind, &mut stats) {
        return Ok(Verdict::witness(w, stats));
    }

    // single-term member shortcuts: a mixed monomial only vanishes where a
    // coordinate it involves is zero
    for m in &members {
        if m.num_terms() == 1 {
            let (e, _) = m.terms().next().unwrap();
            let (du, dv) = (e.nu1 + e.mu1, e.nu2 + e.mu2);
            match dom.kind {
                DomainKind::Torus2 => return Ok(Verdict::empty(stats)),
                DomainKind::OffVAxis => {
                    if du == 0 {
                        // the monomial never vanishes while v != 0
                        return Ok(Verdict::empty(stats));
                    }
                    // zeros of the member inside the domain sit exactly on
                    // u = 0: the system reduces to the punctured v-line
                    let restricted: Vec<MixedPolynomial> =
                        members.iter().map(|m| m.restrict_pair_to_zero(0)).collect();
                    let refs: Vec<&MixedPolynomial> = restricted.iter().collect();
                    return match active_members(&refs) {
                        Ok(live) => {
                            let mut v = solve_axis_system(&live, DomainKind::AxisV, cfg)?;
                            v.stats.merge(&stats);
                            Ok(v)
                        }
                        Err(SolveError::DegenerateSystem) => Ok(Verdict::witness(
                            Witness::exact_point(
                                &GaussianRational::zero(),
                                &GaussianRational::one(),
                            ),
                            stats,
                        )),
                        Err(e) => Err(e),
                    };
                }
                DomainKind::OffUAxis => {
                    if dv == 0 {
                        return Ok(Verdict::empty(stats));
                    }
                    let restricted: Vec<MixedPolynomial> =
                        members.iter().map(|m| m.restrict_pair_to_zero(1)).collect();
                    let refs: Vec<&MixedPolynomial> = restricted.iter().collect();
                    return match active_members(&refs) {
                        Ok(live) => {
                            let mut v = solve_axis_system(&live, DomainKind::AxisU, cfg)?;
                            v.stats.merge(&stats);
                            Ok(v)
                        }
                        Err(SolveError::DegenerateSystem) => Ok(Verdict::witness(
                            Witness::exact_point(
                                &GaussianRational::one(),
                                &GaussianRational::zero(),
                            ),
                            stats,
                        )),
                        Err(e) => Err(e),
                    };
                }
                _ => {}
            }
        }
    }

    chart::verify_on_charts(&members, dom, cfg, stats)
}

/// Randomized falsification: multistart sampling plus damped Newton on the
/// realified sum of squares, followed by certification. Never returns
/// `Empty`.
pub fn find_witness(
    system: &[&MixedPolynomial],
    dom: &SolveDomain,
    cfg: &SolverConfig,
) -> Result<Verdict, SolveError> {
    let members = active_members(system)?;
    let mut stats = SolveStats::default();
    if let Some(w) = exact_probe(&members, dom.kind, &mut stats) {
        return Ok(Verdict::witness(w, stats));
    }
    let homogeneous = check_homogeneous(&members, dom.weight).is_ok();
    chart::sample_witness(&members, dom, cfg, homogeneous, stats)
}

/// Two-tier protocol: cheap falsification first, then the expensive
/// emptiness verification.
pub fn decide_empty(
    system: &[&MixedPolynomial],
    dom: &SolveDomain,
    cfg: &SolverConfig,
) -> Result<Verdict, SolveError> {
    let quick_cfg = SolverConfig {
        multistart: cfg.multistart.min(96),
        ..*cfg
    };
    match find_witness(system, dom, &quick_cfg) {
        Ok(v) if v.is_witness() => return Ok(v),
        Ok(_) => {}
        Err(e) => return Err(e),
    }
    verify_empty(system, dom, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::singular::singular_system;

    fn p(s: &str) -> MixedPolynomial {
        parse(s).unwrap()
    }

    fn sys_refs(v: &[MixedPolynomial]) -> Vec<&MixedPolynomial> {
        v.iter().collect()
    }

    #[test]
    fn degenerate_system_detected() {
        let face = p("v*conj(v) - u*conj(u)");
        let s = singular_system(&face).unwrap();
        let members = [s.s1.clone(), s.s2.clone(), s.s3.clone()];
        let err = find_witness(
            &sys_refs(&members),
            &SolveDomain::torus(WeightVector::ONE_ONE),
            &SolverConfig::default(),
        )
        .unwrap_err();
        assert_eq!(err, SolveError::DegenerateSystem);
    }

    #[test]
    fn monomial_shortcut_on_torus() {
        let members = [p("4*u*conj(u)*v*conj(v)")];
        let v = verify_empty(
            &sys_refs(&members),
            &SolveDomain::torus(WeightVector::ONE_ONE),
            &SolverConfig::default(),
        )
        .unwrap();
        assert!(v.is_empty());
    }

    #[test]
    fn u_on_torus_is_empty() {
        let members = [p("u")];
        let v = verify_empty(
            &sys_refs(&members),
            &SolveDomain::torus(WeightVector::ONE_ONE),
            &SolverConfig::default(),
        )
        .unwrap();
        assert!(v.is_empty());
    }

    #[test]
    fn u_and_v_on_torus_witnessless() {
        let members = [p("u"), p("v")];
        let v = find_witness(
            &sys_refs(&members),
            &SolveDomain::torus(WeightVector::ONE_ONE),
            &SolverConfig::default(),
        )
        .unwrap();
        assert!(!v.is_witness() && !v.is_empty());
    }

    #[test]
    fn exact_probe_finds_trivial_zero() {
        // the ex1 face vanishes at (1,1)
        let members = [p("v*conj(v) - u*conj(u)")];
        let v = find_witness(
            &sys_refs(&members),
            &SolveDomain::torus(WeightVector::ONE_ONE),
            &SolverConfig::default(),
        )
        .unwrap();
        match v.status {
            VerdictStatus::Witness(w) => {
                assert_eq!(w.certification, Certification::ExactArithmetic);
                assert_eq!(w.u, [1.0, 0.0]);
                assert_eq!(w.v, [1.0, 0.0]);
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn inhomogeneous_rejected() {
        let members = [p("u + v^3")];
        let err = verify_empty(
            &sys_refs(&members),
            &SolveDomain::torus(WeightVector::ONE_ONE),
            &SolverConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, SolveError::NotHomogeneous { member: 0 }));
    }
}
