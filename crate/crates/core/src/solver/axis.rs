//! Emptiness / witness search on a punctured coordinate line.
//!
//! Members must depend on a single complex pair and be total-degree
//! homogeneous in it, so zeros scale and the unit circle decides everything:
//! each member reduces to a trigonometric polynomial of the angle.

use super::krawczyk;
use super::real::PreparedRealSystem;
use super::{
    Certification, DomainKind, SolveError, SolveStats, SolverConfig, Verdict, Witness,
};
use crate::gaussian::GaussianRational;
use crate::numeric::{ComplexInterval, Interval};
use crate::poly::MixedPolynomial;
use std::collections::BTreeMap;

const TWO_PI: f64 = std::f64::consts::TAU;

struct TrigMember {
    /// `(coefficient, frequency)` pairs; value is `sum c e^{i m theta}`.
    entries: Vec<(ComplexInterval, i64)>,
}

impl TrigMember {
    fn enclosure(&self, t: &Interval) -> ComplexInterval {
        let mut acc = ComplexInterval::new(Interval::ZERO, Interval::ZERO);
        for (c, m) in &self.entries {
            let phase = t.scale(*m as f64);
            acc = acc.add(&c.mul(&ComplexInterval::new(phase.cos(), phase.sin())));
        }
        acc
    }
}

/// Decides the common zeros of `polys` on a punctured axis (`AxisU` or
/// `AxisV`).
pub fn solve_axis_system(
    polys: &[&MixedPolynomial],
    kind: DomainKind,
    cfg: &SolverConfig,
) -> Result<Verdict, SolveError> {
    let pair = match kind {
        DomainKind::AxisU => 0usize,
        DomainKind::AxisV => 1usize,
        _ => panic!("solve_axis_system requires an axis domain"),
    };
    if polys.is_empty() {
        return Err(SolveError::EmptySystem);
    }
    let members: Vec<&MixedPolynomial> =
        polys.iter().copied().filter(|m| !m.is_zero()).collect();
    if members.is_empty() {
        return Err(SolveError::DegenerateSystem);
    }

    let mut stats = SolveStats::default();
    let mut trig = Vec::new();
    for (i, m) in members.iter().enumerate() {
        let mut degree: Option<u32> = None;
        let mut merged: BTreeMap<i64, GaussianRational> = BTreeMap::new();
        for (e, c) in m.terms() {
            let (own, other, freq) = if pair == 0 {
                (e.nu1 + e.mu1, e.nu2 + e.mu2, e.nu1 as i64 - e.mu1 as i64)
            } else {
                (e.nu2 + e.mu2, e.nu1 + e.mu1, e.nu2 as i64 - e.mu2 as i64)
            };
            if other != 0 {
                return Err(SolveError::NotUnivariatePair);
            }
            match degree {
                None => degree = Some(own),
                Some(d) if d != own => return Err(SolveError::NotHomogeneous { member: i }),
                _ => {}
            }
            let slot = merged.entry(freq).or_insert_with(GaussianRational::zero);
            *slot += c;
        }
        // a nonzero constant member excludes every point at once
        if degree == Some(0) {
            return Ok(Verdict::empty(stats));
        }
        trig.push(TrigMember {
            entries: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(f, c)| (ComplexInterval::from_gaussian(&c), f))
                .collect(),
        });
    }

    // exact probes at the fourth roots of unity
    for cand in [
        GaussianRational::one(),
        -GaussianRational::one(),
        GaussianRational::i(),
        -GaussianRational::i(),
    ] {
        stats.exact_probes += 1;
        let (u, v) = if pair == 0 {
            (cand.clone(), GaussianRational::zero())
        } else {
            (GaussianRational::zero(), cand.clone())
        };
        if members.iter().all(|m| m.evaluate_exact(&u, &v).is_zero()) {
            return Ok(Verdict::witness(Witness::exact_point(&u, &v), stats));
        }
    }

    // a member whose trig profile is a single harmonic has constant modulus
    if trig
        .iter()
        .any(|t| t.entries.len() == 1 && t.entries[0].0.abs_lower() > 0.0)
    {
        return Ok(Verdict::empty(stats));
    }

    // 1-D branch and prune over the angle
    let mut wave = vec![Interval::new(0.0, TWO_PI)];
    let mut candidates: Vec<f64> = Vec::new();
    let mut depth = 0u32;
    while !wave.is_empty() && depth < cfg.max_depth {
        stats.boxes_processed += wave.len() as u64;
        stats.max_depth_reached = stats.max_depth_reached.max(depth);
        if stats.boxes_processed > cfg.max_boxes {
            return Ok(Verdict::unknown("box budget exceeded on axis", stats));
        }
        let mut next = Vec::new();
        for t in &wave {
            if trig.iter().any(|m| !m.enclosure(t).contains_zero()) {
                continue;
            }
            if t.width() < cfg.min_width || depth + 1 >= cfg.max_depth {
                if candidates.len() < 64 {
                    candidates.push(t.mid());
                }
                continue;
            }
            let mid = t.mid();
            next.push(Interval::new(t.lo, mid));
            next.push(Interval::new(mid, t.hi));
        }
        wave = next;
        depth += 1;
    }

    if candidates.is_empty() && wave.is_empty() {
        return Ok(Verdict::empty(stats));
    }

    // try to certify a witness at the surviving angles
    let prep = PreparedRealSystem::build(&members);
    for &t in candidates.iter().take(16) {
        let x0 = if pair == 0 {
            [t.cos(), t.sin(), 0.0, 0.0]
        } else {
            [0.0, 0.0, t.cos(), t.sin()]
        };
        let x = prep.polish(x0, 80);
        stats.samples += 1;
        if prep.residual(&x) < cfg.residual_tol {
            let rep = krawczyk::certify_prepared(&prep, &x, cfg);
            let on_axis = if pair == 0 {
                x[2] == 0.0 && x[3] == 0.0
            } else {
                x[0] == 0.0 && x[1] == 0.0
            };
            let off_origin = if pair == 0 {
                x[0].abs() > rep.box_radius || x[1].abs() > rep.box_radius
            } else {
                x[2].abs() > rep.box_radius || x[3].abs() > rep.box_radius
            };
            if rep.certified && on_axis && off_origin {
                return Ok(Verdict::witness(
                    Witness {
                        u: [x[0], x[1]],
                        v: [x[2], x[3]],
                        exact: None,
                        certification: Certification::Krawczyk,
                        box_radius: rep.box_radius,
                    },
                    stats,
                ));
            }
        }
    }
    Ok(Verdict::unknown(
        format!("{} unresolved angle boxes", candidates.len()),
        stats,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn modulus_power_has_no_axis_zeros() {
        let m = parse("0 - (v*conj(v))^3").unwrap();
        let v = solve_axis_system(&[&m], DomainKind::AxisV, &cfg()).unwrap();
        assert!(v.is_empty());
        let m = parse("v*conj(v)").unwrap();
        let v = solve_axis_system(&[&m], DomainKind::AxisV, &cfg()).unwrap();
        assert!(v.is_empty());
    }

    #[test]
    fn real_part_vanishes_at_i() {
        let m = parse("v + conj(v)").unwrap();
        let v = solve_axis_system(&[&m], DomainKind::AxisV, &cfg()).unwrap();
        match v.status {
            super::super::VerdictStatus::Witness(w) => {
                assert_eq!(w.certification, Certification::ExactArithmetic);
                assert_eq!(w.v, [0.0, 1.0]);
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn u_pair_system() {
        let m = parse("100*u^9*conj(u)^9").unwrap();
        let v = solve_axis_system(&[&m], DomainKind::AxisU, &cfg()).unwrap();
        assert!(v.is_empty());
    }

    #[test]
    fn rejects_bivariate_member() {
        let m = parse("u*v").unwrap();
        let err = solve_axis_system(&[&m], DomainKind::AxisV, &cfg()).unwrap_err();
        assert_eq!(err, SolveError::NotUnivariatePair);
    }

    #[test]
    fn rejects_inhomogeneous_member() {
        let m = parse("v + v^2").unwrap();
        let err = solve_axis_system(&[&m], DomainKind::AxisV, &cfg()).unwrap_err();
        assert!(matches!(err, SolveError::NotHomogeneous { .. }));
    }

    #[test]
    fn non_fourth_root_zero_found_numerically() {
        // Re(v) * something: v^2 + conj(v)^2 vanishes at angle pi/4
        let m = parse("v^2 + conj(v)^2").unwrap();
        let v = solve_axis_system(&[&m], DomainKind::AxisV, &cfg()).unwrap();
        match v.status {
            super::super::VerdictStatus::Witness(w) => {
                let ang = (w.v[1]).atan2(w.v[0]).rem_euclid(std::f64::consts::PI);
                assert!(
                    (ang - std::f64::consts::FRAC_PI_4).abs() < 1e-6
                        || (ang - 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-6,
                    "angle {ang}"
                );
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }
}
