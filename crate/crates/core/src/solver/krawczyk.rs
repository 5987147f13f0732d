//! Witness certification: a parametrized Krawczyk contraction on a square
//! realified subsystem (rows and columns picked by full-pivot elimination),
//! plus an interval smallness check on the remaining equations.

#![allow(clippy::needless_range_loop)] // dense matrix loops read best with indices

use super::real::PreparedRealSystem;
use super::SolverConfig;
use crate::numeric::Interval;
use crate::poly::MixedPolynomial;

#[derive(Clone, Debug)]
pub struct CertifyReport {
    pub certified: bool,
    pub box_radius: f64,
    pub rank: usize,
    pub reason: String,
}

impl CertifyReport {
    fn fail(reason: impl Into<String>, rank: usize) -> Self {
        CertifyReport {
            certified: false,
            box_radius: 0.0,
            rank,
            reason: reason.into(),
        }
    }
}

/// Rank detection by full-pivot Gaussian elimination. Returns the pivot rows
/// and columns in selection order.
fn select_subsystem(jac: &[[f64; 4]]) -> (usize, Vec<usize>, Vec<usize>) {
    let m = jac.len();
    let mut work: Vec<[f64; 4]> = jac.to_vec();
    let scale = jac
        .iter()
        .flat_map(|r| r.iter().map(|x| x.abs()))
        .fold(0.0f64, f64::max)
        .max(1.0);
    let tol = 1e-8 * scale;
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    loop {
        let mut best = (0usize, 0usize, 0.0f64);
        for (r, row) in work.iter().enumerate() {
            if rows.contains(&r) {
                continue;
            }
            for c in 0..4 {
                if cols.contains(&c) {
                    continue;
                }
                if row[c].abs() > best.2 {
                    best = (r, c, row[c].abs());
                }
            }
        }
        if best.2 < tol || rows.len() == m.min(4) {
            break;
        }
        let (pr, pc, _) = best;
        rows.push(pr);
        cols.push(pc);
        let piv = work[pr][pc];
        for r in 0..m {
            if r == pr || rows.contains(&r) {
                continue;
            }
            let f = work[r][pc] / piv;
            for c in 0..4 {
                work[r][c] -= f * work[pr][c];
            }
        }
    }
    (rows.len(), rows, cols)
}

fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut aug: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if aug[r][col].abs() > aug[piv][col].abs() {
                piv = r;
            }
        }
        if aug[piv][col].abs() < 1e-14 {
            return None;
        }
        aug.swap(col, piv);
        let d = aug[col][col];
        for c in 0..2 * n {
            aug[col][c] /= d;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = aug[r][col];
            for c in 0..2 * n {
                aug[r][c] -= f * aug[col][c];
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Certification of `x` as (part of) a common zero of the prepared system.
pub fn certify_prepared(
    prep: &PreparedRealSystem,
    x: &[f64; 4],
    cfg: &SolverConfig,
) -> CertifyReport {
    let res = prep.residual(x);
    if res.is_nan() || res >= 1e-7 {
        return CertifyReport::fail(format!("residual {res:.3e} too large"), 0);
    }
    let jac = prep.jacobian(x);
    let (rank, rows, cols) = select_subsystem(&jac);
    if rank == 0 {
        return CertifyReport::fail("Jacobian numerically zero", 0);
    }

    // the smallest rung exists for witnesses on positive-dimensional zero
    // cones: there a linearly dependent equation with an order-one gradient
    // survives the minor selection, and its enclosure width over the box
    // must still fit under the width cap
    'ladder: for &h in &[1e-6, 1e-8, 1e-10, 2e-13] {
        // contracted coordinates get radius h; the frozen coordinates act as
        // parameters and get a smaller radius so their variation cannot eat
        // the whole contraction margin
        let hp = h / 32.0;
        let full: [Interval; 4] = std::array::from_fn(|i| {
            let r = if cols.contains(&i) { h } else { hp };
            Interval::new(x[i] - r, x[i] + r)
        });
        // selected coordinates pinned to the midpoint for the value term
        let mut pinned = full;
        for &c in &cols {
            pinned[c] = Interval::point(x[c]);
        }

        // midpoint Jacobian of the square subsystem
        let js: Vec<Vec<f64>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| jac[r][c]).collect())
            .collect();
        let Some(y) = invert(&js) else {
            continue 'ladder;
        };

        // interval pieces
        let vals: Vec<Interval> = rows
            .iter()
            .map(|&r| prep.interval_value(r, &pinned))
            .collect();
        let grads: Vec<Vec<Interval>> = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| prep.interval_gradient(r, c, &full))
                    .collect()
            })
            .collect();

        // K = x_C - Y f + (I - Y G) * [-h, h]
        let dev = Interval::new(-h, h);
        let mut contracted = true;
        for i in 0..rank {
            let mut k = Interval::point(x[cols[i]]);
            for j in 0..rank {
                k = k.sub(&vals[j].scale(y[i][j]));
            }
            for j in 0..rank {
                let mut coeff = Interval::ZERO;
                for l in 0..rank {
                    coeff = coeff.add(&grads[l][j].scale(y[i][l]));
                }
                let ident = if i == j {
                    Interval::ONE
                } else {
                    Interval::ZERO
                };
                k = k.add(&ident.sub(&coeff).mul(&dev));
            }
            if !(k.lo > x[cols[i]] - h && k.hi < x[cols[i]] + h) {
                contracted = false;
                break;
            }
        }
        if !contracted {
            continue 'ladder;
        }

        // remaining equations must stay consistent over the whole box
        let width_cap = 10.0 * cfg.residual_tol;
        for r in 0..prep.num_equations() {
            if rows.contains(&r) {
                continue;
            }
            let enc = prep.interval_value(r, &full);
            if !enc.contains_zero() || enc.width() >= width_cap {
                continue 'ladder;
            }
        }
        return CertifyReport {
            certified: true,
            box_radius: h,
            rank,
            reason: String::new(),
        };
    }
    CertifyReport::fail("no contraction at any box radius", rank)
}

/// Certification of a point against a system of mixed polynomials.
pub fn certify(
    point: &crate::ComplexPoint,
    system: &[&MixedPolynomial],
    cfg: &SolverConfig,
) -> CertifyReport {
    let live: Vec<&MixedPolynomial> = system.iter().copied().filter(|m| !m.is_zero()).collect();
    if live.is_empty() {
        // nothing constrains the point
        return CertifyReport {
            certified: true,
            box_radius: 0.0,
            rank: 0,
            reason: "system is identically zero".into(),
        };
    }
    let prep = PreparedRealSystem::build(&live);
    certify_prepared(&prep, &point.coords(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::singular::singular_system;
    use crate::ComplexPoint;

    #[test]
    fn certifies_simple_zero() {
        let f = parse("u - v").unwrap();
        let cfg = SolverConfig::default();
        let rep = certify(
            &ComplexPoint::from_re(1.0, 1.0),
            &[&f],
            &cfg,
        );
        assert!(rep.certified, "{}", rep.reason);
    }

    #[test]
    fn rejects_nonzero_point() {
        let f = parse("u + v").unwrap();
        let cfg = SolverConfig::default();
        let rep = certify(&ComplexPoint::from_re(1.0, 1.0), &[&f], &cfg);
        assert!(!rep.certified);
        assert!(rep.reason.contains("residual"));
    }

    #[test]
    fn certifies_axis_family_point() {
        // (0,1) is a critical point of u^2 v + (v conj(v))^2
        let f = parse("u^2*v + (v*conj(v))^2").unwrap();
        let sys = singular_system(&f).unwrap();
        let members = [&sys.s1, &sys.s2, &sys.s3];
        let cfg = SolverConfig::default();
        let rep = certify(&ComplexPoint::from_re(0.0, 1.0), &members, &cfg);
        assert!(rep.certified, "{}", rep.reason);
        assert!(rep.rank >= 1);
    }
}
