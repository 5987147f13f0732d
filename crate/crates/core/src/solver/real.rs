//! Realified systems compiled for fast double evaluation, with a
//! Levenberg-Marquardt polisher for the sum of squares.

use crate::numeric::Interval;
use crate::poly::MixedPolynomial;
use crate::singular::{realify, RealPolynomial};

/// A real polynomial with coefficients lowered to doubles.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    pub terms: Vec<([u32; 4], f64)>,
}

impl CompiledPoly {
    fn from_exact(p: &RealPolynomial) -> CompiledPoly {
        use num_traits::ToPrimitive;
        CompiledPoly {
            terms: p
                .terms
                .iter()
                .map(|(e, c)| (*e, c.to_f64().unwrap_or(f64::NAN)))
                .collect(),
        }
    }

    pub fn evaluate(&self, x: &[f64; 4]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut m = *c;
            for i in 0..4 {
                m *= x[i].powi(e[i] as i32);
            }
            acc += m;
        }
        acc
    }
}

/// A realified system with exact equations, compiled doubles, and symbolic
/// gradients, ready for polishing and certification.
pub struct PreparedRealSystem {
    pub equations: Vec<RealPolynomial>,
    pub compiled: Vec<CompiledPoly>,
    pub gradients: Vec<[RealPolynomial; 4]>,
    pub gradients_compiled: Vec<[CompiledPoly; 4]>,
}

impl PreparedRealSystem {
    pub fn build(members: &[&MixedPolynomial]) -> PreparedRealSystem {
        let sys = realify(members);
        let equations: Vec<RealPolynomial> =
            sys.equations().into_iter().cloned().collect();
        let gradients: Vec<[RealPolynomial; 4]> = equations
            .iter()
            .map(|q| {
                [
                    q.derivative(0),
                    q.derivative(1),
                    q.derivative(2),
                    q.derivative(3),
                ]
            })
            .collect();
        let compiled = equations.iter().map(CompiledPoly::from_exact).collect();
        let gradients_compiled = gradients
            .iter()
            .map(|g| {
                [
                    CompiledPoly::from_exact(&g[0]),
                    CompiledPoly::from_exact(&g[1]),
                    CompiledPoly::from_exact(&g[2]),
                    CompiledPoly::from_exact(&g[3]),
                ]
            })
            .collect();
        PreparedRealSystem {
            equations,
            compiled,
            gradients,
            gradients_compiled,
        }
    }

    pub fn num_equations(&self) -> usize {
        self.equations.len()
    }

    pub fn values(&self, x: &[f64; 4]) -> Vec<f64> {
        self.compiled.iter().map(|q| q.evaluate(x)).collect()
    }

    /// Max-norm residual.
    pub fn residual(&self, x: &[f64; 4]) -> f64 {
        self.compiled
            .iter()
            .map(|q| q.evaluate(x).abs())
            .fold(0.0, f64::max)
    }

    pub fn jacobian(&self, x: &[f64; 4]) -> Vec<[f64; 4]> {
        self.gradients_compiled
            .iter()
            .map(|g| {
                [
                    g[0].evaluate(x),
                    g[1].evaluate(x),
                    g[2].evaluate(x),
                    g[3].evaluate(x),
                ]
            })
            .collect()
    }

    pub fn interval_value(&self, idx: usize, x: &[Interval; 4]) -> Interval {
        self.equations[idx].evaluate_interval(x)
    }

    pub fn interval_gradient(&self, idx: usize, var: usize, x: &[Interval; 4]) -> Interval {
        self.gradients[idx][var].evaluate_interval(x)
    }

    /// Damped Gauss-Newton descent on the sum of squares.
    pub fn polish(&self, x0: [f64; 4], max_iter: u32) -> [f64; 4] {
        let mut x = x0;
        let mut lambda = 1e-3;
        let mut phi = self.sos(&x);
        for _ in 0..max_iter {
            if phi < 1e-30 {
                break;
            }
            let jac = self.jacobian(&x);
            let vals = self.values(&x);
            // normal equations J^T J + lambda I, J^T f
            let mut h = [[0.0f64; 4]; 4];
            let mut g = [0.0f64; 4];
            for (row, &v) in jac.iter().zip(vals.iter()) {
                for i in 0..4 {
                    g[i] += row[i] * v;
                    for j in 0..4 {
                        h[i][j] += row[i] * row[j];
                    }
                }
            }
            for (i, hrow) in h.iter_mut().enumerate() {
                hrow[i] += lambda;
            }
            let Some(step) = solve4(h, g) else {
                lambda *= 10.0;
                continue;
            };
            let xn = [x[0] - step[0], x[1] - step[1], x[2] - step[2], x[3] - step[3]];
            let phin = self.sos(&xn);
            if phin < phi {
                x = xn;
                phi = phin;
                lambda = (lambda * 0.35).max(1e-14);
            } else {
                lambda *= 8.0;
                if lambda > 1e12 {
                    break;
                }
            }
        }
        x
    }

    fn sos(&self, x: &[f64; 4]) -> f64 {
        self.compiled
            .iter()
            .map(|q| {
                let v = q.evaluate(x);
                v * v
            })
            .sum()
    }
}

/// Dense 4x4 solve with partial pivoting. Returns `None` on (near) singular
/// systems.
pub fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let mut piv = col;
        for r in col + 1..4 {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        for r in 0..4 {
            if r == col {
                continue;
            }
            let factor = a[r][col] / d;
            let pivot_row = a[col];
            for (x, p) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * p;
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = [0.0; 4];
    for i in 0..4 {
        x[i] = b[i] / a[i][i];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn polish_converges_on_linear_system() {
        let f = parse("u - v").unwrap();
        let g = parse("u + v - 2").unwrap();
        let prep = PreparedRealSystem::build(&[&f, &g]);
        let x = prep.polish([0.3, 0.2, -0.5, 0.1], 100);
        assert!((x[0] - 1.0).abs() < 1e-10);
        assert!((x[2] - 1.0).abs() < 1e-10);
        assert!(prep.residual(&x) < 1e-10);
    }

    #[test]
    fn solve4_roundtrip() {
        let a = [
            [2.0, 1.0, 0.0, 0.0],
            [1.0, 3.0, 1.0, 0.0],
            [0.0, 1.0, 4.0, 1.0],
            [0.0, 0.0, 1.0, 5.0],
        ];
        let x_true = [1.0, -2.0, 3.0, -4.0];
        let mut b = [0.0; 4];
        for i in 0..4 {
            for j in 0..4 {
                b[i] += a[i][j] * x_true[j];
            }
        }
        let x = solve4(a, b).unwrap();
        for i in 0..4 {
            assert!((x[i] - x_true[i]).abs() < 1e-12);
        }
    }
}
