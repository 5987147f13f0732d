//! Weighted-slice charts and the branch-and-prune engine.
//!
//! On the chart where `|u| = 1` a point is `(e^{i a}, s e^{i b})` with
//! `s in [0,1]`; the mirror chart puts `v` on the circle. A term
//! `c u^{nu1} conj(u)^{mu1} v^{nu2} conj(v)^{mu2}` contributes
//! `c * s^grade * e^{i((nu1-mu1) a + (nu2-mu2) b)}` where the grade counts
//! the non-circle pair. Enclosures therefore need interval trigonometry in
//! the two angles and a monotone power of `s`, which keeps phase information
//! exact up to the angular box width.

use super::real::PreparedRealSystem;
use super::{
    krawczyk, DomainKind, SolveDomain, SolveError, SolveStats, SolverConfig, Verdict, Witness,
};
use crate::gaussian::GaussianRational;
use crate::numeric::{ComplexInterval, Interval};
use crate::poly::MixedPolynomial;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

const TWO_PI: f64 = std::f64::consts::TAU;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum ChartId {
    /// `|u| = 1`, `v = s e^{i b}`; the face `s = 0` is the line `v = 0`.
    CircleU,
    /// `|v| = 1`, `u = s e^{i a}`; the face `s = 0` is the line `u = 0`.
    CircleV,
}

impl ChartId {
    fn axis_in_domain(self, kind: DomainKind) -> bool {
        match self {
            ChartId::CircleU => kind.admits(false, true),
            ChartId::CircleV => kind.admits(true, false),
        }
    }
}

#[derive(Clone, Debug)]
struct ChartEntry {
    coeff: ComplexInterval,
    freq_u: i64,
    freq_v: i64,
    grade: u32,
}

#[derive(Clone, Debug)]
struct ChartMember {
    entries: Vec<ChartEntry>,
    min_grade: u32,
    /// Upper bound on the l1 coefficient mass strictly above the minimal
    /// grade.
    tail_mass: f64,
}

impl ChartMember {
    fn from_poly(m: &MixedPolynomial, chart: ChartId) -> ChartMember {
        let mut merged: BTreeMap<(i64, i64, u32), GaussianRational> = BTreeMap::new();
        for (e, c) in m.terms() {
            let grade = match chart {
                ChartId::CircleU => e.nu2 + e.mu2,
                ChartId::CircleV => e.nu1 + e.mu1,
            };
            let key = (
                e.nu1 as i64 - e.mu1 as i64,
                e.nu2 as i64 - e.mu2 as i64,
                grade,
            );
            let slot = merged.entry(key).or_insert_with(GaussianRational::zero);
            *slot += c;
        }
        let mut entries: Vec<ChartEntry> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((fu, fv, grade), c)| ChartEntry {
                coeff: ComplexInterval::from_gaussian(&c),
                freq_u: fu,
                freq_v: fv,
                grade,
            })
            .collect();
        entries.sort_by_key(|e| e.grade);
        let min_grade = entries.first().map(|e| e.grade).unwrap_or(0);
        let tail_mass = entries
            .iter()
            .filter(|e| e.grade > min_grade)
            .map(|e| e.coeff.abs_upper())
            .sum();
        ChartMember {
            entries,
            min_grade,
            tail_mass,
        }
    }

    fn enclosure(&self, a: &Interval, b: &Interval, s: &Interval) -> ComplexInterval {
        let mut acc = ComplexInterval::new(Interval::ZERO, Interval::ZERO);
        for e in &self.entries {
            let phase = a.scale(e.freq_u as f64).add(&b.scale(e.freq_v as f64));
            let rot = ComplexInterval::new(phase.cos(), phase.sin());
            let term = e.coeff.mul(&rot).scale_real(&s.powi(e.grade));
            acc = acc.add(&term);
        }
        acc
    }

    /// Enclosure of the grade-`g` slice (without the `s` power).
    fn grade_enclosure(&self, g: u32, a: &Interval, b: &Interval) -> ComplexInterval {
        let mut acc = ComplexInterval::new(Interval::ZERO, Interval::ZERO);
        for e in self.entries.iter().filter(|e| e.grade == g) {
            let phase = a.scale(e.freq_u as f64).add(&b.scale(e.freq_v as f64));
            let rot = ComplexInterval::new(phase.cos(), phase.sin());
            acc = acc.add(&e.coeff.mul(&rot));
        }
        acc
    }

    fn axis_part_is_zero(&self) -> bool {
        self.min_grade > 0 || self.entries.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
struct SliceBox {
    a: Interval,
    b: Interval,
    s: Interval,
    depth: u32,
}

impl SliceBox {
    fn widest_dim(&self) -> usize {
        let w = [
            self.a.width() / TWO_PI,
            self.b.width() / TWO_PI,
            self.s.width(),
        ];
        let mut best = 0;
        for i in 1..3 {
            if w[i] > w[best] {
                best = i;
            }
        }
        best
    }

    fn split(&self) -> (SliceBox, SliceBox) {
        let mut l = *self;
        let mut r = *self;
        l.depth += 1;
        r.depth += 1;
        match self.widest_dim() {
            0 => {
                let m = self.a.mid();
                l.a = Interval::new(self.a.lo, m);
                r.a = Interval::new(m, self.a.hi);
            }
            1 => {
                let m = self.b.mid();
                l.b = Interval::new(self.b.lo, m);
                r.b = Interval::new(m, self.b.hi);
            }
            _ => {
                let m = self.s.mid();
                l.s = Interval::new(self.s.lo, m);
                r.s = Interval::new(m, self.s.hi);
            }
        }
        (l, r)
    }
}

struct ChartSystem {
    chart: ChartId,
    members: Vec<ChartMember>,
}

impl ChartSystem {
    fn new(members: &[&MixedPolynomial], chart: ChartId) -> ChartSystem {
        ChartSystem {
            chart,
            members: members
                .iter()
                .map(|m| ChartMember::from_poly(m, chart))
                .collect(),
        }
    }

    fn pruned(&self, bx: &SliceBox) -> bool {
        self.members
            .iter()
            .any(|m| !m.enclosure(&bx.a, &bx.b, &bx.s).contains_zero())
    }
}

fn chart_point(chart: ChartId, a: f64, b: f64, s: f64) -> [f64; 4] {
    match chart {
        ChartId::CircleU => [a.cos(), a.sin(), s * b.cos(), s * b.sin()],
        ChartId::CircleV => [s * a.cos(), s * a.sin(), b.cos(), b.sin()],
    }
}

/// Outcome of the 1-D analysis of the `s = 0` face of a chart.
enum AxisStatus {
    /// Some member is provably nonzero on the whole axis circle, or the
    /// common zero set of the axis parts is provably empty.
    NoZeros,
    /// A near-zero of the axis system was located at this angle.
    HasZeros(f64),
    /// Every member vanishes identically on the axis.
    AllZero,
    /// Could not resolve within budget.
    Unresolved,
}

fn axis_status(cs: &ChartSystem, stats: &mut SolveStats) -> AxisStatus {
    if cs.members.iter().all(|m| m.axis_part_is_zero()) {
        return AxisStatus::AllZero;
    }
    // 1-D subdivision over the circle angle; grade-0 entries only depend on
    // the circle angle (their partner frequency is zero by construction).
    let full = Interval::new(0.0, TWO_PI);
    let axis_enclosure = |m: &ChartMember, t: &Interval| match cs.chart {
        ChartId::CircleU => m.grade_enclosure(0, t, &Interval::ZERO),
        ChartId::CircleV => m.grade_enclosure(0, &Interval::ZERO, t),
    };
    let mut queue = vec![full];
    let mut depth = 0u32;
    let budget = 1u64 << 14;
    let mut processed = 0u64;
    while !queue.is_empty() && depth < 24 {
        let mut next = Vec::new();
        for t in &queue {
            processed += 1;
            if processed > budget {
                stats.boxes_processed += processed;
                return AxisStatus::Unresolved;
            }
            let excluded = cs
                .members
                .iter()
                .filter(|m| !m.axis_part_is_zero())
                .any(|m| !axis_enclosure(m, t).contains_zero());
            if excluded {
                continue;
            }
            let m = t.mid();
            next.push(Interval::new(t.lo, m));
            next.push(Interval::new(m, t.hi));
        }
        queue = next;
        depth += 1;
    }
    stats.boxes_processed += processed;
    if queue.is_empty() {
        AxisStatus::NoZeros
    } else {
        AxisStatus::HasZeros(queue[0].mid())
    }
}

/// Tube lemma: a radius `delta` such that no member of the chart system can
/// vanish for `0 < s <= delta`. Works per member; any single member
/// suffices.
fn tube_radius(cs: &ChartSystem, cfg: &SolverConfig, stats: &mut SolveStats) -> Option<f64> {
    'member: for m in &cs.members {
        if m.entries.is_empty() {
            continue;
        }
        let g0 = m.min_grade;
        // lower-bound the minimal grade slice over the whole torus
        let full = Interval::new(0.0, TWO_PI);
        let mut queue = vec![(full, full)];
        let mut alpha = f64::INFINITY;
        let mut depth = 0u32;
        let mut processed = 0u64;
        let budget = 1u64 << 14;
        while !queue.is_empty() {
            if depth >= 16 || processed > budget {
                continue 'member;
            }
            let mut next = Vec::new();
            for (a, b) in &queue {
                processed += 1;
                let enc = m.grade_enclosure(g0, a, b);
                let lower = enc.abs_lower();
                if lower > 0.0 {
                    alpha = alpha.min(lower);
                    continue;
                }
                let (am, bm) = (a.mid(), b.mid());
                next.push((Interval::new(a.lo, am), Interval::new(b.lo, bm)));
                next.push((Interval::new(a.lo, am), Interval::new(bm, b.hi)));
                next.push((Interval::new(am, a.hi), Interval::new(b.lo, bm)));
                next.push((Interval::new(am, a.hi), Interval::new(bm, b.hi)));
            }
            queue = next;
            depth += 1;
        }
        stats.boxes_processed += processed;
        if !alpha.is_finite() || alpha <= 0.0 {
            continue;
        }
        let delta = if m.tail_mass == 0.0 {
            1.0
        } else {
            (alpha / (2.0 * m.tail_mass)).min(1.0)
        };
        if delta > cfg.min_width {
            return Some(delta);
        }
    }
    None
}

struct ChartRun<'a> {
    cs: ChartSystem,
    axis_included: bool,
    prepared: &'a PreparedRealSystem,
    dom: SolveDomain,
}

enum ChartOutcome {
    Empty,
    Witness(Witness),
    Unknown(String),
}

fn run_chart(run: &ChartRun<'_>, cfg: &SolverConfig, stats: &mut SolveStats) -> ChartOutcome {
    let status = axis_status(&run.cs, stats);
    let mut s_lo = 0.0;
    match status {
        AxisStatus::NoZeros => {}
        AxisStatus::AllZero | AxisStatus::HasZeros(_) | AxisStatus::Unresolved => {
            if run.axis_included {
                // axis points are inside the domain; try to certify one
                let seed_angle = match status {
                    AxisStatus::HasZeros(t) => t,
                    _ => 0.0,
                };
                let x0 = chart_point(run.cs.chart, seed_angle, seed_angle, 0.0);
                // zero out the non-circle pair exactly
                let x0 = match run.cs.chart {
                    ChartId::CircleU => [x0[0], x0[1], 0.0, 0.0],
                    ChartId::CircleV => [0.0, 0.0, x0[2], x0[3]],
                };
                if let Some(w) = polish_and_certify(run, x0, cfg, stats) {
                    return ChartOutcome::Witness(w);
                }
                if matches!(status, AxisStatus::AllZero) {
                    // whole axis consists of zeros but certification failed
                    return ChartOutcome::Unknown(
                        "axis zeros present but not certifiable".into(),
                    );
                }
            } else {
                match tube_radius(&run.cs, cfg, stats) {
                    Some(delta) => {
                        if delta >= 1.0 {
                            return ChartOutcome::Empty;
                        }
                        s_lo = delta;
                    }
                    None => {
                        return ChartOutcome::Unknown(
                            "zeros on the excluded axis could not be separated".into(),
                        )
                    }
                }
            }
        }
    }

    // main branch-and-prune over the chart
    let full = Interval::new(0.0, TWO_PI);
    let root = SliceBox {
        a: full,
        b: full,
        s: Interval::new(s_lo, 1.0),
        depth: 0,
    };
    let mut wave = vec![root];
    let mut candidates: Vec<SliceBox> = Vec::new();
    let mut budget_hit = false;
    while !wave.is_empty() {
        if stats.boxes_processed > cfg.max_boxes {
            budget_hit = true;
            break;
        }
        stats.boxes_processed += wave.len() as u64;
        stats.max_depth_reached = stats.max_depth_reached.max(wave[0].depth);
        let process = |bx: &SliceBox| -> (Option<(SliceBox, SliceBox)>, Option<SliceBox>) {
            if run.cs.pruned(bx) {
                (None, None)
            } else if bx.depth >= cfg.max_depth
                || (bx.a.width() < cfg.min_width
                    && bx.b.width() < cfg.min_width
                    && bx.s.width() < cfg.min_width)
            {
                (None, Some(*bx))
            } else {
                (Some(bx.split()), None)
            }
        };
        let results: Vec<_> = if wave.len() >= 128 {
            wave.par_iter().map(process).collect()
        } else {
            wave.iter().map(process).collect()
        };
        let mut next = Vec::new();
        for (children, cand) in results {
            if let Some((l, r)) = children {
                next.push(l);
                next.push(r);
            }
            if let Some(c) = cand {
                if candidates.len() < 256 {
                    candidates.push(c);
                }
            }
        }
        wave = next;
    }

    if budget_hit {
        return ChartOutcome::Unknown("box budget exceeded".into());
    }
    if candidates.is_empty() {
        return ChartOutcome::Empty;
    }
    // lexicographically earliest boxes first (creation order)
    for bx in candidates.iter().take(40) {
        let x0 = chart_point(run.cs.chart, bx.a.mid(), bx.b.mid(), bx.s.mid());
        if let Some(w) = polish_and_certify(run, x0, cfg, stats) {
            return ChartOutcome::Witness(w);
        }
    }
    ChartOutcome::Unknown(format!(
        "{} unresolved boxes at depth cap",
        candidates.len()
    ))
}

fn in_domain(x: &[f64; 4], radius: f64, kind: DomainKind) -> bool {
    let u_zero = x[0].abs() <= radius && x[1].abs() <= radius;
    let v_zero = x[2].abs() <= radius && x[3].abs() <= radius;
    kind.admits(u_zero, v_zero)
}

fn polish_and_certify(
    run: &ChartRun<'_>,
    x0: [f64; 4],
    cfg: &SolverConfig,
    stats: &mut SolveStats,
) -> Option<Witness> {
    let x = run.prepared.polish(x0, 80);
    let res = run.prepared.residual(&x);
    if res.is_nan() || res >= cfg.residual_tol {
        return None;
    }
    let rep = krawczyk::certify_prepared(run.prepared, &x, cfg);
    stats.samples += 1;
    if rep.certified && in_domain(&x, rep.box_radius, run.dom.kind) {
        Some(Witness {
            u: [x[0], x[1]],
            v: [x[2], x[3]],
            exact: None,
            certification: super::Certification::Krawczyk,
            box_radius: rep.box_radius,
        })
    } else {
        None
    }
}

/// Emptiness verification across both charts of the weighted slice.
pub(crate) fn verify_on_charts(
    members: &[&MixedPolynomial],
    dom: &SolveDomain,
    cfg: &SolverConfig,
    mut stats: SolveStats,
) -> Result<Verdict, SolveError> {
    let prepared = PreparedRealSystem::build(members);
    let mut unknown_reason: Option<String> = None;
    for chart in [ChartId::CircleU, ChartId::CircleV] {
        let run = ChartRun {
            cs: ChartSystem::new(members, chart),
            axis_included: chart.axis_in_domain(dom.kind),
            prepared: &prepared,
            dom: *dom,
        };
        match run_chart(&run, cfg, &mut stats) {
            ChartOutcome::Empty => {}
            ChartOutcome::Witness(w) => return Ok(Verdict::witness(w, stats)),
            ChartOutcome::Unknown(r) => {
                unknown_reason.get_or_insert(r);
            }
        }
    }
    match unknown_reason {
        None => Ok(Verdict::empty(stats)),
        Some(r) => Ok(Verdict::unknown(r, stats)),
    }
}

/// Multistart falsification sampler.
pub(crate) fn sample_witness(
    members: &[&MixedPolynomial],
    dom: &SolveDomain,
    cfg: &SolverConfig,
    homogeneous: bool,
    mut stats: SolveStats,
) -> Result<Verdict, SolveError> {
    use rand::SeedableRng;
    let prepared = PreparedRealSystem::build(members);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let charts = [ChartId::CircleU, ChartId::CircleV];
    for _ in 0..cfg.multistart {
        stats.samples += 1;
        let x0: [f64; 4] = if homogeneous {
            let chart = charts[rng.gen_range(0..2usize)];
            let a = rng.gen_range(0.0..TWO_PI);
            let b = rng.gen_range(0.0..TWO_PI);
            let axis_ok = chart.axis_in_domain(dom.kind);
            let s = if axis_ok && rng.gen_bool(0.2) {
                0.0
            } else {
                let floor = cfg.rho_floor.clamp(1e-3, 0.99);
                rng.gen_range(floor..1.0)
            };
            chart_point(chart, a, b, s)
        } else {
            [
                rng.gen_range(-cfg.box_radius..cfg.box_radius),
                rng.gen_range(-cfg.box_radius..cfg.box_radius),
                rng.gen_range(-cfg.box_radius..cfg.box_radius),
                rng.gen_range(-cfg.box_radius..cfg.box_radius),
            ]
        };
        let mut x = prepared.polish(x0, 120);
        if homogeneous {
            x = rescale_to_slice(&x, dom);
            x = prepared.polish(x, 40);
        }
        if prepared.residual(&x) < cfg.residual_tol {
            let rep = krawczyk::certify_prepared(&prepared, &x, cfg);
            if rep.certified && in_domain(&x, rep.box_radius, dom.kind) {
                return Ok(Verdict::witness(
                    Witness {
                        u: [x[0], x[1]],
                        v: [x[2], x[3]],
                        exact: None,
                        certification: super::Certification::Krawczyk,
                        box_radius: rep.box_radius,
                    },
                    stats,
                ));
            }
        }
    }
    Ok(Verdict::unknown("no witness found", stats))
}

/// Applies the real scaling action to land back on the weighted slice.
fn rescale_to_slice(x: &[f64; 4], dom: &SolveDomain) -> [f64; 4] {
    let u = Complex64::new(x[0], x[1]);
    let v = Complex64::new(x[2], x[3]);
    let (p1, p2) = (dom.weight.p1 as f64, dom.weight.p2 as f64);
    let lam = (u.norm().powf(1.0 / p1)).max(v.norm().powf(1.0 / p2));
    if lam.is_nan() || lam <= 0.0 || !lam.is_finite() {
        return *x;
    }
    let u = u / lam.powf(p1);
    let v = v / lam.powf(p2);
    [u.re, u.im, v.re, v.im]
}
