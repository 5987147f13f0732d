//! The six non-degeneracy predicates and the implication engine.
//!
//! Newton / strong Newton non-degeneracy quantify per compact face, inner
//! non-degeneracy over the boundary faces with axis-extended domains for the
//! outermost ones, and partial non-degeneracy over every positive weight
//! vector, which the refined normal fan reduces to finitely many cells.
//! Verdicts are three-valued; failures carry certified witnesses and derived
//! facts name the rule that produced them.

use crate::gaussian::GaussianRational;
use crate::newton::{
    build_boundary, face_function, refine_fan, rwh_weight, NewtonBoundary, NewtonError,
    WeightVector,
};
use crate::parse::format_polynomial;
use crate::poly::MixedPolynomial;
use crate::singular::{axis_restrict, singular_system, Axis, SingularSystem};
use crate::solver::{
    decide_empty, solve_axis_system, DomainKind, SolveDomain, SolveError, SolveStats,
    SolverConfig, Verdict as SolveVerdict, VerdictStatus, Witness,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum NondegError {
    #[error("input must be a germ: constant term is nonzero")]
    NotAGerm,
    #[error("input is not radially weighted homogeneous")]
    NotRadiallyHomogeneous,
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error("internal solver misuse: {0}")]
    Solver(#[from] SolveError),
    #[error("inconsistent verdicts: {0}")]
    InconsistentVerdicts(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, PartialOrd, Ord, Hash)]
pub enum Property {
    Nd,
    Snd,
    Ind,
    Sind,
    Pnd,
    Spnd,
    WeaklyIsolated,
    Isolated,
    Smc,
}

impl Property {
    pub fn name(&self) -> &'static str {
        match self {
            Property::Nd => "ND",
            Property::Snd => "SND",
            Property::Ind => "IND",
            Property::Sind => "SIND",
            Property::Pnd => "PND",
            Property::Spnd => "SPND",
            Property::WeaklyIsolated => "weakly_isolated",
            Property::Isolated => "isolated",
            Property::Smc => "strong_milnor_condition",
        }
    }
}

/// Three-valued verdict for one property.
#[derive(Clone, Debug, Serialize)]
pub enum Status {
    Holds,
    Fails { witness: Box<Witness> },
    Unknown { reason: String },
}

impl Status {
    pub fn holds(&self) -> bool {
        matches!(self, Status::Holds)
    }
    pub fn fails(&self) -> bool {
        matches!(self, Status::Fails { .. })
    }
    pub fn unknown(&self) -> bool {
        matches!(self, Status::Unknown { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum Provenance {
    Checked,
    Implied { rule: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyVerdict {
    pub property: Property,
    pub status: Status,
    pub provenance: Provenance,
    pub stats: SolveStats,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub input: String,
    pub boundary: NewtonBoundary,
    /// Witnessing weight when the input is radially weighted homogeneous.
    pub rwh: Option<WeightVector>,
    pub properties: Vec<PropertyVerdict>,
    pub config: SolverConfig,
}

impl ClassificationReport {
    pub fn get(&self, p: Property) -> Option<&PropertyVerdict> {
        self.properties.iter().find(|v| v.property == p)
    }

    pub fn status(&self, p: Property) -> Option<&Status> {
        self.get(p).map(|v| &v.status)
    }
}

/// Which predicates to evaluate directly.
#[derive(Clone, Copy, Debug, Default)]
pub struct CheckSet {
    pub nd: bool,
    pub snd: bool,
    pub ind: bool,
    pub sind: bool,
    pub pnd: bool,
    pub spnd: bool,
}

impl CheckSet {
    pub fn all() -> Self {
        CheckSet {
            nd: true,
            snd: true,
            ind: true,
            sind: true,
            pnd: true,
            spnd: true,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub checks: CheckSet,
    /// Disables early exit so every sub-check runs.
    pub exhaustive: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            checks: CheckSet::all(),
            exhaustive: false,
        }
    }
}

/// Result of one predicate evaluation.
#[derive(Clone, Debug)]
pub struct Check {
    pub status: Status,
    pub stats: SolveStats,
}

impl Check {
    fn holds() -> Check {
        Check {
            status: Status::Holds,
            stats: SolveStats::default(),
        }
    }

    /// Merges one solver verdict; returns false when evaluation should stop.
    fn absorb(&mut self, v: SolveVerdict, exhaustive: bool) -> bool {
        self.stats.merge(&v.stats);
        match v.status {
            VerdictStatus::Empty => true,
            VerdictStatus::Witness(w) => {
                if !self.status.fails() {
                    self.status = Status::Fails {
                        witness: Box::new(w),
                    };
                }
                exhaustive
            }
            VerdictStatus::Unknown { reason } => {
                if self.status.holds() {
                    self.status = Status::Unknown { reason };
                }
                true
            }
        }
    }
}

/// Canonical witness for a system every domain point solves.
fn degenerate_witness(kind: DomainKind) -> Witness {
    let one = GaussianRational::one;
    let zero = GaussianRational::zero;
    match kind {
        DomainKind::Torus2 => Witness::exact_point(&one(), &one()),
        DomainKind::OffVAxis | DomainKind::AxisV => Witness::exact_point(&zero(), &one()),
        DomainKind::OffUAxis | DomainKind::AxisU => Witness::exact_point(&one(), &zero()),
    }
}

/// Vertex-selecting weight: a representative of the open cone dual to the
/// given hull vertex.
fn vertex_weight(boundary: &NewtonBoundary, g: &MixedPolynomial, idx: usize) -> WeightVector {
    let faces = &boundary.one_faces;
    let n = faces.len();
    if n == 0 {
        return WeightVector::ONE_ONE;
    }
    let max_coord = g
        .support()
        .iter()
        .flat_map(|p| [p.0 as u64, p.1 as u64])
        .max()
        .unwrap_or(1)
        .max(1);
    if idx == 0 {
        let w = faces[0].weight;
        WeightVector::new(1 + max_coord * w.p1.max(w.p2), 1)
    } else if idx == n {
        let w = faces[n - 1].weight;
        WeightVector::new(1, 1 + max_coord * w.p1.max(w.p2))
    } else {
        let (a, b) = (faces[idx - 1].weight, faces[idx].weight);
        WeightVector::new(a.p1 + b.p1, a.p2 + b.p2)
    }
}

/// Driver for the predicate checks of one germ.
pub struct Analyzer {
    f: MixedPolynomial,
    boundary: NewtonBoundary,
    sys: SingularSystem,
    cfg: SolverConfig,
    opts: ClassifyOptions,
}

impl Analyzer {
    pub fn new(
        f: &MixedPolynomial,
        cfg: SolverConfig,
        opts: ClassifyOptions,
    ) -> Result<Analyzer, NondegError> {
        if f.is_zero() {
            return Err(NondegError::Newton(NewtonError::EmptySupport));
        }
        if !f.constant_term().is_zero() {
            return Err(NondegError::NotAGerm);
        }
        Ok(Analyzer {
            boundary: build_boundary(f)?,
            sys: singular_system(f)?,
            f: f.clone(),
            cfg,
            opts,
        })
    }

    pub fn boundary(&self) -> &NewtonBoundary {
        &self.boundary
    }

    pub fn singular(&self) -> &SingularSystem {
        &self.sys
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    /// Runs a torus/off-axis solve, folding the outcome into `check`.
    /// Returns false when evaluation should stop early.
    fn run_system(
        &self,
        members: &[&MixedPolynomial],
        dom: SolveDomain,
        check: &mut Check,
    ) -> Result<bool, NondegError> {
        match decide_empty(members, &dom, &self.cfg) {
            Ok(v) => Ok(check.absorb(v, self.opts.exhaustive)),
            Err(SolveError::DegenerateSystem) => {
                check.status = Status::Fails {
                    witness: Box::new(degenerate_witness(dom.kind)),
                };
                Ok(self.opts.exhaustive)
            }
            Err(e) => Err(NondegError::Solver(e)),
        }
    }

    fn run_axis_system(
        &self,
        members: &[&MixedPolynomial],
        kind: DomainKind,
        check: &mut Check,
    ) -> Result<bool, NondegError> {
        let live: Vec<&MixedPolynomial> =
            members.iter().copied().filter(|m| !m.is_zero()).collect();
        if live.is_empty() {
            check.status = Status::Fails {
                witness: Box::new(degenerate_witness(kind)),
            };
            return Ok(self.opts.exhaustive);
        }
        match solve_axis_system(&live, kind, &self.cfg) {
            Ok(v) => Ok(check.absorb(v, self.opts.exhaustive)),
            Err(e) => Err(NondegError::Solver(e)),
        }
    }

    /// Newton non-degeneracy of a single face function; `strong` drops the
    /// variety equation.
    pub fn check_face(
        &self,
        face_fn: &MixedPolynomial,
        weight: WeightVector,
        strong: bool,
    ) -> Result<Check, NondegError> {
        let fsys = singular_system(face_fn)?;
        let mut members: Vec<&MixedPolynomial> = vec![&fsys.s1, &fsys.s2, &fsys.s3];
        if !strong {
            members.push(face_fn);
        }
        let mut check = Check::holds();
        self.run_system(&members, SolveDomain::torus(weight), &mut check)?;
        Ok(check)
    }

    /// (Strong) Newton non-degeneracy: every compact face passes.
    pub fn check_newton(&self, strong: bool) -> Result<Check, NondegError> {
        let mut check = Check::holds();
        for face in &self.boundary.one_faces {
            let ffn = face_function(&self.f, face.weight)?;
            let sub = self.check_face(&ffn, face.weight, strong)?;
            if !absorb_sub(&mut check, sub, self.opts.exhaustive) {
                return Ok(check);
            }
        }
        for idx in 0..self.boundary.vertices.len() {
            let w = vertex_weight(&self.boundary, &self.f, idx);
            let ffn = face_function(&self.f, w)?;
            let sub = self.check_face(&ffn, w, strong)?;
            if !absorb_sub(&mut check, sub, self.opts.exhaustive) {
                return Ok(check);
            }
        }
        Ok(check)
    }

    /// (Strong) inner non-degeneracy of the analyzed germ.
    pub fn check_inner(&self, strong: bool) -> Result<Check, NondegError> {
        self.check_inner_of(&self.f, strong)
    }

    /// Inner non-degeneracy of an arbitrary nonzero polynomial (also used
    /// for the auxiliary conditions on `f_u` and `s1`).
    pub fn check_inner_of(
        &self,
        g: &MixedPolynomial,
        strong: bool,
    ) -> Result<Check, NondegError> {
        if g.is_zero() {
            return Err(NondegError::Newton(NewtonError::EmptySupport));
        }
        let boundary = build_boundary(g)?;
        let mut check = Check::holds();
        let n = boundary.num_one_faces();

        let face_system = |w: WeightVector| -> Result<Vec<MixedPolynomial>, NondegError> {
            let ffn = face_function(g, w)?;
            let fsys = singular_system(&ffn)?;
            let mut members = vec![fsys.s1, fsys.s2, fsys.s3];
            if !strong {
                members.push(ffn);
            }
            Ok(members)
        };

        if n == 0 {
            // single-vertex convention: no critical points of the principal
            // part away from the origin (in the variety when not strong)
            let members = face_system(WeightVector::ONE_ONE)?;
            let refs: Vec<&MixedPolynomial> = members.iter().collect();
            if !self.run_system(
                &refs,
                SolveDomain::new(DomainKind::OffVAxis, WeightVector::ONE_ONE),
                &mut check,
            )? {
                return Ok(check);
            }
            let restricted: Vec<MixedPolynomial> = members
                .iter()
                .map(|m| axis_restrict(m, Axis::VZero))
                .collect();
            let refs: Vec<&MixedPolynomial> = restricted.iter().collect();
            self.run_axis_system(&refs, DomainKind::AxisU, &mut check)?;
            return Ok(check);
        }

        // condition (i): outermost faces over the axis-extended domains
        let p1 = boundary.one_faces[0].weight;
        let pn = boundary.one_faces[n - 1].weight;
        for (w, kind) in [(p1, DomainKind::OffVAxis), (pn, DomainKind::OffUAxis)] {
            let members = face_system(w)?;
            let refs: Vec<&MixedPolynomial> = members.iter().collect();
            if !self.run_system(&refs, SolveDomain::new(kind, w), &mut check)? {
                return Ok(check);
            }
        }

        // condition (ii): 1-faces and non-extreme vertices on the torus
        for face in &boundary.one_faces {
            let members = face_system(face.weight)?;
            let refs: Vec<&MixedPolynomial> = members.iter().collect();
            if !self.run_system(&refs, SolveDomain::torus(face.weight), &mut check)? {
                return Ok(check);
            }
        }
        for (idx, vf) in boundary.vertex_faces.iter().enumerate() {
            if vf.extreme {
                continue;
            }
            let w = vertex_weight(&boundary, g, idx);
            let members = face_system(w)?;
            let refs: Vec<&MixedPolynomial> = members.iter().collect();
            if !self.run_system(&refs, SolveDomain::torus(w), &mut check)? {
                return Ok(check);
            }
        }
        Ok(check)
    }

    /// (Strong) partial non-degeneracy.
    pub fn check_partial(&self, strong: bool) -> Result<Check, NondegError> {
        let mut check = Check::holds();

        // condition (i): lowest graded parts of the axis restrictions; the
        // P-part of a one-pair polynomial is its lowest total-degree part,
        // so the condition is weight-independent and checked once per axis
        for (axis, kind) in [
            (Axis::UZero, DomainKind::AxisV),
            (Axis::VZero, DomainKind::AxisU),
        ] {
            let mut members: Vec<MixedPolynomial> = Vec::new();
            for s in self.sys.members() {
                let r = axis_restrict(s, axis);
                if !r.is_zero() {
                    members.push(face_function(&r, WeightVector::ONE_ONE)?);
                }
            }
            if !strong {
                let r = axis_restrict(&self.f, axis);
                if !r.is_zero() {
                    members.push(face_function(&r, WeightVector::ONE_ONE)?);
                }
            }
            let refs: Vec<&MixedPolynomial> = members.iter().collect();
            if !self.run_axis_system(&refs, kind, &mut check)? {
                return Ok(check);
            }
        }

        // condition (ii): one system per cell of the refined fan
        let mut fan_input: Vec<&MixedPolynomial> = vec![&self.f];
        for s in self.sys.members() {
            if !s.is_zero() {
                fan_input.push(s);
            }
        }
        let cells = refine_fan(&fan_input)?;
        for cell in cells {
            let w = cell.representative;
            let mut members: Vec<MixedPolynomial> = Vec::new();
            for s in self.sys.members() {
                if !s.is_zero() {
                    members.push(face_function(s, w)?);
                }
            }
            if !strong {
                members.push(face_function(&self.f, w)?);
            }
            if members.is_empty() {
                check.status = Status::Fails {
                    witness: Box::new(degenerate_witness(DomainKind::Torus2)),
                };
                if !self.opts.exhaustive {
                    return Ok(check);
                }
                continue;
            }
            let refs: Vec<&MixedPolynomial> = members.iter().collect();
            if !self.run_system(&refs, SolveDomain::torus(w), &mut check)? {
                return Ok(check);
            }
        }
        Ok(check)
    }

    /// Operational "nice boundary" predicate: no non-extreme-vertex face
    /// function vanishes on the torus.
    pub fn check_nice_of(&self, g: &MixedPolynomial) -> Result<Check, NondegError> {
        let boundary = build_boundary(g)?;
        let mut check = Check::holds();
        for (idx, vf) in boundary.vertex_faces.iter().enumerate() {
            if vf.extreme {
                continue;
            }
            let w = vertex_weight(&boundary, g, idx);
            let ffn = face_function(g, w)?;
            let members = [&ffn];
            if !self.run_system(&members, SolveDomain::torus(w), &mut check)? {
                return Ok(check);
            }
        }
        Ok(check)
    }
}

fn absorb_sub(check: &mut Check, sub: Check, exhaustive: bool) -> bool {
    check.stats.merge(&sub.stats);
    match sub.status {
        Status::Holds => true,
        Status::Fails { witness } => {
            if !check.status.fails() {
                check.status = Status::Fails { witness };
            }
            exhaustive
        }
        Status::Unknown { reason } => {
            if check.status.holds() {
                check.status = Status::Unknown { reason };
            }
            true
        }
    }
}

/// Implication rule of the classification engine.
struct Rule {
    antecedent: Property,
    consequent: Property,
    needs_convenient: bool,
    tag: &'static str,
}

const RULES: &[Rule] = &[
    Rule {
        antecedent: Property::Snd,
        consequent: Property::Nd,
        needs_convenient: false,
        tag: "SND => ND",
    },
    Rule {
        antecedent: Property::Sind,
        consequent: Property::Ind,
        needs_convenient: false,
        tag: "SIND => IND",
    },
    Rule {
        antecedent: Property::Spnd,
        consequent: Property::Pnd,
        needs_convenient: false,
        tag: "SPND => PND",
    },
    Rule {
        antecedent: Property::Nd,
        consequent: Property::Ind,
        needs_convenient: true,
        tag: "convenient + ND => IND",
    },
    Rule {
        antecedent: Property::Snd,
        consequent: Property::Sind,
        needs_convenient: true,
        tag: "convenient + SND => SIND",
    },
    Rule {
        antecedent: Property::Ind,
        consequent: Property::Pnd,
        needs_convenient: false,
        tag: "IND => PND",
    },
    Rule {
        antecedent: Property::Sind,
        consequent: Property::Spnd,
        needs_convenient: false,
        tag: "SIND => SPND",
    },
    Rule {
        antecedent: Property::Pnd,
        consequent: Property::WeaklyIsolated,
        needs_convenient: false,
        tag: "PND => weakly isolated singularity",
    },
    Rule {
        antecedent: Property::Spnd,
        consequent: Property::Isolated,
        needs_convenient: false,
        tag: "SPND => isolated singularity",
    },
    Rule {
        antecedent: Property::Isolated,
        consequent: Property::WeaklyIsolated,
        needs_convenient: false,
        tag: "isolated => weakly isolated",
    },
    Rule {
        antecedent: Property::Sind,
        consequent: Property::Smc,
        needs_convenient: false,
        tag: "SIND => strong Milnor condition",
    },
];

fn apply_implications(
    verdicts: &mut Vec<PropertyVerdict>,
    convenient: bool,
) -> Result<(), NondegError> {
    loop {
        let mut changed = false;
        for rule in RULES {
            if rule.needs_convenient && !convenient {
                continue;
            }
            let fire = verdicts
                .iter()
                .any(|v| v.property == rule.antecedent && v.status.holds());
            if !fire {
                continue;
            }
            match verdicts
                .iter_mut()
                .find(|v| v.property == rule.consequent)
            {
                Some(existing) => match &existing.status {
                    Status::Holds => {}
                    Status::Fails { .. } => {
                        if matches!(existing.provenance, Provenance::Checked) {
                            return Err(NondegError::InconsistentVerdicts(format!(
                                "{} holds but directly-checked {} fails (rule: {})",
                                rule.antecedent.name(),
                                rule.consequent.name(),
                                rule.tag
                            )));
                        }
                    }
                    Status::Unknown { .. } => {
                        existing.status = Status::Holds;
                        existing.provenance = Provenance::Implied {
                            rule: rule.tag.to_string(),
                        };
                        changed = true;
                    }
                },
                None => {
                    verdicts.push(PropertyVerdict {
                        property: rule.consequent,
                        status: Status::Holds,
                        provenance: Provenance::Implied {
                            rule: rule.tag.to_string(),
                        },
                        stats: SolveStats::default(),
                    });
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Full classification: direct checks (cheapest first), then implications.
pub fn classify(
    f: &MixedPolynomial,
    cfg: &SolverConfig,
) -> Result<ClassificationReport, NondegError> {
    classify_with(f, cfg, ClassifyOptions::default())
}

pub fn classify_with(
    f: &MixedPolynomial,
    cfg: &SolverConfig,
    opts: ClassifyOptions,
) -> Result<ClassificationReport, NondegError> {
    let analyzer = Analyzer::new(f, *cfg, opts)?;
    let mut verdicts: Vec<PropertyVerdict> = Vec::new();
    let push = |prop: Property, check: Check, verdicts: &mut Vec<PropertyVerdict>| {
        verdicts.push(PropertyVerdict {
            property: prop,
            status: check.status,
            provenance: Provenance::Checked,
            stats: check.stats,
        });
    };

    // cheapest first: faces, then partial, then inner
    if opts.checks.nd {
        push(Property::Nd, analyzer.check_newton(false)?, &mut verdicts);
    }
    if opts.checks.snd {
        push(Property::Snd, analyzer.check_newton(true)?, &mut verdicts);
    }
    if opts.checks.pnd {
        push(Property::Pnd, analyzer.check_partial(false)?, &mut verdicts);
    }
    if opts.checks.spnd {
        push(Property::Spnd, analyzer.check_partial(true)?, &mut verdicts);
    }
    if opts.checks.ind {
        push(Property::Ind, analyzer.check_inner(false)?, &mut verdicts);
    }
    if opts.checks.sind {
        push(Property::Sind, analyzer.check_inner(true)?, &mut verdicts);
    }

    // derived facts start undecided and are filled by the rules
    for prop in [Property::WeaklyIsolated, Property::Isolated, Property::Smc] {
        verdicts.push(PropertyVerdict {
            property: prop,
            status: Status::Unknown {
                reason: "not derivable from the computed facts".into(),
            },
            provenance: Provenance::Implied {
                rule: "no rule fired".into(),
            },
            stats: SolveStats::default(),
        });
    }

    apply_implications(&mut verdicts, analyzer.boundary().convenient())?;

    Ok(ClassificationReport {
        input: format_polynomial(f),
        boundary: analyzer.boundary.clone(),
        rwh: rwh_weight(f),
        properties: verdicts,
        config: *cfg,
    })
}

/// Classification for radially weighted homogeneous germs via the
/// equivalences: weak isolation <=> IND <=> PND, isolation <=> SIND <=>
/// SPND, and (under weak isolation) the strong Milnor condition <=>
/// isolation.
pub fn rwh_classify(
    f: &MixedPolynomial,
    cfg: &SolverConfig,
) -> Result<ClassificationReport, NondegError> {
    let weight = rwh_weight(f).ok_or(NondegError::NotRadiallyHomogeneous)?;
    let opts = ClassifyOptions::default();
    let analyzer = Analyzer::new(f, *cfg, opts)?;

    let strong = analyzer.check_inner(true)?;
    let weak = analyzer.check_inner(false)?;

    let rwh_tag = |dir: &str| Provenance::Implied {
        rule: format!("radially weighted homogeneous equivalence: {dir}"),
    };

    let mut verdicts = vec![
        PropertyVerdict {
            property: Property::Sind,
            status: strong.status.clone(),
            provenance: Provenance::Checked,
            stats: strong.stats,
        },
        PropertyVerdict {
            property: Property::Ind,
            status: weak.status.clone(),
            provenance: Provenance::Checked,
            stats: weak.stats,
        },
    ];
    for (prop, src, dir) in [
        (Property::Spnd, &strong.status, "SIND <=> SPND"),
        (Property::Isolated, &strong.status, "SIND <=> isolated"),
        (Property::Pnd, &weak.status, "IND <=> PND"),
        (
            Property::WeaklyIsolated,
            &weak.status,
            "IND <=> weakly isolated",
        ),
    ] {
        verdicts.push(PropertyVerdict {
            property: prop,
            status: src.clone(),
            provenance: rwh_tag(dir),
            stats: SolveStats::default(),
        });
    }
    let smc_status = match (&weak.status, &strong.status) {
        (Status::Holds, s) => s.clone(),
        (Status::Fails { .. }, _) => Status::Unknown {
            reason: "not weakly isolated: no equivalence applies".into(),
        },
        (Status::Unknown { reason }, _) => Status::Unknown {
            reason: format!("weak isolation undecided: {reason}"),
        },
    };
    verdicts.push(PropertyVerdict {
        property: Property::Smc,
        status: smc_status,
        provenance: rwh_tag("under weak isolation, SMC <=> isolated"),
        stats: SolveStats::default(),
    });

    Ok(ClassificationReport {
        input: format_polynomial(f),
        boundary: analyzer.boundary.clone(),
        rwh: Some(weight),
        properties: verdicts,
        config: *cfg,
    })
}
