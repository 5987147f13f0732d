//! Command-line front end: analysis, Newton geometry, g-polynomial tracking,
//! loop construction, Milnor-set probing, and raw system solving.

use clap::{Args, Parser, Subcommand};
use mixedsing::gaussian::GaussianRational;
use mixedsing::milnor::probe_spheres;
use mixedsing::newton::{build_boundary, WeightVector};
use mixedsing::nondeg::{classify_with, rwh_classify, Analyzer, CheckSet, ClassifyOptions, NondegError};
use mixedsing::parse::{parse_with, ParseOptions};
use mixedsing::poly::MixedPolynomial;
use mixedsing::report::{AnalysisReport, ReportBoundary, SemiholoReport, Timings};
use mixedsing::semiholo::{
    arg_derivative_zeros, check_m_conditions, check_s_conditions, construct_from_loop,
    g_polynomial, track_critical_values, LoopSpec, TrigPoly,
};
use mixedsing::singular::realify;
use mixedsing::solver::{
    decide_empty, find_witness, DomainKind, SolveDomain, SolverConfig,
};
use num_rational::BigRational;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "mixedsing", version, about = "Mixed polynomial germ analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Inline polynomial expression.
    #[arg(long, conflicts_with = "file")]
    expr: Option<String>,
    /// File containing one polynomial expression.
    #[arg(long)]
    file: Option<String>,
    /// Integer substituted for the template parameter `n`.
    #[arg(long)]
    n: Option<i64>,
}

#[derive(Args, Clone)]
struct SolverArgs {
    /// Random seed for the multistart falsifier.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Subdivision depth cap.
    #[arg(long, default_value_t = 40)]
    max_depth: u32,
    /// Residual tolerance for witness candidates.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            seed: self.seed,
            max_depth: self.max_depth,
            residual_tol: self.tol,
            ..SolverConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a germ: non-degeneracy properties and derived facts.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Comma-separated checks: nd,snd,ind,sind,pnd,spnd or `all`.
        #[arg(long, default_value = "all")]
        check: String,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long, default_value = "-")]
        json: String,
        /// Run every sub-check instead of stopping at the first failure.
        #[arg(long)]
        exhaustive: bool,
        /// Use the radially-weighted-homogeneous equivalence classifier.
        #[arg(long)]
        rwh: bool,
        /// Also evaluate the semiholomorphic (S-i)/(S-ii) conditions.
        #[arg(long)]
        semiholo: bool,
        /// Also evaluate the (M-i)-(M-iii) conditions.
        #[arg(long)]
        milnor_conditions: bool,
        /// Print the singular system before analysis.
        #[arg(long)]
        dump_system: bool,
    },
    /// Emit the Newton boundary as JSON.
    Newton {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "-")]
        json: String,
    },
    /// Emit the g-polynomial of a boundary face, optionally with critical
    /// value tracks as CSV.
    Gpoly {
        #[command(flatten)]
        input: InputArgs,
        /// 1-based face index.
        #[arg(long, default_value_t = 1)]
        face: usize,
        /// Track grid size.
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        /// Write `t, j, re(v_j), im(v_j), darg_dt` rows here.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Build the polynomial attached to a 2-periodic loop specification.
    Construct {
        /// JSON loop specification file.
        #[arg(long)]
        spec: String,
        /// Scaling exponent.
        #[arg(long)]
        k: u32,
    },
    /// Sample the Milnor-set residual on small spheres (CSV).
    MilnorProbe {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated radii.
        #[arg(long, default_value = "0.1,0.01,0.001,0.0001")]
        radii: String,
        #[arg(long, default_value_t = 64)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<String>,
    },
    /// Decide emptiness of a system over a domain.
    Solve {
        /// System member (repeatable).
        #[arg(long = "member", required = true)]
        members: Vec<String>,
        /// torus2, off-v, off-u, axis-u, or axis-v.
        #[arg(long, default_value = "torus2")]
        domain: String,
        /// Weight vector `p1,p2`.
        #[arg(long, default_value = "1,1")]
        weight: String,
        /// Only run the falsifier, skip emptiness verification.
        #[arg(long)]
        witness_only: bool,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        n: Option<i64>,
    },
}

fn read_input(input: &InputArgs, germ: bool) -> Result<MixedPolynomial, String> {
    let text = match (&input.expr, &input.file) {
        (Some(e), None) => e.clone(),
        (None, Some(f)) => std::fs::read_to_string(f).map_err(|e| format!("{f}: {e}"))?,
        _ => return Err("exactly one of --expr / --file is required".into()),
    };
    parse_with(&text, ParseOptions { n: input.n, germ }).map_err(|e| e.to_string())
}

fn write_output(path: &str, contents: &str) -> Result<(), String> {
    if path == "-" {
        println!("{contents}");
        Ok(())
    } else {
        std::fs::write(path, contents).map_err(|e| format!("{path}: {e}"))
    }
}

fn parse_checks(s: &str) -> Result<CheckSet, String> {
    if s == "all" {
        return Ok(CheckSet::all());
    }
    let mut set = CheckSet::default();
    for item in s.split(',') {
        match item.trim().to_ascii_lowercase().as_str() {
            "nd" => set.nd = true,
            "snd" => set.snd = true,
            "ind" => set.ind = true,
            "sind" => set.sind = true,
            "pnd" => set.pnd = true,
            "spnd" => set.spnd = true,
            "" => {}
            other => return Err(format!("unknown check '{other}'")),
        }
    }
    Ok(set)
}

fn init_thread_pool() {
    if let Ok(value) = std::env::var("MIXEDSING_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal inconsistency: {msg}");
            ExitCode::from(3)
        }
    }
}

enum CliError {
    Input(String),
    Internal(String),
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Input(s)
    }
}

fn nondeg_error(e: NondegError) -> CliError {
    match e {
        NondegError::InconsistentVerdicts(msg) => CliError::Internal(msg),
        other => CliError::Input(other.to_string()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze {
            input,
            solver,
            check,
            json,
            exhaustive,
            rwh,
            semiholo,
            milnor_conditions,
            dump_system,
        } => {
            let f = read_input(&input, true)?;
            let cfg = solver.config();
            let started = Instant::now();
            if dump_system {
                let sys = mixedsing::singular_system(&f).map_err(|e| e.to_string())?;
                eprintln!("s1 = {}", sys.s1);
                eprintln!("s2 = {}", sys.s2);
                eprintln!("s3 = {}", sys.s3);
                let real = realify(&[&sys.s1, &sys.s2, &sys.s3]);
                eprintln!("realified equations: {}", real.equations().len());
            }
            let opts = ClassifyOptions {
                checks: parse_checks(&check)?,
                exhaustive,
            };
            let rep = if rwh {
                rwh_classify(&f, &cfg).map_err(nondeg_error)?
            } else {
                classify_with(&f, &cfg, opts).map_err(nondeg_error)?
            };
            let mut out = AnalysisReport::from_classification(&rep);
            if semiholo {
                let analyzer = Analyzer::new(&f, cfg, opts).map_err(nondeg_error)?;
                let rec = check_s_conditions(&f, &analyzer, 2048)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                out.semiholomorphic = Some(SemiholoReport::from_s(&rec));
            }
            if milnor_conditions {
                let analyzer = Analyzer::new(&f, cfg, opts).map_err(nondeg_error)?;
                let rec = check_m_conditions(&f, &analyzer, 256)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                out.milnor_conditions = Some(SemiholoReport::from_m(&rec));
            }
            out.timings = Timings {
                total_ms: started.elapsed().as_millis(),
            };
            write_output(&json, &out.to_json())?;
            Ok(())
        }
        Command::Newton { input, json } => {
            let f = read_input(&input, false)?;
            let b = build_boundary(&f).map_err(|e| e.to_string())?;
            let rep = ReportBoundary::from_boundary(&b);
            let text = serde_json::to_string_pretty(&rep).expect("serializable");
            write_output(&json, &text)?;
            Ok(())
        }
        Command::Gpoly {
            input,
            face,
            grid,
            csv,
        } => {
            let f = read_input(&input, false)?;
            let g = g_polynomial(&f, face).map_err(|e| e.to_string())?;
            println!(
                "face {}: weight ({}, {}), k = {}, radial degree {}",
                face, g.weight.p1, g.weight.p2, g.k, g.radial_degree
            );
            for ((a, b), tp) in &g.coeffs {
                let mono = match (a, b) {
                    (0, 0) => String::new(),
                    (a, 0) => format!(" * u^{a}"),
                    (0, b) => format!(" * conj(u)^{b}"),
                    (a, b) => format!(" * u^{a}*conj(u)^{b}"),
                };
                let harm: Vec<String> = tp
                    .terms
                    .iter()
                    .map(|(m, c)| format!("{c} e^({m} i t)"))
                    .collect();
                println!("  [{}]{}", harm.join(" + "), mono);
            }
            if let Some(path) = csv {
                if !g.is_univariate() {
                    return Err(CliError::Input(
                        "critical value tracking needs a u-holomorphic face".into(),
                    ));
                }
                let tracks = track_critical_values(&g, grid)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                let analysis = arg_derivative_zeros(&tracks, &g)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                let mut w = String::from("t,j,re_v,im_v,darg_dt\n");
                for tr in &tracks {
                    for s in &tr.samples {
                        w.push_str(&format!(
                            "{},{},{},{},{}\n",
                            s.t, tr.index, s.v.re, s.v.im, s.darg_dt
                        ));
                    }
                }
                std::fs::write(&path, w).map_err(|e| format!("{path}: {e}"))?;
                for p in &analysis.points {
                    println!(
                        "argument-critical point: track {} t = {:.9} ({:?})",
                        p.track, p.t, p.kind
                    );
                }
                for j in &analysis.identically_zero_tracks {
                    println!("track {j}: argument derivative vanishes identically");
                }
            }
            Ok(())
        }
        Command::Construct { spec, k } => {
            let text = std::fs::read_to_string(&spec).map_err(|e| format!("{spec}: {e}"))?;
            let spec = parse_loop_spec(&text)?;
            let f = construct_from_loop(&spec, k).map_err(|e| CliError::Input(e.to_string()))?;
            println!("{f}");
            Ok(())
        }
        Command::MilnorProbe {
            input,
            radii,
            samples,
            seed,
            csv,
        } => {
            let f = read_input(&input, true)?;
            let radii: Vec<f64> = radii
                .split(',')
                .map(|s| s.trim().parse::<f64>().map_err(|e| e.to_string()))
                .collect::<Result<_, String>>()?;
            let rows = probe_spheres(&f, &radii, samples, seed);
            let mut out = String::from("radius,sample,residual\n");
            for r in &rows {
                out.push_str(&format!("{},{},{}\n", r.radius, r.index, r.residual));
            }
            match csv {
                Some(path) => std::fs::write(&path, out).map_err(|e| format!("{path}: {e}"))?,
                None => print!("{out}"),
            }
            Ok(())
        }
        Command::Solve {
            members,
            domain,
            weight,
            witness_only,
            solver,
            n,
        } => {
            let polys: Vec<MixedPolynomial> = members
                .iter()
                .map(|m| parse_with(m, ParseOptions { n, germ: false }).map_err(|e| e.to_string()))
                .collect::<Result<_, String>>()?;
            let refs: Vec<&MixedPolynomial> = polys.iter().collect();
            let kind = match domain.as_str() {
                "torus2" => DomainKind::Torus2,
                "off-v" => DomainKind::OffVAxis,
                "off-u" => DomainKind::OffUAxis,
                "axis-u" => DomainKind::AxisU,
                "axis-v" => DomainKind::AxisV,
                other => return Err(CliError::Input(format!("unknown domain '{other}'"))),
            };
            let (p1, p2) = weight
                .split_once(',')
                .ok_or_else(|| "weight must be 'p1,p2'".to_string())?;
            let w = WeightVector::new(
                p1.trim().parse().map_err(|e| format!("{e}"))?,
                p2.trim().parse().map_err(|e| format!("{e}"))?,
            );
            let dom = SolveDomain::new(kind, w);
            let cfg = solver.config();
            let verdict = if witness_only {
                find_witness(&refs, &dom, &cfg)
            } else {
                decide_empty(&refs, &dom, &cfg)
            };
            match verdict {
                Ok(v) => {
                    let text = serde_json::to_string_pretty(&v).expect("serializable");
                    println!("{text}");
                    Ok(())
                }
                Err(e) => Err(CliError::Input(e.to_string())),
            }
        }
    }
}

/// Loop specification JSON:
/// `{"degree": 2, "coeffs": {"0": [{"freq": 2, "re": "1/2", "im": "-1/3"}]}}`.
fn parse_loop_spec(text: &str) -> Result<LoopSpec, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("loop spec: {e}")))?;
    let degree = value
        .get("degree")
        .and_then(|d| d.as_u64())
        .ok_or_else(|| CliError::Input("loop spec: missing integer 'degree'".into()))?
        as u32;
    let mut coeffs = std::collections::BTreeMap::new();
    if let Some(map) = value.get("coeffs").and_then(|c| c.as_object()) {
        for (key, entries) in map {
            let j: u32 = key
                .parse()
                .map_err(|_| CliError::Input(format!("loop spec: bad exponent '{key}'")))?;
            let mut tp = TrigPoly::zero();
            for entry in entries
                .as_array()
                .ok_or_else(|| CliError::Input("loop spec: coeffs entries must be arrays".into()))?
            {
                let freq = entry
                    .get("freq")
                    .and_then(|f| f.as_i64())
                    .ok_or_else(|| CliError::Input("loop spec: missing 'freq'".into()))?;
                let re = rational_field(entry, "re")?;
                let im = rational_field(entry, "im")?;
                tp.add(freq, GaussianRational::new(re, im));
            }
            if !tp.is_zero() {
                coeffs.insert(j, tp);
            }
        }
    }
    Ok(LoopSpec { degree, coeffs })
}

fn rational_field(entry: &serde_json::Value, key: &str) -> Result<BigRational, CliError> {
    match entry.get(key) {
        None => Ok(BigRational::from_integer(0.into())),
        Some(serde_json::Value::String(s)) => BigRational::from_str(s)
            .map_err(|e| CliError::Input(format!("loop spec: bad rational '{s}': {e}"))),
        Some(serde_json::Value::Number(n)) => {
            let as_int = n.as_i64().ok_or_else(|| {
                CliError::Input(format!("loop spec: '{key}' must be integer or string rational"))
            })?;
            Ok(BigRational::from_integer(as_int.into()))
        }
        Some(_) => Err(CliError::Input(format!(
            "loop spec: '{key}' must be a string rational or integer"
        ))),
    }
}
