//! Command-line front end: construct maps, certify positivity, inspect
//! circulant spectra, sample the phase torus, and export region scans.
//!
//! Exit codes: 0 success, 1 usage or I/O failure, 2 constraint violation in
//! the inputs, 3 closed-form/numerical disagreement (a bug signal, never
//! swallowed).

mod scan;

use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde_json::json;

use posmap::*;

#[derive(Parser)]
#[command(
    name = "posmap",
    version,
    about = "Diagonal-type positive maps: construction and certification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build maps and emit them as map JSON on stdout
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Certify positivity of a map JSON file
    Check {
        /// Path to a map JSON file ({"n": ..., "a": [[...]]})
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Random oracle samples (on top of the deterministic vector grid)
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the verdict as JSON instead of the human summary
        #[arg(long)]
        json: bool,
    },
    /// Eigenvalues and phase coordinates of a circulant map
    Spectrum {
        /// Path to a map JSON file with circulant coefficients
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Sample the circulant phase torus and write a CSV
    TorusSample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid scan of the n = 3 circulant parameter cube to CSV
    Scan {
        #[arg(long, default_value_t = 3.0)]
        a_max: f64,
        /// Grid points per axis
        #[arg(long, default_value_t = 40)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Method::All)]
        mode: Method,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Margin band within which closed/numerical disagreement is ignored
        #[arg(long, default_value_t = 1e-4)]
        band: f64,
        /// Random oracle samples per grid point (oracle mode)
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// From an orthogonal matrix: Haar-random (--seed) or block-rotation
    /// angles (--rotation)
    Kossakowski {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "rotation")]
        seed: Option<u64>,
        /// Comma-separated rotation angles, floor((n-1)/2) of them
        /// (none at n = 2: bare --rotation selects the identity)
        #[arg(long, value_delimiter = ',', num_args = 0.., allow_hyphen_values = true)]
        rotation: Option<Vec<f64>>,
    },
    /// From the canonical equiangular frame
    Frame {
        #[arg(long)]
        n: usize,
    },
    /// From an orthogonal-matrix JSON file ({"dim": ..., "m": [[...]]})
    FromB { file: PathBuf },
    /// Circulant map from torus phases
    Circulant {
        #[arg(long)]
        n: usize,
        /// Comma-separated phases, floor((n-1)/2) of them (none at n = 2)
        #[arg(long, value_delimiter = ',', num_args = 0.., allow_hyphen_values = true)]
        phases: Option<Vec<f64>>,
        /// Sign of the self-conjugate eigenvalue (+1 or -1), even n only
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<i8>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Numerical,
    Oracle,
    All,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            std::process::exit(if is_help { 0 } else { 1 });
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(classify(&err));
        }
    }
}

fn classify(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::CriteriaDisagreement { .. }) => 3,
        Some(_) => 2,
        None => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.cmd {
        Cmd::Construct { what } => {
            let map = construct(what)?;
            println!("{}", serde_json::to_string(&map)?);
            Ok(0)
        }
        Cmd::Check {
            file,
            method,
            samples,
            seed,
            json,
        } => check(&file, method, samples, seed, json),
        Cmd::Spectrum { file, json } => spectrum_cmd(&file, json),
        Cmd::TorusSample {
            n,
            count,
            seed,
            out,
        } => {
            let csv = torus_sample_csv(n, count, seed)?;
            write_output(out.as_deref(), &csv)?;
            Ok(0)
        }
        Cmd::Scan {
            a_max,
            steps,
            mode,
            out,
            seed,
            band,
            samples,
        } => {
            let result = scan::run(&scan::ScanConfig {
                a_max,
                steps,
                mode,
                seed,
                band,
                samples,
            })?;
            write_output(out.as_deref(), &result.csv)?;
            eprintln!(
                "scan: {} points, {} disagreements beyond the {band:.1e} band",
                result.points, result.disagreements
            );
            Ok(if result.disagreements > 0 { 3 } else { 0 })
        }
    }
}

fn construct(what: ConstructCmd) -> anyhow::Result<DiagonalTypeMap> {
    match what {
        ConstructCmd::Kossakowski { n, seed, rotation } => {
            if n < 2 {
                return Err(Error::InvalidDimension { n, min: 2 }.into());
            }
            let r = match rotation {
                Some(angles) => OrthogonalMatrix::rotation_from_angles(n - 1, &angles)?,
                None => {
                    let mut rng = ChaCha12Rng::seed_from_u64(seed.unwrap_or(0));
                    haar_orthogonal(n - 1, &mut rng)
                }
            };
            Ok(kossakowski_from_orthogonal(&r))
        }
        ConstructCmd::Frame { n } => {
            let frame = equiangular_frame(n)?;
            Ok(map_from_basis(&basis_from_frame(&frame))?)
        }
        ConstructCmd::FromB { file } => {
            let text =
                fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let b: OrthogonalMatrix = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", file.display()))?;
            Ok(a_from_b(&b)?)
        }
        ConstructCmd::Circulant { n, phases, sign } => {
            let pt = PhasePoint::new(n, phases.unwrap_or_default(), sign)?;
            Ok(alphas_from_phases(&pt).to_map())
        }
    }
}

fn read_map(file: &std::path::Path) -> anyhow::Result<DiagonalTypeMap> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", file.display()))
}

fn write_output(path: Option<&std::path::Path>, content: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn describe_map(map: &DiagonalTypeMap) -> String {
    match CirculantParams::from_map(map) {
        Some(c) => format!(
            "n = {}, circulant ({})",
            map.n(),
            c.alphas()
                .iter()
                .map(|x| format!("{x}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        None => format!("n = {}, dense coefficients", map.n()),
    }
}

fn check(
    file: &std::path::Path,
    method: Method,
    samples: usize,
    seed: u64,
    json: bool,
) -> anyhow::Result<i32> {
    let map = read_map(file)?;
    let cfg = OptimizerConfig {
        seed,
        ..OptimizerConfig::default()
    };

    match method {
        Method::Closed => {
            let verdict = check_positive_closed(&map);
            match verdict {
                Some(v) => emit_verdict(&map, &v, Some(check_cp(&map)), json),
                None => {
                    if json {
                        println!(
                            "{}",
                            json!({
                                "status": "Inconclusive",
                                "margin": null,
                                "witness": null,
                                "method": "closed-form-not-applicable",
                            })
                        );
                    } else {
                        println!("map: {}", describe_map(&map));
                        println!("closed form: not applicable (needs n = 2, or n = 3 circulant)");
                    }
                    Ok(0)
                }
            }
        }
        Method::Numerical => {
            let v = check_positive_numerical(&map, &cfg);
            emit_verdict(&map, &v, Some(check_cp(&map)), json)
        }
        Method::Oracle => {
            let report = oracle_positivity(&map, samples, seed);
            let violation = report.violation_found(tol::VIOLATION_EPS);
            if json {
                println!(
                    "{}",
                    json!({
                        "min_value": report.min_value,
                        "evaluations": report.evaluations,
                        "violation": violation,
                        "witness_x": complex_pairs(&report.min_x),
                        "witness_y": complex_pairs(&report.min_y),
                    })
                );
            } else {
                println!("map: {}", describe_map(&map));
                println!(
                    "oracle: min value {:.6e} over {} evaluations ({})",
                    report.min_value,
                    report.evaluations,
                    if violation {
                        "violation found"
                    } else {
                        "no violation"
                    }
                );
            }
            Ok(0)
        }
        Method::All => {
            let verdict = certify(&map, &cfg)?;
            let report = oracle_positivity(&map, samples, seed);
            if verdict.status.is_positive() && report.violation_found(tol::VIOLATION_EPS) {
                return Err(Error::CriteriaDisagreement {
                    closed: verdict.status.as_str(),
                    numerical: "NotPositive",
                    closed_margin: verdict.margin,
                    numerical_margin: report.min_value,
                }
                .into());
            }
            if !json {
                println!(
                    "oracle: min value {:.6e} over {} evaluations",
                    report.min_value, report.evaluations
                );
            }
            emit_verdict(&map, &verdict, Some(check_cp(&map)), json)
        }
    }
}

fn complex_pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn emit_verdict(
    map: &DiagonalTypeMap,
    verdict: &PositivityVerdict,
    cp: Option<bool>,
    json: bool,
) -> anyhow::Result<i32> {
    let indecomposable = indecomposability_flag(map, verdict);
    if json {
        let mut value = serde_json::to_value(verdict)?;
        let obj = value.as_object_mut().expect("verdict serializes to object");
        if let Some(cp) = cp {
            obj.insert("cp".into(), json!(cp));
        }
        if let Some(flag) = indecomposable {
            obj.insert("indecomposable".into(), json!(flag));
        }
        println!("{value}");
    } else {
        println!("map: {}", describe_map(map));
        println!(
            "verdict: {} via {} (margin {:.6e})",
            verdict.status.as_str(),
            verdict.method,
            verdict.margin
        );
        if let Some(w) = &verdict.witness {
            println!(
                "witness: [{}]",
                w.coords()
                    .iter()
                    .map(|x| format!("{x:.12}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
        }
        if let Some(cp) = cp {
            println!("completely positive: {cp}");
        }
        if let Some(flag) = indecomposable {
            println!("indecomposable: {flag}");
        }
    }
    Ok(0)
}

/// Indecomposability is settled only for positive n = 3 circulant maps.
fn indecomposability_flag(map: &DiagonalTypeMap, verdict: &PositivityVerdict) -> Option<bool> {
    if map.n() != 3 || !verdict.status.is_positive() {
        return None;
    }
    let c = CirculantParams::from_map(map)?;
    let al = c.alphas();
    check_indecomposable_n3(al[0], al[1], al[2]).ok()
}

fn torus_sample_csv(n: usize, count: usize, seed: u64) -> anyhow::Result<String> {
    let points = sample_phase_points(n, count, seed)?;
    let m = (n - 1) / 2;
    let cfg = OptimizerConfig {
        seed,
        ..OptimizerConfig::default()
    };

    let mut csv = String::new();
    for k in 1..=m {
        csv.push_str(&format!("phi_{k},"));
    }
    csv.push_str("sign,");
    for k in 0..n {
        csv.push_str(&format!("alpha_{k},"));
    }
    csv.push_str("verdict,margin\n");

    for pt in &points {
        let params = alphas_from_phases(pt);
        let verdict = check_positive_numerical(&params.to_map(), &cfg);
        for phi in pt.phases() {
            csv.push_str(&format!("{phi},"));
        }
        csv.push_str(&format!("{},", pt.even_sign().unwrap_or(1)));
        for alpha in params.alphas() {
            csv.push_str(&format!("{alpha},"));
        }
        csv.push_str(&format!("{},{}\n", verdict.status.as_str(), verdict.margin));
    }
    Ok(csv)
}

fn spectrum_cmd(file: &std::path::Path, json: bool) -> anyhow::Result<i32> {
    let map = read_map(file)?;
    let params = CirculantParams::from_map(&map).ok_or(Error::NotCirculant)?;
    let lambda = dft_eigenvalues(&params);

    let torus = match phases_from_alphas(&params) {
        Ok(pt) => Some(pt),
        Err(Error::NotOnTorus { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let det = torus
        .as_ref()
        .map(|_| determinant_modulus(&params))
        .transpose()?;

    if json {
        println!(
            "{}",
            json!({
                "n": params.n(),
                "alphas": params.alphas(),
                "eigenvalues": complex_pairs(&lambda),
                "on_torus": torus.is_some(),
                "phases": torus.as_ref().map(|pt| pt.phases().to_vec()),
                "sign": torus.as_ref().and_then(|pt| pt.even_sign()),
                "det_modulus": det,
            })
        );
    } else {
        println!("map: {}", describe_map(&map));
        println!(
            "eigenvalues: {}",
            lambda
                .iter()
                .map(|z| format!("({:.6}, {:.6})", z.re, z.im))
                .collect::<Vec<_>>()
                .join(" ")
        );
        match &torus {
            Some(pt) => {
                println!(
                    "on torus: yes, phases ({})",
                    pt.phases()
                        .iter()
                        .map(|x| format!("{x:.12}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                if let Some(s) = pt.even_sign() {
                    println!("sign: {s:+}");
                }
                println!("determinant modulus: {:.12}", det.unwrap_or(f64::NAN));
            }
            None => println!("on torus: no"),
        }
    }
    Ok(0)
}
