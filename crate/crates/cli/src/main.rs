//! Batch CLI: decides containment problems from JSON documents, generates
//! and verifies family members, pushes measures forward, classifies
//! automorphisms, solves point cycles and runs the raw quotient oracle.
//!
//! Exit codes: 0 contained / success, 1 not contained / refuted,
//! 2 inconclusive, 3 input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use beurling::containment::decide_problem_with;
use beurling::error::Error as CoreError;
use beurling::families::{
    automorphism_rigidity_scan, generate, verify_family_roundtrip_with, FamilySpec,
    TwoZeroEqualBranch, TwoZeroUnequalBranch,
};
use beurling::inner::{BlaschkeProduct, InnerFunction, SelfMap};
use beurling::moebius::cycle_map;
use beurling::oracle::{
    cross_validate, modulus_identity_check, sup_quotient, GridSpec, OracleFlag,
};
use beurling::{unit, Tolerances};
use clap::{Parser, Subcommand};
use serde_json::json;

use beurling_cli::output::{classification_value, emit, oracle_value, to_value, verdict_value};
use beurling_cli::schema::{
    zeros_to_factors, ClassifyDoc, CycleDoc, FamilyDoc, MapDoc, MeasureDoc, MobiusDoc,
    ProblemDoc, PushforwardDoc,
};

#[derive(Parser)]
#[command(name = "beurling", version, about = "Composition operators between Beurling subspaces: exact containment decisions with numerical cross-validation")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Override the oracle grid radii (comma separated, in (0,1)).
    #[arg(long, global = true, value_delimiter = ',')]
    grid_radii: Option<Vec<f64>>,

    /// Override the number of angles per grid circle.
    #[arg(long, global = true)]
    grid_angles: Option<usize>,

    /// Cap on the jet order used by the engine (at most 64).
    #[arg(long, global = true)]
    jet_order_cap: Option<u32>,

    /// Tolerance profile: default, strict (10x tighter) or loose (10x wider).
    #[arg(long, global = true, default_value = "default")]
    tolerance_profile: String,

    /// Output format: `document` (JSON) or `report` (human readable).
    #[arg(long, global = true, default_value = "document")]
    output: String,

    /// Refine the oracle grid near the denominator's zeros and atoms.
    #[arg(long, global = true)]
    refine: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether C_phi maps theta1·H^p into theta2·H^p.
    Decide { file: PathBuf },
    /// Generate a family member and verify it, or run a rigidity scan.
    Family { file: PathBuf },
    /// Push an atomic measure forward under an automorphism.
    Pushforward { file: PathBuf },
    /// Classify a disk automorphism by its fixed points.
    Classify { file: PathBuf },
    /// Find the automorphism cycling the given points, if one exists.
    CycleMap { file: PathBuf },
    /// Run the raw quotient oracle on a problem.
    Oracle { file: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl std::fmt::Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

fn input_error(message: impl std::fmt::Display) -> Failure {
    fail(3, message)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Render clap's usage output, but keep exit code 3 for every
            // input problem (2 is reserved for inconclusive decisions).
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn read_doc<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn tolerances(cli: &Cli) -> Result<Tolerances, Failure> {
    let mut tol = match cli.tolerance_profile.as_str() {
        "default" => Tolerances::default(),
        "strict" => Tolerances::scaled(0.1),
        "loose" => Tolerances::scaled(10.0),
        other => {
            return Err(input_error(format!(
                "unknown tolerance profile {other:?}; expected default, strict or loose"
            )))
        }
    };
    if let Some(cap) = cli.jet_order_cap {
        if cap == 0 || cap > 64 {
            return Err(input_error("jet order cap must be between 1 and 64"));
        }
        tol.jet_order_cap = cap;
    }
    Ok(tol)
}

fn grid_for(cli: &Cli, doc_grid: Option<&beurling_cli::schema::GridDoc>) -> Result<GridSpec, Failure> {
    let mut grid = GridSpec::default();
    if let Some(g) = doc_grid {
        if let Some(radii) = &g.radii {
            grid.radii = radii.clone();
        }
        if let Some(n) = g.angular_count {
            grid.angular_count = n;
        }
        if let Some(x) = g.exclusion_radius {
            grid.exclusion_radius = x;
        }
    }
    if let Some(radii) = &cli.grid_radii {
        grid.radii = radii.clone();
    }
    if let Some(n) = cli.grid_angles {
        grid.angular_count = n;
    }
    grid.validate().map_err(input_error)?;
    Ok(grid)
}

/// Witness-style refinement targets covering every zero and atom of the
/// denominator, for `--refine`.
fn full_refinement(grid: &GridSpec, theta2: &InnerFunction) -> GridSpec {
    let angles = theta2
        .measure()
        .atoms()
        .iter()
        .map(|(angle, _)| *angle)
        .collect();
    let points = theta2
        .blaschke()
        .factors()
        .iter()
        .map(|(z, _)| *z)
        .collect();
    grid.with_witnesses(angles, points)
}

fn human(cli: &Cli) -> Result<bool, Failure> {
    match cli.output.as_str() {
        "document" => Ok(false),
        "report" => Ok(true),
        other => Err(input_error(format!(
            "unknown output format {other:?}; expected document or report"
        ))),
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Decide { file } => cmd_decide(cli, file),
        Command::Family { file } => cmd_family(cli, file),
        Command::Pushforward { file } => cmd_pushforward(cli, file),
        Command::Classify { file } => cmd_classify(cli, file),
        Command::CycleMap { file } => cmd_cycle_map(cli, file),
        Command::Oracle { file } => cmd_oracle(cli, file),
    }
}

fn cmd_decide(cli: &Cli, file: &Path) -> Result<u8, Failure> {
    let doc: ProblemDoc = read_doc(file)?;
    let problem = doc.to_problem().map_err(input_error)?;
    let tol = tolerances(cli)?;
    let base_grid = grid_for(cli, doc.grid.as_ref())?;
    let grid = if cli.refine {
        full_refinement(&base_grid, &problem.theta2)
    } else {
        base_grid.clone()
    };

    match decide_problem_with(&problem, &tol) {
        Ok(decision) => {
            let report = sup_quotient(&problem.theta1, &problem.phi, &problem.theta2, &grid)
                .map_err(|e| fail(2, e))?;
            let cross = cross_validate(
                &problem.theta1,
                &problem.phi,
                &problem.theta2,
                &decision.verdict,
                &report,
                &grid,
            )
            .map_err(|e| fail(2, e))?;
            let document = json!({
                "contained": decision.verdict.contained(),
                "witness": verdict_value(&decision.verdict),
                "theorem_route": decision.route,
                "oracle_cross_check": oracle_value(&report, Some(&cross)),
            });
            emit(&document, human(cli)?);
            Ok(if decision.verdict.contained() { 0 } else { 1 })
        }
        Err(CoreError::Uncharacterized(why)) => {
            let report = sup_quotient(&problem.theta1, &problem.phi, &problem.theta2, &grid)
                .map_err(|e| fail(2, e))?;
            let (contained, code) = match report.flag {
                OracleFlag::BoundedConsistent => (json!(true), 0),
                OracleFlag::BlowupDetected => (json!(false), 1),
                OracleFlag::Inconclusive => (json!(null), 2),
            };
            let document = json!({
                "contained": contained,
                "witness": null,
                "theorem_route": format!("oracle (uncharacterized: {why})"),
                "oracle_cross_check": oracle_value(&report, None),
            });
            emit(&document, human(cli)?);
            Ok(code)
        }
        Err(CoreError::Inconclusive(why)) => Err(fail(2, why)),
        Err(other) => Err(input_error(other)),
    }
}

fn parse_equal_branch(branch: &str) -> Result<TwoZeroEqualBranch, Failure> {
    match branch {
        "inner-at-a" => Ok(TwoZeroEqualBranch::InnerAtFirst),
        "inner-at-b" => Ok(TwoZeroEqualBranch::InnerAtSecond),
        "identity" => Ok(TwoZeroEqualBranch::Identity),
        "swap" => Ok(TwoZeroEqualBranch::Swap),
        other => Err(input_error(format!(
            "branch: unknown value {other:?}; expected inner-at-a, inner-at-b, identity or swap"
        ))),
    }
}

fn parse_unequal_branch(branch: &str) -> Result<TwoZeroUnequalBranch, Failure> {
    match branch {
        "inner-at-a" => Ok(TwoZeroUnequalBranch::InnerAtFirst),
        "inner-at-b" => Ok(TwoZeroUnequalBranch::InnerAtSecond),
        "identity" => Ok(TwoZeroUnequalBranch::Identity),
        other => Err(input_error(format!(
            "branch: unknown value {other:?}; expected inner-at-a, inner-at-b or identity"
        ))),
    }
}

fn slot(map: &Option<MapDoc>, path: &str) -> Result<Option<SelfMap>, Failure> {
    map.as_ref()
        .map(|m| m.to_selfmap(path))
        .transpose()
        .map_err(input_error)
}

fn cmd_family(cli: &Cli, file: &Path) -> Result<u8, Failure> {
    let doc: FamilyDoc = read_doc(file)?;
    let tol = tolerances(cli)?;

    if let FamilyDoc::Rigidity { zeros, trials, seed } = &doc {
        let b = BlaschkeProduct::new(beurling::Complex::ONE, zeros_to_factors(zeros))
            .map_err(|e| input_error(format!("zeros: {e}")))?;
        let report = automorphism_rigidity_scan(&b, *trials, *seed)
            .map_err(input_error)?;
        let document = json!({
            "all_refuted": report.all_refuted,
            "realizable": report.realizable,
            "random_trials": report.random_trials,
            "random_contained": report.random_contained,
            "candidates": report.candidates.iter().map(|c| json!({
                "cycle": c.cycle,
                "realizable": c.realizable,
                "contained": c.contained,
            })).collect::<Vec<_>>(),
        });
        emit(&document, human(cli)?);
        return Ok(if report.all_refuted { 0 } else { 1 });
    }

    let default_psi = || SelfMap::Inner(InnerFunction::from_blaschke(
        BlaschkeProduct::single(beurling::Complex::ZERO, 1).expect("z is a valid product"),
    ));
    let spec = match &doc {
        FamilyDoc::OneZero { a, mult, psi } => FamilySpec::OneZero {
            a: (*a).into(),
            mult: *mult,
            psi: slot(psi, "psi")?.unwrap_or_else(default_psi),
        },
        FamilyDoc::TwoZeroEqual {
            a,
            b,
            mult,
            g,
            branch,
        } => FamilySpec::TwoZeroEqual {
            a: (*a).into(),
            b: (*b).into(),
            mult: *mult,
            g: slot(g, "g")?,
            branch: parse_equal_branch(branch)?,
        },
        FamilyDoc::TwoZeroUnequal {
            a,
            b,
            m,
            n,
            g,
            branch,
        } => FamilySpec::TwoZeroUnequal {
            a: (*a).into(),
            b: (*b).into(),
            m: *m,
            n: *n,
            g: slot(g, "g")?,
            branch: parse_unequal_branch(branch)?,
        },
        FamilyDoc::FixAllToAj { zeros, target, h } => FamilySpec::FixAllToTarget {
            zeros: zeros_to_factors(zeros),
            target: *target,
            h: slot(h, "h")?,
        },
        FamilyDoc::MaxMultSelfmap { gamma_angle, zeros } => FamilySpec::MaxMultSelfMap {
            blaschke: BlaschkeProduct::new(unit(*gamma_angle), zeros_to_factors(zeros))
                .map_err(|e| input_error(format!("zeros: {e}")))?,
        },
        FamilyDoc::Rigidity { .. } => unreachable!("handled above"),
    };

    let map = generate(&spec).map_err(input_error)?;
    let b = spec.blaschke().map_err(input_error)?;
    let verdict = verify_family_roundtrip_with(&spec, &b, &tol).map_err(|e| match e {
        CoreError::Inconclusive(why) => fail(2, why),
        other => input_error(other),
    })?;
    let document = json!({
        "kind": spec.kind(),
        "map": to_value(&MapDoc::from_selfmap(&map)),
        "roundtrip": verdict_value(&verdict),
    });
    emit(&document, human(cli)?);
    Ok(if verdict.contained() { 0 } else { 1 })
}

fn cmd_pushforward(cli: &Cli, file: &Path) -> Result<u8, Failure> {
    let doc: PushforwardDoc = read_doc(file)?;
    let mu = doc.measure.to_measure("measure").map_err(input_error)?;
    let phi = doc.map.to_moebius("map").map_err(input_error)?;
    let nu = mu.pushforward(&phi);
    let deviation = modulus_identity_check(&mu, &phi, &nu, 100);
    let document = json!({
        "measure": to_value(&MeasureDoc::from_measure(&nu)),
        "total_mass": nu.total_mass(),
        "modulus_identity_check": {
            "samples": 100,
            "max_relative_deviation": deviation,
        },
    });
    emit(&document, human(cli)?);
    Ok(0)
}

fn cmd_classify(cli: &Cli, file: &Path) -> Result<u8, Failure> {
    let doc: ClassifyDoc = read_doc(file)?;
    let m = doc.to_moebius("map").map_err(input_error)?;
    let document = classification_value(&m.classify());
    emit(&document, human(cli)?);
    Ok(0)
}

fn cmd_cycle_map(cli: &Cli, file: &Path) -> Result<u8, Failure> {
    let doc: CycleDoc = read_doc(file)?;
    let points: Vec<beurling::Complex> = doc.points.iter().map(|p| (*p).into()).collect();
    let result = cycle_map(&points).map_err(input_error)?;
    let document = match result {
        Some(m) => json!({
            "found": true,
            "map": to_value(&MobiusDoc::from_moebius(&m)),
            "class": m.classify().tag(),
        }),
        None => json!({ "found": false }),
    };
    emit(&document, human(cli)?);
    Ok(0)
}

fn cmd_oracle(cli: &Cli, file: &Path) -> Result<u8, Failure> {
    let doc: ProblemDoc = read_doc(file)?;
    let problem = doc.to_problem().map_err(input_error)?;
    let base_grid = grid_for(cli, doc.grid.as_ref())?;
    let grid = if cli.refine {
        full_refinement(&base_grid, &problem.theta2)
    } else {
        base_grid
    };
    let report = sup_quotient(&problem.theta1, &problem.phi, &problem.theta2, &grid)
        .map_err(|e| fail(2, e))?;
    let code = match report.flag {
        OracleFlag::BoundedConsistent => 0,
        OracleFlag::BlowupDetected => 1,
        OracleFlag::Inconclusive => 2,
    };
    let document = oracle_value(&report, None);
    emit(&document, human(cli)?);
    Ok(code)
}
