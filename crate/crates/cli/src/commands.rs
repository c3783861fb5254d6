use std::path::{Path, PathBuf};

use fuzzy_antinorm::alphacut::{self, AlphaNormFamily};
use fuzzy_antinorm::report::Status;
use fuzzy_antinorm::sequences::{self, Verdict};
use fuzzy_antinorm::tconorm::verify_tconorm_axioms;
use fuzzy_antinorm::{riesz, verify_antinorm_axioms, AxiomReport, ExtendedNonneg};
use serde_json::json;
use thiserror::Error;

use crate::report::{Outcome, RunReport};
use crate::spec_file::{self, SpaceSpec, SpecError};

/// Anything that makes a run exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Spec(#[from] SpecError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] fuzzy_antinorm::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

pub struct Output {
    pub report: RunReport,
    /// Extra text printed ahead of the summary.
    pub preamble: String,
}

fn load(path: &Path) -> Result<SpaceSpec, CliError> {
    Ok(spec_file::load(path)?)
}

fn check_alphas(alphas: &[f64]) -> Result<(), CliError> {
    if alphas.is_empty() {
        return Err(CliError::Usage("--alpha needs at least one value".into()));
    }
    match alphas.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
        Some(a) => Err(CliError::Usage(format!("--alpha {a} is not in (0, 1)"))),
        None => Ok(()),
    }
}

fn positive(name: &str, v: usize) -> Result<(), CliError> {
    if v == 0 {
        Err(CliError::Usage(format!("--{name} must be positive")))
    } else {
        Ok(())
    }
}

fn csv_file(
    dir: &Path,
    name: &str,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let path = dir.join(name);
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.flush().map_err(|source| CliError::Io { path, source })?;
    Ok(())
}

fn outcome(status: Status) -> Outcome {
    match status {
        Status::Pass => Outcome::Pass,
        Status::Fail => Outcome::Fail,
        Status::Flagged => Outcome::Flagged,
    }
}

fn push_axioms(report: &mut RunReport, prefix: &str, axioms: &AxiomReport) {
    for e in &axioms.entries {
        report.push(
            format!("{prefix}.{}", e.axiom),
            outcome(e.status),
            Some(e.worst_violation),
            e,
        );
    }
}

fn axiom_rows(suite: &str, axioms: &AxiomReport) -> Vec<Vec<String>> {
    axioms
        .entries
        .iter()
        .map(|e| {
            vec![
                suite.to_string(),
                e.axiom.to_string(),
                format!("{:?}", e.status).to_lowercase(),
                e.samples.to_string(),
                e.worst_violation.to_string(),
            ]
        })
        .collect()
}

pub fn check_axioms(spec: &Path, samples: usize, seed: u64, csv: Option<&Path>) -> Result<Output, CliError> {
    positive("samples", samples)?;
    let s = load(spec)?;
    let nu = &s.antinorm;
    let conorm = verify_tconorm_axioms(&nu.conorm, samples, seed)?;
    let anti = verify_antinorm_axioms(nu, samples, seed)?;
    let mut report = RunReport::new(
        "check-axioms",
        &s.digest_input,
        json!({ "spec": spec, "antinorm": nu.describe(), "samples": samples, "seed": seed }),
    );
    push_axioms(&mut report, "conorm", &conorm);
    push_axioms(&mut report, "antinorm", &anti);
    if let Some(dir) = csv {
        let rows = axiom_rows("conorm", &conorm)
            .into_iter()
            .chain(axiom_rows("antinorm", &anti));
        csv_file(
            dir,
            "axioms.csv",
            &["suite", "axiom", "status", "samples", "worst_violation"],
            rows,
        )?;
    }
    Ok(Output {
        report,
        preamble: String::new(),
    })
}

fn extended(v: ExtendedNonneg) -> String {
    v.to_string()
}

pub fn alpha_table(spec: &Path, x: &[f64], alphas: &[f64], csv: Option<&Path>) -> Result<Output, CliError> {
    check_alphas(alphas)?;
    let s = load(spec)?;
    let nu = &s.antinorm;
    if x.len() != nu.dimension() {
        return Err(CliError::Usage(format!(
            "--x has {} entries, the space has dimension {}",
            x.len(),
            nu.dimension()
        )));
    }
    let mut sorted = alphas.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    let family = AlphaNormFamily::new(nu.clone());
    let mut rows = Vec::with_capacity(sorted.len());
    for &a in &sorted {
        rows.push((a, family.norm(x, a)?));
    }
    let ascending = rows.windows(2).all(|w| w[0].1 <= w[1].1);
    let mut report = RunReport::new(
        "alpha-table",
        &s.digest_input,
        json!({ "spec": spec, "antinorm": nu.describe(), "x": x, "alpha": sorted }),
    );
    let table: Vec<_> = rows
        .iter()
        .map(|(a, v)| json!({ "alpha": a, "alpha_norm": extended(*v) }))
        .collect();
    report.push(
        "ascending-family",
        Outcome::from_bool(ascending),
        None,
        json!({ "rows": table }),
    );
    let lines: Vec<Vec<String>> = rows.iter().map(|(a, v)| vec![a.to_string(), extended(*v)]).collect();
    let mut preamble = String::from("alpha,alpha_norm\n");
    for l in &lines {
        preamble.push_str(&l.join(","));
        preamble.push('\n');
    }
    if let Some(dir) = csv {
        csv_file(dir, "alpha_table.csv", &["alpha", "alpha_norm"], lines)?;
    }
    Ok(Output { report, preamble })
}

pub struct RoundTripArgs {
    pub x_samples: usize,
    pub t_samples: usize,
    pub family_samples: usize,
    pub seed: u64,
}

pub fn roundtrip(spec: &Path, args: &RoundTripArgs, csv: Option<&Path>) -> Result<Output, CliError> {
    positive("x-samples", args.x_samples)?;
    positive("t-samples", args.t_samples)?;
    positive("samples", args.family_samples)?;
    let s = load(spec)?;
    let nu = &s.antinorm;
    let grid = alphacut::round_trip_error(nu, args.x_samples, args.t_samples, args.seed)?;
    let family = AlphaNormFamily::new(nu.clone());
    let fam = alphacut::family_round_trip(&family, args.family_samples, args.seed)?;
    let mut report = RunReport::new(
        "roundtrip",
        &s.digest_input,
        json!({
            "spec": spec,
            "antinorm": nu.describe(),
            "x_samples": args.x_samples,
            "t_samples": args.t_samples,
            "family_samples": args.family_samples,
            "seed": args.seed,
            "tolerance": alphacut::ROUND_TRIP_TOL,
        }),
    );
    let worst = grid.points.iter().max_by(|a, b| a.error.total_cmp(&b.error));
    let grid_outcome = match (grid.passed(), grid.continuity_caveat) {
        (true, _) => Outcome::Pass,
        (false, true) => Outcome::Flagged,
        (false, false) => Outcome::Fail,
    };
    report.push(
        "reconstruction",
        grid_outcome,
        Some(grid.sup_error),
        json!({
            "grid_points": grid.points.len(),
            "sup_error": grid.sup_error,
            "continuity_caveat": grid.continuity_caveat,
            "worst": worst.map(|p| json!({ "x": grid.xs[p.x_index], "t": p.t, "nu": p.nu, "nu_prime": p.nu_prime })),
        }),
    );
    let worst = fam.rows.iter().max_by(|a, b| a.error.total_cmp(&b.error));
    report.push(
        "family-round-trip",
        Outcome::from_bool(fam.passed),
        Some(fam.sup_error),
        json!({
            "samples": fam.rows.len(),
            "sup_error": fam.sup_error,
            "worst": worst.map(|r| json!({ "x": fam.xs[r.x_index], "alpha": r.alpha, "direct": r.direct, "recovered": r.recovered })),
        }),
    );
    if let Some(dir) = csv {
        let rows = grid.points.iter().map(|p| {
            vec![
                p.x_index.to_string(),
                p.t.to_string(),
                p.nu.to_string(),
                p.nu_prime.to_string(),
                p.error.to_string(),
            ]
        });
        csv_file(dir, "roundtrip.csv", &["x_id", "t", "nu", "nu_prime", "error"], rows)?;
        let rows = fam.rows.iter().map(|r| {
            vec![
                r.x_index.to_string(),
                r.alpha.to_string(),
                r.direct.to_string(),
                r.recovered.to_string(),
                r.error.to_string(),
            ]
        });
        csv_file(
            dir,
            "family.csv",
            &["x_id", "alpha", "direct", "recovered", "error"],
            rows,
        )?;
    }
    Ok(Output {
        report,
        preamble: String::new(),
    })
}

pub struct ConvergeArgs<'a> {
    pub sequence: &'a str,
    pub alphas: &'a [f64],
    pub t_grid: &'a [f64],
    pub tail: usize,
    pub lag: usize,
    pub trace_terms: usize,
}

pub fn converge(spec: &Path, args: &ConvergeArgs, csv: Option<&Path>) -> Result<Output, CliError> {
    check_alphas(args.alphas)?;
    positive("tail", args.tail)?;
    positive("lag", args.lag)?;
    if let Some(t) = args.t_grid.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(CliError::Usage(format!("--t-grid value {t} is not a positive real")));
    }
    let s = load(spec)?;
    let nu = &s.antinorm;
    let seq = s.sequences.get(args.sequence).ok_or_else(|| {
        let known: Vec<&str> = s.sequences.keys().map(String::as_str).collect();
        CliError::Usage(format!(
            "unknown sequence `{}` (spec defines: {})",
            args.sequence,
            known.join(", ")
        ))
    })?;
    let family = AlphaNormFamily::new(nu.clone());
    let eq = sequences::equivalence_check(nu, &family, seq, args.alphas, args.t_grid, args.tail)?;
    let mut report = RunReport::new(
        "converge",
        &s.digest_input,
        json!({
            "spec": spec,
            "antinorm": nu.describe(),
            "sequence": args.sequence,
            "alpha": args.alphas,
            "t_grid": args.t_grid,
            "tail": args.tail,
            "lag": args.lag,
        }),
    );
    for row in &eq.rows {
        let inconclusive = row.fuzzy.verdict == Verdict::Inconclusive || row.crisp.verdict == Verdict::Inconclusive;
        let o = match (row.agree, inconclusive) {
            (true, false) => Outcome::Pass,
            (_, true) => Outcome::Flagged,
            (false, false) => Outcome::Fail,
        };
        report.push(format!("equivalence@{}", row.alpha), o, None, row);
    }
    for &a in args.alphas {
        let imp = sequences::implication_suite(nu, seq, a, args.t_grid, args.tail, args.lag, None)?;
        report.push(format!("implications@{a}"), Outcome::from_bool(imp.passed), None, &imp);
    }
    if let Some(dir) = csv {
        let trace = sequences::membership_trace(nu, seq, args.t_grid, args.trace_terms)?;
        let rows = trace
            .iter()
            .map(|r| vec![r.n.to_string(), r.t.to_string(), r.nu.to_string()]);
        csv_file(dir, "trace.csv", &["n", "t", "nu"], rows)?;
    }
    Ok(Output {
        report,
        preamble: String::new(),
    })
}

pub struct RieszArgs<'a> {
    pub subspace: &'a str,
    pub alpha: f64,
    pub eps: f64,
    pub samples: usize,
    pub seed: u64,
}

pub fn riesz(spec: &Path, args: &RieszArgs, csv: Option<&Path>) -> Result<Output, CliError> {
    check_alphas(&[args.alpha])?;
    if !(args.eps > 0.0 && args.eps < 1.0) {
        return Err(CliError::Usage(format!("--eps {} is not in (0, 1)", args.eps)));
    }
    positive("samples", args.samples)?;
    let s = load(spec)?;
    let nu = &s.antinorm;
    let w = s.subspaces.get(args.subspace).ok_or_else(|| {
        let known: Vec<&str> = s.subspaces.keys().map(String::as_str).collect();
        CliError::Usage(format!(
            "unknown subspace `{}` (spec defines: {})",
            args.subspace,
            known.join(", ")
        ))
    })?;
    let witness = riesz::riesz_witness(nu, args.alpha, w, args.eps)?;
    let check = riesz::verify_witness(nu, args.alpha, args.eps, &witness.y, w, args.samples, args.seed)?;
    let mut report = RunReport::new(
        "riesz",
        &s.digest_input,
        json!({
            "spec": spec,
            "antinorm": nu.describe(),
            "subspace": args.subspace,
            "alpha": args.alpha,
            "eps": args.eps,
            "samples": args.samples,
            "seed": args.seed,
        }),
    );
    report.push("witness", Outcome::Pass, None, &witness);
    report.push(
        "unit-norm",
        Outcome::from_bool(check.unit_norm_ok),
        Some((check.unit_norm - 1.0).abs()),
        json!({ "unit_norm": check.unit_norm }),
    );
    report.push(
        "membership-at-one",
        Outcome::from_bool(check.membership_ok),
        Some(check.membership_at_one - (1.0 - args.alpha)),
        json!({ "membership": check.membership_at_one }),
    );
    report.push(
        "distance",
        Outcome::from_bool(check.distance_ok),
        Some(-check.worst_margin),
        &check,
    );
    if let Some(dir) = csv {
        let rows = [witness.y.iter().map(f64::to_string).collect::<Vec<_>>()];
        let header: Vec<String> = (0..witness.y.len()).map(|i| format!("y{i}")).collect();
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        csv_file(dir, "witness.csv", &header, rows)?;
    }
    Ok(Output {
        report,
        preamble: String::new(),
    })
}
