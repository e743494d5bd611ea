//! Command-line driver: field inspection, point counting, deep-hole
//! classification, and the verification experiments, with machine-readable
//! JSON (or CSV summary) output.
//!
//! Exit codes: `0` on success (including `verified` and `scan-complete`
//! verdicts), `2` when an experiment finds violations, `1` for usage or
//! I/O errors.

use std::fs;
use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use symhyp_core::{
    count_points, count_points_distinct, count_points_distinct_naive, count_points_naive,
    scan_deep_holes, subset_escape_check, subset_sum_bridge, verify_conj_nonzeros, verify_remarks,
    verify_thm_even, verify_thm_main, CompleteSymPoly, ExperimentReport, Field, FieldElement,
    GenVanderInstance, RsCode, ScanOptions, UniPoly, Verdict,
};

#[derive(Parser, Debug, PartialEq, Serialize, Deserialize)]
#[command(
    name = "symhyp",
    version,
    about = "Exact point counts of complete symmetric hypersurfaces over small finite fields, \
             generalized Vandermonde determinants, and Reed-Solomon deep-hole classification"
)]
struct Cli {
    /// Worker threads for parallel scans (overrides SYMHYP_THREADS; default: all cores).
    #[arg(long, global = true)]
    threads: Option<NonZeroUsize>,

    /// Write the JSON or CSV output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format for verification reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, PartialEq, Serialize, Deserialize)]
enum Command {
    /// Print the canonical model of the field F_q.
    Field(FieldArgs),
    /// Count zeros of a combination of complete symmetric polynomials.
    Count(CountArgs),
    /// Generalized Vandermonde determinant queries.
    #[command(subcommand)]
    Vander(VanderCmd),
    /// Reed-Solomon received-word queries.
    #[command(subcommand)]
    Rs(RsCmd),
    /// Verification experiments with machine-readable reports.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug, PartialEq, Serialize, Deserialize)]
enum VanderCmd {
    /// Count distinct-coordinate tuples annihilating the determinant.
    Count(VanderCountArgs),
}

#[derive(Subcommand, Debug, PartialEq, Serialize, Deserialize)]
enum RsCmd {
    /// Classify a received word as deep hole, codeword, or neither.
    Deephole(DeepholeArgs),
}

#[derive(Subcommand, Debug, PartialEq, Serialize, Deserialize)]
enum VerifyCmd {
    /// Check the lower bound 6*q^(k-3) on total point counts (odd q).
    ThmMain(ThmMainArgs),
    /// Check the lower bound (q/2)!*q^(k-q/2) on total point counts (even q).
    ThmEven(ThmEvenArgs),
    /// Exhaustive deep-hole scan of the essential coefficient space.
    ScanDeepHoles(KScanArgs),
    /// Check the standalone remark identities for one field.
    Remarks(RemarksArgs),
    /// Scan for combinations with no vanishing distinct tuple on F_q^*.
    ConjNonzeros(KScanArgs),
    /// Check that (x - a)^(q-2) never vanishes on tuples avoiding a.
    SubsetEscape(SubsetEscapeArgs),
    /// Bridge binomial zero counts to subset-sum counts.
    SubsetSum(SubsetSumArgs),
}

/// Field selector `p,m` (or just `p` for a prime field).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct FieldSpec {
    p: u64,
    m: u32,
}

fn parse_field_spec(s: &str) -> Result<FieldSpec, String> {
    let (p_str, m_str) = match s.split_once(',') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let p = p_str
        .trim()
        .parse::<u64>()
        .map_err(|_| format!("bad characteristic {p_str:?} (expected p or p,m)"))?;
    let m = m_str
        .trim()
        .parse::<u32>()
        .map_err(|_| format!("bad extension degree {m_str:?} (expected p or p,m)"))?;
    Ok(FieldSpec { p, m })
}

#[derive(Args, Debug, PartialEq, Serialize, Deserialize)]
struct FieldArgs {
    /// Field as `p,m` (prime power q = p^m <= 2^16).
    #[arg(long, value_parser = parse_field_spec)]
    field: FieldSpec,
}

#[derive(Args, Debug, PartialEq, Serialize, Deserialize)]
struct CountArgs {
    /// Field as `p,m`.
    #[arg(long, value_parser = parse_field_spec)]
    field: FieldSpec,
    /// Number of variables.
    #[arg(long)]
    k: usize,
    /// Coefficient indices a_0,a_1,.. of the combination sum a_e h_e.
    #[arg(long, value_delimiter = ',')]
    coeffs: Vec<u32>,
    /// Count only zeros with pairwise-distinct coordinates.
    #[arg(long)]
    distinct: bool,
    /// Restrict coordinates to these element indices (needs --distinct).
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<u32>>,
    /// Re-run with the independent odometer oracle and cross-check.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args, Debug, PartialEq, Serialize, Deserialize)]
struct VanderCountArgs {
    /// Field as `p,m`.
    #[arg(long, value_parser = parse_field_spec)]
    field: FieldSpec,
    /// Matrix size (rows 1, x, .., x^(k-2), f).
    #[arg(long)]
    k: usize,
    /// Coefficient indices f_0,f_1,.. of the polynomial f.
    #[arg(long, value_delimiter = ',')]
    poly: Vec<u32>,
    /// Restrict points to these element indices.
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<u32>>,
    /// Re-run with the determinant-per-subset oracle and cross-check.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args, Debug, PartialEq, Serialize, Deserialize)]
struct DeepholeArgs {
    /// Field as `p,m`.
    #[arg(long, value_parser = parse_field_spec)]
    field: FieldSpec,
    /// Extended-matrix row count (code dimension + 1).
    #[arg(long)]
    k: usize,
    /// Coefficient indices f_0,f_1,.. of the received word's polynomial.
    #[arg(long, value_delimiter = ',')]
    poly: Vec<u32>,
}

#[derive(Args, Debug, PartialEq, Serialize, Deserialize)]
struct ScanKnobs {
    /// Evaluation budget before exhaustive scans fall back to sampling.
    #[arg(long, default_value_t = symhyp_core::DEFAULT_BUDGET)]
    budget: u64,
    /// RNG seed for sampled scans.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ScanKnobs {
    fn options(&self) -> ScanOptions {
        ScanOptions {
            budget: self.budget,
            seed: self.seed,
        }
    }
}

#[derive(Args, Debug, PartialEq, Serialize, Deserialize)]
struct ThmMainArgs {
    /// Field as `p,m` (q must be odd).
    #[arg(long, value_parser = parse_field_spec)]
    field: FieldSpec,
    /// Number of variables (at least 3).
    #[arg(long)]
    k: usize,
    /// Degree range `lo,hi` (or a single degree).
    #[arg(long, value_delimiter = ',', num_args = 1..=2)]
    m_range: Vec<usize>,
    #[command(flatten)]
    knobs: ScanKnobs,
}

#[derive(Args, Debug, PartialEq, Serialize, Deserialize)]
struct ThmEvenArgs {
    /// Field as `p,m` (q must be even, at least 8).
    #[arg(long, value_parser = parse_field_spec)]
    field: FieldSpec,
    /// Number of variables (at least q/2).
    #[arg(long)]
    k: usize,
    /// Degree range `lo,hi` (or a single degree).
    #[arg(long, value_delimiter = ',', num_args = 1..=2)]
    m_range: Vec<usize>,
    #[command(flatten)]
    knobs: ScanKnobs,
}

#[derive(Args, Debug, PartialEq, Serialize, Deserialize)]
struct KScanArgs {
    /// Field as `p,m`.
    #[arg(long, value_parser = parse_field_spec)]
    field: FieldSpec,
    /// Number of variables / matrix size.
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    knobs: ScanKnobs,
}

#[derive(Args, Debug, PartialEq, Serialize, Deserialize)]
struct RemarksArgs {
    /// Field as `p,m`.
    #[arg(long, value_parser = parse_field_spec)]
    field: FieldSpec,
    #[command(flatten)]
    knobs: ScanKnobs,
}

#[derive(Args, Debug, PartialEq, Serialize, Deserialize)]
struct SubsetEscapeArgs {
    /// Field as `p,m`.
    #[arg(long, value_parser = parse_field_spec)]
    field: FieldSpec,
    /// Tuple length.
    #[arg(long)]
    k: usize,
}

#[derive(Args, Debug, PartialEq, Serialize, Deserialize)]
struct SubsetSumArgs {
    /// Field as `p,m`.
    #[arg(long, value_parser = parse_field_spec)]
    field: FieldSpec,
    /// Subset size / tuple length.
    #[arg(long)]
    k: usize,
    /// Index of the coefficient of x^(k-1).
    #[arg(long)]
    a_k_minus_1: u32,
    /// Index of the (nonzero) coefficient of x^k.
    #[arg(long)]
    a_k: u32,
    /// Restrict to these element indices (default: the whole field).
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<u32>>,
    #[command(flatten)]
    knobs: ScanKnobs,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { 0 } else { 1 };
        }
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    configure_threads(&cli);
    match dispatch(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

/// Installs the global worker pool: the --threads flag wins over the
/// SYMHYP_THREADS environment variable; with neither, rayon's default
/// (all cores) is kept.
fn configure_threads(cli: &Cli) {
    let from_env = std::env::var("SYMHYP_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<NonZeroUsize>().ok());
    if let Some(n) = cli.threads.or(from_env) {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(n.get())
            .build_global()
            .is_ok()
        {
            eprintln!(
                "using {n} worker thread{}",
                if n.get() == 1 { "" } else { "s" }
            );
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, String> {
    match &cli.command {
        Command::Field(args) => cmd_field(cli, args),
        Command::Count(args) => cmd_count(cli, args),
        Command::Vander(VanderCmd::Count(args)) => cmd_vander_count(cli, args),
        Command::Rs(RsCmd::Deephole(args)) => cmd_rs_deephole(cli, args),
        Command::Verify(v) => cmd_verify(cli, v),
    }
}

fn build_field(spec: &FieldSpec) -> Result<Field, String> {
    Field::new(spec.p, spec.m).map_err(|e| e.to_string())
}

fn check_indices(field: &Field, what: &str, idx: &[u32]) -> Result<(), String> {
    let q = field.q();
    match idx.iter().find(|&&i| i >= q) {
        Some(i) => Err(format!(
            "{what} index {i} is out of range for a field with {q} elements"
        )),
        None => Ok(()),
    }
}

fn subset_elements(
    field: &Field,
    subset: &Option<Vec<u32>>,
) -> Result<Option<Vec<FieldElement>>, String> {
    match subset {
        None => Ok(None),
        Some(idx) => {
            check_indices(field, "subset", idx)?;
            Ok(Some(idx.iter().map(|&i| field.element(i)).collect()))
        }
    }
}

/// For the exit code: violations found mean 2, anything clean means 0.
fn exit_for(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Violated => 2,
        Verdict::Verified | Verdict::ScanComplete => 0,
    }
}

fn verdict_label(verdict: Verdict) -> String {
    serde_json::to_value(verdict)
        .expect("verdict serializes")
        .as_str()
        .expect("verdict is a string")
        .to_string()
}

/// Writes an ordinary (non-report) JSON result, honoring --out.
fn emit_json(cli: &Cli, value: &serde_json::Value, summary: &str) -> Result<(), String> {
    if cli.format == Format::Csv {
        return Err("csv output is only available for verification reports".to_string());
    }
    let body = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    match &cli.out {
        Some(path) => {
            fs::write(path, body + "\n")
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            println!("{summary}");
            eprintln!("output written to {}", path.display());
        }
        None => {
            println!("{body}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn report_csv(report: &ExperimentReport) -> String {
    let q = report.field.p.pow(report.field.m);
    let opt = |v: &Option<u64>| v.map(|n| n.to_string()).unwrap_or_default();
    format!(
        "experiment_id,p,m,q,exhaustive,cases_checked,violations,min_count_observed,bound_required,verdict,elapsed_secs\n\
         {},{},{},{q},{},{},{},{},{},{},{:.3}\n",
        report.experiment_id,
        report.field.p,
        report.field.m,
        report.exhaustive,
        report.cases_checked,
        report.violations.len(),
        opt(&report.min_count_observed),
        opt(&report.bound_required),
        verdict_label(report.verdict),
        report.elapsed_secs,
    )
}

/// Writes an experiment report in the requested format, honoring --out, and
/// maps its verdict to the process exit code.
fn emit_report(cli: &Cli, report: &ExperimentReport) -> Result<i32, String> {
    let q = report.field.p.pow(report.field.m);
    let summary = format!(
        "{} over F_{q}: {} — cases = {}, violations = {}, exhaustive = {}, {:.2}s",
        report.experiment_id,
        verdict_label(report.verdict),
        report.cases_checked,
        report.violations.len(),
        report.exhaustive,
        report.elapsed_secs,
    );
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(report).map_err(|e| e.to_string())? + "\n",
        Format::Csv => report_csv(report),
    };
    match &cli.out {
        Some(path) => {
            fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            println!("{summary}");
            eprintln!("report written to {}", path.display());
        }
        None => {
            print!("{body}");
            eprintln!("{summary}");
        }
    }
    Ok(exit_for(report.verdict))
}

fn cmd_field(cli: &Cli, args: &FieldArgs) -> Result<i32, String> {
    let field = build_field(&args.field)?;
    let value = serde_json::json!({
        "field": field.descriptor(),
        "q": field.q(),
        "max_order": symhyp_core::MAX_ORDER,
    });
    emit_json(
        cli,
        &value,
        &format!("F_{} = F_{}^{}", field.q(), field.p(), field.m()),
    )?;
    Ok(0)
}

fn cmd_count(cli: &Cli, args: &CountArgs) -> Result<i32, String> {
    let field = build_field(&args.field)?;
    check_indices(&field, "coefficient", &args.coeffs)?;
    if args.subset.is_some() && !args.distinct {
        return Err(
            "--subset requires --distinct (total counts run over the whole field)".to_string(),
        );
    }
    let h =
        CompleteSymPoly::from_indices(&field, args.k, &args.coeffs).map_err(|e| e.to_string())?;
    let subset = subset_elements(&field, &args.subset)?;
    let result = if args.distinct {
        count_points_distinct(&h, &field, subset.as_deref()).map_err(|e| e.to_string())?
    } else {
        count_points(&h, &field).map_err(|e| e.to_string())?
    };
    let oracle = if args.oracle {
        let o = if args.distinct {
            count_points_distinct_naive(&h, &field, subset.as_deref()).map_err(|e| e.to_string())?
        } else {
            count_points_naive(&h, &field).map_err(|e| e.to_string())?
        };
        if o.count != result.count {
            return Err(format!(
                "cross-check failed: fast count {} != oracle count {}",
                result.count, o.count
            ));
        }
        Some(o)
    } else {
        None
    };
    let value = serde_json::json!({
        "field": field.descriptor(),
        "k": args.k,
        "coeffs": args.coeffs,
        "result": result,
        "oracle": oracle,
    });
    emit_json(cli, &value, &format!("count = {}", result.count))?;
    Ok(0)
}

fn cmd_vander_count(cli: &Cli, args: &VanderCountArgs) -> Result<i32, String> {
    let field = build_field(&args.field)?;
    check_indices(&field, "coefficient", &args.poly)?;
    let f = UniPoly::from_indices(&field, &args.poly);
    let inst = GenVanderInstance::new(&field, f, args.k).map_err(|e| e.to_string())?;
    let subset = subset_elements(&field, &args.subset)?;
    let result = inst
        .count_zero_tuples(subset.as_deref())
        .map_err(|e| e.to_string())?;
    let oracle = if args.oracle {
        let o = inst
            .count_zero_tuples_det(subset.as_deref())
            .map_err(|e| e.to_string())?;
        if o.count != result.count {
            return Err(format!(
                "cross-check failed: companion count {} != determinant count {}",
                result.count, o.count
            ));
        }
        Some(o)
    } else {
        None
    };
    let witness = inst
        .first_vanishing_subset(subset.as_deref())
        .map_err(|e| e.to_string())?;
    let value = serde_json::json!({
        "field": field.descriptor(),
        "k": args.k,
        "poly": args.poly,
        "result": result,
        "oracle": oracle,
        "first_vanishing_subset": witness,
    });
    emit_json(cli, &value, &format!("vanishing tuples = {}", result.count))?;
    Ok(0)
}

fn cmd_rs_deephole(cli: &Cli, args: &DeepholeArgs) -> Result<i32, String> {
    let field = build_field(&args.field)?;
    check_indices(&field, "coefficient", &args.poly)?;
    if args.k < 2 {
        return Err("k must be at least 2 (code dimension k - 1 >= 1)".to_string());
    }
    let code = RsCode::new(&field, args.k - 1).map_err(|e| e.to_string())?;
    let f = UniPoly::from_indices(&field, &args.poly);
    let verdict = code.is_deep_hole(&f).map_err(|e| e.to_string())?;
    let value = serde_json::json!({
        "field": field.descriptor(),
        "k": args.k,
        "poly": args.poly,
        "verdict": verdict,
        "syndrome": code.syndrome(&f),
    });
    let summary = if verdict.is_deep_hole {
        "deep hole".to_string()
    } else if verdict.is_codeword {
        "codeword".to_string()
    } else {
        "neither deep hole nor codeword".to_string()
    };
    emit_json(cli, &value, &summary)?;
    Ok(0)
}

fn m_range_pair(values: &[usize]) -> Result<(usize, usize), String> {
    match values {
        [one] => Ok((*one, *one)),
        [lo, hi] => Ok((*lo, *hi)),
        _ => Err("--m-range expects `lo,hi` or a single degree".to_string()),
    }
}

fn cmd_verify(cli: &Cli, v: &VerifyCmd) -> Result<i32, String> {
    let report = match v {
        VerifyCmd::ThmMain(a) => {
            let field = build_field(&a.field)?;
            let range = m_range_pair(&a.m_range)?;
            verify_thm_main(&field, a.k, range, &a.knobs.options())
        }
        VerifyCmd::ThmEven(a) => {
            let field = build_field(&a.field)?;
            let range = m_range_pair(&a.m_range)?;
            verify_thm_even(&field, a.k, range, &a.knobs.options())
        }
        VerifyCmd::ScanDeepHoles(a) => {
            let field = build_field(&a.field)?;
            scan_deep_holes(&field, a.k, &a.knobs.options())
        }
        VerifyCmd::Remarks(a) => {
            let field = build_field(&a.field)?;
            verify_remarks(&field, &a.knobs.options())
        }
        VerifyCmd::ConjNonzeros(a) => {
            let field = build_field(&a.field)?;
            verify_conj_nonzeros(&field, a.k, &a.knobs.options())
        }
        VerifyCmd::SubsetEscape(a) => {
            let field = build_field(&a.field)?;
            subset_escape_check(&field, a.k)
        }
        VerifyCmd::SubsetSum(a) => {
            let field = build_field(&a.field)?;
            if let Some(s) = &a.subset {
                check_indices(&field, "subset", s)?;
            }
            subset_sum_bridge(
                &field,
                a.k,
                a.a_k_minus_1,
                a.a_k,
                a.subset.as_deref(),
                &a.knobs.options(),
            )
        }
    }
    .map_err(|e| e.to_string())?;
    emit_report(cli, &report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn field_spec_parses() {
        assert_eq!(parse_field_spec("5,1").unwrap(), FieldSpec { p: 5, m: 1 });
        assert_eq!(parse_field_spec("2,3").unwrap(), FieldSpec { p: 2, m: 3 });
        assert_eq!(parse_field_spec("7").unwrap(), FieldSpec { p: 7, m: 1 });
        assert!(parse_field_spec("x,1").is_err());
        assert!(parse_field_spec("5,y").is_err());
    }

    #[test]
    fn m_range_accepts_one_or_two_values() {
        assert_eq!(m_range_pair(&[2]).unwrap(), (2, 2));
        assert_eq!(m_range_pair(&[1, 4]).unwrap(), (1, 4));
        assert!(m_range_pair(&[]).is_err());
        assert!(m_range_pair(&[1, 2, 3]).is_err());
    }

    #[test]
    fn verdicts_map_to_exit_codes() {
        assert_eq!(exit_for(Verdict::Verified), 0);
        assert_eq!(exit_for(Verdict::ScanComplete), 0);
        assert_eq!(exit_for(Verdict::Violated), 2);
    }

    #[test]
    fn parsed_config_round_trips_through_serde() {
        for argv in [
            vec![
                "symhyp",
                "verify",
                "thm-main",
                "--field",
                "5,1",
                "--k",
                "3",
                "--m-range",
                "1,2",
                "--budget",
                "1000000",
                "--seed",
                "7",
            ],
            vec![
                "symhyp",
                "--threads",
                "2",
                "count",
                "--field",
                "2,3",
                "--k",
                "4",
                "--coeffs",
                "0,0,1",
                "--distinct",
                "--subset",
                "1,2,3,4",
            ],
            vec![
                "symhyp", "rs", "deephole", "--field", "7,1", "--k", "3", "--poly", "0,0,1",
                "--format", "json",
            ],
        ] {
            let parsed = Cli::try_parse_from(&argv).unwrap();
            let json = serde_json::to_value(&parsed).unwrap();
            let back: Cli = serde_json::from_value(json).unwrap();
            assert_eq!(back, parsed);
        }
    }

    #[test]
    fn csv_row_has_fixed_schema() {
        let field = Field::new(5, 1).unwrap();
        let report = verify_thm_main(&field, 3, (1, 1), &ScanOptions::default()).unwrap();
        let csv = report_csv(&report);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "experiment_id,p,m,q,exhaustive,cases_checked,violations,min_count_observed,bound_required,verdict,elapsed_secs"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("thm-main-lower-bound,5,1,5,true,20,0,"));
        assert!(row.contains(",verified,"));
    }
}
