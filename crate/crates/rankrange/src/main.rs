//! Command-line driver: compute rank-k numerical ranges of normal spectra,
//! synthesize minimum-dimension spectra for target polygons, check direction
//! sets for k-regularity, cross-check against the exhaustive oracle, and
//! prune redundant eigenvalues.
//!
//! Exit codes: 0 success, 1 input/validation error, 2 internal verification
//! failure.  Errors are emitted to stderr as JSON objects.

use clap::{Args, Parser, Subcommand};
use rankrange::error::{Error, Result};
use rankrange::geometry::{region_equal, ConvexRegion};
use rankrange::io::svg::render_svg;
use rankrange::io::{
    parse_directions_json, parse_polygon_json, parse_spectrum_json, region_to_json, rounded,
    spectrum_rows, sig12, PruneReport, RangeReport, RegularReport, SynthesisReport,
};
use rankrange::kregular::{brute_force_min_extension, is_k_regular, DirectionSet};
use rankrange::oracle::{angle_sweep, subset_hull_range, sweep_region};
use rankrange::rank_range::lambda_k;
use rankrange::spectrum::NormalSpectrum;
use rankrange::synthesis::{prune_spectrum, synthesize};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "rankrange",
    version,
    about = "Rank-k numerical ranges of normal matrices: computation, synthesis, and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Input file (JSON; format depends on the subcommand)
    #[arg(short, long)]
    input: PathBuf,

    /// Rank parameter k
    #[arg(short, long)]
    k: usize,

    /// Tolerance for region comparisons in cross-checks
    #[arg(long, default_value_t = rankrange::tol::ABS)]
    tol: f64,

    /// Minimum angular separation enforced on reported direction lists
    #[arg(long, default_value_t = rankrange::tol::ANGLE)]
    angle_tol: f64,

    /// Write an SVG rendering of the result to this path
    #[arg(long)]
    svg: Option<PathBuf>,

    /// Cross-check the result against the exhaustive oracle
    #[arg(long)]
    oracle: bool,

    /// Print the report as JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the rank-k numerical range of a normal spectrum
    Range(CommonArgs),
    /// Build a minimum-dimension normal spectrum whose rank-k range is a polygon
    Synthesize(CommonArgs),
    /// Test k-regularity of a direction set and compute its minimal extension
    #[command(name = "check-regular")]
    CheckRegular(CommonArgs),
    /// Recompute the rank-k range with the exhaustive oracle and report agreement
    Verify(CommonArgs),
    /// Drop eigenvalues that do not shape the rank-k range
    Prune(CommonArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({
                    "error": { "kind": error_kind(&e), "message": e.to_string() }
                })
            );
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Range(a) => run_range(a, false),
        Command::Verify(a) => run_range(a, true),
        Command::Synthesize(a) => run_synthesize(a),
        Command::CheckRegular(a) => run_check_regular(a),
        Command::Prune(a) => run_prune(a),
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::VerificationFailed(_) | Error::UnboundedRegion | Error::DegenerateLine => 2,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DegenerateLine => "degenerate-line",
        Error::UnboundedRegion => "unbounded-region",
        Error::BadRank { .. } => "bad-rank",
        Error::TooLarge(_) => "too-large",
        Error::NotOneRegular => "not-one-regular",
        Error::NotPolygon => "not-polygon",
        Error::DegenerateScale => "degenerate-scale",
        Error::VerificationFailed(_) => "verification-failed",
        Error::NotConvex => "not-convex",
        Error::Collinear => "collinear",
        Error::EmptyInput => "empty-input",
        Error::InvalidInput(_) => "invalid-input",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    }
}

fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Print a finished report to stdout, treating a consumer that closed the
/// pipe early (e.g. `rankrange … | head`) as a normal exit rather than an
/// error.
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(Error::Io(e)),
    }
}

fn describe_region(r: &ConvexRegion) -> String {
    let label = match r {
        ConvexRegion::Empty => "empty",
        ConvexRegion::Point(_) => "point",
        ConvexRegion::Segment(..) => "segment",
        ConvexRegion::Polygon(_) => "polygon",
    };
    let mut s = format!("region: {label}");
    for v in r.vertices() {
        s.push_str(&format!("\n  ({}, {})", fmt12(v.re), fmt12(v.im)));
    }
    s
}

fn write_svg(path: &PathBuf, region: &ConvexRegion, sp: Option<&NormalSpectrum>) -> Result<()> {
    std::fs::write(path, render_svg(region, sp))?;
    Ok(())
}

/// Oracle agreement for a computed region: exhaustive subset-hull
/// intersection plus, when `with_sweep`, the support-function sweep.
fn oracle_check(
    sp: &NormalSpectrum,
    k: usize,
    region: &ConvexRegion,
    tol: f64,
    with_sweep: bool,
) -> Result<(ConvexRegion, Option<ConvexRegion>, bool)> {
    let hull = subset_hull_range(sp, k)?;
    let mut agree = region_equal(region, &hull, tol);
    let swept = if with_sweep {
        let profile = angle_sweep(sp, k, 256)?;
        let sw = sweep_region(&profile)?;
        agree = agree && region_equal(region, &sw, tol);
        Some(sw)
    } else {
        None
    };
    Ok((hull, swept, agree))
}

fn run_range(a: CommonArgs, verify_mode: bool) -> Result<()> {
    let sp = parse_spectrum_json(&std::fs::read_to_string(&a.input)?)?;
    let region = lambda_k(&sp, a.k)?;

    let mut report = RangeReport {
        op: if verify_mode { "verify" } else { "range" }.into(),
        k: a.k,
        n: sp.n(),
        region: region_to_json(&region),
        oracle_region: None,
        sweep_region: None,
        agree: None,
    };
    if verify_mode || a.oracle {
        let (hull, swept, agree) = oracle_check(&sp, a.k, &region, a.tol, !verify_mode)?;
        report.oracle_region = Some(region_to_json(&hull));
        report.sweep_region = swept.as_ref().map(region_to_json);
        report.agree = Some(agree);
    }

    if let Some(path) = &a.svg {
        write_svg(path, &region, Some(&sp))?;
    }
    let mut text = String::new();
    if a.json {
        text.push_str(&serde_json::to_string_pretty(&report)?);
        text.push('\n');
    } else {
        text.push_str(&format!(
            "rank-{} numerical range of an n = {} spectrum\n",
            a.k,
            sp.n()
        ));
        text.push_str(&describe_region(&region));
        text.push('\n');
        if let Some(agree) = report.agree {
            text.push_str(&format!("oracle agreement: {agree}\n"));
        }
    }
    emit(&text)?;
    match report.agree {
        Some(false) => Err(Error::VerificationFailed(
            "computed region disagrees with the exhaustive oracle".into(),
        )),
        _ => Ok(()),
    }
}

fn run_synthesize(a: CommonArgs) -> Result<()> {
    let target = parse_polygon_json(&std::fs::read_to_string(&a.input)?)?;
    let out = synthesize(&target, a.k)?;
    let achieved = lambda_k(&out.spectrum, a.k)?;

    // Reported direction lists must be genuinely separated.
    for w in out.directions.windows(2) {
        if (w[1] - w[0]).abs() <= a.angle_tol {
            return Err(Error::VerificationFailed(format!(
                "synthesized directions {} and {} closer than --angle-tol",
                w[0], w[1]
            )));
        }
    }

    let mut agree = None;
    if a.oracle {
        let (_, _, ok) = oracle_check(&out.spectrum, a.k, &achieved, a.tol, false)?;
        agree = Some(ok && region_equal(&achieved, &target.region(), a.tol));
    }

    let report = SynthesisReport {
        op: "synthesize".into(),
        k: a.k,
        p: target.p(),
        q: out.q,
        n: out.n,
        spectrum: spectrum_rows(&out.spectrum),
        directions: rounded(&out.directions),
        offsets: rounded(&out.offsets),
        region: region_to_json(&achieved),
    };
    if let Some(path) = &a.svg {
        write_svg(path, &achieved, Some(&out.spectrum))?;
    }
    let mut text = String::new();
    if a.json {
        text.push_str(&serde_json::to_string_pretty(&report)?);
        text.push('\n');
    } else {
        text.push_str(&format!(
            "synthesized n = {} (p = {}, q = {} added directions) for k = {}\n",
            out.n,
            target.p(),
            out.q,
            a.k
        ));
        text.push_str("eigenvalues (re, im, multiplicity):\n");
        for row in &report.spectrum {
            text.push_str(&format!(
                "  ({}, {}) x{}\n",
                fmt12(row[0]),
                fmt12(row[1]),
                row[2]
            ));
        }
        text.push_str(&describe_region(&achieved));
        text.push('\n');
        if let Some(ok) = agree {
            text.push_str(&format!("oracle agreement: {ok}\n"));
        }
    }
    emit(&text)?;
    match agree {
        Some(false) => Err(Error::VerificationFailed(
            "synthesized spectrum fails the oracle cross-check".into(),
        )),
        _ => Ok(()),
    }
}

fn run_check_regular(a: CommonArgs) -> Result<()> {
    let angles = parse_directions_json(&std::fs::read_to_string(&a.input)?)?;
    let ds = DirectionSet::new(&angles)?;
    let regular = is_k_regular(&ds, a.k);
    let ext = rankrange::kregular::minimal_extension(&ds, a.k)?;

    // Each reported addition must differ from every existing member.
    for &added in &ext.added {
        for &member in ds.angles() {
            if (added - member).abs() <= a.angle_tol {
                return Err(Error::VerificationFailed(format!(
                    "added direction {added} collides with member {member}"
                )));
            }
        }
    }

    let mut oracle_q = None;
    if a.oracle {
        let brute = brute_force_min_extension(&ds, a.k, 64)?;
        oracle_q = Some(brute.q);
    }

    let report = RegularReport {
        op: "check-regular".into(),
        p: ds.len(),
        k: a.k,
        is_regular: regular,
        q: ext.q,
        added: rounded(&ext.added),
        witness_removed: ext.witness_removed.as_deref().map(rounded),
    };
    if a.svg.is_some() {
        return Err(Error::InvalidInput(
            "check-regular produces no region; --svg is not available here".into(),
        ));
    }
    let mut text = String::new();
    if a.json {
        text.push_str(&serde_json::to_string_pretty(&report)?);
        text.push('\n');
    } else {
        text.push_str(&format!(
            "{}-regular: {} (p = {} directions)\n",
            a.k, report.is_regular, report.p
        ));
        text.push_str(&format!("minimal additions q = {}\n", report.q));
        for t in &report.added {
            text.push_str(&format!("  add {}\n", fmt12(*t)));
        }
        if let Some(w) = &report.witness_removed {
            let listed: Vec<String> = w.iter().map(|t| fmt12(*t)).collect();
            text.push_str(&format!("witness removals: [{}]\n", listed.join(", ")));
        }
        if let Some(bq) = oracle_q {
            text.push_str(&format!("oracle minimum q = {bq}\n"));
        }
    }
    emit(&text)?;
    match oracle_q {
        Some(bq) if bq != ext.q => Err(Error::VerificationFailed(format!(
            "extension size {} disagrees with oracle minimum {bq}",
            ext.q
        ))),
        _ => Ok(()),
    }
}

fn run_prune(a: CommonArgs) -> Result<()> {
    let sp = parse_spectrum_json(&std::fs::read_to_string(&a.input)?)?;
    let out = prune_spectrum(&sp, a.k)?;

    let mut agree = None;
    if a.oracle {
        let (_, _, ok) = oracle_check(&out.spectrum, a.k, &out.region, a.tol, false)?;
        agree = Some(ok);
    }

    let report = PruneReport {
        op: "prune".into(),
        k: a.k,
        n_before: sp.n(),
        n_after: out.spectrum.n(),
        removed: out
            .removed
            .iter()
            .map(|e| {
                [
                    sig12(e.value.re),
                    sig12(e.value.im),
                    e.multiplicity as f64,
                ]
            })
            .collect(),
        spectrum: spectrum_rows(&out.spectrum),
        region: region_to_json(&out.region),
    };
    if let Some(path) = &a.svg {
        write_svg(path, &out.region, Some(&out.spectrum))?;
    }
    let mut text = String::new();
    if a.json {
        text.push_str(&serde_json::to_string_pretty(&report)?);
        text.push('\n');
    } else {
        text.push_str(&format!(
            "pruned n = {} down to n = {} for k = {}\n",
            report.n_before, report.n_after, a.k
        ));
        for row in &report.removed {
            text.push_str(&format!(
                "  removed ({}, {}) x{}\n",
                fmt12(row[0]),
                fmt12(row[1]),
                row[2]
            ));
        }
        text.push_str(&describe_region(&out.region));
        text.push('\n');
        if let Some(ok) = agree {
            text.push_str(&format!("oracle agreement: {ok}\n"));
        }
    }
    emit(&text)?;
    match agree {
        Some(false) => Err(Error::VerificationFailed(
            "pruned spectrum fails the oracle cross-check".into(),
        )),
        _ => Ok(()),
    }
}
