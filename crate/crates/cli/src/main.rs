use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qcube_cli::errata;
use qcube_cli::exit;
use qcube_cli::report::{distribution_csv, BoundsJson, DistributionJson, RankJson, ReportJson};
use qcube_cli::sweep::{run_sweep, FamilyTemplate, Span, SweepConfig, SweepSettings};
use qcube_core::io::infer_dimension;
use qcube_core::{
    check_chu_vandermonde_generalized, check_evenweight_identity, check_vandermonde, corollary_s1, corollary_s2,
    corollary_s3, distance_sum, distribution, lemma_face_count, parse_pointset, rank, rank_bounds, rank_bounds_report,
    rank_closed_small, serialize_pointset, verify_main, CubeParams, EvalOptions, EvenWeightForm, FamilyKind,
    FamilySpec, IdentityKind, IdentityReport, Limits, PointSet,
};

#[derive(Parser)]
#[command(
    name = "qcube",
    version,
    about = "Exact face distributions, subset ranks and identity checks on q-valued cubes"
)]
struct Cli {
    /// Alphabet size.
    #[arg(long, global = true, default_value_t = 2)]
    q: u32,
    /// Cube dimension (inferred from the input file when omitted).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Maximum operations for exhaustive scans and subset enumeration.
    #[arg(long, global = true)]
    guard: Option<u64>,
    /// Seed for random generators.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, distance sum, bounds and closed-form rank of a point set.
    Rank { file: PathBuf },
    /// Binary rank bounds of a point set.
    Bounds { file: PathBuf },
    /// Face-intersection distribution V(A, k, e).
    Distribution {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Emit `e,count` CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Evaluate both sides of an identity.
    Verify {
        file: Option<PathBuf>,
        #[arg(long, default_value = "main")]
        identity: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        nu: Option<usize>,
        /// Print every term of both sides.
        #[arg(long)]
        breakdown: bool,
    },
    /// Run a batch of checks and stream JSON lines.
    Sweep {
        /// JSON sweep configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output file (defaults to the config's output path, then stdout).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Comma-separated identity names.
        #[arg(long)]
        identities: Option<String>,
        /// Comma-separated alphabet sizes.
        #[arg(long)]
        q_list: Option<String>,
        #[arg(long)]
        n_range: Option<Span>,
        #[arg(long)]
        k_range: Option<Span>,
        #[arg(long)]
        s_range: Option<Span>,
        #[arg(long)]
        nu_range: Option<Span>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        m_range: Option<Span>,
        /// Comma-separated seeds.
        #[arg(long)]
        seeds: Option<String>,
        /// Point-set file for the file family.
        #[arg(long)]
        path: Option<PathBuf>,
    },
    /// Generate a structured point set.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        nu: Option<usize>,
        /// Comma-separated free positions of a face.
        #[arg(long)]
        free: Option<String>,
        /// Comma-separated values of the fixed positions of a face.
        #[arg(long)]
        fixed: Option<String>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError { code: exit::INPUT, message: message.into() }
    }
}

impl From<qcube_core::Error> for CliError {
    fn from(e: qcube_core::Error) -> Self {
        let code = if e.is_guard() { exit::GUARD } else { exit::INPUT };
        let mut message = e.to_string();
        if e.is_guard() {
            message.push_str(" (try a smaller k or n, or raise --guard)");
        }
        CliError { code, message }
    }
}

type CliResult<T = u8> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    cli.guard.map_or_else(Limits::default, Limits::uniform)
}

fn params(cli: &Cli, n: usize) -> CliResult<CubeParams> {
    Ok(CubeParams::new(cli.q, n)?)
}

fn require_n(cli: &Cli) -> CliResult<usize> {
    cli.n.ok_or_else(|| CliError::input("--n is required"))
}

fn load(cli: &Cli, path: &Path) -> CliResult<(PointSet, usize)> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let n = match cli.n {
        Some(n) => n,
        None => infer_dimension(&text, cli.q)
            .ok_or_else(|| CliError::input("cannot infer the dimension from an empty file; pass --n"))?,
    };
    let parsed = parse_pointset(&text, params(cli, n)?)?;
    if parsed.duplicates > 0 {
        eprintln!("warning: dropped {} duplicate vector(s)", parsed.duplicates);
    }
    Ok((parsed.set, parsed.duplicates))
}

fn print_json<T: serde::Serialize>(value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::input(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Rank { file } => cmd_rank(cli, file),
        Command::Bounds { file } => cmd_bounds(cli, file),
        Command::Distribution { file, k, csv } => cmd_distribution(cli, file, *k, *csv),
        Command::Verify { file, identity, k, s, nu, breakdown } => {
            cmd_verify(cli, file.as_deref(), identity, *k, *s, *nu, *breakdown)
        }
        Command::Sweep { .. } => cmd_sweep(cli),
        Command::Gen { family, nu, free, fixed, m, output } => {
            cmd_gen(cli, family, *nu, free.as_deref(), fixed.as_deref(), *m, output.as_deref())
        }
    }
}

fn cmd_rank(cli: &Cli, file: &Path) -> CliResult {
    let (a, duplicates) = load(cli, file)?;
    let r = rank(&a)?;
    let profile = distance_sum(&a)?;
    let binary = a.params().q() == 2;
    let bounds = if binary { Some(rank_bounds(&a)?) } else { None };
    let closed = if binary { rank_closed_small(&a)? } else { None };
    if cli.json {
        print_json(&RankJson::new(&a, duplicates, r, &profile, bounds.as_ref(), closed))?;
    } else {
        println!("points: {} (q={}, n={})", a.len(), a.params().q(), a.params().n());
        println!("rank: {r}");
        println!("distance sum: {}", profile.total());
        if let Some(b) = &bounds {
            println!("bounds: [{}, {}]", b.lower, b.upper);
        }
        if let Some(c) = closed {
            println!("closed-form rank: {c}");
        }
    }
    Ok(exit::OK)
}

fn cmd_bounds(cli: &Cli, file: &Path) -> CliResult {
    let (a, _) = load(cli, file)?;
    let bounds = rank_bounds(&a)?;
    let r = rank(&a)?;
    if cli.json {
        print_json(&BoundsJson::new(&bounds, r))?;
    } else {
        println!("bounds: [{}, {}]", bounds.lower, bounds.upper);
        println!("rank: {r} ({})", if bounds.contains(r) { "within bounds" } else { "OUTSIDE bounds" });
    }
    Ok(if bounds.contains(r) { exit::OK } else { exit::UNEQUAL })
}

fn cmd_distribution(cli: &Cli, file: &Path, k: usize, csv: bool) -> CliResult {
    let (a, _) = load(cli, file)?;
    let dist = distribution(&a, k, &limits(cli))?;
    if cli.json {
        print_json(&DistributionJson::new(&dist, a.len()))?;
    } else if csv {
        print!("{}", distribution_csv(&dist));
    } else {
        for (e, c) in dist.iter() {
            println!("e={e}: {c}");
        }
        let expected = qcube_core::face_count(dist.params(), k);
        if dist.is_conserved() {
            println!("total faces: {} ✓", dist.total());
        } else {
            println!("total faces: {} ✗ (expected {expected})", dist.total());
        }
    }
    Ok(exit::OK)
}

fn cmd_verify(
    cli: &Cli,
    file: Option<&Path>,
    identity: &str,
    k: Option<usize>,
    s: Option<usize>,
    nu: Option<usize>,
    breakdown: bool,
) -> CliResult {
    let kind: IdentityKind = identity.parse()?;
    let opts = EvalOptions { limits: limits(cli), breakdown };
    let need =
        |v: Option<usize>, flag: &str| v.ok_or_else(|| CliError::input(format!("--{flag} is required for {kind}")));
    let report: IdentityReport = if kind.needs_point_set() {
        let file = file.ok_or_else(|| CliError::input(format!("{kind} needs a point-set file")))?;
        let (a, _) = load(cli, file)?;
        match kind {
            IdentityKind::Main => verify_main(&a, need(k, "k")?, need(s, "s")?, &opts)?,
            IdentityKind::Corollary1 => corollary_s1(&a, need(k, "k")?, &opts.limits)?,
            IdentityKind::Corollary2 => corollary_s2(&a, need(k, "k")?, &opts)?,
            IdentityKind::Corollary3 => corollary_s3(&a, need(k, "k")?, &opts)?,
            IdentityKind::LemmaFaceCount => lemma_face_count(&a, need(k, "k")?, &opts.limits)?,
            _ => rank_bounds_report(&a)?,
        }
    } else {
        let n = require_n(cli)?;
        let k = need(k, "k")?;
        match kind {
            IdentityKind::Vandermonde => check_vandermonde(params(cli, n)?, need(nu, "nu")?, k)?,
            IdentityKind::ChuVandermondeGeneralized => {
                check_chu_vandermonde_generalized(params(cli, n)?, need(nu, "nu")?, k)?
            }
            IdentityKind::EvenweightPrinted => check_evenweight_identity(n, k, EvenWeightForm::Printed)?,
            _ => check_evenweight_identity(n, k, EvenWeightForm::Corrected)?,
        }
    };

    if cli.json {
        print_json(&ReportJson::from_report(&report, breakdown))?;
    } else {
        let params: Vec<String> = report.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!("identity: {}", report.identity);
        println!("params: {}", params.join(" "));
        println!("lhs: {}", report.lhs);
        println!("rhs: {}", report.rhs);
        match (report.equal, errata::lookup(report.identity)) {
            (true, _) => println!("equal: yes"),
            (false, Some(known)) => println!("equal: no (known erratum: {})", known.note),
            (false, None) => println!("equal: no"),
        }
        if breakdown {
            for (side, terms) in [("lhs", &report.lhs_terms), ("rhs", &report.rhs_terms)] {
                println!("{side} terms:");
                for t in terms {
                    println!("  {}: {}", t.label, t.value);
                }
            }
        }
    }
    Ok(if report.equal { exit::OK } else { exit::UNEQUAL })
}

fn split_list<T: std::str::FromStr>(text: &str, what: &str) -> CliResult<Vec<T>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<T>().map_err(|_| CliError::input(format!("bad {what} {t:?}"))))
        .collect()
}

fn sweep_config(cli: &Cli) -> CliResult<SweepConfig> {
    let Command::Sweep {
        config,
        identities,
        q_list,
        n_range,
        k_range,
        s_range,
        nu_range,
        family,
        m_range,
        seeds,
        path,
        ..
    } = &cli.command
    else {
        unreachable!()
    };
    if let Some(path) = config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        return SweepConfig::from_json(&text).map_err(CliError::input);
    }
    let identities = identities.as_deref().ok_or_else(|| CliError::input("sweep needs --config or --identities"))?;
    let n = match (n_range, cli.n) {
        (Some(span), _) => *span,
        (None, Some(n)) => Span::new(n, n),
        (None, None) => return Err(CliError::input("sweep needs --n-range or --n")),
    };
    let seeds = match (seeds, cli.seed) {
        (Some(list), _) => split_list(list, "seed")?,
        (None, Some(seed)) => vec![seed],
        (None, None) => vec![0],
    };
    Ok(SweepConfig {
        identities: split_list(identities, "identity")?,
        q: match q_list {
            Some(list) => split_list(list, "alphabet size")?,
            None => vec![cli.q],
        },
        n,
        k: *k_range,
        s: *s_range,
        nu: *nu_range,
        family: FamilyTemplate {
            kind: family.clone().unwrap_or_else(|| "random".into()),
            m: *m_range,
            path: path.clone(),
        },
        seeds,
        output: None,
    })
}

fn cmd_sweep(cli: &Cli) -> CliResult {
    let Command::Sweep { output, .. } = &cli.command else { unreachable!() };
    let config = sweep_config(cli)?;
    config.validate().map_err(CliError::input)?;
    let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let settings = SweepSettings { jobs, limits: limits(cli) };
    let target = output.clone().or_else(|| config.output.as_ref().and_then(|o| o.path.clone()));
    let outcome = match &target {
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|e| CliError::input(format!("cannot create {}: {e}", path.display())))?;
            let mut writer = std::io::BufWriter::new(file);
            run_sweep(&config, &settings, &mut writer)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            run_sweep(&config, &settings, &mut lock)
        }
    }
    .map_err(CliError::input)?;
    let c = outcome.counts;
    eprintln!(
        "sweep: {} points, {} passed, {} failed, {} known errata, {} errors",
        c.total, c.passed, c.failed, c.known_errata, c.errors
    );
    Ok(outcome.exit_code())
}

fn cmd_gen(
    cli: &Cli,
    family: &str,
    nu: Option<usize>,
    free: Option<&str>,
    fixed: Option<&str>,
    m: Option<u64>,
    output: Option<&Path>,
) -> CliResult {
    let n = require_n(cli)?;
    let params = params(cli, n)?;
    let spec = match family.parse::<FamilyKind>()? {
        FamilyKind::EvenWeight => FamilySpec::EvenWeight,
        FamilyKind::Random => {
            let m = m.ok_or_else(|| CliError::input("--m is required for the random family"))?;
            FamilySpec::Random { m, seed: cli.seed.unwrap_or(0) }
        }
        FamilyKind::Face => {
            let free: Vec<usize> = match (free, nu) {
                (Some(list), _) => split_list(list, "position")?,
                (None, Some(nu)) => (0..nu).collect(),
                (None, None) => return Err(CliError::input("face family needs --free or --nu")),
            };
            if nu.is_some_and(|nu| nu != free.len()) {
                return Err(CliError::input(format!("--nu does not match the {} free positions", free.len())));
            }
            let fixed = match fixed {
                Some(list) => split_list(list, "value")?,
                None => vec![0; n.saturating_sub(free.len())],
            };
            FamilySpec::Face { free, fixed }
        }
        FamilyKind::File => return Err(CliError::input("gen cannot produce the file family")),
    };
    let set = spec.generate(params)?;
    let mut text = serialize_pointset(&set);
    if !text.is_empty() {
        text.push('\n');
    }
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?
        }
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::input(e.to_string()))?,
    }
    Ok(exit::OK)
}
