use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rootposet::invariants::{format_multiset, format_properties, orbit_lengths};
use rootposet::qt::{
    conjecture_h4, conjecture_h4_polynomial, decompose_q2_brackets, enumerate_hilbert_candidates, h4_product_formula,
    H4_BRACKET_LENGTHS,
};
use rootposet::search::{configurations, h4_skeleton, V1Search, V2Search};
use rootposet::{
    build_h3_poset, fixtures, is_isomorphic, panyushev_orbits, parse_properties, restricted_panyushev_orbits, Checker,
    GradedPoset, Property, RootSystemProfile, SearchOptions, SearchOutcome,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "rootposet", version, about = "Enumerate and verify candidate root posets")]
struct Cli {
    /// Worker threads for searches.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Decision levels expanded before the search is split into work units.
    #[arg(long, global = true, default_value_t = 0)]
    seed_prefix_depth: usize,
    /// Only print warnings and errors on standard error.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a poset file against a profile.
    Verify {
        file: PathBuf,
        #[arg(long)]
        profile: String,
        #[arg(long, default_value = "all")]
        properties: String,
        /// Print one JSON object per property.
        #[arg(long)]
        json: bool,
    },
    /// Search for posets with the invariants of a profile.
    Search(SearchArgs),
    /// Panyushev orbit lengths and averages of a poset file.
    Orbits {
        file: PathBuf,
        /// Use the poset with its minimal elements removed.
        #[arg(long)]
        restricted: bool,
    },
    /// q,t-Catalan computations for H4.
    Qt {
        #[command(subcommand)]
        command: QtCommand,
    },
    /// Build the H3 poset from the roots of D6.
    H3FromD6 {
        /// Where to write the poset; the pair trace goes next to it.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cover configurations between two ranks.
    Configs {
        lower: usize,
        upper: usize,
        /// Forbid antichains of this size inside the two ranks.
        #[arg(long, default_value_t = 4)]
        limit: usize,
        /// Print every pattern.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum QtCommand {
    /// Decompose the H4 product formula into q^a [b]_{q^2} summands.
    Decompose,
    /// List every Hilbert series candidate with its t = 1 specialization.
    Candidates,
    /// Compare the conjectured H4 polynomial with the product formula.
    CheckConjecture,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    V1,
    V2,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    profile: String,
    #[arg(long, value_enum, default_value = "v2")]
    algorithm: Algorithm,
    #[arg(long, default_value = "1-5")]
    properties: String,
    /// Directory for result posets and the manifest.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Allow runs that take hours or days.
    #[arg(long)]
    unbounded: bool,
    /// Accept order ideal counts of any H4 Hilbert series candidate.
    #[arg(long)]
    ideal_candidates: bool,
    /// Start from the bottom ranks of this poset.
    #[arg(long)]
    seed: Option<PathBuf>,
    /// Run the bare enumeration with only the final check.
    #[arg(long)]
    no_prune: bool,
    /// Exit with status 1 when fewer posets are found.
    #[arg(long, default_value_t = 0)]
    min_results: usize,
}

enum Failure {
    Usage(String),
    Io(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<rootposet::Error> for Failure {
    fn from(e: rootposet::Error) -> Self {
        use rootposet::Error as E;
        match e {
            E::Parse { .. } | E::Capacity(_) | E::IndexOutOfRange { .. } | E::Cycle(_) => Failure::Io(e.into()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { "warn" } else { "info" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    let result = match &cli.command {
        Command::Verify { file, profile, properties, json } => verify(file, profile, properties, *json),
        Command::Search(args) => search(&cli, args),
        Command::Orbits { file, restricted } => orbits(file, *restricted),
        Command::Qt { command } => qt(command),
        Command::H3FromD6 { output } => h3_from_d6(output.as_deref()),
        Command::Configs { lower, upper, limit, list } => configs(*lower, *upper, *limit, *list),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn read_poset(path: &Path) -> Result<GradedPoset, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    GradedPoset::from_text(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::Io)
}

fn verify(file: &Path, profile: &str, properties: &str, json: bool) -> Outcome {
    let p = read_poset(file)?;
    let profile = RootSystemProfile::by_name(profile)?;
    if p.n() != profile.positive_roots() {
        return Err(Failure::Usage(format!(
            "{} has {} elements, {} has {} positive roots",
            file.display(),
            p.n(),
            profile.name,
            profile.positive_roots()
        )));
    }
    let report = Checker::new(&profile, &parse_properties(properties)?)?.check(&p);
    if json {
        print!("{}", report.json_lines());
    } else {
        print!("{report}");
    }
    Ok(report.passed())
}

#[derive(Serialize)]
struct Manifest {
    command: Vec<String>,
    profile: String,
    algorithm: &'static str,
    properties: String,
    ideal_candidates: bool,
    pruned: bool,
    workers: usize,
    seed_prefix_depth: usize,
    complete: bool,
    count: usize,
    units: usize,
    nodes: u64,
    leaves: u64,
    wall_seconds: f64,
    files: Vec<String>,
}

fn write_manifest(dir: &Path, m: &Manifest) -> Result<(), Failure> {
    let path = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(m).context("serializing manifest")?;
    fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn search(cli: &Cli, args: &SearchArgs) -> Outcome {
    let profile = RootSystemProfile::by_name(&args.profile)?;
    let props = parse_properties(&args.properties)?;
    let is_h4 = profile.rank_vector == RootSystemProfile::h4().rank_vector;
    let cut_down = args.ideal_candidates
        || [Property::IdealSizes, Property::Homomesy].iter().any(|p| props.contains(p));
    if !args.unbounded && (args.algorithm == Algorithm::V1 || (is_h4 && !cut_down)) {
        return Err(Failure::Usage(
            "this search runs for hours or days; pass --unbounded to start it anyway".into(),
        ));
    }
    if args.ideal_candidates && !is_h4 {
        return Err(Failure::Usage("--ideal-candidates only applies to H4".into()));
    }
    let opts = SearchOptions { workers: cli.workers, prefix_depth: cli.seed_prefix_depth, prune: !args.no_prune };

    let mut manifest = Manifest {
        command: std::env::args().collect(),
        profile: profile.name.clone(),
        algorithm: match args.algorithm {
            Algorithm::V1 => "v1",
            Algorithm::V2 => "v2",
        },
        properties: format_properties(&props),
        ideal_candidates: args.ideal_candidates,
        pruned: opts.prune,
        workers: opts.workers,
        seed_prefix_depth: opts.prefix_depth,
        complete: false,
        count: 0,
        units: 0,
        nodes: 0,
        leaves: 0,
        wall_seconds: 0.0,
        files: Vec::new(),
    };
    if let Some(dir) = &args.output {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_manifest(dir, &manifest)?;
    }

    let outcome: SearchOutcome = match args.algorithm {
        Algorithm::V1 => {
            if args.seed.is_some() || args.ideal_candidates {
                return Err(Failure::Usage("the skeleton search takes neither --seed nor --ideal-candidates".into()));
            }
            V1Search::new(&profile, &props, &h4_skeleton())?.run(&opts)?
        }
        Algorithm::V2 => {
            let mut checker = Checker::new(&profile, &props)?;
            if args.ideal_candidates {
                let targets = enumerate_hilbert_candidates().iter().map(|c| c.t1_coefficients()).collect();
                checker = checker.with_ideal_targets(targets);
            }
            let mut s = V2Search::with_checker(checker)?;
            if let Some(path) = &args.seed {
                s = s.with_seed(&read_poset(path)?)?;
            }
            s.run(&opts)?
        }
    };

    for (i, p) in outcome.posets.iter().enumerate() {
        let name = format!("poset_{:04}.poset", i + 1);
        if let Some(dir) = &args.output {
            let path = dir.join(&name);
            fs::write(&path, p.to_text()).with_context(|| format!("writing {}", path.display()))?;
        }
        manifest.files.push(name);
    }
    manifest.complete = true;
    manifest.count = outcome.posets.len();
    manifest.units = outcome.units;
    manifest.nodes = outcome.stats.nodes;
    manifest.leaves = outcome.stats.leaves;
    manifest.wall_seconds = outcome.seconds;
    match &args.output {
        Some(dir) => write_manifest(dir, &manifest)?,
        None => {
            for p in &outcome.posets {
                println!("{p}");
            }
        }
    }
    let summary = serde_json::json!({
        "profile": manifest.profile,
        "algorithm": manifest.algorithm,
        "properties": manifest.properties,
        "count": manifest.count,
        "units": manifest.units,
    });
    println!("{summary}");
    Ok(outcome.posets.len() >= args.min_results)
}

fn orbits(file: &Path, restricted: bool) -> Outcome {
    let p = read_poset(file)?;
    let orbits = if restricted { restricted_panyushev_orbits(&p)? } else { panyushev_orbits(&p) };
    for o in &orbits {
        let line = serde_json::json!({
            "start": rootposet::Antichain(o.start).elements().map(|x| x + 1).collect::<Vec<_>>(),
            "length": o.length,
            "average": o.average().to_string(),
        });
        println!("{line}");
    }
    println!("lengths {}", format_multiset(&orbit_lengths(&orbits)));
    Ok(true)
}

fn qt(command: &QtCommand) -> Outcome {
    match command {
        QtCommand::Decompose => {
            let u = h4_product_formula()?;
            let parts = decompose_q2_brackets(&u)?;
            for (a, b) in &parts {
                println!("q^{a} [{b}]_(q^2)");
            }
            let lengths: Vec<String> = parts.iter().map(|p| p.1.to_string()).collect();
            println!("lengths {}", lengths.join(","));
            Ok(true)
        }
        QtCommand::Candidates => {
            for c in enumerate_hilbert_candidates() {
                let t1: Vec<String> = c.t1_coefficients().iter().map(u64::to_string).collect();
                println!("{c}\t{}", t1.join(" "));
            }
            Ok(true)
        }
        QtCommand::CheckConjecture => {
            let product = h4_product_formula()?;
            let specialized = conjecture_h4_polynomial().eval_t_qinv_shift(60)?;
            let lengths: Vec<u32> = decompose_q2_brackets(&product)?.iter().map(|p| p.1).collect();
            let mut expected = conjecture_h4().summands.iter().map(|s| s.len).collect::<Vec<_>>();
            expected.sort_unstable_by(|a, b| b.cmp(a));
            let same = specialized == product;
            let lengths_ok = lengths == H4_BRACKET_LENGTHS && lengths == expected;
            println!("{{\"specialization_matches\":{same},\"bracket_lengths_match\":{lengths_ok}}}");
            Ok(same && lengths_ok)
        }
    }
}

fn h3_from_d6(output: Option<&Path>) -> Outcome {
    let c = build_h3_poset()?;
    let iso = is_isomorphic(&c.poset, &fixtures::h3_poset());
    match output {
        Some(path) => {
            fs::write(path, c.poset.to_text()).with_context(|| format!("writing {}", path.display()))?;
            let trace = path.with_extension("trace");
            fs::write(&trace, c.trace()).with_context(|| format!("writing {}", trace.display()))?;
        }
        None => {
            print!("{}", c.trace());
            print!("{}", c.poset);
        }
    }
    println!("{{\"elements\":{},\"pairs\":{},\"isomorphic_to_h3\":{iso}}}", c.poset.n(), c.pairs.len());
    Ok(iso)
}

fn configs(lower: usize, upper: usize, limit: usize, list: bool) -> Outcome {
    if lower == 0 || upper == 0 || lower > 16 {
        return Err(Failure::Usage("rank sizes must be between 1 and 16".into()));
    }
    let all = configurations(lower, upper, Some(limit), None);
    if list {
        for c in &all {
            let pat: Vec<String> = c.pattern.iter().map(|m| format!("{m:0lower$b}")).collect();
            println!("{}", pat.join(" "));
        }
    }
    println!("{{\"lower\":{lower},\"upper\":{upper},\"limit\":{limit},\"count\":{}}}", all.len());
    Ok(true)
}
