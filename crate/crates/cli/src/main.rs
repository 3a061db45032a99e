use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};
use cofinal::coset_actions::DEFAULT_MAX_IMAGE;
use cofinal::error::{Error, Result};
use cofinal::filtrations::{Caps, GrowthFunction};
use cofinal::presentations::CATALOG_NAMES;
use cofinal::report::{error_exit_code, run, Construction, Emit, GroupSource, RunConfig};

/// Builds filtrations of finitely presented groups and reports exact
/// homology, rank bounds and growth verdicts per term.
#[derive(Parser, Debug)]
#[command(name = "cofinal", version)]
#[command(group(ArgGroup::new("source").required(true).args(["group", "file"])))]
struct Cli {
    /// Catalog group name.
    #[arg(long)]
    group: Option<String>,

    /// Presentation file in the `gens:`/`rel:` format.
    #[arg(long)]
    file: Option<PathBuf>,

    #[arg(long, value_parser = Construction::NAMES)]
    construction: String,

    /// Growth function: `power:1/2`, `log:2`, `table:1,5,2`, optionally
    /// prefixed by a constant as in `3*log:2`.
    #[arg(long)]
    target: Option<String>,

    #[arg(long, alias = "depth", default_value_t = 2)]
    terms: usize,

    /// Prime of the derived series.
    #[arg(long = "p", default_value_t = 2)]
    p: u64,

    /// Primes for mod-p Betti numbers, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    primes: Vec<u64>,

    #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
    emit: String,

    /// Word to test against the terms; repeatable.
    #[arg(long)]
    probe: Vec<String>,

    #[arg(long, default_value_t = 100_000)]
    max_index: usize,

    #[arg(long, default_value_t = DEFAULT_MAX_IMAGE)]
    max_image: usize,

    /// Write the coset tables of the terms as JSON to this path.
    #[arg(long)]
    dump: Option<PathBuf>,

    /// Base filtration under fast_betti, normalized and exponent.
    #[arg(long, value_parser = ["derived_p", "sanov"], default_value = "derived_p")]
    base: String,

    #[arg(long, default_value_t = 3)]
    sanov_modulus: u64,

    /// Finite-index subgroup for normalized/exponent, as `m:r1,r2,...`:
    /// the preimage of the kernel of the character on the free quotient.
    #[arg(long)]
    cover: Option<String>,

    /// Exponent bound to certify.
    #[arg(long, value_parser = ["betti", "rank"], default_value = "betti")]
    bound: String,
}

fn config(cli: &Cli) -> Result<RunConfig> {
    let source = match (&cli.group, &cli.file) {
        (Some(name), _) => GroupSource::Catalog(name.clone()),
        (None, Some(path)) => GroupSource::File(path.clone()),
        (None, None) => return Err(Error::Input("one of --group or --file is required".into())),
    };
    let mut cfg = RunConfig::new(source, cli.construction.parse()?);
    cfg.terms = cli.terms;
    cfg.target = cli.target.as_deref().map(str::parse::<GrowthFunction>).transpose()?;
    cfg.prime = cli.p;
    cfg.primes = cli.primes.clone();
    cfg.emit = cli.emit.parse()?;
    cfg.caps = Caps {
        max_index: cli.max_index,
        max_image: cli.max_image,
    };
    cfg.probes = cli.probe.clone();
    cfg.base = cli.base.parse()?;
    cfg.sanov_modulus = cli.sanov_modulus;
    cfg.cover = cli.cover.as_deref().map(str::parse).transpose()?;
    cfg.bound = cli.bound.parse()?;
    cfg.dump = cli.dump.is_some();
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<i32> {
    let cfg = config(cli)?;
    let report = run(&cfg)?;
    print!("{}", report.render(cfg.emit)?);
    if let Some(path) = &cli.dump {
        std::fs::write(path, report.tables_json()?)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    if cfg.emit == Emit::Csv {
        for p in &report.probes {
            match p.excluded_at {
                Some(i) => eprintln!("probe {}: excluded at term {i}", p.word),
                None => eprintln!("probe {}: not excluded by the computed terms", p.word),
            }
        }
    }
    if let Some(t) = &report.truncation {
        eprintln!("truncated at term {}: {}", t.at_term, t.reason);
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 64 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::UnknownCatalog(_)) {
                eprintln!("known groups: {}", CATALOG_NAMES.join(", "));
            }
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
