use clap::{ArgGroup, Parser, ValueEnum};
use spectra::germ::{infer_variables, parse_germ};
use spectra::io::{self, ComputationResult};
use spectra::{compute, ComputeOptions, Error};
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Spp,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FixtureName {
    F1,
    F2,
    F3,
}

/// Spectral pairs and mixed Hodge numbers of a convenient non-degenerate
/// germ with simplicial Newton boundary.
#[derive(Debug, Parser)]
#[command(name = "spectra", version)]
#[command(group(ArgGroup::new("input").required(true).args(["germ", "fixture"])))]
struct Cli {
    /// Polynomial, e.g. "x^15+x^6*y^4+x^3*y^6+y^12" or "x15+x6y4+x3y6+y12".
    #[arg(short = 'f', long)]
    germ: Option<String>,
    /// Comma-separated variable names in coordinate order; inferred
    /// alphabetically from the germ when omitted.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Cross-check with the Milnor-algebra oracle and the face-by-face
    /// Hodge numbers (and the reference list for fixtures).
    #[arg(long)]
    check: bool,
    /// Assume non-degeneracy instead of certifying it.
    #[arg(long)]
    no_nondegeneracy_check: bool,
    /// Built-in germ.
    #[arg(long, value_enum)]
    fixture: Option<FixtureName>,
    /// Write the output here instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn run(cli: &Cli) -> Result<String, Error> {
    let fixture = cli.fixture.map(|f| {
        let name = match f {
            FixtureName::F1 => "f1",
            FixtureName::F2 => "f2",
            FixtureName::F3 => "f3",
        };
        io::fixture(name).expect("built-in fixture")
    });
    let germ = match (fixture, &cli.germ) {
        (Some(fx), _) => fx.germ(),
        (None, Some(text)) => {
            let vars = cli.vars.clone().unwrap_or_else(|| infer_variables(text));
            parse_germ(text, &vars)?
        }
        (None, None) => unreachable!("clap requires an input"),
    };
    let opts = ComputeOptions { check_nondegeneracy: !cli.no_nondegeneracy_check, run_oracles: cli.check };
    let c = compute(&germ, opts)?;
    if let (true, Some(fx)) = (cli.check, fixture) {
        let diff = io::diff_spp(&c.spectral_pairs, &fx.reference());
        if !diff.is_empty() {
            return Err(Error::Internal(format!("spectral pairs differ from the {} reference:\n{diff}", fx.name)));
        }
    }
    Ok(match cli.format {
        Format::Json => ComputationResult::from_computation(&c).to_json() + "\n",
        Format::Spp => io::emit_spp(&c.spectral_pairs) + "\n",
        Format::Table => io::format_table(&c),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(4);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Degenerate(_)) {
                eprintln!("hint: --no-nondegeneracy-check assumes non-degeneracy instead of certifying it");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
