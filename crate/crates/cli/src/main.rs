mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::Caps;

#[derive(Parser, Debug)]
#[command(name = "curvlie", version, about = "Curved Lie algebras, cdgas and Maurer-Cartan theory over the rationals")]
pub struct Cli {
    /// Weight cap N for free Lie algebras (L, coproducts)
    #[arg(long, global = true, env = "CURVLIE_WEIGHT", default_value_t = 3)]
    pub weight: usize,
    /// Word-length cap W for Chevalley-Eilenberg algebras
    #[arg(long, global = true, env = "CURVLIE_WORDS", default_value_t = 3)]
    pub words: usize,
    /// Polynomial degree cap D for path and simplex forms
    #[arg(long, global = true, env = "CURVLIE_POLY", default_value_t = 3)]
    pub poly: usize,
    /// Homological degree window "lo,hi"
    #[arg(long, global = true, allow_hyphen_values = true, default_value = "-6,2")]
    pub window: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the constructed object as JSON to this path
    #[arg(long, global = true)]
    pub emit: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FuzzKind {
    Lie,
    Nilpotent,
    Cdga,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the axioms of an algebra, cdga or morphism file
    Validate {
        file: PathBuf,
        /// Source algebra, for morphism files
        #[arg(long)]
        source: Option<PathBuf>,
        /// Target algebra, for morphism files
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Twist by a degree -1 element
    Twist {
        algebra: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
    },
    Product {
        #[arg(required = true)]
        algebras: Vec<PathBuf>,
    },
    /// Equaliser of two parallel morphisms g → h
    Equalise {
        source: PathBuf,
        target: PathBuf,
        first: PathBuf,
        second: PathBuf,
    },
    /// Coproduct truncated at the weight cap
    Coproduct { left: PathBuf, right: PathBuf },
    /// Coequaliser of two parallel morphisms g → h
    Coequalise {
        source: PathBuf,
        target: PathBuf,
        first: PathBuf,
        second: PathBuf,
    },
    /// Lower central series
    Lcs { algebra: PathBuf },
    /// Associated graded of the lower central series
    Gr { algebra: PathBuf },
    /// Homology of the differential of an algebra or cdga
    Homology { file: PathBuf },
    /// The free-Lie model L(A)
    #[command(name = "functor-L")]
    FunctorL {
        cdga: PathBuf,
        /// Retraction values on degree-0 basis vectors, "name:coeff,..."
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<String>,
    },
    /// The Chevalley-Eilenberg cdga C(g)
    #[command(name = "functor-C")]
    FunctorC { algebra: PathBuf },
    /// Round trips of Hom(C(g), A) ≅ Hom(L(A), g) on sampled maps
    Adjunction {
        algebra: PathBuf,
        cdga: PathBuf,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// The unit C(L(A)) → A
    Unit { cdga: PathBuf },
    /// The counit L(C(g)) → g
    Counit { algebra: PathBuf },
    /// Is ξ a Maurer-Cartan element of g (or of g ⊗ A with --cdga)?
    #[command(name = "mc-check")]
    McCheck {
        algebra: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long)]
        cdga: Option<PathBuf>,
    },
    /// Solve the MC equation when it is linear
    #[command(name = "mc-solve")]
    McSolve {
        algebra: PathBuf,
        #[arg(long)]
        cdga: Option<PathBuf>,
    },
    /// Check a path-algebra homotopy h from ξ to η
    #[command(name = "mc-homotopy")]
    McHomotopy {
        algebra: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        /// Element of g ⊗ A[z,dz]; defaults to the constant path at ξ
        #[arg(long, allow_hyphen_values = true)]
        witness: Option<String>,
        #[arg(long)]
        cdga: Option<PathBuf>,
    },
    /// Compare MC(g ⊗ A) with chain algebra maps C(g) → A
    #[command(name = "mc-bijection")]
    McBijection { algebra: PathBuf, cdga: PathBuf },
    /// Filtered quasi-isomorphism check along lower central series
    Fqiso {
        morphism: PathBuf,
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Generate seeded random algebras and validate them
    Fuzz {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = FuzzKind::Lie)]
        kind: FuzzKind,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
    },
}

fn parse_window(text: &str) -> anyhow::Result<(i64, i64)> {
    let (lo, hi) = text
        .split_once(',')
        .or_else(|| text.split_once(':'))
        .ok_or_else(|| anyhow::anyhow!("window must be \"lo,hi\", got {text:?}"))?;
    let (lo, hi): (i64, i64) = (lo.trim().parse()?, hi.trim().parse()?);
    if lo > hi {
        anyhow::bail!("empty window [{lo}, {hi}]");
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = parse_window(&cli.window).and_then(|window| {
        if cli.weight == 0 || cli.words == 0 || cli.poly == 0 {
            anyhow::bail!("caps must be positive");
        }
        let caps = Caps { weight: cli.weight, words: cli.words, poly: cli.poly };
        commands::run(&cli, caps, window)
    });
    match result {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable")),
            }
            if report.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
