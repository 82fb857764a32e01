mod commands;

use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

/// Reduction of hyperelliptic integrals to elliptic integrals.
#[derive(Parser, Debug)]
#[command(name = "hyperell", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Upper bound on the number of elliptic factors from point counts.
    RankBound {
        #[command(flatten)]
        curve: CurveArgs,
        /// Primes to test (default: odd primes up to 31).
        #[arg(long = "prime")]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Search for elliptic morphisms (F, G) with numerator and denominator degree at most m.
    Factors {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(short = 'm', long = "bound", default_value_t = 2)]
        bound: usize,
        /// Primes for the rank bound that stops the search early.
        #[arg(long = "prime")]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Integrate num/(den·sqrt(radicand)) in terms of elliptic integrals.
    Integrate {
        #[arg(long, default_value = "1")]
        num: String,
        #[arg(long, default_value = "1")]
        den: String,
        #[arg(long, visible_alias = "curve")]
        radicand: String,
        /// Morphisms on the normalized curve (JSON from `factors --json`); searched for when absent.
        #[arg(long)]
        morphisms: Option<String>,
        #[arg(short = 'm', long = "bound", default_value_t = 2)]
        bound: usize,
        #[arg(long = "prime")]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Differentiate a stored expression and compare with an integrand on its curve.
    Verify {
        /// Expression JSON from `integrate --json`.
        #[arg(long)]
        expr: String,
        #[arg(long)]
        num: Option<String>,
        #[arg(long)]
        den: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// The zeta numerator Psi_p of the reduced curve.
    Zeta {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long = "prime", required = true)]
        primes: Vec<u64>,
        /// Also derive Psi over F_{p^k}.
        #[arg(long)]
        power: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct CurveArgs {
    /// Polynomial S of y^2 = S(x).
    #[arg(long, visible_alias = "radicand")]
    curve: String,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Defining polynomial of a field extension, in one new symbol (repeatable).
    #[arg(long = "field")]
    fields: Vec<String>,
    #[arg(long)]
    json: bool,
    /// Largest absolute degree of any number field built.
    #[arg(long)]
    budget_tower: Option<usize>,
    /// Largest number of field elements enumerated when counting points.
    #[arg(long)]
    budget_count: Option<u128>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::RankBound { common, .. }
        | Command::Factors { common, .. }
        | Command::Integrate { common, .. }
        | Command::Verify { common, .. }
        | Command::Zeta { common, .. } => common.clone(),
    };
    if let Some(secs) = common.time_limit {
        std::thread::spawn(move || {
            std::thread::sleep(Duration::from_secs(secs));
            eprintln!("error: time limit of {secs} s exceeded");
            std::process::exit(commands::EXIT_RESOURCE as i32);
        });
    }
    let result = match cli.command {
        Command::RankBound {
            curve,
            primes,
            common,
        } => commands::rank_bound(&curve.curve, &primes, &common.into()),
        Command::Factors {
            curve,
            bound,
            primes,
            common,
        } => commands::factors(&curve.curve, bound, &primes, &common.into()),
        Command::Integrate {
            num,
            den,
            radicand,
            morphisms,
            bound,
            primes,
            common,
        } => commands::integrate(
            &num,
            &den,
            &radicand,
            morphisms.as_deref(),
            bound,
            &primes,
            &common.into(),
        ),
        Command::Verify {
            expr,
            num,
            den,
            common,
        } => commands::verify(&expr, num.as_deref(), den.as_deref(), &common.into()),
        Command::Zeta {
            curve,
            primes,
            power,
            common,
        } => commands::zeta(&curve.curve, &primes, power, &common.into()),
    };
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

impl From<Common> for commands::Config {
    fn from(c: Common) -> Self {
        commands::Config {
            fields: c.fields,
            json: c.json,
            budget_tower: c.budget_tower,
            budget_count: c.budget_count,
        }
    }
}
