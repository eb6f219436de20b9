//! Command-line surface over the rulebase library.
//!
//! Exit codes: 0 success (or positive verdict), 1 negative verdict from
//! `check`/`entail2`/`derive`, 2 input or usage error.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rulebase::bases::{
    all_rules_count, bstar, implication_basis, minmax_variant, minmin_variant,
    representative_rules, Basis, BasisKind, CountConvention,
};
use rulebase::closure::enumerate_closures;
use rulebase::dataset::parse_transactions;
use rulebase::entailment::{counterexample_search, two_premise_entails, EntailmentReason};
use rulebase::implications::gd_basis;
use rulebase::redundancy::{closure_redundant, derive, plainly_redundant, Mode};
use rulebase::{Dataset, Frac};

#[derive(Parser)]
#[command(
    name = "rulebase",
    about = "Closed-itemset mining and minimum-size association rule bases",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine the closed-itemset lattice and print its text export
    Mine(MineArgs),
    /// Build a rule basis and print it
    Basis(BasisArgs),
    /// Decide redundancy between a premise rule and a conclusion rule
    Check(CheckArgs),
    /// Print a calculus derivation of one rule from another
    Derive(CheckArgs),
    /// Decide entailment of a rule from two partial premises
    Entail2(Entail2Args),
    /// Emit a CSV of basis sizes across a confidence range
    Sweep(SweepArgs),
    /// Print rule counts: traditional, implications, GD, B*, GD+B*
    Compare(CompareArgs),
}

#[derive(Args)]
struct InputArgs {
    /// FIMI transaction file: one transaction per line, items as tokens
    input: PathBuf,
    /// Support floor: an absolute count, or a fraction of the dataset size
    /// (values with '.' or '/'), rounded up
    #[arg(long, default_value = "1")]
    support: String,
}

#[derive(Args)]
struct MineArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Write the export here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Rr,
    Bstar,
    Gd,
    Iterfree,
    BstarMinmax,
    BstarMinmin,
}

#[derive(Args)]
struct BasisArgs {
    /// Which basis to build
    #[arg(value_enum)]
    kind: KindArg,
    #[command(flatten)]
    input: InputArgs,
    /// Confidence threshold, as m/n or a decimal (read exactly)
    #[arg(long, default_value = "1")]
    gamma: Frac,
    /// Hide rules with an empty antecedent from the listing
    #[arg(long)]
    hide_empty_antecedent: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Plain,
    Closure,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Premise rule, e.g. "a -> b c"
    premise: String,
    /// Conclusion rule to test for redundancy
    conclusion: String,
    /// Redundancy notion; closure mode uses the dataset's GD basis
    #[arg(long, value_enum, default_value = "plain")]
    mode: ModeArg,
    /// Print the derivation steps
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct Entail2Args {
    #[command(flatten)]
    input: InputArgs,
    /// First premise rule
    premise1: String,
    /// Second premise rule
    premise2: String,
    /// Conclusion rule
    conclusion: String,
    /// Confidence threshold in (0, 1)
    #[arg(long)]
    gamma: Frac,
    /// On a negative verdict, print a counterexample dataset in FIMI format
    #[arg(long)]
    counterexample: bool,
    /// Multiplicity bound for the counterexample search
    #[arg(long, default_value_t = 30)]
    bound: u64,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    input: InputArgs,
    /// First confidence value
    #[arg(long)]
    from: Frac,
    /// Last confidence value
    #[arg(long)]
    to: Frac,
    /// Step between consecutive values
    #[arg(long)]
    step: Frac,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Traditional,
    General,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Confidence threshold
    #[arg(long)]
    gamma: Frac,
    /// Counting convention for the all-rules column
    #[arg(long, value_enum, default_value = "traditional")]
    convention: ConventionArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Mine(args) => {
            let (d, floor) = load(&args.input)?;
            let lattice = enumerate_closures(&d, floor);
            emit(&args.out, &lattice.export_text(d.names()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Basis(args) => {
            let (d, floor) = load(&args.input)?;
            let lattice = enumerate_closures(&d, floor);
            let basis = build_basis(&d, &lattice, args.kind, args.gamma)?;
            let mut text = basis.export_text(&d);
            if args.hide_empty_antecedent {
                text = text
                    .lines()
                    .filter(|l| l.starts_with('#') || !l.starts_with("->"))
                    .map(|l| format!("{l}\n"))
                    .collect();
            }
            emit(&args.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check(args) => run_check(args, false),
        Command::Derive(args) => run_check(args, true),
        Command::Entail2(args) => run_entail2(args),
        Command::Sweep(args) => {
            let (d, floor) = load(&args.input)?;
            let csv = sweep_csv(&d, floor, args.from, args.to, args.step)?;
            emit(&args.out, &csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare(args) => {
            let (d, floor) = load(&args.input)?;
            let lattice = enumerate_closures(&d, floor);
            let convention = match args.convention {
                ConventionArg::Traditional => CountConvention::TraditionalSingleton,
                ConventionArg::General => CountConvention::General,
            };
            let traditional = all_rules_count(&d, args.gamma, floor, convention);
            let rr_imp = implication_basis(&d, &lattice, BasisKind::IterFree).len();
            let gd = implication_basis(&d, &lattice, BasisKind::GD).len();
            let bs = bstar(&d, &lattice, args.gamma).map_err(|e| e.to_string())?.len();
            println!("traditional rrimp gd bstar sum");
            println!("{traditional} {rr_imp} {gd} {bs} {}", gd + bs);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load(args: &InputArgs) -> Result<(Dataset, u64), String> {
    let file = File::open(&args.input)
        .map_err(|e| format!("cannot open {}: {e}", args.input.display()))?;
    let d = parse_transactions(BufReader::new(file)).map_err(|e| e.to_string())?;
    let floor = parse_support(&args.support, d.len())?;
    Ok((d, floor))
}

fn parse_support(text: &str, n: u64) -> Result<u64, String> {
    let text = text.trim();
    if text.contains('/') || text.contains('.') {
        let f: Frac = text.parse().map_err(|e: rulebase::Error| e.to_string())?;
        Ok(f.ceil_mul(n))
    } else {
        text.parse::<u64>().map_err(|_| format!("cannot parse support {text:?}"))
    }
}

fn build_basis(
    d: &Dataset,
    lattice: &rulebase::ClosureLattice,
    kind: KindArg,
    gamma: Frac,
) -> Result<Basis, String> {
    let err = |e: rulebase::Error| e.to_string();
    match kind {
        KindArg::Rr => representative_rules(d, lattice, gamma).map_err(err),
        KindArg::Bstar => bstar(d, lattice, gamma).map_err(err),
        KindArg::Gd => Ok(implication_basis(d, lattice, BasisKind::GD)),
        KindArg::Iterfree => Ok(implication_basis(d, lattice, BasisKind::IterFree)),
        KindArg::BstarMinmax => {
            Ok(minmax_variant(&bstar(d, lattice, gamma).map_err(err)?, lattice))
        }
        KindArg::BstarMinmin => {
            Ok(minmin_variant(&bstar(d, lattice, gamma).map_err(err)?, lattice))
        }
    }
}

fn run_check(args: CheckArgs, always_trace: bool) -> Result<ExitCode, String> {
    let (d, floor) = load(&args.input)?;
    let premise = d.parse_rule(&args.premise).map_err(|e| e.to_string())?;
    let conclusion = d.parse_rule(&args.conclusion).map_err(|e| e.to_string())?;
    let (mode, bimp) = match args.mode {
        ModeArg::Plain => (Mode::Plain, rulebase::ImplicationSet::empty()),
        ModeArg::Closure => {
            let lattice = enumerate_closures(&d, floor);
            (Mode::Closure, gd_basis(&lattice, &d))
        }
    };
    let redundant = match mode {
        Mode::Plain => plainly_redundant(&premise, &conclusion),
        Mode::Closure => closure_redundant(&bimp, &premise, &conclusion),
    };
    if !redundant {
        println!("not redundant");
        return Ok(ExitCode::from(1));
    }
    let trace = derive(&bimp, &premise, &conclusion, mode).map_err(|e| e.to_string())?;
    if !trace.check(&bimp) {
        return Err("internal error: derivation failed to replay".into());
    }
    println!("redundant");
    if always_trace || args.trace {
        print!("{}", trace.export_text(d.names()));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_entail2(args: Entail2Args) -> Result<ExitCode, String> {
    let (d, floor) = load(&args.input)?;
    let r1 = d.parse_rule(&args.premise1).map_err(|e| e.to_string())?;
    let r2 = d.parse_rule(&args.premise2).map_err(|e| e.to_string())?;
    let r0 = d.parse_rule(&args.conclusion).map_err(|e| e.to_string())?;
    let lattice = enumerate_closures(&d, floor);
    let bimp = gd_basis(&lattice, &d);
    let verdict =
        two_premise_entails(&bimp, &r1, &r2, &r0, args.gamma).map_err(|e| e.to_string())?;
    if verdict.holds {
        let reason = match verdict.reason {
            EntailmentReason::Trivial => "trivial",
            EntailmentReason::SinglePremise1 => "single premise 1",
            EntailmentReason::SinglePremise2 => "single premise 2",
            EntailmentReason::SevenConditions => "seven structural conditions",
            EntailmentReason::None => unreachable!("positive verdict carries a reason"),
        };
        println!("entailed ({reason})");
        return Ok(ExitCode::SUCCESS);
    }
    const ROMAN: [&str; 7] = ["i", "ii", "iii", "iv", "v", "vi", "vii"];
    let failed: Vec<&str> = verdict
        .failed_conditions
        .iter()
        .map(|&i| ROMAN[(i - 1) as usize])
        .collect();
    if failed.is_empty() {
        println!("not entailed (threshold below 1/2: proper two-premise entailment never holds)");
    } else {
        println!("not entailed (failed conditions: {})", failed.join(" "));
    }
    if args.counterexample {
        match counterexample_search(&bimp, &r1, &r2, &r0, args.gamma, args.bound) {
            Some(cex) => print!("{}", cex.to_fimi()),
            None => println!("no counterexample within bound {}", args.bound),
        }
    }
    Ok(ExitCode::from(1))
}

fn sweep_csv(d: &Dataset, floor: u64, from: Frac, to: Frac, step: Frac) -> Result<String, String> {
    if step.is_zero() {
        return Err("step must be positive".into());
    }
    let lattice = enumerate_closures(d, floor);
    let gd = gd_basis(&lattice, d).len();
    let mut out = String::from("gamma,rr,bstar,gd,bstar_plus_gd\n");
    let mut gammas = Vec::new();
    let descending = from >= to;
    let mut g = from;
    loop {
        gammas.push(g);
        if descending {
            match g.checked_sub(step) {
                Some(next) if next >= to => g = next,
                _ => break,
            }
        } else {
            let next = g.add(step);
            if next <= to {
                g = next;
            } else {
                break;
            }
        }
    }
    for g in gammas {
        let rr = representative_rules(d, &lattice, g).map_err(|e| e.to_string())?.len();
        let bs = bstar(d, &lattice, g).map_err(|e| e.to_string())?.len();
        out.push_str(&format!("{:.4},{},{},{},{}\n", g.approx(), rr, bs, gd, bs + gd));
    }
    Ok(out)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            let mut f = File::create(path)
                .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            f.write_all(text.as_bytes()).map_err(|e| e.to_string())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
