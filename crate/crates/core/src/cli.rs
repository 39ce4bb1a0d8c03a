//! Command-line front end. [`run`] parses an argument vector and returns the
//! report and exit code without touching the process, so it is testable.
//!
//! Exit codes: 0 decided/constructed, 1 negative answer, 2 usage or input
//! error, 3 budget exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::budget::Budget;
use crate::error::Error;
use crate::hom::{find_homomorphism, FiniteSandwich, SandwichOutcome, Template};
use crate::minion::{
    check_condition, classify_table, count_polymorphisms, enumerate_polymorphisms, free_structure, parse_condition,
    search_minion_homomorphism, trivial_witness, FreeMinion, MinionSlice,
};
use crate::reduce::random::{random_structure, seeded};
use crate::reduce::{
    adjunction_sides, apply_gadget_replacement, arc_adjunction_sides, arc_graph, arc_graph_right_adjoint,
    k_reduction, parse_gadget, pp_power, KReduction,
};
use crate::relax::{aip_accepts, blp_accepts, blp_aip, round_one_in_three, AipOutcome};
use crate::structure::generators::{builtin, nae, one_in_three};
use crate::structure::{parse_homomorphism, parse_structure, serialize_structure, validate_structure, Structure};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    /// Text for standard output.
    pub report: String,
}

impl CommandResult {
    fn ok(report: String) -> Self {
        CommandResult { exit_code: EXIT_OK, report }
    }

    fn negative(report: String) -> Self {
        CommandResult {
            exit_code: EXIT_NEGATIVE,
            report,
        }
    }

    fn decided(yes: bool, report: String) -> Self {
        if yes {
            Self::ok(report)
        } else {
            Self::negative(report)
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pcsplab", version, about = "Experiments with promise CSPs, polymorphism minions and reductions")]
struct Cli {
    /// Budget overrides: a single number or `power=N,tuples=N,nodes=N,enum=N`.
    /// Applied on top of PCSPLAB_BUDGET.
    #[arg(long, global = true)]
    budget: Option<String>,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide an instance of PCSP(A, B).
    Solve {
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
        template: Vec<PathBuf>,
        #[arg(long)]
        instance: PathBuf,
        /// brute, sandwich:S.st:hom.map, blp, aip or blp+aip.
        #[arg(long, default_value = "brute")]
        algo: String,
    },
    /// Polymorphisms and minor conditions.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Instance and template transformations.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Free structure of Pol(A, B) generated by a structure.
    Free {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        generator: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Property harnesses.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Debug, Subcommand)]
enum PolyCommand {
    /// List Pol^(n)(A, B), one table per line.
    Enum {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'n')]
        n: usize,
        /// Append symmetry and essential coordinates.
        #[arg(long)]
        classify: bool,
    },
    /// Count Pol^(n)(A, B).
    Count {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Look for a solution of a minor condition in Pol(A, B). Arities up to
    /// `-n` are enumerated; larger ones are searched implicitly.
    Condition {
        condition: PathBuf,
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Whether projections satisfy a minor condition.
    Trivial { condition: PathBuf },
    /// Minion homomorphism Pol(A, B) → Pol(C, D) on arities 1..=n.
    Minionhom {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        d: PathBuf,
        #[arg(short = 'n')]
        n: usize,
    },
}

#[derive(Debug, Args)]
struct OutArg {
    /// Write the structure here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum ReduceCommand {
    /// Gadget replacement of an instance.
    Gadget {
        bundle: PathBuf,
        instance: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// pp-power of a template.
    Pppower {
        bundle: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Arc graph of a digraph.
    Arcgraph {
        g: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Right adjoint of the arc graph.
    #[command(name = "arcgraph-right")]
    ArcgraphRight {
        h: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// k-reduction of an instance of PCSP(A, B).
    K {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        instance: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// I → ρ(B′) ⟺ φ(I) → B′ on random pairs.
    Adjunction {
        bundle: PathBuf,
        #[arg(long, default_value_t = 100)]
        random: usize,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// δ(G) → H ⟺ G → δ_R(H) on random digraph pairs.
    #[command(name = "arc-adjunction")]
    ArcAdjunction {
        #[arg(long, default_value_t = 100)]
        random: usize,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return CommandResult {
                exit_code: code,
                report: e.render().to_string(),
            };
        }
    };
    match execute(cli) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => CommandResult {
            exit_code: EXIT_USAGE,
            report: format!("error: {msg}\n"),
        },
        Err(Failure::Lib(e)) => CommandResult {
            exit_code: if e.is_budget() { EXIT_BUDGET } else { EXIT_USAGE },
            report: format!("error: {e}\n"),
        },
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Reads, validates and canonicalizes a structure file. A path that does not
/// exist is tried as a built-in name (`K3`, `H2`, `T`, `C5u`, ...), with or
/// without a `.st` suffix.
pub fn load_structure(path: &Path) -> crate::Result<Structure> {
    if !path.exists() {
        let name = path.to_string_lossy();
        if let Some(s) = builtin(name.strip_suffix(".st").unwrap_or(&name)) {
            return Ok(s);
        }
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse {
            line: 0,
            message: format!("{}: {e}", path.display()),
        })?;
    let mut s = parse_structure(&text)?;
    validate_structure(&s).map_err(Error::InvalidStructure)?;
    s.canonicalize();
    Ok(s)
}

fn structure(path: &Path) -> CliResult<Structure> {
    load_structure(path).map_err(|e| match e {
        Error::Parse { line, message } if line > 0 => Failure::Usage(format!("{}:{line}: {message}", path.display())),
        Error::Parse { message, .. } => Failure::Usage(message),
        other => Failure::Usage(format!("{}: {other}", path.display())),
    })
}

fn emit(s: &Structure, out: &OutArg, summary: String) -> CliResult<CommandResult> {
    let text = serialize_structure(s);
    match &out.out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Ok(CommandResult::ok(format!("{summary}# wrote {}\n", p.display())))
        }
        None => Ok(CommandResult::ok(format!("{summary}{text}"))),
    }
}

fn map_line(map: &[usize]) -> String {
    map.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn execute(cli: Cli) -> CliResult<CommandResult> {
    let mut budget = Budget::from_env()?;
    if let Some(spec) = &cli.budget {
        budget = budget.with_overrides(spec)?;
    }
    let cfg = budget.search;
    match cli.command {
        Command::Solve {
            template,
            instance,
            algo,
        } => {
            let a = structure(&template[0])?;
            let b = structure(&template[1])?;
            let i = structure(&instance)?;
            let t = Template::new(a, b, cfg)?;
            solve(&t, &i, &algo, cfg)
        }
        Command::Poly(cmd) => poly(cmd, &budget),
        Command::Reduce(cmd) => reduce(cmd, &budget),
        Command::Free { a, b, generator, out } => {
            let (a, b, g) = (structure(&a)?, structure(&b)?, structure(&generator)?);
            let f = free_structure(FreeMinion::Polymorphisms { a: &a, b: &b }, &g, &budget)?;
            let summary = format!(
                "# free structure: {} elements\n# evaluation map: {}\n",
                f.structure.domain_size(),
                map_line(&f.evaluation_map())
            );
            emit(&f.structure, &out, summary)
        }
        Command::Check(cmd) => check(cmd, cli.seed, &budget),
    }
}

fn solve(t: &Template, i: &Structure, algo: &str, cfg: crate::HomSearchConfig) -> CliResult<CommandResult> {
    let mut report = String::new();
    let accepted = if let Some(rest) = algo.strip_prefix("sandwich:") {
        let (s_path, h_path) = rest
            .split_once(':')
            .ok_or_else(|| Failure::Usage("expected sandwich:S.st:hom.map".into()))?;
        let s = structure(Path::new(s_path))?;
        let h = parse_homomorphism(&read(Path::new(h_path))?)?;
        let solver = FiniteSandwich::new(t.clone(), s, h, cfg)?;
        match solver.solve(i)? {
            SandwichOutcome::Accept(h) => {
                let _ = writeln!(report, "assignment: {}", map_line(h.map()));
                true
            }
            SandwichOutcome::Reject => false,
        }
    } else {
        match algo {
            "brute" => match find_homomorphism(i, t.b(), cfg)? {
                Some(h) => {
                    let _ = writeln!(report, "assignment: {}", map_line(h.map()));
                    true
                }
                None => false,
            },
            "blp" => blp_accepts(t.a(), i)?,
            "aip" => match aip_accepts(t.a(), i)? {
                AipOutcome::Solution(x) => {
                    if t.a().same_shape(&one_in_three()) && t.b().same_shape(&nae(2)) {
                        let h = round_one_in_three(i, &x)?;
                        let _ = writeln!(report, "assignment: {}", map_line(h.map()));
                    }
                    true
                }
                AipOutcome::Infeasible(c) => {
                    let ys: Vec<String> = c.y.iter().map(ToString::to_string).collect();
                    let _ = writeln!(report, "certificate: {}", ys.join(" "));
                    false
                }
            },
            "blp+aip" => {
                let out = blp_aip(t.a(), i)?;
                let _ = writeln!(report, "blp support: {} columns", out.support.len());
                out.accepted
            }
            other => return Err(Failure::Usage(format!("unknown algorithm `{other}`"))),
        }
    };
    let verdict = if accepted { "accept" } else { "reject" };
    Ok(CommandResult::decided(accepted, format!("{verdict}\n{report}")))
}

fn poly(cmd: PolyCommand, budget: &Budget) -> CliResult<CommandResult> {
    match cmd {
        PolyCommand::Enum { a, b, n, classify } => {
            let (a, b) = (structure(&a)?, structure(&b)?);
            let slice = enumerate_polymorphisms(&a, &b, n, budget)?;
            let tables = slice.tables(n)?;
            let mut report = String::new();
            for t in tables {
                let _ = write!(report, "{t}");
                if classify {
                    let c = classify_table(t);
                    let _ = write!(
                        report,
                        " symmetric={} parity_symmetric={} alternating={} essential={:?}",
                        c.symmetric, c.parity_symmetric, c.alternating, c.essential
                    );
                }
                report.push('\n');
            }
            let _ = writeln!(report, "count: {}", tables.len());
            Ok(CommandResult::ok(report))
        }
        PolyCommand::Count { a, b, n } => {
            let (a, b) = (structure(&a)?, structure(&b)?);
            Ok(CommandResult::ok(format!("{}\n", count_polymorphisms(&a, &b, n, budget)?)))
        }
        PolyCommand::Condition { condition, a, b, n } => {
            let cond = parse_condition(&read(&condition)?)?;
            let (a, b) = (structure(&a)?, structure(&b)?);
            let mut arities: Vec<usize> = cond.symbols().iter().map(|s| s.1).collect();
            arities.sort_unstable();
            arities.dedup();
            let (small, large): (Vec<usize>, Vec<usize>) = arities.iter().partition(|&&m| m <= n);
            let slice = MinionSlice::polymorphisms(&a, &b, &small, budget)?.with_implicit(&large)?;
            match check_condition(&cond, &slice, budget)? {
                Some(w) => {
                    let mut report = String::from("satisfied\n");
                    for ((name, _), t) in cond.symbols().iter().zip(&w) {
                        let _ = writeln!(report, "{name} = {t}");
                    }
                    Ok(CommandResult::ok(report))
                }
                None => Ok(CommandResult::negative("unsatisfied\n".into())),
            }
        }
        PolyCommand::Trivial { condition } => {
            let cond = parse_condition(&read(&condition)?)?;
            match trivial_witness(&cond) {
                Some(w) => {
                    let mut report = String::from("trivial\n");
                    for ((name, _), i) in cond.symbols().iter().zip(w) {
                        let _ = writeln!(report, "{name} = projection {}", i + 1);
                    }
                    Ok(CommandResult::ok(report))
                }
                None => Ok(CommandResult::negative("non-trivial\n".into())),
            }
        }
        PolyCommand::Minionhom { a, b, c, d, n } => {
            let (a, b, c, d) = (structure(&a)?, structure(&b)?, structure(&c)?, structure(&d)?);
            let arities: Vec<usize> = (1..=n).collect();
            let from = MinionSlice::polymorphisms(&a, &b, &arities, budget)?;
            let to = MinionSlice::polymorphisms(&c, &d, &arities, budget)?;
            match search_minion_homomorphism(&from, &to, budget.search)? {
                Some(h) => {
                    let mut report = format!("found on arities 1..={n}\n");
                    for (f, g) in h.pairs() {
                        let _ = writeln!(report, "{f} -> {g}");
                    }
                    Ok(CommandResult::ok(report))
                }
                None => Ok(CommandResult::negative(format!("none on arities 1..={n}\n"))),
            }
        }
    }
}

fn reduce(cmd: ReduceCommand, budget: &Budget) -> CliResult<CommandResult> {
    match cmd {
        ReduceCommand::Gadget { bundle, instance, out } => {
            let g = parse_gadget(&read(&bundle)?)?;
            let i = structure(&instance)?;
            emit(&apply_gadget_replacement(&g, &i)?, &out, String::new())
        }
        ReduceCommand::Pppower { bundle, b, out } => {
            let g = parse_gadget(&read(&bundle)?)?;
            let b = structure(&b)?;
            emit(&pp_power(&g, &b, budget.search)?, &out, String::new())
        }
        ReduceCommand::Arcgraph { g, out } => emit(&arc_graph(&structure(&g)?)?, &out, String::new()),
        ReduceCommand::ArcgraphRight { h, out } => {
            emit(&arc_graph_right_adjoint(&structure(&h)?, budget)?, &out, String::new())
        }
        ReduceCommand::K { a, b, k, instance, out } => {
            let (a, b, i) = (structure(&a)?, structure(&b)?, structure(&instance)?);
            match k_reduction(&a, &b, k, &i, budget)? {
                KReduction::Output { structure, .. } => emit(&structure, &out, String::new()),
                KReduction::PromiseViolation { subset } => Ok(CommandResult::negative(format!(
                    "promise violation: the instance restricted to {subset:?} has no homomorphism to A\n"
                ))),
            }
        }
    }
}

fn check(cmd: CheckCommand, seed: u64, budget: &Budget) -> CliResult<CommandResult> {
    let mut rng = seeded(seed);
    let (trials, agree, counter) = match cmd {
        CheckCommand::Adjunction {
            bundle,
            random,
            max_size,
        } => {
            let g = parse_gadget(&read(&bundle)?)?;
            let mut agree = 0;
            let mut counter = None;
            for trial in 0..random {
                let density = 0.2 + 0.4 * (trial % 3) as f64 / 2.0;
                let i = random_structure(&mut rng, g.source(), max_size, density);
                let b = random_structure(&mut rng, g.target(), max_size, density);
                let s = adjunction_sides(&g, &i, &b, budget.search)?;
                if s.holds() {
                    agree += 1;
                } else if counter.is_none() {
                    counter = Some(format!("{}{}", serialize_structure(&i), serialize_structure(&b)));
                }
            }
            (random, agree, counter)
        }
        CheckCommand::ArcAdjunction { random, max_size } => {
            let sig = crate::structure::Signature::from_pairs(&[("E", 2)]);
            let mut agree = 0;
            let mut counter = None;
            for trial in 0..random {
                let density = 0.2 + 0.4 * (trial % 3) as f64 / 2.0;
                let g = random_structure(&mut rng, &sig, max_size, density);
                let h = random_structure(&mut rng, &sig, max_size, density);
                if arc_adjunction_sides(&g, &h, budget)?.holds() {
                    agree += 1;
                } else if counter.is_none() {
                    counter = Some(format!("{}{}", serialize_structure(&g), serialize_structure(&h)));
                }
            }
            (random, agree, counter)
        }
    };
    let mut report = format!("agreement: {agree}/{trials}\n");
    if let Some(c) = counter {
        report.push_str("first counterexample:\n");
        report.push_str(&c);
    }
    Ok(CommandResult::decided(agree == trials, report))
}
