use std::collections::BTreeMap;
use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use bruhat_dt::dtengine::{
    amalgamate_symbolic, check_h_equiv, dt_closed_form, face_minors, plan_dt_sequence, run_checks, verify_plan,
    verify_plan_specialized, x_coords, CheckSelection, DtReport,
};
use bruhat_dt::exactalg::{Matrix, RatFunc, Ring};
use bruhat_dt::plabic::{seed_to_dot, BipartiteGraph, QuiverJson};
use bruhat_dt::weyl::{
    applicable_moves, greedy_pair_word, move_path, word_to_permutations, Permutation, SignedWord, WeylError,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

const DEFAULT_SEED: u64 = 20240917;

#[derive(Parser)]
#[command(name = "bruhat-dt", version, about = "Cluster structures and DT transformations on GL_n double Bruhat cells")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced words of pairs of permutations.
    #[command(subcommand)]
    Word(WordCommand),
    /// The bipartite graph of a word.
    Graph {
        #[command(flatten)]
        input: WordInput,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The quiver of a word.
    Quiver {
        #[command(flatten)]
        input: WordInput,
        /// Drop the top and bottom faces (the always-frozen pair).
        #[arg(long)]
        boundary_removed: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The symbolic matrix obtained by amalgamating face and edge variables.
    Amalgamate {
        #[command(flatten)]
        input: WordInput,
        /// Set the two extreme face variables to 1.
        #[arg(long)]
        boundary_one: bool,
    },
    /// The face minors of the symbolic amalgamated matrix.
    Minors {
        #[command(flatten)]
        input: WordInput,
    },
    /// Donaldson-Thomas transformation.
    #[command(subcommand)]
    Dt(DtCommand),
}

#[derive(Subcommand)]
enum WordCommand {
    /// The greedy reduced word of a pair (u, v).
    Greedy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Checks that a signed word is reduced.
    Validate {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        letters: String,
    },
    /// Lists moves applicable to a word, or a move path to another word.
    Moves {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        letters: String,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<String>,
    },
}

#[derive(Subcommand)]
enum DtCommand {
    /// Runs the verification checks and prints a JSON report.
    Check {
        #[command(flatten)]
        input: BatchInput,
        #[command(flatten)]
        rng: RngArgs,
        /// Comma-separated subset of lgv,positivity,involution,plan,trop-delta.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<CheckName>>,
    },
    /// The mutation sequence realizing DT.
    Sequence {
        #[command(flatten)]
        input: WordInput,
        #[command(flatten)]
        rng: RngArgs,
    },
    /// DT on the group side, compared with the face-minor pipeline.
    ClosedForm {
        #[command(flatten)]
        input: WordInput,
    },
}

#[derive(Args, Clone)]
struct WordInput {
    #[arg(long)]
    n: usize,
    /// Comma-separated signed letters, e.g. -1,-2,-1,1,2,1.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["u", "v"], required_unless_present_all = ["u", "v"])]
    letters: Option<String>,
    /// One-line notation, e.g. 321; the greedy word of (u, v) is used.
    #[arg(long, requires = "v")]
    u: Option<String>,
    #[arg(long, requires = "u")]
    v: Option<String>,
}

#[derive(Args, Clone)]
struct BatchInput {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["u", "v", "all_pairs"])]
    letters: Option<String>,
    #[arg(long, requires = "v", conflicts_with = "all_pairs")]
    u: Option<String>,
    #[arg(long, requires = "u")]
    v: Option<String>,
    /// Check the greedy word of every pair in S_n x S_n.
    #[arg(long)]
    all_pairs: bool,
}

#[derive(Args, Clone, Copy)]
struct RngArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random points used when a check is not run symbolically.
    #[arg(long, default_value_t = 3)]
    specializations: usize,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum CheckName {
    Lgv,
    Positivity,
    Involution,
    Plan,
    TropDelta,
}

/// A failure together with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl From<WeylError> for Failure {
    fn from(e: WeylError) -> Self {
        let code = match e {
            WeylError::NonReducedWord { .. } => 3,
            _ => 2,
        };
        Failure::new(code, e)
    }
}

type CmdResult = Result<(), Failure>;

fn parse_word(n: usize, letters: &str) -> Result<SignedWord, Failure> {
    Ok(SignedWord::parse(n, letters)?)
}

fn parse_perm(n: usize, s: &str) -> Result<Permutation, Failure> {
    let p = Permutation::parse(s)?;
    if p.n() != n {
        return Err(WeylError::RankMismatch(n, p.n()).into());
    }
    Ok(p)
}

fn resolve(n: usize, letters: Option<&str>, u: Option<&str>, v: Option<&str>) -> Result<SignedWord, Failure> {
    match (letters, u, v) {
        (Some(l), _, _) => parse_word(n, l),
        (None, Some(u), Some(v)) => Ok(greedy_pair_word(&parse_perm(n, u)?, &parse_perm(n, v)?)?),
        _ => Err(Failure::new(2, "give --letters or both --u and --v")),
    }
}

impl WordInput {
    fn graph(&self) -> Result<BipartiteGraph, Failure> {
        let w = resolve(self.n, self.letters.as_deref(), self.u.as_deref(), self.v.as_deref())?;
        Ok(BipartiteGraph::from_word(&w))
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn output(s: &str) -> CmdResult {
    let mut out = std::io::stdout().lock();
    match out.write_all(s.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(Failure::new(1, e)),
        _ => Ok(()),
    }
}

fn emit<T: Serialize>(value: &T) -> CmdResult {
    let s = serde_json::to_string_pretty(value).map_err(|e| Failure::new(1, e))?;
    output(&(s + "\n"))
}

fn matrix_json<T: Ring + std::fmt::Display>(m: &Matrix<T>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
        .collect()
}

fn word_json(w: &SignedWord) -> serde_json::Value {
    let (u, v) = word_to_permutations(w);
    json!({ "n": w.n(), "letters": w.letters(), "u": u.to_string(), "v": v.to_string() })
}

fn cmd_word(cmd: WordCommand) -> CmdResult {
    match cmd {
        WordCommand::Greedy { n, u, v } => {
            let w = greedy_pair_word(&parse_perm(n, &u)?, &parse_perm(n, &v)?)?;
            emit(&word_json(&w))
        }
        WordCommand::Validate { n, letters } => {
            let w = parse_word(n, &letters)?;
            let mut out = word_json(&w);
            out["reduced"] = json!(true);
            emit(&out)
        }
        WordCommand::Moves { n, letters, to } => {
            let w = parse_word(n, &letters)?;
            match to {
                None => emit(&json!({ "word": w.letters(), "moves": applicable_moves(&w) })),
                Some(t) => {
                    let target = parse_word(n, &t)?;
                    match move_path(&w, &target) {
                        Some(path) => emit(&json!({ "from": w.letters(), "to": target.letters(), "path": path })),
                        None => Err(Failure::new(1, format!("{w} and {target} are not related by moves"))),
                    }
                }
            }
        }
    }
}

fn selection(names: Option<Vec<CheckName>>) -> CheckSelection {
    let Some(names) = names else {
        return CheckSelection::all();
    };
    let has = |c| names.contains(&c);
    CheckSelection {
        lgv: has(CheckName::Lgv),
        positivity: has(CheckName::Positivity),
        involution: has(CheckName::Involution),
        plan: has(CheckName::Plan),
        trop_delta: has(CheckName::TropDelta),
    }
}

fn cmd_dt(cmd: DtCommand) -> CmdResult {
    match cmd {
        DtCommand::Check { input, rng, checks } => {
            let sel = selection(checks);
            let run = |w: &SignedWord| run_checks(&BipartiteGraph::from_word(w), sel, rng.specializations, rng.seed);
            if input.all_pairs {
                let perms = Permutation::all(input.n);
                let words: Vec<SignedWord> = perms
                    .iter()
                    .flat_map(|u| perms.iter().map(move |v| (u, v)))
                    .map(|(u, v)| greedy_pair_word(u, v))
                    .collect::<Result<_, _>>()?;
                let reports: Vec<DtReport> = words.par_iter().map(run).collect();
                emit(&reports)?;
                check_status(reports.iter().all(DtReport::passed))
            } else {
                let w = resolve(input.n, input.letters.as_deref(), input.u.as_deref(), input.v.as_deref())?;
                let report = run(&w);
                emit(&report)?;
                check_status(report.passed())
            }
        }
        DtCommand::Sequence { input, rng } => {
            let g = input.graph()?;
            let plan = plan_dt_sequence(&g).map_err(|e| Failure::new(4, e))?;
            let verified = if g.n() <= 2 {
                verify_plan(&g, &plan)
            } else {
                verify_plan_specialized(&g, &plan, rng.specializations, rng.seed)
            };
            emit(&json!({
                "word": { "n": g.n(), "letters": g.letters() },
                "rng_seed": rng.seed,
                "plan": plan,
                "verified": verified.is_ok(),
            }))?;
            verified.map_err(|e| Failure::new(4, e))
        }
        DtCommand::ClosedForm { input } => {
            let g = input.graph()?;
            let x = amalgamate_symbolic(&g, false);
            let dt = dt_closed_form(g.n(), g.letters(), &x).map_err(|e| Failure::new(1, e))?;
            let psi = x_coords(&g, &x).map_err(|e| Failure::new(1, e))?;
            let mut values: BTreeMap<usize, RatFunc> = g.faces().iter().map(|f| (f.id, RatFunc::one())).collect();
            values.extend(psi.values.into_iter().map(|(k, v)| (k as usize, v)));
            let pipeline = bruhat_dt::dtengine::amalgamate(&g, &values).map_err(|e| Failure::new(1, e))?;
            let equivalent = check_h_equiv(&dt, &pipeline).unwrap_or(false);
            emit(&json!({
                "word": { "n": g.n(), "letters": g.letters() },
                "closed_form": matrix_json(&dt),
                "pipeline": matrix_json(&pipeline),
                "h_equivalent": equivalent,
            }))?;
            check_status(equivalent)
        }
    }
}

fn check_status(passed: bool) -> CmdResult {
    if passed {
        Ok(())
    } else {
        Err(Failure::new(4, "check failed; see the report for witnesses"))
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Word(cmd) => cmd_word(cmd),
        Command::Graph { input, format } => {
            let g = input.graph()?;
            match format {
                Format::Json => emit(&g.to_json()),
                Format::Dot => output(&g.to_dot()),
            }
        }
        Command::Quiver {
            input,
            boundary_removed,
            format,
        } => {
            let g = input.graph()?;
            let (full, reduced) = g.build_quivers();
            let seed = if boundary_removed { reduced } else { full };
            match format {
                Format::Json => emit(&QuiverJson::from(&seed)),
                Format::Dot => output(&seed_to_dot(&seed)),
            }
        }
        Command::Amalgamate { input, boundary_one } => {
            let g = input.graph()?;
            let m = amalgamate_symbolic(&g, boundary_one);
            emit(&json!({
                "word": { "n": g.n(), "letters": g.letters() },
                "boundary_one": boundary_one,
                "matrix": matrix_json(&m),
            }))
        }
        Command::Minors { input } => {
            let g = input.graph()?;
            let x = amalgamate_symbolic(&g, false);
            let minors = face_minors(&g, &x);
            let faces: Vec<_> = g
                .faces()
                .iter()
                .map(|f| {
                    json!({
                        "face": f.id,
                        "i": f.i_set,
                        "j": f.j_set,
                        "boundary": f.boundary,
                        "minor": minors[&f.id].to_string(),
                    })
                })
                .collect();
            emit(&json!({ "word": { "n": g.n(), "letters": g.letters() }, "faces": faces }))
        }
        Command::Dt(cmd) => cmd_dt(cmd),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
