//! Command-line front end for the exact scheduling solver.
//!
//! Four commands share one driver: `solve` writes a full strategy export,
//! `export` samples cost-to-go and strategy tables to CSV, `replay` follows
//! the stored strategy through time (optionally with per-job start delays),
//! and `example` runs a built-in worked case against its golden record and
//! exits nonzero on any difference.
//!
//! Exit codes: 0 success, 1 internal failure, 2 usage, 3 instance text parse
//! error, 4 invalid instance data, 5 golden mismatch.

pub mod fixtures;
mod report;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use argmin_engine::{crossing_sets, omega, solve_window, Omega};
use dp_scheduler::{
    render_segment, solve, write_solution, InstanceError, ProblemInstance, Solution,
    StateSolution, StrategyError, TieBreak,
};
use pwl_core::Rat;

pub use fixtures::{AltBlock, ExampleFixture, SolveFixture, EXAMPLE_IDS, SOLVE_IDS};
pub use report::number;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Export,
    Replay,
    Example,
}

/// Number rendering: decorated fractions, machine CSV, or bare fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Fractions,
}

/// One resolved invocation; the binary maps its flags onto this.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub instance_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub example_id: Option<String>,
    pub t0: Option<Rat>,
    pub perturbations: Vec<Rat>,
    pub alt_strategies: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            instance_path: None,
            output_path: None,
            format: Format::default(),
            example_id: None,
            t0: None,
            perturbations: Vec::new(),
            alt_strategies: false,
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

/// Executes one invocation, writing all output to `out`.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> i32 {
    let (text, code) = match dispatch(cfg) {
        Ok(pair) => pair,
        Err(f) => (format!("error: {}\n", f.message), f.code),
    };
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_INTERNAL;
    }
    code
}

fn dispatch(cfg: &RunConfig) -> Result<(String, i32), Failure> {
    match cfg.command {
        Command::Solve => cmd_solve(cfg),
        Command::Export => cmd_export(cfg),
        Command::Replay => cmd_replay(cfg),
        Command::Example => cmd_example(cfg),
    }
}

fn tie_break(cfg: &RunConfig) -> TieBreak {
    if cfg.alt_strategies { TieBreak::HighestClass } else { TieBreak::LowestClass }
}

fn load_instance(cfg: &RunConfig) -> Result<ProblemInstance, Failure> {
    let path = cfg
        .instance_path
        .as_ref()
        .ok_or_else(|| fail(EXIT_USAGE, "this command needs an instance file"))?;
    let text = fs::read_to_string(path)
        .map_err(|e| fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    text.parse().map_err(|e: InstanceError| match e {
        InstanceError::Parse { .. } => fail(EXIT_PARSE, e.to_string()),
        InstanceError::Invalid(_) => fail(EXIT_INFEASIBLE, e.to_string()),
    })
}

fn deliver(cfg: &RunConfig, body: String, summary: String) -> Result<(String, i32), Failure> {
    match &cfg.output_path {
        Some(path) => {
            fs::write(path, &body)
                .map_err(|e| fail(EXIT_INTERNAL, format!("cannot write {}: {e}", path.display())))?;
            Ok((format!("{summary}; wrote {}\n", path.display()), EXIT_OK))
        }
        None => Ok((body, EXIT_OK)),
    }
}

/// Alternative strategy tables for every tied state, in the fixture grammar.
fn alt_section(sol: &Solution) -> String {
    let tied: Vec<&StateSolution> =
        sol.states().iter().filter(|s| !s.tie_intervals().is_empty()).collect();
    let mut out = String::new();
    if tied.is_empty() {
        return out;
    }
    out.push_str("alt\n");
    for st in tied {
        out.push_str("state");
        for done in &st.state.completed {
            let _ = write!(out, " {done}");
        }
        let _ = writeln!(out, " {}", st.state.last_class);
        for (span, class) in st.class_strategy(TieBreak::HighestClass) {
            let _ = writeln!(out, "delta {class} | {span}");
        }
        for (span, seg) in st.pt_strategy(TieBreak::HighestClass) {
            let _ = writeln!(out, "tau {} | {span}", render_segment(&seg));
        }
        out.push('\n');
    }
    out
}

fn cmd_solve(cfg: &RunConfig) -> Result<(String, i32), Failure> {
    let inst = load_instance(cfg)?;
    let sol = solve(&inst);
    let mut export = write_solution(&sol);
    if cfg.alt_strategies {
        export.push_str(&alt_section(&sol));
    }
    deliver(cfg, export, format!("solved {} states", sol.states().len()))
}

/// Breakpoints and strategy switch instants of the root state, padded with
/// midpoints and margins so plots capture every kink and both tails.
fn sample_points(root: &StateSolution, tie: TieBreak) -> Vec<Rat> {
    let two = Rat::from_integer(2.into());
    let five = Rat::from_integer(5.into());
    let mut bounds: Vec<Rat> = root.cost_to_go.breakpoints().to_vec();
    bounds.extend(root.class_strategy(tie).iter().filter_map(|(s, _)| s.start.clone()));
    bounds.extend(root.pt_strategy(tie).iter().filter_map(|(s, _)| s.start.clone()));
    bounds.sort();
    bounds.dedup();
    if bounds.is_empty() {
        return vec![-five.clone(), Rat::from_integer(0.into()), five];
    }
    let mut ts = vec![bounds.first().unwrap() - &five];
    for (i, b) in bounds.iter().enumerate() {
        ts.push(b.clone());
        if let Some(next) = bounds.get(i + 1) {
            ts.push((b + next) / &two);
        }
    }
    ts.push(bounds.last().unwrap() + &five);
    ts
}

fn cmd_export(cfg: &RunConfig) -> Result<(String, i32), Failure> {
    let inst = load_instance(cfg)?;
    let sol = solve(&inst);
    let tie = tie_break(cfg);
    let root = sol.root();
    let mut csv = String::from("t,J,class,tau\n");
    let mut rows = 0;
    for t in sample_points(root, tie) {
        let (class, tau) = sol
            .eval_strategy(&root.state, &t, tie)
            .map_err(|e| fail(EXIT_INTERNAL, e.to_string()))?;
        let _ = writeln!(csv, "{t},{},{class},{tau}", root.cost_to_go.eval(&t));
        rows += 1;
    }
    deliver(cfg, csv, format!("sampled {rows} instants"))
}

fn cmd_replay(cfg: &RunConfig) -> Result<(String, i32), Failure> {
    let inst = load_instance(cfg)?;
    let t0 = cfg
        .t0
        .clone()
        .ok_or_else(|| fail(EXIT_USAGE, "replay needs a start instant (--t0)"))?;
    let sol = solve(&inst);
    let rep = sol
        .replay(&t0, &cfg.perturbations, tie_break(cfg))
        .map_err(|e| match e {
            StrategyError::ExhaustedClass { .. } => fail(EXIT_INTERNAL, e.to_string()),
            _ => fail(EXIT_USAGE, e.to_string()),
        })?;

    let n = |r: &Rat| report::number(r, cfg.format);
    let mut text = format!("start at t0 = {}\n\n", n(&t0));
    text.push_str("step  class  job  start        pt           delay        completion   cost\n");
    for (i, step) in rep.steps.iter().enumerate() {
        let _ = writeln!(
            text,
            "{:<4}  {:<5}  {:<3}  {:<11}  {:<11}  {:<11}  {:<11}  {}",
            i + 1,
            step.class,
            step.job_index,
            n(&step.decision_time),
            n(&step.processing_time),
            n(&step.delay),
            n(&step.completion),
            n(&step.step_cost),
        );
    }
    let _ = writeln!(text, "\nrealized cost: {}", n(&rep.total_cost));
    let _ = writeln!(text, "cost-to-go at start: {}", n(&sol.root().cost_to_go.eval(&t0)));
    Ok((text, EXIT_OK))
}

fn cmd_example(cfg: &RunConfig) -> Result<(String, i32), Failure> {
    let id = cfg
        .example_id
        .as_deref()
        .ok_or_else(|| fail(EXIT_USAGE, "example needs an id (ex1..ex9, nosetup, setups)"))?;
    if let Some(fx) = fixtures::example(id) {
        Ok(window_example(id, &fx, cfg))
    } else if let Some(fx) = fixtures::solve_case(id) {
        Ok(solve_example(id, &fx))
    } else {
        Err(fail(EXIT_USAGE, format!("unknown example id `{id}`")))
    }
}

fn window_example(id: &str, fx: &ExampleFixture, cfg: &RunConfig) -> (String, i32) {
    let sets = crossing_sets(&fx.f, fx.g.nu());
    let got_omegas: Vec<Omega> =
        (1..=sets.b.len()).map(|j| omega(&fx.f, &fx.g, &sets, j)).collect();
    let (policy, h) = solve_window(&fx.f, &fx.g);

    let mut text = format!("{id}: {}\n\n", fx.label);
    for (j, o) in got_omegas.iter().enumerate() {
        let _ = writeln!(text, "omega_{} = {}", j + 1, report::omega(o, cfg.format));
    }
    text.push_str("\nminimizer:\n");
    text.push_str(&report::segment_table(policy.pieces()));
    text.push_str("\nvalue function:\n");
    text.push_str(&report::function_table(&h, cfg.format));

    let mut mismatches = Vec::new();
    if got_omegas != fx.omegas {
        let list = |os: &[Omega]| {
            os.iter().map(|o| report::omega(o, Format::Fractions)).collect::<Vec<_>>().join(", ")
        };
        mismatches.push(format!(
            "jump instants: got [{}], want [{}]",
            list(&got_omegas),
            list(&fx.omegas)
        ));
    }
    if policy.pieces() != &fx.policy[..] {
        mismatches.push("minimizer table differs from the golden record".to_string());
    }
    if h != fx.value {
        mismatches.push(format!("value function: got `{h}`, want `{}`", fx.value));
    }
    finish(text, mismatches, "jump instants, minimizer, and value function match")
}

fn solve_example(id: &str, fx: &SolveFixture) -> (String, i32) {
    let inst: ProblemInstance = match fx.instance.parse() {
        Ok(inst) => inst,
        Err(e) => return (format!("error: embedded instance invalid: {e}\n"), EXIT_INTERNAL),
    };
    let sol = solve(&inst);
    let got = write_solution(&sol);

    let mut mismatches = Vec::new();
    diff_lines(&got, &fx.solution, &mut mismatches);
    for block in &fx.alt {
        match sol.state(&block.state) {
            None => mismatches.push(format!("state {} missing from the solution", block.state)),
            Some(st) => {
                if st.class_strategy(TieBreak::HighestClass) != block.delta {
                    mismatches
                        .push(format!("state {}: alternative class table differs", block.state));
                }
                if st.pt_strategy(TieBreak::HighestClass) != block.tau {
                    mismatches.push(format!(
                        "state {}: alternative processing-time table differs",
                        block.state
                    ));
                }
            }
        }
    }

    let ties: usize = sol.states().iter().map(|s| s.tie_intervals().len()).sum();
    let mut text = format!("{id}: {}\n\n", fx.label);
    let _ = writeln!(text, "states: {}", sol.states().len());
    let _ = writeln!(text, "tie intervals: {ties} (alternative resolutions verified)");
    let _ = writeln!(text, "root cost-to-go: {}", sol.root().cost_to_go);
    finish(text, mismatches, "full solution export matches the golden record")
}

fn finish(mut text: String, mismatches: Vec<String>, ok: &str) -> (String, i32) {
    if mismatches.is_empty() {
        let _ = writeln!(text, "\n{ok}");
        (text, EXIT_OK)
    } else {
        text.push('\n');
        for m in &mismatches {
            let _ = writeln!(text, "mismatch: {m}");
        }
        (text, EXIT_MISMATCH)
    }
}

fn diff_lines(got: &str, want: &str, out: &mut Vec<String>) {
    let got: Vec<&str> = got.lines().collect();
    let want: Vec<&str> = want.lines().collect();
    if got.len() != want.len() {
        out.push(format!("export length: got {} lines, want {}", got.len(), want.len()));
    }
    let mut shown = 0;
    for (i, (g, w)) in got.iter().zip(&want).enumerate() {
        if g != w {
            out.push(format!("line {}: got `{g}`, want `{w}`", i + 1));
            shown += 1;
            if shown == 8 {
                out.push("further differences suppressed".to_string());
                break;
            }
        }
    }
}
