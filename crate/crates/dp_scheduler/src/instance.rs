use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use pwl_core::{parse_rational, Rat};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> InstanceError {
    InstanceError::Invalid(msg.into())
}

/// One job: tardiness weight and due date. Jobs inside a class are released in
/// listed order, so due dates must be nondecreasing down the list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub alpha: Rat,
    pub due_date: Rat,
}

/// A family of jobs sharing a processing-time window `[pt_low, pt_nom]` and a
/// compression rate `beta` charged per unit of time shaved off the nominal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSpec {
    pub beta: Rat,
    pub pt_low: Rat,
    pub pt_nom: Rat,
    pub jobs: Vec<JobSpec>,
}

/// A validated scheduling instance.
///
/// Setup matrices have one column per class and one row per predecessor: row 0
/// applies when the machine has not run anything yet, row `c` when class `c`
/// ran last. Omitted matrices default to all zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    classes: Vec<ClassSpec>,
    setup_time: Vec<Vec<Rat>>,
    setup_cost: Vec<Vec<Rat>>,
}

impl ProblemInstance {
    pub fn new(
        classes: Vec<ClassSpec>,
        setup_time: Option<Vec<Vec<Rat>>>,
        setup_cost: Option<Vec<Vec<Rat>>>,
    ) -> Result<Self, InstanceError> {
        if classes.is_empty() {
            return Err(invalid("instance needs at least one class"));
        }
        for (i, class) in classes.iter().enumerate() {
            let label = i + 1;
            if class.jobs.is_empty() {
                return Err(invalid(format!("class {label} has no jobs")));
            }
            if class.pt_low <= Rat::zero() {
                return Err(invalid(format!("class {label}: pt_low must be positive")));
            }
            if class.pt_low >= class.pt_nom {
                return Err(invalid(format!(
                    "class {label}: pt_low must be below pt_nom"
                )));
            }
            if class.beta <= Rat::zero() {
                return Err(invalid(format!("class {label}: beta must be positive")));
            }
            let mut prev: Option<&Rat> = None;
            for (k, job) in class.jobs.iter().enumerate() {
                if job.alpha <= Rat::zero() {
                    return Err(invalid(format!(
                        "class {label} job {}: alpha must be positive",
                        k + 1
                    )));
                }
                if prev.is_some_and(|p| *p > job.due_date) {
                    return Err(invalid(format!(
                        "class {label} job {}: due dates must be nondecreasing",
                        k + 1
                    )));
                }
                prev = Some(&job.due_date);
            }
        }
        let n = classes.len();
        let zeros = || vec![vec![Rat::zero(); n]; n + 1];
        let setup_time = setup_time.unwrap_or_else(zeros);
        let setup_cost = setup_cost.unwrap_or_else(zeros);
        for (name, matrix) in [("setup_time", &setup_time), ("setup_cost", &setup_cost)] {
            if matrix.len() != n + 1 || matrix.iter().any(|row| row.len() != n) {
                return Err(invalid(format!(
                    "{name} must have {} rows of {n} entries",
                    n + 1
                )));
            }
            if matrix.iter().flatten().any(|v| *v < Rat::zero()) {
                return Err(invalid(format!("{name} entries must be nonnegative")));
            }
        }
        Ok(ProblemInstance {
            classes,
            setup_time,
            setup_cost,
        })
    }

    pub fn classes(&self) -> &[ClassSpec] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn total_jobs(&self) -> usize {
        self.classes.iter().map(|c| c.jobs.len()).sum()
    }

    /// Setup time before a `class` job when `last` ran previously (0 = nothing
    /// has run yet). `class` is 1-based.
    pub fn setup_time(&self, last: usize, class: usize) -> &Rat {
        &self.setup_time[last][class - 1]
    }

    pub fn setup_cost(&self, last: usize, class: usize) -> &Rat {
        &self.setup_cost[last][class - 1]
    }

    /// True when every setup time and cost is zero, in which case the class
    /// that ran last cannot influence anything downstream.
    pub fn is_setup_free(&self) -> bool {
        self.setup_time
            .iter()
            .chain(self.setup_cost.iter())
            .flatten()
            .all(Zero::is_zero)
    }
}

impl FromStr for ProblemInstance {
    type Err = InstanceError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        Parser::new(text).run()
    }
}

impl fmt::Display for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for class in &self.classes {
            writeln!(f, "class")?;
            writeln!(f, "  beta {}", class.beta)?;
            writeln!(f, "  pt {} {}", class.pt_low, class.pt_nom)?;
            for job in &class.jobs {
                writeln!(f, "  job {} {}", job.alpha, job.due_date)?;
            }
        }
        if !self.is_setup_free() {
            for (name, matrix) in [
                ("setup_time", &self.setup_time),
                ("setup_cost", &self.setup_cost),
            ] {
                writeln!(f, "{name}")?;
                for row in matrix {
                    write!(f, " ")?;
                    for v in row {
                        write!(f, " {v}")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let body = raw.split('#').next().unwrap_or("");
                let tokens: Vec<&str> = body.split_whitespace().collect();
                (!tokens.is_empty()).then_some((i + 1, tokens))
            })
            .collect();
        Parser { lines, pos: 0 }
    }

    fn error(&self, line: usize, message: impl Into<String>) -> InstanceError {
        InstanceError::Parse {
            line,
            message: message.into(),
        }
    }

    fn number(&self, line: usize, token: &str) -> Result<Rat, InstanceError> {
        parse_rational(token).map_err(|e| self.error(line, e.to_string()))
    }

    fn run(mut self) -> Result<ProblemInstance, InstanceError> {
        let mut classes: Vec<ClassSpec> = Vec::new();
        let mut setup_time = None;
        let mut setup_cost = None;
        while self.pos < self.lines.len() {
            let (line, tokens) = self.lines[self.pos].clone();
            self.pos += 1;
            match tokens[0] {
                "class" => {
                    if tokens.len() > 1 {
                        return Err(self.error(line, "class takes no arguments"));
                    }
                    classes.push(ClassSpec {
                        beta: Rat::zero(),
                        pt_low: Rat::zero(),
                        pt_nom: Rat::zero(),
                        jobs: Vec::new(),
                    });
                }
                "beta" | "pt" | "job" => {
                    let class = classes
                        .last_mut()
                        .ok_or_else(|| self.error(line, format!("{} before any class", tokens[0])))?;
                    let args: Result<Vec<Rat>, _> = tokens[1..]
                        .iter()
                        .map(|t| parse_rational(t).map_err(|e| e.to_string()))
                        .collect();
                    let args = args.map_err(|e| self.error(line, e))?;
                    match (tokens[0], args.as_slice()) {
                        ("beta", [b]) => class.beta = b.clone(),
                        ("pt", [low, nom]) => {
                            class.pt_low = low.clone();
                            class.pt_nom = nom.clone();
                        }
                        ("job", [alpha, dd]) => class.jobs.push(JobSpec {
                            alpha: alpha.clone(),
                            due_date: dd.clone(),
                        }),
                        (key, _) => {
                            return Err(self.error(line, format!("wrong argument count for {key}")))
                        }
                    }
                }
                "setup_time" => setup_time = Some(self.matrix(line, classes.len())?),
                "setup_cost" => setup_cost = Some(self.matrix(line, classes.len())?),
                other => return Err(self.error(line, format!("unknown keyword {other}"))),
            }
        }
        if classes.is_empty() {
            return Err(self.error(1, "instance text defines no classes"));
        }
        ProblemInstance::new(classes, setup_time, setup_cost)
    }

    fn matrix(&mut self, at: usize, n: usize) -> Result<Vec<Vec<Rat>>, InstanceError> {
        if n == 0 {
            return Err(self.error(at, "setup matrix before any class"));
        }
        let mut rows = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            let (line, tokens) = self
                .lines
                .get(self.pos)
                .cloned()
                .ok_or_else(|| self.error(at, format!("setup matrix needs {} rows", n + 1)))?;
            self.pos += 1;
            if tokens.len() != n {
                return Err(self.error(line, format!("setup row needs {n} entries")));
            }
            let row: Result<Vec<Rat>, _> = tokens.iter().map(|t| self.number(line, t)).collect();
            rows.push(row?);
        }
        Ok(rows)
    }
}
