//! Built-in golden fixtures and their line grammar.
//!
//! Window fixtures (`ex1`..`ex9`) hold one cost/deviation pair with its
//! expected jump instants, minimizer table, and value function. Solve
//! fixtures (`nosetup`, `setups`) hold a whole instance with the expected
//! solution export, plus the highest-class strategy resolution for every
//! state that has a tie. All numbers are reduced fractions, so comparisons
//! are exact.

use argmin_engine::{Omega, Segment};
use dp_scheduler::{parse_segment, parse_span, SchedState};
use pwl_core::{parse_rational, DeviationCost, PwlFunction, Span};

/// One window case: inputs plus the expected closed-form outputs.
pub struct ExampleFixture {
    pub label: String,
    pub f: PwlFunction,
    pub g: DeviationCost,
    pub omegas: Vec<Omega>,
    pub policy: Vec<(Span, Segment)>,
    pub value: PwlFunction,
}

/// Alternative strategy tables for one tied state.
pub struct AltBlock {
    pub state: SchedState,
    pub delta: Vec<(Span, usize)>,
    pub tau: Vec<(Span, Segment)>,
}

/// One instance case: input text plus the expected solution export.
pub struct SolveFixture {
    pub label: String,
    pub instance: String,
    pub solution: String,
    pub alt: Vec<AltBlock>,
}

pub const EXAMPLE_IDS: [&str; 9] =
    ["ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "ex7", "ex8", "ex9"];
pub const SOLVE_IDS: [&str; 2] = ["nosetup", "setups"];

pub fn fixture_text(id: &str) -> Option<&'static str> {
    Some(match id {
        "ex1" => include_str!("../fixtures/ex1.txt"),
        "ex2" => include_str!("../fixtures/ex2.txt"),
        "ex3" => include_str!("../fixtures/ex3.txt"),
        "ex4" => include_str!("../fixtures/ex4.txt"),
        "ex5" => include_str!("../fixtures/ex5.txt"),
        "ex6" => include_str!("../fixtures/ex6.txt"),
        "ex7" => include_str!("../fixtures/ex7.txt"),
        "ex8" => include_str!("../fixtures/ex8.txt"),
        "ex9" => include_str!("../fixtures/ex9.txt"),
        "nosetup" => include_str!("../fixtures/nosetup.txt"),
        "setups" => include_str!("../fixtures/setups.txt"),
        _ => return None,
    })
}

/// Loads and parses a window fixture by id.
pub fn example(id: &str) -> Option<ExampleFixture> {
    let text = fixture_text(id)?;
    EXAMPLE_IDS.contains(&id).then(|| parse_example(text).expect(id))
}

/// Loads and parses a solve fixture by id.
pub fn solve_case(id: &str) -> Option<SolveFixture> {
    let text = fixture_text(id)?;
    SOLVE_IDS.contains(&id).then(|| parse_solve(text).expect(id))
}

fn parse_example(text: &str) -> Result<ExampleFixture, String> {
    let mut label = String::new();
    let mut f = None;
    let mut g = None;
    let mut omegas = Vec::new();
    let mut policy = Vec::new();
    let mut value = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            label = rest.trim().to_string();
        } else if let Some(rest) = line.strip_prefix("f ") {
            f = Some(rest.parse::<PwlFunction>().map_err(|e| e.to_string())?);
        } else if let Some(rest) = line.strip_prefix("g ") {
            let mut it = rest.split_whitespace();
            let mut next = || {
                it.next()
                    .ok_or_else(|| "g needs x1 x2 nu".to_string())
                    .and_then(|t| parse_rational(t).map_err(|e| e.to_string()))
            };
            let (x1, x2, nu) = (next()?, next()?, next()?);
            g = Some(DeviationCost::new(x1, x2, nu).map_err(|e| e.to_string())?);
        } else if let Some(rest) = line.strip_prefix("omega ") {
            omegas.push(if rest.trim() == "+inf" {
                Omega::PlusInf
            } else {
                Omega::Finite(parse_rational(rest).map_err(|e| e.to_string())?)
            });
        } else if let Some(rest) = line.strip_prefix("policy ") {
            policy.push(parse_segment_row(rest)?);
        } else if let Some(rest) = line.strip_prefix("h ") {
            value = Some(rest.parse::<PwlFunction>().map_err(|e| e.to_string())?);
        } else {
            return Err(format!("unrecognized fixture line: {line}"));
        }
    }
    Ok(ExampleFixture {
        label,
        f: f.ok_or("fixture lacks f")?,
        g: g.ok_or("fixture lacks g")?,
        omegas,
        policy,
        value: value.ok_or("fixture lacks h")?,
    })
}

fn parse_segment_row(rest: &str) -> Result<(Span, Segment), String> {
    let (seg, span) = rest
        .split_once('|')
        .ok_or_else(|| format!("row needs `segment | span`: {rest}"))?;
    Ok((parse_span(span)?, parse_segment(seg)?))
}

fn parse_solve(text: &str) -> Result<SolveFixture, String> {
    enum Section {
        Preamble,
        Instance,
        Solution,
        Alt,
    }
    let mut section = Section::Preamble;
    let mut label = String::new();
    let mut instance = String::new();
    let mut solution = String::new();
    let mut alt: Vec<AltBlock> = Vec::new();
    for line in text.lines() {
        match section {
            Section::Preamble => {
                if let Some(rest) = line.strip_prefix('#') {
                    label = rest.trim().to_string();
                } else if line.trim() == "instance" {
                    section = Section::Instance;
                } else if !line.trim().is_empty() {
                    return Err(format!("unexpected preamble line: {line}"));
                }
            }
            Section::Instance => {
                if line.trim() == "solution" {
                    section = Section::Solution;
                } else {
                    instance.push_str(line);
                    instance.push('\n');
                }
            }
            Section::Solution => {
                if line.trim() == "alt" {
                    section = Section::Alt;
                } else {
                    solution.push_str(line);
                    solution.push('\n');
                }
            }
            Section::Alt => {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                if let Some(rest) = line.strip_prefix("state ") {
                    let mut fields: Vec<usize> = Vec::new();
                    for tok in rest.split_whitespace() {
                        fields.push(tok.parse().map_err(|_| format!("bad state row: {line}"))?);
                    }
                    let last_class = fields.pop().ok_or("state row needs a last class")?;
                    alt.push(AltBlock {
                        state: SchedState { completed: fields, last_class },
                        delta: Vec::new(),
                        tau: Vec::new(),
                    });
                } else {
                    let block = alt.last_mut().ok_or("alt rows before any state")?;
                    if let Some(rest) = line.strip_prefix("delta ") {
                        let (class, span) = rest
                            .split_once('|')
                            .ok_or_else(|| format!("bad delta row: {line}"))?;
                        block.delta.push((
                            parse_span(span)?,
                            class.trim().parse().map_err(|_| format!("bad class: {line}"))?,
                        ));
                    } else if let Some(rest) = line.strip_prefix("tau ") {
                        block.tau.push(parse_segment_row(rest)?);
                    } else {
                        return Err(format!("unrecognized alt row: {line}"));
                    }
                }
            }
        }
    }
    Ok(SolveFixture { label, instance, solution, alt })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_embedded_fixture_parses() {
        for id in EXAMPLE_IDS {
            let fx = example(id).unwrap();
            assert!(!fx.omegas.is_empty(), "{id} has no jump instants");
            assert!(fx.policy.len() >= 2, "{id} policy too small");
        }
        for id in SOLVE_IDS {
            let fx = solve_case(id).unwrap();
            assert!(fx.instance.contains("class"));
            assert!(fx.solution.contains("state"));
            assert!(!fx.alt.is_empty(), "{id} should carry tie resolutions");
        }
        assert!(example("nosetup").is_none());
        assert!(solve_case("ex1").is_none());
        assert!(fixture_text("nope").is_none());
    }
}
