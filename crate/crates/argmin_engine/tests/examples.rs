//! Golden window solutions: jump instants, policies, and value functions for
//! nine hand-checked cost/deviation pairs covering every exit branch of the
//! walk (all four Section-B formulas, both Section-C outcomes, clipped and
//! empty regimes, a nonzero initial level, and infinite instants in first and
//! middle positions).

use argmin_engine::{Omega, Segment, crossing_sets, omega, omega_traced, solve_window};
use pwl_core::{DeviationCost, PwlFunction, Rat, Span, parse_rational, rat};

fn r(s: &str) -> Rat {
    parse_rational(s).unwrap()
}

fn func(init: &str, pieces: &[(&str, &str)]) -> PwlFunction {
    PwlFunction::new(r(init), pieces.iter().map(|(g, m)| (r(g), r(m)))).unwrap()
}

fn dev(x1: &str, x2: &str, nu: &str) -> DeviationCost {
    DeviationCost::new(r(x1), r(x2), r(nu)).unwrap()
}

fn c(v: &str) -> Segment {
    Segment::Const(r(v))
}

fn desc(intercept: &str) -> Segment {
    Segment::Descending { intercept: r(intercept) }
}

fn span(s: &str, e: &str) -> Span {
    let side = |x: &str| (x != "-inf" && x != "+inf").then(|| r(x));
    Span::new(side(s), side(e))
}

struct Case {
    label: &'static str,
    f: PwlFunction,
    g: DeviationCost,
    omegas: Vec<Option<&'static str>>,
    policy: Vec<(&'static str, &'static str, Segment)>,
    value: PwlFunction,
}

fn cases() -> Vec<Case> {
    vec![
        Case {
            label: "two jumps, descents clipped by the jump",
            f: func("0", &[
                ("16", "1/2"), ("18", "2"), ("19", "1"), ("20", "1/4"), ("24", "1/2"),
                ("26", "1"), ("29", "4"), ("30", "1/2"), ("32", "1"),
            ]),
            g: dev("4", "8", "1"),
            omegas: vec![Some("40/3"), Some("77/3")],
            policy: vec![
                ("-inf", "10", c("8")),
                ("10", "40/3", desc("18")),
                ("40/3", "18", c("8")),
                ("18", "22", desc("26")),
                ("22", "77/3", c("4")),
                ("77/3", "28", desc("32")),
                ("28", "+inf", c("4")),
            ],
            value: func("0", &[
                ("8", "1/2"), ("10", "1"), ("40/3", "1/4"), ("16", "1/2"), ("18", "1"),
                ("25", "4"), ("77/3", "1"),
            ]),
        },
        Case {
            label: "three jumps, second lands straight on a descent",
            f: func("0", &[
                ("16", "2"), ("17", "1/2"), ("19", "2"), ("20", "1/2"), ("26", "1"),
                ("31", "1/2"), ("35", "2"),
            ]),
            g: dev("4", "8", "1"),
            omegas: vec![Some("11"), Some("14"), Some("23")],
            policy: vec![
                ("-inf", "8", c("8")),
                ("8", "11", desc("16")),
                ("11", "14", desc("19")),
                ("14", "18", c("8")),
                ("18", "22", desc("26")),
                ("22", "23", c("4")),
                ("23", "27", c("8")),
                ("27", "31", desc("35")),
                ("31", "+inf", c("4")),
            ],
            value: func("0", &[
                ("8", "1"), ("14", "1/2"), ("18", "1"), ("23", "1/2"), ("27", "1"), ("31", "2"),
            ]),
        },
        Case {
            label: "same cost, higher rate: one crossing drops out",
            f: func("0", &[
                ("16", "2"), ("17", "1/2"), ("19", "2"), ("20", "1/2"), ("26", "1"),
                ("31", "1/2"), ("35", "2"),
            ]),
            g: dev("4", "8", "3/2"),
            omegas: vec![Some("19/2"), Some("25/2")],
            policy: vec![
                ("-inf", "8", c("8")),
                ("8", "19/2", desc("16")),
                ("19/2", "11", c("8")),
                ("11", "25/2", desc("19")),
                ("25/2", "27", c("8")),
                ("27", "31", desc("35")),
                ("31", "+inf", c("4")),
            ],
            value: func("0", &[
                ("8", "3/2"), ("19/2", "1/2"), ("11", "3/2"), ("25/2", "1/2"), ("18", "1"),
                ("23", "1/2"), ("27", "3/2"), ("31", "2"),
            ]),
        },
        Case {
            label: "final slope below rate: last regime holds the nominal forever",
            f: func("0", &[
                ("14", "1/2"), ("16", "2"), ("17", "1/4"), ("21", "1"), ("23", "2"),
                ("24", "3"), ("25", "4"), ("26", "1"), ("28", "1/2"), ("30", "1/4"),
                ("34", "1/2"), ("38", "1/4"),
            ]),
            g: dev("3", "8", "1"),
            omegas: vec![Some("31/3"), Some("338/15")],
            policy: vec![
                ("-inf", "8", c("8")),
                ("8", "31/3", desc("16")),
                ("31/3", "13", c("8")),
                ("13", "18", desc("21")),
                ("18", "338/15", c("3")),
                ("338/15", "+inf", c("8")),
            ],
            value: func("0", &[
                ("6", "1/2"), ("8", "1"), ("31/3", "1/4"), ("13", "1"), ("20", "2"),
                ("21", "3"), ("22", "4"), ("338/15", "1/4"), ("26", "1/2"), ("30", "1/4"),
            ]),
        },
        Case {
            label: "nonzero initial level carries through",
            f: func("4", &[
                ("17", "1"), ("18", "0"), ("19", "1/4"), ("23", "2"), ("24", "0"), ("25", "1"),
            ]),
            g: dev("4", "8", "1/2"),
            omegas: vec![Some("11"), Some("59/3")],
            policy: vec![
                ("-inf", "9", c("8")),
                ("9", "11", desc("17")),
                ("11", "15", c("8")),
                ("15", "19", desc("23")),
                ("19", "59/3", c("4")),
                ("59/3", "21", desc("25")),
                ("21", "+inf", c("4")),
            ],
            value: func("4", &[
                ("9", "1/2"), ("11", "1/4"), ("15", "1/2"), ("19", "2"), ("59/3", "1/2"), ("21", "1"),
            ]),
        },
        Case {
            label: "first instant infinite: the walk's final scan vetoes the jump",
            f: func("0", &[("20", "3"), ("24", "0"), ("25", "3/2"), ("26", "0"), ("36", "3/2")]),
            g: dev("4", "8", "1"),
            omegas: vec![None, Some("115/6")],
            policy: vec![
                ("-inf", "12", c("8")),
                ("12", "16", desc("20")),
                ("16", "115/6", c("4")),
                ("115/6", "28", c("8")),
                ("28", "32", desc("36")),
                ("32", "+inf", c("4")),
            ],
            value: func("0", &[("12", "1"), ("16", "3"), ("115/6", "0"), ("28", "1"), ("32", "3/2")]),
        },
        Case {
            label: "slope slightly below rate keeps the jump finite",
            f: func("0", &[("20", "3"), ("24", "0"), ("25", "3/2"), ("26", "9/10"), ("36", "3/2")]),
            g: dev("4", "8", "1"),
            omegas: vec![Some("39/2"), Some("64/3")],
            policy: vec![
                ("-inf", "12", c("8")),
                ("12", "16", desc("20")),
                ("16", "39/2", c("4")),
                ("39/2", "21", desc("25")),
                ("21", "64/3", c("4")),
                ("64/3", "28", c("8")),
                ("28", "32", desc("36")),
                ("32", "+inf", c("4")),
            ],
            value: func("0", &[
                ("12", "1"), ("16", "3"), ("39/2", "1"), ("21", "3/2"), ("64/3", "9/10"),
                ("28", "1"), ("32", "3/2"),
            ]),
        },
        Case {
            label: "two infinite instants before the single jump",
            f: func("0", &[
                ("20", "3"), ("24", "0"), ("25", "3"), ("26", "0"), ("27", "3/2"),
                ("28", "0"), ("38", "3/2"),
            ]),
            g: dev("4", "12", "1"),
            omegas: vec![None, None, Some("113/6")],
            policy: vec![
                ("-inf", "8", c("12")),
                ("8", "16", desc("20")),
                ("16", "113/6", c("4")),
                ("113/6", "26", c("12")),
                ("26", "34", desc("38")),
                ("34", "+inf", c("4")),
            ],
            value: func("0", &[("8", "1"), ("16", "3"), ("113/6", "0"), ("26", "1"), ("34", "3/2")]),
        },
        Case {
            label: "infinite instant in the middle of two finite ones",
            f: func("0", &[
                ("16", "3/2"), ("24", "0"), ("25", "3"), ("26", "0"), ("27", "3/2"),
                ("28", "3/8"), ("38", "3/2"),
            ]),
            g: dev("4", "12", "1"),
            omegas: vec![Some("18"), None, Some("92/5")],
            policy: vec![
                ("-inf", "4", c("12")),
                ("4", "12", desc("16")),
                ("12", "18", c("4")),
                ("18", "92/5", desc("25")),
                ("92/5", "26", c("12")),
                ("26", "34", desc("38")),
                ("34", "+inf", c("4")),
            ],
            value: func("0", &[("4", "1"), ("12", "3/2"), ("18", "1"), ("92/5", "3/8"), ("26", "1"), ("34", "3/2")]),
        },
    ]
}

#[test]
fn jump_instants_match_goldens() {
    for case in cases() {
        let sets = crossing_sets(&case.f, case.g.nu());
        let expected: Vec<Omega> = case
            .omegas
            .iter()
            .map(|o| o.map_or(Omega::PlusInf, |t| Omega::Finite(r(t))))
            .collect();
        let got: Vec<Omega> =
            (1..=sets.b.len()).map(|j| omega(&case.f, &case.g, &sets, j)).collect();
        assert_eq!(got, expected, "case: {}", case.label);
    }
}

#[test]
fn policies_match_goldens() {
    for case in cases() {
        let (policy, _) = solve_window(&case.f, &case.g);
        let expected: Vec<(Span, Segment)> = case
            .policy
            .iter()
            .map(|(s, e, seg)| (span(s, e), seg.clone()))
            .collect();
        assert_eq!(policy.pieces(), &expected[..], "case: {}", case.label);
    }
}

#[test]
fn value_functions_match_goldens() {
    for case in cases() {
        let (_, h) = solve_window(&case.f, &case.g);
        assert_eq!(h, case.value, "case: {}", case.label);
    }
}

#[test]
fn pointwise_probes() {
    let case = &cases()[4]; // nonzero initial level
    let (policy, h) = solve_window(&case.f, &case.g);
    assert_eq!(policy.eval(&rat(17)), rat(6));
    assert_eq!(h.eval(&rat(17)), rat(7));
}

#[test]
fn trace_records_the_walk() {
    // Window walk with one downward crossing whose exit goes through the
    // "local maximum between both edges" formula.
    let f = func("0", &[
        ("6", "1/2"), ("12", "3/4"), ("14", "5/4"), ("16", "3/4"), ("18", "5/4"), ("19", "3/2"),
    ]);
    let g = dev("1", "2", "1");
    let sets = crossing_sets(&f, g.nu());
    assert_eq!(sets.a, vec![3, 5]);
    assert_eq!(sets.b, vec![4]);
    let traced = omega_traced(&f, &g, &sets, 1);
    assert_eq!(traced.omega, Omega::Finite(r("29/2")));
    assert!(!traced.ambiguous_exit);

    let find = |row: u32, var: &str| {
        traced
            .rows
            .iter()
            .find(|tr| tr.row == row && tr.var == var)
            .unwrap_or_else(|| panic!("missing row={row} var={var}"))
            .value
            .clone()
    };
    assert_eq!(find(2, "h"), "3");
    assert_eq!(find(12, "tau"), "15");
    assert_eq!(find(14, "d"), "1/4");
    assert_eq!(find(23, "psi"), "1");
    assert_eq!(find(25, "lambda"), "4");
    assert_eq!(find(37, "delta"), "-1/4");
    assert_eq!(find(45, "r"), "2");
    assert_eq!(find(68, "omega"), "29/2");
    let rendered = traced.rows.iter().map(ToString::to_string).collect::<Vec<_>>();
    assert!(rendered.contains(&"row=68 var=omega value=29/2".to_string()));
}

#[test]
fn exitless_branch_is_flagged() {
    // Deep local minimum right of the walk start: the jump fires through the
    // branch whose exit marker the listing omits.
    let f = func("0", &[("1", "2"), ("2", "0"), ("9", "2")]);
    let g = dev("4", "8", "1");
    let sets = crossing_sets(&f, g.nu());
    assert_eq!(sets.b, vec![2]);
    let traced = omega_traced(&f, &g, &sets, 1);
    assert_eq!(traced.omega, Omega::Finite(r("-5")));
    assert!(traced.ambiguous_exit);
    assert!(traced.rows.iter().any(|tr| tr.row == 59 && tr.var == "omega"));
}

#[test]
fn no_crossings_hold_the_nominal() {
    let f = func("0", &[("10", "1/2"), ("20", "1/4")]);
    let g = dev("4", "8", "1");
    let (policy, h) = solve_window(&f, &g);
    assert_eq!(policy.pieces(), &[(span("-inf", "+inf"), c("8"))][..]);
    assert_eq!(h, func("0", &[("2", "1/2"), ("12", "1/4")]));

    let constant = PwlFunction::constant(rat(3));
    let (policy, h) = solve_window(&constant, &g);
    assert_eq!(policy.eval(&rat(0)), rat(8));
    assert_eq!(h, constant);
}
