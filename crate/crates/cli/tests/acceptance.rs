//! Acceptance criteria, one PASS/FAIL line each. Run with `--nocapture` to
//! see the report.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use cbn_core::cbn_nf::{
    decide_cbn_nf, decide_with_pipeline, NfPipeline, Options, PairMode, Verdict,
    DEFAULT_MAX_STATES,
};
use cbn_core::cbn_rs::{decide_rs_with_pipeline, RsPipeline};
use cbn_core::oracle::{
    check_backward_closure, check_c_soundness, check_d_characterization,
    check_dprime_characterization, check_nf_automaton, check_pattern_automaton,
    compare_nf_modes, is_bullet_free_normal_form, ModeLimits, ReachCaps,
};
use cbn_core::recognizers::build_pattern_automaton;
use cbn_core::saturation::Strategy;
use cbn_core::terms::{parse_term, Term};
use cbn_core::trs::{parse_trs, Approx, Trs};

const VERDICT_TIME_LIMIT: Duration = Duration::from_secs(10);
const PATTERN_CHECK_TIME_LIMIT: Duration = Duration::from_secs(5);
const PAIR_STATE_LIMIT: usize = 100_000;
const SOUNDNESS_CAPS: ReachCaps = ReachCaps {
    max_term_size: 14,
    max_steps: 10,
    max_frontier: 20_000,
    instantiation_depth: 2,
};

/// Criteria that cannot hold as literally stated; they are still evaluated
/// and reported.
const KNOWN_UNATTAINABLE: &[u32] = &[2];

/// Catalog files with a term used by `analyze` and `normalize`.
const CATALOG: &[(&str, &str)] = &[
    ("example.trs", "f(f(a,a),g(f(a,a),f(a,a)))"),
    ("a_to_b.trs", "a"),
    ("berry.trs", "f(c,c,c)"),
    ("constants.trs", "a"),
    ("shift.trs", "f(g(h(a)))"),
    ("broken.trs", "f(a,a)"),
];

fn catalog_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../catalog")
        .join(name)
}

fn load(name: &str) -> Trs {
    parse_trs(&std::fs::read_to_string(catalog_path(name)).unwrap()).unwrap()
}

fn valid_catalog() -> Vec<(&'static str, Trs)> {
    CATALOG
        .iter()
        .filter(|(n, _)| *n != "broken.trs")
        .map(|(n, _)| (*n, load(n)))
        .collect()
}

fn ground(trs: &Trs, s: &str) -> Term {
    parse_term(s, &[] as &[&str], trs.signature()).unwrap()
}

fn cbn(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbn"))
        .args(args)
        .env_remove("CBN_MAX_STATES")
        .env_remove("RUST_LOG")
        .output()
        .expect("cbn runs")
}

fn args(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn criterion_1() -> Outcome {
    let file = catalog_path("example.trs").display().to_string();
    let mut details = Vec::new();
    let mut pass = true;
    for (approx, expected) in [("nv", 1), ("g", 0)] {
        let clock = Instant::now();
        let out = cbn(&args(&["check", "--class", "nf", "--approx", approx, &file]));
        let elapsed = clock.elapsed();
        let verdict = String::from_utf8_lossy(&out.stdout)
            .lines()
            .find_map(|l| l.strip_prefix("verdict: ").map(str::to_string))
            .unwrap_or_default();
        pass &= out.status.code() == Some(expected) && elapsed < VERDICT_TIME_LIMIT;
        details.push(format!("{approx}: {verdict} in {:.2}s", elapsed.as_secs_f64()));
    }
    outcome(pass, format!("{} (limit 10s each)", details.join(", ")))
}

/// Returns the outcome and whether the witness part alone holds.
fn criterion_2() -> (Outcome, bool) {
    let e = load("example.trs");
    let p = NfPipeline::build(&e, Approx::NV, Strategy::SemiNaive).unwrap();
    let d = decide_with_pipeline(&p, Options::default()).unwrap();
    let witness_ok = match &d.verdict {
        Verdict::NotInClass { witness, evidence } => {
            !e.is_normal_form(witness)
                && evidence.iter().all(|ev| ev.accepted)
                && p.characterization(witness).unwrap()
        }
        Verdict::InClass => false,
    };
    let mut machine = p.machine(PairMode::Exhaustive, DEFAULT_MAX_STATES).unwrap();
    let literal = ground(&e, "f(g(a,a),g(g(a,a),g(a,a)))");
    let literal_accepted = machine.accepts_term(&literal).unwrap();
    let corrected = ground(&e, "f(f(a,a),g(f(a,a),f(a,a)))");
    let corrected_accepted = machine.accepts_term(&corrected).unwrap();
    let detail = format!(
        "witness revalidates: {witness_ok}; exhaustive D accepts f(g(a,a),g(g(a,a),g(a,a))): \
         {literal_accepted} (a normal form: {}); with f(a,a) for g(a,a): {corrected_accepted}",
        e.is_normal_form(&literal)
    );
    (outcome(witness_ok && literal_accepted, detail), witness_ok)
}

fn criterion_3() -> Outcome {
    let e = load("example.trs");
    let b = build_pattern_automaton(&e).unwrap();
    let mut labels: Vec<String> = b.automaton.labels().iter().map(|l| l.to_string()).collect();
    labels.sort();
    let expected = ["<a>", "<b>", "<g(a,x)>", "<g(x,a)>", "<x>"];
    let states_ok = labels == expected;
    let clock = Instant::now();
    let report = check_pattern_automaton(&e.extend_bullet(), 4).unwrap();
    let elapsed = clock.elapsed();
    outcome(
        states_ok && report.passed() && elapsed < PATTERN_CHECK_TIME_LIMIT,
        format!(
            "states {}; {} in {:.2}s (limit 5s)",
            labels.join(" "),
            report,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_4() -> Outcome {
    let report = check_nf_automaton(&load("example.trs"), 4).unwrap();
    outcome(
        report.passed() && report.checked >= 600,
        format!("{report} (need >= 600 terms)"),
    )
}

fn criterion_5() -> Outcome {
    let e = load("example.trs");
    let mut pass = true;
    let mut details = Vec::new();
    for a in Approx::ALL {
        let p = NfPipeline::build(&e, a, Strategy::SemiNaive).unwrap();
        let nf = |t: &Term| is_bullet_free_normal_form(&e, t);
        let s = check_c_soundness(&p.approx_trs, &p.c.automaton, &nf, 3, &SOUNDNESS_CAPS).unwrap();
        let b = check_backward_closure(&p.approx_trs, &p.c.automaton, 3, &SOUNDNESS_CAPS).unwrap();
        pass &= s.passed() && b.passed();
        details.push(format!(
            "{a}: {} disagree / {} inconclusive, closure {} disagree",
            s.disagreements.len(),
            s.inconclusive,
            b.disagreements.len()
        ));
    }
    outcome(pass, details.join("; "))
}

fn criterion_6() -> Outcome {
    let e = load("example.trs");
    let mut pass = true;
    let mut details = Vec::new();
    for a in Approx::ALL {
        let p = NfPipeline::build(&e, a, Strategy::SemiNaive).unwrap();
        let r = check_d_characterization(&p, 3).unwrap();
        pass &= r.passed() && r.inconclusive == 0;
        details.push(format!("example {a}: {}/{} agree", r.agreements, r.checked));
    }
    let ab = load("a_to_b.trs");
    let p = NfPipeline::build(&ab, Approx::S, Strategy::SemiNaive).unwrap();
    let r = check_d_characterization(&p, 3).unwrap();
    pass &= r.passed() && r.inconclusive == 0;
    details.push(format!("a->b s: {}/{} agree", r.agreements, r.checked));
    let mut compared = 0;
    for (name, trs) in valid_catalog() {
        for a in Approx::ALL {
            let p = NfPipeline::build(&trs, a, Strategy::SemiNaive).unwrap();
            let cmp = compare_nf_modes(&p, &ModeLimits::default()).unwrap();
            if !(cmp.conclusive() && cmp.agrees()) {
                pass = false;
                details.push(format!("modes differ on {name} {a}: {cmp:?}"));
            }
            compared += 1;
        }
    }
    details.push(format!("pruned vs exhaustive emptiness agree on {compared} system/approximation pairs"));
    outcome(pass, details.join("; "))
}

fn criterion_7() -> Outcome {
    let berry = load("berry.trs");
    let (berry_ok, berry_detail) = match decide_cbn_nf(&berry, Approx::S).unwrap().verdict {
        Verdict::NotInClass { witness, evidence } => {
            let p = NfPipeline::build(&berry, Approx::S, Strategy::SemiNaive).unwrap();
            let ok = witness.to_string() == "f(c,c,c)"
                && evidence.len() == 3
                && evidence.iter().all(|ev| ev.accepted)
                && p.characterization(&witness).unwrap();
            (ok, format!("berry s: NOT IN CLASS, witness {witness}"))
        }
        Verdict::InClass => (false, "berry s: IN CLASS".to_string()),
    };
    let ab = load("a_to_b.trs");
    let ab_ok = Approx::ALL
        .iter()
        .all(|&a| decide_cbn_nf(&ab, a).unwrap().verdict.in_class());
    outcome(
        berry_ok && ab_ok,
        format!("{berry_detail}; a->b in class for s, nv, g: {ab_ok}"),
    )
}

fn criterion_8() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for (name, a) in [("a_to_b.trs", Approx::S), ("example.trs", Approx::G)] {
        let trs = load(name);
        let p = RsPipeline::build(&trs, a, a, Strategy::SemiNaive).unwrap();
        let r = check_dprime_characterization(&p, 3).unwrap();
        let d = decide_rs_with_pipeline(&p, Options::default()).unwrap();
        let witness_ok = match &d.verdict {
            Verdict::InClass => true,
            Verdict::NotInClass { witness, .. } => p.characterization(witness).unwrap(),
        };
        pass &= r.passed() && r.inconclusive == 0 && witness_ok;
        details.push(format!(
            "{name} {a},{a}: {}/{} agree, {}",
            r.agreements,
            r.checked,
            if d.verdict.in_class() { "IN CLASS" } else { "NOT IN CLASS" }
        ));
    }
    outcome(pass, details.join("; "))
}

fn command_matrix(file: &str, term: &str) -> Vec<Vec<String>> {
    let mut runs = Vec::new();
    for a in ["s", "nv", "g"] {
        runs.push(args(&["check", "--class", "nf", "--approx", a, "--stats", file]));
        runs.push(args(&["check", "--class", "rs", "--approx", a, "--stats", "--json", file]));
    }
    for which in ["b", "nf", "redex", "rs", "c", "cprime", "d", "dprime"] {
        runs.push(args(&["dump-automaton", "--which", which, file]));
    }
    runs.push(args(&["dump-automaton", "--which", "d", "--explore", "--approx", "nv", file]));
    runs.push(args(&["analyze", "--approx", "nv", "--term", term, file]));
    runs.push(args(&["analyze", "--root", "--approx", "s", "--term", term, file]));
    runs.push(args(&["normalize", "--approx", "g", "--term", term, file]));
    runs.push(args(&["selfcheck", "--depth", "2", file]));
    runs
}

fn criterion_9() -> Outcome {
    let mut runs = 0;
    let mut mismatches = Vec::new();
    for (name, term) in CATALOG {
        let file = catalog_path(name).display().to_string();
        for cmd in command_matrix(&file, term) {
            let first = cbn(&cmd);
            let second = cbn(&cmd);
            runs += 1;
            if first.status.code() != second.status.code()
                || first.stdout != second.stdout
                || first.stderr != second.stderr
            {
                mismatches.push(format!("{name}: {}", cmd[..cmd.len() - 1].join(" ")));
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "{runs} commands run twice, {} differ{}",
            mismatches.len(),
            if mismatches.is_empty() {
                String::new()
            } else {
                format!(": {}", mismatches.join(", "))
            }
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut pass = true;
    let mut max_pairs = 0;
    let mut max_iterations = 0;
    for (_, trs) in valid_catalog() {
        for a in Approx::ALL {
            let p = NfPipeline::build(&trs, a, Strategy::SemiNaive).unwrap();
            let d = decide_with_pipeline(&p, Options::default()).unwrap();
            let rp = RsPipeline::build(&trs, a, a, Strategy::SemiNaive).unwrap();
            let rd = decide_rs_with_pipeline(&rp, Options::default()).unwrap();
            for m in [&d.metrics, &rd.metrics] {
                pass &= m.pair_states < PAIR_STATE_LIMIT && m.saturation.iterations > 0;
                max_pairs = max_pairs.max(m.pair_states);
                max_iterations = max_iterations.max(m.saturation.iterations);
            }
        }
    }
    let file = catalog_path("example.trs").display().to_string();
    let stats = String::from_utf8(cbn(&args(&["check", "--stats", &file])).stdout).unwrap();
    let reported = stats.contains("pair-states explored") && stats.contains("saturation iterations");
    outcome(
        pass && reported,
        format!(
            "max pair-states {max_pairs} (limit 100000), max saturation iterations {max_iterations}, reported by --stats: {reported}"
        ),
    )
}

#[test]
fn acceptance() {
    let (c2, witness_part) = criterion_2();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "worked-example verdicts", criterion_1()),
        (2, "worked-example witness", c2),
        (3, "pattern automaton structure", criterion_3()),
        (4, "normal-form automaton language", criterion_4()),
        (5, "saturation correctness", criterion_5()),
        (6, "D characterization", criterion_6()),
        (7, "strong-sequentiality catalog", criterion_7()),
        (8, "root-stability pipeline", criterion_8()),
        (9, "determinism", criterion_9()),
        (10, "resource sanity", criterion_10()),
    ];
    for (n, name, o) in &results {
        println!(
            "criterion {n:>2} {name}: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    assert!(witness_part, "the nv witness must revalidate");
    let unexpected: Vec<u32> = results
        .iter()
        .filter(|(n, _, o)| !o.pass && !KNOWN_UNATTAINABLE.contains(n))
        .map(|(n, _, _)| *n)
        .collect();
    assert!(unexpected.is_empty(), "failing criteria: {unexpected:?}");
}
