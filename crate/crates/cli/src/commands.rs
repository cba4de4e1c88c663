use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cbn_core::cbn_nf::{
    decide_with_pipeline, normalize_by_need, Decision, Metrics, NfPipeline, Options, Outcome,
    PairMode, RedexEvidence, Verdict, DEFAULT_MAX_STATES,
};
use cbn_core::cbn_rs::{decide_rs_with_pipeline, RsPipeline};
use cbn_core::oracle::{
    check_backward_closure, check_c_soundness, check_d_characterization,
    check_dprime_characterization, check_nf_automaton, check_pattern_automaton,
    compare_nf_modes, is_bullet_free_normal_form, ModeComparison, ModeLimits,
    OracleReport, ReachCaps,
};
use cbn_core::recognizers::{
    build_nf_automaton, build_pattern_automaton, build_redex_automaton, build_rs_automaton,
};
use cbn_core::terms::{parse_term, Term};
use cbn_core::trs::{parse_trs, Approx, Trs};
use serde::Serialize;

use crate::{AnalyzeArgs, CheckArgs, Class, Common, DumpArgs, ModeArg, NormalizeArgs, SelfcheckArgs, Which};

pub const EXIT_IN_CLASS: u8 = 0;
pub const EXIT_NOT_IN_CLASS: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CAP: u8 = 3;

pub fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<cbn_core::Error>() {
        Some(core) if core.is_resource_cap() => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

fn load(path: &Path) -> Result<Trs> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(parse_trs(&text)?)
}

fn parse_ground(trs: &Trs, text: &str) -> Result<Term> {
    Ok(parse_term(text, &[] as &[&str], trs.signature())?)
}

fn max_states() -> Result<usize> {
    match std::env::var("CBN_MAX_STATES") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("CBN_MAX_STATES must be a positive integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_MAX_STATES),
    }
}

fn class_name(class: Class, common: &Common) -> String {
    match class {
        Class::Nf => format!("CBN-NF_{}", common.approx),
        Class::Rs => format!("CBN-RS_{},{}", common.alpha(), common.beta()),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct CheckReport<'a> {
    class: String,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a Term>,
    #[serde(skip_serializing_if = "Option::is_none")]
    evidence: Option<&'a [RedexEvidence]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    metrics: Option<&'a Metrics>,
}

pub fn check(a: &CheckArgs) -> Result<u8> {
    let trs = load(&a.common.file)?;
    let options = Options {
        strategy: a.common.saturate.into(),
        mode: match a.mode {
            ModeArg::Minimal => PairMode::Minimal,
            ModeArg::Exhaustive => PairMode::Exhaustive,
        },
        max_states: max_states()?,
    };
    let mut decision: Decision = match a.class {
        Class::Nf => {
            let p = NfPipeline::build(&trs, a.common.approx, options.strategy)?;
            decide_with_pipeline(&p, options)?
        }
        Class::Rs => {
            let p = RsPipeline::build(&trs, a.common.alpha(), a.common.beta(), options.strategy)?;
            decide_rs_with_pipeline(&p, options)?
        }
    };
    if !a.timings {
        decision.metrics.phase_ms.clear();
    }
    let (verdict, witness, evidence) = match &decision.verdict {
        Verdict::InClass => ("IN CLASS", None, None),
        Verdict::NotInClass { witness, evidence } => {
            ("NOT IN CLASS", Some(witness), Some(evidence.as_slice()))
        }
    };
    let report = CheckReport {
        class: class_name(a.class, &a.common),
        verdict,
        witness,
        evidence,
        metrics: (a.stats || a.timings).then_some(&decision.metrics),
    };
    if a.common.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        let mut out = String::new();
        writeln!(out, "class: {}", report.class)?;
        writeln!(out, "verdict: {}", report.verdict)?;
        if let (Some(w), Some(ev)) = (witness, evidence) {
            writeln!(out, "witness: {}", w)?;
            writeln!(out, "evidence (variant with the redex left alone, still reaches the target):")?;
            for e in ev {
                writeln!(out, "  {:<8} {}  {}", e.position.to_string(), e.variant, yes_no(e.accepted))?;
            }
        }
        if let Some(m) = report.metrics {
            out.push_str(&format_metrics(m));
        }
        print!("{}", out);
    }
    Ok(if decision.verdict.in_class() {
        EXIT_IN_CLASS
    } else {
        EXIT_NOT_IN_CLASS
    })
}

fn format_metrics(m: &Metrics) -> String {
    let mut out = String::from("stats:\n");
    let rows: [(&str, String); 14] = [
        ("rules", m.rule_count.to_string()),
        ("system size", m.trs_size.to_string()),
        ("max arity", m.max_arity.to_string()),
        ("base automaton states", m.base_states.to_string()),
        ("pattern states", m.pattern_states.to_string()),
        ("C states", m.c_states.to_string()),
        ("C transitions", m.c_transitions.to_string()),
        ("C' states", m.cprime_states.to_string()),
        ("C' transitions", m.cprime_transitions.to_string()),
        ("saturation iterations", m.saturation.iterations.to_string()),
        ("saturation candidate tests", m.saturation.candidate_tests.to_string()),
        ("saturation rules added", m.saturation.added.to_string()),
        ("pair-states explored", m.pair_states.to_string()),
        ("pair transitions tried", m.pair_transitions_tried.to_string()),
    ];
    for (k, v) in rows {
        let _ = writeln!(out, "  {:<28} {}", k, v);
    }
    for (phase, ms) in &m.phase_ms {
        let _ = writeln!(out, "  time {:<23} {} ms", phase, ms);
    }
    out
}

#[derive(Serialize)]
struct RedexRow {
    position: String,
    redex: Term,
    needed: bool,
}

pub fn analyze(a: &AnalyzeArgs) -> Result<u8> {
    let trs = load(&a.common.file)?;
    let t = parse_ground(&trs, &a.term)?;
    let strategy = a.common.saturate.into();
    let (label, verdicts) = if a.root {
        let p = RsPipeline::build(&trs, a.common.alpha(), a.common.beta(), strategy)?;
        ("root-needed", p.root_needed_redexes(&t)?)
    } else {
        let p = NfPipeline::build(&trs, a.common.approx, strategy)?;
        ("needed", p.needed_redexes(&t)?)
    };
    let rows: Vec<RedexRow> = verdicts
        .into_iter()
        .map(|(p, needed)| {
            Ok(RedexRow {
                redex: t.subterm_at(&p)?.clone(),
                position: p.to_string(),
                needed,
            })
        })
        .collect::<Result<_>>()?;
    if a.common.json {
        #[derive(Serialize)]
        struct Out<'a> {
            term: &'a Term,
            kind: &'a str,
            approx: String,
            redexes: &'a [RedexRow],
        }
        let approx = if a.root {
            format!("{},{}", a.common.alpha(), a.common.beta())
        } else {
            a.common.approx.to_string()
        };
        let out = Out {
            term: &t,
            kind: label,
            approx,
            redexes: &rows,
        };
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("term: {}", t);
        if rows.is_empty() {
            println!("no redexes");
        } else {
            println!("{:<10} {:<12} redex", "position", label);
            for r in &rows {
                println!("{:<10} {:<12} {}", r.position, yes_no(r.needed), r.redex);
            }
        }
    }
    Ok(0)
}

pub fn dump(a: &DumpArgs) -> Result<u8> {
    let trs = load(&a.common.file)?;
    let strategy = a.common.saturate.into();
    let text = match a.which {
        Which::B => build_pattern_automaton(&trs)?.automaton.dump(),
        Which::Nf => build_nf_automaton(&trs)?.dump(),
        Which::Redex => build_redex_automaton(&trs, false)?.0.automaton.dump(),
        Which::Rs => build_rs_automaton(&trs.approximate(a.common.beta())?)?.dump(),
        Which::C | Which::Cprime => match a.class {
            Class::Nf => {
                let p = NfPipeline::build(&trs, a.common.approx, strategy)?;
                if a.which == Which::C {
                    p.c.automaton.dump_with_added(&p.c.added)
                } else {
                    p.cprime.dump()
                }
            }
            Class::Rs => {
                let p = RsPipeline::build(&trs, a.common.alpha(), a.common.beta(), strategy)?;
                if a.which == Which::C {
                    p.c.automaton.dump_with_added(&p.c.added)
                } else {
                    p.cprime.dump()
                }
            }
        },
        Which::D | Which::Dprime => {
            let mut machine = if a.which == Which::D {
                NfPipeline::build(&trs, a.common.approx, strategy)?
                    .machine(PairMode::Minimal, max_states()?)?
            } else {
                RsPipeline::build(&trs, a.common.alpha(), a.common.beta(), strategy)?
                    .machine(PairMode::Minimal, max_states()?)?
            };
            if a.explore {
                machine.explore(true)?;
            }
            format!(
                "explored {} pair-states\n{}",
                machine.explored().len(),
                machine.dump()
            )
        }
    };
    if a.common.json {
        println!("{}", serde_json::to_string_pretty(&serde_json::json!({ "dump": text }))?);
    } else {
        print!("{}", text);
    }
    Ok(0)
}

#[derive(Serialize)]
struct ModeLine {
    pipeline: String,
    comparison: ModeComparison,
}

#[derive(Serialize)]
struct SelfcheckReport {
    depth: usize,
    reports: Vec<OracleReport>,
    modes: Vec<ModeLine>,
    pass: bool,
}

/// Depth for checks that enumerate all terms: ternary symbols make depth 3
/// enumerations too large for the searches behind them.
fn search_depth(trs: &Trs, depth: usize) -> usize {
    if trs.signature().max_arity() > 2 {
        depth.min(2)
    } else {
        depth
    }
}

pub fn selfcheck(a: &SelfcheckArgs) -> Result<u8> {
    if a.depth == 0 {
        bail!("--depth must be at least 1");
    }
    let trs = load(&a.file)?;
    trs.require_left_linear()?;
    let depth = a.depth;
    let caps = ReachCaps::default();
    let mut reports = Vec::new();
    let mut modes = Vec::new();
    reports.push(check_pattern_automaton(&trs.extend_bullet(), depth)?);
    reports.push(check_nf_automaton(&trs, depth)?);
    let nf = |t: &Term| is_bullet_free_normal_form(&trs, t);
    for approx in Approx::ALL {
        let mut p = NfPipeline::build(&trs, approx, Default::default())?;
        if a.inject_fault {
            p.c.automaton.set_finals([]);
        }
        let d = search_depth(&trs, depth);
        let mut r = check_c_soundness(&p.approx_trs, &p.c.automaton, &nf, d, &caps)?;
        r.name = format!("{} ({})", r.name, approx);
        reports.push(r);
        let mut r = check_backward_closure(&p.approx_trs, &p.c.automaton, d, &caps)?;
        r.name = format!("{} ({})", r.name, approx);
        reports.push(r);
        let mut r = check_d_characterization(&p, d)?;
        r.name = format!("{} ({})", r.name, approx);
        reports.push(r);
        modes.push(ModeLine {
            pipeline: format!("D ({})", approx),
            comparison: compare_nf_modes(&p, &ModeLimits::default())?,
        });
    }
    for approx in Approx::ALL {
        let p = RsPipeline::build(&trs, approx, approx, Default::default())?;
        // The exhaustive D' run is costly under the coarser approximations.
        let d = if approx == Approx::G {
            search_depth(&trs, depth)
        } else {
            depth.min(2)
        };
        let mut r = check_dprime_characterization(&p, d)?;
        r.name = format!("{} ({},{})", r.name, approx, approx);
        reports.push(r);
    }
    let pass = reports.iter().all(OracleReport::passed) && modes.iter().all(|m| m.comparison.agrees());
    let report = SelfcheckReport {
        depth,
        reports,
        modes,
        pass,
    };
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        for r in &report.reports {
            println!("{}", r);
            for d in r.disagreements.iter().take(5) {
                println!("  disagreement: {} expected {} got {}", d.term, d.expected, d.got);
            }
        }
        for m in &report.modes {
            let c = &m.comparison;
            let ex = match c.exhaustive_empty {
                Some(b) => if b { "empty" } else { "non-empty" },
                None => "unknown (cap)",
            };
            println!(
                "modes {}: minimal {}, exhaustive {}, {}",
                m.pipeline,
                if c.minimal_empty { "empty" } else { "non-empty" },
                ex,
                if c.agrees() { "agree" } else { "DISAGREE" }
            );
        }
        println!("{}", if report.pass { "PASS" } else { "FAIL" });
    }
    Ok(if report.pass { 0 } else { 1 })
}

#[derive(Serialize)]
struct StepRow {
    position: String,
    rule: usize,
    result: Term,
}

pub fn normalize(a: &NormalizeArgs) -> Result<u8> {
    let trs = load(&a.common.file)?;
    let t = parse_ground(&trs, &a.term)?;
    let n = normalize_by_need(&trs, a.common.approx, &t, a.fuel)?;
    let outcome = match n.outcome {
        Outcome::NormalForm => "normal form",
        Outcome::FuelExhausted => "fuel exhausted",
        Outcome::NoNeededRedex => "no needed redex",
    };
    if a.common.json {
        #[derive(Serialize)]
        struct Out<'a> {
            start: &'a Term,
            steps: Vec<StepRow>,
            result: &'a Term,
            outcome: &'a str,
        }
        let steps = n
            .trace
            .iter()
            .map(|s| StepRow {
                position: s.position.to_string(),
                rule: s.rule + 1,
                result: s.result.clone(),
            })
            .collect();
        let out = Out {
            start: &t,
            steps,
            result: &n.term,
            outcome,
        };
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("   {}", t);
        for s in &n.trace {
            println!("-> {}    [rule {} at {}]", s.result, s.rule + 1, s.position);
        }
        println!("{}: {}", outcome, n.term);
    }
    Ok(if n.outcome == Outcome::NormalForm { 0 } else { 1 })
}
