mod common;

use cbn_core::automata::{disjoint_union, StateLabel, TreeAutomaton};
use cbn_core::cbn_nf::NfPipeline;
use cbn_core::oracle::{
    check_backward_closure, check_c_soundness, enumerate_terms, is_bullet_free_normal_form,
    reaches, ReachAnswer, ReachCaps,
};
use cbn_core::recognizers::{build_nf_automaton, build_pattern_automaton};
use cbn_core::saturation::{saturate, saturate_right_linear, saturate_with, Strategy};
use cbn_core::terms::Signature;
use cbn_core::trs::{parse_trs, Approx, Trs};
use common::{catalog, example, valid_catalog};

fn caps() -> ReachCaps {
    ReachCaps {
        max_term_size: 14,
        max_steps: 10,
        ..ReachCaps::default()
    }
}

#[test]
fn example_soundness_all_approximations() {
    let e = example();
    for a in Approx::ALL {
        let p = NfPipeline::build(&e, a, Strategy::SemiNaive).unwrap();
        let nf = |t: &cbn_core::terms::Term| is_bullet_free_normal_form(&e, t);
        let report = check_c_soundness(&p.approx_trs, &p.c.automaton, &nf, 3, &caps()).unwrap();
        assert!(report.passed(), "{a}: {report}");
        assert!(report.agreements > 0);
        let closure = check_backward_closure(&p.approx_trs, &p.c.automaton, 3, &caps()).unwrap();
        assert!(closure.passed(), "{a}: {closure}");
    }
}

#[test]
fn catalog_soundness() {
    for (name, trs) in valid_catalog() {
        // Ternary symbols make depth 3 too large to enumerate with searches.
        let depth = if trs.signature().max_arity() > 2 { 2 } else { 3 };
        for a in Approx::ALL {
            let p = NfPipeline::build(&trs, a, Strategy::SemiNaive).unwrap();
            let nf = |t: &cbn_core::terms::Term| is_bullet_free_normal_form(&trs, t);
            let report = check_c_soundness(&p.approx_trs, &p.c.automaton, &nf, depth, &caps()).unwrap();
            assert!(report.passed(), "{name} {a}: {report}");
        }
    }
}

#[test]
fn saturation_only_grows_the_language() {
    let e = example();
    for a in Approx::ALL {
        let p = NfPipeline::build(&e, a, Strategy::SemiNaive).unwrap();
        for t in enumerate_terms(p.base.signature(), 3) {
            if p.base.accepts(&t).unwrap() {
                assert!(p.c.automaton.accepts(&t).unwrap(), "{a}: {t}");
            }
        }
    }
}

#[test]
fn strategies_agree() {
    for (name, trs) in valid_catalog() {
        for a in Approx::ALL {
            let semi = NfPipeline::build(&trs, a, Strategy::SemiNaive).unwrap();
            let naive = NfPipeline::build(&trs, a, Strategy::Naive).unwrap();
            assert_eq!(semi.c.added, naive.c.added, "{name} {a}");
        }
    }
}

fn universal(sig: &Signature) -> TreeAutomaton {
    let mut u = TreeAutomaton::new(sig.clone());
    let q = u.add_state(StateLabel::Named("all".into()));
    u.set_final(q);
    for f in sig.iter() {
        u.add_transition(f, vec![q; f.arity()], q).unwrap();
    }
    u
}

#[test]
fn universal_base_stays_universal() {
    let e = example().approximate(Approx::G).unwrap();
    let base_aut = universal(e.signature());
    let b = build_pattern_automaton(&e).unwrap();
    let base = disjoint_union(&base_aut, &b.automaton).unwrap();
    let c = saturate(&base, &e, &b.patterns.shifted(1)).unwrap();
    for t in enumerate_terms(e.signature(), 3) {
        assert!(c.automaton.accepts(&t).unwrap());
    }
}

#[test]
fn empty_system_keeps_the_base_language() {
    let e = example();
    let empty = Trs::new(e.signature().with_bullet(), Vec::new()).unwrap();
    let nf = build_nf_automaton(&e).unwrap();
    let b = build_pattern_automaton(&empty).unwrap();
    let base = disjoint_union(&nf, &b.automaton).unwrap();
    let c = saturate_with(&base, &empty, &b.patterns.shifted(nf.num_states()), Strategy::Naive).unwrap();
    assert!(c.added.is_empty());
    for t in enumerate_terms(nf.signature(), 3) {
        assert_eq!(c.automaton.accepts(&t).unwrap(), nf.accepts(&t).unwrap());
    }
}

#[test]
fn right_linear_saturation_is_sound() {
    let shift = catalog("shift.trs");
    assert!(!shift.is_growing());
    let sb = shift.extend_bullet();
    let nf = build_nf_automaton(&shift).unwrap();
    let b = build_pattern_automaton(&sb).unwrap();
    let base = disjoint_union(&nf, &b.automaton).unwrap();
    let patterns = b.patterns.shifted(nf.num_states());
    assert!(saturate_with(&base, &sb, &patterns, Strategy::SemiNaive).is_err());
    let c = saturate_right_linear(&base, &sb, &patterns, Strategy::SemiNaive).unwrap();
    let goal = |t: &cbn_core::terms::Term| is_bullet_free_normal_form(&shift, t);
    let mut hits = 0;
    for t in enumerate_terms(nf.signature(), 3) {
        if reaches(&sb, &t, &caps(), &goal) == ReachAnswer::Yes {
            hits += 1;
            assert!(c.automaton.accepts(&t).unwrap(), "{t}");
        }
    }
    assert!(hits > 0);
}

#[test]
fn non_left_linear_input_is_rejected() {
    let broken = catalog("broken.trs");
    assert!(NfPipeline::build(&broken, Approx::S, Strategy::SemiNaive).is_err());
    let nonlinear_rhs = parse_trs("(VAR x) (RULES f(x) -> g(x,x))").unwrap();
    let b = build_pattern_automaton(&nonlinear_rhs).unwrap();
    let base = b.automaton.clone();
    assert!(saturate(&base, &nonlinear_rhs, &b.patterns).is_err());
}
