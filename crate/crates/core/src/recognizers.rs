//! Base automata: the pattern automaton B(R), redex and reducible-term
//! recognizers, the normal-form automaton, the primed redex-detection
//! extension and the root-stable automaton.

use std::collections::BTreeMap;

use crate::automata::{
    complement_finals, determinize_complete, disjoint_union, trim_accessible, StateId, StateLabel,
    TreeAutomaton,
};
use crate::error::{Error, Result};
use crate::saturation::{saturate, SaturationStats};
use crate::terms::{FuncSym, Term};
use crate::trs::Trs;

/// Maps the pattern classes `⟨t⟩` of `S_R ∪ {x}` to states of some automaton.
#[derive(Clone, Debug)]
pub struct PatternMap {
    pub x_state: StateId,
    /// Keyed by canonical non-variable patterns.
    pub states: BTreeMap<Term, StateId>,
}

impl PatternMap {
    /// The state `⟨t⟩`; every variable maps to `⟨x⟩`.
    pub fn get(&self, t: &Term) -> Option<StateId> {
        if t.is_var() {
            Some(self.x_state)
        } else {
            self.states.get(&t.canonical()).copied()
        }
    }

    /// The map after the automaton was placed behind `offset` other states.
    pub fn shifted(&self, offset: usize) -> PatternMap {
        PatternMap {
            x_state: self.x_state.shifted(offset),
            states: self
                .states
                .iter()
                .map(|(t, q)| (t.clone(), q.shifted(offset)))
                .collect(),
        }
    }
}

/// `S_R`: all non-variable subterms of left-hand side arguments, canonical,
/// children before parents, first occurrence first.
pub fn pattern_index(trs: &Trs) -> Vec<Term> {
    fn visit(t: &Term, out: &mut Vec<Term>) {
        if t.is_var() {
            return;
        }
        for a in t.args() {
            visit(a, out);
        }
        let c = t.canonical();
        if !out.contains(&c) {
            out.push(c);
        }
    }
    let mut out = Vec::new();
    for rule in trs.rules() {
        for arg in rule.lhs().args() {
            visit(arg, &mut out);
        }
    }
    out
}

/// B(R) together with its pattern map.
#[derive(Clone, Debug)]
pub struct PatternAutomaton {
    pub automaton: TreeAutomaton,
    pub patterns: PatternMap,
}

fn arg_states(patterns: &PatternMap, args: &[Term]) -> Vec<StateId> {
    args.iter()
        .map(|a| patterns.get(a).expect("argument pattern has a state"))
        .collect()
}

/// B(R) over the signature of `trs`: matching rules for every pattern of
/// `S_R` and propagation rules into `⟨x⟩` for every symbol. No finals.
pub fn build_pattern_automaton(trs: &Trs) -> Result<PatternAutomaton> {
    trs.require_left_linear()?;
    let mut aut = TreeAutomaton::new(trs.signature().clone());
    let x_state = aut.add_state(StateLabel::pattern(&Term::var("x")));
    let mut patterns = PatternMap {
        x_state,
        states: BTreeMap::new(),
    };
    let index = pattern_index(trs);
    for t in &index {
        let q = aut.add_state(StateLabel::Pattern(t.clone()));
        patterns.states.insert(t.clone(), q);
    }
    for t in &index {
        let args = arg_states(&patterns, t.args());
        aut.add_transition(t.root().unwrap(), args, patterns.states[t])?;
    }
    let symbols: Vec<FuncSym> = trs.signature().iter().cloned().collect();
    for f in &symbols {
        aut.add_transition(f, vec![x_state; f.arity()], x_state)?;
    }
    Ok(PatternAutomaton {
        automaton: aut,
        patterns,
    })
}

/// B(R) plus one extra final state reached by `f(⟨l1⟩,…,⟨ln⟩)` for every
/// left-hand side.
fn with_lhs_sink(trs: &Trs, label: StateLabel, circled: bool) -> Result<(PatternAutomaton, StateId)> {
    let mut b = build_pattern_automaton(trs)?;
    let sink = b.automaton.add_state(label);
    b.automaton.set_final(sink);
    for rule in trs.rules() {
        let args = arg_states(&b.patterns, rule.lhs().args());
        let head = rule.head();
        b.automaton.add_transition(head, args.clone(), sink)?;
        if circled && !head.is_circled() && !head.is_bullet() {
            b.automaton.add_transition(&head.circled(), args, sink)?;
        }
    }
    Ok((b, sink))
}

/// Accepts the ground redexes of `trs`. With `circled`, every left-hand side
/// also fires under its circled head, which requires the circled symbols in
/// the signature.
pub fn build_redex_automaton(trs: &Trs, circled: bool) -> Result<(PatternAutomaton, StateId)> {
    with_lhs_sink(trs, StateLabel::RedexFinal, circled)
}

/// Accepts the ground terms containing a redex of `trs`, in state `q_r`.
pub fn build_reducible_automaton(trs: &Trs) -> Result<(PatternAutomaton, StateId)> {
    let (mut b, q_r) = with_lhs_sink(trs, StateLabel::RedexSink, false)?;
    add_contagion(&mut b.automaton, b.patterns.x_state, q_r)?;
    Ok((b, q_r))
}

fn add_contagion(aut: &mut TreeAutomaton, x_state: StateId, q_r: StateId) -> Result<()> {
    let symbols: Vec<FuncSym> = aut.signature().iter().cloned().collect();
    for f in &symbols {
        for i in 0..f.arity() {
            let mut args = vec![x_state; f.arity()];
            args[i] = q_r;
            aut.add_transition(f, args, q_r)?;
        }
    }
    Ok(())
}

/// A deterministic complete automaton over `F ∪ {•}` accepting the ground
/// normal forms of `R_•`. `trs` may or may not already be •-extended.
pub fn build_nf_automaton(trs: &Trs) -> Result<TreeAutomaton> {
    let bullet = if trs.signature().has_bullet() {
        trs.clone()
    } else {
        trs.extend_bullet()
    };
    let (reducible, _) = build_reducible_automaton(&bullet)?;
    let det = determinize_complete(&reducible.automaton);
    let nf = complement_finals(&det)?;
    Ok(trim_accessible(&nf).automaton)
}

/// The states added by [`extend_with_redex_detection`].
#[derive(Clone, Debug)]
pub struct RedexDetection {
    pub x_state: StateId,
    /// `⟨t⟩′` for every non-variable pattern; variables map to `⟨x⟩`.
    pub primed: PatternMap,
    /// `q_r`, absent when the extension was built without it.
    pub q_r: Option<StateId>,
    /// For every rule, the primed states of its lhs arguments, keyed by the
    /// signature index of its head.
    pub lhs_patterns: Vec<(usize, Vec<StateId>)>,
}

/// Adds a primed copy of B(R) sharing `⟨x⟩` with `c`, and (with `with_q_r`)
/// the state `q_r` accepting reducible terms. Finals are unchanged.
pub fn extend_with_redex_detection(
    c: &TreeAutomaton,
    trs: &Trs,
    with_q_r: bool,
) -> Result<(TreeAutomaton, RedexDetection)> {
    trs.require_left_linear()?;
    let x_label = StateLabel::pattern(&Term::var("x"));
    let x_state = c
        .find_state(&x_label)
        .ok_or_else(|| Error::MissingPatternState(x_label.to_string()))?;
    let mut out = c.clone();
    let mut primed = PatternMap {
        x_state,
        states: BTreeMap::new(),
    };
    let index = pattern_index(trs);
    for t in &index {
        let q = out.add_state(StateLabel::Primed(t.clone()));
        primed.states.insert(t.clone(), q);
    }
    for t in &index {
        let args = arg_states(&primed, t.args());
        out.add_transition(t.root().unwrap(), args, primed.states[t])?;
    }
    let mut lhs_patterns = Vec::new();
    for rule in trs.rules() {
        let args = arg_states(&primed, rule.lhs().args());
        lhs_patterns.push((out.symbol_index(rule.head())?, args));
    }
    let q_r = if with_q_r {
        let q_r = out.add_state(StateLabel::RedexSink);
        for rule in trs.rules() {
            let args = arg_states(&primed, rule.lhs().args());
            out.add_transition(rule.head(), args, q_r)?;
        }
        add_contagion(&mut out, x_state, q_r)?;
        Some(q_r)
    } else {
        None
    };
    Ok((
        out,
        RedexDetection {
            x_state,
            primed,
            q_r,
            lhs_patterns,
        },
    ))
}

/// `C_{REDEX_S}(S)`: the saturation of the redex automaton of `s` together
/// with a fresh copy of `B(s)`. Accepts the terms that rewrite to a redex of
/// `s`, that is, the non-root-stable terms.
pub fn build_non_root_stable_automaton(s: &Trs) -> Result<(TreeAutomaton, SaturationStats)> {
    s.require_linear_growing()?;
    let (redex, _) = build_redex_automaton(s, false)?;
    let b = build_pattern_automaton(s)?;
    let offset = redex.automaton.num_states();
    let base = disjoint_union(&redex.automaton, &b.automaton)?;
    let sat = saturate(&base, s, &b.patterns.shifted(offset))?;
    Ok((sat.automaton, sat.stats))
}

/// `A_RS_{S°}`: a deterministic complete automaton over `F ∪ F°` accepting
/// the root-stable ground terms of `S°`. `s` is the plain system.
pub fn build_rs_automaton(s: &Trs) -> Result<TreeAutomaton> {
    s.require_linear_growing()?;
    let circled = if s.signature().iter().any(FuncSym::is_circled) {
        s.clone()
    } else {
        s.extend_circle()
    };
    let (non_rs, _) = build_non_root_stable_automaton(&circled)?;
    let det = determinize_complete(&non_rs);
    Ok(trim_accessible(&complement_finals(&det)?).automaton)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term_debug;
    use crate::trs::parse_trs;

    pub(crate) const EXAMPLE: &str = "(VAR x)
        (RULES
          f(a,g(x,a)) -> b
          f(x,a) -> x
          f(b,g(a,x)) -> b
          g(b,b) -> a)";

    fn example() -> Trs {
        parse_trs(EXAMPLE).unwrap()
    }

    fn t(trs: &Trs, s: &str) -> Term {
        parse_term_debug(s, &[] as &[&str], trs.signature()).unwrap()
    }

    #[test]
    fn pattern_automaton_states() {
        let e = example().extend_bullet();
        let b = build_pattern_automaton(&e).unwrap();
        let labels: Vec<String> = b.automaton.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(labels, ["<x>", "<a>", "<g(x,a)>", "<b>", "<g(a,x)>"]);
        let run = b.automaton.run(&t(&e, "a")).unwrap();
        let names: Vec<String> = run.iter().map(|q| b.automaton.label(q).to_string()).collect();
        assert_eq!(names, ["<x>", "<a>"]);
        let run = b.automaton.run(&t(&e, "#")).unwrap();
        assert_eq!(run.iter().collect::<Vec<_>>(), [b.patterns.x_state]);
        assert!(b.automaton.finals().is_empty());
    }

    #[test]
    fn trivial_pattern_automaton() {
        let trs = parse_trs("(RULES a -> b)").unwrap();
        let b = build_pattern_automaton(&trs).unwrap();
        assert_eq!(b.automaton.num_states(), 1);
        assert_eq!(b.automaton.num_transitions(), 2);
    }

    #[test]
    fn redex_and_reducible() {
        let e = example();
        let (r, _) = build_redex_automaton(&e, false).unwrap();
        assert!(r.automaton.accepts(&t(&e, "g(b,b)")).unwrap());
        assert!(!r.automaton.accepts(&t(&e, "g(a,b)")).unwrap());
        assert!(!r.automaton.accepts(&t(&e, "f(a,g(b,b))")).unwrap());
        let eb = e.extend_bullet();
        let (red, _) = build_reducible_automaton(&eb).unwrap();
        assert!(red.automaton.accepts(&t(&eb, "f(a,g(b,b))")).unwrap());
        assert!(red.automaton.accepts(&t(&eb, "#")).unwrap());
        assert!(!red.automaton.accepts(&t(&eb, "b")).unwrap());
        let ec = e.extend_circle();
        let (rc, _) = build_redex_automaton(&ec, false).unwrap();
        assert!(rc.automaton.accepts(&t(&ec, "g@(b,b)")).unwrap());
        let (rc2, _) = build_redex_automaton(&e.with_signature(ec.signature().clone()).unwrap(), true).unwrap();
        assert!(rc2.automaton.accepts(&t(&ec, "g@(b,b)")).unwrap());
    }

    #[test]
    fn nf_automaton() {
        let e = example();
        let nf = build_nf_automaton(&e).unwrap();
        let eb = e.extend_bullet();
        assert!(nf.accepts(&t(&eb, "b")).unwrap());
        assert!(nf.accepts(&t(&eb, "g(a,b)")).unwrap());
        assert!(!nf.accepts(&t(&eb, "g(b,b)")).unwrap());
        assert!(!nf.accepts(&t(&eb, "f(b,g(a,a))")).unwrap());
        assert!(!nf.accepts(&t(&eb, "#")).unwrap());
        assert!(nf.is_deterministic_complete());
    }

    #[test]
    fn primed_extension_matches_listing() {
        let e = example();
        let b = build_pattern_automaton(&e).unwrap();
        let (cp, det) = extend_with_redex_detection(&b.automaton, &e, true).unwrap();
        assert_eq!(cp.num_states(), b.automaton.num_states() + 5);
        assert_eq!(cp.num_transitions(), b.automaton.num_transitions() + 12);
        let q_r = det.q_r.unwrap();
        assert!(cp.run(&t(&e, "g(b,b)")).unwrap().contains(q_r));
        assert!(cp.run(&t(&e, "f(a,g(b,b))")).unwrap().contains(q_r));
        assert!(!cp.run(&t(&e, "f(a,g(a,b))")).unwrap().contains(q_r));
        assert!(matches!(
            extend_with_redex_detection(&TreeAutomaton::new(e.signature().clone()), &e, true),
            Err(Error::MissingPatternState(_))
        ));
    }

    #[test]
    fn rs_automaton_for_constants() {
        let s = parse_trs("(RULES a -> b)").unwrap();
        let rs = build_rs_automaton(&s).unwrap();
        let sc = s.extend_circle();
        assert!(rs.accepts(&t(&sc, "b")).unwrap());
        assert!(!rs.accepts(&t(&sc, "a")).unwrap());
        assert!(rs.accepts(&t(&sc, "b@")).unwrap());
        assert!(!rs.accepts(&t(&sc, "a@")).unwrap());
    }
}
