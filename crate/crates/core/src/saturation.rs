//! Closure of an automaton under inference rule (*): for a rule
//! `f(l1,…,ln) → r` and `θ: Var(r) → Q` with `rθ →* q`, add
//! `f(q1,…,qn) → q` where `qi = θ(li)` if `li ∈ Var(r)` and `⟨li⟩` otherwise.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use log::debug;
use serde::Serialize;

use crate::automata::{trim_accessible, StateId, StateSet, Transition, TreeAutomaton};
use crate::error::{Error, Result};
use crate::recognizers::PatternMap;
use crate::terms::Term;
use crate::trs::{Rule, Trs};

/// How rule premises are re-examined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Re-examine a rule only when a symbol of its right-hand side gained
    /// transitions.
    #[default]
    SemiNaive,
    /// Re-examine every rule until a full pass adds nothing.
    Naive,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "semi" | "semi-naive" => Ok(Strategy::SemiNaive),
            "naive" => Ok(Strategy::Naive),
            other => Err(format!("unknown saturation strategy `{}`", other)),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SaturationStats {
    /// Passes (naive) or worklist pops (semi-naive).
    pub iterations: usize,
    /// Rule evaluations.
    pub candidate_tests: usize,
    /// Substitutions `θ` enumerated.
    pub theta_enumerations: usize,
    pub added: usize,
}

#[derive(Clone, Debug)]
pub struct Saturated {
    pub automaton: TreeAutomaton,
    pub added: BTreeSet<Transition>,
    pub stats: SaturationStats,
}

/// A rule prepared for evaluation.
struct Premise {
    head: usize,
    rhs: Term,
    /// Right-hand side variables occurring as direct lhs arguments; `θ`
    /// ranges over these one by one.
    bound: Vec<Arc<str>>,
    /// Per lhs argument: the index into `bound`, or the fixed state `⟨li⟩`.
    slots: Vec<Slot>,
    /// Signature indices of the symbols of `rhs`.
    rhs_symbols: BTreeSet<usize>,
}

enum Slot {
    Bound(usize),
    Fixed(StateId),
}

fn prepare(base: &TreeAutomaton, rule: &Rule, patterns: &PatternMap) -> Result<Premise> {
    let head = base.symbol_index(rule.head())?;
    let rhs_vars = rule.rhs().vars();
    let mut bound: Vec<Arc<str>> = Vec::new();
    let mut slots = Vec::new();
    for arg in rule.lhs().args() {
        match arg {
            Term::Var(x) if rhs_vars.contains(x) => {
                bound.push(x.clone());
                slots.push(Slot::Bound(bound.len() - 1));
            }
            _ => {
                let q = patterns
                    .get(arg)
                    .ok_or_else(|| Error::MissingPatternState(arg.to_string()))?;
                slots.push(Slot::Fixed(q));
            }
        }
    }
    let mut rhs_symbols = BTreeSet::new();
    for f in rule.rhs().symbols() {
        rhs_symbols.insert(base.symbol_index(&f)?);
    }
    Ok(Premise {
        head,
        rhs: rule.rhs().clone(),
        bound,
        slots,
        rhs_symbols,
    })
}

/// All transitions derivable by (*) from `premise` against the current
/// rules of `aut`, including ones already present.
fn derive(aut: &TreeAutomaton, premise: &Premise, stats: &mut SaturationStats) -> Result<Vec<Transition>> {
    let n = aut.num_states();
    let full = StateSet::full(n);
    // Variables not bound through an lhs argument range over all states at
    // once; with a linear rhs this is the union over their choices.
    let mut env: HashMap<Arc<str>, StateSet> = premise
        .rhs
        .vars()
        .into_iter()
        .map(|x| (x, full.clone()))
        .collect();
    let mut out = Vec::new();
    let k = premise.bound.len();
    let mut theta = vec![0usize; k];
    loop {
        stats.theta_enumerations += 1;
        for (x, &q) in premise.bound.iter().zip(&theta) {
            env.insert(x.clone(), StateSet::singleton(n, StateId::from_index(q)));
        }
        let reached = aut.run_with(&premise.rhs, &env)?;
        if !reached.is_empty() {
            let args: Vec<StateId> = premise
                .slots
                .iter()
                .map(|s| match s {
                    Slot::Bound(i) => StateId::from_index(theta[*i]),
                    Slot::Fixed(q) => *q,
                })
                .collect();
            for q in reached.iter() {
                out.push(Transition {
                    symbol: premise.head,
                    args: args.clone(),
                    target: q,
                });
            }
        }
        // Next θ in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            theta[i] += 1;
            if theta[i] < n {
                break;
            }
            theta[i] = 0;
        }
    }
}

fn check_base(base: &TreeAutomaton) -> Result<()> {
    let trimmed = trim_accessible(base);
    if let Some(q) = base.states().find(|q| !trimmed.renaming.contains_key(q)) {
        return Err(Error::InaccessibleState(q.index()));
    }
    Ok(())
}

/// Saturates `base` under `trs`, which must be linear and growing. `patterns`
/// locates the states `⟨t⟩` of the embedded `B(trs)`.
pub fn saturate(base: &TreeAutomaton, trs: &Trs, patterns: &PatternMap) -> Result<Saturated> {
    saturate_with(base, trs, patterns, Strategy::SemiNaive)
}

pub fn saturate_with(
    base: &TreeAutomaton,
    trs: &Trs,
    patterns: &PatternMap,
    strategy: Strategy,
) -> Result<Saturated> {
    trs.require_linear_growing()?;
    run(base, trs, patterns, strategy)
}

/// Saturation for left- and right-linear systems that need not be growing.
/// The result still accepts every term rewriting into the base language, but
/// may accept more.
pub fn saturate_right_linear(
    base: &TreeAutomaton,
    trs: &Trs,
    patterns: &PatternMap,
    strategy: Strategy,
) -> Result<Saturated> {
    trs.require_left_linear()?;
    if !trs.is_right_linear() {
        return Err(Error::NotLinearGrowing(
            "saturation needs a right-linear system".into(),
        ));
    }
    run(base, trs, patterns, strategy)
}

fn run(base: &TreeAutomaton, trs: &Trs, patterns: &PatternMap, strategy: Strategy) -> Result<Saturated> {
    check_base(base)?;
    let premises = trs
        .rules()
        .iter()
        .map(|r| prepare(base, r, patterns))
        .collect::<Result<Vec<_>>>()?;
    let mut aut = base.clone();
    let mut added = BTreeSet::new();
    let mut stats = SaturationStats::default();
    match strategy {
        Strategy::Naive => loop {
            stats.iterations += 1;
            let mut changed = false;
            for p in &premises {
                stats.candidate_tests += 1;
                for t in derive(&aut, p, &mut stats)? {
                    if aut.insert(t.clone()) {
                        added.insert(t);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        },
        Strategy::SemiNaive => {
            let mut dependents: HashMap<usize, Vec<usize>> = HashMap::new();
            for (i, p) in premises.iter().enumerate() {
                for &s in &p.rhs_symbols {
                    dependents.entry(s).or_default().push(i);
                }
            }
            let mut queue: VecDeque<usize> = (0..premises.len()).collect();
            let mut queued = vec![true; premises.len()];
            while let Some(i) = queue.pop_front() {
                queued[i] = false;
                stats.iterations += 1;
                stats.candidate_tests += 1;
                let mut grown = false;
                for t in derive(&aut, &premises[i], &mut stats)? {
                    if aut.insert(t.clone()) {
                        added.insert(t);
                        grown = true;
                    }
                }
                if grown {
                    for &j in dependents.get(&premises[i].head).into_iter().flatten() {
                        if !queued[j] {
                            queued[j] = true;
                            queue.push_back(j);
                        }
                    }
                }
            }
        }
    }
    stats.added = added.len();
    debug!(
        "saturation: {} rules added in {} iterations",
        stats.added, stats.iterations
    );
    Ok(Saturated {
        automaton: aut,
        added,
        stats,
    })
}

/// The transitions (*) would add to `aut` right now.
pub fn find_new_transitions(aut: &TreeAutomaton, trs: &Trs, patterns: &PatternMap) -> Result<BTreeSet<Transition>> {
    let mut stats = SaturationStats::default();
    let mut out = BTreeSet::new();
    for rule in trs.rules() {
        let p = prepare(aut, rule, patterns)?;
        for t in derive(aut, &p, &mut stats)? {
            if !aut.has_transition(&t) {
                out.insert(t);
            }
        }
    }
    Ok(out)
}
