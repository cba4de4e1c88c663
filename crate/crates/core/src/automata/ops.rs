//! Subset construction, complement, accessibility and emptiness.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::terms::Term;

use super::{StateId, StateLabel, StateSet, Transition, TreeAutomaton};

/// Calls `f` on every tuple in `{0..count}^k` in lexicographic order.
fn for_each_tuple(k: usize, count: usize, mut f: impl FnMut(&[usize])) {
    if k == 0 {
        f(&[]);
        return;
    }
    if count == 0 {
        return;
    }
    let mut tuple = vec![0; k];
    loop {
        f(&tuple);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < count {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Subset construction restricted to accessible subsets. The result is
/// deterministic and complete: the empty subset appears as a sink whenever
/// some combination reaches nothing. A subset is final iff it contains a
/// final state of `aut`.
pub fn determinize_complete(aut: &TreeAutomaton) -> TreeAutomaton {
    let mut subsets: Vec<StateSet> = Vec::new();
    let mut index: HashMap<StateSet, usize> = HashMap::new();
    let mut table: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    loop {
        let before = subsets.len();
        let before_entries = table.len();
        for (si, sym) in aut.signature().iter().enumerate() {
            let count = subsets.len();
            let mut found: Vec<(Vec<usize>, StateSet)> = Vec::new();
            for_each_tuple(sym.arity(), count, |tuple| {
                if table.contains_key(&(si, tuple.to_vec())) {
                    return;
                }
                let children: Vec<&StateSet> = tuple.iter().map(|&i| &subsets[i]).collect();
                found.push((tuple.to_vec(), aut.step(si, &children)));
            });
            for (tuple, target) in found {
                let id = *index.entry(target.clone()).or_insert_with(|| {
                    subsets.push(target);
                    subsets.len() - 1
                });
                table.insert((si, tuple), id);
            }
        }
        if subsets.len() == before && table.len() == before_entries {
            break;
        }
    }
    let mut out = TreeAutomaton::new(aut.signature().clone());
    for s in &subsets {
        let label = StateLabel::Subset(s.iter().map(|q| aut.label(q).clone()).collect());
        let q = out.add_state(label);
        if aut.any_final(s) {
            out.set_final(q);
        }
    }
    let mut entries: Vec<_> = table.into_iter().collect();
    entries.sort();
    for ((symbol, tuple), target) in entries {
        out.insert(Transition {
            symbol,
            args: tuple.into_iter().map(StateId::from_index).collect(),
            target: StateId::from_index(target),
        });
    }
    out
}

impl TreeAutomaton {
    /// Exactly one transition for every symbol and every tuple of states.
    pub fn is_deterministic_complete(&self) -> bool {
        let n = self.num_states();
        let mut seen: HashMap<(usize, &[StateId]), StateId> = HashMap::new();
        for t in self.transitions() {
            if let Some(prev) = seen.insert((t.symbol, &t.args), t.target) {
                if prev != t.target {
                    return false;
                }
            }
        }
        let expected: usize = self
            .signature()
            .iter()
            .map(|f| n.pow(f.arity() as u32))
            .sum();
        seen.len() == expected
    }
}

/// Swaps final and non-final states of a deterministic complete automaton.
pub fn complement_finals(aut: &TreeAutomaton) -> Result<TreeAutomaton> {
    if !aut.is_deterministic_complete() {
        return Err(Error::NotDeterministicComplete);
    }
    let mut out = aut.clone();
    let finals: Vec<StateId> = aut.states().filter(|q| !aut.is_final(*q)).collect();
    out.set_finals(finals);
    Ok(out)
}

/// Minimal-height representatives of every accessible state. Ties are broken
/// by transition order, so the result is deterministic.
fn representatives(aut: &TreeAutomaton) -> Vec<Option<(Term, usize)>> {
    let mut reps: Vec<Option<(Term, usize)>> = vec![None; aut.num_states()];
    let mut round = 0;
    loop {
        let known: Vec<bool> = reps.iter().map(Option::is_some).collect();
        let mut fresh: Vec<(StateId, Term)> = Vec::new();
        let mut taken = vec![false; aut.num_states()];
        for t in aut.transitions() {
            let q = t.target.index();
            if known[q] || taken[q] || !t.args.iter().all(|a| known[a.index()]) {
                continue;
            }
            let args: Vec<Term> = t
                .args
                .iter()
                .map(|a| reps[a.index()].as_ref().unwrap().0.clone())
                .collect();
            let sym = aut.signature().symbol(t.symbol).clone();
            taken[q] = true;
            fresh.push((t.target, Term::app(sym, args)));
        }
        if fresh.is_empty() {
            return reps;
        }
        for (q, term) in fresh {
            reps[q.index()] = Some((term, round));
        }
        round += 1;
    }
}

/// The accessible part of an automaton.
#[derive(Clone, Debug)]
pub struct Trimmed {
    pub automaton: TreeAutomaton,
    /// A minimal-height term reaching each state of `automaton`.
    pub representatives: Vec<Term>,
    /// Old state id to new state id.
    pub renaming: HashMap<StateId, StateId>,
}

/// Drops states no ground term reaches, together with their transitions.
/// Remaining states keep their relative order.
pub fn trim_accessible(aut: &TreeAutomaton) -> Trimmed {
    let reps = representatives(aut);
    let mut out = TreeAutomaton::new(aut.signature().clone());
    let mut renaming = HashMap::new();
    let mut representatives = Vec::new();
    for q in aut.states() {
        if let Some((term, _)) = &reps[q.index()] {
            let nq = out.add_state(aut.label(q).clone());
            renaming.insert(q, nq);
            representatives.push(term.clone());
            if aut.is_final(q) {
                out.set_final(nq);
            }
        }
    }
    for t in aut.transitions() {
        if t.args.iter().all(|a| renaming.contains_key(a)) {
            out.insert(Transition {
                symbol: t.symbol,
                args: t.args.iter().map(|a| renaming[a]).collect(),
                target: renaming[&t.target],
            });
        }
    }
    Trimmed {
        automaton: out,
        representatives,
        renaming,
    }
}

/// A minimal-height accepted term, or `None` if the language is empty.
pub fn emptiness_witness(aut: &TreeAutomaton) -> Option<Term> {
    let reps = representatives(aut);
    let finals: BTreeSet<StateId> = aut.finals().clone();
    finals
        .into_iter()
        .filter_map(|q| reps[q.index()].as_ref().map(|(t, r)| (*r, q, t)))
        .min_by_key(|(r, q, _)| (*r, *q))
        .map(|(_, _, t)| t.clone())
}
