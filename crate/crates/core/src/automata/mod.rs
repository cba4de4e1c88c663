//! Finite bottom-up tree automata without ε-transitions.

mod ops;
mod stateset;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::terms::{FuncSym, Signature, Term};

pub use ops::{complement_finals, determinize_complete, emptiness_witness, trim_accessible, Trimmed};
pub use stateset::{StateId, StateSet};

/// Where a state comes from. Labels are only used for lookups during
/// construction and for dumps; languages never depend on them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateLabel {
    /// `⟨t⟩` for a pattern `t` in canonical variable naming.
    Pattern(Term),
    /// `⟨t⟩′`, the primed copy used to detect redexes.
    Primed(Term),
    /// `q_r`, accepting reducible terms.
    RedexSink,
    /// `q_f`, accepting redexes.
    RedexFinal,
    Named(String),
    /// A state of a subset construction.
    Subset(Vec<StateLabel>),
    /// A label qualified by the component it was copied from.
    Scoped(String, Box<StateLabel>),
}

impl StateLabel {
    pub fn pattern(t: &Term) -> Self {
        StateLabel::Pattern(t.canonical())
    }

    pub fn primed(t: &Term) -> Self {
        StateLabel::Primed(t.canonical())
    }

    pub fn scoped(tag: &str, inner: StateLabel) -> Self {
        StateLabel::Scoped(tag.to_string(), Box::new(inner))
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateLabel::Pattern(t) => write!(f, "<{}>", t),
            StateLabel::Primed(t) => write!(f, "<{}>'", t),
            StateLabel::RedexSink => write!(f, "q_r"),
            StateLabel::RedexFinal => write!(f, "q_f"),
            StateLabel::Named(s) => write!(f, "{}", s),
            StateLabel::Subset(members) => {
                write!(f, "{{")?;
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", m)?;
                }
                write!(f, "}}")
            }
            StateLabel::Scoped(tag, inner) => write!(f, "{}:{}", tag, inner),
        }
    }
}

/// A transition `f(q1,...,qn) -> q`; `symbol` indexes the automaton's
/// signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub symbol: usize,
    pub args: Vec<StateId>,
    pub target: StateId,
}

/// A term whose leaves may be sets of states (`Q(t)` expansion: a leaf set
/// stands for any one of its members).
#[derive(Clone, Debug)]
pub enum MixedTerm {
    App(FuncSym, Vec<MixedTerm>),
    States(StateSet),
}

/// A finite bottom-up tree automaton.
#[derive(Clone, Debug)]
pub struct TreeAutomaton {
    signature: Signature,
    labels: Vec<StateLabel>,
    finals: BTreeSet<StateId>,
    rules: BTreeSet<Transition>,
    by_symbol: Vec<Vec<(Box<[StateId]>, StateId)>>,
}

impl TreeAutomaton {
    pub fn new(signature: Signature) -> Self {
        let by_symbol = vec![Vec::new(); signature.len()];
        TreeAutomaton {
            signature,
            labels: Vec::new(),
            finals: BTreeSet::new(),
            rules: BTreeSet::new(),
            by_symbol,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.rules.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.labels.len()).map(StateId::from_index)
    }

    pub fn label(&self, q: StateId) -> &StateLabel {
        &self.labels[q.index()]
    }

    pub fn labels(&self) -> &[StateLabel] {
        &self.labels
    }

    /// The first state carrying `label`.
    pub fn find_state(&self, label: &StateLabel) -> Option<StateId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(StateId::from_index)
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(&q)
    }

    pub fn final_set(&self) -> StateSet {
        StateSet::from_ids(self.num_states(), self.finals.iter().copied())
    }

    pub fn transitions(&self) -> impl Iterator<Item = &Transition> {
        self.rules.iter()
    }

    pub fn has_transition(&self, t: &Transition) -> bool {
        self.rules.contains(t)
    }

    pub fn add_state(&mut self, label: StateLabel) -> StateId {
        self.labels.push(label);
        StateId::from_index(self.labels.len() - 1)
    }

    pub fn set_final(&mut self, q: StateId) {
        assert!(q.index() < self.num_states(), "unknown state {}", q);
        self.finals.insert(q);
    }

    pub fn set_finals<I: IntoIterator<Item = StateId>>(&mut self, finals: I) {
        self.finals = finals.into_iter().collect();
        assert!(self.finals.iter().all(|q| q.index() < self.num_states()));
    }

    /// Adds `sym(args) -> target`; returns whether the rule is new.
    pub fn add_transition(&mut self, sym: &FuncSym, args: Vec<StateId>, target: StateId) -> Result<bool> {
        let symbol = self
            .signature
            .index_of(sym)
            .ok_or_else(|| Error::UnknownSymbol(sym.to_string()))?;
        if args.len() != sym.arity() {
            return Err(Error::Arity {
                symbol: sym.to_string(),
                expected: sym.arity(),
                found: args.len(),
            });
        }
        Ok(self.insert(Transition {
            symbol,
            args,
            target,
        }))
    }

    /// Adds a transition given by symbol index. Panics on malformed input.
    pub fn insert(&mut self, t: Transition) -> bool {
        let n = self.num_states();
        assert!(
            t.target.index() < n && t.args.iter().all(|q| q.index() < n),
            "transition mentions an unknown state"
        );
        assert_eq!(self.signature.symbol(t.symbol).arity(), t.args.len());
        if self.rules.contains(&t) {
            return false;
        }
        self.by_symbol[t.symbol].push((t.args.clone().into_boxed_slice(), t.target));
        self.rules.insert(t);
        true
    }

    /// States reachable from `sym(S1,...,Sn)` where each `Si` is a set of
    /// possible argument states.
    pub fn step(&self, symbol: usize, children: &[&StateSet]) -> StateSet {
        let mut out = StateSet::empty(self.num_states());
        for (args, target) in &self.by_symbol[symbol] {
            if args.iter().zip(children).all(|(q, s)| s.contains(*q)) {
                out.insert(*target);
            }
        }
        out
    }

    pub fn symbol_index(&self, sym: &FuncSym) -> Result<usize> {
        self.signature
            .index_of(sym)
            .ok_or_else(|| Error::UnknownSymbol(sym.to_string()))
    }

    /// All states reachable from a ground term.
    pub fn run(&self, t: &Term) -> Result<StateSet> {
        match t {
            Term::Var(_) => Err(Error::NotGround(t.to_string())),
            Term::App(f, args) => {
                let symbol = self.symbol_index(f)?;
                let children = args.iter().map(|a| self.run(a)).collect::<Result<Vec<_>>>()?;
                let refs: Vec<&StateSet> = children.iter().collect();
                Ok(self.step(symbol, &refs))
            }
        }
    }

    /// Like [`run`](Self::run), with each variable standing for a set of
    /// states.
    pub fn run_with(&self, t: &Term, env: &HashMap<Arc<str>, StateSet>) -> Result<StateSet> {
        match t {
            Term::Var(x) => env
                .get(x)
                .cloned()
                .ok_or_else(|| Error::NotGround(t.to_string())),
            Term::App(f, args) => {
                let symbol = self.symbol_index(f)?;
                let children = args
                    .iter()
                    .map(|a| self.run_with(a, env))
                    .collect::<Result<Vec<_>>>()?;
                let refs: Vec<&StateSet> = children.iter().collect();
                Ok(self.step(symbol, &refs))
            }
        }
    }

    /// Runs a mixed term: every leaf state set contributes each of its
    /// members.
    pub fn run_mixed(&self, t: &MixedTerm) -> Result<StateSet> {
        match t {
            MixedTerm::States(s) => Ok(s.widened(self.num_states())),
            MixedTerm::App(f, args) => {
                let symbol = self.symbol_index(f)?;
                let children = args
                    .iter()
                    .map(|a| self.run_mixed(a))
                    .collect::<Result<Vec<_>>>()?;
                let refs: Vec<&StateSet> = children.iter().collect();
                Ok(self.step(symbol, &refs))
            }
        }
    }

    pub fn accepts(&self, t: &Term) -> Result<bool> {
        let reached = self.run(t)?;
        Ok(self.any_final(&reached))
    }

    /// True iff some state of `reached` is final.
    pub fn any_final(&self, reached: &StateSet) -> bool {
        reached.iter().any(|q| self.finals.contains(&q))
    }

    /// A copy with every label wrapped in `tag`.
    pub fn scoped(&self, tag: &str) -> TreeAutomaton {
        let mut out = self.clone();
        out.labels = self
            .labels
            .iter()
            .map(|l| StateLabel::scoped(tag, l.clone()))
            .collect();
        out
    }

    /// The same automaton over a larger signature (new symbols get no rules).
    pub fn with_signature(&self, signature: Signature) -> Result<TreeAutomaton> {
        let mut out = TreeAutomaton::new(signature);
        out.labels = self.labels.clone();
        out.finals = self.finals.clone();
        for t in &self.rules {
            let sym = self.signature.symbol(t.symbol);
            out.add_transition(sym, t.args.clone(), t.target)?;
        }
        Ok(out)
    }

    /// Deterministic text dump: one line per state, then the transitions in
    /// lexicographic order. Transitions in `added` are flagged with `+` and
    /// listed after the others.
    pub fn dump_with_added(&self, added: &BTreeSet<Transition>) -> String {
        let mut out = String::new();
        for q in self.states() {
            out.push_str(&format!("state {} {}", q, self.label(q)));
            if self.is_final(q) {
                out.push_str(" final");
            }
            out.push('\n');
        }
        let mut base: Vec<String> = Vec::new();
        let mut extra: Vec<String> = Vec::new();
        for t in &self.rules {
            let line = self.format_transition(t);
            if added.contains(t) {
                extra.push(format!("+ {}", line));
            } else {
                base.push(line);
            }
        }
        base.sort();
        extra.sort();
        for l in base.into_iter().chain(extra) {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }

    pub fn dump(&self) -> String {
        self.dump_with_added(&BTreeSet::new())
    }

    pub fn format_transition(&self, t: &Transition) -> String {
        let sym = self.signature.symbol(t.symbol);
        if t.args.is_empty() {
            format!("{} -> {}", sym, t.target)
        } else {
            let args: Vec<String> = t.args.iter().map(|q| q.to_string()).collect();
            format!("{}({}) -> {}", sym, args.join(","), t.target)
        }
    }
}

/// The union of two automata over the same signature with states renamed
/// apart: states of `a` keep their ids, state `q` of `b` becomes
/// `q.shifted(a.num_states())`.
pub fn disjoint_union(a: &TreeAutomaton, b: &TreeAutomaton) -> Result<TreeAutomaton> {
    if a.signature != b.signature {
        return Err(Error::SignatureMismatch(format!(
            "{} vs {}",
            a.signature, b.signature
        )));
    }
    let offset = a.num_states();
    let mut out = a.clone();
    for l in &b.labels {
        out.add_state(l.clone());
    }
    for q in &b.finals {
        out.set_final(q.shifted(offset));
    }
    for t in &b.rules {
        out.insert(Transition {
            symbol: t.symbol,
            args: t.args.iter().map(|q| q.shifted(offset)).collect(),
            target: t.target.shifted(offset),
        });
    }
    Ok(out)
}
