//! Call by need to normal form: the pair-state automaton D(R), the decision
//! procedure for CBN-NF and neededness of concrete redexes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

use log::{debug, warn};
use serde::Serialize;

use crate::automata::{disjoint_union, StateId, StateSet, TreeAutomaton};
use crate::error::{Error, Result};
use crate::recognizers::{
    build_nf_automaton, build_pattern_automaton, extend_with_redex_detection, RedexDetection,
};
use crate::saturation::{saturate_with, Saturated, SaturationStats, Strategy};
use crate::terms::{match_pattern, Position, Signature, Term};
use crate::trs::{Approx, Trs};

/// How the nondeterministic choice of `P` is explored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum PairMode {
    /// Only ⊆-minimal choices, with subsumption pruning.
    #[default]
    Minimal,
    /// Every admissible choice. Exponential; meant for cross-checking.
    Exhaustive,
}

/// A state `[S,P]` of D or D′.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PairState {
    pub s: StateSet,
    pub p: StateSet,
}

/// What a transition contributes to `P` when a primed left-hand side
/// pattern fires at the current symbol.
#[derive(Clone, Debug)]
pub(crate) enum SecondComponent {
    /// `P² = {⟨x⟩}`.
    Bullet(StateId),
    /// `P²` a non-empty subset of `f°(S1,…,Sn)↓`; the vector maps plain
    /// symbol indices of `F` to the C′ index of their circled partner.
    Circled(Vec<usize>),
}

/// The condition on `S` for a final pair-state.
#[derive(Clone, Debug)]
pub(crate) enum RootCondition {
    Contains(StateId),
    Intersects(StateSet),
}

/// Largest union of hitting constraints the exhaustive mode will enumerate
/// subsets of.
const EXHAUSTIVE_LIMIT: usize = 16;

/// The pair automaton, explored lazily. Its signature is `F`.
#[derive(Clone, Debug)]
pub struct DMachine {
    cprime: TreeAutomaton,
    signature: Signature,
    /// `F` index to C′ symbol index.
    sym_map: Vec<usize>,
    /// Per `F` symbol: primed argument states of its left-hand sides.
    lhs_patterns: Vec<Vec<Vec<StateId>>>,
    q_finals: StateSet,
    second: SecondComponent,
    root: RootCondition,
    mode: PairMode,
    max_states: usize,
    memo: HashMap<(usize, Vec<StateSet>), StateSet>,
    states: Vec<PairState>,
    index: HashMap<PairState, usize>,
    by_s: HashMap<StateSet, Vec<usize>>,
    provenance: Vec<(usize, Vec<usize>)>,
    dead: Vec<bool>,
    transitions_tried: usize,
    /// Transitions computed plus pair-states they produced.
    work: usize,
    work_budget: Option<usize>,
    /// Results of [`DMachine::run_term`] per subterm.
    runs: HashMap<Term, BTreeSet<PairState>>,
}

impl DMachine {
    pub(crate) fn new(
        cprime: TreeAutomaton,
        signature: Signature,
        detection: &RedexDetection,
        q_finals: StateSet,
        second: SecondComponent,
        root: RootCondition,
        mode: PairMode,
        max_states: usize,
    ) -> Result<DMachine> {
        if signature.has_bullet() {
            return Err(Error::BulletInPairAutomaton);
        }
        let sym_map = signature
            .iter()
            .map(|f| cprime.symbol_index(f))
            .collect::<Result<Vec<_>>>()?;
        let mut lhs_patterns = vec![Vec::new(); signature.len()];
        for (sym, args) in &detection.lhs_patterns {
            if let Some(i) = sym_map.iter().position(|s| s == sym) {
                lhs_patterns[i].push(args.clone());
            }
        }
        Ok(DMachine {
            cprime,
            signature,
            sym_map,
            lhs_patterns,
            q_finals,
            second,
            root,
            mode,
            max_states,
            memo: HashMap::new(),
            states: Vec::new(),
            index: HashMap::new(),
            by_s: HashMap::new(),
            provenance: Vec::new(),
            dead: Vec::new(),
            transitions_tried: 0,
            work: 0,
            work_budget: None,
            runs: HashMap::new(),
        })
    }

    /// Limits the total work: one unit per transition computed and per
    /// pair-state it produces. Exceeding it raises [`Error::WorkBudget`].
    pub fn with_work_budget(mut self, budget: usize) -> Self {
        self.work_budget = Some(budget);
        self
    }

    /// Work spent so far; see [`DMachine::with_work_budget`].
    pub fn work(&self) -> usize {
        self.work
    }

    pub fn set_work_budget(&mut self, budget: Option<usize>) {
        self.work_budget = budget;
    }

    fn charge(&mut self, units: usize) -> Result<()> {
        self.work = self.work.saturating_add(units);
        match self.work_budget {
            Some(b) if self.work > b => Err(Error::WorkBudget(b)),
            _ => Ok(()),
        }
    }

    pub fn cprime(&self) -> &TreeAutomaton {
        &self.cprime
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn mode(&self) -> PairMode {
        self.mode
    }

    /// Pair-states created so far, including pruned ones.
    pub fn explored(&self) -> &[PairState] {
        &self.states
    }

    pub fn transitions_tried(&self) -> usize {
        self.transitions_tried
    }

    pub fn is_final(&self, st: &PairState) -> bool {
        let root_ok = match &self.root {
            RootCondition::Contains(q) => st.s.contains(*q),
            RootCondition::Intersects(set) => st.s.intersects(set),
        };
        root_ok && st.p.is_subset(&self.q_finals)
    }

    fn step(&mut self, sym: usize, children: Vec<StateSet>) -> StateSet {
        let key = (sym, children);
        if let Some(s) = self.memo.get(&key) {
            return s.clone();
        }
        let refs: Vec<&StateSet> = key.1.iter().collect();
        let out = self.cprime.step(sym, &refs);
        self.memo.insert(key, out.clone());
        out
    }

    /// All targets of `f([S1,P1],…,[Sn,Pn])` under the current mode. `f` is
    /// an index into the machine's signature.
    pub fn d_transition(&mut self, f: usize, children: &[&PairState]) -> Result<Vec<PairState>> {
        let arity = self.signature.symbol(f).arity();
        if children.len() != arity {
            return Err(Error::Arity {
                symbol: self.signature.symbol(f).to_string(),
                expected: arity,
                found: children.len(),
            });
        }
        self.transitions_tried += 1;
        self.charge(1)?;
        let sym = self.sym_map[f];
        let width = self.cprime.num_states();
        let ss: Vec<StateSet> = children.iter().map(|c| c.s.clone()).collect();
        let s = self.step(sym, ss.clone());
        let mut constraints: Vec<StateSet> = Vec::new();
        for (i, child) in children.iter().enumerate() {
            for q in child.p.iter() {
                let mut args = ss.clone();
                args[i] = StateSet::singleton(width, q);
                let h = self.step(sym, args);
                if h.is_empty() {
                    return Ok(Vec::new());
                }
                constraints.push(h);
            }
        }
        let p1_options = match self.mode {
            PairMode::Minimal => minimal_hitting_sets(&constraints, width),
            PairMode::Exhaustive => all_hitting_sets(&constraints, width)?,
        };
        let fires = self.lhs_patterns[f]
            .iter()
            .any(|args| args.iter().zip(&ss).all(|(q, s)| s.contains(*q)));
        let p2_options: Vec<StateSet> = if !fires {
            vec![StateSet::empty(width)]
        } else {
            match &self.second {
                SecondComponent::Bullet(x) => vec![StateSet::singleton(width, *x)],
                SecondComponent::Circled(circled) => {
                    let csym = circled[f];
                    let targets = self.step(csym, ss);
                    if targets.is_empty() {
                        return Ok(Vec::new());
                    }
                    match self.mode {
                        PairMode::Minimal => targets
                            .iter()
                            .map(|q| StateSet::singleton(width, q))
                            .collect(),
                        PairMode::Exhaustive => nonempty_subsets(&targets, width)?,
                    }
                }
            }
        };
        let targets = p1_options.len().saturating_mul(p2_options.len());
        if targets > MAX_TARGETS_PER_TRANSITION {
            return Err(Error::StateCap(MAX_TARGETS_PER_TRANSITION));
        }
        self.charge(targets)?;
        let mut out = BTreeSet::new();
        for p1 in &p1_options {
            for p2 in &p2_options {
                out.insert(PairState {
                    s: s.clone(),
                    p: p1.union(p2),
                });
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Adds a pair-state; returns its index unless it is subsumed by an
    /// existing one (minimal mode) or already present.
    fn intern(&mut self, st: PairState, prov: (usize, Vec<usize>)) -> Result<Option<usize>> {
        if self.index.contains_key(&st) {
            return Ok(None);
        }
        if self.mode == PairMode::Minimal {
            let same_s = self.by_s.get(&st.s).cloned().unwrap_or_default();
            if same_s
                .iter()
                .any(|&i| !self.dead[i] && self.states[i].p.is_subset(&st.p))
            {
                return Ok(None);
            }
            for &i in &same_s {
                if st.p.is_subset(&self.states[i].p) {
                    self.dead[i] = true;
                }
            }
        }
        if self.states.len() >= self.max_states {
            return Err(Error::StateCap(self.max_states));
        }
        let id = self.states.len();
        self.index.insert(st.clone(), id);
        self.by_s.entry(st.s.clone()).or_default().push(id);
        self.states.push(st);
        self.provenance.push(prov);
        self.dead.push(false);
        Ok(Some(id))
    }

    /// Explores reachable pair-states bottom-up. With `stop_at_final`,
    /// returns as soon as a final pair-state appears.
    pub fn explore(&mut self, stop_at_final: bool) -> Result<Option<usize>> {
        let constants: Vec<usize> = (0..self.signature.len())
            .filter(|&f| self.signature.symbol(f).arity() == 0)
            .collect();
        if self.states.is_empty() {
            for f in constants {
                for st in self.d_transition(f, &[])? {
                    if let Some(id) = self.intern(st, (f, Vec::new()))? {
                        if stop_at_final && self.is_final(&self.states[id]) {
                            return Ok(Some(id));
                        }
                    }
                }
            }
        }
        let mut k = 0;
        while k < self.states.len() {
            if self.dead[k] {
                k += 1;
                continue;
            }
            let alive_below: Vec<usize> = (0..k).filter(|&i| !self.dead[i]).collect();
            for f in 0..self.signature.len() {
                let n = self.signature.symbol(f).arity();
                for first in 0..n {
                    // Position `first` holds k, earlier positions hold states
                    // below k, later ones anything up to k.
                    let mut ranges: Vec<Vec<usize>> = Vec::with_capacity(n);
                    for pos in 0..n {
                        if pos < first {
                            ranges.push(alive_below.clone());
                        } else if pos == first {
                            ranges.push(vec![k]);
                        } else {
                            let mut r = alive_below.clone();
                            r.push(k);
                            ranges.push(r);
                        }
                    }
                    if ranges.iter().any(Vec::is_empty) {
                        continue;
                    }
                    let mut idx = vec![0usize; n];
                    loop {
                        let tuple: Vec<usize> = idx.iter().zip(&ranges).map(|(&i, r)| r[i]).collect();
                        let children: Vec<PairState> =
                            tuple.iter().map(|&i| self.states[i].clone()).collect();
                        let refs: Vec<&PairState> = children.iter().collect();
                        for st in self.d_transition(f, &refs)? {
                            if let Some(id) = self.intern(st, (f, tuple.clone()))? {
                                if stop_at_final && self.is_final(&self.states[id]) {
                                    return Ok(Some(id));
                                }
                            }
                        }
                        let mut i = n;
                        loop {
                            if i == 0 {
                                break;
                            }
                            i -= 1;
                            idx[i] += 1;
                            if idx[i] < ranges[i].len() {
                                break;
                            }
                            idx[i] = 0;
                        }
                        if idx.iter().all(|&i| i == 0) {
                            break;
                        }
                    }
                }
            }
            k += 1;
        }
        if stop_at_final {
            return Ok(None);
        }
        Ok(self.states.iter().position(|st| self.is_final(st)))
    }

    /// A term reaching pair-state `id`, rebuilt from provenance.
    pub fn witness_term(&self, id: usize) -> Term {
        let (f, children) = &self.provenance[id];
        let args = children.iter().map(|&c| self.witness_term(c)).collect();
        Term::app(self.signature.symbol(*f).clone(), args)
    }

    /// Every pair-state some run of the machine on `t` ends in.
    pub fn run_term(&mut self, t: &Term) -> Result<BTreeSet<PairState>> {
        if let Some(done) = self.runs.get(t) {
            return Ok(done.clone());
        }
        let out = self.run_term_uncached(t)?;
        self.runs.insert(t.clone(), out.clone());
        Ok(out)
    }

    fn run_term_uncached(&mut self, t: &Term) -> Result<BTreeSet<PairState>> {
        let Term::App(f, args) = t else {
            return Err(Error::NotGround(t.to_string()));
        };
        let fi = self
            .signature
            .index_of(f)
            .ok_or_else(|| Error::UnknownSymbol(f.to_string()))?;
        let child_sets: Vec<Vec<PairState>> = args
            .iter()
            .map(|a| self.run_term(a).map(|s| s.into_iter().collect()))
            .collect::<Result<_>>()?;
        let mut out = BTreeSet::new();
        if child_sets.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        let tuples = child_sets
            .iter()
            .try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
        if tuples.is_none_or(|n| n > MAX_TARGETS_PER_TRANSITION) {
            return Err(Error::StateCap(MAX_TARGETS_PER_TRANSITION));
        }
        let n = child_sets.len();
        let mut idx = vec![0usize; n];
        loop {
            let refs: Vec<&PairState> = idx.iter().zip(&child_sets).map(|(&i, c)| &c[i]).collect();
            out.extend(self.d_transition(fi, &refs)?);
            if out.len() > MAX_TARGETS_PER_TRANSITION {
                return Err(Error::StateCap(MAX_TARGETS_PER_TRANSITION));
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < child_sets[i].len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }

    /// True iff some run of the machine on `t` ends in a final pair-state.
    pub fn accepts_term(&mut self, t: &Term) -> Result<bool> {
        Ok(self.run_term(t)?.iter().any(|st| self.is_final(st)))
    }

    /// Dump of the explored pair-states and their provenance edges.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, st) in self.states.iter().enumerate() {
            out.push_str(&format!("state d{} [{},{}]", i, st.s, st.p));
            if self.is_final(st) {
                out.push_str(" final");
            }
            if self.dead[i] {
                out.push_str(" subsumed");
            }
            out.push('\n');
        }
        for (i, (f, children)) in self.provenance.iter().enumerate() {
            let sym = self.signature.symbol(*f);
            if children.is_empty() {
                out.push_str(&format!("{} -> d{}\n", sym, i));
            } else {
                let args: Vec<String> = children.iter().map(|c| format!("d{}", c)).collect();
                out.push_str(&format!("{}({}) -> d{}\n", sym, args.join(","), i));
            }
        }
        out
    }
}

/// Keeps the ⊆-minimal sets, without duplicates, in first-seen order.
fn minimize(sets: Vec<StateSet>) -> Vec<StateSet> {
    let mut out: Vec<StateSet> = Vec::new();
    for s in sets {
        if out.iter().any(|o| o.is_subset(&s)) {
            continue;
        }
        out.retain(|o| !s.is_subset(o));
        out.push(s);
    }
    out
}

/// The ⊆-minimal sets meeting every constraint (Berge's algorithm).
pub fn minimal_hitting_sets(constraints: &[StateSet], width: usize) -> Vec<StateSet> {
    let edges = minimize(constraints.to_vec());
    let mut transversals = vec![StateSet::empty(width)];
    for e in &edges {
        let mut next = Vec::new();
        for t in &transversals {
            if t.intersects(e) {
                next.push(t.clone());
            } else {
                for q in e.iter() {
                    let mut u = t.clone();
                    u.insert(q);
                    next.push(u);
                }
            }
        }
        transversals = minimize(next);
    }
    transversals
}

fn subsets_of(universe: &[StateId], width: usize) -> Result<Vec<StateSet>> {
    if universe.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::StateCap(1 << EXHAUSTIVE_LIMIT));
    }
    let mut out = Vec::with_capacity(1 << universe.len());
    for mask in 0u32..(1u32 << universe.len()) {
        let mut s = StateSet::empty(width);
        for (i, q) in universe.iter().enumerate() {
            if mask & (1 << i) != 0 {
                s.insert(*q);
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// Every subset of the union of `constraints` meeting each constraint.
pub fn all_hitting_sets(constraints: &[StateSet], width: usize) -> Result<Vec<StateSet>> {
    let mut union = StateSet::empty(width);
    for c in constraints {
        union.union_with(c);
    }
    let universe: Vec<StateId> = union.iter().collect();
    Ok(subsets_of(&universe, width)?
        .into_iter()
        .filter(|s| constraints.iter().all(|c| s.intersects(c)))
        .collect())
}

fn nonempty_subsets(set: &StateSet, width: usize) -> Result<Vec<StateSet>> {
    let universe: Vec<StateId> = set.iter().collect();
    Ok(subsets_of(&universe, width)?
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect())
}

/// Cap on the pair-states a single exhaustive transition may produce.
pub const MAX_TARGETS_PER_TRANSITION: usize = 1 << 16;

/// Default cap on explored pair-states.
pub const DEFAULT_MAX_STATES: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Options {
    pub strategy: Strategy,
    pub mode: PairMode,
    pub max_states: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            strategy: Strategy::SemiNaive,
            mode: PairMode::Minimal,
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

/// Sizes of the constructed objects.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub trs_size: usize,
    pub rule_count: usize,
    pub max_arity: usize,
    pub base_states: usize,
    pub pattern_states: usize,
    pub c_states: usize,
    pub c_transitions: usize,
    pub cprime_states: usize,
    pub cprime_transitions: usize,
    pub saturation: SaturationStats,
    pub pair_states: usize,
    pub pair_transitions_tried: usize,
    /// Wall time per phase in milliseconds; not reproducible.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub phase_ms: Vec<(String, u128)>,
}

/// The automata for CBN-NF under one approximation.
#[derive(Clone, Debug)]
pub struct NfPipeline {
    pub trs: Trs,
    pub approx: Approx,
    /// `R_α` over `F ∪ {•}`.
    pub approx_trs: Trs,
    pub nf: TreeAutomaton,
    pub pattern_states: usize,
    /// `A_NF ∪ B(R_α)` before saturation.
    pub base: TreeAutomaton,
    pub c: Saturated,
    pub cprime: TreeAutomaton,
    pub detection: RedexDetection,
    pub phase_ms: Vec<(String, u128)>,
}

impl NfPipeline {
    pub fn build(trs: &Trs, approx: Approx, strategy: Strategy) -> Result<NfPipeline> {
        trs.require_left_linear()?;
        let mut phase_ms = Vec::new();
        let clock = Instant::now();
        let nf = build_nf_automaton(trs)?;
        phase_ms.push(("nf".to_string(), clock.elapsed().as_millis()));
        let g = nf.signature().clone();
        let approx_trs = trs.approximate(approx)?.with_signature(g)?;
        let clock = Instant::now();
        let b = build_pattern_automaton(&approx_trs)?;
        let base = disjoint_union(&nf, &b.automaton)?;
        let patterns = b.patterns.shifted(nf.num_states());
        let c = saturate_with(&base, &approx_trs, &patterns, strategy)?;
        phase_ms.push(("saturation".to_string(), clock.elapsed().as_millis()));
        let (cprime, detection) = extend_with_redex_detection(&c.automaton, &approx_trs, true)?;
        Ok(NfPipeline {
            trs: trs.clone(),
            approx,
            approx_trs,
            nf,
            pattern_states: b.automaton.num_states(),
            base,
            c,
            cprime,
            detection,
            phase_ms,
        })
    }

    pub fn q_r(&self) -> StateId {
        self.detection.q_r.expect("built with q_r")
    }

    /// D over the plain signature `F`.
    pub fn machine(&self, mode: PairMode, max_states: usize) -> Result<DMachine> {
        DMachine::new(
            self.cprime.clone(),
            self.trs.signature().plain_part(),
            &self.detection,
            self.cprime.final_set(),
            SecondComponent::Bullet(self.detection.x_state),
            RootCondition::Contains(self.q_r()),
            mode,
            max_states,
        )
    }

    /// True iff `t[•]_p` rewrites under `R_α` to a normal form of `R_•`.
    pub fn bullet_variant_accepted(&self, t: &Term, p: &Position) -> Result<bool> {
        self.cprime.accepts(&t.replace_at(p, Term::bullet())?)
    }

    /// For each redex position of `t`: whether that redex is `R_α`-needed.
    pub fn needed_redexes(&self, t: &Term) -> Result<BTreeMap<Position, bool>> {
        check_ground_over(t, self.trs.signature())?;
        let mut out = BTreeMap::new();
        for p in self.trs.redex_positions(t) {
            out.insert(p.clone(), !self.bullet_variant_accepted(t, &p)?);
        }
        Ok(out)
    }

    /// The right-hand side of the characterization of `L(D)`: `t` is
    /// reducible and every `t[•]_p` is accepted by C′.
    pub fn characterization(&self, t: &Term) -> Result<bool> {
        let positions = self.trs.redex_positions(t);
        if positions.is_empty() {
            return Ok(false);
        }
        for p in &positions {
            if !self.bullet_variant_accepted(t, p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn metrics(&self) -> Metrics {
        Metrics {
            trs_size: self.trs.size(),
            rule_count: self.trs.rule_count(),
            max_arity: self.trs.signature().max_arity(),
            base_states: self.nf.num_states(),
            pattern_states: self.pattern_states,
            c_states: self.c.automaton.num_states(),
            c_transitions: self.c.automaton.num_transitions(),
            cprime_states: self.cprime.num_states(),
            cprime_transitions: self.cprime.num_transitions(),
            saturation: self.c.stats,
            pair_states: 0,
            pair_transitions_tried: 0,
            phase_ms: self.phase_ms.clone(),
        }
    }
}

pub(crate) fn check_ground_over(t: &Term, sig: &Signature) -> Result<()> {
    if !t.is_ground() {
        return Err(Error::NotGround(t.to_string()));
    }
    for f in t.symbols() {
        if !sig.contains(&f) {
            return Err(Error::UnknownSymbol(f.to_string()));
        }
    }
    Ok(())
}

/// How a redex of the witness behaves when it is not contracted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RedexEvidence {
    pub position: Position,
    /// `t[•]_p`, or `t[(t|p)°]_p` for root-stability.
    pub variant: Term,
    /// Whether the variant still reaches the target language, which makes
    /// the redex not needed.
    pub accepted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    InClass,
    NotInClass {
        witness: Term,
        evidence: Vec<RedexEvidence>,
    },
}

impl Verdict {
    pub fn in_class(&self) -> bool {
        matches!(self, Verdict::InClass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub metrics: Metrics,
}

/// Decides whether `trs` is in CBN-NF under approximation `a`.
pub fn decide_cbn_nf(trs: &Trs, a: Approx) -> Result<Decision> {
    decide_cbn_nf_with(trs, a, Options::default())
}

pub fn decide_cbn_nf_with(trs: &Trs, a: Approx, options: Options) -> Result<Decision> {
    let pipeline = NfPipeline::build(trs, a, options.strategy)?;
    decide_with_pipeline(&pipeline, options)
}

pub fn decide_with_pipeline(pipeline: &NfPipeline, options: Options) -> Result<Decision> {
    let mut machine = pipeline.machine(options.mode, options.max_states)?;
    let clock = Instant::now();
    let found = machine.explore(true)?;
    let mut metrics = pipeline.metrics();
    metrics
        .phase_ms
        .push(("pairs".to_string(), clock.elapsed().as_millis()));
    metrics.pair_states = machine.explored().len();
    metrics.pair_transitions_tried = machine.transitions_tried();
    debug!("D explored {} pair-states", metrics.pair_states);
    let verdict = match found {
        None => Verdict::InClass,
        Some(id) => {
            let witness = machine.witness_term(id);
            let evidence = nf_evidence(pipeline, &witness)?;
            if evidence.is_empty() || evidence.iter().any(|e| !e.accepted) {
                return Err(Error::Validation(format!(
                    "witness {} does not satisfy the characterization",
                    witness
                )));
            }
            Verdict::NotInClass { witness, evidence }
        }
    };
    Ok(Decision { verdict, metrics })
}

fn nf_evidence(pipeline: &NfPipeline, t: &Term) -> Result<Vec<RedexEvidence>> {
    pipeline
        .trs
        .redex_positions(t)
        .into_iter()
        .map(|p| {
            let variant = t.replace_at(&p, Term::bullet())?;
            let accepted = pipeline.cprime.accepts(&variant)?;
            Ok(RedexEvidence {
                position: p,
                variant,
                accepted,
            })
        })
        .collect()
}

/// For each redex position of `t`: whether that redex is `R_α`-needed.
pub fn needed_redexes(trs: &Trs, a: Approx, t: &Term) -> Result<BTreeMap<Position, bool>> {
    NfPipeline::build(trs, a, Strategy::SemiNaive)?.needed_redexes(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub position: Position,
    pub rule: usize,
    pub result: Term,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    NormalForm,
    FuelExhausted,
    /// A reducible term without needed redex was reached.
    NoNeededRedex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub term: Term,
    pub trace: Vec<Step>,
    pub outcome: Outcome,
}

/// Contracts the redex at `p` with the first matching rule of `trs`.
pub fn contract_at(trs: &Trs, t: &Term, p: &Position) -> Result<Option<(usize, Term)>> {
    let sub = t.subterm_at(p)?;
    for (i, rule) in trs.rules().iter().enumerate() {
        if let Some(sigma) = match_pattern(rule.lhs(), sub) {
            if !rule.extra_vars().is_empty() {
                continue;
            }
            return Ok(Some((i, t.replace_at(p, rule.rhs().apply(&sigma))?)));
        }
    }
    Ok(None)
}

/// Repeatedly contracts the leftmost-outermost needed redex.
pub fn normalize_by_need(trs: &Trs, a: Approx, t: &Term, fuel: usize) -> Result<Normalization> {
    if !trs.is_orthogonal() {
        warn!("system is not orthogonal; needed-redex contraction may not normalize");
    }
    let pipeline = NfPipeline::build(trs, a, Strategy::SemiNaive)?;
    check_ground_over(t, trs.signature())?;
    let mut term = t.clone();
    let mut trace = Vec::new();
    loop {
        let needed = pipeline.needed_redexes(&term)?;
        if needed.is_empty() {
            return Ok(Normalization {
                term,
                trace,
                outcome: Outcome::NormalForm,
            });
        }
        if trace.len() >= fuel {
            return Ok(Normalization {
                term,
                trace,
                outcome: Outcome::FuelExhausted,
            });
        }
        // Pre-order: the first needed position is leftmost-outermost.
        let positions = pipeline.trs.redex_positions(&term);
        let Some(p) = positions.into_iter().find(|p| needed[p]) else {
            return Ok(Normalization {
                term,
                trace,
                outcome: Outcome::NoNeededRedex,
            });
        };
        let (rule, next) = contract_at(trs, &term, &p)?.expect("redex position has a rule");
        trace.push(Step {
            position: p,
            rule,
            result: next.clone(),
        });
        term = next;
    }
}
