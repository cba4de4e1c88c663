//! Brute-force checkers independent of the automata: term enumeration,
//! bounded rewriting reachability and the characterizations the automata
//! are supposed to decide.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::automata::{StateSet, TreeAutomaton};
use crate::cbn_nf::{NfPipeline, PairMode, DEFAULT_MAX_STATES};
use crate::cbn_rs::RsPipeline;
use crate::error::Result;
use crate::recognizers::{build_nf_automaton, build_pattern_automaton, pattern_index};
use crate::terms::{matches_linear, FuncSym, Signature, Term};
use crate::trs::Trs;

/// Iterates `{0..count}^k` lexicographically.
struct Tuples {
    k: usize,
    count: usize,
    next: Option<Vec<usize>>,
}

impl Tuples {
    fn new(k: usize, count: usize) -> Self {
        let next = if count == 0 && k > 0 { None } else { Some(vec![0; k]) };
        Tuples { k, count, next }
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = self.k;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.count {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

/// Ground terms of height at most `depth - 1`, grouped by height, plus the
/// height of each.
fn lower_levels(sig: &Signature, below: usize) -> (Vec<Term>, Vec<usize>) {
    let mut terms: Vec<Term> = Vec::new();
    let mut heights: Vec<usize> = Vec::new();
    for h in 1..=below {
        let fresh: Vec<Term> = exact_height(sig, &terms, &heights, h).collect();
        heights.extend(std::iter::repeat(h).take(fresh.len()));
        terms.extend(fresh);
    }
    (terms, heights)
}

/// Terms of height exactly `h`, given all terms of smaller height.
fn exact_height<'a>(
    sig: &'a Signature,
    lower: &'a [Term],
    heights: &'a [usize],
    h: usize,
) -> impl Iterator<Item = Term> + 'a {
    let symbols: Vec<FuncSym> = sig.iter().cloned().collect();
    symbols.into_iter().flat_map(move |f| {
        let n = f.arity();
        let tuples: Box<dyn Iterator<Item = Vec<usize>>> = if h == 1 {
            if n == 0 {
                Box::new(std::iter::once(Vec::new()))
            } else {
                Box::new(std::iter::empty())
            }
        } else if n == 0 {
            Box::new(std::iter::empty())
        } else {
            Box::new(Tuples::new(n, lower.len()))
        };
        tuples.filter_map(move |tuple| {
            if h > 1 && !tuple.iter().any(|&i| heights[i] == h - 1) {
                return None;
            }
            let args = tuple.iter().map(|&i| lower[i].clone()).collect();
            Some(Term::app(f.clone(), args))
        })
    })
}

/// All ground terms of height at most `depth`, by increasing height, then
/// signature order, then arguments lexicographically. Only the lower levels
/// are materialized.
pub fn enumerate_terms(sig: &Signature, depth: usize) -> impl Iterator<Item = Term> + '_ {
    let (lower, heights) = lower_levels(sig, depth.saturating_sub(1));
    let top_needed = depth >= 1;
    let lower_copy = lower.clone();
    let top: Box<dyn Iterator<Item = Term>> = if top_needed {
        Box::new(OwnedTop::new(sig, lower, heights, depth))
    } else {
        Box::new(std::iter::empty())
    };
    lower_copy.into_iter().chain(top)
}

/// The top level of [`enumerate_terms`], owning its lower levels.
struct OwnedTop<'a> {
    sig: &'a Signature,
    lower: Vec<Term>,
    heights: Vec<usize>,
    h: usize,
    symbol: usize,
    tuples: Option<Tuples>,
}

impl<'a> OwnedTop<'a> {
    fn new(sig: &'a Signature, lower: Vec<Term>, heights: Vec<usize>, h: usize) -> Self {
        OwnedTop {
            sig,
            lower,
            heights,
            h,
            symbol: 0,
            tuples: None,
        }
    }
}

impl Iterator for OwnedTop<'_> {
    type Item = Term;

    fn next(&mut self) -> Option<Term> {
        loop {
            if self.symbol >= self.sig.len() {
                return None;
            }
            let f = self.sig.symbol(self.symbol);
            let n = f.arity();
            if self.tuples.is_none() {
                let usable = if self.h == 1 { n == 0 } else { n > 0 };
                if !usable {
                    self.symbol += 1;
                    continue;
                }
                self.tuples = Some(Tuples::new(n, self.lower.len()));
            }
            match self.tuples.as_mut().unwrap().next() {
                None => {
                    self.tuples = None;
                    self.symbol += 1;
                }
                Some(tuple) => {
                    if self.h > 1 && !tuple.iter().any(|&i| self.heights[i] == self.h - 1) {
                        continue;
                    }
                    let args = tuple.iter().map(|&i| self.lower[i].clone()).collect();
                    return Some(Term::app(f.clone(), args));
                }
            }
        }
    }
}

/// Number of ground terms of height at most `depth`.
pub fn count_terms(sig: &Signature, depth: usize) -> u128 {
    let mut total: u128 = 0;
    for _ in 0..depth {
        let mut next: u128 = 0;
        for f in sig.iter() {
            next += total.pow(f.arity() as u32);
        }
        // Constants contribute `total^0 = 1` each, which is their count.
        total = next;
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReachCaps {
    pub max_term_size: usize,
    pub max_steps: usize,
    pub max_frontier: usize,
    /// Height of the terms substituted for unbound right-hand side variables.
    pub instantiation_depth: usize,
}

impl Default for ReachCaps {
    fn default() -> Self {
        ReachCaps {
            max_term_size: 14,
            max_steps: 10,
            max_frontier: 20_000,
            instantiation_depth: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Reach {
    pub terms: BTreeSet<Term>,
    /// True iff the closure completed within every cap without substituting
    /// for unbound variables.
    pub saturated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReachAnswer {
    Yes,
    No,
    Unknown,
}

fn instantiation_pool(trs: &Trs, caps: &ReachCaps) -> Vec<Term> {
    if trs.rules().iter().any(|r| !r.extra_vars().is_empty()) {
        enumerate_terms(trs.signature(), caps.instantiation_depth).collect()
    } else {
        Vec::new()
    }
}

fn search(trs: &Trs, t: &Term, caps: &ReachCaps, goal: &dyn Fn(&Term) -> bool) -> (Reach, bool) {
    let pool = instantiation_pool(trs, caps);
    let mut saturated = pool.is_empty();
    let mut seen: BTreeSet<Term> = BTreeSet::from([t.clone()]);
    if goal(t) {
        return (Reach { terms: seen, saturated }, true);
    }
    let mut frontier = vec![t.clone()];
    let mut steps = 0;
    while !frontier.is_empty() {
        if steps >= caps.max_steps {
            saturated = false;
            break;
        }
        steps += 1;
        let mut next = Vec::new();
        for s in &frontier {
            for u in trs.rewrite_step_instantiating(s, &pool) {
                if u.size() > caps.max_term_size {
                    saturated = false;
                    continue;
                }
                if seen.contains(&u) {
                    continue;
                }
                if goal(&u) {
                    seen.insert(u);
                    return (Reach { terms: seen, saturated }, true);
                }
                seen.insert(u.clone());
                next.push(u);
                if seen.len() >= caps.max_frontier {
                    return (
                        Reach {
                            terms: seen,
                            saturated: false,
                        },
                        false,
                    );
                }
            }
        }
        frontier = next;
    }
    (Reach { terms: seen, saturated }, false)
}

/// Breadth-first closure of one-step rewriting from `t` under the caps.
pub fn bounded_reach(trs: &Trs, t: &Term, caps: &ReachCaps) -> Reach {
    search(trs, t, caps, &|_| false).0
}

/// Whether some reduct of `t` satisfies `goal`, as far as the caps allow.
pub fn reaches(trs: &Trs, t: &Term, caps: &ReachCaps, goal: &dyn Fn(&Term) -> bool) -> ReachAnswer {
    let (reach, hit) = search(trs, t, caps, goal);
    if hit {
        ReachAnswer::Yes
    } else if reach.saturated {
        ReachAnswer::No
    } else {
        ReachAnswer::Unknown
    }
}

/// A normal form of `R_•`: no redex of `trs` and no `•`.
pub fn is_bullet_free_normal_form(trs: &Trs, t: &Term) -> bool {
    !t.contains_symbol(&|f| f.is_bullet()) && trs.is_normal_form(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub term: Term,
    pub expected: bool,
    pub got: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub name: String,
    pub checked: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
    pub inconclusive: usize,
}

impl OracleReport {
    pub fn new(name: &str) -> Self {
        OracleReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }

    fn record(&mut self, term: &Term, expected: bool, got: bool) {
        self.checked += 1;
        if expected == got {
            self.agreements += 1;
        } else {
            self.disagreements.push(Disagreement {
                term: term.clone(),
                expected,
                got,
            });
        }
    }

    fn record_inconclusive(&mut self) {
        self.checked += 1;
        self.inconclusive += 1;
    }

    pub fn merge(&mut self, other: OracleReport) {
        self.checked += other.checked;
        self.agreements += other.agreements;
        self.disagreements.extend(other.disagreements);
        self.inconclusive += other.inconclusive;
    }
}

impl std::fmt::Display for OracleReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} checked, {} agree, {} disagree, {} inconclusive",
            self.name,
            self.checked,
            self.agreements,
            self.disagreements.len(),
            self.inconclusive
        )
    }
}

/// Compares a saturated automaton with bounded reachability into
/// `base_lang`. Reaching the base forces acceptance; acceptance is refuted
/// only by a saturated search.
pub fn check_c_soundness(
    trs_approx: &Trs,
    c: &TreeAutomaton,
    base_lang: &dyn Fn(&Term) -> bool,
    depth: usize,
    caps: &ReachCaps,
) -> Result<OracleReport> {
    let mut report = OracleReport::new("saturation");
    for t in enumerate_terms(c.signature(), depth) {
        let accepted = c.accepts(&t)?;
        match reaches(trs_approx, &t, caps, base_lang) {
            ReachAnswer::Yes => report.record(&t, true, accepted),
            ReachAnswer::No => report.record(&t, false, accepted),
            ReachAnswer::Unknown => report.record_inconclusive(),
        }
    }
    Ok(report)
}

/// If `s` rewrites in one step to an accepted term, `s` is accepted.
pub fn check_backward_closure(
    trs_approx: &Trs,
    c: &TreeAutomaton,
    depth: usize,
    caps: &ReachCaps,
) -> Result<OracleReport> {
    let mut report = OracleReport::new("backward closure");
    let pool = instantiation_pool(trs_approx, caps);
    for s in enumerate_terms(c.signature(), depth) {
        let accepted = c.accepts(&s)?;
        let successor_accepted = trs_approx
            .rewrite_step_instantiating(&s, &pool)
            .iter()
            .map(|u| c.accepts(u))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .any(|b| b);
        if successor_accepted {
            report.record(&s, true, accepted);
        } else {
            report.checked += 1;
            report.agreements += 1;
        }
    }
    Ok(report)
}

/// Visits the terms of [`enumerate_terms`] in the same order, together with
/// a value computed bottom-up by `combine` from the root symbol, the values
/// of the arguments and the term itself.
pub fn fold_terms<T>(
    sig: &Signature,
    depth: usize,
    mut combine: impl FnMut(&FuncSym, &[&T], &Term) -> T,
    mut visit: impl FnMut(&Term, &T),
) {
    let mut terms: Vec<Term> = Vec::new();
    let mut values: Vec<T> = Vec::new();
    let mut heights: Vec<usize> = Vec::new();
    for h in 1..=depth {
        let keep = h < depth;
        let count = terms.len();
        let mut new_terms = Vec::new();
        let mut new_values = Vec::new();
        for f in sig.iter() {
            let n = f.arity();
            if (h == 1) != (n == 0) {
                continue;
            }
            for tuple in Tuples::new(n, count) {
                if h > 1 && !tuple.iter().any(|&i| heights[i] == h - 1) {
                    continue;
                }
                let t = Term::app(f.clone(), tuple.iter().map(|&i| terms[i].clone()).collect());
                let args: Vec<&T> = tuple.iter().map(|&i| &values[i]).collect();
                let v = combine(f, &args, &t);
                visit(&t, &v);
                if keep {
                    new_terms.push(t);
                    new_values.push(v);
                }
            }
        }
        heights.extend(std::iter::repeat_n(h, new_terms.len()));
        terms.extend(new_terms);
        values.extend(new_values);
    }
}

fn step_of<'a>(aut: &'a TreeAutomaton) -> impl Fn(&FuncSym, &[&StateSet]) -> StateSet + 'a {
    move |f, args| {
        let i = aut.signature().index_of(f).expect("enumerated over the automaton's signature");
        aut.step(i, args)
    }
}

/// For every pattern `t` of `S_R ∪ {x}` and ground `s`: `s` is an instance
/// of `t` iff `⟨t⟩` is reachable from `s` in B(R).
pub fn check_pattern_automaton(trs: &Trs, depth: usize) -> Result<OracleReport> {
    let b = build_pattern_automaton(trs)?;
    let mut patterns = vec![Term::var("x")];
    patterns.extend(pattern_index(trs));
    let states: Vec<_> = patterns
        .iter()
        .map(|t| b.patterns.get(t).expect("pattern state"))
        .collect();
    let mut report = OracleReport::new("pattern automaton");
    let step = step_of(&b.automaton);
    fold_terms(
        b.automaton.signature(),
        depth,
        |f, args, _| step(f, args),
        |s, run| {
            for (t, q) in patterns.iter().zip(&states) {
                report.record(s, matches_linear(t, s), run.contains(*q));
            }
        },
    );
    Ok(report)
}

/// The normal-form automaton against the direct no-redex, no-`•` check,
/// evaluated compositionally: a term is such a normal form iff its
/// arguments are, its root is not `•` and it is not a redex.
pub fn check_nf_automaton(trs: &Trs, depth: usize) -> Result<OracleReport> {
    let nf = build_nf_automaton(trs)?;
    let mut report = OracleReport::new("normal-form automaton");
    let step = step_of(&nf);
    fold_terms(
        nf.signature(),
        depth,
        |f, args: &[&(StateSet, bool)], t| {
            let runs: Vec<&StateSet> = args.iter().map(|(r, _)| r).collect();
            let normal = args.iter().all(|(_, n)| *n) && !f.is_bullet() && !trs.is_redex(t);
            (step(f, &runs), normal)
        },
        |t, (run, normal)| report.record(t, *normal, nf.any_final(run)),
    );
    Ok(report)
}

/// Work allowed for one exhaustive run in the characterization checks;
/// terms exceeding it count as inconclusive.
pub const PER_TERM_WORK: usize = 2_000_000;

/// Exhaustive D acceptance against the characterization: reducible, and
/// every `t[•]_p` accepted by C′.
pub fn check_d_characterization(pipeline: &NfPipeline, depth: usize) -> Result<OracleReport> {
    let mut machine = pipeline.machine(PairMode::Exhaustive, DEFAULT_MAX_STATES)?;
    let mut report = OracleReport::new("D characterization");
    let f = pipeline.trs.signature().plain_part();
    for t in enumerate_terms(&f, depth) {
        let expected = pipeline.characterization(&t)?;
        machine.set_work_budget(Some(machine.work().saturating_add(PER_TERM_WORK)));
        match machine.accepts_term(&t) {
            Ok(got) => report.record(&t, expected, got),
            Err(e) if e.is_resource_cap() => report.record_inconclusive(),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Exhaustive D′ acceptance against the characterization: not root-stable,
/// and every `t[(t|p)°]_p` accepted by the root-stable reachability part.
pub fn check_dprime_characterization(pipeline: &RsPipeline, depth: usize) -> Result<OracleReport> {
    let mut machine = pipeline.machine(PairMode::Exhaustive, DEFAULT_MAX_STATES)?;
    let mut report = OracleReport::new("D' characterization");
    let f = pipeline.trs.signature().plain_part();
    for t in enumerate_terms(&f, depth) {
        let expected = pipeline.characterization(&t)?;
        machine.set_work_budget(Some(machine.work().saturating_add(PER_TERM_WORK)));
        match machine.accepts_term(&t) {
            Ok(got) => report.record(&t, expected, got),
            Err(e) if e.is_resource_cap() => report.record_inconclusive(),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Emptiness of a pair automaton in minimal and exhaustive mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModeComparison {
    pub minimal_empty: bool,
    /// `None` when the exhaustive exploration hit its state cap.
    pub exhaustive_empty: Option<bool>,
    pub minimal_states: usize,
    pub exhaustive_states: usize,
    /// For empty automata: whether both modes reach the same `S`
    /// components.
    pub same_s_components: Option<bool>,
}

impl ModeComparison {
    pub fn agrees(&self) -> bool {
        self.exhaustive_empty.is_none_or(|e| e == self.minimal_empty)
            && self.same_s_components.unwrap_or(true)
    }

    pub fn conclusive(&self) -> bool {
        self.exhaustive_empty.is_some()
    }
}

/// A minimal-mode witness must be accepted by an exhaustive run on that
/// term; a minimal-mode empty verdict must survive full exhaustive
/// exploration. The exhaustive state space grows with all hitting sets, so
/// only the second case needs the cap.
fn compare_modes(
    mut minimal: crate::cbn_nf::DMachine,
    mut exhaustive: crate::cbn_nf::DMachine,
) -> Result<ModeComparison> {
    let found = minimal.explore(true)?;
    if let Some(id) = found {
        let witness = minimal.witness_term(id);
        let accepted = exhaustive.accepts_term(&witness);
        return Ok(ModeComparison {
            minimal_empty: false,
            exhaustive_empty: match accepted {
                Ok(b) => Some(!b),
                Err(e) if e.is_resource_cap() => None,
                Err(e) => return Err(e),
            },
            minimal_states: minimal.explored().len(),
            exhaustive_states: exhaustive.explored().len(),
            same_s_components: None,
        });
    }
    let min_s: BTreeSet<_> = minimal.explored().iter().map(|st| st.s.clone()).collect();
    match exhaustive.explore(true) {
        Ok(ex_final) => {
            let same = ex_final.is_none().then(|| {
                let ex_s: BTreeSet<_> = exhaustive.explored().iter().map(|st| st.s.clone()).collect();
                ex_s == min_s
            });
            Ok(ModeComparison {
                minimal_empty: true,
                exhaustive_empty: Some(ex_final.is_none()),
                minimal_states: minimal.explored().len(),
                exhaustive_states: exhaustive.explored().len(),
                same_s_components: same,
            })
        }
        Err(e) if e.is_resource_cap() => Ok(ModeComparison {
            minimal_empty: true,
            exhaustive_empty: None,
            minimal_states: minimal.explored().len(),
            exhaustive_states: exhaustive.explored().len(),
            same_s_components: None,
        }),
        Err(e) => Err(e),
    }
}

/// Limits for the exhaustive side of a mode comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModeLimits {
    pub max_states: usize,
    pub max_work: usize,
}

impl Default for ModeLimits {
    fn default() -> Self {
        ModeLimits {
            max_states: 20_000,
            max_work: 20_000_000,
        }
    }
}

/// Emptiness of D in minimal and exhaustive mode.
pub fn compare_nf_modes(pipeline: &NfPipeline, limits: &ModeLimits) -> Result<ModeComparison> {
    compare_modes(
        pipeline.machine(PairMode::Minimal, DEFAULT_MAX_STATES)?,
        pipeline
            .machine(PairMode::Exhaustive, limits.max_states)?
            .with_work_budget(limits.max_work),
    )
}

/// Emptiness of D′ in minimal and exhaustive mode.
pub fn compare_rs_modes(pipeline: &RsPipeline, limits: &ModeLimits) -> Result<ModeComparison> {
    compare_modes(
        pipeline.machine(PairMode::Minimal, DEFAULT_MAX_STATES)?,
        pipeline
            .machine(PairMode::Exhaustive, limits.max_states)?
            .with_work_budget(limits.max_work),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;
    use crate::trs::parse_trs;

    fn sig_abg() -> Signature {
        Signature::from_symbols([
            FuncSym::new("a", 0),
            FuncSym::new("b", 0),
            FuncSym::new("g", 2),
        ])
        .unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let sig = sig_abg();
        let one: Vec<String> = enumerate_terms(&sig, 1).map(|t| t.to_string()).collect();
        assert_eq!(one, ["a", "b"]);
        assert_eq!(enumerate_terms(&sig, 2).count(), 6);
        let e = Signature::from_symbols([
            FuncSym::new("f", 2),
            FuncSym::new("g", 2),
            FuncSym::new("a", 0),
            FuncSym::new("b", 0),
        ])
        .unwrap();
        assert_eq!(enumerate_terms(&e, 2).count(), 10);
        for d in 1..=3 {
            let all: Vec<Term> = enumerate_terms(&e, d).collect();
            assert_eq!(all.len() as u128, count_terms(&e, d));
            let distinct: BTreeSet<&Term> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
            assert!(all.windows(2).all(|w| w[0].height() <= w[1].height()));
            assert!(all.iter().all(|t| t.height() <= d));
        }
    }

    #[test]
    fn fold_matches_enumeration() {
        let sig = sig_abg();
        let listed: Vec<Term> = enumerate_terms(&sig, 3).collect();
        let mut folded = Vec::new();
        fold_terms(&sig, 3, |_, args: &[&usize], _| 1 + args.iter().copied().sum::<usize>(), |t, size| {
            assert_eq!(t.size(), *size);
            folded.push(t.clone());
        });
        assert_eq!(listed, folded);
    }

    #[test]
    fn reach_examples() {
        let trs = parse_trs("(RULES a -> b)").unwrap();
        let a = parse_term("a", &[] as &[&str], trs.signature()).unwrap();
        let r = bounded_reach(&trs, &a, &ReachCaps::default());
        assert!(r.saturated);
        assert_eq!(r.terms.len(), 2);
        let e = parse_trs(
            "(VAR x) (RULES f(a,g(x,a)) -> b  f(x,a) -> x  f(b,g(a,x)) -> b  g(b,b) -> a)",
        )
        .unwrap();
        let gbb = parse_term("g(b,b)", &[] as &[&str], e.signature()).unwrap();
        let r = bounded_reach(&e, &gbb, &ReachCaps::default());
        assert!(r.saturated);
        let names: Vec<String> = r.terms.iter().map(|t| t.to_string()).collect();
        assert_eq!(names.len(), 2);
        assert!(names.contains(&"a".to_string()));
    }

    #[test]
    fn instantiation_marks_unsaturated() {
        let e = parse_trs("(VAR x) (RULES f(x,a) -> x  g(b,b) -> a)").unwrap();
        let es = e.approximate(crate::trs::Approx::S).unwrap().extend_bullet();
        let t = parse_term_with(&es, "f(#,a)");
        let r = bounded_reach(&es, &t, &ReachCaps::default());
        assert!(!r.saturated);
        assert!(r.terms.iter().any(|u| is_bullet_free_normal_form(&e, u)));
    }

    fn parse_term_with(trs: &Trs, s: &str) -> Term {
        crate::terms::parse_term_debug(s, &[] as &[&str], trs.signature()).unwrap()
    }
}
