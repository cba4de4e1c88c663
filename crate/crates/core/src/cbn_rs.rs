//! Call by need to root-stable form: the automata C_RS and C′_RS, the pair
//! automaton D′(R,S), the decision procedure for CBN-RS and root-neededness
//! of concrete redexes.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::automata::{disjoint_union, StateSet, TreeAutomaton};
use crate::cbn_nf::{
    check_ground_over, DMachine, Decision, Metrics, Options, PairMode, RedexEvidence,
    RootCondition, SecondComponent, Verdict,
};
use crate::error::{Error, Result};
use crate::recognizers::{
    build_non_root_stable_automaton, build_pattern_automaton, build_rs_automaton,
    extend_with_redex_detection, RedexDetection,
};
use crate::saturation::{saturate_with, Saturated, Strategy};
use crate::terms::{Position, Term};
use crate::trs::{Approx, Trs};

/// The automata for CBN-RS under approximations `α` (reachability) and `β`
/// (root-stability).
#[derive(Clone, Debug)]
pub struct RsPipeline {
    pub trs: Trs,
    pub alpha: Approx,
    pub beta: Approx,
    /// `R_α` over `F ∪ F°`.
    pub r_alpha: Trs,
    /// `R_β` over `F ∪ F°`.
    pub s_beta: Trs,
    /// `A_RS` for `R_β°`.
    pub rs: TreeAutomaton,
    pub pattern_states: usize,
    /// `C_RS(R_α)`: terms rewriting to a root-stable term of `R_β°`.
    pub c: Saturated,
    /// C′_RS. Its finals are those of `c`.
    pub cprime: TreeAutomaton,
    pub detection: RedexDetection,
    /// Finals of the embedded non-root-stable detector for `R_β`.
    pub q_finals_prime: StateSet,
    pub phase_ms: Vec<(String, u128)>,
}

impl RsPipeline {
    pub fn build(trs: &Trs, alpha: Approx, beta: Approx, strategy: Strategy) -> Result<RsPipeline> {
        trs.require_left_linear()?;
        let g = trs.signature().with_circled();
        let r_alpha = trs.approximate(alpha)?.with_signature(g.clone())?;
        let s_beta = trs.approximate(beta)?.with_signature(g.clone())?;
        let s_plain = trs.approximate(beta)?;
        let mut phase_ms = Vec::new();

        let clock = Instant::now();
        let rs = build_rs_automaton(&s_plain)?;
        if rs.signature() != &g {
            return Err(Error::SignatureMismatch(format!(
                "{} vs {}",
                rs.signature(),
                g
            )));
        }
        phase_ms.push(("rs".to_string(), clock.elapsed().as_millis()));

        let clock = Instant::now();
        let b = build_pattern_automaton(&r_alpha)?;
        let base = disjoint_union(&rs, &b.automaton)?;
        let patterns = b.patterns.shifted(rs.num_states());
        let c = saturate_with(&base, &r_alpha, &patterns, strategy)?;
        phase_ms.push(("saturation".to_string(), clock.elapsed().as_millis()));

        let (extended, detection) = extend_with_redex_detection(&c.automaton, &r_alpha, false)?;
        let (detector, _) = build_non_root_stable_automaton(&s_beta)?;
        let detector = detector.scoped("nrs");
        let offset = extended.num_states();
        let mut cprime = disjoint_union(&extended, &detector)?;
        let width = cprime.num_states();
        let q_finals_prime = StateSet::from_ids(
            width,
            detector.finals().iter().map(|q| q.shifted(offset)),
        );
        cprime.set_finals(c.automaton.finals().iter().copied());
        Ok(RsPipeline {
            trs: trs.clone(),
            alpha,
            beta,
            r_alpha,
            s_beta,
            rs,
            pattern_states: b.automaton.num_states(),
            c,
            cprime,
            detection,
            q_finals_prime,
            phase_ms,
        })
    }

    /// D′ over the plain signature `F`.
    pub fn machine(&self, mode: PairMode, max_states: usize) -> Result<DMachine> {
        let f = self.trs.signature().plain_part();
        let circled = f
            .iter()
            .map(|s| self.cprime.symbol_index(&s.circled()))
            .collect::<Result<Vec<_>>>()?;
        DMachine::new(
            self.cprime.clone(),
            f,
            &self.detection,
            self.cprime.final_set(),
            SecondComponent::Circled(circled),
            RootCondition::Intersects(self.q_finals_prime.clone()),
            mode,
            max_states,
        )
    }

    /// True iff `t` rewrites under `R_β` to a redex.
    pub fn non_root_stable(&self, t: &Term) -> Result<bool> {
        Ok(self.cprime.run(t)?.intersects(&self.q_finals_prime))
    }

    /// `t[(t|p)°]_p`.
    pub fn circled_variant(t: &Term, p: &Position) -> Result<Term> {
        let sub = t.subterm_at(p)?.circle_root();
        t.replace_at(p, sub)
    }

    /// True iff `t[(t|p)°]_p` rewrites under `R_α` to a root-stable term of
    /// `R_β°`.
    pub fn circled_variant_accepted(&self, t: &Term, p: &Position) -> Result<bool> {
        self.cprime.accepts(&Self::circled_variant(t, p)?)
    }

    /// For each redex position of `t`: whether it is `(R_α,R_β)`-root-needed.
    pub fn root_needed_redexes(&self, t: &Term) -> Result<BTreeMap<Position, bool>> {
        check_ground_over(t, self.trs.signature())?;
        let mut out = BTreeMap::new();
        for p in self.trs.redex_positions(t) {
            out.insert(p.clone(), !self.circled_variant_accepted(t, &p)?);
        }
        Ok(out)
    }

    /// `t` is not root-stable and every circled variant is accepted.
    pub fn characterization(&self, t: &Term) -> Result<bool> {
        if !self.non_root_stable(t)? {
            return Ok(false);
        }
        for p in self.trs.redex_positions(t) {
            if !self.circled_variant_accepted(t, &p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn evidence(&self, t: &Term) -> Result<Vec<RedexEvidence>> {
        self.trs
            .redex_positions(t)
            .into_iter()
            .map(|p| {
                let variant = Self::circled_variant(t, &p)?;
                let accepted = self.cprime.accepts(&variant)?;
                Ok(RedexEvidence {
                    position: p,
                    variant,
                    accepted,
                })
            })
            .collect()
    }

    pub fn metrics(&self) -> Metrics {
        Metrics {
            trs_size: self.trs.size(),
            rule_count: self.trs.rule_count(),
            max_arity: self.trs.signature().max_arity(),
            base_states: self.rs.num_states(),
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

/// Decides whether `trs` is in CBN-RS under approximations `alpha`, `beta`.
pub fn decide_cbn_rs(trs: &Trs, alpha: Approx, beta: Approx) -> Result<Decision> {
    decide_cbn_rs_with(trs, alpha, beta, Options::default())
}

pub fn decide_cbn_rs_with(trs: &Trs, alpha: Approx, beta: Approx, options: Options) -> Result<Decision> {
    let pipeline = RsPipeline::build(trs, alpha, beta, options.strategy)?;
    decide_rs_with_pipeline(&pipeline, options)
}

pub fn decide_rs_with_pipeline(pipeline: &RsPipeline, options: Options) -> Result<Decision> {
    let mut machine = pipeline.machine(options.mode, options.max_states)?;
    let clock = Instant::now();
    let found = machine.explore(true)?;
    let mut metrics = pipeline.metrics();
    metrics
        .phase_ms
        .push(("pairs".to_string(), clock.elapsed().as_millis()));
    metrics.pair_states = machine.explored().len();
    metrics.pair_transitions_tried = machine.transitions_tried();
    let verdict = match found {
        None => Verdict::InClass,
        Some(id) => {
            let witness = machine.witness_term(id);
            let evidence = pipeline.evidence(&witness)?;
            if !pipeline.non_root_stable(&witness)? || evidence.iter().any(|e| !e.accepted) {
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

/// For each redex position of `t`: whether it is `(R_α,R_β)`-root-needed.
pub fn root_needed_redexes(trs: &Trs, alpha: Approx, beta: Approx, t: &Term) -> Result<BTreeMap<Position, bool>> {
    RsPipeline::build(trs, alpha, beta, Strategy::SemiNaive)?.root_needed_redexes(t)
}
