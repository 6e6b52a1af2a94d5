//! Well-founded fixpoint engines for prioritized programs.
//!
//! Four engines are provided, all least fixpoints reached by iterating a
//! monotone operator on the empty set:
//!
//! * [`wfs`] — the classical well-founded conclusions, iterating the square
//!   of the anti-monotone `gamma`;
//! * [`wfs_star`] — the strengthened variant that keeps contradictions local
//!   by running the non-collapsing [`gamma_star`] on the inside;
//! * [`wfs_pr`] with [`Engine::Declarative`] — the prioritized semantics,
//!   iterating `cn` over the inductively defined preference-safe rules;
//! * [`wfs_pr`] with [`Engine::Incremental`] — the same conclusions computed
//!   by a single loop that admits one safe rule at a time (at most one
//!   admission per rule, cubic overall). The admission order is a free
//!   choice; the result does not depend on it.
//!
//! Every engine returns a [`SemanticsTrace`] recording the conclusion sets
//! and safe-rule sets of each step.

use crate::ast::{Atom, Literal, LiteralSet, Program, Rule};
use crate::closure::{cl, cn, reduct, RuleSet};

/// One step of a fixpoint iteration: the conclusions established so far and
/// the rules they were drawn from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub conclusions: LiteralSet,
    pub safe_rules: RuleSet,
}

/// The iteration sequence of a fixpoint engine. `steps[0]` is the empty
/// starting point; conclusions grow strictly until the last two steps agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemanticsTrace {
    pub steps: Vec<TraceStep>,
}

impl SemanticsTrace {
    pub fn final_set(&self) -> &LiteralSet {
        &self.steps.last().expect("trace has at least the initial step").conclusions
    }
}

fn iterate(
    bound: usize,
    mut step: impl FnMut(&LiteralSet) -> (LiteralSet, RuleSet),
) -> SemanticsTrace {
    let mut steps = vec![TraceStep { conclusions: LiteralSet::empty(), safe_rules: RuleSet::empty() }];
    for _ in 0..=bound {
        let prev = steps.last().unwrap();
        let (next, safe) = step(&prev.conclusions);
        let done = next == prev.conclusions;
        steps.push(TraceStep { conclusions: next, safe_rules: safe });
        if done {
            return SemanticsTrace { steps };
        }
    }
    unreachable!("fixpoint iteration exceeded the literal count; operator is not monotone");
}

fn iteration_bound(program: &Program) -> usize {
    program.lit().len() + 1
}

/// `cn` of the rules not defeated by `x`. Anti-monotone in `x`.
pub fn gamma(program: &Program, x: &LiteralSet) -> LiteralSet {
    cn(program, &reduct(program, x))
}

/// `cl` of the rules not defeated by `x`: like [`gamma`] but without the
/// logical-closedness collapse, so a derived contradiction stays local
/// instead of wiping out the reduct.
pub fn gamma_star(program: &Program, x: &LiteralSet) -> LiteralSet {
    cl(program, &reduct(program, x))
}

/// Classical well-founded conclusions: least fixpoint of `gamma ∘ gamma`.
pub fn wfs(program: &Program) -> SemanticsTrace {
    iterate(iteration_bound(program), |x| {
        let potential = gamma(program, x);
        let safe = reduct(program, &potential);
        (cn(program, &safe), safe)
    })
}

/// Strengthened well-founded conclusions: least fixpoint of
/// `gamma ∘ gamma_star`.
pub fn wfs_star(program: &Program) -> SemanticsTrace {
    iterate(iteration_bound(program), |x| {
        let potential = gamma_star(program, x);
        let safe = reduct(program, &potential);
        (cn(program, &safe), safe)
    })
}

/// The rules dominated by `rule_idx` with respect to the established
/// literals `x` and the rule set `y`: every rule known from `x` to be less
/// preferred that is defeated once `rule_idx` fires together with `y`.
/// Empty when the rule is unnamed. Monotone in both `x` and `y`.
pub fn dom(program: &Program, rule_idx: usize, x: &LiteralSet, y: &RuleSet) -> RuleSet {
    let name = match &program.rule(rule_idx).name {
        Some(name) => name.clone(),
        None => return RuleSet::empty(),
    };
    let mut closure: Option<LiteralSet> = None;
    let mut out = RuleSet::empty();
    for (idx, rival) in program.rules().iter().enumerate() {
        let Some(rival_name) = &rival.name else { continue };
        let preferred = Literal::positive(Atom::pref(name.clone(), rival_name.clone()));
        if !x.contains(&preferred) {
            continue;
        }
        let closure =
            closure.get_or_insert_with(|| cl(program, &y.with(rule_idx)));
        if closure.defeats(rival) {
            out.insert(idx);
        }
    }
    out
}

/// The defeat test used inside the safe-rule construction. With `coherence`
/// set, a weak precondition `not b` also counts as satisfied when the
/// complement of `b` is already established in `x`.
fn survives(rule: &Rule, x: &LiteralSet, closure: &LiteralSet, coherence: bool) -> bool {
    rule.weak_body
        .iter()
        .all(|b| !closure.contains(b) || (coherence && x.contains(&b.complement())))
}

/// The preference-safe rules wrt. `x`: the union of the increasing sequence
/// `R_0 = {}`, `R_i = { r | r survives cl(reduct(x) \ dom(r, x, R_{i-1})) }`.
///
/// `r` ranges over all rules, not just the ones undefeated by `x`; this keeps
/// safeness monotone in `x` and a superset of the unprioritized safe rules.
pub fn safe_pr(program: &Program, x: &LiteralSet, coherence: bool) -> RuleSet {
    let undefeated = reduct(program, x);
    let plain_closure = cl(program, &undefeated);
    let mut prev = RuleSet::empty();
    for _ in 0..=program.len() {
        let mut next = RuleSet::empty();
        for idx in 0..program.len() {
            let dominated = dom(program, idx, x, &prev);
            let closure = if dominated.is_empty() {
                plain_closure.clone()
            } else {
                cl(program, &undefeated.minus(&dominated))
            };
            if survives(program.rule(idx), x, &closure, coherence) {
                next.insert(idx);
            }
        }
        if next == prev {
            return next;
        }
        prev = next;
    }
    unreachable!("safe-rule induction exceeded the rule count");
}

/// `cn` over the preference-safe rules. Monotone in `x`.
pub fn gamma_pr(program: &Program, x: &LiteralSet, coherence: bool) -> LiteralSet {
    cn(program, &safe_pr(program, x, coherence))
}

/// How to compute the prioritized well-founded conclusions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Iterate `gamma_pr` directly, recomputing the safe rules each round.
    Declarative,
    /// Admit one newly safe rule per loop iteration, growing the conclusion
    /// set incrementally.
    Incremental,
}

/// Prioritized well-founded conclusions: the least fixpoint of `gamma_pr`.
/// Both engines return the same final set; their traces differ in
/// granularity.
pub fn wfs_pr(program: &Program, engine: Engine, coherence: bool) -> SemanticsTrace {
    match engine {
        Engine::Declarative => iterate(iteration_bound(program), |x| {
            let safe = safe_pr(program, x, coherence);
            (cn(program, &safe), safe)
        }),
        Engine::Incremental => {
            let order: Vec<usize> = (0..program.len()).collect();
            wfs_incremental_with_order(program, coherence, &order)
        }
    }
}

/// The incremental engine with an explicit admission preference order
/// (a permutation of the rule indices). Candidates are tried in this order
/// each round; the first rule that passes the safety check is admitted. The
/// final conclusions are order-independent, which the test suite exercises
/// with randomized permutations.
pub fn wfs_incremental_with_order(
    program: &Program,
    coherence: bool,
    order: &[usize],
) -> SemanticsTrace {
    debug_assert_eq!(order.len(), program.len());

    let mut steps = vec![TraceStep { conclusions: LiteralSet::empty(), safe_rules: RuleSet::empty() }];
    let mut admitted = RuleSet::empty();
    let mut conclusions = LiteralSet::empty();

    for _ in 0..program.len() {
        let pool = reduct(program, &conclusions);
        let pool_closure = cl(program, &pool);
        let mut chosen = None;
        for &idx in order {
            if admitted.contains(idx) || !pool.contains(idx) {
                continue;
            }
            let dominated = dom(program, idx, &conclusions, &admitted);
            let closure = if dominated.is_empty() {
                pool_closure.clone()
            } else {
                cl(program, &pool.minus(&dominated))
            };
            if survives(program.rule(idx), &conclusions, &closure, coherence) {
                chosen = Some(idx);
                break;
            }
        }
        let Some(idx) = chosen else { break };
        admitted.insert(idx);
        let next = cn(program, &admitted);
        if next != conclusions {
            conclusions = next.clone();
            steps.push(TraceStep { conclusions: next, safe_rules: admitted.clone() });
        }
    }

    steps.push(TraceStep { conclusions, safe_rules: admitted });
    SemanticsTrace { steps }
}
