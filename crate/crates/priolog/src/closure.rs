//! Forward-chaining closure of rule sets, ignoring weak preconditions.
//!
//! `cl` computes the minimal literal set closed under the monotonic
//! counterparts of the given rules, extended by the built-in transitivity and
//! antisymmetry of the preference relation: whenever `n1 < n2` and `n2 < n3`
//! are derived so is `n1 < n3`, and whenever `n1 < n2` is derived so is
//! `-(n2 < n1)`. Keeping these axioms in the engine instead of materializing
//! their (cubically many) rule instances means they can never show up as
//! defeat candidates, which is fine: they would be strict and undefeatable
//! anyway.
//!
//! Complementary literals are treated as two distinct atoms throughout;
//! consistency is a post-hoc scan in `cn`, which collapses an inconsistent
//! closure to the all-literals set.
//!
//! The chaining is counter-based (one counter per rule, one watch list per
//! body literal), so a single `cl` call is linear in the total size of the
//! rule bodies plus the number of derived preference pairs.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::ast::{Atom, Literal, LiteralSet, Program, Rule, RuleName};

/// A subset of a program's rules, addressed by rule index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleSet(BTreeSet<usize>);

impl RuleSet {
    pub fn empty() -> Self {
        RuleSet::default()
    }

    pub fn full(program: &Program) -> Self {
        RuleSet((0..program.len()).collect())
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        RuleSet(indices.into_iter().collect())
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.0.contains(&idx)
    }

    pub fn insert(&mut self, idx: usize) -> bool {
        self.0.insert(idx)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// This set plus one extra rule.
    pub fn with(&self, idx: usize) -> RuleSet {
        let mut out = self.clone();
        out.0.insert(idx);
        out
    }

    /// This set minus the members of `other`.
    pub fn minus(&self, other: &RuleSet) -> RuleSet {
        RuleSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &RuleSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn rules<'a>(&'a self, program: &'a Program) -> impl Iterator<Item = &'a Rule> + 'a {
        let rules = program.rules();
        self.0.iter().map(move |&i| &rules[i])
    }
}

impl FromIterator<usize> for RuleSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        RuleSet(iter.into_iter().collect())
    }
}

struct Chaining<'r> {
    heads: Vec<&'r Literal>,
    counters: Vec<usize>,
    watchers: HashMap<&'r Literal, Vec<usize>>,
    queue: VecDeque<Literal>,
    derived: HashSet<Literal>,
    pref_axioms: bool,
    // positive preference pairs derived so far, indexed both ways
    by_left: HashMap<RuleName, Vec<RuleName>>,
    by_right: HashMap<RuleName, Vec<RuleName>>,
}

impl<'r> Chaining<'r> {
    fn new(rules: &[&'r Rule], pref_axioms: bool) -> Self {
        let mut engine = Chaining {
            heads: Vec::with_capacity(rules.len()),
            counters: Vec::with_capacity(rules.len()),
            watchers: HashMap::new(),
            queue: VecDeque::new(),
            derived: HashSet::new(),
            pref_axioms,
            by_left: HashMap::new(),
            by_right: HashMap::new(),
        };
        for (idx, rule) in rules.iter().enumerate() {
            engine.heads.push(&rule.head);
            engine.counters.push(rule.pos_body.len());
            for lit in &rule.pos_body {
                engine.watchers.entry(lit).or_default().push(idx);
            }
            if rule.pos_body.is_empty() {
                engine.queue.push_back(rule.head.clone());
            }
        }
        engine
    }

    fn run(mut self) -> LiteralSet {
        while let Some(lit) = self.queue.pop_front() {
            if !self.derived.insert(lit.clone()) {
                continue;
            }
            if let Some(watching) = self.watchers.get(&lit).cloned() {
                for rule_idx in watching {
                    self.counters[rule_idx] -= 1;
                    if self.counters[rule_idx] == 0 {
                        self.queue.push_back(self.heads[rule_idx].clone());
                    }
                }
            }
            if self.pref_axioms {
                self.apply_pref_axioms(&lit);
            }
        }
        LiteralSet::from_members(self.derived)
    }

    fn apply_pref_axioms(&mut self, lit: &Literal) {
        if lit.strong_neg {
            return;
        }
        let (left, right) = match &lit.atom {
            Atom::Pref { left, right } => (left.clone(), right.clone()),
            _ => return,
        };

        self.push(Literal::negative(Atom::pref(right.clone(), left.clone())));
        if let Some(successors) = self.by_left.get(&right) {
            for z in successors.clone() {
                self.push(Literal::positive(Atom::pref(left.clone(), z)));
            }
        }
        if let Some(predecessors) = self.by_right.get(&left) {
            for w in predecessors.clone() {
                self.push(Literal::positive(Atom::pref(w, right.clone())));
            }
        }
        self.by_left.entry(left.clone()).or_default().push(right.clone());
        self.by_right.entry(right).or_default().push(left);
    }

    fn push(&mut self, lit: Literal) {
        if !self.derived.contains(&lit) {
            self.queue.push_back(lit);
        }
    }
}

/// Minimal model of the monotonic counterparts of `rules`, without the
/// built-in preference axioms. This is the raw Horn engine; `cl` layers the
/// axioms on top.
pub fn horn_closure<'a>(rules: impl IntoIterator<Item = &'a Rule>) -> LiteralSet {
    let rules: Vec<&Rule> = rules.into_iter().collect();
    Chaining::new(&rules, false).run()
}

/// The closure of the selected rules: the minimal literal set closed under
/// their monotonic counterparts and the built-in preference axioms. Never
/// collapses, even when the result contains complementary pairs.
pub fn cl(program: &Program, rules: &RuleSet) -> LiteralSet {
    let selected: Vec<&Rule> = rules.rules(program).collect();
    Chaining::new(&selected, true).run()
}

/// Logically closed consequences of the selected rules: `cl` if consistent,
/// otherwise the set of all literals over the program signature.
pub fn cn(program: &Program, rules: &RuleSet) -> LiteralSet {
    let closure = cl(program, rules);
    if closure.is_consistent() {
        closure
    } else {
        program.lit()
    }
}

/// The X-reduct: the rules not defeated by `x`. Weak bodies are kept on the
/// surviving rules and ignored by the closure operators.
pub fn reduct(program: &Program, x: &LiteralSet) -> RuleSet {
    program
        .rules()
        .iter()
        .enumerate()
        .filter(|(_, rule)| !x.defeats(rule))
        .map(|(idx, _)| idx)
        .collect()
}

/// Explicit rule instances of the built-in transitivity and antisymmetry
/// schemata over a name universe. Only used to cross-check the lazy engine;
/// the semantics never materializes these.
pub fn pref_axiom_instances(names: &BTreeSet<RuleName>) -> Vec<Rule> {
    let mut out = Vec::new();
    for n1 in names {
        for n2 in names {
            out.push(Rule::new(
                None,
                Literal::negative(Atom::pref(n2.clone(), n1.clone())),
                [Literal::positive(Atom::pref(n1.clone(), n2.clone()))],
                [],
            ));
            for n3 in names {
                out.push(Rule::new(
                    None,
                    Literal::positive(Atom::pref(n1.clone(), n3.clone())),
                    [
                        Literal::positive(Atom::pref(n1.clone(), n2.clone())),
                        Literal::positive(Atom::pref(n2.clone(), n3.clone())),
                    ],
                    [],
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::load_program;
    use crate::parse::parse_literal;

    fn lit(s: &str) -> Literal {
        parse_literal(s).unwrap()
    }

    fn lits(items: &[&str]) -> LiteralSet {
        items.iter().map(|s| lit(s)).collect()
    }

    const P0: &str = "b <- not -b.\na <- not -a.\n-a <- not a.";

    #[test]
    fn closure_of_p0_ignores_weak_bodies() {
        let p = load_program(P0).unwrap();
        assert_eq!(cl(&p, &RuleSet::full(&p)), lits(&["a", "-a", "b"]));
    }

    #[test]
    fn closure_applies_antisymmetry_to_pref_facts() {
        let p = load_program("n2 < n1.").unwrap();
        assert_eq!(cl(&p, &RuleSet::full(&p)), lits(&["n2 < n1", "-(n1 < n2)"]));
    }

    #[test]
    fn closure_of_empty_rule_set_is_empty() {
        let p = load_program(P0).unwrap();
        assert_eq!(cl(&p, &RuleSet::empty()), LiteralSet::empty());
    }

    #[test]
    fn closure_chains_transitivity() {
        let p = load_program("a < b.\nb < c.").unwrap();
        assert_eq!(
            cl(&p, &RuleSet::full(&p)),
            lits(&["a < b", "b < c", "a < c", "-(b < a)", "-(c < b)", "-(c < a)"])
        );
    }

    #[test]
    fn cn_collapses_inconsistent_closures() {
        let p = load_program(P0).unwrap();
        let all = cn(&p, &RuleSet::full(&p));
        assert!(all.is_lit());
        assert_eq!(all, p.lit());

        let single = load_program("a.").unwrap();
        assert_eq!(cn(&single, &RuleSet::full(&single)), lits(&["a"]));

        let direct = load_program("a.\n-a.").unwrap();
        assert!(cn(&direct, &RuleSet::full(&direct)).is_lit());
    }

    #[test]
    fn reduct_drops_exactly_the_defeated_rules() {
        let p = load_program(P0).unwrap();
        assert!(reduct(&p, &p.lit()).is_empty());
        assert_eq!(reduct(&p, &LiteralSet::empty()), RuleSet::full(&p));

        // oracle: scan the definition directly
        let p2 = load_program("n1: b <- not c, not -b.\nn2: -b <- not b.\nn2 < n1.").unwrap();
        let x = lits(&["b"]);
        let expected: RuleSet = p2
            .rules()
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.weak_body.iter().any(|l| x.contains(l)))
            .map(|(i, _)| i)
            .collect();
        let actual = reduct(&p2, &x);
        assert_eq!(actual, expected);
        let n2 = p2.index_of_name(&RuleName::new("n2")).unwrap();
        assert!(!actual.contains(n2));
        assert_eq!(actual.len(), 2);
    }

    #[test]
    fn contradictory_preference_facts_collapse_cn() {
        // antisymmetry makes a preference cycle of length two inconsistent
        let p = load_program("n1 < n2.\nn2 < n1.").unwrap();
        let closure = cl(&p, &RuleSet::full(&p));
        assert!(!closure.is_consistent());
        assert!(!closure.is_lit());
        assert!(cn(&p, &RuleSet::full(&p)).is_lit());
    }

    #[test]
    fn cl_is_contained_in_cn() {
        for src in [P0, "a < b.\nb < c.", "n1: b <- not c.\nc."] {
            let p = load_program(src).unwrap();
            let closure = cl(&p, &RuleSet::full(&p));
            let closed = cn(&p, &RuleSet::full(&p));
            assert!(closure.is_subset(&closed), "cl ⊈ cn for {src}");
            if closure.is_consistent() {
                assert_eq!(closure, closed);
            }
        }
    }

    #[test]
    fn lazy_axioms_match_materialized_instances() {
        let src = "a < b.\nb < c.\nc < d.\nx < y <- p.\np.";
        let p = load_program(src).unwrap();
        let lazy = cl(&p, &RuleSet::full(&p));

        let mut rules: Vec<Rule> = p.rules().to_vec();
        rules.extend(pref_axiom_instances(&p.signature().names));
        let materialized = horn_closure(rules.iter());
        assert_eq!(lazy, materialized);
    }

    #[test]
    fn closure_feeds_derived_negative_prefs_back_into_bodies() {
        // q waits on a literal only the antisymmetry axiom can produce
        let p = load_program("a < b.\nq <- -(b < a).").unwrap();
        let closure = cl(&p, &RuleSet::full(&p));
        assert!(closure.contains(&lit("q")));
    }
}
