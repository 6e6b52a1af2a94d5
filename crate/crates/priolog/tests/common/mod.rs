//! Seeded random program generation for the property suites.

use rand::prelude::*;

use priolog::ast::{Atom, Literal, LiteralSet, Program, Rule, RuleName};

pub struct GenConfig {
    pub max_atoms: usize,
    pub max_rules: usize,
    pub max_named: usize,
    /// Add up to this many random preference facts between names.
    pub max_pref_facts: usize,
    /// Also generate preference-headed rules and preference literals in
    /// bodies (exercises the built-in axioms harder).
    pub pref_rules: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { max_atoms: 8, max_rules: 12, max_named: 4, max_pref_facts: 3, pref_rules: false }
    }
}

const ATOM_NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

fn random_literal(rng: &mut impl Rng, atoms: usize) -> Literal {
    let atom = Atom::prop(ATOM_NAMES[rng.gen_range(0..atoms)]);
    if rng.gen_bool(0.5) {
        Literal::negative(atom)
    } else {
        Literal::positive(atom)
    }
}

fn random_pref_literal(rng: &mut impl Rng, names: &[RuleName]) -> Literal {
    let left = names[rng.gen_range(0..names.len())].clone();
    let right = names[rng.gen_range(0..names.len())].clone();
    let atom = Atom::pref(left, right);
    if rng.gen_bool(0.3) {
        Literal::negative(atom)
    } else {
        Literal::positive(atom)
    }
}

pub fn random_program(rng: &mut impl Rng, cfg: &GenConfig) -> Program {
    let atoms = rng.gen_range(1..=cfg.max_atoms);
    let rule_count = rng.gen_range(1..=cfg.max_rules);
    let name_pool: Vec<RuleName> =
        (1..=cfg.max_named).map(|i| RuleName::new(format!("n{i}"))).collect();
    let mut unused_names: Vec<RuleName> = name_pool.clone();

    let mut rules = Vec::new();
    for _ in 0..rule_count {
        let head = if cfg.pref_rules && rng.gen_bool(0.25) {
            random_pref_literal(rng, &name_pool)
        } else {
            random_literal(rng, atoms)
        };
        let pos_body: Vec<Literal> =
            (0..rng.gen_range(0..=2)).map(|_| random_literal(rng, atoms)).collect();
        let weak_body: Vec<Literal> = (0..rng.gen_range(0..=2))
            .map(|_| {
                if cfg.pref_rules && rng.gen_bool(0.2) {
                    random_pref_literal(rng, &name_pool)
                } else {
                    random_literal(rng, atoms)
                }
            })
            .collect();

        let name = if !weak_body.is_empty() && !unused_names.is_empty() && rng.gen_bool(0.5) {
            Some(unused_names.remove(rng.gen_range(0..unused_names.len())))
        } else {
            None
        };
        rules.push(Rule::new(name, head, pos_body, weak_body));
    }

    for _ in 0..rng.gen_range(0..=cfg.max_pref_facts) {
        // mostly irreflexive pairs; the rare reflexive fact collapses the
        // program and exercises the all-literals paths
        let left = name_pool[rng.gen_range(0..name_pool.len())].clone();
        let right = if rng.gen_bool(0.05) {
            left.clone()
        } else {
            name_pool[rng.gen_range(0..name_pool.len())].clone()
        };
        rules.push(Rule::fact(Literal::positive(Atom::pref(left, right))));
    }

    Program::new(rules).expect("generated rules are valid")
}

/// A random subset of the signature literals, occasionally empty or total.
pub fn random_literal_set(rng: &mut impl Rng, program: &Program) -> LiteralSet {
    match rng.gen_range(0..10) {
        0 => LiteralSet::empty(),
        1 => program.lit(),
        _ => program
            .lit()
            .iter()
            .filter(|_| rng.gen_bool(0.3))
            .cloned()
            .collect(),
    }
}
