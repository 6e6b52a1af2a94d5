//! Property tests for the structural invariants: parser round-trips,
//! grounding coverage, operator monotonicity.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_literal_set, random_program, GenConfig};
use priolog::answerset::{answer_sets, EnumerationGuard};
use priolog::ast::{Atom, Literal, LiteralSet, Program, Rule};
use priolog::closure::{cl, cn, reduct, RuleSet};
use priolog::ground::{constant_domain, ground, GroundError};
use priolog::parse::{
    parse_program, ParsedProgram, SchemaAtom, SchemaLiteral, SchemaName, SchemaRule, Term,
};
use priolog::semantics::{dom, gamma, gamma_pr, gamma_star, safe_pr, wfs, wfs_star};
use priolog::ProgramError;

fn term_strategy() -> impl Strategy<Value = Term> {
    prop_oneof![
        prop_oneof![Just("a"), Just("b"), Just("c")].prop_map(|c| Term::Const(c.to_string())),
        prop_oneof![Just("X"), Just("Y")].prop_map(|v| Term::Var(v.to_string())),
    ]
}

fn name_strategy() -> impl Strategy<Value = SchemaName> {
    prop_oneof![
        prop_oneof![Just("X"), Just("Y")].prop_map(|v| SchemaName::Var(v.to_string())),
        (prop_oneof![Just("n"), Just("m")], proptest::collection::vec(term_strategy(), 0..=2))
            .prop_map(|(f, args)| SchemaName::Compound { functor: f.to_string(), args }),
    ]
}

fn literal_strategy() -> impl Strategy<Value = SchemaLiteral> {
    let atom = prop_oneof![
        (
            prop_oneof![Just("p"), Just("q"), Just("fin-statement")],
            proptest::collection::vec(term_strategy(), 0..=2)
        )
            .prop_map(|(f, args)| SchemaAtom::Ordinary { predicate: f.to_string(), args }),
        (name_strategy(), name_strategy())
            .prop_map(|(left, right)| SchemaAtom::Pref { left, right }),
    ];
    (atom, any::<bool>()).prop_map(|(atom, strong_neg)| SchemaLiteral { atom, strong_neg })
}

fn schema_strategy() -> impl Strategy<Value = SchemaRule> {
    (
        literal_strategy(),
        proptest::collection::vec(literal_strategy(), 0..=2),
        proptest::collection::vec(literal_strategy(), 0..=2),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(head, pos_body, weak_body, seminormal, want_name)| SchemaRule {
            // names are attached afterwards, uniquely per program
            name: if want_name && (seminormal || !weak_body.is_empty()) {
                Some(SchemaName::Compound { functor: "pending".into(), args: vec![] })
            } else {
                None
            },
            head,
            pos_body,
            weak_body,
            seminormal,
        })
}

fn program_strategy() -> impl Strategy<Value = Vec<SchemaRule>> {
    proptest::collection::vec(schema_strategy(), 1..=5).prop_map(|mut schemas| {
        for (i, schema) in schemas.iter_mut().enumerate() {
            if schema.name.is_some() {
                schema.name =
                    Some(SchemaName::Compound { functor: format!("r{i}"), args: vec![] });
            }
        }
        schemas
    })
}

proptest! {
    /// Printing a parsed program and parsing it again is the identity.
    #[test]
    fn print_parse_round_trip(schemas in program_strategy()) {
        let printed: String = schemas.iter().map(|r| format!("{r}\n")).collect();
        let reparsed = parse_program(&printed).unwrap_or_else(|e| panic!("{printed}\n{e}"));
        prop_assert_eq!(&reparsed.schemas, &schemas);

        // and the printed form is a fixpoint of the pipeline
        let reprinted: String = reparsed.schemas.iter().map(|r| format!("{r}\n")).collect();
        prop_assert_eq!(printed, reprinted);
    }

    /// Grounding yields exactly the instances of the individual schemas,
    /// with no variables left.
    #[test]
    fn grounding_covers_all_schema_instances(schemas in program_strategy()) {
        let parsed = ParsedProgram { schemas, declared_constants: vec![] };
        let constants = constant_domain(&parsed);
        match ground(&parsed.schemas, &constants) {
            Err(GroundError::UnboundVariable { .. }) => {
                prop_assert!(constants.is_empty());
            }
            Err(GroundError::Program(ProgramError::DuplicateName { .. })) => {
                // a constant name on a schema with several instances
            }
            Err(other) => return Err(TestCaseError::fail(other.to_string())),
            Ok(program) => {
                let mut expected: BTreeSet<Rule> = BTreeSet::new();
                for schema in &parsed.schemas {
                    let one = ground(std::slice::from_ref(schema), &constants)
                        .expect("single schema grounds when the program does");
                    expected.extend(one.rules().iter().cloned());
                }
                let actual: BTreeSet<Rule> = program.rules().iter().cloned().collect();
                prop_assert_eq!(actual, expected);

                for rule in program.rules() {
                    prop_assert!(!rule.to_string().chars().any(|c| c.is_ascii_uppercase()));
                }
            }
        }
    }

    /// complement is an involution and flips exactly the polarity.
    #[test]
    fn complement_involution(lit in literal_strategy()) {
        if let Ok(ground_lit) = priolog::parse::parse_literal(&lit.to_string()) {
            prop_assert_eq!(ground_lit.complement().complement(), ground_lit.clone());
            prop_assert_ne!(ground_lit.complement().strong_neg, ground_lit.strong_neg);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// defeat is monotone in the literal set; mon is idempotent.
    #[test]
    fn defeat_monotone_and_mon_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_program(&mut rng, &GenConfig::default());
        let y = random_literal_set(&mut rng, &p);
        let x: LiteralSet = y.iter().filter(|_| rand::Rng::gen_bool(&mut rng, 0.5)).cloned().collect();

        for rule in p.rules() {
            if x.defeats(rule) {
                prop_assert!(y.defeats(rule));
            }
            prop_assert_eq!(rule.mon().mon(), rule.mon());
        }
    }

    /// cl and cn grow with the rule set; cl is always inside cn.
    #[test]
    fn closure_monotone_in_rules(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_program(&mut rng, &GenConfig::default());
        let big = RuleSet::full(&p);
        let small: RuleSet = big.iter().filter(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();

        prop_assert!(cl(&p, &small).is_subset(&cl(&p, &big)));
        prop_assert!(cn(&p, &small).is_subset(&cn(&p, &big)));
        prop_assert!(cl(&p, &small).is_subset(&cn(&p, &small)));
    }

    /// reduct shrinks as the defeating set grows; gamma and gamma_star are
    /// anti-monotone.
    #[test]
    fn reduct_and_gamma_anti_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_program(&mut rng, &GenConfig::default());
        let y = random_literal_set(&mut rng, &p);
        let x: LiteralSet = y.iter().filter(|_| rand::Rng::gen_bool(&mut rng, 0.5)).cloned().collect();

        prop_assert!(reduct(&p, &y).is_subset(&reduct(&p, &x)));
        prop_assert!(gamma(&p, &y).is_subset(&gamma(&p, &x)));
        prop_assert!(gamma_star(&p, &y).is_subset(&gamma_star(&p, &x)));
        // gamma_star never collapses to the all-literals set
        prop_assert!(!gamma_star(&p, &x).is_lit());
    }

    /// dom, safe_pr and gamma_pr are monotone in their literal argument;
    /// dom is monotone in the rule set as well.
    #[test]
    fn preference_operators_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_program(&mut rng, &GenConfig::default());
        let y = random_literal_set(&mut rng, &p);
        let x: LiteralSet = y.iter().filter(|_| rand::Rng::gen_bool(&mut rng, 0.5)).cloned().collect();
        let big_rules = RuleSet::full(&p);
        let small_rules: RuleSet = big_rules.iter().filter(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();

        for idx in 0..p.len() {
            prop_assert!(dom(&p, idx, &x, &small_rules).is_subset(&dom(&p, idx, &y, &small_rules)));
            prop_assert!(dom(&p, idx, &x, &small_rules).is_subset(&dom(&p, idx, &x, &big_rules)));
        }
        prop_assert!(safe_pr(&p, &x, false).is_subset(&safe_pr(&p, &y, false)));
        prop_assert!(gamma_pr(&p, &x, false).is_subset(&gamma_pr(&p, &y, false)));
    }

    /// Pointwise, the prioritized operator dominates the strengthened one.
    #[test]
    fn gamma_pr_contains_gamma_star_composition(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_program(&mut rng, &GenConfig::default());
        let x = random_literal_set(&mut rng, &p);
        let strengthened = gamma(&p, &gamma_star(&p, &x));
        prop_assert!(strengthened.is_subset(&gamma_pr(&p, &x, false)));
    }

    /// Without weak negation the reduct never shrinks, so the strengthened
    /// and classical semantics coincide.
    #[test]
    fn strict_programs_need_no_strengthening(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_program(&mut rng, &GenConfig::default());
        let strict: Vec<Rule> = p
            .rules()
            .iter()
            .map(|r| Rule::new(None, r.head.clone(), r.pos_body.iter().cloned(), []))
            .collect();
        let p = Program::new(strict).unwrap();
        let classical = wfs(&p);
        let strengthened = wfs_star(&p);
        prop_assert_eq!(classical.final_set(), strengthened.final_set());
    }

    /// Without strong negation the strengthened semantics collapses to the
    /// classical one.
    #[test]
    fn positive_programs_need_no_strengthening(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_program(&mut rng, &GenConfig { max_pref_facts: 0, ..GenConfig::default() });
        // strip strong negation, keeping the rule structure
        let positive: Vec<Rule> = p
            .rules()
            .iter()
            .map(|r| {
                let fix = |l: &Literal| Literal::positive(l.atom.clone());
                Rule::new(None, fix(&r.head), r.pos_body.iter().map(fix), r.weak_body.iter().map(fix))
            })
            .collect();
        let p = Program::new(positive).unwrap();
        let classical = wfs(&p);
        let strengthened = wfs_star(&p);
        prop_assert_eq!(classical.final_set(), strengthened.final_set());
    }

    /// Answer sets are consistent unless they are the total set, and then
    /// they are unique.
    #[test]
    fn answer_sets_consistent_or_unique_total(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_program(&mut rng, &GenConfig::default());
        let sets = answer_sets(&p, &EnumerationGuard { max_atoms: 30 }).unwrap();
        for set in &sets {
            if set.is_lit() {
                prop_assert_eq!(sets.len(), 1);
            } else {
                prop_assert!(set.is_consistent());
            }
        }
    }

    /// Preference closure participates in answer sets: each one already
    /// contains the antisymmetric consequences of its preference facts.
    #[test]
    fn answer_sets_are_pref_closed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_program(&mut rng, &GenConfig::default());
        let sets = answer_sets(&p, &EnumerationGuard { max_atoms: 30 }).unwrap();
        for set in &sets {
            if set.is_lit() {
                continue;
            }
            for l in set.iter() {
                if let Atom::Pref { left, right } = &l.atom {
                    if !l.strong_neg {
                        let anti = Literal::negative(Atom::pref(right.clone(), left.clone()));
                        prop_assert!(set.contains(&anti));
                    }
                }
            }
        }
    }
}
