//! Schema instantiation over the finite constant domain.
//!
//! The grounding domain is Herbrand-style: every identifier that occurs as a
//! ground term anywhere in the program (predicate arguments, name arguments,
//! argument-free rule names), optionally extended by a `#constants`
//! declaration. Every schema variable is replaced by every constant, so the
//! ground program stays finite. Seminormal rules are expanded before
//! instantiation; the two steps commute.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ast::{Program, ProgramError, Rule};
use crate::parse::{
    expand_seminormal, ground_literal, ground_name, ParseError, ParsedProgram, SchemaAtom,
    SchemaLiteral, SchemaName, SchemaRule, Term,
};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GroundError {
    #[error("rule `{rule}` uses variable `{var}` but the program declares no constants")]
    UnboundVariable { rule: String, var: String },
    #[error(transparent)]
    Program(#[from] ProgramError),
}

/// Errors from the full text-to-program pipeline.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ground(#[from] GroundError),
}

fn collect_name_constants(name: &SchemaName, out: &mut BTreeSet<String>) {
    if let SchemaName::Compound { functor, args } = name {
        if args.is_empty() {
            out.insert(functor.clone());
        }
        for arg in args {
            if let Term::Const(c) = arg {
                out.insert(c.clone());
            }
        }
    }
}

fn collect_literal_constants(lit: &SchemaLiteral, out: &mut BTreeSet<String>) {
    match &lit.atom {
        SchemaAtom::Ordinary { args, .. } => {
            for arg in args {
                if let Term::Const(c) = arg {
                    out.insert(c.clone());
                }
            }
        }
        SchemaAtom::Pref { left, right } => {
            collect_name_constants(left, out);
            collect_name_constants(right, out);
        }
    }
}

/// The grounding domain of a parsed program: constants from ground terms plus
/// declared ones.
pub fn constant_domain(parsed: &ParsedProgram) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = parsed.declared_constants.iter().cloned().collect();
    for schema in &parsed.schemas {
        if let Some(name) = &schema.name {
            collect_name_constants(name, &mut out);
        }
        collect_literal_constants(&schema.head, &mut out);
        for lit in schema.pos_body.iter().chain(schema.weak_body.iter()) {
            collect_literal_constants(lit, &mut out);
        }
    }
    out
}

fn substitute_term(term: &Term, binding: &BTreeMap<String, String>) -> Term {
    match term {
        Term::Const(_) => term.clone(),
        Term::Var(v) => Term::Const(binding[v].clone()),
    }
}

fn substitute_name(name: &SchemaName, binding: &BTreeMap<String, String>) -> SchemaName {
    match name {
        SchemaName::Var(v) => SchemaName::Compound { functor: binding[v].clone(), args: Vec::new() },
        SchemaName::Compound { functor, args } => SchemaName::Compound {
            functor: functor.clone(),
            args: args.iter().map(|t| substitute_term(t, binding)).collect(),
        },
    }
}

fn substitute_literal(lit: &SchemaLiteral, binding: &BTreeMap<String, String>) -> SchemaLiteral {
    let atom = match &lit.atom {
        SchemaAtom::Ordinary { predicate, args } => SchemaAtom::Ordinary {
            predicate: predicate.clone(),
            args: args.iter().map(|t| substitute_term(t, binding)).collect(),
        },
        SchemaAtom::Pref { left, right } => SchemaAtom::Pref {
            left: substitute_name(left, binding),
            right: substitute_name(right, binding),
        },
    };
    SchemaLiteral { atom, strong_neg: lit.strong_neg }
}

fn to_ground_rule(schema: &SchemaRule) -> Rule {
    // Callers substitute every variable first, so grounding cannot fail here.
    let name = schema.name.as_ref().map(|n| ground_name(n).expect("unsubstituted variable"));
    let head = ground_literal(&schema.head).expect("unsubstituted variable");
    let pos = schema.pos_body.iter().map(|l| ground_literal(l).expect("unsubstituted variable"));
    let weak = schema.weak_body.iter().map(|l| ground_literal(l).expect("unsubstituted variable"));
    Rule::new(name, head, pos, weak)
}

/// Instantiates every schema over `constants` and assembles the validated
/// ground program. Naming injectivity is re-checked on the instances.
pub fn ground(
    schemas: &[SchemaRule],
    constants: &BTreeSet<String>,
) -> Result<Program, GroundError> {
    let mut rules: Vec<Rule> = Vec::new();
    for schema in schemas {
        let schema = expand_seminormal(schema);
        let vars: Vec<String> = schema.variables().into_iter().collect();
        if vars.is_empty() {
            rules.push(to_ground_rule(&schema));
            continue;
        }
        if constants.is_empty() {
            return Err(GroundError::UnboundVariable {
                rule: schema.to_string(),
                var: vars[0].clone(),
            });
        }

        let domain: Vec<&String> = constants.iter().collect();
        let mut indices = vec![0usize; vars.len()];
        loop {
            let binding: BTreeMap<String, String> = vars
                .iter()
                .zip(&indices)
                .map(|(v, &i)| (v.clone(), domain[i].clone()))
                .collect();
            rules.push(to_ground_rule(&substitute_literal_rule(&schema, &binding)));

            // advance the odometer
            let mut k = 0;
            loop {
                if k == indices.len() {
                    break;
                }
                indices[k] += 1;
                if indices[k] < domain.len() {
                    break;
                }
                indices[k] = 0;
                k += 1;
            }
            if k == indices.len() {
                break;
            }
        }
    }
    Ok(Program::new(rules)?)
}

fn substitute_literal_rule(schema: &SchemaRule, binding: &BTreeMap<String, String>) -> SchemaRule {
    SchemaRule {
        name: schema.name.as_ref().map(|n| substitute_name(n, binding)),
        head: substitute_literal(&schema.head, binding),
        pos_body: schema.pos_body.iter().map(|l| substitute_literal(l, binding)).collect(),
        weak_body: schema.weak_body.iter().map(|l| substitute_literal(l, binding)).collect(),
        seminormal: false,
    }
}

/// Parses and grounds a program source in one step.
pub fn load_program(src: &str) -> Result<Program, LoadError> {
    let parsed = crate::parse::parse_program(src)?;
    let constants = constant_domain(&parsed);
    Ok(ground(&parsed.schemas, &constants)?)
}
