//! Brute-force answer set enumeration and the priority-preserving filter.
//!
//! This module exists to verify, not to perform: it enumerates fixpoints of
//! `gamma` exhaustively at desk scale and checks which of them respect the
//! derived preference information. The well-founded engines are checked
//! against it in the test suites.
//!
//! An answer set is determined by which weakly negated preconditions it
//! contains, so instead of enumerating all subsets of signature literals we
//! enumerate subsets of the *derivable weak-body literals* (weak-body
//! literals inside the closure of the whole program, preference axioms
//! included) and reconstruct each candidate as `cn` of the corresponding
//! reduct. Any consistent answer set is contained in that closure, so the
//! restriction loses nothing; the all-literals candidate is checked
//! separately.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::ast::{Literal, LiteralSet, Program};
use crate::closure::{cl, cn, reduct, RuleSet};
use crate::semantics::dom;

/// Size guard for the exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationGuard {
    /// Maximum number of signature atoms, and also the maximum number of
    /// branch literals (derivable weak-body literals) enumerated over.
    pub max_atoms: usize,
}

impl Default for EnumerationGuard {
    fn default() -> Self {
        EnumerationGuard { max_atoms: 20 }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TooLarge {
    #[error("program has {count} signature atoms, above the enumeration limit of {limit}")]
    SignatureAtoms { count: usize, limit: usize },
    #[error("program has {count} derivable weak-body literals, above the enumeration limit of {limit}")]
    BranchLiterals { count: usize, limit: usize },
}

/// All answer sets of the program: the fixpoints `x = cn(reduct(x))`,
/// in sorted order. Fails fast when the guard is exceeded.
pub fn answer_sets(
    program: &Program,
    guard: &EnumerationGuard,
) -> Result<Vec<LiteralSet>, TooLarge> {
    let atom_count = program.signature().atoms.len();
    if atom_count > guard.max_atoms {
        return Err(TooLarge::SignatureAtoms { count: atom_count, limit: guard.max_atoms });
    }

    let derivable = cl(program, &RuleSet::full(program));
    let weak: BTreeSet<Literal> = program
        .rules()
        .iter()
        .flat_map(|r| r.weak_body.iter().cloned())
        .collect();
    let branch: Vec<&Literal> = weak.iter().filter(|l| derivable.contains(l)).collect();
    if branch.len() > guard.max_atoms.min(u64::BITS as usize - 1) {
        return Err(TooLarge::BranchLiterals { count: branch.len(), limit: guard.max_atoms });
    }

    let mut found: BTreeSet<LiteralSet> = BTreeSet::new();
    for mask in 0u64..(1u64 << branch.len()) {
        let assumed: LiteralSet = branch
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask & (1 << bit) != 0)
            .map(|(_, lit)| (*lit).clone())
            .collect();
        let candidate = cn(program, &reduct(program, &assumed));
        let defeat_part: LiteralSet =
            weak.iter().filter(|l| candidate.contains(l)).cloned().collect();
        if defeat_part == assumed {
            found.insert(candidate);
        }
    }

    // the inconsistent total closure is an answer set iff the strict part
    // already collapses
    let lit = program.lit();
    if cn(program, &reduct(program, &lit)) == lit {
        found.insert(lit);
    }

    Ok(found.into_iter().collect())
}

/// The rules rebutted in `a`: positive body established, yet defeated.
pub fn rebutted(program: &Program, a: &LiteralSet) -> RuleSet {
    program
        .rules()
        .iter()
        .enumerate()
        .filter(|(_, rule)| rule.pos_body.iter().all(|l| a.contains(l)) && a.defeats(rule))
        .map(|(idx, _)| idx)
        .collect()
}

/// True iff every rule rebutted in `a` stays defeated after removing the
/// rules it dominates: the rebuttal does not rest solely on less preferred
/// rules.
pub fn priority_preserving(program: &Program, a: &LiteralSet) -> bool {
    let undefeated = reduct(program, a);
    rebutted(program, a).iter().all(|idx| {
        let dominated = dom(program, idx, a, &undefeated);
        let closure = cl(program, &undefeated.minus(&dominated));
        closure.defeats(program.rule(idx))
    })
}

/// Answer sets together with their priority-preservation analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnswerSetReport {
    pub answer_sets: Vec<LiteralSet>,
    /// `preserving[i]` holds iff `answer_sets[i]` is priority preserving.
    pub preserving: Vec<bool>,
    /// Rules rebutted in each answer set.
    pub rebutted: Vec<RuleSet>,
}

impl AnswerSetReport {
    pub fn analyze(program: &Program, guard: &EnumerationGuard) -> Result<Self, TooLarge> {
        let sets = answer_sets(program, guard)?;
        let preserving = sets.iter().map(|a| priority_preserving(program, a)).collect();
        let rebutted = sets.iter().map(|a| rebutted(program, a)).collect();
        Ok(AnswerSetReport { answer_sets: sets, preserving, rebutted })
    }

    pub fn preserving_sets(&self) -> impl Iterator<Item = &LiteralSet> {
        self.answer_sets
            .iter()
            .zip(&self.preserving)
            .filter(|(_, keep)| **keep)
            .map(|(set, _)| set)
    }
}
