//! Ground abstract syntax: literals, rules, programs.
//!
//! Everything here is immutable after construction and cheap to clone at the
//! scale this library targets (desk-sized programs). Rule preferences are
//! ordinary literals built from the reserved infix `<`, so they flow through
//! closure and defeat tests exactly like any other literal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// A rule name: a functor with zero or more constant arguments.
///
/// `ucc` and `lp(ucc,sma)` are both names; names with different functors or
/// arguments are distinct.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleName {
    pub functor: String,
    pub args: Vec<String>,
}

impl RuleName {
    pub fn new(functor: impl Into<String>) -> Self {
        RuleName { functor: functor.into(), args: Vec::new() }
    }

    pub fn with_args(functor: impl Into<String>, args: Vec<String>) -> Self {
        RuleName { functor: functor.into(), args }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.functor)?;
        if !self.args.is_empty() {
            write!(f, "({})", self.args.join(","))?;
        }
        Ok(())
    }
}

/// A propositional atom: either an ordinary predicate over constants or a
/// preference atom `left < right` over rule names.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Ordinary { predicate: String, args: Vec<String> },
    Pref { left: RuleName, right: RuleName },
}

impl Atom {
    pub fn prop(predicate: impl Into<String>) -> Self {
        Atom::Ordinary { predicate: predicate.into(), args: Vec::new() }
    }

    pub fn pred(predicate: impl Into<String>, args: Vec<String>) -> Self {
        Atom::Ordinary { predicate: predicate.into(), args }
    }

    pub fn pref(left: RuleName, right: RuleName) -> Self {
        Atom::Pref { left, right }
    }

    pub fn is_pref(&self) -> bool {
        matches!(self, Atom::Pref { .. })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Ordinary { predicate, args } => {
                write!(f, "{predicate}")?;
                if !args.is_empty() {
                    write!(f, "({})", args.join(","))?;
                }
                Ok(())
            }
            Atom::Pref { left, right } => write!(f, "{left} < {right}"),
        }
    }
}

/// An atom or its strong negation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub strong_neg: bool,
}

impl Literal {
    pub fn positive(atom: Atom) -> Self {
        Literal { atom, strong_neg: false }
    }

    pub fn negative(atom: Atom) -> Self {
        Literal { atom, strong_neg: true }
    }

    /// The complementary literal: flips strong negation. An involution.
    pub fn complement(&self) -> Literal {
        Literal { atom: self.atom.clone(), strong_neg: !self.strong_neg }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.strong_neg {
            // Preference atoms need parentheses so `-(n1 < n2)` reparses.
            if self.atom.is_pref() {
                write!(f, "-({})", self.atom)
            } else {
                write!(f, "-{}", self.atom)
            }
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

/// A ground rule `head <- pos_body, not weak_body`, optionally named.
///
/// A rule is *strict* when its weak body is empty; only non-strict rules may
/// carry a name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub name: Option<RuleName>,
    pub head: Literal,
    pub pos_body: BTreeSet<Literal>,
    pub weak_body: BTreeSet<Literal>,
}

impl Rule {
    pub fn fact(head: Literal) -> Self {
        Rule { name: None, head, pos_body: BTreeSet::new(), weak_body: BTreeSet::new() }
    }

    pub fn new(
        name: Option<RuleName>,
        head: Literal,
        pos_body: impl IntoIterator<Item = Literal>,
        weak_body: impl IntoIterator<Item = Literal>,
    ) -> Self {
        Rule {
            name,
            head,
            pos_body: pos_body.into_iter().collect(),
            weak_body: weak_body.into_iter().collect(),
        }
    }

    /// True iff the rule has no weakly negated preconditions.
    pub fn is_strict(&self) -> bool {
        self.weak_body.is_empty()
    }

    /// The monotonic counterpart: same head and positive body, weak body
    /// dropped (and with it the name, which only matters for conflict
    /// resolution among defeasible rules).
    pub fn mon(&self) -> Rule {
        Rule {
            name: None,
            head: self.head.clone(),
            pos_body: self.pos_body.clone(),
            weak_body: BTreeSet::new(),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            write!(f, "{name}: ")?;
        }
        write!(f, "{}", self.head)?;
        if !self.pos_body.is_empty() || !self.weak_body.is_empty() {
            write!(f, " <- ")?;
            let mut parts: Vec<String> = self.pos_body.iter().map(|l| l.to_string()).collect();
            parts.extend(self.weak_body.iter().map(|l| format!("not {l}")));
            write!(f, "{}", parts.join(", "))?;
        }
        write!(f, ".")
    }
}

/// The atoms and rule names occurring in a program.
///
/// `atoms` holds every atom that appears anywhere in a rule; `names` holds
/// every rule name, whether used to name a rule or mentioned inside a
/// preference atom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub atoms: BTreeSet<Atom>,
    pub names: BTreeSet<RuleName>,
}

impl Signature {
    fn record_literal(&mut self, lit: &Literal) {
        self.atoms.insert(lit.atom.clone());
        if let Atom::Pref { left, right } = &lit.atom {
            self.names.insert(left.clone());
            self.names.insert(right.clone());
        }
    }

    fn record_rule(&mut self, rule: &Rule) {
        if let Some(name) = &rule.name {
            self.names.insert(name.clone());
        }
        self.record_literal(&rule.head);
        for lit in rule.pos_body.iter().chain(rule.weak_body.iter()) {
            self.record_literal(lit);
        }
    }

    /// All literals over this signature: both polarities of every occurring
    /// atom plus both polarities of every preference atom over the name
    /// universe.
    pub fn all_literals(&self) -> BTreeSet<Literal> {
        let mut out = BTreeSet::new();
        for atom in &self.atoms {
            out.insert(Literal::positive(atom.clone()));
            out.insert(Literal::negative(atom.clone()));
        }
        for left in &self.names {
            for right in &self.names {
                let atom = Atom::pref(left.clone(), right.clone());
                out.insert(Literal::positive(atom.clone()));
                out.insert(Literal::negative(atom));
            }
        }
        out
    }
}

/// A set of literals, with a distinguished inconsistent state marking the set
/// of *all* literals over a program signature.
///
/// Closure outputs (`cl`) may contain complementary pairs without being
/// flagged; logically closed outputs (`cn`) are either consistent or carry
/// `is_lit` with every signature literal materialized.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct LiteralSet {
    members: BTreeSet<Literal>,
    is_lit: bool,
}

impl LiteralSet {
    pub fn empty() -> Self {
        LiteralSet::default()
    }

    pub fn from_members(members: impl IntoIterator<Item = Literal>) -> Self {
        LiteralSet { members: members.into_iter().collect(), is_lit: false }
    }

    /// The set of all literals over `sig`, flagged as the inconsistent total
    /// closure.
    pub fn all(sig: &Signature) -> Self {
        LiteralSet { members: sig.all_literals(), is_lit: true }
    }

    pub fn is_lit(&self) -> bool {
        self.is_lit
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.members.contains(lit)
    }

    pub fn insert(&mut self, lit: Literal) -> bool {
        self.members.insert(lit)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Literal> {
        self.members.iter()
    }

    pub fn members(&self) -> &BTreeSet<Literal> {
        &self.members
    }

    pub fn is_subset(&self, other: &LiteralSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// True iff the set contains no complementary pair.
    pub fn is_consistent(&self) -> bool {
        !self.is_lit && self.members.iter().all(|l| !self.members.contains(&l.complement()))
    }

    /// True iff some member occurs among the rule's weakly negated
    /// preconditions. The all-literals set defeats every non-strict rule.
    pub fn defeats(&self, rule: &Rule) -> bool {
        if self.is_lit {
            !rule.weak_body.is_empty()
        } else {
            rule.weak_body.iter().any(|l| self.members.contains(l))
        }
    }
}

impl FromIterator<Literal> for LiteralSet {
    fn from_iter<T: IntoIterator<Item = Literal>>(iter: T) -> Self {
        LiteralSet::from_members(iter)
    }
}

impl fmt::Display for LiteralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rendered: Vec<String> = self.members.iter().map(|l| l.to_string()).collect();
        rendered.sort();
        write!(f, "{{{}}}", rendered.join(", "))
    }
}

/// Errors raised while assembling a [`Program`].
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ProgramError {
    #[error("name `{name}` is assigned to two distinct rules")]
    DuplicateName { name: RuleName },
    #[error("rule `{rule}` has no weak preconditions and must not carry a name")]
    NameOnStrictRule { rule: String },
}

/// A validated prioritized logic program: a finite rule set with a partial
/// injective naming function, plus the derived signature.
///
/// Rules are kept in input order and addressed by index. Textually identical
/// rules collapse to a single entry. The built-in transitivity and
/// antisymmetry of `<` are enforced by the closure engine and never appear as
/// rule objects here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    rules: Vec<Rule>,
    signature: Signature,
    by_name: BTreeMap<RuleName, usize>,
}

impl Program {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Result<Self, ProgramError> {
        let mut seen = BTreeSet::new();
        let mut kept: Vec<Rule> = Vec::new();
        for rule in rules {
            if seen.insert(rule.clone()) {
                kept.push(rule);
            }
        }

        let mut by_name = BTreeMap::new();
        let mut signature = Signature::default();
        for (idx, rule) in kept.iter().enumerate() {
            if let Some(name) = &rule.name {
                if rule.is_strict() {
                    return Err(ProgramError::NameOnStrictRule { rule: rule.to_string() });
                }
                if by_name.insert(name.clone(), idx).is_some() {
                    return Err(ProgramError::DuplicateName { name: name.clone() });
                }
            }
            signature.record_rule(rule);
        }

        Ok(Program { rules: kept, signature, by_name })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, idx: usize) -> &Rule {
        &self.rules[idx]
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn index_of_name(&self, name: &RuleName) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    /// The all-literals set over this program's signature.
    pub fn lit(&self) -> LiteralSet {
        LiteralSet::all(&self.signature)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}
