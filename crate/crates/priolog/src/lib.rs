//! Prioritized extended logic programs.
//!
//! `priolog` parses logic programs with two negations — strong negation `-`
//! and weak negation (negation as failure) `not` — plus an in-language rule
//! preference relation `n1 < n2` over rule names, and computes their
//! semantics:
//!
//! * the classical well-founded conclusions ([`semantics::wfs`]);
//! * a strengthened variant that keeps contradictions local
//!   ([`semantics::wfs_star`]);
//! * the prioritized well-founded conclusions, which resolve conflicts using
//!   derived preference information ([`semantics::wfs_pr`]), computed either
//!   declaratively or by an incremental single-loop procedure;
//! * brute-force answer sets with a priority-preserving filter as a
//!   verification oracle ([`answerset`]).
//!
//! The preference relation is transitive and antisymmetric by construction;
//! both properties are built into the closure engine rather than materialized
//! as rules.
//!
//! ```
//! use priolog::{load_program, semantics::{wfs_pr, Engine}};
//!
//! let program = load_program(
//!     "n1: b <- not c.\n\
//!      n2: c <- not b.\n\
//!      n2 < n1.",
//! )
//! .unwrap();
//! let conclusions = wfs_pr(&program, Engine::Declarative, false);
//! assert!(conclusions.final_set().contains(&priolog::parse::parse_literal("c").unwrap()));
//! ```

pub mod answerset;
pub mod ast;
pub mod closure;
pub mod ground;
pub mod parse;
pub mod semantics;

pub use ast::{Atom, Literal, LiteralSet, Program, ProgramError, Rule, RuleName, Signature};
pub use ground::{load_program, GroundError, LoadError};
pub use parse::{ParseError, ParsedProgram};
