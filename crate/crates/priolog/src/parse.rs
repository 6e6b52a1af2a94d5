//! Surface syntax for rule programs.
//!
//! The grammar, in brief (see the README for the full description):
//!
//! ```text
//! program   := (rule | directive)*
//! directive := '#constants' ident (',' ident)* '.'
//! rule      := [name ':'] literal [('<-' | '<=') body] '.'
//! body      := [bodylit (',' bodylit)*]
//! bodylit   := ['not'] literal
//! literal   := ['-'] atom | ['-'] '(' name '<' name ')'
//! atom      := ident ['(' term (',' term)* ')'] | name '<' name
//! name      := ident ['(' term (',' term)* ')'] | variable
//! ```
//!
//! `-` is strong negation, `not` weak negation, `<-` the rule arrow, `<=` the
//! seminormal arrow, `n < m` the preference atom, `%` starts a line comment
//! and `.` terminates a rule. Identifiers are lower-case and may contain
//! interior hyphens (`fin-statement`); capitalized identifiers are schema
//! variables, replaced by every constant during grounding.

use std::fmt;

use thiserror::Error;

use crate::ast::{Atom, Literal, RuleName};

/// A constant or variable argument position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Const(String),
    Var(String),
}

impl Term {
    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(s) | Term::Var(s) => write!(f, "{s}"),
        }
    }
}

/// A rule-name position in a schema: a bare variable or a functor with
/// term arguments, e.g. `D1` or `lp(D1,sma)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SchemaName {
    Var(String),
    Compound { functor: String, args: Vec<Term> },
}

impl fmt::Display for SchemaName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaName::Var(v) => write!(f, "{v}"),
            SchemaName::Compound { functor, args } => {
                write!(f, "{functor}")?;
                if !args.is_empty() {
                    let rendered: Vec<String> = args.iter().map(|t| t.to_string()).collect();
                    write!(f, "({})", rendered.join(","))?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SchemaAtom {
    Ordinary { predicate: String, args: Vec<Term> },
    Pref { left: SchemaName, right: SchemaName },
}

impl fmt::Display for SchemaAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaAtom::Ordinary { predicate, args } => {
                write!(f, "{predicate}")?;
                if !args.is_empty() {
                    let rendered: Vec<String> = args.iter().map(|t| t.to_string()).collect();
                    write!(f, "({})", rendered.join(","))?;
                }
                Ok(())
            }
            SchemaAtom::Pref { left, right } => write!(f, "{left} < {right}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SchemaLiteral {
    pub atom: SchemaAtom,
    pub strong_neg: bool,
}

impl SchemaLiteral {
    pub fn complement(&self) -> SchemaLiteral {
        SchemaLiteral { atom: self.atom.clone(), strong_neg: !self.strong_neg }
    }
}

impl fmt::Display for SchemaLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.strong_neg {
            if matches!(self.atom, SchemaAtom::Pref { .. }) {
                write!(f, "-({})", self.atom)
            } else {
                write!(f, "-{}", self.atom)
            }
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

/// A parsed rule that may still contain variables and an unexpanded
/// seminormal arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaRule {
    pub name: Option<SchemaName>,
    pub head: SchemaLiteral,
    pub pos_body: Vec<SchemaLiteral>,
    pub weak_body: Vec<SchemaLiteral>,
    /// True when the rule was written with `<=`.
    pub seminormal: bool,
}

impl SchemaRule {
    /// The variables occurring anywhere in the rule, name pattern included.
    pub fn variables(&self) -> std::collections::BTreeSet<String> {
        fn name_vars(name: &SchemaName, out: &mut std::collections::BTreeSet<String>) {
            match name {
                SchemaName::Var(v) => {
                    out.insert(v.clone());
                }
                SchemaName::Compound { args, .. } => {
                    for arg in args {
                        if let Term::Var(v) = arg {
                            out.insert(v.clone());
                        }
                    }
                }
            }
        }
        fn literal_vars(lit: &SchemaLiteral, out: &mut std::collections::BTreeSet<String>) {
            match &lit.atom {
                SchemaAtom::Ordinary { args, .. } => {
                    for arg in args {
                        if let Term::Var(v) = arg {
                            out.insert(v.clone());
                        }
                    }
                }
                SchemaAtom::Pref { left, right } => {
                    name_vars(left, out);
                    name_vars(right, out);
                }
            }
        }

        let mut vars = std::collections::BTreeSet::new();
        if let Some(name) = &self.name {
            name_vars(name, &mut vars);
        }
        literal_vars(&self.head, &mut vars);
        for lit in self.pos_body.iter().chain(self.weak_body.iter()) {
            literal_vars(lit, &mut vars);
        }
        vars
    }
}

impl fmt::Display for SchemaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            write!(f, "{name}: ")?;
        }
        write!(f, "{}", self.head)?;
        let mut parts: Vec<String> = self.pos_body.iter().map(|l| l.to_string()).collect();
        parts.extend(self.weak_body.iter().map(|l| format!("not {l}")));
        if self.seminormal {
            write!(f, " <=")?;
            if !parts.is_empty() {
                write!(f, " {}", parts.join(", "))?;
            }
        } else if !parts.is_empty() {
            write!(f, " <- {}", parts.join(", "))?;
        }
        write!(f, ".")
    }
}

/// Rewrites a `<=` rule into plain form by appending `not complement(head)`
/// to the weak body. Rules already in plain form are returned unchanged.
pub fn expand_seminormal(rule: &SchemaRule) -> SchemaRule {
    if !rule.seminormal {
        return rule.clone();
    }
    let mut expanded = rule.clone();
    expanded.seminormal = false;
    let guard = expanded.head.complement();
    if !expanded.weak_body.contains(&guard) {
        expanded.weak_body.push(guard);
    }
    expanded
}

/// The result of parsing a program source: rule schemas in input order plus
/// any constants declared with `#constants`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParsedProgram {
    pub schemas: Vec<SchemaRule>,
    pub declared_constants: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    DuplicateName(String),
    NameOnStrictRule(String),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {}", match kind {
    ParseErrorKind::Syntax(msg) => msg.clone(),
    ParseErrorKind::DuplicateName(name) => format!("name `{name}` is assigned to two distinct rules"),
    ParseErrorKind::NameOnStrictRule(name) => format!("rule named `{name}` has no weak preconditions; strict rules must be unnamed"),
})]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    Not,
    LParen,
    RParen,
    Comma,
    Colon,
    Period,
    Arrow,
    SemiArrow,
    Less,
    Minus,
    Directive(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Var(s) => write!(f, "`{s}`"),
            Tok::Not => write!(f, "`not`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Period => write!(f, "`.`"),
            Tok::Arrow => write!(f, "`<-`"),
            Tok::SemiArrow => write!(f, "`<=`"),
            Tok::Less => write!(f, "`<`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Directive(s) => write!(f, "`#{s}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;

    let ident_char = |c: char| c.is_ascii_alphanumeric() || c == '_';

    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        };

        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col);
            }
            continue;
        }

        let simple = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Period),
            '-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(tok) = simple {
            advance(&mut i, &mut line, &mut col);
            tokens.push(Token { tok, line: tline, col: tcol });
            continue;
        }

        if c == '<' {
            advance(&mut i, &mut line, &mut col);
            let tok = match chars.get(i) {
                Some('-') => {
                    advance(&mut i, &mut line, &mut col);
                    Tok::Arrow
                }
                Some('=') => {
                    advance(&mut i, &mut line, &mut col);
                    Tok::SemiArrow
                }
                _ => Tok::Less,
            };
            tokens.push(Token { tok, line: tline, col: tcol });
            continue;
        }

        if c == '#' {
            advance(&mut i, &mut line, &mut col);
            let start = i;
            while i < chars.len() && ident_char(chars[i]) {
                advance(&mut i, &mut line, &mut col);
            }
            if start == i {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    kind: ParseErrorKind::Syntax("expected a directive name after `#`".into()),
                });
            }
            let name: String = chars[start..i].iter().collect();
            tokens.push(Token { tok: Tok::Directive(name), line: tline, col: tcol });
            continue;
        }

        if c.is_ascii_alphabetic() {
            let start = i;
            advance(&mut i, &mut line, &mut col);
            loop {
                if i < chars.len() && ident_char(chars[i]) {
                    advance(&mut i, &mut line, &mut col);
                // interior hyphen, as in `fin-statement`
                } else if i + 1 < chars.len() && chars[i] == '-' && ident_char(chars[i + 1]) {
                    advance(&mut i, &mut line, &mut col);
                    advance(&mut i, &mut line, &mut col);
                } else {
                    break;
                }
            }
            let word: String = chars[start..i].iter().collect();
            let tok = if word == "not" {
                Tok::Not
            } else if c.is_ascii_uppercase() {
                Tok::Var(word)
            } else {
                Tok::Ident(word)
            };
            tokens.push(Token { tok, line: tline, col: tcol });
            continue;
        }

        return Err(ParseError {
            line: tline,
            col: tcol,
            kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
        });
    }

    tokens.push(Token { tok: Tok::Eof, line, col });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at(&self, token: &Token, msg: impl Into<String>) -> ParseError {
        ParseError { line: token.line, col: token.col, kind: ParseErrorKind::Syntax(msg.into()) }
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            let found = self.peek().clone();
            Err(self.err_at(&found, format!("expected {tok}, found {}", found.tok)))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn parse_program(&mut self) -> Result<ParsedProgram, ParseError> {
        let mut parsed = ParsedProgram::default();
        loop {
            match &self.peek().tok {
                Tok::Eof => break,
                Tok::Directive(name) if name == "constants" => {
                    self.bump();
                    loop {
                        let t = self.bump();
                        match t.tok {
                            Tok::Ident(c) => parsed.declared_constants.push(c),
                            _ => return Err(self.err_at(&t, "expected a constant identifier")),
                        }
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::Period)?;
                }
                Tok::Directive(name) => {
                    let t = self.peek().clone();
                    return Err(self.err_at(&t, format!("unknown directive `#{name}`")));
                }
                _ => {
                    let rule = self.parse_rule()?;
                    if let Some(name) = &rule.name {
                        if parsed.schemas.iter().any(|r| r.name.as_ref() == Some(name)) {
                            let t = self.peek().clone();
                            return Err(ParseError {
                                line: t.line,
                                col: t.col,
                                kind: ParseErrorKind::DuplicateName(name.to_string()),
                            });
                        }
                    }
                    parsed.schemas.push(rule);
                }
            }
        }
        Ok(parsed)
    }

    fn parse_rule(&mut self) -> Result<SchemaRule, ParseError> {
        let rule_start = self.peek().clone();

        // A leading `term :` is a rule name; anything else starts the head.
        let mut name = None;
        if matches!(self.peek().tok, Tok::Ident(_)) {
            let save = self.pos;
            if let Ok(candidate) = self.parse_name_term() {
                if self.eat(&Tok::Colon) {
                    name = Some(candidate);
                } else {
                    self.pos = save;
                }
            } else {
                self.pos = save;
            }
        }

        let head = self.parse_literal()?;
        let mut pos_body = Vec::new();
        let mut weak_body = Vec::new();
        let mut seminormal = false;

        let arrow = match &self.peek().tok {
            Tok::Arrow => {
                self.bump();
                true
            }
            Tok::SemiArrow => {
                self.bump();
                seminormal = true;
                true
            }
            _ => false,
        };

        if arrow {
            while self.peek().tok != Tok::Period {
                let weak = self.eat(&Tok::Not);
                let lit = self.parse_literal()?;
                if weak {
                    weak_body.push(lit);
                } else {
                    pos_body.push(lit);
                }
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::Period)?;

        if let Some(n) = &name {
            if weak_body.is_empty() && !seminormal {
                return Err(ParseError {
                    line: rule_start.line,
                    col: rule_start.col,
                    kind: ParseErrorKind::NameOnStrictRule(n.to_string()),
                });
            }
        }

        Ok(SchemaRule { name, head, pos_body, weak_body, seminormal })
    }

    fn parse_literal(&mut self) -> Result<SchemaLiteral, ParseError> {
        let strong_neg = self.eat(&Tok::Minus);
        if self.eat(&Tok::LParen) {
            let atom = self.parse_pref_tail()?;
            self.expect(Tok::RParen)?;
            return Ok(SchemaLiteral { atom, strong_neg });
        }

        match self.peek().tok.clone() {
            Tok::Var(_) => {
                // A bare variable can only open a preference atom.
                let left = self.parse_name_term()?;
                let less = self.peek().clone();
                if !self.eat(&Tok::Less) {
                    return Err(self.err_at(&less, "a variable must be followed by `<` to form a preference atom"));
                }
                let right = self.parse_name_term()?;
                Ok(SchemaLiteral { atom: SchemaAtom::Pref { left, right }, strong_neg })
            }
            Tok::Ident(_) => {
                let (functor, args) = self.parse_functor()?;
                if self.peek().tok == Tok::Less {
                    if strong_neg {
                        let t = self.peek().clone();
                        return Err(self.err_at(
                            &t,
                            "negated preference atoms must be parenthesized, as in `-(n1 < n2)`",
                        ));
                    }
                    self.bump();
                    let right = self.parse_name_term()?;
                    Ok(SchemaLiteral {
                        atom: SchemaAtom::Pref { left: SchemaName::Compound { functor, args }, right },
                        strong_neg,
                    })
                } else {
                    Ok(SchemaLiteral { atom: SchemaAtom::Ordinary { predicate: functor, args }, strong_neg })
                }
            }
            _ => {
                let t = self.peek().clone();
                Err(self.err_at(&t, format!("expected a literal, found {}", t.tok)))
            }
        }
    }

    fn parse_pref_tail(&mut self) -> Result<SchemaAtom, ParseError> {
        let left = self.parse_name_term()?;
        self.expect(Tok::Less)?;
        let right = self.parse_name_term()?;
        Ok(SchemaAtom::Pref { left, right })
    }

    fn parse_name_term(&mut self) -> Result<SchemaName, ParseError> {
        match self.peek().tok.clone() {
            Tok::Var(v) => {
                self.bump();
                Ok(SchemaName::Var(v))
            }
            Tok::Ident(_) => {
                let (functor, args) = self.parse_functor()?;
                Ok(SchemaName::Compound { functor, args })
            }
            _ => {
                let t = self.peek().clone();
                Err(self.err_at(&t, format!("expected a rule name, found {}", t.tok)))
            }
        }
    }

    fn parse_functor(&mut self) -> Result<(String, Vec<Term>), ParseError> {
        let t = self.bump();
        let functor = match t.tok {
            Tok::Ident(s) => s,
            _ => return Err(self.err_at(&t, format!("expected an identifier, found {}", t.tok))),
        };
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                let t = self.bump();
                match t.tok {
                    Tok::Ident(s) => args.push(Term::Const(s)),
                    Tok::Var(s) => args.push(Term::Var(s)),
                    _ => return Err(self.err_at(&t, format!("expected an argument, found {}", t.tok))),
                }
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
        }
        Ok((functor, args))
    }
}

/// Parses a program source into rule schemas.
pub fn parse_program(src: &str) -> Result<ParsedProgram, ParseError> {
    let tokens = lex(src)?;
    Parser { tokens, pos: 0 }.parse_program()
}

/// Parses a single ground literal, e.g. `-perfected` or `n1 < n2`. Rejects
/// variables. This is the inverse of [`Literal`]'s display form.
pub fn parse_literal(src: &str) -> Result<Literal, ParseError> {
    let tokens = lex(src)?;
    let mut parser = Parser { tokens, pos: 0 };
    let lit = parser.parse_literal()?;
    let eof = parser.peek().clone();
    if eof.tok != Tok::Eof {
        return Err(parser.err_at(&eof, format!("trailing input after literal: {}", eof.tok)));
    }
    ground_literal(&lit).map_err(|var| ParseError {
        line: 1,
        col: 1,
        kind: ParseErrorKind::Syntax(format!("literal contains the variable `{var}`")),
    })
}

pub(crate) fn ground_name(name: &SchemaName) -> Result<RuleName, String> {
    match name {
        SchemaName::Var(v) => Err(v.clone()),
        SchemaName::Compound { functor, args } => {
            let mut ground_args = Vec::with_capacity(args.len());
            for arg in args {
                match arg {
                    Term::Const(c) => ground_args.push(c.clone()),
                    Term::Var(v) => return Err(v.clone()),
                }
            }
            Ok(RuleName::with_args(functor.clone(), ground_args))
        }
    }
}

pub(crate) fn ground_literal(lit: &SchemaLiteral) -> Result<Literal, String> {
    let atom = match &lit.atom {
        SchemaAtom::Ordinary { predicate, args } => {
            let mut ground_args = Vec::with_capacity(args.len());
            for arg in args {
                match arg {
                    Term::Const(c) => ground_args.push(c.clone()),
                    Term::Var(v) => return Err(v.clone()),
                }
            }
            Atom::pred(predicate.clone(), ground_args)
        }
        SchemaAtom::Pref { left, right } => Atom::pref(ground_name(left)?, ground_name(right)?),
    };
    Ok(Literal { atom, strong_neg: lit.strong_neg })
}
