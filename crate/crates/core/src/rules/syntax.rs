//! Rule AST and the line-oriented rule file syntax.
//!
//! ```text
//! sensor_id(?s) ^ notdifficult(?s, ?rh) ^ greaterThan(?rh, 16) -> DifficultyofControle(?s, notDifficult)
//! ```
//!
//! `∧` and `⇒`/`=>` are accepted as alternatives to `^` and `->`, and the
//! builtin may carry a `swrl:`/`swrlb:` prefix. Thresholds may be quoted.

use std::collections::BTreeSet;
use std::fmt;

use crate::rdf::{canonical_decimal, Datatype, Term};
use crate::vocab;

use super::RuleError;

/// Constant or variable argument of an atom.
#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    Var(String),
    /// Bare identifier, resolved to a vocabulary IRI.
    Name(String),
    Str(String),
    Number(f64),
}

impl Arg {
    pub fn as_var(&self) -> Option<&str> {
        match self {
            Arg::Var(v) => Some(v),
            _ => None,
        }
    }

    /// RDF term of a constant argument.
    pub fn to_term(&self) -> Option<Term> {
        match self {
            Arg::Var(_) => None,
            Arg::Name(n) => Some(vocab::term(n)),
            Arg::Str(s) => Some(Term::string(s.clone())),
            Arg::Number(n) if n.fract() == 0.0 && n.abs() < 1e15 => Some(Term::integer(*n as i64)),
            Arg::Number(n) => Some(Term::literal(canonical_decimal(*n), Datatype::Decimal).ok()?),
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Var(v) => write!(f, "?{v}"),
            Arg::Name(n) => f.write_str(n),
            Arg::Str(s) => write!(f, "{s:?}"),
            Arg::Number(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RuleAtom {
    /// `class(?v)`: the variable is typed with the class.
    Class { class: String, var: String },
    /// `property(?s, object)`.
    DataProperty { property: String, subject: String, object: Arg },
    /// `greaterThan(?v, threshold)`.
    GreaterThan { var: String, threshold: f64 },
}

impl RuleAtom {
    pub fn variables(&self) -> Vec<&str> {
        match self {
            RuleAtom::Class { var, .. } => vec![var],
            RuleAtom::DataProperty { subject, object, .. } => {
                let mut v = vec![subject.as_str()];
                v.extend(object.as_var());
                v
            }
            RuleAtom::GreaterThan { var, .. } => vec![var],
        }
    }
}

impl fmt::Display for RuleAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleAtom::Class { class, var } => write!(f, "{class}(?{var})"),
            RuleAtom::DataProperty {
                property,
                subject,
                object,
            } => write!(f, "{property}(?{subject}, {object})"),
            RuleAtom::GreaterThan { var, threshold } => write!(f, "greaterThan(?{var}, {threshold})"),
        }
    }
}

/// Head of a rule: a property assertion with a constant object.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleHead {
    pub property: String,
    pub subject: String,
    pub object: Arg,
}

impl fmt::Display for RuleHead {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(?{}, {})", self.property, self.subject, self.object)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    body: Vec<RuleAtom>,
    head: RuleHead,
}

impl Rule {
    /// Checks non-empty body, safety of head and builtin variables, and that
    /// the head object is a constant.
    pub fn new(body: Vec<RuleAtom>, head: RuleHead) -> Result<Self, RuleError> {
        if body.is_empty() {
            return Err(RuleError::Invalid("rule body is empty".into()));
        }
        let bound: BTreeSet<&str> = body
            .iter()
            .filter(|a| !matches!(a, RuleAtom::GreaterThan { .. }))
            .flat_map(RuleAtom::variables)
            .collect();
        let mut head_vars = vec![head.subject.as_str()];
        head_vars.extend(head.object.as_var());
        for v in head_vars {
            if !bound.contains(v) {
                return Err(RuleError::Unsafe(format!("head variable ?{v} does not occur in the body")));
            }
        }
        for atom in &body {
            if let RuleAtom::GreaterThan { var, threshold } = atom {
                if !bound.contains(var.as_str()) {
                    return Err(RuleError::Unsafe(format!(
                        "builtin variable ?{var} is not bound by a body atom"
                    )));
                }
                if !threshold.is_finite() {
                    return Err(RuleError::Invalid(format!("threshold {threshold} is not finite")));
                }
            }
        }
        if head.object.as_var().is_some() {
            return Err(RuleError::Invalid("head object must be a constant label".into()));
        }
        Ok(Rule { body, head })
    }

    pub fn body(&self) -> &[RuleAtom] {
        &self.body
    }

    pub fn head(&self) -> &RuleHead {
        &self.head
    }

    /// Threshold of the first `greaterThan` in the body.
    pub fn threshold(&self) -> Option<f64> {
        self.body.iter().find_map(|a| match a {
            RuleAtom::GreaterThan { threshold, .. } => Some(*threshold),
            _ => None,
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.body.iter().enumerate() {
            if i > 0 {
                f.write_str(" ^ ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, " -> {}", self.head)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RuleSet {
    pub rules: Vec<Rule>,
}

impl RuleSet {
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rule> {
        self.rules.iter()
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

pub fn parse_rules(text: &str) -> Result<RuleSet, RuleError> {
    let mut rules = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = strip_comment(line);
        if content.trim().is_empty() {
            continue;
        }
        let mut p = LineParser {
            line: i + 1,
            chars: content.char_indices().collect(),
            pos: 0,
        };
        rules.push(p.rule()?);
    }
    Ok(RuleSet { rules })
}

fn strip_comment(line: &str) -> &str {
    let mut in_str = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}

struct LineParser {
    line: usize,
    chars: Vec<(usize, char)>,
    pos: usize,
}

struct RawAtom {
    name: String,
    args: Vec<Arg>,
}

impl LineParser {
    fn err(&self, message: impl Into<String>) -> RuleError {
        RuleError::Syntax {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        let matches = self
            .chars
            .get(self.pos..self.pos + n)
            .is_some_and(|w| w.iter().map(|c| c.1).eq(s.chars()));
        if matches {
            self.pos += n;
        }
        matches
    }

    fn rule(&mut self) -> Result<Rule, RuleError> {
        let mut body = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            body.push((start, self.atom()?));
            self.skip_ws();
            if self.eat("^") || self.eat("∧") {
                continue;
            }
            if self.eat("->") || self.eat("=>") || self.eat("⇒") {
                break;
            }
            return Err(self.err("expected '^' or '->'"));
        }
        self.skip_ws();
        let head_start = self.pos;
        let head = self.atom()?;
        self.skip_ws();
        if self.peek().is_some() {
            return Err(self.err("unexpected content after rule head"));
        }

        let mut atoms = Vec::with_capacity(body.len());
        for (start, raw) in body {
            atoms.push(self.body_atom(start, raw)?);
        }
        let head = self.head_atom(head_start, head)?;
        Rule::new(atoms, head).map_err(|e| match e {
            RuleError::Unsafe(m) => RuleError::Unsafe(format!("line {}: {m}", self.line)),
            RuleError::Invalid(m) => RuleError::Invalid(format!("line {}: {m}", self.line)),
            other => other,
        })
    }

    fn at(&mut self, pos: usize, message: impl Into<String>) -> RuleError {
        self.pos = pos;
        self.err(message)
    }

    fn body_atom(&mut self, start: usize, raw: RawAtom) -> Result<RuleAtom, RuleError> {
        let RawAtom { name, args } = raw;
        if let Some(builtin) = builtin_name(&name) {
            if builtin != "greaterThan" {
                return Err(self.at(start, format!("unsupported builtin '{name}'; only greaterThan is available")));
            }
            let [Arg::Var(var), threshold] = args.as_slice() else {
                return Err(self.at(start, "greaterThan takes (?variable, number)"));
            };
            let threshold = match threshold {
                Arg::Number(n) => *n,
                Arg::Str(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| self.at(start, format!("threshold {s:?} is not a number")))?,
                _ => return Err(self.at(start, "greaterThan threshold must be a number")),
            };
            return Ok(RuleAtom::GreaterThan {
                var: var.clone(),
                threshold,
            });
        }
        match <[Arg; 2]>::try_from(args) {
            Ok([Arg::Var(subject), object]) => Ok(RuleAtom::DataProperty {
                property: name,
                subject,
                object,
            }),
            Ok(_) => Err(self.at(start, format!("first argument of {name} must be a variable"))),
            Err(args) => match args.as_slice() {
                [Arg::Var(var)] => Ok(RuleAtom::Class {
                    class: name,
                    var: var.clone(),
                }),
                [_] => Err(self.at(start, format!("argument of class atom {name} must be a variable"))),
                _ => Err(self.at(start, format!("{name} takes one or two arguments"))),
            },
        }
    }

    fn head_atom(&mut self, start: usize, raw: RawAtom) -> Result<RuleHead, RuleError> {
        let RawAtom { name, args } = raw;
        if builtin_name(&name).is_some() {
            return Err(self.at(start, "a builtin cannot be a rule head"));
        }
        match <[Arg; 2]>::try_from(args) {
            Ok([Arg::Var(subject), object]) => Ok(RuleHead {
                property: name,
                subject,
                object,
            }),
            _ => Err(self.at(start, "rule head must be property(?subject, label)")),
        }
    }

    fn atom(&mut self) -> Result<RawAtom, RuleError> {
        let name = self.qualified_name()?;
        self.skip_ws();
        if !self.eat("(") {
            return Err(self.err("expected '('"));
        }
        let mut args = Vec::new();
        loop {
            self.skip_ws();
            args.push(self.arg()?);
            self.skip_ws();
            if self.eat(",") {
                continue;
            }
            if self.eat(")") {
                break;
            }
            return Err(self.err("expected ',' or ')'"));
        }
        Ok(RawAtom { name, args })
    }

    fn ident(&mut self) -> Result<String, RuleError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '-') {
            self.pos += 1;
        }
        if start == self.pos || !self.chars[start].1.is_alphabetic() && self.chars[start].1 != '_' {
            self.pos = start;
            return Err(self.err("expected identifier"));
        }
        Ok(self.chars[start..self.pos].iter().map(|c| c.1).collect())
    }

    fn qualified_name(&mut self) -> Result<String, RuleError> {
        let mut name = self.ident()?;
        if self.peek() == Some(':') {
            self.pos += 1;
            name.push(':');
            name.push_str(&self.ident()?);
        }
        Ok(name)
    }

    fn arg(&mut self) -> Result<Arg, RuleError> {
        match self.peek() {
            Some('?') => {
                self.pos += 1;
                Ok(Arg::Var(self.ident()?))
            }
            Some('"') => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c != '"') {
                    self.pos += 1;
                }
                if self.peek().is_none() {
                    return Err(self.err("unterminated string"));
                }
                let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
                self.pos += 1;
                // `"16"^^xsd:int` style annotations are accepted and dropped.
                if self.eat("^^") {
                    self.qualified_name()?;
                }
                Ok(Arg::Str(s))
            }
            Some(c) if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => {
                let start = self.pos;
                self.pos += 1;
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
                s.parse()
                    .map(Arg::Number)
                    .map_err(|_| self.at(start, format!("invalid number {s:?}")))
            }
            Some(_) => Ok(Arg::Name(self.ident()?)),
            None => Err(self.err("expected argument")),
        }
    }
}

/// Local name of a builtin (`greaterThan`, `swrlb:lessThan`, ...), if `name`
/// is one.
fn builtin_name(name: &str) -> Option<&str> {
    if let Some((prefix, local)) = name.split_once(':') {
        return matches!(prefix, "swrl" | "swrlb").then_some(local);
    }
    const KNOWN: [&str; 8] = [
        "greaterThan",
        "greaterThanOrEqual",
        "lessThan",
        "lessThanOrEqual",
        "equal",
        "notEqual",
        "add",
        "subtract",
    ];
    KNOWN.contains(&name).then_some(name)
}
