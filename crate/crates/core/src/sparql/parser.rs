use std::collections::BTreeMap;

use crate::rdf::{Datatype, PatternTerm, Term, TriplePattern, RDF_TYPE};

use super::{Comparator, FilterExpr, Query, SparqlError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Iri(String),
    /// `prefix:local`, either part possibly empty.
    PName(String, String),
    Var(String),
    Number(String),
    Str(String),
    Word(String),
    Punct(char),
    Op(Comparator),
    DataTypeMark,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> SparqlError {
    SparqlError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

fn lex(text: &str) -> Result<Vec<Spanned>, SparqlError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);

    // Advances over `n` chars, tracking position.
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };

    while i < chars.len() {
        let c = chars[i];
        let (l, cl) = (line, col);
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
            continue;
        }
        let peek = chars.get(i + 1).copied();
        let (tok, len) = match c {
            '{' | '}' | '(' | ')' | '.' if !(c == '.' && peek.is_some_and(|d| d.is_ascii_digit())) => {
                (Tok::Punct(c), 1)
            }
            '>' if peek == Some('=') => (Tok::Op(Comparator::Ge), 2),
            '>' => (Tok::Op(Comparator::Gt), 1),
            '=' => (Tok::Op(Comparator::Eq), 1),
            '!' if peek == Some('=') => (Tok::Op(Comparator::Ne), 2),
            '<' => {
                // An IRI when a closing `>` comes before any whitespace.
                let end = chars[i + 1..]
                    .iter()
                    .position(|&d| d == '>' || d == '<' || d == '"' || d.is_whitespace());
                match end {
                    Some(n) if chars[i + 1 + n] == '>' => (Tok::Iri(chars[i + 1..i + 1 + n].iter().collect()), n + 2),
                    _ if peek == Some('=') => (Tok::Op(Comparator::Le), 2),
                    _ => (Tok::Op(Comparator::Lt), 1),
                }
            }
            '^' if peek == Some('^') => (Tok::DataTypeMark, 2),
            '?' | '$' => {
                let n = chars[i + 1..].iter().take_while(|&&d| is_name_char(d)).count();
                if n == 0 {
                    return Err(syntax(l, cl, "expected a variable name"));
                }
                (Tok::Var(chars[i + 1..i + 1 + n].iter().collect()), n + 1)
            }
            '"' | '\'' => {
                let mut s = String::new();
                let mut j = i + 1;
                loop {
                    match chars.get(j) {
                        None | Some('\n') => return Err(syntax(l, cl, "unterminated string")),
                        Some(&d) if d == c => break,
                        Some('\\') => {
                            let e = match chars.get(j + 1) {
                                Some('n') => '\n',
                                Some('t') => '\t',
                                Some('r') => '\r',
                                Some(&d @ ('"' | '\'' | '\\')) => d,
                                _ => return Err(syntax(l, cl + (j - i), "bad escape")),
                            };
                            s.push(e);
                            j += 2;
                        }
                        Some(&d) => {
                            s.push(d);
                            j += 1;
                        }
                    }
                }
                (Tok::Str(s), j + 1 - i)
            }
            d if d.is_ascii_digit() || ((d == '-' || d == '+' || d == '.') && peek.is_some_and(|p| p.is_ascii_digit() || p == '.')) => {
                let mut j = i + 1;
                let mut seen_dot = d == '.';
                while let Some(&e) = chars.get(j) {
                    if e.is_ascii_digit() {
                        j += 1;
                    } else if e == '.' && !seen_dot && chars.get(j + 1).is_some_and(|f| f.is_ascii_digit()) {
                        seen_dot = true;
                        j += 1;
                    } else {
                        break;
                    }
                }
                (Tok::Number(chars[i..j].iter().collect()), j - i)
            }
            d if d.is_alphabetic() || d == '_' || d == ':' => {
                let n = chars[i..].iter().take_while(|&&e| is_name_char(e) || e == ':' || e == '.').count();
                let mut word: String = chars[i..i + n].iter().collect();
                // A trailing dot ends the pattern, not the name.
                while word.ends_with('.') {
                    word.pop();
                }
                let len = word.chars().count();
                match word.split_once(':') {
                    Some((p, local)) => (Tok::PName(p.to_string(), local.to_string()), len),
                    None => (Tok::Word(word), len),
                }
            }
            _ => return Err(syntax(l, cl, format!("unexpected character `{c}`"))),
        };
        out.push(Spanned { tok, line: l, column: cl });
        advance(&mut i, &mut line, &mut col, len);
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    prefixes: BTreeMap<String, String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.column))
    }

    fn error(&self, message: impl Into<String>) -> SparqlError {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(w)) if w.eq_ignore_ascii_case(kw))
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), SparqlError> {
        if self.keyword(kw) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {kw}")))
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<(), SparqlError> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn expand(&self, prefix: &str, local: &str) -> Result<Term, SparqlError> {
        let (line, column) = self.here();
        let base = self.prefixes.get(prefix).ok_or_else(|| SparqlError::UnknownPrefix {
            prefix: prefix.to_string(),
            line,
            column,
        })?;
        Term::iri(format!("{base}{local}")).map_err(|e| syntax(line, column, e.to_string()))
    }

    fn iri(&self, s: &str) -> Result<Term, SparqlError> {
        Term::iri(s).map_err(|e| self.error(e.to_string()))
    }

    fn literal(&mut self) -> Result<Option<Term>, SparqlError> {
        let t = match self.peek() {
            Some(Tok::Number(n)) => {
                let dt = if n.contains('.') { Datatype::Decimal } else { Datatype::Integer };
                let lexical = n.strip_prefix('+').unwrap_or(n).to_string();
                Term::literal(lexical, dt).map_err(|e| self.error(e.to_string()))?
            }
            Some(Tok::Str(s)) => {
                let s = s.clone();
                if self.toks.get(self.pos + 1).map(|t| &t.tok) == Some(&Tok::DataTypeMark) {
                    self.pos += 2;
                    let (l, c) = self.here();
                    let dt_iri = match self.peek() {
                        Some(Tok::Iri(i)) => i.clone(),
                        Some(Tok::PName(p, local)) => {
                            let (p, local) = (p.clone(), local.clone());
                            self.expand(&p, &local)?.as_iri().unwrap_or_default().to_string()
                        }
                        _ => return Err(self.error("expected a datatype IRI")),
                    };
                    let dt = Datatype::from_iri(&dt_iri)
                        .ok_or_else(|| syntax(l, c, format!("unsupported datatype <{dt_iri}>")))?;
                    self.pos += 1;
                    return Term::literal(s, dt).map(Some).map_err(|e| syntax(l, c, e.to_string()));
                }
                Term::string(s)
            }
            _ => return Ok(None),
        };
        self.pos += 1;
        Ok(Some(t))
    }

    fn pattern_term(&mut self) -> Result<PatternTerm, SparqlError> {
        if let Some(t) = self.literal()? {
            return Ok(t.into());
        }
        let t = match self.peek() {
            Some(Tok::Var(v)) => PatternTerm::var(v.clone()),
            Some(Tok::Iri(i)) => self.iri(i)?.into(),
            Some(Tok::PName(p, l)) => self.expand(p, l)?.into(),
            Some(Tok::Word(w)) if w == "a" => Term::Iri(RDF_TYPE.to_string()).into(),
            _ => return Err(self.error("expected a variable, IRI, prefixed name or literal")),
        };
        self.pos += 1;
        Ok(t)
    }

    fn filter(&mut self) -> Result<FilterExpr, SparqlError> {
        self.expect_keyword("FILTER")?;
        self.expect_punct('(')?;
        let variable = match self.next() {
            Some(Tok::Var(v)) => v,
            _ => {
                self.pos -= 1;
                return Err(self.error("expected a variable"));
            }
        };
        let comparator = match self.next() {
            Some(Tok::Op(c)) => c,
            _ => {
                self.pos -= 1;
                return Err(self.error("expected a comparison operator"));
            }
        };
        let operand = self.literal()?.ok_or_else(|| self.error("expected a literal"))?;
        self.expect_punct(')')?;
        Ok(FilterExpr {
            variable,
            comparator,
            operand,
        })
    }

    fn query(&mut self) -> Result<Query, SparqlError> {
        while self.keyword("PREFIX") {
            self.pos += 1;
            let name = match self.next() {
                Some(Tok::PName(p, l)) if l.is_empty() => p,
                _ => {
                    self.pos -= 1;
                    return Err(self.error("expected a prefix name ending in `:`"));
                }
            };
            let iri = match self.next() {
                Some(Tok::Iri(i)) => i,
                _ => {
                    self.pos -= 1;
                    return Err(self.error("expected an IRI in angle brackets"));
                }
            };
            self.prefixes.insert(name, iri);
        }

        self.expect_keyword("SELECT")?;
        let mut select_vars = Vec::new();
        while let Some(Tok::Var(v)) = self.peek() {
            select_vars.push(v.clone());
            self.pos += 1;
        }
        if select_vars.is_empty() {
            return Err(self.error("expected at least one variable after SELECT"));
        }
        self.expect_keyword("WHERE")?;
        self.expect_punct('{')?;

        let mut patterns = Vec::new();
        let mut filters = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Punct('}')) => {
                    self.pos += 1;
                    break;
                }
                None => return Err(self.error("expected `}`")),
                _ if self.keyword("FILTER") => filters.push(self.filter()?),
                _ if !filters.is_empty() => return Err(self.error("triple patterns must precede filters")),
                _ => {
                    let s = self.pattern_term()?;
                    let p = self.pattern_term()?;
                    let o = self.pattern_term()?;
                    patterns.push(TriplePattern::new(s, p, o));
                    match self.peek() {
                        Some(Tok::Punct('.')) => self.pos += 1,
                        Some(Tok::Punct('}')) => {}
                        _ if self.keyword("FILTER") => {}
                        _ => return Err(self.error("expected `.`, FILTER or `}`")),
                    }
                }
            }
        }
        if self.pos < self.toks.len() {
            return Err(self.error("unexpected input after `}`"));
        }

        let q = Query {
            prefixes: std::mem::take(&mut self.prefixes),
            select_vars,
            patterns,
            filters,
        };
        q.validate()?;
        Ok(q)
    }
}

pub fn parse_query(text: &str) -> Result<Query, SparqlError> {
    let toks = lex(text)?;
    let end = {
        let lines: Vec<&str> = text.split('\n').collect();
        (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1)
    };
    Parser {
        toks,
        pos: 0,
        end,
        prefixes: BTreeMap::new(),
    }
    .query()
}
