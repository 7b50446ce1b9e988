//! Line-oriented N-Triples reader and writer.
//!
//! One triple per line: `<s> <p> <o> .` or `<s> <p> "lex"^^<dt> .`.
//! Plain `"lex"` objects read as `xsd:string`. Blank lines and `#` comments
//! are skipped on import.

use super::{Datatype, Graph, RdfError, Term, Triple};

pub fn export(g: &Graph) -> String {
    let mut out = String::with_capacity(g.len() * 96);
    for t in g.iter() {
        out.push_str(&t.to_string());
        out.push('\n');
    }
    out
}

pub fn import(text: &str) -> Result<Graph, RdfError> {
    let mut g = Graph::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(t) = parse_line(line).map_err(|reason| RdfError::Syntax { line: i + 1, reason })? {
            g.insert(t);
        }
    }
    Ok(g)
}

/// Parses one line. `Ok(None)` for blank and comment lines.
pub fn parse_line(line: &str) -> Result<Option<Triple>, String> {
    let mut cur = Cursor { s: line, pos: 0 };
    cur.skip_ws();
    if cur.at_end() || cur.peek() == Some('#') {
        return Ok(None);
    }
    let subject = cur.iri_term()?;
    cur.require_ws()?;
    let predicate = cur.iri_term()?;
    cur.require_ws()?;
    let object = match cur.peek() {
        Some('<') => cur.iri_term()?,
        Some('"') => cur.literal()?,
        Some(c) => return Err(format!("unexpected '{c}' at column {}", cur.pos + 1)),
        None => return Err("missing object".into()),
    };
    cur.skip_ws();
    if cur.peek() != Some('.') {
        return Err(format!("expected '.' at column {}", cur.pos + 1));
    }
    cur.pos += 1;
    cur.skip_ws();
    if !cur.at_end() && cur.peek() != Some('#') {
        return Err(format!("trailing content at column {}", cur.pos + 1));
    }
    Triple::new(subject, predicate, object)
        .map(Some)
        .map_err(|e| e.to_string())
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn rest(&self) -> &str {
        &self.s[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start_matches([' ', '\t']);
        self.pos = self.s.len() - trimmed.len();
    }

    fn require_ws(&mut self) -> Result<(), String> {
        let before = self.pos;
        self.skip_ws();
        if self.pos == before {
            return Err(format!("expected whitespace at column {}", self.pos + 1));
        }
        Ok(())
    }

    fn iri(&mut self) -> Result<String, String> {
        if self.peek() != Some('<') {
            return Err(format!("expected '<' at column {}", self.pos + 1));
        }
        let rest = &self.rest()[1..];
        let end = rest
            .find('>')
            .ok_or_else(|| format!("unterminated IRI at column {}", self.pos + 1))?;
        let iri = rest[..end].to_string();
        self.pos += end + 2;
        Ok(iri)
    }

    fn iri_term(&mut self) -> Result<Term, String> {
        let col = self.pos + 1;
        let iri = self.iri()?;
        Term::iri(iri).map_err(|e| format!("{e} at column {col}"))
    }

    fn literal(&mut self) -> Result<Term, String> {
        let start = self.pos;
        self.pos += 1;
        let mut lexical = String::new();
        loop {
            let c = self
                .peek()
                .ok_or_else(|| format!("unterminated literal at column {}", start + 1))?;
            self.pos += c.len_utf8();
            match c {
                '"' => break,
                '\\' => {
                    let e = self
                        .peek()
                        .ok_or_else(|| format!("dangling escape at column {}", self.pos))?;
                    self.pos += e.len_utf8();
                    lexical.push(match e {
                        '"' => '"',
                        '\\' => '\\',
                        'n' => '\n',
                        'r' => '\r',
                        't' => '\t',
                        other => return Err(format!("unknown escape '\\{other}' at column {}", self.pos - 1)),
                    });
                }
                c => lexical.push(c),
            }
        }
        let datatype = if self.rest().starts_with("^^") {
            self.pos += 2;
            let col = self.pos + 1;
            let dt = self.iri()?;
            Datatype::from_iri(&dt).ok_or_else(|| format!("unsupported datatype <{dt}> at column {col}"))?
        } else {
            Datatype::String
        };
        Term::literal(lexical, datatype).map_err(|e| e.to_string())
    }
}
