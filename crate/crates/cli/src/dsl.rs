//! Poset DSL.
//!
//! A specification is either one or more builtin references, `@name` or
//! `@name(args)`, or an inline block of relations such as `a<b; c<b; c<d`.
//! Statements are separated by `;` or newlines, `<` may be chained
//! (`a<b<c`), and a bare identifier declares an isolated element.
//! Whitespace is ignored and identifiers are declared on first use.

use turan_core::poset::{named_poset, path_hasse_family};
use turan_core::{Poset, PosetFamily};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DslError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("relations contain a cycle through {element:?}")]
    Cycle { element: String },
    #[error("{line}:{column}: unknown builtin @{name}")]
    UnknownBuiltin {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("{line}:{column}: @{name}: {message}")]
    Arity {
        line: usize,
        column: usize,
        name: String,
        message: String,
    },
    #[error("empty poset specification")]
    Empty,
    #[error("{0}")]
    Invalid(String),
}

const BUILTINS: &[&str] = &[
    "chain", "kst", "fork", "crown", "diamond", "butterfly", "k22", "n", "w", "m", "s",
    "pathfamily",
];

struct Cursor {
    chars: Vec<(usize, usize, char)>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let mut chars = Vec::new();
        for (li, line) in text.split('\n').enumerate() {
            for (ci, ch) in line.chars().enumerate() {
                chars.push((li + 1, ci + 1, ch));
            }
            chars.push((li + 1, line.chars().count() + 1, '\n'));
        }
        chars.pop();
        Cursor { chars, pos: 0 }
    }

    fn skip_blanks(&mut self) {
        while matches!(self.peek(), Some(c) if c != '\n' && c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, _, c)| c)
    }

    fn here(&self) -> (usize, usize) {
        match self.chars.get(self.pos) {
            Some(&(l, c, _)) => (l, c),
            None => self.chars.last().map_or((1, 1), |&(l, c, _)| (l, c + 1)),
        }
    }

    fn error(&self, message: impl Into<String>) -> DslError {
        let (line, column) = self.here();
        DslError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|t| t.2).collect())
    }

    fn number(&mut self) -> Result<usize, DslError> {
        self.skip_blanks();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|t| t.2).collect();
        digits.parse().map_err(|_| self.error("number too large"))
    }

    /// Consumes a statement separator or end of input.
    fn end_statement(&mut self) -> Result<(), DslError> {
        self.skip_blanks();
        match self.peek() {
            None => Ok(()),
            Some(';') | Some('\n') => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
        }
    }

    fn at_statement_start(&mut self) -> bool {
        loop {
            self.skip_blanks();
            match self.peek() {
                Some(';') | Some('\n') => self.pos += 1,
                Some(_) => return true,
                None => return false,
            }
        }
    }
}

fn builtin(cur: &mut Cursor) -> Result<Vec<Poset>, DslError> {
    let (line, column) = cur.here();
    cur.pos += 1; // '@'
    let name = cur.ident().ok_or_else(|| cur.error("expected builtin name after '@'"))?;
    let key = name.to_ascii_lowercase();
    if !BUILTINS.contains(&key.as_str()) {
        return Err(DslError::UnknownBuiltin { line, column, name });
    }
    let mut args = Vec::new();
    cur.skip_blanks();
    if cur.peek() == Some('(') {
        cur.pos += 1;
        cur.skip_blanks();
        if cur.peek() != Some(')') {
            loop {
                args.push(cur.number()?);
                cur.skip_blanks();
                match cur.peek() {
                    Some(',') => cur.pos += 1,
                    Some(')') => break,
                    _ => return Err(cur.error("expected ',' or ')'")),
                }
            }
        }
        cur.pos += 1; // ')'
    }
    let arity = |message: String| DslError::Arity {
        line,
        column,
        name: name.clone(),
        message,
    };
    if key == "pathfamily" {
        if args.len() != 1 {
            return Err(arity(format!("takes 1 argument, got {}", args.len())));
        }
        return path_hasse_family(args[0], None)
            .map(|f| f.members().to_vec())
            .map_err(|e| arity(e.to_string()));
    }
    named_poset(&key, &args).map(|p| vec![p]).map_err(|e| arity(e.to_string()))
}

fn inline(cur: &mut Cursor) -> Result<Poset, DslError> {
    let mut labels: Vec<String> = Vec::new();
    let mut relations = Vec::new();
    let intern = |name: String, labels: &mut Vec<String>| match labels.iter().position(|l| *l == name) {
        Some(i) => i,
        None => {
            labels.push(name);
            labels.len() - 1
        }
    };
    while cur.at_statement_start() {
        if cur.peek() == Some('@') {
            return Err(cur.error("builtins cannot be mixed with inline relations"));
        }
        let first = cur.ident().ok_or_else(|| cur.error("expected identifier"))?;
        let mut prev = intern(first, &mut labels);
        loop {
            cur.skip_blanks();
            if cur.peek() != Some('<') {
                break;
            }
            cur.pos += 1;
            cur.skip_blanks();
            let next = cur.ident().ok_or_else(|| cur.error("expected identifier after '<'"))?;
            let next = intern(next, &mut labels);
            relations.push((prev, next));
            prev = next;
        }
        cur.end_statement()?;
    }
    if labels.is_empty() {
        return Err(DslError::Empty);
    }
    let poset = Poset::from_relations(labels.len(), &relations).map_err(|e| match e {
        turan_core::Error::Cycle(i) => DslError::Cycle {
            element: labels[i].clone(),
        },
        other => DslError::Invalid(other.to_string()),
    })?;
    poset.with_labels(labels).map_err(|e| DslError::Invalid(e.to_string()))
}

/// Parses a specification into a family (deduplicated up to isomorphism).
pub fn parse_poset_dsl(text: &str) -> Result<PosetFamily, DslError> {
    let mut cur = Cursor::new(text);
    if !cur.at_statement_start() {
        return Err(DslError::Empty);
    }
    if cur.peek() != Some('@') {
        return Ok(PosetFamily::single(inline(&mut cur)?));
    }
    let mut posets = Vec::new();
    while cur.at_statement_start() {
        if cur.peek() != Some('@') {
            return Err(cur.error("inline relations cannot be mixed with builtins"));
        }
        posets.extend(builtin(&mut cur)?);
        cur.end_statement()?;
    }
    Ok(PosetFamily::new(posets))
}

/// Parses a specification that must name exactly one poset.
pub fn parse_single_poset(text: &str) -> Result<Poset, DslError> {
    let fam = parse_poset_dsl(text)?;
    match fam.members() {
        [p] => Ok(p.clone()),
        many => Err(DslError::Invalid(format!(
            "expected a single poset, specification gives {}",
            many.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use turan_core::poset::{butterfly, chain, m_poset, n_poset, s_poset, w_poset, CATALOG_NAMES};

    fn one(text: &str) -> Poset {
        parse_single_poset(text).unwrap()
    }

    #[test]
    fn inline_examples() {
        assert!(one("a<b; c<b; c<d").is_isomorphic(&n_poset()));
        assert!(one("a < b\nc<b\n  c<d  ").is_isomorphic(&n_poset()));
        assert!(one("x<y<z").is_isomorphic(&chain(3)));
        let p = one("a<b; c");
        assert_eq!(p.size(), 3);
        assert_eq!(p.labels(), &["a", "b", "c"]);
    }

    #[test]
    fn builtin_examples() {
        assert!(one("@Kst(2,2)").is_isomorphic(&butterfly()));
        assert!(one("@chain(2)").is_isomorphic(&chain(2)));
        assert!(one("  @butterfly \n").is_isomorphic(&butterfly()));
        assert!(one("@Kst( 2 , 2 )").is_isomorphic(&butterfly()));
        let fam = parse_poset_dsl("@pathfamily(5)").unwrap();
        for p in [w_poset(), m_poset(), s_poset(), chain(5)] {
            assert!(fam.contains_isomorphic(&p));
        }
        let wm = parse_poset_dsl("@W; @M").unwrap();
        assert_eq!(wm.len(), 2);
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_poset_dsl("a<b; b<a").unwrap_err(),
            DslError::Cycle { element: "a".into() }
        );
        assert!(matches!(
            parse_poset_dsl("@frob").unwrap_err(),
            DslError::UnknownBuiltin { line: 1, column: 1, .. }
        ));
        assert!(matches!(parse_poset_dsl("@chain(1,2)").unwrap_err(), DslError::Arity { .. }));
        assert!(matches!(parse_poset_dsl("@pathfamily").unwrap_err(), DslError::Arity { .. }));
        assert_eq!(
            parse_poset_dsl("a<b\nc<<d").unwrap_err(),
            DslError::Syntax { line: 2, column: 3, message: "expected identifier after '<'".into() }
        );
        assert!(matches!(parse_poset_dsl("a<b; @N").unwrap_err(), DslError::Syntax { .. }));
        assert!(matches!(parse_poset_dsl("@N; a<b").unwrap_err(), DslError::Syntax { .. }));
        assert_eq!(parse_poset_dsl("  ; \n").unwrap_err(), DslError::Empty);
        assert!(parse_single_poset("@pathfamily(4)").is_err());
    }

    #[test]
    fn catalog_round_trips_through_printing() {
        let params: &[(&str, &[usize])] = &[
            ("chain", &[4]),
            ("kst", &[2, 3]),
            ("butterfly", &[]),
            ("fork", &[3]),
            ("crown", &[3]),
            ("diamond", &[]),
            ("n", &[]),
            ("w", &[]),
            ("m", &[]),
            ("s", &[]),
        ];
        for name in CATALOG_NAMES {
            let args = params
                .iter()
                .find(|(n, _)| n.eq_ignore_ascii_case(name))
                .map(|(_, a)| *a)
                .unwrap_or(&[]);
            let Ok(p) = named_poset(name, args) else { continue };
            let back = one(&p.to_dsl());
            assert!(back.is_isomorphic(&p), "{name}: {}", p.to_dsl());
        }
    }
}
