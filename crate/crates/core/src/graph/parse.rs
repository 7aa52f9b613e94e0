//! Reader for N-Triples and a Turtle subset.
//!
//! The Turtle subset covers prefix and base directives (both `@prefix` and
//! SPARQL-style `PREFIX`), IRIs, prefixed names, blank nodes (`_:x`, `[]` and
//! `[ ... ]` property lists), literals with datatype or language tag, numeric
//! and boolean shorthands, predicate-object lists (`;`), object lists (`,`) and
//! `a`. Collections `( ... )` are rejected. N-Triples input is parsed by the
//! same machinery with every Turtle extension switched off.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use super::iri::is_absolute;
use super::{BlankNode, Graph, GraphError, Iri, Literal, RdfFormat, Subject, Term, Triple};
use crate::vocab::{rdf, xsd};

static PARSE_CALLS: AtomicU64 = AtomicU64::new(0);

/// Parses `input` into a graph. Blank node labels are rewritten so that no two
/// parse calls ever share a label.
pub fn parse_graph(input: &[u8], format: RdfFormat) -> Result<Graph, GraphError> {
    let text = std::str::from_utf8(input).map_err(|e| {
        let prefix = &input[..e.valid_up_to()];
        let line = prefix.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = prefix.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        GraphError::Syntax { line, column, message: "input is not valid UTF-8".into() }
    })?;
    let call = PARSE_CALLS.fetch_add(1, Ordering::Relaxed);
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
        ntriples: format == RdfFormat::NTriples,
        prefixes: HashMap::new(),
        base: None,
        blank_map: HashMap::new(),
        blank_prefix: format!("b{call}x"),
        blank_count: 0,
        graph: Graph::new(),
    };
    parser.document()?;
    Ok(parser.graph)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    ntriples: bool,
    prefixes: HashMap<String, String>,
    base: Option<String>,
    blank_map: HashMap<String, BlankNode>,
    blank_prefix: String,
    blank_count: usize,
    graph: Graph,
}

fn is_pn_chars_base(c: char) -> bool {
    c.is_alphabetic()
}

fn is_pn_chars(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-' || c == '\u{00B7}'
}

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, GraphError> {
        Err(GraphError::Syntax { line: self.line, column: self.column, message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn expect(&mut self, c: char) -> Result<(), GraphError> {
        match self.peek() {
            Some(x) if x == c => {
                self.bump();
                Ok(())
            }
            Some(x) => self.err(format!("expected '{c}', found '{x}'")),
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn starts_with_keyword(&self, kw: &str) -> bool {
        let n = kw.chars().count();
        let word: String = self.chars[self.pos..].iter().take(n).collect();
        word.eq_ignore_ascii_case(kw) && !self.peek_at(n).is_some_and(|c| is_pn_chars(c) || c == ':')
    }

    fn document(&mut self) -> Result<(), GraphError> {
        loop {
            self.skip_ws();
            let Some(c) = self.peek() else { return Ok(()) };
            if self.ntriples {
                self.ntriples_statement()?;
                continue;
            }
            if c == '@' {
                self.at_directive()?;
            } else if self.starts_with_keyword("PREFIX") {
                self.advance(6);
                self.prefix_body()?;
            } else if self.starts_with_keyword("BASE") {
                self.advance(4);
                self.base_body()?;
            } else {
                self.triples()?;
                self.skip_ws();
                self.expect('.')?;
            }
        }
    }

    fn advance(&mut self, n: usize) {
        for _ in 0..n {
            self.bump();
        }
    }

    fn at_directive(&mut self) -> Result<(), GraphError> {
        self.bump();
        if self.starts_with_keyword("prefix") {
            self.advance(6);
            self.prefix_body()?;
        } else if self.starts_with_keyword("base") {
            self.advance(4);
            self.base_body()?;
        } else {
            return self.err("unknown directive");
        }
        self.skip_ws();
        self.expect('.')
    }

    fn prefix_body(&mut self) -> Result<(), GraphError> {
        self.skip_ws();
        let mut name = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if is_pn_chars(c) || c == '.' {
                name.push(c);
                self.bump();
            } else {
                return self.err(format!("invalid character '{c}' in prefix name"));
            }
        }
        self.expect(':')?;
        self.skip_ws();
        let iri = self.iriref_raw()?;
        let ns = self.resolve(&iri)?;
        self.prefixes.insert(name, ns);
        Ok(())
    }

    fn base_body(&mut self) -> Result<(), GraphError> {
        self.skip_ws();
        let iri = self.iriref_raw()?;
        let resolved = self.resolve(&iri)?;
        self.base = Some(resolved);
        Ok(())
    }

    fn resolve(&self, raw: &str) -> Result<String, GraphError> {
        if is_absolute(raw) {
            return Ok(raw.to_string());
        }
        let Some(base) = &self.base else {
            return Err(GraphError::RelativeIri(raw.to_string()));
        };
        let base = url::Url::parse(base).map_err(|e| GraphError::InvalidIri { iri: base.clone(), reason: e.to_string() })?;
        base.join(raw)
            .map(|u| u.to_string())
            .map_err(|e| GraphError::InvalidIri { iri: raw.to_string(), reason: e.to_string() })
    }

    fn ntriples_statement(&mut self) -> Result<(), GraphError> {
        let subject = match self.peek() {
            Some('<') => Subject::Iri(self.iriref()?),
            Some('_') => Subject::Blank(self.blank_label()?),
            _ => return self.err("expected IRI or blank node as subject"),
        };
        self.skip_ws();
        if self.peek() != Some('<') {
            return self.err("expected IRI as predicate");
        }
        let predicate = self.iriref()?;
        self.skip_ws();
        let object = match self.peek() {
            Some('<') => Term::Iri(self.iriref()?),
            Some('_') => Term::Blank(self.blank_label()?),
            Some('"') => Term::Literal(self.literal_string()?),
            _ => return self.err("expected IRI, blank node or literal as object"),
        };
        self.skip_ws();
        self.expect('.')?;
        self.graph.insert(Triple { subject, predicate, object });
        Ok(())
    }

    fn triples(&mut self) -> Result<(), GraphError> {
        let subject = match self.peek() {
            Some('[') => {
                let node = self.blank_property_list()?;
                self.skip_ws();
                if matches!(self.peek(), Some('.')) {
                    return Ok(());
                }
                node
            }
            Some('(') => return self.err("collections are not supported"),
            Some('_') => Subject::Blank(self.blank_label()?),
            _ => Subject::Iri(self.iri()?),
        };
        self.skip_ws();
        self.predicate_object_list(&subject)
    }

    fn predicate_object_list(&mut self, subject: &Subject) -> Result<(), GraphError> {
        loop {
            self.skip_ws();
            let predicate = self.verb()?;
            loop {
                self.skip_ws();
                let object = self.object()?;
                self.graph.insert(Triple { subject: subject.clone(), predicate: predicate.clone(), object });
                self.skip_ws();
                if self.peek() == Some(',') {
                    self.bump();
                } else {
                    break;
                }
            }
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            if matches!(self.peek(), Some('.') | Some(']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Iri, GraphError> {
        if self.peek() == Some('a') && !self.peek_at(1).is_some_and(|c| is_pn_chars(c) || c == ':' || c == '.') {
            self.bump();
            return Ok(Iri::new(rdf::TYPE).expect("static"));
        }
        match self.peek() {
            Some('[') | Some('_') | Some('"') | Some('\'') => self.err("predicate must be an IRI"),
            _ => self.iri(),
        }
    }

    fn object(&mut self) -> Result<Term, GraphError> {
        match self.peek() {
            Some('[') => Ok(self.blank_property_list()?.to_term()),
            Some('(') => self.err("collections are not supported"),
            Some('_') => Ok(Term::Blank(self.blank_label()?)),
            Some('"') | Some('\'') => Ok(Term::Literal(self.literal_string()?)),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => Ok(Term::Literal(self.numeric()?)),
            Some('.') if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => Ok(Term::Literal(self.numeric()?)),
            _ => {
                if self.starts_with_keyword("true") {
                    self.advance(4);
                    return Ok(Term::Literal(Literal::typed("true", Iri::new(xsd::BOOLEAN).expect("static"))));
                }
                if self.starts_with_keyword("false") {
                    self.advance(5);
                    return Ok(Term::Literal(Literal::typed("false", Iri::new(xsd::BOOLEAN).expect("static"))));
                }
                Ok(Term::Iri(self.iri()?))
            }
        }
    }

    fn fresh_blank(&mut self) -> BlankNode {
        self.blank_count += 1;
        BlankNode::new(format!("{}{}", self.blank_prefix, self.blank_count))
    }

    fn blank_property_list(&mut self) -> Result<Subject, GraphError> {
        self.expect('[')?;
        let node = Subject::Blank(self.fresh_blank());
        self.skip_ws();
        if self.peek() != Some(']') {
            self.predicate_object_list(&node)?;
            self.skip_ws();
        }
        self.expect(']')?;
        Ok(node)
    }

    fn blank_label(&mut self) -> Result<BlankNode, GraphError> {
        self.expect('_')?;
        self.expect(':')?;
        let mut label = String::new();
        match self.peek() {
            Some(c) if is_pn_chars(c) => {}
            _ => return self.err("empty blank node label"),
        }
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || (c == '.' && self.peek_at(1).is_some_and(is_pn_chars)) {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if let Some(b) = self.blank_map.get(&label) {
            return Ok(b.clone());
        }
        let fresh = self.fresh_blank();
        self.blank_map.insert(label, fresh.clone());
        Ok(fresh)
    }

    fn iri(&mut self) -> Result<Iri, GraphError> {
        match self.peek() {
            Some('<') => self.iriref(),
            Some(_) if self.ntriples => self.err("prefixed names are not allowed in N-Triples"),
            Some(_) => self.prefixed_name(),
            None => self.err("expected IRI, found end of input"),
        }
    }

    fn iriref(&mut self) -> Result<Iri, GraphError> {
        let raw = self.iriref_raw()?;
        let resolved = if self.ntriples {
            if !is_absolute(&raw) {
                return Err(GraphError::RelativeIri(raw));
            }
            raw
        } else {
            self.resolve(&raw)?
        };
        Iri::new(resolved)
    }

    fn iriref_raw(&mut self) -> Result<String, GraphError> {
        self.expect('<')?;
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return self.err("unterminated IRI"),
                Some('>') => return Ok(out),
                Some('\\') => out.push(self.unicode_escape()?),
                Some(c) if c.is_whitespace() || c.is_control() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return self.err(format!("invalid character {c:?} in IRI"));
                }
                Some(c) => out.push(c),
            }
        }
    }

    fn unicode_escape(&mut self) -> Result<char, GraphError> {
        let width = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return self.err("invalid escape in IRI"),
        };
        self.hex_char(width)
    }

    fn hex_char(&mut self, width: usize) -> Result<char, GraphError> {
        let mut hex = String::new();
        for _ in 0..width {
            match self.bump() {
                Some(c) if c.is_ascii_hexdigit() => hex.push(c),
                _ => return self.err("invalid unicode escape"),
            }
        }
        let code = u32::from_str_radix(&hex, 16).expect("hex digits");
        match char::from_u32(code) {
            Some(c) => Ok(c),
            None => self.err(format!("invalid code point U+{hex}")),
        }
    }

    fn prefixed_name(&mut self) -> Result<Iri, GraphError> {
        let mut prefix = String::new();
        if let Some(c) = self.peek() {
            if c != ':' && !is_pn_chars_base(c) {
                return self.err(format!("unexpected character '{c}'"));
            }
        }
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if is_pn_chars(c) || (c == '.' && self.peek_at(1).is_some_and(|n| is_pn_chars(n) || n == '.')) {
                prefix.push(c);
                self.bump();
            } else {
                return self.err(format!("unexpected character '{c}' in prefixed name"));
            }
        }
        self.expect(':')?;
        let Some(ns) = self.prefixes.get(&prefix).cloned() else {
            return self.err(format!("undeclared prefix '{prefix}:'"));
        };
        let mut local = String::new();
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || c == ':' {
                local.push(c);
                self.bump();
            } else if c == '.' {
                // a trailing '.' terminates the statement
                let continues = self.peek_at(1).is_some_and(|n| is_pn_chars(n) || n == ':' || n == '%' || n == '\\' || n == '.');
                if !continues {
                    break;
                }
                local.push(c);
                self.bump();
            } else if c == '%' {
                self.bump();
                let a = self.bump();
                let b = self.bump();
                match (a, b) {
                    (Some(a), Some(b)) if a.is_ascii_hexdigit() && b.is_ascii_hexdigit() => {
                        local.push('%');
                        local.push(a);
                        local.push(b);
                    }
                    _ => return self.err("invalid percent escape in local name"),
                }
            } else if c == '\\' {
                self.bump();
                match self.bump() {
                    Some(e) if "_~.-!$&'()*+,;=/?#@%".contains(e) => local.push(e),
                    _ => return self.err("invalid escape in local name"),
                }
            } else {
                break;
            }
        }
        if local.ends_with('.') {
            return self.err("local name may not end with '.'");
        }
        Iri::new(format!("{ns}{local}"))
    }

    fn literal_string(&mut self) -> Result<Literal, GraphError> {
        let quote = self.peek().expect("caller checked quote");
        if self.ntriples && quote != '"' {
            return self.err("N-Triples literals use double quotes");
        }
        let long = !self.ntriples && self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        let lexical = if long { self.long_string(quote)? } else { self.short_string(quote)? };
        match self.peek() {
            Some('@') => {
                self.bump();
                let mut tag = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || (c == '-' && !tag.is_empty()) {
                        tag.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                if tag.is_empty() || !tag.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
                    return self.err("invalid language tag");
                }
                Ok(Literal::lang(lexical, tag))
            }
            Some('^') => {
                self.bump();
                self.expect('^')?;
                let dt = self.iri()?;
                Literal::new(lexical, dt, None)
            }
            _ => Ok(Literal::string(lexical)),
        }
    }

    fn string_escape(&mut self) -> Result<char, GraphError> {
        match self.bump() {
            Some('t') => Ok('\t'),
            Some('b') => Ok('\u{8}'),
            Some('n') => Ok('\n'),
            Some('r') => Ok('\r'),
            Some('f') => Ok('\u{c}'),
            Some('"') => Ok('"'),
            Some('\'') => Ok('\''),
            Some('\\') => Ok('\\'),
            Some('u') => self.hex_char(4),
            Some('U') => self.hex_char(8),
            _ => self.err("invalid string escape"),
        }
    }

    fn short_string(&mut self, quote: char) -> Result<String, GraphError> {
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return self.err("unterminated string"),
                Some('\n') | Some('\r') => return self.err("newline in short string"),
                Some('\\') => out.push(self.string_escape()?),
                Some(c) if c == quote => return Ok(out),
                Some(c) => out.push(c),
            }
        }
    }

    fn long_string(&mut self, quote: char) -> Result<String, GraphError> {
        self.advance(3);
        let mut out = String::new();
        loop {
            if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                // A run of more than three quotes ends with the last three.
                if self.peek_at(3) != Some(quote) {
                    self.advance(3);
                    return Ok(out);
                }
            }
            match self.bump() {
                None => return self.err("unterminated long string"),
                Some('\\') => out.push(self.string_escape()?),
                Some(c) => out.push(c),
            }
        }
    }

    fn numeric(&mut self) -> Result<Literal, GraphError> {
        let mut text = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            text.push(c);
            self.bump();
        }
        let mut int_digits = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            text.push(c);
            self.bump();
            int_digits += 1;
        }
        let mut datatype = xsd::INTEGER;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            text.push('.');
            self.bump();
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                text.push(c);
                self.bump();
            }
            datatype = xsd::DECIMAL;
        } else if int_digits == 0 {
            return self.err("invalid numeric literal");
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            text.push(e);
            self.bump();
            if let Some(c @ ('+' | '-')) = self.peek() {
                text.push(c);
                self.bump();
            }
            let mut exp_digits = 0;
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                text.push(c);
                self.bump();
                exp_digits += 1;
            }
            if exp_digits == 0 {
                return self.err("invalid exponent");
            }
            datatype = xsd::DOUBLE;
        }
        Ok(Literal::typed(text, Iri::new(datatype).expect("static")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab::rdfs;

    fn ttl(s: &str) -> Result<Graph, GraphError> {
        parse_graph(s.as_bytes(), RdfFormat::Turtle)
    }

    fn nt(s: &str) -> Result<Graph, GraphError> {
        parse_graph(s.as_bytes(), RdfFormat::NTriples)
    }

    #[test]
    fn empty_input_is_empty_graph() {
        assert!(ttl("").unwrap().is_empty());
        assert!(nt("  # only a comment\n").unwrap().is_empty());
    }

    #[test]
    fn prefixes_expand_and_a_is_rdf_type() {
        let g = ttl("@prefix ex: <http://example.org/> .\nex:x a ex:C ; ex:p ex:y , ex:z .").unwrap();
        assert_eq!(g.len(), 3);
        let x = Subject::Iri(Iri::new("http://example.org/x").unwrap());
        assert!(g.contains(&Triple {
            subject: x,
            predicate: Iri::new(rdf::TYPE).unwrap(),
            object: Term::Iri(Iri::new("http://example.org/C").unwrap()),
        }));
    }

    #[test]
    fn sparql_style_directives() {
        let g = ttl("PREFIX ex: <http://example.org/>\nBASE <http://example.org/base/>\n<rel> ex:p ex:o .").unwrap();
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject.as_iri().unwrap().as_str(), "http://example.org/base/rel");
    }

    #[test]
    fn relative_iri_without_base_fails() {
        assert!(matches!(ttl("<rel> <http://x.org/p> <http://x.org/o> ."), Err(GraphError::RelativeIri(_))));
        assert!(matches!(nt("<rel> <http://x.org/p> <http://x.org/o> ."), Err(GraphError::RelativeIri(_))));
    }

    #[test]
    fn literals_and_shorthands() {
        let g = ttl(concat!(
            "@prefix ex: <http://example.org/> .\n",
            "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n",
            "ex:s ex:a \"plain\" ; ex:b \"hi\"@en-GB ; ex:c \"5\"^^xsd:int ; ex:d 42 ; ex:e -1.5 ; ex:f 1e3 ; ex:g true ;\n",
            "  ex:h '''multi\nline''' ; ex:i 'single' .",
        ))
        .unwrap();
        assert_eq!(g.len(), 9);
        let lits: Vec<_> = g.iter().filter_map(|t| t.object.as_literal().cloned()).collect();
        assert!(lits.iter().any(|l| l.lexical() == "hi" && l.language() == Some("en-gb")));
        assert!(lits.iter().any(|l| l.lexical() == "42" && l.datatype().as_str() == xsd::INTEGER));
        assert!(lits.iter().any(|l| l.lexical() == "-1.5" && l.datatype().as_str() == xsd::DECIMAL));
        assert!(lits.iter().any(|l| l.lexical() == "1e3" && l.datatype().as_str() == xsd::DOUBLE));
        assert!(lits.iter().any(|l| l.lexical() == "true" && l.datatype().as_str() == xsd::BOOLEAN));
        assert!(lits.iter().any(|l| l.lexical() == "multi\nline"));
    }

    #[test]
    fn integer_before_statement_dot() {
        let g = ttl("<http://x.org/s> <http://x.org/p> 7.").unwrap();
        assert_eq!(g.iter().next().unwrap().object.as_literal().unwrap().lexical(), "7");
    }

    #[test]
    fn blank_nodes_are_renamed_per_call() {
        let src = "_:a <http://x.org/p> [ <http://x.org/q> _:a ] .";
        let g1 = ttl(src).unwrap();
        let g2 = ttl(src).unwrap();
        assert_eq!(g1.len(), 2);
        assert_eq!(g1.blank_nodes().len(), 2);
        let b1: Vec<_> = g1.blank_nodes().into_iter().cloned().collect();
        let b2: Vec<_> = g2.blank_nodes().into_iter().cloned().collect();
        assert!(b1.iter().all(|b| !b2.contains(b)));
    }

    #[test]
    fn collections_are_rejected() {
        let err = ttl("<http://x.org/s> <http://x.org/p> ( <http://x.org/a> ) .").unwrap_err();
        assert!(matches!(err, GraphError::Syntax { line: 1, .. }));
    }

    #[test]
    fn syntax_error_positions() {
        let err = ttl("@prefix ex: <http://example.org/> .\nex:s ex:p ?x .").unwrap_err();
        match err {
            GraphError::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert_eq!(column, 11);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ntriples_rejects_turtle_extensions() {
        assert!(nt("@prefix ex: <http://example.org/> .").is_err());
        assert!(nt("<http://x.org/s> a <http://x.org/C> .").is_err());
        assert!(nt("<http://x.org/s> <http://x.org/p> 5 .").is_err());
        assert!(nt("<http://x.org/s> <http://x.org/p> <http://x.org/o> ; <http://x.org/q> <http://x.org/o> .").is_err());
    }

    #[test]
    fn ntriples_escapes() {
        let g = nt(r#"<http://x.org/s> <http://x.org/p> "a\"b\\c\né" ."#).unwrap();
        assert_eq!(g.iter().next().unwrap().object.as_literal().unwrap().lexical(), "a\"b\\c\né");
    }

    #[test]
    fn undeclared_prefix_is_syntax_error() {
        assert!(matches!(ttl("ex:s ex:p ex:o ."), Err(GraphError::Syntax { .. })));
    }

    #[test]
    fn trailing_semicolons_are_allowed() {
        let g = ttl(&format!("<http://x.org/C> a <{}> ; .", rdfs::CLASS)).unwrap();
        assert_eq!(g.len(), 1);
    }
}
