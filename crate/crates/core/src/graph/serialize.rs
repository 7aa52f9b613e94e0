use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Graph, Iri, Literal, RdfFormat, Subject, Term};
use crate::vocab::{rdf, xsd, WELL_KNOWN_PREFIXES};

/// Writes `g` in the requested syntax. Triples are emitted in the graph's
/// sorted order, so identical graphs serialize to identical bytes.
pub fn serialize_graph(g: &Graph, format: RdfFormat) -> Vec<u8> {
    match format {
        RdfFormat::NTriples => ntriples(g).into_bytes(),
        RdfFormat::Turtle => turtle(g).into_bytes(),
    }
}

fn ntriples(g: &Graph) -> String {
    let mut out = String::new();
    for t in g.iter() {
        write_subject(&mut out, &t.subject, None);
        out.push(' ');
        write_iri(&mut out, &t.predicate, None);
        out.push(' ');
        write_term(&mut out, &t.object, None);
        out.push_str(" .\n");
    }
    out
}

/// Canonical N-Triples string escaping.
fn escape_string(out: &mut String, s: &str) {
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{8}' => out.push_str("\\b"),
            '\u{c}' => out.push_str("\\f"),
            c if (c as u32) < 0x20 || c as u32 == 0x7f => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
}

type Prefixes<'a> = Option<&'a [(&'a str, &'a str)]>;

fn is_safe_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn write_iri(out: &mut String, iri: &Iri, prefixes: Prefixes<'_>) {
    if let Some(prefixes) = prefixes {
        if iri.as_str() == rdf::TYPE {
            out.push('a');
            return;
        }
        for (p, ns) in prefixes {
            if let Some(local) = iri.as_str().strip_prefix(ns) {
                if is_safe_local(local) {
                    let _ = write!(out, "{p}:{local}");
                    return;
                }
            }
        }
    }
    let _ = write!(out, "<{}>", iri.as_str());
}

fn write_node_iri(out: &mut String, iri: &Iri, prefixes: Prefixes<'_>) {
    // `a` is only valid in predicate position.
    if iri.as_str() == rdf::TYPE {
        let _ = write!(out, "<{}>", iri.as_str());
    } else {
        write_iri(out, iri, prefixes);
    }
}

fn write_subject(out: &mut String, s: &Subject, prefixes: Prefixes<'_>) {
    match s {
        Subject::Iri(i) => write_node_iri(out, i, prefixes),
        Subject::Blank(b) => {
            let _ = write!(out, "_:{}", b.label());
        }
    }
}

fn write_literal(out: &mut String, l: &Literal, prefixes: Prefixes<'_>) {
    out.push('"');
    escape_string(out, l.lexical());
    out.push('"');
    if let Some(lang) = l.language() {
        let _ = write!(out, "@{lang}");
    } else if l.datatype().as_str() != xsd::STRING {
        out.push_str("^^");
        write_node_iri(out, l.datatype(), prefixes);
    }
}

fn write_term(out: &mut String, t: &Term, prefixes: Prefixes<'_>) {
    match t {
        Term::Iri(i) => write_node_iri(out, i, prefixes),
        Term::Blank(b) => {
            let _ = write!(out, "_:{}", b.label());
        }
        Term::Literal(l) => write_literal(out, l, prefixes),
    }
}

fn used_prefixes(g: &Graph) -> Vec<(&'static str, &'static str)> {
    let mut used = Vec::new();
    let mentions = |ns: &str| {
        g.iter().any(|t| {
            t.subject.as_iri().is_some_and(|i| i.in_namespace(ns))
                || (t.predicate.in_namespace(ns) && t.predicate.as_str() != rdf::TYPE)
                || match &t.object {
                    Term::Iri(i) => i.in_namespace(ns),
                    Term::Literal(l) => l.datatype().in_namespace(ns) && l.datatype().as_str() != xsd::STRING,
                    Term::Blank(_) => false,
                }
        })
    };
    for (p, ns) in WELL_KNOWN_PREFIXES {
        if mentions(ns) {
            used.push((p, ns));
        }
    }
    used
}

fn turtle(g: &Graph) -> String {
    let prefixes = used_prefixes(g);
    let mut out = String::new();
    for (p, ns) in &prefixes {
        let _ = writeln!(out, "@prefix {p}: <{ns}> .");
    }
    if !prefixes.is_empty() && !g.is_empty() {
        out.push('\n');
    }
    let pfx = Some(prefixes.as_slice());

    let mut by_subject: BTreeMap<&Subject, BTreeMap<&Iri, Vec<&Term>>> = BTreeMap::new();
    for t in g.iter() {
        by_subject.entry(&t.subject).or_default().entry(&t.predicate).or_default().push(&t.object);
    }
    for (subject, predicates) in by_subject {
        write_subject(&mut out, subject, pfx);
        let mut first_pred = true;
        for (pred, objects) in predicates {
            if first_pred {
                out.push(' ');
                first_pred = false;
            } else {
                out.push_str(" ;\n    ");
            }
            write_iri(&mut out, pred, pfx);
            for (i, o) in objects.iter().enumerate() {
                out.push_str(if i == 0 { " " } else { ", " });
                write_term(&mut out, o, pfx);
            }
        }
        out.push_str(" .\n");
    }
    out
}
