use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GraphError;

/// An absolute IRI, stored in normalized form.
///
/// Normalization is deliberately narrow: the scheme and host are lowercased,
/// hex digits in percent escapes are uppercased, and escapes of unreserved
/// characters are decoded. Two IRIs name the same thing iff their normalized
/// strings are equal; no other similarity is ever applied.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, GraphError> {
        let value = value.as_ref();
        validate(value)?;
        Ok(Iri(normalize(value)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The part after the last `#` or `/`, used for short display names.
    pub fn local_name(&self) -> &str {
        let s = self.0.as_str();
        match s.rfind(['#', '/']) {
            Some(i) if i + 1 < s.len() => &s[i + 1..],
            _ => s,
        }
    }

    pub fn in_namespace(&self, ns: &str) -> bool {
        self.0.starts_with(ns)
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for Iri {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Iri::new(s)
    }
}

impl Serialize for Iri {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Iri {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Iri::new(&s).map_err(serde::de::Error::custom)
    }
}

fn scheme_len(value: &str) -> Option<usize> {
    let colon = value.find(':')?;
    let scheme = &value[..colon];
    let mut chars = scheme.chars();
    let first = chars.next()?;
    if !first.is_ascii_alphabetic() {
        return None;
    }
    if chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.')) {
        Some(colon)
    } else {
        None
    }
}

/// True when `value` starts with a syntactically valid scheme.
pub(crate) fn is_absolute(value: &str) -> bool {
    scheme_len(value).is_some()
}

fn validate(value: &str) -> Result<(), GraphError> {
    let colon = scheme_len(value).ok_or_else(|| GraphError::RelativeIri(value.to_string()))?;
    if colon + 1 == value.len() {
        return Err(GraphError::InvalidIri {
            iri: value.to_string(),
            reason: "empty hierarchical part".into(),
        });
    }
    if let Some(c) = value
        .chars()
        .find(|c| c.is_control() || c.is_whitespace() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '\\' | '^' | '`'))
    {
        return Err(GraphError::InvalidIri {
            iri: value.to_string(),
            reason: format!("forbidden character {c:?}"),
        });
    }
    let bytes = value.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'%' {
            let ok = i + 2 < bytes.len() && bytes[i + 1].is_ascii_hexdigit() && bytes[i + 2].is_ascii_hexdigit();
            if !ok {
                return Err(GraphError::InvalidIri {
                    iri: value.to_string(),
                    reason: "malformed percent escape".into(),
                });
            }
            i += 3;
        } else {
            i += 1;
        }
    }
    Ok(())
}

fn normalize(value: &str) -> String {
    let colon = scheme_len(value).expect("validated");
    let mut out = String::with_capacity(value.len());
    out.push_str(&value[..colon].to_ascii_lowercase());
    out.push(':');
    let rest = &value[colon + 1..];

    let (authority, tail) = match rest.strip_prefix("//") {
        Some(after) => {
            let end = after.find(['/', '?', '#']).unwrap_or(after.len());
            (Some(&after[..end]), &after[end..])
        }
        None => (None, rest),
    };
    if let Some(auth) = authority {
        out.push_str("//");
        let (userinfo, hostport) = match auth.rfind('@') {
            Some(at) => (&auth[..=at], &auth[at + 1..]),
            None => ("", auth),
        };
        out.push_str(&normalize_escapes(userinfo));
        // Bracketed IPv6 literals may contain ':'; the port follows the last ']' or ':'.
        let port_start = if hostport.starts_with('[') {
            hostport.find(']').map(|i| i + 1).filter(|&i| i < hostport.len())
        } else {
            hostport.rfind(':')
        };
        match port_start {
            Some(p) => {
                out.push_str(&normalize_escapes(&hostport[..p]).to_lowercase());
                out.push_str(&hostport[p..]);
            }
            None => out.push_str(&normalize_escapes(hostport).to_lowercase()),
        }
    }
    out.push_str(&normalize_escapes(tail));
    out
}

fn is_unreserved(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'-' | b'.' | b'_' | b'~')
}

fn normalize_escapes(s: &str) -> String {
    let bytes = s.as_bytes();
    let mut out = String::with_capacity(s.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'%' && i + 2 < bytes.len() {
            let hex = &s[i + 1..i + 3];
            let decoded = u8::from_str_radix(hex, 16).expect("validated escape");
            if is_unreserved(decoded) {
                out.push(decoded as char);
            } else {
                out.push('%');
                out.push_str(&hex.to_ascii_uppercase());
            }
            i += 3;
        } else {
            // Copy the full UTF-8 sequence starting here.
            let ch = s[i..].chars().next().expect("char boundary");
            out.push(ch);
            i += ch.len_utf8();
        }
    }
    out
}
