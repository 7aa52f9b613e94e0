use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use super::{BlankNode, Graph, Subject, Term, Triple};

/// Graph isomorphism modulo blank node relabelling.
///
/// Blank nodes are first coloured by iterated neighbourhood hashing; the
/// remaining ambiguity is resolved by backtracking with partial-mapping checks.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let blanks_a: Vec<&BlankNode> = a.blank_nodes().into_iter().collect();
    let blanks_b: Vec<&BlankNode> = b.blank_nodes().into_iter().collect();
    if blanks_a.len() != blanks_b.len() {
        return false;
    }
    let ground = |g: &Graph| -> Vec<Triple> { g.iter().filter(|t| !has_blank(t)).cloned().collect() };
    if ground(a) != ground(b) {
        return false;
    }
    if blanks_a.is_empty() {
        return true;
    }

    let colors_a = refine(a, &blanks_a);
    let colors_b = refine(b, &blanks_b);
    let histogram = |c: &HashMap<&BlankNode, u64>| {
        let mut h: BTreeMap<u64, usize> = BTreeMap::new();
        for v in c.values() {
            *h.entry(*v).or_default() += 1;
        }
        h
    };
    let hist_b = histogram(&colors_b);
    if histogram(&colors_a) != hist_b {
        return false;
    }

    let mut order = blanks_a.clone();
    order.sort_by_key(|x| (hist_b[&colors_a[x]], colors_a[x]));
    let adjacency = adjacency(a);
    let mut search = Search {
        order: &order,
        colors_a: &colors_a,
        colors_b: &colors_b,
        candidates: &blanks_b,
        adjacency: &adjacency,
        target: b,
        mapping: HashMap::new(),
        used: HashSet::new(),
    };
    search.run(0)
}

fn has_blank(t: &Triple) -> bool {
    matches!(t.subject, Subject::Blank(_)) || matches!(t.object, Term::Blank(_))
}

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

fn adjacency(g: &Graph) -> HashMap<&BlankNode, Vec<&Triple>> {
    let mut adj: HashMap<&BlankNode, Vec<&Triple>> = HashMap::new();
    for t in g.iter() {
        if let Subject::Blank(s) = &t.subject {
            adj.entry(s).or_default().push(t);
        }
        if let Term::Blank(o) = &t.object {
            if !matches!(&t.subject, Subject::Blank(s) if s == o) {
                adj.entry(o).or_default().push(t);
            }
        }
    }
    adj
}

fn refine<'g>(g: &'g Graph, blanks: &[&'g BlankNode]) -> HashMap<&'g BlankNode, u64> {
    let adj = adjacency(g);
    let mut colors: HashMap<&BlankNode, u64> = blanks.iter().map(|b| (*b, 0)).collect();
    let mut distinct = 1;
    for _ in 0..=blanks.len() {
        let term_sig = |t: &Term, colors: &HashMap<&BlankNode, u64>| match t {
            Term::Blank(x) => (1u8, colors[x]),
            other => (0u8, hash_of(other)),
        };
        let mut next = HashMap::with_capacity(colors.len());
        for b in blanks {
            let mut entries: Vec<(u8, u64, (u8, u64))> = Vec::new();
            for t in adj.get(b).map(Vec::as_slice).unwrap_or(&[]) {
                let p = hash_of(&t.predicate);
                if matches!(&t.subject, Subject::Blank(s) if s == *b) {
                    entries.push((0, p, term_sig(&t.object, &colors)));
                }
                if matches!(&t.object, Term::Blank(o) if o == *b) {
                    entries.push((1, p, term_sig(&t.subject.to_term(), &colors)));
                }
            }
            entries.sort_unstable();
            next.insert(*b, hash_of(&(colors[b], entries)));
        }
        let now: HashSet<u64> = next.values().copied().collect();
        colors = next;
        if now.len() == distinct {
            break;
        }
        distinct = now.len();
    }
    colors
}

struct Search<'a, 'g> {
    order: &'a [&'g BlankNode],
    colors_a: &'a HashMap<&'g BlankNode, u64>,
    colors_b: &'a HashMap<&'g BlankNode, u64>,
    candidates: &'a [&'g BlankNode],
    adjacency: &'a HashMap<&'g BlankNode, Vec<&'g Triple>>,
    target: &'g Graph,
    mapping: HashMap<&'g BlankNode, &'g BlankNode>,
    used: HashSet<&'g BlankNode>,
}

impl<'a, 'g> Search<'a, 'g> {
    fn run(&mut self, depth: usize) -> bool {
        let Some(&b) = self.order.get(depth) else { return true };
        let color = self.colors_a[b];
        for &c in self.candidates {
            if self.used.contains(c) || self.colors_b[c] != color {
                continue;
            }
            self.mapping.insert(b, c);
            self.used.insert(c);
            if self.consistent(b) && self.run(depth + 1) {
                return true;
            }
            self.mapping.remove(b);
            self.used.remove(c);
        }
        false
    }

    fn consistent(&self, b: &BlankNode) -> bool {
        for t in self.adjacency.get(b).map(Vec::as_slice).unwrap_or(&[]) {
            let subject = match &t.subject {
                Subject::Blank(x) => match self.mapping.get(x) {
                    Some(m) => Subject::Blank((*m).clone()),
                    None => continue,
                },
                s => s.clone(),
            };
            let object = match &t.object {
                Term::Blank(x) => match self.mapping.get(x) {
                    Some(m) => Term::Blank((*m).clone()),
                    None => continue,
                },
                o => o.clone(),
            };
            if !self.target.contains(&Triple { subject, predicate: t.predicate.clone(), object }) {
                return false;
            }
        }
        true
    }
}
