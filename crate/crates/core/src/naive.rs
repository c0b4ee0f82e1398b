//! Reference implementation of the gluing operators.
//!
//! Everything here is deliberately simple: leg identifications are listed
//! one by one, glued graphs are assembled by walking along identified legs,
//! and outputs are grouped by a backtracking isomorphism search instead of
//! canonical keys. It is slow and only meant for small inputs, where it
//! serves as an independent check of [`crate::glue`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::color::{Color, ColorSet};
use crate::diagram::Monomial;
use crate::error::Error;
use crate::glue::{self, GlueTerms};
use crate::graph::{Graph, Label, Node};
use crate::series::{Rational, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Leg(Color),
    Tri,
}

impl Kind {
    fn arity(&self) -> u8 {
        match self {
            Kind::Leg(_) => 1,
            Kind::Tri => 3,
        }
    }
}

/// A diagram (or disjoint union of diagrams) as plain adjacency lists:
/// `adj[v][s]` is the `(node, slot)` at the other end of slot `s` of `v`.
#[derive(Clone, Debug)]
pub struct PlainGraph {
    kinds: Vec<Kind>,
    adj: Vec<Vec<(u32, u8)>>,
}

impl PlainGraph {
    pub fn from_graph(g: &Graph) -> Self {
        let mut kinds = Vec::with_capacity(g.node_count());
        let mut adj = Vec::with_capacity(g.node_count());
        for (v, n) in g.nodes().iter().enumerate() {
            kinds.push(match n {
                Node::Leg(l) => Kind::Leg(l.color.clone()),
                Node::Tri => Kind::Tri,
            });
            let row = (0..n.arity())
                .map(|s| {
                    let m = g.mate(g.dart(v as u32, s));
                    (g.owner(m), g.slot(m) as u8)
                })
                .collect();
            adj.push(row);
        }
        PlainGraph { kinds, adj }
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        Self::from_graph(&m.to_graph())
    }

    pub fn to_graph(&self) -> Graph {
        let nodes = self
            .kinds
            .iter()
            .map(|k| match k {
                Kind::Leg(c) => Node::Leg(Label::plain(c.clone())),
                Kind::Tri => Node::Tri,
            })
            .collect();
        let mut g = Graph::with_nodes(nodes);
        for (v, row) in self.adj.iter().enumerate() {
            for (s, &(w, t)) in row.iter().enumerate() {
                let a = g.dart(v as u32, s as u32);
                let b = g.dart(w, t as u32);
                if a < b {
                    g.connect(a, b);
                }
            }
        }
        g
    }

    pub fn to_monomial(&self) -> Monomial {
        Monomial::from_graph(&self.to_graph())
    }

    pub fn node_count(&self) -> usize {
        self.kinds.len()
    }

    fn legs(&self) -> impl Iterator<Item = (u32, &Color)> {
        self.kinds.iter().enumerate().filter_map(|(i, k)| match k {
            Kind::Leg(c) => Some((i as u32, c)),
            Kind::Tri => None,
        })
    }

    fn legs_of(&self, color: &Color) -> Vec<u32> {
        self.legs().filter(|(_, c)| *c == color).map(|(v, _)| v).collect()
    }

    /// Disjoint union; nodes of `other` are shifted past those of `self`.
    fn union(&self, other: &PlainGraph) -> PlainGraph {
        let shift = self.kinds.len() as u32;
        let mut kinds = self.kinds.clone();
        kinds.extend(other.kinds.iter().cloned());
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|row| row.iter().map(|&(w, t)| (w + shift, t)).collect()),
        );
        PlainGraph { kinds, adj }
    }

    /// Identifies each listed pair of legs. Identified legs disappear and
    /// the path through them becomes a single edge. Returns `None` when
    /// some identified legs close up into a circle without vertices.
    fn glue(&self, pairs: &[(u32, u32)]) -> Option<PlainGraph> {
        let n = self.kinds.len();
        let mut partner = vec![u32::MAX; n];
        for &(a, b) in pairs {
            partner[a as usize] = b;
            partner[b as usize] = a;
        }
        let mut index = vec![u32::MAX; n];
        let mut kept = 0u32;
        for v in 0..n {
            if partner[v] == u32::MAX {
                index[v] = kept;
                kept += 1;
            }
        }
        let mut visited = vec![false; n];
        let mut kinds = Vec::new();
        let mut adj = Vec::new();
        for v in 0..n {
            if partner[v] != u32::MAX {
                continue;
            }
            kinds.push(self.kinds[v].clone());
            let mut row = Vec::new();
            for s in 0..self.kinds[v].arity() {
                let (mut w, mut t) = self.adj[v][s as usize];
                while partner[w as usize] != u32::MAX {
                    visited[w as usize] = true;
                    let p = partner[w as usize];
                    visited[p as usize] = true;
                    (w, t) = self.adj[p as usize][0];
                }
                row.push((index[w as usize], t));
            }
            adj.push(row);
        }
        let all_visited = (0..n).all(|v| partner[v] == u32::MAX || visited[v]);
        all_visited.then_some(PlainGraph { kinds, adj })
    }
}

/// Backtracking search for an isomorphism: a bijection of nodes preserving
/// leg colors, plus a rotation at every trivalent vertex, under which the
/// adjacency lists agree.
pub fn isomorphic(a: &PlainGraph, b: &PlainGraph) -> bool {
    search(a, b, true) > 0
}

/// Number of isomorphisms from `a` to `b`; with `a = b` the size of the
/// automorphism group.
pub fn count_isomorphisms(a: &PlainGraph, b: &PlainGraph) -> usize {
    search(a, b, false)
}

fn search(a: &PlainGraph, b: &PlainGraph, first_only: bool) -> usize {
    if a.kinds.len() != b.kinds.len() {
        return 0;
    }
    let mut ka: Vec<_> = a.kinds.iter().map(kind_key).collect();
    let mut kb: Vec<_> = b.kinds.iter().map(kind_key).collect();
    ka.sort();
    kb.sort();
    if ka != kb {
        return 0;
    }
    let order = search_order(a);
    let n = a.kinds.len();
    let mut map = vec![u32::MAX; n];
    let mut rot = vec![0u8; n];
    let mut used = vec![false; n];
    let mut found = 0;
    extend(a, b, &order, 0, &mut map, &mut rot, &mut used, first_only, &mut found);
    found
}

fn kind_key(k: &Kind) -> Option<&str> {
    match k {
        Kind::Leg(c) => Some(c.as_str()),
        Kind::Tri => None,
    }
}

fn search_order(a: &PlainGraph) -> Vec<u32> {
    let n = a.kinds.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s as u32);
        let mut i = start;
        while i < order.len() {
            let v = order[i] as usize;
            for &(w, _) in &a.adj[v] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    order
}

fn consistent(a: &PlainGraph, b: &PlainGraph, v: usize, map: &[u32], rot: &[u8]) -> bool {
    let arity = a.kinds[v].arity();
    for s in 0..arity {
        let (w, t) = a.adj[v][s as usize];
        if map[w as usize] == u32::MAX {
            continue;
        }
        let aw = a.kinds[w as usize].arity();
        let image = (map[w as usize], (t + rot[w as usize]) % aw);
        if b.adj[map[v] as usize][((s + rot[v]) % arity) as usize] != image {
            return false;
        }
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &PlainGraph,
    b: &PlainGraph,
    order: &[u32],
    i: usize,
    map: &mut [u32],
    rot: &mut [u8],
    used: &mut [bool],
    first_only: bool,
    found: &mut usize,
) {
    if i == order.len() {
        *found += 1;
        return;
    }
    let v = order[i] as usize;
    let arity = a.kinds[v].arity();
    for w in 0..b.kinds.len() {
        if used[w] || b.kinds[w] != a.kinds[v] {
            continue;
        }
        used[w] = true;
        map[v] = w as u32;
        for r in 0..arity {
            rot[v] = r;
            if consistent(a, b, v, map, rot) {
                extend(a, b, order, i + 1, map, rot, used, first_only, found);
                if first_only && *found > 0 {
                    return;
                }
            }
        }
        map[v] = u32::MAX;
        used[w] = false;
    }
}

/// Outputs of a naive enumeration, grouped into isomorphism classes.
#[derive(Clone, Debug, Default)]
pub struct Classes {
    pub classes: Vec<(PlainGraph, BigUint)>,
    /// Number of leg identifications enumerated, including ones that
    /// produced a circle.
    pub enumerated: u64,
}

impl Classes {
    fn add(&mut self, g: PlainGraph) {
        for (rep, count) in self.classes.iter_mut() {
            if isomorphic(rep, &g) {
                *count += 1u32;
                return;
            }
        }
        self.classes.push((g, BigUint::one()));
    }

    /// Checks that `terms` lists exactly these classes with the same counts,
    /// matching each term to its class by isomorphism search.
    pub fn agrees_with(&self, terms: &GlueTerms) -> Result<(), String> {
        if terms.len() != self.classes.len() {
            return Err(format!(
                "{} classes by enumeration, {} terms from the engine",
                self.classes.len(),
                terms.len()
            ));
        }
        let mut claimed = vec![false; self.classes.len()];
        for (m, n) in terms {
            let g = PlainGraph::from_monomial(m);
            let found = self
                .classes
                .iter()
                .enumerate()
                .find(|(i, (rep, _))| !claimed[*i] && isomorphic(rep, &g));
            match found {
                Some((i, (_, count))) if count == n => claimed[i] = true,
                Some((_, (_, count))) => {
                    return Err(format!("{m:?}: engine count {n}, enumeration count {count}"))
                }
                None => return Err(format!("{m:?}: no isomorphic class in the enumeration")),
            }
        }
        Ok(())
    }

    pub fn into_terms(self) -> GlueTerms {
        let mut out = GlueTerms::new();
        for (g, n) in self.classes {
            *out.entry(g.to_monomial()).or_insert_with(BigUint::zero) += n;
        }
        out
    }
}

/// All bijections between two equal-size lists, as pair lists.
fn bijections(left: &[u32], right: &[u32]) -> Vec<Vec<(u32, u32)>> {
    if left.len() != right.len() {
        return Vec::new();
    }
    injections(left, right)
}

/// All injections of `left` into `right`, as pair lists.
fn injections(left: &[u32], right: &[u32]) -> Vec<Vec<(u32, u32)>> {
    let Some((&first, rest)) = left.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for (j, &r) in right.iter().enumerate() {
        let mut remaining = right.to_vec();
        remaining.remove(j);
        for mut tail in injections(rest, &remaining) {
            tail.insert(0, (first, r));
            out.push(tail);
        }
    }
    out
}

/// All perfect matchings of a list, as pair lists.
fn matchings(items: &[u32]) -> Vec<Vec<(u32, u32)>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for j in 0..rest.len() {
        let mut remaining = rest.to_vec();
        let partner = remaining.remove(j);
        for mut tail in matchings(&remaining) {
            tail.insert(0, (first, partner));
            out.push(tail);
        }
    }
    out
}

/// Cartesian product of per-color choices, concatenated.
fn product(per_color: Vec<Vec<Vec<(u32, u32)>>>) -> Vec<Vec<(u32, u32)>> {
    per_color.into_iter().fold(vec![Vec::new()], |acc, choices| {
        let mut out = Vec::new();
        for a in &acc {
            for c in &choices {
                let mut v = a.clone();
                v.extend_from_slice(c);
                out.push(v);
            }
        }
        out
    })
}

fn collect(base: &PlainGraph, choices: Vec<Vec<(u32, u32)>>) -> Result<Classes, Error> {
    let mut classes = Classes::default();
    for pairs in choices {
        classes.enumerated += 1;
        match base.glue(&pairs) {
            Some(g) => classes.add(g),
            None => return Err(Error::CircleComponent),
        }
    }
    Ok(classes)
}

fn all_colors(g: &PlainGraph) -> Vec<Color> {
    let mut cs: Vec<Color> = g.legs().map(|(_, c)| c.clone()).collect();
    cs.sort();
    cs.dedup();
    cs
}

/// Partial pairing along `x` by explicit per-color bijections.
pub fn pair(g: &Monomial, h: &Monomial, x: &ColorSet) -> Result<Classes, Error> {
    let left = PlainGraph::from_monomial(g);
    let right = PlainGraph::from_monomial(h);
    let base = left.union(&right);
    let shift = left.node_count() as u32;
    let mut per_color = Vec::new();
    for c in x.iter() {
        let l = left.legs_of(c);
        let r: Vec<u32> = right.legs_of(c).iter().map(|v| v + shift).collect();
        if l.len() != r.len() {
            return Ok(Classes::default());
        }
        per_color.push(bijections(&l, &r));
    }
    collect(&base, product(per_color))
}

/// Per-color injections of the legs of `g` into the legs of `h`.
pub fn inject(g: &Monomial, h: &Monomial) -> Result<Classes, Error> {
    let left = PlainGraph::from_monomial(g);
    let right = PlainGraph::from_monomial(h);
    let base = left.union(&right);
    let shift = left.node_count() as u32;
    let mut per_color = Vec::new();
    for c in all_colors(&left) {
        let l = left.legs_of(&c);
        let r: Vec<u32> = right.legs_of(&c).iter().map(|v| v + shift).collect();
        if l.len() > r.len() {
            return Ok(Classes::default());
        }
        per_color.push(injections(&l, &r));
    }
    collect(&base, product(per_color))
}

/// Per-color perfect matchings of the legs of `g`.
pub fn close(g: &Monomial) -> Result<Classes, Error> {
    let base = PlainGraph::from_monomial(g);
    let mut per_color = Vec::new();
    for c in all_colors(&base) {
        let legs = base.legs_of(&c);
        if legs.len() % 2 == 1 {
            return Ok(Classes::default());
        }
        per_color.push(matchings(&legs));
    }
    collect(&base, product(per_color))
}

fn accumulate(out: &mut Series, classes: Classes, coef: &Rational, trunc: u32) {
    for (g, n) in classes.classes {
        let m = g.to_monomial();
        if m.degree() <= trunc {
            out.add_term(m, coef * Rational::from_integer(BigInt::from(n)));
        }
    }
}

/// Series-level partial pairing by brute force over all term pairs.
pub fn bracket_partial(s1: &Series, s2: &Series, x: &ColorSet) -> Result<Series, Error> {
    // Validation and output truncation are shared with the engine so the
    // two can be compared term by term.
    glue::check_pairing(s1, s2, x)?;
    let trunc = glue::pairing_trunc(s1, s2, x);
    let mut out = Series::zero(s1.colors().difference(x), trunc);
    for (g, p) in s1.terms() {
        for (h, q) in s2.terms() {
            // every output term has t_g + t_h trivalent vertices and the
            // unglued legs of both sides
            let glued = 2 * g.legs_in(x);
            let degree = (g.leg_count() + h.leg_count()).saturating_sub(glued) + g.trivalent_count() + h.trivalent_count();
            if degree > 2 * trunc {
                continue;
            }
            accumulate(&mut out, pair(g, h, x)?, &(p * q), trunc);
        }
    }
    Ok(out)
}

pub fn self_closure(s: &Series) -> Result<Series, Error> {
    if s.has_struts() {
        return Err(Error::StrutsPresent);
    }
    let trunc = s.trunc() / 4;
    let mut out = Series::zero(ColorSet::empty(), trunc);
    for (g, p) in s.terms() {
        if g.trivalent_count() > 2 * trunc {
            continue;
        }
        accumulate(&mut out, close(g)?, p, trunc);
    }
    Ok(out)
}

pub fn diff_op(s1: &Series, s2: &Series) -> Result<Series, Error> {
    if s1.colors() != s2.colors() {
        return Err(Error::ColorSetMismatch);
    }
    if s1.has_struts() || s2.has_struts() {
        return Err(Error::StrutsPresent);
    }
    let trunc = (s1.trunc() / 3).min(s2.trunc() / 3);
    let mut out = Series::zero(s1.colors().clone(), trunc);
    for (g, p) in s1.terms() {
        for (h, q) in s2.terms() {
            let degree = h.leg_count().saturating_sub(g.leg_count()) + g.trivalent_count() + h.trivalent_count();
            if degree > 2 * trunc {
                continue;
            }
            accumulate(&mut out, inject(g, h)?, &(p * q), trunc);
        }
    }
    Ok(out)
}
