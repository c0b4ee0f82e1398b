//! Connected uni-trivalent diagrams in canonical form, and monomials
//! (finite multisets of them) which serve as the indeterminates of a
//! diagram series.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::color::{Color, ColorSet};
use crate::error::Error;
use crate::graph::{Graph, Label, Node};

/// A diagram as written by a user: arbitrary vertex ids, explicit edges
/// between `(vertex, slot)` pairs. Trivalent slots 0, 1, 2 are in cyclic
/// order; a leg has the single slot 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawDiagram {
    pub legs: Vec<(u32, Color)>,
    pub trivalent: Vec<u32>,
    pub edges: Vec<((u32, u8), (u32, u8))>,
}

impl RawDiagram {
    pub fn new() -> Self {
        RawDiagram::default()
    }

    pub fn leg(mut self, id: u32, color: Color) -> Self {
        self.legs.push((id, color));
        self
    }

    pub fn tri(mut self, id: u32) -> Self {
        self.trivalent.push(id);
        self
    }

    pub fn edge(mut self, a: (u32, u8), b: (u32, u8)) -> Self {
        self.edges.push((a, b));
        self
    }

    /// Validates the description and builds the underlying rotation graph.
    pub fn to_graph(&self) -> Result<Graph, Error> {
        let mut index: BTreeMap<u32, u32> = BTreeMap::new();
        let mut nodes = Vec::with_capacity(self.legs.len() + self.trivalent.len());
        for (id, color) in &self.legs {
            if index.insert(*id, nodes.len() as u32).is_some() {
                return Err(Error::DuplicateVertex(*id));
            }
            nodes.push(Node::Leg(Label::plain(color.clone())));
        }
        for id in &self.trivalent {
            if index.insert(*id, nodes.len() as u32).is_some() {
                return Err(Error::DuplicateVertex(*id));
            }
            nodes.push(Node::Tri);
        }
        if nodes.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        let mut g = Graph::with_nodes(nodes);
        let mut used = alloc::vec![false; g.dart_count()];
        let resolve = |g: &Graph, (id, slot): (u32, u8)| -> Result<u32, Error> {
            let v = *index.get(&id).ok_or(Error::UnknownVertex(id))?;
            if u32::from(slot) >= g.node(v).arity() {
                return Err(Error::InvalidSlot { vertex: id, slot });
            }
            Ok(g.dart(v, u32::from(slot)))
        };
        for &(a, b) in &self.edges {
            let da = resolve(&g, a)?;
            let db = resolve(&g, b)?;
            if da == db {
                return Err(Error::SelfPairedSlot { vertex: a.0, slot: a.1 });
            }
            for (d, (id, slot)) in [(da, a), (db, b)] {
                if used[d as usize] {
                    return Err(Error::SlotReused { vertex: id, slot });
                }
                used[d as usize] = true;
            }
            g.connect(da, db);
        }
        if let Some(d) = used.iter().position(|u| !u) {
            let v = g.owner(d as u32);
            let id = *index.iter().find(|(_, &i)| i == v).map(|(id, _)| id).unwrap();
            return Err(Error::DanglingSlot {
                vertex: id,
                slot: g.slot(d as u32) as u8,
            });
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }
}

struct Inner {
    key: Vec<u8>,
    graph: Graph,
    trivalent: u32,
    leg_colors: Vec<Color>,
}

/// A connected diagram in canonical form. Equality, ordering and hashing
/// go through the canonical key, so isomorphic diagrams are equal.
#[derive(Clone)]
pub struct Diagram(Arc<Inner>);

/// Validates `raw` and returns its canonical form.
pub fn canonicalize(raw: &RawDiagram) -> Result<Diagram, Error> {
    Diagram::from_graph(&raw.to_graph()?)
}

impl Diagram {
    /// Canonicalizes a connected graph whose legs all carry tag 0.
    pub fn from_graph(g: &Graph) -> Result<Diagram, Error> {
        if g.node_count() == 0 {
            return Err(Error::EmptyDiagram);
        }
        if !g.is_complete() {
            return Err(Error::InvalidArgument("graph has unattached darts".into()));
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let (key, graph) = g.canonical();
        Ok(Diagram::from_canonical(key, graph))
    }

    /// Wraps an already canonical component.
    pub(crate) fn from_canonical(key: Vec<u8>, graph: Graph) -> Diagram {
        let mut leg_colors: Vec<Color> = graph.legs().map(|(_, l)| l.color.clone()).collect();
        leg_colors.sort();
        let trivalent = graph.trivalent_count() as u32;
        Diagram(Arc::new(Inner {
            key,
            graph,
            trivalent,
            leg_colors,
        }))
    }

    pub fn key(&self) -> &[u8] {
        &self.0.key
    }

    pub fn graph(&self) -> &Graph {
        &self.0.graph
    }

    pub fn trivalent_count(&self) -> u32 {
        self.0.trivalent
    }

    pub fn leg_count(&self) -> u32 {
        self.0.leg_colors.len() as u32
    }

    /// Half the number of vertices.
    pub fn degree(&self) -> u32 {
        (self.trivalent_count() + self.leg_count()) / 2
    }

    /// Leg colors, sorted, with repetition.
    pub fn leg_colors(&self) -> &[Color] {
        &self.0.leg_colors
    }

    pub fn is_strut(&self) -> bool {
        self.trivalent_count() == 0
    }

    pub fn is_same_color_strut(&self) -> bool {
        self.is_strut() && self.0.leg_colors[0] == self.0.leg_colors[1]
    }

    /// Whether some leg has a color in `colors`.
    pub fn touches(&self, colors: &ColorSet) -> bool {
        self.0.leg_colors.iter().any(|c| colors.contains(c))
    }

    pub fn legs_by_color(&self) -> BTreeMap<Color, u32> {
        let mut out = BTreeMap::new();
        for c in &self.0.leg_colors {
            *out.entry(c.clone()).or_insert(0) += 1;
        }
        out
    }

    pub fn colors_within(&self, colors: &ColorSet) -> bool {
        self.0.leg_colors.iter().all(|c| colors.contains(c))
    }

    /// The canonical graph written back as a raw description with vertex
    /// ids `0..n` in canonical order.
    pub fn to_raw(&self) -> RawDiagram {
        let g = self.graph();
        let mut raw = RawDiagram::new();
        for (i, n) in g.nodes().iter().enumerate() {
            match n {
                Node::Leg(l) => raw.legs.push((i as u32, l.color.clone())),
                Node::Tri => raw.trivalent.push(i as u32),
            }
        }
        for d in 0..g.dart_count() as u32 {
            let m = g.mate(d);
            if d < m {
                raw.edges.push((
                    (g.owner(d), g.slot(d) as u8),
                    (g.owner(m), g.slot(m) as u8),
                ));
            }
        }
        raw
    }
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.key == other.0.key
    }
}

impl Eq for Diagram {}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.key.cmp(&other.0.key)
    }
}

impl Hash for Diagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.key.hash(state)
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Diagram(t={}, legs={:?})",
            self.trivalent_count(),
            self.leg_colors()
        )
    }
}

/// A product of connected diagrams: a sorted multiset with positive
/// multiplicities. The empty monomial is the unit `1`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    factors: Vec<(Diagram, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn single(d: Diagram) -> Self {
        Monomial {
            factors: alloc::vec![(d, 1)],
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Diagram, u32)>) -> Self {
        let mut map: BTreeMap<Diagram, u32> = BTreeMap::new();
        for (d, k) in factors {
            if k > 0 {
                *map.entry(d).or_insert(0) += k;
            }
        }
        Monomial {
            factors: map.into_iter().collect(),
        }
    }

    pub fn factors(&self) -> &[(Diagram, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// A single connected diagram with multiplicity one.
    pub fn as_connected(&self) -> Option<&Diagram> {
        match self.factors.as_slice() {
            [(d, 1)] => Some(d),
            _ => None,
        }
    }

    pub fn component_count(&self) -> u32 {
        self.factors.iter().map(|(_, k)| k).sum()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(d, k)| d.degree() * k).sum()
    }

    pub fn trivalent_count(&self) -> u32 {
        self.factors.iter().map(|(d, k)| d.trivalent_count() * k).sum()
    }

    pub fn leg_count(&self) -> u32 {
        self.factors.iter().map(|(d, k)| d.leg_count() * k).sum()
    }

    pub fn legs_by_color(&self) -> BTreeMap<Color, u32> {
        let mut out = BTreeMap::new();
        for (d, k) in &self.factors {
            for c in d.leg_colors() {
                *out.entry(c.clone()).or_insert(0) += k;
            }
        }
        out
    }

    /// Number of legs whose color lies in `colors`.
    pub fn legs_in(&self, colors: &ColorSet) -> u32 {
        self.factors
            .iter()
            .map(|(d, k)| d.leg_colors().iter().filter(|c| colors.contains(c)).count() as u32 * k)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_factors(self.factors.iter().chain(other.factors.iter()).cloned())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            factors: self.factors.iter().map(|(d, m)| (d.clone(), m * k)).collect(),
        }
    }

    pub fn has_strut(&self) -> bool {
        self.factors.iter().any(|(d, _)| d.is_strut())
    }

    /// Whether some strut factor has an end colored in `colors`.
    pub fn has_strut_touching(&self, colors: &ColorSet) -> bool {
        self.factors
            .iter()
            .any(|(d, _)| d.is_strut() && d.touches(colors))
    }

    pub fn has_same_color_strut_in(&self, colors: &ColorSet) -> bool {
        self.factors
            .iter()
            .any(|(d, _)| d.is_same_color_strut() && d.touches(colors))
    }

    pub fn colors_within(&self, colors: &ColorSet) -> bool {
        self.factors.iter().all(|(d, _)| d.colors_within(colors))
    }

    /// Disjoint union of all factors, with multiplicity.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty();
        for (d, k) in &self.factors {
            for _ in 0..*k {
                g = g.disjoint_union(d.graph());
            }
        }
        g
    }

    /// Splits a complete graph with plain labels into canonical components.
    pub fn from_graph(g: &Graph) -> Monomial {
        Monomial::from_factors(
            g.canonical_components()
                .into_iter()
                .map(|(k, c)| (Diagram::from_canonical(k, c), 1)),
        )
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        f.debug_list()
            .entries(self.factors.iter().map(|(d, k)| (d, k)))
            .finish()
    }
}
