//! Rotation-system graphs with univalent labelled legs and cyclically
//! ordered trivalent vertices, plus their canonical labelling.
//!
//! Every vertex owns a contiguous block of darts (half-edges): one for a
//! leg, three for a trivalent vertex. Slot order at a trivalent vertex is
//! its cyclic order, so rotating the three slots gives the same vertex and
//! reversing them does not.
//!
//! Canonical form of a connected graph: fixing a starting dart determines a
//! breadth-first numbering of every vertex, because the cyclic order at each
//! trivalent vertex fixes the order in which its other darts are visited.
//! The serialization of that numbering is minimized over all admissible
//! starting darts. Two connected graphs are isomorphic (label- and
//! orientation-preserving) exactly when their minima coincide.

use alloc::vec;
use alloc::vec::Vec;

use crate::color::Color;
use crate::error::Error;

/// Leg label: a color plus a small tag used by the gluing engine to mark
/// which side of a pairing a leg belongs to. Diagrams always carry tag 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub tag: u8,
    pub color: Color,
}

impl Label {
    pub fn plain(color: Color) -> Self {
        Label { tag: 0, color }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Leg(Label),
    Tri,
}

impl Node {
    pub fn arity(&self) -> u32 {
        match self {
            Node::Leg(_) => 1,
            Node::Tri => 3,
        }
    }
}

const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    nodes: Vec<Node>,
    first: Vec<u32>,
    owner: Vec<u32>,
    mate: Vec<u32>,
}

impl Graph {
    /// Allocates darts for `nodes`; all darts start unattached.
    pub fn with_nodes(nodes: Vec<Node>) -> Self {
        let mut first = Vec::with_capacity(nodes.len());
        let mut owner = Vec::new();
        for (i, n) in nodes.iter().enumerate() {
            first.push(owner.len() as u32);
            for _ in 0..n.arity() {
                owner.push(i as u32);
            }
        }
        let mate = vec![UNSET; owner.len()];
        Graph {
            nodes,
            first,
            owner,
            mate,
        }
    }

    pub fn empty() -> Self {
        Graph::with_nodes(Vec::new())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn dart_count(&self) -> usize {
        self.mate.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, v: u32) -> &Node {
        &self.nodes[v as usize]
    }

    pub fn dart(&self, v: u32, slot: u32) -> u32 {
        debug_assert!(slot < self.nodes[v as usize].arity());
        self.first[v as usize] + slot
    }

    pub fn owner(&self, d: u32) -> u32 {
        self.owner[d as usize]
    }

    pub fn slot(&self, d: u32) -> u32 {
        d - self.first[self.owner[d as usize] as usize]
    }

    pub fn mate(&self, d: u32) -> u32 {
        self.mate[d as usize]
    }

    pub fn connect(&mut self, a: u32, b: u32) {
        self.mate[a as usize] = b;
        self.mate[b as usize] = a;
    }

    pub fn is_complete(&self) -> bool {
        self.mate
            .iter()
            .enumerate()
            .all(|(d, &m)| m != UNSET && m as usize != d && self.mate[m as usize] == d as u32)
    }

    pub fn trivalent_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Tri)).count()
    }

    pub fn leg_count(&self) -> usize {
        self.nodes.len() - self.trivalent_count()
    }

    /// Indices of leg nodes, in node order.
    pub fn legs(&self) -> impl Iterator<Item = (u32, &Label)> {
        self.nodes.iter().enumerate().filter_map(|(i, n)| match n {
            Node::Leg(l) => Some((i as u32, l)),
            Node::Tri => None,
        })
    }

    pub fn map_labels(&mut self, mut f: impl FnMut(&Label) -> Label) {
        for n in self.nodes.iter_mut() {
            if let Node::Leg(l) = n {
                *l = f(l);
            }
        }
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut nodes = self.nodes.clone();
        nodes.extend(other.nodes.iter().cloned());
        let mut g = Graph::with_nodes(nodes);
        let shift = self.mate.len() as u32;
        g.mate[..self.mate.len()].copy_from_slice(&self.mate);
        for (d, &m) in other.mate.iter().enumerate() {
            g.mate[shift as usize + d] = if m == UNSET { UNSET } else { m + shift };
        }
        g
    }

    /// Node sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for s in 0..self.nodes.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s as u32];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                for k in 0..self.nodes[v as usize].arity() {
                    let w = self.owner[self.mate[self.dart(v, k) as usize] as usize];
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Keeps the nodes for which `keep` holds. Kept darts must not be mated
    /// to dropped darts.
    fn retain_nodes(&self, keep: &[bool]) -> Graph {
        let mut index = vec![UNSET; self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if keep[i] {
                index[i] = nodes.len() as u32;
                nodes.push(n.clone());
            }
        }
        let mut g = Graph::with_nodes(nodes);
        for (i, n) in self.nodes.iter().enumerate() {
            if !keep[i] {
                continue;
            }
            for k in 0..n.arity() {
                let m = self.mate[(self.first[i] + k) as usize];
                let w = self.owner[m as usize];
                debug_assert!(keep[w as usize]);
                let nd = g.first[index[i] as usize] + k;
                g.mate[nd as usize] = g.first[index[w as usize] as usize] + self.slot(m);
            }
        }
        g
    }

    pub fn subgraph(&self, members: &[u32]) -> Graph {
        let mut keep = vec![false; self.nodes.len()];
        for &v in members {
            keep[v as usize] = true;
        }
        self.retain_nodes(&keep)
    }

    /// Identifies legs `a` and `b`: both legs disappear and the darts they
    /// were attached to become mates. This is the homeomorphic reduction of
    /// the degree-2 junction formed by joining two legs.
    pub fn join_legs(&self, a: u32, b: u32) -> Result<Graph, Error> {
        debug_assert!(a != b);
        debug_assert!(matches!(self.nodes[a as usize], Node::Leg(_)));
        debug_assert!(matches!(self.nodes[b as usize], Node::Leg(_)));
        let da = self.first[a as usize];
        let db = self.first[b as usize];
        let p = self.mate[da as usize];
        let q = self.mate[db as usize];
        if p == db {
            return Err(Error::CircleComponent);
        }
        let mut g = self.clone();
        g.connect(p, q);
        let mut keep = vec![true; g.nodes.len()];
        keep[a as usize] = false;
        keep[b as usize] = false;
        Ok(g.retain_nodes(&keep))
    }

    fn start_darts(&self, members: &[u32]) -> Vec<u32> {
        let min_leg = members
            .iter()
            .filter_map(|&v| match &self.nodes[v as usize] {
                Node::Leg(l) => Some(l),
                Node::Tri => None,
            })
            .min();
        match min_leg {
            Some(min) => members
                .iter()
                .filter(|&&v| matches!(&self.nodes[v as usize], Node::Leg(l) if l == min))
                .map(|&v| self.first[v as usize])
                .collect(),
            None => members
                .iter()
                .flat_map(|&v| (0..3).map(move |k| (v, k)))
                .map(|(v, k)| self.first[v as usize] + k)
                .collect(),
        }
    }

    /// Breadth-first numbering from `start`, returning the serialization,
    /// the visit order and the entry slot of each visited node.
    fn traverse(&self, start: u32, buf: &mut Vec<u8>, order: &mut Vec<u32>, entry: &mut [u32], number: &mut [u32]) {
        buf.clear();
        order.clear();
        let s = self.owner[start as usize];
        number[s as usize] = 0;
        entry[s as usize] = self.slot(start);
        order.push(s);
        let mut i = 0;
        while i < order.len() {
            let v = order[i] as usize;
            let arity = self.nodes[v].arity();
            match &self.nodes[v] {
                Node::Leg(l) => {
                    buf.push(0);
                    buf.push(l.tag);
                    let bytes = l.color.as_str().as_bytes();
                    buf.push(bytes.len() as u8);
                    buf.extend_from_slice(bytes);
                }
                Node::Tri => buf.push(1),
            }
            for k in 0..arity {
                let d = self.first[v] + (entry[v] + k) % arity;
                let m = self.mate[d as usize];
                let w = self.owner[m as usize] as usize;
                let sw = self.slot(m);
                if number[w] == UNSET {
                    number[w] = order.len() as u32;
                    entry[w] = sw;
                    order.push(w as u32);
                }
                let aw = self.nodes[w].arity();
                buf.extend_from_slice(&(number[w] as u16).to_be_bytes());
                buf.push(((sw + aw - entry[w]) % aw) as u8);
            }
            i += 1;
        }
        for &v in order.iter() {
            number[v as usize] = UNSET;
        }
    }

    /// Canonical key and canonically relabelled copy of the component
    /// spanned by `members` (which must be a whole connected component).
    pub fn canonical_component(&self, members: &[u32]) -> (Vec<u8>, Graph) {
        let mut entry = vec![0u32; self.nodes.len()];
        let mut number = vec![UNSET; self.nodes.len()];
        let mut buf = Vec::new();
        let mut order = Vec::new();
        let mut best: Option<(Vec<u8>, u32)> = None;
        for start in self.start_darts(members) {
            self.traverse(start, &mut buf, &mut order, &mut entry, &mut number);
            let better = match &best {
                None => true,
                Some((b, _)) => buf.as_slice() < b.as_slice(),
            };
            if better {
                best = Some((buf.clone(), start));
            }
        }
        let (key, start) = best.expect("component has at least one dart");
        self.traverse(start, &mut buf, &mut order, &mut entry, &mut number);
        for (i, &v) in order.iter().enumerate() {
            number[v as usize] = i as u32;
        }
        let nodes: Vec<Node> = order.iter().map(|&v| self.nodes[v as usize].clone()).collect();
        let mut g = Graph::with_nodes(nodes);
        for (i, &v) in order.iter().enumerate() {
            let v = v as usize;
            let arity = self.nodes[v].arity();
            for k in 0..arity {
                let d = self.first[v] + (entry[v] + k) % arity;
                let m = self.mate[d as usize];
                let w = self.owner[m as usize] as usize;
                let aw = self.nodes[w].arity();
                let rel = (self.slot(m) + aw - entry[w]) % aw;
                let nd = g.first[i] + k;
                g.mate[nd as usize] = g.first[number[w] as usize] + rel;
            }
        }
        (key, g)
    }

    /// Canonical key of a connected graph.
    pub fn canonical(&self) -> (Vec<u8>, Graph) {
        let all: Vec<u32> = (0..self.nodes.len() as u32).collect();
        self.canonical_component(&all)
    }

    /// Canonical keys and graphs of all components, sorted by key.
    pub fn canonical_components(&self) -> Vec<(Vec<u8>, Graph)> {
        let mut out: Vec<(Vec<u8>, Graph)> = self
            .components()
            .iter()
            .map(|c| self.canonical_component(c))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Isomorphism-class key of a possibly disconnected graph.
    pub fn multiset_key(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for (k, _) in self.canonical_components() {
            out.extend_from_slice(&(k.len() as u32).to_be_bytes());
            out.extend_from_slice(&k);
        }
        out
    }
}
