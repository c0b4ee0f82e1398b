#![allow(dead_code)]

use jacobi_core::lmo::strut;
use jacobi_core::{canonicalize, Color, ColorSet, Diagram, Monomial, RawDiagram, Rational, Series};
use proptest::prelude::*;

pub fn color(s: &str) -> Color {
    Color::new(s).unwrap()
}

pub fn colors(names: &[&str]) -> ColorSet {
    ColorSet::from_names(names).unwrap()
}

/// Consumes choices from a fixed list, wrapping around.
pub struct Choices<'a> {
    data: &'a [u32],
    pos: usize,
}

impl<'a> Choices<'a> {
    pub fn new(data: &'a [u32]) -> Self {
        Choices { data, pos: 0 }
    }

    pub fn below(&mut self, n: usize) -> usize {
        let v = self.data[self.pos % self.data.len()];
        self.pos += 1;
        v as usize % n
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Struts {
    Allow,
    Forbid,
    SameColorForbid,
}

/// A random connected diagram with at most `max_vertices` vertices, or
/// `None` when the random matching came out disconnected or violates the
/// strut policy.
pub fn random_diagram(ch: &mut Choices, palette: &[Color], max_vertices: usize, struts: Struts) -> Option<Diagram> {
    let total = 2 + 2 * ch.below(max_vertices / 2);
    let t = ch.below(total + 1);
    let u = total - t;
    if u == 2 && t == 0 {
        let a = &palette[ch.below(palette.len())];
        let b = &palette[ch.below(palette.len())];
        return match struts {
            Struts::Forbid => None,
            Struts::SameColorForbid if a == b => None,
            _ => Some(strut(a, b)),
        };
    }
    let mut raw = RawDiagram::new();
    let mut darts = Vec::new();
    for v in 0..t as u32 {
        raw = raw.tri(v);
        for s in 0..3 {
            darts.push((v, s));
        }
    }
    for v in t as u32..total as u32 {
        raw = raw.leg(v, palette[ch.below(palette.len())].clone());
        darts.push((v, 0));
    }
    while !darts.is_empty() {
        let a = darts.remove(0);
        let b = darts.remove(ch.below(darts.len()));
        raw = raw.edge(a, b);
    }
    canonicalize(&raw).ok()
}

pub fn diagram_strategy(palette: Vec<Color>, max_vertices: usize, struts: Struts) -> impl Strategy<Value = Diagram> {
    prop::collection::vec(any::<u32>(), 40).prop_filter_map("disconnected", move |v| {
        random_diagram(&mut Choices::new(&v), &palette, max_vertices, struts)
    })
}

pub fn monomial_strategy(palette: Vec<Color>, max_vertices: usize, struts: Struts) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(diagram_strategy(palette, max_vertices, struts), 0..3).prop_map(|ds| {
        Monomial::from_factors(ds.into_iter().map(|d| (d, 1)))
    })
}

pub fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=12)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| jacobi_core::rat(n, d))
}

/// A primitive series with up to `terms` random connected diagrams.
pub fn primitive_strategy(
    names: &'static [&'static str],
    terms: usize,
    max_vertices: usize,
    struts: Struts,
    trunc: u32,
) -> impl Strategy<Value = Series> {
    let palette: Vec<Color> = names.iter().map(|n| color(n)).collect();
    prop::collection::vec((diagram_strategy(palette, max_vertices, struts), rational_strategy()), 0..=terms)
        .prop_map(move |ts| {
            Series::from_terms(colors(names), trunc, ts.into_iter().map(|(d, q)| (Monomial::single(d), q))).unwrap()
        })
}

/// A general series: random monomials (including the unit) with random
/// coefficients.
pub fn series_strategy(names: &'static [&'static str], terms: usize, trunc: u32) -> impl Strategy<Value = Series> {
    let palette: Vec<Color> = names.iter().map(|n| color(n)).collect();
    prop::collection::vec((monomial_strategy(palette, 6, Struts::Allow), rational_strategy()), 0..=terms).prop_map(
        move |ts| Series::from_terms(colors(names), trunc, ts).unwrap(),
    )
}
