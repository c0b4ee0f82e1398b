//! Reproducible random diagrams and primitive series.

use jacobi_core::lmo::strut;
use jacobi_core::{canonicalize, rat, Color, ColorSet, Diagram, Monomial, RawDiagram, Series};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest connected diagram the generator produces, in vertices.
pub const MAX_VERTICES: u32 = 8;
/// Largest coefficient denominator the generator produces.
pub const MAX_DENOMINATOR: i64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrutPolicy {
    Allow,
    Forbid,
    SameColorForbid,
}

impl StrutPolicy {
    fn admits(self, a: &Color, b: &Color) -> bool {
        match self {
            StrutPolicy::Allow => true,
            StrutPolicy::Forbid => false,
            StrutPolicy::SameColorForbid => a != b,
        }
    }
}

/// A random connected diagram with at most `max_vertices` vertices (an
/// even number, at least 2) and leg colors drawn from `palette`.
pub fn random_diagram(rng: &mut impl Rng, palette: &[Color], max_vertices: u32, policy: StrutPolicy) -> Diagram {
    assert!(max_vertices >= 2 && !palette.is_empty());
    loop {
        let total = 2 * rng.gen_range(1..=max_vertices / 2);
        let t = rng.gen_range(0..=total);
        if t == 0 && total == 2 {
            let a = palette.choose(rng).unwrap();
            let b = palette.choose(rng).unwrap();
            if policy.admits(a, b) {
                return strut(a, b);
            }
            continue;
        }
        let mut raw = RawDiagram::new();
        let mut darts = Vec::new();
        for v in 0..t {
            raw = raw.tri(v);
            darts.extend((0..3).map(|s| (v, s)));
        }
        for v in t..total {
            raw = raw.leg(v, palette.choose(rng).unwrap().clone());
            darts.push((v, 0));
        }
        darts.shuffle(rng);
        for pair in darts.chunks(2) {
            raw = raw.edge(pair[0], pair[1]);
        }
        // self-paired slots and disconnected matchings are rejected by
        // validation; draw again
        if let Ok(d) = canonicalize(&raw) {
            if !d.is_strut() {
                return d;
            }
        }
    }
}

/// A random primitive series over `colors` with between one and three
/// distinct terms. Diagrams have at most [`MAX_VERTICES`] vertices and degree at
/// most `trunc`; coefficients are nonzero with numerators in `-6..=6` and
/// denominators in `1..=12`.
pub fn random_primitive_with(rng: &mut impl Rng, trunc: u32, colors: &ColorSet, policy: StrutPolicy) -> Series {
    let palette: Vec<Color> = colors.iter().cloned().collect();
    let max_vertices = MAX_VERTICES.min(2 * trunc);
    let n = rng.gen_range(1..=3);
    let mut terms: Vec<(Monomial, jacobi_core::Rational)> = Vec::with_capacity(n);
    while terms.len() < n {
        let d = Monomial::single(random_diagram(rng, &palette, max_vertices, policy));
        // distinct diagrams, so coefficients are never merged
        if terms.iter().any(|(m, _)| *m == d) {
            continue;
        }
        let mut num = rng.gen_range(-6..=5);
        if num >= 0 {
            num += 1;
        }
        terms.push((d, rat(num, rng.gen_range(1..=MAX_DENOMINATOR))));
    }
    Series::from_terms(colors.clone(), trunc, terms).expect("legs use the given colors")
}

/// [`random_primitive_with`] driven by a ChaCha8 generator seeded with
/// `seed`, so the result is the same on every platform.
pub fn random_primitive(seed: u64, trunc: u32, colors: &ColorSet, policy: StrutPolicy) -> Series {
    random_primitive_with(&mut ChaCha8Rng::seed_from_u64(seed), trunc, colors, policy)
}
