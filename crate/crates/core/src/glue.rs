//! Pairing, partial pairing, self-closure and the diagrammatic
//! differential operator.
//!
//! All four operators sum over ways of identifying legs. Instead of walking
//! every bijection, the engine glues one leg at a time and merges partially
//! glued graphs that are isomorphic (respecting which side each pending leg
//! came from), carrying an integer multiplicity. The remaining sum only
//! depends on the isomorphism class of a partial state, so the totals are
//! the same as for explicit enumeration.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::color::{Color, ColorSet};
use crate::diagram::Monomial;
use crate::error::Error;
use crate::graph::{Graph, Label, Node};
use crate::series::{Rational, Series};

pub(crate) const PLAIN: u8 = 0;
pub(crate) const LEFT: u8 = 1;
pub(crate) const RIGHT: u8 = 2;
pub(crate) const OPEN: u8 = 3;
const SELF: u8 = 1;

/// Result of gluing one pair of monomials: output monomials with the
/// number of leg identifications producing each.
pub type GlueTerms = BTreeMap<Monomial, BigUint>;

type Layer = BTreeMap<Vec<u8>, (Graph, BigUint)>;

fn push_state(layer: &mut Layer, g: Graph, count: BigUint) {
    let key = g.multiset_key();
    match layer.get_mut(&key) {
        Some((_, c)) => *c += count,
        None => {
            layer.insert(key, (g, count));
        }
    }
}

fn first_leg_with_tag(g: &Graph, tag: u8) -> Option<(u32, Color)> {
    g.legs()
        .find(|(_, l)| l.tag == tag)
        .map(|(v, l)| (v, l.color.clone()))
}

fn finish(layer: Layer) -> GlueTerms {
    let mut out = GlueTerms::new();
    for (_, (mut g, count)) in layer {
        g.map_labels(|l| Label::plain(l.color.clone()));
        *out.entry(Monomial::from_graph(&g)).or_insert_with(BigUint::zero) += count;
    }
    out
}

/// If leg `a` is one end of a strut whose other end is also a `LEFT` leg,
/// that other end.
fn free_strut_end(g: &Graph, a: u32) -> Option<u32> {
    let b = g.owner(g.mate(g.dart(a, 0)));
    match g.node(b) {
        Node::Leg(l) if l.tag == LEFT => Some(b),
        _ => None,
    }
}

fn leg_color(g: &Graph, v: u32) -> &Color {
    match g.node(v) {
        Node::Leg(l) => &l.color,
        Node::Tri => unreachable!("not a leg"),
    }
}

/// One step of a bijective pairing whose left side still has free struts.
/// Rather than choosing a right partner for a left leg, it picks the first
/// `RIGHT` leg `r1` and sums over the left leg glued to it. Free strut ends
/// of the same kind give isomorphic results, so each kind is handled once
/// with a multiplicity; sending the strut's far end to `r2` then simply
/// joins `r1` to `r2`. Without this, every choice of a pair of right legs
/// for a strut would be enumerated.
fn strut_step(g: &Graph, count: &BigUint, next: &mut Layer) -> Result<(), Error> {
    let (r1, color) = first_leg_with_tag(g, RIGHT).expect("left and right legs match up");
    let mut kinds: BTreeMap<&Color, (u32, u32, u32)> = BTreeMap::new();
    for (a, l) in g.legs() {
        if l.tag != LEFT || l.color != color {
            continue;
        }
        match free_strut_end(g, a) {
            Some(b) => kinds.entry(leg_color(g, b)).or_insert((a, b, 0)).2 += 1,
            None => push_state(next, g.join_legs(a, r1)?, count.clone()),
        }
    }
    for (far, (a, b, mult)) in kinds {
        let once = g.join_legs(a, r1)?;
        // join_legs drops the two joined nodes and keeps the order of the rest
        let shift = |v: u32| v - (a < v) as u32 - (r1 < v) as u32;
        let weight = count * mult;
        for (r2, l) in g.legs() {
            if l.tag == RIGHT && r2 != r1 && &l.color == far {
                push_state(next, once.join_legs(shift(b), shift(r2))?, weight.clone());
            }
        }
    }
    Ok(())
}

/// Glues every `LEFT` leg to a `RIGHT` leg of the same color, summing over
/// all choices. `RIGHT` legs left over survive as ordinary legs. When the
/// left side has struts with both ends `LEFT`, every `RIGHT` leg must end
/// up glued (equal counts per color), as in a pairing.
fn pair_tagged(start: Graph) -> Result<GlueTerms, Error> {
    let mut layer = Layer::new();
    push_state(&mut layer, start, BigUint::one());
    loop {
        let mut next = Layer::new();
        let mut done = true;
        for (g, count) in layer.values() {
            let Some((a, color)) = first_leg_with_tag(g, LEFT) else {
                continue;
            };
            done = false;
            if g.legs().any(|(v, l)| l.tag == LEFT && free_strut_end(g, v).is_some()) {
                strut_step(g, count, &mut next)?;
                continue;
            }
            for (b, l) in g.legs() {
                if l.tag == RIGHT && l.color == color {
                    push_state(&mut next, g.join_legs(a, b)?, count.clone());
                }
            }
        }
        if done {
            return Ok(finish(layer));
        }
        layer = next;
    }
}

/// Pairs up all `SELF` legs color by color, summing over perfect matchings.
fn close_tagged(start: Graph) -> Result<GlueTerms, Error> {
    let mut layer = Layer::new();
    push_state(&mut layer, start, BigUint::one());
    loop {
        let mut next = Layer::new();
        let mut done = true;
        for (g, count) in layer.values() {
            let Some((a, color)) = first_leg_with_tag(g, SELF) else {
                continue;
            };
            done = false;
            for (b, l) in g.legs() {
                if b != a && l.tag == SELF && l.color == color {
                    push_state(&mut next, g.join_legs(a, b)?, count.clone());
                }
            }
        }
        if done {
            return Ok(finish(layer));
        }
        layer = next;
    }
}

fn tagged_union(g: &Monomial, h: &Monomial, x: &ColorSet) -> Graph {
    let mut left = g.to_graph();
    left.map_labels(|l| Label {
        tag: if x.contains(&l.color) { LEFT } else { PLAIN },
        color: l.color.clone(),
    });
    let mut right = h.to_graph();
    right.map_labels(|l| Label {
        tag: if x.contains(&l.color) { RIGHT } else { PLAIN },
        color: l.color.clone(),
    });
    left.disjoint_union(&right)
}

fn counts_in(m: &Monomial, x: &ColorSet) -> BTreeMap<Color, u32> {
    m.legs_by_color()
        .into_iter()
        .filter(|(c, _)| x.contains(c))
        .collect()
}

fn check_strut_sides(g: &Monomial, h: &Monomial, x: &ColorSet) -> Result<(), Error> {
    if g.has_strut_touching(x) && h.has_strut_touching(x) {
        return Err(Error::StrutsOnBothSides);
    }
    Ok(())
}

/// Number of per-color bijections between the `x`-colored legs of `g` and
/// `h`: the product of `count!`, or zero when some count differs.
pub fn bijection_count(g: &Monomial, h: &Monomial, x: &ColorSet) -> BigUint {
    let cg = counts_in(g, x);
    if cg != counts_in(h, x) {
        return BigUint::zero();
    }
    cg.values()
        .map(|&n| (1..=n).fold(BigUint::one(), |a, i| a * BigUint::from(i)))
        .fold(BigUint::one(), |a, f| a * f)
}

/// Partial pairing of two monomials along the colors in `x`. Legs of other
/// colors pass through. Zero when the `x`-leg counts differ.
pub fn pair_monomials(g: &Monomial, h: &Monomial, x: &ColorSet) -> Result<GlueTerms, Error> {
    check_strut_sides(g, h, x)?;
    if counts_in(g, x) != counts_in(h, x) {
        return Ok(GlueTerms::new());
    }
    pair_tagged(tagged_union(g, h, x))
}

/// Full pairing of two monomials: every leg is glued, so the output is
/// trivalent (colorless).
pub fn glue_monomials(g: &Monomial, h: &Monomial) -> Result<Series, Error> {
    let all = ColorSet::new(
        g.legs_by_color()
            .into_keys()
            .chain(h.legs_by_color().into_keys())
            .collect::<alloc::collections::BTreeSet<_>>(),
    )?;
    let terms = pair_monomials(g, h, &all)?;
    let trunc = (g.trivalent_count() + h.trivalent_count()) / 2;
    Series::from_terms(
        ColorSet::empty(),
        trunc,
        terms
            .into_iter()
            .filter(|(m, _)| m.leg_count() == 0)
            .map(|(m, n)| (m, Rational::from_integer(BigInt::from(n)))),
    )
}

/// Sum over per-color injections of the legs of `g` into the legs of `h`.
pub fn inject_monomials(g: &Monomial, h: &Monomial) -> Result<GlueTerms, Error> {
    if g.has_strut() || h.has_strut() {
        return Err(Error::StrutsPresent);
    }
    let ch = h.legs_by_color();
    for (c, n) in g.legs_by_color() {
        if ch.get(&c).copied().unwrap_or(0) < n {
            return Ok(GlueTerms::new());
        }
    }
    let all = ColorSet::new(ch.into_keys())?;
    pair_tagged(tagged_union(g, h, &all))
}

/// Sum over per-color perfect matchings of the legs of `g`.
pub fn close_monomial(g: &Monomial) -> Result<GlueTerms, Error> {
    if g.has_strut() {
        return Err(Error::StrutsPresent);
    }
    if g.legs_by_color().values().any(|n| n % 2 == 1) {
        return Ok(GlueTerms::new());
    }
    let mut graph = g.to_graph();
    graph.map_labels(|l| Label {
        tag: SELF,
        color: l.color.clone(),
    });
    close_tagged(graph)
}

/// The injection sum computed the other way round: choose which legs of
/// `h` stay open, then fully pair the rest with `g`.
pub fn inject_by_opening(g: &Monomial, h: &Monomial) -> Result<GlueTerms, Error> {
    if g.has_strut() || h.has_strut() {
        return Err(Error::StrutsPresent);
    }
    let cg = g.legs_by_color();
    let hg = h.to_graph();
    let leg_ids: Vec<u32> = hg.legs().map(|(v, _)| v).collect();
    let mut by_color: BTreeMap<Color, Vec<u32>> = BTreeMap::new();
    for (v, l) in hg.legs() {
        by_color.entry(l.color.clone()).or_default().push(v);
    }
    for (c, n) in &cg {
        if by_color.get(c).map_or(0, |v| v.len()) < *n as usize {
            return Ok(GlueTerms::new());
        }
    }
    // one subset choice per color, as node lists of legs kept filled
    let mut choices: Vec<Vec<Vec<u32>>> = Vec::new();
    for (c, legs) in &by_color {
        let k = cg.get(c).copied().unwrap_or(0) as usize;
        choices.push(subsets(legs, k));
    }
    let mut out = GlueTerms::new();
    let mut pick = alloc::vec![0usize; choices.len()];
    loop {
        let filled: Vec<u32> = pick
            .iter()
            .zip(choices.iter())
            .flat_map(|(&i, c)| c[i].iter().copied())
            .collect();
        let mut right = hg.clone();
        let mut ids = leg_ids.iter();
        right.map_labels(|l| {
            let v = *ids.next().expect("one label per leg");
            Label {
                tag: if filled.contains(&v) { RIGHT } else { OPEN },
                color: l.color.clone(),
            }
        });
        let mut left = g.to_graph();
        left.map_labels(|l| Label {
            tag: LEFT,
            color: l.color.clone(),
        });
        for (m, n) in pair_tagged(left.disjoint_union(&right))? {
            *out.entry(m).or_insert_with(BigUint::zero) += n;
        }
        // odometer over subset choices
        let mut i = 0;
        loop {
            if i == pick.len() {
                return Ok(out);
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

fn subsets(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return alloc::vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mut rest in subsets(&items[1..], k - 1) {
        rest.insert(0, items[0]);
        out.push(rest);
    }
    out.extend(subsets(&items[1..], k));
    out
}

struct Indexed<'a> {
    mono: &'a Monomial,
    coef: &'a Rational,
    degree: u32,
}

fn indexed(s: &Series) -> Vec<Indexed<'_>> {
    s.terms()
        .map(|(m, q)| Indexed {
            mono: m,
            coef: q,
            degree: m.degree(),
        })
        .collect()
}

fn signature(m: &Monomial, x: &ColorSet) -> Vec<u32> {
    let counts = m.legs_by_color();
    x.iter().map(|c| counts.get(c).copied().unwrap_or(0)).collect()
}

fn accumulate(out: &mut Series, terms: GlueTerms, coef: &Rational) {
    for (m, n) in terms {
        out.add_term(m, coef * Rational::from_integer(BigInt::from(n)));
    }
}

/// Highest output degree guaranteed complete for a pairing along `x`.
///
/// With output degree `N`, a left monomial can contribute only if its
/// degree is at most `3N` when the right side has no struts touching `x`
/// (and `4N` otherwise), and symmetrically on the right.
pub fn pairing_trunc(s1: &Series, s2: &Series, x: &ColorSet) -> u32 {
    if x.is_empty() {
        return s1.trunc().min(s2.trunc());
    }
    let rel1 = s1.terms().any(|(m, _)| m.has_strut_touching(x));
    let rel2 = s2.terms().any(|(m, _)| m.has_strut_touching(x));
    let k1 = if rel2 { 4 } else { 3 };
    let k2 = if rel1 { 4 } else { 3 };
    (s1.trunc() / k1).min(s2.trunc() / k2)
}

pub(crate) fn check_pairing(s1: &Series, s2: &Series, x: &ColorSet) -> Result<(), Error> {
    if s1.colors() != s2.colors() {
        return Err(Error::ColorSetMismatch);
    }
    if let Some(c) = x.iter().find(|c| !s1.colors().contains(c)) {
        return Err(Error::UnknownColor(c.clone()));
    }
    if s2.terms().any(|(m, _)| m.has_same_color_strut_in(x)) {
        return Err(Error::SameColorStrutOnRight);
    }
    let rel1 = s1.terms().any(|(m, _)| m.has_strut_touching(x));
    let rel2 = s2.terms().any(|(m, _)| m.has_strut_touching(x));
    if rel1 && rel2 {
        return Err(Error::StrutsOnBothSides);
    }
    Ok(())
}

/// Partial pairing along `x`; the result lives over the remaining colors.
pub fn bracket_partial(s1: &Series, s2: &Series, x: &ColorSet) -> Result<Series, Error> {
    check_pairing(s1, s2, x)?;
    let trunc = pairing_trunc(s1, s2, x);
    let mut out = Series::zero(s1.colors().difference(x), trunc);
    let mut groups: BTreeMap<Vec<u32>, Vec<Indexed<'_>>> = BTreeMap::new();
    for t in indexed(s2) {
        groups.entry(signature(t.mono, x)).or_default().push(t);
    }
    for g in indexed(s1) {
        let sig = signature(g.mono, x);
        let glued: u32 = sig.iter().sum();
        let Some(partners) = groups.get(&sig) else {
            continue;
        };
        for h in partners {
            if g.degree + h.degree - glued > trunc {
                continue;
            }
            let terms = pair_monomials(g.mono, h.mono, x)?;
            accumulate(&mut out, terms, &(g.coef * h.coef));
        }
    }
    Ok(out)
}

/// Full pairing: every color is glued and the result is colorless.
pub fn bracket(s1: &Series, s2: &Series) -> Result<Series, Error> {
    bracket_partial(s1, s2, &s1.colors().clone())
}

pub fn bracket_c(s1: &Series, s2: &Series) -> Result<Series, Error> {
    Ok(bracket(s1, s2)?.primitive_part())
}

pub fn bracket_partial_c(s1: &Series, s2: &Series, x: &ColorSet) -> Result<Series, Error> {
    Ok(bracket_partial(s1, s2, x)?.primitive_part())
}

/// Pairs all legs of each monomial among themselves.
pub fn self_closure(s: &Series) -> Result<Series, Error> {
    if s.has_struts() {
        return Err(Error::StrutsPresent);
    }
    let trunc = s.trunc() / 4;
    let mut out = Series::zero(ColorSet::empty(), trunc);
    for (m, q) in s.terms() {
        if m.trivalent_count() / 2 > trunc {
            continue;
        }
        accumulate(&mut out, close_monomial(m)?, q);
    }
    Ok(out)
}

pub fn self_closure_c(s: &Series) -> Result<Series, Error> {
    Ok(self_closure(s)?.primitive_part())
}

fn check_diff(s1: &Series, s2: &Series) -> Result<u32, Error> {
    if s1.colors() != s2.colors() {
        return Err(Error::ColorSetMismatch);
    }
    if s1.has_struts() || s2.has_struts() {
        return Err(Error::StrutsPresent);
    }
    Ok((s1.trunc() / 3).min(s2.trunc() / 3))
}

fn diff_with(
    s1: &Series,
    s2: &Series,
    glue: impl Fn(&Monomial, &Monomial) -> Result<GlueTerms, Error>,
) -> Result<Series, Error> {
    let trunc = check_diff(s1, s2)?;
    let mut out = Series::zero(s1.colors().clone(), trunc);
    let right = indexed(s2);
    for g in indexed(s1) {
        let need = g.mono.legs_by_color();
        let glued = g.mono.leg_count();
        for h in &right {
            if (g.degree + h.degree).saturating_sub(glued) > trunc {
                continue;
            }
            let have = h.mono.legs_by_color();
            if need.iter().any(|(c, n)| have.get(c).copied().unwrap_or(0) < *n) {
                continue;
            }
            accumulate(&mut out, glue(g.mono, h.mono)?, &(g.coef * h.coef));
        }
    }
    Ok(out)
}

/// The diagrammatic differential operator: legs of the left argument are
/// glued injectively into legs of the right argument; unglued right legs
/// survive.
pub fn diff_op(s1: &Series, s2: &Series) -> Result<Series, Error> {
    diff_with(s1, s2, inject_monomials)
}

/// `diff_op` computed through the leg-opening expansion of the right
/// argument.
pub fn diff_op_by_opening(s1: &Series, s2: &Series) -> Result<Series, Error> {
    diff_with(s1, s2, inject_by_opening)
}

pub fn diff_op_c(s1: &Series, s2: &Series) -> Result<Series, Error> {
    Ok(diff_op(s1, s2)?.primitive_part())
}
