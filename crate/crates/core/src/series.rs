//! Exact-rational formal power series in diagram monomials, truncated by
//! degree (half the vertex count).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::color::ColorSet;
use crate::diagram::{Diagram, Monomial};
use crate::error::Error;

pub type Rational = num_rational::BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A truncated series: every term of degree `<= trunc` is present, no
/// term of higher degree is stored, and no coefficient is zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    colors: ColorSet,
    trunc: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl Series {
    pub fn zero(colors: ColorSet, trunc: u32) -> Self {
        Series {
            colors,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(colors: ColorSet, trunc: u32) -> Self {
        Series::monomial(colors, trunc, Monomial::one(), Rational::one())
    }

    pub fn monomial(colors: ColorSet, trunc: u32, m: Monomial, coef: Rational) -> Self {
        let mut s = Series::zero(colors, trunc);
        s.add_term(m, coef);
        s
    }

    /// Accumulates `terms`, checking colors and dropping what lies above
    /// `trunc`.
    pub fn from_terms(
        colors: ColorSet,
        trunc: u32,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self, Error> {
        let mut s = Series::zero(colors, trunc);
        for (m, q) in terms {
            if let Some((d, _)) = m.factors().iter().find(|(d, _)| !d.colors_within(&s.colors)) {
                let bad = d
                    .leg_colors()
                    .iter()
                    .find(|c| !s.colors.contains(c))
                    .cloned()
                    .expect("some leg is outside the set");
                return Err(Error::UnknownColor(bad));
            }
            s.add_term(m, q);
        }
        Ok(s)
    }

    /// Adds `coef * m`, ignoring monomials above the truncation degree.
    pub(crate) fn add_term(&mut self, m: Monomial, coef: Rational) {
        if coef.is_zero() || m.degree() > self.trunc {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn colors(&self) -> &ColorSet {
        &self.colors
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Same terms, reinterpreted over a larger color set.
    pub fn with_colors(&self, colors: ColorSet) -> Result<Series, Error> {
        Series::from_terms(colors, self.trunc, self.terms.clone())
    }

    /// Lowers the truncation degree to `min(trunc, n)`.
    pub fn truncate(&self, n: u32) -> Series {
        let trunc = self.trunc.min(n);
        Series {
            colors: self.colors.clone(),
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= trunc)
                .map(|(m, q)| (m.clone(), q.clone()))
                .collect(),
        }
    }

    /// Raises the declared truncation degree. Only valid when the series
    /// is known to be exact (a polynomial with every term present).
    pub fn assume_exact_to(&self, n: u32) -> Series {
        Series {
            colors: self.colors.clone(),
            trunc: self.trunc.max(n),
            terms: self.terms.clone(),
        }
    }

    /// Terms of exactly degree `d`.
    pub fn degree_part(&self, d: u32) -> Series {
        Series {
            colors: self.colors.clone(),
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, q)| (m.clone(), q.clone()))
                .collect(),
        }
    }

    fn check_colors(&self, other: &Series) -> Result<(), Error> {
        if self.colors != other.colors {
            return Err(Error::ColorSetMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series, Error> {
        self.check_colors(other)?;
        let mut out = Series::zero(self.colors.clone(), self.trunc.min(other.trunc));
        for (m, q) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(m.clone(), q.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Series) -> Result<Series, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, q: &Rational) -> Series {
        let mut out = Series::zero(self.colors.clone(), self.trunc);
        if q.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect();
        out
    }

    /// Cauchy product: monomials multiply by disjoint union.
    pub fn multiply(&self, other: &Series) -> Result<Series, Error> {
        self.check_colors(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = Series::zero(self.colors.clone(), trunc);
        let right: Vec<(&Monomial, &Rational, u32)> =
            other.terms.iter().map(|(m, q)| (m, q, m.degree())).collect();
        for (m1, q1) in &self.terms {
            let d1 = m1.degree();
            if d1 > trunc {
                continue;
            }
            for (m2, q2, d2) in &right {
                if d1 + d2 <= trunc {
                    out.add_term(m1.mul(m2), q1 * *q2);
                }
            }
        }
        Ok(out)
    }

    /// Every monomial is a single connected diagram.
    pub fn is_primitive(&self) -> bool {
        self.terms.keys().all(|m| m.as_connected().is_some())
    }

    /// Restriction to single connected diagrams; the unit is dropped.
    pub fn primitive_part(&self) -> Series {
        Series {
            colors: self.colors.clone(),
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.as_connected().is_some())
                .map(|(m, q)| (m.clone(), q.clone()))
                .collect(),
        }
    }

    /// Whether any stored diagram is a strut.
    pub fn has_struts(&self) -> bool {
        self.terms.keys().any(|m| m.has_strut())
    }

    /// Exponential of a primitive series with zero constant term. For
    /// `p = sum r_i u_i` the coefficient of `prod u_i^k_i` is
    /// `prod r_i^k_i / k_i!`.
    pub fn exp(&self) -> Result<Series, Error> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if !self.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        let mut items: Vec<(Diagram, Rational, u32)> = self
            .terms
            .iter()
            .map(|(m, q)| {
                let d = m.as_connected().expect("primitive").clone();
                let deg = d.degree();
                (d, q.clone(), deg)
            })
            .collect();
        items.sort_by_key(|(_, _, deg)| *deg);
        let mut out = Series::zero(self.colors.clone(), self.trunc);
        let mut factors = Vec::new();
        exp_rec(&items, 0, self.trunc, &mut factors, Rational::one(), &mut out);
        Ok(out)
    }

    /// `sum_{k>=1} (-1)^(k+1) (s-1)^k / k`, for `s` with constant term 1.
    pub fn log(&self) -> Result<Series, Error> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let one = Series::one(self.colors.clone(), self.trunc);
        let x = self.sub(&one)?;
        let mut out = Series::zero(self.colors.clone(), self.trunc);
        let mut pow = x.clone();
        let mut k: i64 = 1;
        while !pow.is_zero() {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&pow.scale(&rat(sign, k)))?;
            pow = pow.multiply(&x)?;
            k += 1;
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Series, Error> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let one = Series::one(self.colors.clone(), self.trunc);
        let x = one.sub(self)?;
        let mut out = one.clone();
        let mut pow = x.clone();
        while !pow.is_zero() {
            out = out.add(&pow)?;
            pow = pow.multiply(&x)?;
        }
        Ok(out)
    }

    /// `s^k`; negative exponents need constant term 1.
    pub fn power(&self, k: i64) -> Result<Series, Error> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Series::one(self.colors.clone(), self.trunc);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.multiply(&sq)?;
            }
        }
        Ok(acc)
    }
}

/// Items must be sorted by degree, so the recursion can stop at the first
/// item that no longer fits in the budget.
fn exp_rec(
    items: &[(Diagram, Rational, u32)],
    i: usize,
    budget: u32,
    factors: &mut Vec<(Diagram, u32)>,
    coef: Rational,
    out: &mut Series,
) {
    if i == items.len() || items[i].2 > budget {
        out.add_term(Monomial::from_factors(factors.iter().cloned()), coef);
        return;
    }
    let (d, r, deg) = &items[i];
    let mut k = 1u32;
    let mut c = coef.clone();
    while k * deg <= budget {
        c = c * r / Rational::from_integer(BigInt::from(k));
        factors.push((d.clone(), k));
        exp_rec(items, i + 1, budget - k * deg, factors, c.clone(), out);
        factors.pop();
        k += 1;
    }
    exp_rec(items, i + 1, budget, factors, coef, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::Color;
    use crate::diagram::{canonicalize, RawDiagram};

    fn strut(a: &str, b: &str) -> Diagram {
        canonicalize(
            &RawDiagram::new()
                .leg(0, Color::new(a).unwrap())
                .leg(1, Color::new(b).unwrap())
                .edge((0, 0), (1, 0)),
        )
        .unwrap()
    }

    fn colors() -> ColorSet {
        ColorSet::from_names(&["x", "y"]).unwrap()
    }

    fn single(d: &Diagram, q: Rational, trunc: u32) -> Series {
        Series::monomial(colors(), trunc, Monomial::single(d.clone()), q)
    }

    #[test]
    fn add_and_scale_to_zero() {
        let s = single(&strut("x", "y"), rat(3, 4), 4);
        assert!(s.add(&s.scale(&int(-1))).unwrap().is_zero());
        assert!(s.scale(&int(0)).is_zero());
    }

    #[test]
    fn mismatched_colors_rejected() {
        let s = single(&strut("x", "y"), rat(1, 1), 4);
        let t = Series::one(ColorSet::from_names(&["x", "y", "z"]).unwrap(), 4);
        assert_eq!(s.add(&t).unwrap_err(), Error::ColorSetMismatch);
        assert_eq!(s.multiply(&t).unwrap_err(), Error::ColorSetMismatch);
    }

    #[test]
    fn binomial_product() {
        let u = single(&strut("x", "y"), int(1), 4);
        let v = single(&strut("x", "x"), int(1), 4);
        let one = Series::one(colors(), 4);
        let p = one.add(&u).unwrap().multiply(&one.add(&v).unwrap()).unwrap();
        assert_eq!(p.len(), 4);
        let uv = Monomial::single(strut("x", "y")).mul(&Monomial::single(strut("x", "x")));
        assert_eq!(p.coefficient(&uv), int(1));
        assert_eq!(one.multiply(&u).unwrap(), u);
    }

    #[test]
    fn scalar_exponential_law() {
        let d = strut("x", "y");
        let r = rat(2, 3);
        let e = single(&d, r.clone(), 3).exp().unwrap();
        let m = Monomial::single(d);
        assert_eq!(e.constant_term(), int(1));
        assert_eq!(e.coefficient(&m), r.clone());
        assert_eq!(e.coefficient(&m.pow(2)), &r * &r / int(2));
        assert_eq!(e.coefficient(&m.pow(3)), &r * &r * &r / int(6));
        assert_eq!(e.len(), 4);
    }

    #[test]
    fn exp_preconditions() {
        let one = Series::one(colors(), 3);
        assert_eq!(one.exp().unwrap_err(), Error::NonzeroConstantTerm);
        let m = Monomial::single(strut("x", "y")).pow(2);
        let sq = Series::monomial(colors(), 3, m, int(1));
        assert_eq!(sq.exp().unwrap_err(), Error::NotPrimitive);
        assert_eq!(Series::zero(colors(), 3).exp().unwrap(), Series::one(colors(), 3));
    }

    #[test]
    fn mercator_series() {
        let d = strut("x", "y");
        let m = Monomial::single(d.clone());
        let s = Series::one(colors(), 4).add(&single(&d, int(1), 4)).unwrap();
        let l = s.log().unwrap();
        for k in 1..=4u32 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(l.coefficient(&m.pow(k)), rat(sign, k as i64));
        }
        assert!(Series::one(colors(), 4).log().unwrap().is_zero());
        assert_eq!(
            single(&d, int(2), 4).log().unwrap_err(),
            Error::ConstantTermNotOne
        );
    }

    #[test]
    fn power_and_inverse() {
        let d = strut("x", "x");
        let c = single(&d, rat(1, 5), 4);
        let e = c.exp().unwrap();
        assert_eq!(e.power(0).unwrap(), Series::one(colors(), 4));
        assert_eq!(e.power(-1).unwrap(), c.neg().exp().unwrap());
        assert_eq!(e.power(3).unwrap(), c.scale(&int(3)).exp().unwrap());
        assert_eq!(single(&d, int(1), 4).power(-1).unwrap_err(), Error::ConstantTermNotOne);
    }

    #[test]
    fn primitive_part_drops_unit_and_products() {
        let d = strut("x", "y");
        let e = single(&d, int(1), 3).exp().unwrap();
        let p = e.primitive_part();
        assert_eq!(p, single(&d, int(1), 3));
        assert!(Series::one(colors(), 3).primitive_part().is_zero());
    }

    #[test]
    fn truncation_coherence() {
        let a = single(&strut("x", "y"), rat(1, 2), 6);
        let b = single(&strut("x", "x"), rat(-1, 3), 6);
        let hi = a.add(&b).unwrap().exp().unwrap();
        let lo = a.truncate(3).add(&b.truncate(3)).unwrap().exp().unwrap();
        assert_eq!(hi.truncate(3), lo);
    }
}
