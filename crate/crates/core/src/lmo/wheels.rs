use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::color::{Color, ColorSet};
use crate::diagram::{canonicalize, Diagram, Monomial, RawDiagram};
use crate::error::Error;
use crate::lmo::bernoulli::modified_bernoulli_up_to;
use crate::series::{Rational, Series};

/// The wheel with `legs` spokes: a polygon of trivalent vertices, each
/// carrying one leg of `color`. Every rim vertex lists its slots as
/// (spoke, next rim edge, previous rim edge), the orientation induced by a
/// planar drawing with the legs pointing outwards.
pub fn wheel(legs: u32, color: &Color) -> Result<Diagram, Error> {
    if legs == 0 || legs % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "wheel needs a positive even number of legs, got {legs}"
        )));
    }
    let mut raw = RawDiagram::new();
    for i in 0..legs {
        let rim = 2 * i;
        let leg = 2 * i + 1;
        let next = 2 * ((i + 1) % legs);
        raw = raw
            .tri(rim)
            .leg(leg, color.clone())
            .edge((rim, 0), (leg, 0))
            .edge((rim, 1), (next, 2));
    }
    canonicalize(&raw)
}

/// The planar theta graph: two trivalent vertices joined by three edges.
pub fn theta() -> Diagram {
    let raw = RawDiagram::new()
        .tri(0)
        .tri(1)
        .edge((0, 0), (1, 2))
        .edge((0, 1), (1, 1))
        .edge((0, 2), (1, 0));
    canonicalize(&raw).expect("theta is a valid diagram")
}

/// A strut with legs of the two given colors.
pub fn strut(a: &Color, b: &Color) -> Diagram {
    let raw = RawDiagram::new().leg(0, a.clone()).leg(1, b.clone()).edge((0, 0), (1, 0));
    canonicalize(&raw).expect("a strut is a valid diagram")
}

/// `sum_m c_m ω_{2m}` for `2m <= trunc`, with `c_m = coef(m, b_{2m})`,
/// over the colors `colors` (which must contain `color`).
pub fn wheel_sum(
    color: &Color,
    colors: &ColorSet,
    trunc: u32,
    coef: impl Fn(u32, &Rational) -> Rational,
) -> Result<Series, Error> {
    if !colors.contains(color) {
        return Err(Error::UnknownColor(color.clone()));
    }
    let mut terms = Vec::new();
    for (i, b) in modified_bernoulli_up_to(trunc / 2).iter().enumerate() {
        let m = i as u32 + 1;
        let c = coef(m, b);
        if !c.is_zero() {
            terms.push((Monomial::single(wheel(2 * m, color)?), c));
        }
    }
    Series::from_terms(colors.clone(), trunc, terms)
}

/// `Ω_{x/p} = exp(sum_m b_{2m} / p^{2m} ω_{2m})`, truncated at `trunc`.
/// `p = 1` gives `Ω_x`.
pub fn omega_series(p: i64, color: &Color, trunc: u32) -> Result<Series, Error> {
    omega_product(&[(1, p)], color, &ColorSet::new([color.clone()])?, trunc)
}

/// `prod_i Ω_{x/p_i}^{k_i}` for the given `(k_i, p_i)`, computed as a
/// single exponential, over the color set `colors`.
pub fn omega_product(
    factors: &[(i64, i64)],
    color: &Color,
    colors: &ColorSet,
    trunc: u32,
) -> Result<Series, Error> {
    if let Some((_, p)) = factors.iter().find(|(_, p)| *p == 0) {
        return Err(Error::InvalidArgument(format!("Ω_(x/{p}) needs a nonzero p")));
    }
    wheel_sum(color, colors, trunc, |m, b| {
        factors
            .iter()
            .map(|&(k, p)| {
                let denom = BigInt::from(p).pow(2 * m);
                b * Rational::new(BigInt::from(k), denom)
            })
            .sum()
    })?
    .exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn x() -> Color {
        Color::new("x").unwrap()
    }

    #[test]
    fn wheel_shape() {
        for legs in [2, 4, 6] {
            let w = wheel(legs, &x()).unwrap();
            assert_eq!(w.leg_count(), legs);
            assert_eq!(w.trivalent_count(), legs);
            assert_eq!(w.degree(), legs);
        }
        assert!(wheel(3, &x()).is_err());
        assert!(wheel(0, &x()).is_err());
    }

    #[test]
    fn theta_shape() {
        let t = theta();
        assert_eq!(t.degree(), 1);
        assert!(t.legs_by_color().is_empty());
    }

    #[test]
    fn omega_low_degrees() {
        let one = omega_series(1, &x(), 0).unwrap();
        assert_eq!(one, Series::one(one.colors().clone(), 0));
        let o = omega_series(1, &x(), 2).unwrap();
        assert_eq!(o.len(), 2);
        assert_eq!(o.coefficient(&Monomial::single(wheel(2, &x()).unwrap())), rat(1, 48));
        let o3 = omega_series(3, &x(), 2).unwrap();
        assert_eq!(o3.coefficient(&Monomial::single(wheel(2, &x()).unwrap())), rat(1, 432));
        assert!(omega_series(0, &x(), 2).is_err());
    }

    #[test]
    fn omega_is_group_like() {
        let o = omega_series(2, &x(), 8).unwrap();
        let l = o.log().unwrap();
        assert!(l.is_primitive());
        assert_eq!(l.len(), 4);
    }
}
