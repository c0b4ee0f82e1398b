use std::time::{Duration, Instant};

use jacobi_core::glue::{bijection_count, pair_monomials};
use jacobi_core::{ColorSet, Error, Monomial, Rational, Series};
use num_bigint::{BigInt, BigUint};

/// Diagnostics for one monomial pairing.
#[derive(Clone, Debug)]
pub struct GluingReport {
    pub left: Monomial,
    pub right: Monomial,
    /// Colors that were glued.
    pub colors: ColorSet,
    /// Leg identifications summed over: the product over glued colors of
    /// `count!`, or zero when counts differ.
    pub bijections: BigUint,
    pub output: Series,
    pub elapsed: Duration,
}

/// Pairs `left` and `right` along `x` and records what happened.
pub fn glue_report(left: &Monomial, right: &Monomial, x: &ColorSet) -> Result<GluingReport, Error> {
    let start = Instant::now();
    let terms = pair_monomials(left, right, x)?;
    let elapsed = start.elapsed();

    let mut remaining: Vec<_> = left.legs_by_color().into_keys().collect();
    remaining.extend(right.legs_by_color().into_keys());
    remaining.retain(|c| !x.contains(c));
    let colors = ColorSet::new(remaining.into_iter().collect::<std::collections::BTreeSet<_>>())?;
    let trunc = terms.keys().map(Monomial::degree).max().unwrap_or(0);
    let output = Series::from_terms(
        colors,
        trunc,
        terms.into_iter().map(|(m, n)| (m, Rational::from_integer(BigInt::from(n)))),
    )?;
    Ok(GluingReport {
        left: left.clone(),
        right: right.clone(),
        colors: x.clone(),
        bijections: bijection_count(left, right, x),
        output,
        elapsed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use jacobi_core::lmo::{strut, wheel};
    use jacobi_core::{int, Color};

    #[test]
    fn two_wheels() {
        let y = Color::new("y").unwrap();
        let w = Monomial::single(wheel(2, &y).unwrap());
        let r = glue_report(&w, &w, &ColorSet::new([y.clone()]).unwrap()).unwrap();
        assert_eq!(r.bijections, BigUint::from(2u32));
        assert_eq!(r.output.len(), 1);
        assert_eq!(r.output.terms().next().unwrap().1, &int(2));
        assert!(r.output.colors().is_empty());

        let z = Color::new("z").unwrap();
        let s = Monomial::single(strut(&y, &z));
        let r = glue_report(&s, &w, &ColorSet::new([y]).unwrap()).unwrap();
        assert_eq!(r.bijections, BigUint::from(0u32));
        assert!(r.output.is_zero());
        assert_eq!(r.output.colors().iter().map(|c| c.as_str()).collect::<Vec<_>>(), ["z"]);
    }
}
