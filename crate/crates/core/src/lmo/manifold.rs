use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::color::{Color, ColorSet};
use crate::diagram::Monomial;
use crate::error::Error;
use crate::glue::{bracket_c, bracket_partial};
use crate::lmo::dedekind::dedekind_symbol;
use crate::lmo::matrix::LinkingData;
use crate::lmo::wheels::{omega_product, omega_series, strut, theta};
use crate::series::{int, rat, Rational, Series};

/// The quadratic exponent `-½ sum_x l^{xx} strut(x,x) - sum_{x<y} l^{xy}
/// strut(x,y)` built from the inverse linking matrix.
pub fn strut_form(inverse: &LinkingData, colors: &ColorSet, trunc: u32) -> Result<Series, Error> {
    let cs = inverse.colors();
    let mut terms = Vec::new();
    for i in 0..cs.len() {
        for j in i..cs.len() {
            let l = inverse.entry(i, j);
            let c = if i == j { -(l * rat(1, 2)) } else { -l.clone() };
            terms.push((Monomial::single(strut(&cs[i], &cs[j])), c));
        }
    }
    Series::from_terms(colors.clone(), trunc, terms)
}

/// Formal Gaussian integration of the group-like series `z` along the
/// colors of `linking`: the partial pairing of `exp(strut_form(L^{-1}))`
/// with `z`. The result is complete to degree `trunc`, which needs `z`
/// complete to degree `4 * trunc`.
pub fn gaussian_integrate(z: &Series, linking: &LinkingData, trunc: u32) -> Result<Series, Error> {
    let x = ColorSet::new(linking.colors().iter().cloned())?;
    if let Some(c) = x.iter().find(|c| !z.colors().contains(c)) {
        return Err(Error::UnknownColor(c.clone()));
    }
    if z.terms().any(|(m, _)| m.has_strut_touching(&x)) {
        return Err(Error::StrutsPresent);
    }
    if z.trunc() < 4 * trunc {
        return Err(Error::InvalidArgument(format!(
            "integrating to degree {trunc} needs the integrand to degree {}, it has {}",
            4 * trunc,
            z.trunc()
        )));
    }
    let inverse = linking.inverse()?;
    let gauss = strut_form(&inverse, z.colors(), 3 * trunc)?.exp()?;
    let out = bracket_partial(&gauss, &z.truncate(4 * trunc), &x)?;
    debug_assert_eq!(out.trunc(), trunc);
    Ok(out)
}

/// `Z(U+)^{-e+} Z(U-)^{-e-} Z(L)` with `e±` the signature of `linking`.
pub fn normalize_lmo(
    z_link: &Series,
    z_plus: &Series,
    z_minus: &Series,
    linking: &LinkingData,
) -> Result<Series, Error> {
    if !z_plus.constant_term().is_one() || !z_minus.constant_term().is_one() {
        return Err(Error::ConstantTermNotOne);
    }
    let (e_plus, e_minus) = linking.signature();
    z_plus
        .power(-(e_plus as i64))?
        .multiply(&z_minus.power(-(e_minus as i64))?)?
        .multiply(z_link)
}

fn x() -> Color {
    Color::new("x").expect("valid color")
}

fn theta_term(coef: Rational, trunc: u32) -> Series {
    Series::monomial(ColorSet::empty(), trunc, Monomial::single(theta()), coef)
}

fn lens_correction(p: i64, q: i64, trunc: u32) -> Result<Series, Error> {
    if p < 1 {
        return Err(Error::InvalidArgument(format!("lens space needs p >= 1, got {p}")));
    }
    let s = dedekind_symbol(q, p)?;
    Ok(theta_term(-(s * rat(1, 48)), trunc))
}

/// `<Ω_x, Ω_{x/p}>_c - <Ω_x, Ω_x>_c - S(q/p)/48 θ`, complete to degree
/// `trunc`.
pub fn lens_space_primitive(p: i64, q: i64, trunc: u32) -> Result<Series, Error> {
    let correction = lens_correction(p, q, trunc)?;
    let omega = omega_series(1, &x(), 3 * trunc)?;
    let omega_p = omega_series(p, &x(), 3 * trunc)?;
    bracket_c(&omega, &omega_p)?
        .sub(&bracket_c(&omega, &omega)?)?
        .add(&correction)
}

/// `<Ω_x, Ω_x^{-1} Ω_{x/p}>_c - S(q/p)/48 θ`, complete to degree `trunc`.
///
/// Rewriting the quotient of two pairings as a single pairing relies on a
/// wheeling identity; on the level of unreduced diagrams the two agree
/// only through degree 3.
pub fn lens_space_single_bracket(p: i64, q: i64, trunc: u32) -> Result<Series, Error> {
    let correction = lens_correction(p, q, trunc)?;
    let omega = omega_series(1, &x(), 3 * trunc)?;
    let colors = omega.colors().clone();
    let ratio = omega_product(&[(-1, 1), (1, p)], &x(), &colors, 3 * trunc)?;
    bracket_c(&omega, &ratio)?.add(&correction)
}

/// Computes both lens-space expressions and fails with
/// [`Error::RouteMismatch`] if they differ.
pub fn lens_space_checked(p: i64, q: i64, trunc: u32) -> Result<Series, Error> {
    let a = lens_space_primitive(p, q, trunc)?;
    let b = lens_space_single_bracket(p, q, trunc)?;
    if a != b {
        return Err(Error::RouteMismatch);
    }
    Ok(a)
}

/// Data of a Seifert fibered space over the sphere: the integer `b`, the
/// exceptional fibers `(p_i, q_i)` and its Casson-Walker invariant, which
/// is taken as given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertInput {
    pub b: i64,
    pub fibers: Vec<(i64, i64)>,
    pub casson_walker: Rational,
}

impl SeifertInput {
    /// `e_0 = b + sum_i q_i / p_i`.
    pub fn e0(&self) -> Result<Rational, Error> {
        let mut e = int(self.b);
        for &(p, q) in &self.fibers {
            if p == 0 {
                return Err(Error::InvalidArgument("fiber with p = 0".into()));
            }
            e += rat(q, p);
        }
        Ok(e)
    }
}

/// Primitive series of a Seifert fibered space, complete to degree `trunc`:
/// `<exp(strut(x,x) / 2e_0), Ω_x^{2-n} prod_i Ω_{x/p_i}>_c - <Ω_x, Ω_x>_c
/// + ¼ (λ + (n - 2 - sum_i 1/p_i^2) / 12 e_0) θ`.
pub fn seifert_primitive(input: &SeifertInput, trunc: u32) -> Result<Series, Error> {
    let e0 = input.e0()?;
    if e0.is_zero() {
        return Err(Error::InvalidArgument("e0 = 0".into()));
    }
    let n = input.fibers.len() as i64;
    let x = x();
    let colors = ColorSet::new([x.clone()])?;
    let half = Series::monomial(
        colors.clone(),
        3 * trunc,
        Monomial::single(strut(&x, &x)),
        Rational::one() / (int(2) * &e0),
    );
    let mut factors = alloc::vec![(2 - n, 1)];
    factors.extend(input.fibers.iter().map(|&(p, _)| (1, p)));
    let right = omega_product(&factors, &x, &colors, 4 * trunc)?;
    let omega = omega_series(1, &x, 3 * trunc)?;
    let inverse_squares: Rational = input
        .fibers
        .iter()
        .map(|&(p, _)| Rational::new(BigInt::one(), BigInt::from(p) * BigInt::from(p)))
        .sum();
    let theta_coef = rat(1, 4)
        * (&input.casson_walker + (int(n - 2) - inverse_squares) / (int(12) * &e0));
    bracket_c(&half.exp()?, &right)?
        .truncate(trunc)
        .sub(&bracket_c(&omega, &omega)?)?
        .add(&theta_term(theta_coef, trunc))
}

/// Sum of two primitive series, the primitive invariant of a connected sum.
pub fn connect_sum(z1: &Series, z2: &Series) -> Result<Series, Error> {
    if !z1.is_primitive() || !z2.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    z1.add(z2)
}
