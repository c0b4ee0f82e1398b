use std::collections::BTreeMap;
use std::fmt::Write;

use jacobi_core::{Color, ColorSet, Diagram, Monomial, Rational, Series};

use super::diagram::{parse_blocks, write_diagram, NamedDiagram};
use super::{parse_rational, ParseError};

fn parse_term(
    line: usize,
    text: &str,
    names: &BTreeMap<&str, &Diagram>,
) -> Result<(Monomial, Rational), ParseError> {
    let mut pieces = text.split('*').map(str::trim);
    let coef = parse_rational(line, pieces.next().unwrap_or(""))?;
    let mut factors = Vec::new();
    for piece in pieces {
        if piece == "1" {
            continue;
        }
        let (name, k) = match piece.split_once('^') {
            Some((name, k)) => {
                let k: u32 = k
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::new(line, format!("bad exponent in {piece:?}")))?;
                (name.trim(), k)
            }
            None => (piece, 1),
        };
        if name.is_empty() {
            return Err(ParseError::new(line, "empty factor"));
        }
        let d = names
            .get(name)
            .ok_or_else(|| ParseError::new(line, format!("unknown diagram {name:?}")))?;
        factors.push(((*d).clone(), k));
    }
    Ok((Monomial::from_factors(factors), coef))
}

/// Parses a series file. Diagram names may refer to blocks in the file
/// itself or to `external` diagrams (blocks in the file take precedence).
///
/// The file must contain a `trunc N` line and a `colors ...` line; every
/// other line outside a diagram block is a term.
pub fn parse_series(text: &str, external: &[NamedDiagram]) -> Result<Series, ParseError> {
    let (local, rest) = parse_blocks(text)?;
    let mut names: BTreeMap<&str, &Diagram> = BTreeMap::new();
    for d in external.iter().chain(local.iter()) {
        names.insert(&d.name, &d.diagram);
    }
    let mut trunc = None;
    let mut colors: Option<ColorSet> = None;
    let mut terms = Vec::new();
    for (line, tokens) in rest {
        match tokens[0] {
            "trunc" => {
                let [_, n] = tokens[..] else {
                    return Err(ParseError::new(line, "expected `trunc <N>`"));
                };
                if trunc.is_some() {
                    return Err(ParseError::new(line, "`trunc` given twice"));
                }
                let n = n
                    .parse()
                    .map_err(|_| ParseError::new(line, format!("bad truncation degree {n:?}")))?;
                trunc = Some(n);
            }
            "colors" => {
                if colors.is_some() {
                    return Err(ParseError::new(line, "`colors` given twice"));
                }
                let cs: Result<Vec<Color>, _> = tokens[1..].iter().map(|c| Color::new(*c)).collect();
                let set = cs
                    .and_then(ColorSet::new)
                    .map_err(|e| ParseError::new(line, e.to_string()))?;
                colors = Some(set);
            }
            _ => terms.push((line, tokens.join(" "))),
        }
    }
    let trunc = trunc.ok_or_else(|| ParseError::new(1, "missing `trunc <N>` line"))?;
    let colors = colors.ok_or_else(|| ParseError::new(1, "missing `colors ...` line"))?;
    let mut out = Series::zero(colors.clone(), trunc);
    for (line, text) in terms {
        let (m, q) = parse_term(line, &text, &names)?;
        let single = Series::from_terms(colors.clone(), trunc, [(m, q)])
            .map_err(|e| ParseError::new(line, e.to_string()))?;
        out = out.add(&single).expect("same color set");
    }
    Ok(out)
}

/// Serializes `s` with its diagrams inlined as blocks named `d1, d2, ...`
/// in canonical order, followed by the header and one term per line.
pub fn write_series(s: &Series) -> String {
    let mut diagrams: Vec<&Diagram> = s
        .terms()
        .flat_map(|(m, _)| m.factors().iter().map(|(d, _)| d))
        .collect();
    diagrams.sort();
    diagrams.dedup();
    let name = |d: &Diagram| format!("d{}", diagrams.binary_search(&d).unwrap() + 1);

    let mut out = String::new();
    for d in &diagrams {
        write_diagram(&mut out, &name(d), d);
    }
    writeln!(out, "trunc {}", s.trunc()).unwrap();
    out.push_str("colors");
    for c in s.colors().iter() {
        write!(out, " {c}").unwrap();
    }
    out.push('\n');
    for (m, q) in s.terms() {
        write!(out, "{q}").unwrap();
        if m.is_one() {
            out.push_str(" * 1");
        }
        for (d, k) in m.factors() {
            write!(out, " * {}", name(d)).unwrap();
            if *k > 1 {
                write!(out, "^{k}").unwrap();
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use jacobi_core::lmo::{strut, theta, wheel};
    use jacobi_core::rat;

    fn y() -> Color {
        Color::new("y").unwrap()
    }

    #[test]
    fn round_trip() {
        let colors = ColorSet::new([y()]).unwrap();
        let w = Monomial::single(wheel(2, &y()).unwrap());
        let s = Series::from_terms(
            colors,
            3,
            [
                (Monomial::one(), rat(1, 1)),
                (Monomial::single(strut(&y(), &y())), rat(-1, 2)),
                (w.pow(2), rat(3, 7)),
                (Monomial::single(theta()).mul(&w), rat(-5, 12)),
            ],
        )
        .unwrap();
        let text = write_series(&s);
        assert_eq!(parse_series(&text, &[]).unwrap(), s);
        assert_eq!(write_series(&parse_series(&text, &[]).unwrap()), text);
    }

    #[test]
    fn terms_and_errors() {
        let text = "
            diagram s
            u 0 y
            u 1 y
            e 0.0 1.0
            end
            trunc 2
            colors y
            1/2 * s^2
            -1/2*s*s   # cancels
            3 * 1
            2
        ";
        let s = parse_series(text, &[]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.constant_term(), rat(5, 1));

        let err = parse_series("trunc 1\ncolors y\n1 * q\n", &[]).unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_series("trunc 1\ncolors\n2/0\n", &[]).unwrap_err();
        assert!(err.message.contains("zero denominator"));
        let err = parse_series("colors y\n", &[]).unwrap_err();
        assert!(err.message.contains("trunc"));
        let bad_color = "diagram s\nu 0 z\nu 1 z\ne 0.0 1.0\nend\ntrunc 1\ncolors y\n1 * s\n";
        let err = parse_series(bad_color, &[]).unwrap_err();
        assert_eq!(err.line, 8);
    }
}
