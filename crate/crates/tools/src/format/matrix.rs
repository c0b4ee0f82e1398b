use std::fmt::Write;

use jacobi_core::Rational;

use super::{lines, parse_rational, ParseError};

/// Parses `matrix <n>` followed by `n` rows of `n` rationals.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<Rational>>, ParseError> {
    let mut it = lines(text);
    let (line, header) = it.next().ok_or_else(|| ParseError::new(1, "empty matrix file"))?;
    let n: usize = match header[..] {
        ["matrix", n] => n
            .parse()
            .map_err(|_| ParseError::new(line, format!("bad dimension {n:?}")))?,
        _ => return Err(ParseError::new(line, "expected `matrix <n>`")),
    };
    let mut rows = Vec::with_capacity(n);
    for (line, tokens) in it {
        if rows.len() == n {
            return Err(ParseError::new(line, format!("more than {n} rows")));
        }
        if tokens.len() != n {
            return Err(ParseError::new(line, format!("expected {n} entries, found {}", tokens.len())));
        }
        let row: Result<Vec<_>, _> = tokens.iter().map(|t| parse_rational(line, t)).collect();
        rows.push(row?);
    }
    if rows.len() != n {
        return Err(ParseError::new(line, format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(rows)
}

pub fn write_matrix(rows: &[Vec<Rational>]) -> String {
    let mut out = format!("matrix {}\n", rows.len());
    for row in rows {
        let cells: Vec<String> = row.iter().map(|q| q.to_string()).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}
