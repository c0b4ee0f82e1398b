use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::color::Color;
use crate::error::Error;
use crate::series::Rational;

/// A symmetric rational matrix indexed by colors, such as the linking
/// matrix of a framed link (one color per component).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingData {
    colors: Vec<Color>,
    rows: Vec<Vec<Rational>>,
}

impl LinkingData {
    pub fn new(colors: Vec<Color>, rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let n = colors.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch);
        }
        for i in 0..n {
            if colors[..i].contains(&colors[i]) {
                return Err(Error::DuplicateColor(colors[i].clone()));
            }
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(LinkingData { colors, rows })
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn dim(&self) -> usize {
        self.colors.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<LinkingData, Error> {
        let n = self.dim();
        let mut a = self.rows.clone();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let scale = a[col][col].recip();
            for j in 0..n {
                a[col][j] *= &scale;
                inv[col][j] *= &scale;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let da = &f * &a[col][j];
                    a[r][j] -= da;
                    let di = &f * &inv[col][j];
                    inv[r][j] -= di;
                }
            }
        }
        Ok(LinkingData {
            colors: self.colors.clone(),
            rows: inv,
        })
    }

    /// Numbers of positive and negative eigenvalues, by exact congruence
    /// diagonalization.
    pub fn signature(&self) -> (usize, usize) {
        let n = self.dim();
        let mut a = self.rows.clone();
        let (mut plus, mut minus) = (0, 0);
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                    swap_sym(&mut a, k, i);
                } else if let Some((i, j)) = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero())
                {
                    // both diagonal entries vanish, so adding j to i makes
                    // the new diagonal entry 2 a[i][j]
                    add_sym(&mut a, i, j);
                    swap_sym(&mut a, k, i);
                } else {
                    break;
                }
            }
            let p = a[k][k].clone();
            if p.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            for r in k + 1..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let f = &a[r][k] / &p;
                for j in k..n {
                    let d = &f * &a[k][j];
                    a[r][j] -= d;
                }
                for i in k..n {
                    let d = &f * &a[i][k];
                    a[i][r] -= d;
                }
            }
        }
        (plus, minus)
    }
}

fn swap_sym(a: &mut [Vec<Rational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Row and column operation: row i += row j, then column i += column j.
fn add_sym(a: &mut [Vec<Rational>], i: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let v = a[j][c].clone();
        a[i][c] += v;
    }
    for row in a.iter_mut() {
        let v = row[j].clone();
        row[i] += v;
    }
}
