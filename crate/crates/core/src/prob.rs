use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::stateset::{Relation, StateSet};

pub type Prob = BigRational;

pub fn zero() -> Prob {
    Prob::zero()
}

pub fn one() -> Prob {
    Prob::one()
}

pub fn ratio(n: i64, d: i64) -> Prob {
    Prob::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `3/4`, `1`, or a finite decimal such as `0.25`.
pub fn parse_prob(s: &str) -> Option<Prob> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Prob::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int = if int.is_empty() { "0" } else { int };
        if !int.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits: BigInt = format!("{int}{frac}").parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Some(Prob::new(digits, den));
    }
    if !s.bytes().all(|b| b.is_ascii_digit()) || s.is_empty() {
        return None;
    }
    s.parse::<BigInt>().ok().map(Prob::from_integer)
}

pub fn to_f64(p: &Prob) -> f64 {
    p.to_f64().unwrap_or(f64::NAN)
}

/// Dense square matrix of exact probabilities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: Vec<Vec<Prob>>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Matrix {
        Matrix {
            rows: vec![vec![zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.rows[i][i] = one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Prob>>) -> Matrix {
        Matrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Prob {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Prob) {
        self.rows[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Prob] {
        &self.rows[i]
    }

    pub fn row_sum(&self, i: usize) -> Prob {
        self.rows[i].iter().fold(zero(), |acc, x| acc + x)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Positive-entry relation.
    pub fn support(&self) -> Relation {
        Relation::from_rows(
            self.rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(_, x)| x.is_positive())
                        .map(|(j, _)| j)
                        .collect()
                })
                .collect(),
        )
    }
}

/// Probability weights indexed by state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Distribution {
    pub weights: Vec<Prob>,
}

impl Distribution {
    pub fn dirac(n: usize, q: usize) -> Distribution {
        let mut weights = vec![zero(); n];
        weights[q] = one();
        Distribution { weights }
    }

    pub fn uniform(n: usize, on: StateSet) -> Distribution {
        let k = on.len() as i64;
        let weights = (0..n)
            .map(|q| if on.contains(q) { ratio(1, k) } else { zero() })
            .collect();
        Distribution { weights }
    }

    pub fn support(&self) -> StateSet {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_positive())
            .map(|(q, _)| q)
            .collect()
    }

    pub fn total(&self) -> Prob {
        self.weights.iter().fold(zero(), |acc, x| acc + x)
    }

    pub fn mass(&self, s: StateSet) -> Prob {
        s.iter().fold(zero(), |acc, q| acc + &self.weights[q])
    }

    pub fn step(&self, m: &Matrix) -> Distribution {
        let n = self.weights.len();
        let mut out = vec![zero(); n];
        for (i, w) in self.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (j, x) in m.row(i).iter().enumerate() {
                if !x.is_zero() {
                    out[j] += w * x;
                }
            }
        }
        Distribution { weights: out }
    }
}

/// Solves `(I - a) x = b` exactly for several right-hand sides.
///
/// Returns `None` when the system is singular.
pub fn solve_transient(a: &[Vec<Prob>], rhs: &[Vec<Prob>]) -> Option<Vec<Vec<Prob>>> {
    let n = a.len();
    let k = rhs.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Prob>> = (0..n)
        .map(|i| {
            let mut row: Vec<Prob> = (0..n)
                .map(|j| {
                    let id = if i == j { one() } else { zero() };
                    id - &a[i][j]
                })
                .collect();
            row.extend(rhs[i].iter().cloned());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = one() / &m[col][col];
        for x in m[col].iter_mut().skip(col) {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..n + k {
                let d = &f * &m[col][c];
                m[r][c] -= d;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!(parse_prob("1/2"), Some(ratio(1, 2)));
        assert_eq!(parse_prob("1"), Some(one()));
        assert_eq!(parse_prob("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_prob(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_prob("2/4"), Some(ratio(1, 2)));
        assert_eq!(parse_prob("1/0"), None);
        assert_eq!(parse_prob("-1"), None);
        assert_eq!(parse_prob("x"), None);
    }

    #[test]
    fn gaussian_elimination() {
        // x = 1/2 x + 1/2 y + 0, y = 1/2 y + 1/2
        let a = vec![
            vec![ratio(1, 2), ratio(1, 2)],
            vec![zero(), ratio(1, 2)],
        ];
        let b = vec![vec![zero()], vec![ratio(1, 2)]];
        let x = solve_transient(&a, &b).unwrap();
        assert_eq!(x[0][0], one());
        assert_eq!(x[1][0], one());
    }

    #[test]
    fn singular_system_detected() {
        let a = vec![vec![one()]];
        assert!(solve_transient(&a, &[vec![zero()]]).is_none());
    }
}
