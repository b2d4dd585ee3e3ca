//! Exact rational matrices and fraction-free (Bareiss) elimination.

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or `"p"`; `q` must be nonzero.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadRational(s.to_string());
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Always writes `p/q` in lowest terms with `q > 0`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // huge numerators/denominators: scale both down before dividing
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Dense square matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { dim, entries })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, scale: &Rational, other: &RationalMatrix) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        if scale.is_zero() {
            return Ok(());
        }
        for (dst, src) in self.entries.iter_mut().zip(&other.entries) {
            if !src.is_zero() {
                *dst += scale * src;
            }
        }
        Ok(())
    }

    /// `vᵀ M v`.
    pub fn quadratic_form(&self, v: &[Rational]) -> Result<Rational> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut acc = Rational::zero();
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..self.dim {
                let e = &self[(i, j)];
                if !e.is_zero() && !v[j].is_zero() {
                    row += e * &v[j];
                }
            }
            acc += &v[i] * row;
        }
        Ok(acc)
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| to_f64(&self[(i, j)])).collect())
            .collect()
    }

    /// Integer matrix `L · M` where `L` is the lcm of all entry denominators.
    /// `L > 0`, so definiteness and the signs of all minors are preserved.
    pub fn clear_denominators(&self) -> Vec<Vec<BigInt>> {
        let lcm = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let e = &self[(i, j)];
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect()
            })
            .collect()
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.dim + j]
    }
}

/// Determinant of a square integer matrix by Bareiss elimination with row
/// pivoting. Every intermediate division is exact.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Sylvester's criterion on a symmetric integer matrix.
///
/// Runs Bareiss elimination without pivoting; the `k`-th pivot is exactly the
/// `k`-th leading principal minor. Returns `Err(k)` (1-based) for the first
/// minor that is `<= 0`.
pub fn leading_minors_positive(mut a: Vec<Vec<BigInt>>) -> std::result::Result<(), usize> {
    let n = a.len();
    let mut prev = BigInt::one();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return Err(k + 1);
        }
        // symmetric input stays symmetric, so only the upper triangle is read or written
        for i in k + 1..n {
            for j in i..n {
                let t = &a[i][j] * &a[k][k] - &a[k][i] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat_int(7));
        assert_eq!(format_rational(&rat_int(7)), "7/1");
        assert_eq!(format_rational(&rat(2, -4)), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(bareiss_determinant(ints(&[&[2, 1], &[1, 2]])), BigInt::from(3));
        assert_eq!(
            bareiss_determinant(ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]])),
            BigInt::from(-5)
        );
        assert_eq!(
            bareiss_determinant(ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])),
            BigInt::zero()
        );
        assert_eq!(
            bareiss_determinant(ints(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])),
            BigInt::from(6)
        );
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(leading_minors_positive(ints(&[&[1, 0], &[0, 1]])), Ok(()));
        assert_eq!(leading_minors_positive(ints(&[&[1, 2], &[2, 1]])), Err(2));
        assert_eq!(leading_minors_positive(ints(&[&[1, 0], &[0, 0]])), Err(2));
        assert_eq!(leading_minors_positive(ints(&[&[0, 0], &[0, 1]])), Err(1));
        assert_eq!(
            leading_minors_positive(ints(&[&[4, 2, 2], &[2, 5, 3], &[2, 3, 6]])),
            Ok(())
        );
    }

    #[test]
    fn clearing_keeps_ratios() {
        let m = RationalMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 3), rat(1, 4)],
        ])
        .unwrap();
        assert_eq!(m.clear_denominators(), ints(&[&[6, 4], &[4, 3]]));
    }

    #[test]
    fn quadratic_form_matches_hand_value() {
        let m = RationalMatrix::from_rows(vec![
            vec![rat_int(0), rat(-1, 2)],
            vec![rat(-1, 2), rat_int(1)],
        ])
        .unwrap();
        assert_eq!(m.quadratic_form(&[rat_int(1), rat_int(3)]).unwrap(), rat_int(6));
    }
}
