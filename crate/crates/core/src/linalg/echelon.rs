//! Gaussian elimination over the rationals: reduced row echelon form, rank,
//! right kernels and fraction-free determinants.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::matrix::{Integer, IntegerMatrix, Rational, RationalMatrix};
use super::LinalgError;

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub reduced: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(m: &RationalMatrix) -> RowEchelon {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for x in a.row_mut(r) {
            *x = &*x * &inv;
        }
        let pivot_row = a.row(r).to_vec();
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for (x, p) in a.row_mut(i).iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    RowEchelon { reduced: a, pivots }
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).rank()
}

/// Exact basis of the right kernel, one vector per free column of the RREF.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let ech = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.reduced[(i, f)].clone();
            }
            v
        })
        .collect()
}

/// Determinant by Bareiss elimination. Rows are first scaled to integers so
/// that every intermediate division is exact in `Z`.
pub fn det_bareiss(m: &RationalMatrix) -> Result<Rational, LinalgError> {
    let n = m.rows();
    if n != m.cols() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut scale = Integer::one();
    let mut a: Vec<Vec<Integer>> = Vec::with_capacity(n);
    for i in 0..n {
        let l = m
            .row(i)
            .iter()
            .fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
        scale *= &l;
        a.push(
            m.row(i)
                .iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect(),
        );
    }
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = Integer::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(Rational::new(sign * &a[n - 1][n - 1], scale))
}

/// Scales a rational vector to the primitive integer vector on the same ray
/// (positive multiple). The zero vector maps to itself.
pub fn primitive_integer(v: &[Rational]) -> Vec<Integer> {
    let l = v.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Integer> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(Integer::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// `true` when `a = c·b` for some rational `c > 0`.
pub fn positively_proportional(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(Zero::is_zero);
    };
    if b[i].is_zero() {
        return false;
    }
    let c = &a[i] / &b[i];
    c.is_positive() && a.iter().zip(b).all(|(x, y)| *x == &c * y)
}

pub fn integer_rows_rank(m: &IntegerMatrix) -> usize {
    rank(&m.to_rational())
}
