//! Exact linear feasibility by a phase-one simplex over the rationals.
//!
//! Strict sign constraints are written with a margin (`x_i ≥ margin` instead
//! of `x_i > 0`); the feasible sets involved are cones, so any positive margin
//! decides the same question.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{Rational, RationalMatrix};

/// Component sign, ordered `Neg < Zero < Pos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Neg,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Pos,
}

impl Sign {
    pub fn of(x: &Rational) -> Sign {
        if x.is_positive() {
            Sign::Pos
        } else if x.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn of_f64(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Pos
        } else if x < 0.0 {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Neg => "-",
            Sign::Zero => "0",
            Sign::Pos => "+",
        })
    }
}

pub fn sign_vector(v: &[Rational]) -> Vec<Sign> {
    v.iter().map(Sign::of).collect()
}

/// Finds `x ≥ 0` with `a·x = b`, or `None` when the system is infeasible.
///
/// Phase one of the simplex method with one artificial variable per row,
/// Bland's rule for both entering and leaving variables.
pub fn nonnegative_solution(a: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(b.len(), m, "rhs length mismatch");
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }
    let width = n + m + 1;
    let rhs = n + m;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![Rational::zero(); width];
        for j in 0..n {
            row[j] = if flip { -a[(i, j)].clone() } else { a[(i, j)].clone() };
        }
        row[n + i] = Rational::one();
        row[rhs] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    // Objective row holds reduced costs of `min Σ artificials`.
    let mut obj = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[rhs] -= &row[rhs];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so an entering column always has a
        // positive entry.
        let (row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, row, enter);
        basis[row] = enter;
    }

    if !t[m][rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for x in t[row].iter_mut() {
        if !x.is_zero() {
            *x = &*x * &inv;
        }
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (x, p) in r.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
    }
}

/// Finds `σ` with `equalities·σ = 0` and `σ_i ≥ margin` where `pattern_i = +`,
/// `σ_i ≤ −margin` where `pattern_i = −`, `σ_i = 0` where `pattern_i = 0`.
pub fn lp_feasible(
    equalities: &RationalMatrix,
    pattern: &[Sign],
    margin: &Rational,
) -> Option<Vec<Rational>> {
    let n = equalities.cols();
    assert_eq!(pattern.len(), n, "sign pattern length mismatch");
    let free: Vec<usize> = (0..n).filter(|&i| pattern[i] != Sign::Zero).collect();
    let unit = |i: usize| match pattern[i] {
        Sign::Pos => Rational::one(),
        Sign::Neg => -Rational::one(),
        Sign::Zero => Rational::zero(),
    };
    // σ_i = unit_i · (margin + u_i), u ≥ 0.
    let a = RationalMatrix::from_fn(equalities.rows(), free.len(), |r, k| {
        &equalities[(r, free[k])] * unit(free[k])
    });
    let b: Vec<Rational> = (0..equalities.rows())
        .map(|r| {
            -free
                .iter()
                .fold(Rational::zero(), |acc, &i| acc + &equalities[(r, i)] * unit(i))
                * margin
        })
        .collect();
    let u = nonnegative_solution(&a, &b)?;
    let mut sigma = vec![Rational::zero(); n];
    for (k, &i) in free.iter().enumerate() {
        sigma[i] = unit(i) * (margin + &u[k]);
    }
    Some(sigma)
}

/// Finds a free vector `τ` with `sign(rows·τ) = pattern`, using `margin` for the
/// strict components.
pub fn point_with_signs(
    rows: &RationalMatrix,
    pattern: &[Sign],
    margin: &Rational,
) -> Option<Vec<Rational>> {
    let (m, w) = (rows.rows(), rows.cols());
    assert_eq!(pattern.len(), m, "sign pattern length mismatch");
    let strict: Vec<usize> = (0..m).filter(|&i| pattern[i] != Sign::Zero).collect();
    // Variables: τ⁺ (w), τ⁻ (w), one slack per strict row.
    let cols = 2 * w + strict.len();
    let mut a = RationalMatrix::zeros(m, cols);
    let mut b = vec![Rational::zero(); m];
    for i in 0..m {
        for j in 0..w {
            a[(i, j)] = rows[(i, j)].clone();
            a[(i, w + j)] = -rows[(i, j)].clone();
        }
    }
    for (k, &i) in strict.iter().enumerate() {
        match pattern[i] {
            Sign::Pos => {
                a[(i, 2 * w + k)] = -Rational::one();
                b[i] = margin.clone();
            }
            Sign::Neg => {
                a[(i, 2 * w + k)] = Rational::one();
                b[i] = -margin.clone();
            }
            Sign::Zero => unreachable!(),
        }
    }
    let x = nonnegative_solution(&a, &b)?;
    Some((0..w).map(|j| &x[j] - &x[w + j]).collect())
}
