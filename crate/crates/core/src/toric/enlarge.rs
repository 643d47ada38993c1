use std::collections::HashMap;

use itertools::Itertools;
use num_traits::Zero;

use super::{find_certificate, ToricCertificate, ToricError};
use crate::linalg::{Integer, IntegerMatrix, Rational, RationalMatrix};

/// The extra equation `x^alpha · f_equation` (0-based equation index).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiplier {
    pub alpha: Vec<u32>,
    pub equation: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnlargedSystem {
    /// `(s + q) × m'`: the original rows, then one row per multiplier.
    pub sigma: RationalMatrix,
    /// `m' × s`; the first `m` rows are the original exponents.
    pub exponents: IntegerMatrix,
}

impl EnlargedSystem {
    pub fn added_monomials(&self, original: usize) -> Vec<Vec<Integer>> {
        (original..self.exponents.rows())
            .map(|i| self.exponents.row(i).to_vec())
            .collect()
    }
}

/// Appends `x^α·f_i` for every multiplier. Monomials not already present are
/// numbered after the existing ones in order of first occurrence, scanning
/// multipliers in the given order and each equation's monomials by index.
pub fn enlarge_system(
    sigma: &RationalMatrix,
    exponents: &IntegerMatrix,
    multipliers: &[Multiplier],
) -> Result<EnlargedSystem, ToricError> {
    let (s, m) = (sigma.rows(), sigma.cols());
    let mut monomials: Vec<Vec<Integer>> = exponents.row_vecs();
    let mut index: HashMap<Vec<Integer>, usize> =
        monomials.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(multipliers.len());
    for mult in multipliers {
        if mult.equation >= s {
            return Err(ToricError::EquationOutOfRange {
                index: mult.equation + 1,
                equations: s,
            });
        }
        if mult.alpha.len() != exponents.cols() {
            return Err(ToricError::LengthMismatch {
                got: mult.alpha.len(),
                expected: exponents.cols(),
            });
        }
        let mut row = Vec::new();
        for j in 0..m {
            let c = &sigma[(mult.equation, j)];
            if c.is_zero() {
                continue;
            }
            let e: Vec<Integer> = exponents
                .row(j)
                .iter()
                .zip(&mult.alpha)
                .map(|(y, a)| y + Integer::from(*a))
                .collect();
            let k = *index.entry(e.clone()).or_insert_with(|| {
                monomials.push(e);
                monomials.len() - 1
            });
            row.push((k, c.clone()));
        }
        rows.push(row);
    }
    let total = monomials.len();
    let mut big = RationalMatrix::zeros(s + rows.len(), total);
    for i in 0..s {
        for j in 0..m {
            big[(i, j)] = sigma[(i, j)].clone();
        }
    }
    for (r, row) in rows.into_iter().enumerate() {
        for (k, c) in row {
            big[(s + r, k)] += c;
        }
    }
    Ok(EnlargedSystem {
        sigma: big,
        exponents: IntegerMatrix::from_rows(monomials, exponents.cols()),
    })
}

/// Exponent vectors of total degree `deg` in `s` variables, `x_1` first
/// (decreasing lexicographic order of the vectors).
pub fn monomials_of_degree(s: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(s: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == s {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=deg).rev() {
            prefix.push(a);
            rec(s, deg - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if s > 0 {
        rec(s, deg, &mut Vec::new(), &mut out);
    }
    out
}

/// Result of a successful multiplier search.
#[derive(Clone, Debug)]
pub struct SearchHit {
    pub multipliers: Vec<Multiplier>,
    pub system: EnlargedSystem,
    pub certificate: ToricCertificate,
}

/// Bounded search for multipliers that make the enlarged system admit a
/// disjoint-support kernel basis. Monomials `x^α` with `1 ≤ |α| ≤ bound` are
/// tried by degree and then with `x_1` first; for each `α` every nonempty set
/// of equations is tried, smaller sets first and lexicographically within a
/// size. The first hit in this order is returned.
pub fn search_multipliers(
    sigma: &RationalMatrix,
    exponents: &IntegerMatrix,
    bound: u32,
) -> Option<SearchHit> {
    let s = sigma.rows();
    for deg in 1..=bound {
        for alpha in monomials_of_degree(exponents.cols(), deg) {
            for size in 1..=s {
                for eqs in (0..s).combinations(size) {
                    let multipliers: Vec<Multiplier> = eqs
                        .into_iter()
                        .map(|equation| Multiplier {
                            alpha: alpha.clone(),
                            equation,
                        })
                        .collect();
                    let system = enlarge_system(sigma, exponents, &multipliers)
                        .expect("generated multipliers are in range");
                    if let Ok(certificate) = find_certificate(&system.sigma, &system.exponents) {
                        return Some(SearchHit {
                            multipliers,
                            system,
                            certificate,
                        });
                    }
                }
            }
        }
    }
    None
}
