use num_traits::{Signed, Zero};

use super::ToricError;
use crate::linalg::{
    det_bareiss, kernel_basis, primitive_integer, rank, IntegerMatrix, Rational, RationalMatrix,
};

/// A kernel basis of `Σ` whose supports partition the monomial indices.
#[derive(Clone, Debug, PartialEq)]
pub struct ToricCertificate {
    /// Blocks `I_1..I_d`, 0-based, each sorted, ordered by smallest element.
    pub partition: Vec<Vec<usize>>,
    /// `b^j` with `supp(b^j) = I_j`, integer-primitive, positive at `min I_j`.
    pub basis: Vec<Vec<Rational>>,
    /// Exponent vectors of the monomials, one row per column of `Σ`.
    pub exponents: IntegerMatrix,
}

/// Why no disjoint-support kernel basis exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition1Failure {
    /// Every kernel vector vanishes at this coordinate.
    ZeroCoordinate { index: usize },
    /// Candidate block whose restricted kernel does not have dimension one.
    Block { block: Vec<usize>, kernel_dim: usize },
}

impl std::fmt::Display for Condition1Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::ZeroCoordinate { index } => {
                write!(f, "coordinate {} vanishes on ker(Sigma)", index + 1)
            }
            Self::Block { block, kernel_dim } => {
                let b: Vec<String> = block.iter().map(|i| (i + 1).to_string()).collect();
                write!(
                    f,
                    "block {{{}}} has a {}-dimensional restricted kernel",
                    b.join(","),
                    kernel_dim
                )
            }
        }
    }
}

fn parallel(a: &[Rational], b: &[Rational]) -> bool {
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[i].is_zero() {
        return false;
    }
    let c = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| &c * x == *y)
}

/// Dimension of `{v ∈ ker Σ : supp(v) ⊆ block}`.
fn restricted_kernel(sigma: &RationalMatrix, block: &[usize]) -> Vec<Vec<Rational>> {
    kernel_basis(&sigma.select_columns(block))
}

/// Searches for a disjoint-support kernel basis of `sigma`.
///
/// Rows of a kernel basis matrix `K` (`m × d`) are pairwise parallel exactly
/// within the blocks of such a partition, so the candidate blocks are the
/// parallelism classes of the rows of `K`; the partition exists iff there are
/// exactly `d` classes.
pub fn find_certificate(
    sigma: &RationalMatrix,
    exponents: &IntegerMatrix,
) -> Result<ToricCertificate, Condition1Failure> {
    let m = sigma.cols();
    assert_eq!(exponents.rows(), m, "one exponent vector per monomial");
    let kernel = kernel_basis(sigma);
    let d = kernel.len();
    let rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| kernel.iter().map(|v| v[i].clone()).collect())
        .collect();
    if let Some(index) = rows.iter().position(|r| r.iter().all(Zero::is_zero)) {
        return Err(Condition1Failure::ZeroCoordinate { index });
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        match blocks.iter_mut().find(|b| parallel(&rows[b[0]], &rows[i])) {
            Some(b) => b.push(i),
            None => blocks.push(vec![i]),
        }
    }
    if blocks.len() != d {
        // Some class must have a trivial restricted kernel, otherwise the
        // restricted vectors would give more than `d` independent elements.
        let (block, kernel_dim) = blocks
            .iter()
            .map(|b| (b.clone(), restricted_kernel(sigma, b).len()))
            .find(|(_, k)| *k != 1)
            .expect("more classes than kernel dimension");
        return Err(Condition1Failure::Block { block, kernel_dim });
    }
    let mut basis = Vec::with_capacity(d);
    for block in &blocks {
        let local = restricted_kernel(sigma, block);
        if local.len() != 1 || local[0].iter().any(Zero::is_zero) {
            return Err(Condition1Failure::Block {
                block: block.clone(),
                kernel_dim: local.len(),
            });
        }
        let mut v = vec![Rational::zero(); m];
        for (k, &i) in block.iter().enumerate() {
            v[i] = local[0][k].clone();
        }
        let mut ints = primitive_integer(&v);
        if ints[block[0]].is_negative() {
            ints.iter_mut().for_each(|x| *x = -x.clone());
        }
        basis.push(ints.into_iter().map(Rational::from_integer).collect());
    }
    Ok(ToricCertificate {
        partition: blocks,
        basis,
        exponents: exponents.clone(),
    })
}

impl ToricCertificate {
    pub fn num_blocks(&self) -> usize {
        self.partition.len()
    }

    pub fn num_monomials(&self) -> usize {
        self.exponents.rows()
    }

    /// Checks every structural invariant against `sigma`, exactly.
    pub fn validate(&self, sigma: &RationalMatrix) -> Result<(), String> {
        let m = sigma.cols();
        if self.num_monomials() != m || self.partition.len() != self.basis.len() {
            return Err("size mismatch".into());
        }
        let mut owner = vec![None; m];
        for (j, block) in self.partition.iter().enumerate() {
            if block.is_empty() {
                return Err(format!("block {} is empty", j + 1));
            }
            for &i in block {
                if i >= m || owner[i].is_some() {
                    return Err(format!("index {} is not covered exactly once", i + 1));
                }
                owner[i] = Some(j);
            }
        }
        if owner.iter().any(Option::is_none) {
            return Err("blocks do not cover every monomial".into());
        }
        for (j, b) in self.basis.iter().enumerate() {
            for (i, x) in b.iter().enumerate() {
                if x.is_zero() == (owner[i] == Some(j)) {
                    return Err(format!("support of b^{} differs from its block", j + 1));
                }
            }
            if sigma.mul_vec(b).iter().any(|x| !x.is_zero()) {
                return Err(format!("b^{} is not in ker(Sigma)", j + 1));
            }
        }
        if self.partition.len() != m - rank(sigma) {
            return Err("block count differs from dim ker(Sigma)".into());
        }
        Ok(())
    }
}

/// All nonzero entries of each `b^j` share one sign.
pub fn check_condition2(cert: &ToricCertificate) -> bool {
    cert.basis.iter().all(|b| {
        let mut nonzero = b.iter().filter(|x| !x.is_zero());
        let first = nonzero.next().map(Signed::is_positive);
        nonzero.all(|x| Some(x.is_positive()) == first)
    })
}

/// The same test through maximal minors: for each block pick `l_j − 1`
/// independent rows of `Σ` restricted to the block columns and require the
/// signs of the minors obtained by deleting consecutive columns to alternate.
pub fn check_condition2_determinant(
    sigma: &RationalMatrix,
    cert: &ToricCertificate,
) -> Result<bool, ToricError> {
    for block in &cert.partition {
        let l = block.len();
        if l == 1 {
            continue;
        }
        let cols = sigma.select_columns(block);
        let mut chosen: Vec<usize> = Vec::with_capacity(l - 1);
        for r in 0..cols.rows() {
            if chosen.len() == l - 1 {
                break;
            }
            let mut trial = chosen.clone();
            trial.push(r);
            if rank(&cols.select_rows(&trial)) == trial.len() {
                chosen = trial;
            }
        }
        if chosen.len() != l - 1 {
            return Err(ToricError::NoFullRankSubmatrix {
                block: block.iter().map(|i| i + 1).collect(),
            });
        }
        let sub = cols.select_rows(&chosen);
        let mut prev: Option<bool> = None;
        for i in 0..l {
            let keep: Vec<usize> = (0..l).filter(|&c| c != i).collect();
            let det = det_bareiss(&sub.select_columns(&keep)).expect("square minor");
            if det.is_zero() {
                return Ok(false);
            }
            let pos = det.is_positive();
            if prev == Some(pos) {
                return Ok(false);
            }
            prev = Some(pos);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_rat, positively_proportional, rat};
    use crate::network::{build_matrices, complex_matrix, fixtures, RateAssignment};

    fn triangle_sigma(k31: i64, k32: i64) -> (RationalMatrix, IntegerMatrix) {
        let rates = fixtures::triangle_rates([
            int_rat(1),
            int_rat(1),
            int_rat(1),
            int_rat(k31),
            int_rat(1),
            int_rat(k32),
        ]);
        let net = fixtures::triangle();
        let mats = build_matrices(&net, &rates).unwrap();
        (mats.sigma, mats.y)
    }

    #[test]
    fn triangle_symmetric_rates() {
        let (sigma, y) = triangle_sigma(1, 1);
        let cert = find_certificate(&sigma, &y).unwrap();
        assert_eq!(cert.partition, vec![vec![0, 1], vec![2]]);
        let b1: Vec<Rational> = [3, 3, 0].iter().map(|&v| int_rat(v)).collect();
        assert!(positively_proportional(&cert.basis[0], &b1));
        assert_eq!(cert.basis[1], vec![int_rat(0), int_rat(0), int_rat(1)]);
        cert.validate(&sigma).unwrap();
        assert!(check_condition2(&cert));
        assert!(check_condition2_determinant(&sigma, &cert).unwrap());
    }

    #[test]
    fn triangle_asymmetric_rates_fail() {
        let (sigma, y) = triangle_sigma(1, 2);
        assert!(find_certificate(&sigma, &y).is_err());
    }

    #[test]
    fn shinar_feinberg_fails() {
        let net = fixtures::shinar_feinberg();
        let mats = build_matrices(&net, &RateAssignment::unit(&net)).unwrap();
        assert!(find_certificate(&mats.sigma, &mats.y).is_err());
    }

    #[test]
    fn mixed_signs_fail_condition2() {
        let cert = ToricCertificate {
            partition: vec![vec![0, 1]],
            basis: vec![vec![int_rat(1), int_rat(-1)]],
            exponents: IntegerMatrix::from_i64(&[&[1], &[2]]),
        };
        assert!(!check_condition2(&cert));
        let sigma = RationalMatrix::from_i64(&[&[1, 1]]);
        assert!(!check_condition2_determinant(&sigma, &cert).unwrap());
    }

    #[test]
    fn zero_coordinate_witness() {
        // ker [[1,0],[0,0]] = span e2, so coordinate 1 is always zero.
        let sigma = RationalMatrix::from_i64(&[&[1, 0]]);
        let y = complex_matrix(&fixtures::triangle()).select_rows(&[0, 1]);
        assert_eq!(
            find_certificate(&sigma, &y).unwrap_err(),
            Condition1Failure::ZeroCoordinate { index: 0 }
        );
    }

    #[test]
    fn non_integral_kernel_is_scaled() {
        let sigma = RationalMatrix::from_rows(vec![vec![rat(1, 2), rat(-1, 3)]], 2);
        let y = IntegerMatrix::from_i64(&[&[1], &[2]]);
        let cert = find_certificate(&sigma, &y).unwrap();
        assert_eq!(cert.basis[0], vec![int_rat(2), int_rat(3)]);
    }
}
