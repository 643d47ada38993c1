use num_traits::{One, Signed, Zero};

use super::{check_condition2, ToricCertificate, ToricError};
use crate::linalg::{integer_kernel, Integer, IntegerMatrix, Rational};

/// `c1·x^{e1} − c2·x^{e2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Binomial {
    pub c1: Rational,
    pub e1: Vec<Integer>,
    pub c2: Rational,
    pub e2: Vec<Integer>,
    /// Monomial indices `(j1, j2)`, 0-based: `e1 = y_{j2}`, `e2 = y_{j1}`.
    pub pair: (usize, usize),
}

impl Binomial {
    /// Coefficient vector `c1·e_{j2} − c2·e_{j1}` over the monomials.
    pub fn coefficient_vector(&self, m: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); m];
        v[self.pair.1] = self.c1.clone();
        v[self.pair.0] = -self.c2.clone();
        v
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        &self.c1 * monomial(&self.e1, x) - &self.c2 * monomial(&self.e2, x)
    }

    /// `|c1·x^{e1} − c2·x^{e2}| / max(|c1·x^{e1}|, |c2·x^{e2}|)`.
    pub fn relative_residual_f64(&self, x: &[f64]) -> f64 {
        let a = to_f64(&self.c1) * monomial_f64(&self.e1, x);
        let b = to_f64(&self.c2) * monomial_f64(&self.e2, x);
        let scale = a.abs().max(b.abs());
        if scale == 0.0 {
            0.0
        } else {
            (a - b).abs() / scale
        }
    }
}

pub(crate) fn to_i32(e: &Integer) -> i32 {
    i32::try_from(e).expect("exponent fits in i32")
}

pub(crate) fn to_f64(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).expect("finite rational")
}

pub(crate) fn monomial(e: &[Integer], x: &[Rational]) -> Rational {
    e.iter()
        .zip(x)
        .filter(|(k, _)| !k.is_zero())
        .fold(Rational::one(), |acc, (k, xi)| acc * xi.pow(to_i32(k)))
}

pub(crate) fn monomial_f64(e: &[Integer], x: &[f64]) -> f64 {
    e.iter()
        .zip(x)
        .filter(|(k, _)| !k.is_zero())
        .map(|(k, xi)| xi.powi(to_i32(k)))
        .product()
}

/// Spanning-tree pairs: the first element of each block against each other
/// element.
pub(crate) fn tree_pairs(cert: &ToricCertificate) -> Vec<(usize, usize, usize)> {
    cert.partition
        .iter()
        .enumerate()
        .flat_map(|(j, b)| b[1..].iter().map(move |&j2| (j, b[0], j2)))
        .collect()
}

pub fn binomial_generators(cert: &ToricCertificate) -> Vec<Binomial> {
    tree_pairs(cert)
        .into_iter()
        .map(|(j, j1, j2)| Binomial {
            c1: cert.basis[j][j1].clone(),
            e1: cert.exponents.row(j2).to_vec(),
            c2: cert.basis[j][j2].clone(),
            e2: cert.exponents.row(j1).to_vec(),
            pair: (j1, j2),
        })
        .collect()
}

/// `Δ`, the positive ratios standing in for `Θ_κ`, and `U = ker_Z(Δ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionThreeData {
    /// `s × p`; column `p` is `y_{j1} − y_{j2}`.
    pub delta: IntegerMatrix,
    /// `b_{j1}/b_{j2}` per column of `delta`; `x^{Δ_p} = theta_p` at steady state.
    pub theta: Vec<Rational>,
    /// `p × q`, columns span the integer kernel of `delta`.
    pub u: IntegerMatrix,
}

pub fn build_condition3(cert: &ToricCertificate) -> Result<ConditionThreeData, ToricError> {
    if !check_condition2(cert) {
        return Err(ToricError::Condition2Failed);
    }
    let s = cert.exponents.cols();
    let pairs = tree_pairs(cert);
    let mut delta = IntegerMatrix::zeros(s, pairs.len());
    let mut theta = Vec::with_capacity(pairs.len());
    for (p, &(j, j1, j2)) in pairs.iter().enumerate() {
        for i in 0..s {
            delta[(i, p)] = &cert.exponents[(j1, i)] - &cert.exponents[(j2, i)];
        }
        theta.push(&cert.basis[j][j1] / &cert.basis[j][j2]);
    }
    let u = integer_kernel(&delta);
    Ok(ConditionThreeData { delta, theta, u })
}

/// `∏_p theta_p^{u_p} = 1` for every column `u` of `U`.
pub fn check_condition3(data: &ConditionThreeData) -> bool {
    data.theta.iter().all(Signed::is_positive)
        && (0..data.u.cols()).all(|c| monomial(&data.u.column(c), &data.theta).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_rat, rat, rank, RationalMatrix};
    use crate::network::{build_matrices, fixtures, RateAssignment};
    use crate::toric::find_certificate;

    fn data(theta: Vec<Rational>, delta: &[&[i64]]) -> ConditionThreeData {
        let delta = IntegerMatrix::from_i64(delta);
        let u = integer_kernel(&delta);
        ConditionThreeData { delta, theta, u }
    }

    #[test]
    fn triangle_binomial_and_delta() {
        let net = fixtures::triangle();
        let mats = build_matrices(&net, &RateAssignment::unit(&net)).unwrap();
        let cert = find_certificate(&mats.sigma, &mats.y).unwrap();
        let bs = binomial_generators(&cert);
        assert_eq!(bs.len(), 1);
        // 3x1² − 3x2² up to scaling
        assert_eq!(bs[0].c1, bs[0].c2);
        assert_eq!(bs[0].e1, vec![Integer::from(0), Integer::from(2)]);
        let c3 = build_condition3(&cert).unwrap();
        assert_eq!(c3.delta, IntegerMatrix::from_i64(&[&[2], &[-2]]));
        assert_eq!(c3.theta, vec![int_rat(1)]);
        assert_eq!(c3.u.cols(), 0);
        assert!(check_condition3(&c3));
    }

    #[test]
    fn generators_span_row_space_of_sigma() {
        let net = fixtures::phos2();
        let rates = RateAssignment::random(&net, &mut rand::thread_rng());
        let mats = build_matrices(&net, &rates).unwrap();
        let cert = find_certificate(&mats.sigma, &mats.y).unwrap();
        let m = mats.sigma.cols();
        let coeffs: Vec<Vec<Rational>> =
            binomial_generators(&cert).iter().map(|b| b.coefficient_vector(m)).collect();
        let beta = RationalMatrix::from_rows(coeffs, m);
        let r = rank(&mats.sigma);
        assert_eq!(rank(&beta), r);
        assert_eq!(rank(&mats.sigma.vstack(&beta)), r);
    }

    #[test]
    fn singleton_partition_is_vacuous() {
        let cert = ToricCertificate {
            partition: vec![vec![0], vec![1]],
            basis: vec![vec![int_rat(1), int_rat(0)], vec![int_rat(0), int_rat(1)]],
            exponents: IntegerMatrix::from_i64(&[&[1], &[2]]),
        };
        assert!(binomial_generators(&cert).is_empty());
        let d = build_condition3(&cert).unwrap();
        assert_eq!(d.delta.cols(), 0);
        assert!(check_condition3(&d));
    }

    #[test]
    fn constructed_condition3_cases() {
        let ok = data(vec![rat(2, 3), rat(2, 3)], &[&[1, 1]]);
        // U column is (1, -1): (2/3)/(2/3) = 1
        assert!(check_condition3(&ok));
        let bad = data(vec![int_rat(2), int_rat(3)], &[&[1, 1]]);
        assert!(!check_condition3(&bad));
    }

    #[test]
    fn mixed_signs_refuse_condition3() {
        let cert = ToricCertificate {
            partition: vec![vec![0, 1]],
            basis: vec![vec![int_rat(1), int_rat(-1)]],
            exponents: IntegerMatrix::from_i64(&[&[1], &[2]]),
        };
        assert_eq!(build_condition3(&cert), Err(ToricError::Condition2Failed));
    }
}
