use num_traits::{One, Zero};

use super::{check_positive, exponents_to_matrix, NetworkError, RateAssignment, ReactionNetwork};
use crate::linalg::{Integer, IntegerMatrix, Rational, RationalMatrix};

/// Every matrix of both ODE formulations `ẋ = Σ·Ψ(x) = N·diag(k)·φ(x)`.
#[derive(Clone, Debug)]
pub struct NetworkMatrices {
    /// Complex matrix, `m × s`; row `i` is `y_i`.
    pub y: IntegerMatrix,
    /// `A_κ`, `m × m`: `κ_ij` off the diagonal, rows sum to zero.
    pub laplacian: RationalMatrix,
    /// `Σ = Yᵗ·A_κᵗ`, `s × m`.
    pub sigma: RationalMatrix,
    /// `m × r`, −1 at the educt and +1 at the product of each reaction.
    pub incidence: IntegerMatrix,
    /// `N = Yᵗ·𝓘`, `s × r`.
    pub stoichiometric: IntegerMatrix,
    /// `𝒴 = Yᵗ·D`, `s × r`; column `j` is the educt complex of reaction `j`.
    pub educt: IntegerMatrix,
    /// `D`, `m × r`, 1 at the educt of each reaction.
    pub doubling: IntegerMatrix,
    /// Rate constants in reaction order.
    pub k: Vec<Rational>,
}

pub fn complex_matrix(net: &ReactionNetwork) -> IntegerMatrix {
    exponents_to_matrix(net.complexes(), net.num_species())
}

pub fn incidence_matrix(net: &ReactionNetwork) -> IntegerMatrix {
    let mut inc = IntegerMatrix::zeros(net.num_complexes(), net.num_reactions());
    for (j, r) in net.reactions().iter().enumerate() {
        inc[(r.educt, j)] = Integer::from(-1);
        inc[(r.product, j)] = Integer::one();
    }
    inc
}

pub fn doubling_matrix(net: &ReactionNetwork) -> IntegerMatrix {
    let mut d = IntegerMatrix::zeros(net.num_complexes(), net.num_reactions());
    for (j, r) in net.reactions().iter().enumerate() {
        d[(r.educt, j)] = Integer::one();
    }
    d
}

/// `N`, computed column by column as `y_product − y_educt`.
pub fn stoichiometric_matrix(net: &ReactionNetwork) -> IntegerMatrix {
    let s = net.num_species();
    let mut n = IntegerMatrix::zeros(s, net.num_reactions());
    for (j, r) in net.reactions().iter().enumerate() {
        for i in 0..s {
            n[(i, j)] = Integer::from(net.complexes()[r.product][i]) - Integer::from(net.complexes()[r.educt][i]);
        }
    }
    n
}

/// Educt exponent vectors as rows (`r × s`), i.e. `𝒴ᵗ`.
pub fn educt_exponents(net: &ReactionNetwork) -> IntegerMatrix {
    let rows: Vec<Vec<u32>> = net
        .reactions()
        .iter()
        .map(|r| net.complexes()[r.educt].clone())
        .collect();
    exponents_to_matrix(&rows, net.num_species())
}

pub fn build_matrices(
    net: &ReactionNetwork,
    rates: &RateAssignment,
) -> Result<NetworkMatrices, NetworkError> {
    let k = rates.vector_for(net)?;
    let m = net.num_complexes();
    let y = complex_matrix(net);
    let mut laplacian = RationalMatrix::zeros(m, m);
    for (r, kr) in net.reactions().iter().zip(&k) {
        laplacian[(r.educt, r.product)] += kr;
        laplacian[(r.educt, r.educt)] -= kr;
    }
    let sigma = &y.transpose().to_rational() * &laplacian.transpose();
    let incidence = incidence_matrix(net);
    let doubling = doubling_matrix(net);
    let yt = y.transpose();
    let stoichiometric = &yt * &incidence;
    let educt = &yt * &doubling;
    Ok(NetworkMatrices {
        y,
        laplacian,
        sigma,
        incidence,
        stoichiometric,
        educt,
        doubling,
        k,
    })
}

impl NetworkMatrices {
    pub fn num_species(&self) -> usize {
        self.y.cols()
    }

    pub fn num_complexes(&self) -> usize {
        self.y.rows()
    }

    /// `Ψ(x)`.
    pub fn psi(&self, x: &[Rational]) -> Result<Vec<Rational>, NetworkError> {
        eval_monomials(&self.y, x)
    }

    /// `φ(x)`, the educt monomial of each reaction.
    pub fn phi(&self, x: &[Rational]) -> Result<Vec<Rational>, NetworkError> {
        eval_monomials(&self.educt.transpose(), x)
    }

    /// `Σ·Ψ(x)`.
    pub fn rhs(&self, x: &[Rational]) -> Result<Vec<Rational>, NetworkError> {
        Ok(self.sigma.mul_vec(&self.psi(x)?))
    }

    /// `N·diag(k)·φ(x)`.
    pub fn rhs_flux(&self, x: &[Rational]) -> Result<Vec<Rational>, NetworkError> {
        let flux: Vec<Rational> = self
            .phi(x)?
            .into_iter()
            .zip(&self.k)
            .map(|(p, k)| p * k)
            .collect();
        Ok(self.stoichiometric.to_rational().mul_vec(&flux))
    }

    /// `A_κᵗ` assembled as `𝓘·diag(k)·Dᵗ`.
    pub fn laplacian_transpose_from_incidence(&self) -> RationalMatrix {
        let inc = self.incidence.to_rational();
        let scaled = RationalMatrix::from_fn(inc.rows(), inc.cols(), |i, j| &inc[(i, j)] * &self.k[j]);
        &scaled * &self.doubling.transpose().to_rational()
    }

    /// `Σ·Ψ(x) = 0` exactly.
    pub fn is_steady_state(&self, x: &[Rational]) -> Result<bool, NetworkError> {
        Ok(self.rhs(x)?.iter().all(Zero::is_zero))
    }
}

fn rat_pow(x: &Rational, e: &Integer) -> Rational {
    let e = i32::try_from(e).expect("exponent fits in i32");
    x.pow(e)
}

/// Monomials `x^{E_p}` for every row `E_p` of `exponents`, exactly.
pub fn eval_monomials(exponents: &IntegerMatrix, x: &[Rational]) -> Result<Vec<Rational>, NetworkError> {
    if x.len() != exponents.cols() {
        return Err(NetworkError::LengthMismatch {
            got: x.len(),
            expected: exponents.cols(),
        });
    }
    check_positive(x)?;
    Ok((0..exponents.rows())
        .map(|p| {
            exponents
                .row(p)
                .iter()
                .zip(x)
                .filter(|(e, _)| !e.is_zero())
                .fold(Rational::one(), |acc, (e, xi)| acc * rat_pow(xi, e))
        })
        .collect())
}

pub fn eval_monomials_f64(exponents: &IntegerMatrix, x: &[f64]) -> Result<Vec<f64>, NetworkError> {
    if x.len() != exponents.cols() {
        return Err(NetworkError::LengthMismatch {
            got: x.len(),
            expected: exponents.cols(),
        });
    }
    if let Some(i) = x.iter().position(|v| v.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)) {
        return Err(NetworkError::NonPositiveConcentration(i));
    }
    Ok((0..exponents.rows())
        .map(|p| {
            exponents
                .row(p)
                .iter()
                .zip(x)
                .filter(|(e, _)| !e.is_zero())
                .map(|(e, xi)| xi.powi(i32::try_from(e).expect("exponent fits in i32")))
                .product()
        })
        .collect())
}
