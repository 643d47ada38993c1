use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{image_point, sign_vectors_of_image, ConeData, MultistatError};
use crate::linalg::{lp_feasible, IntegerMatrix, Rational, Sign};
use crate::network::{educt_exponents, eval_monomials, eval_monomials_f64, stoichiometric_matrix, ReactionNetwork};

/// Two distinct positive steady states for the rates `k`, differing by `σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultistatWitness {
    pub omega: Vec<Sign>,
    pub tau: Vec<Rational>,
    /// `α = Aᵗτ`, exact.
    pub alpha: Vec<Rational>,
    /// `σ ∈ ker(Zᵗ)` with `sign(σ) = sign(α)`, exact.
    pub sigma: Vec<Rational>,
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub k: Vec<f64>,
    pub lambda: Vec<Rational>,
}

impl MultistatWitness {
    pub fn alpha_f64(&self) -> Vec<f64> {
        self.alpha.iter().map(to_f64).collect()
    }
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().expect("finite rational")
}

fn flux(cone: &ConeData, r: usize, lambda: &[Rational]) -> Result<Vec<Rational>, MultistatError> {
    if lambda.len() != cone.rays.len() {
        return Err(MultistatError::LengthMismatch {
            got: lambda.len(),
            expected: cone.rays.len(),
        });
    }
    let mut v = vec![Rational::zero(); r];
    for (ray, l) in cone.rays.iter().zip(lambda) {
        for (vi, ri) in v.iter_mut().zip(ray) {
            *vi += l * Rational::from_integer(ri.clone());
        }
    }
    if let Some(i) = v.iter().position(|x| !x.is_positive()) {
        return Err(MultistatError::FluxNotPositive(i));
    }
    Ok(v)
}

/// `k = diag(φ(x))⁻¹·M·λ`, exactly.
pub fn reconstruct_rates(
    net: &ReactionNetwork,
    x: &[Rational],
    lambda: &[Rational],
    cone: &ConeData,
) -> Result<Vec<Rational>, MultistatError> {
    let v = flux(cone, net.num_reactions(), lambda)?;
    let phi = eval_monomials(&educt_exponents(net), x)?;
    Ok(v.iter().zip(&phi).map(|(vi, p)| vi / p).collect())
}

pub fn reconstruct_rates_f64(
    net: &ReactionNetwork,
    x: &[f64],
    lambda: &[Rational],
    cone: &ConeData,
) -> Result<Vec<f64>, MultistatError> {
    let v = flux(cone, net.num_reactions(), lambda)?;
    let phi = eval_monomials_f64(&educt_exponents(net), x)?;
    Ok(v.iter().zip(&phi).map(|(vi, p)| to_f64(vi) / p).collect())
}

/// Searches the sign vectors of `im(Aᵗ)` in order for one shared by some
/// `σ ∈ ker(Zᵗ)` and builds the witness from it:
/// `x¹_i = σ_i/(e^{α_i} − 1)` (1 where `α_i = 0`), `x² = e^α ∘ x¹`,
/// `k = diag(φ(x¹))⁻¹·M·1`.
pub fn find_witness(
    net: &ReactionNetwork,
    a: &IntegerMatrix,
    z: &IntegerMatrix,
    cone: &ConeData,
) -> Result<Option<MultistatWitness>, MultistatError> {
    if cone.degenerate {
        return Err(MultistatError::Degenerate {
            zero_rows: cone.zero_rows(net.num_reactions()),
        });
    }
    let zt = z.transpose().to_rational();
    let margin = Rational::one();
    for cell in sign_vectors_of_image(a, false)? {
        let Some(sigma) = lp_feasible(&zt, &cell.signs, &margin) else {
            continue;
        };
        let alpha = image_point(a, &cell.tau);
        let x1: Vec<f64> = alpha
            .iter()
            .zip(&sigma)
            .map(|(al, si)| {
                if al.is_zero() {
                    1.0
                } else {
                    to_f64(si) / to_f64(al).exp_m1()
                }
            })
            .collect();
        let x2: Vec<f64> = x1.iter().zip(&alpha).map(|(x, al)| x * to_f64(al).exp()).collect();
        let lambda = vec![Rational::one(); cone.rays.len()];
        let k = reconstruct_rates_f64(net, &x1, &lambda, cone)?;
        return Ok(Some(MultistatWitness {
            omega: cell.signs,
            tau: cell.tau,
            alpha,
            sigma,
            x1,
            x2,
            k,
            lambda,
        }));
    }
    Ok(None)
}

/// Independent checks of a witness.
#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    /// `‖N·diag(k)·φ(x)‖∞` relative to the largest term, per state.
    pub residual_x1: f64,
    pub residual_x2: f64,
    pub within_tolerance: bool,
    /// `Zᵗσ = 0` exactly.
    pub conserved: bool,
    /// `x² − x¹` agrees with `σ` to the tolerance.
    pub sigma_consistent: bool,
    pub positive: bool,
    pub distinct: bool,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.within_tolerance && self.conserved && self.sigma_consistent && self.positive && self.distinct
    }
}

/// Relative steady-state residual of `x` under rates `k`.
pub fn relative_residual(net: &ReactionNetwork, k: &[f64], x: &[f64]) -> f64 {
    let n = stoichiometric_matrix(net);
    let phi = match eval_monomials_f64(&educt_exponents(net), x) {
        Ok(p) => p,
        Err(_) => return f64::INFINITY,
    };
    let rates: Vec<f64> = k.iter().zip(&phi).map(|(k, p)| k * p).collect();
    let mut worst = 0.0f64;
    for i in 0..n.rows() {
        let (mut sum, mut scale) = (0.0f64, 0.0f64);
        for (j, v) in rates.iter().enumerate() {
            let c = n[(i, j)].to_f64().expect("small integer");
            sum += c * v;
            scale += (c * v).abs();
        }
        if scale > 0.0 {
            worst = worst.max(sum.abs() / scale);
        }
    }
    worst
}

pub fn verify_witness(
    net: &ReactionNetwork,
    w: &MultistatWitness,
    z: &IntegerMatrix,
    tol: f64,
) -> Verification {
    let residual_x1 = relative_residual(net, &w.k, &w.x1);
    let residual_x2 = relative_residual(net, &w.k, &w.x2);
    let zt = z.transpose().to_rational();
    let conserved = zt.mul_vec(&w.sigma).iter().all(Zero::is_zero);
    let sigma_consistent = w.x1.iter().zip(&w.x2).zip(&w.sigma).all(|((a, b), s)| {
        let s = to_f64(s);
        let scale = a.abs().max(b.abs()).max(s.abs());
        ((b - a) - s).abs() <= tol * scale
    });
    let positive = w.x1.iter().chain(&w.x2).chain(&w.k).all(|v| v.is_finite() && *v > 0.0);
    let distinct = w
        .x1
        .iter()
        .zip(&w.x2)
        .any(|(a, b)| (a - b).abs() > tol * a.abs().max(b.abs()));
    Verification {
        residual_x1,
        residual_x2,
        within_tolerance: residual_x1 <= tol && residual_x2 <= tol,
        conserved,
        sigma_consistent,
        positive,
        distinct,
    }
}
