use num_traits::{One, Signed, ToPrimitive, Zero};

use super::binomial::{monomial, monomial_f64, to_f64, to_i32};
use super::{
    binomial_generators, check_condition2, check_condition3, ConditionThreeData, ToricCertificate,
    ToricError,
};
use crate::linalg::{
    exact_root, hermite_normal_form, integer_complement, rank, Integer, IntegerMatrix, Rational,
};

/// Relative residual accepted for a floating-point particular solution.
pub const FLOAT_RESIDUAL_BOUND: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub enum ParticularSolution {
    Exact(Vec<Rational>),
    /// Irrational coordinates; `max_relative_residual` is the worst binomial.
    Float {
        values: Vec<f64>,
        max_relative_residual: f64,
    },
}

impl ParticularSolution {
    pub fn exact(&self) -> Option<&[Rational]> {
        match self {
            Self::Exact(v) => Some(v),
            Self::Float { .. } => None,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Self::Exact(v) => v.iter().map(to_f64).collect(),
            Self::Float { values, .. } => values.clone(),
        }
    }
}

/// `x = x̃ ∘ t^A`, `t ∈ R^w_{>0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization {
    /// `w × s`; `ker(A)` is spanned by the within-block exponent differences.
    pub a: IntegerMatrix,
    /// Coordinates fixed to 1 in `x̃`, 0-based.
    pub pins: Vec<usize>,
    pub x_tilde: ParticularSolution,
}

impl Parametrization {
    pub fn w(&self) -> usize {
        self.a.rows()
    }
}

/// `q^{1/k}` when it is rational.
pub fn rational_root(q: &Rational, k: &Integer) -> Option<Rational> {
    if !q.is_positive() || !k.is_positive() {
        return None;
    }
    let k = k.to_u32()?;
    Some(Rational::new(exact_root(q.numer(), k)?, exact_root(q.denom(), k)?))
}

fn unit_row(s: usize, c: usize) -> Vec<Integer> {
    let mut v = vec![Integer::zero(); s];
    v[c] = Integer::one();
    v
}

/// Builds `A` and a particular positive solution of `x^{Δ_p} = θ_p`.
///
/// Coordinates are pinned to 1 until the pinned unit rows complete `Δᵗ` to
/// full column rank, trying `preferred_pins` first and then `0..s` in order.
/// The square system is solved through the Hermite form of the stacked
/// matrix; each pivot needs a rational root, otherwise the same elimination
/// is rerun on logarithms in floating point.
pub fn build_parametrization(
    cert: &ToricCertificate,
    data: &ConditionThreeData,
    preferred_pins: &[usize],
) -> Result<Parametrization, ToricError> {
    if !check_condition2(cert) {
        return Err(ToricError::Condition2Failed);
    }
    if !check_condition3(data) {
        return Err(ToricError::Condition3Failed);
    }
    let s = data.delta.rows();
    let dt = data.delta.transpose();
    let a = integer_complement(&data.delta);

    let mut stacked = dt.clone();
    let mut current = rank(&stacked.to_rational());
    let mut pins = Vec::new();
    for c in preferred_pins.iter().copied().chain(0..s) {
        if current == s {
            break;
        }
        if c >= s || pins.contains(&c) {
            continue;
        }
        let trial = stacked.vstack(&IntegerMatrix::from_rows(vec![unit_row(s, c)], s));
        let r = rank(&trial.to_rational());
        if r > current {
            stacked = trial;
            current = r;
            pins.push(c);
        }
    }
    let mut theta = data.theta.clone();
    theta.extend(std::iter::repeat_n(Rational::one(), pins.len()));

    let hnf = hermite_normal_form(&stacked);
    debug_assert_eq!(hnf.pivots, (0..s).collect::<Vec<_>>());
    let rho: Vec<Rational> = (0..stacked.rows())
        .map(|i| monomial(hnf.transform.row(i), &theta))
        .collect();
    if rho[s..].iter().any(|r| !r.is_one()) {
        return Err(ToricError::Condition3Failed);
    }
    let h = &hnf.hermite;

    let mut exact = vec![Rational::one(); s];
    let mut ok = true;
    for i in (0..s).rev() {
        let mut rhs = rho[i].clone();
        for c in i + 1..s {
            if !h[(i, c)].is_zero() {
                rhs /= exact[c].pow(to_i32(&h[(i, c)]));
            }
        }
        match rational_root(&rhs, &h[(i, i)]) {
            Some(x) => exact[i] = x,
            None => {
                ok = false;
                break;
            }
        }
    }
    let x_tilde = if ok {
        ParticularSolution::Exact(exact)
    } else {
        let ln_theta: Vec<f64> = theta.iter().map(|t| to_f64(t).ln()).collect();
        let mut ln_x = vec![0.0; s];
        for i in (0..s).rev() {
            let mut rhs: f64 = hnf
                .transform
                .row(i)
                .iter()
                .zip(&ln_theta)
                .map(|(t, l)| t.to_f64().expect("finite") * l)
                .sum();
            for c in i + 1..s {
                rhs -= h[(i, c)].to_f64().expect("finite") * ln_x[c];
            }
            ln_x[i] = rhs / h[(i, i)].to_f64().expect("finite");
        }
        let values: Vec<f64> = ln_x.iter().map(|l| l.exp()).collect();
        let max_relative_residual = binomial_generators(cert)
            .iter()
            .map(|b| b.relative_residual_f64(&values))
            .fold(0.0, f64::max);
        if max_relative_residual.partial_cmp(&FLOAT_RESIDUAL_BOUND) != Some(std::cmp::Ordering::Less) {
            return Err(ToricError::FloatResidual(max_relative_residual));
        }
        ParticularSolution::Float {
            values,
            max_relative_residual,
        }
    };
    Ok(Parametrization { a, pins, x_tilde })
}

fn check_t<T>(par: &Parametrization, t: &[T], positive: impl Fn(&T) -> bool) -> Result<(), ToricError> {
    if t.len() != par.w() {
        return Err(ToricError::LengthMismatch {
            got: t.len(),
            expected: par.w(),
        });
    }
    if let Some(i) = t.iter().position(|v| !positive(v)) {
        return Err(ToricError::NonPositiveParameter(i));
    }
    Ok(())
}

/// `x_i = x̃_i · ∏_k t_k^{A_{ki}}`, exactly. Requires an exact `x̃`.
pub fn eval_parametrization(par: &Parametrization, t: &[Rational]) -> Result<Vec<Rational>, ToricError> {
    check_t(par, t, Signed::is_positive)?;
    let x = par.x_tilde.exact().ok_or(ToricError::InexactParticularSolution)?;
    Ok(x.iter()
        .enumerate()
        .map(|(i, xi)| xi * monomial(&par.a.column(i), t))
        .collect())
}

pub fn eval_parametrization_f64(par: &Parametrization, t: &[f64]) -> Result<Vec<f64>, ToricError> {
    check_t(par, t, |v| *v > 0.0)?;
    Ok(par
        .x_tilde
        .to_f64()
        .iter()
        .enumerate()
        .map(|(i, xi)| xi * monomial_f64(&par.a.column(i), t))
        .collect())
}
