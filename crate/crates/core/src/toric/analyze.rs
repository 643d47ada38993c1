use super::{
    binomial_generators, build_condition3, build_parametrization, check_condition2,
    check_condition2_determinant, check_condition3, enlarge_system, find_certificate,
    search_multipliers, Binomial, Condition1Failure, ConditionThreeData, Multiplier,
    Parametrization, ParticularSolution, ToricCertificate, ToricError,
};
use crate::linalg::{rank, IntegerMatrix, RationalMatrix};
use crate::network::{build_matrices, RateAssignment, ReactionNetwork};
use crate::text::{
    integer_rows, one_based, rationals, BinomialEntry, MultiplierEntry,
    ParametrizationSection, ToricSection, ToricStatus,
};

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Applied before anything else; the search is skipped when nonempty.
    pub multipliers: Vec<Multiplier>,
    /// Maximal `|α|` tried when the original system fails; 0 disables search.
    pub search_bound: u32,
    /// Coordinates to set to 1 in `x̃` when possible.
    pub preferred_pins: Vec<usize>,
}

/// Everything the pipeline computed, up to the first failing stage.
#[derive(Clone, Debug)]
pub struct ToricAnalysis {
    pub multipliers: Vec<Multiplier>,
    pub original_monomials: usize,
    /// Coefficient matrix in force (enlarged when multipliers are used).
    pub sigma: RationalMatrix,
    pub exponents: IntegerMatrix,
    pub certificate: Result<ToricCertificate, Condition1Failure>,
    pub cond2: Option<bool>,
    pub cond2_determinant: Option<bool>,
    pub binomials: Vec<Binomial>,
    pub condition3: Option<ConditionThreeData>,
    pub cond3: Option<bool>,
    pub parametrization: Option<Parametrization>,
    pub failure: Option<String>,
}

impl ToricAnalysis {
    /// Conditions 1–3 hold and a parametrization was built.
    pub fn is_toric(&self) -> bool {
        self.parametrization.is_some()
    }

    pub fn section(&self) -> ToricSection {
        let cert = self.certificate.as_ref().ok();
        ToricSection {
            status: if self.is_toric() {
                ToricStatus::Toric
            } else {
                ToricStatus::Failed
            },
            reason: self.failure.clone(),
            multipliers: self
                .multipliers
                .iter()
                .map(|m| MultiplierEntry {
                    alpha: m.alpha.clone(),
                    equation: m.equation + 1,
                })
                .collect(),
            extra_monomials: (self.original_monomials..self.exponents.rows())
                .map(|i| {
                    self.exponents
                        .row(i)
                        .iter()
                        .map(|e| u32::try_from(e).expect("non-negative exponent"))
                        .collect()
                })
                .collect(),
            cond1: cert.is_some(),
            cond2: self.cond2,
            cond3: self.cond3,
            partition: cert.map(|c| one_based(&c.partition)).unwrap_or_default(),
            basis: cert
                .map(|c| c.basis.iter().map(|b| rationals(b)).collect())
                .unwrap_or_default(),
            binomials: self
                .binomials
                .iter()
                .map(|b| BinomialEntry {
                    c1: b.c1.to_string(),
                    e1: b.e1.iter().map(|e| u32::try_from(e).expect("exponent")).collect(),
                    c2: b.c2.to_string(),
                    e2: b.e2.iter().map(|e| u32::try_from(e).expect("exponent")).collect(),
                })
                .collect(),
            delta_rank: self
                .condition3
                .as_ref()
                .map(|d| rank(&d.delta.to_rational())),
            parametrization: self.parametrization.as_ref().map(|p| ParametrizationSection {
                w: p.w(),
                a: integer_rows(&p.a),
                x_tilde: p.x_tilde.exact().map(rationals),
                x_tilde_float: match &p.x_tilde {
                    ParticularSolution::Float { values, .. } => Some(values.clone()),
                    ParticularSolution::Exact(_) => None,
                },
                max_relative_residual: match &p.x_tilde {
                    ParticularSolution::Float {
                        max_relative_residual,
                        ..
                    } => Some(*max_relative_residual),
                    ParticularSolution::Exact(_) => None,
                },
            }),
        }
    }
}

/// Runs conditions 1–3 and the parametrization on `Σ` (or its enlargement).
pub fn toric_analyze(
    net: &ReactionNetwork,
    rates: &RateAssignment,
    options: &AnalyzeOptions,
) -> Result<ToricAnalysis, ToricError> {
    let mats = build_matrices(net, rates)?;
    let original_monomials = mats.num_complexes();
    let (mut sigma, mut exponents, mut multipliers) = (mats.sigma, mats.y, Vec::new());
    if !options.multipliers.is_empty() {
        let e = enlarge_system(&sigma, &exponents, &options.multipliers)?;
        sigma = e.sigma;
        exponents = e.exponents;
        multipliers = options.multipliers.clone();
    }
    let mut certificate = find_certificate(&sigma, &exponents);
    if certificate.is_err() && options.multipliers.is_empty() && options.search_bound > 0 {
        if let Some(hit) = search_multipliers(&sigma, &exponents, options.search_bound) {
            sigma = hit.system.sigma;
            exponents = hit.system.exponents;
            multipliers = hit.multipliers;
            certificate = Ok(hit.certificate);
        }
    }
    let mut out = ToricAnalysis {
        multipliers,
        original_monomials,
        sigma,
        exponents,
        certificate,
        cond2: None,
        cond2_determinant: None,
        binomials: Vec::new(),
        condition3: None,
        cond3: None,
        parametrization: None,
        failure: None,
    };
    let cert = match &out.certificate {
        Ok(c) => c.clone(),
        Err(f) => {
            out.failure = Some(format!("Condition 1 failed: {f}"));
            return Ok(out);
        }
    };
    debug_assert_eq!(cert.validate(&out.sigma), Ok(()));
    out.binomials = binomial_generators(&cert);
    let cond2 = check_condition2(&cert);
    out.cond2 = Some(cond2);
    out.cond2_determinant = Some(check_condition2_determinant(&out.sigma, &cert)?);
    if !cond2 {
        let j = cert
            .basis
            .iter()
            .position(|b| {
                b.iter().any(num_traits::Signed::is_positive)
                    && b.iter().any(num_traits::Signed::is_negative)
            })
            .expect("some block has mixed signs");
        out.failure = Some(format!(
            "Condition 2 failed: b^{} has entries of both signs, so one of its binomials has no positive zero",
            j + 1
        ));
        return Ok(out);
    }
    let data = build_condition3(&cert)?;
    let cond3 = check_condition3(&data);
    out.cond3 = Some(cond3);
    out.condition3 = Some(data.clone());
    if !cond3 {
        out.failure = Some("Condition 3 failed: the ratio vector is not orthogonal to ker(Delta)".into());
        return Ok(out);
    }
    match build_parametrization(&cert, &data, &options.preferred_pins) {
        Ok(p) => out.parametrization = Some(p),
        Err(e) => out.failure = Some(format!("parametrization failed: {e}")),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_rat;
    use crate::network::fixtures;

    #[test]
    fn phos2_is_toric() {
        let net = fixtures::phos2();
        let a = toric_analyze(&net, &RateAssignment::unit(&net), &AnalyzeOptions::default()).unwrap();
        assert!(a.is_toric());
        assert_eq!((a.cond2, a.cond3), (Some(true), Some(true)));
        assert_eq!(a.parametrization.as_ref().unwrap().w(), 3);
        let sec = a.section();
        assert_eq!(sec.partition, vec![vec![1, 4, 7, 9], vec![2, 5, 8, 10], vec![3], vec![6]]);
        assert_eq!(sec.delta_rank, Some(6));
    }

    #[test]
    fn triangle_asymmetric_reports_condition1() {
        let net = fixtures::triangle();
        let rates = fixtures::triangle_rates([1, 1, 1, 1, 1, 2].map(int_rat));
        let a = toric_analyze(&net, &rates, &AnalyzeOptions::default()).unwrap();
        assert!(!a.is_toric());
        assert!(a.failure.unwrap().starts_with("Condition 1 failed"));
    }

    #[test]
    fn shinar_feinberg_search() {
        let net = fixtures::shinar_feinberg();
        let opts = AnalyzeOptions {
            search_bound: 1,
            ..Default::default()
        };
        let a = toric_analyze(&net, &RateAssignment::unit(&net), &opts).unwrap();
        assert!(a.is_toric(), "{:?}", a.failure);
        assert_eq!(a.multipliers.len(), 4);
        assert_eq!(a.section().extra_monomials.len(), 4);
    }
}
