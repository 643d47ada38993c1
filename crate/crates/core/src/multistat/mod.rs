//! Capacity for multistationarity of toric systems: flux cone generators,
//! rate reconstruction, sign vectors of `im(Aᵗ)` and explicit witnesses.

mod cone;
mod signs;
mod witness;

use thiserror::Error;

use crate::linalg::{IntegerMatrix, Rational};
use crate::network::{graph_summary, stoichiometric_matrix, NetworkError, RateAssignment, ReactionNetwork};
use crate::text::{
    integers, rationals, MultistatSection, MultistatVerdict, RaysSection, VerificationSection,
    WitnessSection,
};
use crate::toric::{toric_analyze, AnalyzeOptions, ToricError};

pub use cone::{extreme_rays, ConeData};
pub use signs::{image_point, search_key, sign_vectors_of_image, SignCell, MAX_IMAGE_RANK};
pub use witness::{
    find_witness, reconstruct_rates, reconstruct_rates_f64, relative_residual, verify_witness,
    MultistatWitness, Verification,
};

/// Default relative tolerance for floating-point residuals.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MultistatError {
    #[error(
        "degenerate flux cone: reactions {zero_rows:?} carry no flux at any steady state, so there are no positive steady states"
    )]
    Degenerate { zero_rows: Vec<usize> },
    #[error("M·lambda is not strictly positive at coordinate {0}")]
    FluxNotPositive(usize),
    #[error("rank(A) = {rank} exceeds the supported maximum {max}; reduce the number of parameters")]
    ImageRankTooLarge { rank: usize, max: usize },
    #[error("length mismatch: got {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("Z must have one row per species: got {got}, expected {expected}")]
    ZShape { got: usize, expected: usize },
    #[error("the Condition 1 partition differs between probe rate draws, so it is not rate-independent")]
    PartitionMismatch,
    #[error("at least one probe rate assignment is required")]
    NoProbe,
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Toric(#[from] ToricError),
}

#[derive(Clone, Debug)]
pub enum MultistatOutcome {
    Witness {
        witness: Box<MultistatWitness>,
        verification: Verification,
    },
    NoCapacity,
    /// Zero rows of `M` (0-based reactions).
    Degenerate(Vec<usize>),
    NotToric(String),
}

#[derive(Clone, Debug)]
pub struct MultistatAnalysis {
    pub cone: ConeData,
    pub a: Option<IntegerMatrix>,
    pub z: IntegerMatrix,
    pub outcome: MultistatOutcome,
}

/// Decides the capacity for multistationarity with respect to `ker(Zᵗ)`
/// (`Z` defaults to the conservation basis). `A` comes from the toric
/// pipeline at each probe assignment; all probes must agree on the partition.
pub fn multistat_analyze(
    net: &ReactionNetwork,
    probes: &[RateAssignment],
    z: Option<&IntegerMatrix>,
    tol: f64,
) -> Result<MultistatAnalysis, MultistatError> {
    if probes.is_empty() {
        return Err(MultistatError::NoProbe);
    }
    let z = match z {
        Some(z) if z.rows() != net.num_species() => {
            return Err(MultistatError::ZShape {
                got: z.rows(),
                expected: net.num_species(),
            })
        }
        Some(z) => z.clone(),
        None => graph_summary(net).conservation,
    };
    let cone = extreme_rays(&stoichiometric_matrix(net));
    if cone.degenerate {
        let rows = cone.zero_rows(net.num_reactions());
        return Ok(MultistatAnalysis {
            cone,
            a: None,
            z,
            outcome: MultistatOutcome::Degenerate(rows),
        });
    }
    let mut partition: Option<Vec<Vec<usize>>> = None;
    let mut a: Option<IntegerMatrix> = None;
    for rates in probes {
        let analysis = toric_analyze(net, rates, &AnalyzeOptions::default())?;
        let Some(par) = &analysis.parametrization else {
            let reason = analysis.failure.unwrap_or_else(|| "not toric".into());
            return Ok(MultistatAnalysis {
                cone,
                a: None,
                z,
                outcome: MultistatOutcome::NotToric(reason),
            });
        };
        let p = analysis.certificate.as_ref().expect("toric").partition.clone();
        match &partition {
            Some(q) if *q != p => return Err(MultistatError::PartitionMismatch),
            Some(_) => {}
            None => {
                partition = Some(p);
                a = Some(par.a.clone());
            }
        }
    }
    let a = a.expect("at least one probe");
    let outcome = match find_witness(net, &a, &z, &cone)? {
        Some(w) => {
            let verification = verify_witness(net, &w, &z, tol);
            MultistatOutcome::Witness {
                witness: Box::new(w),
                verification,
            }
        }
        None => MultistatOutcome::NoCapacity,
    };
    Ok(MultistatAnalysis {
        cone,
        a: Some(a),
        z,
        outcome,
    })
}

impl MultistatAnalysis {
    pub fn section(&self) -> MultistatSection {
        match &self.outcome {
            MultistatOutcome::Witness {
                witness: w,
                verification: v,
            } => MultistatSection {
                verdict: MultistatVerdict::Witness,
                reason: None,
                witness: Some(WitnessSection {
                    omega: w.omega.clone(),
                    tau: rationals(&w.tau),
                    sigma: rationals(&w.sigma),
                    alpha: w.alpha_f64(),
                    x1: w.x1.clone(),
                    x2: w.x2.clone(),
                    k: w.k.clone(),
                    lambda: rationals(&w.lambda),
                }),
                verification: Some(VerificationSection {
                    residual_x1: v.residual_x1,
                    residual_x2: v.residual_x2,
                    within_tolerance: v.within_tolerance,
                    conserved: v.conserved,
                    sigma_consistent: v.sigma_consistent,
                    positive: v.positive,
                    distinct: v.distinct,
                    passed: v.passed(),
                }),
            },
            MultistatOutcome::NoCapacity => MultistatSection {
                verdict: MultistatVerdict::NoCapacity,
                reason: Some("no capacity for multistationarity: no orthant meets both im(A^t) and ker(Z^t)".into()),
                witness: None,
                verification: None,
            },
            MultistatOutcome::Degenerate(rows) => MultistatSection {
                verdict: MultistatVerdict::Degenerate,
                reason: Some(format!(
                    "degenerate flux cone: reactions {:?} vanish on every generator, so no positive steady state exists",
                    rows.iter().map(|i| i + 1).collect::<Vec<_>>()
                )),
                witness: None,
                verification: None,
            },
            MultistatOutcome::NotToric(reason) => MultistatSection {
                verdict: MultistatVerdict::NotToric,
                reason: Some(reason.clone()),
                witness: None,
                verification: None,
            },
        }
    }
}

impl ConeData {
    pub fn section(&self) -> RaysSection {
        RaysSection {
            degenerate: self.degenerate,
            rays: self.rays.iter().map(|r| integers(r)).collect(),
        }
    }
}

/// `λ = 1` as rationals, for callers building rate reconstructions.
pub fn ones(len: usize) -> Vec<Rational> {
    vec![Rational::from_integer(1.into()); len]
}
