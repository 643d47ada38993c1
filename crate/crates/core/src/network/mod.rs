//! Reaction networks under mass-action kinetics and the matrices built from
//! them.

pub mod fixtures;
mod graph;
mod matrices;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::Signed;
use rand::Rng;
use thiserror::Error;

use crate::linalg::{Integer, IntegerMatrix, Rational};

pub use graph::{graph_summary, GraphSummary, Regularity};
pub use matrices::{
    build_matrices, complex_matrix, doubling_matrix, educt_exponents, eval_monomials,
    eval_monomials_f64, incidence_matrix, stoichiometric_matrix, NetworkMatrices,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("complex {index} has {got} coefficients, expected {expected}")]
    ComplexLength {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("complex {0} appears more than once")]
    DuplicateComplex(usize),
    #[error("species name {0:?} appears more than once")]
    DuplicateSpecies(String),
    #[error("species {0:?} does not occur in any complex")]
    UnusedSpecies(String),
    #[error("reaction {index} refers to complex {complex}, but there are only {count} complexes")]
    ComplexOutOfRange {
        index: usize,
        complex: usize,
        count: usize,
    },
    #[error("reaction {0} is a self-loop")]
    SelfLoop(usize),
    #[error("rate constant name {0:?} is used by more than one reaction")]
    DuplicateRateName(String),
    #[error("no value for rate constant {0:?}")]
    MissingRate(String),
    #[error("rate constant {0:?} must be positive")]
    NonPositiveRate(String),
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("concentration vector must be strictly positive (entry {0})")]
    NonPositiveConcentration(usize),
}

/// One directed edge `educt → product` of the reaction graph. Indices are
/// 0-based positions in the complex list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Reaction {
    pub educt: usize,
    pub product: usize,
    pub rate: String,
}

impl Reaction {
    pub fn new(educt: usize, product: usize, rate: impl Into<String>) -> Self {
        Self {
            educt,
            product,
            rate: rate.into(),
        }
    }
}

/// Species, complexes (exponent vectors) and labelled reactions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReactionNetwork {
    species: Vec<String>,
    complexes: Vec<Vec<u32>>,
    reactions: Vec<Reaction>,
}

impl ReactionNetwork {
    pub fn new(
        species: Vec<String>,
        complexes: Vec<Vec<u32>>,
        reactions: Vec<Reaction>,
    ) -> Result<Self, NetworkError> {
        let s = species.len();
        let mut names = HashSet::new();
        for name in &species {
            if !names.insert(name.as_str()) {
                return Err(NetworkError::DuplicateSpecies(name.clone()));
            }
        }
        let mut seen = HashSet::new();
        for (i, c) in complexes.iter().enumerate() {
            if c.len() != s {
                return Err(NetworkError::ComplexLength {
                    index: i,
                    got: c.len(),
                    expected: s,
                });
            }
            if !seen.insert(c.clone()) {
                return Err(NetworkError::DuplicateComplex(i));
            }
        }
        for (k, name) in species.iter().enumerate() {
            if complexes.iter().all(|c| c[k] == 0) {
                return Err(NetworkError::UnusedSpecies(name.clone()));
            }
        }
        let mut rates = HashSet::new();
        for (idx, r) in reactions.iter().enumerate() {
            for c in [r.educt, r.product] {
                if c >= complexes.len() {
                    return Err(NetworkError::ComplexOutOfRange {
                        index: idx,
                        complex: c,
                        count: complexes.len(),
                    });
                }
            }
            if r.educt == r.product {
                return Err(NetworkError::SelfLoop(idx));
            }
            if !rates.insert(r.rate.as_str()) {
                return Err(NetworkError::DuplicateRateName(r.rate.clone()));
            }
        }
        Ok(Self {
            species,
            complexes,
            reactions,
        })
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn complexes(&self) -> &[Vec<u32>] {
        &self.complexes
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn num_species(&self) -> usize {
        self.species.len()
    }

    pub fn num_complexes(&self) -> usize {
        self.complexes.len()
    }

    pub fn num_reactions(&self) -> usize {
        self.reactions.len()
    }

    pub fn rate_names(&self) -> Vec<&str> {
        self.reactions.iter().map(|r| r.rate.as_str()).collect()
    }

    pub fn species_index(&self, name: &str) -> Option<usize> {
        self.species.iter().position(|s| s == name)
    }

    /// Human-readable form such as `2A + B`; the zero complex is `0`.
    pub fn complex_label(&self, i: usize) -> String {
        let terms: Vec<String> = self.complexes[i]
            .iter()
            .zip(&self.species)
            .filter(|(c, _)| **c > 0)
            .map(|(c, name)| {
                if *c == 1 {
                    name.clone()
                } else {
                    format!("{c}{name}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// Complexes as species-name multisets, for comparisons that ignore
    /// ordering.
    fn named_complex(&self, i: usize) -> BTreeMap<&str, u32> {
        self.complexes[i]
            .iter()
            .zip(&self.species)
            .filter(|(c, _)| **c > 0)
            .map(|(c, n)| (n.as_str(), *c))
            .collect()
    }

    /// Same labelled digraph up to renumbering of species, complexes and
    /// reactions.
    pub fn is_isomorphic_to(&self, other: &Self) -> bool {
        type Edge<'a> = (BTreeMap<&'a str, u32>, BTreeMap<&'a str, u32>, &'a str);
        fn edges(net: &ReactionNetwork) -> BTreeSet<Edge<'_>> {
            net.reactions
                .iter()
                .map(|r| {
                    (
                        net.named_complex(r.educt),
                        net.named_complex(r.product),
                        r.rate.as_str(),
                    )
                })
                .collect()
        }
        let names_a: BTreeSet<&String> = self.species.iter().collect();
        let names_b: BTreeSet<&String> = other.species.iter().collect();
        let cx_a: BTreeSet<_> = (0..self.num_complexes()).map(|i| self.named_complex(i)).collect();
        let cx_b: BTreeSet<_> = (0..other.num_complexes()).map(|i| other.named_complex(i)).collect();
        names_a == names_b
            && cx_a == cx_b
            && self.num_reactions() == other.num_reactions()
            && edges(self) == edges(other)
    }
}

/// Positive rational value for each rate-constant name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RateAssignment {
    values: BTreeMap<String, Rational>,
}

impl RateAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<S: Into<String>>(
        pairs: impl IntoIterator<Item = (S, Rational)>,
    ) -> Result<Self, NetworkError> {
        let mut out = Self::new();
        for (k, v) in pairs {
            out.insert(k, v)?;
        }
        Ok(out)
    }

    pub fn insert(&mut self, name: impl Into<String>, value: Rational) -> Result<(), NetworkError> {
        let name = name.into();
        if !value.is_positive() {
            return Err(NetworkError::NonPositiveRate(name));
        }
        self.values.insert(name, value);
        Ok(())
    }

    /// Every reaction of `net` gets rate 1.
    pub fn unit(net: &ReactionNetwork) -> Self {
        Self {
            values: net
                .reactions()
                .iter()
                .map(|r| (r.rate.clone(), Rational::from_integer(1.into())))
                .collect(),
        }
    }

    /// Random rates `p/q` with `1 ≤ p, q ≤ 30`.
    pub fn random(net: &ReactionNetwork, rng: &mut impl Rng) -> Self {
        Self {
            values: net
                .reactions()
                .iter()
                .map(|r| (r.rate.clone(), random_positive_rational(rng, 30)))
                .collect(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.values.get(name)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.values.iter()
    }

    /// Rates in reaction order; errors name the first missing constant.
    pub fn vector_for(&self, net: &ReactionNetwork) -> Result<Vec<Rational>, NetworkError> {
        net.reactions()
            .iter()
            .map(|r| match self.values.get(&r.rate) {
                None => Err(NetworkError::MissingRate(r.rate.clone())),
                Some(v) if !v.is_positive() => Err(NetworkError::NonPositiveRate(r.rate.clone())),
                Some(v) => Ok(v.clone()),
            })
            .collect()
    }
}

pub fn random_positive_rational(rng: &mut impl Rng, max: i64) -> Rational {
    let p: i64 = rng.gen_range(1..=max);
    let q: i64 = rng.gen_range(1..=max);
    Rational::new(Integer::from(p), Integer::from(q))
}

/// Species-by-species exponent matrix from a list of complexes (rows).
pub(crate) fn exponents_to_matrix(rows: &[Vec<u32>], s: usize) -> IntegerMatrix {
    IntegerMatrix::from_fn(rows.len(), s, |i, j| Integer::from(rows[i][j]))
}

pub(crate) fn check_positive(x: &[Rational]) -> Result<(), NetworkError> {
    match x.iter().position(|v| !v.is_positive()) {
        Some(i) => Err(NetworkError::NonPositiveConcentration(i)),
        None => Ok(()),
    }
}
