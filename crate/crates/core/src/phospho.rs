//! The n-site sequential distributive phosphorylation system: generator,
//! determinant family, explicit kernel basis and closed-form steady states.
//!
//! Numbering is 1-based in the public index helpers (matching the complex
//! numbering of the system) and 0-based everywhere else.

use std::ops::Add;

use num_traits::{Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::linalg::{
    det_bareiss, primitive_integer, rank, IntegerMatrix, Rational, RationalMatrix,
};
use crate::network::{build_matrices, NetworkError, RateAssignment, Reaction, ReactionNetwork};
use crate::text::{one_based, rationals, render_network, DeterminantEntry, PhosphoSection};
use crate::toric::{eval_parametrization, Parametrization, ParticularSolution, ToricCertificate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhosphoError {
    #[error("the number of sites must be at least 1")]
    ZeroSites,
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// Index translation between the system's 1-based bookkeeping and
/// matrix positions.
pub mod index {
    /// Complex `S_{j-1} + E`, `j = 1..=n+1`.
    pub fn s_plus_e(_n: usize, j: usize) -> usize {
        j
    }
    /// Complex `ES_{j-1}`, `j = 1..=n`.
    pub fn es(n: usize, j: usize) -> usize {
        n + 1 + j
    }
    /// Complex `S_j + F`, `j = 0..=n`.
    pub fn s_plus_f(n: usize, j: usize) -> usize {
        2 * n + 2 + j
    }
    /// Complex `FS_j`, `j = 1..=n`.
    pub fn fs(n: usize, j: usize) -> usize {
        3 * n + 2 + j
    }
    /// `ℓ(j)` for the three kinds `0: j`, `1: n+j+1`, `2: 2n+j+2`.
    pub fn ell(n: usize, kind: usize, j: usize) -> usize {
        match kind {
            0 => j,
            1 => n + j + 1,
            2 => 2 * n + j + 2,
            _ => panic!("kind must be 0, 1 or 2"),
        }
    }
    /// Species `s_i` (`S_i`), `i = 0..=n`.
    pub fn species_s(_n: usize, i: usize) -> usize {
        i + 1
    }
    /// Species `c_i` (`ES_i`), `i = 0..n`.
    pub fn species_c(n: usize, i: usize) -> usize {
        n + 2 + i
    }
    /// Species `d_i` (`FS_i`), `i = 1..=n`.
    pub fn species_d(n: usize, i: usize) -> usize {
        2 * n + 1 + i
    }
    pub fn species_e(n: usize) -> usize {
        3 * n + 2
    }
    pub fn species_f(n: usize) -> usize {
        3 * n + 3
    }
    /// Column of `Σ'_n` (1-based) holding original complex `k`, if kept.
    pub fn sigma_prime_column(n: usize, k: usize) -> Option<usize> {
        if k == n + 1 || k == 2 * n + 2 {
            None
        } else if k <= n {
            Some(k)
        } else if k <= 2 * n + 1 {
            Some(k - 1)
        } else {
            Some(k - 2)
        }
    }
}

pub fn rate_names(n: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(6 * n);
    for side in [["kon", "koff", "kcat"], ["lon", "loff", "lcat"]] {
        for j in 0..n {
            for p in side {
                out.push(format!("{p}{j}"));
            }
        }
    }
    out
}

/// The canonical network: species `S_0..S_n, ES_0..ES_{n-1}, FS_1..FS_n, E, F`.
pub fn phospho_network(n: usize) -> Result<ReactionNetwork, PhosphoError> {
    if n == 0 {
        return Err(PhosphoError::ZeroSites);
    }
    let s = 3 * n + 3;
    let mut species = Vec::with_capacity(s);
    species.extend((0..=n).map(|i| format!("S{i}")));
    species.extend((0..n).map(|i| format!("ES{i}")));
    species.extend((1..=n).map(|i| format!("FS{i}")));
    species.push("E".into());
    species.push("F".into());

    let unit = |sp: &[usize]| {
        let mut v = vec![0u32; s];
        for &i in sp {
            v[i - 1] += 1;
        }
        v
    };
    let mut complexes = vec![Vec::new(); 4 * n + 2];
    for j in 1..=n + 1 {
        complexes[index::s_plus_e(n, j) - 1] = unit(&[index::species_s(n, j - 1), index::species_e(n)]);
    }
    for j in 1..=n {
        complexes[index::es(n, j) - 1] = unit(&[index::species_c(n, j - 1)]);
    }
    for j in 0..=n {
        complexes[index::s_plus_f(n, j) - 1] = unit(&[index::species_s(n, j), index::species_f(n)]);
    }
    for j in 1..=n {
        complexes[index::fs(n, j) - 1] = unit(&[index::species_d(n, j)]);
    }

    let mut reactions = Vec::with_capacity(6 * n);
    for j in 0..n {
        let (a, b, c) = (index::s_plus_e(n, j + 1) - 1, index::es(n, j + 1) - 1, index::s_plus_e(n, j + 2) - 1);
        reactions.push(Reaction::new(a, b, format!("kon{j}")));
        reactions.push(Reaction::new(b, a, format!("koff{j}")));
        reactions.push(Reaction::new(b, c, format!("kcat{j}")));
    }
    for j in 0..n {
        let (a, b, c) = (index::s_plus_f(n, j + 1) - 1, index::fs(n, j + 1) - 1, index::s_plus_f(n, j) - 1);
        reactions.push(Reaction::new(a, b, format!("lon{j}")));
        reactions.push(Reaction::new(b, a, format!("loff{j}")));
        reactions.push(Reaction::new(b, c, format!("lcat{j}")));
    }
    Ok(ReactionNetwork::new(species, complexes, reactions)?)
}

#[derive(Clone, Debug)]
pub struct PhosphoSystem {
    pub n: usize,
    pub net: ReactionNetwork,
    pub rates: RateAssignment,
}

/// `D` and `D_ℓ` for `ℓ ∈ {j, n+j+1, 2n+j+2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhosphoDeterminants {
    pub d: Rational,
    /// `(ℓ, D_ℓ)`, 1-based `ℓ`, ordered by `ℓ`.
    pub family: Vec<(usize, Rational)>,
}

impl PhosphoDeterminants {
    pub fn get(&self, ell: usize) -> Option<&Rational> {
        self.family.iter().find(|(l, _)| *l == ell).map(|(_, v)| v)
    }

    /// All `3n + 1` values nonzero with one common sign.
    pub fn sign_constant(&self) -> bool {
        let pos = self.d.is_positive();
        !self.d.is_zero()
            && self
                .family
                .iter()
                .all(|(_, v)| !v.is_zero() && v.is_positive() == pos)
    }
}

/// `Σ_n`, `Σ'_n` and `Σ''_n`.
#[derive(Clone, Debug)]
pub struct SigmaBlocks {
    pub sigma: RationalMatrix,
    pub sigma_prime: RationalMatrix,
    pub sigma_double_prime: RationalMatrix,
}

impl PhosphoSystem {
    pub fn new(n: usize, rates: RateAssignment) -> Result<Self, PhosphoError> {
        let net = phospho_network(n)?;
        rates.vector_for(&net)?;
        Ok(Self { n, net, rates })
    }

    pub fn unit(n: usize) -> Result<Self, PhosphoError> {
        let net = phospho_network(n)?;
        let rates = RateAssignment::unit(&net);
        Ok(Self { n, net, rates })
    }

    pub fn random(n: usize, rng: &mut impl Rng) -> Result<Self, PhosphoError> {
        let net = phospho_network(n)?;
        let rates = RateAssignment::random(&net, rng);
        Ok(Self { n, net, rates })
    }

    fn rate(&self, name: &str) -> &Rational {
        self.rates.get(name).expect("rates cover the network")
    }

    /// The `(n−1)`-site system with every rate index shifted down by one.
    pub fn shifted(&self) -> Result<Self, PhosphoError> {
        let n = self.n - 1;
        let mut rates = RateAssignment::new();
        for p in ["kon", "koff", "kcat", "lon", "loff", "lcat"] {
            for j in 0..n {
                rates
                    .insert(format!("{p}{j}"), self.rate(&format!("{p}{}", j + 1)).clone())
                    .expect("rates are positive");
            }
        }
        Self::new(n, rates)
    }

    pub fn sigma_blocks(&self) -> SigmaBlocks {
        let n = self.n;
        let sigma = build_matrices(&self.net, &self.rates)
            .expect("rates cover the network")
            .sigma;
        let rows: Vec<usize> = (1..3 * n + 1).collect();
        let cols: Vec<usize> = (0..4 * n + 2).filter(|&c| c != n && c != 2 * n + 1).collect();
        let sigma_prime = sigma.select_rows(&rows).select_columns(&cols);
        let sigma_double_prime = sigma_prime.select_columns(&(0..3 * n).collect::<Vec<_>>());
        SigmaBlocks {
            sigma,
            sigma_prime,
            sigma_double_prime,
        }
    }

    /// The `ℓ` values of block `j`, 1-based, in increasing order.
    pub fn ells(&self, j: usize) -> [usize; 3] {
        [0, 1, 2].map(|kind| index::ell(self.n, kind, j))
    }

    pub fn determinants(&self) -> PhosphoDeterminants {
        let n = self.n;
        let blocks = self.sigma_blocks();
        let sdp = &blocks.sigma_double_prime;
        let d = det_bareiss(sdp).expect("square");
        let mut family = Vec::with_capacity(3 * n);
        for j in 1..=n {
            let col = index::sigma_prime_column(n, index::fs(n, j)).expect("kept column") - 1;
            let replacement = blocks.sigma_prime.column(col);
            for ell in self.ells(j) {
                let pos = index::sigma_prime_column(n, ell).expect("kept column") - 1;
                let mut m = sdp.clone();
                for (r, v) in replacement.iter().enumerate() {
                    m[(r, pos)] = v.clone();
                }
                family.push((ell, -det_bareiss(&m).expect("square")));
            }
        }
        family.sort_by_key(|(l, _)| *l);
        PhosphoDeterminants { d, family }
    }

    /// Blocks `I_j = {j, n+j+1, 2n+j+2, 3n+j+2}` followed by `{n+1}`, `{2n+2}`;
    /// 0-based.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut out: Vec<Vec<usize>> = (1..=n)
            .map(|j| {
                let [a, b, c] = self.ells(j);
                vec![a - 1, b - 1, c - 1, index::fs(n, j) - 1]
            })
            .collect();
        out.push(vec![n]);
        out.push(vec![2 * n + 1]);
        out
    }

    /// `b^1..b^n` with raw determinant entries, then `e_{n+1}`, `e_{2n+2}`.
    pub fn raw_basis(&self, dets: &PhosphoDeterminants) -> Vec<Vec<Rational>> {
        let n = self.n;
        let m = 4 * n + 2;
        let mut out = Vec::with_capacity(n + 2);
        for j in 1..=n {
            let mut b = vec![Rational::zero(); m];
            for ell in self.ells(j) {
                b[ell - 1] = dets.get(ell).expect("determinant computed").clone();
            }
            b[index::fs(n, j) - 1] = dets.d.clone();
            out.push(b);
        }
        for k in [n, 2 * n + 1] {
            let mut e = vec![Rational::zero(); m];
            e[k] = Rational::from_integer(1.into());
            out.push(e);
        }
        out
    }

    /// The explicit basis, normalized like the certificates of
    /// `find_certificate`.
    pub fn canonical_certificate(&self) -> ToricCertificate {
        let dets = self.determinants();
        let basis = self
            .raw_basis(&dets)
            .into_iter()
            .map(|b| {
                let mut ints = primitive_integer(&b);
                let first = ints.iter().position(|x| !x.is_zero()).expect("nonzero vector");
                if ints[first].is_negative() {
                    ints.iter_mut().for_each(|x| *x = -x.clone());
                }
                ints.into_iter().map(Rational::from_integer).collect()
            })
            .collect();
        ToricCertificate {
            partition: self.partition(),
            basis,
            exponents: crate::network::complex_matrix(&self.net),
        }
    }

    /// Deleting any two columns of `Σ'_n` indexed in `I_j` leaves rank `< 3n`.
    pub fn vanishing_minors_check(&self, j: usize) -> bool {
        assert!((1..=self.n).contains(&j), "block index out of range");
        let n = self.n;
        let sp = self.sigma_blocks().sigma_prime;
        let mut cols: Vec<usize> = self.ells(j).to_vec();
        cols.push(index::fs(n, j));
        let cols: Vec<usize> = cols
            .into_iter()
            .map(|k| index::sigma_prime_column(n, k).expect("kept column") - 1)
            .collect();
        for a in 0..cols.len() {
            for b in a + 1..cols.len() {
                let keep: Vec<usize> = (0..sp.cols()).filter(|&c| c != cols[a] && c != cols[b]).collect();
                if rank(&sp.select_columns(&keep)) >= 3 * n {
                    return false;
                }
            }
        }
        true
    }

    /// `s_0 = e = f = 1`, `s_j = s_{j−1}·D_{2n+j+2}/D_j`,
    /// `c_{j−1} = s_{j−1}·D_{n+j+1}/D_j`, `d_j = s_{j−1}·D/D_j`.
    pub fn explicit_steady_state(&self) -> Vec<Rational> {
        let n = self.n;
        let dets = self.determinants();
        let one = Rational::from_integer(1.into());
        let mut x = vec![Rational::zero(); 3 * n + 3];
        x[index::species_s(n, 0) - 1] = one.clone();
        x[index::species_e(n) - 1] = one.clone();
        x[index::species_f(n) - 1] = one;
        for j in 1..=n {
            let [a, b, c] = self.ells(j);
            let dj = dets.get(a).expect("D_j");
            let prev = x[index::species_s(n, j - 1) - 1].clone();
            x[index::species_s(n, j) - 1] = &prev * dets.get(c).expect("D_{2n+j+2}") / dj;
            x[index::species_c(n, j - 1) - 1] = &prev * dets.get(b).expect("D_{n+j+1}") / dj;
            x[index::species_d(n, j) - 1] = &prev * &dets.d / dj;
        }
        x
    }

    /// Exponent matrix of the three-parameter map, `3 × (3n+3)`.
    pub fn parametrization_matrix(&self) -> IntegerMatrix {
        let n = self.n;
        let mut a = IntegerMatrix::zeros(3, 3 * n + 3);
        let mut set = |col: usize, v: [i64; 3]| {
            for (r, x) in v.into_iter().enumerate() {
                a[(r, col - 1)] = x.into();
            }
        };
        for i in 0..=n {
            set(index::species_s(n, i), [i as i64, 0, 1]);
        }
        for i in 0..n {
            set(index::species_c(n, i), [i as i64 + 1, 1, 1]);
        }
        for i in 1..=n {
            set(index::species_d(n, i), [i as i64, 1, 1]);
        }
        set(index::species_e(n), [1, 1, 0]);
        set(index::species_f(n), [0, 1, 0]);
        a
    }

    pub fn parametrization(&self) -> Parametrization {
        let n = self.n;
        Parametrization {
            a: self.parametrization_matrix(),
            pins: vec![index::species_s(n, 0) - 1, index::species_e(n) - 1, index::species_f(n) - 1],
            x_tilde: ParticularSolution::Exact(self.explicit_steady_state()),
        }
    }

    /// `(t_1, t_2, t_3) ↦ x̃ ∘ t^A`.
    pub fn phospho_parametrization(&self, t: &[Rational; 3]) -> Vec<Rational> {
        eval_parametrization(&self.parametrization(), t).expect("t must be positive")
    }

    pub fn section(&self, t: &[Rational; 3]) -> PhosphoSection {
        let dets = self.determinants();
        PhosphoSection {
            n: self.n,
            network: render_network(&self.net),
            partition: one_based(&self.partition()),
            basis: self.raw_basis(&dets).iter().map(|b| rationals(b)).collect(),
            d: dets.d.to_string(),
            determinants: dets
                .family
                .iter()
                .map(|(l, v)| DeterminantEntry {
                    index: *l,
                    value: v.to_string(),
                })
                .collect(),
            x_tilde: rationals(&self.explicit_steady_state()),
            sample_t: rationals(t),
            sample_x: rationals(&self.phospho_parametrization(t)),
        }
    }
}

/// `(E_tot, F_tot, S_tot)`: `e + Σc`, `f + Σd`, `Σs + Σc + Σd`.
pub fn conservation_values<T>(n: usize, x: &[T]) -> (T, T, T)
where
    T: Clone + Zero + Add<Output = T>,
{
    assert_eq!(x.len(), 3 * n + 3, "phospho state has 3n+3 coordinates");
    let sum = |r: std::ops::Range<usize>| r.fold(T::zero(), |acc, i| acc + x[i].clone());
    let s = sum(0..n + 1);
    let c = sum(n + 1..2 * n + 1);
    let d = sum(2 * n + 1..3 * n + 1);
    let e = x[3 * n + 1].clone();
    let f = x[3 * n + 2].clone();
    (e + c.clone(), f + d.clone(), s + c + d)
}
