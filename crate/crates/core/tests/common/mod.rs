//! Independent oracles and rate helpers shared by the integration tests and
//! the acceptance harness. Nothing here calls the library's linear algebra.
#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_crn::linalg::{Integer, IntegerMatrix, Rational, Sign};
use toric_crn::network::{random_positive_rational, RateAssignment};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_rat(rng: &mut impl Rng) -> Rational {
    random_positive_rational(rng, 30)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Null space by plain Gauss-Jordan elimination.
pub fn null_space(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][c].recip();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[row].clone();
                for (v, p) in a[r].iter_mut().zip(&pivot) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][free].clone();
            }
            v
        })
        .collect()
}

pub fn rows_of(m: &IntegerMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect()
}

/// Extreme rays of `ker(N) ∩ R^r_{≥0}` as the nonnegative kernel vectors of
/// minimal support: a support is minimal iff the kernel restricted to it is
/// one-dimensional and spanned by a vector of constant sign with that support.
pub fn brute_force_rays(n: &IntegerMatrix) -> Vec<Vec<Rational>> {
    let r = n.cols();
    let rows = rows_of(n);
    let mut out = Vec::new();
    for mask in 1u32..(1 << r) {
        let support: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| support.iter().map(|&i| row[i].clone()).collect())
            .collect();
        let ker = null_space(&sub, support.len());
        if ker.len() != 1 {
            continue;
        }
        let v = &ker[0];
        let pos = v.iter().all(Signed::is_positive);
        let neg = v.iter().all(Signed::is_negative);
        if !(pos || neg) {
            continue;
        }
        let mut full = vec![Rational::zero(); r];
        for (k, &i) in support.iter().enumerate() {
            full[i] = if pos { v[k].clone() } else { -v[k].clone() };
        }
        out.push(full);
    }
    out
}

pub fn positive_multiple(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(Zero::is_zero);
    };
    if b[i].is_zero() {
        return false;
    }
    let c = &b[i] / &a[i];
    c.is_positive() && a.iter().zip(b).all(|(x, y)| &(x * &c) == y)
}

/// Equal as sets of rays up to positive scaling.
pub fn same_rays(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    a.len() == b.len()
        && a.iter().all(|x| b.iter().any(|y| positive_multiple(x, y)))
        && b.iter().all(|y| a.iter().any(|x| positive_multiple(x, y)))
}

/// `a·x ≤ b`.
#[derive(Clone, Debug)]
struct Ineq {
    a: Vec<Rational>,
    b: Rational,
}

/// Fourier–Motzkin decision of whether some `τ` has `sign(rows·τ) = signs`.
/// The system is homogeneous, so strict signs become `≥ 1` / `≤ −1`.
pub fn fm_sign_feasible(rows: &[Vec<Rational>], signs: &[Sign]) -> bool {
    let vars = rows.first().map_or(0, Vec::len);
    let mut sys = Vec::new();
    for (row, s) in rows.iter().zip(signs) {
        let neg: Vec<Rational> = row.iter().map(|x| -x.clone()).collect();
        match s {
            Sign::Pos => sys.push(Ineq { a: neg, b: -Rational::one() }),
            Sign::Neg => sys.push(Ineq { a: row.clone(), b: -Rational::one() }),
            Sign::Zero => {
                sys.push(Ineq { a: row.clone(), b: Rational::zero() });
                sys.push(Ineq { a: neg, b: Rational::zero() });
            }
        }
    }
    for v in 0..vars {
        let (mut lo, mut hi, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for e in sys {
            if e.a[v].is_positive() {
                hi.push(e);
            } else if e.a[v].is_negative() {
                lo.push(e);
            } else {
                rest.push(e);
            }
        }
        for h in &hi {
            for l in &lo {
                let (ch, cl) = (-l.a[v].clone(), h.a[v].clone());
                let a: Vec<Rational> = h.a.iter().zip(&l.a).map(|(x, y)| x * &ch + y * &cl).collect();
                let b = &h.b * &ch + &l.b * &cl;
                if a.iter().all(Zero::is_zero) {
                    if b.is_negative() {
                        return false;
                    }
                } else {
                    rest.push(Ineq { a, b });
                }
            }
        }
        sys = rest;
    }
    sys.iter().all(|e| !e.b.is_negative())
}

/// All sign vectors in `{−,0,+}^len`.
pub fn all_sign_vectors(len: usize) -> Vec<Vec<Sign>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Sign>| {
                [Sign::Neg, Sign::Zero, Sign::Pos].into_iter().map(move |s| {
                    let mut v = p.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn rate(rates: &RateAssignment, name: &str) -> Rational {
    rates.get(name).unwrap_or_else(|| panic!("missing rate {name}")).clone()
}

/// Displayed 2-site kernel vectors in the complex order
/// `S0+E, S1+E, S2+E, ES0, ES1, S0+F, S1+F, S2+F, FS1, FS2`.
pub fn phos2_b1_b2(rates: &RateAssignment) -> (Vec<Rational>, Vec<Rational>) {
    let k = |n: &str| rate(rates, n);
    let (kon0, koff0, kcat0) = (k("kon0"), k("koff0"), k("kcat0"));
    let (kon1, koff1, kcat1) = (k("kon1"), k("koff1"), k("kcat1"));
    let (lon0, loff0, lcat0) = (k("lon0"), k("loff0"), k("lcat0"));
    let (lon1, loff1, lcat1) = (k("lon1"), k("loff1"), k("lcat1"));
    let z = Rational::zero;
    let b1 = vec![
        (&koff0 + &kcat0) * &kon1 * &kcat1 * &lon1 * &lon0 * &lcat0,
        z(),
        z(),
        &kon0 * &kon1 * &kcat1 * &lon1 * &lon0 * &lcat0,
        z(),
        z(),
        &kon0 * &kcat0 * &kon1 * &kcat1 * &lon1 * (&lcat0 + &loff0),
        z(),
        &kon0 * &kcat0 * &lon0 * &kon1 * &kcat1 * &lon1,
        z(),
    ];
    let b2 = vec![
        z(),
        &kon0 * &kcat0 * &lon0 * (&koff1 + &kcat1) * &lon1 * &lcat1,
        z(),
        z(),
        &kon0 * &kcat0 * &lon0 * &kon1 * &lon1 * &lcat1,
        z(),
        z(),
        &kon0 * &kcat0 * &lon0 * &kon1 * &kcat1 * (&lcat1 + &loff1),
        z(),
        &kon0 * &kcat0 * &lon0 * &kon1 * &kcat1 * &lon1,
    ];
    (b1, b2)
}

/// The displayed 2-site particular solution with `x1 = x8 = x9 = 1`,
/// species order `S0, S1, S2, ES0, ES1, FS1, FS2, E, F`.
pub fn phos2_x_tilde(b1: &[Rational], b2: &[Rational]) -> Vec<Rational> {
    let b = |v: &[Rational], i: usize| v[i - 1].clone();
    let r7 = b(b1, 7) / b(b1, 1);
    vec![
        q(1),
        r7.clone(),
        b(b2, 8) / b(b2, 2) * &r7,
        b(b1, 4) / b(b1, 1),
        b(b2, 5) / b(b2, 2) * &r7,
        b(b1, 9) / b(b1, 1),
        b(b2, 10) / b(b2, 2) * &r7,
        q(1),
        q(1),
    ]
}

/// Displayed one-site closed forms `(D, D1)`.
pub fn phos1_closed_forms(rates: &RateAssignment) -> (Rational, Rational) {
    let k = |n: &str| rate(rates, n);
    let d = -(k("kon0") * k("kcat0") * k("lon0"));
    let d1 = -((k("koff0") + k("kcat0")) * k("lon0") * k("lcat0"));
    (d, d1)
}

/// Displayed two-site closed forms `(D, D2, D5, D8)`.
pub fn phos2_closed_forms(rates: &RateAssignment) -> [Rational; 4] {
    let k = |n: &str| rate(rates, n);
    let base = k("kon0") * k("kcat0") * k("lon0");
    [
        &base * k("kon1") * k("kcat1") * k("lon1"),
        &base * (k("koff1") + k("kcat1")) * k("lon1") * k("lcat1"),
        &base * k("kon1") * k("lon1") * k("lcat1"),
        &base * k("kon1") * k("kcat1") * (k("lcat1") + k("loff1")),
    ]
}
