//! Integer lattices: row Hermite normal form with a unimodular transform,
//! saturated integer kernels and orthogonal complements.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::matrix::{Integer, IntegerMatrix};

/// `transform · input = hermite`, with `transform` unimodular and `hermite`
/// in row echelon form: positive pivots, entries above each pivot reduced
/// into `[0, pivot)`, zero rows last.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub hermite: IntegerMatrix,
    pub transform: IntegerMatrix,
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn ext_gcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Replaces rows `(r, i)` by `(s·r + t·i, -(b/g)·r + (a/g)·i)`.
fn combine(m: &mut IntegerMatrix, r: usize, i: usize, coeffs: [&Integer; 4]) {
    let [s, t, u, v] = coeffs;
    for j in 0..m.cols() {
        let x = m[(r, j)].clone();
        let y = m[(i, j)].clone();
        if x.is_zero() && y.is_zero() {
            continue;
        }
        m[(r, j)] = s * &x + t * &y;
        m[(i, j)] = u * &x + v * &y;
    }
}

fn axpy_row(m: &mut IntegerMatrix, target: usize, factor: &Integer, source: usize) {
    if factor.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let s = m[(source, j)].clone();
        if !s.is_zero() {
            m[(target, j)] -= factor * s;
        }
    }
}

pub fn hermite_normal_form(input: &IntegerMatrix) -> HermiteForm {
    let mut h = input.clone();
    let rows = h.rows();
    let mut u = IntegerMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h.cols() {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let (a, b) = (h[(r, c)].clone(), h[(i, c)].clone());
            let (g, s, t) = ext_gcd(&a, &b);
            let (ug, vg) = (-(&b / &g), &a / &g);
            combine(&mut h, r, i, [&s, &t, &ug, &vg]);
            combine(&mut u, r, i, [&s, &t, &ug, &vg]);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            for j in 0..h.cols() {
                h[(r, j)] = -h[(r, j)].clone();
            }
            for j in 0..rows {
                u[(r, j)] = -u[(r, j)].clone();
            }
        }
        let p = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&p);
            axpy_row(&mut h, i, &q, r);
            axpy_row(&mut u, i, &q, r);
        }
        pivots.push(c);
        r += 1;
    }
    HermiteForm {
        hermite: h,
        transform: u,
        pivots,
    }
}

/// Lattice basis of `ker(M) ∩ Z^n`, returned as the columns of an `n × k`
/// matrix in Hermite-reduced form. Every column is primitive and the lattice
/// they generate is saturated.
pub fn integer_kernel(m: &IntegerMatrix) -> IntegerMatrix {
    let n = m.cols();
    let hnf = hermite_normal_form(&m.transpose());
    let rank = hnf.rank();
    let kernel_rows: Vec<Vec<Integer>> = (rank..n).map(|i| hnf.transform.row(i).to_vec()).collect();
    if kernel_rows.is_empty() {
        return IntegerMatrix::zeros(n, 0);
    }
    let k = IntegerMatrix::from_rows(kernel_rows, n);
    let reduced = hermite_normal_form(&k).hermite;
    reduced.transpose()
}

/// Rows form a primitive integer basis of the orthogonal complement of the
/// column span of `v`.
pub fn integer_complement(v: &IntegerMatrix) -> IntegerMatrix {
    integer_kernel(&v.transpose()).transpose()
}

pub fn gcd_of(v: &[Integer]) -> Integer {
    v.iter().fold(Integer::zero(), |acc, x| acc.gcd(x))
}

pub fn is_primitive(v: &[Integer]) -> bool {
    gcd_of(v).is_one()
}

/// Integer `k`-th root of a non-negative integer when it is exact.
pub fn exact_root(x: &Integer, k: u32) -> Option<Integer> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *x).then_some(r)
}
