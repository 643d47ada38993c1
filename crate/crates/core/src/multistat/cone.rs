//! Extreme rays of `ker(N) ∩ R^r_{≥0}` by the double description method.

use num_traits::{Signed, Zero};

use crate::linalg::{kernel_basis, primitive_integer, rank, Integer, IntegerMatrix, Rational, RationalMatrix};

/// Generators of the flux cone.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeData {
    /// Primitive integer extreme rays, sorted, each of length `r`.
    pub rays: Vec<Vec<Integer>>,
    /// Some reaction carries zero flux on the whole cone.
    pub degenerate: bool,
}

impl ConeData {
    /// `M`, `r × p`, one column per ray.
    pub fn matrix(&self, r: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(r, self.rays.len());
        for (j, ray) in self.rays.iter().enumerate() {
            for i in 0..r {
                m[(i, j)] = ray[i].clone();
            }
        }
        m
    }

    pub fn zero_rows(&self, r: usize) -> Vec<usize> {
        (0..r)
            .filter(|&i| self.rays.iter().all(|v| v[i].is_zero()))
            .collect()
    }
}

fn combine(a: &[Rational], ca: &Rational, b: &[Rational], cb: &Rational) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x * ca + y * cb).collect()
}

fn normalize(v: &[Rational]) -> Vec<Rational> {
    primitive_integer(v).into_iter().map(Rational::from_integer).collect()
}

/// Double description with the equalities `N v = 0` built into the initial
/// lineality space, then the halfspaces `v_i ≥ 0` added one at a time. Two
/// rays are combined only if they are adjacent, decided by the rank of the
/// constraints tight at both.
pub fn extreme_rays(n: &IntegerMatrix) -> ConeData {
    let r = n.cols();
    let nq = n.to_rational();
    let mut lines: Vec<Vec<Rational>> = kernel_basis(&nq);
    let mut rays: Vec<Vec<Rational>> = Vec::new();
    for i in 0..r {
        if let Some(p) = lines.iter().position(|l| !l[i].is_zero()) {
            let mut l = lines.remove(p);
            if l[i].is_negative() {
                l.iter_mut().for_each(|x| *x = -x.clone());
            }
            let li = l[i].clone();
            let eliminate = |v: &mut Vec<Rational>| {
                if !v[i].is_zero() {
                    let f = -(&v[i] / &li);
                    *v = combine(v, &Rational::from_integer(1.into()), &l, &f);
                }
            };
            lines.iter_mut().for_each(eliminate);
            rays.iter_mut().for_each(eliminate);
            rays.push(normalize(&l));
            continue;
        }
        let (pos, rest): (Vec<_>, Vec<_>) = rays.into_iter().partition(|v| v[i].is_positive());
        let (neg, zero): (Vec<_>, Vec<_>) = rest.into_iter().partition(|v| v[i].is_negative());
        let mut next = zero;
        for p in &pos {
            for q in &neg {
                let mut active = nq.clone();
                for k in (0..i).filter(|&k| p[k].is_zero() && q[k].is_zero()) {
                    let mut e = vec![Rational::zero(); r];
                    e[k] = Rational::from_integer(1.into());
                    active = active.vstack(&RationalMatrix::from_rows(vec![e], r));
                }
                // The smallest face holding both has dimension lineality + 2.
                if r - rank(&active) == lines.len() + 2 {
                    let v = combine(q, &p[i], p, &-q[i].clone());
                    next.push(normalize(&v));
                }
            }
        }
        next.extend(pos);
        rays = next;
    }
    debug_assert!(lines.is_empty(), "the non-negative orthant is pointed");
    let mut ints: Vec<Vec<Integer>> = rays.iter().map(|v| primitive_integer(v)).collect();
    ints.sort();
    ints.dedup();
    let degenerate = ints.is_empty() || (0..r).any(|k| ints.iter().all(|v| v[k].is_zero()));
    ConeData {
        rays: ints,
        degenerate,
    }
}
