//! Reference networks with the species and complex orderings used in the
//! literature on toric steady states.
//!
//! * `triangle`: complexes `2A, 2B, A+B`; rate `kij` is the reaction from
//!   complex `i` to complex `j`.
//! * `phos1`, `phos2`: sequential distributive phosphorylation with one and
//!   two sites.
//! * `shinar_feinberg`: a 13-complex network with toric steady states that
//!   fails the disjoint-support condition until it is enlarged.

use super::{RateAssignment, Reaction, ReactionNetwork};
use crate::linalg::Rational;

fn complex(s: usize, terms: &[(usize, u32)]) -> Vec<u32> {
    let mut v = vec![0; s];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn build(species: &[&str], complexes: Vec<Vec<u32>>, reactions: &[(usize, usize, &str)]) -> ReactionNetwork {
    ReactionNetwork::new(
        names(species),
        complexes,
        reactions
            .iter()
            .map(|&(a, b, k)| Reaction::new(a, b, k))
            .collect(),
    )
    .expect("fixture networks are valid")
}

pub fn triangle() -> ReactionNetwork {
    build(
        &["A", "B"],
        vec![vec![2, 0], vec![0, 2], vec![1, 1]],
        &[
            (0, 1, "k12"),
            (1, 0, "k21"),
            (0, 2, "k13"),
            (2, 0, "k31"),
            (1, 2, "k23"),
            (2, 1, "k32"),
        ],
    )
}

/// Rates for `triangle` in the order `κ12, κ21, κ13, κ31, κ23, κ32`.
pub fn triangle_rates(k: [Rational; 6]) -> RateAssignment {
    let names = ["k12", "k21", "k13", "k31", "k23", "k32"];
    RateAssignment::from_pairs(names.into_iter().zip(k)).expect("triangle rates must be positive")
}

pub fn phos1() -> ReactionNetwork {
    let s = 6;
    // S0, S1, ES0, FS1, E, F
    build(
        &["S0", "S1", "ES0", "FS1", "E", "F"],
        vec![
            complex(s, &[(0, 1), (4, 1)]),
            complex(s, &[(1, 1), (4, 1)]),
            complex(s, &[(2, 1)]),
            complex(s, &[(0, 1), (5, 1)]),
            complex(s, &[(1, 1), (5, 1)]),
            complex(s, &[(3, 1)]),
        ],
        &[
            (0, 2, "kon0"),
            (2, 0, "koff0"),
            (2, 1, "kcat0"),
            (4, 5, "lon0"),
            (5, 4, "loff0"),
            (5, 3, "lcat0"),
        ],
    )
}

pub fn phos2() -> ReactionNetwork {
    let s = 9;
    // S0, S1, S2, ES0, ES1, FS1, FS2, E, F
    build(
        &["S0", "S1", "S2", "ES0", "ES1", "FS1", "FS2", "E", "F"],
        vec![
            complex(s, &[(0, 1), (7, 1)]),
            complex(s, &[(1, 1), (7, 1)]),
            complex(s, &[(2, 1), (7, 1)]),
            complex(s, &[(3, 1)]),
            complex(s, &[(4, 1)]),
            complex(s, &[(0, 1), (8, 1)]),
            complex(s, &[(1, 1), (8, 1)]),
            complex(s, &[(2, 1), (8, 1)]),
            complex(s, &[(5, 1)]),
            complex(s, &[(6, 1)]),
        ],
        &[
            (0, 3, "kon0"),
            (3, 0, "koff0"),
            (3, 1, "kcat0"),
            (1, 4, "kon1"),
            (4, 1, "koff1"),
            (4, 2, "kcat1"),
            (6, 8, "lon0"),
            (8, 6, "loff0"),
            (8, 5, "lcat0"),
            (7, 9, "lon1"),
            (9, 7, "loff1"),
            (9, 6, "lcat1"),
        ],
    )
}

pub fn shinar_feinberg() -> ReactionNetwork {
    let s = 9;
    // XD, X, XT, Xp, Y, XpY, Yp, XTYp, XDYp
    build(
        &["XD", "X", "XT", "Xp", "Y", "XpY", "Yp", "XTYp", "XDYp"],
        vec![
            complex(s, &[(0, 1)]),
            complex(s, &[(1, 1)]),
            complex(s, &[(2, 1)]),
            complex(s, &[(3, 1)]),
            complex(s, &[(3, 1), (4, 1)]),
            complex(s, &[(5, 1)]),
            complex(s, &[(1, 1), (6, 1)]),
            complex(s, &[(2, 1), (6, 1)]),
            complex(s, &[(7, 1)]),
            complex(s, &[(2, 1), (4, 1)]),
            complex(s, &[(0, 1), (6, 1)]),
            complex(s, &[(8, 1)]),
            complex(s, &[(0, 1), (4, 1)]),
        ],
        &[
            (0, 1, "k12"),
            (1, 0, "k21"),
            (1, 2, "k23"),
            (2, 1, "k32"),
            (2, 3, "k34"),
            (4, 5, "k56"),
            (5, 4, "k65"),
            (5, 6, "k67"),
            (7, 8, "k89"),
            (8, 7, "k98"),
            (8, 9, "k9_10"),
            (10, 11, "k11_12"),
            (11, 10, "k12_11"),
            (11, 12, "k12_13"),
        ],
    )
}
