use num_traits::One;

use super::MultistatError;
use crate::linalg::{point_with_signs, rank, IntegerMatrix, Rational, RationalMatrix, Sign};

/// Largest `rank(A)` accepted by the cell enumeration.
pub const MAX_IMAGE_RANK: usize = 8;

/// A realizable sign vector with an exact preimage: `sign(Aᵗτ) = signs`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignCell {
    pub signs: Vec<Sign>,
    pub tau: Vec<Rational>,
}

/// Search order: fewer zeros first, then lexicographic with `− < 0 < +`.
pub fn search_key(signs: &[Sign]) -> (usize, Vec<Sign>) {
    (signs.iter().filter(|s| **s == Sign::Zero).count(), signs.to_vec())
}

/// Every sign vector of `im(Aᵗ)`, found by extending sign prefixes one
/// coordinate at a time and keeping only those with an exact LP
/// certificate. Sorted by [`search_key`].
pub fn sign_vectors_of_image(
    a: &IntegerMatrix,
    include_zero: bool,
) -> Result<Vec<SignCell>, MultistatError> {
    let rows = a.transpose().to_rational();
    let w = rank(&rows);
    if w > MAX_IMAGE_RANK {
        return Err(MultistatError::ImageRankTooLarge {
            rank: w,
            max: MAX_IMAGE_RANK,
        });
    }
    let s = rows.rows();
    let margin = Rational::one();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Sign>, Vec<Rational>)> = vec![(Vec::new(), vec![Rational::from_integer(0.into()); rows.cols()])];
    while let Some((prefix, tau)) = stack.pop() {
        let k = prefix.len();
        if k == s {
            if include_zero || prefix.iter().any(|x| *x != Sign::Zero) {
                out.push(SignCell { signs: prefix, tau });
            }
            continue;
        }
        let head = rows.select_rows(&(0..=k).collect::<Vec<_>>());
        for sign in [Sign::Neg, Sign::Zero, Sign::Pos] {
            let mut next = prefix.clone();
            next.push(sign);
            if let Some(t) = point_with_signs(&head, &next, &margin) {
                stack.push((next, t));
            }
        }
    }
    out.sort_by_key(|c| search_key(&c.signs));
    Ok(out)
}

/// `Aᵗτ`.
pub fn image_point(a: &IntegerMatrix, tau: &[Rational]) -> Vec<Rational> {
    let rows: RationalMatrix = a.transpose().to_rational();
    rows.mul_vec(tau)
}
