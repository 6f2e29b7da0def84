//! Signed permutation operators and their explicit isotypic bases.

use super::cyclotomic::Cyclotomic;
use super::field::{rat, Rational};
use super::sparse::{SparseMatrix, SparseVec};

/// `e_i ↦ sign[i] · e_{target[i]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermutation {
    pub target: Vec<usize>,
    pub sign: Vec<i64>,
}

impl SignedPermutation {
    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    pub fn to_matrix(&self) -> SparseMatrix<Rational> {
        let n = self.len();
        SparseMatrix::from_triplets(n, n, (0..n).map(|c| (self.target[c], c, rat(self.sign[c]))))
    }

    /// Basis of the `ζ^c`-eigenspace, assuming the operator has order
    /// dividing the prime `p`.
    ///
    /// A cycle `e, g e, …` of length `p` contributes
    /// `Σ_k ζ^{-ck} g^k e` to every character; a fixed line `g e = ±e`
    /// contributes `e` to the character of its sign.
    pub fn eigenbasis(&self, p: u32, c: u32) -> Vec<SparseVec<Cyclotomic>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut entries = Vec::new();
            let mut idx = start;
            let mut sign = 1i64;
            let mut k = 0i64;
            loop {
                seen[idx] = true;
                entries.push((idx, sign, k));
                sign *= self.sign[idx];
                idx = self.target[idx];
                k += 1;
                if idx == start {
                    break;
                }
            }
            if entries.len() == 1 {
                // g e = sign · e, and sign = ζ^c must hold
                let char_of_sign = if sign == 1 { 0 } else { 1 };
                let matches = if p == 2 {
                    char_of_sign == c
                } else {
                    sign == 1 && c == 0
                };
                if matches {
                    out.push(SparseVec::unit(start, Cyclotomic::one(p)));
                }
                continue;
            }
            out.push(SparseVec::from_entries(entries.into_iter().map(
                |(i, s, k)| {
                    let mut z = Cyclotomic::zeta_pow(p, -(c as i64) * k);
                    if s < 0 {
                        z = -z;
                    }
                    (i, z)
                },
            )));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::echelon::to_cyclotomic;

    #[test]
    fn eigenbasis_is_eigen_and_complete() {
        // a 3-cycle with a sign twist plus a fixed vector
        let g = SignedPermutation {
            target: vec![1, 2, 0, 3],
            sign: vec![1, -1, -1, 1],
        };
        let m = to_cyclotomic(&g.to_matrix(), 3);
        let mut total = 0;
        for c in 0..3u32 {
            let basis = g.eigenbasis(3, c);
            total += basis.len();
            for v in &basis {
                let mut expected = v.clone();
                expected.scale(&Cyclotomic::zeta_pow(3, c as i64));
                assert_eq!(m.mul_vec(v), expected);
            }
        }
        assert_eq!(total, 4);
    }

    #[test]
    fn sign_flip_lands_in_odd_character() {
        let g = SignedPermutation {
            target: vec![0],
            sign: vec![-1],
        };
        assert!(g.eigenbasis(2, 0).is_empty());
        assert_eq!(g.eigenbasis(2, 1).len(), 1);
    }
}
