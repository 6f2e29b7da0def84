//! Closed-form predictions for fine Hilbert functions and the numerical
//! bounds derived from them. Everything here is exact arithmetic on
//! h-vectors and (isotypic) Betti numbers.

use num_traits::Zero;

use super::hilbert::{FineHilbert, RationalTable};
use super::ring::GradedRing;
use crate::action::CyclicAction;
use crate::cohomology::{Betti, IsotypicBetti};
use crate::complex::{binomial, HVector, SimplicialComplex};
use crate::error::Result;
use crate::linalg::{rat, rat_frac, Rational};

fn c(d: usize, i: usize) -> i64 {
    binomial(d as i64, i as i64)
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Dimensions of `k[K]_i^c` for `i < degrees`, read off the monomial bases.
pub fn fine_ring_dims(
    k: &SimplicialComplex,
    a: &CyclicAction,
    degrees: usize,
) -> Result<FineHilbert> {
    let ring = GradedRing::new(k, Some(a), a.p())?;
    let mut out = FineHilbert::zeros(a.p(), degrees);
    for i in 0..degrees {
        for ch in 0..a.p() {
            out.dims[i][ch as usize] = ring.dim(i as u32, ch) as i64;
        }
    }
    Ok(out)
}

/// Coefficient of `λ^i` in `Σ_l h_l λ^l / (1-λ)^d`.
pub fn coarse_ring_dim(h: &HVector, d: usize, i: usize) -> i64 {
    if d == 0 {
        return h.get(i);
    }
    (0..=i.min(d))
        .map(|l| h.get(l) * binomial((i - l + d - 1) as i64, (d - 1) as i64))
        .sum()
}

/// Prediction for a free action: degree 0 is trivial and every positive
/// degree splits evenly across the `p` characters.
pub fn sr_hilbert_fine(h: &HVector, d: usize, p: u32, degrees: usize) -> RationalTable {
    let coeffs = (0..degrees)
        .map(|i| {
            (0..p)
                .map(|ch| match (i, ch) {
                    (0, 0) => rat(1),
                    (0, _) => Rational::zero(),
                    _ => rat_frac(coarse_ring_dim(h, d, i), p as i64),
                })
                .collect()
        })
        .collect();
    RationalTable { p, coeffs }
}

/// Fine Hilbert function of `k[K]/Θ` for a Buchsbaum complex and `Θ`
/// homogeneous of character `m`; `upper` is the last `j` in the Betti sum.
fn fine_reduction(
    h: &HVector,
    d: usize,
    m: u32,
    beta: &IsotypicBetti,
    upper: impl Fn(usize) -> i64,
) -> RationalTable {
    let p = beta.p;
    let coeffs = (0..=d)
        .map(|i| {
            (0..p)
                .map(|k| {
                    let mi = (m as i64) * i as i64;
                    let hit = (k as i64 - mi).rem_euclid(p as i64) == 0;
                    let mut x = rat(if hit { sign(i as i64) * c(d, i) } else { 0 });
                    x += rat_frac(h.get(i) + sign(i as i64 + 1) * c(d, i), p as i64);
                    let tail: i64 = (0..=upper(i))
                        .map(|j| sign(i as i64 - j - 1) * beta.get(j - 1, mi - k as i64) as i64)
                        .sum();
                    x + rat(c(d, i) * tail)
                })
                .collect()
        })
        .collect();
    RationalTable { p, coeffs }
}

/// Fine Hilbert function of the Artinian reduction.
pub fn schenzel_fine(h: &HVector, d: usize, m: u32, beta: &IsotypicBetti) -> RationalTable {
    fine_reduction(h, d, m, beta, |i| i as i64 - 1)
}

/// Fine Hilbert function of `k[K]/Σ`; the Betti sum runs through `j = i`.
pub fn sigma_module_fine(h: &HVector, d: usize, m: u32, beta: &IsotypicBetti) -> RationalTable {
    fine_reduction(h, d, m, beta, |i| i as i64)
}

/// `dim(Σ/ΘR)_i^k = C(d,i) β_{i-1}^{mi-k}` below the top degree.
pub fn sigma_over_theta_fine(d: usize, m: u32, beta: &IsotypicBetti) -> FineHilbert {
    let p = beta.p;
    let mut out = FineHilbert::zeros(p, d + 1);
    for i in 0..d {
        for k in 0..p {
            let mi = (m as i64) * i as i64;
            out.dims[i][k as usize] = c(d, i) * beta.get(i as i64 - 1, mi - k as i64) as i64;
        }
    }
    out
}

/// Centrally symmetric closed form (`p = 2`):
/// `½(h_i + (-1)^{i+k+mi} C(d,i)) + C(d,i) Σ_{j<i} (-1)^{i-j-1} β_{j-1}^{mi-k}`.
pub fn cs_schenzel(h: &HVector, d: usize, m: u32, beta: &IsotypicBetti) -> RationalTable {
    let coeffs = (0..=d)
        .map(|i| {
            (0..2u32)
                .map(|k| {
                    let mi = (m as i64) * i as i64;
                    let e = i as i64 + k as i64 + mi;
                    let tail: i64 = (0..i as i64)
                        .map(|j| sign(i as i64 - j - 1) * beta.get(j - 1, mi - k as i64) as i64)
                        .sum();
                    rat_frac(h.get(i) + sign(e) * c(d, i), 2) + rat(c(d, i) * tail)
                })
                .collect()
        })
        .collect();
    RationalTable { p: 2, coeffs }
}

/// The centrally symmetric Cohen–Macaulay case with an odd system:
/// character 0 gets `(C(d,i) + h_i)/2`, character 1 gets `(h_i - C(d,i))/2`.
pub fn stanley_cs(h: &HVector, d: usize) -> RationalTable {
    let coeffs = (0..=d)
        .map(|i| {
            vec![
                rat_frac(c(d, i) + h.get(i), 2),
                rat_frac(h.get(i) - c(d, i), 2),
            ]
        })
        .collect();
    RationalTable { p: 2, coeffs }
}

/// Coarse Hilbert function of a Buchsbaum reduction:
/// `h_i + C(d,i) Σ_{j<i} (-1)^{i-j-1} β_{j-1}`.
pub fn schenzel_total(h: &HVector, d: usize, betti: &Betti) -> Vec<i64> {
    (0..=d)
        .map(|i| {
            let tail: i64 = (0..i as i64)
                .map(|j| sign(i as i64 - j - 1) * betti.get(j - 1) as i64)
                .sum();
            h.get(i) + c(d, i) * tail
        })
        .collect()
}

/// `Σ_{j=0}^i (-1)^{i-j} β_{j-1}`, optionally restricted to one character.
fn alternating(i: usize, value: impl Fn(i64) -> i64) -> i64 {
    (0..=i as i64)
        .map(|j| sign(i as i64 - j) * value(j - 1))
        .sum()
}

/// Right side of `h_i ≥ C(d,i) Σ_{j≤i} (-1)^{i-j} β_{j-1}`.
pub fn buchsbaum_bound(d: usize, betti: &Betti, i: usize) -> i64 {
    c(d, i) * alternating(i, |j| betti.get(j) as i64)
}

/// Bound from the invariant part of an equivariant reduction.
pub fn zeropart_bound(d: usize, beta: &IsotypicBetti, i: usize) -> i64 {
    let p = beta.p as i64;
    (p - 1) * sign(i as i64 + 1) * c(d, i) + p * c(d, i) * alternating(i, |j| beta.get(j, 0) as i64)
}

/// Bound from character `k ≠ 0` of an equivariant reduction.
pub fn nonzeropart_bound(d: usize, beta: &IsotypicBetti, i: usize, k: u32) -> i64 {
    let p = beta.p as i64;
    sign(i as i64) * c(d, i) + p * c(d, i) * alternating(i, |j| beta.get(j, k as i64) as i64)
}

/// Bound attached to a multiset of nonzero characters of size `p - 1`.
pub fn multiset_bound(d: usize, beta: &IsotypicBetti, i: usize, multiset: &[u32]) -> i64 {
    let base = c(d, i) * alternating(i, |j| beta.get(j, 0) as i64);
    base + multiset
        .iter()
        .map(|&k| c(d, i) * alternating(i, |j| beta.get(j, k as i64) as i64))
        .sum::<i64>()
}

/// All multisets of size `p - 1` drawn from `1..p`, in lexicographic order.
pub fn nonzero_multisets(p: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, p: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..p {
            cur.push(k);
            go(k, p, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p >= 2 {
        go(1, p, p - 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Lower bound for Cohen–Macaulay complexes with a very free action:
/// `C(d,i)` in even degrees, `(p-1) C(d,i)` in odd ones.
pub fn very_free_bound(d: usize, p: u32, i: usize) -> i64 {
    if i.is_multiple_of(2) {
        c(d, i)
    } else {
        (p as i64 - 1) * c(d, i)
    }
}

/// Coefficients of `(1 + λ + … + λ^{p-1})^{d/(p-1)}`, or `None` if
/// `p - 1` does not divide `d`.
pub fn free_cm_bound(d: usize, p: u32) -> Option<Vec<i64>> {
    let step = p as usize - 1;
    if step == 0 || !d.is_multiple_of(step) {
        return None;
    }
    let mut poly = vec![1i64];
    for _ in 0..d / step {
        let mut next = vec![0i64; poly.len() + step];
        for (e, x) in poly.iter().enumerate() {
            for s in 0..=step {
                next[e + s] += x;
            }
        }
        poly = next;
    }
    Some(poly)
}

/// Right side of `h_{d-i} - h_i = (-1)^i C(d,i) ((-1)^{d-1} χ̃ - 1)`.
pub fn klee_rhs(d: usize, reduced_euler: i64, i: usize) -> i64 {
    sign(i as i64) * c(d, i) * (sign(d as i64 - 1) * reduced_euler - 1)
}

/// `h_i ≡ (-1)^i C(d,i) (mod p)`.
pub fn congruence_holds(h: &HVector, d: usize, p: u32, i: usize) -> bool {
    (h.get(i) - sign(i as i64) * c(d, i)).rem_euclid(p as i64) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nine_gon_betti() -> IsotypicBetti {
        IsotypicBetti {
            p: 3,
            table: vec![vec![0, 0, 0], vec![0, 0, 0], vec![1, 0, 0]],
        }
    }

    #[test]
    fn nine_gon_reduction() {
        let h = HVector(vec![1, 7, 1]);
        let t = schenzel_fine(&h, 2, 0, &nine_gon_betti())
            .to_integers()
            .unwrap();
        assert_eq!(t.dims, vec![vec![1, 0, 0], vec![1, 3, 3], vec![1, 0, 0]]);
    }

    #[test]
    fn sigma_formula_drops_the_top() {
        let h = HVector(vec![1, 7, 1]);
        let t = sigma_module_fine(&h, 2, 0, &nine_gon_betti())
            .to_integers()
            .unwrap();
        assert_eq!(t.dims[2], vec![0, 0, 0]);
        assert_eq!(t.dims[1], vec![1, 3, 3]);
    }

    #[test]
    fn torus_schenzel_total() {
        let h = HVector(vec![1, 4, 10, -1]);
        let b = Betti(vec![0, 0, 2, 1]);
        assert_eq!(schenzel_total(&h, 3, &b), vec![1, 4, 10, 1]);
    }

    #[test]
    fn octahedron_closed_forms_agree() {
        let h = HVector(vec![1, 3, 3, 1]);
        let beta = IsotypicBetti {
            p: 2,
            table: vec![vec![0, 0]; 4],
        };
        let stanley = stanley_cs(&h, 3);
        assert_eq!(cs_schenzel(&h, 3, 1, &beta), stanley);
        assert_eq!(schenzel_fine(&h, 3, 1, &beta), stanley);
    }

    #[test]
    fn ring_prediction_splits_degrees() {
        let h = HVector(vec![1, 7, 1]);
        let t = sr_hilbert_fine(&h, 2, 3, 3).to_integers().unwrap();
        assert_eq!(t.dims, vec![vec![1, 0, 0], vec![3, 3, 3], vec![6, 6, 6]]);
    }

    #[test]
    fn bounds() {
        assert_eq!(free_cm_bound(2, 3), Some(vec![1, 1, 1]));
        assert_eq!(free_cm_bound(3, 2), Some(vec![1, 3, 3, 1]));
        assert_eq!(free_cm_bound(3, 3), None);
        assert_eq!(
            nonzero_multisets(3),
            vec![vec![1, 1], vec![1, 2], vec![2, 2]]
        );
        assert_eq!(nonzero_multisets(7).len(), 462);
        assert_eq!(klee_rhs(2, -1, 0), 0);
        assert!(congruence_holds(&HVector(vec![1, 4, 10, -1]), 3, 7, 1));
    }
}
