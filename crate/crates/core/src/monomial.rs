//! Exponent vectors and the monomial bases of Stanley–Reisner rings.

use std::fmt;

use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};

/// Exponents of a monomial `x^U` in `k[x_1, …, x_n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> Face {
        Face::from_vertices(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, _)| v),
        )
    }

    /// `x^U · x_v`.
    pub fn times_vertex(&self, v: usize) -> Self {
        let mut out = self.clone();
        out.0[v] += 1;
        out
    }

    pub fn product(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (v, &e) in self.0.iter().enumerate() {
            match e {
                0 => continue,
                1 => write!(f, "x{}", v + 1)?,
                _ => write!(f, "x{}^{}", v + 1, e)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 1..=total - (parts as u32 - 1) {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Exponent vectors of degree `j` supported on faces of `K`: the monomial
/// basis of `k[K]_j`. Sorted lexicographically.
pub fn t_slice(k: &SimplicialComplex, j: u32) -> Vec<ExponentVector> {
    let n = k.n();
    let mut out = Vec::new();
    if j == 0 {
        if k.contains(Face::EMPTY) {
            out.push(ExponentVector::zero(n));
        }
        return out;
    }
    let mut parts = Vec::new();
    for size in 1..=(j as usize).min(k.d()) {
        for &tau in k.faces_of_size(size) {
            let vs = tau.to_vec();
            parts.clear();
            compositions(j, size, &mut Vec::new(), &mut parts);
            for c in &parts {
                let mut e = vec![0u32; n];
                for (v, x) in vs.iter().zip(c) {
                    e[*v] = *x;
                }
                out.push(ExponentVector(e));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::binomial;

    #[test]
    fn slice_sizes_of_hollow_triangle() {
        let k =
            SimplicialComplex::from_one_based(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        assert_eq!(t_slice(&k, 0).len(), 1);
        assert_eq!(t_slice(&k, 1).len(), 3);
        // 3 pure powers plus 3 edges times (j-1) mixed monomials
        for j in 2..6u32 {
            assert_eq!(t_slice(&k, j).len() as u32, 3 + 3 * (j - 1));
        }
    }

    #[test]
    fn slice_of_simplex_counts_all_monomials() {
        let k = SimplicialComplex::simplex(4).unwrap();
        for j in 0..5 {
            assert_eq!(t_slice(&k, j).len() as i64, binomial(j as i64 + 3, 3));
        }
    }

    #[test]
    fn void_has_no_monomials() {
        assert!(t_slice(&SimplicialComplex::void(2), 0).is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(ExponentVector(vec![2, 0, 1]).to_string(), "x1^2x3");
        assert_eq!(ExponentVector::zero(2).to_string(), "1");
    }
}
