//! Cyclic groups of prime order acting on `[n]` by a vertex permutation.

use std::collections::HashSet;
use std::hash::Hash;

use serde::Serialize;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::modular::is_prime_u64;
use crate::monomial::ExponentVector;

/// `G = Z/p` generated by a permutation `g` of `[n]`.
///
/// The generator has order exactly `p`, except for the explicitly
/// constructed identity action, which is never free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicAction {
    p: u32,
    perm: Vec<usize>,
    inverse: Vec<usize>,
}

fn check_permutation(perm: &[usize]) -> Result<Vec<usize>> {
    let n = perm.len();
    let mut inverse = vec![usize::MAX; n];
    for (v, &w) in perm.iter().enumerate() {
        if w >= n {
            return Err(Error::InvalidPermutation(format!(
                "image {} of vertex {} is outside 1..={}",
                w + 1,
                v + 1,
                n
            )));
        }
        if inverse[w] != usize::MAX {
            return Err(Error::InvalidPermutation(format!(
                "vertex {} is hit twice",
                w + 1
            )));
        }
        inverse[w] = v;
    }
    Ok(inverse)
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime_u64(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Order of a permutation (lcm of cycle lengths).
pub fn permutation_order(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = perm[v];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

impl CyclicAction {
    /// Action of `Z/p` through the 0-based permutation `perm`.
    pub fn new(p: u32, perm: Vec<usize>) -> Result<Self> {
        check_prime(p)?;
        let inverse = check_permutation(&perm)?;
        let order = permutation_order(&perm);
        if order != p as usize {
            return Err(Error::WrongOrder { order, p });
        }
        Ok(Self { p, perm, inverse })
    }

    /// `Z/p` acting trivially on `[n]`.
    pub fn identity(n: usize, p: u32) -> Result<Self> {
        check_prime(p)?;
        let perm: Vec<usize> = (0..n).collect();
        Ok(Self {
            p,
            inverse: perm.clone(),
            perm,
        })
    }

    /// From 1-based images; the identity is accepted only when `trivial`.
    pub fn from_one_based(p: u32, images: &[usize], trivial: bool) -> Result<Self> {
        let n = images.len();
        let mut perm = Vec::with_capacity(n);
        for (v, &w) in images.iter().enumerate() {
            if w == 0 || w > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} of vertex {} is outside 1..={}",
                    w,
                    v + 1,
                    n
                )));
            }
            perm.push(w - 1);
        }
        if trivial {
            check_permutation(&perm)?;
            if perm.iter().enumerate().any(|(v, &w)| v != w) {
                return Err(Error::InvalidPermutation(
                    "flagged trivial but the permutation moves a vertex".into(),
                ));
            }
            return Self::identity(n, p);
        }
        Self::new(p, perm)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn images_one_based(&self) -> Vec<usize> {
        self.perm.iter().map(|w| w + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(v, &w)| v == w)
    }

    pub fn apply(&self, v: usize) -> usize {
        self.perm[v]
    }

    pub fn apply_inverse(&self, v: usize) -> usize {
        self.inverse[v]
    }

    /// `g^k(v)` for any integer `k`.
    pub fn apply_pow(&self, mut v: usize, k: i64) -> usize {
        let k = k.rem_euclid(self.p as i64);
        for _ in 0..k {
            v = self.perm[v];
        }
        v
    }

    pub fn apply_face(&self, f: Face) -> Face {
        Face::from_vertices(f.vertices().map(|v| self.perm[v]))
    }

    pub fn apply_face_pow(&self, f: Face, k: i64) -> Face {
        Face::from_vertices(f.vertices().map(|v| self.apply_pow(v, k)))
    }

    /// Sign relating `g·(v_0 ∧ … ∧ v_r)` to the sorted wedge of `gσ`: the
    /// parity of the permutation that sorts `g(v_0), …, g(v_r)`.
    pub fn face_sign(&self, f: Face) -> i64 {
        let images: Vec<usize> = f.vertices().map(|v| self.perm[v]).collect();
        let mut inversions = 0usize;
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                if images[i] > images[j] {
                    inversions += 1;
                }
            }
        }
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Pushes a vector indexed by vertices forward: `out[g(v)] = x[v]`.
    pub fn push_forward<T: Clone>(&self, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        for (v, item) in x.iter().enumerate() {
            out[self.perm[v]] = item.clone();
        }
        out
    }

    /// `g · x^U`, i.e. `x_v ↦ x_{g(v)}`.
    pub fn apply_exponent(&self, u: &ExponentVector) -> ExponentVector {
        ExponentVector(self.push_forward(&u.0))
    }
}

/// A partition of a G-set into orbits. Each orbit is listed as
/// `[r, g·r, g²·r, …]` where `r` is its least element.
#[derive(Debug, Clone, Serialize)]
pub struct Orbits<T> {
    pub p: u32,
    pub orbits: Vec<Vec<T>>,
}

impl<T> Orbits<T> {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &T> {
        self.orbits.iter().map(|o| &o[0])
    }

    pub fn is_free(&self, i: usize) -> bool {
        self.orbits[i].len() == self.p as usize
    }

    pub fn free_flags(&self) -> Vec<bool> {
        (0..self.len()).map(|i| self.is_free(i)).collect()
    }
}

/// Orbits of `items` (assumed G-stable) under `apply = g·`.
pub fn orbits_by<T, F>(items: impl IntoIterator<Item = T>, p: u32, apply: F) -> Orbits<T>
where
    T: Ord + Clone + Hash,
    F: Fn(&T) -> T,
{
    let mut items: Vec<T> = items.into_iter().collect();
    items.sort();
    let mut seen: HashSet<T> = HashSet::new();
    let mut orbits = Vec::new();
    for x in items {
        if seen.contains(&x) {
            continue;
        }
        let mut orbit = vec![x.clone()];
        seen.insert(x.clone());
        let mut y = apply(&x);
        while y != x {
            seen.insert(y.clone());
            let next = apply(&y);
            orbit.push(y);
            y = next;
        }
        orbits.push(orbit);
    }
    Orbits { p, orbits }
}

pub fn vertex_orbits(k: &SimplicialComplex, a: &CyclicAction) -> Orbits<usize> {
    orbits_by(k.vertex_set().vertices(), a.p(), |&v| a.apply(v))
}

pub fn face_orbits(k: &SimplicialComplex, a: &CyclicAction) -> Orbits<Face> {
    orbits_by(k.faces(), a.p(), |&f| a.apply_face(f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub p: u32,
    pub automorphism: bool,
    pub order_ok: bool,
    pub identity: bool,
    pub free: bool,
    pub very_free: bool,
}

/// Checks that `g` is a simplicial automorphism of `K` of the right order
/// and decides freeness.
///
/// Very freeness asks that the stars of `σ` and `g^k σ` share no face
/// containing either, i.e. `σ ∪ g^k σ` is never a face (`σ ≠ ∅`, `k ≠ 0`).
/// For `p = 2` this coincides with freeness.
pub fn validate_action(k: &SimplicialComplex, a: &CyclicAction) -> Result<ActionReport> {
    if a.n() != k.n() {
        return Err(Error::InvalidPermutation(format!(
            "permutation acts on {} vertices but the complex has n = {}",
            a.n(),
            k.n()
        )));
    }
    for &f in k.facets() {
        let img = a.apply_face(f);
        if !k.facets().contains(&img) {
            return Err(Error::NotAutomorphism {
                face: f.to_string(),
            });
        }
    }
    let identity = a.is_identity();
    let p = a.p() as i64;
    let nonempty: Vec<Face> = k.faces().filter(|f| !f.is_empty()).collect();
    let free = nonempty
        .iter()
        .all(|&f| (1..p).all(|e| a.apply_face_pow(f, e) != f));
    let very_free = free
        && nonempty
            .iter()
            .all(|&f| (1..p).all(|e| !k.contains(f.union(a.apply_face_pow(f, e)))));
    Ok(ActionReport {
        p: a.p(),
        automorphism: true,
        order_ok: true,
        identity,
        free,
        very_free,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> (SimplicialComplex, CyclicAction) {
        let mut facets = Vec::new();
        for a in [1, 4] {
            for b in [2, 5] {
                for c in [3, 6] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        let k = SimplicialComplex::from_one_based(6, &facets).unwrap();
        let g = CyclicAction::from_one_based(2, &[4, 5, 6, 1, 2, 3], false).unwrap();
        (k, g)
    }

    #[test]
    fn antipodal_octahedron_is_very_free() {
        let (k, g) = octahedron();
        let r = validate_action(&k, &g).unwrap();
        assert!(r.free && r.very_free);
    }

    #[test]
    fn wrong_order_rejected() {
        assert!(matches!(
            CyclicAction::from_one_based(3, &[2, 1, 3], false),
            Err(Error::WrongOrder { order: 2, p: 3 })
        ));
        assert!(matches!(
            CyclicAction::from_one_based(4, &[2, 3, 4, 1], false),
            Err(Error::NotPrime(4))
        ));
        assert!(CyclicAction::from_one_based(2, &[1, 1], false).is_err());
        assert!(CyclicAction::from_one_based(2, &[1, 2], false).is_err());
    }

    #[test]
    fn identity_is_never_free() {
        let k = SimplicialComplex::simplex(3).unwrap();
        let g = CyclicAction::from_one_based(3, &[1, 2, 3], true).unwrap();
        let r = validate_action(&k, &g).unwrap();
        assert!(r.identity && !r.free && !r.very_free);
    }

    #[test]
    fn non_automorphism_names_a_face() {
        let k = SimplicialComplex::from_one_based(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let g = CyclicAction::from_one_based(2, &[3, 4, 1, 2], false).unwrap();
        assert!(validate_action(&k, &g).is_ok());
        let h = CyclicAction::from_one_based(2, &[2, 1, 3, 4], false).unwrap();
        assert!(validate_action(&k, &h).is_ok());
        let bad = SimplicialComplex::from_one_based(4, &[vec![1, 2], vec![2, 3]]).unwrap();
        match validate_action(&bad, &g) {
            Err(Error::NotAutomorphism { face }) => assert_eq!(face, "{1,2}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn face_sign_counts_inversions() {
        let g = CyclicAction::from_one_based(3, &[2, 3, 1], false).unwrap();
        // {1,2,3} -> images (2,3,1): two inversions
        assert_eq!(g.face_sign(Face::full(3)), 1);
        // {2,3} -> (3,1): one inversion
        assert_eq!(g.face_sign(Face::from_vertices([1, 2])), -1);
    }

    #[test]
    fn orbits_start_at_minimum() {
        let g = CyclicAction::from_one_based(3, &[2, 3, 1, 5, 6, 4], false).unwrap();
        let o = orbits_by(0..6usize, 3, |&v| g.apply(v));
        assert_eq!(o.orbits, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(o.is_free(0));
    }

    #[test]
    fn exponent_action_moves_variables() {
        let g = CyclicAction::from_one_based(3, &[2, 3, 1], false).unwrap();
        let u = ExponentVector(vec![2, 1, 0]);
        assert_eq!(g.apply_exponent(&u), ExponentVector(vec![0, 2, 1]));
    }
}
