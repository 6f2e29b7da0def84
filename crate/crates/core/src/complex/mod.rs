//! Finite simplicial complexes on the vertex set `[n]`.
//!
//! Vertices are 0-based internally and 1-based in every file and report.
//! The void complex (no faces at all) and the complex `{∅}` are distinct:
//! the first has no facets, the second has the single facet `∅`.

mod classify;
mod face;

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

pub use classify::{classify, ClassificationReport};
pub use face::{Face, Vertices};

#[derive(Debug, Default)]
struct FaceIndex {
    by_size: Vec<Vec<Face>>,
    index: HashMap<Face, usize>,
}

#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
    faces: OnceLock<std::sync::Arc<FaceIndex>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

/// `f_{-1}, f_0, …, f_{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `f_i` for `i ≥ -1`, zero outside the stored range.
    pub fn get(&self, i: i64) -> u64 {
        if i < -1 {
            return 0;
        }
        self.0.get((i + 1) as usize).copied().unwrap_or(0)
    }
}

/// `h_0, …, h_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HVector(pub Vec<i64>);

impl HVector {
    pub fn get(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl SimplicialComplex {
    /// Complex generated by `generators` (any faces; non-maximal ones are
    /// dropped).
    pub fn new(n: usize, generators: impl IntoIterator<Item = Face>) -> Result<Self> {
        if n > 64 {
            return Err(Error::TooManyVertices(n));
        }
        let mut gens: Vec<Face> = generators.into_iter().collect();
        for g in &gens {
            if let Some(v) = g.max_vertex() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v + 1, n });
                }
            }
        }
        gens.sort();
        gens.dedup();
        // Larger faces come last; keep a face only if no later face contains it.
        let mut facets: Vec<Face> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if !gens[i + 1..].iter().any(|h| g.is_subset(*h)) {
                facets.push(*g);
            }
        }
        facets.sort();
        Ok(Self {
            n,
            facets,
            faces: OnceLock::new(),
        })
    }

    /// Complex from 1-based facet lists.
    pub fn from_one_based(n: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if n > 64 {
            return Err(Error::TooManyVertices(n));
        }
        let mut out = Vec::with_capacity(facets.len());
        for f in facets {
            let mut face = Face::EMPTY;
            for &v in f {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                face = face.with(v - 1);
            }
            out.push(face);
        }
        Self::new(n, out)
    }

    pub fn void(n: usize) -> Self {
        Self::new(n, []).expect("void complex")
    }

    /// The complex `{∅}`.
    pub fn empty_face(n: usize) -> Self {
        Self::new(n, [Face::EMPTY]).expect("complex {∅}")
    }

    /// The full simplex on `[n]`.
    pub fn simplex(n: usize) -> Result<Self> {
        Self::new(n, [Face::full(n)])
    }

    /// Boundary of the simplex on `[n]`.
    pub fn simplex_boundary(n: usize) -> Result<Self> {
        Self::new(n, (0..n).map(|v| Face::full(n).without(v)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facets_one_based(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.to_one_based()).collect()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Largest facet size; `0` for the void complex and for `{∅}`.
    pub fn d(&self) -> usize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// `d − 1`.
    pub fn dim(&self) -> i64 {
        self.d() as i64 - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.d();
        self.facets.iter().all(|f| f.len() == d)
    }

    pub fn contains(&self, face: Face) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// Union of all faces.
    pub fn vertex_set(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |a, f| a.union(*f))
    }

    fn index(&self) -> &FaceIndex {
        self.faces.get_or_init(|| {
            let mut all: HashSet<Face> = HashSet::new();
            for f in &self.facets {
                if all.contains(f) {
                    continue;
                }
                all.extend(f.all_subsets());
            }
            let d = self.d();
            let mut by_size = vec![Vec::new(); if self.is_void() { 0 } else { d + 1 }];
            for f in all {
                by_size[f.len()].push(f);
            }
            let mut index = HashMap::new();
            for level in by_size.iter_mut() {
                level.sort();
                for (i, f) in level.iter().enumerate() {
                    index.insert(*f, i);
                }
            }
            std::sync::Arc::new(FaceIndex { by_size, index })
        })
    }

    /// Faces with exactly `k` vertices, sorted.
    pub fn faces_of_size(&self, k: usize) -> &[Face] {
        self.index()
            .by_size
            .get(k)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Position of a face within `faces_of_size(face.len())`.
    pub fn face_index(&self, face: Face) -> Option<usize> {
        self.index().index.get(&face).copied()
    }

    /// All faces, `∅` first, sorted by size then lexicographically.
    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.index().by_size.iter().flatten().copied()
    }

    pub fn num_faces(&self) -> usize {
        self.index().index.len()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(
            self.index()
                .by_size
                .iter()
                .map(|l| l.len() as u64)
                .collect(),
        )
    }

    /// `h_k = Σ_{i=0}^{k} (-1)^{k-i} C(d-i, k-i) f_{i-1}`.
    pub fn h_vector(&self) -> HVector {
        let d = self.d() as i64;
        let f = self.f_vector();
        HVector(
            (0..=d)
                .map(|k| {
                    (0..=k)
                        .map(|i| {
                            let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                            sign * binomial(d - i, k - i) * f.get(i - 1) as i64
                        })
                        .sum()
                })
                .collect(),
        )
    }

    /// `Σ_{i ≥ -1} (-1)^i f_i`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .0
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 1 { c as i64 } else { -(c as i64) })
            .sum()
    }

    fn require_face(&self, sigma: Face) -> Result<()> {
        if self.contains(sigma) {
            Ok(())
        } else {
            Err(Error::NotAFace {
                face: sigma.to_string(),
            })
        }
    }

    /// `st σ = {τ : τ ∪ σ ∈ K}`.
    pub fn star(&self, sigma: Face) -> Result<Self> {
        self.require_face(sigma)?;
        Self::new(
            self.n,
            self.facets.iter().copied().filter(|f| sigma.is_subset(*f)),
        )
    }

    /// `lk σ = {τ ∈ st σ : τ ∩ σ = ∅}`.
    pub fn link(&self, sigma: Face) -> Result<Self> {
        self.require_face(sigma)?;
        Self::new(
            self.n,
            self.facets
                .iter()
                .filter(|f| sigma.is_subset(**f))
                .map(|f| f.minus(sigma)),
        )
    }

    /// `cost σ = {τ ∈ K : σ ⊄ τ}`. For `σ = ∅` this is the void complex.
    pub fn costar(&self, sigma: Face) -> Result<Self> {
        self.require_face(sigma)?;
        Self::new(self.n, self.faces().filter(|t| !sigma.is_subset(*t)))
    }

    /// Whether every face of `other` is a face of `self` (same `n`).
    pub fn contains_complex(&self, other: &SimplicialComplex) -> bool {
        other.facets.iter().all(|f| self.contains(*f))
    }

    /// Connected components, each as a vertex set, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Face> {
        let mut comps: Vec<Face> = Vec::new();
        for f in &self.facets {
            if f.is_empty() {
                continue;
            }
            let mut merged = *f;
            comps.retain(|c| {
                if c.intersection(merged).is_empty() {
                    true
                } else {
                    merged = merged.union(*c);
                    false
                }
            });
            comps.push(merged);
        }
        comps.sort_by_key(|c| c.vertices().next());
        comps
    }

    /// Minimal subsets of `[n]` that are not faces (generators of the
    /// Stanley–Reisner ideal).
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        let mut out: HashSet<Face> = HashSet::new();
        if self.is_void() {
            return vec![Face::EMPTY];
        }
        for tau in self.faces() {
            for v in 0..self.n {
                if tau.contains(v) {
                    continue;
                }
                let sigma = tau.with(v);
                if !self.contains(sigma)
                    && sigma.vertices().all(|u| self.contains(sigma.without(u)))
                {
                    out.insert(sigma);
                }
            }
        }
        let mut out: Vec<Face> = out.into_iter().collect();
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_one_based(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap()
    }

    #[test]
    fn void_and_empty_face_differ() {
        let v = SimplicialComplex::void(3);
        let e = SimplicialComplex::empty_face(3);
        assert_ne!(v, e);
        assert_eq!(v.f_vector().0, Vec::<u64>::new());
        assert_eq!(e.f_vector().0, vec![1]);
        assert!(!v.contains(Face::EMPTY));
        assert!(e.contains(Face::EMPTY));
    }

    #[test]
    fn generators_are_reduced_to_facets() {
        let k =
            SimplicialComplex::from_one_based(4, &[vec![1, 2, 3], vec![1, 2], vec![4]]).unwrap();
        assert_eq!(k.facets_one_based(), vec![vec![4], vec![1, 2, 3]]);
        assert!(!k.is_pure());
    }

    #[test]
    fn out_of_range_vertex_rejected() {
        assert!(matches!(
            SimplicialComplex::from_one_based(3, &[vec![1, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
        assert!(SimplicialComplex::from_one_based(3, &[vec![0]]).is_err());
    }

    #[test]
    fn hollow_triangle_vectors() {
        let k = hollow_triangle();
        assert_eq!(k.f_vector().0, vec![1, 3, 3]);
        assert_eq!(k.h_vector().0, vec![1, 1, 1]);
        assert_eq!(k.reduced_euler_characteristic(), -1 + 3 - 3);
        assert_eq!(k.faces_of_size(1).len(), 3);
        assert_eq!(k.face_index(Face::from_vertices([1, 2])), Some(2));
    }

    #[test]
    fn star_link_costar() {
        let k = hollow_triangle();
        let v = Face::singleton(0);
        assert_eq!(
            k.star(v).unwrap().facets_one_based(),
            vec![vec![1, 2], vec![1, 3]]
        );
        assert_eq!(
            k.link(v).unwrap().facets_one_based(),
            vec![vec![2], vec![3]]
        );
        assert_eq!(k.costar(v).unwrap().facets_one_based(), vec![vec![2, 3]]);
        assert!(k.costar(Face::EMPTY).unwrap().is_void());
        assert_eq!(k.link(Face::EMPTY).unwrap(), k);
        assert!(k.link(Face::full(3)).is_err());
    }

    #[test]
    fn minimal_nonfaces_of_triangle() {
        let k = hollow_triangle();
        assert_eq!(k.minimal_nonfaces(), vec![Face::full(3)]);
        let s = SimplicialComplex::from_one_based(4, &[vec![1, 2]]).unwrap();
        assert_eq!(
            s.minimal_nonfaces(),
            vec![Face::singleton(2), Face::singleton(3)]
        );
    }

    #[test]
    fn components_merge() {
        let k =
            SimplicialComplex::from_one_based(5, &[vec![1, 2], vec![3, 4], vec![2, 3], vec![5]])
                .unwrap();
        assert_eq!(k.components().len(), 2);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(3, -1), 0);
    }
}
