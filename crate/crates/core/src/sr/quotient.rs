//! Artinian reductions `k[K]/Θ` and sigma-module quotients, degree by
//! degree and character by character.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::hilbert::FineHilbert;
use super::lsop::{random_equivariant_form, Lsop};
use super::ring::{GradedRing, LinearForm};
use crate::action::CyclicAction;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, Cyclotomic, RowEchelon, SparseMatrix, SparseVec};

type Key = (u32, u32);
type Span = Arc<RowEchelon<Cyclotomic>>;
type Basis = Arc<Vec<SparseVec<Cyclotomic>>>;

/// Caches the multiplication maps and the spans `(ΘR)_i^c` and `Σ_i^c`.
pub struct QuotientEngine<'a> {
    ring: GradedRing<'a>,
    lsop: &'a Lsop,
    m: u32,
    images: Mutex<HashMap<(u32, u32, usize), Basis>>,
    theta: Mutex<HashMap<Key, Span>>,
    sigma: Mutex<HashMap<Key, Span>>,
}

fn cached<K: std::hash::Hash + Eq + Copy, V: Clone>(
    cache: &Mutex<HashMap<K, V>>,
    key: K,
    build: impl FnOnce() -> V,
) -> V {
    if let Some(v) = cache.lock().expect("cache").get(&key) {
        return v.clone();
    }
    let v = build();
    cache.lock().expect("cache").entry(key).or_insert(v).clone()
}

impl<'a> QuotientEngine<'a> {
    /// With `action = None` every piece is a single character in the
    /// monomial basis, which is how non-equivariant systems are handled.
    pub fn new(
        k: &'a SimplicialComplex,
        action: Option<&'a CyclicAction>,
        lsop: &'a Lsop,
    ) -> Result<Self> {
        lsop.validate(k, action)?;
        let ring = GradedRing::new(k, action, lsop.field_p)?;
        let m = lsop.character.unwrap_or(0) % ring.characters();
        Ok(Self {
            ring,
            lsop,
            m,
            images: Mutex::new(HashMap::new()),
            theta: Mutex::new(HashMap::new()),
            sigma: Mutex::new(HashMap::new()),
        })
    }

    pub fn ring(&self) -> &GradedRing<'a> {
        &self.ring
    }

    pub fn characters(&self) -> u32 {
        self.ring.characters()
    }

    fn d(&self) -> u32 {
        self.ring.complex().d() as u32
    }

    fn shift(&self, c: u32, by: i64) -> u32 {
        (c as i64 + by).rem_euclid(self.characters() as i64) as u32
    }

    fn form(&self, s: usize) -> &LinearForm {
        &self.lsop.forms[s]
    }

    /// `θ_s · b` for each basis vector `b` of degree `i`, character `c`,
    /// in coordinates of degree `i+1`, character `c+m`.
    pub fn form_images(&self, i: u32, c: u32, s: usize) -> Basis {
        cached(&self.images, (i, c, s), || {
            let src = self.ring.piece(i);
            let dst = self.ring.piece(i + 1);
            let target = self.shift(c, self.m as i64);
            let one = self.ring.one();
            let out = (0..src.dim(c))
                .map(|r| {
                    let v = src.expand(c, self.ring.field_p(), &SparseVec::unit(r, one.clone()));
                    dst.read(target, &self.ring.times_form(i, &v, self.form(s)))
                })
                .collect();
            Arc::new(out)
        })
    }

    /// Echelon form of `(Θ k[K])_i^c`.
    pub fn theta_span(&self, i: u32, c: u32) -> Span {
        cached(&self.theta, (i, c), || {
            let cols = self.ring.dim(i, c);
            if i == 0 {
                return Arc::new(RowEchelon::new(cols));
            }
            let src = self.shift(c, -(self.m as i64));
            let images: Vec<Basis> = (0..self.lsop.forms.len())
                .map(|s| self.form_images(i - 1, src, s))
                .collect();
            Arc::new(RowEchelon::from_rows(
                cols,
                images.iter().flat_map(|v| v.iter()),
            ))
        })
    }

    /// `((θ_r : r ≠ s) k[K] : θ_s)` in degree `i`, character `c`.
    pub fn colon(&self, i: u32, c: u32, s: usize) -> Vec<SparseVec<Cyclotomic>> {
        let dim = self.ring.dim(i, c);
        if dim == 0 {
            return Vec::new();
        }
        let rows = self.ring.dim(i + 1, self.shift(c, self.m as i64));
        let mut columns: Vec<SparseVec<Cyclotomic>> = self.form_images(i, c, s).as_ref().clone();
        for r in (0..self.lsop.forms.len()).filter(|&r| r != s) {
            columns.extend(self.form_images(i, c, r).iter().cloned());
        }
        let matrix = SparseMatrix::from_columns(rows, &columns);
        kernel_basis(&matrix, &self.ring.one())
            .into_iter()
            .map(|v| v.slice(0..dim))
            .filter(|v| !v.is_zero())
            .collect()
    }

    /// Echelon form of `Σ(Θ; k[K])_i^c`.
    pub fn sigma_span(&self, i: u32, c: u32) -> Span {
        cached(&self.sigma, (i, c), || {
            let mut ech = self.theta_span(i, c).as_ref().clone();
            for s in 0..self.lsop.forms.len() {
                for v in self.colon(i, c, s) {
                    ech.insert(&v);
                }
            }
            Arc::new(ech)
        })
    }

    fn quotient_dim(&self, i: u32, c: u32, span: &RowEchelon<Cyclotomic>) -> i64 {
        (self.ring.dim(i, c) - span.rank()) as i64
    }

    /// Fine Hilbert function of `k[K]/Θ` on degrees `0..=d`, after checking
    /// that degrees `d+1` and `d+2` vanish.
    pub fn artinian(&self) -> Result<FineHilbert> {
        let d = self.d();
        let q = self.characters();
        for i in d + 1..=d + 2 {
            let dim: i64 = (0..q)
                .map(|c| self.quotient_dim(i, c, &self.theta_span(i, c)))
                .sum();
            if dim != 0 {
                return Err(Error::NonvanishingTail {
                    degree: i as usize,
                    dim: dim as usize,
                });
            }
        }
        let mut out = FineHilbert::zeros(q, d as usize + 1);
        for i in 0..=d {
            for c in 0..q {
                out.dims[i as usize][c as usize] = self.quotient_dim(i, c, &self.theta_span(i, c));
            }
        }
        Ok(out)
    }

    pub fn sigma(&self) -> Result<SigmaTables> {
        let artinian = self.artinian()?;
        let d = self.d();
        let q = self.characters();
        let mut sigma_over_theta = FineHilbert::zeros(q, d as usize + 1);
        let mut quotient = FineHilbert::zeros(q, d as usize + 1);
        for i in 0..=d {
            for c in 0..q {
                let sigma = self.sigma_span(i, c);
                let theta = self.theta_span(i, c);
                sigma_over_theta.dims[i as usize][c as usize] =
                    (sigma.rank() - theta.rank()) as i64;
                quotient.dims[i as usize][c as usize] = self.quotient_dim(i, c, &sigma);
            }
        }
        Ok(SigmaTables {
            artinian,
            sigma_over_theta,
            quotient,
        })
    }

    /// Unit vectors at the non-pivot columns: a basis of `(k[K]/Σ)_i^c`.
    fn quotient_basis(&self, i: u32, c: u32) -> Vec<usize> {
        let span = self.sigma_span(i, c);
        (0..self.ring.dim(i, c))
            .filter(|&col| !span.is_pivot(col))
            .collect()
    }

    /// Multiplication pairing `(k[K]/Σ)_i^j × (k[K]/Σ)_{d-i}^{s-j} → (k[K]/Σ)_d^s`.
    pub fn pairing(&self) -> Result<PairingReport> {
        self.artinian()?;
        let d = self.d();
        let q = self.characters();
        let tops: Vec<(u32, Vec<usize>)> = (0..q).map(|c| (c, self.quotient_basis(d, c))).collect();
        let top_dim: usize = tops.iter().map(|(_, b)| b.len()).sum();
        if top_dim != 1 {
            return Err(Error::TopNotOneDimensional { dim: top_dim });
        }
        let (s, socle_col) = tops
            .iter()
            .find_map(|(c, b)| b.first().map(|&col| (*c, col)))
            .expect("one top vector");
        let top_piece = self.ring.piece(d);
        let top_span = self.sigma_span(d, s);
        let field_p = self.ring.field_p();
        let one = self.ring.one();

        let mut entries = Vec::new();
        for i in 0..=d {
            for j in 0..q {
                let k = self.shift(s, -(j as i64));
                let left = self.quotient_basis(i, j);
                let right = self.quotient_basis(d - i, k);
                let (lp, rp) = (self.ring.piece(i), self.ring.piece(d - i));
                let right_vecs: Vec<_> = right
                    .iter()
                    .map(|&col| rp.expand(k, field_p, &SparseVec::unit(col, one.clone())))
                    .collect();
                let rows: Vec<Vec<Cyclotomic>> = left
                    .iter()
                    .map(|&col| {
                        let u = lp.expand(j, field_p, &SparseVec::unit(col, one.clone()));
                        right_vecs
                            .iter()
                            .map(|w| {
                                let prod = top_piece.read(s, &self.ring.product(i, &u, d - i, w));
                                top_span
                                    .reduce(&prod)
                                    .get(socle_col)
                                    .cloned()
                                    .unwrap_or_else(|| Cyclotomic::zero(field_p))
                            })
                            .collect()
                    })
                    .collect();
                let r = if left.is_empty() || right.is_empty() {
                    0
                } else {
                    rank(&SparseMatrix::from_dense(&rows))
                };
                entries.push(PairingEntry {
                    degree: i,
                    character: j,
                    partner_character: k,
                    left_dim: left.len(),
                    right_dim: right.len(),
                    rank: r,
                    perfect: r == left.len() && r == right.len(),
                });
            }
        }
        Ok(PairingReport {
            socle_degree: d,
            socle_character: s,
            perfect: entries.iter().all(|e| e.perfect),
            entries,
        })
    }

    /// Searches for `ω ∈ A_1^{m'}` whose multiplication
    /// `(k[K]/Σ)_{i-1} → (k[K]/Σ)_i` is injective for all `i ≤ ⌊d/2⌋`.
    pub fn lefschetz(&self, seed: u64, trials: u32) -> Result<LefschetzReport> {
        self.artinian()?;
        let a = self
            .ring
            .action()
            .ok_or_else(|| Error::Invalid("Lefschetz probe needs an action".into()))?;
        let k = self.ring.complex();
        let q = self.characters();
        let d = self.d();
        let field_p = self.ring.field_p();
        let one = self.ring.one();
        let mut per_character = Vec::new();
        for m2 in 0..q {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(m2 as u64));
            let mut found = None;
            for trial in 1..=trials {
                let omega = random_equivariant_form(k, a, m2, &mut rng);
                let ok = (1..=d / 2).all(|i| {
                    (0..q).all(|j| {
                        let basis = self.quotient_basis(i - 1, j);
                        if basis.is_empty() {
                            return true;
                        }
                        let target = self.shift(j, m2 as i64);
                        let span = self.sigma_span(i, target);
                        let src = self.ring.piece(i - 1);
                        let dst = self.ring.piece(i);
                        let images: Vec<SparseVec<Cyclotomic>> = basis
                            .iter()
                            .map(|&col| {
                                let v = src.expand(j, field_p, &SparseVec::unit(col, one.clone()));
                                span.reduce(
                                    &dst.read(target, &self.ring.times_form(i - 1, &v, &omega)),
                                )
                            })
                            .collect();
                        RowEchelon::from_rows(self.ring.dim(i, target), images.iter()).rank()
                            == basis.len()
                    })
                });
                if ok {
                    found = Some(trial);
                    break;
                }
            }
            per_character.push(LefschetzOutcome {
                character: m2,
                found: found.is_some(),
                trial: found,
            });
        }
        Ok(LefschetzReport {
            seed,
            trials,
            vacuous: d <= 1,
            per_character,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaTables {
    pub artinian: FineHilbert,
    pub sigma_over_theta: FineHilbert,
    pub quotient: FineHilbert,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingEntry {
    pub degree: u32,
    pub character: u32,
    pub partner_character: u32,
    pub left_dim: usize,
    pub right_dim: usize,
    pub rank: usize,
    pub perfect: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingReport {
    pub socle_degree: u32,
    pub socle_character: u32,
    pub entries: Vec<PairingEntry>,
    pub perfect: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzOutcome {
    pub character: u32,
    pub found: bool,
    /// 1-based index of the successful draw.
    pub trial: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub seed: u64,
    pub trials: u32,
    /// No injectivity condition applies when `d ≤ 1`.
    pub vacuous: bool,
    pub per_character: Vec<LefschetzOutcome>,
}

pub fn artinian_fine_hilbert(
    k: &SimplicialComplex,
    a: Option<&CyclicAction>,
    lsop: &Lsop,
) -> Result<FineHilbert> {
    QuotientEngine::new(k, a, lsop)?.artinian()
}

pub fn sigma_fine(
    k: &SimplicialComplex,
    a: Option<&CyclicAction>,
    lsop: &Lsop,
) -> Result<SigmaTables> {
    QuotientEngine::new(k, a, lsop)?.sigma()
}

pub fn pairing_report(
    k: &SimplicialComplex,
    a: &CyclicAction,
    lsop: &Lsop,
) -> Result<PairingReport> {
    QuotientEngine::new(k, Some(a), lsop)?.pairing()
}

pub fn lefschetz_probe(
    k: &SimplicialComplex,
    a: &CyclicAction,
    lsop: &Lsop,
    seed: u64,
    trials: u32,
) -> Result<LefschetzReport> {
    QuotientEngine::new(k, Some(a), lsop)?.lefschetz(seed, trials)
}

/// Whether every graded piece of `Σ(Θ; k[K])` through degree `d` is mapped
/// into itself by `g`, tested in the monomial basis.
pub fn sigma_is_stable(k: &SimplicialComplex, a: &CyclicAction, lsop: &Lsop) -> Result<bool> {
    let engine = QuotientEngine::new(k, None, lsop)?;
    for i in 0..=k.d() as u32 {
        let span = engine.sigma_span(i, 0);
        let piece = engine.ring().piece(i);
        if span
            .rows()
            .iter()
            .any(|row| !span.contains(&piece.act(a, row)))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sr::lsop::{build_generic_lsop, build_lsop};

    fn nine_gon() -> (SimplicialComplex, CyclicAction) {
        let facets: Vec<Vec<usize>> = (0..9).map(|i| vec![i + 1, (i + 1) % 9 + 1]).collect();
        let images: Vec<usize> = (0..9).map(|i| (i + 3) % 9 + 1).collect();
        (
            SimplicialComplex::from_one_based(9, &facets).unwrap(),
            CyclicAction::from_one_based(3, &images, false).unwrap(),
        )
    }

    fn octahedron() -> (SimplicialComplex, CyclicAction) {
        let mut facets = Vec::new();
        for a in [1, 4] {
            for b in [2, 5] {
                for c in [3, 6] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        (
            SimplicialComplex::from_one_based(6, &facets).unwrap(),
            CyclicAction::from_one_based(2, &[4, 5, 6, 1, 2, 3], false).unwrap(),
        )
    }

    #[test]
    fn nine_gon_invariant_reduction() {
        let (k, g) = nine_gon();
        let l = build_lsop(&k, &g, 0, 0).unwrap();
        let h = artinian_fine_hilbert(&k, Some(&g), &l).unwrap();
        assert_eq!(h.dims, vec![vec![1, 0, 0], vec![1, 3, 3], vec![1, 0, 0]]);
    }

    #[test]
    fn octahedron_odd_reduction() {
        let (k, g) = octahedron();
        let l = build_lsop(&k, &g, 1, 0).unwrap();
        let h = artinian_fine_hilbert(&k, Some(&g), &l).unwrap();
        assert_eq!(h.dims, vec![vec![1, 0], vec![3, 0], vec![3, 0], vec![1, 0]]);
    }

    #[test]
    fn cohen_macaulay_sigma_equals_theta() {
        let (k, g) = nine_gon();
        let l = build_lsop(&k, &g, 0, 0).unwrap();
        let t = sigma_fine(&k, Some(&g), &l).unwrap();
        assert!(t.sigma_over_theta.dims.iter().flatten().all(|&x| x == 0));
        assert_eq!(t.quotient, t.artinian);
    }

    #[test]
    fn duality_on_nine_gon() {
        let (k, g) = nine_gon();
        let l = build_lsop(&k, &g, 0, 0).unwrap();
        let r = pairing_report(&k, &g, &l).unwrap();
        assert_eq!(r.socle_character, 0);
        assert!(r.perfect);
    }

    #[test]
    fn generic_reduction_has_h_vector_totals() {
        let (k, _) = octahedron();
        let l = build_generic_lsop(&k, 5).unwrap();
        let h = artinian_fine_hilbert(&k, None, &l).unwrap();
        assert_eq!(h.totals(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn sigma_is_g_stable() {
        let (k, g) = nine_gon();
        let l = build_lsop(&k, &g, 1, 2).unwrap();
        assert!(sigma_is_stable(&k, &g, &l).unwrap());
    }

    #[test]
    fn lefschetz_on_nine_gon() {
        let (k, g) = nine_gon();
        let l = build_lsop(&k, &g, 0, 0).unwrap();
        let r = lefschetz_probe(&k, &g, &l, 0, 4).unwrap();
        assert!(r.per_character[0].found);
    }
}
