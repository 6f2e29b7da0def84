//! Local cohomology of `k[K]` in internal degree `-j`, split by character.
//!
//! The degree `-j` part of local cohomology is computed by the complex
//! `C^t = ⊕_{|σ| = t} k[K]_{t(j+1) - j} · φ_σ` with differential
//! `φ_σ ↦ Σ_{k ∉ σ} (-1)^{pos(k)} x_k^{j+1} φ_{σ ∪ k}`. It splits over the
//! Z^n-multidegree `a = exp(μ) − (j+1)·1_σ` of a basis element `μ φ_σ`,
//! and every strand has ±1 entries. The group permutes strands; a free orbit
//! of strands contributes its cohomology equally to all characters, and a
//! fixed strand is split through its isotypic subcomplexes.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::action::{orbits_by, validate_action, CyclicAction};
use crate::cohomology::{hochster_rhs_fine, CostarTable};
use crate::complex::{binomial, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::echelon::{rank, rank_prescreened, to_cyclotomic};
use crate::linalg::{rat, Cyclotomic, Rational, SignedPermutation, SparseMatrix, SparseVec};
use crate::monomial::{t_slice, ExponentVector};

/// Size limits for the local cohomology engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub max_n: usize,
    pub max_j: u32,
    /// Pre-screen ranks modulo a word-sized prime before exact elimination.
    pub fast_mod: bool,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_n: 14,
            max_j: 3,
            fast_mod: false,
        }
    }
}

impl Caps {
    /// Parses `n=..,j=..` (either key may be omitted).
    pub fn parse(s: &str) -> Result<Self> {
        let mut caps = Caps::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("malformed cap `{part}`")))?;
            let bad = || Error::Invalid(format!("malformed cap value `{part}`"));
            match key.trim() {
                "n" => caps.max_n = value.trim().parse().map_err(|_| bad())?,
                "j" => caps.max_j = value.trim().parse().map_err(|_| bad())?,
                other => return Err(Error::Invalid(format!("unknown cap `{other}`"))),
            }
        }
        Ok(caps)
    }

    pub fn check(&self, n: usize, j: u32) -> Result<()> {
        if n > self.max_n {
            return Err(Error::CapExceeded(format!(
                "n = {n} exceeds the cap {}",
                self.max_n
            )));
        }
        if j > self.max_j {
            return Err(Error::CapExceeded(format!(
                "j = {j} exceeds the cap {}",
                self.max_j
            )));
        }
        Ok(())
    }
}

/// One multidegree strand of the complex.
struct Strand<'a> {
    k: &'a SimplicialComplex,
    a: Vec<i32>,
    j: u32,
}

impl<'a> Strand<'a> {
    /// Basis in degree `t`: the `σ ⊇ {a < 0}` with `|σ| = t` and
    /// `supp(a + (j+1)·1_σ)` a face.
    fn basis(&self, t: usize) -> Vec<Face> {
        let jj = self.j as i32 + 1;
        let neg = Face::from_vertices((0..self.a.len()).filter(|&v| self.a[v] < 0));
        if neg.len() > t {
            return Vec::new();
        }
        let mut out: Vec<Face> = Face::full(self.a.len())
            .minus(neg)
            .subsets_of_size(t - neg.len())
            .into_iter()
            .map(|s| s.union(neg))
            .filter(|sigma| {
                let supp = Face::from_vertices(
                    (0..self.a.len())
                        .filter(|&v| self.a[v] + if sigma.contains(v) { jj } else { 0 } > 0),
                );
                self.k.contains(supp)
            })
            .collect();
        out.sort();
        out
    }

    fn differential(src: &[Face], dst: &[Face]) -> SparseMatrix<Rational> {
        let mut trip = Vec::new();
        for (c, sigma) in src.iter().enumerate() {
            for (r, tau) in dst.iter().enumerate().filter(|(_, t)| sigma.is_subset(**t)) {
                let v = tau
                    .minus(*sigma)
                    .vertices()
                    .next()
                    .expect("one extra vertex");
                let sign = if tau.position(v) % 2 == 0 { 1 } else { -1 };
                trip.push((r, c, rat(sign)));
            }
        }
        SparseMatrix::from_triplets(dst.len(), src.len(), trip)
    }

    fn action(a: &CyclicAction, basis: &[Face]) -> SignedPermutation {
        let index: HashMap<Face, usize> = basis.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        SignedPermutation {
            target: basis.iter().map(|f| index[&a.apply_face(*f)]).collect(),
            sign: basis.iter().map(|f| a.face_sign(*f)).collect(),
        }
    }
}

fn rank_rational(m: &SparseMatrix<Rational>, caps: &Caps) -> usize {
    if caps.fast_mod {
        rank_prescreened(&to_cyclotomic(m, 1))
    } else {
        rank(m)
    }
}

fn rank_cyclotomic(m: &SparseMatrix<Cyclotomic>, caps: &Caps) -> usize {
    if caps.fast_mod {
        rank_prescreened(m)
    } else {
        rank(m)
    }
}

fn apply_all(
    m: &SparseMatrix<Cyclotomic>,
    vs: &[SparseVec<Cyclotomic>],
    rows: usize,
) -> SparseMatrix<Cyclotomic> {
    let cols: Vec<SparseVec<Cyclotomic>> = vs.iter().map(|v| m.mul_vec(v)).collect();
    SparseMatrix::from_columns(rows, &cols)
}

/// Character dimensions of `H^t` of a complex with a signed-permutation
/// action, via `dim H^t_c = dim E^t_c − rk d^t|E^t_c − rk d^{t-1}|E^{t-1}_c`.
fn fixed_strand_split(
    prev: &[Face],
    mid: &[Face],
    next: &[Face],
    a: &CyclicAction,
    caps: &Caps,
) -> Vec<usize> {
    let p = a.p();
    let d_prev = to_cyclotomic(&Strand::differential(prev, mid), p);
    let d_next = to_cyclotomic(&Strand::differential(mid, next), p);
    let g_prev = Strand::action(a, prev);
    let g_mid = Strand::action(a, mid);
    (0..p)
        .map(|c| {
            let e_mid = g_mid.eigenbasis(p, c);
            let e_prev = g_prev.eigenbasis(p, c);
            let out_rank = rank_cyclotomic(&apply_all(&d_next, &e_mid, next.len()), caps);
            let in_rank = rank_cyclotomic(&apply_all(&d_prev, &e_prev, mid.len()), caps);
            e_mid.len() - out_rank - in_rank
        })
        .collect()
}

/// `dim H^i_m(k[K])_{(-j, χ_c)}` for `c = 0..p`.
pub fn local_cohomology_fine(
    k: &SimplicialComplex,
    a: &CyclicAction,
    i: i64,
    j: u32,
    caps: &Caps,
) -> Result<Vec<usize>> {
    caps.check(k.n(), j)?;
    let p = a.p() as usize;
    let n = k.n();
    if i < 0 || i as usize > n {
        return Ok(vec![0; p]);
    }
    let t = i as usize;
    let deg = i * (j as i64 + 1) - j as i64;
    if deg < 0 {
        return Ok(vec![0; p]);
    }
    let jj = j as i32 + 1;
    let mut strands: BTreeSet<Vec<i32>> = BTreeSet::new();
    let monomials = t_slice(k, deg as u32);
    for sigma in Face::full(n).subsets_of_size(t) {
        for mu in &monomials {
            strands.insert(
                (0..n)
                    .map(|v| mu.0[v] as i32 - if sigma.contains(v) { jj } else { 0 })
                    .collect(),
            );
        }
    }
    let orbits = orbits_by(strands, a.p(), |x: &Vec<i32>| a.push_forward(x));
    let parts: Vec<Vec<usize>> = orbits
        .orbits
        .par_iter()
        .map(|orbit| {
            let strand = Strand {
                k,
                a: orbit[0].clone(),
                j,
            };
            let prev = if t == 0 {
                Vec::new()
            } else {
                strand.basis(t - 1)
            };
            let mid = strand.basis(t);
            let next = strand.basis(t + 1);
            if orbit.len() == 1 {
                fixed_strand_split(&prev, &mid, &next, a, caps)
            } else {
                let r_out = rank_rational(&Strand::differential(&mid, &next), caps);
                let r_in = rank_rational(&Strand::differential(&prev, &mid), caps);
                vec![mid.len() - r_out - r_in; p]
            }
        })
        .collect();
    let mut out = vec![0; p];
    for part in parts {
        for (o, x) in out.iter_mut().zip(part) {
            *o += x;
        }
    }
    Ok(out)
}

/// The whole complex in internal degree `-j`, built without splitting into
/// strands. Used to cross-check the strand computation on small inputs.
pub struct KoszulHomComplex {
    p: u32,
    bases: Vec<Vec<(Face, ExponentVector)>>,
    differentials: Vec<SparseMatrix<Rational>>,
    actions: Vec<SignedPermutation>,
}

impl KoszulHomComplex {
    /// Builds `C^0 → … → C^n` and checks `δ² = 0` and `gδ = δg`.
    pub fn build(k: &SimplicialComplex, a: &CyclicAction, j: u32, caps: &Caps) -> Result<Self> {
        caps.check(k.n(), j)?;
        let n = k.n();
        let jj = j + 1;
        let mut bases = Vec::with_capacity(n + 1);
        for t in 0..=n {
            let deg = t as i64 * jj as i64 - j as i64;
            let mut basis = Vec::new();
            if deg >= 0 {
                let monomials = t_slice(k, deg as u32);
                for sigma in Face::full(n).subsets_of_size(t) {
                    for mu in &monomials {
                        basis.push((sigma, mu.clone()));
                    }
                }
            }
            basis.sort();
            bases.push(basis);
        }
        let index: Vec<HashMap<(Face, ExponentVector), usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect())
            .collect();
        let mut differentials = Vec::with_capacity(n);
        for t in 0..n {
            let mut trip = Vec::new();
            for (c, (sigma, mu)) in bases[t].iter().enumerate() {
                for v in (0..n).filter(|v| !sigma.contains(*v)) {
                    let mut nu = mu.clone();
                    nu.0[v] += jj;
                    if !k.contains(nu.support()) {
                        continue;
                    }
                    let tau = sigma.with(v);
                    let r = index[t + 1][&(tau, nu)];
                    let sign = if tau.position(v) % 2 == 0 { 1 } else { -1 };
                    trip.push((r, c, rat(sign)));
                }
            }
            differentials.push(SparseMatrix::from_triplets(
                bases[t + 1].len(),
                bases[t].len(),
                trip,
            ));
        }
        let actions: Vec<SignedPermutation> = bases
            .iter()
            .zip(&index)
            .map(|(b, idx)| SignedPermutation {
                target: b
                    .iter()
                    .map(|(s, mu)| idx[&(a.apply_face(*s), a.apply_exponent(mu))])
                    .collect(),
                sign: b.iter().map(|(s, _)| a.face_sign(*s)).collect(),
            })
            .collect();
        let out = Self {
            p: a.p(),
            bases,
            differentials,
            actions,
        };
        out.check_invariants()?;
        Ok(out)
    }

    fn check_invariants(&self) -> Result<()> {
        for t in 0..self.differentials.len().saturating_sub(1) {
            if !self.differentials[t + 1]
                .mul(&self.differentials[t])
                .is_zero()
            {
                return Err(Error::Invariant(format!("δ² ≠ 0 at degree {t}")));
            }
        }
        for (t, d) in self.differentials.iter().enumerate() {
            let lhs = d.mul(&self.actions[t].to_matrix());
            let rhs = self.actions[t + 1].to_matrix().mul(d);
            if lhs != rhs {
                return Err(Error::Invariant(format!(
                    "δ does not commute with g at degree {t}"
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self, t: usize) -> usize {
        self.bases.get(t).map(Vec::len).unwrap_or(0)
    }

    pub fn differential(&self, t: usize) -> &SparseMatrix<Rational> {
        &self.differentials[t]
    }

    /// Character split of `H^t` through the isotypic subcomplexes.
    pub fn cohomology_fine(&self, t: usize) -> Vec<usize> {
        let p = self.p;
        let zero_map = |rows: usize, cols: usize| SparseMatrix::<Cyclotomic>::zeros(rows, cols);
        let d_next = match self.differentials.get(t) {
            Some(d) => to_cyclotomic(d, p),
            None => zero_map(0, self.dim(t)),
        };
        let d_prev = if t == 0 {
            zero_map(self.dim(0), 0)
        } else {
            to_cyclotomic(&self.differentials[t - 1], p)
        };
        (0..p)
            .map(|c| {
                let e_mid = self.actions[t].eigenbasis(p, c);
                let out_rank = rank(&apply_all(&d_next, &e_mid, d_next.rows()));
                let in_rank = if t == 0 {
                    0
                } else {
                    let e_prev = self.actions[t - 1].eigenbasis(p, c);
                    rank(&apply_all(&d_prev, &e_prev, self.dim(t)))
                };
                e_mid.len() - out_rank - in_rank
            })
            .collect()
    }
}

/// `C(n, t) · dim k[K]_{t(j+1) − j}`, the expected size of `C^t`.
pub fn expected_dim(k: &SimplicialComplex, t: usize, j: u32) -> usize {
    let deg = t as i64 * (j as i64 + 1) - j as i64;
    if deg < 0 {
        return 0;
    }
    binomial(k.n() as i64, t as i64) as usize * t_slice(k, deg as u32).len()
}

#[derive(Debug, Clone, Serialize)]
pub struct HochsterPoint {
    pub i: i64,
    pub j: u32,
    /// Local cohomology by character.
    pub lhs: Vec<usize>,
    /// Relative cohomology side by character.
    pub rhs: Vec<usize>,
    /// `lhs[c] == rhs[-c mod p]` for every `c`.
    pub matches: bool,
    pub totals_match: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HochsterComparisonReport {
    pub p: u32,
    pub points: Vec<HochsterPoint>,
    pub all_match: bool,
}

/// Compares both sides of the character-refined Hochster formula on the
/// grid `0 ≤ i ≤ imax`, `0 ≤ j ≤ jmax`.
pub fn verify_refined_hochster(
    k: &SimplicialComplex,
    a: &CyclicAction,
    imax: i64,
    jmax: u32,
    caps: &Caps,
) -> Result<HochsterComparisonReport> {
    if !validate_action(k, a)?.free {
        return Err(Error::NotFree);
    }
    caps.check(k.n(), jmax)?;
    let table = CostarTable::new(k);
    let p = a.p() as usize;
    let grid: Vec<(i64, u32)> = (0..=imax)
        .flat_map(|i| (0..=jmax).map(move |j| (i, j)))
        .collect();
    let points = grid
        .into_iter()
        .map(|(i, j)| {
            let lhs = local_cohomology_fine(k, a, i, j, caps)?;
            let rhs = hochster_rhs_fine(k, a, i, j, Some(&table))?;
            let matches = (0..p).all(|c| lhs[c] == rhs[(p - c) % p]);
            let totals_match = lhs.iter().sum::<usize>() == rhs.iter().sum::<usize>();
            Ok(HochsterPoint {
                i,
                j,
                lhs,
                rhs,
                matches,
                totals_match,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all_match = points.iter().all(|pt| pt.matches && pt.totals_match);
    Ok(HochsterComparisonReport {
        p: a.p(),
        points,
        all_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> (SimplicialComplex, CyclicAction) {
        (
            SimplicialComplex::from_one_based(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap(),
            CyclicAction::from_one_based(3, &[2, 3, 1], false).unwrap(),
        )
    }

    #[test]
    fn caps_parse_and_check() {
        let c = Caps::parse("n=10, j=2").unwrap();
        assert_eq!((c.max_n, c.max_j), (10, 2));
        assert!(c.check(11, 0).is_err());
        assert!(c.check(10, 3).is_err());
        assert!(Caps::parse("q=1").is_err());
        assert_eq!(Caps::parse("").unwrap(), Caps::default());
    }

    #[test]
    fn full_complex_has_expected_sizes_and_agrees_with_strands() {
        let (k, g) = hollow_triangle();
        let caps = Caps::default();
        for j in 0..=2 {
            let c = KoszulHomComplex::build(&k, &g, j, &caps).unwrap();
            for t in 0..=3 {
                assert_eq!(c.dim(t), expected_dim(&k, t, j));
                let whole = c.cohomology_fine(t);
                let split = local_cohomology_fine(&k, &g, t as i64, j, &caps).unwrap();
                assert_eq!(whole, split, "t={t} j={j}");
            }
        }
    }

    #[test]
    fn circle_local_cohomology() {
        // H^2_m(k[C_3]) in degree 0 is one copy of the top class; H^1 vanishes
        // (Cohen–Macaulay).
        let (k, g) = hollow_triangle();
        let caps = Caps::default();
        assert_eq!(
            local_cohomology_fine(&k, &g, 1, 0, &caps).unwrap(),
            vec![0, 0, 0]
        );
        assert_eq!(
            local_cohomology_fine(&k, &g, 2, 0, &caps)
                .unwrap()
                .iter()
                .sum::<usize>(),
            1
        );
        assert_eq!(
            local_cohomology_fine(&k, &g, 2, 1, &caps).unwrap(),
            vec![1, 1, 1]
        );
    }

    #[test]
    fn refined_hochster_on_circle() {
        let (k, g) = hollow_triangle();
        let r = verify_refined_hochster(&k, &g, 3, 2, &Caps::default()).unwrap();
        assert!(r.all_match, "{r:?}");
    }

    #[test]
    fn cap_exceeded_is_reported() {
        let (k, g) = hollow_triangle();
        let caps = Caps {
            max_j: 1,
            ..Caps::default()
        };
        assert!(matches!(
            local_cohomology_fine(&k, &g, 1, 2, &caps),
            Err(Error::CapExceeded(_))
        ));
    }
}
