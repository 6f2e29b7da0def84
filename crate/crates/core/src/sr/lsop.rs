//! Linear systems of parameters: validation and seeded construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ring::LinearForm;
use crate::action::{validate_action, vertex_orbits, CyclicAction};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{rank, rat, Cyclotomic, Field, SparseMatrix};

pub const MAX_ATTEMPTS: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetRank {
    /// 1-based facet.
    pub facet: Vec<usize>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LsopCertificate {
    pub valid: bool,
    pub facet_ranks: Vec<FacetRank>,
}

/// `d` linear forms with their validity certificate and provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lsop {
    /// Order of the cyclotomic field holding the coefficients.
    pub field_p: u32,
    /// Common character of the forms, absent for a non-equivariant system.
    pub character: Option<u32>,
    pub forms: Vec<LinearForm>,
    pub seed: u64,
    pub attempts: u32,
    pub certificate: LsopCertificate,
}

/// Facet-rank criterion: `Θ` is an l.s.o.p. iff `|Θ| = d` and, for every
/// facet `F`, the coefficients of `Θ` on the variables of `F` have rank `|F|`.
pub fn is_lsop(k: &SimplicialComplex, forms: &[LinearForm]) -> LsopCertificate {
    let d = k.d();
    let mut valid = forms.len() == d && forms.iter().all(|f| f.coeffs.len() == k.n());
    let mut facet_ranks = Vec::with_capacity(k.facets().len());
    for facet in k.facets() {
        let vs = facet.to_vec();
        let rank = if forms.iter().all(|f| f.coeffs.len() == k.n()) {
            let rows: Vec<Vec<Cyclotomic>> = forms
                .iter()
                .map(|f| vs.iter().map(|&v| f.coeffs[v].clone()).collect())
                .collect();
            if rows.is_empty() || vs.is_empty() {
                0
            } else {
                rank(&SparseMatrix::from_dense(&rows))
            }
        } else {
            0
        };
        valid &= rank == vs.len();
        facet_ranks.push(FacetRank {
            facet: facet.to_one_based(),
            rank,
        });
    }
    LsopCertificate { valid, facet_ranks }
}

fn nonzero_draw(rng: &mut ChaCha8Rng) -> i64 {
    let magnitude = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) {
        magnitude
    } else {
        -magnitude
    }
}

/// A form of character `m`: random integers on vertex-orbit
/// representatives, extended by `t(g^k v) = ζ^{-km} t(v)`.
pub fn random_equivariant_form(
    k: &SimplicialComplex,
    a: &CyclicAction,
    m: u32,
    rng: &mut ChaCha8Rng,
) -> LinearForm {
    let p = a.p();
    let mut coeffs = vec![Cyclotomic::zero(p); k.n()];
    for orbit in vertex_orbits(k, a).orbits {
        let t = rat(nonzero_draw(rng));
        for (step, &v) in orbit.iter().enumerate() {
            let mut z = Cyclotomic::zeta_pow(p, -(step as i64) * m as i64);
            z *= &Cyclotomic::from_rational(p, t.clone());
            coeffs[v] = z;
        }
    }
    LinearForm {
        coeffs,
        character: m,
    }
}

/// Equivariant l.s.o.p. inside `A_1^m`.
pub fn build_lsop(k: &SimplicialComplex, a: &CyclicAction, m: u32, seed: u64) -> Result<Lsop> {
    if !validate_action(k, a)?.free {
        return Err(Error::NotFree);
    }
    let m = m % a.p();
    let d = k.d();
    let orbits = vertex_orbits(k, a).len();
    if orbits < d {
        return Err(Error::InsufficientIsotypicSpace { orbits, d });
    }
    // columns of orbit-mates are proportional in every form of one character
    if let Some(facet) = k.facets().iter().find(|f| {
        f.vertices()
            .any(|v| (1..a.p() as i64).any(|s| f.contains(a.apply_pow(v, s))))
    }) {
        return Err(Error::OrbitMatesShareFace {
            facet: facet.to_string(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=MAX_ATTEMPTS {
        let forms: Vec<LinearForm> = (0..d)
            .map(|_| random_equivariant_form(k, a, m, &mut rng))
            .collect();
        let certificate = is_lsop(k, &forms);
        if certificate.valid {
            return Ok(Lsop {
                field_p: a.p(),
                character: Some(m),
                forms,
                seed,
                attempts: attempt,
                certificate,
            });
        }
    }
    Err(Error::GenericityExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// Non-equivariant l.s.o.p. over Q with independent random integer
/// coefficients.
pub fn build_generic_lsop(k: &SimplicialComplex, seed: u64) -> Result<Lsop> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=MAX_ATTEMPTS {
        let forms: Vec<LinearForm> = (0..k.d())
            .map(|_| LinearForm {
                coeffs: (0..k.n())
                    .map(|_| Cyclotomic::from_i64(1, nonzero_draw(&mut rng)))
                    .collect(),
                character: 0,
            })
            .collect();
        let certificate = is_lsop(k, &forms);
        if certificate.valid {
            return Ok(Lsop {
                field_p: 1,
                character: None,
                forms,
                seed,
                attempts: attempt,
                certificate,
            });
        }
    }
    Err(Error::GenericityExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

impl Lsop {
    /// Re-checks the certificate against `k`, and homogeneity against `a`
    /// when the system is declared equivariant.
    pub fn validate(&self, k: &SimplicialComplex, a: Option<&CyclicAction>) -> Result<()> {
        if !is_lsop(k, &self.forms).valid {
            return Err(Error::NotLsop);
        }
        if self.forms.iter().any(|f| f.field_order() != self.field_p) {
            return Err(Error::FieldMismatch {
                expected: self.field_p,
                found: self
                    .forms
                    .iter()
                    .map(|f| f.field_order())
                    .find(|&q| q != self.field_p)
                    .unwrap_or(0),
            });
        }
        if let Some(a) = a {
            let m = self.character.ok_or(Error::NotHomogeneous)?;
            if self
                .forms
                .iter()
                .any(|f| f.character != m || !f.is_homogeneous(a))
            {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(())
    }

    /// Whether every coefficient lies in Q.
    pub fn is_rational(&self) -> bool {
        self.forms.iter().all(|f| {
            f.coeffs
                .iter()
                .all(|c| c.is_rational() || Field::is_zero(c))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nine_gon() -> (SimplicialComplex, CyclicAction) {
        let facets: Vec<Vec<usize>> = (0..9).map(|i| vec![i + 1, (i + 1) % 9 + 1]).collect();
        let images: Vec<usize> = (0..9).map(|i| (i + 3) % 9 + 1).collect();
        (
            SimplicialComplex::from_one_based(9, &facets).unwrap(),
            CyclicAction::from_one_based(3, &images, false).unwrap(),
        )
    }

    #[test]
    fn invariant_lsop_on_nine_gon() {
        let (k, g) = nine_gon();
        let l = build_lsop(&k, &g, 0, 0).unwrap();
        assert!(l.certificate.valid);
        assert_eq!(l.forms.len(), 2);
        assert!(l.validate(&k, Some(&g)).is_ok());
    }

    #[test]
    fn repeated_sum_is_not_an_lsop() {
        let (k, _) = nine_gon();
        let all_ones = LinearForm {
            coeffs: vec![Cyclotomic::one(1); 9],
            character: 0,
        };
        assert!(!is_lsop(&k, &[all_ones.clone(), all_ones]).valid);
    }

    #[test]
    fn orbit_mates_on_a_facet_block_construction() {
        // 3x3 grid torus; the axis shift puts orbit-mates on an edge, the
        // diagonal shift does not
        let v = |a: usize, b: usize| 3 * (a % 3) + b % 3 + 1;
        let mut facets = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                facets.push(vec![v(a, b), v(a + 1, b), v(a + 1, b + 1)]);
                facets.push(vec![v(a, b), v(a, b + 1), v(a + 1, b + 1)]);
            }
        }
        let k = SimplicialComplex::from_one_based(9, &facets).unwrap();
        let shift = |db: usize| {
            let mut images = vec![0; 9];
            for a in 0..3 {
                for b in 0..3 {
                    images[v(a, b) - 1] = v(a + 1, b + db);
                }
            }
            CyclicAction::from_one_based(3, &images, false).unwrap()
        };
        assert!(matches!(
            build_lsop(&k, &shift(0), 0, 0),
            Err(Error::OrbitMatesShareFace { .. })
        ));
        assert!(build_lsop(&k, &shift(2), 0, 0).is_ok());
    }

    #[test]
    fn construction_is_deterministic() {
        let (k, g) = nine_gon();
        assert_eq!(
            build_lsop(&k, &g, 1, 7).unwrap(),
            build_lsop(&k, &g, 1, 7).unwrap()
        );
    }

    #[test]
    fn serde_roundtrip() {
        let (k, g) = nine_gon();
        let l = build_lsop(&k, &g, 2, 3).unwrap();
        let json = serde_json::to_string(&l).unwrap();
        let back: Lsop = serde_json::from_str(&json).unwrap();
        assert_eq!(l, back);
        assert!(back.validate(&k, Some(&g)).is_ok());
    }
}
