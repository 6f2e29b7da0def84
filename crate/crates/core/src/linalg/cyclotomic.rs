//! Exact arithmetic in the cyclotomic field Q(ζ_p).
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{p-2}`; products are
//! reduced with `ζ^p = 1` and `ζ^{p-1} = -(1 + ζ + … + ζ^{p-2})`. For `p = 2`
//! the field is Q with `ζ = -1`, and `p = 1` is accepted as Q with `ζ = 1`
//! (the trivial group).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::{format_rational, parse_rational, Field, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    p: u32,
    coeffs: Vec<Rational>,
}

/// Number of power-basis coordinates for order `p`.
pub fn field_degree(p: u32) -> usize {
    if p <= 2 {
        1
    } else {
        (p - 1) as usize
    }
}

impl Cyclotomic {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 1, "cyclotomic order must be positive");
        Self {
            p,
            coeffs: vec![Rational::zero(); field_degree(p)],
        }
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, Rational::one())
    }

    pub fn from_rational(p: u32, r: Rational) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] = r;
        out
    }

    pub fn from_i64(p: u32, n: i64) -> Self {
        Self::from_rational(p, super::field::rat(n))
    }

    /// Builds an element from power-basis coordinates. Coordinates beyond the
    /// field degree are folded in with the reduction rules.
    pub fn from_coeffs(p: u32, coeffs: Vec<Rational>) -> Self {
        let mut out = Self::zero(p);
        for (e, c) in coeffs.into_iter().enumerate() {
            out.add_power(e as i64, &c);
        }
        out
    }

    /// `ζ^k`, any integer `k`.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let mut out = Self::zero(p);
        out.add_power(k, &Rational::one());
        out
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// Adds `c·ζ^e` in place.
    fn add_power(&mut self, e: i64, c: &Rational) {
        if Zero::is_zero(c) {
            return;
        }
        match self.p {
            1 => self.coeffs[0] += c,
            2 => {
                if e.rem_euclid(2) == 0 {
                    self.coeffs[0] += c;
                } else {
                    self.coeffs[0] -= c;
                }
            }
            p => {
                let e = e.rem_euclid(p as i64) as usize;
                if e == p as usize - 1 {
                    for x in self.coeffs.iter_mut() {
                        *x -= c;
                    }
                } else {
                    self.coeffs[e] += c;
                }
            }
        }
    }

    /// Galois automorphism `ζ ↦ ζ^k`.
    pub fn galois(&self, k: i64) -> Self {
        let mut out = Self::zero(self.p);
        for (e, c) in self.coeffs.iter().enumerate() {
            out.add_power(e as i64 * k, c);
        }
        out
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.p, other.p,
            "mixing cyclotomic fields of different order"
        );
    }

    /// Power-basis coordinates rendered as `"a/b"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings(p: u32, parts: &[String]) -> Option<Self> {
        let coeffs = parts
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Option<Vec<_>>>()?;
        if coeffs.len() != field_degree(p) {
            return None;
        }
        Some(Self { p, coeffs })
    }
}

impl Field for Cyclotomic {
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.p)
    }

    fn one_like(&self) -> Self {
        Self::one(self.p)
    }

    /// Inverse via the norm: `a⁻¹ = Π_{k=2}^{p-1} σ_k(a) / N(a)`.
    fn inv(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero");
        if field_degree(self.p) == 1 {
            return Self::from_rational(self.p, self.coeffs[0].recip());
        }
        let mut conj = Self::one(self.p);
        for k in 2..self.p as i64 {
            conj *= &self.galois(k);
        }
        let norm = self.mul_ref(&conj);
        let n = norm
            .as_rational()
            .expect("norm of a cyclotomic element is rational")
            .clone();
        let scale = n.recip();
        for c in conj.coeffs.iter_mut() {
            *c *= &scale;
        }
        conj
    }
}

impl<'a> AddAssign<&'a Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &'a Cyclotomic) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl<'a> SubAssign<&'a Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &'a Cyclotomic) {
        self.check_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl<'a> MulAssign<&'a Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &'a Cyclotomic) {
        self.check_same(rhs);
        if field_degree(self.p) == 1 {
            self.coeffs[0] *= &rhs.coeffs[0];
            return;
        }
        let deg = self.coeffs.len();
        let mut raw = vec![Rational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if Zero::is_zero(b) {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        let mut out = Self::zero(self.p);
        for (e, c) in raw.iter().enumerate() {
            out.add_power(e as i64, c);
        }
        *self = out;
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;

    fn neg(mut self) -> Cyclotomic {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self += &rhs;
        self
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self -= &rhs;
        self
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self *= &rhs;
        self
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (e, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", sign)?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            match (e, One::is_one(&mag)) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "ζ")?,
                (1, false) => write!(f, "{}ζ", mag)?,
                (_, true) => write!(f, "ζ^{}", e)?,
                (_, false) => write!(f, "{}ζ^{}", mag, e)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Serialized form: the order and the power-basis coordinates as strings.
#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    p: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CyclotomicRepr {
            p: self.p,
            coeffs: self.to_strings(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = CyclotomicRepr::deserialize(d)?;
        Cyclotomic::from_strings(repr.p, &repr.coeffs)
            .ok_or_else(|| serde::de::Error::custom("malformed cyclotomic coordinates"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{rat, rat_frac};

    #[test]
    fn zeta_identities() {
        for p in [2u32, 3, 5, 7] {
            assert_eq!(Cyclotomic::zeta_pow(p, p as i64), Cyclotomic::one(p));
            let mut sum = Cyclotomic::zero(p);
            for k in 0..p as i64 {
                sum += &Cyclotomic::zeta_pow(p, k);
            }
            assert!(Field::is_zero(&sum), "p={p}");
        }
    }

    #[test]
    fn p2_is_rational_with_minus_one() {
        assert_eq!(Cyclotomic::zeta_pow(2, 1), Cyclotomic::from_i64(2, -1));
    }

    #[test]
    fn inverse_in_q_zeta5() {
        let a = Cyclotomic::from_coeffs(5, vec![rat(2), rat(-1), rat_frac(1, 3), rat(0)]);
        let prod = a.clone() * a.inv();
        assert_eq!(prod, Cyclotomic::one(5));
        let z = Cyclotomic::zeta_pow(5, 1);
        assert_eq!(z.inv(), Cyclotomic::zeta_pow(5, 4));
    }

    #[test]
    fn one_minus_zeta_is_invertible() {
        let x = Cyclotomic::one(7) - Cyclotomic::zeta_pow(7, 1);
        assert_eq!(x.clone() * x.inv(), Cyclotomic::one(7));
    }

    #[test]
    fn display_and_serde() {
        let a = Cyclotomic::from_coeffs(3, vec![rat(1), rat(-2)]);
        assert_eq!(a.to_string(), "1 - 2ζ");
        let json = serde_json::to_string(&a).unwrap();
        let back: Cyclotomic = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);
    }
}
