//! Word-sized prime field used to pre-screen ranks.
//!
//! A prime `q ≡ 1 (mod p)` contains a primitive p-th root of unity `ω`, and
//! `ζ ↦ ω` is a ring map from the q-integral part of Z[ζ_p] onto F_q. Ranks
//! can only drop under reduction, so a full rank mod q certifies full rank in
//! characteristic zero; anything else falls back to exact elimination.

use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::cyclotomic::Cyclotomic;
use super::field::{Field, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModQ {
    v: u64,
    q: u64,
}

impl ModQ {
    pub fn new(v: u64, q: u64) -> Self {
        Self { v: v % q, q }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::new(1, self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            let b = base;
            base *= &b;
            e >>= 1;
        }
        acc
    }
}

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, q);
        }
        a = mulmod(a, a, q);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl AddAssign<&ModQ> for ModQ {
    fn add_assign(&mut self, rhs: &ModQ) {
        let s = self.v as u128 + rhs.v as u128;
        self.v = (s % self.q as u128) as u64;
    }
}

impl SubAssign<&ModQ> for ModQ {
    fn sub_assign(&mut self, rhs: &ModQ) {
        self.v = if self.v >= rhs.v {
            self.v - rhs.v
        } else {
            self.q - (rhs.v - self.v)
        };
    }
}

impl MulAssign<&ModQ> for ModQ {
    fn mul_assign(&mut self, rhs: &ModQ) {
        self.v = mulmod(self.v, rhs.v, self.q);
    }
}

impl Neg for ModQ {
    type Output = ModQ;
    fn neg(self) -> ModQ {
        ModQ {
            v: if self.v == 0 { 0 } else { self.q - self.v },
            q: self.q,
        }
    }
}

impl Field for ModQ {
    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn zero_like(&self) -> Self {
        Self::new(0, self.q)
    }

    fn one_like(&self) -> Self {
        Self::new(1, self.q)
    }

    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero");
        self.pow(self.q - 2)
    }
}

/// A prime field F_q with a chosen primitive p-th root of unity.
#[derive(Clone, Copy, Debug)]
pub struct ModularContext {
    pub q: u64,
    pub p: u32,
    pub omega: u64,
}

impl ModularContext {
    /// Largest prime `q < 2^62` with `q ≡ 1 (mod p)`.
    pub fn for_order(p: u32) -> Self {
        let step = (p.max(2) as u64) * 2;
        let top = 1u64 << 62;
        let mut q = top - (top % step) + 1;
        if q >= top {
            q -= step;
        }
        while !is_prime_u64(q) {
            q -= step;
        }
        let omega = if p <= 1 {
            1
        } else {
            (2..)
                .map(|h| powmod(h, (q - 1) / p as u64, q))
                .find(|&w| w != 1)
                .expect("a primitive root of unity exists")
        };
        Self { q, p, omega }
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let q = BigInt::from(self.q);
        let mut r = n % &q;
        if r < BigInt::zero() {
            r += &q;
        }
        r.to_u64().expect("reduced value fits")
    }

    pub fn reduce_rational(&self, r: &Rational) -> Option<ModQ> {
        let den = self.reduce_int(r.denom());
        if den == 0 {
            return None;
        }
        let num = ModQ::new(self.reduce_int(r.numer()), self.q);
        Some(num.mul_ref(&ModQ::new(den, self.q).inv()))
    }

    pub fn reduce_cyclotomic(&self, c: &Cyclotomic) -> Option<ModQ> {
        let zeta = if c.order() == 2 {
            ModQ::new(self.q - 1, self.q)
        } else {
            ModQ::new(self.omega, self.q)
        };
        let mut acc = ModQ::new(0, self.q);
        let mut power = ModQ::new(1, self.q);
        for coeff in c.coeffs() {
            let mut term = self.reduce_rational(coeff)?;
            term *= &power;
            acc += &term;
            power *= &zeta;
        }
        Some(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_detected() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
        assert!(is_prime_u64((1u64 << 61) - 1));
    }

    #[test]
    fn context_has_root_of_unity() {
        for p in [2u32, 3, 5, 7, 11] {
            let ctx = ModularContext::for_order(p);
            assert_eq!(ctx.q % p as u64, 1);
            assert!(is_prime_u64(ctx.q));
            let w = ModQ::new(ctx.omega, ctx.q);
            assert_eq!(w.pow(p as u64).value(), 1);
            if p > 1 {
                assert_ne!(ctx.omega, 1);
            }
        }
    }

    #[test]
    fn cyclotomic_reduction_is_a_ring_map() {
        let ctx = ModularContext::for_order(5);
        let a = Cyclotomic::zeta_pow(5, 3);
        let b = Cyclotomic::one(5) - Cyclotomic::zeta_pow(5, 1);
        let ab = a.clone() * b.clone();
        let lhs = ctx.reduce_cyclotomic(&ab).unwrap();
        let rhs = ctx
            .reduce_cyclotomic(&a)
            .unwrap()
            .mul_ref(&ctx.reduce_cyclotomic(&b).unwrap());
        assert_eq!(lhs, rhs);
    }
}
