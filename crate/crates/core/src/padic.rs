//! Truncated p-adic integers `Z/p^m`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth::{binom_mod_p, factorial_valuation, valuation};

/// `residue mod p^prec`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicNum {
    p: u64,
    prec: u32,
    residue: u128,
}

fn modulus(p: u64, prec: u32) -> Option<u128> {
    (p as u128).checked_pow(prec).filter(|m| *m <= u64::MAX as u128)
}

impl PadicNum {
    pub fn new(p: u64, prec: u32, value: i128) -> Result<PadicNum> {
        if prec < 1 {
            return Err(Error::BadPrecision(prec));
        }
        let m = modulus(p, prec).ok_or_else(|| Error::ceiling("p-adic precision", prec as u64, max_prec(p) as u64))?;
        Ok(PadicNum { p, prec, residue: value.rem_euclid(m as i128) as u128 })
    }

    /// Digits `y_0 + y_1 p + ...`, least significant first; precision = number of digits.
    pub fn from_digits(p: u64, digits: &[u64]) -> Result<PadicNum> {
        let v = digits.iter().rev().fold(0i128, |acc, &d| acc * p as i128 + (d % p) as i128);
        PadicNum::new(p, digits.len() as u32, v)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn residue(&self) -> u64 {
        self.residue as u64
    }

    fn m(&self) -> u128 {
        modulus(self.p, self.prec).expect("checked at construction")
    }

    fn join(&self, other: &PadicNum) -> (u32, u128) {
        assert_eq!(self.p, other.p, "mixed primes");
        let prec = self.prec.min(other.prec);
        (prec, modulus(self.p, prec).unwrap())
    }

    pub fn add(&self, other: &PadicNum) -> PadicNum {
        let (prec, m) = self.join(other);
        PadicNum { p: self.p, prec, residue: (self.residue % m + other.residue % m) % m }
    }

    pub fn neg(&self) -> PadicNum {
        let m = self.m();
        PadicNum { residue: (m - self.residue) % m, ..*self }
    }

    pub fn sub(&self, other: &PadicNum) -> PadicNum {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PadicNum) -> PadicNum {
        let (prec, m) = self.join(other);
        PadicNum { p: self.p, prec, residue: (self.residue % m) * (other.residue % m) % m }
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    /// `v_p`, or `None` when zero to precision.
    pub fn valuation(&self) -> Option<u32> {
        (!self.is_zero()).then(|| valuation(self.residue as u64, self.p))
    }

    /// Representative in `(-p^m/2, p^m/2]`.
    pub fn to_int(&self) -> i128 {
        let m = self.m();
        if self.residue > m / 2 {
            self.residue as i128 - m as i128
        } else {
            self.residue as i128
        }
    }

    /// `binom(y, n)` by the falling factorial `y(y-1)...(y-n+1) / n!`.
    ///
    /// The product is formed mod `p^prec` and the `p`-part of `n!` divided out
    /// exactly, so the result carries precision `prec - v_p(n!)`: a caller that
    /// wants `m` digits supplies `y` to `m + v_p(n!)` digits.
    pub fn binom(&self, n: u64) -> Result<PadicNum> {
        let p = self.p;
        let v = factorial_valuation(n, p);
        if v >= self.prec as u64 {
            return Err(Error::PrecisionExhausted(format!(
                "binom(y, {n}) loses {v} digits, y has {}",
                self.prec
            )));
        }
        let wm = self.m();
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..n {
            let factor = (self.residue + wm - (i as u128 % wm)) % wm;
            num = mulmod(num, factor, wm);
            let mut k = i + 1;
            while k % p == 0 {
                k /= p;
            }
            den = mulmod(den, k as u128, wm);
        }
        let pv = (p as u128).pow(v as u32);
        if num % pv != 0 {
            return Err(Error::InexactDivision(format!("falling factorial not divisible by p^{v}")));
        }
        let prec = self.prec - v as u32;
        let target = modulus(p, prec).unwrap();
        let q = (num / pv) % target;
        let inv = inv_mod(den % target, target);
        Ok(PadicNum { p, prec, residue: mulmod(q, inv, target) })
    }

    /// `binom(y, n) mod p`: the falling factorial when its working precision fits, Lucas otherwise.
    pub fn binom_mod_p(&self, n: u64) -> Result<u64> {
        let digits_needed = crate::numth::digits(n, self.p).len() as u32;
        if digits_needed > self.prec {
            return Err(Error::PrecisionExhausted(format!(
                "binom(y, {n}) mod {} needs {digits_needed} digits of y, have {}",
                self.p, self.prec
            )));
        }
        // only y mod p^digits_needed matters mod p; its least representative is used exactly
        let rep = self.residue % (self.p as u128).pow(digits_needed);
        let room = (1 + factorial_valuation(n, self.p)).max(digits_needed as u64);
        if let Some(room) = u32::try_from(room).ok().filter(|&r| modulus(self.p, r).is_some()) {
            let b = PadicNum::new(self.p, room, rep as i128)?.binom(n)?;
            return Ok((b.residue % self.p as u128) as u64);
        }
        Ok(binom_mod_p(rep as u64, n, self.p))
    }
}

impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.residue, self.p, self.prec)
    }
}

/// A `Z_p` exponent: an exact integer or a truncated p-adic number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZpExp {
    Int(i64),
    Padic(PadicNum),
}

impl ZpExp {
    /// `binom(y, n) mod p`.
    pub fn binom_mod_p(&self, p: u64, n: u64) -> Result<u64> {
        match *self {
            ZpExp::Int(y) if y >= 0 => Ok(binom_mod_p(y as u64, n, p)),
            ZpExp::Int(y) => {
                let k = crate::numth::digits(n, p).len().max(1) as u32;
                PadicNum::new(p, k, y as i128)?.binom_mod_p(n)
            }
            ZpExp::Padic(y) => y.binom_mod_p(n),
        }
    }

    pub fn neg(&self) -> ZpExp {
        match *self {
            ZpExp::Int(a) => ZpExp::Int(-a),
            ZpExp::Padic(a) => ZpExp::Padic(a.neg()),
        }
    }

    pub fn add(&self, other: &ZpExp) -> ZpExp {
        match (*self, *other) {
            (ZpExp::Int(a), ZpExp::Int(b)) => ZpExp::Int(a + b),
            (ZpExp::Padic(a), ZpExp::Padic(b)) => ZpExp::Padic(a.add(&b)),
            (ZpExp::Padic(a), ZpExp::Int(b)) | (ZpExp::Int(b), ZpExp::Padic(a)) => {
                ZpExp::Padic(a.add(&PadicNum::new(a.p, a.prec, b as i128).expect("same precision")))
            }
        }
    }
}

/// Largest precision with `p^prec` fitting in 64 bits.
pub fn max_prec(p: u64) -> u32 {
    let mut k = 0;
    while modulus(p, k + 1).is_some() {
        k += 1;
    }
    k
}

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    // m < 2^64 keeps the product inside u128
    a % m * (b % m) % m
}

fn inv_mod(a: u128, m: u128) -> u128 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(m as i128) as u128
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ring_ops() {
        let a = PadicNum::new(3, 4, -1).unwrap();
        assert_eq!(a.residue(), 80);
        assert_eq!(a.to_int(), -1);
        let b = PadicNum::new(3, 2, 5).unwrap();
        assert_eq!(a.add(&b).precision(), 2);
        assert_eq!(a.add(&b).residue(), 4);
        assert_eq!(PadicNum::new(3, 4, 18).unwrap().valuation(), Some(2));
        assert!(PadicNum::new(3, 0, 1).is_err());
    }

    #[test]
    fn binom_matches_exact_for_integers() {
        for p in [2u64, 3, 5] {
            let mut row = vec![1u128];
            for y in 0..60u64 {
                let yy = PadicNum::new(p, max_prec(p), y as i128).unwrap();
                for (n, &exact) in row.iter().enumerate() {
                    match yy.binom(n as u64) {
                        Ok(b) => {
                            let m = (p as u128).pow(b.precision());
                            assert_eq!(b.residue() as u128, exact % m, "p={p} y={y} n={n}");
                        }
                        Err(_) => assert!(factorial_valuation(n as u64, p) >= max_prec(p) as u64),
                    }
                }
                let mut next = vec![1u128; row.len() + 1];
                for k in 1..row.len() {
                    next[k] = row[k - 1] + row[k];
                }
                row = next;
            }
        }
    }

    #[test]
    fn binom_of_negative_one() {
        // binom(-1, n) = (-1)^n
        let y = PadicNum::new(5, 20, -1).unwrap();
        for n in 0..30 {
            let b = y.binom(n).unwrap();
            assert_eq!(b.precision(), 20 - factorial_valuation(n, 5) as u32);
            assert_eq!(b.to_int(), if n % 2 == 0 { 1 } else { -1 });
        }
    }

    proptest! {
        #[test]
        fn falling_factorial_agrees_with_lucas(p in prop::sample::select(vec![2u64, 3, 5, 7]), digits in prop::collection::vec(0u64..7, 1..12), n in 0u64..200) {
            let y = PadicNum::from_digits(p, &digits).unwrap();
            match y.binom_mod_p(n) {
                Ok(b) => {
                    prop_assert_eq!(b, binom_mod_p(y.residue(), n, p));
                }
                Err(Error::PrecisionExhausted(_)) => {
                    prop_assert!(crate::numth::digits(n, p).len() > digits.len());
                }
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }
}
