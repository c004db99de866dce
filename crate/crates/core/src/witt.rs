//! `W = Z_p[ζ_N]` at precision `p^m`, realised as `(Z/p^m)[x]/(h)` where `h`
//! is the minimal polynomial of a primitive `N`-th root of unity, so that the
//! class of `x` is `ζ` itself.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::numth::{gcd, mult_order, valuation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WittElem(Vec<u64>);

impl WittElem {
    /// Coordinates in the basis `1, ζ, ..., ζ^{D-1}`.
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

#[derive(Debug)]
struct Inner {
    p: u64,
    prec: u32,
    modulus: u64,
    n: u64,
    dim: usize,
    h: Vec<u64>,
    zeta_pows: Vec<WittElem>,
}

#[derive(Clone, Debug)]
pub struct WittRing(Arc<Inner>);

impl PartialEq for WittRing {
    fn eq(&self, o: &Self) -> bool {
        self.0.p == o.0.p && self.0.prec == o.0.prec && self.0.n == o.0.n
    }
}

impl WittRing {
    /// `Z_p[ζ_N]` mod `p^prec`, `p ∤ N`.
    pub fn new(p: u64, n: u64, prec: u32) -> Result<WittRing> {
        if prec < 1 {
            return Err(Error::BadPrecision(prec));
        }
        if n == 0 || gcd(n, p) != 1 {
            return Err(Error::Mismatch(format!("root of unity order {n} must be prime to {p}")));
        }
        let modulus = (p as u128)
            .checked_pow(prec)
            .filter(|&m| m < 1u128 << 62)
            .ok_or_else(|| Error::ceiling("Witt precision", prec as u64, crate::padic::max_prec(p) as u64))?
            as u64;
        let dim = mult_order(p % n, n) as usize;
        // minimal polynomial of a primitive N-th root of unity over F_p
        let fpd = Fq::new(p, dim as i64)?;
        let size = (fpd.q() as u64) - 1;
        let beta = fpd.pow(fpd.generator(), size / n);
        let mut hbar = vec![fpd.one()];
        let mut conj = beta;
        for _ in 0..dim {
            let mut next = vec![fpd.zero(); hbar.len() + 1];
            for (i, &c) in hbar.iter().enumerate() {
                next[i + 1] = fpd.add(next[i + 1], c);
                next[i] = fpd.sub(next[i], fpd.mul(c, conj));
            }
            hbar = next;
            conj = fpd.pow(conj, p);
        }
        let h0: Vec<u64> = hbar
            .iter()
            .map(|&c| {
                let coords = fpd.coords(c);
                debug_assert!(coords.iter().skip(1).all(|&x| x == 0));
                coords[0] as u64
            })
            .collect();

        // Teichmüller lift of x in (Z/p^m)[x]/(h0), then its minimal polynomial
        let tmp = WittRing::raw(p, prec, modulus, n, dim, h0.clone());
        let mut z = tmp.x();
        let pd = (p as u128).pow(dim as u32);
        loop {
            let next = tmp.pow_big(&z, pd);
            if next == z {
                break;
            }
            z = next;
        }
        let mut h = vec![tmp.one()];
        let mut conj = z.clone();
        for _ in 0..dim {
            let mut next = vec![tmp.zero(); h.len() + 1];
            for (i, c) in h.iter().enumerate() {
                next[i + 1] = tmp.add(&next[i + 1], c);
                next[i] = tmp.sub(&next[i], &tmp.mul(c, &conj));
            }
            h = next;
            conj = tmp.pow_big(&conj, p as u128);
        }
        let h: Vec<u64> = h
            .into_iter()
            .map(|c| {
                debug_assert!(c.0.iter().skip(1).all(|&x| x == 0));
                c.0[0]
            })
            .collect();
        let mut ring = WittRing::raw(p, prec, modulus, n, dim, h);
        let x = ring.x();
        let mut pows = Vec::with_capacity(n as usize);
        let mut acc = ring.one();
        for _ in 0..n {
            pows.push(acc.clone());
            acc = ring.mul(&acc, &x);
        }
        debug_assert_eq!(acc, ring.one());
        Arc::get_mut(&mut ring.0).expect("fresh").zeta_pows = pows;
        Ok(ring)
    }

    fn raw(p: u64, prec: u32, modulus: u64, n: u64, dim: usize, h: Vec<u64>) -> WittRing {
        WittRing(Arc::new(Inner { p, prec, modulus, n, dim, h, zeta_pows: Vec::new() }))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn precision(&self) -> u32 {
        self.0.prec
    }

    /// `p^prec`.
    pub fn modulus(&self) -> u64 {
        self.0.modulus
    }

    /// Order `N` of `ζ`.
    pub fn root_order(&self) -> u64 {
        self.0.n
    }

    /// `D = [W : Z_p]`.
    pub fn degree(&self) -> usize {
        self.0.dim
    }

    /// Coefficients of `h`, constant term first.
    pub fn defining_poly(&self) -> &[u64] {
        &self.0.h
    }

    pub fn zero(&self) -> WittElem {
        WittElem(vec![0; self.0.dim])
    }

    pub fn one(&self) -> WittElem {
        self.from_int(1)
    }

    fn x(&self) -> WittElem {
        let mut v = vec![0; self.0.dim];
        if self.0.dim == 1 {
            v[0] = (self.0.modulus - self.0.h[0]) % self.0.modulus;
        } else {
            v[1] = 1;
        }
        WittElem(v)
    }

    pub fn from_int(&self, a: i64) -> WittElem {
        let mut v = vec![0; self.0.dim];
        v[0] = (a as i128).rem_euclid(self.0.modulus as i128) as u64;
        WittElem(v)
    }

    /// `ζ^k`.
    pub fn zeta_pow(&self, k: i64) -> WittElem {
        self.0.zeta_pows[k.rem_euclid(self.0.n as i64) as usize].clone()
    }

    pub fn zeta(&self) -> WittElem {
        self.zeta_pow(1)
    }

    pub fn add(&self, a: &WittElem, b: &WittElem) -> WittElem {
        let m = self.0.modulus;
        WittElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % m).collect())
    }

    pub fn neg(&self, a: &WittElem) -> WittElem {
        let m = self.0.modulus;
        WittElem(a.0.iter().map(|x| (m - x) % m).collect())
    }

    pub fn sub(&self, a: &WittElem, b: &WittElem) -> WittElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: i64, a: &WittElem) -> WittElem {
        self.mul(&self.from_int(c), a)
    }

    pub fn mul(&self, a: &WittElem, b: &WittElem) -> WittElem {
        let m = self.0.modulus as u128;
        let dim = self.0.dim;
        let mut prod = vec![0u128; 2 * dim - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % m;
            }
        }
        // reduce by monic h
        let h = &self.0.h;
        for k in (dim..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..dim {
                prod[k - dim + i] = (prod[k - dim + i] + (m - h[i] as u128) * c) % m;
            }
            prod[k] = 0;
        }
        WittElem(prod[..dim].iter().map(|&x| x as u64).collect())
    }

    fn pow_big(&self, a: &WittElem, mut e: u128) -> WittElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: &WittElem, e: u64) -> WittElem {
        self.pow_big(a, e as u128)
    }

    pub fn is_zero(&self, a: &WittElem) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    /// `v_p` (W is unramified over `Z_p`); `None` when zero to precision.
    pub fn valuation(&self, a: &WittElem) -> Option<u32> {
        a.0.iter().filter(|&&x| x != 0).map(|&x| valuation(x, self.0.p)).min()
    }

    pub fn is_unit(&self, a: &WittElem) -> bool {
        self.valuation(a) == Some(0)
    }

    /// The rational integer `c` with `a = c·1`, `|c| < p^m / 2`.
    pub fn to_int(&self, a: &WittElem) -> Result<i64> {
        if a.0.iter().skip(1).any(|&x| x != 0) {
            return Err(Error::NotIntegral(self.fmt(a)));
        }
        let m = self.0.modulus;
        let c = a.0[0];
        Ok(if c > m / 2 { c as i64 - m as i64 } else { c as i64 })
    }

    /// The automorphism `ζ ↦ ζ^k`; `k` must be a power of `p` mod `N`.
    pub fn galois(&self, a: &WittElem, k: i64) -> WittElem {
        debug_assert!(
            (0..self.0.dim as u32).any(|i| crate::numth::pow_mod(self.0.p, i as u64, self.0.n) as i64 == k.rem_euclid(self.0.n as i64)),
            "ζ ↦ ζ^{k} is not an automorphism of W"
        );
        let mut acc = self.zero();
        for (i, &c) in a.0.iter().enumerate() {
            if c != 0 {
                let term = self.zeta_pow(k * i as i64);
                acc = self.add(&acc, &self.mul(&WittElem(pad(c, self.0.dim)), &term));
            }
        }
        acc
    }

    /// `N_{W/Z_p}(a)` as an element of `Z/p^m`, the product over the Frobenius orbit `ζ ↦ ζ^{p^i}`.
    pub fn norm(&self, a: &WittElem) -> u64 {
        let mut acc = self.one();
        let mut k = 1i64;
        for _ in 0..self.0.dim {
            acc = self.mul(&acc, &self.galois(a, k));
            k = (k * self.0.p as i64) % self.0.n as i64;
        }
        debug_assert!(acc.0.iter().skip(1).all(|&x| x == 0));
        acc.0[0]
    }

    pub fn fmt(&self, a: &WittElem) -> String {
        WittDisplay(self, a).to_string()
    }
}

fn pad(c: u64, dim: usize) -> Vec<u64> {
    let mut v = vec![0; dim];
    v[0] = c;
    v
}

struct WittDisplay<'a>(&'a WittRing, &'a WittElem);

impl fmt::Display for WittDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.0;
        let m = ring.modulus();
        let mut first = true;
        for (i, &c) in self.1 .0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let signed = if c > m / 2 { c as i64 - m as i64 } else { c as i64 };
            let (neg, mag) = (signed < 0, signed.unsigned_abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "z")?,
                (1, _) => write!(f, "{mag}*z")?,
                (_, 1) => write!(f, "z^{i}")?,
                _ => write!(f, "{mag}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_examples() {
        let w = WittRing::new(3, 2, 4).unwrap();
        assert_eq!(w.degree(), 1);
        assert_eq!(w.to_int(&w.zeta()).unwrap(), -1);
        assert_eq!(w.modulus(), 81);

        let w = WittRing::new(2, 3, 4).unwrap();
        assert_eq!(w.degree(), 2);
        let h = w.defining_poly();
        assert_eq!(h.len(), 3);
        assert!(h.iter().all(|c| c % 2 == 1), "h ≡ x²+x+1 mod 2: {h:?}");
        // ζ² + ζ + 1 = 0 exactly
        let z = w.zeta();
        let s = w.add(&w.add(&w.mul(&z, &z), &z), &w.one());
        assert!(w.is_zero(&s));

        let w = WittRing::new(2, 1, 5).unwrap();
        assert_eq!(w.degree(), 1);
        assert_eq!(w.zeta(), w.one());
        assert!(WittRing::new(2, 3, 0).is_err());
    }

    #[test]
    fn zeta_has_exact_order() {
        for (p, n) in [(2u64, 3u64), (2, 7), (2, 15), (3, 8), (3, 26), (5, 24), (2, 63), (2, 255)] {
            for prec in [1u32, 3, 12] {
                let w = WittRing::new(p, n, prec).unwrap();
                let z = w.zeta();
                let mut x = w.one();
                for k in 1..=n {
                    x = w.mul(&x, &z);
                    assert_eq!(x == w.one(), k == n, "p={p} n={n} prec={prec} k={k}");
                }
            }
        }
    }

    #[test]
    fn norms_and_conjugation() {
        let w = WittRing::new(2, 7, 12).unwrap();
        assert_eq!(w.degree(), 3);
        // N(1 - ζ) = Π over {ζ, ζ², ζ⁴} of (1 - ζ^i) = h(1)
        let a = w.sub(&w.one(), &w.zeta());
        let h1 = w.defining_poly().iter().fold(0u64, |acc, c| (acc + c) % w.modulus());
        assert_eq!(w.norm(&a), h1);
        // and Φ_7(1) = 7 splits as h(1) times the other factor's value
        assert_eq!(crate::numth::valuation(h1, 2), 0);
        // Frobenius is a ring map
        let x = w.add(&w.zeta_pow(3), &w.from_int(5));
        let y = w.sub(&w.zeta_pow(5), &w.from_int(2));
        assert_eq!(w.galois(&w.mul(&x, &y), 2), w.mul(&w.galois(&x, 2), &w.galois(&y, 2)));
        assert_eq!(w.norm(&w.from_int(3)), 27);
        assert_eq!(w.valuation(&w.from_int(8)), Some(3));
        assert_eq!(w.fmt(&w.from_int(-3)), "-3");
    }
}
