//! Finite fields `F_{p^r}` with table-driven arithmetic.
//!
//! An element is stored as the base-`p` integer whose digit `i` is the
//! coordinate of `x^i` in `F_p[x]/(modulus)`. Multiplication goes through
//! discrete-log tables; addition is modular for prime fields, XOR in
//! characteristic 2 and Zech logarithms otherwise.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth::{is_prime, prime_factors};

/// Largest field the tables are built for.
pub const MAX_FIELD_SIZE: u64 = 1 << 22;

const NO_LOG: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The finite field `F_q`, `q = p^r`. Cheap to clone.
#[derive(Clone)]
pub struct Fq {
    t: Arc<Tables>,
}

struct Tables {
    p: u32,
    r: u32,
    q: u32,
    /// Monic modulus over `F_p`, low coefficient first. `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    /// `exp[k] = g^k` for `0 <= k < 2(q-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`; only built for odd `p` with `r > 1`.
    zech: Vec<u32>,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || (self.t.p == other.t.p && self.t.modulus == other.t.modulus)
    }
}
impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.t.q)?;
        if self.t.r > 1 {
            write!(f, "[mod {:?}]", self.t.modulus)?;
        }
        Ok(())
    }
}

impl Fq {
    /// `F_{p^r}` with the least (by integer code) monic irreducible modulus of degree `r`.
    pub fn new(p: u64, r: i64) -> Result<Fq> {
        if r < 1 {
            return Err(Error::InvalidDegree(r));
        }
        let base = Fq::prime(p)?;
        if r == 1 {
            return Ok(base);
        }
        let size = checked_pow(p, r as u32);
        if size > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge { size, limit: MAX_FIELD_SIZE });
        }
        let modulus = base.least_irreducible(r as usize)?;
        let coords: Vec<u32> = modulus.coeffs().iter().map(|c| c.0).collect();
        Fq::with_modulus(p, &coords)
    }

    pub fn prime(p: u64) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge { size: p, limit: MAX_FIELD_SIZE });
        }
        Ok(Fq { t: Arc::new(Tables::build(p as u32, vec![0, 1])) })
    }

    /// `F_p[x]/(modulus)`; `modulus` must be monic and irreducible over `F_p`.
    pub fn with_modulus(p: u64, modulus: &[u32]) -> Result<Fq> {
        let base = Fq::prime(p)?;
        let r = modulus.len().saturating_sub(1);
        if r == 0 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::Parse(format!("bad modulus {modulus:?} over F_{p}")));
        }
        let poly = crate::poly::Poly::new(modulus.iter().map(|&c| Fe(c)).collect());
        if r > 1 && !base.is_irreducible(&poly)? {
            return Err(Error::Reducible { poly: base.fmt_poly(&poly, 'x'), factor: "?".into() });
        }
        if r == 1 {
            // every linear modulus gives the prime field; normalise to x
            return Ok(base);
        }
        let size = checked_pow(p, r as u32);
        if size > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge { size, limit: MAX_FIELD_SIZE });
        }
        Ok(Fq { t: Arc::new(Tables::build(p as u32, modulus.to_vec())) })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.t.p
    }
    #[inline]
    pub fn r(&self) -> u32 {
        self.t.r
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.t.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }
    pub fn is_prime_field(&self) -> bool {
        self.t.r == 1
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }
    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.t.p as i64) as u32)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Fe> {
        if coords.len() > self.t.r as usize || coords.iter().any(|&c| c >= self.t.p) {
            return Err(Error::Parse(format!("coordinates {coords:?} do not define an element of F_{}", self.t.q)));
        }
        let mut code = 0u32;
        for &c in coords.iter().rev() {
            code = code * self.t.p + c;
        }
        Ok(Fe(code))
    }

    pub fn coords(&self, a: Fe) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.t.r as usize);
        let mut c = a.0;
        for _ in 0..self.t.r {
            out.push(c % self.t.p);
            c /= self.t.p;
        }
        out
    }

    /// Generator of the multiplicative group used for the log tables.
    pub fn generator(&self) -> Fe {
        Fe(self.t.exp[1 % self.t.exp.len().max(1)])
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.t.q).map(Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let t = &*self.t;
        if t.r == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= t.p { s - t.p } else { s });
        }
        if t.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let qm1 = t.q - 1;
        let la = t.log[a.0 as usize];
        let lb = t.log[b.0 as usize];
        let k = if lb >= la { lb - la } else { lb + qm1 - la };
        let z = t.zech[k as usize];
        if z == NO_LOG {
            Fe::ZERO
        } else {
            Fe(t.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let t = &*self.t;
        if a.0 == 0 || t.p == 2 {
            return a;
        }
        if t.r == 1 {
            return Fe(t.p - a.0);
        }
        let half = (t.q - 1) / 2;
        Fe(t.exp[(t.log[a.0 as usize] + half) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let t = &*self.t;
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        if t.r == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % t.p as u64) as u32);
        }
        Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let t = &*self.t;
        let l = t.log[a.0 as usize];
        Some(Fe(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let t = &*self.t;
        let l = t.log[a.0 as usize] as u64 * (e % (t.q as u64 - 1)) % (t.q as u64 - 1);
        Fe(t.exp[l as usize])
    }

    /// Discrete log with respect to [`Fq::generator`].
    pub fn log(&self, a: Fe) -> Option<u32> {
        if a.0 == 0 {
            None
        } else {
            Some(self.t.log[a.0 as usize])
        }
    }

    pub fn exp(&self, k: u64) -> Fe {
        Fe(self.t.exp[(k % (self.t.q as u64 - 1)) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = self.t.q as u64 - 1;
        Some(n / crate::numth::gcd(l, n))
    }

    pub fn fmt_elem(&self, a: Fe) -> String {
        if self.t.r == 1 {
            a.0.to_string()
        } else {
            let c = self.coords(a);
            let parts: Vec<String> = c.iter().map(|d| d.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

impl Tables {
    fn build(p: u32, modulus: Vec<u32>) -> Tables {
        let r = (modulus.len() - 1) as u32;
        let q = p.pow(r);
        let n = (q - 1) as usize;
        let mul_slow = |a: u32, b: u32| -> u32 { slow_mul(p, &modulus, a, b) };
        // primitive element: smallest code whose order is q-1
        let factors = prime_factors((q - 1) as u64);
        let mut g = 1u32;
        if q > 2 {
            g = (1..q)
                .find(|&cand| {
                    factors.iter().all(|&l| slow_pow(p, &modulus, cand, (q as u64 - 1) / l) != 1)
                })
                .expect("multiplicative group of a finite field is cyclic");
        }
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![NO_LOG; q as usize];
        let mut x = 1u32;
        for k in 0..n {
            exp[k] = x;
            log[x as usize] = k as u32;
            x = mul_slow(x, g);
        }
        for k in n..2 * n {
            exp[k] = exp[k - n];
        }
        if n == 0 {
            exp[0] = 1;
        }
        let mut zech = Vec::new();
        if p != 2 && r > 1 {
            zech = vec![NO_LOG; n];
            for k in 0..n {
                let v = exp[k];
                // add 1 to the constant digit
                let d0 = v % p;
                let w = v - d0 + (d0 + 1) % p;
                zech[k] = if w == 0 { NO_LOG } else { log[w as usize] };
            }
        }
        Tables { p, r, q, modulus, exp, log, zech }
    }
}

fn digits(p: u32, r: usize, mut a: u32) -> Vec<u32> {
    let mut d = vec![0; r];
    for slot in d.iter_mut() {
        *slot = a % p;
        a /= p;
    }
    d
}

fn undigits(p: u32, d: &[u32]) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Multiplication of encoded elements by schoolbook convolution; used only to seed the tables.
fn slow_mul(p: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let r = modulus.len() - 1;
    let da = digits(p, r, a);
    let db = digits(p, r, b);
    let mut prod = vec![0u64; 2 * r];
    for i in 0..r {
        for j in 0..r {
            prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p as u64;
        }
    }
    for k in (r..2 * r).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..r {
            let sub = c * modulus[i] as u64 % p as u64;
            prod[k - r + i] = (prod[k - r + i] + p as u64 - sub) % p as u64;
        }
    }
    let out: Vec<u32> = prod[..r].iter().map(|&x| x as u32).collect();
    undigits(p, &out)
}

fn slow_pow(p: u32, modulus: &[u32], a: u32, mut e: u64) -> u32 {
    let mut base = a;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(p, modulus, acc, base);
        }
        base = slow_mul(p, modulus, base, base);
        e >>= 1;
    }
    acc
}

fn checked_pow(p: u64, r: u32) -> u64 {
    p.checked_pow(r).unwrap_or(u64::MAX)
}
