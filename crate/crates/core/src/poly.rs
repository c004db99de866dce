//! Dense univariate polynomials over [`Fq`]: the ring `A = F_q[t]`.
//!
//! Arithmetic lives on [`Fq`] (`f.pmul(&a, &b)` and friends) so that a
//! polynomial is plain data. Enumeration order of monic polynomials is by the
//! base-`q` integer whose least significant digit is the constant term; this
//! order is relied on for bit-reproducible series coefficients.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Fq};
use crate::numth::prime_factors;

/// Default ceiling for `q^d` in a single enumeration.
pub const DEFAULT_ENUMERATION_CEILING: u64 = 1 << 24;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Poly(Vec<Fe>);

impl Poly {
    pub fn new(mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![Fe::ONE])
    }

    pub fn constant(c: Fe) -> Poly {
        Poly::new(vec![c])
    }

    /// `t`
    pub fn t() -> Poly {
        Poly(vec![Fe::ZERO, Fe::ONE])
    }

    /// `c * t^k`
    pub fn monomial(c: Fe, k: usize) -> Poly {
        let mut v = vec![Fe::ZERO; k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0] == Fe::ONE
    }

    /// Degree; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn degree(&self) -> usize {
        self.deg().unwrap_or(0)
    }

    pub fn lead(&self) -> Fe {
        self.0.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fe::ONE
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.0.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.0
    }
}

/// A place of `F = F_q(t)`: the infinite place `1/t` or a monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Place {
    Infinity,
    Finite(Poly),
}

impl Place {
    /// Checks irreducibility and monicity.
    pub fn finite(f: &Fq, p: Poly) -> Result<Place> {
        if !p.is_monic() {
            return Err(Error::NotMonic { poly: f.fmt_poly(&p, 't') });
        }
        if !f.is_irreducible(&p)? {
            let factor = f.smallest_factor(&p).map(|g| f.fmt_poly(&g, 't')).unwrap_or_default();
            return Err(Error::Reducible { poly: f.fmt_poly(&p, 't'), factor });
        }
        Ok(Place::Finite(p))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(p) => p.degree(),
        }
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            Place::Infinity => None,
            Place::Finite(p) => Some(p),
        }
    }
}

impl Fq {
    pub fn padd(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.add(a.coeff(i), b.coeff(i)));
        }
        Poly::new(v)
    }

    pub fn pneg(&self, a: &Poly) -> Poly {
        Poly(a.0.iter().map(|&c| self.neg(c)).collect())
    }

    pub fn psub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.sub(a.coeff(i), b.coeff(i)));
        }
        Poly::new(v)
    }

    pub fn pscale(&self, c: Fe, a: &Poly) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(a.0.iter().map(|&x| self.mul(c, x)).collect())
    }

    /// `a * t^k`
    pub fn pshift(&self, a: &Poly, k: usize) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Fe::ZERO; k];
        v.extend_from_slice(&a.0);
        Poly(v)
    }

    pub fn pmul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Fe::ZERO; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                v[i + j] = self.add(v[i + j], self.mul(x, y));
            }
        }
        Poly::new(v)
    }

    /// Product truncated to terms of degree `< len`.
    pub fn pmul_trunc(&self, a: &Poly, b: &Poly, len: usize) -> Poly {
        if a.is_zero() || b.is_zero() || len == 0 {
            return Poly::zero();
        }
        let n = (a.0.len() + b.0.len() - 1).min(len);
        let mut v = vec![Fe::ZERO; n];
        for (i, &x) in a.0.iter().enumerate().take(n) {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate().take(n - i) {
                v[i + j] = self.add(v[i + j], self.mul(x, y));
            }
        }
        Poly::new(v)
    }

    pub fn ppow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut acc = Poly::one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.pmul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.pmul(&base, &base);
            }
        }
        acc
    }

    /// Euclidean division; panics if `b` is zero.
    pub fn pdivrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let db = b.deg().expect("division by the zero polynomial");
        let inv_lead = self.inv(b.lead()).unwrap();
        let mut r = a.0.clone();
        if r.len() <= db {
            return (Poly::zero(), a.clone());
        }
        let mut quot = vec![Fe::ZERO; r.len() - db];
        for k in (db..r.len()).rev() {
            let c = r[k];
            if c.is_zero() {
                continue;
            }
            let f = self.mul(c, inv_lead);
            quot[k - db] = f;
            for (i, &bc) in b.0.iter().enumerate() {
                r[k - db + i] = self.sub(r[k - db + i], self.mul(f, bc));
            }
        }
        r.truncate(db);
        (Poly::new(quot), Poly::new(r))
    }

    pub fn prem(&self, a: &Poly, b: &Poly) -> Poly {
        if a.0.len() <= b.0.len().saturating_sub(1) {
            return a.clone();
        }
        self.pdivrem(a, b).1
    }

    /// `a / b` when the division is exact.
    pub fn pdiv_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        let (q, r) = self.pdivrem(a, b);
        r.is_zero().then_some(q)
    }

    pub fn pmonic(&self, a: &Poly) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        let inv = self.inv(a.lead()).unwrap();
        self.pscale(inv, a)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn pgcd(&self, a: &Poly, b: &Poly) -> Poly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = self.prem(&x, &y);
            x = y;
            y = r;
        }
        self.pmonic(&x)
    }

    /// Extended gcd: `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn pxgcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = self.pdivrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.psub(&s0, &self.pmul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.psub(&t0, &self.pmul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = self.inv(r0.lead()).unwrap();
        (self.pscale(inv, &r0), self.pscale(inv, &s0), self.pscale(inv, &t0))
    }

    /// Inverse of `a` modulo `m`, if it exists.
    pub fn pinv_mod(&self, a: &Poly, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.pxgcd(&self.prem(a, m), m);
        g.is_one().then(|| self.prem(&s, m))
    }

    pub fn pmul_mod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.prem(&self.pmul(a, b), m)
    }

    pub fn ppow_mod(&self, a: &Poly, mut e: u128, m: &Poly) -> Poly {
        let mut acc = self.prem(&Poly::one(), m);
        let mut base = self.prem(a, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.pmul_mod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.pmul_mod(&base, &base, m);
            }
        }
        acc
    }

    pub fn peval(&self, a: &Poly, x: Fe) -> Fe {
        a.0.iter().rev().fold(Fe::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    pub fn pderiv(&self, a: &Poly) -> Poly {
        Poly::new(
            a.0.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul(self.from_int(i as i64), c))
                .collect(),
        )
    }

    /// `a(t)^q = a(t^q)`, since the coefficients are fixed by the `q`-power map.
    pub fn pfrob_q(&self, a: &Poly) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        let q = self.q() as usize;
        let mut v = vec![Fe::ZERO; (a.0.len() - 1) * q + 1];
        for (i, &c) in a.0.iter().enumerate() {
            v[i * q] = c;
        }
        Poly(v)
    }

    /// Base-`q` code with the constant term as least significant digit.
    pub fn encode(&self, a: &Poly) -> u64 {
        let q = self.q() as u64;
        a.0.iter().rev().fold(0u64, |acc, c| acc * q + c.0 as u64)
    }

    pub fn decode(&self, mut code: u64) -> Poly {
        let q = self.q() as u64;
        let mut v = Vec::new();
        while code > 0 {
            v.push(Fe((code % q) as u32));
            code /= q;
        }
        Poly(v)
    }

    /// Monic polynomials of degree `d` in enumeration order.
    pub fn monics(&self, d: usize) -> MonicIter {
        MonicIter::new(self.clone(), d)
    }

    /// All monic polynomials of degree `d`, optionally only those coprime to a finite place.
    pub fn enumerate_monic(&self, d: usize, coprime_to: Option<&Place>, ceiling: u64) -> Result<Vec<Poly>> {
        let count = checked_count(self.q() as u64, d);
        if count > ceiling {
            return Err(Error::ceiling(format!("enumeration of degree-{d} monics over F_{}", self.q()), count, ceiling));
        }
        let filter = coprime_to.and_then(Place::poly);
        Ok(self
            .monics(d)
            .filter(|a| filter.is_none_or(|p| !self.prem(a, p).is_zero()))
            .collect())
    }

    /// Irreducibility over `F_q`. Constants are not irreducible.
    pub fn is_irreducible(&self, f: &Poly) -> Result<bool> {
        let n = match f.deg() {
            None => return Err(Error::ZeroPolynomial("is_irreducible")),
            Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(n) => n,
        };
        let f = self.pmonic(f);
        if n <= 4 {
            return Ok(self.smallest_factor(&f).is_none());
        }
        // Rabin: x^{q^n} = x mod f, and gcd(x^{q^{n/l}} - x, f) = 1 for primes l | n
        let x = Poly::t();
        let frob_iter = |k: usize| -> Poly {
            let mut y = x.clone();
            for _ in 0..k {
                y = self.ppow_mod(&y, self.q() as u128, &f);
            }
            y
        };
        if self.psub(&frob_iter(n), &x) != Poly::zero() {
            return Ok(false);
        }
        for l in prime_factors(n as u64) {
            let y = frob_iter(n / l as usize);
            if !self.pgcd(&self.psub(&y, &x), &f).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least monic factor of positive degree `<= deg f / 2`, by trial division.
    pub fn smallest_factor(&self, f: &Poly) -> Option<Poly> {
        let n = f.deg()?;
        for d in 1..=n / 2 {
            for g in self.monics(d) {
                if self.prem(f, &g).is_zero() {
                    return Some(g);
                }
            }
        }
        None
    }

    /// Least monic irreducible of degree `d` in enumeration order.
    pub fn least_irreducible(&self, d: usize) -> Result<Poly> {
        for g in self.monics(d) {
            if self.is_irreducible(&g)? {
                return Ok(g);
            }
        }
        unreachable!("irreducibles exist in every degree")
    }

    /// Monic irreducibles of degree `d`.
    pub fn irreducibles(&self, d: usize, ceiling: u64) -> Result<Vec<Poly>> {
        let count = checked_count(self.q() as u64, d);
        if count > ceiling {
            return Err(Error::ceiling(format!("irreducibles of degree {d}"), count, ceiling));
        }
        let mut out = Vec::new();
        for g in self.monics(d) {
            if self.is_irreducible(&g)? {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// Renders with variable `var`; extension-field coefficients as `[c0,c1,..]`.
    pub fn fmt_poly(&self, a: &Poly, var: char) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, &c) in a.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            let cs = self.fmt_elem(c);
            match i {
                0 => s.push_str(&cs),
                _ => {
                    if c != Fe::ONE {
                        s.push_str(&cs);
                    }
                    s.push(var);
                    if i > 1 {
                        let _ = write!(s, "^{i}");
                    }
                }
            }
        }
        s
    }

    /// Parses `t^3+t+1`, `2t^2+[1,1]t+1`, `2*t+1`. Only `+` separates terms.
    pub fn parse_poly(&self, src: &str, var: char) -> Result<Poly> {
        let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<Fe> = Vec::new();
        for term in split_terms(&cleaned) {
            let (coef, exp) = self.parse_term(term, var)?;
            if terms.len() <= exp {
                terms.resize(exp + 1, Fe::ZERO);
            }
            terms[exp] = self.add(terms[exp], coef);
        }
        Ok(Poly::new(terms))
    }

    fn parse_term(&self, term: &str, var: char) -> Result<(Fe, usize)> {
        let bad = || Error::Parse(format!("cannot parse term '{term}'"));
        let (coef_str, rest) = match term.find(var) {
            Some(i) => (&term[..i], Some(&term[i + var.len_utf8()..])),
            None => (term, None),
        };
        let coef_str = coef_str.strip_suffix('*').unwrap_or(coef_str);
        let coef = if coef_str.is_empty() {
            if rest.is_none() {
                return Err(bad());
            }
            Fe::ONE
        } else if let Some(inner) = coef_str.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let coords: Vec<u32> = inner
                .split(',')
                .map(|x| x.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            self.from_coords(&coords)?
        } else {
            let n: u64 = coef_str.parse().map_err(|_| bad())?;
            if n >= self.p() as u64 {
                return Err(Error::Parse(format!("coefficient {n} not in 0..{}", self.p())));
            }
            self.from_int(n as i64)
        };
        let exp = match rest {
            None => 0,
            Some("") => 1,
            Some(e) => e.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?,
        };
        Ok((coef, exp))
    }
}

fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub fn checked_count(q: u64, d: usize) -> u64 {
    u32::try_from(d).ok().and_then(|d| q.checked_pow(d)).unwrap_or(u64::MAX)
}

/// Iterator over the monic polynomials of a fixed degree.
pub struct MonicIter {
    field: Fq,
    lower: Vec<Fe>,
    done: bool,
}

impl MonicIter {
    fn new(field: Fq, d: usize) -> Self {
        MonicIter { field, lower: vec![Fe::ZERO; d], done: false }
    }
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.done {
            return None;
        }
        let mut v = self.lower.clone();
        v.push(Fe::ONE);
        let out = Poly(v);
        // increment the base-q counter, constant term first
        let q = self.field.q();
        let mut i = 0;
        loop {
            if i == self.lower.len() {
                self.done = true;
                break;
            }
            let c = self.lower[i].0 + 1;
            if c < q {
                self.lower[i] = Fe(c);
                break;
            }
            self.lower[i] = Fe::ZERO;
            i += 1;
        }
        Some(out)
    }
}
