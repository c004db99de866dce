//! The groups `G_n = (A/P^{n+1})^×`, Frobenius symbols and splitting data.
//!
//! Elements are handled as integer codes (see [`Fq::encode`]) of their reduced
//! representatives. `G_n ≅ G_0 × Γ_n`: the `G_0` part of `a` is written as the
//! exponent `k` with `ω(a) = ω(g)^k` for the fixed generator `g`, the `Γ_n`
//! part is the one-unit `a / ω(a)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::numth::{gcd, prime_factors};
use crate::poly::{Place, Poly};

/// Largest `|G_n|` handled by the brute-force structure computation.
pub const MAX_GROUP_ORDER: u64 = 1 << 20;

/// A unit of `A/P^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueUnit {
    pub rep: Poly,
    pub level: usize,
    pub conductor: Poly,
}

/// `(e, f, g)` of a place in `F(Λ_{P^{n+1}}) / F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingData {
    pub e: u64,
    pub f: u64,
    pub g: u64,
}

#[derive(Clone, Debug)]
pub struct GroupLevel {
    field: Fq,
    conductor: Poly,
    level: usize,
    modulus: Poly,
    g0_order: u64,
    gamma_order: u64,
    generator: Poly,
    dlog0: HashMap<u64, u64>,
    teich: Vec<u64>,
    gamma_basis: Vec<(u64, u64)>,
}

impl GroupLevel {
    /// `(A/P^{n+1})^×` for a finite place `P`.
    pub fn new(field: &Fq, place: &Place, level: usize) -> Result<GroupLevel> {
        let p = place.poly().ok_or_else(|| Error::Mismatch("residue group needs a finite place".into()))?;
        let f = field;
        Place::finite(f, p.clone())?;
        let q = f.q() as u64;
        let d = p.degree() as u32;
        let g0_order = q.checked_pow(d).map(|x| x - 1).unwrap_or(u64::MAX);
        let gamma_order = q.checked_pow(d * level as u32).unwrap_or(u64::MAX);
        let order = g0_order.saturating_mul(gamma_order);
        if order > MAX_GROUP_ORDER {
            return Err(Error::ceiling("residue group order", order, MAX_GROUP_ORDER));
        }
        let modulus = f.ppow(p, level as u64 + 1);

        let factors = prime_factors(g0_order);
        let generator = (1..=g0_order)
            .map(|c| f.decode(c))
            .find(|g| {
                factors.iter().all(|&l| !f.ppow_mod(g, (g0_order / l) as u128, p).is_one())
            })
            .expect("G_0 is cyclic");
        let mut dlog0 = HashMap::with_capacity(g0_order as usize);
        let mut x = Poly::one();
        for k in 0..g0_order {
            dlog0.insert(f.encode(&x), k);
            x = f.pmul_mod(&x, &generator, p);
        }

        let omega = teichmuller(f, &generator, p.degree(), &modulus);
        let mut teich = Vec::with_capacity(g0_order as usize);
        let mut x = Poly::one();
        for _ in 0..g0_order {
            teich.push(f.encode(&x));
            x = f.pmul_mod(&x, &omega, &modulus);
        }

        let mut grp = GroupLevel {
            field: f.clone(),
            conductor: p.clone(),
            level,
            modulus,
            g0_order,
            gamma_order,
            generator,
            dlog0,
            teich,
            gamma_basis: Vec::new(),
        };
        grp.gamma_basis = grp.compute_gamma_basis();
        Ok(grp)
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn conductor(&self) -> &Poly {
        &self.conductor
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `P^{n+1}`.
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.g0_order * self.gamma_order
    }

    /// `|G_0| = q^d - 1`.
    pub fn g0_order(&self) -> u64 {
        self.g0_order
    }

    /// `|Γ_n| = q^{nd}`.
    pub fn gamma_order(&self) -> u64 {
        self.gamma_order
    }

    /// The generator of `G_0`: least residue code that generates.
    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn identity(&self) -> u64 {
        1
    }

    /// Code of `a mod P^{n+1}`; `a` must be coprime to `P`.
    pub fn reduce(&self, a: &Poly) -> Result<u64> {
        let f = &self.field;
        if f.prem(a, &self.conductor).is_zero() {
            return Err(Error::NotCoprime { a: f.fmt_poly(a, 't'), p: f.fmt_poly(&self.conductor, 't') });
        }
        Ok(f.encode(&f.prem(a, &self.modulus)))
    }

    pub fn unit(&self, a: &Poly) -> Result<ResidueUnit> {
        let code = self.reduce(a)?;
        Ok(self.to_unit(code))
    }

    pub fn to_unit(&self, code: u64) -> ResidueUnit {
        ResidueUnit { rep: self.field.decode(code), level: self.level, conductor: self.conductor.clone() }
    }

    pub fn code(&self, u: &ResidueUnit) -> Result<u64> {
        if u.level != self.level || u.conductor != self.conductor {
            return Err(Error::Mismatch("residue unit from another group".into()));
        }
        self.reduce(&u.rep)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let f = &self.field;
        f.encode(&f.pmul_mod(&f.decode(a), &f.decode(b), &self.modulus))
    }

    pub fn inv(&self, a: u64) -> u64 {
        let f = &self.field;
        f.encode(&f.pinv_mod(&f.decode(a), &self.modulus).expect("unit"))
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        let f = &self.field;
        f.encode(&f.ppow_mod(&f.decode(a), e as u128, &self.modulus))
    }

    /// All element codes in increasing order.
    pub fn elements(&self) -> Vec<u64> {
        let q = self.field.q() as u64;
        let total = q.pow(self.modulus.degree() as u32);
        let f = &self.field;
        (1..total).filter(|&c| !f.prem(&f.decode(c), &self.conductor).is_zero()).collect()
    }

    /// `(k, γ)` with `a = ω(g)^k · γ`.
    pub fn split(&self, a: u64) -> (u64, u64) {
        let f = &self.field;
        let r = f.encode(&f.prem(&f.decode(a), &self.conductor));
        let k = self.dlog0[&r];
        let back = self.teich[((self.g0_order - k) % self.g0_order) as usize];
        (k, self.mul(a, back))
    }

    pub fn combine(&self, k: u64, gamma: u64) -> u64 {
        self.mul(self.teich[(k % self.g0_order) as usize], gamma)
    }

    /// `ω(g)^k`.
    pub fn teichmuller_power(&self, k: u64) -> u64 {
        self.teich[(k % self.g0_order) as usize]
    }

    /// Discrete log of the level-0 image.
    pub fn dlog0(&self, a: u64) -> u64 {
        self.split(a).0
    }

    pub fn element_order(&self, a: u64) -> u64 {
        let (k, mut gamma) = self.split(a);
        let o0 = self.g0_order / gcd(k, self.g0_order);
        let p = self.field.p() as u64;
        let mut op = 1;
        while gamma != 1 {
            gamma = self.pow(gamma, p);
            op *= p;
        }
        o0 * op
    }

    /// Exponents `k` of the constants `F_q^×` (the inertia group at ∞).
    pub fn inertia_infinity(&self) -> Vec<u64> {
        let step = self.g0_order / (self.field.q() as u64 - 1);
        (0..self.field.q() as u64 - 1).map(|i| i * step).collect()
    }

    /// Generators with their orders: `ω(g)` first, then a basis of `Γ_n`.
    pub fn generators(&self) -> Vec<(ResidueUnit, u64)> {
        let mut out = vec![(self.to_unit(self.teich[1 % self.teich.len()]), self.g0_order)];
        out.extend(self.gamma_basis.iter().map(|&(c, o)| (self.to_unit(c), o)));
        out
    }

    /// A basis of the p-group `Γ_n` (greedy by maximal order in the quotient, then corrected).
    fn compute_gamma_basis(&self) -> Vec<(u64, u64)> {
        let f = &self.field;
        let p = f.p() as u64;
        let count = self.gamma_order;
        let gamma: Vec<u64> = (0..count)
            .map(|b| {
                let x = f.padd(&Poly::one(), &f.pmul(&self.conductor, &f.decode(b)));
                f.encode(&x)
            })
            .collect();
        let mut basis: Vec<(u64, u64)> = Vec::new();
        // element -> exponent vector over the current basis
        let mut span: HashMap<u64, Vec<u64>> = HashMap::from([(1u64, Vec::new())]);
        while (span.len() as u64) < count {
            // order of each element modulo the current span
            let mut best = (0u64, 0u64);
            for &g in &gamma {
                if span.contains_key(&g) {
                    continue;
                }
                let mut o = 1;
                let mut x = g;
                while !span.contains_key(&x) {
                    x = self.pow(x, p);
                    o *= p;
                }
                if o > best.1 {
                    best = (g, o);
                }
            }
            let (mut g, o) = best;
            let h = self.pow(g, o);
            let coords = &span[&h];
            let mut corr = 1u64;
            for (i, &c) in coords.iter().enumerate() {
                debug_assert_eq!(c % o, 0);
                let (b, ob) = basis[i];
                corr = self.mul(corr, self.pow(b, (ob - (c / o) % ob) % ob));
            }
            g = self.mul(g, corr);
            let mut next = HashMap::with_capacity(span.len() * o as usize);
            for (&x, v) in &span {
                let mut y = x;
                for e in 0..o {
                    let mut w = v.clone();
                    w.push(e);
                    next.insert(y, w);
                    y = self.mul(y, g);
                }
            }
            for (_, v) in next.iter_mut() {
                v.resize(basis.len() + 1, 0);
            }
            span = next;
            basis.push((g, o));
        }
        basis
    }
}

fn teichmuller(f: &Fq, a: &Poly, d: usize, modulus: &Poly) -> Poly {
    let qd = (f.q() as u128).pow(d as u32);
    let mut x = f.prem(a, modulus);
    loop {
        let y = f.ppow_mod(&x, qd, modulus);
        if y == x {
            return x;
        }
        x = y;
    }
}

/// Image of the Frobenius at `Q` in `G_n`: `Q mod P^{n+1}`.
pub fn frobenius_symbol(field: &Fq, q_place: &Place, p_place: &Place, level: usize) -> Result<ResidueUnit> {
    let qp = q_place.poly().ok_or_else(|| Error::Mismatch("Frobenius at ∞ is not a residue class".into()))?;
    let pp = p_place.poly().ok_or_else(|| Error::Mismatch("conductor must be finite".into()))?;
    if qp == pp {
        return Err(Error::NotCoprime { a: field.fmt_poly(qp, 't'), p: field.fmt_poly(pp, 't') });
    }
    let modulus = field.ppow(pp, level as u64 + 1);
    if field.prem(qp, pp).is_zero() {
        return Err(Error::NotCoprime { a: field.fmt_poly(qp, 't'), p: field.fmt_poly(pp, 't') });
    }
    Ok(ResidueUnit { rep: field.prem(qp, &modulus), level, conductor: pp.clone() })
}

pub fn splitting_data(group: &GroupLevel, nu: &Place) -> Result<SplittingData> {
    let order = group.order();
    let q1 = group.field().q() as u64 - 1;
    Ok(match nu {
        Place::Infinity => SplittingData { e: q1, f: 1, g: order / q1 },
        Place::Finite(p) if p == group.conductor() => SplittingData { e: order, f: 1, g: 1 },
        Place::Finite(qp) => {
            let f = group.element_order(group.reduce(qp)?);
            SplittingData { e: 1, f, g: order / f }
        }
    })
}
