//! The completion at a finite prime `P`, truncated mod `P^m`: Teichmüller
//! and one-unit parts, and ideal exponentiation `I^{s_ν}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::padic::ZpExp;
use crate::poly::{Place, Poly};

/// Residue classes up to this count get a precomputed Teichmüller table.
const TEICH_TABLE_LIMIT: u64 = 1 << 16;

/// A residue mod `P^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NuAdic {
    pub rep: Poly,
}

#[derive(Clone, Debug)]
pub struct NuCtx {
    field: Fq,
    conductor: Poly,
    prec: usize,
    modulus: Poly,
    teich: HashMap<u64, Poly>,
}

impl NuCtx {
    pub fn new(field: &Fq, place: &Place, prec: usize) -> Result<NuCtx> {
        let p = place.poly().ok_or_else(|| Error::Mismatch("ν-adic context needs a finite place".into()))?;
        if prec < 1 {
            return Err(Error::BadPrecision(prec as u32));
        }
        let modulus = field.ppow(p, prec as u64);
        let mut ctx = NuCtx { field: field.clone(), conductor: p.clone(), prec, modulus, teich: HashMap::new() };
        let count = (field.q() as u64).checked_pow(p.degree() as u32).unwrap_or(u64::MAX);
        if count <= TEICH_TABLE_LIMIT {
            for code in 1..count {
                let r = field.decode(code);
                let w = ctx.teichmuller_iter(&r);
                ctx.teich.insert(code, w);
            }
        }
        Ok(ctx)
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn conductor(&self) -> &Poly {
        &self.conductor
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// `P^m`.
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// `q^{d_P} - 1`.
    pub fn unit_root_order(&self) -> u64 {
        (self.field.q() as u64).pow(self.conductor.degree() as u32) - 1
    }

    pub fn reduce(&self, a: &Poly) -> NuAdic {
        NuAdic { rep: self.field.prem(a, &self.modulus) }
    }

    pub fn one(&self) -> NuAdic {
        self.reduce(&Poly::one())
    }

    pub fn add(&self, a: &NuAdic, b: &NuAdic) -> NuAdic {
        NuAdic { rep: self.field.padd(&a.rep, &b.rep) }
    }

    pub fn mul(&self, a: &NuAdic, b: &NuAdic) -> NuAdic {
        NuAdic { rep: self.field.pmul_mod(&a.rep, &b.rep, &self.modulus) }
    }

    pub fn is_unit(&self, a: &NuAdic) -> bool {
        !self.field.prem(&a.rep, &self.conductor).is_zero()
    }

    pub fn inv(&self, a: &NuAdic) -> Result<NuAdic> {
        self.field
            .pinv_mod(&a.rep, &self.modulus)
            .map(|rep| NuAdic { rep })
            .ok_or_else(|| self.not_coprime(&a.rep))
    }

    pub fn pow_int(&self, a: &NuAdic, e: i64) -> Result<NuAdic> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        Ok(NuAdic { rep: self.field.ppow_mod(&base.rep, e.unsigned_abs() as u128, &self.modulus) })
    }

    fn not_coprime(&self, a: &Poly) -> Error {
        Error::NotCoprime { a: self.field.fmt_poly(a, 't'), p: self.field.fmt_poly(&self.conductor, 't') }
    }

    fn teichmuller_iter(&self, a: &Poly) -> Poly {
        let f = &self.field;
        let qd = (f.q() as u128).pow(self.conductor.degree() as u32);
        let mut x = f.prem(a, &self.modulus);
        loop {
            let y = f.ppow_mod(&x, qd, &self.modulus);
            if y == x {
                return x;
            }
            x = y;
        }
    }

    /// `ω(a)`: the root of unity `≡ a mod P`.
    pub fn teichmuller(&self, a: &Poly) -> Result<NuAdic> {
        let r = self.field.prem(a, &self.conductor);
        if r.is_zero() {
            return Err(self.not_coprime(a));
        }
        let code = self.field.encode(&r);
        Ok(NuAdic { rep: self.teich.get(&code).cloned().unwrap_or_else(|| self.teichmuller_iter(&r)) })
    }
}

/// `α = ω(α) · ⟨α⟩_ν` mod `P^m`.
pub fn nu_decompose(ctx: &NuCtx, alpha: &Poly) -> Result<(NuAdic, NuAdic)> {
    let w = ctx.teichmuller(alpha)?;
    let u = ctx.mul(&ctx.reduce(alpha), &ctx.inv(&w)?);
    Ok((w, u))
}

fn check_one_unit(ctx: &NuCtx, u: &NuAdic) -> Result<()> {
    if !ctx.field.prem(&u.rep, &ctx.conductor).is_one() {
        return Err(Error::NotOneUnit(ctx.field.fmt_poly(&u.rep, 't')));
    }
    Ok(())
}

/// `u^y` for a one-unit; integer `y` by exact powering, p-adic `y` by the binomial series.
pub fn one_unit_pow(ctx: &NuCtx, u: &NuAdic, y: &ZpExp) -> Result<NuAdic> {
    check_one_unit(ctx, u)?;
    match y {
        ZpExp::Int(e) => ctx.pow_int(u, *e),
        ZpExp::Padic(_) => one_unit_pow_series(ctx, u, y),
    }
}

/// `Σ_{n < m} binom(y, n) (u-1)^n`; `(u-1)^n ≡ 0 mod P^m` for `n ≥ m`.
pub fn one_unit_pow_series(ctx: &NuCtx, u: &NuAdic, y: &ZpExp) -> Result<NuAdic> {
    check_one_unit(ctx, u)?;
    let f = &ctx.field;
    let w = NuAdic { rep: f.psub(&u.rep, &Poly::one()) };
    let mut acc = ctx.one();
    let mut wk = ctx.one();
    for n in 1..ctx.prec as u64 {
        wk = ctx.mul(&wk, &w);
        let b = y.binom_mod_p(f.p() as u64, n)?;
        if b != 0 {
            acc = ctx.add(&acc, &NuAdic { rep: f.pscale(f.from_int(b as i64), &wk.rep) });
        }
    }
    Ok(acc)
}

/// `s_ν = (x, y, j)`; `x = None` stands for `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuExponent {
    pub x: Option<NuAdic>,
    pub y: ZpExp,
    pub j: i64,
}

impl NuExponent {
    /// `s_{ν,j} = (1, j, j)`.
    pub fn integer(j: i64) -> NuExponent {
        NuExponent { x: None, y: ZpExp::Int(j), j }
    }
}

/// `α^{s_ν} = x^{deg α} ω(α)^j ⟨α⟩_ν^y`.
pub fn ideal_exp_nu(ctx: &NuCtx, alpha: &Poly, s: &NuExponent) -> Result<NuAdic> {
    let (w, u) = nu_decompose(ctx, alpha)?;
    let order = ctx.unit_root_order() as i64;
    let wj = ctx.pow_int(&w, s.j.rem_euclid(order))?;
    let uy = one_unit_pow(ctx, &u, &s.y)?;
    let mut out = ctx.mul(&wj, &uy);
    if let Some(x) = &s.x {
        out = ctx.mul(&out, &ctx.pow_int(x, alpha.degree() as i64)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicNum;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(p: u64, conductor: &str, m: usize) -> NuCtx {
        let f = Fq::new(p, 1).unwrap();
        let pl = Place::finite(&f, f.parse_poly(conductor, 't').unwrap()).unwrap();
        NuCtx::new(&f, &pl, m).unwrap()
    }

    fn random_coprime(c: &NuCtx, rng: &mut ChaCha8Rng, deg: usize) -> Poly {
        let f = c.field();
        loop {
            let a = Poly::new((0..=deg).map(|_| crate::Fe(rng.gen_range(0..f.q()))).collect());
            if !a.is_zero() && !f.prem(&a, c.conductor()).is_zero() {
                return a;
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let c = ctx(3, "t", 2);
        let f = c.field().clone();
        let (w, u) = nu_decompose(&c, &f.parse_poly("t+2", 't').unwrap()).unwrap();
        assert_eq!(f.fmt_poly(&w.rep, 't'), "2");
        assert_eq!(f.fmt_poly(&u.rep, 't'), "2t+1");
        let (w, u) = nu_decompose(&c, &f.parse_poly("t+1", 't').unwrap()).unwrap();
        assert_eq!((w.rep, f.fmt_poly(&u.rep, 't')), (Poly::one(), "t+1".to_string()));
        let (w, u) = nu_decompose(&c, &f.parse_poly("2", 't').unwrap()).unwrap();
        assert_eq!((f.fmt_poly(&w.rep, 't'), u.rep), ("2".to_string(), Poly::one()));
        assert!(nu_decompose(&c, &Poly::t()).is_err());
    }

    #[test]
    fn ideal_exp_examples() {
        let c = ctx(3, "t", 2);
        let f = c.field().clone();
        let a = f.parse_poly("t+2", 't').unwrap();
        assert_eq!(ideal_exp_nu(&c, &a, &NuExponent::integer(0)).unwrap(), c.one());
        assert_eq!(f.fmt_poly(&ideal_exp_nu(&c, &a, &NuExponent::integer(1)).unwrap().rep, 't'), "t+2");
        let s = NuExponent { x: None, y: ZpExp::Int(1), j: 0 };
        assert_eq!(f.fmt_poly(&ideal_exp_nu(&c, &a, &s).unwrap().rep, 't'), "2t+1");
    }

    #[test]
    fn properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (p, cond, m) in [(2u64, "t", 8usize), (2, "t^2+t+1", 5), (3, "t", 6), (3, "t^2+1", 4), (5, "t+1", 4)] {
            let c = ctx(p, cond, m);
            let f = c.field().clone();
            let qd = (f.q() as u64).pow(c.conductor().degree() as u32);
            for _ in 0..15 {
                let a = random_coprime(&c, &mut rng, 7);
                let b = random_coprime(&c, &mut rng, 5);
                let (wa, ua) = nu_decompose(&c, &a).unwrap();
                let (wb, ub) = nu_decompose(&c, &b).unwrap();
                let (wab, uab) = nu_decompose(&c, &f.pmul(&a, &b)).unwrap();
                assert_eq!(c.mul(&wa, &ua), c.reduce(&a));
                assert_eq!(wab, c.mul(&wa, &wb));
                assert_eq!(uab, c.mul(&ua, &ub));
                assert_eq!(c.pow_int(&wa, qd as i64).unwrap(), wa);
                assert_eq!(c.pow_int(&wa, qd as i64 - 1).unwrap(), c.one());
                for j in [0i64, 1, 2, 5, 11] {
                    let aj = ideal_exp_nu(&c, &a, &NuExponent::integer(j)).unwrap();
                    assert_eq!(aj, c.reduce(&f.ppow(&a, j as u64)));
                }
                for y in [-3i64, 0, 1, 7, 20] {
                    assert_eq!(one_unit_pow_series(&c, &ua, &ZpExp::Int(y)).unwrap(), c.pow_int(&ua, y).unwrap());
                }
                let y1 = ZpExp::Padic(PadicNum::from_digits(p, &[1, 0, 1, 1, 1]).unwrap());
                let y2 = ZpExp::Padic(PadicNum::from_digits(p, &[0, 1, 1, 0, 1]).unwrap());
                assert_eq!(
                    one_unit_pow(&c, &ua, &y1.add(&y2)).unwrap(),
                    c.mul(&one_unit_pow(&c, &ua, &y1).unwrap(), &one_unit_pow(&c, &ua, &y2).unwrap())
                );
            }
        }
    }
}
