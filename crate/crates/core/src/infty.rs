//! `F_∞ = F_q((π))` with `π = 1/t`, truncated.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Fq};
use crate::padic::ZpExp;
use crate::poly::Poly;

/// `π^val · (c_0 + c_1 π + ... + c_{N-1} π^{N-1})`, known to `N` terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentInf {
    pub val: i64,
    pub coeffs: Vec<Fe>,
}

impl LaurentInf {
    pub fn one(n: usize) -> LaurentInf {
        let mut coeffs = vec![Fe::ZERO; n];
        if n > 0 {
            coeffs[0] = Fe::ONE;
        }
        LaurentInf { val: 0, coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// `a ∈ A` to `n` terms: `a = t^{deg a} Σ a_{deg-i} π^i`.
    pub fn from_poly(a: &Poly, n: usize) -> Result<LaurentInf> {
        let d = a.deg().ok_or(Error::ZeroPolynomial("∞-adic expansion"))?;
        let coeffs = (0..n).map(|i| if i <= d { a.coeff(d - i) } else { Fe::ZERO }).collect();
        Ok(LaurentInf { val: -(d as i64), coeffs })
    }

    /// The series `Σ c_i π^i` as a polynomial in `π`.
    pub fn as_pi_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    /// Leading coefficient nonzero (or all zero).
    pub fn normalize(mut self) -> LaurentInf {
        let n = self.coeffs.len();
        if let Some(k) = self.coeffs.iter().position(|c| !c.is_zero()) {
            if k > 0 {
                self.coeffs.drain(..k);
                self.coeffs.resize(n - k, Fe::ZERO);
                self.val += k as i64;
            }
        }
        self
    }

    pub fn is_one_unit(&self) -> bool {
        self.val == 0 && self.coeffs.first() == Some(&Fe::ONE)
    }

    /// Coefficient of `π^e`, if within the known range.
    pub fn coeff_at(&self, e: i64) -> Option<Fe> {
        let i = e - self.val;
        if i < 0 {
            Some(Fe::ZERO)
        } else {
            self.coeffs.get(i as usize).copied()
        }
    }
}

impl Fq {
    pub fn linf_mul(&self, a: &LaurentInf, b: &LaurentInf) -> LaurentInf {
        let n = a.precision().min(b.precision());
        let c = self.pmul_trunc(&a.as_pi_poly(), &b.as_pi_poly(), n);
        let mut coeffs = c.into_coeffs();
        coeffs.resize(n, Fe::ZERO);
        LaurentInf { val: a.val + b.val, coeffs }
    }

    /// Inverse of a series whose leading coefficient is nonzero.
    pub fn linf_inv(&self, a: &LaurentInf) -> Result<LaurentInf> {
        let n = a.precision();
        let c0 = a.coeffs.first().copied().filter(|c| !c.is_zero()).ok_or_else(|| Error::NotOneUnit("zero leading term".into()))?;
        let c0inv = self.inv(c0).expect("nonzero");
        let mut out = vec![Fe::ZERO; n];
        out[0] = c0inv;
        for k in 1..n {
            let mut s = Fe::ZERO;
            for i in 1..=k {
                s = self.add(s, self.mul(a.coeffs[i], out[k - i]));
            }
            out[k] = self.neg(self.mul(s, c0inv));
        }
        Ok(LaurentInf { val: -a.val, coeffs: out })
    }

    pub fn linf_add(&self, a: &LaurentInf, b: &LaurentInf) -> LaurentInf {
        // both at the same valuation offset after aligning to the smaller one
        let val = a.val.min(b.val);
        let top = (a.val + a.precision() as i64).min(b.val + b.precision() as i64);
        let n = (top - val).max(0) as usize;
        let coeffs = (0..n)
            .map(|i| {
                let e = val + i as i64;
                self.add(a.coeff_at(e).unwrap_or(Fe::ZERO), b.coeff_at(e).unwrap_or(Fe::ZERO))
            })
            .collect();
        LaurentInf { val, coeffs }
    }

    pub fn linf_pow_int(&self, a: &LaurentInf, e: i64) -> Result<LaurentInf> {
        let base = if e < 0 { self.linf_inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = LaurentInf::one(a.precision());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.linf_mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.linf_mul(&b, &b);
            }
        }
        Ok(acc)
    }
}

/// `α = π^{v} · sgn(α) · ⟨α⟩` with `v = -deg α`, `sgn` the leading coefficient.
pub fn infty_decompose(f: &Fq, alpha: &Poly, n: usize) -> Result<(i64, Fe, LaurentInf)> {
    let s = LaurentInf::from_poly(alpha, n)?;
    decompose_laurent(f, &s)
}

pub fn decompose_laurent(f: &Fq, s: &LaurentInf) -> Result<(i64, Fe, LaurentInf)> {
    let s = s.clone().normalize();
    let lead = s.coeffs.first().copied().filter(|c| !c.is_zero()).ok_or(Error::ZeroPolynomial("∞-adic decomposition"))?;
    let inv = f.inv(lead).expect("nonzero");
    let coeffs = s.coeffs.iter().map(|&c| f.mul(c, inv)).collect();
    Ok((s.val, lead, LaurentInf { val: 0, coeffs }))
}

/// `u^y = Σ binom(y, n) (u-1)^n` for a one-unit `u`; integer `y` uses exact powering.
pub fn one_unit_pow(f: &Fq, u: &LaurentInf, y: &ZpExp) -> Result<LaurentInf> {
    if !u.is_one_unit() {
        return Err(Error::NotOneUnit(format!("{u:?}")));
    }
    match y {
        ZpExp::Int(e) => f.linf_pow_int(u, *e),
        ZpExp::Padic(_) => one_unit_pow_series(f, u, y),
    }
}

/// The binomial series itself, for any exponent.
pub fn one_unit_pow_series(f: &Fq, u: &LaurentInf, y: &ZpExp) -> Result<LaurentInf> {
    if !u.is_one_unit() {
        return Err(Error::NotOneUnit(format!("{u:?}")));
    }
    let n = u.precision();
    let p = f.p() as u64;
    let mut w = u.clone();
    w.coeffs[0] = Fe::ZERO;
    let mut acc = LaurentInf::one(n);
    let mut wk = LaurentInf::one(n);
    // (u-1)^k has valuation >= k, so k < n suffices
    for k in 1..n as u64 {
        wk = f.linf_mul(&wk, &w);
        let b = y.binom_mod_p(p, k)?;
        if b != 0 {
            let c = f.from_int(b as i64);
            let term = LaurentInf { val: 0, coeffs: wk.coeffs.iter().map(|&x| f.mul(c, x)).collect() };
            acc = f.linf_add(&acc, &term);
        }
    }
    Ok(acc)
}

/// The `x`-part of an exponent at ∞.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InftyX {
    /// `x = π^{-j}`.
    PiPow(i64),
    Unit(LaurentInf),
}

/// `s = (x, y) ∈ C_∞^× × Z_p`, restricted to representable `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InftyExponent {
    pub x: InftyX,
    pub y: ZpExp,
}

impl InftyExponent {
    /// `s_j = (π^{-j}, j)`.
    pub fn integer(j: i64) -> InftyExponent {
        InftyExponent { x: InftyX::PiPow(j), y: ZpExp::Int(j) }
    }

    pub fn add(&self, f: &Fq, other: &InftyExponent) -> InftyExponent {
        let x = match (&self.x, &other.x) {
            (InftyX::PiPow(a), InftyX::PiPow(b)) => InftyX::PiPow(a + b),
            (InftyX::PiPow(a), InftyX::Unit(u)) | (InftyX::Unit(u), InftyX::PiPow(a)) => {
                InftyX::Unit(LaurentInf { val: u.val - a, coeffs: u.coeffs.clone() })
            }
            (InftyX::Unit(u), InftyX::Unit(v)) => InftyX::Unit(f.linf_mul(u, v)),
        };
        InftyExponent { x, y: self.y.add(&other.y) }
    }
}

/// `α^s = x^{deg α} ⟨α⟩^y` for monic `α`.
pub fn ideal_exp_infty(f: &Fq, alpha: &Poly, s: &InftyExponent, n: usize) -> Result<LaurentInf> {
    if !alpha.is_monic() {
        return Err(Error::NotMonic { poly: f.fmt_poly(alpha, 't') });
    }
    let (_, _, u) = infty_decompose(f, alpha, n)?;
    let uy = one_unit_pow(f, &u, &s.y)?;
    let d = alpha.degree() as i64;
    Ok(match &s.x {
        InftyX::PiPow(j) => LaurentInf { val: uy.val - j * d, coeffs: uy.coeffs },
        InftyX::Unit(x) => f.linf_mul(&f.linf_pow_int(x, d)?, &uy),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicNum;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fe(v: &[u32]) -> Vec<Fe> {
        v.iter().map(|&x| Fe(x)).collect()
    }

    fn random_poly(f: &Fq, rng: &mut ChaCha8Rng, deg: usize) -> Poly {
        let mut c: Vec<Fe> = (0..deg).map(|_| Fe(rng.gen_range(0..f.q()))).collect();
        c.push(Fe(rng.gen_range(1..f.q())));
        Poly::new(c)
    }

    #[test]
    fn decompose_examples() {
        let f3 = Fq::new(3, 1).unwrap();
        let (v, s, u) = infty_decompose(&f3, &Poly::one(), 3).unwrap();
        assert_eq!((v, s, u), (0, Fe::ONE, LaurentInf::one(3)));
        let (v, s, u) = infty_decompose(&f3, &f3.parse_poly("2t", 't').unwrap(), 3).unwrap();
        assert_eq!((v, s, u), (-1, Fe(2), LaurentInf::one(3)));
        let (v, s, u) = infty_decompose(&f3, &f3.parse_poly("t^2+1", 't').unwrap(), 4).unwrap();
        assert_eq!((v, s), (-2, Fe::ONE));
        assert_eq!(u.coeffs, fe(&[1, 0, 1, 0]));
        assert!(infty_decompose(&f3, &Poly::zero(), 3).is_err());
    }

    #[test]
    fn one_unit_pow_examples() {
        let f2 = Fq::new(2, 1).unwrap();
        let u = LaurentInf { val: 0, coeffs: fe(&[1, 1, 0, 0]) };
        assert_eq!(one_unit_pow(&f2, &u, &ZpExp::Int(0)).unwrap(), LaurentInf::one(4));
        assert_eq!(one_unit_pow(&f2, &u, &ZpExp::Int(2)).unwrap().coeffs, fe(&[1, 0, 1, 0]));
        assert_eq!(one_unit_pow(&f2, &u, &ZpExp::Int(-1)).unwrap().coeffs, fe(&[1, 1, 1, 1]));
        assert_eq!(one_unit_pow_series(&f2, &u, &ZpExp::Int(-1)).unwrap().coeffs, fe(&[1, 1, 1, 1]));
        let f3 = Fq::new(3, 1).unwrap();
        let u = LaurentInf { val: 0, coeffs: fe(&[1, 1, 0, 0, 0, 0]) };
        assert_eq!(one_unit_pow_series(&f3, &u, &ZpExp::Int(3)).unwrap().coeffs, fe(&[1, 0, 0, 1, 0, 0]));
        assert!(one_unit_pow(&f3, &LaurentInf { val: 0, coeffs: fe(&[2, 1]) }, &ZpExp::Int(1)).is_err());
    }

    #[test]
    fn series_matches_powering_and_exponent_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, r) in [(2u64, 1i64), (3, 1), (2, 2), (5, 1)] {
            let f = Fq::new(p, r).unwrap();
            for _ in 0..10 {
                let a = random_poly(&f, &mut rng, 6);
                let (v, s, u) = infty_decompose(&f, &a, 12).unwrap();
                // reconstruction
                let back = f.linf_mul(&LaurentInf { val: v, coeffs: { let mut c = vec![Fe::ZERO; 12]; c[0] = s; c } }, &u);
                assert_eq!(back, LaurentInf::from_poly(&a, 12).unwrap());
                for y in [-7i64, -1, 0, 1, 5, 13, 40] {
                    assert_eq!(one_unit_pow_series(&f, &u, &ZpExp::Int(y)).unwrap(), f.linf_pow_int(&u, y).unwrap(), "y={y}");
                }
                let y1 = ZpExp::Padic(PadicNum::from_digits(p, &[1, 0, 1, 1, 0, 1]).unwrap());
                let y2 = ZpExp::Padic(PadicNum::from_digits(p, &[1, 1, 0, 1, 1, 0]).unwrap());
                let lhs = one_unit_pow(&f, &u, &y1.add(&y2)).unwrap();
                let rhs = f.linf_mul(&one_unit_pow(&f, &u, &y1).unwrap(), &one_unit_pow(&f, &u, &y2).unwrap());
                assert_eq!(lhs, rhs);
                // multiplicativity of ⟨·⟩
                let b = random_poly(&f, &mut rng, 4);
                let (_, sb, ub) = infty_decompose(&f, &b, 12).unwrap();
                let (_, sab, uab) = infty_decompose(&f, &f.pmul(&a, &b), 12).unwrap();
                assert_eq!(uab, f.linf_mul(&u, &ub));
                assert_eq!(sab, f.mul(s, sb));
            }
        }
    }

    #[test]
    fn ideal_exp_integer_points() {
        let f3 = Fq::new(3, 1).unwrap();
        let s2 = InftyExponent::integer(2);
        let r = ideal_exp_infty(&f3, &Poly::t(), &s2, 5).unwrap();
        assert_eq!(r.normalize(), LaurentInf::from_poly(&f3.parse_poly("t^2", 't').unwrap(), 5).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let a = f3.pmonic(&random_poly(&f3, &mut rng, 5));
            let b = f3.pmonic(&random_poly(&f3, &mut rng, 3));
            assert_eq!(ideal_exp_infty(&f3, &a, &InftyExponent::integer(0), 8).unwrap(), LaurentInf::one(8));
            for j in [1i64, 3, 4] {
                let sj = InftyExponent::integer(j);
                let aj = ideal_exp_infty(&f3, &a, &sj, 8).unwrap();
                assert_eq!(aj, LaurentInf::from_poly(&f3.ppow(&a, j as u64), 8).unwrap());
                // (ab)^s = a^s b^s and a^{s+t} = a^s a^t
                let bj = ideal_exp_infty(&f3, &b, &sj, 8).unwrap();
                assert_eq!(ideal_exp_infty(&f3, &f3.pmul(&a, &b), &sj, 8).unwrap(), f3.linf_mul(&aj, &bj));
                let s1 = InftyExponent::integer(1);
                assert_eq!(
                    ideal_exp_infty(&f3, &a, &sj.add(&f3, &s1), 8).unwrap(),
                    f3.linf_mul(&aj, &ideal_exp_infty(&f3, &a, &s1, 8).unwrap())
                );
            }
        }
    }

    #[test]
    fn padic_exponent_precision_consistency() {
        // y = 1 + 3 + 9 + ...: ⟨t+1⟩^y agrees with the integer truncation y mod 3^k to precision 3^k
        let f3 = Fq::new(3, 1).unwrap();
        let a = f3.parse_poly("t+1", 't').unwrap();
        let digits = [1u64; 8];
        let y = PadicNum::from_digits(3, &digits).unwrap();
        let s = InftyExponent { x: InftyX::PiPow(0), y: ZpExp::Padic(y) };
        let full = ideal_exp_infty(&f3, &a, &s, 27).unwrap();
        for k in 1..=3u32 {
            let yk = (0..k).map(|i| 3i64.pow(i)).sum::<i64>();
            let part = ideal_exp_infty(&f3, &a, &InftyExponent { x: InftyX::PiPow(0), y: ZpExp::Int(yk) }, 27).unwrap();
            let n = 3usize.pow(k);
            assert_eq!(full.coeffs[..n], part.coeffs[..n], "k={k}");
        }
        assert!(ideal_exp_infty(&f3, &f3.parse_poly("2t+1", 't').unwrap(), &s, 5).is_err());
    }
}
