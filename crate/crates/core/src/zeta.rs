//! Power sums `S_n(j)`, the polynomials `Z(X, j)`, Goss zeta truncations at `∞`,
//! `ν`-adic `L`-series and the interpolation checks.
//!
//! Power sums are computed through `B_k(l) = Σ_{c ∈ A_{<k}} c^l`. Writing
//! `c = Σ c_i t^i` and expanding, `Σ_{c_i ∈ F_q} c_i^s` is `-1` when `s ≥ 1` and
//! `(q-1) | s`, and `0` otherwise; the multinomial coefficients are taken mod `p`
//! through Lucas, so `B_k(l)` is a sum over carry-free splittings of the base-`p`
//! digits of `l` into `k` nonzero parts.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::field::{Fe, Fq};
use crate::infty::{infty_decompose, one_unit_pow as infty_pow, InftyExponent, InftyX, LaurentInf};
use crate::nu_adic::{ideal_exp_nu, NuCtx, NuExponent};
use crate::numth::{binom_mod_p, digits};
use crate::padic::ZpExp;
use crate::poly::{checked_count, Place, Poly};

/// `B_k(l) = Σ_{c ∈ A, deg c < k} c^l` (with `0^0 = 1`).
pub fn space_power_sum(f: &Fq, k: usize, l: u64) -> Poly {
    if k == 0 {
        return if l == 0 { Poly::one() } else { Poly::zero() };
    }
    let p = f.p() as u64;
    let digit_sum: u64 = digits(l, p).iter().sum();
    if digit_sum < k as u64 {
        return Poly::zero();
    }
    let mut memo = HashMap::new();
    let v = split_parts(f, k, 0, l, &mut memo);
    if k % 2 == 1 {
        f.pneg(&v)
    } else {
        v
    }
}

// Σ over carry-free l = s_i + ... + s_{k-1}, each s ≥ 1 with (q-1) | s, of the
// multinomial mod p times t^{Σ i s_i}.
fn split_parts(f: &Fq, k: usize, i: usize, r: u64, memo: &mut HashMap<(usize, u64), Poly>) -> Poly {
    if i == k {
        return if r == 0 { Poly::one() } else { Poly::zero() };
    }
    let p = f.p() as u64;
    let q1 = f.q() as u64 - 1;
    if (digits(r, p).iter().sum::<u64>()) < (k - i) as u64 {
        return Poly::zero();
    }
    if let Some(v) = memo.get(&(i, r)) {
        return v.clone();
    }
    let mut acc = Poly::zero();
    for s in sub_digit_values(r, p) {
        if s == 0 || s % q1 != 0 {
            continue;
        }
        let c = binom_mod_p(r, s, p);
        if c == 0 {
            continue;
        }
        let rest = split_parts(f, k, i + 1, r - s, memo);
        if rest.is_zero() {
            continue;
        }
        let term = f.pshift(&rest, i * s as usize);
        acc = f.padd(&acc, &f.pscale(f.from_int(c as i64), &term));
    }
    memo.insert((i, r), acc.clone());
    acc
}

/// All `s` whose base-`p` digits are bounded by those of `r`.
fn sub_digit_values(r: u64, p: u64) -> Vec<u64> {
    let mut out = vec![0u64];
    let mut place = 1u64;
    for d in digits(r, p) {
        let cur = out.clone();
        for e in 1..=d {
            out.extend(cur.iter().map(|&s| s + e * place));
        }
        place *= p;
    }
    out
}

/// `S_n(j) = Σ_{a monic, deg a = n} a^j`, optionally restricted to `a` prime to `P`.
pub fn power_sum(f: &Fq, j: u64, n: usize, coprime_to: Option<&Place>) -> Result<Poly> {
    let full = power_sum_all(f, j, n);
    match coprime_to {
        None => Ok(full),
        Some(place) => {
            let pp = place.poly().ok_or_else(|| Error::Mismatch("coprimality needs a finite place".into()))?;
            let d = pp.degree();
            if n < d {
                return Ok(full);
            }
            // multiples of P of degree n are P·b with b monic of degree n - d
            let sub = f.pmul(&f.ppow(pp, j), &power_sum_all(f, j, n - d));
            Ok(f.psub(&full, &sub))
        }
    }
}

fn power_sum_all(f: &Fq, j: u64, n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let p = f.p() as u64;
    // (t^n + b)^j = Σ_k binom(j, k) t^{n(j-k)} b^k
    let mut acc = Poly::zero();
    for k in sub_digit_values(j, p) {
        let b = space_power_sum(f, n, k);
        if b.is_zero() {
            continue;
        }
        let c = binom_mod_p(j, k, p);
        let term = f.pshift(&b, n * (j - k) as usize);
        acc = f.padd(&acc, &f.pscale(f.from_int(c as i64), &term));
    }
    acc
}

/// The same sum by listing the monics.
pub fn power_sum_enumerated(f: &Fq, j: u64, n: usize, coprime_to: Option<&Place>, ceiling: u64) -> Result<Poly> {
    let monics = f.enumerate_monic(n, coprime_to, ceiling)?;
    Ok(monics.iter().fold(Poly::zero(), |acc, a| f.padd(&acc, &f.ppow(a, j))))
}

/// `Σ_{b ∈ A, deg b < k} (x + b)^i`, by enumeration.
pub fn vanishing_sum(f: &Fq, x: &Poly, k: usize, i: u64, ceiling: u64) -> Result<Poly> {
    let count = checked_count(f.q() as u64, k);
    if count > ceiling {
        return Err(Error::ceiling("subspace enumeration", count, ceiling));
    }
    let mut acc = Poly::zero();
    for code in 0..count {
        let b = f.decode(code);
        acc = f.padd(&acc, &f.ppow(&f.padd(x, &b), i));
    }
    Ok(acc)
}

/// `1 + ⌊j/(q-1)⌋`.
pub fn z_bound(q: u64, j: u64) -> usize {
    1 + (j / (q - 1)) as usize
}

/// `Z(X, j) = Σ_n S_n(j) X^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZPoly {
    pub j: u64,
    /// `S_0(j), S_1(j), ...` up to `horizon`.
    pub coeffs: Vec<Poly>,
    pub bound: usize,
    /// Last degree computed and found zero beyond `bound`.
    pub horizon: usize,
}

impl ZPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn coeff(&self, n: usize) -> Poly {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn eval_one(&self, f: &Fq) -> Poly {
        self.coeffs.iter().fold(Poly::zero(), |acc, c| f.padd(&acc, c))
    }
}

/// Computes `S_n(j)` to `bound + 3` and checks the tail vanishes.
pub fn z_poly(f: &Fq, j: u64) -> Result<ZPoly> {
    let bound = z_bound(f.q() as u64, j);
    let horizon = bound + 3;
    let coeffs: Vec<Poly> = (0..=horizon).map(|n| power_sum_all(f, j, n)).collect();
    if let Some(n) = (bound + 1..=horizon).find(|&n| !coeffs[n].is_zero()) {
        return Err(Error::Verification(format!(
            "S_{n}({j}) = {} is nonzero beyond degree bound {bound}",
            f.fmt_poly(&coeffs[n], 't')
        )));
    }
    let mut coeffs = coeffs;
    coeffs.truncate(bound + 1);
    Ok(ZPoly { j, coeffs, bound, horizon })
}

/// `Z(1, j) = ζ_A(-s_j)`.
pub fn bernoulli_goss(f: &Fq, j: u64) -> Result<Poly> {
    Ok(z_poly(f, j)?.eval_one(f))
}

/// `1 + X`, `1 + (t+1)X^2`, ...
pub fn fmt_series(f: &Fq, coeffs: &[Poly], var: &str) -> String {
    let mut s = String::new();
    for (n, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !s.is_empty() {
            s.push_str(" + ");
        }
        let cs = f.fmt_poly(c, 't');
        let mono = match n {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{n}"),
        };
        if n == 0 {
            s.push_str(&cs);
        } else if c.is_one() {
            s.push_str(&mono);
        } else if c.coeffs().len() == 1 {
            let _ = write!(s, "{cs}{mono}");
        } else {
            let _ = write!(s, "({cs}){mono}");
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GossTrunc {
    pub value: LaurentInf,
    /// `π`-valuation of the last nonzero degree-`D` contribution, if any.
    pub last_valuation: Option<i64>,
}

/// `Σ_{n ≤ D} (Σ_{deg α = n} ⟨α⟩^{-y}) x^{-n}` with `N` terms per `⟨α⟩`.
pub fn goss_zeta_trunc(f: &Fq, s: &InftyExponent, n_terms: usize, d: usize, ceiling: u64) -> Result<GossTrunc> {
    let neg_y = s.y.neg();
    let mut total: Option<LaurentInf> = None;
    let mut last_valuation = None;
    for n in 0..=d {
        let mut a_n = LaurentInf { val: 0, coeffs: vec![Fe::ZERO; n_terms] };
        for alpha in f.enumerate_monic(n, None, ceiling)? {
            let (_, _, u) = infty_decompose(f, &alpha, n_terms)?;
            a_n = f.linf_add(&a_n, &infty_pow(f, &u, &neg_y)?);
        }
        let term = match &s.x {
            InftyX::PiPow(k) => LaurentInf { val: a_n.val + k * n as i64, coeffs: a_n.coeffs },
            InftyX::Unit(x) => f.linf_mul(&f.linf_pow_int(x, -(n as i64))?, &a_n),
        }
        .normalize();
        if n == d {
            last_valuation = term.coeffs.iter().any(|c| !c.is_zero()).then_some(term.val);
        }
        total = Some(match total {
            None => term,
            Some(t) => f.linf_add(&t, &term),
        });
    }
    Ok(GossTrunc { value: total.expect("degree 0 term").normalize(), last_valuation })
}

/// `L_ν(X, y, ω^i)` truncated at degree `D`, coefficients mod `P^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuLSeries {
    pub conductor: Poly,
    pub y: ZpExp,
    pub i: i64,
    pub degree: usize,
    pub precision: usize,
    pub coeffs: Vec<Poly>,
}

/// `T_{n,r}(e) = Σ_{a monic, deg a = n, a ≡ r mod P} (⟨a⟩ - 1)^e` mod `P^m`, for `e < m`.
/// Independent of `(y, i)`; one table serves every `L_ν(X, y, ω^i)`.
#[derive(Clone, Debug)]
pub struct NuResidueSums {
    degree: usize,
    teich: BTreeMap<u64, Poly>,
    sums: Vec<BTreeMap<u64, Vec<Poly>>>,
}

pub fn nu_residue_sums(ctx: &NuCtx, degree: usize, ceiling: u64) -> Result<NuResidueSums> {
    let f = ctx.field();
    let pp = ctx.conductor().clone();
    let d = pp.degree();
    let m = ctx.precision();
    let units = checked_count(f.q() as u64, d);
    let work = units.saturating_mul(degree as u64 + 1);
    if work > ceiling {
        return Err(Error::ceiling("ν-adic residue sums", work, ceiling));
    }
    let modulus = ctx.modulus().clone();
    let mulm = |a: &Poly, b: &Poly| f.pmul_mod(a, b, &modulus);
    let mut teich = BTreeMap::new();
    let mut teich_inv = BTreeMap::new();
    for code in 1..units {
        let r = f.decode(code);
        let w = ctx.teichmuller(&r)?.rep;
        teich_inv.insert(code, f.pinv_mod(&w, &modulus).expect("roots of unity are units"));
        teich.insert(code, w);
    }
    let p_pows: Vec<Poly> = (0..m).map(|l| f.ppow_mod(&pp, l as u128, &modulus)).collect();
    let mut sums = Vec::with_capacity(degree + 1);
    for n in 0..=degree {
        let mut level = BTreeMap::new();
        if n < d {
            for a in f.monics(n) {
                let code = f.encode(&a);
                let u = mulm(&a, &teich_inv[&code]);
                let w = f.psub(&u, &Poly::one());
                let mut pows = vec![f.prem(&Poly::one(), &modulus)];
                for e in 1..m {
                    pows.push(mulm(&pows[e - 1], &w));
                }
                level.insert(code, pows);
            }
        } else {
            // a ≡ r mod P, deg a = n: a = x0 + P c with deg c < n - d
            let b: Vec<Poly> = (0..m).map(|l| f.prem(&space_power_sum(f, n - d, l as u64), &modulus)).collect();
            let tn = Poly::monomial(f.one(), n);
            let tn_mod = f.prem(&tn, &pp);
            for code in 1..units {
                let r = f.decode(code);
                let x0 = f.padd(&tn, &f.psub(&r, &tn_mod));
                let x0_pows: Vec<Poly> = (0..m).map(|e| f.ppow_mod(&x0, e as u128, &modulus)).collect();
                // U(k) = Σ_a a^k
                let u: Vec<Poly> = (0..m)
                    .map(|k| {
                        (0..=k).fold(Poly::zero(), |acc, l| {
                            let c = binom_mod_p(k as u64, l as u64, f.p() as u64);
                            if c == 0 || b[l].is_zero() {
                                return acc;
                            }
                            let term = mulm(&mulm(&x0_pows[k - l], &p_pows[l]), &b[l]);
                            f.padd(&acc, &f.pscale(f.from_int(c as i64), &term))
                        })
                    })
                    .collect();
                let winv = &teich_inv[&code];
                let winv_pows: Vec<Poly> = (0..m).map(|k| f.ppow_mod(winv, k as u128, &modulus)).collect();
                // (⟨a⟩ - 1)^e = Σ_k binom(e, k) (-1)^{e-k} ω^{-k} a^k
                let t: Vec<Poly> = (0..m)
                    .map(|e| {
                        (0..=e).fold(Poly::zero(), |acc, k| {
                            let c = binom_mod_p(e as u64, k as u64, f.p() as u64) as i64;
                            let c = if (e - k) % 2 == 1 { -c } else { c };
                            if c == 0 || u[k].is_zero() {
                                return acc;
                            }
                            let term = mulm(&winv_pows[k], &u[k]);
                            f.padd(&acc, &f.pscale(f.from_int(c), &term))
                        })
                    })
                    .collect();
                if t.iter().any(|x| !x.is_zero()) {
                    level.insert(code, t);
                }
            }
        }
        sums.push(level);
    }
    Ok(NuResidueSums { degree, teich, sums })
}

impl NuResidueSums {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `Σ_r ω(r)^i Σ_{e < m} binom(y, e) T_{n,r}(e)`.
    pub fn series(&self, ctx: &NuCtx, y: &ZpExp, i: i64) -> Result<NuLSeries> {
        let f = ctx.field();
        let p = f.p() as u64;
        let m = ctx.precision();
        let order = ctx.unit_root_order() as i64;
        let ie = i.rem_euclid(order) as u128;
        let binoms: Vec<u64> = (0..m as u64).map(|e| y.binom_mod_p(p, e)).collect::<Result<_>>()?;
        let mut coeffs = Vec::with_capacity(self.degree + 1);
        for level in &self.sums {
            let mut c = Poly::zero();
            for (code, t) in level {
                let inner = t.iter().zip(&binoms).fold(Poly::zero(), |acc, (te, &b)| {
                    if b == 0 {
                        acc
                    } else {
                        f.padd(&acc, &f.pscale(f.from_int(b as i64), te))
                    }
                });
                if inner.is_zero() {
                    continue;
                }
                let w = f.ppow_mod(&self.teich[code], ie, ctx.modulus());
                c = f.padd(&c, &f.pmul_mod(&w, &inner, ctx.modulus()));
            }
            coeffs.push(c);
        }
        Ok(NuLSeries {
            conductor: ctx.conductor().clone(),
            y: *y,
            i,
            degree: self.degree,
            precision: m,
            coeffs,
        })
    }
}

pub fn nu_l(ctx: &NuCtx, y: &ZpExp, i: i64, degree: usize, ceiling: u64) -> Result<NuLSeries> {
    nu_residue_sums(ctx, degree, ceiling)?.series(ctx, y, i)
}

/// `Σ_{deg a = n, (a, P) = 1} ω(a)^i ⟨a⟩^y` by listing the monics.
pub fn nu_l_enumerated(ctx: &NuCtx, y: &ZpExp, i: i64, degree: usize, ceiling: u64) -> Result<NuLSeries> {
    let f = ctx.field();
    let place = Place::finite(f, ctx.conductor().clone())?;
    let s = NuExponent { x: None, y: *y, j: i };
    let mut coeffs = Vec::with_capacity(degree + 1);
    for n in 0..=degree {
        let mut c = Poly::zero();
        for a in f.enumerate_monic(n, Some(&place), ceiling)? {
            c = f.padd(&c, &ideal_exp_nu(ctx, &a, &s)?.rep);
        }
        coeffs.push(c);
    }
    Ok(NuLSeries { conductor: ctx.conductor().clone(), y: *y, i, degree, precision: ctx.precision(), coeffs })
}

/// Compares `L_ν(X, j, ω^i)` with `Z(X, j)(1 - P^j X^d)` mod `P^m`; needs `i ≡ j mod q^d - 1`.
pub fn verify_vadic_identity(f: &Fq, place: &Place, j: u64, i: i64, m: usize, ceiling: u64) -> Result<CheckReport> {
    let ctx = NuCtx::new(f, place, m)?;
    let order = ctx.unit_root_order() as i64;
    if (i - j as i64).rem_euclid(order) != 0 {
        return Err(Error::Mismatch(format!("i = {i} and j = {j} are not congruent mod {order}")));
    }
    let z = z_poly(f, j)?;
    let d = place.degree();
    let degree = z.bound + d;
    let lhs = nu_l(&ctx, &ZpExp::Int(j as i64), i, degree, ceiling)?;
    let pj = f.ppow(place.poly().expect("finite"), j);
    let per_degree = (0..=degree)
        .map(|n| {
            let mut rhs = z.coeff(n);
            if n >= d {
                rhs = f.psub(&rhs, &f.pmul(&pj, &z.coeff(n - d)));
            }
            f.prem(&rhs, ctx.modulus()) == lhs.coeffs[n]
        })
        .collect();
    Ok(CheckReport::from_degrees(format!("vadic j={j} i={i} m={m}"), per_degree))
}

/// Compares `L_ν(X, y, ω^i)` with `Z(X, i)(1 - P^i X^d)` mod `P`.
///
/// For `i ≥ 1` the second factor is `1` mod `P`; at `i = 0` it carries the
/// multiples of `P` that `Z(X, 0)` counts and `L_ν` omits.
pub fn verify_vadic_congruence(f: &Fq, place: &Place, y: &ZpExp, i: u64, ceiling: u64) -> Result<CheckReport> {
    let ctx = NuCtx::new(f, place, 1)?;
    let z = z_poly(f, i)?;
    let d = place.degree();
    let degree = z.bound + d + 2;
    let lhs = nu_l(&ctx, y, i as i64, degree, ceiling)?;
    let pp = place.poly().expect("finite");
    let pi = f.ppow(pp, i);
    let per_degree = (0..=degree)
        .map(|n| {
            let mut rhs = z.coeff(n);
            if n >= d {
                rhs = f.psub(&rhs, &f.pmul(&pi, &z.coeff(n - d)));
            }
            f.prem(&rhs, pp) == lhs.coeffs[n]
        })
        .collect();
    Ok(CheckReport::from_degrees(format!("vadic-congruence i={i} y={}", fmt_zp(y)), per_degree))
}

fn fmt_zp(y: &ZpExp) -> String {
    match y {
        ZpExp::Int(v) => v.to_string(),
        ZpExp::Padic(v) => v.to_string(),
    }
}

/// Degree `m` coefficient: `Σ_{deg a = m, (a,P)=1} ⟨a⟩^j` against
/// `π^{jm} (S_m(j) - P^j S_{m-d}(j))`, both exact polynomials in `π`.
pub fn verify_infty_interpolation(f: &Fq, place: &Place, j: u64, degree: usize, ceiling: u64) -> Result<CheckReport> {
    let mut per_degree = Vec::with_capacity(degree + 1);
    for m in 0..=degree {
        let n_terms = j as usize * m + 1;
        let mut lhs = vec![Fe::ZERO; n_terms];
        for a in f.enumerate_monic(m, Some(place), ceiling)? {
            let (_, _, u) = infty_decompose(f, &a, n_terms)?;
            let v = infty_pow(f, &u, &ZpExp::Int(j as i64))?;
            for e in 0..n_terms {
                if let Some(c) = v.coeff_at(e as i64) {
                    lhs[e] = f.add(lhs[e], c);
                }
            }
        }
        let s = power_sum(f, j, m, Some(place))?;
        let ok = (0..n_terms).all(|e| lhs[e] == s.coeff(j as usize * m - e)) && s.deg().map_or(true, |dg| dg < n_terms);
        per_degree.push(ok);
    }
    Ok(CheckReport::from_degrees(format!("infty j={j}"), per_degree))
}
