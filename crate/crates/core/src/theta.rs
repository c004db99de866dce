//! Truncated Stickelberger series `Θ_n(X) = Σ_a σ_a^{-1} X^{deg a}` over
//! `Z[G_n]`, their character parts over `W[Γ_n]`, and `Θ^♯`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::character::{chi_apply, CharType, Character};
use crate::error::{Error, Result};
use crate::group::GroupLevel;
use crate::group_ring::{GroupRingElem, IntRing};
use crate::poly::{checked_count, Poly};
use crate::witt::{WittElem, WittRing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSeries {
    pub conductor: Poly,
    pub level: usize,
    pub degree: usize,
    pub coeffs: Vec<GroupRingElem<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTheta {
    pub character: Character,
    pub degree: usize,
    pub coeffs: Vec<GroupRingElem<WittElem>>,
    pub stabilized: bool,
}

impl CharTheta {
    /// Index of the last nonzero coefficient.
    pub fn poly_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }
}

/// Per-degree comparison verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub per_degree: Vec<bool>,
    pub all_equal: bool,
}

impl DegreeReport {
    fn new(per_degree: Vec<bool>) -> DegreeReport {
        let all_equal = per_degree.iter().all(|&b| b);
        DegreeReport { per_degree, all_equal }
    }
}

fn pow_i64(q: u64, e: usize) -> Result<i64> {
    let v = checked_count(q, e);
    i64::try_from(v).ok().filter(|&x| x < i64::MAX).ok_or_else(|| Error::ceiling("integer coefficient q^e", v, i64::MAX as u64))
}

/// `Θ_n(X)` to degree `D`.
///
/// Degrees below `(n+1) deg P` are enumerated. Above that every unit residue
/// mod `P^{n+1}` is hit by exactly `q^{m - (n+1)d}` monics of degree `m`.
pub fn theta_truncate(group: &GroupLevel, degree: usize, ceiling: u64) -> Result<ThetaSeries> {
    let f = group.field();
    let q = f.q() as u64;
    let big = group.modulus().degree();
    let mut coeffs = Vec::with_capacity(degree + 1);
    coeffs.push(GroupRingElem::identity(&IntRing));
    let mut all_units: Option<Vec<u64>> = None;
    for m in 1..=degree {
        if m >= big {
            let units = all_units.get_or_insert_with(|| group.elements());
            let mult = pow_i64(q, m - big)?;
            let mut c = GroupRingElem::zero();
            for &u in units.iter() {
                c.add_term(&IntRing, group.inv(u), &mult);
            }
            coeffs.push(c);
        } else {
            coeffs.push(enumerate_degree(group, m, ceiling)?);
        }
    }
    Ok(ThetaSeries { conductor: group.conductor().clone(), level: group.level(), degree, coeffs })
}

fn enumerate_degree(group: &GroupLevel, m: usize, ceiling: u64) -> Result<GroupRingElem<i64>> {
    let f = group.field();
    let count = checked_count(f.q() as u64, m);
    if count > ceiling {
        return Err(Error::ceiling(format!("monics of degree {m}"), count, ceiling));
    }
    let mut hits: std::collections::BTreeMap<u64, i64> = Default::default();
    for a in f.monics(m) {
        if let Ok(code) = group.reduce(&a) {
            *hits.entry(code).or_default() += 1;
        }
    }
    let mut c = GroupRingElem::zero();
    for (code, k) in hits {
        c.add_term(&IntRing, group.inv(code), &k);
    }
    Ok(c)
}

/// Same series, every degree by enumeration (cross-check for [`theta_truncate`]).
pub fn theta_truncate_enumerated(group: &GroupLevel, degree: usize, ceiling: u64) -> Result<ThetaSeries> {
    let mut coeffs = vec![GroupRingElem::identity(&IntRing)];
    for m in 1..=degree {
        coeffs.push(enumerate_degree(group, m, ceiling)?);
    }
    Ok(ThetaSeries { conductor: group.conductor().clone(), level: group.level(), degree, coeffs })
}

/// Expands `Π_{Q ≠ P, deg Q ≤ D} (1 - σ_Q^{-1} X^{deg Q})^{-1}` to degree `D` and
/// compares it with the ideal sum.
pub fn euler_vs_sum_check(group: &GroupLevel, theta: &ThetaSeries, ceiling: u64) -> Result<DegreeReport> {
    let f = group.field().clone();
    euler_vs_sum_check_with(group, theta, &mut |e| f.irreducibles(e, ceiling))
}

/// [`euler_vs_sum_check`] with the irreducibles of each degree supplied by the caller.
pub fn euler_vs_sum_check_with(
    group: &GroupLevel,
    theta: &ThetaSeries,
    irreducibles: &mut dyn FnMut(usize) -> Result<Vec<Poly>>,
) -> Result<DegreeReport> {
    let d = theta.degree;
    let mut prod: Vec<GroupRingElem<i64>> = vec![GroupRingElem::zero(); d + 1];
    prod[0] = GroupRingElem::identity(&IntRing);
    for e in 1..=d {
        for qp in irreducibles(e)? {
            let Ok(code) = group.reduce(&qp) else { continue };
            let sigma = GroupRingElem::monomial(&IntRing, group.inv(code), 1);
            // T = S / (1 - σ X^e):  T[k] = S[k] + σ T[k-e]
            for k in e..=d {
                let shifted = prod[k - e].mul(&IntRing, group, &sigma);
                prod[k] = prod[k].add(&IntRing, &shifted);
            }
        }
    }
    Ok(DegreeReport::new((0..=d).map(|k| prod[k] == theta.coeffs[k]).collect()))
}

/// Coefficientwise `χ`-part.
pub fn theta_chi(group: &GroupLevel, ring: &WittRing, theta: &ThetaSeries, chi: &Character) -> Result<CharTheta> {
    let coeffs = theta
        .coeffs
        .iter()
        .map(|c| chi_apply(group, ring, c, chi))
        .collect::<Result<Vec<_>>>()?;
    let window = 3.max(theta.degree.div_ceil(4));
    let stabilized = coeffs.len() > window && coeffs[coeffs.len() - window..].iter().all(GroupRingElem::is_zero);
    Ok(CharTheta { character: *chi, degree: theta.degree, coeffs, stabilized })
}

/// Compares `#{monic, deg m, coprime to P}` with the coefficients of `(1 - X^d)/(1 - qX)`.
pub fn theta_chi0_closed_form(group: &GroupLevel, theta: &ThetaSeries) -> Result<DegreeReport> {
    let q = group.field().q() as u64;
    let d = group.conductor().degree();
    let mut per = Vec::with_capacity(theta.degree + 1);
    for (m, c) in theta.coeffs.iter().enumerate() {
        let mut expect = pow_i64(q, m)?;
        if m >= d {
            expect -= pow_i64(q, m - d)?;
        }
        per.push(c.augmentation(&IntRing) == expect);
    }
    Ok(DegreeReport::new(per))
}

/// Closed-form coefficients `1, q-1, ...` of `(1 - X^d)/(1 - qX)`.
pub fn chi0_series(q: u64, d: usize, degree: usize) -> Result<Vec<i64>> {
    (0..=degree)
        .map(|m| Ok(pow_i64(q, m)? - if m >= d { pow_i64(q, m - d)? } else { 0 }))
        .collect()
}

/// `Θ^♯(1, χ)`: type 1 evaluates at `X = 1`; type 2 divides by `1 - X` first.
pub fn theta_sharp(ring: &WittRing, ct: &CharTheta) -> Result<GroupRingElem<WittElem>> {
    if ct.character.kind == CharType::Three {
        return Err(Error::TypeThreeUnsupported);
    }
    if !ct.stabilized {
        return Err(Error::PrecisionExhausted(format!(
            "Θ(X, χ) for χ = ζ^{} not stabilized by degree {}",
            ct.character.exponent, ct.degree
        )));
    }
    let sum = |cs: &[GroupRingElem<WittElem>]| cs.iter().fold(GroupRingElem::zero(), |acc, c| acc.add(ring, c));
    match ct.character.kind {
        CharType::Three => Err(Error::TypeThreeUnsupported),
        CharType::One => Ok(sum(&ct.coeffs)),
        CharType::Two => {
            let (quot, rem) = divide_one_minus_x(ring, &ct.coeffs);
            if !rem.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "Θ(X, χ) for χ = ζ^{} is not divisible by 1 - X",
                    ct.character.exponent
                )));
            }
            Ok(sum(&quot))
        }
    }
}

/// `c = (1 - X) Q + r`; `Q[k] = c_0 + ... + c_k`, `r = Σ c_i`.
pub fn divide_one_minus_x(ring: &WittRing, c: &[GroupRingElem<WittElem>]) -> (Vec<GroupRingElem<WittElem>>, GroupRingElem<WittElem>) {
    let mut quot = Vec::with_capacity(c.len().saturating_sub(1));
    let mut run = GroupRingElem::zero();
    for (k, ck) in c.iter().enumerate() {
        run = run.add(ring, ck);
        if k + 1 < c.len() {
            quot.push(run.clone());
        }
    }
    (quot, run)
}

/// JSON dump `{q, P, n, D, coefficients: [[[element, count], ...], ...]}`.
pub fn theta_json(group: &GroupLevel, theta: &ThetaSeries) -> Value {
    let f = group.field();
    let coeffs: Vec<Value> = theta
        .coeffs
        .iter()
        .map(|c| {
            Value::Array(
                c.terms()
                    .iter()
                    .map(|(&g, &k)| json!([f.fmt_poly(&f.decode(g), 't'), k]))
                    .collect(),
            )
        })
        .collect();
    json!({
        "q": f.q(),
        "P": f.fmt_poly(&theta.conductor, 't'),
        "n": theta.level,
        "D": theta.degree,
        "coefficients": coeffs,
    })
}

/// `Θ(X, χ)` as text in `X`, e.g. `1 - X`; at level 0 coefficients are `W`-scalars.
pub fn fmt_char_theta(ring: &WittRing, group: &GroupLevel, ct: &CharTheta) -> String {
    let f = group.field();
    let mut parts: Vec<String> = Vec::new();
    for (k, c) in ct.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coef = if c.terms().len() == 1 && c.terms().contains_key(&1) {
            ring.fmt(&c.terms()[&1])
        } else {
            let inner: Vec<String> = c
                .terms()
                .iter()
                .map(|(&g, w)| format!("({})[{}]", ring.fmt(w), f.fmt_poly(&f.decode(g), 't')))
                .collect();
            format!("({})", inner.join(" + "))
        };
        let mono = match k {
            0 => String::new(),
            1 => "X".to_string(),
            _ => format!("X^{k}"),
        };
        parts.push(match (coef.as_str(), k) {
            (_, 0) => coef,
            ("1", _) => mono,
            ("-1", _) => format!("-{mono}"),
            _ => format!("{coef}*{mono}"),
        });
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => {
                s.push_str(" - ");
                s.push_str(rest);
            }
            None => {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::characters_of;
    use crate::{Fq, Place};

    const CEIL: u64 = 1 << 22;

    fn setup(p: u64, cond: &str, n: usize) -> (Fq, GroupLevel, WittRing) {
        let f = Fq::new(p, 1).unwrap();
        let pl = Place::finite(&f, f.parse_poly(cond, 't').unwrap()).unwrap();
        let g = GroupLevel::new(&f, &pl, n).unwrap();
        let w = WittRing::new(p, g.g0_order(), 12).unwrap();
        (f, g, w)
    }

    #[test]
    fn first_coefficients() {
        let (f, g, _) = setup(3, "t", 0);
        let th = theta_truncate(&g, 4, CEIL).unwrap();
        assert_eq!(th.coeffs[0], GroupRingElem::identity(&IntRing));
        let c1: Vec<(String, i64)> = th.coeffs[1].terms().iter().map(|(&c, &k)| (f.fmt_poly(&f.decode(c), 't'), k)).collect();
        assert_eq!(c1, vec![("1".into(), 1), ("2".into(), 1)]);

        let (f, g, _) = setup(2, "t^2+t+1", 0);
        let th = theta_truncate(&g, 4, CEIL).unwrap();
        let c1: Vec<(String, i64)> = th.coeffs[1].terms().iter().map(|(&c, &k)| (f.fmt_poly(&f.decode(c), 't'), k)).collect();
        assert_eq!(c1, vec![("t".into(), 1), ("t+1".into(), 1)]);
    }

    #[test]
    fn counting_shortcut_matches_enumeration() {
        for (p, c, n, d) in [(2u64, "t", 2usize, 9usize), (2, "t^2+t+1", 1, 8), (3, "t", 1, 6), (3, "t^2+1", 0, 5)] {
            let (_, g, _) = setup(p, c, n);
            assert_eq!(theta_truncate(&g, d, CEIL).unwrap(), theta_truncate_enumerated(&g, d, CEIL).unwrap(), "{p} {c} {n}");
        }
    }

    #[test]
    fn euler_product_and_closed_form() {
        for (p, c) in [(3u64, "t"), (2, "t")] {
            let (_, g, _) = setup(p, c, 0);
            let th = theta_truncate(&g, 6, CEIL).unwrap();
            assert!(euler_vs_sum_check(&g, &th, CEIL).unwrap().all_equal);
            assert!(theta_chi0_closed_form(&g, &th).unwrap().all_equal);
        }
        let (_, g, _) = setup(3, "t", 1);
        let th = theta_truncate(&g, 5, CEIL).unwrap();
        assert!(euler_vs_sum_check(&g, &th, CEIL).unwrap().all_equal);
        let th0 = theta_truncate(&g, 0, CEIL).unwrap();
        assert_eq!(euler_vs_sum_check(&g, &th0, CEIL).unwrap().per_degree, vec![true]);
        assert_eq!(chi0_series(3, 1, 3).unwrap(), vec![1, 2, 6, 18]);
        assert_eq!(chi0_series(2, 2, 4).unwrap(), vec![1, 2, 3, 6, 12]);
    }

    #[test]
    fn char_theta_examples_and_sharp() {
        let (_, g, w) = setup(3, "t", 0);
        let th = theta_truncate(&g, 7, CEIL).unwrap();
        let chars = characters_of(&g);
        let ct = theta_chi(&g, &w, &th, &chars[1]).unwrap();
        assert!(ct.stabilized);
        assert_eq!(fmt_char_theta(&w, &g, &ct), "1");
        assert_eq!(theta_sharp(&w, &ct).unwrap(), GroupRingElem::identity(&w));
        let ct0 = theta_chi(&g, &w, &th, &chars[0]).unwrap();
        assert!(matches!(theta_sharp(&w, &ct0), Err(Error::TypeThreeUnsupported)));

        let (_, g, w) = setup(2, "t^2+t+1", 0);
        let th = theta_truncate(&g, 8, CEIL).unwrap();
        for chi in &characters_of(&g)[1..] {
            let ct = theta_chi(&g, &w, &th, chi).unwrap();
            assert_eq!(fmt_char_theta(&w, &g, &ct), "1 - X");
            assert_eq!(theta_sharp(&w, &ct).unwrap(), GroupRingElem::identity(&w));
        }
    }

    #[test]
    fn fourier_consistency_divisibility_and_window() {
        for (p, c, n) in [(2u64, "t^3+t+1", 0usize), (3, "t^2+1", 0), (2, "t^2+t+1", 1), (2, "t^4+t+1", 0), (5, "t^2+2", 0)] {
            let (_, g, w) = setup(p, c, n);
            let d = g.conductor().degree() * (n + 1) + 6;
            let th = theta_truncate(&g, d, CEIL).unwrap();
            let chars = characters_of(&g);
            let cts: Vec<CharTheta> = chars.iter().map(|chi| theta_chi(&g, &w, &th, chi).unwrap()).collect();
            for (chi, ct) in chars.iter().zip(&cts) {
                assert_eq!(ct.coeffs[0], GroupRingElem::identity(&w));
                if chi.is_trivial() {
                    continue;
                }
                assert!(ct.stabilized, "{p} {c} χ={}", chi.exponent);
                if n == 0 {
                    assert!(ct.poly_degree().unwrap() <= g.conductor().degree() + 1);
                }
                if chi.kind == CharType::Two {
                    let (_, rem) = divide_one_minus_x(&w, &ct.coeffs);
                    assert!(rem.is_zero());
                }
                assert!(theta_sharp(&w, ct).is_ok());
            }
            // Σ_χ χ(δ)^{-1} Θ(X, χ) = |G_0| · (δ-slice of Θ(X))
            for k in 0..g.g0_order() {
                for (m, coeff) in th.coeffs.iter().enumerate() {
                    let mut acc = GroupRingElem::zero();
                    for (chi, ct) in chars.iter().zip(&cts) {
                        acc = acc.add(&w, &ct.coeffs[m].scale(&w, &chi.inverse().value(&w, k)));
                    }
                    let mut expect = GroupRingElem::zero();
                    for (&code, &cf) in coeff.terms() {
                        let (kk, gamma) = g.split(code);
                        if kk == k {
                            expect.add_term(&w, gamma, &w.from_int(cf * g.g0_order() as i64));
                        }
                    }
                    assert_eq!(acc, expect);
                }
            }
        }
    }

    #[test]
    fn json_dump_shape() {
        let (_, g, _) = setup(3, "t", 0);
        let th = theta_truncate(&g, 2, CEIL).unwrap();
        let v = theta_json(&g, &th);
        assert_eq!(v["q"], 3);
        assert_eq!(v["P"], "t");
        assert_eq!(v["coefficients"][1], json!([["1", 1], ["2", 1]]));
    }
}
