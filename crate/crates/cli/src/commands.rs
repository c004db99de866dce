use std::path::Path;

use carlitz_core::cache::IrreducibleCache;
use carlitz_core::character::{characters_of, CharType};
use carlitz_core::check::{CheckReport, Verdict};
use carlitz_core::curve::{fitting_check, zeta_from_point_counts, zeta_numerator, PlaneModel};
use carlitz_core::group::{splitting_data, GroupLevel};
use carlitz_core::group_ring::GroupRingElem;
use carlitz_core::padic::{PadicNum, ZpExp};
use carlitz_core::theta::{
    euler_vs_sum_check_with, fmt_char_theta, theta_chi, theta_chi0_closed_form, theta_json, theta_sharp, theta_truncate,
};
use carlitz_core::witt::{WittElem, WittRing};
use carlitz_core::zeta::{fmt_series, verify_infty_interpolation, verify_vadic_congruence, verify_vadic_identity, z_poly};
use carlitz_core::{Error, ErrorKind, Fq, Place};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::Outcome;

pub type CmdResult = Result<Outcome, Error>;

/// Shared state of one invocation.
pub struct Ctx {
    pub ceiling: u64,
    pub irreducibles: Option<IrreducibleCache>,
}

impl Ctx {
    fn irreducible_source<'a>(&'a mut self, f: &'a Fq) -> impl FnMut(usize) -> carlitz_core::Result<Vec<carlitz_core::Poly>> + 'a {
        let ceiling = self.ceiling;
        move |d| match self.irreducibles.as_mut() {
            Some(c) => c.irreducibles(f, d, ceiling),
            None => f.irreducibles(d, ceiling),
        }
    }
}

fn fmt_group_elem(ring: &WittRing, group: &GroupLevel, x: &GroupRingElem<WittElem>) -> String {
    let id = group.identity();
    if x.terms().keys().all(|&g| g == id) {
        return ring.fmt(&x.coeff(ring, id));
    }
    let f = group.field();
    let parts: Vec<String> =
        x.terms().iter().map(|(&g, w)| format!("({})[{}]", ring.fmt(w), f.fmt_poly(&f.decode(g), 't'))).collect();
    parts.join(" + ")
}

pub fn theta(ctx: &mut Ctx, f: &Fq, place: &Place, level: usize, degree: usize, prec: u32) -> CmdResult {
    let group = GroupLevel::new(f, place, level)?;
    let series = theta_truncate(&group, degree, ctx.ceiling)?;
    let ring = WittRing::new(f.p() as u64, group.g0_order(), prec)?;
    let mut chars = Vec::new();
    for chi in characters_of(&group) {
        let ct = theta_chi(&group, &ring, &series, &chi)?;
        let (sharp, note) = match theta_sharp(&ring, &ct) {
            Ok(v) => (Some(fmt_group_elem(&ring, &group, &v)), None),
            Err(e @ (Error::TypeThreeUnsupported | Error::PrecisionExhausted(_))) => (None, Some(e.to_string())),
            Err(e) => return Err(e),
        };
        let mut entry = json!({
            "exponent": chi.exponent,
            "type": chi.kind,
            "theta": fmt_char_theta(&ring, &group, &ct),
            "stabilized": ct.stabilized,
            "theta_sharp": sharp,
        });
        if let Some(n) = note {
            entry["note"] = json!(n);
        }
        chars.push(entry);
    }
    Ok(Outcome {
        results: json!({
            "G0_order": group.g0_order(),
            "Gamma_order": group.gamma_order(),
            "generator": f.fmt_poly(group.generator(), 't'),
            "series": theta_json(&group, &series),
            "characters": chars,
        }),
        verdict: Verdict::Pass,
    })
}

pub fn zeta(f: &Fq, jmax: u64, csv_path: Option<&Path>) -> CmdResult {
    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    let mut table: Vec<(u64, usize, String)> = Vec::new();
    for j in 0..=jmax {
        match z_poly(f, j) {
            Ok(z) => {
                let s: Vec<String> = z.coeffs.iter().map(|c| f.fmt_poly(c, 't')).collect();
                for (n, c) in s.iter().enumerate() {
                    table.push((j, n, c.clone()));
                }
                rows.push(json!({
                    "j": j,
                    "bound": z.bound,
                    "horizon": z.horizon,
                    "degree": z.degree(),
                    "S": s,
                    "Z": fmt_series(f, &z.coeffs, "X"),
                    "Z(1)": f.fmt_poly(&z.eval_one(f), 't'),
                    "verdict": Verdict::Pass,
                }));
                verdicts.push(Verdict::Pass);
            }
            Err(e) if e.kind() == ErrorKind::Verification => {
                rows.push(json!({"j": j, "verdict": Verdict::Fail, "detail": e.to_string()}));
                verdicts.push(Verdict::Fail);
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(path) = csv_path {
        let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let io = |e: csv::Error| Error::Io(format!("{}: {e}", path.display()));
        w.write_record(["j", "n", "S_n(j)"]).map_err(io)?;
        for (j, n, s) in &table {
            w.write_record([j.to_string(), n.to_string(), s.clone()]).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(Outcome { results: json!({ "rows": rows }), verdict: Verdict::combine(verdicts) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Vadic,
    VadicCongruence,
    Infty,
    Euler,
    Chi0,
    Fitting,
    All,
}

pub struct VerifyArgs {
    pub which: Which,
    pub j: Option<u64>,
    pub i: Option<i64>,
    pub jmax: u64,
    pub m: usize,
    pub degree: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub prec: u32,
    pub budget: u64,
}

/// `j ∈ {N, N + ⌈N/2⌉, 2N + 1}` with `i = j mod N`, `N = q^d - 1`.
pub fn congruent_pairs(n: u64) -> Vec<(u64, i64)> {
    let mut js = vec![n, n + n.div_ceil(2), 2 * n + 1];
    js.dedup();
    js.into_iter().map(|j| (j, (j % n) as i64)).collect()
}

fn run_check(out: &mut Vec<CheckReport>, name: &str, r: carlitz_core::Result<CheckReport>) -> Result<(), Error> {
    match r {
        Ok(c) => out.push(c),
        Err(e) if e.kind() == ErrorKind::Resource => out.push(CheckReport::skipped(name, e.to_string())),
        Err(e) if e.kind() == ErrorKind::Verification => {
            out.push(CheckReport { name: name.into(), verdict: Verdict::Fail, per_degree: Vec::new(), detail: Some(e.to_string()) })
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

pub fn verify(ctx: &mut Ctx, f: &Fq, place: &Place, a: &VerifyArgs) -> CmdResult {
    let wants = |w: Which| a.which == w || a.which == Which::All;
    let ceiling = ctx.ceiling;
    let d = place.degree();
    let order = (f.q() as u64).pow(d as u32) - 1;
    let mut checks = Vec::new();
    let mut extra = serde_json::Map::new();

    if wants(Which::Euler) || wants(Which::Chi0) {
        let group = GroupLevel::new(f, place, 0)?;
        if wants(Which::Euler) {
            let deg = a.degree.unwrap_or(10);
            let series = theta_truncate(&group, deg, ceiling)?;
            let mut src = ctx.irreducible_source(f);
            let rep = euler_vs_sum_check_with(&group, &series, &mut src);
            run_check(&mut checks, "euler", rep.map(|r| CheckReport::from_degrees(format!("euler D={deg}"), r.per_degree)))?;
        }
        if wants(Which::Chi0) {
            let deg = a.degree.unwrap_or(12);
            let series = theta_truncate(&group, deg, ceiling)?;
            let rep = theta_chi0_closed_form(&group, &series);
            run_check(&mut checks, "chi0", rep.map(|r| CheckReport::from_degrees(format!("chi0 D={deg}"), r.per_degree)))?;
        }
    }

    if wants(Which::Vadic) {
        let mut pairs: Vec<(u64, i64)> = Vec::new();
        match a.j {
            Some(j) => pairs.push((j, a.i.unwrap_or(j as i64))),
            None => {
                pairs.extend((0..=a.jmax).map(|j| (j, j as i64)));
                pairs.extend(congruent_pairs(order));
            }
        }
        for (j, i) in pairs {
            let name = format!("vadic j={j} i={i} m={}", a.m);
            if (i - j as i64).rem_euclid(order as i64) != 0 {
                checks.push(CheckReport::skipped(name, format!("congruence precondition: i ≢ j mod {order}")));
                continue;
            }
            run_check(&mut checks, &name, verify_vadic_identity(f, place, j, i, a.m, ceiling))?;
        }
    }

    if wants(Which::VadicCongruence) {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let p = f.p() as u64;
        let prec = 12u32.min(carlitz_core::padic::max_prec(p));
        let is: Vec<u64> = match a.i {
            Some(i) => vec![i.rem_euclid(order as i64) as u64],
            None => (0..=a.jmax.min(10)).collect(),
        };
        for i in is {
            for _ in 0..a.samples {
                let digits: Vec<u64> = (0..prec).map(|_| rng.gen_range(0..p)).collect();
                let y = ZpExp::Padic(PadicNum::from_digits(p, &digits)?);
                let name = format!("vadic-congruence i={i}");
                run_check(&mut checks, &name, verify_vadic_congruence(f, place, &y, i, ceiling))?;
            }
        }
    }

    if wants(Which::Infty) {
        let deg = a.degree.unwrap_or(8);
        let js: Vec<u64> = match a.j {
            Some(j) => vec![j],
            None => (0..=a.jmax).collect(),
        };
        for j in js {
            run_check(&mut checks, &format!("infty j={j}"), verify_infty_interpolation(f, place, j, deg, ceiling))?;
        }
    }

    if wants(Which::Fitting) {
        match curve_core(ctx, f, place, a.prec, a.budget) {
            Ok(o) => {
                for name in ["paths_agree", "functional_equation"] {
                    let ok = o.results[name].as_bool() == Some(true);
                    checks.push(CheckReport { name: name.into(), verdict: Verdict::from_bool(ok), per_degree: Vec::new(), detail: None });
                }
                let fit: Verdict = serde_json::from_value(o.results["fitting"]["verdict"].clone()).unwrap_or(Verdict::Fail);
                checks.push(CheckReport { name: "fitting".into(), verdict: fit, per_degree: Vec::new(), detail: None });
                extra.insert("curve".into(), o.results);
            }
            Err(e) if e.kind() == ErrorKind::Resource => checks.push(CheckReport::skipped("fitting", e.to_string())),
            Err(e) if e.kind() == ErrorKind::Verification => checks.push(CheckReport {
                name: "fitting".into(),
                verdict: Verdict::Fail,
                per_degree: Vec::new(),
                detail: Some(e.to_string()),
            }),
            Err(e) => return Err(e),
        }
    }

    let count = |v: Verdict| checks.iter().filter(|c| c.verdict == v).count();
    let summary = json!({"pass": count(Verdict::Pass), "fail": count(Verdict::Fail), "skipped": count(Verdict::Skipped)});
    let verdict = Verdict::combine(checks.iter().map(|c| c.verdict));
    let mut results = json!({ "checks": checks, "summary": summary });
    for (k, v) in extra {
        results[k] = v;
    }
    Ok(Outcome { results, verdict })
}

fn curve_core(ctx: &mut Ctx, f: &Fq, place: &Place, prec: u32, budget: u64) -> CmdResult {
    let model = PlaneModel::new(f, place)?;
    let group = GroupLevel::new(f, place, 0)?;
    let analytic = zeta_numerator(f, place, prec, ctx.ceiling)?;
    let counted = zeta_from_point_counts(f, place, budget)?;
    let fitting = fitting_check(&analytic, counted.data.p_part)?;
    let paths_agree = analytic.data.numerator == counted.data.numerator;
    let fe = counted.functional_equation;
    let l_factors: Vec<Value> = analytic
        .l_factors
        .iter()
        .map(|l| {
            json!({
                "exponent": l.character.exponent,
                "type": l.character.kind,
                "coefficients": l.coeffs.iter().map(|c| analytic.ring.fmt(c)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let sd = |s: carlitz_core::group::SplittingData| json!({"e": s.e, "f": s.f, "g": s.g});
    let results = json!({
        "model": model.describe(),
        "x_degree": model.x_degree(),
        "genus": model.genus(),
        "splitting": {
            "P": sd(splitting_data(&group, place)?),
            "infinity": sd(splitting_data(&group, &Place::Infinity)?),
        },
        "witt_precision": analytic.ring.precision(),
        "l_factors": l_factors,
        "analytic": analytic.data,
        "point_count": counted,
        "paths_agree": paths_agree,
        "functional_equation": fe,
        "fitting": fitting,
    });
    let verdict = Verdict::combine([Verdict::from_bool(paths_agree), Verdict::from_bool(fe), fitting.verdict]);
    Ok(Outcome { results, verdict })
}

pub fn curve(ctx: &mut Ctx, f: &Fq, place: &Place, prec: u32, budget: u64) -> CmdResult {
    curve_core(ctx, f, place, prec, budget)
}

/// The frozen part of a curve run.
pub fn golden_payload(q: u64, conductor: &str, results: &Value) -> Value {
    let orders: Vec<Value> = results["fitting"]["entries"]
        .as_array()
        .map(|es| {
            es.iter()
                .filter(|e| e["type"] != json!(CharType::Three))
                .map(|e| json!({"exponent": e["exponent"], "valuation": e["valuation"], "norm_valuation": e["norm_valuation"]}))
                .collect()
        })
        .unwrap_or_default();
    json!({
        "q": q,
        "P": conductor,
        "genus": results["genus"],
        "N_k": results["point_count"]["data"]["counts"],
        "numerator": results["analytic"]["numerator"],
        "h": results["analytic"]["h"],
        "p_part": results["analytic"]["p_part"],
        "theta_sharp_orders": orders,
    })
}
