use carlitz_core::numth::prime_factors;
use carlitz_core::{Error, Fq, Place};
use serde::Serialize;

/// Parses `8`, `2^26`, `1<<20`.
pub fn parse_count(src: &str) -> Result<u64, String> {
    let s = src.trim();
    let parsed = if let Some((b, e)) = s.split_once('^') {
        let b: u64 = b.trim().parse().map_err(|_| format!("bad base in {s}"))?;
        let e: u32 = e.trim().parse().map_err(|_| format!("bad exponent in {s}"))?;
        b.checked_pow(e)
    } else if let Some((b, e)) = s.split_once("<<") {
        let b: u64 = b.trim().parse().map_err(|_| format!("bad value in {s}"))?;
        let e: u32 = e.trim().parse().map_err(|_| format!("bad shift in {s}"))?;
        b.checked_shl(e).filter(|v| v >> e == b)
    } else {
        s.parse().ok()
    };
    parsed.ok_or_else(|| format!("cannot read {s} as a count"))
}

/// `q = p^r`.
pub fn parse_q(q: u64) -> Result<(u64, u32), Error> {
    let factors = prime_factors(q);
    match factors.as_slice() {
        [p] => {
            let mut r = 0;
            let mut x = q;
            while x > 1 {
                x /= p;
                r += 1;
            }
            Ok((*p, r))
        }
        _ => Err(Error::Parse(format!("q = {q} is not a prime power"))),
    }
}

pub fn field_for(q: u64) -> Result<Fq, Error> {
    let (p, r) = parse_q(q)?;
    Fq::new(p, r as i64)
}

pub fn place_for(f: &Fq, src: &str) -> Result<Place, Error> {
    Place::finite(f, f.parse_poly(src, 't')?)
}

/// The echoed inputs of a run. Output and cache paths stay out of it so
/// that they do not change cache keys.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub q: u64,
    pub p: u64,
    pub r: u32,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    pub conductor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    /// `p`-adic precision of `W`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_precision: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    pub ceiling: u64,
}

impl RunConfig {
    pub fn new(q: u64, ceiling: u64) -> Result<RunConfig, Error> {
        let (p, r) = parse_q(q)?;
        Ok(RunConfig {
            q,
            p,
            r,
            conductor: None,
            level: None,
            degree: None,
            m: None,
            nu_precision: None,
            budget: None,
            ceiling,
        })
    }

    /// Validates `P` and stores it in normal form.
    pub fn with_conductor(mut self, f: &Fq, src: &str) -> Result<(RunConfig, Place), Error> {
        let place = place_for(f, src)?;
        self.conductor = Some(f.fmt_poly(place.poly().expect("finite"), 't'));
        Ok((self, place))
    }
}
