//! Characters of the cyclic group `G_0` with values in `W`, and their action on group rings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupLevel;
use crate::group_ring::GroupRingElem;
use crate::witt::{WittElem, WittRing};

/// Type 1: nontrivial on the inertia `F_q^×` at ∞. Type 2: trivial there but
/// not the trivial character. Type 3: the trivial character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum CharType {
    One,
    Two,
    Three,
}

impl From<CharType> for u8 {
    fn from(t: CharType) -> u8 {
        match t {
            CharType::One => 1,
            CharType::Two => 2,
            CharType::Three => 3,
        }
    }
}

impl TryFrom<u8> for CharType {
    type Error = String;
    fn try_from(v: u8) -> std::result::Result<CharType, String> {
        match v {
            1 => Ok(CharType::One),
            2 => Ok(CharType::Two),
            3 => Ok(CharType::Three),
            _ => Err(format!("bad character type {v}")),
        }
    }
}

/// `χ(g) = ζ^exponent` for the fixed generator `g` of `G_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub exponent: u64,
    pub order: u64,
    #[serde(rename = "type")]
    pub kind: CharType,
}

impl Character {
    /// Exponent of `ζ` in `χ(g^k)`.
    pub fn value_exponent(&self, k: u64) -> u64 {
        ((self.exponent as u128 * k as u128) % self.order as u128) as u64
    }

    pub fn value(&self, ring: &WittRing, k: u64) -> WittElem {
        ring.zeta_pow(self.value_exponent(k) as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    /// `χ̄ = χ^{-1}`.
    pub fn inverse(&self) -> Character {
        Character { exponent: (self.order - self.exponent) % self.order, ..*self }
    }
}

/// All `q^d - 1` characters, ordered by exponent.
pub fn characters_of(group: &GroupLevel) -> Vec<Character> {
    let n = group.g0_order();
    let q = group.field().q() as u64;
    (0..n).map(|c| Character { exponent: c, order: n, kind: classify(q, n, c) }).collect()
}

fn classify(q: u64, n: u64, c: u64) -> CharType {
    // χ(I_∞) = 1 iff χ kills g^{N/(q-1)}, i.e. (q-1) | c
    if c % n == 0 {
        CharType::Three
    } else if c % (q - 1) == 0 {
        CharType::Two
    } else {
        CharType::One
    }
}

/// Recomputes the type from the values on the constants.
pub fn classify_character(group: &GroupLevel, chi: &Character) -> CharType {
    if chi.is_trivial() {
        return CharType::Three;
    }
    if group.inertia_infinity().iter().all(|&k| chi.value_exponent(k) == 0) {
        CharType::Two
    } else {
        CharType::One
    }
}

/// Lifts a coefficient into `W`.
pub trait ToWitt {
    fn to_witt(&self, ring: &WittRing) -> WittElem;
}

impl ToWitt for i64 {
    fn to_witt(&self, ring: &WittRing) -> WittElem {
        ring.from_int(*self)
    }
}

impl ToWitt for WittElem {
    fn to_witt(&self, _: &WittRing) -> WittElem {
        self.clone()
    }
}

/// `Σ c_{(δ,γ)} (δ,γ) ↦ Σ_γ (Σ_δ χ(δ) c_{(δ,γ)}) γ`, a `W[Γ_n]` element keyed by `γ`'s code.
pub fn chi_apply<E: ToWitt + Clone + PartialEq + std::fmt::Debug>(
    group: &GroupLevel,
    ring: &WittRing,
    x: &GroupRingElem<E>,
    chi: &Character,
) -> Result<GroupRingElem<WittElem>> {
    if chi.order != group.g0_order() || ring.root_order() != group.g0_order() {
        return Err(Error::Mismatch(format!(
            "character of order {} / ring with ζ of order {} on G_0 of order {}",
            chi.order,
            ring.root_order(),
            group.g0_order()
        )));
    }
    let mut out = GroupRingElem::zero();
    for (&code, c) in x.terms() {
        let (k, gamma) = group.split(code);
        let v = ring.mul(&chi.value(ring, k), &c.to_witt(ring));
        out.add_term(ring, gamma, &v);
    }
    Ok(out)
}
