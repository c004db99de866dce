//! Finitely supported group-ring elements over `G_n`, keyed by element code.

use std::collections::BTreeMap;
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::group::GroupLevel;
use crate::witt::{WittElem, WittRing};

/// A commutative coefficient ring.
pub trait CoeffRing {
    type Elem: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::Elem;
    fn from_int(&self, a: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// Exact integers.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntRing;

impl CoeffRing for IntRing {
    type Elem = i64;
    fn zero(&self) -> i64 {
        0
    }
    fn from_int(&self, a: i64) -> i64 {
        a
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.checked_add(*b).expect("integer coefficient overflow")
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a.checked_mul(*b).expect("integer coefficient overflow")
    }
    fn neg(&self, a: &i64) -> i64 {
        -a
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
}

impl CoeffRing for WittRing {
    type Elem = WittElem;
    fn zero(&self) -> WittElem {
        WittRing::zero(self)
    }
    fn from_int(&self, a: i64) -> WittElem {
        WittRing::from_int(self, a)
    }
    fn add(&self, a: &WittElem, b: &WittElem) -> WittElem {
        WittRing::add(self, a, b)
    }
    fn mul(&self, a: &WittElem, b: &WittElem) -> WittElem {
        WittRing::mul(self, a, b)
    }
    fn neg(&self, a: &WittElem) -> WittElem {
        WittRing::neg(self, a)
    }
    fn is_zero(&self, a: &WittElem) -> bool {
        WittRing::is_zero(self, a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRingElem<E> {
    terms: BTreeMap<u64, E>,
}

impl<E: Clone + PartialEq + Debug> GroupRingElem<E> {
    pub fn zero() -> Self {
        GroupRingElem { terms: BTreeMap::new() }
    }

    /// `c · [g]`.
    pub fn monomial<R: CoeffRing<Elem = E>>(ring: &R, g: u64, c: E) -> Self {
        let mut x = Self::zero();
        x.add_term(ring, g, &c);
        x
    }

    pub fn identity<R: CoeffRing<Elem = E>>(ring: &R) -> Self {
        Self::monomial(ring, 1, ring.from_int(1))
    }

    pub fn terms(&self) -> &BTreeMap<u64, E> {
        &self.terms
    }

    pub fn coeff<R: CoeffRing<Elem = E>>(&self, ring: &R, g: u64) -> E {
        self.terms.get(&g).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term<R: CoeffRing<Elem = E>>(&mut self, ring: &R, g: u64, c: &E) {
        let v = match self.terms.get(&g) {
            Some(old) => ring.add(old, c),
            None => c.clone(),
        };
        if ring.is_zero(&v) {
            self.terms.remove(&g);
        } else {
            self.terms.insert(g, v);
        }
    }

    pub fn add<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        for (&g, c) in &other.terms {
            out.add_term(ring, g, c);
        }
        out
    }

    pub fn neg<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Self {
        GroupRingElem { terms: self.terms.iter().map(|(&g, c)| (g, ring.neg(c))).collect() }
    }

    pub fn sub<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale<R: CoeffRing<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        let mut out = Self::zero();
        for (&g, x) in &self.terms {
            out.add_term(ring, g, &ring.mul(c, x));
        }
        out
    }

    /// Convolution in `R[G_n]`.
    pub fn mul<R: CoeffRing<Elem = E>>(&self, ring: &R, group: &GroupLevel, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&g, a) in &self.terms {
            for (&h, b) in &other.terms {
                out.add_term(ring, group.mul(g, h), &ring.mul(a, b));
            }
        }
        out
    }

    /// Sum of coefficients.
    pub fn augmentation<R: CoeffRing<Elem = E>>(&self, ring: &R) -> E {
        self.terms.values().fold(ring.zero(), |acc, c| ring.add(&acc, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Fq, Place};

    #[test]
    fn convolution() {
        let f = Fq::new(2, 1).unwrap();
        let p = Place::finite(&f, f.parse_poly("t^2+t+1", 't').unwrap()).unwrap();
        let g = GroupLevel::new(&f, &p, 0).unwrap();
        let t = g.reduce(&f.parse_poly("t", 't').unwrap()).unwrap();
        let t1 = g.reduce(&f.parse_poly("t+1", 't').unwrap()).unwrap();
        let x = GroupRingElem::monomial(&IntRing, t, 2).add(&IntRing, &GroupRingElem::identity(&IntRing));
        let y = GroupRingElem::monomial(&IntRing, t1, 3);
        let xy = x.mul(&IntRing, &g, &y);
        assert_eq!(xy.coeff(&IntRing, 1), 6);
        assert_eq!(xy.coeff(&IntRing, t1), 3);
        assert_eq!(xy.augmentation(&IntRing), 9);
        assert!(x.sub(&IntRing, &x).is_zero());
    }
}
