//! The Carlitz module `Φ: A -> A{τ}`, `Φ_t = t + τ`, and its torsion polynomials.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::poly::{Place, Poly};

/// `c_0 + c_1 τ + ... + c_k τ^k` with `τ f = f^q τ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewPoly {
    coeffs: Vec<Poly>,
}

impl SkewPoly {
    pub fn new(mut coeffs: Vec<Poly>) -> SkewPoly {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Degree in `τ`; `None` for zero.
    pub fn tau_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Poly> {
        self.coeffs.last()
    }

    pub fn constant(&self) -> Poly {
        self.coeffs.first().cloned().unwrap_or_default()
    }
}

/// An additive polynomial `Σ c_i x^{q^i}` (same data as a skew polynomial, read as a function of `x`).
pub type AdditivePoly = SkewPoly;

/// The Carlitz module over `F_q[t]`.
#[derive(Clone, Debug)]
pub struct Carlitz {
    field: Fq,
}

impl Carlitz {
    pub fn new(field: &Fq) -> Carlitz {
        Carlitz { field: field.clone() }
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn add(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = Poly::zero();
        SkewPoly::new(
            (0..n)
                .map(|i| {
                    self.field.padd(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero))
                })
                .collect(),
        )
    }

    /// Composition `a ∘ b`.
    pub fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return SkewPoly::default();
        }
        let f = &self.field;
        let mut out = vec![Poly::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                // a_i τ^i b_j τ^j = a_i b_j^{q^i} τ^{i+j}
                let mut twisted = bj.clone();
                for _ in 0..i {
                    twisted = f.pfrob_q(&twisted);
                }
                out[i + j] = f.padd(&out[i + j], &f.pmul(ai, &twisted));
            }
        }
        SkewPoly::new(out)
    }

    /// `Φ_a`, extended from `Φ_t = t + τ` as an `F_q`-algebra map.
    pub fn map(&self, a: &Poly) -> SkewPoly {
        let phi_t = SkewPoly::new(vec![Poly::t(), Poly::one()]);
        // Horner in Φ_t
        let mut acc = SkewPoly::default();
        for &c in a.coeffs().iter().rev() {
            acc = self.mul(&phi_t, &acc);
            acc = self.add(&acc, &SkewPoly::new(vec![Poly::constant(c)]));
        }
        acc
    }

    /// `Φ_{P^{n+1}}` as an additive polynomial in `x`; its `x`-degree is `q^{(n+1) deg P}`.
    pub fn torsion_polynomial(&self, place: &Place, level: usize) -> Result<AdditivePoly> {
        let p = place.poly().ok_or_else(|| Error::Mismatch("torsion needs a finite place".into()))?;
        Ok(self.map(&self.field.ppow(p, level as u64 + 1)))
    }

    /// Evaluates an additive polynomial at `x ∈ A`.
    pub fn eval(&self, phi: &AdditivePoly, x: &Poly) -> Poly {
        let f = &self.field;
        let mut acc = Poly::zero();
        let mut xq = x.clone();
        for (i, c) in phi.coeffs.iter().enumerate() {
            if i > 0 {
                xq = f.pfrob_q(&xq);
            }
            acc = f.padd(&acc, &f.pmul(c, &xq));
        }
        acc
    }

    /// `Σ c_i x^{q^i}` as `(exponent, coefficient)` pairs with nonzero coefficients.
    pub fn x_terms(&self, phi: &AdditivePoly) -> Vec<(u64, Poly)> {
        let q = self.field.q() as u64;
        phi.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (q.pow(i as u32), c.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fe;
    use crate::poly::Place;

    fn parse(f: &Fq, s: &str) -> Poly {
        f.parse_poly(s, 't').unwrap()
    }

    #[test]
    fn carlitz_map_examples() {
        for q in [2u64, 3, 5] {
            let f = Fq::new(q, 1).unwrap();
            let c = Carlitz::new(&f);
            assert_eq!(c.map(&Poly::t()), SkewPoly::new(vec![Poly::t(), Poly::one()]));
            let t1 = parse(&f, "t+1");
            assert_eq!(c.map(&t1), SkewPoly::new(vec![t1.clone(), Poly::one()]));
            // Φ_{t^2} = t^2 + (t^q + t) τ + τ^2
            let t2 = parse(&f, "t^2");
            let mid = f.padd(&f.pfrob_q(&Poly::t()), &Poly::t());
            assert_eq!(c.map(&t2), SkewPoly::new(vec![t2.clone(), mid, Poly::one()]));
        }
    }

    #[test]
    fn torsion_examples() {
        let f3 = Fq::new(3, 1).unwrap();
        let c = Carlitz::new(&f3);
        let tors = c.torsion_polynomial(&Place::Finite(Poly::t()), 0).unwrap();
        assert_eq!(c.x_terms(&tors), vec![(1, Poly::t()), (3, Poly::one())]);
        let tors1 = c.torsion_polynomial(&Place::Finite(Poly::t()), 1).unwrap();
        assert_eq!(c.x_terms(&tors1).last().unwrap().0, 9);

        let f2 = Fq::new(2, 1).unwrap();
        let c2 = Carlitz::new(&f2);
        let p = parse(&f2, "t^2+t+1");
        let tors = c2.torsion_polynomial(&Place::Finite(p.clone()), 0).unwrap();
        // Φ_t∘Φ_t + Φ_t + 1
        let phi_t = c2.map(&Poly::t());
        let expected = c2.add(&c2.add(&c2.mul(&phi_t, &phi_t), &phi_t), &SkewPoly::new(vec![Poly::one()]));
        assert_eq!(tors, expected);
        assert_eq!(c2.x_terms(&tors).last().unwrap().0, 4);
        assert_eq!(tors.constant(), p);
    }

    #[test]
    fn hayes_normalisation_constraints() {
        let f3 = Fq::new(3, 1).unwrap();
        let c = Carlitz::new(&f3);
        for a in f3.monics(3).chain(f3.monics(2)) {
            let a = f3.pscale(Fe(2), &a);
            let phi = c.map(&a);
            assert_eq!(phi.constant(), a);
            assert_eq!(phi.tau_degree(), a.deg());
            assert_eq!(phi.leading().unwrap(), &Poly::constant(a.lead()));
        }
    }

    /// Frobenius at Q acts on P^{n+1}-torsion as Φ_Q: x^{|A/Q|} ≡ Φ_Q(x) modulo the
    /// reduced torsion polynomial.
    #[test]
    fn reciprocity_by_reduction_mod_q() {
        let f3 = Fq::new(3, 1).unwrap();
        let c = Carlitz::new(&f3);
        let place = Place::Finite(Poly::t());
        for level in 0..=1usize {
            let tors = c.torsion_polynomial(&place, level).unwrap();
            for dq in 1..=3usize {
                for qpoly in f3.irreducibles(dq, 1 << 10).unwrap() {
                    if qpoly == Poly::t() {
                        continue;
                    }
                    let (k, image_t) = residue_field(&f3, &qpoly);
                    let reduce = |a: &Poly| -> crate::field::Fe {
                        a.coeffs().iter().rev().fold(Fe::ZERO, |acc, &cf| {
                            k.add(k.mul(acc, image_t), Fe(cf.0))
                        })
                    };
                    let to_k = |phi: &SkewPoly| -> Poly {
                        let mut coeffs = Vec::new();
                        for (e, cf) in c.x_terms(phi) {
                            let e = e as usize;
                            if coeffs.len() <= e {
                                coeffs.resize(e + 1, Fe::ZERO);
                            }
                            coeffs[e] = reduce(&cf);
                        }
                        Poly::new(coeffs)
                    };
                    let modulus = to_k(&tors);
                    let frob = k.ppow_mod(&Poly::t(), k.q() as u128, &modulus);
                    let phi_q = k.prem(&to_k(&c.map(&qpoly)), &modulus);
                    assert_eq!(frob, phi_q, "Q = {}", f3.fmt_poly(&qpoly, 't'));
                }
            }
        }
    }

    fn residue_field(f: &Fq, qpoly: &Poly) -> (Fq, Fe) {
        if qpoly.degree() == 1 {
            let k = f.clone();
            let root = f.neg(qpoly.coeff(0));
            return (k, root);
        }
        let coords: Vec<u32> = qpoly.coeffs().iter().map(|c| c.0).collect();
        let k = Fq::with_modulus(f.p() as u64, &coords).unwrap();
        let x = k.from_coords(&[0, 1]).unwrap();
        (k, x)
    }
}
