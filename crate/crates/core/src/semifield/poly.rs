use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Monomial;
use crate::error::{Error, Result};

/// Default cap on the number of terms in any single polynomial.
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

/// Sparse multivariate Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`], so iteration order is the
/// lexicographic monomial order and the last key is the leading term.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one(), BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(Monomial::one(), c.into())
    }

    pub fn var(v: usize) -> Self {
        Self::monomial(Monomial::var(v), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn all_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Largest exponent of any variable in any term (0 for constants).
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.max_var()).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    /// Product, failing when the term-pair work exceeds `cap`.
    pub fn mul_capped(&self, rhs: &Poly, cap: usize) -> Result<Poly> {
        if self.len().saturating_mul(rhs.len()) > cap {
            return Err(Error::SizeCapExceeded { cap });
        }
        Ok(self.mul_unchecked(rhs))
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        self.mul_unchecked(rhs)
    }

    fn mul_unchecked(&self, rhs: &Poly) -> Poly {
        if self.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return rhs.scale(m, c);
        }
        if rhs.len() == 1 {
            let (m, c) = rhs.terms.iter().next().unwrap();
            return self.scale(m, c);
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Multiply by the term `c * m`.
    pub fn scale(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    pub fn pow_capped(&self, e: u32, cap: usize) -> Result<Poly> {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_capped(&base, cap)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_capped(&base, cap)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        self.pow_capped(e, usize::MAX).expect("uncapped power")
    }

    /// Componentwise minimum exponent over all terms (absent variables count as 0).
    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |acc, m| acc.meet(m)),
        }
    }

    /// Componentwise maximum exponent over all terms (absent variables count as 0).
    pub fn max_monomial(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |acc, m| acc.join(m)),
        }
    }

    /// Gcd of all coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn div_scalar_exact(&self, d: &BigInt) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c / d)).collect() }
    }

    /// Exact division. Returns `None` when `rhs` does not divide `self` in the
    /// Laurent polynomial ring.
    pub fn div_exact(&self, rhs: &Poly) -> Option<Poly> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if rhs.len() == 1 {
            let (m, c) = rhs.terms.iter().next().unwrap();
            let inv = m.inv();
            let mut out = Poly::zero();
            for (k, v) in &self.terms {
                let (q, r) = v.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.terms.insert(k.mul(&inv), q);
            }
            return Some(out);
        }
        // Quotient exponents must lie in the box [min(a)-min(b), max(a)-max(b)].
        let lo = self.min_monomial().mul(&rhs.min_monomial().inv());
        let hi = self.max_monomial().mul(&rhs.max_monomial().inv());
        let in_box = |m: &Monomial| -> bool {
            m.iter().all(|(v, e)| e >= lo.exponent(v) && e <= hi.exponent(v))
                && lo.iter().all(|(v, e)| m.exponent(v) >= e)
                && hi.iter().all(|(v, e)| m.exponent(v) <= e)
        };
        let (lm, lc) = rhs.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let lm_inv = lm.inv();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qm = m.mul(&lm_inv);
            if !in_box(&qm) {
                return None;
            }
            rem = rem.sub(&rhs.scale(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Substitute every variable `v` by `images(v)`; the images must be monomials.
    pub fn substitute_monomials(&self, images: &dyn Fn(usize) -> Monomial) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.substitute(images), c.clone());
        }
        out
    }

    /// Evaluate at real points; `values(v)` gives the value of variable `v`.
    pub fn eval_f64(&self, values: &dyn Fn(usize) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let cf = bigint_to_f64(c);
                m.iter().fold(cf, |acc, (v, e)| acc * libm::pow(values(v), e as f64))
            })
            .sum()
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

impl Poly {
    /// Human-readable form with terms by increasing total degree; `var` names variables.
    pub fn render(&self, var: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| m.iter().map(|(_, e)| e).sum::<i64>());
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let mut factors: Vec<String> = m
                .iter()
                .map(|(v, e)| if e == 1 { var(v) } else { format!("{}^{e}", var(v)) })
                .collect();
            let negative = c.is_negative();
            let abs = c.abs();
            if !abs.is_one() || factors.is_empty() {
                factors.insert(0, abs.to_string());
            }
            let body = factors.join("*");
            match (k, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

impl core::fmt::Display for Poly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.render(&|v| format!("y{}", v + 1)))
    }
}

impl From<Vec<(Monomial, i64)>> for Poly {
    fn from(v: Vec<(Monomial, i64)>) -> Self {
        Poly::from_terms(v.into_iter().map(|(m, c)| (m, BigInt::from(c))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(v: usize) -> Poly {
        Poly::var(v)
    }

    #[test]
    fn display() {
        let p = Poly::one().add(&y(0).mul(&y(1)).scale(&Monomial::one(), &BigInt::from(2))).add(&y(0)).sub(&y(1).pow(3));
        assert_eq!(alloc::format!("{p}"), "1 + y1 + 2*y1*y2 - y2^3");
        assert_eq!(alloc::format!("{}", Poly::zero()), "0");
        assert_eq!(alloc::format!("{}", Poly::constant(-3)), "-3");
    }

    #[test]
    fn ring_basics() {
        let p = Poly::one().add(&y(0));
        let q = Poly::one().add(&y(1));
        let pq = p.mul(&q);
        assert_eq!(pq.len(), 4);
        assert_eq!(pq.constant_term(), BigInt::one());
        assert!(pq.sub(&pq).is_zero());
    }

    #[test]
    fn exact_division_recovers_factor() {
        let p = Poly::one().add(&y(0)).add(&y(0).mul(&y(1)));
        let q = Poly::one().add(&y(1)).add(&y(2).pow(2));
        let pq = p.mul(&q);
        assert_eq!(pq.div_exact(&q), Some(p.clone()));
        assert_eq!(pq.div_exact(&p), Some(q));
    }

    #[test]
    fn inexact_division_is_detected() {
        let p = Poly::one().add(&y(0));
        let q = Poly::one().add(&y(1));
        assert_eq!(p.div_exact(&q), None);
        assert_eq!(Poly::constant(3).div_exact(&Poly::constant(2)), None);
        // Laurent divisor
        let lm = Poly::monomial(Monomial::from_pairs([(0, -1)]), BigInt::one()).add(&Poly::one());
        let prod = lm.mul(&p);
        assert_eq!(prod.div_exact(&lm), Some(p));
    }

    #[test]
    fn content_and_min_monomial() {
        let p = Poly::from(alloc::vec![
            (Monomial::from_pairs([(0, 2), (1, 1)]), 6),
            (Monomial::from_pairs([(0, 1), (1, 3)]), 4),
        ]);
        assert_eq!(p.content(), BigInt::from(2));
        assert_eq!(p.min_monomial(), Monomial::from_pairs([(0, 1), (1, 1)]));
    }

    #[test]
    fn capped_multiplication() {
        let p = Poly::one().add(&y(0)).add(&y(1));
        assert!(p.mul_capped(&p, 8).is_err());
        assert!(p.mul_capped(&p, 9).is_ok());
    }
}
