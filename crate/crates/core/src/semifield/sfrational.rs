use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{bigint_to_f64, Monomial, Poly, Semifield, TropMonomial, DEFAULT_MAX_TERMS};
use crate::error::{Error, Result};

type Factors = BTreeMap<Poly, u32>;

/// Subtraction-free rational function: an element of the universal semifield.
///
/// Stored as `(p/q) * m * prod(num factors) / prod(den factors)` where `p/q` is
/// a reduced positive rational, `m` a Laurent monomial and every factor a
/// primitive polynomial with positive coefficients, at least two terms and no
/// monomial content. Identical factors cancel, and a factor produced by an
/// addition is split by trial division against the factors of its operands.
/// No general polynomial gcd is attempted, so equality is decided by
/// cross-multiplication.
///
/// Expanded, `num()` and `den()` carry no common monomial and no common
/// integer content.
#[derive(Clone, Debug)]
pub struct SfRational {
    p: BigInt,
    q: BigInt,
    mono: Monomial,
    num: Factors,
    den: Factors,
    max_terms: usize,
}

fn split_poly(p: &Poly) -> Result<(BigInt, Monomial, Poly)> {
    if p.is_zero() {
        return Err(Error::Domain("zero in subtraction-free element".into()));
    }
    if !p.all_positive() {
        return Err(Error::Domain("negative coefficient in subtraction-free element".into()));
    }
    let m = p.min_monomial();
    let c = p.content();
    let prim = p.mul_monomial(&m.inv()).div_scalar_exact(&c);
    Ok((c, m, prim))
}

/// `a / b` when exact and subtraction-free.
fn positive_quotient(a: &Poly, b: &Poly) -> Option<Poly> {
    if a.len() < b.len() {
        return None;
    }
    a.div_exact(b).filter(|q| q.all_positive() && !q.is_one())
}

fn expand(f: &Factors, cap: usize) -> Result<Poly> {
    let mut acc = Poly::one();
    for (a, &e) in f {
        acc = acc.mul_capped(&a.pow_capped(e, cap)?, cap)?;
    }
    Ok(acc)
}

fn add_factor(f: &mut Factors, a: Poly, e: u32) {
    if e > 0 {
        *f.entry(a).or_insert(0) += e;
    }
}

fn factor_lcm(a: &Factors, b: &Factors) -> Factors {
    let mut out = a.clone();
    for (p, &e) in b {
        let slot = out.entry(p.clone()).or_insert(0);
        *slot = (*slot).max(e);
    }
    out
}

fn factor_gcd(a: &Factors, b: &Factors) -> Factors {
    a.iter()
        .filter_map(|(p, &e)| b.get(p).map(|&f| (p.clone(), e.min(f))))
        .collect()
}

fn factor_sub(a: &Factors, b: &Factors) -> Factors {
    a.iter()
        .filter_map(|(p, &e)| {
            let r = e - b.get(p).copied().unwrap_or(0);
            (r > 0).then(|| (p.clone(), r))
        })
        .collect()
}

impl SfRational {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        let (cn, mn, pn) = split_poly(&num)?;
        let (cd, md, pd) = split_poly(&den)?;
        let mut r = Self {
            p: cn,
            q: cd,
            mono: mn.mul(&md.inv()),
            num: Factors::new(),
            den: Factors::new(),
            max_terms: DEFAULT_MAX_TERMS,
        };
        if !pn.is_one() {
            add_factor(&mut r.num, pn, 1);
        }
        if !pd.is_one() {
            add_factor(&mut r.den, pd, 1);
        }
        r.reduce();
        Ok(r)
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial::one())
    }

    pub fn var(v: usize) -> Self {
        Self::from_monomial(Monomial::var(v))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self {
            p: BigInt::one(),
            q: BigInt::one(),
            mono: m,
            num: Factors::new(),
            den: Factors::new(),
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn from_poly(p: Poly) -> Result<Self> {
        Self::new(p, Poly::one())
    }

    pub fn with_max_terms(mut self, cap: usize) -> Self {
        self.max_terms = cap;
        self
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// Monomial part `m` of the representation.
    pub fn monomial(&self) -> &Monomial {
        &self.mono
    }

    pub fn is_monomial(&self) -> bool {
        self.num.is_empty() && self.den.is_empty() && self.p.is_one() && self.q.is_one()
    }

    /// Polynomial factors of the numerator and denominator with multiplicities.
    pub fn factors(&self) -> (impl Iterator<Item = (&Poly, u32)>, impl Iterator<Item = (&Poly, u32)>) {
        (self.num.iter().map(|(p, &e)| (p, e)), self.den.iter().map(|(p, &e)| (p, e)))
    }

    /// Expanded numerator.
    pub fn num(&self) -> Poly {
        self.expand_side(true).expect("expansion within cap")
    }

    /// Expanded denominator.
    pub fn den(&self) -> Poly {
        self.expand_side(false).expect("expansion within cap")
    }

    fn expand_side(&self, top: bool) -> Result<Poly> {
        let (c, f, m) = if top {
            (&self.p, &self.num, Monomial::from_pairs(self.mono.iter().filter(|&(_, e)| e > 0)))
        } else {
            (&self.q, &self.den, Monomial::from_pairs(self.mono.iter().filter(|&(_, e)| e < 0).map(|(v, e)| (v, -e))))
        };
        Ok(expand(f, self.max_terms)?.scale(&m, c))
    }

    /// Number of terms of the larger expanded side.
    pub fn term_count(&self) -> usize {
        let side = |f: &Factors| f.iter().map(|(p, &e)| p.len().saturating_pow(e)).fold(1usize, usize::saturating_mul);
        side(&self.num).max(side(&self.den))
    }

    fn reduce(&mut self) {
        self.split_cross();
        let common = factor_gcd(&self.num, &self.den);
        if !common.is_empty() {
            self.num = factor_sub(&self.num, &common);
            self.den = factor_sub(&self.den, &common);
        }
        let g = self.p.gcd(&self.q);
        if !g.is_one() {
            self.p = &self.p / &g;
            self.q = &self.q / &g;
        }
    }

    /// Split numerator and denominator factors that divide one another.
    fn split_cross(&mut self) {
        'outer: loop {
            for a in self.num.keys() {
                for d in self.den.keys() {
                    if a == d {
                        continue;
                    }
                    let (big, small, big_on_top) = if a.len() >= d.len() { (a, d, true) } else { (d, a, false) };
                    if let Some(q) = positive_quotient(big, small) {
                        let (big, small) = (big.clone(), small.clone());
                        let side = if big_on_top { &mut self.num } else { &mut self.den };
                        let e = side.remove(&big).unwrap();
                        add_factor(side, small, e);
                        add_factor(side, q, e);
                        let common = factor_gcd(&self.num, &self.den);
                        self.num = factor_sub(&self.num, &common);
                        self.den = factor_sub(&self.den, &common);
                        continue 'outer;
                    }
                }
            }
            break;
        }
    }

    fn cap(&self, rhs: &SfRational) -> usize {
        self.max_terms.min(rhs.max_terms)
    }

    pub fn mul(&self, rhs: &SfRational) -> Result<SfRational> {
        let mut num = self.num.clone();
        for (a, &e) in &rhs.num {
            add_factor(&mut num, a.clone(), e);
        }
        let mut den = self.den.clone();
        for (a, &e) in &rhs.den {
            add_factor(&mut den, a.clone(), e);
        }
        let mut r = Self {
            p: &self.p * &rhs.p,
            q: &self.q * &rhs.q,
            mono: self.mono.mul(&rhs.mono),
            num,
            den,
            max_terms: self.cap(rhs),
        };
        r.reduce();
        Ok(r)
    }

    pub fn inv(&self) -> SfRational {
        Self {
            p: self.q.clone(),
            q: self.p.clone(),
            mono: self.mono.inv(),
            num: self.den.clone(),
            den: self.num.clone(),
            max_terms: self.max_terms,
        }
    }

    pub fn div(&self, rhs: &SfRational) -> Result<SfRational> {
        self.mul(&rhs.inv())
    }

    pub fn pow(&self, e: i64) -> Result<SfRational> {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let k = u32::try_from(e.unsigned_abs()).map_err(|_| Error::Overflow)?;
        let scale = |f: &Factors| -> Factors {
            if k == 0 {
                Factors::new()
            } else {
                f.iter().map(|(p, &x)| (p.clone(), x * k)).collect()
            }
        };
        Ok(Self {
            p: num_traits::pow(base.p.clone(), k as usize),
            q: num_traits::pow(base.q.clone(), k as usize),
            mono: base.mono.pow(k as i64),
            num: scale(&base.num),
            den: scale(&base.den),
            max_terms: base.max_terms,
        })
    }

    pub fn add(&self, rhs: &SfRational) -> Result<SfRational> {
        let cap = self.cap(rhs);
        let den = factor_lcm(&self.den, &rhs.den);
        let shared = factor_gcd(&self.num, &rhs.num);
        let m0 = self.mono.meet(&rhs.mono);
        let term = |s: &SfRational, other_q: &BigInt| -> Result<Poly> {
            let mut f = factor_sub(&s.num, &shared);
            for (a, e) in factor_sub(&den, &s.den) {
                add_factor(&mut f, a, e);
            }
            let m = s.mono.mul(&m0.inv());
            Ok(expand(&f, cap)?.scale(&m, &(&s.p * other_q)))
        };
        let sum = term(self, &rhs.q)?.add(&term(rhs, &self.q)?);
        if sum.len() > cap {
            return Err(Error::SizeCapExceeded { cap });
        }
        let (c, ms, prim) = split_poly(&sum)?;
        let mut num = shared;
        if !prim.is_one() {
            let candidates: Vec<&Poly> =
                self.num.keys().chain(self.den.keys()).chain(rhs.num.keys()).chain(rhs.den.keys()).collect();
            let mut rest = prim;
            for cand in candidates {
                while rest.len() >= cand.len() && rest != *cand {
                    match positive_quotient(&rest, cand) {
                        Some(qt) => {
                            add_factor(&mut num, cand.clone(), 1);
                            rest = qt;
                        }
                        None => break,
                    }
                }
                if rest == *cand {
                    add_factor(&mut num, rest, 1);
                    rest = Poly::one();
                    break;
                }
            }
            if !rest.is_one() {
                add_factor(&mut num, rest, 1);
            }
        }
        let mut r = Self { p: c, q: &self.q * &rhs.q, mono: m0.mul(&ms), num, den, max_terms: cap };
        r.reduce();
        Ok(r)
    }

    /// Equality in the fraction field: `a.num * b.den == b.num * a.den`.
    pub fn sf_eq(&self, rhs: &SfRational) -> bool {
        let r = match self.div(rhs) {
            Ok(r) => r,
            Err(_) => return false,
        };
        if r.is_one_exact() {
            return true;
        }
        match (r.expand_side(true), r.expand_side(false)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    fn is_one_exact(&self) -> bool {
        self.num.is_empty() && self.den.is_empty() && self.mono.is_one() && self.p == self.q
    }

    /// Tropical evaluation restricted to variables `offset..offset+n`.
    pub fn trop_evaluate(&self, n: usize, offset: usize) -> TropMonomial {
        TropMonomial::new(self.mono.to_dense(n, offset))
    }

    /// Substitute variables by monomials (for example `y_i -> yhat_i`).
    pub fn substitute_monomials(&self, images: &dyn Fn(usize) -> Monomial) -> Result<SfRational> {
        let mut r = Self::from_monomial(self.mono.substitute(images)).with_max_terms(self.max_terms);
        r.p = self.p.clone();
        r.q = self.q.clone();
        for (f, top) in [(&self.num, true), (&self.den, false)] {
            for (a, &e) in f {
                let (c, m, prim) = split_poly(&a.substitute_monomials(images))?;
                let mut piece = SfRational::new(prim, Poly::one())?.with_max_terms(self.max_terms);
                piece.p = c;
                piece.mono = m;
                let piece = piece.pow(if top { e as i64 } else { -(e as i64) })?;
                r = r.mul(&piece)?;
            }
        }
        Ok(r)
    }

    pub fn eval_f64(&self, values: &dyn Fn(usize) -> f64) -> f64 {
        let mut acc = bigint_to_f64(&self.p) / bigint_to_f64(&self.q);
        for (v, e) in self.mono.iter() {
            acc *= libm::pow(values(v), e as f64);
        }
        for (a, &e) in &self.num {
            acc *= libm::pow(a.eval_f64(values), e as f64);
        }
        for (a, &e) in &self.den {
            acc /= libm::pow(a.eval_f64(values), e as f64);
        }
        acc
    }

    pub fn is_canonical(&self) -> bool {
        self.p.is_positive()
            && self.q.is_positive()
            && self.p.gcd(&self.q).is_one()
            && factor_gcd(&self.num, &self.den).is_empty()
            && self.num.keys().chain(self.den.keys()).all(|a| {
                a.len() >= 2 && a.all_positive() && a.min_monomial().is_one() && a.content().is_one()
            })
    }
}

impl PartialEq for SfRational {
    fn eq(&self, other: &Self) -> bool {
        self.sf_eq(other)
    }
}

impl Semifield for SfRational {
    fn one_like(&self) -> Self {
        SfRational::one().with_max_terms(self.max_terms)
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        SfRational::mul(self, rhs)
    }

    fn inv(&self) -> Result<Self> {
        Ok(SfRational::inv(self))
    }

    fn oplus(&self, rhs: &Self) -> Result<Self> {
        SfRational::add(self, rhs)
    }

    fn pow(&self, e: i64) -> Result<Self> {
        SfRational::pow(self, e)
    }
}

pub fn sfr_add(a: &SfRational, b: &SfRational) -> Result<SfRational> {
    a.add(b)
}

pub fn sfr_mul(a: &SfRational, b: &SfRational) -> Result<SfRational> {
    a.mul(b)
}

pub fn sfr_div(a: &SfRational, b: &SfRational) -> Result<SfRational> {
    a.div(b)
}

pub fn sfr_eq(a: &SfRational, b: &SfRational) -> bool {
    a.sf_eq(b)
}

pub fn trop_evaluate(a: &SfRational, n: usize) -> TropMonomial {
    a.trop_evaluate(n, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(v: usize) -> SfRational {
        SfRational::var(v)
    }

    fn one() -> SfRational {
        SfRational::one()
    }

    fn c(k: i64) -> Poly {
        Poly::constant(k)
    }

    #[test]
    fn add_examples() {
        let s = y(0).add(&one()).unwrap();
        assert_eq!(s.den(), Poly::one());
        assert_eq!(s.num(), Poly::one().add(&Poly::var(0)));

        let a = y(0).div(&one().add(&y(1)).unwrap()).unwrap();
        let got = a.add(&y(0)).unwrap();
        assert_eq!(got.num(), Poly::var(0).mul(&c(2)).add(&Poly::var(0).mul(&Poly::var(1))));
        assert_eq!(got.den(), Poly::one().add(&Poly::var(1)));
    }

    #[test]
    fn mul_div_examples() {
        assert!(y(0).mul(&y(0).inv()).unwrap().sf_eq(&one()));
        let a = one().add(&y(0)).unwrap().div(&y(1)).unwrap();
        let b = a.mul(&y(1)).unwrap();
        assert_eq!(b.num(), Poly::one().add(&Poly::var(0)));
        assert_eq!(b.den(), Poly::one());
        assert!(a.div(&a).unwrap().is_one_exact());
    }

    #[test]
    fn eq_examples() {
        let a = SfRational::new(Poly::var(0).add(&Poly::var(0).mul(&Poly::var(1))), Poly::one().add(&Poly::var(1)))
            .unwrap();
        assert!(a.sf_eq(&y(0)));
        assert!(!y(0).sf_eq(&y(1)));
    }

    #[test]
    fn canonical_form_strips_monomial_and_content() {
        let num = Poly::var(0).mul(&Poly::var(1)).mul(&c(4));
        let den = Poly::var(1).mul(&c(6)).add(&Poly::var(1).mul(&Poly::var(0)).mul(&c(2)));
        let r = SfRational::new(num, den).unwrap();
        assert_eq!(r.num(), Poly::var(0).mul(&c(2)));
        assert_eq!(r.den(), c(3).add(&Poly::var(0)));
        assert!(r.is_canonical());
    }

    #[test]
    fn sums_are_split_against_known_factors() {
        // (1+y0)^2 + (1+y0)y1 = (1+y0)(1+y0+y1)
        let f = one().add(&y(0)).unwrap();
        let s = f.pow(2).unwrap().add(&f.mul(&y(1)).unwrap()).unwrap();
        let back = s.div(&f).unwrap();
        assert_eq!(back.factors().1.count(), 0);
        assert_eq!(back.factors().0.count(), 1);
    }

    #[test]
    fn tropical_evaluation() {
        let a = SfRational::new(Poly::var(0).add(&Poly::var(0).mul(&Poly::var(1))), Poly::one().add(&Poly::var(0)))
            .unwrap();
        assert_eq!(trop_evaluate(&a, 2).exponents(), &[1, 0]);
        let k = SfRational::new(c(3), c(7)).unwrap();
        assert_eq!(trop_evaluate(&k, 2).exponents(), &[0, 0]);
    }

    #[test]
    fn zero_and_negative_are_rejected() {
        assert!(SfRational::new(Poly::zero(), Poly::one()).is_err());
        assert!(SfRational::new(Poly::one().sub(&Poly::var(0)), Poly::one()).is_err());
    }

    #[test]
    fn size_cap_is_enforced() {
        let big = (0..6).fold(one(), |acc, v| acc.add(&y(v)).unwrap()).with_max_terms(20);
        let sq = big.pow(3).unwrap();
        assert!(matches!(sq.add(&one()), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn evaluation_matches_expanded_form() {
        let a = one().add(&y(0)).unwrap().div(&y(1).add(&y(0).pow(2).unwrap()).unwrap()).unwrap();
        let vals = |v: usize| [0.7, 1.9][v];
        let direct = a.num().eval_f64(&vals) / a.den().eval_f64(&vals);
        assert!((a.eval_f64(&vals) - direct).abs() < 1e-12);
    }
}
