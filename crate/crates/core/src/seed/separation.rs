use alloc::vec::Vec;

use super::symbolic::x_monomial;
use super::{FTracking, PrincipalSeed, SymbolicSeed};
use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::semifield::{Monomial, SfRational};

/// `yhat_i = y_i * prod_j x_j^{b_ji}` for the initial matrix, in joint variables.
pub fn y_hat(b: &ExchangeMatrix) -> Vec<Monomial> {
    let n = b.n();
    (0..n)
        .map(|i| {
            let col: Vec<i64> = (0..n).map(|j| b.get(j, i)).collect();
            Monomial::var(i).mul(&x_monomial(n, &col))
        })
        .collect()
}

/// Rebuild the symbolic seed reached by `s.history()` from `(C, G, F)` alone:
///
/// `x_i = x^{g_i} F_i(yhat) / F_i(y)` and `y_i = y^{c_i} prod_j F_j(y)^{b_ji}`.
pub fn separation_reconstruct(s: &PrincipalSeed, initial: &SymbolicSeed) -> Result<SymbolicSeed> {
    if s.tracking() != FTracking::Exact {
        return Err(Error::Domain("separation formulas need exact F-polynomials".into()));
    }
    if initial.b() != s.initial_b() {
        return Err(Error::Domain("principal seed and symbolic seed start from different matrices".into()));
    }
    let n = s.n();
    let cap = initial.y().first().map_or(usize::MAX, |y| y.max_terms());
    let hats = y_hat(s.initial_b());
    let f: Vec<SfRational> = s
        .f_polys()
        .unwrap()
        .iter()
        .map(|p| SfRational::from_poly(p.clone()).map(|r| r.with_max_terms(cap)))
        .collect::<Result<_>>()?;
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let g = SfRational::from_monomial(x_monomial(n, &s.g_vector(i))).with_max_terms(cap);
        let f_hat = f[i].substitute_monomials(&|v| hats[v].clone())?;
        x.push(g.mul(&f_hat)?.div(&f[i])?);

        let mut yi = SfRational::from_monomial(Monomial::from_dense(&s.c_vector(i), 0)).with_max_terms(cap);
        for (j, fj) in f.iter().enumerate() {
            let bji = s.b().get(j, i);
            if bji != 0 {
                yi = yi.mul(&fj.pow(bji)?)?;
            }
        }
        y.push(yi);
    }
    SymbolicSeed::from_parts(s.b().clone(), x, y)
}
