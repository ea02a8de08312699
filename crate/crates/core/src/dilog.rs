//! Numeric verification of the dilogarithm identities attached to a period of a seed.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::seed::{mutate_coeffs, FTracking, PrincipalSeed};
use crate::semifield::{LogReal, Semifield, SignClass};
use crate::tysystem::{gen_y_system, Point, SliceSchedule};

const PI2_6: f64 = PI * PI / 6.0;

fn li2_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = x;
    let mut k = 1.0;
    while pow > 1e-17 * k * k {
        sum += pow / (k * k);
        pow *= x;
        k += 1.0;
    }
    sum
}

/// Rogers dilogarithm `L(x) = Li2(x) + log(x) log(1-x) / 2` on `[0, 1]`.
pub fn rogers_l(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("Rogers dilogarithm argument {x} outside [0, 1]")));
    }
    Ok(rogers_l_pair(x, 1.0 - x))
}

/// `L(x)` given both `x` and `1 - x`, so that values close to 1 keep full precision.
pub fn rogers_l_pair(x: f64, xc: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if xc <= 0.0 {
        return PI2_6;
    }
    if x <= 0.5 {
        li2_series(x) + 0.5 * libm::log(x) * libm::log(xc)
    } else {
        PI2_6 - (li2_series(xc) + 0.5 * libm::log(xc) * libm::log(x))
    }
}

/// `L(Y/(1+Y))` and `L(1/(1+Y))`.
fn l_pair(y: &LogReal) -> (f64, f64) {
    let a = y.ratio_over_one_plus();
    let b = y.inv_one_plus();
    (rogers_l_pair(a, b), rogers_l_pair(b, a))
}

#[derive(Clone, Copy, Debug, Default)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// Values `Y_i(u)` over the fundamental region `S_+` and the tropical signs there.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericYTrace {
    pub points: Vec<Point>,
    pub values: Vec<LogReal>,
    pub signs: Vec<Sign>,
    pub initial: Vec<LogReal>,
    /// Coefficients after the whole window.
    pub last: Vec<LogReal>,
}

impl NumericYTrace {
    pub fn value(&self, p: Point) -> Option<LogReal> {
        self.points.iter().position(|&q| q == p).map(|k| self.values[k])
    }

    /// `max_i |log y_i(Omega) - log y_i(0)|`.
    pub fn period_residual(&self) -> f64 {
        self.initial.iter().zip(&self.last).map(|(a, b)| libm::fabs(a.ln() - b.ln())).fold(0.0, f64::max)
    }
}

fn c_sign(s: &PrincipalSeed, i: usize, u: i64) -> Result<Sign> {
    match s.tropical_y(i).sign() {
        SignClass::Positive => Ok(Sign::Plus),
        SignClass::Negative => Ok(Sign::Minus),
        _ => Err(Error::MixedSign { index: i, stage: u }),
    }
}

/// Run the coefficient exchange relation over `[0, Omega)` with `oplus` the ordinary sum.
pub fn propagate_numeric(s: &SliceSchedule, initial_y: &[f64]) -> Result<NumericYTrace> {
    if initial_y.len() != s.n() {
        return Err(Error::DimensionMismatch { expected: s.n(), found: initial_y.len() });
    }
    let initial: Vec<LogReal> = initial_y.iter().map(|&x| LogReal::from_value(x)).collect::<Result<_>>()?;
    let mut y = initial.clone();
    let mut b = s.matrix().clone();
    let mut principal = PrincipalSeed::new(b.clone(), FTracking::Off);
    let mut trace = NumericYTrace { points: Vec::new(), values: Vec::new(), signs: Vec::new(), initial, last: Vec::new() };
    for u in 0..s.omega() {
        let mut slice = s.slice_at(u);
        slice.sort_unstable();
        for &i in &slice {
            trace.points.push(Point::new(i, u));
            trace.values.push(y[i]);
            trace.signs.push(c_sign(&principal, i, u)?);
        }
        for &k in &slice {
            y = mutate_coeffs(&y, &b, k)?;
            b.mutate_in_place(k)?;
            principal.mutate_in_place(k)?;
        }
        if y.iter().any(|v| !v.ln().is_finite()) {
            return Err(Error::Overflow);
        }
    }
    trace.last = y;
    Ok(trace)
}

/// Largest log-residual of the Y-system evaluated on a trace of a seed period.
pub fn ysystem_residual(s: &SliceSchedule, trace: &NumericYTrace) -> Result<f64> {
    let w = s.omega();
    let at = |p: &Point| {
        trace
            .value(Point::new(p.i, p.u.rem_euclid(w)))
            .ok_or_else(|| Error::InsufficientWindow(format!("no value at ({}, {})", p.i, p.u)))
    };
    let one = LogReal::from_ln(0.0);
    let mut worst: f64 = 0.0;
    for rel in gen_y_system(s) {
        let lhs = at(&rel.site)?.ln() + at(&rel.partner)?.ln();
        let mut rhs = 0.0;
        for (p, &e) in &rel.plus {
            rhs += e as f64 * one.oplus(&at(p)?)?.ln();
        }
        for (p, &e) in &rel.minus {
            rhs -= e as f64 * one.oplus(&at(p)?.inv()?)?.ln();
        }
        worst = worst.max(libm::fabs(lhs - rhs));
    }
    Ok(worst)
}

/// Counts of positive and negative tropical coefficients over `S_+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignCounts {
    pub plus: usize,
    pub minus: usize,
    /// Counts with multiplicity `d~_i`.
    pub weighted_plus: i64,
    pub weighted_minus: i64,
}

impl SignCounts {
    pub fn total(&self) -> usize {
        self.plus + self.minus
    }
}

fn require_seed_period(s: &SliceSchedule) -> Result<()> {
    let seq: Vec<usize> = (0..s.omega()).flat_map(|u| s.slice_at(u)).collect();
    let mut p = PrincipalSeed::new(s.matrix().clone(), FTracking::Off);
    for &k in &seq {
        p.mutate_in_place(k)?;
    }
    let id: Vec<usize> = (0..s.n()).collect();
    if p.c_is_permuted_identity(&id) {
        Ok(())
    } else {
        Err(Error::NotSeedPeriod)
    }
}

pub fn count_tropical_signs(s: &SliceSchedule) -> Result<SignCounts> {
    let trace = propagate_numeric(s, &vec![1.0; s.n()])?;
    Ok(counts_from(s, &trace))
}

fn counts_from(s: &SliceSchedule, trace: &NumericYTrace) -> SignCounts {
    let dt = s.matrix().d_tilde();
    let mut c = SignCounts { plus: 0, minus: 0, weighted_plus: 0, weighted_minus: 0 };
    for (p, sign) in trace.points.iter().zip(&trace.signs) {
        match sign {
            Sign::Plus => {
                c.plus += 1;
                c.weighted_plus += dt[p.i];
            }
            Sign::Minus => {
                c.minus += 1;
                c.weighted_minus += dt[p.i];
            }
        }
    }
    c
}

/// `(6/pi^2) sum d~_i L(Y/(1+Y))` and `(6/pi^2) sum d~_i L(1/(1+Y))` over a trace.
pub fn dilog_sums(s: &SliceSchedule, trace: &NumericYTrace) -> (f64, f64) {
    let dt = s.matrix().d_tilde();
    let (mut minus, mut plus) = (Kahan::default(), Kahan::default());
    for (p, y) in trace.points.iter().zip(&trace.values) {
        let (a, b) = l_pair(y);
        let w = dt[p.i] as f64;
        minus.add(w * a);
        plus.add(w * b);
    }
    (minus.sum / PI2_6, plus.sum / PI2_6)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialResult {
    pub initial: Vec<f64>,
    pub sum_minus: f64,
    pub sum_plus: f64,
    pub residual_minus: f64,
    pub residual_plus: f64,
    pub ysystem_residual: f64,
    pub period_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DilogReport {
    pub counts: SignCounts,
    /// `N_-` (weighted when the matrix is not skew symmetric).
    pub n_minus: i64,
    pub n_plus: i64,
    /// Size of `S_+` (weighted likewise).
    pub size: i64,
    pub weighted: bool,
    /// Set for skew-symmetrizable input, where the identity rests on an unproven conjecture.
    pub conditional: bool,
    pub trials: Vec<TrialResult>,
    /// Largest difference between `sum_minus` values of two trials.
    pub spread: f64,
    pub tolerance: f64,
}

impl DilogReport {
    pub fn max_residual(&self) -> f64 {
        self.trials.iter().map(|t| t.residual_minus.max(t.residual_plus)).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.max_residual() < self.tolerance
            && self.spread < self.tolerance
            && self.trials.iter().all(|t| t.ysystem_residual < self.tolerance && t.period_residual < self.tolerance)
    }
}

/// Log-uniform draws on `[0.1, 10]`.
pub fn random_initial(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let ln10 = libm::log(10.0);
    (0..n).map(|_| libm::exp(rng.random_range(-ln10..ln10))).collect()
}

/// Check both identities on `trials` random initial points drawn from `rng_seed`.
pub fn verify_identity(s: &SliceSchedule, trials: usize, rng_seed: u64, tolerance: f64) -> Result<DilogReport> {
    if trials == 0 {
        return Err(Error::Domain("at least one trial is needed".into()));
    }
    require_seed_period(s)?;
    let weighted = !s.matrix().is_skew_symmetric();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut report = DilogReport {
        counts: SignCounts { plus: 0, minus: 0, weighted_plus: 0, weighted_minus: 0 },
        n_minus: 0,
        n_plus: 0,
        size: 0,
        weighted,
        conditional: weighted,
        trials: Vec::with_capacity(trials),
        spread: 0.0,
        tolerance,
    };
    for k in 0..trials {
        let init = random_initial(&mut rng, s.n());
        let trace = propagate_numeric(s, &init)?;
        if k == 0 {
            report.counts = counts_from(s, &trace);
            report.n_minus = report.counts.weighted_minus;
            report.n_plus = report.counts.weighted_plus;
            report.size = report.n_minus + report.n_plus;
        }
        let (sm, sp) = dilog_sums(s, &trace);
        report.trials.push(TrialResult {
            initial: init,
            sum_minus: sm,
            sum_plus: sp,
            residual_minus: libm::fabs(sm - report.n_minus as f64),
            residual_plus: libm::fabs(sp - report.n_plus as f64),
            ysystem_residual: ysystem_residual(s, &trace)?,
            period_residual: trace.period_residual(),
        });
    }
    let sums: Vec<f64> = report.trials.iter().map(|t| t.sum_minus).collect();
    let hi = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = sums.iter().copied().fold(f64::INFINITY, f64::min);
    report.spread = hi - lo;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstancyReport {
    pub sums: Vec<f64>,
    pub spread: f64,
    pub gradient: Vec<f64>,
    pub gradient_max: f64,
}

/// Evaluate the dilogarithm sum at `points` random initial values and take a central
/// finite-difference gradient at `base` with step `epsilon`.
pub fn constancy_probe(s: &SliceSchedule, base: &[f64], epsilon: f64, points: usize, rng_seed: u64) -> Result<ConstancyReport> {
    require_seed_period(s)?;
    if base.len() != s.n() {
        return Err(Error::DimensionMismatch { expected: s.n(), found: base.len() });
    }
    let sum_at = |y: &[f64]| -> Result<f64> { Ok(dilog_sums(s, &propagate_numeric(s, y)?).0) };
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let sums: Vec<f64> = (0..points).map(|_| sum_at(&random_initial(&mut rng, s.n()))).collect::<Result<_>>()?;
    let hi = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = sums.iter().copied().fold(f64::INFINITY, f64::min);
    let mut gradient = Vec::with_capacity(s.n());
    for i in 0..s.n() {
        let mut up = base.to_vec();
        let mut down = base.to_vec();
        up[i] += epsilon;
        down[i] -= epsilon;
        gradient.push((sum_at(&up)? - sum_at(&down)?) / (2.0 * epsilon));
    }
    let gradient_max = gradient.iter().map(|g| libm::fabs(*g)).fold(0.0, f64::max);
    Ok(ConstancyReport { spread: if points > 0 { hi - lo } else { 0.0 }, sums, gradient, gradient_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_entry;
    use crate::matrix::ExchangeMatrix;
    use crate::permutation::Permutation;

    fn schedule(name: &str) -> SliceSchedule {
        let e = get_entry(name).unwrap();
        let c = e.seed_period().unwrap();
        SliceSchedule::new(&e.matrix, &c.slices, &e.permutation(&c.nu).unwrap()).unwrap()
    }

    #[test]
    fn rogers_special_values() {
        assert_eq!(rogers_l(0.0).unwrap(), 0.0);
        assert!((rogers_l(1.0).unwrap() - PI2_6).abs() < 1e-15);
        assert!((rogers_l(0.5).unwrap() - PI2_6 / 2.0).abs() < 1e-14);
        assert!(rogers_l(1.5).is_err());
        assert!(rogers_l(-0.1).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let x: f64 = rng.random_range(0.0..1.0);
            assert!((rogers_l(x).unwrap() + rogers_l(1.0 - x).unwrap() - PI2_6).abs() < 1e-12);
        }
    }

    #[test]
    fn rogers_matches_quadrature() {
        // Simpson's rule on the integral definition, away from the singular endpoints
        let f = |y: f64| -0.5 * (libm::log(1.0 - y) / y + libm::log(y) / (1.0 - y));
        let (a, b, n) = (0.2, 0.7, 2000);
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for k in 1..n {
            s += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        let integral = s * h / 3.0;
        assert!((rogers_l(b).unwrap() - rogers_l(a).unwrap() - integral).abs() < 1e-10);
    }

    #[test]
    fn a1_single_step() {
        let b = ExchangeMatrix::zero(1);
        let s = SliceSchedule::new(&b, &[vec![0], vec![0]], &Permutation::identity(1)).unwrap();
        let trace = propagate_numeric(&s, &[3.0]).unwrap();
        assert!((trace.values[1].value() - 1.0 / 3.0).abs() < 1e-14);
        let counts = count_tropical_signs(&s).unwrap();
        assert_eq!((counts.plus, counts.minus), (1, 1));
    }

    #[test]
    fn a2_identity() {
        let s = schedule("A2");
        assert_eq!(s.omega(), 10);
        let counts = count_tropical_signs(&s).unwrap();
        assert_eq!(counts.total(), 10);
        assert_eq!((counts.plus, counts.minus), (6, 4));
        let rep = verify_identity(&s, 5, 7, 1e-9).unwrap();
        assert!(rep.passed(), "{rep:?}");
        for t in &rep.trials {
            assert!((t.sum_minus + t.sum_plus - 10.0).abs() < 1e-9);
        }
        let ones = propagate_numeric(&s, &[1.0, 1.0]).unwrap();
        assert!(ysystem_residual(&s, &ones).unwrap() < 1e-9);
    }

    #[test]
    fn a2_constancy() {
        let s = schedule("A2");
        let rep = constancy_probe(&s, &[1.0, 1.0], 1e-5, 10, 3).unwrap();
        assert!(rep.spread < 1e-9);
        assert!(rep.gradient_max < 1e-6);
    }

    #[test]
    fn refuses_non_periods() {
        let b = ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let s = SliceSchedule::new(&b, &[vec![0], vec![1]], &Permutation::identity(2)).unwrap();
        assert_eq!(verify_identity(&s, 1, 0, 1e-9).unwrap_err(), Error::NotSeedPeriod);
        assert!(constancy_probe(&s, &[1.0, 1.0], 1e-5, 2, 0).is_err());
    }

    #[test]
    fn weighted_rank_two() {
        for name in ["B2", "G2"] {
            let s = schedule(name);
            let rep = verify_identity(&s, 3, 11, 1e-9).unwrap();
            assert!(rep.weighted && rep.conditional);
            assert!(rep.passed(), "{name} {rep:?}");
        }
    }

    #[test]
    fn tropical_limit_matches_signs() {
        let s = schedule("A3");
        let trace = propagate_numeric(&s, &[1.0; 3]).unwrap();
        for t in [1e-3, 1e-6] {
            let small = propagate_numeric(&s, &[t; 3]).unwrap();
            for ((v, sign), p) in small.values.iter().zip(&trace.signs).zip(&trace.points) {
                let expect = if *sign == Sign::Plus { v.ln() < 0.0 } else { v.ln() > 0.0 };
                assert!(expect, "{p:?}");
            }
        }
    }
}
