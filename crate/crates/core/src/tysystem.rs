//! Mutation schedules built from a slice of a nu-period, and the T- and Y-systems they carry.
//!
//! Times `u` range over all integers; a schedule stores one window `[0, t*g)` and
//! extends everything else by periodicity.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::periodicity::NuPeriodSpec;
use crate::permutation::Permutation;
use crate::semifield::{LogReal, Semifield};

/// A point `(i, u)` of `I x Z`, ordered by `(u, i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub u: i64,
    pub i: usize,
}

impl Point {
    pub fn new(i: usize, u: i64) -> Self {
        Self { u, i }
    }

    fn shift(self, du: i64) -> Self {
        Self { u: self.u + du, i: self.i }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceSchedule {
    b: ExchangeMatrix,
    nu_powers: Vec<Permutation>,
    slices: Vec<Vec<usize>>,
    stages: Vec<ExchangeMatrix>,
    forward: Vec<Point>,
    lambda: BTreeMap<Point, (i64, i64)>,
    in_j: Vec<bool>,
    orbit: Vec<usize>,
    regular: bool,
}

/// Split `spec.seq` into consecutive slices of the given lengths and build the schedule.
pub fn build_schedule(b: &ExchangeMatrix, spec: &NuPeriodSpec, lengths: &[usize]) -> Result<SliceSchedule> {
    let total: usize = lengths.iter().sum();
    if total != spec.seq.len() {
        return Err(Error::DimensionMismatch { expected: spec.seq.len(), found: total });
    }
    let mut slices = Vec::with_capacity(lengths.len());
    let mut at = 0;
    for &l in lengths {
        slices.push(spec.seq[at..at + l].to_vec());
        at += l;
    }
    SliceSchedule::new(b, &slices, &spec.nu)
}

/// The slice of maximal length: every mutation on its own.
pub fn singleton_lengths(seq: &[usize]) -> Vec<usize> {
    vec![1; seq.len()]
}

impl SliceSchedule {
    pub fn new(b: &ExchangeMatrix, slices: &[Vec<usize>], nu: &Permutation) -> Result<Self> {
        let n = b.n();
        if nu.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: nu.len() });
        }
        if slices.is_empty() || slices.iter().any(|s| s.is_empty()) {
            return Err(Error::Domain("a slice decomposition needs nonempty slices".into()));
        }
        for &k in slices.iter().flatten() {
            b.check_index(k)?;
        }
        let t = slices.len();
        let g = nu.order();
        let nu_powers: Vec<Permutation> = (0..g).map(|m| nu.pow(m)).collect();
        let mut stages = Vec::with_capacity(t * g);
        let mut cur = b.clone();
        for p in 0..t * g {
            let slice = nu_powers[p / t].apply_seq(&slices[p % t]);
            for (a, &x) in slice.iter().enumerate() {
                for &y in &slice[a + 1..] {
                    if x == y || cur.get(x, y) != 0 {
                        return Err(Error::SliceCondition { stage: p, a: x, b: y });
                    }
                }
            }
            stages.push(cur.clone());
            for &k in &slice {
                cur.mutate_in_place(k)?;
            }
            if p + 1 == t && cur != b.relabel(nu)? {
                return Err(Error::NotMatrixPeriod);
            }
        }
        if cur != *b {
            return Err(Error::NotMatrixPeriod);
        }

        let mut s = Self {
            b: b.clone(),
            nu_powers,
            slices: slices.to_vec(),
            stages,
            forward: Vec::new(),
            lambda: BTreeMap::new(),
            in_j: vec![false; n],
            orbit: (0..n).map(|i| nu.orbit_len(i)).collect(),
            regular: false,
        };
        for u in 0..s.omega() {
            let mut here = s.slice_at(u);
            here.sort_unstable();
            for i in here {
                s.in_j[i] = true;
                s.forward.push(Point::new(i, u));
            }
        }
        for &p in &s.forward {
            let next = s.next_forward(p.i, p.u).expect("index in J recurs");
            let prev = s.prev_forward(p.i, p.u).expect("index in J recurs");
            s.lambda.insert(p, (next - p.u, p.u - prev));
        }
        let mut orbits_seen = BTreeSet::new();
        let distinct = slices.iter().flatten().all(|&k| {
            let rep = (0..g).map(|m| s.nu_powers[m].apply(k)).min().unwrap_or(k);
            orbits_seen.insert(rep)
        });
        s.regular = distinct && s.in_j.iter().all(|&x| x);
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn slices(&self) -> &[Vec<usize>] {
        &self.slices
    }

    pub fn nu(&self) -> &Permutation {
        &self.nu_powers[1 % self.nu_powers.len()]
    }

    pub fn t(&self) -> usize {
        self.slices.len()
    }

    pub fn g(&self) -> usize {
        self.nu_powers.len()
    }

    /// Orbit length `g_i` of `i` under nu.
    pub fn g_i(&self, i: usize) -> usize {
        self.orbit[i]
    }

    /// Length `t*g` of the window after which everything repeats.
    pub fn omega(&self) -> i64 {
        (self.t() * self.g()) as i64
    }

    /// Satisfies both (A1) every index is mutated and (A2) the sequence meets each
    /// nu-orbit at most once.
    pub fn is_regular(&self) -> bool {
        self.regular
    }

    /// Whether `j` occurs in the concatenation of all nu-translates of the sequence.
    pub fn in_j(&self, j: usize) -> bool {
        self.in_j[j]
    }

    /// Indices mutated at time `u`: `nu^m(i(k))` for `u = m t + k`.
    pub fn slice_at(&self, u: i64) -> Vec<usize> {
        let t = self.t() as i64;
        let m = u.div_euclid(t).rem_euclid(self.g() as i64) as usize;
        self.nu_powers[m].apply_seq(&self.slices[u.rem_euclid(t) as usize])
    }

    /// The matrix `B(u)` in force before the mutations at time `u`.
    pub fn matrix_at(&self, u: i64) -> &ExchangeMatrix {
        &self.stages[u.rem_euclid(self.omega()) as usize]
    }

    pub fn b_at(&self, i: usize, j: usize, u: i64) -> i64 {
        self.matrix_at(u).get(i, j)
    }

    pub fn is_forward(&self, i: usize, u: i64) -> bool {
        self.slice_at(u).contains(&i)
    }

    /// Forward mutation points in `[0, t*g)`, sorted by `(u, i)`.
    pub fn forward_points(&self) -> &[Point] {
        &self.forward
    }

    /// Forward points with `lo <= u < hi`, sorted by `(u, i)`.
    pub fn forward_points_in(&self, lo: i64, hi: i64) -> Vec<Point> {
        (lo..hi)
            .flat_map(|u| {
                let mut s = self.slice_at(u);
                s.sort_unstable();
                s.into_iter().map(move |i| Point::new(i, u))
            })
            .collect()
    }

    /// Smallest `v > u` with `(i, v)` a forward point.
    pub fn next_forward(&self, i: usize, u: i64) -> Option<i64> {
        if !self.in_j[i] {
            return None;
        }
        (u + 1..=u + self.omega()).find(|&v| self.is_forward(i, v))
    }

    /// Largest `v < u` with `(i, v)` a forward point.
    pub fn prev_forward(&self, i: usize, u: i64) -> Option<i64> {
        if !self.in_j[i] {
            return None;
        }
        (u - self.omega()..u).rev().find(|&v| self.is_forward(i, v))
    }

    fn base(&self, p: Point) -> (Point, i64) {
        let w = self.omega();
        let k = p.u.div_euclid(w) * w;
        (p.shift(-k), k)
    }

    /// `lambda_+(i, u)` for a forward point.
    pub fn lambda_plus(&self, p: Point) -> Option<i64> {
        self.lambda.get(&self.base(p).0).map(|l| l.0)
    }

    /// `lambda_-(i, u)` for a forward point.
    pub fn lambda_minus(&self, p: Point) -> Option<i64> {
        self.lambda.get(&self.base(p).0).map(|l| l.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Y,
    T,
}

/// One relation of a Y-system or T-system, in unbalanced form.
///
/// Y: `y_i(u) y_i(u+lambda) = prod (1+y_j(v))^plus / prod (1+y_j(v)^-1)^minus`.
///
/// T: `x_i(u) x_i(u+lambda) = y_i(u)/(1+y_i(u)) * prod x_j(v)^plus * prod x_j^ext_plus
///                            + 1/(1+y_i(u)) * prod x_j(v)^minus * prod x_j^ext_minus`;
/// without coefficients both prefactors are dropped. External factors are initial
/// variables of indices that are never mutated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TYRelation {
    pub kind: RelationKind,
    pub site: Point,
    pub partner: Point,
    pub plus: BTreeMap<Point, i64>,
    pub minus: BTreeMap<Point, i64>,
    pub external_plus: BTreeMap<usize, i64>,
    pub external_minus: BTreeMap<usize, i64>,
    pub with_coefficients: bool,
}

impl TYRelation {
    fn shifted(&self, du: i64) -> Self {
        let mv = |m: &BTreeMap<Point, i64>| m.iter().map(|(p, &e)| (p.shift(du), e)).collect();
        Self {
            kind: self.kind,
            site: self.site.shift(du),
            partner: self.partner.shift(du),
            plus: mv(&self.plus),
            minus: mv(&self.minus),
            external_plus: self.external_plus.clone(),
            external_minus: self.external_minus.clone(),
            with_coefficients: self.with_coefficients,
        }
    }

    /// LaTeX rendering; `labels[i]` names index `i`.
    pub fn to_latex(&self, labels: &[String]) -> String {
        let var = |c: char, p: &Point| format!("{c}_{{{}}}({})", labels[p.i], p.u);
        let mut s = String::new();
        let lhs_c = if self.kind == RelationKind::Y { 'y' } else { 'x' };
        let _ = write!(s, "{}\\,{} = ", var(lhs_c, &self.site), var(lhs_c, &self.partner));
        match self.kind {
            RelationKind::Y => {
                let num = product(&self.plus, |p| format!("(1+{})", var('y', p)));
                let den = product(&self.minus, |p| format!("(1+{}^{{-1}})", var('y', p)));
                let _ = write!(s, "\\frac{{{num}}}{{{den}}}");
            }
            RelationKind::T => {
                let ext = |m: &BTreeMap<usize, i64>| {
                    m.iter()
                        .map(|(&j, &e)| if e == 1 { format!("x_{{{}}}", labels[j]) } else { format!("x_{{{}}}^{{{e}}}", labels[j]) })
                        .collect::<Vec<_>>()
                        .join("\\,")
                };
                let term = |m: &BTreeMap<Point, i64>, e: &BTreeMap<usize, i64>| {
                    let mut parts = Vec::new();
                    let ex = ext(e);
                    if !ex.is_empty() {
                        parts.push(ex);
                    }
                    let pr = product(m, |p| var('x', p));
                    if pr != "1" || parts.is_empty() {
                        parts.push(pr);
                    }
                    parts.join("\\,")
                };
                let (a, b) = (term(&self.plus, &self.external_plus), term(&self.minus, &self.external_minus));
                if self.with_coefficients {
                    let y = var('y', &self.site);
                    let _ = write!(s, "\\frac{{{y}}}{{1+{y}}}\\,{a} + \\frac{{1}}{{1+{y}}}\\,{b}");
                } else {
                    let _ = write!(s, "{a} + {b}");
                }
            }
        }
        s
    }
}

fn product(m: &BTreeMap<Point, i64>, f: impl Fn(&Point) -> String) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(p, &e)| if e == 1 { f(p) } else { format!("{}^{{{e}}}", f(p)) })
        .collect::<Vec<_>>()
        .join("\\,")
}

/// One Y-relation per forward point of the window.
pub fn gen_y_system(s: &SliceSchedule) -> Vec<TYRelation> {
    s.forward_points().iter().map(|&p| y_relation(s, p)).collect()
}

fn y_relation(s: &SliceSchedule, p: Point) -> TYRelation {
    let lam = s.lambda_plus(p).expect("forward point");
    let mut plus = BTreeMap::new();
    let mut minus = BTreeMap::new();
    for v in p.u + 1..p.u + lam {
        for j in s.slice_at(v) {
            let b = s.b_at(j, p.i, v);
            if b < 0 {
                plus.insert(Point::new(j, v), -b);
            } else if b > 0 {
                minus.insert(Point::new(j, v), b);
            }
        }
    }
    TYRelation {
        kind: RelationKind::Y,
        site: p,
        partner: p.shift(lam),
        plus,
        minus,
        external_plus: BTreeMap::new(),
        external_minus: BTreeMap::new(),
        with_coefficients: true,
    }
}

/// One T-relation per forward point of the window.
pub fn gen_t_system(s: &SliceSchedule, with_coefficients: bool) -> Vec<TYRelation> {
    s.forward_points().iter().map(|&p| t_relation(s, p, with_coefficients)).collect()
}

fn t_relation(s: &SliceSchedule, p: Point, with_coefficients: bool) -> TYRelation {
    let lam = s.lambda_plus(p).expect("forward point");
    let mut rel = TYRelation {
        kind: RelationKind::T,
        site: p,
        partner: p.shift(lam),
        plus: BTreeMap::new(),
        minus: BTreeMap::new(),
        external_plus: BTreeMap::new(),
        external_minus: BTreeMap::new(),
        with_coefficients,
    };
    for j in 0..s.n() {
        let b = s.b_at(j, p.i, p.u);
        if b == 0 {
            continue;
        }
        match s.next_forward(j, p.u) {
            Some(v) => {
                let target = if b > 0 { &mut rel.plus } else { &mut rel.minus };
                target.insert(Point::new(j, v), b.abs());
            }
            None => {
                let target = if b > 0 { &mut rel.external_plus } else { &mut rel.external_minus };
                target.insert(j, b.abs());
            }
        }
    }
    rel
}

/// Bring a relation's site into the window and look up the stored one.
fn relation_at<'a>(s: &SliceSchedule, rels: &'a [TYRelation], site: Point) -> Option<(&'a TYRelation, i64)> {
    let (base, k) = s.base(site);
    rels.iter().find(|r| r.site == base).map(|r| (r, k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityViolation {
    /// Y-relation site `(i, u - lambda_-(i, u))`.
    pub y_site: Point,
    /// T-relation site `(j, v)`.
    pub t_site: Point,
    pub plus: bool,
    /// `d_j G'`.
    pub lhs: i64,
    /// `d_i H'`.
    pub rhs: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualityReport {
    pub checked: usize,
    pub violations: Vec<DualityViolation>,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check `d_j G'_pm(j,v; i,u-lambda_-(i,u)) = d_i H'_pm(i,u; j,v)` over every nonzero
/// exponent on either side.
pub fn check_duality(s: &SliceSchedule, yrels: &[TYRelation], trels: &[TYRelation]) -> DualityReport {
    let d = s.matrix().symmetrizer();
    let mut report = DualityReport::default();
    let mut seen = BTreeSet::new();
    let mut compare = |report: &mut DualityReport, y_site: Point, t_site: Point, plus: bool| {
        let (ys, _) = s.base(y_site);
        let t_shifted = t_site.shift(ys.u - y_site.u);
        if !seen.insert((ys, t_shifted, plus)) {
            return;
        }
        let i_next = y_site.shift(s.lambda_plus(y_site).unwrap_or(0));
        let g = relation_at(s, yrels, y_site)
            .and_then(|(r, k)| {
                let m = if plus { &r.plus } else { &r.minus };
                m.get(&t_site.shift(-k)).copied()
            })
            .unwrap_or(0);
        let h = relation_at(s, trels, t_site)
            .and_then(|(r, k)| {
                let m = if plus { &r.plus } else { &r.minus };
                m.get(&i_next.shift(-k)).copied()
            })
            .unwrap_or(0);
        report.checked += 1;
        let (lhs, rhs) = (d[t_site.i] * g, d[y_site.i] * h);
        if lhs != rhs {
            report.violations.push(DualityViolation { y_site, t_site, plus, lhs, rhs });
        }
    };
    for r in yrels {
        for (plus, m) in [(true, &r.plus), (false, &r.minus)] {
            for &jv in m.keys() {
                compare(&mut report, r.site, jv, plus);
            }
        }
    }
    for r in trels {
        for (plus, m) in [(true, &r.plus), (false, &r.minus)] {
            for &iu in m.keys() {
                if let Some(lm) = s.lambda_minus(iu) {
                    compare(&mut report, iu.shift(-lm), r.site, plus);
                }
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq)]
pub struct YFromTReport {
    pub checked: usize,
    pub max_residual: f64,
    /// Site of the largest residual.
    pub worst: Option<Point>,
}

/// Propagate the coefficient-free T-system from positive initial values, form
/// `Y_i(u)` as the ratio of the two monomials of the relation at `(i, u)`, and
/// measure how well these satisfy the Y-system on the first window.
///
/// Residuals are absolute differences of logarithms of both sides.
pub fn y_from_t_check(s: &SliceSchedule, initial: &[f64]) -> Result<YFromTReport> {
    if initial.len() != s.n() {
        return Err(Error::DimensionMismatch { expected: s.n(), found: initial.len() });
    }
    let init: Vec<LogReal> = initial.iter().map(|&x| LogReal::from_value(x)).collect::<Result<_>>()?;
    let w = s.omega();
    let horizon = 3 * w;
    let trels = gen_t_system(s, false);
    let yrels = gen_y_system(s);

    let mut x: BTreeMap<Point, LogReal> = BTreeMap::new();
    for (j, &value) in init.iter().enumerate().take(s.n()) {
        if let Some(v) = s.next_forward(j, -1) {
            x.insert(Point::new(j, v), value);
        }
    }
    let lookup = |x: &BTreeMap<Point, LogReal>, p: &Point| {
        x.get(p).copied().ok_or_else(|| Error::InsufficientWindow(format!("T value at ({}, {}) not yet known", p.i, p.u)))
    };
    let monomial = |x: &BTreeMap<Point, LogReal>, m: &BTreeMap<Point, i64>, ext: &BTreeMap<usize, i64>| -> Result<f64> {
        let mut ln = 0.0;
        for (p, &e) in m {
            ln += lookup(x, p)?.ln() * e as f64;
        }
        for (&j, &e) in ext {
            ln += init[j].ln() * e as f64;
        }
        Ok(ln)
    };

    let mut y: BTreeMap<Point, LogReal> = BTreeMap::new();
    for p in s.forward_points_in(0, horizon) {
        let (rel, k) = relation_at(s, &trels, p).expect("relation for each forward point");
        let rel = rel.shifted(k);
        let a = monomial(&x, &rel.plus, &rel.external_plus)?;
        let b = monomial(&x, &rel.minus, &rel.external_minus)?;
        let cur = lookup(&x, &p)?;
        let sum = LogReal::from_ln(a).oplus(&LogReal::from_ln(b))?;
        x.insert(rel.partner, sum.div(&cur)?);
        y.insert(p, LogReal::from_ln(a - b));
    }

    let mut report = YFromTReport { checked: 0, max_residual: 0.0, worst: None };
    for rel in &yrels {
        let get = |p: &Point| {
            y.get(p).copied().ok_or_else(|| Error::InsufficientWindow(format!("Y value at ({}, {}) not computed", p.i, p.u)))
        };
        let lhs = get(&rel.site)?.ln() + get(&rel.partner)?.ln();
        let mut rhs = 0.0;
        for (p, &e) in &rel.plus {
            rhs += e as f64 * LogReal::from_value(1.0)?.oplus(&get(p)?)?.ln();
        }
        for (p, &e) in &rel.minus {
            rhs -= e as f64 * LogReal::from_value(1.0)?.oplus(&get(p)?.inv()?)?.ln();
        }
        let r = libm::fabs(lhs - rhs);
        report.checked += 1;
        if r >= report.max_residual {
            report.max_residual = r;
            report.worst = Some(rel.site);
        }
    }
    Ok(report)
}

/// A relation re-centred for a regular schedule: times are doubled so that the
/// half-integer shifts `t g_i / 2` stay integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedRelation {
    pub kind: RelationKind,
    pub index: usize,
    /// Twice the centre time.
    pub centre2: i64,
    /// Twice the half-width `t g_i / 2`.
    pub width2: i64,
    pub plus: BTreeMap<Point, i64>,
    pub minus: BTreeMap<Point, i64>,
}

/// Rewrite a relation of a regular schedule in balanced form; `None` otherwise.
///
/// For Y the coefficients keep their times and the centre is `u + t g_i / 2`;
/// for T the site is the centre and `x_j(v)` becomes `x~_j(v - t g_j / 2)`.
pub fn balanced(s: &SliceSchedule, rel: &TYRelation) -> Option<BalancedRelation> {
    if !s.is_regular() {
        return None;
    }
    let t = s.t() as i64;
    let width2 = t * s.g_i(rel.site.i) as i64;
    let (centre2, plus, minus) = match rel.kind {
        RelationKind::Y => {
            let dbl = |m: &BTreeMap<Point, i64>| m.iter().map(|(p, &e)| (Point::new(p.i, 2 * p.u), e)).collect();
            (2 * rel.site.u + width2, dbl(&rel.plus), dbl(&rel.minus))
        }
        RelationKind::T => {
            let dbl = |m: &BTreeMap<Point, i64>| {
                m.iter().map(|(p, &e)| (Point::new(p.i, 2 * p.u - t * s.g_i(p.i) as i64), e)).collect()
            };
            (2 * rel.site.u, dbl(&rel.plus), dbl(&rel.minus))
        }
    };
    Some(BalancedRelation { kind: rel.kind, index: rel.site.i, centre2, width2, plus, minus })
}
