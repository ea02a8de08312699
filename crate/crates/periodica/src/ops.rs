//! Operations shared by the CLI and the HTTP service. Every operation returns a
//! serializable report; [`canonical`] turns it into the bytes both front ends emit.

use anyhow::{anyhow, bail, Result};
use periodica_core::catalog::{all, get_entry, CatalogEntry, Claim, Level, Source};
use periodica_core::dilog::{verify_identity, DilogReport};
use periodica_core::periodicity::{
    check_seed_period_symbolic, check_seed_period_tropical, find_period, nu_from_c, Method, NuPeriodSpec, PeriodVerdict,
    Witness,
};
use periodica_core::seed::{apply_sequence, check_positivity_assertions, FTracking, PrincipalSeed};
use periodica_core::semifield::SignClass;
use periodica_core::tysystem::{check_duality, gen_t_system, gen_y_system, Point, SliceSchedule, TYRelation};
use periodica_core::Permutation;
use serde::{Deserialize, Serialize};

use crate::input::{format_slices, NuChoice, Resolved, Slices};

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|k| k + 1).collect()
}

fn sign_str(c: SignClass) -> &'static str {
    match c {
        SignClass::Positive => "+",
        SignClass::Negative => "-",
        SignClass::Zero => "0",
        SignClass::Mixed => "mixed",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Tracking {
    Off,
    #[default]
    Exact,
    Truncated(u32),
}

impl From<Tracking> for FTracking {
    fn from(t: Tracking) -> Self {
        match t {
            Tracking::Off => FTracking::Off,
            Tracking::Exact => FTracking::Exact,
            Tracking::Truncated(d) => FTracking::Truncated(d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedState {
    pub n: usize,
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
    /// `c_vectors[j]` is column `j` of `C`.
    pub c_vectors: Vec<Vec<i64>>,
    pub g_vectors: Vec<Vec<i64>>,
    pub tropical_signs: Vec<String>,
    pub f_polynomials: Option<Vec<String>>,
    pub history: Vec<usize>,
    /// Set when `C` is a permutation matrix, i.e. the history is a period of the seed.
    pub period_relabeling: Option<Vec<usize>>,
    pub warnings: Vec<String>,
}

pub fn seed_state(s: &PrincipalSeed, labels: &[String]) -> SeedState {
    let n = s.n();
    let rep = check_positivity_assertions(s);
    let nu = nu_from_c(s).filter(|_| !s.history().is_empty());
    SeedState {
        n,
        labels: labels.to_vec(),
        matrix: s.b().rows(),
        c_vectors: (0..n).map(|j| s.c_vector(j)).collect(),
        g_vectors: (0..n).map(|j| s.g_vector(j)).collect(),
        tropical_signs: (0..n).map(|j| sign_str(s.tropical_y(j).sign()).to_owned()).collect(),
        f_polynomials: s.f_polys().map(|f| f.iter().map(|p| p.to_string()).collect()),
        history: one_based(s.history()),
        period_relabeling: nu
            .filter(|p| (0..n).all(|i| (0..n).all(|j| s.b().get(p.apply(i), p.apply(j)) == s.initial_b().get(i, j))))
            .map(|p| one_based(p.images())),
        warnings: rep.failures(),
    }
}

pub fn principal(res: &Resolved, tracking: Tracking, max_terms: usize) -> PrincipalSeed {
    PrincipalSeed::new(res.matrix.clone(), tracking.into()).with_max_terms(max_terms)
}

pub fn mutate(res: &Resolved, seq: &[usize], tracking: Tracking, max_terms: usize) -> Result<SeedState> {
    let s = apply_sequence(&principal(res, tracking, max_terms), seq)?;
    Ok(seed_state(&s, &res.labels))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    #[default]
    Tropical,
    Symbolic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub kind: String,
    pub i: usize,
    pub j: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub sequence: String,
    pub length: usize,
    pub nu: Option<Vec<usize>>,
    pub matrix_periodic: bool,
    pub seed_periodic: Option<bool>,
    pub method: String,
    pub conjectural: bool,
    pub witness: Option<WitnessReport>,
}

fn verdict_report(seq: &[usize], nu: Option<&Permutation>, v: &PeriodVerdict) -> VerdictReport {
    VerdictReport {
        sequence: format_slices(&Slices::singletons(seq).0),
        length: seq.len(),
        nu: nu.map(|p| one_based(p.images())),
        matrix_periodic: v.matrix_periodic,
        seed_periodic: v.seed_periodic,
        method: match v.method {
            Method::Tropical => "tropical",
            Method::Symbolic => "symbolic",
        }
        .into(),
        conjectural: v.conjectural,
        witness: v.witness.map(|w| match w {
            Witness::Matrix { i, j } => WitnessReport { kind: "matrix".into(), i: i + 1, j: Some(j + 1) },
            Witness::Seed { i } => WitnessReport { kind: "seed".into(), i: i + 1, j: None },
        }),
    }
}

pub fn check_period(res: &Resolved, seq: &[usize], nu: &NuChoice, method: MethodChoice, max_terms: usize) -> Result<VerdictReport> {
    let nu = match nu {
        NuChoice::Fixed(p) => p.clone(),
        NuChoice::Auto => {
            let end = apply_sequence(&PrincipalSeed::new(res.matrix.clone(), FTracking::Off), seq)?;
            match nu_from_c(&end) {
                Some(p) => p,
                None => {
                    let v = check_seed_period_tropical(&res.matrix, &NuPeriodSpec::plain(seq.to_vec(), res.matrix.n()))?;
                    let mut r = verdict_report(seq, None, &v);
                    r.seed_periodic = Some(false);
                    return Ok(r);
                }
            }
        }
    };
    let spec = NuPeriodSpec::new(seq.to_vec(), nu.clone());
    let v = match method {
        MethodChoice::Tropical => check_seed_period_tropical(&res.matrix, &spec)?,
        MethodChoice::Symbolic => check_seed_period_symbolic(&res.matrix, &spec, max_terms)?,
    };
    Ok(verdict_report(seq, Some(&nu), &v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundReport {
    pub sequence: String,
    pub length: usize,
    pub nu: Vec<usize>,
}

pub fn find_periods(res: &Resolved, max_len: usize, identity_only: bool, limit: usize, max_states: usize) -> Result<Vec<FoundReport>> {
    Ok(find_period(&res.matrix, max_len, identity_only, limit, max_states)?
        .into_iter()
        .map(|f| FoundReport {
            sequence: format_slices(&Slices::singletons(&f.seq).0),
            length: f.seq.len(),
            nu: one_based(f.nu.images()),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Site {
    pub i: usize,
    pub u: i64,
}

impl From<&Point> for Site {
    fn from(p: &Point) -> Self {
        Site { i: p.i + 1, u: p.u }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub i: usize,
    pub u: Option<i64>,
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub site: Site,
    pub partner: Site,
    pub plus: Vec<Factor>,
    pub minus: Vec<Factor>,
    pub latex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemReport {
    pub kind: String,
    pub slices: String,
    pub nu: Vec<usize>,
    pub t: usize,
    pub g: usize,
    pub window: i64,
    pub regular: bool,
    pub with_coefficients: bool,
    pub duality_checked: usize,
    pub duality_holds: bool,
    pub relations: Vec<RelationReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    T,
    Y,
}

fn factors(rel: &TYRelation, plus: bool) -> Vec<Factor> {
    let (pts, ext) = if plus { (&rel.plus, &rel.external_plus) } else { (&rel.minus, &rel.external_minus) };
    ext.iter()
        .map(|(&j, &e)| Factor { i: j + 1, u: None, exponent: e })
        .chain(pts.iter().map(|(p, &e)| Factor { i: p.i + 1, u: Some(p.u), exponent: e }))
        .collect()
}

pub fn schedule(res: &Resolved, slices: &Slices, nu: &Permutation) -> Result<SliceSchedule> {
    if slices.0.is_empty() {
        bail!("empty sequence");
    }
    Ok(SliceSchedule::new(&res.matrix, &slices.0, nu)?)
}

pub fn ty_system(res: &Resolved, slices: &Slices, nu: &Permutation, kind: Kind, with_coefficients: bool) -> Result<SystemReport> {
    let s = schedule(res, slices, nu)?;
    let ys = gen_y_system(&s);
    let ts = gen_t_system(&s, with_coefficients);
    let duality = check_duality(&s, &ys, &ts);
    let rels = if kind == Kind::Y { ys } else { ts };
    Ok(SystemReport {
        kind: match kind {
            Kind::T => "T",
            Kind::Y => "Y",
        }
        .into(),
        slices: format_slices(&slices.0),
        nu: one_based(nu.images()),
        t: s.t(),
        g: s.g(),
        window: s.omega(),
        regular: s.is_regular(),
        with_coefficients: with_coefficients && kind == Kind::T,
        duality_checked: duality.checked,
        duality_holds: duality.holds(),
        relations: rels
            .iter()
            .map(|r| RelationReport {
                site: (&r.site).into(),
                partner: (&r.partner).into(),
                plus: factors(r, true),
                minus: factors(r, false),
                latex: r.to_latex(&res.labels),
            })
            .collect(),
    })
}

pub fn ty_latex(report: &SystemReport) -> String {
    let mut out = String::from("\\begin{align*}\n");
    for r in &report.relations {
        out.push_str("  ");
        out.push_str(&r.latex.replacen(" = ", " &= ", 1));
        out.push_str(" \\\\\n");
    }
    out.push_str("\\end{align*}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub initial: Vec<f64>,
    pub sum_minus: f64,
    pub sum_plus: f64,
    pub residual_minus: f64,
    pub residual_plus: f64,
    pub ysystem_residual: f64,
    pub period_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DilogSummary {
    pub slices: String,
    pub window: i64,
    pub n_plus: i64,
    pub n_minus: i64,
    pub size: i64,
    pub weighted: bool,
    pub conditional: bool,
    pub rng_seed: u64,
    pub tolerance: f64,
    pub max_residual: f64,
    pub spread: f64,
    pub passed: bool,
    pub trials: Vec<TrialReport>,
}

fn dilog_summary(slices: &Slices, window: i64, rng_seed: u64, r: &DilogReport) -> DilogSummary {
    DilogSummary {
        slices: format_slices(&slices.0),
        window,
        n_plus: r.n_plus,
        n_minus: r.n_minus,
        size: r.size,
        weighted: r.weighted,
        conditional: r.conditional,
        rng_seed,
        tolerance: r.tolerance,
        max_residual: r.max_residual(),
        spread: r.spread,
        passed: r.passed(),
        trials: r
            .trials
            .iter()
            .map(|t| TrialReport {
                initial: t.initial.clone(),
                sum_minus: t.sum_minus,
                sum_plus: t.sum_plus,
                residual_minus: t.residual_minus,
                residual_plus: t.residual_plus,
                ysystem_residual: t.ysystem_residual,
                period_residual: t.period_residual,
            })
            .collect(),
    }
}

pub fn verify_dilog(res: &Resolved, slices: &Slices, nu: &Permutation, trials: usize, rng_seed: u64, tolerance: f64) -> Result<DilogSummary> {
    let s = schedule(res, slices, nu)?;
    let r = verify_identity(&s, trials, rng_seed, tolerance)?;
    Ok(dilog_summary(slices, s.omega(), rng_seed, &r))
}

/// Slices and relabeling of a catalog claim: `label` if given, else the first
/// seed period with trivial relabeling, else the first claim.
pub fn catalog_claim<'a>(entry: &'a CatalogEntry, label: Option<&str>) -> Result<&'a Claim> {
    match label {
        Some(l) => entry.claims.iter().find(|c| c.label == l).ok_or_else(|| anyhow!("{} has no claim `{l}`", entry.name)),
        None => entry.seed_period().or(entry.claims.first()).ok_or_else(|| anyhow!("{} has no claims", entry.name)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogSummary {
    pub name: String,
    pub description: String,
    pub n: usize,
    pub skew_symmetric: bool,
    pub figure_transcribed: bool,
    pub has_seed_period: bool,
}

pub fn catalog_list() -> Vec<CatalogSummary> {
    all()
        .into_iter()
        .map(|e| CatalogSummary {
            n: e.n(),
            skew_symmetric: e.matrix.is_skew_symmetric(),
            figure_transcribed: e.figure_transcribed,
            has_seed_period: e.seed_period().is_some(),
            name: e.name,
            description: e.description,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub label: String,
    pub slices: String,
    pub nu: String,
    pub level: String,
    pub source: String,
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterReport {
    pub formula: String,
    pub values: Vec<(String, u32)>,
    pub claimed_length: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub name: String,
    pub description: String,
    pub index_set: String,
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
    /// `(from, to, multiplicity)`, 1-based.
    pub arrows: Option<Vec<(usize, usize, u32)>>,
    pub sequences: Vec<(String, Vec<usize>)>,
    pub permutations: Vec<(String, Vec<usize>)>,
    pub claims: Vec<ClaimReport>,
    pub coxeter: Option<CoxeterReport>,
    pub figure_transcribed: bool,
}

pub fn catalog_show(name: &str) -> Result<EntryReport> {
    let e = get_entry(name)?;
    Ok(EntryReport {
        index_set: e.index_set.clone(),
        labels: e.labels.clone(),
        matrix: e.matrix.rows(),
        symmetrizer: e.matrix.symmetrizer().to_vec(),
        arrows: e.quiver.as_ref().map(|q| q.arrows().map(|(i, j, m)| (i + 1, j + 1, m)).collect()),
        sequences: e.sequences.iter().map(|(k, s)| (k.clone(), one_based(s))).collect(),
        permutations: e.permutations.iter().map(|(k, p)| (k.clone(), one_based(p.images()))).collect(),
        claims: e
            .claims
            .iter()
            .map(|c| ClaimReport {
                label: c.label.clone(),
                slices: format_slices(&c.slices),
                nu: c.nu.clone(),
                level: match c.level {
                    Level::Matrix => "matrix",
                    Level::Seed => "seed",
                }
                .into(),
                source: match c.source {
                    Source::Literature => "literature",
                    Source::Computed => "computed",
                }
                .into(),
                statement: c.statement.clone(),
            })
            .collect(),
        coxeter: e.coxeter.as_ref().map(|c| CoxeterReport {
            formula: c.formula.clone(),
            values: c.values.clone(),
            claimed_length: c.claimed_length,
        }),
        figure_transcribed: e.figure_transcribed,
        name: e.name,
        description: e.description,
    })
}

pub fn catalog_dot(name: &str) -> Result<String> {
    let e = get_entry(name)?;
    let q = e.quiver.as_ref().ok_or_else(|| anyhow!("{name} is skew-symmetrizable and has no quiver"))?;
    Ok(q.to_dot(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::{parse_sequence, SeedSource};
    use periodica_core::semifield::DEFAULT_MAX_TERMS as DEFAULT_TERMS;

    fn a2() -> Resolved {
        SeedSource::Catalog("A2".into()).resolve().unwrap()
    }

    #[test]
    fn pentagon_verdicts() {
        let r = a2();
        let seq = parse_sequence("(1,2)^5", 2, None).unwrap().flat();
        let id = NuChoice::Fixed(Permutation::identity(2));
        let v = check_period(&r, &seq, &id, MethodChoice::Tropical, DEFAULT_TERMS).unwrap();
        assert_eq!(v.seed_periodic, Some(true));
        assert_eq!(v.sequence, "1,2,1,2,1,2,1,2,1,2");
        let s = check_period(&r, &seq, &id, MethodChoice::Symbolic, DEFAULT_TERMS).unwrap();
        assert_eq!(s.seed_periodic, Some(true));
        let half = check_period(&r, &seq[..5], &NuChoice::Auto, MethodChoice::Tropical, DEFAULT_TERMS).unwrap();
        assert_eq!(half.seed_periodic, Some(true));
        assert_eq!(half.nu, Some(vec![2, 1]));
        let no = check_period(&r, &seq[..4], &NuChoice::Auto, MethodChoice::Tropical, DEFAULT_TERMS).unwrap();
        assert_eq!(no.seed_periodic, Some(false));
    }

    #[test]
    fn seed_state_reports_periods() {
        let r = a2();
        let s = mutate(&r, &[0, 1, 0, 1, 0], Tracking::Exact, DEFAULT_TERMS).unwrap();
        assert_eq!(s.period_relabeling, Some(vec![2, 1]));
        assert_eq!(s.history, vec![1, 2, 1, 2, 1]);
        let s = mutate(&r, &[0], Tracking::Exact, DEFAULT_TERMS).unwrap();
        assert_eq!(s.c_vectors[0], vec![-1, 0]);
        assert_eq!(s.tropical_signs, vec!["-", "+"]);
        assert_eq!(s.f_polynomials.unwrap()[0], "1 + y1");
        assert!(s.period_relabeling.is_none());
    }

    #[test]
    fn systems_and_dilog() {
        let r = a2();
        let sl = parse_sequence("1|2", 2, None).unwrap();
        let id = Permutation::identity(2);
        let y = ty_system(&r, &sl, &id, Kind::Y, false).unwrap();
        assert!(y.duality_holds);
        assert_eq!(y.relations.len(), 2);
        assert!(ty_latex(&y).contains("&="));
        let d = verify_dilog(&r, &parse_sequence("(1|2)^5", 2, None).unwrap(), &id, 3, 1, 1e-9).unwrap();
        assert!(d.passed);
        assert_eq!((d.n_plus, d.n_minus, d.size), (6, 4, 10));
        assert!(verify_dilog(&r, &sl, &id, 3, 1, 1e-9).is_err());
    }

    #[test]
    fn catalog_views() {
        assert_eq!(catalog_list().len(), periodica_core::catalog::names().len());
        let a2 = catalog_show("A2").unwrap();
        assert_eq!(a2.arrows, Some(vec![(1, 2, 1)]));
        assert!(catalog_dot("A2").unwrap().contains("1 -> 2"));
        assert!(catalog_dot("B2").is_err());
        let dp = get_entry("delPezzo3").unwrap();
        assert_eq!(catalog_claim(&dp, None).unwrap().label, "(1,2)");
    }
}
