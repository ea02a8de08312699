//! Mutation sessions persisted as JSON files.
//!
//! A session stores its seed source and history; the current seed is replayed
//! from them on every load and compared with the stored snapshot.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use periodica_core::seed::{apply_sequence, FTracking, PrincipalSeed};
use periodica_core::semifield::DEFAULT_MAX_TERMS;
use serde::{Deserialize, Serialize};

use crate::input::{parse_nu, parse_sequence, NuChoice, Resolved, SeedSource, Slices};
use crate::ops::{self, DilogSummary, Kind, MethodChoice, SeedState, SystemReport, Tracking, VerdictReport};

/// Default cap on polynomial size for sessions that track F-polynomials.
pub const SESSION_MAX_TERMS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SessionState {
    pub id: String,
    pub source: SeedSource,
    pub tracking: Tracking,
    pub max_terms: usize,
    /// 1-based mutation indices.
    pub history: Vec<usize>,
    pub current: SeedState,
    pub last_verdict: Option<VerdictReport>,
    pub last_dilog: Option<DilogSummary>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewSession {
    pub catalog: Option<String>,
    pub matrix: Option<Vec<Vec<i64>>>,
    pub quiver: Option<QuiverInput>,
    pub tracking: Option<Tracking>,
    pub max_terms: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverInput {
    pub n: usize,
    pub arrows: Vec<(usize, usize, u32)>,
}

impl NewSession {
    pub fn source(&self) -> Result<SeedSource> {
        match (&self.catalog, &self.matrix, &self.quiver) {
            (Some(c), None, None) => Ok(SeedSource::Catalog(c.clone())),
            (None, Some(m), None) => Ok(SeedSource::Matrix(m.clone())),
            (None, None, Some(q)) => Ok(SeedSource::Quiver { n: q.n, arrows: q.arrows.clone() }),
            _ => bail!("give exactly one of `catalog`, `matrix` or `quiver`"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnDelta {
    pub j: usize,
    pub before: Vec<i64>,
    pub after: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationDelta {
    pub k: usize,
    pub c: Vec<ColumnDelta>,
    pub g: Vec<ColumnDelta>,
    pub f: Option<(String, String)>,
    pub signs_before: Vec<String>,
    pub signs_after: Vec<String>,
}

fn delta(k: usize, before: &SeedState, after: &SeedState) -> MutationDelta {
    let cols = |a: &[Vec<i64>], b: &[Vec<i64>]| {
        a.iter()
            .zip(b)
            .enumerate()
            .filter(|(_, (x, y))| x != y)
            .map(|(j, (x, y))| ColumnDelta { j: j + 1, before: x.clone(), after: y.clone() })
            .collect()
    };
    MutationDelta {
        k,
        c: cols(&before.c_vectors, &after.c_vectors),
        g: cols(&before.g_vectors, &after.g_vectors),
        f: before.f_polynomials.as_ref().zip(after.f_polynomials.as_ref()).map(|(a, b)| (a[k - 1].clone(), b[k - 1].clone())),
        signs_before: before.tropical_signs.clone(),
        signs_after: after.tropical_signs.clone(),
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MutateRequest {
    pub k: Option<usize>,
    pub sequence: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodRequest {
    pub sequence: Option<String>,
    pub nu: Option<String>,
    pub method: Option<MethodChoice>,
    pub max_terms: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TyRequest {
    pub kind: Kind,
    pub sequence: Option<String>,
    pub nu: Option<String>,
    #[serde(default)]
    pub coefficients: bool,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DilogRequest {
    pub sequence: Option<String>,
    pub nu: Option<String>,
    pub trials: Option<usize>,
    pub rng_seed: Option<u64>,
    pub tolerance: Option<f64>,
}

pub const DEFAULT_TRIALS: usize = 5;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

impl SessionState {
    fn resolved(&self) -> Result<Resolved> {
        self.source.resolve()
    }

    fn replay(&self) -> Result<PrincipalSeed> {
        let res = self.resolved()?;
        let seq: Vec<usize> = self.history.iter().map(|k| k - 1).collect();
        Ok(apply_sequence(&ops::principal(&res, self.tracking, self.max_terms), &seq)?)
    }

    fn refresh(&mut self) -> Result<()> {
        let res = self.resolved()?;
        self.current = ops::seed_state(&self.replay()?, &res.labels);
        self.last_verdict = None;
        self.last_dilog = None;
        Ok(())
    }

    /// Replay the history and compare it with the stored snapshot.
    pub fn verify_replay(&self) -> Result<()> {
        let res = self.resolved()?;
        let replayed = ops::seed_state(&self.replay()?, &res.labels);
        if replayed != self.current {
            bail!("session {} does not replay to its stored state", self.id);
        }
        Ok(())
    }

    pub fn mutate(&mut self, req: &MutateRequest) -> Result<Vec<MutationDelta>> {
        let res = self.resolved()?;
        let n = res.matrix.n();
        let seq: Vec<usize> = match (req.k, &req.sequence) {
            (Some(k), None) => {
                if k == 0 || k > n {
                    bail!("index {k} out of range 1..={n}");
                }
                vec![k - 1]
            }
            (None, Some(s)) => parse_sequence(s, n, res.entry.as_ref())?.flat(),
            _ => bail!("give exactly one of `k` or `sequence`"),
        };
        let mut seed = self.replay()?;
        let mut before = self.current.clone();
        let mut deltas = Vec::with_capacity(seq.len());
        for k in seq {
            seed.mutate_in_place(k)?;
            let after = ops::seed_state(&seed, &res.labels);
            deltas.push(delta(k + 1, &before, &after));
            before = after;
        }
        self.history = one_based(seed.history());
        self.current = before;
        self.last_verdict = None;
        self.last_dilog = None;
        Ok(deltas)
    }

    pub fn undo(&mut self) -> Result<()> {
        if self.history.pop().is_none() {
            bail!("nothing to undo");
        }
        self.refresh()
    }

    fn slices(&self, res: &Resolved, text: Option<&str>) -> Result<Slices> {
        match text {
            Some(t) => parse_sequence(t, res.matrix.n(), res.entry.as_ref()),
            None if self.history.is_empty() => bail!("empty history and no sequence given"),
            None => Ok(Slices::singletons(&self.history.iter().map(|k| k - 1).collect::<Vec<_>>())),
        }
    }

    fn fixed_nu(&self, res: &Resolved, text: Option<&str>, slices: &Slices) -> Result<periodica_core::Permutation> {
        match parse_nu(text.unwrap_or("id"), res.matrix.n(), res.entry.as_ref())? {
            NuChoice::Fixed(p) => Ok(p),
            NuChoice::Auto => {
                let end = apply_sequence(&PrincipalSeed::new(res.matrix.clone(), FTracking::Off), &slices.flat())?;
                periodica_core::periodicity::nu_from_c(&end).ok_or_else(|| anyhow!("C is not a permutation matrix"))
            }
        }
    }

    pub fn check_period(&mut self, req: &PeriodRequest) -> Result<VerdictReport> {
        let res = self.resolved()?;
        let seq = self.slices(&res, req.sequence.as_deref())?.flat();
        let nu = parse_nu(req.nu.as_deref().unwrap_or("id"), res.matrix.n(), res.entry.as_ref())?;
        let v = ops::check_period(&res, &seq, &nu, req.method.unwrap_or_default(), req.max_terms.unwrap_or(DEFAULT_MAX_TERMS))?;
        self.last_verdict = Some(v.clone());
        Ok(v)
    }

    pub fn ty(&self, req: &TyRequest) -> Result<SystemReport> {
        let res = self.resolved()?;
        let slices = self.slices(&res, req.sequence.as_deref())?;
        let nu = self.fixed_nu(&res, req.nu.as_deref(), &slices)?;
        ops::ty_system(&res, &slices, &nu, req.kind, req.coefficients)
    }

    pub fn dilog(&mut self, req: &DilogRequest) -> Result<DilogSummary> {
        let res = self.resolved()?;
        let slices = self.slices(&res, req.sequence.as_deref())?;
        let nu = self.fixed_nu(&res, req.nu.as_deref(), &slices)?;
        let d = ops::verify_dilog(
            &res,
            &slices,
            &nu,
            req.trials.unwrap_or(DEFAULT_TRIALS),
            req.rng_seed.unwrap_or(0),
            req.tolerance.unwrap_or(DEFAULT_TOLERANCE),
        )?;
        self.last_dilog = Some(d.clone());
        Ok(d)
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|k| k + 1).collect()
}

/// Session files under one directory, with a lock per session.
pub struct SessionStore {
    dir: PathBuf,
    counter: AtomicU64,
    locks: Mutex<HashMap<String, Arc<Mutex<()>>>>,
}

impl SessionStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Self { dir, counter: AtomicU64::new(0), locks: Mutex::new(HashMap::new()) })
    }

    /// `PERIODICA_DATA`, or `./periodica-data`.
    pub fn from_env() -> Result<Self> {
        Self::open(std::env::var_os("PERIODICA_DATA").map(PathBuf::from).unwrap_or_else(|| "periodica-data".into()))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, id: &str) -> Result<PathBuf> {
        if id.is_empty() || id.len() > 64 || !id.bytes().all(|b| b.is_ascii_hexdigit() || b == b'-') {
            bail!(NotFound(id.to_owned()));
        }
        Ok(self.dir.join(format!("{id}.json")))
    }

    fn lock(&self, id: &str) -> Arc<Mutex<()>> {
        self.locks.lock().unwrap().entry(id.to_owned()).or_default().clone()
    }

    fn new_id(&self) -> String {
        let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos()).unwrap_or(0);
        let c = self.counter.fetch_add(1, Ordering::Relaxed);
        format!("{:x}-{c:x}", nanos & 0xffff_ffff_ffff)
    }

    pub fn create(&self, req: &NewSession) -> Result<SessionState> {
        let source = req.source()?;
        let tracking = req.tracking.unwrap_or_default();
        let max_terms = req.max_terms.unwrap_or(SESSION_MAX_TERMS);
        let res = source.resolve()?;
        let current = ops::seed_state(&ops::principal(&res, tracking, max_terms), &res.labels);
        let state = SessionState {
            id: self.new_id(),
            source,
            tracking,
            max_terms,
            history: Vec::new(),
            current,
            last_verdict: None,
            last_dilog: None,
        };
        self.save(&state)?;
        Ok(state)
    }

    pub fn load(&self, id: &str) -> Result<SessionState> {
        let path = self.path(id)?;
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => bail!(NotFound(id.to_owned())),
            Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
        };
        let state: SessionState = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        state.verify_replay()?;
        Ok(state)
    }

    pub fn save(&self, state: &SessionState) -> Result<()> {
        let path = self.path(&state.id)?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, ops::canonical(state))?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Load, apply `f`, and save if `f` succeeds, holding the session lock throughout.
    pub fn update<T>(&self, id: &str, f: impl FnOnce(&mut SessionState) -> Result<T>) -> Result<(SessionState, T)> {
        let lock = self.lock(id);
        let _guard = lock.lock().unwrap();
        let mut state = self.load(id)?;
        let out = f(&mut state)?;
        self.save(&state)?;
        Ok((state, out))
    }
}

/// Unknown session id.
#[derive(Debug)]
pub struct NotFound(pub String);

impl std::fmt::Display for NotFound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "no session `{}`", self.0)
    }
}

impl std::error::Error for NotFound {}

#[cfg(test)]
mod tests {
    use super::*;

    fn store() -> (tempfile::TempDir, SessionStore) {
        let dir = tempfile::tempdir().unwrap();
        let s = SessionStore::open(dir.path()).unwrap();
        (dir, s)
    }

    fn a2(store: &SessionStore) -> SessionState {
        store.create(&NewSession { catalog: Some("A2".into()), ..Default::default() }).unwrap()
    }

    #[test]
    fn mutate_undo_and_replay() {
        let (_d, st) = store();
        let s = a2(&st);
        let (after, deltas) = st.update(&s.id, |s| s.mutate(&MutateRequest { k: Some(1), sequence: None })).unwrap();
        assert_eq!(after.history, vec![1]);
        assert_eq!(deltas[0].g.len(), 1);
        assert_eq!(deltas[0].f, Some(("1".into(), "1 + y1".into())));
        let (undone, ()) = st.update(&s.id, |s| s.undo()).unwrap();
        assert_eq!(undone.current, s.current);
        assert!(st.update(&s.id, |s| s.undo()).is_err());
        let loaded = st.load(&s.id).unwrap();
        assert_eq!(loaded.current, s.current);
    }

    #[test]
    fn failed_updates_are_not_saved() {
        let (_d, st) = store();
        let s = a2(&st);
        assert!(st.update(&s.id, |s| s.mutate(&MutateRequest { k: Some(3), sequence: None })).is_err());
        assert!(st.update(&s.id, |s| s.mutate(&MutateRequest { k: Some(1), sequence: Some("1".into()) })).is_err());
        assert_eq!(st.load(&s.id).unwrap().history, Vec::<usize>::new());
    }

    #[test]
    fn tampered_files_are_rejected() {
        let (_d, st) = store();
        let mut s = a2(&st);
        s.history = vec![1];
        st.save(&s).unwrap();
        assert!(st.load(&s.id).is_err());
    }

    #[test]
    fn ids_are_sanitised() {
        let (_d, st) = store();
        for bad in ["", "../x", "a/b", "zz"] {
            assert!(st.load(bad).unwrap_err().downcast_ref::<NotFound>().is_some(), "{bad}");
        }
    }

    #[test]
    fn period_and_dilog_on_history() {
        let (_d, st) = store();
        let s = a2(&st);
        assert!(st.update(&s.id, |s| s.check_period(&PeriodRequest::default())).is_err());
        let (s2, _) = st.update(&s.id, |s| s.mutate(&MutateRequest { k: None, sequence: Some("(1,2)^5".into()) })).unwrap();
        assert_eq!(s2.current.period_relabeling, Some(vec![1, 2]));
        let (s3, v) = st.update(&s.id, |s| s.check_period(&PeriodRequest::default())).unwrap();
        assert_eq!(v.seed_periodic, Some(true));
        assert_eq!(s3.last_verdict, Some(v));
        let (_, d) = st.update(&s.id, |s| s.dilog(&DilogRequest::default())).unwrap();
        assert!(d.passed);
        assert_eq!(d.n_plus + d.n_minus, 10);
    }
}
