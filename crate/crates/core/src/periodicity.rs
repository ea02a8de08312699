//! Periodicities of exchange matrices and seeds.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::permutation::Permutation;
use crate::seed::{apply_sequence, FTracking, PrincipalSeed, SymbolicSeed};

/// A mutation sequence together with the relabeling `nu` it is tested against.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NuPeriodSpec {
    pub seq: Vec<usize>,
    pub nu: Permutation,
}

impl NuPeriodSpec {
    pub fn new(seq: Vec<usize>, nu: Permutation) -> Self {
        Self { seq, nu }
    }

    pub fn plain(seq: Vec<usize>, n: usize) -> Self {
        Self { seq, nu: Permutation::identity(n) }
    }

    /// Order of `nu`.
    pub fn g(&self) -> usize {
        self.nu.order()
    }

    fn validate(&self, b: &ExchangeMatrix) -> Result<()> {
        if self.nu.len() != b.n() {
            return Err(Error::DimensionMismatch { expected: b.n(), found: self.nu.len() });
        }
        self.seq.iter().try_for_each(|&k| b.check_index(k))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Tropical,
    Symbolic,
}

/// Where a periodicity check first failed (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// `b''_{nu(i) nu(j)} != b_ij`.
    Matrix { i: usize, j: usize },
    /// Coefficient or cluster variable `i` does not return to slot `nu(i)`.
    Seed { i: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodVerdict {
    pub matrix_periodic: bool,
    /// `None` when the seed level was not decided.
    pub seed_periodic: Option<bool>,
    pub method: Method,
    /// Set for skew-symmetrizable (not skew-symmetric) input under the tropical
    /// criterion, whose equivalence is only expected there.
    pub conjectural: bool,
    pub witness: Option<Witness>,
}

impl PeriodVerdict {
    pub fn is_seed_period(&self) -> bool {
        self.seed_periodic == Some(true)
    }
}

/// `Some((i, j))` for the first entry where `nu(mu_i(B))` and `B` disagree.
pub fn matrix_period_witness(b: &ExchangeMatrix, spec: &NuPeriodSpec) -> Result<Option<(usize, usize)>> {
    spec.validate(b)?;
    let end = apply_sequence(b, &spec.seq)?;
    let n = b.n();
    for i in 0..n {
        for j in 0..n {
            if end.get(spec.nu.apply(i), spec.nu.apply(j)) != b.get(i, j) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn check_matrix_period(b: &ExchangeMatrix, spec: &NuPeriodSpec) -> Result<bool> {
    Ok(matrix_period_witness(b, spec)?.is_none())
}

/// Seed periodicity through tropical coefficients: after `mu_i`, column
/// `nu(i)` of `C` must be `e_i` for every `i`.
pub fn check_seed_period_tropical(b: &ExchangeMatrix, spec: &NuPeriodSpec) -> Result<PeriodVerdict> {
    spec.validate(b)?;
    let s = apply_sequence(&PrincipalSeed::new(b.clone(), FTracking::Off), &spec.seq)?;
    Ok(tropical_verdict(b, &s, &spec.nu))
}

fn tropical_verdict(b: &ExchangeMatrix, s: &PrincipalSeed, nu: &Permutation) -> PeriodVerdict {
    let n = b.n();
    let mw = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| s.b().get(nu.apply(i), nu.apply(j)) != b.get(i, j));
    let sw = s.first_c_mismatch(nu.images());
    PeriodVerdict {
        matrix_periodic: mw.is_none(),
        seed_periodic: Some(mw.is_none() && sw.is_none()),
        method: Method::Tropical,
        conjectural: !b.is_skew_symmetric(),
        witness: mw.map(|(i, j)| Witness::Matrix { i, j }).or(sw.map(|i| Witness::Seed { i })),
    }
}

/// Seed periodicity by full symbolic mutation over the universal semifield.
pub fn check_seed_period_symbolic(b: &ExchangeMatrix, spec: &NuPeriodSpec, max_terms: usize) -> Result<PeriodVerdict> {
    spec.validate(b)?;
    let s0 = SymbolicSeed::initial_with_cap(b.clone(), max_terms);
    let s = apply_sequence(&s0, &spec.seq)?;
    let n = b.n();
    let mw = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| s.b().get(spec.nu.apply(i), spec.nu.apply(j)) != b.get(i, j));
    let sw = s.first_relabel_mismatch(&s0, &spec.nu);
    Ok(PeriodVerdict {
        matrix_periodic: mw.is_none(),
        seed_periodic: Some(mw.is_none() && sw.is_none()),
        method: Method::Symbolic,
        conjectural: false,
        witness: mw.map(|(i, j)| Witness::Matrix { i, j }).or(sw.map(|i| Witness::Seed { i })),
    })
}

/// `j(i, nu) = i | nu(i) | ... | nu^{g-1}(i)`.
pub fn build_j_period(spec: &NuPeriodSpec) -> Vec<usize> {
    let g = spec.g();
    let mut out = Vec::with_capacity(spec.seq.len() * g);
    let mut p = Permutation::identity(spec.nu.len());
    for _ in 0..g {
        out.extend(p.apply_seq(&spec.seq));
        p = spec.nu.compose(&p);
    }
    out
}

/// `i | nu(i')`, a `nu nu'`-period when `i` is a `nu`-period and `i'` a `nu'`-period.
pub fn concatenate(first: &NuPeriodSpec, second: &NuPeriodSpec) -> NuPeriodSpec {
    let mut seq = first.seq.clone();
    seq.extend(first.nu.apply_seq(&second.seq));
    NuPeriodSpec { seq, nu: first.nu.compose(&second.nu) }
}

/// Submatrix on `indices`, the restriction of an extension.
pub fn restrict(b_ext: &ExchangeMatrix, indices: &[usize]) -> Result<ExchangeMatrix> {
    b_ext.restrict(indices)
}

/// Result of comparing a period on a restriction and on its extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub restricted: PeriodVerdict,
    pub extended: PeriodVerdict,
}

impl ExtensionReport {
    /// Both directions of the transfer hold on this instance.
    pub fn consistent(&self) -> bool {
        self.restricted.seed_periodic == self.extended.seed_periodic
    }
}

/// Check `spec` (stated on the restriction `b_ext|indices`) on both matrices.
/// `indices[a]` is the extension index of restricted index `a`; `nu` is
/// extended by the identity.
pub fn extend_check(b_ext: &ExchangeMatrix, indices: &[usize], spec: &NuPeriodSpec) -> Result<ExtensionReport> {
    let b = restrict(b_ext, indices)?;
    spec.validate(&b)?;
    let restricted = check_seed_period_tropical(&b, spec)?;
    let seq = spec.seq.iter().map(|&k| indices[k]).collect();
    let mut images: Vec<usize> = (0..b_ext.n()).collect();
    for (a, &big) in indices.iter().enumerate() {
        images[big] = indices[spec.nu.apply(a)];
    }
    let extended = check_seed_period_tropical(b_ext, &NuPeriodSpec::new(seq, Permutation::from_images(images)?))?;
    Ok(ExtensionReport { restricted, extended })
}

/// Is `spec` also a seed period of the opposite matrix `-B`?
pub fn opposite_period_check(b: &ExchangeMatrix, spec: &NuPeriodSpec) -> Result<bool> {
    Ok(check_seed_period_tropical(&b.opposite(), spec)?.is_seed_period())
}

/// All `nu` for which `seq` is a `nu`-period of `B`, at most `limit` of them.
pub fn enumerate_nus(b: &ExchangeMatrix, seq: &[usize], limit: usize) -> Result<Vec<Permutation>> {
    seq.iter().try_for_each(|&k| b.check_index(k))?;
    let end = apply_sequence(b, seq)?;
    let n = b.n();
    let mut out = Vec::new();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        b: &ExchangeMatrix,
        end: &ExchangeMatrix,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Permutation>,
        limit: usize,
    ) {
        let n = b.n();
        if out.len() >= limit {
            return;
        }
        if i == n {
            out.push(Permutation::from_images(images.clone()).expect("bijection by construction"));
            return;
        }
        for cand in 0..n {
            if used[cand] || b.symmetrizer()[i] != end.symmetrizer()[cand] {
                continue;
            }
            let ok = (0..i).all(|j| end.get(cand, images[j]) == b.get(i, j) && end.get(images[j], cand) == b.get(j, i));
            if ok {
                images[i] = cand;
                used[cand] = true;
                go(i + 1, b, end, images, used, out, limit);
                used[cand] = false;
                images[i] = usize::MAX;
            }
        }
    }
    go(0, b, &end, &mut images, &mut used, &mut out, limit);
    Ok(out)
}

/// The relabeling read off a principal seed whose `C` is a permutation matrix:
/// `nu(i) = j` when column `j` of `C` is `e_i`.
pub fn nu_from_c(s: &PrincipalSeed) -> Option<Permutation> {
    let n = s.n();
    let mut images = vec![usize::MAX; n];
    for j in 0..n {
        let col = s.c_vector(j);
        let i = col.iter().position(|&x| x == 1)?;
        if col.iter().enumerate().any(|(r, &x)| r != i && x != 0) {
            return None;
        }
        images[i] = j;
    }
    Permutation::from_images(images).ok()
}

/// A seed period found by [`find_period`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundPeriod {
    pub seq: Vec<usize>,
    pub nu: Permutation,
}

/// Breadth-first search for seed periods of length `1..=max_len`.
///
/// States are principal seeds keyed by their `C` matrix up to a permutation
/// of columns. When a new state matches a visited one, the two tree paths
/// close into a candidate period, which is then verified. At most
/// `max_states` states are visited. Results are sorted by length; with
/// `identity_only`, only `nu = id` is kept.
pub fn find_period(
    b: &ExchangeMatrix,
    max_len: usize,
    identity_only: bool,
    limit: usize,
    max_states: usize,
) -> Result<Vec<FoundPeriod>> {
    let n = b.n();
    let start = PrincipalSeed::new(b.clone(), FTracking::Off);
    let mut seen: BTreeMap<Vec<Vec<i64>>, PrincipalSeed> = BTreeMap::new();
    seen.insert(column_key(&start), start.clone());
    let mut queue = VecDeque::from([start]);
    let mut found: BTreeSet<(usize, Vec<usize>, Vec<usize>)> = BTreeSet::new();
    while let Some(s) = queue.pop_front() {
        if s.history().len() >= max_len {
            continue;
        }
        for k in 0..n {
            if s.history().last() == Some(&k) {
                continue;
            }
            let next = s.mutate(k)?;
            let key = column_key(&next);
            match seen.get(&key) {
                Some(other) => {
                    if next.history().len() + other.history().len() > max_len {
                        continue;
                    }
                    if let Some(seq) = close_walk(&next, other) {
                        let end = apply_sequence(&PrincipalSeed::new(b.clone(), FTracking::Off), &seq)?;
                        let Some(nu) = nu_from_c(&end) else { continue };
                        if !tropical_verdict(b, &end, &nu).is_seed_period() {
                            continue;
                        }
                        if !identity_only {
                            found.insert((seq.len(), seq, nu.images().to_vec()));
                        } else {
                            let j = build_j_period(&NuPeriodSpec::new(seq, nu));
                            if j.len() <= max_len && check_seed_period_tropical(b, &NuPeriodSpec::plain(j.clone(), n))?.is_seed_period() {
                                found.insert((j.len(), j, (0..n).collect()));
                            }
                        }
                    }
                }
                None => {
                    if seen.len() < max_states {
                        seen.insert(key, next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Ok(found
        .into_iter()
        .take(limit)
        .map(|(_, seq, images)| FoundPeriod { seq, nu: Permutation::from_images(images).expect("valid") })
        .collect())
}

fn column_key(s: &PrincipalSeed) -> Vec<Vec<i64>> {
    let mut cols: Vec<Vec<i64>> = (0..s.n()).map(|j| s.c_vector(j)).collect();
    cols.sort();
    cols
}

/// `a.history | sigma(reverse(b.history))`, where column `sigma(j)` of `C_a`
/// equals column `j` of `C_b`.
fn close_walk(a: &PrincipalSeed, b: &PrincipalSeed) -> Option<Vec<usize>> {
    let n = a.n();
    let cols_a: Vec<Vec<i64>> = (0..n).map(|j| a.c_vector(j)).collect();
    let sigma: Vec<usize> = (0..n).map(|j| cols_a.iter().position(|c| *c == b.c_vector(j))).collect::<Option<_>>()?;
    let mut seq = a.history().to_vec();
    seq.extend(b.history().iter().rev().map(|&j| sigma[j]));
    let reduced = seq.windows(2).all(|w| w[0] != w[1]);
    (reduced && !seq.is_empty()).then_some(seq)
}
