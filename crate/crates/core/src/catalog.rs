//! Built-in quivers and exchange matrices together with their known periods.
//!
//! Indices are 0-based internally; `labels` hold the 1-based names shown to users.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::periodicity::NuPeriodSpec;
use crate::permutation::Permutation;
use crate::quiver::Quiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Matrix,
    Seed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    /// Stated in the literature.
    Literature,
    /// Found by running the engine and frozen.
    Computed,
}

/// A periodicity statement about an entry, checkable by [`crate::periodicity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    /// Short name such as `i^5` or `i+`.
    pub label: String,
    /// The sequence split into slices; the mutation sequence is their concatenation.
    pub slices: Vec<Vec<usize>>,
    /// Name of the relabeling, `id` for the identity.
    pub nu: String,
    pub level: Level,
    pub source: Source,
    pub statement: String,
    /// The same claim with one repetition fewer, which must fail.
    pub shorter: Option<Vec<Vec<usize>>>,
}

impl Claim {
    pub fn seq(&self) -> Vec<usize> {
        self.slices.concat()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterData {
    /// How the claimed length decomposes, e.g. `h(A4)+l`.
    pub formula: String,
    pub values: Vec<(String, u32)>,
    /// Number of repetitions of `i` in the claimed seed period.
    pub claimed_length: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub index_set: String,
    pub labels: Vec<String>,
    pub matrix: ExchangeMatrix,
    /// Present when the matrix is skew symmetric.
    pub quiver: Option<Quiver>,
    pub sequences: Vec<(String, Vec<usize>)>,
    pub permutations: Vec<(String, Permutation)>,
    pub claims: Vec<Claim>,
    pub coxeter: Option<CoxeterData>,
    /// Arrows were read off a dense drawing and may contain transcription errors.
    pub figure_transcribed: bool,
}

impl CatalogEntry {
    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn permutation(&self, name: &str) -> Option<Permutation> {
        if name == "id" {
            return Some(Permutation::identity(self.n()));
        }
        self.permutations.iter().find(|(k, _)| k == name).map(|(_, p)| p.clone())
    }

    pub fn sequence(&self, name: &str) -> Option<&[usize]> {
        self.sequences.iter().find(|(k, _)| k == name).map(|(_, s)| s.as_slice())
    }

    pub fn spec(&self, claim: &Claim) -> Result<NuPeriodSpec> {
        let nu = self
            .permutation(&claim.nu)
            .ok_or_else(|| Error::UnknownEntry(format!("permutation {} of {}", claim.nu, self.name)))?;
        Ok(NuPeriodSpec::new(claim.seq(), nu))
    }

    pub fn seed_claims(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.level == Level::Seed)
    }

    /// The first seed period with trivial relabeling; this is the window used for
    /// dilogarithm identities.
    pub fn seed_period(&self) -> Option<&Claim> {
        self.seed_claims().find(|c| c.nu == "id")
    }
}

pub const NAMES: &[&str] = &[
    "A1",
    "A2",
    "A3",
    "A4",
    "A5",
    "B2",
    "G2",
    "D4-bipartite",
    "A4-level4",
    "B4-level4",
    "sine-Gordon",
    "delPezzo3",
    "tamely-laced-level4",
];

pub fn names() -> &'static [&'static str] {
    NAMES
}

pub fn get_entry(name: &str) -> Result<CatalogEntry> {
    match name {
        "A1" => Ok(type_a(1)),
        "A2" => Ok(type_a(2)),
        "A3" => Ok(type_a(3)),
        "A4" => Ok(type_a(4)),
        "A5" => Ok(type_a(5)),
        "B2" => Ok(rank_two("B2", 2, 3, "h(B2)=4")),
        "G2" => Ok(rank_two("G2", 3, 4, "h(G2)=6")),
        "D4-bipartite" => Ok(d4_bipartite()),
        "A4-level4" => Ok(a4_level4()),
        "B4-level4" => Ok(b4_level4()),
        "sine-Gordon" => Ok(sine_gordon()),
        "delPezzo3" => Ok(del_pezzo3()),
        "tamely-laced-level4" => Ok(tamely_laced()),
        _ => Err(Error::UnknownEntry(name.to_owned())),
    }
}

pub fn all() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| get_entry(n).expect("catalog names resolve")).collect()
}

fn quiver(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    Quiver::new(n, arrows.iter().map(|&(i, j)| (i - 1, j - 1, 1))).expect("catalog quiver")
}

fn zero_based(slices: &[&[usize]]) -> Vec<Vec<usize>> {
    slices.iter().map(|s| s.iter().map(|&i| i - 1).collect()).collect()
}

fn repeat(base: &[Vec<usize>], times: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(base.len() * times);
    for _ in 0..times {
        out.extend(base.iter().cloned());
    }
    out
}

fn numeric_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{i}")).collect()
}

#[allow(clippy::too_many_arguments)]
fn claim(
    label: &str,
    slices: Vec<Vec<usize>>,
    nu: &str,
    level: Level,
    source: Source,
    statement: &str,
    shorter: Option<Vec<Vec<usize>>>,
) -> Claim {
    Claim {
        label: label.to_owned(),
        slices,
        nu: nu.to_owned(),
        level,
        source,
        statement: statement.to_owned(),
        shorter,
    }
}

fn entry(name: &str, description: &str, index_set: String, labels: Vec<String>, q: Quiver) -> CatalogEntry {
    CatalogEntry {
        name: name.to_owned(),
        description: description.to_owned(),
        index_set,
        labels,
        matrix: q.to_matrix(),
        quiver: Some(q),
        sequences: Vec::new(),
        permutations: Vec::new(),
        claims: Vec::new(),
        coxeter: None,
        figure_transcribed: false,
    }
}

/// Path `1 -> 2 <- 3 -> 4 <- ...` with odd vertices as sources.
fn type_a(n: usize) -> CatalogEntry {
    let arrows: Vec<(usize, usize)> = (1..n).map(|i| if i % 2 == 1 { (i, i + 1) } else { (i + 1, i) }).collect();
    let name = format!("A{n}");
    let mut e = entry(
        &name,
        "alternating quiver of type A",
        format!("{{1, .., {n}}}"),
        numeric_labels(n),
        quiver(n, &arrows),
    );
    let plus: Vec<usize> = (0..n).step_by(2).collect();
    let minus: Vec<usize> = (1..n).step_by(2).collect();
    e.sequences = vec![("i+".to_owned(), plus.clone()), ("i-".to_owned(), minus.clone())];
    let reflection = Permutation::from_images((0..n).rev().collect()).expect("reflection");
    let h = n as u32 + 1;
    e.coxeter = Some(CoxeterData {
        formula: format!("h(A{n})+2"),
        values: vec![(format!("h(A{n})"), h)],
        claimed_length: h + 2,
    });
    if n == 1 {
        let i = vec![plus];
        e.claims = vec![
            claim("i^2", repeat(&i, 2), "id", Level::Seed, Source::Computed, "mu_1 is an involution", Some(i.clone())),
            claim("i^4", repeat(&i, 4), "id", Level::Seed, Source::Literature, "i^{n+3} is a period of (Q,x,y)", None),
        ];
        return e;
    }
    let i = vec![plus.clone(), minus];
    let full = n + 3;
    e.claims.push(claim("i", i.clone(), "id", Level::Matrix, Source::Literature, "i = i+ | i- is a period of Q", None));
    if n % 2 == 1 {
        e.permutations = vec![("omega".to_owned(), reflection)];
        e.claims.push(claim(
            &format!("i^{}", full / 2),
            repeat(&i, full / 2),
            "omega",
            Level::Seed,
            Source::Literature,
            "i^{(n+3)/2} is an omega-period of (Q,x,y)",
            Some(repeat(&i, full / 2 - 1)),
        ));
    } else {
        e.permutations = vec![("nu".to_owned(), reflection)];
        e.claims.push(claim("i+", vec![plus.clone()], "nu", Level::Matrix, Source::Literature, "i+ is a nu-period of Q", None));
        let mut half = repeat(&i, n / 2 + 1);
        half.push(plus.clone());
        let mut half_short = repeat(&i, n / 2);
        half_short.push(plus);
        e.claims.push(claim(
            &format!("i^{}|i+", n / 2 + 1),
            half,
            "nu",
            Level::Seed,
            Source::Literature,
            "i^{n/2+1} | i+ is a nu-period of (Q,x,y)",
            Some(half_short),
        ));
    }
    e.claims.push(claim(
        &format!("i^{full}"),
        repeat(&i, full),
        "id",
        Level::Seed,
        Source::Literature,
        "i^{n+3} is a period of (Q,x,y)",
        Some(repeat(&i, full - 1)),
    ));
    e
}

/// Bipartite rank-two matrix `[[0, 1], [-c, 0]]` of finite type.
fn rank_two(name: &str, c: i64, reps: usize, h: &str) -> CatalogEntry {
    let matrix = ExchangeMatrix::from_rows(&[vec![0, 1], vec![-c, 0]]).expect("rank two matrix");
    let i = vec![vec![0], vec![1]];
    let hval: u32 = if c == 2 { 4 } else { 6 };
    CatalogEntry {
        name: name.to_owned(),
        description: "bipartite skew-symmetrizable matrix of finite type".to_owned(),
        index_set: "{1, 2}".to_owned(),
        labels: numeric_labels(2),
        matrix,
        quiver: None,
        sequences: vec![("i+".to_owned(), vec![0]), ("i-".to_owned(), vec![1])],
        permutations: Vec::new(),
        claims: vec![
            claim("i", i.clone(), "id", Level::Matrix, Source::Literature, "i = i+ | i- is a period of B", None),
            claim(
                &format!("i^{reps}"),
                repeat(&i, reps),
                "id",
                Level::Seed,
                Source::Computed,
                "i^{(h+2)/2} is a period of (B,x,y)",
                Some(repeat(&i, reps - 1)),
            ),
        ],
        coxeter: Some(CoxeterData {
            formula: "(h+2)/2".to_owned(),
            values: vec![(h.split('=').next().unwrap_or(h).to_owned(), hval)],
            claimed_length: reps as u32,
        }),
        figure_transcribed: false,
    }
}

/// Star with centre 4 and the three leaves as sources.
fn d4_bipartite() -> CatalogEntry {
    let mut e = entry(
        "D4-bipartite",
        "bipartite alternating quiver of type D4",
        "{1, .., 4}".to_owned(),
        numeric_labels(4),
        quiver(4, &[(1, 4), (2, 4), (3, 4)]),
    );
    let i = vec![vec![0, 1, 2], vec![3]];
    e.sequences = vec![("i+".to_owned(), vec![0, 1, 2]), ("i-".to_owned(), vec![3])];
    e.claims = vec![
        claim("i", i.clone(), "id", Level::Matrix, Source::Literature, "i = i+ | i- is a period of B", None),
        claim("i^4", repeat(&i, 4), "id", Level::Seed, Source::Computed, "i^{(h+2)/2} is a period of (Q,x,y)", Some(repeat(&i, 3))),
    ];
    e.coxeter = Some(CoxeterData {
        formula: "(h(D4)+2)/2".to_owned(),
        values: vec![("h(D4)".to_owned(), 6)],
        claimed_length: 4,
    });
    e
}

/// Vertex `(i, j)` (column `i` in 1..=4, row `j` in 1..=3) has index `3(i-1)+(j-1)`.
fn a4_level4() -> CatalogEntry {
    let v = |i: usize, j: usize| 3 * (i - 1) + j;
    let arrows = [
        (v(1, 1), v(1, 2)),
        (v(1, 3), v(1, 2)),
        (v(2, 2), v(2, 1)),
        (v(2, 2), v(2, 3)),
        (v(3, 1), v(3, 2)),
        (v(3, 3), v(3, 2)),
        (v(4, 2), v(4, 1)),
        (v(4, 2), v(4, 3)),
        (v(2, 1), v(1, 1)),
        (v(2, 1), v(3, 1)),
        (v(4, 1), v(3, 1)),
        (v(1, 2), v(2, 2)),
        (v(3, 2), v(2, 2)),
        (v(3, 2), v(4, 2)),
        (v(2, 3), v(1, 3)),
        (v(2, 3), v(3, 3)),
        (v(4, 3), v(3, 3)),
    ];
    let labels = (1..=4).flat_map(|i| (1..=3).map(move |j| format!("({i},{j})"))).collect();
    let mut e = entry(
        "A4-level4",
        "quiver Q(A4, 4) of the level 4 T- and Y-systems of type A4",
        "{(i,j) | 1 <= i <= 4, 1 <= j <= 3}".to_owned(),
        labels,
        quiver(12, &arrows),
    );
    let idx = |i: usize, j: usize| 3 * (i - 1) + (j - 1);
    let plus: Vec<usize> =
        (1..=4).flat_map(|i| (1..=3).map(move |j| (i, j))).filter(|(i, j)| (i + j) % 2 == 0).map(|(i, j)| idx(i, j)).collect();
    let minus: Vec<usize> =
        (1..=4).flat_map(|i| (1..=3).map(move |j| (i, j))).filter(|(i, j)| (i + j) % 2 == 1).map(|(i, j)| idx(i, j)).collect();
    let nu = Permutation::from_images((1..=4).flat_map(|i| (1..=3).map(move |j| idx(5 - i, j))).collect()).expect("nu");
    let omega = Permutation::from_images((1..=4).flat_map(|i| (1..=3).map(move |j| idx(i, 4 - j))).collect()).expect("omega");
    e.sequences = vec![("i+".to_owned(), plus.clone()), ("i-".to_owned(), minus.clone())];
    e.permutations =
        vec![("nu".to_owned(), nu.clone()), ("omega".to_owned(), omega.clone()), ("nu*omega".to_owned(), nu.compose(&omega))];
    let i = vec![plus.clone(), minus];
    let mut half = repeat(&i, 4);
    half.push(plus.clone());
    let mut half_short = repeat(&i, 3);
    half_short.push(plus.clone());
    e.claims = vec![
        claim("i+", vec![plus], "nu", Level::Matrix, Source::Literature, "i+ is a nu-period of Q", None),
        claim("i", i.clone(), "id", Level::Matrix, Source::Literature, "i is a period of Q", None),
        claim("i^4|i+", half, "nu*omega", Level::Seed, Source::Literature, "i^4 | i+ is a nu omega-period of (Q,x,y)", Some(half_short)),
        claim("i^9", repeat(&i, 9), "id", Level::Seed, Source::Literature, "i^9 is a period of (Q,x,y)", Some(repeat(&i, 8))),
    ];
    e.coxeter = Some(CoxeterData {
        formula: "h(A4)+l".to_owned(),
        values: vec![("h(A4)".to_owned(), 5), ("l".to_owned(), 4)],
        claimed_length: 9,
    });
    e
}

/// Columns 1..=7 left to right; columns other than 4 carry rows 1..=3 (white vertices),
/// column 4 carries rows 1..=7 (black vertices). Indices run column by column.
fn b4_level4() -> CatalogEntry {
    let rows = |c: usize| if c == 4 { 7 } else { 3 };
    let v = |c: usize, r: usize| -> usize {
        let before: usize = (1..c).map(rows).sum();
        before + r
    };
    let arrows = [
        // white rows
        (v(1, 1), v(2, 1)),
        (v(3, 1), v(2, 1)),
        (v(4, 2), v(3, 1)),
        (v(4, 2), v(5, 1)),
        (v(6, 1), v(5, 1)),
        (v(6, 1), v(7, 1)),
        (v(2, 2), v(1, 2)),
        (v(2, 2), v(3, 2)),
        (v(4, 4), v(3, 2)),
        (v(4, 4), v(5, 2)),
        (v(5, 2), v(6, 2)),
        (v(7, 2), v(6, 2)),
        (v(1, 3), v(2, 3)),
        (v(3, 3), v(2, 3)),
        (v(4, 6), v(3, 3)),
        (v(4, 6), v(5, 3)),
        (v(6, 3), v(5, 3)),
        (v(6, 3), v(7, 3)),
        // black column
        (v(4, 1), v(4, 2)),
        (v(4, 3), v(4, 2)),
        (v(4, 3), v(4, 4)),
        (v(4, 5), v(4, 4)),
        (v(4, 5), v(4, 6)),
        (v(4, 7), v(4, 6)),
        // white to black diagonals
        (v(3, 1), v(4, 1)),
        (v(3, 1), v(4, 3)),
        (v(3, 3), v(4, 5)),
        (v(3, 3), v(4, 7)),
        (v(5, 2), v(4, 3)),
        (v(5, 2), v(4, 5)),
        // white columns
        (v(1, 2), v(1, 1)),
        (v(2, 1), v(2, 2)),
        (v(3, 2), v(3, 1)),
        (v(5, 1), v(5, 2)),
        (v(6, 2), v(6, 1)),
        (v(7, 1), v(7, 2)),
        (v(1, 2), v(1, 3)),
        (v(2, 3), v(2, 2)),
        (v(3, 2), v(3, 3)),
        (v(5, 3), v(5, 2)),
        (v(6, 2), v(6, 3)),
        (v(7, 3), v(7, 2)),
    ];
    let verts: Vec<(usize, usize)> = (1..=7).flat_map(|c| (1..=rows(c)).map(move |r| (c, r))).collect();
    let labels = verts.iter().map(|(c, r)| format!("({c},{r})")).collect();
    let mut e = entry(
        "B4-level4",
        "quiver Q(B4, 4) of the level 4 T- and Y-systems of type B4",
        "white (c,r) with c in {1,2,3,5,6,7}, r in 1..=3; black (4,r) with r in 1..=7".to_owned(),
        labels,
        quiver(25, &arrows),
    );
    let idx = |c: usize, r: usize| v(c, r) - 1;
    // black (4, r) is + when r is odd; white (c, r) is + when c + r is odd left of the
    // black column and even right of it
    let sign = |c: usize, r: usize| match c {
        4 => !r.is_multiple_of(2),
        1..=3 => !(c + r).is_multiple_of(2),
        _ => (c + r).is_multiple_of(2),
    };
    let class = |black: bool, plus: bool| -> Vec<usize> {
        verts
            .iter()
            .filter(|&&(c, r)| (c == 4) == black && sign(c, r) == plus)
            .map(|&(c, r)| idx(c, r))
            .collect()
    };
    let (bp, bm, wp, wm) = (class(true, true), class(true, false), class(false, true), class(false, false));
    let nu = Permutation::from_images(verts.iter().map(|&(c, r)| idx(8 - c, r)).collect()).expect("nu");
    let omega =
        Permutation::from_images(verts.iter().map(|&(c, r)| idx(c, rows(c) + 1 - r)).collect()).expect("omega");
    e.sequences = vec![
        ("i.black+".to_owned(), bp.clone()),
        ("i.black-".to_owned(), bm.clone()),
        ("i.white+".to_owned(), wp.clone()),
        ("i.white-".to_owned(), wm.clone()),
    ];
    e.permutations =
        vec![("nu".to_owned(), nu.clone()), ("omega".to_owned(), omega.clone()), ("nu*omega".to_owned(), nu.compose(&omega))];
    let first = vec![bp.clone(), wp, bm.clone()];
    let i: Vec<Vec<usize>> = first.iter().cloned().chain([bp, wm, bm]).collect();
    let mut half = repeat(&i, 5);
    half.extend(first.iter().cloned());
    let mut half_short = repeat(&i, 4);
    half_short.extend(first.iter().cloned());
    e.claims = vec![
        claim("i.black+|i.white+|i.black-", first, "nu", Level::Matrix, Source::Literature, "i.black+ | i.white+ | i.black- is a nu-period of Q", None),
        claim("i", i.clone(), "id", Level::Matrix, Source::Literature, "i is a period of Q", None),
        claim(
            "i^5|(i.black+|i.white+|i.black-)",
            half,
            "nu*omega",
            Level::Seed,
            Source::Literature,
            "i^5 | (i.black+ | i.white+ | i.black-) is a nu omega-period of (Q,x,y)",
            Some(half_short),
        ),
        claim("i^11", repeat(&i, 11), "id", Level::Seed, Source::Literature, "i^11 is a period of (Q,x,y)", Some(repeat(&i, 10))),
    ];
    e.coxeter = Some(CoxeterData {
        formula: "h_dual(B4)+l".to_owned(),
        values: vec![("h(B4)".to_owned(), 8), ("h_dual(B4)".to_owned(), 7), ("l".to_owned(), 4)],
        claimed_length: 11,
    });
    e
}

/// White vertices 1..=6, black column 7..=12 bottom to top, 13 the extra top black vertex.
fn sine_gordon() -> CatalogEntry {
    let arrows = [
        (8, 7),
        (8, 9),
        (10, 9),
        (10, 11),
        (12, 11),
        (13, 11),
        (7, 1),
        (2, 8),
        (9, 2),
        (3, 10),
        (11, 3),
        (4, 12),
        (11, 4),
        (4, 13),
        (5, 10),
        (9, 5),
        (7, 6),
        (6, 8),
    ];
    let mut e = entry(
        "sine-Gordon",
        "quiver of the sine-Gordon T- and Y-systems, mutation equivalent to D13",
        "{1, .., 13}".to_owned(),
        numeric_labels(13),
        quiver(13, &arrows),
    );
    let bp = zero_based(&[&[8, 10, 12, 13]]).remove(0);
    let bm = zero_based(&[&[7, 9, 11]]).remove(0);
    let nu = Permutation::from_cycles(13, &[vec![0, 1, 2, 3, 4, 5]]).expect("nu");
    let omega = Permutation::from_cycles(13, &[vec![11, 12]]).expect("omega");
    e.sequences = vec![("i.black+".to_owned(), bp.clone()), ("i.black-".to_owned(), bm.clone())];
    e.permutations =
        vec![("nu".to_owned(), nu.clone()), ("omega".to_owned(), omega.clone()), ("nu*omega".to_owned(), nu.compose(&omega))];
    let block = |k: usize| vec![bp.clone(), vec![k], bm.clone()];
    let first = block(0);
    let i: Vec<Vec<usize>> = (0..6).flat_map(block).collect();
    let mut half = repeat(&i, 2);
    half.extend(first.iter().cloned());
    let mut half_short = i.clone();
    half_short.extend(first.iter().cloned());
    e.claims = vec![
        claim("i.black+|(1)|i.black-", first, "nu", Level::Matrix, Source::Literature, "i.black+ | (1) | i.black- is a nu-period of Q", None),
        claim("i", i.clone(), "id", Level::Matrix, Source::Literature, "i is a period of Q", None),
        claim(
            "i^2|(i.black+|(1)|i.black-)",
            half,
            "nu*omega",
            Level::Seed,
            Source::Literature,
            "i^2 | (i.black+ | (1) | i.black-) is a nu omega-period of (Q,x,y)",
            Some(half_short),
        ),
        claim("i^13", repeat(&i, 13), "id", Level::Seed, Source::Literature, "i^13 is a period of (Q,x,y)", Some(repeat(&i, 12))),
    ];
    e.coxeter = Some(CoxeterData {
        formula: "(h(D7)+2+h(D6)+2)/2".to_owned(),
        values: vec![("h(D7)".to_owned(), 12), ("h(D6)".to_owned(), 10)],
        claimed_length: 13,
    });
    e
}

fn del_pezzo3() -> CatalogEntry {
    let arrows = [
        (5, 4),
        (6, 5),
        (3, 2),
        (2, 1),
        (5, 2),
        (5, 2),
        (1, 5),
        (3, 5),
        (2, 4),
        (2, 6),
        (4, 1),
        (6, 3),
        (4, 6),
        (1, 3),
    ];
    let mut e = entry(
        "delPezzo3",
        "quiver of the gauge theory on the del Pezzo 3 surface",
        "{1, .., 6}".to_owned(),
        numeric_labels(6),
        quiver(6, &arrows),
    );
    let rho = Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).expect("rho");
    e.permutations = vec![("rho".to_owned(), rho.clone()), ("rho^2".to_owned(), rho.pow(2))];
    e.sequences = vec![("i".to_owned(), (0..6).collect())];
    e.claims = vec![
        claim("(1,2)", vec![vec![0], vec![1]], "rho^2", Level::Matrix, Source::Literature, "(1,2) is a rho^2-period of Q", None),
        claim("i", (0..6).map(|k| vec![k]).collect(), "id", Level::Matrix, Source::Literature, "i = (1, .., 6) is a period of Q", None),
    ];
    e
}

/// Black column rows 1..=19 are indices 1..=19; white vertex at row `r` (1..=3, bottom
/// to top) of copy `Q_k` is `19 + 3(k-1) + r`.
fn tamely_laced() -> CatalogEntry {
    const ARROWS: &[(usize, usize)] = &[
        (1, 2), (2, 20), (2, 23), (3, 2), (3, 4), (4, 20), (4, 23), (4, 26), (4, 29), (5, 4), (5, 6),
        (6, 20), (6, 23), (6, 26), (6, 29), (6, 33), (7, 6), (7, 8), (8, 20), (8, 23), (8, 27), (8, 30),
        (8, 33), (9, 8), (9, 10), (10, 21), (10, 24), (10, 27), (10, 30), (10, 33), (11, 10), (11, 12),
        (12, 22), (12, 25), (12, 27), (12, 30), (12, 33), (13, 12), (13, 14), (14, 22), (14, 25), (14, 28),
        (14, 31), (14, 33), (15, 14), (15, 16), (16, 22), (16, 25), (16, 28), (16, 31), (17, 16), (17, 18),
        (18, 22), (18, 25), (19, 18), (20, 1), (20, 3), (20, 5), (20, 7), (20, 9), (21, 20), (21, 22),
        (22, 11), (22, 13), (22, 15), (22, 17), (22, 19), (23, 3), (23, 5), (23, 7), (23, 24), (24, 9),
        (24, 11), (25, 13), (25, 15), (25, 17), (25, 24), (26, 3), (26, 5), (26, 7), (27, 9), (27, 11),
        (27, 26), (27, 28), (28, 13), (28, 15), (28, 17), (29, 5), (29, 30), (30, 7), (30, 9), (30, 11),
        (30, 13), (31, 15), (31, 30), (32, 5), (33, 7), (33, 9), (33, 11), (33, 13), (33, 32), (33, 34),
        (34, 15),
    ];
    let white = |k: usize, r: usize| 19 + 3 * (k - 1) + r - 1;
    let mut labels: Vec<String> = (1..=19).map(|r| format!("(*,{r})")).collect();
    labels.extend((1..=5).flat_map(|k| (1..=3).map(move |r| format!("({k},{r})"))));
    let mut e = entry(
        "tamely-laced-level4",
        "level 4 quiver for a tamely laced quantum affinization; five copies glued along the black column",
        "black (*,r) with r in 1..=19; white (k,r) in copy k in 1..=5 with r in 1..=3".to_owned(),
        labels,
        quiver(34, ARROWS),
    );
    e.figure_transcribed = true;
    let bp: Vec<usize> = (0..19).step_by(2).collect();
    let bm: Vec<usize> = (1..19).step_by(2).collect();
    // copies 1, 3, 5 have signs (-, +, -) bottom to top, copies 2, 4 have (+, -, +)
    let wclass = |k: usize, plus: bool| -> Vec<usize> {
        (1..=3).filter(|&r| ((r + k) % 2 == 1) == plus).map(|r| white(k, r)).collect()
    };
    let sigma = [3, 1, 5, 2, 4];
    let mut images: Vec<usize> = (0..19).collect();
    for k in 1..=5 {
        for r in 1..=3 {
            images.push(white(sigma[k - 1], r));
        }
    }
    let nu = Permutation::from_images(images).expect("nu");
    e.permutations = vec![("nu".to_owned(), nu)];
    e.sequences = vec![("i.black+".to_owned(), bp.clone()), ("i.black-".to_owned(), bm.clone())];
    let order = [1, 4, 3, 2, 5];
    let mut i = Vec::new();
    for plus in [true, false] {
        for (a, &k) in order.iter().enumerate() {
            let black = if (a + usize::from(!plus)) % 2 == 0 { bp.clone() } else { bm.clone() };
            i.push(black);
            i.push(wclass(k, plus));
        }
    }
    let first = i[..4].to_vec();
    e.claims = vec![
        claim(
            "i.black+|i.white+(1)|i.black-|i.white+(4)",
            first,
            "nu",
            Level::Matrix,
            Source::Literature,
            "i.black+ | i.white+(1) | i.black- | i.white+(4) is a nu-period of Q",
            None,
        ),
        claim("i", i, "id", Level::Matrix, Source::Literature, "i is a period of Q", None),
    ];
    e
}
