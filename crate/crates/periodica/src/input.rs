//! User-facing input: seed sources, the sequence mini-language and relabelings.
//!
//! Indices are 1-based everywhere a user types them.
//!
//! Sequence grammar:
//!
//! ```text
//! expr  := item (sep item)*        sep is ',' or '|'
//! item  := index | name | '(' expr ')' ('^' count)?
//! ```
//!
//! A `|` closes a slice and so does each repetition boundary. An expression
//! without any `|` puts every mutation in its own slice, so `(1,2)^5` means ten
//! single mutations while `(1,3|2)^6` has slices `{1,3}` and `{2}`. Names refer
//! to the named sequences of a catalog entry (for example `i+`) and count as a
//! comma-joined group.

use anyhow::{anyhow, bail, Context, Result};
use periodica_core::catalog::{get_entry, CatalogEntry};
use periodica_core::{ExchangeMatrix, Permutation, Quiver};
use serde::{Deserialize, Serialize};

/// Where the initial exchange matrix comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedSource {
    Catalog(String),
    Matrix(Vec<Vec<i64>>),
    /// Arrows `(from, to, multiplicity)` on vertices `1..=n`.
    Quiver { n: usize, arrows: Vec<(usize, usize, u32)> },
}

/// A resolved seed source.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub matrix: ExchangeMatrix,
    pub labels: Vec<String>,
    pub entry: Option<CatalogEntry>,
}

impl SeedSource {
    pub fn resolve(&self) -> Result<Resolved> {
        match self {
            SeedSource::Catalog(name) => {
                let entry = get_entry(name)?;
                Ok(Resolved { matrix: entry.matrix.clone(), labels: entry.labels.clone(), entry: Some(entry) })
            }
            SeedSource::Matrix(rows) => {
                let matrix = ExchangeMatrix::from_rows(rows)?;
                Ok(Resolved { labels: numeric_labels(matrix.n()), matrix, entry: None })
            }
            SeedSource::Quiver { n, arrows } => {
                let mut zero = Vec::with_capacity(arrows.len());
                for &(i, j, m) in arrows {
                    zero.push((to_zero(i, *n)?, to_zero(j, *n)?, m));
                }
                let matrix = Quiver::new(*n, zero)?.to_matrix();
                Ok(Resolved { labels: numeric_labels(*n), matrix, entry: None })
            }
        }
    }
}

pub fn numeric_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn to_zero(i: usize, n: usize) -> Result<usize> {
    if i == 0 || i > n {
        bail!("index {i} out of range 1..={n}");
    }
    Ok(i - 1)
}

/// A parsed sequence as 0-based slices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slices(pub Vec<Vec<usize>>);

impl Slices {
    pub fn flat(&self) -> Vec<usize> {
        self.0.concat()
    }

    pub fn singletons(seq: &[usize]) -> Self {
        Slices(seq.iter().map(|&k| vec![k]).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Index(usize),
    Name(String),
    Group(Vec<(Sep, Node)>, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sep {
    Start,
    Comma,
    Bar,
}

struct Parser<'a> {
    s: &'a [u8],
    at: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.at < self.s.len() && self.s[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.at).copied()
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.s.len() && self.s[self.at].is_ascii_digit() {
            self.at += 1;
        }
        if start == self.at {
            bail!("expected a number at position {}", start + 1);
        }
        std::str::from_utf8(&self.s[start..self.at])?.parse().context("number too large")
    }

    fn expr(&mut self) -> Result<Vec<(Sep, Node)>> {
        let mut items = vec![(Sep::Start, self.item()?)];
        loop {
            let sep = match self.peek() {
                Some(b',') => Sep::Comma,
                Some(b'|') => Sep::Bar,
                _ => return Ok(items),
            };
            self.at += 1;
            items.push((sep, self.item()?));
        }
    }

    fn item(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b'(') => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    bail!("expected ')' at position {}", self.at + 1);
                }
                self.at += 1;
                let times = if self.peek() == Some(b'^') {
                    self.at += 1;
                    self.number()?
                } else {
                    1
                };
                Ok(Node::Group(inner, times))
            }
            Some(c) if c.is_ascii_digit() => Ok(Node::Index(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.at;
                while self.at < self.s.len() && (self.s[self.at].is_ascii_alphanumeric() || b"+-_*'".contains(&self.s[self.at]))
                {
                    self.at += 1;
                }
                Ok(Node::Name(String::from_utf8(self.s[start..self.at].to_vec())?))
            }
            Some(c) => bail!("unexpected character '{}' at position {}", c as char, self.at + 1),
            None => bail!("unexpected end of sequence"),
        }
    }
}

fn has_bar(items: &[(Sep, Node)]) -> bool {
    items.iter().any(|(s, n)| *s == Sep::Bar || matches!(n, Node::Group(inner, _) if has_bar(inner)))
}

struct Builder<'a> {
    n: usize,
    entry: Option<&'a CatalogEntry>,
    singletons: bool,
    slices: Vec<Vec<usize>>,
}

impl Builder<'_> {
    fn close(&mut self) {
        if self.slices.last().is_some_and(|s| !s.is_empty()) {
            self.slices.push(Vec::new());
        }
    }

    fn push(&mut self, k: usize) {
        if self.singletons {
            self.close();
        }
        self.slices.last_mut().unwrap().push(k);
    }

    fn emit(&mut self, items: &[(Sep, Node)]) -> Result<()> {
        for (sep, node) in items {
            if *sep == Sep::Bar {
                self.close();
            }
            match node {
                Node::Index(i) => self.push(to_zero(*i, self.n)?),
                Node::Name(name) => {
                    let seq = self
                        .entry
                        .and_then(|e| e.sequence(name))
                        .ok_or_else(|| anyhow!("unknown sequence name `{name}`"))?
                        .to_vec();
                    for k in seq {
                        self.push(k);
                    }
                }
                Node::Group(inner, times) => {
                    if *times == 0 {
                        bail!("repetition count must be positive");
                    }
                    for _ in 0..*times {
                        self.close();
                        self.emit(inner)?;
                    }
                    self.close();
                }
            }
        }
        Ok(())
    }
}

/// Parse a sequence for a seed with `n` indices.
pub fn parse_sequence(text: &str, n: usize, entry: Option<&CatalogEntry>) -> Result<Slices> {
    let mut p = Parser { s: text.as_bytes(), at: 0 };
    if p.peek().is_none() {
        return Ok(Slices(Vec::new()));
    }
    let items = p.expr()?;
    if p.peek().is_some() {
        bail!("unexpected trailing input at position {}", p.at + 1);
    }
    let mut b = Builder { n, entry, singletons: !has_bar(&items), slices: vec![Vec::new()] };
    b.emit(&items)?;
    b.slices.retain(|s| !s.is_empty());
    Ok(Slices(b.slices))
}

/// Render 0-based slices back into the mini-language.
pub fn format_slices(slices: &[Vec<usize>]) -> String {
    let singletons = slices.iter().all(|s| s.len() == 1);
    let sep = if singletons { "," } else { "|" };
    slices
        .iter()
        .map(|s| s.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(sep)
}

/// A relabeling: `id`, `auto`, a catalog permutation name, or 1-based images such as `2,1,3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NuChoice {
    Fixed(Permutation),
    /// Read off the final `C` matrix.
    Auto,
}

pub fn parse_nu(text: &str, n: usize, entry: Option<&CatalogEntry>) -> Result<NuChoice> {
    let t = text.trim();
    match t {
        "" | "id" => return Ok(NuChoice::Fixed(Permutation::identity(n))),
        "auto" => return Ok(NuChoice::Auto),
        _ => {}
    }
    if t.starts_with(|c: char| c.is_ascii_digit() || c == '[') {
        let images: Vec<usize> = t
            .trim_matches(|c| c == '[' || c == ']')
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| anyhow!("bad image `{x}` in relabeling")).and_then(|i| to_zero(i, n)))
            .collect::<Result<_>>()?;
        if images.len() != n {
            bail!("relabeling has {} images, expected {n}", images.len());
        }
        return Ok(NuChoice::Fixed(Permutation::from_images(images)?));
    }
    let entry = entry.ok_or_else(|| anyhow!("named relabeling `{t}` needs a catalog seed"))?;
    if let Some(p) = entry.permutation(t) {
        return Ok(NuChoice::Fixed(p));
    }
    if let Some((name, power)) = t.split_once('^') {
        let p = entry.permutation(name).ok_or_else(|| anyhow!("unknown relabeling `{name}`"))?;
        return Ok(NuChoice::Fixed(p.pow(power.trim().parse().context("bad power")?)));
    }
    bail!("unknown relabeling `{t}`")
}

/// Parse a JSON matrix such as `[[0,1],[-1,0]]`.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<i64>>> {
    serde_json::from_str(text).context("matrix must be a JSON array of integer rows")
}
