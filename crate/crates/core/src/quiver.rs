//! Quivers without loops or 2-cycles.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: BTreeMap<(usize, usize), u32>,
}

impl Quiver {
    /// Arrows are `(from, to, multiplicity)`; repeated pairs accumulate.
    pub fn new(n: usize, arrows: impl IntoIterator<Item = (usize, usize, u32)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, j, m) in arrows {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange { index: i.max(j), n });
            }
            if i == j {
                return Err(Error::QuiverLoop(i));
            }
            if m > 0 {
                *map.entry((i, j)).or_insert(0) += m;
            }
        }
        if let Some(&(i, j)) = map.keys().find(|&&(i, j)| map.contains_key(&(j, i))) {
            return Err(Error::QuiverTwoCycle(i, j));
        }
        Ok(Self { n, arrows: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.arrows.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.arrows.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `b_ij` arrows from `i` to `j` when `b_ij > 0`.
    pub fn to_matrix(&self) -> ExchangeMatrix {
        let n = self.n;
        let mut b = alloc::vec![0i64; n * n];
        for (&(i, j), &m) in &self.arrows {
            b[i * n + j] = m as i64;
            b[j * n + i] = -(m as i64);
        }
        ExchangeMatrix::from_flat(n, b).expect("quiver matrices are skew symmetric")
    }

    pub fn from_matrix(b: &ExchangeMatrix) -> Result<Self> {
        if !b.is_skew_symmetric() {
            return Err(Error::Domain("only skew-symmetric matrices correspond to quivers".into()));
        }
        let n = b.n();
        let arrows = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| b.get(i, j) > 0)
            .map(|(i, j)| (i, j, b.get(i, j) as u32));
        Self::new(n, arrows.collect::<Vec<_>>())
    }

    /// Quiver mutation: compose paths through `k`, cancel 2-cycles, reverse arrows at `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange { index: k, n: self.n });
        }
        let mut net: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (&(i, j), &m) in &self.arrows {
            if i == k || j == k {
                *net.entry((j, i)).or_insert(0) += m as i64;
            } else {
                *net.entry((i, j)).or_insert(0) += m as i64;
            }
        }
        let ins: Vec<(usize, u32)> = self.arrows.iter().filter(|(&(_, j), _)| j == k).map(|(&(i, _), &m)| (i, m)).collect();
        let outs: Vec<(usize, u32)> = self.arrows.iter().filter(|(&(i, _), _)| i == k).map(|(&(_, j), &m)| (j, m)).collect();
        for &(i, a) in &ins {
            for &(j, c) in &outs {
                *net.entry((i, j)).or_insert(0) += a as i64 * c as i64;
            }
        }
        // cancel opposite pairs
        let mut arrows = BTreeMap::new();
        for (&(i, j), &m) in &net {
            let back = net.get(&(j, i)).copied().unwrap_or(0);
            let left = m - back;
            if left > 0 {
                arrows.insert((i, j), u32::try_from(left).map_err(|_| Error::Overflow)?);
            }
        }
        Ok(Self { n: self.n, arrows })
    }

    pub fn opposite(&self) -> Self {
        Self { n: self.n, arrows: self.arrows.iter().map(|(&(i, j), &m)| ((j, i), m)).collect() }
    }

    /// Graphviz rendering with 1-based vertex labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        for v in 0..self.n {
            let _ = writeln!(s, "  {} ;", v + 1);
        }
        for (&(i, j), &m) in &self.arrows {
            let label = if m > 1 { format!(" [label=\"{m}\"]") } else { String::new() };
            let _ = writeln!(s, "  {} -> {}{label};", i + 1, j + 1);
        }
        s.push_str("}\n");
        s
    }
}
