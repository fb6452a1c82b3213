//! Root systems of the classical and exceptional series, built by reflection
//! closure from the Cartan matrix.
//!
//! Nodes follow Bourbaki numbering and are 1-based at every public entry
//! point; coordinate vectors are 0-based.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Series {
    /// Rank of an exceptional series, `None` for the classical ones.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Series::E6 => Some(6),
            Series::E7 => Some(7),
            Series::E8 => Some(8),
            Series::F4 => Some(4),
            Series::G2 => Some(2),
            _ => None,
        }
    }

    /// Smallest rank accepted for a classical series. The floors keep
    /// `dim g_-1 > 1` and avoid the low-rank coincidences (C2 = B2, D3 = A3).
    pub fn min_rank(self) -> usize {
        match self {
            Series::A | Series::B => 2,
            Series::C => 3,
            Series::D => 4,
            other => other.fixed_rank().unwrap_or(1),
        }
    }

    pub fn all() -> [Series; 9] {
        use Series::*;
        [A, B, C, D, E6, E7, E8, F4, G2]
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::E6 => "E6",
            Series::E7 => "E7",
            Series::E8 => "E8",
            Series::F4 => "F4",
            Series::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for Series {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E6" => Ok(Series::E6),
            "E7" => Ok(Series::E7),
            "E8" => Ok(Series::E8),
            "F4" => Ok(Series::F4),
            "G2" => Ok(Series::G2),
            other => Err(format!("unknown series '{other}'")),
        }
    }
}

/// A Dynkin type together with its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeriesLabel {
    pub series: Series,
    pub rank: usize,
}

impl SeriesLabel {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series.fixed_rank() {
            Some(r) => rank == r,
            None => rank >= series.min_rank(),
        };
        if ok {
            Ok(Self { series, rank })
        } else {
            Err(Error::InvalidRank { series, rank })
        }
    }

    /// Label of an exceptional series at its only rank.
    pub fn exceptional(series: Series) -> Result<Self> {
        let rank = series.fixed_rank().ok_or(Error::InvalidRank { series, rank: 0 })?;
        Self::new(series, rank)
    }

    /// Number of roots predicted by the closed formula for the series.
    pub fn classical_root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1),
            Series::B | Series::C => 2 * n * n,
            Series::D => 2 * n * (n - 1),
            Series::E6 => 72,
            Series::E7 => 126,
            Series::E8 => 240,
            Series::F4 => 48,
            Series::G2 => 12,
        }
    }
}

impl fmt::Display for SeriesLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.series.fixed_rank() {
            Some(_) => write!(f, "{}", self.series),
            None => write!(f, "{}{}", self.series, self.rank),
        }
    }
}

/// A root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub coords: Vec<i64>,
    pub is_positive: bool,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    /// Coefficient of the simple root at `node` (1-based).
    pub fn grade(&self, node: usize) -> i64 {
        self.coords[node - 1]
    }
}

/// Coefficient of the crossed simple root `node` (1-based) in `r`.
pub fn alpha_grade(r: &Root, node: usize) -> i64 {
    r.grade(node)
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: SeriesLabel,
    cartan: Vec<Vec<i64>>,
    /// Squared lengths of the simple roots (short roots have length² 2).
    norms: Vec<i64>,
    /// Positive roots in order, then their negatives in the same order.
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
}

fn cartan_and_norms(label: SeriesLabel) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = label.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    let mut norms = vec![2i64; n];
    match label.series {
        Series::A => (0..n - 1).for_each(|i| link(&mut a, i, i + 1)),
        Series::B => {
            (0..n - 1).for_each(|i| link(&mut a, i, i + 1));
            a[n - 1][n - 2] = -2;
            norms = vec![4; n];
            norms[n - 1] = 2;
        }
        Series::C => {
            (0..n - 1).for_each(|i| link(&mut a, i, i + 1));
            a[n - 2][n - 1] = -2;
            norms[n - 1] = 4;
        }
        Series::D => {
            (0..n - 2).for_each(|i| link(&mut a, i, i + 1));
            link(&mut a, n - 3, n - 1);
        }
        Series::E6 | Series::E7 | Series::E8 => {
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            (2..n - 1).for_each(|i| link(&mut a, i, i + 1));
        }
        Series::F4 => {
            link(&mut a, 0, 1);
            link(&mut a, 1, 2);
            link(&mut a, 2, 3);
            a[2][1] = -2;
            norms = vec![4, 4, 2, 2];
        }
        Series::G2 => {
            a[0][1] = -3;
            a[1][0] = -1;
            norms = vec![2, 6];
        }
    }
    (a, norms)
}

impl RootSystem {
    pub fn label(&self) -> SeriesLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.label.rank
    }

    /// `cartan()[i][j] = <alpha_i^vee, alpha_j>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn norms(&self) -> &[i64] {
        &self.norms
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive()]
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.roots[..self.rank()]
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        self.index.contains_key(coords)
    }

    pub fn highest_root(&self) -> &Root {
        &self.roots[self.num_positive() - 1]
    }

    /// Invariant form `(x, y)` on simple-root coordinates.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        let mut total = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                total += x[i] * y[j] * self.norms[i] * self.cartan[i][j];
            }
        }
        total / 2
    }

    /// `<v, alpha_i^vee>` for 0-based `i`.
    pub fn coroot_pairing(&self, v: &[i64], i: usize) -> i64 {
        v.iter().zip(&self.cartan[i]).map(|(x, a)| x * a).sum()
    }

    pub fn reflect(&self, v: &[i64], i: usize) -> Vec<i64> {
        let c = self.coroot_pairing(v, i);
        let mut out = v.to_vec();
        out[i] -= c;
        out
    }

    /// Dynkin neighbours of a 1-based node.
    pub fn neighbours(&self, node: usize) -> Vec<usize> {
        let i = node - 1;
        (0..self.rank())
            .filter(|&j| j != i && self.cartan[i][j] != 0)
            .map(|j| j + 1)
            .collect()
    }
}

/// Builds the root system by reflection closure of the simple roots.
pub fn build_root_system(label: SeriesLabel) -> Result<RootSystem> {
    let label = SeriesLabel::new(label.series, label.rank)?;
    let (cartan, norms) = cartan_and_norms(label);
    let n = label.rank;
    let mut proto = RootSystem {
        label,
        cartan,
        norms,
        roots: Vec::new(),
        index: HashMap::new(),
    };

    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let w = proto.reflect(&v, i);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }

    let mut positive: Vec<Vec<i64>> = seen.into_iter().filter(|v| v.iter().all(|&c| c >= 0)).collect();
    // height first, then lexicographically decreasing so the simple roots
    // come out as alpha_1, ..., alpha_n
    positive.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let mut roots: Vec<Root> = positive
        .iter()
        .map(|c| Root {
            coords: c.clone(),
            is_positive: true,
        })
        .collect();
    roots.extend(positive.iter().map(|c| Root {
        coords: c.iter().map(|x| -x).collect(),
        is_positive: false,
    }));
    proto.index = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.coords.clone(), i))
        .collect();
    proto.roots = roots;
    Ok(proto)
}

/// Nodes (1-based) whose crossing yields a |1|-grading: exactly those where
/// the highest root has coefficient 1.
pub fn valid_one_gradings(rs: &RootSystem) -> Vec<usize> {
    let top = rs.highest_root();
    (1..=rs.rank()).filter(|&node| top.grade(node) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(series: Series, rank: usize) -> RootSystem {
        build_root_system(SeriesLabel::new(series, rank).unwrap()).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(rs(Series::A, 2).roots().len(), 6);
        assert_eq!(rs(Series::C, 3).roots().len(), 18);
        let e7 = rs(Series::E7, 7);
        assert_eq!(e7.roots().len(), 126);
        assert_eq!(e7.roots().len() + e7.rank(), 133);
    }

    #[test]
    fn rank_bounds() {
        assert!(SeriesLabel::new(Series::A, 1).is_err());
        assert!(SeriesLabel::new(Series::C, 2).is_err());
        assert!(SeriesLabel::new(Series::D, 3).is_err());
        assert!(SeriesLabel::new(Series::E6, 7).is_err());
        assert!(SeriesLabel::new(Series::B, 2).is_ok());
    }

    #[test]
    fn simple_roots_first() {
        let r = rs(Series::D, 5);
        for (i, s) in r.simple_roots().iter().enumerate() {
            let mut e = vec![0; 5];
            e[i] = 1;
            assert_eq!(s.coords, e);
        }
    }

    #[test]
    fn grade_readoff() {
        let c3 = rs(Series::C, 3);
        assert_eq!(alpha_grade(&c3.simple_roots()[0], 1), 1);
        assert_eq!(alpha_grade(&c3.simple_roots()[1], 1), 0);
        assert_eq!(c3.highest_root().coords, vec![2, 2, 1]);
        assert_eq!(alpha_grade(c3.highest_root(), 1), 2);
    }

    #[test]
    fn one_gradings_by_series() {
        assert_eq!(valid_one_gradings(&rs(Series::A, 4)), vec![1, 2, 3, 4]);
        assert_eq!(valid_one_gradings(&rs(Series::B, 3)), vec![1]);
        assert_eq!(valid_one_gradings(&rs(Series::C, 4)), vec![4]);
        assert_eq!(valid_one_gradings(&rs(Series::D, 5)), vec![1, 4, 5]);
        assert_eq!(valid_one_gradings(&rs(Series::E6, 6)), vec![1, 6]);
        assert_eq!(valid_one_gradings(&rs(Series::E7, 7)), vec![7]);
        for s in [Series::E8, Series::F4, Series::G2] {
            let r = build_root_system(SeriesLabel::exceptional(s).unwrap()).unwrap();
            assert!(valid_one_gradings(&r).is_empty(), "{s}");
        }
    }

    #[test]
    fn negation_and_reflection_closure() {
        for (s, n) in [(Series::B, 4), (Series::C, 3), (Series::F4, 4), (Series::G2, 2)] {
            let r = rs(s, n);
            for root in r.roots() {
                let neg: Vec<i64> = root.coords.iter().map(|x| -x).collect();
                assert!(r.is_root(&neg));
                for i in 0..n {
                    assert!(r.is_root(&r.reflect(&root.coords, i)));
                }
            }
        }
    }
}
