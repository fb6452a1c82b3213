//! The complex and split-real |1|-graded simple Lie algebras, row by row.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsystem::{build_root_system, valid_one_gradings, Series, SeriesLabel};

/// One graded algebra together with its classification row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub series: Series,
    pub rank: usize,
    pub node: usize,
    /// The algebra `g`, e.g. `sl(4,K)`.
    pub algebra: String,
    /// The reductive part `g_0`.
    pub g0: String,
    /// The `g_0`-module `g_-1`.
    pub g_minus: String,
    /// Dimension of `g_-1` predicted by the row.
    pub dim_minus: usize,
}

/// Row of the classification for a `(series, rank, node)` triple.
pub fn entry(label: SeriesLabel, node: usize) -> Result<CatalogEntry> {
    let n = label.rank;
    let invalid = Error::InvalidNode {
        series: label.series,
        rank: n,
        node,
    };
    if node == 0 || node > n {
        return Err(invalid);
    }
    let row = |algebra: String, g0: String, g_minus: String, dim_minus: usize| CatalogEntry {
        series: label.series,
        rank: n,
        node,
        algebra,
        g0,
        g_minus,
        dim_minus,
    };
    Ok(match label.series {
        Series::A => {
            let (p, q) = (node, n + 1 - node);
            if p == 1 || q == 1 {
                row(format!("sl({},K)", n + 1), format!("gl({n},K)"), format!("K^{n}"), n)
            } else {
                row(
                    format!("sl({p}+{q},K)"),
                    format!("s(gl({p},K)+gl({q},K))"),
                    format!("K^{p}* (x) K^{q}"),
                    p * q,
                )
            }
        }
        Series::B if node == 1 => {
            let m = 2 * n - 1;
            row(format!("so({},K)", m + 2), format!("cso({m},K)"), format!("K^{m}"), m)
        }
        Series::C if node == n => row(
            format!("sp({},K)", 2 * n),
            format!("gl({n},K)"),
            format!("S^2 K^{n}"),
            n * (n + 1) / 2,
        ),
        Series::D if node == 1 => {
            let m = 2 * n - 2;
            row(format!("so({},K)", 2 * n), format!("cso({m},K)"), format!("K^{m}"), m)
        }
        Series::D if node + 1 >= n => row(
            format!("so({n},{n})"),
            format!("gl({n},K)"),
            format!("L^2 K^{n}"),
            n * (n - 1) / 2,
        ),
        Series::E6 if node == 1 || node == 6 => {
            row("E6".into(), "cspin(10,C)".into(), "C^16".into(), 16)
        }
        Series::E7 if node == 7 => row("E7".into(), "C + E6".into(), "C^27".into(), 27),
        Series::E8 | Series::F4 | Series::G2 => return Err(Error::NoOneGrading(label.series)),
        _ => return Err(invalid),
    })
}

/// A family of rows over a rank range, for listings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFamily {
    pub series: Series,
    pub ranks: String,
    pub nodes: String,
    pub algebra: String,
    pub g0: String,
    pub g_minus: String,
    pub dim_minus: String,
}

/// All families, in series order.
pub fn families() -> Vec<CatalogFamily> {
    let fam = |series, ranks: &str, nodes: &str, algebra: &str, g0: &str, g_minus: &str, dim: &str| CatalogFamily {
        series,
        ranks: ranks.into(),
        nodes: nodes.into(),
        algebra: algebra.into(),
        g0: g0.into(),
        g_minus: g_minus.into(),
        dim_minus: dim.into(),
    };
    vec![
        fam(Series::A, "n>=2", "1, n", "sl(n+1,K)", "gl(n,K)", "K^n", "n"),
        fam(Series::A, "n>=3", "p, 1<p<n", "sl(p+q,K)", "s(gl(p,K)+gl(q,K))", "K^p* (x) K^q", "pq, q=n+1-p"),
        fam(Series::B, "n>=2", "1", "so(m+2,K), m=2n-1", "cso(m,K)", "K^m", "m"),
        fam(Series::C, "n>=3", "n", "sp(2n,K)", "gl(n,K)", "S^2 K^n", "n(n+1)/2"),
        fam(Series::D, "n>=4", "1", "so(m+2,K), m=2n-2", "cso(m,K)", "K^m", "m"),
        fam(Series::D, "n>=4", "n-1, n", "so(n,n)", "gl(n,K)", "L^2 K^n", "n(n-1)/2"),
        fam(Series::E6, "6", "1, 6", "E6", "cspin(10,C)", "C^16", "16"),
        fam(Series::E7, "7", "7", "E7", "C + E6", "C^27", "27"),
    ]
}

/// Graded nodes of a concrete label, each with its row.
pub fn entries_for(label: SeriesLabel) -> Result<Vec<CatalogEntry>> {
    let rs = build_root_system(label)?;
    let nodes = valid_one_gradings(&rs);
    if nodes.is_empty() {
        return Err(Error::NoOneGrading(label.series));
    }
    nodes.into_iter().map(|node| entry(label, node)).collect()
}

/// For each exceptional series without a row, whether the highest-root scan
/// confirms that no node gives a |1|-grading.
pub fn completeness() -> Vec<(Series, bool)> {
    [Series::E8, Series::F4, Series::G2]
        .into_iter()
        .map(|s| {
            let none = SeriesLabel::exceptional(s)
                .and_then(build_root_system)
                .map(|rs| valid_one_gradings(&rs).is_empty())
                .unwrap_or(false);
            (s, none)
        })
        .collect()
}

/// Node of the E7 grading with `dim g_-1 = 27`.
pub const E7_27_NODE: usize = 7;

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: Series, n: usize) -> SeriesLabel {
        SeriesLabel::new(s, n).unwrap()
    }

    #[test]
    fn graded_nodes_have_rows() {
        for (s, ranks) in [(Series::A, 2..=6), (Series::B, 2..=5), (Series::C, 3..=6), (Series::D, 4..=7)] {
            for n in ranks {
                assert!(entries_for(label(s, n)).is_ok(), "{s}{n}");
            }
        }
        assert_eq!(entries_for(label(Series::E6, 6)).unwrap().len(), 2);
        let e7 = entries_for(label(Series::E7, 7)).unwrap();
        assert_eq!(e7.len(), 1);
        assert_eq!((e7[0].node, e7[0].dim_minus), (E7_27_NODE, 27));
    }

    #[test]
    fn c_series_lists_last_node() {
        let rows = entries_for(label(Series::C, 4)).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].node, 4);
        assert_eq!(rows[0].g_minus, "S^2 K^4");
    }

    #[test]
    fn a3_splits() {
        let rows = entries_for(label(Series::A, 3)).unwrap();
        let dims: Vec<usize> = rows.iter().map(|r| r.dim_minus).collect();
        assert_eq!(dims, vec![3, 4, 3]);
        assert_eq!(rows[1].algebra, "sl(2+2,K)");
    }

    #[test]
    fn exceptional_completeness() {
        assert!(completeness().iter().all(|(_, none)| *none));
        assert_eq!(entries_for(label(Series::E8, 8)), Err(Error::NoOneGrading(Series::E8)));
    }

    #[test]
    fn invalid_nodes() {
        assert!(entry(label(Series::C, 3), 1).is_err());
        assert!(entry(label(Series::A, 3), 4).is_err());
    }
}
