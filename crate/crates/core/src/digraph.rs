//! Directed multigraphs of nonnegative integer matrices: self-loops, edge-path
//! counts, exact-length reachability and primitivity exponents.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::curves::CurveSystem;
use crate::error::Result;
use crate::matrix::IntMatrix;

/// How matrix entries become edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Edge `u -> v` for every unit of `M[v][u]`: `v` appears in the image of `u`.
    #[default]
    Columns,
    /// Edge `u -> v` for every unit of `M[u][v]`.
    Rows,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Columns => f.write_str("columns"),
            Orientation::Rows => f.write_str("rows"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    labels: Vec<String>,
    // adjacency[u][v] = number of edges u -> v
    adjacency: IntMatrix,
    orientation: Orientation,
}

impl Digraph {
    pub fn from_matrix(m: &IntMatrix, orientation: Orientation) -> Result<Self> {
        let n = m.ensure_square()?;
        m.nonnegative()?;
        let adjacency = match orientation {
            Orientation::Columns => m.transpose(),
            Orientation::Rows => m.clone(),
        };
        Ok(Digraph {
            labels: (0..n).map(|i| format!("v{i}")).collect(),
            adjacency,
            orientation,
        })
    }

    /// Digraph of a transition matrix with vertices named by the curve basis.
    pub fn for_curves(sys: &CurveSystem, m: &IntMatrix, orientation: Orientation) -> Result<Self> {
        let mut g = Self::from_matrix(m, orientation)?;
        if g.labels.len() != sys.dimension() {
            return Err(crate::error::Error::DimensionMismatch {
                expected: sys.dimension(),
                got: g.labels.len(),
            });
        }
        g.labels = sys.basis().iter().map(ToString::to_string).collect();
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> &BigInt {
        self.adjacency.get(u, v)
    }

    pub fn edge_count(&self) -> BigInt {
        self.adjacency.entry_sum()
    }

    /// Vertices carrying self-loops, with multiplicity.
    pub fn self_loop_census(&self) -> BTreeMap<usize, BigInt> {
        (0..self.len())
            .filter_map(|i| {
                let d = self.adjacency.get(i, i);
                (!d.is_zero()).then(|| (i, d.clone()))
            })
            .collect()
    }

    /// Number of edge-paths of length `j` leaving each vertex.
    pub fn path_counts(&self, j: usize) -> Vec<BigInt> {
        let sparse = self.adjacency.sparse_rows();
        let mut counts = vec![BigInt::one(); self.len()];
        for _ in 0..j {
            counts = sparse
                .iter()
                .map(|row| row.iter().map(|(v, a)| a * &counts[*v]).sum())
                .collect();
        }
        counts
    }

    /// Vertices at the end of some path of length exactly `k` from `v`.
    pub fn exact_length_cover(&self, v: usize, k: usize) -> BTreeSet<usize> {
        let succ = self.successors();
        let mut frontier: BTreeSet<usize> = BTreeSet::from([v]);
        for _ in 0..k {
            frontier = frontier
                .iter()
                .flat_map(|&u| succ[u].iter().copied())
                .collect();
        }
        frontier
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|u| {
                (0..self.len())
                    .filter(|&v| !self.adjacency.get(u, v).is_zero())
                    .collect()
            })
            .collect()
    }

    pub fn is_strongly_connected(&self) -> bool {
        adjacency_strongly_connected(&self.successors())
    }

    /// Gcd of all cycle lengths; 0 for a digraph without cycles.
    pub fn period(&self) -> usize {
        period_of(&self.successors())
    }

    /// Edge list, one `u v multiplicity` line per nonzero entry.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for u in 0..self.len() {
            for v in 0..self.len() {
                let a = self.adjacency.get(u, v);
                if !a.is_zero() {
                    let _ = writeln!(out, "{} {} {}", self.labels[u], self.labels[v], a);
                }
            }
        }
        out
    }
}

fn adjacency_strongly_connected(succ: &[Vec<usize>]) -> bool {
    let n = succ.len();
    if n == 0 {
        return false;
    }
    let mut pred = vec![Vec::new(); n];
    for (u, vs) in succ.iter().enumerate() {
        for &v in vs {
            pred[v].push(u);
        }
    }
    reach_all(succ) && reach_all(&pred)
}

fn reach_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Period of a strongly connected digraph from BFS levels:
/// `gcd(level[u] + 1 - level[v])` over all edges.
fn period_of(succ: &[Vec<usize>]) -> usize {
    let n = succ.len();
    if n == 0 {
        return 0;
    }
    let mut level: Vec<Option<i64>> = vec![None; n];
    level[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let lu = level[u].expect("queued vertices have a level");
        for &v in &succ[u] {
            if level[v].is_none() {
                level[v] = Some(lu + 1);
                queue.push_back(v);
            }
        }
    }
    let mut g: i64 = 0;
    for (u, vs) in succ.iter().enumerate() {
        let Some(lu) = level[u] else { continue };
        for &v in vs {
            if let Some(lv) = level[v] {
                g = g.gcd(&(lu + 1 - lv).abs());
            }
        }
    }
    g as usize
}

fn matrix_successors(m: &IntMatrix) -> Vec<Vec<usize>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(j, _)| j)
                .collect()
        })
        .collect()
}

/// Irreducibility of a square matrix (strong connectivity of its digraph;
/// orientation does not matter).
pub fn matrix_is_irreducible(m: &IntMatrix) -> bool {
    m.is_square() && adjacency_strongly_connected(&matrix_successors(m))
}

/// Period of an irreducible matrix; 1 means primitive.
pub fn matrix_period(m: &IntMatrix) -> usize {
    period_of(&matrix_successors(m))
}

/// Least `r` in `1..=cap` with `M^r` entrywise positive, using exact integer
/// powers. `None` if no such `r` exists up to `cap`.
pub fn primitivity_exponent(m: &IntMatrix, cap: usize) -> Result<Option<usize>> {
    let n = m.ensure_square()?;
    m.nonnegative()?;
    if n == 0 {
        return Ok(None);
    }
    let mut power = m.clone();
    for r in 1..=cap {
        if power.is_strictly_positive() {
            return Ok(Some(r));
        }
        if r < cap {
            power = m.mul(&power)?;
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn identity_digraph() {
        let g = Digraph::from_matrix(&IntMatrix::identity(3), Orientation::Columns).unwrap();
        assert_eq!(g.self_loop_census().len(), 3);
        assert!(!g.is_strongly_connected());
        assert_eq!(g.edge_count(), BigInt::from(3));
        assert_eq!(primitivity_exponent(&IntMatrix::identity(3), 50).unwrap(), None);
    }

    #[test]
    fn single_loop_vertex() {
        let g = Digraph::from_matrix(&m(&[vec![1]]), Orientation::Rows).unwrap();
        assert!(g.is_strongly_connected());
        assert_eq!(g.period(), 1);
    }

    #[test]
    fn orientation_transposes() {
        let a = m(&[vec![0, 2], vec![1, 0]]);
        let cols = Digraph::from_matrix(&a, Orientation::Columns).unwrap();
        let rows = Digraph::from_matrix(&a, Orientation::Rows).unwrap();
        // M[0][1] = 2: two edges 1 -> 0 under columns, 0 -> 1 under rows
        assert_eq!(cols.multiplicity(1, 0), &BigInt::from(2));
        assert_eq!(rows.multiplicity(0, 1), &BigInt::from(2));
        let rows_t = Digraph::from_matrix(&a.transpose(), Orientation::Columns).unwrap();
        assert_eq!(rows.path_counts(5), rows_t.path_counts(5));
        assert_eq!(cols.edge_count(), BigInt::from(3));
    }

    #[test]
    fn fibonacci_exponent() {
        assert_eq!(
            primitivity_exponent(&m(&[vec![1, 1], vec![1, 0]]), 10).unwrap(),
            Some(2)
        );
        assert_eq!(
            primitivity_exponent(&m(&[vec![1, 1], vec![1, 0]]), 1).unwrap(),
            None
        );
    }

    #[test]
    fn path_counts_match_powers() {
        let a = m(&[vec![1, 1, 0], vec![0, 0, 2], vec![1, 0, 0]]);
        let g = Digraph::from_matrix(&a, Orientation::Rows).unwrap();
        for j in 0..6 {
            assert_eq!(g.path_counts(j), a.pow(j as u32).unwrap().row_sums());
        }
        assert!(g.path_counts(0).iter().all(|c| c == &BigInt::one()));
    }

    #[test]
    fn periods() {
        let cycle = m(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        assert_eq!(matrix_period(&cycle), 3);
        assert!(matrix_is_irreducible(&cycle));
        let g = Digraph::from_matrix(&cycle, Orientation::Columns).unwrap();
        assert_eq!(g.exact_length_cover(0, 3), BTreeSet::from([0]));
        assert_eq!(g.exact_length_cover(0, 0), BTreeSet::from([0]));
        let with_chord = m(&[vec![0, 1, 1], vec![0, 0, 1], vec![1, 0, 0]]);
        assert_eq!(matrix_period(&with_chord), 1);
    }

    #[test]
    fn edge_list() {
        let g = Digraph::from_matrix(&m(&[vec![0, 2], vec![1, 0]]), Orientation::Rows).unwrap();
        assert_eq!(g.to_edge_list(), "v0 v1 2\nv1 v0 1\n");
    }
}
