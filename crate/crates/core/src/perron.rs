//! Spectral radius of nonnegative matrices, bracketed by Collatz–Wielandt
//! bounds on each irreducible class.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

const TOLERANCE: f64 = 1e-10;
const MAX_ITERATIONS: usize = 100_000;

/// Strongly connected classes of the directed graph `i -> j` iff `adj[i][j]`.
/// Each class is sorted; classes come out in reverse topological order.
pub fn strongly_connected_classes(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut graph = DiGraph::<(), ()>::with_capacity(n, n * n);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (i, row) in adj.iter().enumerate() {
        for (j, &edge) in row.iter().enumerate() {
            if edge {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    tarjan_scc(&graph)
        .into_iter()
        .map(|class| {
            let mut idx: Vec<usize> = class.into_iter().map(|n| n.index()).collect();
            idx.sort_unstable();
            idx
        })
        .collect()
}

/// Lower and upper bounds on the Perron root of a nonnegative matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerronBracket {
    pub lower: f64,
    pub upper: f64,
}

impl PerronBracket {
    pub fn estimate(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// Brackets the spectral radius of `matrix` (square, nonnegative entries).
///
/// The radius of a reducible matrix is the largest radius among its
/// irreducible diagonal blocks. Each block is shifted by the identity so that
/// power iteration converges even for periodic blocks.
pub fn perron_bracket(matrix: &[Vec<f64>]) -> PerronBracket {
    let adj: Vec<Vec<bool>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| v > 0.0).collect())
        .collect();
    let mut best = PerronBracket {
        lower: 0.0,
        upper: 0.0,
    };
    for class in strongly_connected_classes(&adj) {
        let b = class_bracket(matrix, &class);
        best.lower = best.lower.max(b.lower);
        best.upper = best.upper.max(b.upper);
    }
    best
}

fn class_bracket(matrix: &[Vec<f64>], class: &[usize]) -> PerronBracket {
    if class.len() == 1 {
        let v = matrix[class[0]][class[0]];
        return PerronBracket { lower: v, upper: v };
    }
    let k = class.len();
    let mut x = vec![1.0; k];
    let mut bracket = PerronBracket {
        lower: 0.0,
        upper: f64::INFINITY,
    };
    for _ in 0..MAX_ITERATIONS {
        let y: Vec<f64> = (0..k)
            .map(|a| {
                x[a] + (0..k)
                    .map(|b| matrix[class[a]][class[b]] * x[b])
                    .sum::<f64>()
            })
            .collect();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for a in 0..k {
            let r = y[a] / x[a];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        bracket = PerronBracket {
            lower: lo - 1.0,
            upper: hi - 1.0,
        };
        let norm = y.iter().cloned().fold(0.0f64, f64::max);
        x = y.into_iter().map(|v| v / norm).collect();
        if hi - lo < TOLERANCE * hi {
            break;
        }
    }
    bracket
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> Vec<Vec<f64>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn golden_ratio() {
        let b = perron_bracket(&m(&[&[1.0, 1.0], &[1.0, 0.0]]));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(b.lower <= phi + 1e-12 && phi <= b.upper + 1e-12);
        assert!((b.estimate() - phi).abs() < 1e-9);
    }

    #[test]
    fn periodic_and_reducible() {
        let swap = perron_bracket(&m(&[&[0.0, 1.0], &[1.0, 0.0]]));
        assert!((swap.estimate() - 1.0).abs() < 1e-12);
        let comb = perron_bracket(&m(&[&[1.0, 1.0], &[0.0, 1.0]]));
        assert_eq!(comb.lower, 1.0);
        assert_eq!(comb.upper, 1.0);
        let nil = perron_bracket(&m(&[&[0.0, 1.0], &[0.0, 0.0]]));
        assert_eq!(nil.upper, 0.0);
    }

    #[test]
    fn classes_cover_all_vertices() {
        let adj = vec![
            vec![true, true, false],
            vec![false, false, true],
            vec![false, true, false],
        ];
        let mut classes = strongly_connected_classes(&adj);
        classes.sort();
        assert_eq!(classes, vec![vec![0], vec![1, 2]]);
    }
}
