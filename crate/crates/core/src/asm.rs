//! Alternating sign matrices and their coloured bipartite graphs.
//!
//! A sign matrix over {-1, 0, 1} is an ASM when every row and column sums to
//! one and the non-zero entries of each line alternate in sign. The graph of
//! an ASM has a vertex per row and per column, an edge where the entry is
//! non-zero, coloured blue for +1 and red for -1.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, Colouring, Edge, Graph};

/// A rectangular matrix with entries in {-1, 0, +1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    entries: Vec<Vec<i8>>,
}

impl SignMatrix {
    pub fn new(entries: Vec<Vec<i8>>) -> Result<SignMatrix> {
        if entries.is_empty() || entries[0].is_empty() {
            return Err(Error::Malformed("matrix must be at least 1x1".into()));
        }
        let width = entries[0].len();
        for row in &entries {
            if row.len() != width {
                return Err(Error::Malformed("ragged matrix rows".into()));
            }
            if let Some(bad) = row.iter().find(|&&x| !(-1..=1).contains(&x)) {
                return Err(Error::Malformed(format!("entry {bad} outside {{-1,0,1}}")));
            }
        }
        Ok(SignMatrix { entries })
    }

    /// Parses rows of whitespace-separated entries, one row per line.
    pub fn parse(text: &str) -> Result<SignMatrix> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: Vec<i8> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i8>()
                        .map_err(|_| Error::Malformed(format!("bad matrix entry {tok:?}")))
                })
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        SignMatrix::new(rows)
    }

    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i][j]
    }
}

fn line_is_alternating_sum_one(values: impl Iterator<Item = i8>) -> bool {
    let mut sum = 0i32;
    let mut last_sign = 0i8;
    for v in values {
        if v != 0 {
            if v == last_sign {
                return false;
            }
            last_sign = v;
        }
        sum += v as i32;
    }
    sum == 1
}

/// True iff every row and column sums to 1 and non-zero entries alternate in
/// sign. This forces the first and last non-zero of every line to be +1.
pub fn is_asm(m: &SignMatrix) -> bool {
    let rows_ok = m
        .entries
        .iter()
        .all(|row| line_is_alternating_sum_one(row.iter().copied()));
    let cols_ok = (0..m.cols())
        .all(|j| line_is_alternating_sum_one(m.entries.iter().map(|row| row[j])));
    rows_ok && cols_ok
}

fn row_name(i: usize) -> String {
    format!("r{}", i + 1)
}

fn col_name(j: usize) -> String {
    format!("c{}", j + 1)
}

/// Converts an ASM to its coloured bipartite graph: vertices `r1..rk`,
/// `c1..cl`; row i and column j adjacent iff the (i, j) entry is non-zero,
/// blue for +1 and red for -1.
pub fn asm_to_asbg(m: &SignMatrix) -> Result<ColouredGraph> {
    if !is_asm(m) {
        return Err(Error::NotAnAsm("row/column sum or alternation fails".into()));
    }
    let mut vertices: Vec<String> = (0..m.rows()).map(row_name).collect();
    vertices.extend((0..m.cols()).map(col_name));
    let mut edges = Vec::new();
    let mut colouring = Colouring::default();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if v != 0 {
                edges.push((row_name(i), col_name(j)));
                let colour = if v > 0 { Colour::Blue } else { Colour::Red };
                colouring.set(Edge::new(row_name(i), col_name(j)), colour);
            }
        }
    }
    let graph = Graph::new(&vertices, &edges)?;
    ColouredGraph::new(graph, colouring)
}

/// Reads a sign matrix back off a coloured bipartite graph: rows and columns
/// ordered by the given vertex lists, +1 for blue, -1 for red, 0 for a
/// non-edge.
pub fn asbg_to_asm(
    cg: &ColouredGraph,
    row_order: &[String],
    col_order: &[String],
) -> Result<SignMatrix> {
    if let Some(isolated) = cg
        .graph
        .vertex_names()
        .iter()
        .find(|v| cg.graph.degree(v) == 0)
    {
        return Err(Error::OrderMismatch(format!(
            "graph has isolated vertex {isolated:?}"
        )));
    }
    let rows: BTreeSet<&str> = row_order.iter().map(|s| s.as_str()).collect();
    let cols: BTreeSet<&str> = col_order.iter().map(|s| s.as_str()).collect();
    if rows.len() != row_order.len() || cols.len() != col_order.len() {
        return Err(Error::OrderMismatch("orders contain duplicates".into()));
    }
    let p1: BTreeSet<&str> = cg.bipartition.part1.iter().map(|s| s.as_str()).collect();
    let p2: BTreeSet<&str> = cg.bipartition.part2.iter().map(|s| s.as_str()).collect();
    let parts_match = (rows == p1 && cols == p2) || (rows == p2 && cols == p1);
    if !parts_match {
        return Err(Error::OrderMismatch(
            "orders are not permutations of the two parts".into(),
        ));
    }
    let mut entries = vec![vec![0i8; col_order.len()]; row_order.len()];
    for (i, r) in row_order.iter().enumerate() {
        for (j, c) in col_order.iter().enumerate() {
            if cg.graph.has_edge(r, c) {
                entries[i][j] = match cg.colouring.get(&Edge::new(r.as_str(), c.as_str())) {
                    Some(Colour::Blue) => 1,
                    Some(Colour::Red) => -1,
                    None => unreachable!("colouring is total"),
                };
            }
        }
    }
    SignMatrix::new(entries)
}

/// Natural (sorted) row/column orders of a coloured graph: part1 as rows.
pub fn natural_orders(cg: &ColouredGraph) -> (Vec<String>, Vec<String>) {
    (
        cg.bipartition.part1.iter().cloned().collect(),
        cg.bipartition.part2.iter().cloned().collect(),
    )
}

/// All rows of length `n` whose prefix sums stay in {0, 1} and whose total is
/// 1; these are exactly the rows an ASM may contain.
fn candidate_rows(n: usize) -> Vec<Vec<i8>> {
    let mut out = Vec::new();
    let mut row = vec![0i8; n];
    fn rec(row: &mut Vec<i8>, pos: usize, sum: i8, out: &mut Vec<Vec<i8>>) {
        if pos == row.len() {
            if sum == 1 {
                out.push(row.clone());
            }
            return;
        }
        for v in [-1i8, 0, 1] {
            let s = sum + v;
            if (0..=1).contains(&s) {
                row[pos] = v;
                rec(row, pos + 1, s, out);
            }
        }
        row[pos] = 0;
    }
    rec(&mut row, 0, 0, &mut out);
    out
}

/// Counts n-by-n alternating sign matrices by row-by-row backtracking with
/// column partial-sum pruning. Supports n up to 5.
pub fn count_asms(n: u32) -> Result<u64> {
    if !(1..=5).contains(&n) {
        return Err(Error::UnsupportedCountSize(n));
    }
    let n = n as usize;
    let rows = candidate_rows(n);
    // An n x n {-1,0,1} matrix is an ASM iff all row and column prefix sums
    // lie in {0,1} and all full sums are 1.
    fn rec(rows: &[Vec<i8>], col_sums: &mut [i8], depth: usize, n: usize) -> u64 {
        if depth == n {
            return u64::from(col_sums.iter().all(|&s| s == 1));
        }
        let mut total = 0;
        'rows: for row in rows {
            for (s, &v) in col_sums.iter().zip(row) {
                if !(0..=1).contains(&(s + v)) {
                    continue 'rows;
                }
            }
            for (s, &v) in col_sums.iter_mut().zip(row) {
                *s += v;
            }
            total += rec(rows, col_sums, depth + 1, n);
            for (s, &v) in col_sums.iter_mut().zip(row) {
                *s -= v;
            }
        }
        total
    }
    let mut col_sums = vec![0i8; n];
    Ok(rec(&rows, &mut col_sums, 0, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(n: usize) -> SignMatrix {
        let entries = (0..n)
            .map(|i| (0..n).map(|j| i8::from(i == j)).collect())
            .collect();
        SignMatrix::new(entries).unwrap()
    }

    fn central_minus() -> SignMatrix {
        SignMatrix::parse("0 1 0\n1 -1 1\n0 1 0").unwrap()
    }

    #[test]
    fn identity_is_asm() {
        assert!(is_asm(&identity(3)));
    }

    #[test]
    fn central_minus_is_asm() {
        assert!(is_asm(&central_minus()));
    }

    #[test]
    fn zero_matrix_is_not_asm() {
        let m = SignMatrix::new(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(!is_asm(&m));
    }

    #[test]
    fn adjacent_same_signs_rejected() {
        let m = SignMatrix::parse("1 0\n1 0").unwrap();
        assert!(!is_asm(&m)); // column one has 1, 1
        let m = SignMatrix::parse("0 1 0\n1 -1 1\n0 1 -1").unwrap();
        assert!(!is_asm(&m));
    }

    #[test]
    fn one_by_one() {
        let m = SignMatrix::parse("1").unwrap();
        assert!(is_asm(&m));
        let cg = asm_to_asbg(&m).unwrap();
        assert_eq!(cg.graph.vertex_count(), 2);
        assert_eq!(cg.colouring.get(&Edge::new("r1", "c1")), Some(Colour::Blue));
    }

    #[test]
    fn central_minus_asbg_shape() {
        let cg = asm_to_asbg(&central_minus()).unwrap();
        assert_eq!(cg.graph.vertex_count(), 6);
        assert_eq!(cg.graph.edge_count(), 5);
        let blues = cg.colouring.iter().filter(|(_, c)| *c == Colour::Blue).count();
        assert_eq!(blues, 4);
        // Eq (1) at every vertex.
        for v in cg.graph.vertex_names() {
            assert_eq!(cg.colouring.weight_at(&cg.graph, v), 1, "at {v}");
        }
    }

    #[test]
    fn identity_asbg_is_disjoint_blue_p2s() {
        let cg = asm_to_asbg(&identity(3)).unwrap();
        assert_eq!(cg.graph.components().len(), 3);
        assert!(cg.colouring.iter().all(|(_, c)| c == Colour::Blue));
    }

    #[test]
    fn round_trip_with_natural_orders() {
        for m in [identity(3), central_minus()] {
            let cg = asm_to_asbg(&m).unwrap();
            let rows: Vec<String> = (0..m.rows()).map(row_name).collect();
            let cols: Vec<String> = (0..m.cols()).map(col_name).collect();
            assert_eq!(asbg_to_asm(&cg, &rows, &cols).unwrap(), m);
        }
    }

    #[test]
    fn p2_blue_reads_back_as_unit() {
        let g = Graph::new(&["u", "v"], &[("u", "v")]).unwrap();
        let mut c = Colouring::default();
        c.set(Edge::new("u", "v"), Colour::Blue);
        let cg = ColouredGraph::new(g, c).unwrap();
        let m = asbg_to_asm(&cg, &["u".into()], &["v".into()]).unwrap();
        assert_eq!(m, SignMatrix::parse("1").unwrap());
    }

    #[test]
    fn permuted_orders_permute_the_matrix() {
        let cg = asm_to_asbg(&central_minus()).unwrap();
        let rows = vec!["r2".to_string(), "r1".to_string(), "r3".to_string()];
        let cols = vec!["c1".to_string(), "c2".to_string(), "c3".to_string()];
        let m = asbg_to_asm(&cg, &rows, &cols).unwrap();
        assert_eq!(m, SignMatrix::parse("1 -1 1\n0 1 0\n0 1 0").unwrap());
        // Row-permuted: sign pattern preserved, but column 2 no longer
        // alternates from the top.
        assert!(!is_asm(&m));
    }

    #[test]
    fn mismatched_orders_rejected() {
        let cg = asm_to_asbg(&identity(2)).unwrap();
        let err = asbg_to_asm(
            &cg,
            &["r1".to_string()],
            &["c1".to_string(), "c2".to_string()],
        );
        assert!(matches!(err, Err(Error::OrderMismatch(_))));
    }

    /// Closed-form count: 1!4!7!...(3n-2)! / n!(n+1)!...(2n-1)!.
    fn formula(n: u64) -> u64 {
        fn fact(k: u64) -> u128 {
            (1..=k as u128).product::<u128>().max(1)
        }
        let num: u128 = (0..n).map(|k| fact(3 * k + 1)).product();
        let den: u128 = (0..n).map(|k| fact(n + k)).product();
        (num / den) as u64
    }

    #[test]
    fn counts_match_closed_formula() {
        let expected = [1u64, 2, 7, 42, 429];
        for (i, &want) in expected.iter().enumerate() {
            let n = (i + 1) as u32;
            assert_eq!(count_asms(n).unwrap(), want, "n={n}");
            assert_eq!(formula(n as u64), want, "formula at n={n}");
        }
        assert!(matches!(count_asms(6), Err(Error::UnsupportedCountSize(6))));
        assert!(matches!(count_asms(0), Err(Error::UnsupportedCountSize(0))));
    }
}
