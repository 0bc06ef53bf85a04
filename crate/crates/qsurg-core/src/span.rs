//! Hypergraph isomorphism between restricted matrices.
//!
//! A matrix is read as a bipartite graph with one vertex per row and per
//! column and an edge at every one. Isomorphisms must map rows to rows and
//! columns to columns (and, optionally, preserve a colouring of the rows).
//! The search is a backtracking matcher in the style of VF2: vertices of the
//! first graph are visited in a connectivity-first order and each candidate
//! image is checked against every already-matched neighbour.

use crate::css::CssCode;
use crate::gf2::BitMatrix;
use crate::logicals::Subcomplex;

/// Permutations witnessing `a[i][j] = b[row_perm[i]][col_perm[j]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicSpan {
    /// Column of `b` matched to each column of `a`.
    pub col_perm: Vec<usize>,
    /// Row of `b` matched to each row of `a`.
    pub row_perm: Vec<usize>,
}

impl MonicSpan {
    /// True iff applying the permutations to `b` yields `a` exactly.
    pub fn verifies(&self, a: &BitMatrix, b: &BitMatrix) -> bool {
        a.shape() == b.shape()
            && self.row_perm.len() == a.rows()
            && self.col_perm.len() == a.cols()
            && (0..a.rows()).all(|i| (0..a.cols()).all(|j| a.get(i, j) == b.get(self.row_perm[i], self.col_perm[j])))
    }
}

/// Find a basis-preserving isomorphism between two logical operator subcomplexes.
pub fn find_monic_span(a: &Subcomplex, b: &Subcomplex) -> Option<MonicSpan> {
    find_matrix_isomorphism(&a.boundary, &b.boundary)
}

/// Find row and column permutations carrying `b` onto `a`.
pub fn find_matrix_isomorphism(a: &BitMatrix, b: &BitMatrix) -> Option<MonicSpan> {
    let colours_a = vec![0; a.rows()];
    let colours_b = vec![0; b.rows()];
    find_coloured_isomorphism(a, &colours_a, b, &colours_b)
}

/// Relabelling that carries one code onto another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeIsomorphism {
    /// Qubit of the second code matched to each qubit of the first.
    pub qubits: Vec<usize>,
    /// Z check of the second code matched to each Z check of the first.
    pub z_checks: Vec<usize>,
    /// X check of the second code matched to each X check of the first.
    pub x_checks: Vec<usize>,
}

/// Decide whether two codes agree up to relabelling qubits and checks of each type.
pub fn find_code_isomorphism(c: &CssCode, d: &CssCode) -> Option<CodeIsomorphism> {
    if c.n() != d.n() || c.mz() != d.mz() || c.mx() != d.mx() {
        return None;
    }
    let stack_c = c.pz().vstack(c.px()).ok()?;
    let stack_d = d.pz().vstack(d.px()).ok()?;
    let colours = |code: &CssCode| {
        let mut v = vec![0; code.mz()];
        v.extend(std::iter::repeat_n(1, code.mx()));
        v
    };
    let span = find_coloured_isomorphism(&stack_c, &colours(c), &stack_d, &colours(d))?;
    let mz = c.mz();
    Some(CodeIsomorphism {
        qubits: span.col_perm,
        z_checks: span.row_perm[..mz].to_vec(),
        x_checks: span.row_perm[mz..].iter().map(|r| r - mz).collect(),
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    Row,
    Col,
}

struct Graph {
    rows: usize,
    row_adj: Vec<Vec<usize>>,
    col_adj: Vec<Vec<usize>>,
    matrix: BitMatrix,
    signature_rows: Vec<(usize, usize, Vec<usize>)>,
    signature_cols: Vec<(usize, Vec<usize>)>,
}

impl Graph {
    fn new(m: &BitMatrix, colours: &[usize]) -> Self {
        let row_adj: Vec<Vec<usize>> = (0..m.rows()).map(|i| m.row(i).support()).collect();
        let mut col_adj = vec![Vec::new(); m.cols()];
        for (i, adj) in row_adj.iter().enumerate() {
            for &j in adj {
                col_adj[j].push(i);
            }
        }
        let signature_rows = row_adj
            .iter()
            .enumerate()
            .map(|(i, adj)| {
                let mut nd: Vec<usize> = adj.iter().map(|&j| col_adj[j].len()).collect();
                nd.sort_unstable();
                (colours[i], adj.len(), nd)
            })
            .collect();
        let signature_cols = col_adj
            .iter()
            .map(|adj| {
                let mut nd: Vec<(usize, usize)> = adj.iter().map(|&i| (colours[i], row_adj[i].len())).collect();
                nd.sort_unstable();
                (adj.len(), nd.into_iter().map(|(c, d)| c * 1_000_003 + d).collect())
            })
            .collect();
        Self {
            rows: m.rows(),
            row_adj,
            col_adj,
            matrix: m.clone(),
            signature_rows,
            signature_cols,
        }
    }

    fn neighbours(&self, side: Side, v: usize) -> &[usize] {
        match side {
            Side::Row => &self.row_adj[v],
            Side::Col => &self.col_adj[v],
        }
    }

    fn same_signature(&self, side: Side, v: usize, other: &Graph, w: usize) -> bool {
        match side {
            Side::Row => self.signature_rows[v] == other.signature_rows[w],
            Side::Col => self.signature_cols[v] == other.signature_cols[w],
        }
    }
}

/// Isomorphism search with a colouring of the rows that must be preserved.
pub fn find_coloured_isomorphism(
    a: &BitMatrix,
    colours_a: &[usize],
    b: &BitMatrix,
    colours_b: &[usize],
) -> Option<MonicSpan> {
    if a.shape() != b.shape() || colours_a.len() != a.rows() || colours_b.len() != b.rows() {
        return None;
    }
    let ga = Graph::new(a, colours_a);
    let gb = Graph::new(b, colours_b);
    let mut sa = ga.signature_rows.clone();
    let mut sb = gb.signature_rows.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut ca = ga.signature_cols.clone();
    let mut cb = gb.signature_cols.clone();
    ca.sort();
    cb.sort();
    if ca != cb {
        return None;
    }
    let order = visit_order(&ga);
    let mut state = Search {
        ga: &ga,
        gb: &gb,
        order: &order,
        map_row: vec![usize::MAX; ga.rows],
        map_col: vec![usize::MAX; a.cols()],
        used_row: vec![false; ga.rows],
        used_col: vec![false; a.cols()],
    };
    if state.extend(0) {
        let span = MonicSpan {
            col_perm: state.map_col,
            row_perm: state.map_row,
        };
        debug_assert!(span.verifies(a, b));
        Some(span)
    } else {
        None
    }
}

/// Order vertices so that each one (after the first of its component) has a
/// previously visited neighbour, preferring high connectivity and degree.
fn visit_order(g: &Graph) -> Vec<(Side, usize)> {
    let total = g.rows + g.col_adj.len();
    let mut placed_row = vec![false; g.rows];
    let mut placed_col = vec![false; g.col_adj.len()];
    let mut links_row = vec![0usize; g.rows];
    let mut links_col = vec![0usize; g.col_adj.len()];
    let mut order = Vec::with_capacity(total);
    while order.len() < total {
        let mut best: Option<((usize, usize), (Side, usize))> = None;
        let mut consider = |key: (usize, usize), v: (Side, usize)| {
            if best.as_ref().is_none_or(|(k, _)| key > *k) {
                best = Some((key, v));
            }
        };
        for i in 0..g.rows {
            if !placed_row[i] {
                consider((links_row[i], g.row_adj[i].len()), (Side::Row, i));
            }
        }
        for j in 0..g.col_adj.len() {
            if !placed_col[j] {
                consider((links_col[j], g.col_adj[j].len()), (Side::Col, j));
            }
        }
        let (_, (side, v)) = best.expect("vertices remain");
        match side {
            Side::Row => {
                placed_row[v] = true;
                for &j in &g.row_adj[v] {
                    links_col[j] += 1;
                }
            }
            Side::Col => {
                placed_col[v] = true;
                for &i in &g.col_adj[v] {
                    links_row[i] += 1;
                }
            }
        }
        order.push((side, v));
    }
    order
}

struct Search<'a> {
    ga: &'a Graph,
    gb: &'a Graph,
    order: &'a [(Side, usize)],
    map_row: Vec<usize>,
    map_col: Vec<usize>,
    used_row: Vec<bool>,
    used_col: Vec<bool>,
}

impl Search<'_> {
    fn mapped(&self, side: Side, v: usize) -> Option<usize> {
        let m = match side {
            Side::Row => self.map_row[v],
            Side::Col => self.map_col[v],
        };
        (m != usize::MAX).then_some(m)
    }

    fn image_used(&self, side: Side, w: usize) -> bool {
        match side {
            Side::Row => self.used_row[w],
            Side::Col => self.used_col[w],
        }
    }

    fn feasible(&self, side: Side, v: usize, w: usize) -> bool {
        if self.image_used(side, w) || !self.ga.same_signature(side, v, self.gb, w) {
            return false;
        }
        let other = match side {
            Side::Row => Side::Col,
            Side::Col => Side::Row,
        };
        let mut matched = 0;
        for &u in self.ga.neighbours(side, v) {
            if let Some(img) = self.mapped(other, u) {
                matched += 1;
                let edge = match side {
                    Side::Row => self.gb.matrix.get(w, img),
                    Side::Col => self.gb.matrix.get(img, w),
                };
                if !edge {
                    return false;
                }
            }
        }
        let matched_b = self
            .gb
            .neighbours(side, w)
            .iter()
            .filter(|&&u| self.image_used(other, u))
            .count();
        matched == matched_b
    }

    fn assign(&mut self, side: Side, v: usize, w: Option<usize>) {
        let (map, used) = match side {
            Side::Row => (&mut self.map_row, &mut self.used_row),
            Side::Col => (&mut self.map_col, &mut self.used_col),
        };
        match w {
            Some(w) => {
                map[v] = w;
                used[w] = true;
            }
            None => {
                used[map[v]] = false;
                map[v] = usize::MAX;
            }
        }
    }

    fn extend(&mut self, depth: usize) -> bool {
        let Some(&(side, v)) = self.order.get(depth) else {
            return true;
        };
        let count = match side {
            Side::Row => self.gb.rows,
            Side::Col => self.gb.col_adj.len(),
        };
        for w in 0..count {
            if self.feasible(side, v, w) {
                self.assign(side, v, Some(w));
                if self.extend(depth + 1) {
                    return true;
                }
                self.assign(side, v, None);
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_matrices_give_identity() {
        let m = BitMatrix::from_strs(&["110", "101"]);
        let s = find_matrix_isomorphism(&m, &m).unwrap();
        assert_eq!(s.col_perm, vec![0, 1, 2]);
        assert_eq!(s.row_perm, vec![0, 1]);
    }

    #[test]
    fn permuted_matrix_is_found() {
        let a = BitMatrix::from_strs(&["1100", "0110", "0011"]);
        let b = BitMatrix::from_strs(&["0011", "1001", "0110"]);
        let s = find_matrix_isomorphism(&a, &b).unwrap();
        assert!(s.verifies(&a, &b));
    }

    #[test]
    fn rejects_different_degree_profiles() {
        let a = BitMatrix::from_strs(&["110", "101"]);
        let b = BitMatrix::from_strs(&["110", "011", "101"]);
        assert!(find_matrix_isomorphism(&a, &b).is_none());
        let c = BitMatrix::from_strs(&["111", "100"]);
        assert!(find_matrix_isomorphism(&a, &c).is_none());
    }

    #[test]
    fn same_degrees_but_not_isomorphic() {
        let hexagon = BitMatrix::from_strs(&["110000", "011000", "001100", "000110", "000011", "100001"]);
        let triangles = BitMatrix::from_strs(&["110000", "011000", "101000", "000110", "000011", "000101"]);
        assert!(find_matrix_isomorphism(&hexagon, &triangles).is_none());
    }
}
