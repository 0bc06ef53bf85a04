//! Shared fixtures, independent oracles and property suites for the
//! integration tests.
#![allow(dead_code)]

pub mod props;

use qsurg_core::css::CssCode;
use qsurg_core::gf2::{BitMatrix, BitVector};

/// `T` from the worked two-Shor merge at depth 1, as printed: `∂_2` is
/// 20×15 (qubits by Z checks) and `∂_1` is 4×20.
pub fn shor_merge_printed() -> CssCode {
    let d2 = BitMatrix::from_strs(&[
        "110000000000000",
        "101000000000000",
        "100110000000000",
        "000100000000000",
        "000010000000000",
        "010001100000000",
        "000001000000000",
        "000000100000000",
        "001000011000000",
        "000000010000000",
        "000000001000000",
        "100000000110000",
        "000000000100000",
        "000000000010000",
        "010000000001100",
        "000000000001000",
        "000000000000100",
        "001000000000011",
        "000000000000010",
        "000000000000001",
    ]);
    let d1 = BitMatrix::from_strs(&[
        "10111111000000000000",
        "01111000111000000000",
        "10000000000111111000",
        "01000000000111000111",
    ]);
    CssCode::new(d2.transpose(), d1).unwrap()
}

/// The printed depth-1 sandwich for the Shor logical `Z_1 Z_4 Z_7`:
/// `∂_2` is 8×3 and `∂_1` is 4×8.
pub fn shor_sandwich_printed() -> CssCode {
    let d2 = BitMatrix::from_strs(&["100", "010", "001", "100", "010", "001", "110", "101"]);
    let d1 = BitMatrix::from_strs(&["11000010", "10100001", "00011010", "00010101"]);
    CssCode::new(d2.transpose(), d1).unwrap()
}

/// Dense copy of a matrix, for oracles that avoid the library's routines.
pub fn dense(m: &BitMatrix) -> Vec<Vec<bool>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect()
}

pub fn dense_vec(v: &BitVector) -> Vec<bool> {
    (0..v.len()).map(|i| v.get(i)).collect()
}

/// Rank by textbook elimination on `Vec<Vec<bool>>`.
pub fn naive_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Naive product `A·B` over GF(2).
pub fn naive_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(false, |acc, t| acc ^ (row[t] & b[t][j])))
                .collect()
        })
        .collect()
}

/// True iff `px · pz^T = 0`, checked entry by entry.
pub fn commutes(code: &CssCode) -> bool {
    let (pz, px) = (dense(code.pz()), dense(code.px()));
    px.iter()
        .all(|x| pz.iter().all(|z| !x.iter().zip(z).fold(false, |acc, (a, b)| acc ^ (a & b))))
}

/// Membership in a row span via the rank oracle.
pub fn naive_in_span(rows: &[Vec<bool>], v: &[bool]) -> bool {
    let base = naive_rank(rows.to_vec());
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    naive_rank(with) == base
}

/// All vectors `x` with `checks · x = 0` supported inside `support`.
pub fn kernel_vectors_in_support(checks: &BitMatrix, support: &[usize]) -> Vec<BitVector> {
    let n = checks.cols();
    let rows = dense(checks);
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << support.len()) {
        let chosen: Vec<usize> = (0..support.len()).filter(|b| mask >> b & 1 == 1).map(|b| support[b]).collect();
        let ok = rows.iter().all(|r| chosen.iter().filter(|&&q| r[q]).count() % 2 == 0);
        if ok {
            out.push(BitVector::from_indices(n, &chosen));
        }
    }
    out
}

/// Every element of the row span of `rows` (at most `2^rows.len()` vectors).
pub fn span_elements(len: usize, rows: &[BitVector]) -> Vec<BitVector> {
    let mut out = vec![BitVector::zeros(len)];
    for r in rows {
        let extra: Vec<BitVector> = out.iter().map(|v| v.xor(r)).collect();
        out.extend(extra);
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Brute-force matrix isomorphism: some row and column permutation carries `b` onto `a`.
pub fn brute_isomorphic(a: &BitMatrix, b: &BitMatrix) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let rows = permutations(a.rows());
    let cols = permutations(a.cols());
    rows.iter().any(|rp| {
        cols.iter()
            .any(|cp| (0..a.rows()).all(|i| (0..a.cols()).all(|j| a.get(i, j) == b.get(rp[i], cp[j]))))
    })
}
