//! Randomised property suites over codes, merges, distances and circuits.
//!
//! Each suite runs a fixed number of cases from a deterministic generator so
//! that the acceptance run and the plain test run see the same inputs.

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use qsurg_core::circuit::synthesize;
use qsurg_core::css::{tensor_code, Basis, CssCode};
use qsurg_core::distance::{distance_exact, distance_upper_random};
use qsurg_core::families::{
    bb, gb, hypergraph_product, lcs, lifted_product, repetition, rotated_surface, surface, toric,
};
use qsurg_core::gf2::{BitMatrix, BitVector};
use qsurg_core::logicals::{is_gauge_fixable, is_irreducible, is_logical, logical_basis, Subcomplex};
use qsurg_core::ring::{Moduli, RingMatrix, RingPoly};
use qsurg_core::surgery::{
    direct_merge, external_merge, internal_merge, measurement_patch, sandwich, single_qubit_measure, MergeResult,
};

use super::{commutes, dense, kernel_vectors_in_support, naive_in_span, naive_rank};

/// Cases per suite.
pub const CASES: u32 = 200;

type Suite = fn(u32) -> Result<(), String>;

/// The suites, labelled as in the acceptance checklist.
pub const SUITES: &[(&str, Suite)] = &[
    ("a", complexes_close),
    ("b", kunneth_law),
    ("c", irreducible_iff_gauge_fixable),
    ("d", coequalisers_are_chain_maps),
    ("e", random_distance_bounds_exact),
    ("f", synthesis_round_trip),
    ("g", ldpc_conservation),
    ("h", sandwich_laws),
];

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

// ---------------------------------------------------------------------------
// Generators

pub fn arb_matrix(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>) -> BoxedStrategy<BitMatrix> {
    (rows, cols)
        .prop_flat_map(|(r, c)| {
            vec(any::<bool>(), r * c).prop_map(move |bits| {
                let rows: Vec<BitVector> =
                    (0..r).map(|i| BitVector::from_bools(bits[i * c..(i + 1) * c].iter().copied())).collect();
                BitMatrix::from_rows(c, &rows)
            })
        })
        .boxed()
}

/// Random code on `n` qubits: `P_X` is random with at least `min_pct`% of
/// `n` rows, and `P_Z` rows are random combinations of `ker P_X`.
pub fn arb_code(n: std::ops::RangeInclusive<usize>, min_pct: usize) -> BoxedStrategy<CssCode> {
    n.prop_flat_map(move |n| {
        let lo = n * min_pct / 100;
        (lo..=n, 0..=n).prop_flat_map(move |(mx, mz)| (arb_matrix(mx..=mx, n..=n), arb_matrix(mz..=mz, n..=n)))
    })
    .prop_map(|(px, coef)| code_from(px, &coef))
    .boxed()
}

fn code_from(px: BitMatrix, coef: &BitMatrix) -> CssCode {
    let n = px.cols();
    let ker = px.kernel_basis();
    let rows: Vec<BitVector> = (0..coef.rows())
        .map(|i| {
            let mut v = BitVector::zeros(n);
            for (j, kv) in ker.iter().enumerate() {
                if coef.get(i, j) {
                    v.xor_assign(kv);
                }
            }
            v
        })
        .collect();
    CssCode::new(BitMatrix::from_rows(n, &rows), px).expect("rows drawn from the kernel commute")
}

pub fn arb_poly(moduli: Moduli) -> BoxedStrategy<RingPoly> {
    let m = moduli.m.unwrap_or(1);
    vec((0..moduli.l, 0..m), 1..=3)
        .prop_map(move |terms| RingPoly::from_terms(moduli, &terms))
        .boxed()
}

fn arb_ring_matrix(moduli: Moduli, rows: usize, cols: usize) -> BoxedStrategy<RingMatrix> {
    vec(arb_poly(moduli), rows * cols)
        .prop_map(move |ps| {
            let mut m = RingMatrix::zeros(moduli, rows, cols);
            for (idx, p) in ps.into_iter().enumerate() {
                m.set(idx / cols, idx % cols, p);
            }
            m
        })
        .boxed()
}

/// A member of one of the constructed families, with small parameters.
pub fn arb_family() -> BoxedStrategy<CssCode> {
    prop_oneof![
        (2..=6usize).prop_map(|n| repetition(n).unwrap()),
        (2..=5usize).prop_map(|d| surface(d).unwrap()),
        (2..=5usize).prop_map(|d| rotated_surface(d).unwrap()),
        (2..=4usize, 2..=4usize).prop_map(|(a, b)| toric(a, b).unwrap()),
        (arb_matrix(1..=3, 1..=4), arb_matrix(1..=3, 1..=4)).prop_map(|(a, b)| hypergraph_product(&a, &b).unwrap()),
        (arb_matrix(1..=3, 1..=4), arb_matrix(1..=3, 1..=4)).prop_map(|(a, b)| tensor_code(&a, &b).unwrap()),
        (1..=2usize, 1..=4usize).prop_map(|(big_l, l)| lcs(big_l, l).unwrap()),
        (2..=10usize)
            .prop_flat_map(|l| {
                let r = Moduli::univariate(l);
                (arb_poly(r), arb_poly(r))
            })
            .prop_map(|(a, b)| gb(&a, &b).unwrap()),
        (2..=4usize, 2..=4usize)
            .prop_flat_map(|(l, m)| {
                let r = Moduli::bivariate(l, m);
                (arb_poly(r), arb_poly(r))
            })
            .prop_map(|(a, b)| bb(&a, &b).unwrap()),
        (1..=4usize, 1..=2usize, 1..=2usize)
            .prop_flat_map(|(l, rows, cols)| {
                let r = Moduli::univariate(l);
                (arb_ring_matrix(r, rows, cols), arb_ring_matrix(r, cols, rows))
            })
            .prop_map(|(a, b)| lifted_product(&a, &b).unwrap()),
    ]
    .boxed()
}

/// Permute qubits and both check lists of a code.
fn relabel(code: &CssCode, qubits: &[usize], z: &[usize], x: &[usize]) -> CssCode {
    let pz = code.pz().select_rows(z).select_cols(qubits);
    let px = code.px().select_rows(x).select_cols(qubits);
    CssCode::new(pz, px).unwrap()
}

/// A logical of `code` chosen by the bits of `selector`.
fn pick_logical(code: &CssCode, basis: Basis, selector: u64) -> Option<BitVector> {
    let lb = logical_basis(code);
    let reps = lb.reps(basis);
    if reps.is_empty() {
        return None;
    }
    let (_, stabs) = code.checks_and_stabilisers(basis);
    let mut v = BitVector::zeros(code.n());
    for (i, r) in reps.iter().enumerate() {
        if selector >> (i % 32) & 1 == 1 {
            v.xor_assign(r);
        }
    }
    if v.is_zero() {
        v = reps[0].clone();
    }
    for i in 0..stabs.rows() {
        if selector >> (32 + i % 32) & 1 == 1 {
            v.xor_assign(&stabs.row(i));
        }
    }
    Some(v)
}

/// A light irreducible logical found by a short random search, if any.
fn light_irreducible(code: &CssCode, basis: Basis) -> Option<BitVector> {
    let w = distance_upper_random(code, basis, 30, 0).ok()?.witness;
    is_irreducible(code, &w, basis).ok()?.then_some(w)
}

/// Every merge kind that applies to `code` along a light logical.
fn merges_of(code: &CssCode, r: usize) -> Vec<MergeResult> {
    let mut out = Vec::new();
    if code.k() == 0 || code.n() > 80 {
        return out;
    }
    for basis in [Basis::Z, Basis::X] {
        let Some(u) = light_irreducible(code, basis) else {
            continue;
        };
        out.push(single_qubit_measure(code, &u, basis, r).unwrap());
        out.push(external_merge(code, code, &u, &u, basis, r).unwrap());
        out.push(direct_merge(code, code, &u, &u, basis).unwrap());
        let doubled = code.direct_sum(code);
        let n = code.n();
        let left = BitVector::from_bools((0..2 * n).map(|i| i < n && u.get(i)));
        let right = BitVector::from_bools((0..2 * n).map(|i| i >= n && u.get(i - n)));
        out.push(internal_merge(&doubled, &left, &right, basis, r).unwrap());
    }
    out
}

/// Checks shared by every merge result: the merged pair commutes, the
/// bookkeeping is consistent, and listed logicals are logicals.
fn check_merge(m: &MergeResult) -> Result<(), TestCaseError> {
    let merged = &m.merged;
    prop_assert!(commutes(merged), "merged checks do not commute ({:?})", m.kind);
    prop_assert_eq!(m.inclusion.shape(), (merged.n(), m.before.n()));
    prop_assert_eq!(
        merged.k(),
        m.old_z_logicals.len() + m.new_z_logicals.len(),
        "k split ({:?})",
        m.kind
    );
    for z in m.old_z_logicals.iter().chain(&m.new_z_logicals) {
        prop_assert!(is_logical(merged, z, Basis::Z), "listed Z logical is not a logical");
    }
    for x in m.old_x_logicals.iter().chain(&m.new_x_logicals) {
        prop_assert!(is_logical(merged, x, Basis::X), "listed X logical is not a logical");
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// (a) every constructor and merge yields a chain complex

fn complexes_close(cases: u32) -> Result<(), String> {
    run(cases, (arb_family(), 1..=2usize), |(code, r)| {
        prop_assert!(commutes(&code), "constructor output does not commute");
        for m in merges_of(&code, r) {
            prop_assert!(commutes(&m.merged), "{:?} merge does not commute", m.kind);
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// (b) Künneth law for tensor codes

fn kunneth_law(cases: u32) -> Result<(), String> {
    run(cases, (arb_matrix(0..=5, 1..=6), arb_matrix(0..=5, 1..=6)), |(a, b)| {
        let code = tensor_code(&a, &b).map_err(|e| fail(e.to_string()))?;
        let ra = naive_rank(dense(&a));
        let rb = naive_rank(dense(&b));
        let (c0, c1) = a.shape();
        let (d0, d1) = b.shape();
        let expected = (c0 - ra) * (d1 - rb) + (c1 - ra) * (d0 - rb);
        prop_assert_eq!(code.k(), expected);
        prop_assert_eq!(code.n(), c0 * d1 + c1 * d0);
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// (c) irreducibility and gauge-fixability agree on every logical

fn irreducible_iff_gauge_fixable(cases: u32) -> Result<(), String> {
    run(cases, arb_code(3..=16, 50), |code| {
        for basis in [Basis::Z, Basis::X] {
            let (checks, stabs) = code.checks_and_stabilisers(basis);
            let stab_rows = dense(stabs);
            let all: Vec<usize> = (0..code.n()).collect();
            let kernel = kernel_vectors_in_support(checks, &all);
            if kernel.len() > 1 << 10 {
                continue;
            }
            for v in kernel {
                if naive_in_span(&stab_rows, &super::dense_vec(&v)) {
                    continue;
                }
                let inside = kernel_vectors_in_support(checks, &v.support()).len();
                let irreducible = is_irreducible(&code, &v, basis).map_err(|e| fail(e.to_string()))?;
                let fixable = is_gauge_fixable(&code, &v, basis).map_err(|e| fail(e.to_string()))?;
                prop_assert_eq!(irreducible, inside == 1, "irreducibility oracle disagrees on {}", v);
                prop_assert_eq!(irreducible, fixable, "gauge-fixability disagrees on {}", v);
            }
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// (d) coequalisers are chain maps and merge bookkeeping is consistent

fn coequalisers_are_chain_maps(cases: u32) -> Result<(), String> {
    let codes = prop_oneof![arb_family(), arb_code(2..=12, 30)];
    run(cases, (codes, 1..=3usize), |(code, r)| {
        for m in merges_of(&code, r) {
            prop_assert!(m.validate_coequaliser().unwrap(), "{:?} coequaliser fails", m.kind);
            check_merge(&m)?;
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// (e) the random estimate bounds the exact distance and meets it

fn random_distance_bounds_exact(cases: u32) -> Result<(), String> {
    run(cases, (arb_code(4..=30, 40), any::<u64>()), |(code, seed)| {
        if code.k() == 0 {
            return Ok(());
        }
        for basis in [Basis::Z, Basis::X] {
            let exact = distance_exact(&code, basis, None).unwrap();
            let random = distance_upper_random(&code, basis, 1000, seed).unwrap();
            prop_assert!(random.value >= exact.value);
            prop_assert_eq!(random.value, exact.value, "1000 trials missed the minimum");
            prop_assert!(is_logical(&code, &random.witness, basis));
            prop_assert_eq!(random.witness.weight(), random.value);
            prop_assert!(is_logical(&code, &exact.witness, basis));
            prop_assert_eq!(exact.witness.weight(), exact.value);
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// (f) synthesized circuits evaluate to their matrix

fn synthesis_round_trip(cases: u32) -> Result<(), String> {
    run(cases, arb_matrix(0..=8, 0..=8), |m| {
        let c = synthesize(&m);
        prop_assert_eq!(c.evaluate().unwrap(), m.clone());
        prop_assert!(c.cnot_count() <= m.rows() * m.cols(), "{} CNOTs for {:?}", c.cnot_count(), m.shape());
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// (g) LDPC weights under direct Z merges

fn arb_relabelled_pair() -> BoxedStrategy<(CssCode, CssCode, Vec<usize>, u64)> {
    arb_code(3..=14, 30)
        .prop_filter("needs logicals and nonzero X checks", |c| {
            c.k() > 0 && c.mx() > 0 && (0..c.mx()).all(|i| !c.px().row_is_zero(i))
        })
        .prop_flat_map(|c| {
            let (n, mz, mx) = (c.n(), c.mz(), c.mx());
            (
                Just(c),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                Just((0..mz).collect::<Vec<_>>()).prop_shuffle(),
                Just((0..mx).collect::<Vec<_>>()).prop_shuffle(),
                any::<u64>(),
            )
        })
        .prop_map(|(c, q, z, x, sel)| {
            let d = relabel(&c, &q, &z, &x);
            (c, d, q, sel)
        })
        .boxed()
}

fn ldpc_conservation(cases: u32) -> Result<(), String> {
    run(cases, arb_relabelled_pair(), |(c, d, qubits, sel)| {
        let u = pick_logical(&c, Basis::Z, sel).unwrap();
        let v = u.select(&qubits);
        let m = direct_merge(&c, &d, &u, &v, Basis::Z).map_err(|e| fail(e.to_string()))?;
        let (sc, sd, sq) = (c.weights(), d.weights(), m.merged.weights());
        prop_assert_eq!(sq.w_z, sc.w_z.max(sd.w_z));
        prop_assert!(sq.w_x < sc.w_x + sd.w_x);
        prop_assert_eq!(sq.q_x, sc.q_x.max(sd.q_x));
        prop_assert_eq!(m.merged.n(), c.n() + d.n() - u.weight());
        prop_assert!(m.validate_coequaliser().unwrap());
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// (h) sandwich homology and new-element counts

/// A random irreducible boundary: a spanning tree on the qubits, mixed by row
/// additions and padded with sums of rows. Its kernel is `{0, 1…1}`.
pub fn arb_irreducible_boundary() -> BoxedStrategy<BitMatrix> {
    (2..=6usize)
        .prop_flat_map(|m1| {
            let parents: Vec<BoxedStrategy<usize>> = (1..m1).map(|i| (0..i).boxed()).collect();
            (Just(m1), parents, vec((0..m1 - 1, 0..m1 - 1), 0..6), vec(any::<u8>(), 0..3))
        })
        .prop_map(|(m1, parents, mixes, extras)| {
            let mut rows: Vec<BitVector> = parents
                .iter()
                .enumerate()
                .map(|(i, &p)| BitVector::from_indices(m1, &[i + 1, p]))
                .collect();
            for (src, dst) in mixes {
                if src != dst {
                    let s = rows[src].clone();
                    rows[dst].xor_assign(&s);
                }
            }
            for mask in extras {
                let mut sum = BitVector::zeros(m1);
                for (i, r) in rows.iter().enumerate() {
                    if mask >> (i % 8) & 1 == 1 {
                        sum.xor_assign(r);
                    }
                }
                if !sum.is_zero() {
                    rows.push(sum);
                }
            }
            BitMatrix::from_rows(m1, &rows)
        })
        .boxed()
}

fn sandwich_laws(cases: u32) -> Result<(), String> {
    run(cases, (arb_irreducible_boundary(), 1..=4usize), |(boundary, r)| {
        let (m0, m1) = boundary.shape();
        let v = Subcomplex {
            boundary: boundary.clone(),
            qubit_indices: (0..m1).collect(),
            check_indices: (0..m0).collect(),
        };
        prop_assert!(v.is_irreducible());
        let w = sandwich(&v, r).unwrap();
        prop_assert_eq!(w.k(), 1);
        prop_assert_eq!(w.n(), (r + 1) * m1 + r * m0);
        prop_assert_eq!(measurement_patch(&v, r).unwrap().k(), 0);

        let host = CssCode::new(BitMatrix::zeros(0, m1), boundary).unwrap();
        let ones = BitVector::from_indices(m1, &(0..m1).collect::<Vec<_>>());
        let ext = external_merge(&host, &host, &ones, &ones, Basis::Z, r).unwrap();
        prop_assert_eq!(ext.new_qubits.len(), (r - 1) * m1 + r * m0);
        prop_assert_eq!(ext.new_z_checks.len(), r * m1);
        prop_assert_eq!(ext.new_x_checks.len(), (r - 1) * m0);
        prop_assert_eq!(ext.merged.k(), 1);
        let meas = single_qubit_measure(&host, &ones, Basis::Z, r).unwrap();
        prop_assert_eq!(meas.new_qubits.len(), (r - 1) * m1 + r * m0);
        prop_assert_eq!(meas.new_z_checks.len(), r * m1);
        prop_assert_eq!(meas.new_x_checks.len(), (r - 1) * m0);
        prop_assert_eq!(meas.merged.k(), 0);
        Ok(())
    })
}
