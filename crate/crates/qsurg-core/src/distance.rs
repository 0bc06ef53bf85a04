//! Code distances: exact search, randomized information-set upper bounds and
//! dressed distances of subsystem codes.

use std::cmp::Ordering;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::css::{Basis, CssCode};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, RowReducer};
use crate::logicals::{logical_basis, restrict_unchecked};

/// Number of random trials used when none is given.
pub const DEFAULT_TRIALS: usize = 10_000;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1;

/// How a distance value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistanceMethod {
    /// Minimum over every element of the kernel.
    ExactEnum,
    /// All supports of weight 1, 2, ... until a logical is found.
    Incremental,
    /// Randomized information sets; an upper bound.
    RandomIs,
}

impl fmt::Display for DistanceMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ExactEnum => "exact_enum",
            Self::Incremental => "incremental",
            Self::RandomIs => "random_is",
        })
    }
}

/// A distance value with its provenance and a witnessing logical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub value: usize,
    pub basis: Basis,
    pub method: DistanceMethod,
    pub exact: bool,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    /// A nontrivial logical of weight `value`.
    pub witness: BitVector,
}

/// Method selection for distance computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Exact search, failing with [`Error::CapExceeded`] above the optional cap.
    Exact { max_weight: Option<usize> },
    /// Random information-set search.
    Random { trials: usize, seed: u64 },
}

/// Precomputed data for testing candidate logicals of one type.
struct Tester {
    n: usize,
    /// Syndrome of each qubit (a column of the check matrix).
    syndromes: Vec<BitVector>,
    /// For each qubit, which dual representatives contain it.
    dual_masks: Vec<BitVector>,
    kernel: Vec<BitVector>,
    duals: Vec<BitVector>,
}

impl Tester {
    fn new(code: &CssCode, basis: Basis) -> Result<Self> {
        let lb = logical_basis(code);
        if lb.k() == 0 {
            return Err(Error::NoLogicals);
        }
        let (checks, _) = code.checks_and_stabilisers(basis);
        let duals = lb.duals(basis).to_vec();
        let checks_t = checks.transpose();
        let dual_m = BitMatrix::from_rows(code.n(), &duals).transpose();
        Ok(Self {
            n: code.n(),
            syndromes: checks_t.row_vectors(),
            dual_masks: dual_m.row_vectors(),
            kernel: checks.kernel_basis(),
            duals,
        })
    }

    fn nontrivial(&self, v: &BitVector) -> bool {
        self.duals.iter().any(|d| d.dot(v))
    }
}

/// Order candidates by weight, then lexicographically.
fn better(a: &BitVector, b: &BitVector) -> Ordering {
    a.weight().cmp(&b.weight()).then_with(|| a.lex_cmp(b))
}

/// Exact distance; picks kernel enumeration or incremental search by cost.
pub fn distance_exact(code: &CssCode, basis: Basis, max_weight: Option<usize>) -> Result<DistanceReport> {
    let t = Tester::new(code, basis)?;
    let dim = t.kernel.len();
    let guess = random_is_inner(&t, 32, DEFAULT_SEED).weight();
    let incremental_cost: f64 = (1..guess).map(|w| binomial(t.n, w)).sum();
    let enum_cost = 2f64.powi(dim as i32);
    let report = if enum_cost <= incremental_cost.max(1.0) && dim <= 40 {
        enumerate_inner(&t, basis)
    } else {
        incremental_inner(&t, basis, max_weight.unwrap_or(t.n))?
    };
    match max_weight {
        Some(cap) if report.value > cap => Err(Error::CapExceeded(cap)),
        _ => Ok(report),
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Exact distance by walking every kernel element in Gray-code order.
pub fn distance_enumerate(code: &CssCode, basis: Basis) -> Result<DistanceReport> {
    let t = Tester::new(code, basis)?;
    Ok(enumerate_inner(&t, basis))
}

fn enumerate_inner(t: &Tester, basis: Basis) -> DistanceReport {
    let dim = t.kernel.len();
    let mut v = BitVector::zeros(t.n);
    let mut best: Option<BitVector> = None;
    for i in 1u64..(1u64 << dim) {
        let flip = i.trailing_zeros() as usize;
        v.xor_assign(&t.kernel[flip]);
        if t.nontrivial(&v) && best.as_ref().is_none_or(|b| better(&v, b) == Ordering::Less) {
            best = Some(v.clone());
        }
    }
    let witness = best.expect("a code with k >= 1 has a nontrivial kernel element");
    DistanceReport {
        value: witness.weight(),
        basis,
        method: DistanceMethod::ExactEnum,
        exact: true,
        trials: None,
        seed: None,
        witness,
    }
}

/// Exact distance by testing all supports of increasing weight in colex order.
pub fn distance_incremental(code: &CssCode, basis: Basis, max_weight: Option<usize>) -> Result<DistanceReport> {
    let t = Tester::new(code, basis)?;
    incremental_inner(&t, basis, max_weight.unwrap_or(t.n))
}

fn incremental_inner(t: &Tester, basis: Basis, cap: usize) -> Result<DistanceReport> {
    let syn_len = t.syndromes.first().map_or(0, BitVector::len);
    let mask_len = t.dual_masks.first().map_or(0, BitVector::len);
    for w in 1..=cap.min(t.n) {
        let mut chosen = vec![0usize; w];
        let mut syn = vec![BitVector::zeros(syn_len); w + 1];
        let mut mask = vec![BitVector::zeros(mask_len); w + 1];
        if colex_search(t, w, t.n, &mut chosen, &mut syn, &mut mask) {
            let witness = BitVector::from_indices(t.n, &chosen);
            return Ok(DistanceReport {
                value: w,
                basis,
                method: DistanceMethod::Incremental,
                exact: true,
                trials: None,
                seed: None,
                witness,
            });
        }
    }
    Err(Error::CapExceeded(cap))
}

/// Choose `remaining` more positions below `limit`, largest first, so that
/// complete supports appear in colexicographic order.
fn colex_search(
    t: &Tester,
    remaining: usize,
    limit: usize,
    chosen: &mut [usize],
    syn: &mut [BitVector],
    mask: &mut [BitVector],
) -> bool {
    if remaining == 0 {
        return syn[0].is_zero() && !mask[0].is_zero();
    }
    for q in remaining - 1..limit {
        let (lower, upper) = syn.split_at_mut(remaining);
        lower[remaining - 1].clone_from(&upper[0]);
        lower[remaining - 1].xor_assign(&t.syndromes[q]);
        let (lower, upper) = mask.split_at_mut(remaining);
        lower[remaining - 1].clone_from(&upper[0]);
        lower[remaining - 1].xor_assign(&t.dual_masks[q]);
        chosen[remaining - 1] = q;
        if colex_search(t, remaining - 1, q, chosen, syn, mask) {
            return true;
        }
    }
    false
}

/// Upper bound on the distance from `trials` random information sets.
///
/// Trial `t` shuffles the columns with a generator seeded by `seed ^ t`,
/// row-reduces a kernel basis in that column order and keeps the lightest
/// nontrivial row. The overall result is the lightest such row (ties broken
/// lexicographically), so it does not depend on trial scheduling.
pub fn distance_upper_random(code: &CssCode, basis: Basis, trials: usize, seed: u64) -> Result<DistanceReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let t = Tester::new(code, basis)?;
    let witness = random_is_inner(&t, trials, seed);
    Ok(DistanceReport {
        value: witness.weight(),
        basis,
        method: DistanceMethod::RandomIs,
        exact: false,
        trials: Some(trials),
        seed: Some(seed),
        witness,
    })
}

fn trial_candidates(t: &Tester, generator: &BitMatrix, trial: u64, seed: u64) -> Vec<BitVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial);
    let mut order: Vec<usize> = (0..t.n).collect();
    order.shuffle(&mut rng);
    let mut g = generator.clone();
    g.rref_with_order(&order);
    (0..g.rows()).map(|i| g.row(i)).filter(|v| t.nontrivial(v)).collect()
}

fn random_is_inner(t: &Tester, trials: usize, seed: u64) -> BitVector {
    let generator = BitMatrix::from_rows(t.n, &t.kernel);
    (0..trials as u64)
        .into_par_iter()
        .filter_map(|trial| {
            trial_candidates(t, &generator, trial, seed)
                .into_iter()
                .min_by(better)
        })
        .min_by(better)
        .expect("every information set contains a nontrivial logical")
}

/// Distinct logicals of the smallest weight met during a random search.
pub fn lightest_logicals(code: &CssCode, basis: Basis, trials: usize, seed: u64) -> Result<Vec<BitVector>> {
    let t = Tester::new(code, basis)?;
    let generator = BitMatrix::from_rows(t.n, &t.kernel);
    let mut found: Vec<BitVector> = (0..trials as u64)
        .into_par_iter()
        .flat_map_iter(|trial| trial_candidates(&t, &generator, trial, seed))
        .collect();
    let best = found.iter().map(BitVector::weight).min().unwrap_or(0);
    found.retain(|v| v.weight() == best);
    found.sort_by(|a, b| a.lex_cmp(b));
    found.dedup();
    Ok(found)
}

/// Search the coset `class + rowspan(stabilisers)` for a light irreducible element.
///
/// Each trial row-reduces the stabilisers together with `class` under a random
/// column order; rows that still contain `class` are coset elements. Returns
/// the lightest irreducible one (ties lexicographic), or `None` if none was met.
pub fn find_irreducible_representative(
    code: &CssCode,
    class: &BitVector,
    basis: Basis,
    trials: usize,
    seed: u64,
) -> Result<Option<BitVector>> {
    if !crate::logicals::is_logical(code, class, basis) {
        return Err(Error::NotALogical(basis.to_string()));
    }
    let (_, stabs) = code.checks_and_stabilisers(basis);
    let n = code.n();
    let tag = BitVector::from_indices(1, &[0]);
    let mut rows = vec![class.concat(&tag)];
    let untagged = BitVector::zeros(1);
    rows.extend(stabs.row_vectors().iter().map(|s| s.concat(&untagged)));
    let generator = BitMatrix::from_rows(n + 1, &rows);
    let columns: Vec<usize> = (0..n).collect();
    let irreducible = |v: &BitVector| restrict_unchecked(code, v, basis).is_irreducible();
    let mut candidates: Vec<BitVector> = vec![class.clone()];
    candidates.extend((0..trials as u64).into_par_iter().flat_map_iter(|trial| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial);
        let mut order = columns.clone();
        order.shuffle(&mut rng);
        let mut g = generator.clone();
        g.rref_with_order(&order);
        (0..g.rows())
            .filter(|&i| g.get(i, n))
            .map(|i| BitVector::from_bools((0..n).map(|j| g.get(i, j))))
            .collect::<Vec<_>>()
    }).collect::<Vec<_>>());
    Ok(candidates.into_iter().filter(|v| irreducible(v)).min_by(better))
}

/// Gauge logicals to be removed from the logical space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaugeSpec {
    pub gauge_z: Vec<BitVector>,
    pub gauge_x: Vec<BitVector>,
}

/// Dressed distance of one type: the distance of the code with the gauge
/// logicals of that type added to its stabilisers.
pub fn subsystem_distance(code: &CssCode, gauge: &GaugeSpec, basis: Basis, method: Method) -> Result<DistanceReport> {
    let n = code.n();
    let dressed = match basis {
        Basis::Z => {
            check_gauge(code, &gauge.gauge_z, Basis::Z)?;
            let extra = BitMatrix::from_rows(n, &gauge.gauge_z);
            CssCode::new(code.pz().vstack(&extra)?, code.px().clone())?
        }
        Basis::X => {
            check_gauge(code, &gauge.gauge_x, Basis::X)?;
            let extra = BitMatrix::from_rows(n, &gauge.gauge_x);
            CssCode::new(code.pz().clone(), code.px().vstack(&extra)?)?
        }
    };
    match method {
        Method::Exact { max_weight } => distance_exact(&dressed, basis, max_weight),
        Method::Random { trials, seed } => distance_upper_random(&dressed, basis, trials, seed),
    }
}

fn check_gauge(code: &CssCode, vs: &[BitVector], basis: Basis) -> Result<()> {
    let (checks, _) = code.checks_and_stabilisers(basis);
    for v in vs {
        if v.len() != code.n() || !checks.mul_vec(v)?.is_zero() {
            return Err(Error::NotALogical(basis.to_string()));
        }
    }
    Ok(())
}

/// Dressed distance over both types: the lighter of the two reports.
pub fn dressed_distance(code: &CssCode, gauge: &GaugeSpec, method: Method) -> Result<DistanceReport> {
    let z = subsystem_distance(code, gauge, Basis::Z, method)?;
    let x = subsystem_distance(code, gauge, Basis::X, method)?;
    Ok(if x.value < z.value { x } else { z })
}

/// Re-choose the gauge logicals of one type to raise the dressed distance.
///
/// Gauge classes are fixed only modulo the `kept` logicals of the same type,
/// so any light dressed logical whose class has a gauge component can be
/// swapped in for one gauge generator without changing which logical qubits
/// are kept. Each round estimates the dressed distance with `method`, and
/// swaps the witness in when it has a gauge component. The search stops when
/// the lightest witness is a pure kept class or after `rounds` rounds. The
/// best gauge list seen is returned with its report.
pub fn refine_gauge(
    code: &CssCode,
    basis: Basis,
    kept: &[BitVector],
    gauge: &[BitVector],
    method: Method,
    rounds: usize,
) -> Result<(Vec<BitVector>, DistanceReport)> {
    let (_, stabs) = code.checks_and_stabilisers(basis);
    let spec = |g: &[BitVector]| match basis {
        Basis::Z => GaugeSpec {
            gauge_z: g.to_vec(),
            gauge_x: Vec::new(),
        },
        Basis::X => GaugeSpec {
            gauge_z: Vec::new(),
            gauge_x: g.to_vec(),
        },
    };
    let mut current = gauge.to_vec();
    let mut best: Option<(Vec<BitVector>, DistanceReport)> = None;
    for round in 0..=rounds {
        let report = subsystem_distance(code, &spec(&current), basis, method)?;
        if best.as_ref().is_none_or(|(_, b)| report.value > b.value) {
            best = Some((current.clone(), report.clone()));
        }
        if round == rounds {
            break;
        }
        let sources = stabs.rows() + kept.len() + current.len();
        let mut reducer = RowReducer::with_tracking(code.n(), sources);
        let rows = stabs.row_vectors().into_iter().chain(kept.iter().cloned()).chain(current.iter().cloned());
        for (i, v) in rows.enumerate() {
            reducer.insert_tracked(v, i);
        }
        let offset = stabs.rows() + kept.len();
        let combo = reducer
            .express(&report.witness)
            .ok_or_else(|| Error::InvalidArgument("kept and gauge logicals do not span the logical space".into()))?;
        match (0..current.len()).find(|&j| combo.get(offset + j)) {
            Some(j) => current[j] = report.witness,
            None => break,
        }
    }
    Ok(best.expect("at least one round runs"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{qrm15, shor};

    #[test]
    fn shor_distances_agree() {
        let c = shor();
        for basis in [Basis::Z, Basis::X] {
            let e = distance_enumerate(&c, basis).unwrap().value;
            let i = distance_incremental(&c, basis, None).unwrap().value;
            let r = distance_upper_random(&c, basis, 100, 7).unwrap().value;
            assert_eq!((e, i, r), (3, 3, 3));
        }
    }

    #[test]
    fn qrm_x_distance() {
        let c = qrm15();
        assert_eq!(distance_exact(&c, Basis::X, None).unwrap().value, 7);
        assert_eq!(distance_incremental(&c, Basis::Z, None).unwrap().value, 3);
        assert_eq!(distance_incremental(&c, Basis::X, Some(5)), Err(Error::CapExceeded(5)));
    }

    #[test]
    fn zero_k_has_no_logicals() {
        let c = crate::css::tensor_code(&BitMatrix::from_strs(&["1"]), &BitMatrix::from_strs(&["1"])).unwrap();
        assert_eq!(distance_exact(&c, Basis::Z, None), Err(Error::NoLogicals));
        assert_eq!(distance_upper_random(&c, Basis::Z, 10, 0), Err(Error::NoLogicals));
    }

    #[test]
    fn random_search_is_reproducible() {
        let c = crate::families::toric(4, 4).unwrap();
        let a = distance_upper_random(&c, Basis::Z, 50, 99).unwrap();
        let b = distance_upper_random(&c, Basis::Z, 50, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reducible_representative_is_improved() {
        let c = shor();
        let all = BitVector::parse("111111111").unwrap();
        let rep = find_irreducible_representative(&c, &all, Basis::Z, 50, 3).unwrap().unwrap();
        assert_eq!(rep.weight(), 3);
    }

    #[test]
    fn empty_gauge_matches_plain_distance() {
        let c = shor();
        let d = dressed_distance(&c, &GaugeSpec::default(), Method::Exact { max_weight: None }).unwrap();
        assert_eq!(d.value, 3);
    }

    #[test]
    fn refining_a_mixed_gauge_recovers_the_distance() {
        // A distance-5 block beside a Shor block. Keeping the first block's
        // logical and gauging the sum of both makes the weight-3 Shor logical
        // a dressed logical; gauging the Shor logical alone gives distance 5.
        let big = crate::families::rotated_surface(5).unwrap();
        let c = big.direct_sum(&shor());
        let za = logical_basis(&big).reps(Basis::Z)[0].concat(&BitVector::zeros(9));
        let zb = BitVector::zeros(25).concat(&BitVector::parse("100100100").unwrap());
        let exact = Method::Exact { max_weight: None };
        let mixed = vec![za.xor(&zb)];
        let before = subsystem_distance(&c, &GaugeSpec { gauge_z: mixed.clone(), gauge_x: Vec::new() }, Basis::Z, exact);
        assert_eq!(before.unwrap().value, 3);
        let (g, rep) = refine_gauge(&c, Basis::Z, &[za], &mixed, exact, 4).unwrap();
        assert_eq!(rep.value, 5);
        assert!(crate::logicals::is_logical(&c, &g[0], Basis::Z));
    }
}
