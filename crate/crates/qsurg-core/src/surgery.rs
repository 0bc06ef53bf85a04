//! Code surgery by colimits of chain complexes.
//!
//! Every merge is computed the same way: form the direct sum of the input
//! code(s) with an ancilla complex, then quotient by identifying pairs of
//! qubits and pairs of X checks. In the quotient, Z-check rows are XORed over
//! glued qubits; X-check rows are XORed over glued checks and then the glued
//! qubit columns are ORed together.
//!
//! X-basis operations run on the dual complexes (P_Z and P_X exchanged) and
//! dualise the result back.
//!
//! Labelling of a merged code: each glued class keeps its lowest index, so a
//! qubit of the first code absorbs its partners; elements of the ancilla patch
//! follow all original elements, slice-major and V-index-minor; absorbed
//! elements are deleted and later indices shift down.

use crate::css::{Basis, ChainMap2, CssCode};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, RowReducer};
use crate::logicals::{logical_basis, pair_against, restricted_matrix, Subcomplex};
use crate::span::{find_monic_span, MonicSpan};

/// Shape of an ancilla chain complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AncillaKind {
    /// Path graph with `r + 1` vertices and `r` edges.
    Path,
    /// Path graph with its last vertex removed: `r` vertices and `r` edges.
    TruncatedPath,
}

/// A classical ancilla complex `A_1 → A_0` of depth `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AncillaComplex {
    pub kind: AncillaKind,
    pub depth: usize,
    /// Vertex-by-edge incidence matrix.
    pub boundary: BitMatrix,
}

/// The path complex: `(r+1) × r`, column `j` has ones in rows `j` and `j+1`.
pub fn path_complex(r: usize) -> Result<AncillaComplex> {
    if r == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let mut m = BitMatrix::zeros(r + 1, r);
    for j in 0..r {
        m.set(j, j, true);
        m.set(j + 1, j, true);
    }
    Ok(AncillaComplex {
        kind: AncillaKind::Path,
        depth: r,
        boundary: m,
    })
}

/// The truncated path complex: `r × r` lower bidiagonal.
pub fn truncated_path_complex(r: usize) -> Result<AncillaComplex> {
    if r == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let mut m = BitMatrix::zeros(r, r);
    for j in 0..r {
        m.set(j, j, true);
        if j + 1 < r {
            m.set(j + 1, j, true);
        }
    }
    Ok(AncillaComplex {
        kind: AncillaKind::TruncatedPath,
        depth: r,
        boundary: m,
    })
}

/// Product of an ancilla complex with a subcomplex as a CSS code.
///
/// Qubits are `A_0 ⊗ V_1` (slice-major) followed by `A_1 ⊗ V_0`; Z checks are
/// `A_1 ⊗ V_1`; X checks are `A_0 ⊗ V_0`.
fn ancilla_product(ancilla: &AncillaComplex, v: &Subcomplex) -> CssCode {
    let (a, b) = (&ancilla.boundary, &v.boundary);
    let (a0, a1) = (a.rows(), a.cols());
    let (b0, b1) = (b.rows(), b.cols());
    let pz = a
        .transpose()
        .kron(&BitMatrix::identity(b1))
        .hstack(&BitMatrix::identity(a1).kron(&b.transpose()))
        .expect("block shapes agree");
    let px = BitMatrix::identity(a0)
        .kron(b)
        .hstack(&a.kron(&BitMatrix::identity(b0)))
        .expect("block shapes agree");
    CssCode::new(pz, px).expect("tensor products of complexes are complexes")
}

/// The sandwich code `W = P ⊗ V` of depth `r` for an irreducible subcomplex.
pub fn sandwich(v: &Subcomplex, r: usize) -> Result<CssCode> {
    if !v.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    Ok(ancilla_product(&path_complex(r)?, v))
}

/// The measurement patch `S ⊗ V` of depth `r` for an irreducible subcomplex.
pub fn measurement_patch(v: &Subcomplex, r: usize) -> Result<CssCode> {
    if !v.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    Ok(ancilla_product(&truncated_path_complex(r)?, v))
}

/// Which construction produced a [`MergeResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MergeKind {
    Direct,
    External,
    Internal,
    Measurement,
}

/// A merged code together with its bookkeeping.
#[derive(Clone, Debug)]
pub struct MergeResult {
    pub kind: MergeKind,
    pub basis: Basis,
    /// Depth of the ancilla patch; 0 for a direct merge.
    pub depth: usize,
    /// The code before surgery (`C ⊕ D` or `C`).
    pub before: CssCode,
    pub merged: CssCode,
    /// `n_after × n_before` map on qubits from the initial code(s).
    pub inclusion: BitMatrix,
    pub new_qubits: Vec<usize>,
    pub new_z_checks: Vec<usize>,
    pub new_x_checks: Vec<usize>,
    pub old_z_logicals: Vec<BitVector>,
    pub old_x_logicals: Vec<BitVector>,
    pub new_z_logicals: Vec<BitVector>,
    pub new_x_logicals: Vec<BitVector>,
    /// `before ⊕ ancilla`, the complex that was quotiented.
    pub source: CssCode,
    /// Quotient map from `source` to `merged`. For X-basis merges it is a
    /// chain map between the dual complexes.
    pub coequaliser: ChainMap2,
    /// The span used to align the two logicals (absent for measurements).
    pub span: Option<MonicSpan>,
}

impl MergeResult {
    /// Number of fresh data qubits introduced by the ancilla patch; 0 for a
    /// direct merge, which only identifies existing qubits.
    pub fn n_ancilla_qubits(&self) -> usize {
        self.new_qubits.len()
    }

    /// Check that the stored quotient map commutes with both differentials.
    pub fn validate_coequaliser(&self) -> Result<bool> {
        match self.basis {
            Basis::Z => self.coequaliser.validate(&self.source, &self.merged),
            Basis::X => self.coequaliser.validate(&self.source.dual(), &self.merged.dual()),
        }
    }
}

/// Old and new logical classes of a merged code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalClassification {
    pub old_z: Vec<BitVector>,
    pub new_z: Vec<BitVector>,
    pub old_x: Vec<BitVector>,
    pub new_x: Vec<BitVector>,
}

/// Split the logical classes of `merged` into images of the classes of
/// `before` (under `inclusion`) and a complementary set of new classes.
///
/// Old Z logicals are independent images of the pre-merge representatives;
/// new Z logicals extend them to a basis. The X logicals are the paired dual
/// basis, split the same way.
pub fn classify_logicals(before: &CssCode, merged: &CssCode, inclusion: &BitMatrix) -> LogicalClassification {
    let pre = logical_basis(before);
    let post = logical_basis(merged);
    let mut span = RowReducer::from_matrix(merged.pz());
    let mut old_z = Vec::new();
    for z in &pre.z_reps {
        let image = inclusion.mul_vec(z).expect("inclusion matches the pre-merge code");
        if span.insert(image.clone()) {
            old_z.push(image);
        }
    }
    let mut new_z = Vec::new();
    for z in &post.z_reps {
        if span.insert(z.clone()) {
            new_z.push(z.clone());
        }
    }
    let all_z: Vec<BitVector> = old_z.iter().chain(&new_z).cloned().collect();
    let mut x = pair_against(&all_z, &post.x_reps);
    let new_x = x.split_off(old_z.len());
    LogicalClassification {
        old_z,
        new_z,
        old_x: x,
        new_x,
    }
}

/// Quotient of `source` identifying qubit pairs and X-check pairs.
struct Quotient {
    merged: CssCode,
    coequaliser: ChainMap2,
    qubit_class: Vec<usize>,
    check_class: Vec<usize>,
    qubit_members: Vec<Vec<usize>>,
    check_members: Vec<Vec<usize>>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn classes(size: usize, pairs: &[(usize, usize)]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut parent: Vec<usize> = (0..size).collect();
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let roots: Vec<usize> = (0..size).map(|x| find(&mut parent, x)).collect();
    let mut index_of_root = vec![usize::MAX; size];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut class = vec![0; size];
    for x in 0..size {
        let r = roots[x];
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = members.len();
            members.push(Vec::new());
        }
        class[x] = index_of_root[r];
        members[class[x]].push(x);
    }
    (class, members)
}

fn quotient(source: &CssCode, qubit_pairs: &[(usize, usize)], check_pairs: &[(usize, usize)]) -> Result<Quotient> {
    let (qubit_class, qubit_members) = classes(source.n(), qubit_pairs);
    let (check_class, check_members) = classes(source.mx(), check_pairs);
    let (n2, mx2) = (qubit_members.len(), check_members.len());

    let mut pz = BitMatrix::zeros(source.mz(), n2);
    for z in 0..source.mz() {
        for q in source.pz().row(z).support() {
            pz.flip(z, qubit_class[q]);
        }
    }
    let mut px = BitMatrix::zeros(mx2, n2);
    for (c, members) in check_members.iter().enumerate() {
        let mut row = BitVector::zeros(source.n());
        for &x in members {
            row.xor_assign(&source.px().row(x));
        }
        for q in row.support() {
            px.set(c, qubit_class[q], true);
        }
    }
    let merged = CssCode::new(pz, px)?;

    let mut f1 = BitMatrix::zeros(n2, source.n());
    for (q, &c) in qubit_class.iter().enumerate() {
        f1.set(c, q, true);
    }
    let mut f0 = BitMatrix::zeros(mx2, source.mx());
    for (x, &c) in check_class.iter().enumerate() {
        f0.set(c, x, true);
    }
    Ok(Quotient {
        merged,
        coequaliser: ChainMap2 {
            f2: BitMatrix::identity(source.mz()),
            f1,
            f0,
        },
        qubit_class,
        check_class,
        qubit_members,
        check_members,
    })
}

/// Offsets of the first qubit and first X check of each summand.
#[derive(Clone, Copy)]
struct Offsets {
    qubit: usize,
    check: usize,
}

type IndexPairs = Vec<(usize, usize)>;

/// Pairs gluing slice `slice` of a patch (at `patch`) onto a subcomplex of a
/// code (at `code`), aligned by `col_map` / `row_map` (slot in the patch's `V`
/// to slot in the target subcomplex).
fn slice_pairs(
    target: &Subcomplex,
    code: Offsets,
    patch: Offsets,
    slice: usize,
    col_map: &[usize],
    row_map: &[usize],
) -> (IndexPairs, IndexPairs) {
    let (v1, v0) = (col_map.len(), row_map.len());
    let qubits = (0..v1)
        .map(|j| (code.qubit + target.qubit_indices[col_map[j]], patch.qubit + slice * v1 + j))
        .collect();
    let checks = (0..v0)
        .map(|i| (code.check + target.check_indices[row_map[i]], patch.check + slice * v0 + i))
        .collect();
    (qubits, checks)
}

struct Assembly {
    kind: MergeKind,
    basis: Basis,
    depth: usize,
    before: CssCode,
    source: CssCode,
    qubit_pairs: Vec<(usize, usize)>,
    check_pairs: Vec<(usize, usize)>,
    span: Option<MonicSpan>,
}

/// Quotient the assembled complex (Z orientation) and dualise back if needed.
fn finish(a: Assembly) -> Result<MergeResult> {
    let q = quotient(&a.source, &a.qubit_pairs, &a.check_pairs)?;
    let n_before = a.before.n();
    let mx_before = a.before.mx();
    let new_qubits: Vec<usize> = q
        .qubit_members
        .iter()
        .enumerate()
        .filter(|(_, m)| m.iter().all(|&x| x >= n_before))
        .map(|(c, _)| c)
        .collect();
    let new_x_checks: Vec<usize> = q
        .check_members
        .iter()
        .enumerate()
        .filter(|(_, m)| m.iter().all(|&x| x >= mx_before))
        .map(|(c, _)| c)
        .collect();
    let new_z_checks: Vec<usize> = (a.before.mz()..a.source.mz()).collect();
    let mut inclusion = BitMatrix::zeros(q.merged.n(), n_before);
    for x in 0..n_before {
        inclusion.set(q.qubit_class[x], x, true);
    }
    debug_assert_eq!(q.check_class.len(), a.source.mx());
    let logicals = classify_logicals(&a.before, &q.merged, &inclusion);
    let dualise = a.basis == Basis::X;
    let orient = |c: CssCode| if dualise { c.dual() } else { c };
    let (old_z, old_x, new_z, new_x, nz, nx) = if dualise {
        (logicals.old_x, logicals.old_z, logicals.new_x, logicals.new_z, new_x_checks, new_z_checks)
    } else {
        (logicals.old_z, logicals.old_x, logicals.new_z, logicals.new_x, new_z_checks, new_x_checks)
    };
    Ok(MergeResult {
        kind: a.kind,
        basis: a.basis,
        depth: a.depth,
        before: orient(a.before),
        merged: orient(q.merged),
        inclusion,
        new_qubits,
        new_z_checks: nz,
        new_x_checks: nx,
        old_z_logicals: old_z,
        old_x_logicals: old_x,
        new_z_logicals: new_z,
        new_x_logicals: new_x,
        source: orient(a.source),
        coequaliser: q.coequaliser,
        span: a.span,
    })
}

fn oriented(code: &CssCode, basis: Basis) -> CssCode {
    match basis {
        Basis::Z => code.clone(),
        Basis::X => code.dual(),
    }
}

fn subcomplexes(c: &CssCode, d: &CssCode, u: &BitVector, v: &BitVector) -> Result<(Subcomplex, Subcomplex)> {
    Ok((restricted_matrix(c, u, Basis::Z)?, restricted_matrix(d, v, Basis::Z)?))
}

fn identity_map(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Quotient `C ⊕ D` by identifying the supports of `u` and `v` (no ancilla).
///
/// `u` need not be irreducible, but the two subcomplexes must be isomorphic.
pub fn direct_merge(c: &CssCode, d: &CssCode, u: &BitVector, v: &BitVector, basis: Basis) -> Result<MergeResult> {
    let (cw, dw) = (oriented(c, basis), oriented(d, basis));
    let (a, b) = subcomplexes(&cw, &dw, u, v)?;
    let span = find_monic_span(&a, &b).ok_or(Error::NoSpan)?;
    let before = cw.direct_sum(&dw);
    let qubit_pairs = (0..a.n_qubits())
        .map(|j| (a.qubit_indices[j], cw.n() + b.qubit_indices[span.col_perm[j]]))
        .collect();
    let check_pairs = (0..a.n_checks())
        .map(|i| (a.check_indices[i], cw.mx() + b.check_indices[span.row_perm[i]]))
        .collect();
    finish(Assembly {
        kind: MergeKind::Direct,
        basis,
        depth: 0,
        source: before.clone(),
        before,
        qubit_pairs,
        check_pairs,
        span: Some(span),
    })
}

/// Merge two codes through a depth-`r` sandwich patch `P ⊗ V`.
///
/// Slice 0 of the patch is glued onto `u` in `C` and slice `r` onto `v` in `D`.
pub fn external_merge(
    c: &CssCode,
    d: &CssCode,
    u: &BitVector,
    v: &BitVector,
    basis: Basis,
    r: usize,
) -> Result<MergeResult> {
    let (cw, dw) = (oriented(c, basis), oriented(d, basis));
    let (a, b) = subcomplexes(&cw, &dw, u, v)?;
    if !a.is_irreducible() || !b.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let span = find_monic_span(&a, &b).ok_or(Error::NoSpan)?;
    let patch = sandwich(&a, r)?;
    let before = cw.direct_sum(&dw);
    let source = before.direct_sum(&patch);
    let at_c = Offsets { qubit: 0, check: 0 };
    let at_d = Offsets {
        qubit: cw.n(),
        check: cw.mx(),
    };
    let at_patch = Offsets {
        qubit: before.n(),
        check: before.mx(),
    };
    let (mut qubit_pairs, mut check_pairs) = slice_pairs(
        &a,
        at_c,
        at_patch,
        0,
        &identity_map(a.n_qubits()),
        &identity_map(a.n_checks()),
    );
    let (qd, cd) = slice_pairs(&b, at_d, at_patch, r, &span.col_perm, &span.row_perm);
    qubit_pairs.extend(qd);
    check_pairs.extend(cd);
    finish(Assembly {
        kind: MergeKind::External,
        basis,
        depth: r,
        before,
        source,
        qubit_pairs,
        check_pairs,
        span: Some(span),
    })
}

/// Merge two disjoint logicals of one code through a depth-`r` sandwich patch.
pub fn internal_merge(c: &CssCode, u: &BitVector, v: &BitVector, basis: Basis, r: usize) -> Result<MergeResult> {
    let cw = oriented(c, basis);
    let (a, b) = subcomplexes(&cw, &cw, u, v)?;
    if !a.is_irreducible() || !b.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    if a.qubit_indices.iter().any(|q| b.qubit_indices.contains(q)) {
        return Err(Error::Overlap("data qubits".into()));
    }
    if a.check_indices.iter().any(|x| b.check_indices.contains(x)) {
        return Err(Error::Overlap("adjacent checks".into()));
    }
    let span = find_monic_span(&a, &b).ok_or(Error::NoSpan)?;
    let patch = sandwich(&a, r)?;
    let source = cw.direct_sum(&patch);
    let at_c = Offsets { qubit: 0, check: 0 };
    let at_patch = Offsets {
        qubit: cw.n(),
        check: cw.mx(),
    };
    let (mut qubit_pairs, mut check_pairs) = slice_pairs(
        &a,
        at_c,
        at_patch,
        0,
        &identity_map(a.n_qubits()),
        &identity_map(a.n_checks()),
    );
    let (qv, cv) = slice_pairs(&b, at_c, at_patch, r, &span.col_perm, &span.row_perm);
    qubit_pairs.extend(qv);
    check_pairs.extend(cv);
    finish(Assembly {
        kind: MergeKind::Internal,
        basis,
        depth: r,
        before: cw,
        source,
        qubit_pairs,
        check_pairs,
        span: Some(span),
    })
}

/// Measure a single logical by gluing the first slice of `S ⊗ V` onto it.
pub fn single_qubit_measure(c: &CssCode, u: &BitVector, basis: Basis, r: usize) -> Result<MergeResult> {
    let cw = oriented(c, basis);
    let a = restricted_matrix(&cw, u, Basis::Z)?;
    let patch = measurement_patch(&a, r)?;
    let source = cw.direct_sum(&patch);
    let (qubit_pairs, check_pairs) = slice_pairs(
        &a,
        Offsets { qubit: 0, check: 0 },
        Offsets {
            qubit: cw.n(),
            check: cw.mx(),
        },
        0,
        &identity_map(a.n_qubits()),
        &identity_map(a.n_checks()),
    );
    finish(Assembly {
        kind: MergeKind::Measurement,
        basis,
        depth: r,
        before: cw,
        source,
        qubit_pairs,
        check_pairs,
        span: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::shor;

    fn shor_logical() -> BitVector {
        BitVector::parse("100100100").unwrap()
    }

    #[test]
    fn path_complexes() {
        assert_eq!(path_complex(1).unwrap().boundary, BitMatrix::from_strs(&["1", "1"]));
        assert_eq!(
            path_complex(3).unwrap().boundary,
            BitMatrix::from_strs(&["100", "110", "011", "001"])
        );
        assert_eq!(
            truncated_path_complex(3).unwrap().boundary,
            BitMatrix::from_strs(&["100", "110", "011"])
        );
        assert!(path_complex(0).is_err());
        assert!(truncated_path_complex(0).is_err());
    }

    #[test]
    fn shor_direct_merge_dimensions() {
        let c = shor();
        let m = direct_merge(&c, &c, &shor_logical(), &shor_logical(), Basis::Z).unwrap();
        assert_eq!((m.merged.mz(), m.merged.n(), m.merged.mx()), (12, 15, 2));
        assert!(m.validate_coequaliser().unwrap());
    }

    #[test]
    fn shor_measurement_counts() {
        let c = shor();
        let u = shor_logical();
        let m = single_qubit_measure(&c, &u, Basis::Z, 1).unwrap();
        assert_eq!(m.new_qubits.len(), 2);
        assert_eq!(m.new_z_checks.len(), 3);
        assert_eq!(m.new_x_checks.len(), 0);
        let image = m.inclusion.mul_vec(&u).unwrap();
        assert!(m.merged.pz().in_span(&image).unwrap());
        assert_eq!(m.merged.k(), 0);
    }

    #[test]
    fn x_basis_merge_runs_on_the_dual() {
        let c = shor();
        let x = BitVector::parse("111000000").unwrap();
        let m = external_merge(&c, &c, &x, &x, Basis::X, 1).unwrap();
        assert_eq!(m.merged.k(), 1);
        assert!(m.validate_coequaliser().unwrap());
        assert_eq!(m.new_x_checks.len(), 3);
    }
}
