//! Logical operator bases, irreducibility, gauge-fixability and logical
//! operator subcomplexes.

use crate::css::{Basis, CssCode};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, RowReducer};

/// Paired representatives of the Z and X logical classes.
///
/// `z_reps[i] · x_reps[j] = δ_ij` over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalBasis {
    pub z_reps: Vec<BitVector>,
    pub x_reps: Vec<BitVector>,
}

impl LogicalBasis {
    pub fn k(&self) -> usize {
        self.z_reps.len()
    }

    /// Representatives of the given type.
    pub fn reps(&self, basis: Basis) -> &[BitVector] {
        match basis {
            Basis::Z => &self.z_reps,
            Basis::X => &self.x_reps,
        }
    }

    /// Representatives of the opposite type, used to detect nontrivial logicals.
    pub fn duals(&self, basis: Basis) -> &[BitVector] {
        self.reps(basis.other())
    }
}

/// Independent coset representatives of `ker(checks) / rowspan(stabs)`.
///
/// Kernel vectors are visited in free-column order; each one independent of
/// the stabilisers and earlier picks is reduced modulo the stabilisers to its
/// canonical coset representative.
pub fn coset_representatives(checks: &BitMatrix, stabs: &BitMatrix) -> Vec<BitVector> {
    let stab_only = RowReducer::from_matrix(stabs);
    let mut all = stab_only.clone();
    let mut reps = Vec::new();
    for v in checks.kernel_basis() {
        if all.insert(v.clone()) {
            reps.push(stab_only.reduce(&v));
        }
    }
    reps
}

/// Deterministic paired basis of the logical operators.
pub fn logical_basis(code: &CssCode) -> LogicalBasis {
    let z_reps = coset_representatives(code.px(), code.pz());
    let x_raw = coset_representatives(code.pz(), code.px());
    let x_reps = pair_against(&z_reps, &x_raw);
    LogicalBasis { z_reps, x_reps }
}

/// Given `k` Z and `k` X representatives with an invertible pairing matrix,
/// recombine the X ones so the pairing becomes the identity.
pub fn pair_against(z_reps: &[BitVector], x_raw: &[BitVector]) -> Vec<BitVector> {
    let k = z_reps.len();
    assert_eq!(k, x_raw.len(), "logical counts disagree");
    if k == 0 {
        return Vec::new();
    }
    let mut pairing = BitMatrix::zeros(k, k);
    for (i, z) in z_reps.iter().enumerate() {
        for (j, x) in x_raw.iter().enumerate() {
            if z.dot(x) {
                pairing.set(i, j, true);
            }
        }
    }
    let inv = pairing.inverse().expect("homology pairing is nondegenerate");
    let n = x_raw[0].len();
    let raw = BitMatrix::from_rows(n, x_raw);
    (0..k)
        .map(|j| raw.vec_mul(&inv.col(j)).expect("shapes agree"))
        .collect()
}

/// True iff `v` is a nontrivial logical of the given type.
pub fn is_logical(code: &CssCode, v: &BitVector, basis: Basis) -> bool {
    let (checks, stabs) = code.checks_and_stabilisers(basis);
    v.len() == code.n()
        && checks.mul_vec(v).map(|s| s.is_zero()).unwrap_or(false)
        && !stabs.in_span(v).unwrap_or(true)
}

fn require_logical(code: &CssCode, v: &BitVector, basis: Basis) -> Result<()> {
    if is_logical(code, v, basis) {
        Ok(())
    } else {
        Err(Error::NotALogical(basis.to_string()))
    }
}

/// The parity-check matrix restricted to a logical's support, with the
/// all-zero rows dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    /// `|V_0| × |V_1|` restricted boundary.
    pub boundary: BitMatrix,
    /// Parent qubits in the support, ascending.
    pub qubit_indices: Vec<usize>,
    /// Parent checks meeting the support, in parent row order.
    pub check_indices: Vec<usize>,
}

impl Subcomplex {
    /// `|V_1|`, the number of qubits.
    pub fn n_qubits(&self) -> usize {
        self.qubit_indices.len()
    }

    /// `|V_0|`, the number of adjacent checks.
    pub fn n_checks(&self) -> usize {
        self.check_indices.len()
    }

    /// Dimension of the kernel of the restricted boundary.
    pub fn kernel_dim(&self) -> usize {
        self.boundary.cols() - self.boundary.rank()
    }

    pub fn is_irreducible(&self) -> bool {
        self.kernel_dim() == 1
    }
}

/// Restrict the checks detecting `v` to `supp(v)` and drop untouched checks.
pub fn restricted_matrix(code: &CssCode, v: &BitVector, basis: Basis) -> Result<Subcomplex> {
    require_logical(code, v, basis)?;
    Ok(restrict_unchecked(code, v, basis))
}

pub(crate) fn restrict_unchecked(code: &CssCode, v: &BitVector, basis: Basis) -> Subcomplex {
    let (checks, _) = code.checks_and_stabilisers(basis);
    let qubit_indices = v.support();
    let cols = checks.select_cols(&qubit_indices);
    let check_indices: Vec<usize> = (0..cols.rows()).filter(|&i| !cols.row_is_zero(i)).collect();
    Subcomplex {
        boundary: cols.select_rows(&check_indices),
        qubit_indices,
        check_indices,
    }
}

/// True iff no other nonzero kernel vector lies inside `supp(v)`.
pub fn is_irreducible(code: &CssCode, v: &BitVector, basis: Basis) -> Result<bool> {
    Ok(restricted_matrix(code, v, basis)?.is_irreducible())
}

/// True iff, for each adjacent pair `(i, j)` of the ordered support, some
/// product of checks `a` satisfies `v ⊙ a = e_i + e_j`.
pub fn is_gauge_fixable(code: &CssCode, v: &BitVector, basis: Basis) -> Result<bool> {
    require_logical(code, v, basis)?;
    let (checks, _) = code.checks_and_stabilisers(basis);
    let support = v.support();
    let restricted = RowReducer::from_matrix(&checks.select_cols(&support));
    Ok((1..support.len()).all(|t| {
        let pair = BitVector::from_indices(support.len(), &[t - 1, t]);
        restricted.contains(&pair)
    }))
}

/// For each qubit `q` of `supp(v)`, a logical of the opposite type meeting the
/// support exactly in `q`, or `None` if some qubit has no such operator.
pub fn fixing_operators(code: &CssCode, v: &BitVector, basis: Basis) -> Result<Option<Vec<BitVector>>> {
    require_logical(code, v, basis)?;
    let (_, stabs) = code.checks_and_stabilisers(basis);
    let support = v.support();
    let kernel = BitMatrix::from_rows(code.n(), &stabs.kernel_basis());
    let restricted = kernel.select_cols(&support);
    let mut out = Vec::with_capacity(support.len());
    for t in 0..support.len() {
        let target = BitVector::from_indices(support.len(), &[t]);
        match restricted.solve_left(&target)? {
            Some(coeffs) => out.push(kernel.vec_mul(&coeffs)?),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}
