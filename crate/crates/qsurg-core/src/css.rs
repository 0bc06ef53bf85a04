//! CSS codes as length-2 chain complexes `C_2 → C_1 → C_0` over GF(2).
//!
//! `∂_2 = P_Z^T` maps Z checks to qubits and `∂_1 = P_X` maps qubits to X checks.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Pauli type of a logical operator, merge or distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Z,
    X,
}

impl Basis {
    pub fn other(self) -> Self {
        match self {
            Self::Z => Self::X,
            Self::X => Self::Z,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Z => "Z",
            Self::X => "X",
        })
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "z" | "Z" => Ok(Self::Z),
            "x" | "X" => Ok(Self::X),
            other => Err(Error::InvalidArgument(format!("unknown basis {other:?}"))),
        }
    }
}

/// A validated CSS code: `P_X · P_Z^T = 0` and both matrices have `n` columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CssCode {
    pz: BitMatrix,
    px: BitMatrix,
}

impl CssCode {
    /// Validate and build a code from its Z and X parity-check matrices.
    pub fn new(pz: BitMatrix, px: BitMatrix) -> Result<Self> {
        if pz.cols() != px.cols() {
            return Err(Error::Shape(format!(
                "P_Z has {} columns but P_X has {}",
                pz.cols(),
                px.cols()
            )));
        }
        let prod = px.mul(&pz.transpose())?;
        if let Some((row, col)) = first_one(&prod) {
            return Err(Error::Commutation { row, col });
        }
        Ok(Self { pz, px })
    }

    /// The code with no checks on `n` qubits.
    pub fn trivial(n: usize) -> Self {
        Self {
            pz: BitMatrix::zeros(0, n),
            px: BitMatrix::zeros(0, n),
        }
    }

    pub fn pz(&self) -> &BitMatrix {
        &self.pz
    }

    pub fn px(&self) -> &BitMatrix {
        &self.px
    }

    /// Number of data qubits.
    pub fn n(&self) -> usize {
        self.pz.cols()
    }

    pub fn mz(&self) -> usize {
        self.pz.rows()
    }

    pub fn mx(&self) -> usize {
        self.px.rows()
    }

    /// `∂_2 = P_Z^T`.
    pub fn d2(&self) -> BitMatrix {
        self.pz.transpose()
    }

    /// `∂_1 = P_X`.
    pub fn d1(&self) -> &BitMatrix {
        &self.px
    }

    /// Number of logical qubits, by rank–nullity.
    pub fn k(&self) -> usize {
        self.n() - self.pz.rank() - self.px.rank()
    }

    /// The dual complex: Z and X roles exchanged.
    pub fn dual(&self) -> Self {
        Self {
            pz: self.px.clone(),
            px: self.pz.clone(),
        }
    }

    /// Parity-check matrix detecting errors of the given logical type
    /// (P_X for Z logicals) and the stabiliser matrix of that type (P_Z).
    pub fn checks_and_stabilisers(&self, basis: Basis) -> (&BitMatrix, &BitMatrix) {
        match basis {
            Basis::Z => (&self.px, &self.pz),
            Basis::X => (&self.pz, &self.px),
        }
    }

    /// Direct sum `C ⊕ D`: block-diagonal parity checks.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            pz: self.pz.block_diag(&other.pz),
            px: self.px.block_diag(&other.px),
        }
    }

    /// Row/column weights and ω; distances are left empty.
    pub fn weights(&self) -> CodeStats {
        let (w_z, w_x) = (self.pz.max_row_weight(), self.px.max_row_weight());
        let (q_z, q_x) = (self.pz.max_col_weight(), self.px.max_col_weight());
        CodeStats {
            n: self.n(),
            k: self.k(),
            d_z: None,
            d_x: None,
            w_z,
            w_x,
            q_z,
            q_x,
            omega: w_z.max(w_x).max(q_z).max(q_x),
        }
    }

    /// Parameters and weights; exact distances are computed when `with_distance`
    /// is set and the code encodes at least one qubit.
    pub fn stats(&self, with_distance: bool) -> CodeStats {
        let mut s = self.weights();
        if with_distance && s.k > 0 {
            s.d_z = crate::distance::distance_exact(self, Basis::Z, None).ok().map(|r| r.value);
            s.d_x = crate::distance::distance_exact(self, Basis::X, None).ok().map(|r| r.value);
        }
        s
    }
}

impl fmt::Debug for CssCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CssCode {{ n: {}, pz: {:?}, px: {:?} }}", self.n(), self.pz, self.px)
    }
}

fn first_one(m: &BitMatrix) -> Option<(usize, usize)> {
    (0..m.rows()).find_map(|i| m.row(i).first_one().map(|j| (i, j)))
}

/// Parameters and LDPC weights of a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeStats {
    pub n: usize,
    pub k: usize,
    pub d_z: Option<usize>,
    pub d_x: Option<usize>,
    /// Maximum Z-check row weight.
    pub w_z: usize,
    /// Maximum X-check row weight.
    pub w_x: usize,
    /// Maximum number of Z checks on one qubit.
    pub q_z: usize,
    /// Maximum number of X checks on one qubit.
    pub q_x: usize,
    pub omega: usize,
}

/// A chain map between two codes: components on Z checks, qubits and X checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap2 {
    pub f2: BitMatrix,
    pub f1: BitMatrix,
    pub f0: BitMatrix,
}

impl ChainMap2 {
    /// Check that `f1·∂_2^C = ∂_2^D·f2` and `f0·∂_1^C = ∂_1^D·f1`.
    pub fn validate(&self, c: &CssCode, d: &CssCode) -> Result<bool> {
        let expect = |m: &BitMatrix, rows: usize, cols: usize, name: &str| {
            if m.shape() == (rows, cols) {
                Ok(())
            } else {
                Err(Error::Shape(format!(
                    "{name} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )))
            }
        };
        expect(&self.f2, d.mz(), c.mz(), "f2")?;
        expect(&self.f1, d.n(), c.n(), "f1")?;
        expect(&self.f0, d.mx(), c.mx(), "f0")?;
        let square_one = self.f1.mul(&c.d2())? == d.d2().mul(&self.f2)?;
        let square_two = self.f0.mul(c.d1())? == d.d1().mul(&self.f1)?;
        Ok(square_one && square_two)
    }

    /// The all-zero map from `c` to `d`.
    pub fn zero(c: &CssCode, d: &CssCode) -> Self {
        Self {
            f2: BitMatrix::zeros(d.mz(), c.mz()),
            f1: BitMatrix::zeros(d.n(), c.n()),
            f0: BitMatrix::zeros(d.mx(), c.mx()),
        }
    }
}

/// Tensor product of two classical codes given by parity matrices `A`, `B`.
///
/// `P_Z = (A^T ⊗ id | id ⊗ B^T)` and `P_X = (id ⊗ B | A ⊗ id)`, where the
/// qubits are `C_0 ⊗ D_1` followed by `C_1 ⊗ D_0` for `A: C_1 → C_0` and
/// `B: D_1 → D_0`, and the Z checks are `C_1 ⊗ D_1`.
pub fn tensor_code(a: &BitMatrix, b: &BitMatrix) -> Result<CssCode> {
    if a.rows() == 0 && a.cols() == 0 || b.rows() == 0 && b.cols() == 0 {
        return Err(Error::Shape("tensor_code needs nonempty classical codes".into()));
    }
    let (c0, c1) = (a.rows(), a.cols());
    let (d0, d1) = (b.rows(), b.cols());
    let pz = a
        .transpose()
        .kron(&BitMatrix::identity(d1))
        .hstack(&BitMatrix::identity(c1).kron(&b.transpose()))?;
    let px = BitMatrix::identity(c0)
        .kron(b)
        .hstack(&a.kron(&BitMatrix::identity(d0)))?;
    debug_assert_eq!(pz.rows(), c1 * d1);
    CssCode::new(pz, px)
}
