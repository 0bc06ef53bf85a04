//! Constructors for the code families used throughout the crate.

use crate::css::{tensor_code, CssCode};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::ring::{parse_poly, Moduli, RingMatrix, RingPoly};

/// A named family member with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// Bit-flip repetition code on `n` qubits (Z checks only).
    Repetition { n: usize },
    Shor,
    Steane,
    /// The 15-qubit quantum Reed–Muller code.
    Qrm15,
    /// Unrotated planar surface code of distance `d`.
    Surface { d: usize },
    /// Rotated surface code of distance `d`.
    RotatedSurface { d: usize },
    /// Toric code on an `l1 × l2` torus.
    Toric { l1: usize, l2: usize },
    /// Hypergraph product of two classical parity-check matrices.
    HypergraphProduct { h1: BitMatrix, h2: BitMatrix },
    /// Lifted product of two matrices over a circulant ring.
    LiftedProduct { a: RingMatrix, b: RingMatrix },
    /// Lift-connected surface code with base length `big_l` and circulant size `l`.
    Lcs { big_l: usize, l: usize },
    /// Generalised bicycle code from two univariate polynomials.
    Gb { a: RingPoly, b: RingPoly },
    /// Bivariate bicycle code from two bivariate polynomials.
    Bb { a: RingPoly, b: RingPoly },
    /// The [[144,12,12]] bivariate bicycle code.
    Gross,
    /// The explicit [[15,3,3]] lift-connected surface code used as a merge fixture.
    Lcs15Fixture,
}

/// Build the code described by `spec`.
pub fn build(spec: &FamilySpec) -> Result<CssCode> {
    match spec {
        FamilySpec::Repetition { n } => repetition(*n),
        FamilySpec::Shor => Ok(shor()),
        FamilySpec::Steane => Ok(steane()),
        FamilySpec::Qrm15 => Ok(qrm15()),
        FamilySpec::Surface { d } => surface(*d),
        FamilySpec::RotatedSurface { d } => rotated_surface(*d),
        FamilySpec::Toric { l1, l2 } => toric(*l1, *l2),
        FamilySpec::HypergraphProduct { h1, h2 } => hypergraph_product(h1, h2),
        FamilySpec::LiftedProduct { a, b } => lifted_product(a, b),
        FamilySpec::Lcs { big_l, l } => lcs(*big_l, *l),
        FamilySpec::Gb { a, b } => gb(a, b),
        FamilySpec::Bb { a, b } => bb(a, b),
        FamilySpec::Gross => Ok(gross()),
        FamilySpec::Lcs15Fixture => Ok(lcs15_fixture()),
    }
}

/// Classical repetition checks `Z_i Z_{i+1}` as an `(n-1) × n` matrix.
pub fn repetition_checks(n: usize) -> BitMatrix {
    let mut h = BitMatrix::zeros(n.saturating_sub(1), n);
    for i in 0..n.saturating_sub(1) {
        h.set(i, i, true);
        h.set(i, i + 1, true);
    }
    h
}

/// Cyclic repetition checks as an `n × n` matrix (row `i` covers `i` and `i+1 mod n`).
pub fn cyclic_repetition_checks(n: usize) -> BitMatrix {
    let mut h = BitMatrix::zeros(n, n);
    for i in 0..n {
        h.flip(i, i);
        h.flip(i, (i + 1) % n);
    }
    h
}

/// Bit-flip repetition code: Z-type checks between neighbours, no X checks.
pub fn repetition(n: usize) -> Result<CssCode> {
    if n < 2 {
        return Err(Error::InvalidSpec("repetition code needs n >= 2".into()));
    }
    CssCode::new(repetition_checks(n), BitMatrix::zeros(0, n))
}

/// The nine-qubit Shor code.
pub fn shor() -> CssCode {
    let pz = BitMatrix::from_strs(&[
        "110000000",
        "101000000",
        "000110000",
        "000101000",
        "000000110",
        "000000101",
    ]);
    let px = BitMatrix::from_strs(&["111111000", "111000111"]);
    CssCode::new(pz, px).expect("Shor checks commute")
}

/// The [7,4,3] Hamming parity-check matrix.
pub fn hamming_7_4() -> BitMatrix {
    BitMatrix::from_strs(&["1101100", "1011010", "0111001"])
}

/// The Steane code: both check matrices are the Hamming matrix.
pub fn steane() -> CssCode {
    CssCode::new(hamming_7_4(), hamming_7_4()).expect("Hamming code is self-orthogonal")
}

/// The 15-qubit quantum Reed–Muller code.
///
/// Qubit `j` is labelled by the nonzero 4-bit number `j + 1`. The X checks are
/// the four coordinate functions; the Z checks add their six pairwise products.
pub fn qrm15() -> CssCode {
    let bit = |j: usize, b: usize| ((j + 1) >> b) & 1 == 1;
    let mut px_rows = Vec::new();
    for b in 0..4 {
        px_rows.push(BitVector::from_bools((0..15).map(|j| bit(j, b))));
    }
    let mut pz_rows = px_rows.clone();
    for a in 0..4 {
        for b in a + 1..4 {
            pz_rows.push(BitVector::from_bools((0..15).map(|j| bit(j, a) && bit(j, b))));
        }
    }
    CssCode::new(BitMatrix::from_rows(15, &pz_rows), BitMatrix::from_rows(15, &px_rows))
        .expect("Reed-Muller checks commute")
}

/// Hypergraph product of `H1` (`m1 × n1`) and `H2` (`m2 × n2`) on `n1·n2 + m1·m2` qubits.
pub fn hypergraph_product(h1: &BitMatrix, h2: &BitMatrix) -> Result<CssCode> {
    tensor_code(h1, &h2.transpose())
}

/// Planar surface code of distance `d` on `d² + (d-1)²` qubits.
pub fn surface(d: usize) -> Result<CssCode> {
    if d < 2 {
        return Err(Error::InvalidSpec("surface code needs d >= 2".into()));
    }
    let r = repetition_checks(d);
    hypergraph_product(&r, &r)
}

/// Toric code on an `l1 × l2` torus (`2·l1·l2` qubits, two logical qubits).
pub fn toric(l1: usize, l2: usize) -> Result<CssCode> {
    if l1 < 2 || l2 < 2 {
        return Err(Error::InvalidSpec("toric code needs both sizes >= 2".into()));
    }
    tensor_code(&cyclic_repetition_checks(l1), &cyclic_repetition_checks(l2))
}

/// Rotated surface code of distance `d` on a `d × d` grid of qubits.
///
/// Qubit `(i, j)` has index `i·d + j`. Face `(i, j)` covers the four qubits
/// at its corners and is an X check when `i + j` is even. Weight-2 X checks
/// sit on the top and bottom edges and weight-2 Z checks on the left and right.
pub fn rotated_surface(d: usize) -> Result<CssCode> {
    if d < 2 {
        return Err(Error::InvalidSpec("rotated surface code needs d >= 2".into()));
    }
    let n = d * d;
    let q = |i: usize, j: usize| i * d + j;
    let mut xs: Vec<Vec<usize>> = Vec::new();
    let mut zs: Vec<Vec<usize>> = Vec::new();
    for i in 0..d - 1 {
        for j in 0..d - 1 {
            let face = vec![q(i, j), q(i, j + 1), q(i + 1, j), q(i + 1, j + 1)];
            if (i + j) % 2 == 0 {
                xs.push(face);
            } else {
                zs.push(face);
            }
        }
    }
    for j in 0..d - 1 {
        if j % 2 == 1 {
            xs.push(vec![q(0, j), q(0, j + 1)]);
        }
        if (d - 1 + j).is_multiple_of(2) {
            xs.push(vec![q(d - 1, j), q(d - 1, j + 1)]);
        }
    }
    for i in 0..d - 1 {
        if i % 2 == 0 {
            zs.push(vec![q(i, 0), q(i + 1, 0)]);
        }
        if (i + d - 1) % 2 == 1 {
            zs.push(vec![q(i, d - 1), q(i + 1, d - 1)]);
        }
    }
    let to_matrix = |sets: &[Vec<usize>]| {
        let rows: Vec<_> = sets.iter().map(|s| BitVector::from_indices(n, s)).collect();
        BitMatrix::from_rows(n, &rows)
    };
    CssCode::new(to_matrix(&zs), to_matrix(&xs))
}

/// Lifted product of two ring matrices `A: C_1 → C_0` and `B: D_1 → D_0`.
///
/// `P_Z = (A*⊗id | id⊗B*)` and `P_X = (id⊗B | A⊗id)` over the ring, expanded
/// to GF(2); `*` is the conjugate transpose. Over the trivial ring this is
/// [`tensor_code`].
pub fn lifted_product(a: &RingMatrix, b: &RingMatrix) -> Result<CssCode> {
    if a.moduli() != b.moduli() {
        return Err(Error::InvalidSpec("lifted product factors must share a ring".into()));
    }
    let r = a.moduli();
    let (c0, c1) = (a.rows(), a.cols());
    let (d0, d1) = (b.rows(), b.cols());
    let pz_left = a.adjoint().kron(&RingMatrix::identity(r, d1)).lift();
    let pz_right = RingMatrix::identity(r, c1).kron(&b.adjoint()).lift();
    let px_left = RingMatrix::identity(r, c0).kron(b).lift();
    let px_right = a.kron(&RingMatrix::identity(r, d0)).lift();
    CssCode::new(pz_left.hstack(&pz_right)?, px_left.hstack(&px_right)?)
}

/// The `L × (L+1)` base matrix of the lift-connected surface codes: `1` on the
/// diagonal and `1 + x` on the superdiagonal, over `F2[x]/(x^ℓ - 1)`.
pub fn lcs_base(big_l: usize, l: usize) -> RingMatrix {
    let ring = Moduli::univariate(l);
    let mut b = RingMatrix::zeros(ring, big_l, big_l + 1);
    for i in 0..big_l {
        b.set(i, i, RingPoly::one(ring));
        b.set(i, i + 1, RingPoly::from_exponents(l, &[0, 1]));
    }
    b
}

/// Lift-connected surface code with `((L+1)² + L²)·ℓ` qubits and `ℓ` logical qubits.
pub fn lcs(big_l: usize, l: usize) -> Result<CssCode> {
    if big_l < 1 || l < 1 {
        return Err(Error::InvalidSpec("lcs code needs L >= 1 and l >= 1".into()));
    }
    let b = lcs_base(big_l, l);
    lifted_product(&b.adjoint(), &b)
}

/// Bicycle-type code `P_X = (A | B)`, `P_Z = (B^T | A^T)` from two commuting square matrices.
fn bicycle(a: &BitMatrix, b: &BitMatrix) -> Result<CssCode> {
    let px = a.hstack(b)?;
    let pz = b.transpose().hstack(&a.transpose())?;
    CssCode::new(pz, px)
}

/// Generalised bicycle code from univariate polynomials `a(x)`, `b(x)`.
pub fn gb(a: &RingPoly, b: &RingPoly) -> Result<CssCode> {
    if a.moduli() != b.moduli() || a.moduli().m.is_some() {
        return Err(Error::InvalidSpec("gb needs two polynomials over one univariate ring".into()));
    }
    bicycle(&a.lift(), &b.lift())
}

/// Bivariate bicycle code from polynomials `A(x, y)`, `B(x, y)`.
pub fn bb(a: &RingPoly, b: &RingPoly) -> Result<CssCode> {
    if a.moduli() != b.moduli() || a.moduli().m.is_none() {
        return Err(Error::InvalidSpec("bb needs two polynomials over one bivariate ring".into()));
    }
    bicycle(&a.lift(), &b.lift())
}

/// Generators of the gross code: `ℓ = 12`, `m = 6`, `A = x³ + y + y²`, `B = y³ + x + x²`.
pub fn gross_generators() -> (RingPoly, RingPoly) {
    let ring = Moduli::bivariate(12, 6);
    (
        parse_poly("x^3 + y + y^2", ring).expect("valid polynomial"),
        parse_poly("y^3 + x + x^2", ring).expect("valid polynomial"),
    )
}

/// The [[144,12,12]] gross code.
pub fn gross() -> CssCode {
    let (a, b) = gross_generators();
    bb(&a, &b).expect("gross code generators commute")
}

/// Generators of the [[126,28,8]] generalised bicycle code with `ℓ = 63`.
pub fn gb126_generators() -> (RingPoly, RingPoly) {
    (
        RingPoly::from_exponents(63, &[0, 1, 14, 16, 22]),
        RingPoly::from_exponents(63, &[0, 3, 13, 20, 42]),
    )
}

/// The [[126,28,8]] generalised bicycle code.
pub fn gb126() -> CssCode {
    let (a, b) = gb126_generators();
    gb(&a, &b).expect("generalised bicycle checks commute")
}

/// An explicit [[15,3,3]] lift-connected surface code, kept verbatim as a
/// merge fixture; qubits 2, 9 and 14 carry an irreducible Z logical.
pub fn lcs15_fixture() -> CssCode {
    let pz = BitMatrix::from_strs(&[
        "100000110000100",
        "010000011000010",
        "001000101000001",
        "000100000110101",
        "000010000011110",
        "000001000101011",
    ]);
    let px = BitMatrix::from_strs(&[
        "100110000000100",
        "010011000000010",
        "001101000000001",
        "000000100110101",
        "000000010011110",
        "000000001101011",
    ]);
    CssCode::new(pz, px).expect("fixture checks commute")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_family_parameters() {
        assert_eq!((shor().n(), shor().k()), (9, 1));
        assert_eq!((steane().n(), steane().k()), (7, 1));
        assert_eq!((qrm15().n(), qrm15().k()), (15, 1));
        let s = surface(3).unwrap();
        assert_eq!((s.n(), s.k()), (13, 1));
        let r = rotated_surface(3).unwrap();
        assert_eq!((r.n(), r.k()), (9, 1));
        let t = toric(3, 3).unwrap();
        assert_eq!((t.n(), t.k()), (18, 2));
        let f = lcs15_fixture();
        assert_eq!((f.n(), f.k()), (15, 3));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(lcs(0, 3).is_err());
        assert!(surface(1).is_err());
        assert!(repetition(1).is_err());
        let x = RingPoly::one(Moduli::univariate(3));
        let y = RingPoly::one(Moduli::bivariate(3, 2));
        assert!(gb(&x, &y).is_err());
        assert!(bb(&x, &x).is_err());
    }

    #[test]
    fn lifted_product_over_trivial_ring_is_tensor_code() {
        let ring = Moduli::univariate(1);
        let mut a = RingMatrix::zeros(ring, 2, 3);
        let h = repetition_checks(3);
        for i in 0..2 {
            for j in 0..3 {
                if h.get(i, j) {
                    a.set(i, j, RingPoly::one(ring));
                }
            }
        }
        let lp = lifted_product(&a, &a).unwrap();
        let tc = tensor_code(&h, &h).unwrap();
        assert_eq!(lp, tc);
    }
}
