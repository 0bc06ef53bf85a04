//! Group-algebra polynomials over GF(2) and their lifts to circulant matrices.
//!
//! A [`RingPoly`] lives in `F2[x]/(x^ℓ - 1)` or `F2[x, y]/(x^ℓ - 1, y^m - 1)`.
//! Exponents are reduced eagerly so equal polynomials compare equal.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Moduli of a univariate (`m = None`) or bivariate circulant ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Moduli {
    pub l: usize,
    pub m: Option<usize>,
}

impl Moduli {
    pub fn univariate(l: usize) -> Self {
        Self { l, m: None }
    }

    pub fn bivariate(l: usize, m: usize) -> Self {
        Self { l, m: Some(m) }
    }

    /// Side length of the lifted matrices.
    pub fn size(&self) -> usize {
        self.l * self.m.unwrap_or(1)
    }

    fn m_or_one(&self) -> usize {
        self.m.unwrap_or(1)
    }
}

/// An element of a circulant group algebra over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingPoly {
    moduli: Moduli,
    terms: BTreeSet<(usize, usize)>,
}

impl RingPoly {
    /// The zero polynomial.
    pub fn zero(moduli: Moduli) -> Self {
        assert!(moduli.l >= 1 && moduli.m_or_one() >= 1, "ring moduli must be positive");
        Self {
            moduli,
            terms: BTreeSet::new(),
        }
    }

    /// The unit polynomial `1`.
    pub fn one(moduli: Moduli) -> Self {
        Self::monomial(moduli, 0, 0)
    }

    /// The monomial `x^i y^j` (for a univariate ring `j` must be 0).
    pub fn monomial(moduli: Moduli, i: usize, j: usize) -> Self {
        let mut p = Self::zero(moduli);
        p.toggle(i, j);
        p
    }

    /// Sum of monomials with the given exponent pairs; repeated terms cancel.
    pub fn from_terms(moduli: Moduli, terms: &[(usize, usize)]) -> Self {
        let mut p = Self::zero(moduli);
        for &(i, j) in terms {
            p.toggle(i, j);
        }
        p
    }

    /// Univariate polynomial from the exponents of `x`.
    pub fn from_exponents(l: usize, exps: &[usize]) -> Self {
        let terms: Vec<(usize, usize)> = exps.iter().map(|&e| (e, 0)).collect();
        Self::from_terms(Moduli::univariate(l), &terms)
    }

    fn toggle(&mut self, i: usize, j: usize) {
        let key = (i % self.moduli.l, j % self.moduli.m_or_one());
        if !self.terms.remove(&key) {
            self.terms.insert(key);
        }
    }

    pub fn moduli(&self) -> Moduli {
        self.moduli
    }

    /// Exponent pairs `(i, j)` of the terms, sorted.
    pub fn terms(&self) -> Vec<(usize, usize)> {
        self.terms.iter().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.moduli, other.moduli, "ring mismatch");
        let mut out = self.clone();
        for &(i, j) in &other.terms {
            out.toggle(i, j);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.moduli, other.moduli, "ring mismatch");
        let mut out = Self::zero(self.moduli);
        for &(a, b) in &self.terms {
            for &(c, d) in &other.terms {
                out.toggle(a + c, b + d);
            }
        }
        out
    }

    /// The antipode `x^i y^j ↦ x^-i y^-j`; its lift is the transpose of the lift.
    pub fn conjugate(&self) -> Self {
        let (l, m) = (self.moduli.l, self.moduli.m_or_one());
        let mut out = Self::zero(self.moduli);
        for &(i, j) in &self.terms {
            out.toggle((l - i) % l, (m - j) % m);
        }
        out
    }

    /// Expand to a square GF(2) matrix.
    ///
    /// `x` becomes the right cyclic shift `S_ℓ` (ones at `(r, r+1 mod ℓ)`); in
    /// the bivariate ring `x ↦ S_ℓ ⊗ id_m` and `y ↦ id_ℓ ⊗ S_m`.
    pub fn lift(&self) -> BitMatrix {
        let (l, m) = (self.moduli.l, self.moduli.m_or_one());
        let mut out = BitMatrix::zeros(l * m, l * m);
        for &(i, j) in &self.terms {
            for a in 0..l {
                for b in 0..m {
                    let row = a * m + b;
                    let col = ((a + i) % l) * m + (b + j) % m;
                    out.flip(row, col);
                }
            }
        }
        out
    }
}

impl fmt::Display for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for &(i, j) in &self.terms {
            let mut s = String::new();
            if i > 0 {
                s.push('x');
                if i > 1 {
                    s.push_str(&format!("^{i}"));
                }
            }
            if j > 0 {
                if !s.is_empty() {
                    s.push('*');
                }
                s.push('y');
                if j > 1 {
                    s.push_str(&format!("^{j}"));
                }
            }
            if s.is_empty() {
                s.push('1');
            }
            parts.push(s);
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingPoly({self} mod {:?})", self.moduli)
    }
}

/// Parse a polynomial such as `"x^3 + y + y^2"`.
///
/// Grammar: terms separated by `+`; a term is `1`, a variable, or a variable
/// followed by `^` and an unsigned integer; variables are `x` and (bivariate
/// rings only) `y`. Whitespace is ignored.
pub fn parse_poly(text: &str, moduli: Moduli) -> Result<RingPoly> {
    if moduli.l == 0 || moduli.m == Some(0) {
        return Err(Error::InvalidSpec("ring moduli must be positive".into()));
    }
    let chars: Vec<(usize, char)> = text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    if chars.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    let mut poly = RingPoly::zero(moduli);
    let mut k = 0;
    loop {
        let Some(&(pos, c)) = chars.get(k) else {
            let end = chars.last().map_or(0, |&(p, _)| p + 1);
            return Err(err(end, "expected a term"));
        };
        k += 1;
        let (mut i, mut j) = (0usize, 0usize);
        match c {
            '1' => {}
            'x' | 'y' => {
                if c == 'y' && moduli.m.is_none() {
                    return Err(err(pos, "variable y is not available in a univariate ring"));
                }
                let mut exp = 1usize;
                if let Some(&(_, '^')) = chars.get(k) {
                    k += 1;
                    let start = k;
                    let mut digits = String::new();
                    while let Some(&(_, d)) = chars.get(k) {
                        if d.is_ascii_digit() {
                            digits.push(d);
                            k += 1;
                        } else {
                            break;
                        }
                    }
                    if digits.is_empty() {
                        let p = chars.get(start).map_or(pos + 2, |&(p, _)| p);
                        return Err(err(p, "expected an exponent after '^'"));
                    }
                    exp = digits.parse().map_err(|_| err(pos, "exponent too large"))?;
                }
                if c == 'x' {
                    i = exp;
                } else {
                    j = exp;
                }
            }
            _ => return Err(err(pos, "expected '1', 'x' or 'y'")),
        }
        poly.toggle(i, j);
        match chars.get(k) {
            None => break,
            Some(&(_, '+')) => k += 1,
            Some(&(p, _)) => return Err(err(p, "expected '+' between terms")),
        }
    }
    Ok(poly)
}

/// A matrix whose entries are ring elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    moduli: Moduli,
    rows: usize,
    cols: usize,
    entries: Vec<RingPoly>,
}

impl RingMatrix {
    pub fn zeros(moduli: Moduli, rows: usize, cols: usize) -> Self {
        Self {
            moduli,
            rows,
            cols,
            entries: vec![RingPoly::zero(moduli); rows * cols],
        }
    }

    /// Identity matrix over the ring.
    pub fn identity(moduli: Moduli, n: usize) -> Self {
        let mut m = Self::zeros(moduli, n, n);
        for i in 0..n {
            m.set(i, i, RingPoly::one(moduli));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn moduli(&self) -> Moduli {
        self.moduli
    }

    pub fn get(&self, i: usize, j: usize) -> &RingPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: RingPoly) {
        assert_eq!(p.moduli(), self.moduli, "ring mismatch");
        self.entries[i * self.cols + j] = p;
    }

    /// Conjugate transpose: transpose the matrix and conjugate every entry.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.moduli, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conjugate());
            }
        }
        out
    }

    /// Kronecker product over the (commutative) ring.
    pub fn kron(&self, other: &Self) -> Self {
        assert_eq!(self.moduli, other.moduli, "ring mismatch");
        let mut out = Self::zeros(self.moduli, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        out.set(
                            i * other.rows + p,
                            j * other.cols + q,
                            self.get(i, j).mul(other.get(p, q)),
                        );
                    }
                }
            }
        }
        out
    }

    /// Expand every entry to its circulant block.
    pub fn lift(&self) -> BitMatrix {
        let s = self.moduli.size();
        let mut out = BitMatrix::zeros(self.rows * s, self.cols * s);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let block = self.get(i, j).lift();
                for a in 0..s {
                    for b in block.row(a).support() {
                        out.set(i * s + a, j * s + b, true);
                    }
                }
            }
        }
        out
    }
}
