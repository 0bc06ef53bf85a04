//! Circuits over {CNOT, |+⟩ preparation, ⟨0| projection} realising GF(2)
//! linear maps on X-basis labels.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// One circuit element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    /// Adds the control wire into the target wire.
    Cnot { control: usize, target: usize },
    /// Appends a fresh wire in the |+⟩ state; `wire` is its index.
    PrepPlus(usize),
    /// Projects wire `wire` onto ⟨0| and removes it; later wires shift down.
    ProjZero(usize),
    /// Reorders wires: new wire `i` is old wire `map[i]`.
    Permute(Vec<usize>),
}

/// A gate list acting on `in_wires` wires and ending with `out_wires`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub in_wires: usize,
    pub out_wires: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    /// Number of CNOT gates.
    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Cnot { .. })).count()
    }

    /// Text form, one gate per line: `CNOT c t`, `PREP+ w`, `PROJ0 w`, `PERM i0 i1 ...`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    /// Parse the text form for a circuit with `in_wires` inputs.
    pub fn from_text(in_wires: usize, text: &str) -> Result<Self> {
        let mut gates = Vec::new();
        let mut wires = in_wires;
        for (lineno, line) in text.lines().enumerate() {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.is_empty() {
                continue;
            }
            let nums: std::result::Result<Vec<usize>, _> = parts[1..].iter().map(|p| p.parse::<usize>()).collect();
            let nums = nums.map_err(|_| Error::Parse {
                position: lineno + 1,
                message: format!("bad wire index in {line:?}"),
            })?;
            let gate = match (parts[0], nums.len()) {
                ("CNOT", 2) => Gate::Cnot {
                    control: nums[0],
                    target: nums[1],
                },
                ("PREP+", 1) => {
                    wires += 1;
                    Gate::PrepPlus(nums[0])
                }
                ("PROJ0", 1) => {
                    wires = wires.saturating_sub(1);
                    Gate::ProjZero(nums[0])
                }
                ("PERM", _) => Gate::Permute(nums),
                _ => {
                    return Err(Error::Parse {
                        position: lineno + 1,
                        message: format!("unknown gate line {line:?}"),
                    })
                }
            };
            gates.push(gate);
        }
        let c = Self {
            in_wires,
            out_wires: wires,
            gates,
        };
        c.evaluate()?;
        Ok(c)
    }

    /// The `out × in` GF(2) matrix this circuit applies to X-basis labels.
    pub fn evaluate(&self) -> Result<BitMatrix> {
        let mut rows: Vec<crate::gf2::BitVector> = BitMatrix::identity(self.in_wires).row_vectors();
        for (step, g) in self.gates.iter().enumerate() {
            let bad = |msg: String| Error::Circuit(format!("gate {step}: {msg}"));
            match g {
                Gate::Cnot { control, target } => {
                    if *control >= rows.len() || *target >= rows.len() || control == target {
                        return Err(bad(format!("CNOT {control} {target} on {} wires", rows.len())));
                    }
                    let c = rows[*control].clone();
                    rows[*target].xor_assign(&c);
                }
                Gate::PrepPlus(w) => {
                    if *w != rows.len() {
                        return Err(bad(format!("PREP+ must create wire {}, not {w}", rows.len())));
                    }
                    rows.push(crate::gf2::BitVector::zeros(self.in_wires));
                }
                Gate::ProjZero(w) => {
                    if *w >= rows.len() {
                        return Err(bad(format!("PROJ0 {w} on {} wires", rows.len())));
                    }
                    rows.remove(*w);
                }
                Gate::Permute(map) => {
                    let mut seen = vec![false; rows.len()];
                    if map.len() != rows.len() || map.iter().any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true)) {
                        return Err(bad("PERM is not a permutation of the wires".into()));
                    }
                    rows = map.iter().map(|&i| rows[i].clone()).collect();
                }
            }
        }
        if rows.len() != self.out_wires {
            return Err(Error::Circuit(format!(
                "circuit ends with {} wires, expected {}",
                rows.len(),
                self.out_wires
            )));
        }
        Ok(BitMatrix::from_rows(self.in_wires, &rows))
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Self::PrepPlus(w) => write!(f, "PREP+ {w}"),
            Self::ProjZero(w) => write!(f, "PROJ0 {w}"),
            Self::Permute(map) => {
                f.write_str("PERM")?;
                for i in map {
                    write!(f, " {i}")?;
                }
                Ok(())
            }
        }
    }
}

/// Synthesize a circuit for the `out × in` matrix `f1` by Gaussian elimination.
///
/// Row operations reduce `f1` to echelon form and become CNOTs on the output
/// side; column operations then clear the pivot rows and become CNOTs on the
/// input side. Inputs without a pivot are projected out and outputs without
/// a pivot are prepared in |+⟩.
pub fn synthesize(f1: &BitMatrix) -> Circuit {
    let (out, inp) = f1.shape();
    let mut m = f1.clone();
    let mut row_ops: Vec<(usize, usize)> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..inp {
        let cur = pivots.len();
        if cur == out {
            break;
        }
        let Some(p) = (cur..out).find(|&i| m.get(i, c)) else {
            continue;
        };
        if p != cur {
            m.xor_row_into(p, cur);
            row_ops.push((p, cur));
        }
        for i in 0..out {
            if i != cur && m.get(i, c) {
                m.xor_row_into(cur, i);
                row_ops.push((cur, i));
            }
        }
        pivots.push(c);
    }
    let mut gates = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        for j in m.row(i).support() {
            if j != p {
                gates.push(Gate::Cnot { control: j, target: p });
            }
        }
    }
    for c in (0..inp).rev() {
        if !pivots.contains(&c) {
            gates.push(Gate::ProjZero(c));
        }
    }
    for w in pivots.len()..out {
        gates.push(Gate::PrepPlus(w));
    }
    for &(src, dst) in row_ops.iter().rev() {
        gates.push(Gate::Cnot {
            control: src,
            target: dst,
        });
    }
    Circuit {
        in_wires: inp,
        out_wires: out,
        gates,
    }
}

/// Expand `f` to its action on X-basis states: entry `[f·a][a] = 1`, with
/// labels read as binary numbers whose first wire is the most significant bit.
pub fn x_basis_matrix(f: &BitMatrix) -> Result<BitMatrix> {
    let (out, inp) = f.shape();
    if out > 20 || inp > 20 {
        return Err(Error::InvalidArgument("state-space expansion limited to 20 wires".into()));
    }
    let mut m = BitMatrix::zeros(1 << out, 1 << inp);
    for a in 0..(1usize << inp) {
        let bits = crate::gf2::BitVector::from_bools((0..inp).map(|i| (a >> (inp - 1 - i)) & 1 == 1));
        let image = f.mul_vec(&bits)?;
        let b = (0..out).fold(0usize, |acc, i| (acc << 1) | usize::from(image.get(i)));
        m.set(b, a, true);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cnot() {
        let c = Circuit {
            in_wires: 2,
            out_wires: 2,
            gates: vec![Gate::Cnot { control: 0, target: 1 }],
        };
        assert_eq!(c.evaluate().unwrap(), BitMatrix::from_strs(&["10", "11"]));
    }

    #[test]
    fn identity_needs_no_gates() {
        let c = synthesize(&BitMatrix::identity(4));
        assert!(c.gates.is_empty());
        assert_eq!(c.evaluate().unwrap(), BitMatrix::identity(4));
    }

    #[test]
    fn empty_outputs_and_inputs() {
        let proj = synthesize(&BitMatrix::zeros(0, 3));
        assert_eq!(proj.gates, vec![Gate::ProjZero(2), Gate::ProjZero(1), Gate::ProjZero(0)]);
        let prep = synthesize(&BitMatrix::zeros(2, 0));
        assert_eq!(prep.gates, vec![Gate::PrepPlus(0), Gate::PrepPlus(1)]);
    }

    #[test]
    fn text_round_trip() {
        let f = BitMatrix::from_strs(&["101", "111"]);
        let c = synthesize(&f);
        let back = Circuit::from_text(3, &c.to_text()).unwrap();
        assert_eq!(back, c);
        assert!(Circuit::from_text(2, "CNOT 0 5\n").is_err());
        assert!(Circuit::from_text(2, "SWAP 0 1\n").is_err());
    }

    #[test]
    fn malformed_circuits_are_rejected() {
        let c = Circuit {
            in_wires: 1,
            out_wires: 2,
            gates: vec![Gate::PrepPlus(3)],
        };
        assert!(c.evaluate().is_err());
        let p = Circuit {
            in_wires: 2,
            out_wires: 2,
            gates: vec![Gate::Permute(vec![0, 0])],
        };
        assert!(p.evaluate().is_err());
    }
}
