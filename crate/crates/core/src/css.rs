//! CSS codes in binary symplectic form and the hypergraph product.
//!
//! A Pauli operator on `n` qubits is a pair `(x | z)` of length-`n` vectors;
//! X on qubit `i` sets `x_i`, Z sets `z_i`, Y sets both. Phases are not
//! tracked.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CssCode {
    pub h_x: BitMatrix,
    pub h_z: BitMatrix,
}

/// Block dimensions of a hypergraph product, for reporting.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CodeShape {
    pub h_x: (usize, usize),
    pub h_z: (usize, usize),
    pub n: usize,
}

impl CssCode {
    /// Rejects blocks with different column counts.
    pub fn new(h_x: BitMatrix, h_z: BitMatrix) -> Result<Self> {
        if h_x.num_cols() != h_z.num_cols() {
            return Err(Error::DimensionMismatch {
                context: "CSS block columns",
                expected: h_x.num_cols(),
                found: h_z.num_cols(),
            });
        }
        Ok(CssCode { h_x, h_z })
    }

    pub fn n(&self) -> usize {
        self.h_x.num_cols()
    }

    pub fn shape(&self) -> CodeShape {
        CodeShape {
            h_x: (self.h_x.num_rows(), self.h_x.num_cols()),
            h_z: (self.h_z.num_rows(), self.h_z.num_cols()),
            n: self.n(),
        }
    }

    /// Stabilizer generators as symplectic pairs: X-type rows, then Z-type.
    pub fn generators(&self) -> Vec<(BitVector, BitVector)> {
        let zero = BitVector::zeros(self.n());
        let xs = self.h_x.rows().iter().map(|r| (r.clone(), zero.clone()));
        let zs = self.h_z.rows().iter().map(|r| (zero.clone(), r.clone()));
        xs.chain(zs).collect()
    }
}

/// `H_X = (H1 ⊗ I_n2 | I_r1 ⊗ H2ᵀ)`, `H_Z = (I_n1 ⊗ H2 | H1ᵀ ⊗ I_r2)`.
///
/// The first `n1·n2` columns form the left block; column `i·n2 + j` is the
/// pair (variable `i` of `H1`, variable `j` of `H2`).
pub fn hypergraph_product(h1: &BitMatrix, h2: &BitMatrix) -> Result<CssCode> {
    let (r1, n1) = (h1.num_rows(), h1.num_cols());
    let (r2, n2) = (h2.num_rows(), h2.num_cols());
    let h_x = h1
        .kronecker(&BitMatrix::identity(n2))
        .hstack(&BitMatrix::identity(r1).kronecker(&h2.transpose()))?;
    let h_z = BitMatrix::identity(n1)
        .kronecker(h2)
        .hstack(&h1.transpose().kronecker(&BitMatrix::identity(r2)))?;
    let code = CssCode::new(h_x, h_z)?;
    if !css_valid(&code)? {
        return Err(Error::InvariantViolation(
            "hypergraph product violates the CSS condition".into(),
        ));
    }
    Ok(code)
}

/// `H_X H_Zᵀ = 0`.
pub fn css_valid(code: &CssCode) -> Result<bool> {
    Ok(code.h_x.product(&code.h_z.transpose())?.is_zero())
}

/// `h ⊙ g = h_x·g_z + h_z·g_x` vanishes.
pub fn symplectic_orthogonal(h: (&BitVector, &BitVector), g: (&BitVector, &BitVector)) -> Result<bool> {
    let n = h.0.len();
    for (context, len) in [
        ("symplectic z half", h.1.len()),
        ("symplectic x half", g.0.len()),
        ("symplectic z half", g.1.len()),
    ] {
        if len != n {
            return Err(Error::DimensionMismatch {
                context,
                expected: n,
                found: len,
            });
        }
    }
    Ok(h.0.dot(g.1) == h.1.dot(g.0))
}
