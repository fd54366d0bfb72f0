//! Dense complex-matrix model of generalized Paulis.
//!
//! `X|j⟩ = |j+1 mod p⟩`, `Z|j⟩ = ω^j |j⟩`, tensored over qudits with qudit 0
//! as the most significant factor. Only meant for cross-checking the
//! symplectic arithmetic at small scale.

use num_complex::Complex64;

use super::{PauliOp, PhaseExponent};
use crate::error::{Error, Result};

pub const MAX_ORACLE_QUDITS: usize = 4;
pub const MAX_ORACLE_PRIME: u8 = 5;
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        DenseMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        let d = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..d {
                    data[r * d + c] += a * other.data[k * d + c];
                }
            }
        }
        DenseMatrix { dim: d, data }
    }

    pub fn scale(&self, s: Complex64) -> DenseMatrix {
        DenseMatrix { dim: self.dim, data: self.data.iter().map(|&v| v * s).collect() }
    }

    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let (a, b) = (self.dim, other.dim);
        let d = a * b;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for r1 in 0..a {
            for c1 in 0..a {
                let v = self.data[r1 * a + c1];
                for r2 in 0..b {
                    for c2 in 0..b {
                        data[(r1 * b + r2) * d + c1 * b + c2] = v * other.data[r2 * b + c2];
                    }
                }
            }
        }
        DenseMatrix { dim: d, data }
    }

    pub fn approx_eq(&self, other: &DenseMatrix, tol: f64) -> bool {
        self.dim == other.dim && self.data.iter().zip(&other.data).all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Some `s` with `self = s·other` and `|s| = 1`, if one exists.
    pub fn phase_relative_to(&self, other: &DenseMatrix, tol: f64) -> Option<Complex64> {
        let (i, pivot) = other.data.iter().enumerate().find(|(_, v)| v.norm() > 0.5)?;
        let s = self.data[i] / pivot;
        ((s.norm() - 1.0).abs() <= tol && self.approx_eq(&other.scale(s), tol)).then_some(s)
    }
}

pub fn omega(p: u8) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / p as f64)
}

fn single_qudit(p: u8, a: u8, b: u8) -> DenseMatrix {
    // X^a Z^b |j⟩ = ω^{b j} |j + a⟩
    let d = p as usize;
    let w = omega(p);
    let mut data = vec![Complex64::new(0.0, 0.0); d * d];
    for j in 0..d {
        let row = (j + a as usize) % d;
        data[row * d + j] = w.powu((b as u32 * j as u32) % p as u32);
    }
    DenseMatrix { dim: d, data }
}

fn guard(op: &PauliOp) -> Result<()> {
    let p = op.field().p();
    let n = op.num_qudits();
    if n > MAX_ORACLE_QUDITS || p > MAX_ORACLE_PRIME {
        return Err(Error::ScaleGuard {
            what: "oracle dimension p^n",
            size: (p as u64).pow(n as u32),
            limit: (MAX_ORACLE_PRIME as u64).pow(MAX_ORACLE_QUDITS as u32),
        });
    }
    Ok(())
}

/// Explicit `p^n × p^n` matrix of `⊗_i X^{x_i} Z^{z_i}`.
pub fn matrix_oracle(op: &PauliOp) -> Result<DenseMatrix> {
    guard(op)?;
    let p = op.field().p();
    Ok(op
        .x()
        .iter()
        .zip(op.z())
        .fold(DenseMatrix::identity(1), |acc, (&a, &b)| acc.kron(&single_qudit(p, a, b))))
}

/// The `e` with `PQ = ω^e QP`, read off the dense matrices.
pub fn oracle_commutator(a: &PauliOp, b: &PauliOp) -> Result<Option<PhaseExponent>> {
    let (ma, mb) = (matrix_oracle(a)?, matrix_oracle(b)?);
    let p = a.field().p();
    let ab = ma.mul(&mb);
    let ba = mb.mul(&ma);
    let w = omega(p);
    Ok((0..p).find(|&e| ab.approx_eq(&ba.scale(w.powu(e as u32)), TOLERANCE)).map(PhaseExponent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn x_is_cyclic_shift_and_z_is_clock() {
        let f3 = PrimeField::new(3).unwrap();
        let x = matrix_oracle(&PauliOp::x_on(f3, 1, 0, 1)).unwrap();
        for j in 0..3 {
            assert!((x.get((j + 1) % 3, j) - Complex64::new(1.0, 0.0)).norm() < TOLERANCE);
        }
        let z = matrix_oracle(&PauliOp::z_on(f3, 1, 0, 1)).unwrap();
        let w = omega(3);
        for j in 0..3 {
            assert!((z.get(j, j) - w.powu(j as u32)).norm() < TOLERANCE);
        }
        let id = matrix_oracle(&PauliOp::identity(f3, 1)).unwrap();
        assert!(id.approx_eq(&DenseMatrix::identity(3), TOLERANCE));
    }

    #[test]
    fn scale_guard() {
        let f7 = PrimeField::new(7).unwrap();
        assert!(matches!(matrix_oracle(&PauliOp::identity(f7, 1)), Err(Error::ScaleGuard { .. })));
        let f2 = PrimeField::new(2).unwrap();
        assert!(matches!(matrix_oracle(&PauliOp::identity(f2, 5)), Err(Error::ScaleGuard { .. })));
    }

    #[test]
    fn oracle_matches_symplectic_form_exhaustively_single_qudit() {
        for p in [2u64, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for i in 0..p * p {
                for j in 0..p * p {
                    let a = PauliOp::from_index(f, 1, i).unwrap();
                    let b = PauliOp::from_index(f, 1, j).unwrap();
                    assert_eq!(oracle_commutator(&a, &b).unwrap(), Some(a.commutator(&b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn composition_matches_matrix_product_up_to_phase() {
        let f5 = PrimeField::new(5).unwrap();
        for i in (0..625).step_by(37) {
            for j in (0..625).step_by(53) {
                let a = PauliOp::from_index(f5, 2, i).unwrap();
                let b = PauliOp::from_index(f5, 2, j).unwrap();
                let prod = matrix_oracle(&a).unwrap().mul(&matrix_oracle(&b).unwrap());
                let composed = matrix_oracle(&a.compose(&b).unwrap()).unwrap();
                assert!(prod.phase_relative_to(&composed, TOLERANCE).is_some());
            }
        }
    }
}
