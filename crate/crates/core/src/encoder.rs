//! Convolutional encoders as symplectic matrices over F_p.
//!
//! Wire convention: the encoder acts on `m + n` qudits. Input roles are
//! `[memory_1..memory_m, ancilla_1..ancilla_{n-k}, logical_1..logical_k]`,
//! output roles are `[physical_1..physical_n, memory_1..memory_m]`. A Pauli
//! on those qudits is the column vector `[x_1..x_{m+n}, z_1..z_{m+n}]` and
//! the encoder maps `v ↦ E·v`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FpMatrix, PrimeField};
use crate::pauli::{symplectic_form_vec, PauliOp};

pub mod io;

pub use io::{deserialize, serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub field: PrimeField,
    /// Memory qudits carried between frames.
    pub m: usize,
    /// Physical qudits emitted per frame.
    pub n: usize,
    /// Logical qudits consumed per frame.
    pub k: usize,
}

impl CodeParams {
    pub fn new(p: u64, m: usize, n: usize, k: usize) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if m == 0 || n == 0 || k > n {
            return Err(Error::InvalidParams(format!(
                "need m >= 1, n >= 1 and 0 <= k <= n (got m={m}, n={n}, k={k})"
            )));
        }
        Ok(CodeParams { field, m, n, k })
    }

    pub fn p(&self) -> u8 {
        self.field.p()
    }

    pub fn ancillas(&self) -> usize {
        self.n - self.k
    }

    pub fn qudits(&self) -> usize {
        self.m + self.n
    }

    /// Side length of the encoder matrix, `2(m+n)`.
    pub fn dim(&self) -> usize {
        2 * self.qudits()
    }

    /// No stabilizer qudits per frame.
    pub fn is_degenerate(&self) -> bool {
        self.k == self.n
    }
}

/// The symplectic form matrix `[[0, −I], [I, 0]]` on `qudits` qudits.
pub fn symplectic_form_matrix(field: PrimeField, qudits: usize) -> FpMatrix {
    let mut omega = FpMatrix::zeros(field, 2 * qudits, 2 * qudits);
    for i in 0..qudits {
        omega.set(i, qudits + i, field.neg(1));
        omega.set(qudits + i, i, 1);
    }
    omega
}

/// First entry `(i, j)` where `EᵀΩE` differs from `Ω`, if any.
pub fn symplectic_violation(matrix: &FpMatrix) -> Option<(usize, usize)> {
    let d = matrix.rows();
    if d != matrix.cols() || !d.is_multiple_of(2) {
        return Some((0, 0));
    }
    let f = matrix.field();
    let cols: Vec<Vec<u8>> = (0..d).map(|c| matrix.column(c)).collect();
    let half = d / 2;
    for i in 0..d {
        for j in 0..d {
            let expected = match (i < half, j < half) {
                (true, false) if j - half == i => f.neg(1),
                (false, true) if i - half == j => 1,
                _ => 0,
            };
            if symplectic_form_vec(f, &cols[i], &cols[j]) != expected {
                return Some((i, j));
            }
        }
    }
    None
}

/// `EᵀΩE = Ω` for a matrix shaped for `params`.
pub fn validate(params: &CodeParams, matrix: &FpMatrix) -> Result<bool> {
    let expected = params.dim();
    if matrix.rows() != expected || matrix.cols() != expected {
        return Err(Error::ShapeMismatch { expected, rows: matrix.rows(), cols: matrix.cols() });
    }
    Ok(matrix.field() == params.field && symplectic_violation(matrix).is_none())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticEncoder {
    params: CodeParams,
    matrix: FpMatrix,
    pub label: Option<String>,
    pub seed: Option<u64>,
}

/// One frame of the encoder, split into roles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncoderTriple {
    pub memory_in: PauliOp,
    pub ancilla_in: PauliOp,
    pub logical_in: PauliOp,
    pub physical_out: PauliOp,
    pub memory_out: PauliOp,
}

impl SymplecticEncoder {
    pub fn new(params: CodeParams, matrix: FpMatrix) -> Result<Self> {
        if !validate(&params, &matrix)? {
            let (i, j) = symplectic_violation(&matrix).unwrap_or((0, 0));
            return Err(Error::InvalidEncoder(format!(
                "matrix is not symplectic: (EᵀΩE)[{i}][{j}] != Ω[{i}][{j}] mod {}",
                params.p()
            )));
        }
        Ok(SymplecticEncoder { params, matrix, label: None, seed: None })
    }

    pub fn identity(params: CodeParams) -> Self {
        SymplecticEncoder {
            params,
            matrix: FpMatrix::identity(params.field, params.dim()),
            label: None,
            seed: None,
        }
    }

    pub fn from_gates(params: CodeParams, gates: &[Gate]) -> Result<Self> {
        let mut matrix = FpMatrix::identity(params.field, params.dim());
        for g in gates {
            g.check(params.qudits())?;
            g.apply_left(&mut matrix, params.qudits());
        }
        Ok(SymplecticEncoder { params, matrix, label: None, seed: None })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn is_valid(&self) -> bool {
        validate(&self.params, &self.matrix).unwrap_or(false)
    }

    /// Image of a Pauli on all `m + n` qudits.
    pub fn apply(&self, input: &PauliOp) -> Result<PauliOp> {
        if input.num_qudits() != self.params.qudits() || input.field() != self.params.field {
            return Err(Error::DimensionMismatch(format!(
                "encoder acts on {} qudits, input has {}",
                self.params.qudits(),
                input.num_qudits()
            )));
        }
        let out = self.matrix.mul_vec(&input.to_symplectic())?;
        PauliOp::from_symplectic(self.params.field, &out)
    }

    /// Applies one frame to `(memory, ancilla, logical)` inputs.
    pub fn apply_roles(
        &self,
        memory: &PauliOp,
        ancilla: &PauliOp,
        logical: &PauliOp,
    ) -> Result<EncoderTriple> {
        let CodeParams { m, n, k, .. } = self.params;
        if memory.num_qudits() != m || ancilla.num_qudits() != n - k || logical.num_qudits() != k {
            return Err(Error::DimensionMismatch(format!(
                "role sizes ({}, {}, {}) do not match (m, n-k, k) = ({m}, {}, {k})",
                memory.num_qudits(),
                ancilla.num_qudits(),
                logical.num_qudits(),
                n - k
            )));
        }
        let input = join_roles(self.params.field, &[memory, ancilla, logical]);
        let out = self.apply(&input)?;
        let parts = split_roles(&out, &[n, m]);
        Ok(EncoderTriple {
            memory_in: memory.clone(),
            ancilla_in: ancilla.clone(),
            logical_in: logical.clone(),
            physical_out: parts[0].clone(),
            memory_out: parts[1].clone(),
        })
    }

    pub fn inverse(&self) -> Result<SymplecticEncoder> {
        if !self.is_valid() {
            return Err(Error::InvalidEncoder("cannot invert a non-symplectic matrix".into()));
        }
        let matrix = self.matrix.inverse()?;
        Ok(SymplecticEncoder { params: self.params, matrix, label: None, seed: None })
    }

    /// Encoder composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SymplecticEncoder) -> Result<SymplecticEncoder> {
        if self.params != other.params {
            return Err(Error::DimensionMismatch("encoders have different parameters".into()));
        }
        Ok(SymplecticEncoder {
            params: self.params,
            matrix: self.matrix.mul(&other.matrix)?,
            label: None,
            seed: None,
        })
    }
}

/// Tensor product of role Paulis, in order.
pub fn join_roles(field: PrimeField, parts: &[&PauliOp]) -> PauliOp {
    let mut x = Vec::new();
    let mut z = Vec::new();
    for p in parts {
        x.extend_from_slice(p.x());
        z.extend_from_slice(p.z());
    }
    PauliOp::new(field, x, z).expect("role parts are valid residues")
}

/// Splits a Pauli into consecutive blocks of the given qudit counts.
pub fn split_roles(op: &PauliOp, sizes: &[usize]) -> Vec<PauliOp> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&len| {
            let part = PauliOp::new(
                op.field(),
                op.x()[start..start + len].to_vec(),
                op.z()[start..start + len].to_vec(),
            )
            .expect("slices of a valid Pauli");
            start += len;
            part
        })
        .collect()
}

/// Elementary symplectic generators. Qudit indices are 0-based positions
/// in the `m + n` wire order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    /// `X ↦ Z`, `Z ↦ X⁻¹`.
    Fourier(usize),
    /// `X ↦ X^c`, `Z ↦ Z^{c⁻¹}`.
    Multiply(usize, u8),
    /// `X ↦ XZ`, `Z ↦ Z`.
    Shear(usize),
    /// `X_c ↦ X_c X_t`, `Z_t ↦ Z_c⁻¹ Z_t`.
    Sum { control: usize, target: usize },
}

impl Gate {
    fn check(&self, qudits: usize) -> Result<()> {
        let ok = match *self {
            Gate::Fourier(q) | Gate::Shear(q) => q < qudits,
            Gate::Multiply(q, c) => q < qudits && c != 0,
            Gate::Sum { control, target } => control < qudits && target < qudits && control != target,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("gate {self:?} invalid on {qudits} qudits")))
        }
    }

    /// `matrix ← G·matrix`, as row operations.
    pub(crate) fn apply_left(&self, matrix: &mut FpMatrix, qudits: usize) {
        let f = matrix.field();
        let cols = matrix.cols();
        let xr = |q: usize| q;
        let zr = |q: usize| qudits + q;
        match *self {
            Gate::Fourier(q) => {
                for c in 0..cols {
                    let (x, z) = (matrix.get(xr(q), c), matrix.get(zr(q), c));
                    matrix.set(xr(q), c, f.neg(z));
                    matrix.set(zr(q), c, x);
                }
            }
            Gate::Multiply(q, c0) => {
                let inv = f.inv(c0).expect("nonzero multiplier");
                for c in 0..cols {
                    let (x, z) = (matrix.get(xr(q), c), matrix.get(zr(q), c));
                    matrix.set(xr(q), c, f.mul(x, c0));
                    matrix.set(zr(q), c, f.mul(z, inv));
                }
            }
            Gate::Shear(q) => {
                for c in 0..cols {
                    let v = f.add(matrix.get(zr(q), c), matrix.get(xr(q), c));
                    matrix.set(zr(q), c, v);
                }
            }
            Gate::Sum { control, target } => {
                for c in 0..cols {
                    let xt = f.add(matrix.get(xr(target), c), matrix.get(xr(control), c));
                    let zc = f.sub(matrix.get(zr(control), c), matrix.get(zr(target), c));
                    matrix.set(xr(target), c, xt);
                    matrix.set(zr(control), c, zc);
                }
            }
        }
    }

    /// Every generator on `qudits` qudits over `field`, in a fixed order.
    pub fn all(field: PrimeField, qudits: usize) -> Vec<Gate> {
        let mut gates = Vec::new();
        for q in 0..qudits {
            gates.push(Gate::Fourier(q));
            gates.extend((1..field.p()).map(|c| Gate::Multiply(q, c)));
            gates.push(Gate::Shear(q));
        }
        for control in 0..qudits {
            for target in 0..qudits {
                if control != target {
                    gates.push(Gate::Sum { control, target });
                }
            }
        }
        gates
    }
}

/// Product of `gate_count` uniformly drawn generators; deterministic in `seed`.
pub fn random_encoder(params: CodeParams, seed: u64, gate_count: usize) -> SymplecticEncoder {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut enc = random_encoder_with(params, &mut rng, gate_count);
    enc.seed = Some(seed);
    enc
}

pub fn random_encoder_with<R: Rng>(params: CodeParams, rng: &mut R, gate_count: usize) -> SymplecticEncoder {
    let gates = Gate::all(params.field, params.qudits());
    let mut matrix = FpMatrix::identity(params.field, params.dim());
    for _ in 0..gate_count.max(1) {
        gates[rng.gen_range(0..gates.len())].apply_left(&mut matrix, params.qudits());
    }
    SymplecticEncoder { params, matrix, label: None, seed: None }
}

/// `|Sp(2N, p)| = p^{N²} Π_{i=1..N} (p^{2i} − 1)`, saturating.
pub fn symplectic_group_order(field: PrimeField, qudits: usize) -> u128 {
    let p = field.p() as u128;
    let mut order = p.saturating_pow((qudits * qudits) as u32);
    for i in 1..=qudits {
        order = order.saturating_mul(p.saturating_pow(2 * i as u32) - 1);
    }
    order
}

/// Visits every symplectic matrix of side `2·qudits`, in a fixed order.
///
/// Builds the columns as a symplectic basis: the images of `X_1, Z_1, X_2,
/// Z_2, …` in turn, each constrained against the columns already chosen.
pub fn for_each_symplectic<F: FnMut(&FpMatrix)>(field: PrimeField, qudits: usize, mut visit: F) {
    let d = 2 * qudits;
    let total = field.checked_power(d as u32).expect("small dimension");
    let vectors: Vec<Vec<u8>> = (1..total)
        .map(|i| crate::pauli::index_to_symplectic(field.p(), d, i))
        .collect();
    // slot s = 2i is the image of X_i (column i), slot 2i+1 that of Z_i (column qudits+i)
    let column_of = |slot: usize| if slot.is_multiple_of(2) { slot / 2 } else { qudits + slot / 2 };
    let omega = symplectic_form_matrix(field, qudits);
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut matrix = FpMatrix::zeros(field, d, d);

    fn recurse<F: FnMut(&FpMatrix)>(
        field: PrimeField,
        vectors: &[Vec<u8>],
        omega: &FpMatrix,
        column_of: &dyn Fn(usize) -> usize,
        chosen: &mut Vec<usize>,
        matrix: &mut FpMatrix,
        visit: &mut F,
    ) {
        let slot = chosen.len();
        if slot == matrix.rows() {
            visit(matrix);
            return;
        }
        let col = column_of(slot);
        for (vi, v) in vectors.iter().enumerate() {
            let fits = chosen.iter().enumerate().all(|(s, &wi)| {
                symplectic_form_vec(field, v, &vectors[wi]) == omega.get(col, column_of(s))
            });
            if !fits {
                continue;
            }
            for (r, &val) in v.iter().enumerate() {
                matrix.set(r, col, val);
            }
            chosen.push(vi);
            recurse(field, vectors, omega, column_of, chosen, matrix, visit);
            chosen.pop();
        }
    }

    recurse(field, &vectors, &omega, &column_of, &mut chosen, &mut matrix, &mut visit);
}

pub fn enumerate_symplectic(field: PrimeField, qudits: usize) -> Vec<FpMatrix> {
    let mut all = Vec::new();
    for_each_symplectic(field, qudits, |m| all.push(m.clone()));
    all
}

/// All encoders for `params`, or a scale-guard error when the group is
/// larger than `cap`.
pub fn enumerate_encoders(params: CodeParams, cap: u128) -> Result<Vec<SymplecticEncoder>> {
    let order = symplectic_group_order(params.field, params.qudits());
    if order > cap {
        return Err(Error::ScaleGuard {
            what: "symplectic group order",
            size: order.min(u64::MAX as u128) as u64,
            limit: cap.min(u64::MAX as u128) as u64,
        });
    }
    Ok(enumerate_symplectic(params.field, params.qudits())
        .into_iter()
        .map(|matrix| SymplecticEncoder { params, matrix, label: None, seed: None })
        .collect())
}
