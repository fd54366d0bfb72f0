//! Phaseless generalized Pauli operators in symplectic representation.
//!
//! A Pauli on `n` qudits is stored as two exponent vectors `x` and `z` so
//! that the operator is `⊗_i X^{x_i} Z^{z_i}`. Global phases are dropped;
//! the commutation phase between two operators is recovered from the
//! symplectic form:
//!
//! ```text
//! P Q = ω^{c(P,Q)} Q P,   c(P,Q) = Σ_i z_P[i]·x_Q[i] − x_P[i]·z_Q[i]  (mod p)
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;

pub mod oracle;

/// Exponent `e` of `ω = exp(2πi/p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseExponent(pub u8);

impl PhaseExponent {
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    field: PrimeField,
    x: Vec<u8>,
    z: Vec<u8>,
}

impl PauliOp {
    pub fn identity(field: PrimeField, n: usize) -> Self {
        PauliOp { field, x: vec![0; n], z: vec![0; n] }
    }

    pub fn new(field: PrimeField, x: Vec<u8>, z: Vec<u8>) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch(format!(
                "x part has {} entries, z part has {}",
                x.len(),
                z.len()
            )));
        }
        if let Some(&bad) = x.iter().chain(&z).find(|&&v| v >= field.p()) {
            return Err(Error::InvalidParams(format!("exponent {bad} not a residue mod {}", field.p())));
        }
        Ok(PauliOp { field, x, z })
    }

    /// From a symplectic vector laid out as `[x_1..x_n, z_1..z_n]`.
    pub fn from_symplectic(field: PrimeField, v: &[u8]) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!("odd symplectic length {}", v.len())));
        }
        let n = v.len() / 2;
        Self::new(field, v[..n].to_vec(), v[n..].to_vec())
    }

    /// `X^a` on qudit `q` (0-based) of `n`.
    pub fn x_on(field: PrimeField, n: usize, q: usize, a: u8) -> Self {
        let mut op = Self::identity(field, n);
        op.x[q] = a % field.p();
        op
    }

    /// `Z^b` on qudit `q` (0-based) of `n`.
    pub fn z_on(field: PrimeField, n: usize, q: usize, b: u8) -> Self {
        let mut op = Self::identity(field, n);
        op.z[q] = b % field.p();
        op
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn num_qudits(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[u8] {
        &self.x
    }

    pub fn z(&self) -> &[u8] {
        &self.z
    }

    pub fn to_symplectic(&self) -> Vec<u8> {
        let mut v = self.x.clone();
        v.extend_from_slice(&self.z);
        v
    }

    fn check_compatible(&self, other: &PauliOp) -> Result<()> {
        if self.field != other.field || self.x.len() != other.x.len() {
            return Err(Error::DimensionMismatch(format!(
                "Pauli on {} qudits over {} vs {} qudits over {}",
                self.x.len(),
                self.field,
                other.x.len(),
                other.field
            )));
        }
        Ok(())
    }

    /// `c(self, other)`, so that `self·other = ω^c other·self`.
    pub fn commutator(&self, other: &PauliOp) -> Result<PhaseExponent> {
        self.check_compatible(other)?;
        Ok(PhaseExponent(symplectic_form(self.field, &self.x, &self.z, &other.x, &other.z)))
    }

    /// Phaseless product.
    pub fn compose(&self, other: &PauliOp) -> Result<PauliOp> {
        self.check_compatible(other)?;
        let f = self.field;
        Ok(PauliOp {
            field: f,
            x: self.x.iter().zip(&other.x).map(|(&a, &b)| f.add(a, b)).collect(),
            z: self.z.iter().zip(&other.z).map(|(&a, &b)| f.add(a, b)).collect(),
        })
    }

    /// `self^c` (phaseless).
    pub fn pow(&self, c: u8) -> PauliOp {
        let f = self.field;
        PauliOp {
            field: f,
            x: self.x.iter().map(|&a| f.mul(a, c % f.p())).collect(),
            z: self.z.iter().map(|&a| f.mul(a, c % f.p())).collect(),
        }
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).filter(|(&a, &b)| a != 0 || b != 0).count()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&v| v == 0)
    }

    pub fn is_z_type(&self) -> bool {
        self.x.iter().all(|&v| v == 0)
    }

    /// `Σ_j x_j p^j + Σ_j z_j p^{n+j}`.
    pub fn to_index(&self) -> u64 {
        symplectic_index(self.field.p(), &self.to_symplectic())
    }

    pub fn from_index(field: PrimeField, n: usize, index: u64) -> Result<Self> {
        let limit = field
            .checked_power(2 * n as u32)
            .ok_or(Error::ScaleGuard { what: "p^(2n)", size: u64::MAX, limit: u64::MAX })?;
        if index >= limit {
            return Err(Error::IndexOutOfRange { index, limit });
        }
        let v = index_to_symplectic(field.p(), 2 * n, index);
        Ok(PauliOp { field, x: v[..n].to_vec(), z: v[n..].to_vec() })
    }

    /// Parses the dotted rendering produced by `Display`, e.g. `X1Z2 . I . Z1`.
    pub fn parse(field: PrimeField, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "-" {
            return Ok(Self::identity(field, 0));
        }
        let mut x = Vec::new();
        let mut z = Vec::new();
        for (q, factor) in text.split('.').enumerate() {
            let (a, b) = parse_factor(field, factor.trim())
                .map_err(|m| Error::parse(1, format!("qudit {}", q + 1), m))?;
            x.push(a);
            z.push(b);
        }
        Ok(PauliOp { field, x, z })
    }
}

fn parse_factor(field: PrimeField, s: &str) -> std::result::Result<(u8, u8), String> {
    if s == "I" {
        return Ok((0, 0));
    }
    let mut x = 0u8;
    let mut z = 0u8;
    let mut rest = s;
    let mut seen = false;
    while let Some(c) = rest.chars().next() {
        let tail = &rest[c.len_utf8()..];
        let digits: String = tail.chars().take_while(|d| d.is_ascii_digit()).collect();
        let e: u32 = digits.parse().map_err(|_| format!("missing exponent in `{s}`"))?;
        if e == 0 || e >= field.p() as u32 {
            return Err(format!("exponent {e} outside [1, {})", field.p()));
        }
        match c {
            'X' if !seen && x == 0 => x = e as u8,
            'Z' if z == 0 => z = e as u8,
            _ => return Err(format!("unexpected `{c}` in `{s}`")),
        }
        seen = true;
        rest = &tail[digits.len()..];
    }
    if !seen {
        return Err("empty factor".into());
    }
    Ok((x, z))
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_empty() {
            return f.write_str("-");
        }
        for (i, (&a, &b)) in self.x.iter().zip(&self.z).enumerate() {
            if i > 0 {
                f.write_str(" . ")?;
            }
            match (a, b) {
                (0, 0) => f.write_str("I")?,
                (a, 0) => write!(f, "X{a}")?,
                (0, b) => write!(f, "Z{b}")?,
                (a, b) => write!(f, "X{a}Z{b}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

/// The symplectic form on raw exponent slices.
#[inline]
pub(crate) fn symplectic_form(f: PrimeField, xp: &[u8], zp: &[u8], xq: &[u8], zq: &[u8]) -> u8 {
    let pos: u32 = zp.iter().zip(xq).map(|(&a, &b)| a as u32 * b as u32).sum();
    let neg: u32 = xp.iter().zip(zq).map(|(&a, &b)| a as u32 * b as u32).sum();
    let p = f.p() as u32;
    ((pos % p + p - neg % p) % p) as u8
}

/// `c(v, w)` for symplectic vectors `[x | z]` of equal length.
#[inline]
pub(crate) fn symplectic_form_vec(f: PrimeField, v: &[u8], w: &[u8]) -> u8 {
    let n = v.len() / 2;
    symplectic_form(f, &v[..n], &v[n..], &w[..n], &w[n..])
}

#[inline]
pub(crate) fn symplectic_index(p: u8, v: &[u8]) -> u64 {
    v.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d as u64)
}

pub(crate) fn index_to_symplectic(p: u8, len: usize, mut index: u64) -> Vec<u8> {
    let mut v = vec![0u8; len];
    for d in v.iter_mut() {
        *d = (index % p as u64) as u8;
        index /= p as u64;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn commutator_of_x_and_z() {
        let f3 = f(3);
        let x = PauliOp::x_on(f3, 1, 0, 1);
        let z = PauliOp::z_on(f3, 1, 0, 1);
        // (X^1 Z^0)(X^0 Z^1) = ω^{0·0 − 1·1} (Z)(X)
        assert_eq!(x.commutator(&z).unwrap(), PhaseExponent(2));
        assert_eq!(z.commutator(&x).unwrap(), PhaseExponent(1));
        assert_eq!(x.commutator(&x).unwrap(), PhaseExponent(0));
    }

    #[test]
    fn mismatched_sizes_rejected() {
        let a = PauliOp::identity(f(3), 2);
        let b = PauliOp::identity(f(3), 3);
        assert!(matches!(a.commutator(&b), Err(Error::DimensionMismatch(_))));
        assert!(a.compose(&PauliOp::identity(f(5), 2)).is_err());
    }

    #[test]
    fn composition_has_order_p() {
        let f3 = f(3);
        let x = PauliOp::x_on(f3, 1, 0, 1);
        let xxx = x.compose(&x).unwrap().compose(&x).unwrap();
        assert!(xxx.is_identity());
        assert_eq!(x.compose(&PauliOp::identity(f3, 1)).unwrap(), x);
    }

    #[test]
    fn weights() {
        assert_eq!(PauliOp::identity(f(3), 4).weight(), 0);
        assert_eq!(PauliOp::x_on(f(2), 3, 1, 1).weight(), 1);
        let p = PauliOp::new(f(3), vec![1, 0, 2], vec![0, 0, 1]).unwrap();
        assert_eq!(p.weight(), 2);
    }

    #[test]
    fn z_type() {
        assert!(PauliOp::identity(f(3), 2).is_z_type());
        assert!(PauliOp::z_on(f(3), 1, 0, 2).is_z_type());
        assert!(!PauliOp::x_on(f(3), 1, 0, 1).is_z_type());
    }

    #[test]
    fn index_examples() {
        let f3 = f(3);
        assert_eq!(PauliOp::identity(f3, 2).to_index(), 0);
        assert_eq!(PauliOp::x_on(f3, 1, 0, 1).to_index(), 1);
        assert_eq!(PauliOp::z_on(f3, 1, 0, 1).to_index(), 3);
        assert!(matches!(
            PauliOp::from_index(f3, 1, 9),
            Err(Error::IndexOutOfRange { index: 9, limit: 9 })
        ));
    }

    #[test]
    fn index_round_trip_exhaustive() {
        for (p, n) in [(2, 3), (3, 2), (5, 1), (3, 3)] {
            let fp = f(p);
            let total = p.pow(2 * n as u32);
            for i in 0..total {
                let op = PauliOp::from_index(fp, n, i).unwrap();
                assert_eq!(op.to_index(), i);
            }
        }
    }

    #[test]
    fn rendering() {
        let f3 = f(3);
        let p = PauliOp::new(f3, vec![1, 0, 0], vec![2, 0, 1]).unwrap();
        assert_eq!(p.to_string(), "X1Z2 . I . Z1");
        assert_eq!(PauliOp::parse(f3, "X1Z2 . I . Z1").unwrap(), p);
        assert!(PauliOp::parse(f3, "X3").is_err());
        assert!(PauliOp::parse(f3, "Z1X1").is_err());
        assert!(PauliOp::parse(f3, "Y1").is_err());
        let f13 = f(13);
        let big = PauliOp::new(f13, vec![12], vec![10]).unwrap();
        assert_eq!(PauliOp::parse(f13, &big.to_string()).unwrap(), big);
    }

    fn pauli_strategy(p: u8, n: usize) -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
        (prop::collection::vec(0..p, n), prop::collection::vec(0..p, n))
    }

    proptest! {
        #[test]
        fn antisymmetric_and_bilinear(
            p in prop::sample::select(vec![2u8, 3, 5, 7]),
            seed in any::<u64>(),
        ) {
            let fp = f(p as u64);
            let n = 3;
            let mk = |s: u64| {
                let v = index_to_symplectic(p, 2 * n, s % (p as u64).pow(2 * n as u32));
                PauliOp::from_symplectic(fp, &v).unwrap()
            };
            let a = mk(seed);
            let b = mk(seed.rotate_left(17) ^ 0x9e37);
            let c = mk(seed.rotate_left(41) ^ 0x51ed);
            let ab = a.commutator(&b).unwrap().0;
            let ba = b.commutator(&a).unwrap().0;
            prop_assert_eq!(fp.add(ab, ba), 0);
            let lhs = a.compose(&c).unwrap().commutator(&b).unwrap().0;
            prop_assert_eq!(lhs, fp.add(ab, c.commutator(&b).unwrap().0));
            prop_assert!(a.pow(p).is_identity());
        }

        #[test]
        fn render_round_trip((x, z) in pauli_strategy(5, 4)) {
            let op = PauliOp::new(f(5), x, z).unwrap();
            prop_assert_eq!(PauliOp::parse(f(5), &op.to_string()).unwrap(), op);
        }
    }
}
