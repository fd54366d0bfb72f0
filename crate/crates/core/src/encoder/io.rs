//! Text format for encoders.
//!
//! ```text
//! p = 3
//! m = 1
//! n = 2
//! k = 1
//! label = "example"
//! seed = 42
//! matrix = [
//!   [1, 0, 0, 0, 0, 0],
//!   ...
//! ]
//! ```
//!
//! Row `i` of `matrix` is row `i` of `E`, acting on column vectors
//! `[x_1..x_{m+n}, z_1..z_{m+n}]`.

use serde::{Deserialize, Serialize};

use super::{CodeParams, SymplecticEncoder};
use crate::error::{Error, Result};
use crate::field::{is_prime, FpMatrix};

/// Serde mirror of the file format; also embedded in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncoderRecord {
    pub p: u64,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "wide_u64::option")]
    pub seed: Option<u64>,
    pub matrix: Vec<Vec<i64>>,
}

impl From<&SymplecticEncoder> for EncoderRecord {
    fn from(e: &SymplecticEncoder) -> Self {
        let pr = e.params();
        EncoderRecord {
            p: pr.p() as u64,
            m: pr.m,
            n: pr.n,
            k: pr.k,
            label: e.label.clone(),
            seed: e.seed,
            matrix: e
                .matrix()
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(i64::from).collect())
                .collect(),
        }
    }
}

impl EncoderRecord {
    /// Checks every field and the symplectic condition. `text` is only used
    /// to attach line numbers to diagnostics.
    pub fn into_encoder(self, text: &str) -> Result<SymplecticEncoder> {
        let line = |key: &str| line_of_key(text, key);
        if !is_prime(self.p) || self.p > crate::field::MAX_PRIME as u64 {
            return Err(Error::parse(line("p"), "p", format!("{} is not a supported prime", self.p)));
        }
        let params = CodeParams::new(self.p, self.m, self.n, self.k)
            .map_err(|e| Error::parse(line("m"), "m/n/k", e.to_string()))?;
        let dim = params.dim();
        let mline = line("matrix");
        if self.matrix.len() != dim {
            return Err(Error::parse(
                mline,
                "matrix",
                format!("expected {dim} rows, found {}", self.matrix.len()),
            ));
        }
        let mut rows = Vec::with_capacity(dim);
        for (i, row) in self.matrix.iter().enumerate() {
            let field = format!("matrix[{i}]");
            if row.len() != dim {
                return Err(Error::parse(mline + i + 1, field, format!("expected {dim} entries, found {}", row.len())));
            }
            if let Some(bad) = row.iter().find(|&&v| v < 0 || v >= self.p as i64) {
                return Err(Error::parse(mline + i + 1, field, format!("entry {bad} outside [0, {})", self.p)));
            }
            rows.push(row.iter().map(|&v| v as u8).collect::<Vec<u8>>());
        }
        let matrix = FpMatrix::from_rows(params.field, &rows)?;
        let mut enc = SymplecticEncoder::new(params, matrix)?;
        enc.label = self.label;
        enc.seed = self.seed;
        Ok(enc)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p = {}\nm = {}\nn = {}\nk = {}\n", self.p, self.m, self.n, self.k);
        if let Some(label) = &self.label {
            out.push_str(&format!("label = {}\n", toml::Value::String(label.clone())));
        }
        if let Some(seed) = self.seed {
            match i64::try_from(seed) {
                Ok(_) => out.push_str(&format!("seed = {seed}\n")),
                Err(_) => out.push_str(&format!("seed = \"{seed}\"\n")),
            }
        }
        out.push_str("matrix = [\n");
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("  [{}],\n", cells.join(", ")));
        }
        out.push_str("]\n");
        out
    }
}

/// `u64` fields for TOML, whose integers are signed: values above
/// `i64::MAX` are written as decimal strings, and both forms are read.
pub mod wide_u64 {
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Text(String),
    }

    impl Repr {
        fn value<E: serde::de::Error>(self) -> Result<u64, E> {
            match self {
                Repr::Int(i) => u64::try_from(i).map_err(E::custom),
                Repr::Text(t) => t.parse().map_err(E::custom),
            }
        }
    }

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(*v) {
            Ok(i) => s.serialize_i64(i),
            Err(_) => s.serialize_str(&v.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        Repr::deserialize(d)?.value()
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<u64>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => super::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<u64>, D::Error> {
            Option::<Repr>::deserialize(d)?.map(|r| r.value::<D::Error>()).transpose()
        }
    }
}

fn line_of_key(text: &str, key: &str) -> usize {
    text.lines()
        .position(|l| {
            let l = l.trim_start();
            l.strip_prefix(key).is_some_and(|rest| rest.trim_start().starts_with('='))
        })
        .map_or(0, |i| i + 1)
}

pub fn serialize(encoder: &SymplecticEncoder) -> String {
    EncoderRecord::from(encoder).to_text()
}

pub fn deserialize(text: &str) -> Result<SymplecticEncoder> {
    let record: EncoderRecord = toml::from_str(text).map_err(|e| {
        let line = e.span().map_or(0, |s| text[..s.start.min(text.len())].lines().count().max(1));
        Error::parse(line, "document", e.message().to_string())
    })?;
    record.into_encoder(text)
}
