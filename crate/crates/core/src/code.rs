//! Linear index codes and their matrix file format.
//!
//! A code of length N over F_q on n messages is the n x N matrix L whose
//! columns are the transmitted combinations; row i holds the coefficients
//! of message `x_{i+1}`.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::problem::MAX_PARTICIPANTS;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt::{self, Write as _};

/// Where a transmitted combination came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Provenance {
    /// Edge `{a, b}` of the spanning tree of a component (1-based in files).
    Edge { component: usize, edge: [usize; 2] },
    /// Uncoded message sent for a leftover arc `(tail, head)`.
    Leftover { arc: [usize; 2] },
    /// Uncoded message nobody has as side information.
    Direct { message: usize },
    /// No structural origin, e.g. enumerated or imported codes.
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub vector: Vec<u8>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexCode {
    field: PrimeField,
    n: usize,
    codewords: Vec<Codeword>,
}

impl IndexCode {
    pub fn new(field: PrimeField, n: usize, codewords: Vec<Codeword>) -> Result<Self> {
        for (t, cw) in codewords.iter().enumerate() {
            if cw.vector.len() != n {
                return Err(Error::InvalidCode(format!(
                    "codeword c{} has {} coordinates, expected {n}",
                    t + 1,
                    cw.vector.len()
                )));
            }
            if cw.vector.iter().any(|&x| x >= field.order()) {
                return Err(Error::InvalidCode(format!(
                    "codeword c{} has entries outside {field}",
                    t + 1
                )));
            }
            if cw.vector.iter().all(|&x| x == 0) {
                return Err(Error::InvalidCode(format!("codeword c{} is zero", t + 1)));
            }
        }
        Ok(IndexCode { field, n, codewords })
    }

    /// Code with [`Provenance::Free`] codewords from raw vectors.
    pub fn from_vectors(field: PrimeField, n: usize, vectors: Vec<Vec<u8>>) -> Result<Self> {
        Self::new(
            field,
            n,
            vectors
                .into_iter()
                .map(|vector| Codeword {
                    vector,
                    provenance: Provenance::Free,
                })
                .collect(),
        )
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Code length N.
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn codewords(&self) -> &[Codeword] {
        &self.codewords
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[u8]> {
        self.codewords.iter().map(|c| c.vector.as_slice())
    }

    /// `C(x) = xL`.
    pub fn encode(&self, messages: &[u8]) -> Vec<u8> {
        self.codewords
            .iter()
            .map(|c| self.field.dot(&c.vector, messages))
            .collect()
    }

    /// Codeword vectors scaled to a leading 1 and sorted; equal for codes
    /// that send the same set of combinations.
    pub fn canonical_vectors(&self) -> Vec<Vec<u8>> {
        let mut vs: Vec<Vec<u8>> = self
            .vectors()
            .map(|v| {
                let mut v = v.to_vec();
                self.field.normalize(&mut v);
                v
            })
            .collect();
        vs.sort();
        vs
    }

    /// Packs a vector into hex: one bit per coordinate over F_2, two bits per
    /// coordinate over F_3, coordinate of `x_1` in the least significant
    /// position.
    pub fn hex_vector(&self, v: &[u8]) -> String {
        let width = if self.field == PrimeField::F2 { 1 } else { 2 };
        let bits: Vec<u8> = v.iter().flat_map(|&x| (0..width).map(move |b| (x >> b) & 1)).collect();
        let digits = bits.len().div_ceil(4).max(1);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nib = (0..4).fold(0u8, |acc, b| acc | bits.get(d * 4 + b).copied().unwrap_or(0) << b);
            let _ = write!(out, "{nib:x}");
        }
        out
    }

    /// Human-readable combination, e.g. `x1+x3` or `x1+2x4`.
    pub fn expression(&self, t: usize) -> String {
        combination(
            self.codewords[t]
                .vector
                .iter()
                .enumerate()
                .map(|(i, &c)| (format!("x{}", i + 1), c)),
        )
    }

    /// SHA-256 over the matrix entries, column by column.
    pub fn matrix_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update([self.field.order()]);
        h.update((self.n as u64).to_le_bytes());
        h.update((self.len() as u64).to_le_bytes());
        for cw in &self.codewords {
            h.update(&cw.vector);
        }
        hex::encode(h.finalize())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let doc: MatrixDoc = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.into_code()
    }

    pub fn to_toml_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# rows: messages x1..x{}, columns: transmissions c1..c{}",
            self.n,
            self.len()
        );
        let _ = writeln!(s, "q = {}", self.field.order());
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "rows = [");
        for i in 0..self.n {
            let row: Vec<String> = self.codewords.iter().map(|c| c.vector[i].to_string()).collect();
            let _ = writeln!(s, "  [{}],", row.join(", "));
        }
        let _ = writeln!(s, "]");
        let _ = writeln!(s, "provenance = [");
        for cw in &self.codewords {
            let p = match cw.provenance {
                Provenance::Edge { component, edge } => format!(
                    "{{ kind = \"edge\", component = {component}, edge = [{}, {}] }}",
                    edge[0], edge[1]
                ),
                Provenance::Leftover { arc } => format!("{{ kind = \"leftover\", arc = [{}, {}] }}", arc[0], arc[1]),
                Provenance::Direct { message } => format!("{{ kind = \"direct\", message = {message} }}"),
                Provenance::Free => "{ kind = \"free\" }".to_string(),
            };
            let _ = writeln!(s, "  {p},");
        }
        let _ = writeln!(s, "]");
        s
    }
}

impl fmt::Display for IndexCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.len()).map(|t| self.expression(t)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Formats `sum coeff * name`, skipping zero terms and writing unit
/// coefficients bare.
pub(crate) fn combination(terms: impl IntoIterator<Item = (String, u8)>) -> String {
    let parts: Vec<String> = terms
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(name, c)| if c == 1 { name } else { format!("{c}{name}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    q: i64,
    n: i64,
    rows: Vec<Vec<i64>>,
    #[serde(default)]
    provenance: Option<Vec<Provenance>>,
}

impl MatrixDoc {
    fn into_code(self) -> Result<IndexCode> {
        let field = PrimeField::new(self.q)?;
        if self.n < 1 || self.n as u64 > MAX_PARTICIPANTS as u64 {
            return Err(Error::InvalidCode(format!(
                "n = {} outside 1..={MAX_PARTICIPANTS}",
                self.n
            )));
        }
        let n = self.n as usize;
        if self.rows.len() != n {
            return Err(Error::InvalidCode(format!(
                "{} rows for n = {n} messages",
                self.rows.len()
            )));
        }
        let len = self.rows[0].len();
        if let Some(bad) = self.rows.iter().position(|r| r.len() != len) {
            return Err(Error::InvalidCode(format!(
                "row {} has a different length than row 1",
                bad + 1
            )));
        }
        let mut vectors = vec![vec![0u8; n]; len];
        for (i, row) in self.rows.iter().enumerate() {
            for (t, &x) in row.iter().enumerate() {
                if x < 0 || x >= field.order() as i64 {
                    return Err(Error::InvalidCode(format!(
                        "entry {x} at row {}, column {} is not in {field}",
                        i + 1,
                        t + 1
                    )));
                }
                vectors[t][i] = x as u8;
            }
        }
        let provenance = match self.provenance {
            Some(p) if p.len() != len => {
                return Err(Error::InvalidCode(format!(
                    "{} provenance entries for {len} columns",
                    p.len()
                )))
            }
            Some(p) => p,
            None => vec![Provenance::Free; len],
        };
        IndexCode::new(
            field,
            n,
            vectors
                .into_iter()
                .zip(provenance)
                .map(|(vector, provenance)| Codeword { vector, provenance })
                .collect(),
        )
    }
}
