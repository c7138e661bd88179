//! Bar-separated matrix representation of 3-tensors: one line per first
//! index, one block per third index, entries of a block run over the second
//! index. Entries print as their integer encodings.

use super::Tensor;
use crate::error::{Error, Result};
use crate::gfq::Field;

impl Tensor {
    pub fn to_matrix_repr(&self) -> Result<String> {
        if self.order() != 3 {
            return Err(Error::Shape(format!(
                "matrix representation needs order 3, got {}",
                self.order()
            )));
        }
        let (n1, n2, n3) = (self.dims[0], self.dims[1], self.dims[2]);
        let mut out = String::new();
        for a in 0..n1 {
            if a > 0 {
                out.push('\n');
            }
            let blocks: Vec<String> = (0..n3)
                .map(|s| {
                    (0..n2)
                        .map(|b| self.entries[(a * n2 + b) * n3 + s].to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            out.push_str(&blocks.join("|"));
        }
        Ok(out)
    }

    /// Parses the format produced by [`Tensor::to_matrix_repr`].
    pub fn from_matrix_repr(field: &Field, text: &str) -> Result<Tensor> {
        let rows: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .collect();
        if rows.is_empty() {
            return Err(Error::Invalid("empty matrix representation".into()));
        }
        let mut blocks: Vec<Vec<Vec<u8>>> = Vec::new();
        for row in &rows {
            let mut bs = Vec::new();
            for block in row.split('|') {
                let vals = block
                    .split_whitespace()
                    .map(|t| {
                        let v: u64 = t
                            .parse()
                            .map_err(|_| Error::Invalid(format!("bad entry {t:?}")))?;
                        field.check(v)
                    })
                    .collect::<Result<Vec<u8>>>()?;
                bs.push(vals);
            }
            blocks.push(bs);
        }
        let n1 = blocks.len();
        let n3 = blocks[0].len();
        let n2 = blocks[0][0].len();
        if n2 == 0
            || blocks
                .iter()
                .any(|r| r.len() != n3 || r.iter().any(|b| b.len() != n2))
        {
            return Err(Error::Shape("ragged matrix representation".into()));
        }
        let mut e = vec![0u8; n1 * n2 * n3];
        for (a, r) in blocks.iter().enumerate() {
            for (s, b) in r.iter().enumerate() {
                for (j, &v) in b.iter().enumerate() {
                    e[(a * n2 + j) * n3 + s] = v;
                }
            }
        }
        Tensor::new(field, &[n1, n2, n3], e)
    }
}
