//! JSON matrix exchange: `{"n_dim": N, "entries": [[[d_0, ..., d_{m-1}], ...], ...]}`
//! where each entry lists its Teichmüller digits `x = Σ 2^i [d_i]`, and each
//! digit is a residue-field element written as its polynomial-basis bit
//! pattern. Shorter digit lists are padded with zeros.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dring::RingSpec;
use crate::error::{Error, Result};
use crate::gf2::FieldElem;
use crate::matgrp::Mat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n_dim: usize,
    pub entries: Vec<Vec<Vec<u32>>>,
}

impl MatrixJson {
    pub fn from_mat(m: &Mat) -> Self {
        let r = m.ring();
        let entries = (0..m.dim())
            .map(|i| {
                (0..m.dim())
                    .map(|j| r.to_digits(m.get(i, j)).into_iter().map(|d| d.bits()).collect())
                    .collect()
            })
            .collect();
        MatrixJson { n_dim: m.dim(), entries }
    }

    pub fn to_mat(&self, ring: &Arc<RingSpec>) -> Result<Mat> {
        let n = self.n_dim;
        if n == 0 {
            return Err(Error::Parse("n_dim must be positive".into()));
        }
        if self.entries.len() != n || self.entries.iter().any(|row| row.len() != n) {
            return Err(Error::Parse(format!("entries must form a {n}x{n} array")));
        }
        let field = ring.field();
        let mut out = Mat::zero(ring, n);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, digits) in row.iter().enumerate() {
                let elems: Vec<FieldElem> = digits.iter().map(|&d| FieldElem(d)).collect();
                if let Some(bad) = elems.iter().find(|&&d| !field.contains(d)) {
                    return Err(Error::Parse(format!(
                        "digit {} at ({}, {}) is not in GF({})",
                        bad.bits(),
                        i + 1,
                        j + 1,
                        field.q()
                    )));
                }
                out.set(i, j, ring.from_digits(&elems)?);
            }
        }
        Ok(out)
    }
}

pub fn parse_matrix(text: &str, ring: &Arc<RingSpec>) -> Result<Mat> {
    let m: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    m.to_mat(ring)
}
