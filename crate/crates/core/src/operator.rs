//! Dense operator matrices acting on interleaved vector densities.
//!
//! Unknowns are ordered `(u1, u2)` per node: index `2 j + c`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::Mat2;
use crate::material::Material;

/// Metadata written next to a matrix dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorMeta {
    pub name: String,
    pub curve: String,
    pub nodes: usize,
    pub material: Material,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub data: DMatrix<Complex64>,
    pub meta: OperatorMeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DumpFormat {
    Csv,
    Binary,
}

#[derive(Serialize)]
struct DumpHeader<'a> {
    #[serde(flatten)]
    meta: &'a OperatorMeta,
    omega: f64,
    rows: usize,
    cols: usize,
    layout: &'static str,
    format: &'static str,
}

impl OperatorMatrix {
    pub fn new(data: DMatrix<Complex64>, meta: OperatorMeta) -> Result<Self> {
        if data.nrows() != 2 * meta.nodes || data.ncols() != 2 * meta.nodes {
            return Err(Error::DimensionMismatch {
                expected: 2 * meta.nodes,
                got: data.nrows(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("operator matrix"));
        }
        Ok(OperatorMatrix { data, meta })
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn nodes(&self) -> usize {
        self.meta.nodes
    }

    /// 2x2 block coupling target node `i` to source node `j`.
    pub fn block(&self, i: usize, j: usize) -> Mat2 {
        self.data.fixed_view::<2, 2>(2 * i, 2 * j).into_owned()
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(&self.data * v)
    }

    /// `self * rhs`, keeping this operator's metadata under a new name.
    pub fn compose(&self, rhs: &OperatorMatrix, name: &str) -> Result<OperatorMatrix> {
        if rhs.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: rhs.dim(),
            });
        }
        let mut meta = self.meta.clone();
        meta.name = name.to_string();
        Ok(OperatorMatrix {
            data: &self.data * &rhs.data,
            meta,
        })
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.meta.name = name.to_string();
        self
    }

    /// Writes the matrix plus a `<path>.json` header.
    pub fn dump(&self, path: &Path, format: DumpFormat) -> std::io::Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        match format {
            DumpFormat::Csv => {
                for i in 0..self.data.nrows() {
                    let row: Vec<String> = (0..self.data.ncols())
                        .flat_map(|j| {
                            let z = self.data[(i, j)];
                            [format!("{:.17e}", z.re), format!("{:.17e}", z.im)]
                        })
                        .collect();
                    writeln!(w, "{}", row.join(","))?;
                }
            }
            DumpFormat::Binary => {
                for i in 0..self.data.nrows() {
                    for j in 0..self.data.ncols() {
                        let z = self.data[(i, j)];
                        w.write_all(&z.re.to_le_bytes())?;
                        w.write_all(&z.im.to_le_bytes())?;
                    }
                }
            }
        }
        w.flush()?;
        let header = DumpHeader {
            meta: &self.meta,
            omega: self.meta.material.omega,
            rows: self.data.nrows(),
            cols: self.data.ncols(),
            layout: "row-major, interleaved re/im, unknown index 2*node+component",
            format: match format {
                DumpFormat::Csv => "csv",
                DumpFormat::Binary => "f64-le",
            },
        };
        let mut hp = path.as_os_str().to_owned();
        hp.push(".json");
        std::fs::write(hp, serde_json::to_string_pretty(&header)? + "\n")
    }
}

/// Identity on `nodes` vector-valued nodes.
pub fn identity(nodes: usize) -> DMatrix<Complex64> {
    DMatrix::identity(2 * nodes, 2 * nodes)
}

/// Kronecker product of a scalar node-space matrix with the 2x2 identity.
pub fn kron_i2(a: &DMatrix<f64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let m = a.ncols();
    let mut out = DMatrix::zeros(2 * n, 2 * m);
    for i in 0..n {
        for j in 0..m {
            let v = Complex64::from(a[(i, j)]);
            out[(2 * i, 2 * j)] = v;
            out[(2 * i + 1, 2 * j + 1)] = v;
        }
    }
    out
}

/// Scales row block `i` by `d[i]`.
pub fn scale_rows(a: &mut DMatrix<Complex64>, d: &[f64]) {
    for (i, &s) in d.iter().enumerate() {
        for c in 0..2 {
            a.row_mut(2 * i + c).scale_mut(s);
        }
    }
}

/// Sets block `(i, j)` of an interleaved matrix.
pub fn set_block(a: &mut DMatrix<Complex64>, i: usize, j: usize, b: &Mat2) {
    a.fixed_view_mut::<2, 2>(2 * i, 2 * j).copy_from(b);
}

/// Relative 2-norm `|a - b| / |b|`.
pub fn rel_diff(a: &DVector<Complex64>, b: &DVector<Complex64>) -> f64 {
    (a - b).norm() / b.norm()
}
