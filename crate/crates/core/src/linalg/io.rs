//! File formats for matrices and vectors.
//!
//! Matrices are JSON, `{"n": rows, "m": cols, "entries": [[8 reals], ...]}`
//! in row-major order. Vectors are headerless CSV with one 8-column row per
//! entry. Floats are written in shortest round-trip form, so both formats
//! read back bit-exactly.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{DQMatrix, DQVector};
use crate::error::{Error, Result};
use crate::scalar::DualQuaternion;

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    m: usize,
    entries: Vec<[f64; 8]>,
}

pub(crate) fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| Error::Io { path: path.to_owned(), source })
}

pub(crate) fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| Error::Io { path: path.to_owned(), source })
}

pub(crate) fn flush(mut w: impl Write, path: &Path) -> Result<()> {
    w.flush().map_err(|source| Error::Io { path: path.to_owned(), source })
}

pub(crate) fn entries_from_arrays(arrays: &[[f64; 8]]) -> Result<Vec<DualQuaternion>> {
    arrays.iter().map(|a| DualQuaternion::from_array(*a)).collect()
}

pub fn matrix_to_json(q: &DQMatrix) -> Result<String> {
    let file = MatrixFile {
        n: q.rows(),
        m: q.cols(),
        entries: q.as_slice().iter().map(|e| e.to_array()).collect(),
    };
    Ok(serde_json::to_string(&file)?)
}

pub fn matrix_from_json(s: &str) -> Result<DQMatrix> {
    let file: MatrixFile = serde_json::from_str(s)?;
    DQMatrix::new(file.n, file.m, entries_from_arrays(&file.entries)?)
}

pub fn read_matrix(path: &Path) -> Result<DQMatrix> {
    let mut s = String::new();
    open(path)?
        .read_to_string(&mut s)
        .map_err(|source| Error::Io { path: path.to_owned(), source })?;
    matrix_from_json(&s)
}

pub fn write_matrix(path: &Path, q: &DQMatrix) -> Result<()> {
    let mut w = create(path)?;
    w.write_all(matrix_to_json(q)?.as_bytes())
        .map_err(|source| Error::Io { path: path.to_owned(), source })?;
    flush(w, path)
}

pub fn write_vector_to(w: impl Write, x: &DQVector) -> Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    for e in x {
        out.write_record(e.to_array().iter().map(|c| format!("{c:?}")))?;
    }
    out.flush().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(())
}

pub fn read_vector_from(r: impl Read) -> Result<DQVector> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(r);
    let mut entries = Vec::new();
    for rec in rdr.deserialize::<[f64; 8]>() {
        entries.push(DualQuaternion::from_array(rec?)?);
    }
    DQVector::new(entries)
}

pub fn write_vector(path: &Path, x: &DQVector) -> Result<()> {
    write_vector_to(create(path)?, x)
}

pub fn read_vector(path: &Path) -> Result<DQVector> {
    read_vector_from(open(path)?)
}
