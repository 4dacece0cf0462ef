//! JSON-lines persistence of structure-constant tables and the on-disk cache.
//!
//! A table file is a header line followed by one line per basis pair
//! `(𝐂, 𝐃)` with a nonzero product. Files are keyed by a SHA-256 of the
//! presentation, `n`, `d` and the basis-order version.

use crate::schur::{Mode, SchurAlgebra};
use crate::superalgebra::{Ring, SuperAlgebra};
use crate::{Error, Exec, LinComb, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

/// Bumped whenever the enumeration order of `M^B(n,d)` changes.
pub const ORDER_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "TURNER_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableHeader {
    pub kind: String,
    pub presentation: String,
    pub n: usize,
    pub d: usize,
    pub order_version: u32,
    #[serde(default = "integer_ring")]
    pub ring: String,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub left: usize,
    pub right: usize,
    pub out: Vec<(usize, i64)>,
}

fn integer_ring() -> String {
    Ring::Integers.name()
}

pub fn header(s: &SchurAlgebra) -> TableHeader {
    TableHeader {
        kind: "schur-table".into(),
        presentation: s.algebra().fingerprint().into(),
        n: s.n(),
        d: s.d(),
        order_version: ORDER_VERSION,
        ring: integer_ring(),
        dim: s.dim(),
        basis: (0..s.dim()).map(|i| s.label(i)).collect(),
    }
}

pub fn write_table<W: Write>(s: &SchurAlgebra, w: W) -> Result<()> {
    write_table_over(s, Ring::Integers, w)
}

/// Writes the table with coefficients mapped into `ring`.
pub fn write_table_over<W: Write>(s: &SchurAlgebra, ring: Ring, mut w: W) -> Result<()> {
    serde_json::to_writer(&mut w, &TableHeader { ring: ring.name(), ..header(s) })?;
    writeln!(w)?;
    for i in 0..s.dim() {
        for j in 0..s.dim() {
            let p = ring.extend(s.product(i, j));
            if p.is_zero() {
                continue;
            }
            let rec = TableRecord { left: i, right: j, out: p.iter().map(|(&k, &c)| (k, c)).collect() };
            serde_json::to_writer(&mut w, &rec)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

pub fn table_to_string(s: &SchurAlgebra) -> Result<String> {
    let mut buf = Vec::new();
    write_table(s, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Format(e.to_string()))
}

/// Reads a table for `S^A(n,d)`, rejecting files whose header does not match.
pub fn read_table<R: BufRead>(a: &SuperAlgebra, n: usize, d: usize, r: R) -> Result<SchurAlgebra> {
    let mut lines = r.lines();
    let first = lines.next().ok_or_else(|| Error::Format("empty table file".into()))??;
    let h: TableHeader = serde_json::from_str(&first)?;
    if h.kind != "schur-table" {
        return Err(Error::Format(format!("unexpected record kind {}", h.kind)));
    }
    if h.order_version != ORDER_VERSION {
        return Err(Error::Format(format!("stale basis order version {} (current {ORDER_VERSION})", h.order_version)));
    }
    if h.ring != integer_ring() {
        return Err(Error::Format(format!("table over {} cannot be read as an integer table", h.ring)));
    }
    if h.presentation != a.fingerprint() || h.n != n || h.d != d {
        return Err(Error::Format("table header does not match the requested algebra".into()));
    }
    let mut table = vec![LinComb::new(); h.dim * h.dim];
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: TableRecord = serde_json::from_str(&line)?;
        if rec.left >= h.dim || rec.right >= h.dim || rec.out.iter().any(|&(k, _)| k >= h.dim) {
            return Err(Error::Format(format!("record ({}, {}) out of range", rec.left, rec.right)));
        }
        table[rec.left * h.dim + rec.right] = LinComb::from_pairs(rec.out);
    }
    let s = SchurAlgebra::with_table(a, n, d, table)?;
    if (0..s.dim()).map(|i| s.label(i)).ne(h.basis.iter().cloned()) {
        return Err(Error::Format("basis labels differ from the current enumeration".into()));
    }
    Ok(s)
}

/// Content key of `(presentation, n, d, order version)`.
pub fn cache_key(a: &SuperAlgebra, n: usize, d: usize) -> String {
    let mut h = Sha256::new();
    h.update(a.to_json().as_bytes());
    h.update(format!("|n={n}|d={d}|order={ORDER_VERSION}").as_bytes());
    hex::encode(h.finalize())
}

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Disabled,
    Hit,
    Miss,
    /// The cached file failed its header check and was rebuilt.
    Stale,
}

/// Loads `S^A(n,d)` from `dir` or builds and stores it.
pub fn load_or_build(a: &SuperAlgebra, n: usize, d: usize, mode: Mode, exec: Exec, dir: Option<&Path>) -> Result<(SchurAlgebra, CacheOutcome)> {
    let Some(dir) = dir else {
        return Ok((SchurAlgebra::new(a, n, d, mode, exec)?, CacheOutcome::Disabled));
    };
    let path = dir.join(format!("{}.jsonl", cache_key(a, n, d)));
    let mut outcome = CacheOutcome::Miss;
    if path.exists() {
        let f = std::io::BufReader::new(std::fs::File::open(&path)?);
        match read_table(a, n, d, f) {
            Ok(s) => return Ok((s, CacheOutcome::Hit)),
            Err(Error::Format(_)) | Err(Error::Json(_)) => outcome = CacheOutcome::Stale,
            Err(e) => return Err(e),
        }
    }
    let s = SchurAlgebra::new(a, n, d, mode, exec)?;
    write_atomic(&path, table_to_string(&s)?.as_bytes())?;
    Ok((s, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::preset;

    #[test]
    fn round_trip() {
        let a = preset("pq-a2").unwrap();
        let s = SchurAlgebra::new(&a, 1, 2, Mode::Formula, Exec::Sequential).unwrap();
        let text = table_to_string(&s).unwrap();
        let back = read_table(&a, 1, 2, text.as_bytes()).unwrap();
        assert_eq!(back.table(), s.table());
        assert_eq!(table_to_string(&back).unwrap(), text);
        assert!(read_table(&a, 2, 2, text.as_bytes()).is_err());
        let stale = text.replacen("\"order_version\":1", "\"order_version\":0", 1);
        assert!(matches!(read_table(&a, 1, 2, stale.as_bytes()), Err(Error::Format(_))));
    }

    #[test]
    fn cache() {
        let dir = tempfile::tempdir().unwrap();
        let a = preset("trivial").unwrap();
        let (_, o) = load_or_build(&a, 2, 2, Mode::Formula, Exec::Sequential, Some(dir.path())).unwrap();
        assert_eq!(o, CacheOutcome::Miss);
        let (s, o) = load_or_build(&a, 2, 2, Mode::Formula, Exec::Sequential, Some(dir.path())).unwrap();
        assert_eq!(o, CacheOutcome::Hit);
        assert_eq!(s.dim(), 10);
        let path = dir.path().join(format!("{}.jsonl", cache_key(&a, 2, 2)));
        std::fs::write(&path, "{\"kind\":\"other\"}\n").unwrap();
        let (_, o) = load_or_build(&a, 2, 2, Mode::Formula, Exec::Sequential, Some(dir.path())).unwrap();
        assert_eq!(o, CacheOutcome::Stale);
        assert_ne!(cache_key(&a, 2, 2), cache_key(&a, 2, 3));
    }
}
