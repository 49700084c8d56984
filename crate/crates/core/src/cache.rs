//! On-disk Kostka matrix cache: one checksummed JSON file per `(k, degree)`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::kschur::KostkaMatrix;
use crate::matrix::Matrix;
use crate::partition::Partition;

pub const FORMAT_VERSION: u32 = 1;
const PREFIX: &str = "kostka-";
const SUFFIX: &str = ".json";

#[derive(Serialize)]
struct Payload<'a> {
    format_version: u32,
    k: usize,
    degree: usize,
    index: &'a [Partition],
    forward: &'a [i64],
    inverse: &'a [i64],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CacheFile {
    format_version: u32,
    k: usize,
    degree: usize,
    index: Vec<Partition>,
    forward: Vec<i64>,
    inverse: Vec<i64>,
    checksum: String,
}

fn checksum(p: &Payload<'_>) -> String {
    let text = serde_json::to_string(p).expect("payload serialization cannot fail");
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn flatten(m: &Matrix) -> Option<Vec<i64>> {
    m.iter().flatten().map(|x| x.to_i64()).collect()
}

fn unflatten(v: &[i64], n: usize) -> Matrix {
    v.chunks(n.max(1))
        .take(n)
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn file_name(k: usize, degree: usize) -> String {
    format!("{PREFIX}v{FORMAT_VERSION}-k{k}-n{degree}{SUFFIX}")
}

pub fn file_path(dir: &Path, k: usize, degree: usize) -> PathBuf {
    dir.join(file_name(k, degree))
}

/// Serializes a matrix, or `None` when an entry does not fit in an `i64`.
pub fn encode(m: &KostkaMatrix) -> Option<String> {
    let forward = flatten(m.forward())?;
    let inverse = flatten(m.inverse())?;
    let payload = Payload {
        format_version: FORMAT_VERSION,
        k: m.k(),
        degree: m.degree(),
        index: m.index(),
        forward: &forward,
        inverse: &inverse,
    };
    let file = CacheFile {
        format_version: FORMAT_VERSION,
        k: m.k(),
        degree: m.degree(),
        index: m.index().to_vec(),
        checksum: checksum(&payload),
        forward,
        inverse,
    };
    Some(serde_json::to_string(&file).expect("cache serialization cannot fail"))
}

/// Parses and fully validates a cache file.
pub fn decode(text: &str) -> Result<KostkaMatrix> {
    let file: CacheFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("cache file: {e}")))?;
    if file.format_version != FORMAT_VERSION {
        return Err(Error::Parse(format!("cache format version {} is not {FORMAT_VERSION}", file.format_version)));
    }
    let payload = Payload {
        format_version: file.format_version,
        k: file.k,
        degree: file.degree,
        index: &file.index,
        forward: &file.forward,
        inverse: &file.inverse,
    };
    if checksum(&payload) != file.checksum {
        return Err(Error::Parse("cache checksum mismatch".into()));
    }
    let n = file.index.len();
    let cells = n.checked_mul(n).ok_or_else(|| Error::Parse("cache index too large".into()))?;
    if file.forward.len() != cells || file.inverse.len() != cells {
        return Err(Error::Parse("cache matrix size does not match its index".into()));
    }
    let forward = unflatten(&file.forward, n);
    let inverse = unflatten(&file.inverse, n);
    KostkaMatrix::from_parts(file.k, file.degree, file.index, forward, inverse)
        .map_err(|e| Error::Parse(format!("cache contents: {e}")))
}

/// Reads the cached matrix for `(k, degree)` if present and valid.
pub fn load(dir: &Path, k: usize, degree: usize) -> Option<KostkaMatrix> {
    let text = fs::read_to_string(file_path(dir, k, degree)).ok()?;
    let m = decode(&text).ok()?;
    (m.k() == k && m.degree() == degree).then_some(m)
}

/// Writes through a temporary file and a rename so readers never observe a
/// partial file. Matrices with entries beyond `i64` are not stored.
pub fn store(dir: &Path, m: &KostkaMatrix) -> Result<bool> {
    let Some(text) = encode(m) else {
        return Ok(false);
    };
    let io = |e: std::io::Error| Error::Io(e.to_string());
    fs::create_dir_all(dir).map_err(io)?;
    let target = file_path(dir, m.k(), m.degree());
    let tmp = dir.join(format!(".{}.{}.tmp", file_name(m.k(), m.degree()), std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(text.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, &target).map_err(io)?;
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CacheStats {
    pub files: usize,
    pub bytes: u64,
}

fn cache_files(dir: &Path) -> Result<Vec<(PathBuf, u64)>> {
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::Io(e.to_string())),
    };
    let mut out = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::Io(e.to_string()))?;
        let name = entry.file_name();
        let name = name.to_string_lossy();
        if name.starts_with(PREFIX) && name.ends_with(SUFFIX) {
            let len = entry.metadata().map(|m| m.len()).unwrap_or(0);
            out.push((entry.path(), len));
        }
    }
    out.sort();
    Ok(out)
}

pub fn stats(dir: &Path) -> Result<CacheStats> {
    let files = cache_files(dir)?;
    Ok(CacheStats {
        files: files.len(),
        bytes: files.iter().map(|(_, b)| b).sum(),
    })
}

/// Removes every cache file in `dir`; returns how many were removed.
pub fn clear(dir: &Path) -> Result<usize> {
    let files = cache_files(dir)?;
    for (path, _) in &files {
        fs::remove_file(path).map_err(|e| Error::Io(e.to_string()))?;
    }
    Ok(files.len())
}
