//! Binary cache for modular count tables.
//!
//! Layout: the 8-byte magic `BIREGCT1`, then little-endian `u64` fields
//! `kind` (0 regular, 1 bipartite), `l`, `m` (0 for regular tables), `n`,
//! `modulus`, followed by `n + 1` little-endian `u64` entries.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::{CountTable, Counts, TableKind};
use crate::series::CoeffRing;

pub const CACHE_ENV: &str = "BIREG_CACHE_DIR";
const MAGIC: &[u8; 8] = b"BIREGCT1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("not a count-table cache file")]
    BadMagic,
    #[error("corrupt cache file: {0}")]
    Corrupt(String),
    #[error("only modular tables are cached")]
    ExactTable,
}

/// Cache directory named by `BIREG_CACHE_DIR`, if set and nonempty.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

pub(super) fn file_name(kind: TableKind, modulus: u64) -> String {
    match kind {
        TableKind::Regular { l } => format!("b{l}_mod{modulus}.bin"),
        TableKind::Bipartite { l, m } => format!("B{l}_{m}_mod{modulus}.bin"),
    }
}

pub fn save_table(table: &CountTable, path: &Path) -> Result<(), CacheError> {
    let Counts::Mod(values) = &table.values else {
        return Err(CacheError::ExactTable);
    };
    let (kind, l, m) = match table.kind {
        TableKind::Regular { l } => (0u64, l, 0u64),
        TableKind::Bipartite { l, m } => (1, l, m),
    };
    let tmp = path.with_extension("tmp");
    {
        let mut w = BufWriter::new(File::create(&tmp)?);
        w.write_all(MAGIC)?;
        for field in [kind, l, m, table.max_index() as u64, table.ring.modulus()] {
            w.write_all(&field.to_le_bytes())?;
        }
        for v in values {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load_table(path: &Path) -> Result<CountTable, CacheError> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(CacheError::BadMagic);
    }
    let mut word = || -> Result<u64, CacheError> {
        let mut b = [0u8; 8];
        r.read_exact(&mut b)?;
        Ok(u64::from_le_bytes(b))
    };
    let (kind, l, m, n, modulus) = (word()?, word()?, word()?, word()?, word()?);
    let kind = match kind {
        0 => TableKind::Regular { l },
        1 => TableKind::Bipartite { l, m },
        other => return Err(CacheError::Corrupt(format!("unknown kind {other}"))),
    };
    let ring = CoeffRing::modular(modulus).map_err(|e| CacheError::Corrupt(e.to_string()))?;
    let n = usize::try_from(n).map_err(|_| CacheError::Corrupt("length overflow".into()))?;
    let mut values = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        let v = word()?;
        if v >= modulus {
            return Err(CacheError::Corrupt(format!("entry {v} out of range")));
        }
        values.push(v);
    }
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(CacheError::Corrupt("trailing bytes".into()));
    }
    Ok(CountTable { kind, ring, values: Counts::Mod(values) })
}
