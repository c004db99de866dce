//! On-disk JSON tables of monic irreducibles, keyed by `(p, r, modulus, degree)`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Fq};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleTable {
    pub q: u32,
    pub p: u32,
    pub r: u32,
    pub modulus: Vec<u32>,
    pub degree: usize,
    /// Coefficient codes, constant term first, in enumeration order.
    pub polys: Vec<Vec<u32>>,
}

impl IrreducibleTable {
    fn matches(&self, f: &Fq, degree: usize) -> bool {
        self.p == f.p() && self.r == f.r() && self.q == f.q() && self.modulus == f.modulus() && self.degree == degree
    }
}

#[derive(Debug)]
pub struct IrreducibleCache {
    dir: PathBuf,
    hits: u64,
    misses: u64,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

impl IrreducibleCache {
    pub fn new(dir: impl Into<PathBuf>) -> IrreducibleCache {
        IrreducibleCache { dir: dir.into(), hits: 0, misses: 0 }
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    pub fn path_for(&self, f: &Fq, degree: usize) -> PathBuf {
        let m: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
        self.dir.join("irreducibles").join(format!("p{}_r{}_m{}_d{degree}.json", f.p(), f.r(), m.join("-")))
    }

    /// Loads the table, or computes and stores it. Unreadable or mismatched files are recomputed.
    pub fn irreducibles(&mut self, f: &Fq, degree: usize, ceiling: u64) -> Result<Vec<Poly>> {
        let path = self.path_for(f, degree);
        if let Some(table) = fs::read(&path).ok().and_then(|b| serde_json::from_slice::<IrreducibleTable>(&b).ok()) {
            if table.matches(f, degree) {
                self.hits += 1;
                return Ok(table.polys.into_iter().map(|c| Poly::new(c.into_iter().map(Fe).collect())).collect());
            }
        }
        self.misses += 1;
        let polys = f.irreducibles(degree, ceiling)?;
        let table = IrreducibleTable {
            q: f.q(),
            p: f.p(),
            r: f.r(),
            modulus: f.modulus().to_vec(),
            degree,
            polys: polys.iter().map(|a| a.coeffs().iter().map(|c| c.0).collect()).collect(),
        };
        let parent = path.parent().expect("table path has a parent");
        fs::create_dir_all(parent).map_err(|e| io_err(parent, e))?;
        let tmp = path.with_extension("json.tmp");
        let body = serde_json::to_vec(&table).map_err(|e| io_err(&path, e))?;
        fs::write(&tmp, body).map_err(|e| io_err(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| io_err(&path, e))?;
        Ok(polys)
    }
}
