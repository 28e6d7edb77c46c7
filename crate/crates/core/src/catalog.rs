//! Minimal toroidal triangulations and the search for removable face sets.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::complex::{euler_genus, remove_faces, Edge, SurfaceComplex, Triple};
use crate::format::{read_tri, FormatError};
use crate::ising::{Constraint, SpinState};
use crate::solve::{enumerate_satisfying, SolveOptions};

pub const DEFAULT_MAX_REMOVAL: usize = 2;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}: {source}")]
    File {
        file: String,
        #[source]
        source: FormatError,
    },
    #[error("{file}: expected genus 1, found genus {genus}")]
    GenusMismatch { file: String, genus: usize },
    #[error("{file}: catalog entries must be closed")]
    NotClosed { file: String },
    #[error("{file}: some edge lies in no non-facial 3-cycle")]
    NotMinimal { file: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub complex: SurfaceComplex,
    pub source: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadOptions {
    /// Reject entries with an edge outside every non-facial 3-cycle. This is
    /// a necessary condition for minimality, not a homotopy test.
    pub check_minimality: bool,
}

pub fn entry_from_complex(
    name: &str,
    complex: SurfaceComplex,
    source: String,
    opts: &LoadOptions,
) -> Result<CatalogEntry, CatalogError> {
    let file = name.to_string();
    if !complex.is_closed() {
        return Err(CatalogError::NotClosed { file });
    }
    let genus = euler_genus(&complex).map_err(|e| CatalogError::File {
        file: file.clone(),
        source: FormatError::Complex(e),
    })?;
    if genus != 1 {
        return Err(CatalogError::GenusMismatch { file, genus });
    }
    if opts.check_minimality && !complex.every_edge_in_nonfacial_triangle() {
        return Err(CatalogError::NotMinimal { file });
    }
    Ok(CatalogEntry {
        name: name.to_string(),
        complex,
        source,
    })
}

/// Read every `*.tri` file of `dir`, sorted by file stem.
pub fn load_catalog(
    dir: impl AsRef<Path>,
    opts: &LoadOptions,
) -> Result<Vec<CatalogEntry>, CatalogError> {
    let dir = dir.as_ref();
    let io = |source| CatalogError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut paths = Vec::new();
    for item in fs::read_dir(dir).map_err(io)? {
        let path = item.map_err(io)?.path();
        if path.is_file() && path.extension().is_some_and(|x| x == "tri") {
            paths.push(path);
        }
    }
    paths.sort_by(|a, b| a.file_stem().cmp(&b.file_stem()));
    paths
        .iter()
        .map(|path| {
            let file = path.display().to_string();
            let complex = read_tri(path).map_err(|source| CatalogError::File {
                file: file.clone(),
                source,
            })?;
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            let entry = entry_from_complex(&name, complex, file.clone(), opts);
            entry.map_err(|e| match e {
                CatalogError::GenusMismatch { genus, .. } => {
                    CatalogError::GenusMismatch { file, genus }
                }
                CatalogError::NotClosed { .. } => CatalogError::NotClosed { file },
                CatalogError::NotMinimal { .. } => CatalogError::NotMinimal { file },
                other => other,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovableSet {
    /// Face indices into the closed entry, ascending.
    pub faces: Vec<usize>,
    pub cycles: Vec<Triple>,
    pub punctured_count: u64,
    /// Monochromatic edge of each removed face under the witness.
    pub fundamental_edges: Vec<Edge>,
    /// Two of the removed faces are vertex-disjoint.
    pub connector: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    pub name: String,
    pub base_satisfying_count: u64,
    /// Canonical satisfying state of the base when it is unique up to sign.
    pub witness: Option<SpinState>,
    pub max_removal_size: usize,
    /// Subsets whose removal left every edge in a face.
    pub subsets_scanned: u64,
    pub removable_sets: Vec<RemovableSet>,
    pub supporting: bool,
}

impl SupportReport {
    pub fn is_connector(&self) -> bool {
        self.removable_sets.iter().any(|r| r.connector)
    }
}

fn count(c: &SurfaceComplex) -> (u64, Option<SpinState>) {
    let r = enumerate_satisfying(
        c,
        &Constraint::none(),
        &SolveOptions {
            representative_cap: 1,
            jobs: 1,
        },
    )
    .expect("empty constraint is always valid");
    (r.satisfying_count, r.representatives.into_iter().next())
}

/// Visit the `k`-subsets of `0..n` in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Try every face subset of size `1..=max_removal_size`, by size then
/// lexicographically, and keep those whose removal preserves the unique
/// satisfying pair.
pub fn scan_supportability(entry: &CatalogEntry, max_removal_size: usize) -> SupportReport {
    let c = &entry.complex;
    let (base, witness) = count(c);
    let mut report = SupportReport {
        name: entry.name.clone(),
        base_satisfying_count: base,
        witness: None,
        max_removal_size,
        subsets_scanned: 0,
        removable_sets: Vec::new(),
        supporting: false,
    };
    if base != 2 {
        return report;
    }
    let witness = witness.expect("count 2 has a representative");
    for k in 1..=max_removal_size {
        for_each_combination(c.faces().len(), k, |faces| {
            let Ok(punctured) = remove_faces(c, faces) else {
                return;
            };
            report.subsets_scanned += 1;
            let (punctured_count, _) = count(&punctured);
            if punctured_count != 2 {
                return;
            }
            let cycles: Vec<Triple> = faces.iter().map(|&i| c.faces()[i]).collect();
            let fundamental_edges = cycles
                .iter()
                .map(|t| {
                    *t.edges()
                        .iter()
                        .find(|&&e| witness.is_monochromatic(e))
                        .expect("satisfying state has a monochromatic edge per face")
                })
                .collect();
            let connector = cycles
                .iter()
                .enumerate()
                .any(|(i, a)| cycles[i + 1..].iter().any(|b| !a.shares_vertex(*b)));
            report.removable_sets.push(RemovableSet {
                faces: faces.to_vec(),
                cycles,
                punctured_count,
                fundamental_edges,
                connector,
            });
        });
    }
    report.supporting = !report.removable_sets.is_empty();
    report.witness = Some(witness);
    report
}

/// Scan several entries in parallel; output order follows `entries`.
pub fn scan_catalog(entries: &[CatalogEntry], max_removal_size: usize) -> Vec<SupportReport> {
    use rayon::prelude::*;
    entries
        .par_iter()
        .map(|e| scan_supportability(e, max_removal_size))
        .collect()
}
