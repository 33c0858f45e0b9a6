//! Isomorphism-free enumeration of finite k-CIRL algebras.

mod fusion;
mod lattices;
pub mod naive;

use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use fusion::fusions_on;
pub use lattices::{enumerate_lattices, lattice_family_ai, lattices_of_size};

use crate::algebra::{canonical_form, canonical_labeling, lattice_canonical_form, AlgebraJson, FiniteRl, Lattice};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Filter {
    All,
    Si,
    Linear,
    /// Algebras whose lattice reduct is isomorphic to the given lattice.
    LatticeReduct(Lattice),
}

impl Filter {
    pub fn label(&self) -> &'static str {
        match self {
            Filter::All => "all",
            Filter::Si => "si",
            Filter::Linear => "linear",
            Filter::LatticeReduct(_) => "lattice",
        }
    }

    pub fn accepts(&self, a: &FiniteRl) -> bool {
        match self {
            Filter::All | Filter::LatticeReduct(_) => true,
            Filter::Si => a.is_si(),
            Filter::Linear => a.is_linear(),
        }
    }
}

/// Algebras up to isomorphism, sorted by size and then canonical form.
/// Entries are canonically labeled and named `<size>.<index>`.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub k: u32,
    pub max_size: usize,
    pub filter: String,
    pub entries: Vec<FiniteRl>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    k: u32,
    max_size: usize,
    filter: String,
    count: usize,
    hash: String,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of entries of each size `1..=max_size`.
    pub fn counts_by_size(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_size];
        for a in &self.entries {
            counts[a.size() - 1] += 1;
        }
        counts
    }

    pub fn filtered(&self, keep: impl Fn(&FiniteRl) -> bool) -> Vec<FiniteRl> {
        self.entries.iter().filter(|a| keep(a)).cloned().collect()
    }

    fn lines(&self) -> Vec<String> {
        self.entries.iter().map(FiniteRl::to_json).collect()
    }

    /// SHA-256 over the algebra lines, each terminated by a newline.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        for line in self.lines() {
            h.update(line.as_bytes());
            h.update(b"\n");
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn write_jsonl(&self, mut w: impl Write) -> Result<()> {
        let header = Header {
            k: self.k,
            max_size: self.max_size,
            filter: self.filter.clone(),
            count: self.len(),
            hash: self.content_hash(),
        };
        writeln!(w, "{}", serde_json::to_string(&header)?)?;
        for line in self.lines() {
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    /// Reads a catalog, checking the header's count and hash.
    pub fn read_jsonl(r: impl BufRead) -> Result<Self> {
        let mut lines = r.lines();
        let first = lines.next().ok_or_else(|| Error::MalformedTables("empty catalog".into()))??;
        let header: Header = serde_json::from_str(&first)?;
        let mut entries = Vec::new();
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let j: AlgebraJson = serde_json::from_str(&line)?;
            entries.push(FiniteRl::try_from(&j)?);
        }
        let cat = Catalog { k: header.k, max_size: header.max_size, filter: header.filter, entries };
        if cat.len() != header.count || cat.content_hash() != header.hash {
            return Err(Error::MalformedTables("catalog header does not match its entries".into()));
        }
        Ok(cat)
    }
}

/// All k-CIRL algebras with at most `n` elements up to isomorphism that
/// pass `filter`.
pub fn enumerate_kcirl(k: u32, n: usize, filter: &Filter) -> Catalog {
    let lattices: Vec<Lattice> = match filter {
        Filter::LatticeReduct(l) => {
            let (_, perm) = lattice_canonical_form(l);
            if l.size() <= n { vec![l.permuted(&perm)] } else { Vec::new() }
        }
        Filter::Linear => (1..=n).map(Lattice::chain).collect(),
        _ => enumerate_lattices(n),
    };
    let mut found: Vec<(usize, Vec<u8>, FiniteRl)> = lattices
        .par_iter()
        .flat_map_iter(|l| fusions_on(l, k).into_values())
        .filter(|a| filter.accepts(a))
        .map(|a| {
            let a = a.permuted(&canonical_labeling(&a));
            (a.size(), canonical_form(&a), a)
        })
        .collect();
    found.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    let mut entries = Vec::with_capacity(found.len());
    let mut index = 0;
    for (i, (size, _, a)) in found.into_iter().enumerate() {
        if i == 0 || entries.last().is_some_and(|b: &FiniteRl| b.size() != size) {
            index = 0;
        }
        index += 1;
        entries.push(a.with_name(format!("{size}.{index}")));
    }
    Catalog { k, max_size: n, filter: filter.label().to_owned(), entries }
}
