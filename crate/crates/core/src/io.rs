//! JSON records and Graphviz export.
//!
//! Every top-level record carries `format_version`; readers accept records
//! without it. Pairs are `[i, j]` index pairs into the lattice's labels.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::Relation;
use crate::cochar::{Endo, Fiber};
use crate::crypto::{ModelStructure, MonoidOp, Submonoid};
use crate::error::{Error, Result};
use crate::factorization::FactorizationSystem;
use crate::lattice::{Lattice, Standard};
use crate::transfer::TransferSystem;

pub const FORMAT_VERSION: &str = "latfac/1";

fn default_version() -> String {
    FORMAT_VERSION.to_string()
}

pub type Pairs = Vec<[usize; 2]>;

pub fn pairs_of(rel: &Relation) -> Pairs {
    rel.pairs().map(|(x, y)| [x, y]).collect()
}

/// Builds a relation on `n` elements, rejecting out-of-range indices.
pub fn relation_of(n: usize, pairs: &[[usize; 2]]) -> Result<Relation> {
    for &[x, y] in pairs {
        for index in [x, y] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, size: n });
            }
        }
    }
    Ok(Relation::from_pairs(n, pairs.iter().map(|&[x, y]| (x, y))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeRecord {
    #[serde(default = "default_version")]
    pub format_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Standard family in display form, e.g. `grid(1,1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    pub labels: Vec<String>,
    pub covers: Pairs,
}

impl LatticeRecord {
    pub fn from_lattice(lattice: &Lattice) -> Self {
        LatticeRecord {
            format_version: default_version(),
            name: Some(lattice.name().to_string()),
            shape: lattice.shape().map(|s| s.to_string()),
            labels: lattice.labels().to_vec(),
            covers: pairs_of(lattice.covering_relations()),
        }
    }

    /// Builds the lattice. Elements may be renumbered; use
    /// [`LatticeRecord::to_lattice_with_map`] to translate record indices.
    pub fn to_lattice(&self, cap: usize) -> Result<Lattice> {
        self.to_lattice_with_map(cap).map(|(l, _)| l)
    }

    /// Builds the lattice and returns, for each record index, its index in
    /// the built lattice.
    pub fn to_lattice_with_map(&self, cap: usize) -> Result<(Lattice, Vec<usize>)> {
        let n = self.labels.len();
        for &[x, y] in &self.covers {
            for index in [x, y] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, size: n });
                }
            }
        }
        let pairs: Vec<(usize, usize)> = self.covers.iter().map(|&[x, y]| (x, y)).collect();
        let mut lattice = Lattice::from_indexed(self.labels.clone(), &pairs, cap)?;
        if let Some(shape) = &self.shape {
            let shape: Standard = shape.parse()?;
            // Only trust the tag if it really describes this lattice.
            if let Ok(expected) = shape.build_with_cap(cap) {
                if expected == lattice {
                    lattice = expected;
                }
            }
        }
        if let Some(name) = &self.name {
            lattice = lattice.with_name(name.clone());
        }
        let map = self
            .labels
            .iter()
            .map(|l| lattice.index_of(l).expect("label preserved"))
            .collect();
        Ok((lattice, map))
    }
}

pub fn lattice_to_json(lattice: &Lattice) -> String {
    serde_json::to_string_pretty(&LatticeRecord::from_lattice(lattice)).expect("serializable")
}

pub fn lattice_from_json(json: &str, cap: usize) -> Result<Lattice> {
    let record: LatticeRecord = serde_json::from_str(json)?;
    record.to_lattice(cap)
}

/// A lattice given inline or as a path to a lattice JSON file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeRef {
    Inline(LatticeRecord),
    Path(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferRecord {
    #[serde(default = "default_version")]
    pub format_version: String,
    pub lattice: LatticeRef,
    pub pairs: Pairs,
}

impl TransferRecord {
    pub fn from_system(system: &TransferSystem) -> Self {
        TransferRecord {
            format_version: default_version(),
            lattice: LatticeRef::Inline(LatticeRecord::from_lattice(system.lattice())),
            pairs: pairs_of(system.relation()),
        }
    }

    /// Resolves the lattice (paths relative to `base`) and validates the
    /// relation. Pair indices refer to the record's lattice numbering.
    pub fn to_system(&self, base: Option<&Path>, cap: usize) -> Result<TransferSystem> {
        let record = match &self.lattice {
            LatticeRef::Inline(r) => r.clone(),
            LatticeRef::Path(p) => {
                let path = match base {
                    Some(b) => b.join(p),
                    None => p.into(),
                };
                let text =
                    std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                serde_json::from_str(&text)?
            }
        };
        let (lattice, map) = record.to_lattice_with_map(cap)?;
        let n = lattice.size();
        let rel = relation_of(n, &self.pairs)?;
        let rel = Relation::from_pairs(n, rel.pairs().map(|(x, y)| (map[x], map[y])));
        TransferSystem::new(Arc::new(lattice), rel)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FsRecord {
    pub left: Pairs,
    pub right: Pairs,
}

impl FsRecord {
    pub fn from_fs(fs: &FactorizationSystem) -> Self {
        FsRecord {
            left: pairs_of(fs.left()),
            right: pairs_of(fs.right()),
        }
    }

    pub fn to_fs(&self, lattice: &Arc<Lattice>) -> Result<FactorizationSystem> {
        let n = lattice.size();
        FactorizationSystem::new(
            lattice.clone(),
            relation_of(n, &self.left)?,
            relation_of(n, &self.right)?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoRecord {
    pub table: Vec<usize>,
}

impl EndoRecord {
    pub fn from_endo(f: &Endo) -> Self {
        EndoRecord {
            table: f.table().to_vec(),
        }
    }

    pub fn to_endo(&self, lattice: &Arc<Lattice>) -> Result<Endo> {
        Endo::new(lattice.clone(), self.table.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberRecord {
    pub operator: Vec<usize>,
    pub members: Vec<FsRecord>,
    pub lower: FsRecord,
    pub upper: FsRecord,
    pub is_interval: bool,
}

impl FiberRecord {
    pub fn from_fiber(fiber: &Fiber) -> Self {
        FiberRecord {
            operator: fiber.operator.table().to_vec(),
            members: fiber.members.iter().map(FsRecord::from_fs).collect(),
            lower: FsRecord::from_fs(&fiber.lower),
            upper: FsRecord::from_fs(&fiber.upper),
            is_interval: fiber.is_interval,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmonoidRecord {
    pub op: MonoidOp,
    pub members: Vec<usize>,
}

impl SubmonoidRecord {
    pub fn from_submonoid(s: &Submonoid) -> Self {
        SubmonoidRecord {
            op: s.op(),
            members: s.members().to_vec(),
        }
    }

    pub fn to_submonoid(&self, lattice: &Arc<Lattice>) -> Result<Submonoid> {
        let n = lattice.size();
        if let Some(&index) = self.members.iter().find(|&&x| x >= n) {
            return Err(Error::IndexOutOfRange { index, size: n });
        }
        Submonoid::new(lattice.clone(), self.op, self.members.iter().copied().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelRecord {
    pub lower: FsRecord,
    pub upper: FsRecord,
    pub weak: Pairs,
}

impl ModelRecord {
    pub fn from_model(m: &ModelStructure) -> Self {
        ModelRecord {
            lower: FsRecord::from_fs(&m.lower),
            upper: FsRecord::from_fs(&m.upper),
            weak: pairs_of(&m.weak),
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

fn hasse_body(lattice: &Lattice, out: &mut String, cover_style: &str) {
    out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
    for x in lattice.elements() {
        let _ = writeln!(out, "  n{x} [label={}];", quote(lattice.label(x)));
    }
    let ranks = lattice.ranks();
    let height = ranks.iter().copied().max().unwrap_or(0);
    for r in 0..=height {
        let level: Vec<String> = lattice
            .elements()
            .filter(|&x| ranks[x] == r)
            .map(|x| format!("n{x};"))
            .collect();
        if level.len() > 1 {
            let _ = writeln!(out, "  {{ rank=same; {} }}", level.join(" "));
        }
    }
    for (x, y) in lattice.covering_relations().pairs() {
        let _ = writeln!(out, "  n{x} -> n{y}{cover_style};");
    }
}

/// Hasse diagram with the bottom at the lowest rank.
pub fn lattice_to_dot(lattice: &Lattice) -> String {
    let mut out = format!("digraph {} {{\n", quote(lattice.name()));
    hasse_body(lattice, &mut out, " [arrowhead=none]");
    out.push_str("}\n");
    out
}

/// Hasse diagram in grey with the transfer relations drawn on top.
pub fn transfer_to_dot(system: &TransferSystem) -> String {
    let lattice = system.lattice();
    let mut out = format!("digraph {} {{\n", quote(&format!("{} transfer", lattice.name())));
    hasse_body(lattice, &mut out, " [arrowhead=none, color=gray70]");
    for (x, y) in system.relation().pairs() {
        let _ = writeln!(out, "  n{x} -> n{y} [color=red, constraint=false];");
    }
    out.push_str("}\n");
    out
}
