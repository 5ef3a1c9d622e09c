//! Instance files: fusion data plus named subalgebras and the optional
//! clifford and conjugation blocks, in JSON syntax.
//!
//! ```json
//! {
//!   "name": "...",
//!   "comment": "...",
//!   "basis": [{"label": "1", "dim": 1}, ...],
//!   "unit": "1",
//!   "star": {"1": "1", ...},
//!   "fusion": [["x", "d1", "d3", 1], ...],
//!   "subalgebras": {"K": ["1", "x"]},
//!   "clifford": {"irr_H": [...], "irr_K": [...], "branching": [["chi", "alpha", 1]],
//!                "dimH": 6, "dimK": 3, "star_K": {...}, "subalgebra": "K"},
//!   "conjugation": {"dualLabel": [["alpha", "beta", 1]], ...}
//! }
//! ```
//!
//! Fusion triples, branching and conjugation entries that are not listed are
//! zero. Saving writes a canonical form (entries in basis order, zero entries
//! dropped), so load/save/load is the identity.

use std::io::Write as _;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::clifford::BranchingData;
use crate::conjugation::ConjugationAction;
use crate::error::{Error, Result};
use crate::fusion::{BasisElement, FusionData, FusionEntry};
use crate::subalgebra::Subalgebra;

/// Subalgebra name that always resolves to `{unit}`.
pub const TRIVIAL: &str = "trivial";

#[derive(Clone, Debug)]
pub struct Instance {
    pub fusion: FusionData,
    pub subalgebras: Vec<(String, Vec<usize>)>,
    pub clifford: Option<BranchingData>,
    pub conjugation: Option<ConjugationAction>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisEntry {
    label: String,
    dim: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CliffordBlock {
    #[serde(rename = "irr_H")]
    irr_h: Vec<BasisEntry>,
    #[serde(rename = "irr_K")]
    irr_k: Vec<BasisEntry>,
    branching: Vec<(String, String, i64)>,
    #[serde(rename = "dimH")]
    dim_h: i64,
    #[serde(rename = "dimK")]
    dim_k: i64,
    #[serde(rename = "star_K", default, skip_serializing_if = "Option::is_none")]
    star_k: Option<IndexMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    subalgebra: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
    basis: Vec<BasisEntry>,
    unit: String,
    star: IndexMap<String, String>,
    fusion: Vec<(String, String, String, i64)>,
    #[serde(default)]
    subalgebras: IndexMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    clifford: Option<CliffordBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    conjugation: Option<ConjugationBlock>,
}

/// `{dualLabel: [[alpha, beta, mult]]}`.
type ConjugationBlock = IndexMap<String, Vec<(String, String, i64)>>;

fn elements(entries: Vec<BasisEntry>) -> Vec<BasisElement> {
    entries
        .into_iter()
        .map(|b| BasisElement {
            label: b.label,
            dim: b.dim,
        })
        .collect()
}

fn entries(elements: &[BasisElement]) -> Vec<BasisEntry> {
    elements
        .iter()
        .map(|b| BasisEntry {
            label: b.label.clone(),
            dim: b.dim,
        })
        .collect()
}

fn lookup(list: &[BasisElement], label: &str, what: &str) -> Result<usize> {
    list.iter()
        .position(|e| e.label == label)
        .ok_or_else(|| Error::Malformed(format!("unknown {what} label `{label}`")))
}

impl Instance {
    pub fn new(fusion: FusionData) -> Self {
        Instance {
            fusion,
            subalgebras: Vec::new(),
            clifford: None,
            conjugation: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::parse(&e))?;
        Self::from_file(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    fn from_file(file: InstanceFile) -> Result<Self> {
        let basis = elements(file.basis);
        let idx = |label: &str| lookup(&basis, label, "basis");
        let unit = idx(&file.unit)?;
        let mut star: Vec<Option<usize>> = vec![None; basis.len()];
        for (a, b) in &file.star {
            let (a, b) = (idx(a)?, idx(b)?);
            if star[a].replace(b).is_some() {
                return Err(Error::Malformed(format!("star lists `{}` twice", basis[a].label)));
            }
        }
        let star = star
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::Malformed(format!("star missing for `{}`", basis[i].label))))
            .collect::<Result<Vec<_>>>()?;
        let fusion_entries = file
            .fusion
            .iter()
            .map(|(a, b, c, m)| {
                Ok(FusionEntry {
                    left: idx(a)?,
                    right: idx(b)?,
                    result: idx(c)?,
                    mult: *m,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let subalgebras = file
            .subalgebras
            .iter()
            .map(|(name, labels)| {
                if name == TRIVIAL {
                    return Err(Error::Malformed(format!("`{TRIVIAL}` is a reserved subalgebra name")));
                }
                let members = labels.iter().map(|l| idx(l)).collect::<Result<Vec<_>>>()?;
                Ok((name.clone(), members))
            })
            .collect::<Result<Vec<_>>>()?;
        let fusion = FusionData::new(file.name, basis, unit, star, fusion_entries)?.with_comment(file.comment);

        let clifford = file.clifford.map(Self::clifford_from_block).transpose()?;
        let conjugation = match file.conjugation {
            None => None,
            Some(block) => {
                let bd = clifford
                    .as_ref()
                    .ok_or_else(|| Error::Malformed("a conjugation block needs a clifford block for Irr(K)".into()))?;
                Some(Self::conjugation_from_block(&fusion, bd, block)?)
            }
        };

        Ok(Instance {
            fusion,
            subalgebras,
            clifford,
            conjugation,
        })
    }

    fn clifford_from_block(block: CliffordBlock) -> Result<BranchingData> {
        let irr_h = elements(block.irr_h);
        let irr_k = elements(block.irr_k);
        let mut mult = vec![vec![0i64; irr_k.len()]; irr_h.len()];
        for (chi, alpha, m) in &block.branching {
            let (c, a) = (lookup(&irr_h, chi, "irr_H")?, lookup(&irr_k, alpha, "irr_K")?);
            if mult[c][a] != 0 {
                return Err(Error::Malformed(format!("branching ({chi}, {alpha}) listed twice")));
            }
            mult[c][a] = *m;
        }
        let star_k = block
            .star_k
            .map(|map| {
                let mut star = vec![usize::MAX; irr_k.len()];
                for (a, b) in &map {
                    star[lookup(&irr_k, a, "irr_K")?] = lookup(&irr_k, b, "irr_K")?;
                }
                Ok::<_, Error>(star)
            })
            .transpose()?;
        let mut bd =
            BranchingData::new(irr_h, irr_k, mult, block.dim_h, block.dim_k)?.with_dual_subalgebra(block.subalgebra);
        if let Some(star) = star_k {
            bd = bd.with_star_k(star)?;
        }
        Ok(bd)
    }

    fn conjugation_from_block(
        fusion: &FusionData,
        bd: &BranchingData,
        block: ConjugationBlock,
    ) -> Result<ConjugationAction> {
        let k = bd.irr_k().len();
        let mut matrices: Vec<Option<Vec<Vec<i64>>>> = vec![None; fusion.rank()];
        for (dual, rows) in block {
            let d = fusion
                .index_of(&dual)
                .map_err(|_| Error::Malformed(format!("unknown dual label `{dual}` in conjugation block")))?;
            let mut m = vec![vec![0i64; k]; k];
            for (a, b, mult) in rows {
                let (a, b) = (lookup(bd.irr_k(), &a, "irr_K")?, lookup(bd.irr_k(), &b, "irr_K")?);
                m[a][b] = mult;
            }
            if matrices[d].replace(m).is_some() {
                return Err(Error::Malformed(format!("conjugation lists `{dual}` twice")));
            }
        }
        let matrices = matrices
            .into_iter()
            .enumerate()
            .map(|(d, m)| {
                m.ok_or_else(|| Error::Malformed(format!("conjugation block has no entry for `{}`", fusion.label(d))))
            })
            .collect::<Result<Vec<_>>>()?;
        ConjugationAction::new(matrices, fusion.rank(), k)
    }

    fn to_file(&self) -> InstanceFile {
        let f = &self.fusion;
        let label = |i: usize| f.label(i).to_string();
        let mut fusion: Vec<FusionEntry> = f.entries().collect();
        fusion.sort();
        let clifford = self.clifford.as_ref().map(|bd| {
            let mut branching = Vec::new();
            for (c, row) in bd.multiplicities().iter().enumerate() {
                for (a, &m) in row.iter().enumerate() {
                    if m != 0 {
                        branching.push((bd.irr_h()[c].label.clone(), bd.irr_k()[a].label.clone(), m));
                    }
                }
            }
            CliffordBlock {
                irr_h: entries(bd.irr_h()),
                irr_k: entries(bd.irr_k()),
                branching,
                dim_h: bd.dim_h(),
                dim_k: bd.dim_k(),
                star_k: bd.star_k().map(|s| {
                    s.iter()
                        .enumerate()
                        .map(|(a, &b)| (bd.irr_k()[a].label.clone(), bd.irr_k()[b].label.clone()))
                        .collect()
                }),
                subalgebra: bd.dual_subalgebra().map(str::to_string),
            }
        });
        let conjugation = match (&self.conjugation, &self.clifford) {
            (Some(act), Some(bd)) => Some(
                act.matrices()
                    .iter()
                    .enumerate()
                    .map(|(d, m)| {
                        let rows =
                            m.iter()
                                .enumerate()
                                .flat_map(|(a, row)| {
                                    row.iter().enumerate().filter(|(_, &x)| x != 0).map(move |(b, &x)| {
                                        (bd.irr_k()[a].label.clone(), bd.irr_k()[b].label.clone(), x)
                                    })
                                })
                                .collect();
                        (label(d), rows)
                    })
                    .collect(),
            ),
            _ => None,
        };
        InstanceFile {
            name: f.name().to_string(),
            comment: f.comment().map(str::to_string),
            basis: entries(f.basis()),
            unit: label(f.unit()),
            star: (0..f.rank()).map(|i| (label(i), label(f.star_index(i)))).collect(),
            fusion: fusion
                .into_iter()
                .map(|e| (label(e.left), label(e.right), label(e.result), e.mult))
                .collect(),
            subalgebras: self
                .subalgebras
                .iter()
                .map(|(name, members)| (name.clone(), members.iter().map(|&i| label(i)).collect()))
                .collect(),
            clifford,
            conjugation,
        }
    }

    /// Canonical JSON text; arrays of scalars are kept on one line.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self.to_file()).expect("instance serializes");
        let mut out = String::new();
        write_value(&mut out, &value, 0);
        out.push('\n');
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut file = std::fs::File::create(path)?;
        file.write_all(self.to_json().as_bytes())?;
        Ok(())
    }

    pub fn name(&self) -> &str {
        self.fusion.name()
    }

    pub fn subalgebra_names(&self) -> impl Iterator<Item = &str> {
        self.subalgebras.iter().map(|(n, _)| n.as_str())
    }

    /// Resolves a named subalgebra (or the reserved `trivial`) and validates it.
    pub fn subalgebra(&self, name: &str) -> Result<Subalgebra<'_>> {
        if name == TRIVIAL {
            return Ok(Subalgebra::trivial(&self.fusion));
        }
        let (_, members) = self
            .subalgebras
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::UnknownSubalgebra(name.to_string()))?;
        Subalgebra::new(&self.fusion, members.iter().copied()).map_err(|e| match e {
            Error::Closure(msg) => Error::Closure(format!("`{name}`: {msg}")),
            other => other,
        })
    }

    /// `trivial` followed by every named subalgebra.
    pub fn all_subalgebras(&self) -> Result<Vec<(String, Subalgebra<'_>)>> {
        std::iter::once(TRIVIAL)
            .chain(self.subalgebra_names())
            .map(|n| Ok((n.to_string(), self.subalgebra(n)?)))
            .collect()
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, n: usize| out.extend(std::iter::repeat_n(' ', n));
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("scalar array"));
        }
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, indent + 2);
                write_value(out, item, indent + 2);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) if map.values().all(|x| !x.is_array() && !x.is_object()) && indent > 0 => {
            out.push_str(&serde_json::to_string(v).expect("flat object"));
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                pad(out, indent + 2);
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                write_value(out, item, indent + 2);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            pad(out, indent);
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalar")),
    }
}
