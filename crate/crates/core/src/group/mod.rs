//! Brute-force ground truth from finite permutation groups.
//!
//! For `H = kG` the dual irreducible characters are the group elements, the
//! Hopf subalgebras are the subgroup algebras, and every statement about the
//! coset relation, restriction and conjugation can be checked directly against
//! classical group theory. The builders here turn a [`GroupSpec`] into the
//! same [`Instance`] data the rest of the crate consumes.

mod chartab;
mod perm;

pub use chartab::{conjugacy_classes, CharacterTable, INTEGRALITY_TOLERANCE, ORTHOGONALITY_TOLERANCE};
pub use perm::{compose, cycle_notation, invert, Perm, PermGroup, Subgroup, ORDER_CAP};

use indexmap::IndexMap;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::BranchingData;
use crate::conjugation::ConjugationAction;
use crate::error::{Error, Result};
use crate::fusion::{BasisElement, FusionData, FusionEntry};
use crate::instance::Instance;
use crate::report::Verdict;

/// Largest allowed distance of a computed multiplicity from an integer.
pub const RESIDUE_TOLERANCE: f64 = 1e-6;

/// Group-spec file: `{degree, generators: [[images]], subgroups: {name: [[images]]}}`
/// with 0-based image arrays and an optional `name`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<Perm>,
    #[serde(default)]
    pub subgroups: IndexMap<String, Vec<Perm>>,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(&e))
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn build(&self) -> Result<Oracle> {
        let group = PermGroup::generate(self.degree, self.generators.clone())?;
        let subgroups = self
            .subgroups
            .iter()
            .map(|(name, gens)| {
                let s = group
                    .subgroup_generated(gens)
                    .map_err(|e| Error::NotSubgroup(format!("`{name}`: {e}")))?;
                Ok((name.clone(), s))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Oracle {
            name: self.name.clone().unwrap_or_else(|| "group".into()),
            group,
            subgroups,
        })
    }
}

/// A generated group with its named subgroups.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub name: String,
    pub group: PermGroup,
    pub subgroups: Vec<(String, Subgroup)>,
}

impl Oracle {
    pub fn subgroup(&self, name: &str) -> Result<&Subgroup> {
        self.subgroups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| Error::UnknownSubalgebra(name.to_string()))
    }

    pub fn table(&self) -> Result<CharacterTable> {
        CharacterTable::compute(&self.group, &self.group.whole())
    }

    /// Named subgroups plus the trivial and whole group, for exhaustive pair loops.
    pub fn subgroups_with_extremes(&self) -> Vec<(String, Subgroup)> {
        let mut out = vec![("trivial".to_string(), self.group.trivial())];
        out.extend(self.subgroups.iter().cloned());
        out.push(("whole".to_string(), self.group.whole()));
        out
    }
}

/// Fusion data of `C(kG*)`: basis = group elements (cycle notation, `ε = 1`),
/// `g · h = gh`, `g* = g⁻¹`, unit = identity. Each named subgroup becomes a
/// subalgebra of the same name.
pub fn dual_fusion(oracle: &Oracle) -> Result<Instance> {
    let g = &oracle.group;
    let n = g.order();
    let basis = (0..n)
        .map(|i| BasisElement {
            label: g.label(i),
            dim: 1,
        })
        .collect();
    let star = (0..n).map(|i| g.inv(i)).collect();
    let entries = (0..n).flat_map(|a| {
        (0..n).map(move |b| FusionEntry {
            left: a,
            right: b,
            result: g.mul(a, b),
            mult: 1,
        })
    });
    let fusion = FusionData::new(
        format!("{} (dual group algebra)", oracle.name),
        basis,
        g.identity(),
        star,
        entries,
    )?;
    let mut inst = Instance::new(fusion);
    inst.subalgebras = oracle
        .subgroups
        .iter()
        .map(|(name, s)| (name.clone(), s.members().to_vec()))
        .collect();
    Ok(inst)
}

pub fn build_dual_fusion(spec: &GroupSpec) -> Result<Instance> {
    dual_fusion(&spec.build()?)
}

fn round_checked(z: Complex64, what: &str) -> Result<(i64, f64)> {
    let r = z.re.round();
    let residue = (z - Complex64::new(r, 0.0)).norm();
    if residue >= RESIDUE_TOLERANCE {
        return Err(Error::Numeric(format!(
            "{what} {z} is not an integer (residue {residue:e})"
        )));
    }
    Ok((r as i64, residue))
}

/// Fusion data of the representation ring `C(kG)`: basis = irreducible
/// characters, `N_{χψ}^μ = ⟨χψ, μ⟩`, `χ* = conj χ`. Each named normal subgroup
/// `N` yields the subalgebra `G/N` of characters trivial on `N`. Returns the
/// largest rounding residue alongside.
pub fn rep_fusion(oracle: &Oracle) -> Result<(Instance, f64)> {
    let g = &oracle.group;
    let table = oracle.table()?;
    let r = table.num_irreducibles();
    let sizes: Vec<f64> = table.classes().iter().map(|c| c.len() as f64).collect();
    let mut max_residue: f64 = 0.0;
    let mut entries = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let s: Complex64 = (0..sizes.len())
                    .map(|k| table.values(a)[k] * table.values(b)[k] * table.values(c)[k].conj() * sizes[k])
                    .sum::<Complex64>()
                    / g.order() as f64;
                let (m, res) = round_checked(s, "fusion multiplicity")?;
                max_residue = max_residue.max(res);
                if m != 0 {
                    entries.push(FusionEntry {
                        left: a,
                        right: b,
                        result: c,
                        mult: m,
                    });
                }
            }
        }
    }
    let basis = (0..r)
        .map(|i| BasisElement {
            label: format!("chi{i}"),
            dim: table.degrees()[i] as i64,
        })
        .collect();
    let star = (0..r).map(|i| table.conjugate_of(i)).collect::<Result<Vec<_>>>()?;
    let fusion = FusionData::new(
        format!("{} (representation ring)", oracle.name),
        basis,
        0,
        star,
        entries,
    )?;
    let mut inst = Instance::new(fusion);
    for (name, s) in &oracle.subgroups {
        if !g.is_normal(s) {
            continue;
        }
        let members = (0..r)
            .filter(|&chi| {
                let deg = table.degrees()[chi] as f64;
                s.members()
                    .iter()
                    .all(|&x| (table.value(chi, x) - deg).norm() < ORTHOGONALITY_TOLERANCE)
            })
            .collect();
        inst.subalgebras.push((format!("G/{name}"), members));
    }
    Ok((inst, max_residue))
}

/// Branching data for a normal subgroup: `B[χ,α] = (1/|N|) Σ_{n∈N} χ(n) conj α(n)`,
/// rounded, with the largest rounding residue.
pub fn restrict_induce(
    g: &PermGroup,
    n: &Subgroup,
    n_name: &str,
    table_g: &CharacterTable,
    table_n: &CharacterTable,
) -> Result<(BranchingData, f64)> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal(n_name.to_string()));
    }
    let mut max_residue: f64 = 0.0;
    let mut mult = Vec::with_capacity(table_g.num_irreducibles());
    for chi in 0..table_g.num_irreducibles() {
        let mut row = Vec::with_capacity(table_n.num_irreducibles());
        for alpha in 0..table_n.num_irreducibles() {
            let s: Complex64 = n
                .members()
                .iter()
                .map(|&x| table_g.value(chi, x) * table_n.value(alpha, x).conj())
                .sum::<Complex64>()
                / n.order() as f64;
            let (m, res) = round_checked(s, "branching multiplicity")?;
            max_residue = max_residue.max(res);
            row.push(m);
        }
        mult.push(row);
    }
    let irr_h = table_g
        .degrees()
        .iter()
        .enumerate()
        .map(|(i, &d)| BasisElement {
            label: format!("chi{i}"),
            dim: d as i64,
        })
        .collect();
    let irr_k = table_n
        .degrees()
        .iter()
        .enumerate()
        .map(|(i, &d)| BasisElement {
            label: format!("alpha{i}"),
            dim: d as i64,
        })
        .collect();
    let star = (0..table_n.num_irreducibles())
        .map(|a| table_n.conjugate_of(a))
        .collect::<Result<Vec<_>>>()?;
    let bd = BranchingData::new(irr_h, irr_k, mult, g.order() as i64, n.order() as i64)?
        .with_star_k(star)?
        .with_dual_subalgebra(Some(n_name.to_string()));
    Ok((bd, max_residue))
}

/// `M_g[α][β] = 1` iff `β = α_g` with `α_g(x) = α(g⁻¹ x g)`, matched against
/// the rows of `table_n`.
pub fn build_conjugation(g: &PermGroup, n: &Subgroup, table_n: &CharacterTable) -> Result<ConjugationAction> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal("conjugation target".into()));
    }
    let k = table_n.num_irreducibles();
    let mut matrices = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let mut m = vec![vec![0i64; k]; k];
        for (alpha, row) in m.iter_mut().enumerate() {
            let values: Vec<Complex64> = table_n
                .classes()
                .iter()
                .map(|c| table_n.value(alpha, g.conjugate(c[0], x)))
                .collect();
            let beta = table_n.find_row(&values).ok_or_else(|| {
                Error::Numeric(format!(
                    "no unique match for the conjugate of row {alpha} by {}",
                    g.label(x)
                ))
            })?;
            row[beta] = 1;
        }
        matrices.push(m);
    }
    ConjugationAction::new(matrices, g.order(), k)
}

/// Dual fusion instance of the group, plus the clifford and conjugation blocks
/// for `normal` when given.
pub fn group_instance(spec: &GroupSpec, normal: Option<&str>) -> Result<Instance> {
    let oracle = spec.build()?;
    let mut inst = dual_fusion(&oracle)?;
    if let Some(name) = normal {
        let n = oracle.subgroup(name)?;
        if !oracle.group.is_normal(n) {
            return Err(Error::NotNormal(name.to_string()));
        }
        let table_g = oracle.table()?;
        let table_n = CharacterTable::compute(&oracle.group, n)?;
        let (bd, _) = restrict_induce(&oracle.group, n, name, &table_g, &table_n)?;
        inst.conjugation = Some(build_conjugation(&oracle.group, n, &table_n)?);
        inst.clifford = Some(bd);
    }
    Ok(inst)
}

/// A class function on the ambient group, zero off its domain.
type ClassFn = Vec<Complex64>;

fn character(table: &CharacterTable, ambient: usize, chi: usize) -> ClassFn {
    let mut f = vec![Complex64::new(0.0, 0.0); ambient];
    for class in table.classes() {
        for &x in class {
            f[x] = table.value(chi, x);
        }
    }
    f
}

/// `f↑(y) = (1/|A|) Σ_{x∈B} f°(x y x⁻¹)` for `y ∈ B`, with `f` supported on `A`.
fn induce_fn(g: &PermGroup, from: &Subgroup, to: &Subgroup, f: &ClassFn) -> ClassFn {
    let mut out = vec![Complex64::new(0.0, 0.0); g.order()];
    for &y in to.members() {
        let s: Complex64 = to
            .members()
            .iter()
            .map(|&x| {
                let z = g.conjugate(y, g.inv(x));
                if from.contains(z) {
                    f[z]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .sum();
        out[y] = s / from.order() as f64;
    }
    out
}

fn restrict_fn(to: &Subgroup, f: &ClassFn) -> ClassFn {
    f.iter()
        .enumerate()
        .map(|(x, &v)| if to.contains(x) { v } else { Complex64::new(0.0, 0.0) })
        .collect()
}

/// Multiplicities of the irreducibles of `table` (a table of `s`) in `f`.
fn decompose(s: &Subgroup, table: &CharacterTable, f: &ClassFn) -> Result<(Vec<i64>, f64)> {
    let mut worst: f64 = 0.0;
    let mut out = Vec::with_capacity(table.num_irreducibles());
    for lambda in 0..table.num_irreducibles() {
        let ip: Complex64 = s
            .members()
            .iter()
            .map(|&x| f[x] * table.value(lambda, x).conj())
            .sum::<Complex64>()
            / s.order() as f64;
        let (m, res) = round_checked(ip, "multiplicity")?;
        worst = worst.max(res);
        out.push(m);
    }
    Ok((out, worst))
}

#[derive(Clone, Debug)]
pub enum MackeyOutcome {
    /// `LK` is not a subgroup; nothing to check.
    Skipped(String),
    Checked {
        verdict: Verdict,
        max_residue: f64,
    },
}

impl MackeyOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, MackeyOutcome::Checked { verdict, .. } if verdict.is_pass())
    }
}

/// When `LK` is a subgroup, `α↑^{LK}↓_L = (α↓_{L∩K})↑^L` for every irreducible
/// `α` of `K`, compared as multiplicity vectors over `Irr(L)`.
pub fn check_mackey_unique_coset(g: &PermGroup, l: &Subgroup, k: &Subgroup) -> Result<MackeyOutcome> {
    let lk_elems = g.product_set(l, k);
    let lk = match g.subgroup_from_elements(lk_elems.iter().copied()) {
        Ok(s) => s,
        Err(_) => return Ok(MackeyOutcome::Skipped("LK is not a subgroup".into())),
    };
    let meet = l.intersect(k);
    let table_k = CharacterTable::compute(g, k)?;
    let table_l = CharacterTable::compute(g, l)?;
    let mut verdict = Verdict::pass();
    let mut worst: f64 = 0.0;
    for alpha in 0..table_k.num_irreducibles() {
        let a = character(&table_k, g.order(), alpha);
        let lhs = restrict_fn(l, &induce_fn(g, k, &lk, &a));
        let rhs = induce_fn(g, &meet, l, &restrict_fn(&meet, &a));
        let (ml, rl) = decompose(l, &table_l, &lhs)?;
        let (mr, rr) = decompose(l, &table_l, &rhs)?;
        worst = worst.max(rl).max(rr);
        if ml != mr {
            verdict.fail(format!("α{alpha}: {ml:?} vs {mr:?}"));
        }
    }
    Ok(MackeyOutcome::Checked {
        verdict,
        max_residue: worst,
    })
}
