//! Restriction to a normal Hopf subalgebra `K ⊆ H` at the level of characters.
//!
//! Input is a [`BranchingData`]: the irreducible characters of `H` and `K`
//! with their degrees and the multiplicity matrix `B[χ][α]` of `α` in `χ↓_K`.
//! By convention the trivial characters are listed first on both sides.
//!
//! Two characters of `H` are equivalent when their restrictions share a
//! constituent. For a normal `K` the classes `C_i` pair off with blocks
//! `A_i ⊆ Irr(K)`, restrictions inside a class are proportional, and both
//! restriction and induction are determined by the class sums
//! `a_i = Σ_{χ∈C_i} χ(1) χ`.

use std::fmt;

use num_rational::Ratio;

use crate::cosets::components;
use crate::error::{Error, Result};
use crate::fusion::BasisElement;
use crate::report::Verdict;

type Q = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingData {
    irr_h: Vec<BasisElement>,
    irr_k: Vec<BasisElement>,
    mult: Vec<Vec<i64>>,
    dim_h: i64,
    dim_k: i64,
    star_k: Option<Vec<usize>>,
    dual_subalgebra: Option<String>,
}

impl BranchingData {
    /// Structural construction: shapes, positive degrees, unique labels,
    /// nonnegative multiplicities. Character-theoretic consistency is left to
    /// [`validate_branching`].
    pub fn new(
        irr_h: Vec<BasisElement>,
        irr_k: Vec<BasisElement>,
        mult: Vec<Vec<i64>>,
        dim_h: i64,
        dim_k: i64,
    ) -> Result<Self> {
        for (side, list) in [("irr_H", &irr_h), ("irr_K", &irr_k)] {
            if list.is_empty() {
                return Err(Error::Malformed(format!("{side} is empty")));
            }
            let mut labels = std::collections::HashSet::new();
            for e in list {
                if e.label.is_empty() || !labels.insert(e.label.as_str()) {
                    return Err(Error::Malformed(format!(
                        "{side}: empty or duplicate label `{}`",
                        e.label
                    )));
                }
                if e.dim <= 0 {
                    return Err(Error::Malformed(format!(
                        "{side}: `{}` has nonpositive degree",
                        e.label
                    )));
                }
            }
        }
        if dim_h <= 0 || dim_k <= 0 {
            return Err(Error::Malformed("dimH and dimK must be positive".into()));
        }
        if mult.len() != irr_h.len() || mult.iter().any(|r| r.len() != irr_k.len()) {
            return Err(Error::Malformed(format!(
                "branching matrix must be {}x{}",
                irr_h.len(),
                irr_k.len()
            )));
        }
        if mult.iter().flatten().any(|&m| m < 0) {
            return Err(Error::Malformed("negative branching multiplicity".into()));
        }
        Ok(BranchingData {
            irr_h,
            irr_k,
            mult,
            dim_h,
            dim_k,
            star_k: None,
            dual_subalgebra: None,
        })
    }

    /// Duality on `Irr(K)` (complex conjugation for groups).
    pub fn with_star_k(mut self, star: Vec<usize>) -> Result<Self> {
        let n = self.irr_k.len();
        let mut seen = vec![false; n];
        if star.len() != n || star.iter().any(|&s| s >= n || std::mem::replace(&mut seen[s], true)) {
            return Err(Error::Malformed("star_K is not a permutation of irr_K".into()));
        }
        self.star_k = Some(star);
        Ok(self)
    }

    /// Name of the subalgebra of the fusion data whose cosets index the
    /// conjugation action (the dual-side image of `K`).
    pub fn with_dual_subalgebra(mut self, name: Option<String>) -> Self {
        self.dual_subalgebra = name;
        self
    }

    pub fn irr_h(&self) -> &[BasisElement] {
        &self.irr_h
    }

    pub fn irr_k(&self) -> &[BasisElement] {
        &self.irr_k
    }

    pub fn multiplicities(&self) -> &[Vec<i64>] {
        &self.mult
    }

    pub fn row(&self, chi: usize) -> &[i64] {
        &self.mult[chi]
    }

    pub fn dim_h(&self) -> i64 {
        self.dim_h
    }

    pub fn dim_k(&self) -> i64 {
        self.dim_k
    }

    pub fn star_k(&self) -> Option<&[usize]> {
        self.star_k.as_deref()
    }

    pub fn dual_subalgebra(&self) -> Option<&str> {
        self.dual_subalgebra.as_deref()
    }

    pub fn chi_dim(&self, chi: usize) -> i64 {
        self.irr_h[chi].dim
    }

    pub fn alpha_dim(&self, alpha: usize) -> i64 {
        self.irr_k[alpha].dim
    }

    pub fn chi_index(&self, label: &str) -> Result<usize> {
        self.irr_h
            .iter()
            .position(|e| e.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn alpha_index(&self, label: &str) -> Result<usize> {
        self.irr_k
            .iter()
            .position(|e| e.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// `|H| / |K|`; meaningful once [`validate_branching`] has passed.
    pub fn index(&self) -> i64 {
        self.dim_h / self.dim_k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchingAxiom {
    Divisibility,
    TrivialFirst,
    DimensionConsistency,
    RegularCharacter,
    StarDegrees,
}

impl fmt::Display for BranchingAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchingAxiom::Divisibility => "divisibility",
            BranchingAxiom::TrivialFirst => "trivial-first",
            BranchingAxiom::DimensionConsistency => "dimension-consistency",
            BranchingAxiom::RegularCharacter => "regular-character",
            BranchingAxiom::StarDegrees => "star-degrees",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingViolation {
    pub axiom: BranchingAxiom,
    pub detail: String,
}

impl fmt::Display for BranchingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.detail)
    }
}

pub fn validate_branching(bd: &BranchingData) -> Vec<BranchingViolation> {
    let mut out = Vec::new();
    let mut push = |axiom, detail: String| out.push(BranchingViolation { axiom, detail });

    if bd.dim_h % bd.dim_k != 0 {
        push(
            BranchingAxiom::Divisibility,
            format!("dimK = {} does not divide dimH = {}", bd.dim_k, bd.dim_h),
        );
    }
    let mut trivial_row = vec![0; bd.irr_k.len()];
    trivial_row[0] = 1;
    if bd.chi_dim(0) != 1 || bd.alpha_dim(0) != 1 || bd.mult[0] != trivial_row {
        push(
            BranchingAxiom::TrivialFirst,
            format!(
                "`{}` must be 1-dimensional and restrict to `{}`",
                bd.irr_h[0].label, bd.irr_k[0].label
            ),
        );
    }
    for (chi, row) in bd.mult.iter().enumerate() {
        let restricted: i128 = row
            .iter()
            .enumerate()
            .map(|(a, &m)| m as i128 * bd.alpha_dim(a) as i128)
            .sum();
        if restricted != bd.chi_dim(chi) as i128 {
            push(
                BranchingAxiom::DimensionConsistency,
                format!(
                    "`{}` has degree {} but its restriction has degree {restricted}",
                    bd.irr_h[chi].label,
                    bd.chi_dim(chi)
                ),
            );
        }
    }
    for alpha in 0..bd.irr_k.len() {
        let lhs: i128 = (0..bd.irr_h.len())
            .map(|chi| bd.chi_dim(chi) as i128 * bd.mult[chi][alpha] as i128)
            .sum();
        let rhs = bd.dim_h as i128 * bd.alpha_dim(alpha) as i128;
        // Σ χ(1) B[χ,α] = (dimH/dimK) α(1), cleared of the denominator
        if lhs * bd.dim_k as i128 != rhs {
            push(
                BranchingAxiom::RegularCharacter,
                format!(
                    "Σ χ(1)·B[χ,`{}`] = {lhs}, expected {}·{}",
                    bd.irr_k[alpha].label,
                    Q::new(bd.dim_h as i128, bd.dim_k as i128),
                    bd.alpha_dim(alpha)
                ),
            );
        }
    }
    if let Some(star) = &bd.star_k {
        for (a, &s) in star.iter().enumerate() {
            if bd.alpha_dim(a) != bd.alpha_dim(s) || star[s] != a {
                push(
                    BranchingAxiom::StarDegrees,
                    format!(
                        "star_K is not a degree-preserving involution at `{}`",
                        bd.irr_k[a].label
                    ),
                );
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionPartition {
    /// Classes `C_i ⊆ Irr(H)`, trivial character's class first.
    pub classes: Vec<Vec<usize>>,
    /// Blocks `A_i ⊆ Irr(K)` aligned with `classes`.
    pub blocks: Vec<Vec<usize>>,
    /// `a_i = Σ_{χ∈C_i} χ(1) χ` as coefficient vectors over `Irr(H)`.
    pub class_sums: Vec<Vec<i64>>,
    /// `a_i(1) = Σ_{χ∈C_i} χ(1)²`.
    pub class_dims: Vec<i64>,
    /// `|A_i| = Σ_{α∈A_i} α(1)²`.
    pub block_weights: Vec<i64>,
}

impl RestrictionPartition {
    pub fn class_of(&self, chi: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&chi))
    }

    pub fn block_of(&self, alpha: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&alpha))
    }
}

/// Classes of the common-constituent relation on `Irr(H)`.
pub fn equiv_classes(bd: &BranchingData) -> RestrictionPartition {
    let n = bd.irr_h.len();
    let shares = |a: usize, b: usize| bd.mult[a].iter().zip(&bd.mult[b]).any(|(&x, &y)| x > 0 && y > 0);
    let classes = components(n, 0, shares);
    let blocks: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            (0..bd.irr_k.len())
                .filter(|&a| c.iter().any(|&chi| bd.mult[chi][a] > 0))
                .collect()
        })
        .collect();
    let class_sums = classes
        .iter()
        .map(|c| {
            let mut v = vec![0; n];
            for &chi in c {
                v[chi] = bd.chi_dim(chi);
            }
            v
        })
        .collect();
    let class_dims = classes
        .iter()
        .map(|c| c.iter().map(|&chi| bd.chi_dim(chi) * bd.chi_dim(chi)).sum())
        .collect();
    let block_weights = blocks
        .iter()
        .map(|b| b.iter().map(|&a| bd.alpha_dim(a) * bd.alpha_dim(a)).sum())
        .collect();
    RestrictionPartition {
        classes,
        blocks,
        class_sums,
        class_dims,
        block_weights,
    }
}

/// Equivalent characters have proportional restrictions, inequivalent ones do
/// not: `μ(1) B[χ,·] = χ(1) B[μ,·]` iff `χ ~ μ`.
pub fn check_proportionality(bd: &BranchingData, part: &RestrictionPartition) -> Verdict {
    let mut verdict = Verdict::pass();
    let n = bd.irr_h.len();
    for chi in 0..n {
        for mu in chi + 1..n {
            let proportional = bd.mult[chi]
                .iter()
                .zip(&bd.mult[mu])
                .all(|(&x, &y)| bd.chi_dim(mu) as i128 * x as i128 == bd.chi_dim(chi) as i128 * y as i128);
            let same = part.class_of(chi) == part.class_of(mu);
            if proportional != same {
                verdict.fail(format!(
                    "`{}` and `{}`: {} but restrictions are {}proportional",
                    bd.irr_h[chi].label,
                    bd.irr_h[mu].label,
                    if same { "equivalent" } else { "inequivalent" },
                    if proportional { "" } else { "not " }
                ));
            }
        }
    }
    verdict
}

/// `a_i(1) = (|H|/|K|)·|A_i|` for every class, plus the partition sanity
/// conditions: classes and blocks partition both sides and `Σ a_i` is the
/// regular character of `H`.
pub fn check_block_weights(bd: &BranchingData, part: &RestrictionPartition) -> Verdict {
    let mut verdict = Verdict::pass();
    for (i, (&a1, &w)) in part.class_dims.iter().zip(&part.block_weights).enumerate() {
        if a1 as i128 * bd.dim_k as i128 != bd.dim_h as i128 * w as i128 {
            verdict.fail(format!(
                "class {i}: a_i(1) = {a1}, |A_i| = {w}, |H|/|K| = {}",
                bd.index()
            ));
        }
    }
    let mut seen_k = vec![0; bd.irr_k.len()];
    for b in &part.blocks {
        for &a in b {
            seen_k[a] += 1;
        }
    }
    if let Some(a) = seen_k.iter().position(|&c| c != 1) {
        verdict.fail(format!("`{}` lies in {} blocks", bd.irr_k[a].label, seen_k[a]));
    }
    let mut total = vec![0i64; bd.irr_h.len()];
    for s in &part.class_sums {
        for (t, &x) in total.iter_mut().zip(s) {
            *t += x;
        }
    }
    let regular: Vec<i64> = bd.irr_h.iter().map(|e| e.dim).collect();
    if total != regular {
        verdict.fail("class sums do not add up to the regular character");
    }
    verdict
}

/// Restriction of an arbitrary combination of `H`-characters.
pub fn restrict(bd: &BranchingData, v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; bd.irr_k.len()];
    for (chi, &c) in v.iter().enumerate() {
        for (o, &m) in out.iter_mut().zip(&bd.mult[chi]) {
            *o += c * m;
        }
    }
    out
}

/// Induction by Frobenius reciprocity: `α↑ = Σ_χ B[χ,α] χ`.
pub fn induce(bd: &BranchingData, alpha: usize) -> Vec<i64> {
    bd.mult.iter().map(|row| row[alpha]).collect()
}

/// Induction of an arbitrary combination of `K`-characters.
pub fn induce_vec(bd: &BranchingData, v: &[i64]) -> Vec<i64> {
    bd.mult
        .iter()
        .map(|row| row.iter().zip(v).map(|(&m, &c)| m * c).sum())
        .collect()
}

/// `χ↓_K = (χ(1)/a_i(1)) (|H|/|K|) Σ_{α∈A_i} α(1) α`, checked exactly against
/// row `B[χ,·]`, which is returned on success.
pub fn restrict_formula(bd: &BranchingData, part: &RestrictionPartition, chi: usize) -> Result<Vec<i64>> {
    let i = part
        .class_of(chi)
        .ok_or_else(|| Error::UnknownLabel(format!("character index {chi}")))?;
    let factor =
        Q::new(bd.chi_dim(chi) as i128, part.class_dims[i] as i128) * Q::new(bd.dim_h as i128, bd.dim_k as i128);
    for alpha in 0..bd.irr_k.len() {
        let rhs = if part.blocks[i].contains(&alpha) {
            factor * Q::from_integer(bd.alpha_dim(alpha) as i128)
        } else {
            Q::from_integer(0)
        };
        let lhs = Q::from_integer(bd.mult[chi][alpha] as i128);
        if lhs != rhs {
            return Err(Error::TheoremViolation(format!(
                "restriction of `{}` has `{}` with multiplicity {lhs}, formula gives {rhs}",
                bd.irr_h[chi].label, bd.irr_k[alpha].label
            )));
        }
    }
    Ok(bd.mult[chi].clone())
}

/// `α↑ = (α(1)/a_i(1)) (|H|/|K|) a_i`, compared exactly with [`induce`].
pub fn check_induction_formula(bd: &BranchingData, part: &RestrictionPartition, alpha: usize) -> Result<()> {
    let i = part
        .block_of(alpha)
        .ok_or_else(|| Error::TheoremViolation(format!("`{}` is in no block", bd.irr_k[alpha].label)))?;
    let factor =
        Q::new(bd.alpha_dim(alpha) as i128, part.class_dims[i] as i128) * Q::new(bd.dim_h as i128, bd.dim_k as i128);
    let induced = induce(bd, alpha);
    for (chi, &m) in induced.iter().enumerate() {
        let rhs = factor * Q::from_integer(part.class_sums[i][chi] as i128);
        if Q::from_integer(m as i128) != rhs {
            return Err(Error::TheoremViolation(format!(
                "induction of `{}` has `{}` with multiplicity {m}, formula gives {rhs}",
                bd.irr_k[alpha].label, bd.irr_h[chi].label
            )));
        }
    }
    Ok(())
}

/// `ε_K↑ = t_L` (the characters restricting trivially, weighted by degree)
/// and `t_L↓ = (|H|/|K|) ε_K`.
pub fn check_trivial_induction(bd: &BranchingData) -> Verdict {
    let mut verdict = Verdict::pass();
    let up = induce(bd, 0);
    let t_l: Vec<i64> = (0..bd.irr_h.len())
        .map(|chi| {
            let row = &bd.mult[chi];
            let trivial = row[0] == bd.chi_dim(chi) && row[1..].iter().all(|&m| m == 0);
            if trivial {
                bd.chi_dim(chi)
            } else {
                0
            }
        })
        .collect();
    if up != t_l {
        verdict.fail(format!("ε_K↑ = {up:?} but the trivially restricting sum is {t_l:?}"));
    }
    let down = restrict(bd, &t_l);
    let mut expected = vec![0; bd.irr_k.len()];
    expected[0] = bd.index();
    if bd.dim_h % bd.dim_k != 0 || down != expected {
        verdict.fail(format!("t_L↓ = {down:?}, expected {expected:?}"));
    }
    verdict
}

/// Runs every check above and collects one named verdict per check.
pub fn run_suite(bd: &BranchingData) -> Vec<(&'static str, Verdict)> {
    let mut out = Vec::new();
    let violations = validate_branching(bd);
    let mut v = Verdict::pass();
    for viol in &violations {
        v.fail(viol.to_string());
    }
    let valid = v.is_pass();
    out.push(("validate_branching", v));
    if !valid {
        return out;
    }
    let part = equiv_classes(bd);
    out.push(("check_proportionality", check_proportionality(bd, &part)));
    out.push(("block_weights", check_block_weights(bd, &part)));
    let mut rf = Verdict::pass();
    for chi in 0..bd.irr_h.len() {
        if let Err(e) = restrict_formula(bd, &part, chi) {
            rf.fail(e.to_string());
        }
    }
    out.push(("restrict_formula", rf));
    let mut inf = Verdict::pass();
    for alpha in 0..bd.irr_k.len() {
        if let Err(e) = check_induction_formula(bd, &part, alpha) {
            inf.fail(e.to_string());
        }
    }
    out.push(("check_induction_formula", inf));
    out.push(("check_trivial_induction", check_trivial_induction(bd)));
    out
}
