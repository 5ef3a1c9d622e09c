//! Conjugate characters `α_d` of a normal Hopf subalgebra `K`, one linear
//! operator `c_d` on the character ring of `K` per dual basis element `d`.
//!
//! Matrices use rows: `M_d[α][β]` is the multiplicity of `β` in `α_d`. With
//! this convention `^d(^{d'}α) = (M_{d'} M_d)[α, ·]`. Fusion data alone do not
//! determine the action, so it is supplied (or built by the group oracle) and
//! then checked.

use crate::clifford::{self, BranchingData};
use crate::cosets::CosetDecomposition;
use crate::error::{Error, Result};
use crate::fusion::FusionData;
use crate::report::Verdict;

pub type Matrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationAction {
    matrices: Vec<Matrix>,
}

impl ConjugationAction {
    /// One square nonnegative matrix of size `|Irr(K)|` per dual basis element.
    pub fn new(matrices: Vec<Matrix>, dual_rank: usize, k_rank: usize) -> Result<Self> {
        if matrices.len() != dual_rank {
            return Err(Error::Malformed(format!(
                "conjugation action has {} matrices for a dual basis of {dual_rank}",
                matrices.len()
            )));
        }
        for m in &matrices {
            if m.len() != k_rank || m.iter().any(|r| r.len() != k_rank) {
                return Err(Error::Malformed(format!("action matrices must be {k_rank}x{k_rank}")));
            }
            if m.iter().flatten().any(|&x| x < 0) {
                return Err(Error::Malformed("negative entry in an action matrix".into()));
            }
        }
        Ok(ConjugationAction { matrices })
    }

    pub fn matrix(&self, d: usize) -> &Matrix {
        &self.matrices[d]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn dual_rank(&self) -> usize {
        self.matrices.len()
    }

    pub fn k_rank(&self) -> usize {
        self.matrices.first().map_or(0, Vec::len)
    }
}

/// `α_d` as a coefficient vector over `Irr(K)`.
pub fn conjugate(act: &ConjugationAction, d: usize, alpha: usize) -> Result<Vec<i64>> {
    if d >= act.dual_rank() {
        return Err(Error::UnknownLabel(format!("dual index {d}")));
    }
    if alpha >= act.k_rank() {
        return Err(Error::UnknownLabel(format!("character index {alpha}")));
    }
    Ok(act.matrices[d][alpha].clone())
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// `c_unit` is the identity and `α_d(1) = ε(d) α(1)` for every `(d, α)`.
pub fn check_structure(act: &ConjugationAction, fusion: &FusionData, bd: &BranchingData) -> Verdict {
    let mut verdict = Verdict::pass();
    let n = act.k_rank();
    if act.dual_rank() != fusion.rank() || n != bd.irr_k().len() {
        verdict.fail("action does not match the fusion basis and Irr(K)");
        return verdict;
    }
    let unit = act.matrix(fusion.unit());
    for (a, row) in unit.iter().enumerate() {
        for (b, &x) in row.iter().enumerate() {
            if x != i64::from(a == b) {
                verdict.fail(format!("c_unit is not the identity at ({a}, {b})"));
            }
        }
    }
    for d in 0..fusion.rank() {
        for (a, row) in act.matrix(d).iter().enumerate() {
            let lhs: i64 = row.iter().enumerate().map(|(b, &m)| m * bd.alpha_dim(b)).sum();
            let rhs = fusion.dim(d) * bd.alpha_dim(a);
            if lhs != rhs {
                verdict.fail(format!(
                    "dimension of `{}` conjugated by `{}` is {lhs}, expected {rhs}",
                    bd.irr_k()[a].label,
                    fusion.label(d)
                ));
            }
        }
    }
    verdict
}

/// `Σ_k N_{dd'}^k M_k = M_{d'} M_d`, i.e. `^{dd'}α = ^d(^{d'}α)`.
pub fn check_composition(act: &ConjugationAction, fusion: &FusionData) -> Verdict {
    let mut verdict = Verdict::pass();
    let n = act.k_rank();
    for d in 0..fusion.rank() {
        for dp in 0..fusion.rank() {
            let mut lhs = vec![vec![0i64; n]; n];
            for &(k, mult) in fusion.basis_product(d, dp) {
                for (lr, mr) in lhs.iter_mut().zip(act.matrix(k)) {
                    for (l, &m) in lr.iter_mut().zip(mr) {
                        *l += mult * m;
                    }
                }
            }
            let rhs = mat_mul(act.matrix(dp), act.matrix(d));
            if lhs != rhs {
                let a = (0..n).find(|&a| lhs[a] != rhs[a]).unwrap_or(0);
                verdict.fail(format!(
                    "(d, d', α) = (`{}`, `{}`, {a})",
                    fusion.label(d),
                    fusion.label(dp)
                ));
            }
        }
    }
    verdict
}

/// `^d(α*) = (^dα)*`: every `M_d` commutes with the duality on `Irr(K)`.
pub fn check_star(act: &ConjugationAction, star_k: &[usize]) -> Verdict {
    let mut verdict = Verdict::pass();
    for (d, m) in act.matrices().iter().enumerate() {
        for a in 0..m.len() {
            for b in 0..m.len() {
                if m[star_k[a]][star_k[b]] != m[a][b] {
                    verdict.fail(format!("dual index {d} at ({a}, {b})"));
                }
            }
        }
    }
    verdict
}

/// `α_d / ε(d) = α_{d'} / ε(d')` whenever `d`, `d'` share a class of `dec`.
pub fn check_coset_invariance(act: &ConjugationAction, dec: &CosetDecomposition<'_>) -> Verdict {
    let f = dec.parent();
    let mut verdict = Verdict::pass();
    for class in dec.classes() {
        let first = class[0];
        for &d in &class[1..] {
            let (m0, m1) = (act.matrix(first), act.matrix(d));
            let equal = m0
                .iter()
                .zip(m1)
                .all(|(r0, r1)| r0.iter().zip(r1).all(|(&x, &y)| f.dim(d) * x == f.dim(first) * y));
            if !equal {
                verdict.fail(format!("`{}` and `{}`", f.label(first), f.label(d)));
            }
        }
    }
    verdict
}

/// `α_d↑ = ε(d) α↑` for all `d`, `α`.
pub fn check_induced_equality(act: &ConjugationAction, fusion: &FusionData, bd: &BranchingData) -> Verdict {
    let mut verdict = Verdict::pass();
    for d in 0..act.dual_rank() {
        for alpha in 0..act.k_rank() {
            let lhs = clifford::induce_vec(bd, &act.matrix(d)[alpha]);
            let rhs: Vec<i64> = clifford::induce(bd, alpha)
                .into_iter()
                .map(|x| x * fusion.dim(d))
                .collect();
            if lhs != rhs {
                verdict.fail(format!("(`{}`, `{}`)", fusion.label(d), bd.irr_k()[alpha].label));
            }
        }
    }
    verdict
}

/// `α↑↓` and `⊕_d α_d` have the same irreducible constituents.
pub fn check_constituents(act: &ConjugationAction, bd: &BranchingData) -> Verdict {
    let mut verdict = Verdict::pass();
    for alpha in 0..act.k_rank() {
        let round_trip = clifford::restrict(bd, &clifford::induce(bd, alpha));
        let lhs: Vec<bool> = round_trip.iter().map(|&x| x > 0).collect();
        let mut rhs = vec![false; act.k_rank()];
        for m in act.matrices() {
            for (r, &x) in rhs.iter_mut().zip(&m[alpha]) {
                *r |= x > 0;
            }
        }
        if lhs != rhs {
            verdict.fail(format!("`{}`", bd.irr_k()[alpha].label));
        }
    }
    verdict
}

/// Restrictions of `H`-characters are fixed up to `ε(d)`: conjugating `χ↓`
/// by `d` gives `ε(d) χ↓`.
pub fn check_restriction_invariance(act: &ConjugationAction, fusion: &FusionData, bd: &BranchingData) -> Verdict {
    let mut verdict = Verdict::pass();
    for chi in 0..bd.irr_h().len() {
        let row = bd.row(chi);
        for d in 0..act.dual_rank() {
            let m = act.matrix(d);
            let conj: Vec<i64> = (0..act.k_rank())
                .map(|b| row.iter().enumerate().map(|(a, &c)| c * m[a][b]).sum())
                .collect();
            let scaled: Vec<i64> = row.iter().map(|&c| c * fusion.dim(d)).collect();
            if conj != scaled {
                verdict.fail(format!("(`{}`, `{}`)", bd.irr_h()[chi].label, fusion.label(d)));
            }
        }
    }
    verdict
}
