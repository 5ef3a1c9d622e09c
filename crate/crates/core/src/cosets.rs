//! The double-coset relation on the dual basis.
//!
//! For subalgebras `K`, `L` the operator `T(x) = Λ_K · x · Λ_L` has matrix
//! entries `t_ij = m(d_j, Λ_K d_i Λ_L)`. Two basis elements are related when
//! the entry between them is positive. The matrix is symmetric and the relation
//! is transitive, so the classes are the connected components of the support
//! graph, which are also the indecomposable blocks of `T`. Each class sum
//! `a_i = Σ_{d∈C_i} ε(d) d` is an eigenvector of `T` for the eigenvalue `|K||L|`.

use crate::error::{Error, Result};
use crate::fusion::{CharVec, FusionData};
use crate::report::Verdict;
use crate::subalgebra::Subalgebra;

/// Dense square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&x| x >= 0)
    }
}

/// `Λ_K · x · Λ_L`.
pub fn apply_t(left: &Subalgebra<'_>, right: &Subalgebra<'_>, x: &CharVec) -> Result<CharVec> {
    left.same_parent(right)?;
    let f = left.parent();
    let lx = f.multiply(&left.integral(), x)?;
    f.multiply(&lx, &right.integral())
}

/// Matrix of `T` in the standard basis: row `i` holds `Λ_K d_i Λ_L`.
pub fn build_t(left: &Subalgebra<'_>, right: &Subalgebra<'_>) -> Result<IntMatrix> {
    left.same_parent(right)?;
    let f = left.parent();
    let rows = (0..f.rank())
        .map(|i| apply_t(left, right, &f.basis_vec(i)).map(CharVec::into_vec))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_rows(rows))
}

#[derive(Clone, Debug)]
pub struct CosetDecomposition<'a> {
    left: Subalgebra<'a>,
    right: Subalgebra<'a>,
    matrix: IntMatrix,
    classes: Vec<Vec<usize>>,
    class_sums: Vec<CharVec>,
    eigenvalue: i64,
}

impl<'a> CosetDecomposition<'a> {
    pub fn left(&self) -> &Subalgebra<'a> {
        &self.left
    }

    pub fn right(&self) -> &Subalgebra<'a> {
        &self.right
    }

    pub fn parent(&self) -> &'a FusionData {
        self.left.parent()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Classes as ascending index lists; the unit's class comes first and the
    /// rest are ordered by smallest member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_sums(&self) -> &[CharVec] {
        &self.class_sums
    }

    /// `ε(a_i) = Σ_{d∈C_i} ε(d)²`.
    pub fn class_eps(&self, i: usize) -> i64 {
        self.classes[i]
            .iter()
            .map(|&d| self.parent().dim(d) * self.parent().dim(d))
            .sum()
    }

    /// `|K|·|L|`.
    pub fn eigenvalue(&self) -> i64 {
        self.eigenvalue
    }

    pub fn class_of(&self, d: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(&d).is_ok())
    }

    pub fn class_labels(&self, i: usize) -> Vec<&'a str> {
        let f = self.parent();
        self.classes[i].iter().map(|&d| f.label(d)).collect()
    }
}

/// Connected components of an undirected graph on `0..n`, given as an
/// adjacency predicate. The component of `first` leads, the rest are ordered
/// by smallest member, and every component is sorted.
pub(crate) fn components(n: usize, first: usize, adjacent: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && adjacent(i, j) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    // groups are already ordered by smallest member; move `first`'s to the front
    if let Some(pos) = groups.iter().position(|g| g.contains(&first)) {
        let g = groups.remove(pos);
        groups.insert(0, g);
    }
    groups
}

/// Equivalence classes of `r_{K,L}`: `c ~ d` iff `m(c, Λ_K d Λ_L) > 0`.
pub fn classes<'a>(left: &Subalgebra<'a>, right: &Subalgebra<'a>) -> Result<CosetDecomposition<'a>> {
    let matrix = build_t(left, right)?;
    let f = left.parent();
    let classes = components(f.rank(), f.unit(), |i, j| matrix.get(i, j) > 0);
    let class_sums = classes.iter().map(|c| f.weighted_sum(c.iter().copied())).collect();
    let eigenvalue = left
        .order()?
        .checked_mul(right.order()?)
        .ok_or(Error::Overflow("eigenvalue"))?;
    Ok(CosetDecomposition {
        left: left.clone(),
        right: right.clone(),
        matrix,
        classes,
        class_sums,
        eigenvalue,
    })
}

/// Checks `Λ_K · a_i · Λ_L = |K||L| · a_i` exactly for every class.
pub fn verify_eigen(dec: &CosetDecomposition<'_>) -> Verdict {
    let mut verdict = Verdict::pass();
    for (i, a) in dec.class_sums.iter().enumerate() {
        let outcome = apply_t(&dec.left, &dec.right, a).and_then(|lhs| {
            let rhs = a.checked_scale(dec.eigenvalue)?;
            Ok(lhs == rhs)
        });
        match outcome {
            Ok(true) => {}
            Ok(false) => verdict.fail(format!(
                "class {i} {:?}: T(a_i) != {}·a_i",
                dec.class_labels(i),
                dec.eigenvalue
            )),
            Err(e) => verdict.fail(format!("class {i}: {e}")),
        }
    }
    verdict
}

/// Cleared-denominator form of `Λ_K/|K| · d · Λ_L/|L| = ε(d) a_i / ε(a_i)`:
/// `ε(a_i) · Λ_K d Λ_L = |K||L| ε(d) · a_i`.
pub fn coset_scalar_identity(dec: &CosetDecomposition<'_>, d: usize) -> Verdict {
    let f = dec.parent();
    let mut verdict = Verdict::pass();
    let Some(i) = dec.class_of(d) else {
        verdict.fail(format!("basis index {d} is not in any class"));
        return verdict;
    };
    let outcome = (|| -> Result<bool> {
        let lhs = apply_t(&dec.left, &dec.right, &f.basis_vec(d))?.checked_scale(dec.class_eps(i))?;
        let scale = dec
            .eigenvalue
            .checked_mul(f.dim(d))
            .ok_or(Error::Overflow("scalar identity"))?;
        let rhs = dec.class_sums[i].checked_scale(scale)?;
        Ok(lhs == rhs)
    })();
    match outcome {
        Ok(true) => {}
        Ok(false) => verdict.fail(format!(
            "d = `{}` in class {i}: ε(a_i)·Λ_K d Λ_L != |K||L|ε(d)·a_i",
            f.label(d)
        )),
        Err(e) => verdict.fail(format!("d = `{}`: {e}", f.label(d))),
    }
    verdict
}

#[derive(Clone, Debug)]
pub struct PowerIteration {
    pub value: f64,
    pub vector: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

pub const POWER_TOLERANCE: f64 = 1e-9;
pub const POWER_MAX_ITERATIONS: usize = 100_000;

/// Power iteration from the all-ones vector on a nonnegative matrix. Stops
/// when successive eigenvalue estimates differ by less than
/// [`POWER_TOLERANCE`]; `converged` is false if the iteration cap is hit.
pub fn principal_eigen_numeric(t: &IntMatrix) -> PowerIteration {
    let n = t.size();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut value = 0.0;
    for it in 1..=POWER_MAX_ITERATIONS {
        let mut w = vec![0.0; n];
        for (i, wi) in w.iter_mut().enumerate() {
            *wi = t.row(i).iter().zip(&v).map(|(&a, &x)| a as f64 * x).sum();
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return PowerIteration {
                value: 0.0,
                vector: v,
                iterations: it,
                converged: true,
            };
        }
        let next = norm;
        w.iter_mut().for_each(|x| *x /= norm);
        v = w;
        if (next - value).abs() < POWER_TOLERANCE {
            return PowerIteration {
                value: next,
                vector: v,
                iterations: it,
                converged: true,
            };
        }
        value = next;
    }
    PowerIteration {
        value,
        vector: v,
        iterations: POWER_MAX_ITERATIONS,
        converged: false,
    }
}
