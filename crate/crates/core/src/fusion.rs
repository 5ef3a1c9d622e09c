//! Based rings with nonnegative integer structure constants.
//!
//! A [`FusionData`] holds the character ring of a dual Hopf algebra: one basis
//! element per irreducible character `d` with its dimension `ε(d)`, the unit
//! (trivial character), the duality involution `*`, and the fusion
//! coefficients `N_{ij}^k`. Everything else in the crate is built on top of the
//! products and the bilinear form defined here.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Integer coefficient vector over a fixed basis. Negative entries are allowed
/// so that identities can be checked as "difference is zero".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharVec(Vec<i64>);

impl CharVec {
    pub fn zero(len: usize) -> Self {
        CharVec(vec![0; len])
    }

    pub fn basis(len: usize, index: usize) -> Self {
        let mut v = vec![0; len];
        v[index] = 1;
        CharVec(v)
    }

    pub fn from_vec(coeffs: Vec<i64>) -> Self {
        CharVec(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> i64 {
        self.0[index]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// True when every coefficient is nonnegative, i.e. the vector is the
    /// character of an honest module.
    pub fn is_character(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Indices with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn checked_add(&self, other: &CharVec) -> Result<CharVec> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn checked_sub(&self, other: &CharVec) -> Result<CharVec> {
        self.zip_with(other, i64::checked_sub)
    }

    pub fn checked_scale(&self, factor: i64) -> Result<CharVec> {
        self.0
            .iter()
            .map(|&c| c.checked_mul(factor).ok_or(Error::Overflow("scale")))
            .collect::<Result<Vec<_>>>()
            .map(CharVec)
    }

    fn zip_with(&self, other: &CharVec, op: fn(i64, i64) -> Option<i64>) -> Result<CharVec> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "vectors of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| op(a, b).ok_or(Error::Overflow("vector arithmetic")))
            .collect::<Result<Vec<_>>>()
            .map(CharVec)
    }
}

impl From<Vec<i64>> for CharVec {
    fn from(v: Vec<i64>) -> Self {
        CharVec(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub dim: i64,
}

/// One nonzero structure constant `N_{left,right}^{result} = mult`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FusionEntry {
    pub left: usize,
    pub right: usize,
    pub result: usize,
    pub mult: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Unit,
    StarInvolution,
    StarUnit,
    Dimension,
    Duality,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Unit => "unit",
            Axiom::StarInvolution => "star-involution",
            Axiom::StarUnit => "star-fixes-unit",
            Axiom::Dimension => "dimension-homomorphism",
            Axiom::Duality => "duality",
            Axiom::Associativity => "associativity",
        };
        f.write_str(name)
    }
}

/// A failed axiom together with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: {}", self.axiom, self.witness, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct FusionData {
    name: String,
    basis: Vec<BasisElement>,
    unit: usize,
    star: Vec<usize>,
    // products[i * n + j] = sorted (k, N_{ij}^k) with N > 0
    products: Vec<Vec<(usize, i64)>>,
    index: HashMap<String, usize>,
    comment: Option<String>,
}

impl FusionData {
    /// Builds fusion data after structural checks (indices in range, unique
    /// nonempty labels, positive dimensions, `star` a permutation, nonnegative
    /// coefficients). The ring axioms are not enforced here; see
    /// [`FusionData::validate`].
    pub fn new(
        name: impl Into<String>,
        basis: Vec<BasisElement>,
        unit: usize,
        star: Vec<usize>,
        entries: impl IntoIterator<Item = FusionEntry>,
    ) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::Malformed("empty basis".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, b) in basis.iter().enumerate() {
            if b.label.is_empty() {
                return Err(Error::Malformed(format!("basis element {i} has an empty label")));
            }
            if b.dim <= 0 {
                return Err(Error::Malformed(format!(
                    "basis element `{}` has nonpositive dimension {}",
                    b.label, b.dim
                )));
            }
            if index.insert(b.label.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate label `{}`", b.label)));
            }
        }
        if unit >= n {
            return Err(Error::Malformed(format!("unit index {unit} out of range")));
        }
        if star.len() != n {
            return Err(Error::Malformed(format!(
                "star has {} entries for a basis of {n}",
                star.len()
            )));
        }
        let mut seen = vec![false; n];
        for &s in &star {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::Malformed("star is not a permutation of the basis".into()));
            }
        }

        let mut products: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n * n];
        for e in entries {
            if e.left >= n || e.right >= n || e.result >= n {
                return Err(Error::Malformed(format!(
                    "fusion entry ({}, {}, {}) out of range",
                    e.left, e.right, e.result
                )));
            }
            if e.mult < 0 {
                return Err(Error::Malformed(format!(
                    "negative fusion coefficient at ({}, {}, {})",
                    e.left, e.right, e.result
                )));
            }
            if e.mult == 0 {
                continue;
            }
            let slot = &mut products[e.left * n + e.right];
            if slot.iter().any(|&(k, _)| k == e.result) {
                return Err(Error::Malformed(format!(
                    "fusion entry ({}, {}, {}) listed twice",
                    basis[e.left].label, basis[e.right].label, basis[e.result].label
                )));
            }
            slot.push((e.result, e.mult));
        }
        for slot in &mut products {
            slot.sort_unstable();
        }

        Ok(FusionData {
            name: name.into(),
            basis,
            unit,
            star,
            products,
            index,
            comment: None,
        })
    }

    pub fn with_comment(mut self, comment: Option<String>) -> Self {
        self.comment = comment;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn comment(&self) -> Option<&str> {
        self.comment.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn dim(&self, i: usize) -> i64 {
        self.basis[i].dim
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn star_index(&self, i: usize) -> usize {
        self.star[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Nonzero constituents of `d_i · d_j` as `(k, N_{ij}^k)`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.products[i * self.rank() + j]
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> i64 {
        self.basis_product(i, j)
            .iter()
            .find(|&&(r, _)| r == k)
            .map_or(0, |&(_, m)| m)
    }

    /// All nonzero structure constants in `(left, right, result)` order.
    pub fn entries(&self) -> impl Iterator<Item = FusionEntry> + '_ {
        let n = self.rank();
        self.products.iter().enumerate().flat_map(move |(ij, slot)| {
            slot.iter().map(move |&(k, mult)| FusionEntry {
                left: ij / n,
                right: ij % n,
                result: k,
                mult,
            })
        })
    }

    pub fn zero(&self) -> CharVec {
        CharVec::zero(self.rank())
    }

    pub fn basis_vec(&self, i: usize) -> CharVec {
        CharVec::basis(self.rank(), i)
    }

    /// Sum of `ε(d)·d` over the given basis indices.
    pub fn weighted_sum(&self, members: impl IntoIterator<Item = usize>) -> CharVec {
        let mut v = vec![0; self.rank()];
        for i in members {
            v[i] += self.dim(i);
        }
        CharVec(v)
    }

    /// The integral `Λ = Σ ε(d) d` over the whole basis.
    pub fn regular(&self) -> CharVec {
        self.weighted_sum(0..self.rank())
    }

    fn check_len(&self, x: &CharVec) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "vector of length {} over a basis of {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &CharVec, y: &CharVec) -> Result<CharVec> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut acc = vec![0i64; self.rank()];
        for (i, &xi) in x.coeffs().iter().enumerate().filter(|(_, &c)| c != 0) {
            for (j, &yj) in y.coeffs().iter().enumerate().filter(|(_, &c)| c != 0) {
                let coeff = xi.checked_mul(yj).ok_or(Error::Overflow("multiply"))?;
                for &(k, mult) in self.basis_product(i, j) {
                    let term = coeff.checked_mul(mult).ok_or(Error::Overflow("multiply"))?;
                    acc[k] = acc[k].checked_add(term).ok_or(Error::Overflow("multiply"))?;
                }
            }
        }
        Ok(CharVec(acc))
    }

    /// `m(x, y) = Σ x_i y_i`; the irreducible characters are orthonormal.
    pub fn m_form(&self, x: &CharVec, y: &CharVec) -> Result<i64> {
        self.check_len(x)?;
        self.check_len(y)?;
        x.coeffs().iter().zip(y.coeffs()).try_fold(0i64, |acc, (&a, &b)| {
            a.checked_mul(b)
                .and_then(|p| acc.checked_add(p))
                .ok_or(Error::Overflow("m_form"))
        })
    }

    pub fn star(&self, x: &CharVec) -> Result<CharVec> {
        self.check_len(x)?;
        let mut v = vec![0; self.rank()];
        for (i, &c) in x.coeffs().iter().enumerate() {
            v[self.star[i]] = c;
        }
        Ok(CharVec(v))
    }

    /// `ε(x) = Σ x_i ε(d_i)`.
    pub fn eps(&self, x: &CharVec) -> Result<i64> {
        self.check_len(x)?;
        x.coeffs().iter().enumerate().try_fold(0i64, |acc, (i, &c)| {
            c.checked_mul(self.dim(i))
                .and_then(|p| acc.checked_add(p))
                .ok_or(Error::Overflow("eps"))
        })
    }

    /// Checks every ring axiom and reports each failure with its witness
    /// indices. Never aborts.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.rank();
        let mut out = Vec::new();
        let u = self.unit;

        for j in 0..n {
            for (side, slot) in [("left", self.basis_product(u, j)), ("right", self.basis_product(j, u))] {
                if slot != [(j, 1)] {
                    out.push(Violation {
                        axiom: Axiom::Unit,
                        witness: vec![j],
                        detail: format!(
                            "{side} product of unit with `{}` is not `{}`",
                            self.label(j),
                            self.label(j)
                        ),
                    });
                }
            }
        }

        if self.star[u] != u {
            out.push(Violation {
                axiom: Axiom::StarUnit,
                witness: vec![u],
                detail: format!("star(unit) = `{}`", self.label(self.star[u])),
            });
        }
        for i in 0..n {
            if self.star[self.star[i]] != i {
                out.push(Violation {
                    axiom: Axiom::StarInvolution,
                    witness: vec![i],
                    detail: format!("star(star(`{}`)) != `{}`", self.label(i), self.label(i)),
                });
            }
        }

        for i in 0..n {
            for j in 0..n {
                let lhs = self.dim(i) as i128 * self.dim(j) as i128;
                let rhs: i128 = self
                    .basis_product(i, j)
                    .iter()
                    .map(|&(k, m)| m as i128 * self.dim(k) as i128)
                    .sum();
                if lhs != rhs {
                    out.push(Violation {
                        axiom: Axiom::Dimension,
                        witness: vec![i, j],
                        detail: format!(
                            "ε({})ε({}) = {lhs} but ε of the product is {rhs}",
                            self.label(i),
                            self.label(j)
                        ),
                    });
                }
                let expected = i64::from(j == self.star[i]);
                let got = self.coefficient(i, j, u);
                if got != expected {
                    out.push(Violation {
                        axiom: Axiom::Duality,
                        witness: vec![i, j],
                        detail: format!(
                            "N_({},{})^unit = {got}, expected {expected}",
                            self.label(i),
                            self.label(j)
                        ),
                    });
                }
            }
        }

        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let jk = self.basis_product(j, k);
                    let mut lhs = vec![0i128; n];
                    for &(p, a) in ij {
                        for &(q, b) in self.basis_product(p, k) {
                            lhs[q] += a as i128 * b as i128;
                        }
                    }
                    let mut rhs = vec![0i128; n];
                    for &(p, a) in jk {
                        for &(q, b) in self.basis_product(i, p) {
                            rhs[q] += a as i128 * b as i128;
                        }
                    }
                    if lhs != rhs {
                        let q = (0..n).find(|&q| lhs[q] != rhs[q]).unwrap_or(0);
                        out.push(Violation {
                            axiom: Axiom::Associativity,
                            witness: vec![i, j, k, q],
                            detail: format!(
                                "coefficient of `{}` in ({}{}){} is {} but in {}({}{}) is {}",
                                self.label(q),
                                self.label(i),
                                self.label(j),
                                self.label(k),
                                lhs[q],
                                self.label(i),
                                self.label(j),
                                self.label(k),
                                rhs[q]
                            ),
                        });
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    fn kashina() -> FusionData {
        bundled::kashina().fusion
    }

    fn v(f: &FusionData, terms: &[(&str, i64)]) -> CharVec {
        let mut x = f.zero().into_vec();
        for &(l, c) in terms {
            x[f.index_of(l).unwrap()] += c;
        }
        CharVec::from_vec(x)
    }

    #[test]
    fn kashina_products_match_table() {
        let f = kashina();
        let d1 = v(&f, &[("d1", 1)]);
        let d2 = v(&f, &[("d2", 1)]);
        assert_eq!(f.multiply(&d1, &d2).unwrap(), v(&f, &[("d1", 1), ("d3", 1)]));
        assert_eq!(
            f.multiply(&d2, &d2).unwrap(),
            v(&f, &[("1", 1), ("x", 1), ("y", 1), ("xy", 1)])
        );
        let unit = f.basis_vec(f.unit());
        assert_eq!(f.multiply(&unit, &d1).unwrap(), d1);
    }

    #[test]
    fn kashina_m_form_and_star() {
        let f = kashina();
        let y = v(&f, &[("y", 1)]);
        let x = v(&f, &[("x", 1)]);
        let d1 = v(&f, &[("d1", 1)]);
        let d2 = v(&f, &[("d2", 1)]);
        assert_eq!(f.m_form(&y, &f.multiply(&d2, &d2).unwrap()).unwrap(), 1);
        assert_eq!(f.m_form(&x, &y).unwrap(), 0);
        assert_eq!(f.m_form(&d1, &f.multiply(&d1, &d2).unwrap()).unwrap(), 1);
        assert_eq!(f.star(&d1).unwrap(), v(&f, &[("d3", 1)]));
        let unit = f.basis_vec(f.unit());
        assert_eq!(f.star(&unit).unwrap(), unit);
        assert_eq!(f.eps(&f.regular()).unwrap(), 16);
    }

    #[test]
    fn kashina_is_valid() {
        assert_eq!(kashina().validate(), Vec::new());
    }

    #[test]
    fn broken_duality_is_reported() {
        // C2 = {1, g} with g* = g, but the table claims g·g = g instead of 1.
        let basis = vec![
            BasisElement {
                label: "1".into(),
                dim: 1,
            },
            BasisElement {
                label: "g".into(),
                dim: 1,
            },
            BasisElement {
                label: "h".into(),
                dim: 1,
            },
        ];
        let mut entries = Vec::new();
        for j in 0..3 {
            entries.push(FusionEntry {
                left: 0,
                right: j,
                result: j,
                mult: 1,
            });
            if j != 0 {
                entries.push(FusionEntry {
                    left: j,
                    right: 0,
                    result: j,
                    mult: 1,
                });
            }
        }
        // g·h = 1 although h != g*.
        entries.push(FusionEntry {
            left: 1,
            right: 1,
            result: 0,
            mult: 1,
        });
        entries.push(FusionEntry {
            left: 1,
            right: 2,
            result: 0,
            mult: 1,
        });
        entries.push(FusionEntry {
            left: 2,
            right: 1,
            result: 2,
            mult: 1,
        });
        entries.push(FusionEntry {
            left: 2,
            right: 2,
            result: 0,
            mult: 1,
        });
        let f = FusionData::new("bad", basis, 0, vec![0, 1, 2], entries).unwrap();
        let violations = f.validate();
        assert!(violations
            .iter()
            .any(|v| v.axiom == Axiom::Duality && v.witness == vec![1, 2]));
    }

    #[test]
    fn overflow_is_an_error() {
        let f = kashina();
        let big = CharVec::from_vec(vec![i64::MAX / 2, 0, 0, 0, 0, 0, 0]);
        assert!(matches!(f.multiply(&big, &big), Err(Error::Overflow(_))));
        assert!(matches!(f.m_form(&big, &big), Err(Error::Overflow(_))));
    }

    #[test]
    fn structural_errors() {
        let basis = vec![
            BasisElement {
                label: "1".into(),
                dim: 1,
            },
            BasisElement {
                label: "1".into(),
                dim: 1,
            },
        ];
        assert!(FusionData::new("dup", basis, 0, vec![0, 1], []).is_err());
        let basis = vec![BasisElement {
            label: "1".into(),
            dim: 1,
        }];
        assert!(FusionData::new("star", basis.clone(), 0, vec![1], []).is_err());
        assert!(FusionData::new(
            "neg",
            basis,
            0,
            vec![0],
            [FusionEntry {
                left: 0,
                right: 0,
                result: 0,
                mult: -1
            }]
        )
        .is_err());
    }

    #[test]
    fn m_form_adjunctions_hold_exhaustively() {
        let f = kashina();
        let n = f.rank();
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (f.basis_vec(i), f.basis_vec(j));
                let xy = f.multiply(&x, &y).unwrap();
                assert_eq!(f.eps(&xy).unwrap(), f.dim(i) * f.dim(j));
                assert_eq!(f.m_form(&x, &y).unwrap(), f.m_form(&y, &x).unwrap());
                assert_eq!(
                    f.m_form(&x, &y).unwrap(),
                    f.m_form(&f.star(&y).unwrap(), &f.star(&x).unwrap()).unwrap()
                );
                for k in 0..n {
                    let z = f.basis_vec(k);
                    let xs = f.star(&x).unwrap();
                    assert_eq!(
                        f.m_form(&xy, &z).unwrap(),
                        f.m_form(&y, &f.multiply(&xs, &z).unwrap()).unwrap()
                    );
                    let yz = f.multiply(&y, &z).unwrap();
                    let zxs = f.multiply(&z, &xs).unwrap();
                    assert_eq!(
                        f.m_form(&x, &yz).unwrap(),
                        f.m_form(&f.star(&y).unwrap(), &zxs).unwrap()
                    );
                }
            }
        }
    }
}
