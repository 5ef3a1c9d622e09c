//! Hopf subalgebras seen through their dual irreducible characters: subsets of
//! the basis that contain the unit and are closed under `*` and products.

use std::collections::{BTreeSet, VecDeque};

use crate::cosets;
use crate::error::{Error, Result};
use crate::fusion::{CharVec, FusionData};

#[derive(Clone, Debug)]
pub struct Subalgebra<'a> {
    parent: &'a FusionData,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl PartialEq for Subalgebra<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

impl Eq for Subalgebra<'_> {}

impl<'a> Subalgebra<'a> {
    /// Validates a member set. Fails with a closure error naming the first
    /// witness when the set misses the unit or is not closed under `*` or
    /// products.
    pub fn new(parent: &'a FusionData, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let sub = Self::from_members_unchecked(parent, members)?;
        if let Some(reason) = sub.closure_failure() {
            return Err(Error::Closure(reason));
        }
        Ok(sub)
    }

    pub fn from_labels<S: AsRef<str>>(parent: &'a FusionData, labels: &[S]) -> Result<Self> {
        let members = labels
            .iter()
            .map(|l| parent.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parent, members)
    }

    fn from_members_unchecked(parent: &'a FusionData, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = parent.rank();
        let mut mask = vec![false; n];
        for i in members {
            if i >= n {
                return Err(Error::Malformed(format!("basis index {i} out of range")));
            }
            mask[i] = true;
        }
        let members = (0..n).filter(|&i| mask[i]).collect();
        Ok(Subalgebra { parent, members, mask })
    }

    fn closure_failure(&self) -> Option<String> {
        let f = self.parent;
        if !self.mask[f.unit()] {
            return Some("unit is missing".into());
        }
        for &i in &self.members {
            if !self.mask[f.star_index(i)] {
                return Some(format!(
                    "star of `{}` (= `{}`) is missing",
                    f.label(i),
                    f.label(f.star_index(i))
                ));
            }
            for &j in &self.members {
                if let Some(&(k, _)) = f.basis_product(i, j).iter().find(|&&(k, _)| !self.mask[k]) {
                    return Some(format!("`{}`·`{}` contains `{}`", f.label(i), f.label(j), f.label(k)));
                }
            }
        }
        None
    }

    /// The subalgebra `{unit}`.
    pub fn trivial(parent: &'a FusionData) -> Self {
        Self::from_members_unchecked(parent, [parent.unit()]).expect("unit index is in range")
    }

    pub fn whole(parent: &'a FusionData) -> Self {
        Self::from_members_unchecked(parent, 0..parent.rank()).expect("indices are in range")
    }

    /// Smallest subalgebra containing `generators`: adds the unit, then closes
    /// under `*` and products until nothing changes.
    pub fn close(parent: &'a FusionData, generators: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = parent.rank();
        let mut mask = vec![false; n];
        let mut queue = VecDeque::new();
        let mut members = Vec::new();
        let push = |i: usize, mask: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
            if !mask[i] {
                mask[i] = true;
                queue.push_back(i);
            }
        };
        push(parent.unit(), &mut mask, &mut queue);
        for g in generators {
            if g >= n {
                return Err(Error::Malformed(format!("basis index {g} out of range")));
            }
            push(g, &mut mask, &mut queue);
        }
        while let Some(i) = queue.pop_front() {
            members.push(i);
            push(parent.star_index(i), &mut mask, &mut queue);
            let snapshot = members.clone();
            for j in snapshot {
                for (a, b) in [(i, j), (j, i)] {
                    for &(k, _) in parent.basis_product(a, b) {
                        push(k, &mut mask, &mut queue);
                    }
                }
            }
        }
        Self::from_members_unchecked(parent, members)
    }

    /// Every subalgebra of `parent`, sorted by (order, members). Each
    /// subalgebra is generated by its own members, so closing known
    /// subalgebras with one extra element reaches all of them.
    pub fn enumerate(parent: &'a FusionData) -> Result<Vec<Self>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let trivial = Self::trivial(parent);
        seen.insert(trivial.members.clone());
        queue.push_back(trivial);
        let mut found = Vec::new();
        while let Some(s) = queue.pop_front() {
            for d in 0..parent.rank() {
                if s.mask[d] {
                    continue;
                }
                let bigger = Self::close(parent, s.members.iter().copied().chain([d]))?;
                if seen.insert(bigger.members.clone()) {
                    queue.push_back(bigger);
                }
            }
            found.push(s);
        }
        let mut keyed = found
            .into_iter()
            .map(|s| Ok((s.order()?, s)))
            .collect::<Result<Vec<_>>>()?;
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.members.cmp(&b.1.members)));
        Ok(keyed.into_iter().map(|(_, s)| s).collect())
    }

    pub fn parent(&self) -> &'a FusionData {
        self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask.get(i).copied().unwrap_or(false)
    }

    pub fn labels(&self) -> Vec<&'a str> {
        self.members.iter().map(|&i| self.parent.label(i)).collect()
    }

    /// `Λ_K = Σ_{d∈K} ε(d) d`.
    pub fn integral(&self) -> CharVec {
        self.parent.weighted_sum(self.members.iter().copied())
    }

    /// `|K| = Σ_{d∈K} ε(d)²`.
    pub fn order(&self) -> Result<i64> {
        self.members.iter().try_fold(0i64, |acc, &i| {
            let d = self.parent.dim(i);
            d.checked_mul(d)
                .and_then(|sq| acc.checked_add(sq))
                .ok_or(Error::Overflow("order"))
        })
    }

    pub fn intersect(&self, other: &Subalgebra<'a>) -> Result<Subalgebra<'a>> {
        self.same_parent(other)?;
        Self::from_members_unchecked(self.parent, self.members.iter().copied().filter(|&i| other.contains(i)))
    }

    pub fn is_subset_of(&self, other: &Subalgebra<'a>) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }

    pub(crate) fn same_parent(&self, other: &Subalgebra<'_>) -> Result<()> {
        if std::ptr::eq(self.parent, other.parent) {
            Ok(())
        } else {
            Err(Error::MismatchedParent)
        }
    }
}

/// `|LK| = ε(a_1)`, the dimension of the class sum of the unit under the
/// relation `r_{K,L}`.
pub fn product_order(left: &Subalgebra<'_>, right: &Subalgebra<'_>) -> Result<i64> {
    let dec = cosets::classes(left, right)?;
    Ok(dec.class_eps(0))
}
