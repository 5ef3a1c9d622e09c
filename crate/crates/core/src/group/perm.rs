use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest group the oracle will enumerate.
pub const ORDER_CAP: usize = 2000;

/// A permutation of `0..degree` as its image array.
pub type Perm = Vec<u32>;

/// `(a ∘ b)(i) = a(b(i))`: apply `b` first.
pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn invert(a: &[u32]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

/// Disjoint-cycle notation with 1-based points; the identity is `()`.
pub fn cycle_notation(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(',');
            }
            first = false;
            let _ = write!(out, "{}", i + 1);
            i = p[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

fn check_perm(p: &[u32], degree: usize) -> Result<()> {
    if p.len() != degree {
        return Err(Error::InvalidPermutation(format!(
            "{p:?} has length {} but the degree is {degree}",
            p.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &x in p {
        let x = x as usize;
        if x >= degree || std::mem::replace(&mut seen[x], true) {
            return Err(Error::InvalidPermutation(format!("{p:?} is not a bijection")));
        }
    }
    Ok(())
}

/// A finite permutation group with its elements enumerated in lexicographic
/// order of image arrays (so the identity is element 0) and a full
/// multiplication table.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul: Vec<u32>,
    inv: Vec<usize>,
}

impl PermGroup {
    /// Breadth-first closure of the generators.
    pub fn generate(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for g in &generators {
            check_perm(g, degree)?;
        }
        let identity: Perm = (0..degree as u32).collect();
        let mut found: HashMap<Perm, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        found.insert(identity.clone(), ());
        queue.push_back(identity);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = compose(g, &x);
                if !found.contains_key(&y) {
                    if found.len() >= ORDER_CAP {
                        return Err(Error::GroupTooLarge { cap: ORDER_CAP });
                    }
                    found.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = found.into_keys().collect();
        elements.sort();
        let index: HashMap<Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                mul[a * n + b] = index[&compose(pa, pb)] as u32;
            }
        }
        let inv = elements.iter().map(|p| index[&invert(p)]).collect();
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
            mul,
            inv,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &[u32] {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, p: &[u32]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g⁻¹ x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn label(&self, i: usize) -> String {
        cycle_notation(&self.elements[i])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_mask(vec![true; self.order()])
    }

    pub fn trivial(&self) -> Subgroup {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        Subgroup::from_mask(mask)
    }

    /// Subgroup generated by the given permutations, each of which must be an
    /// element of the group.
    pub fn subgroup_generated(&self, generators: &[Perm]) -> Result<Subgroup> {
        let gens = generators
            .iter()
            .map(|p| {
                check_perm(p, self.degree)?;
                self.index_of(p)
                    .ok_or_else(|| Error::NotSubgroup(format!("{} is not in the group", cycle_notation(p))))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(g, x);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Ok(Subgroup::from_mask(mask))
    }

    /// Validates that the given element set is a subgroup.
    pub fn subgroup_from_elements(&self, elements: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let mut mask = vec![false; self.order()];
        for e in elements {
            if e >= self.order() {
                return Err(Error::NotSubgroup(format!("element index {e} out of range")));
            }
            mask[e] = true;
        }
        let s = Subgroup::from_mask(mask);
        if !s.contains(0) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in s.members() {
            if !s.contains(self.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {} missing", self.label(a))));
            }
            for &b in s.members() {
                if !s.contains(self.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!(
                        "{}·{} missing",
                        self.label(a),
                        self.label(b)
                    )));
                }
            }
        }
        Ok(s)
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        s.members()
            .iter()
            .all(|&n| (0..self.order()).all(|g| s.contains(self.conjugate(n, g))))
    }

    /// The element set `A·B = {ab}`; a subgroup only when `AB = BA`.
    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> Vec<usize> {
        let mut mask = vec![false; self.order()];
        for &x in a.members() {
            for &y in b.members() {
                mask[self.mul(x, y)] = true;
            }
        }
        (0..self.order()).filter(|&i| mask[i]).collect()
    }

    /// Double cosets `K g L` as ascending element lists, ordered by least
    /// element (their representative). The identity's coset `KL` comes first.
    pub fn double_cosets(&self, k: &Subgroup, l: &Subgroup) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut assigned = vec![false; n];
        let mut out = Vec::new();
        for g in 0..n {
            if assigned[g] {
                continue;
            }
            let mut orbit = Vec::new();
            for &x in k.members() {
                let xg = self.mul(x, g);
                for &y in l.members() {
                    let z = self.mul(xg, y);
                    if !assigned[z] {
                        assigned[z] = true;
                        orbit.push(z);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

/// A subgroup as a set of element indices of its ambient [`PermGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    fn from_mask(mask: Vec<bool>) -> Self {
        let members = (0..mask.len()).filter(|&i| mask[i]).collect();
        Subgroup { members, mask }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask.get(i).copied().unwrap_or(false)
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_mask(self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect())
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        PermGroup::generate(3, vec![vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    #[test]
    fn generates_small_groups() {
        assert_eq!(s3().order(), 6);
        let v4 = PermGroup::generate(4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        assert_eq!(v4.order(), 4);
        let s3 = s3();
        assert_eq!(s3.element(0), &[0, 1, 2]);
        assert!(s3.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn group_axioms_hold() {
        let g = s3();
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.mul(0, a), a);
            for b in 0..g.order() {
                for c in 0..g.order() {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn order_cap_is_enforced() {
        // S7 has 5040 elements.
        let gens = vec![vec![1, 0, 2, 3, 4, 5, 6], vec![1, 2, 3, 4, 5, 6, 0]];
        assert!(matches!(
            PermGroup::generate(7, gens),
            Err(Error::GroupTooLarge { cap: ORDER_CAP })
        ));
    }

    #[test]
    fn rejects_bad_permutations() {
        assert!(PermGroup::generate(3, vec![vec![0, 0, 1]]).is_err());
        assert!(PermGroup::generate(3, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn cycle_labels() {
        assert_eq!(cycle_notation(&[0, 1, 2]), "()");
        assert_eq!(cycle_notation(&[1, 0, 2]), "(1,2)");
        assert_eq!(cycle_notation(&[1, 2, 0]), "(1,2,3)");
        assert_eq!(cycle_notation(&[1, 0, 3, 2]), "(1,2)(3,4)");
    }

    #[test]
    fn double_cosets_of_s3() {
        let g = s3();
        let a3 = g.subgroup_generated(&[vec![1, 2, 0]]).unwrap();
        let dc = g.double_cosets(&a3, &a3);
        assert_eq!(dc.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 3]);
        let e = g.trivial();
        assert_eq!(g.double_cosets(&e, &e).len(), 6);
        assert!(g.is_normal(&a3));
        let c2 = g.subgroup_generated(&[vec![1, 0, 2]]).unwrap();
        assert!(!g.is_normal(&c2));
    }

    #[test]
    fn double_cosets_of_s4_by_s3() {
        let g = PermGroup::generate(4, vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
        let s3 = g.subgroup_generated(&[vec![1, 0, 2, 3], vec![1, 2, 0, 3]]).unwrap();
        let dc = g.double_cosets(&s3, &s3);
        assert_eq!(dc.iter().map(Vec::len).collect::<Vec<_>>(), vec![6, 18]);
    }

    #[test]
    fn subgroup_validation() {
        let g = s3();
        let c2 = g.subgroup_generated(&[vec![1, 0, 2]]).unwrap();
        assert_eq!(g.subgroup_from_elements(c2.members().to_vec()).unwrap(), c2);
        // {e, (12), (13)} is not closed.
        let t12 = g.index_of(&[1, 0, 2]).unwrap();
        let t13 = g.index_of(&[2, 1, 0]).unwrap();
        assert!(matches!(
            g.subgroup_from_elements([0, t12, t13]),
            Err(Error::NotSubgroup(_))
        ));
        assert!(g.subgroup_generated(&[vec![0, 1, 2, 3]]).is_err());
    }
}
