//! Character tables by Burnside's method.
//!
//! The class sums `C_j` span the centre of the group algebra, and
//! multiplication by `C_j` is a normal operator for the trace form
//! `⟨C_k, C_l⟩ = δ_kl |C_k|`. A generic real combination of the self-adjoint
//! parts `C_j + C_j*` and `i(C_j - C_j*)` is therefore Hermitian in the
//! orthonormal basis `C_k / √|C_k|`, with one eigenvector per irreducible
//! character: the central idempotent `e_χ ∝ Σ_k conj χ(g_k) C_k`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::perm::{PermGroup, Subgroup};
use crate::error::{Error, Result};

/// Bound on `|Σ |C| χ(c) conj ψ(c) - |G| δ|` accepted after construction.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-8;
/// Bound on the distance from a computed degree to the nearest integer.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;

const MAX_ATTEMPTS: u64 = 16;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    order: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<Option<usize>>,
    inverse_class: Vec<usize>,
    degrees: Vec<u64>,
    values: Vec<Vec<Complex64>>,
}

impl CharacterTable {
    /// Table of a subgroup `s` of `g`; classes are `s`-conjugacy classes.
    pub fn compute(g: &PermGroup, s: &Subgroup) -> Result<Self> {
        let classes = conjugacy_classes(g, s);
        let order = s.order();
        let mut class_of = vec![None; g.order()];
        for (c, members) in classes.iter().enumerate() {
            for &x in members {
                class_of[x] = Some(c);
            }
        }
        let inverse_class: Vec<usize> = classes
            .iter()
            .map(|c| class_of[g.inv(c[0])].expect("inverse lies in the subgroup"))
            .collect();

        let r = classes.len();
        // structure[j][l][k] = #{x ∈ C_j : x⁻¹ g_l ∈ C_k}, the coefficient of C_l in C_j C_k
        let mut structure = vec![vec![vec![0u32; r]; r]; r];
        for (l, cl) in classes.iter().enumerate() {
            let rep = cl[0];
            for (j, cj) in classes.iter().enumerate() {
                for &x in cj {
                    let y = g.mul(g.inv(x), rep);
                    let k = class_of[y].expect("product lies in the subgroup");
                    structure[j][l][k] += 1;
                }
            }
        }
        let sizes: Vec<f64> = classes.iter().map(|c| c.len() as f64).collect();
        let normalized = |j: usize| {
            DMatrix::from_fn(r, r, |l, k| {
                Complex64::new(f64::from(structure[j][l][k]) * (sizes[l] / sizes[k]).sqrt(), 0.0)
            })
        };
        let class_ops: Vec<DMatrix<Complex64>> = (0..r).map(normalized).collect();

        let mut last_err = None;
        for attempt in 0..MAX_ATTEMPTS {
            let mut rng = SplitMix64(0x5eed_0000 + attempt);
            let mut h = DMatrix::<Complex64>::zeros(r, r);
            for j in 0..r {
                let jj = inverse_class[j];
                let sym = &class_ops[j] + &class_ops[jj];
                let skew = (&class_ops[j] - &class_ops[jj]) * Complex64::new(0.0, 1.0);
                h += sym * Complex64::new(rng.next_f64() - 0.5, 0.0);
                h += skew * Complex64::new(rng.next_f64() - 0.5, 0.0);
            }
            match Self::from_hermitian(h, &sizes, order) {
                Ok((degrees, values)) => {
                    let table = CharacterTable {
                        order,
                        classes,
                        class_of,
                        inverse_class,
                        degrees,
                        values,
                    };
                    table.check()?;
                    return Ok(table);
                }
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.unwrap_or_else(|| Error::Numeric("character table did not separate".into())))
    }

    fn from_hermitian(h: DMatrix<Complex64>, sizes: &[f64], order: usize) -> Result<(Vec<u64>, Vec<Vec<Complex64>>)> {
        let r = sizes.len();
        let eig = h.symmetric_eigen();
        let mut evals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        evals.sort_by(f64::total_cmp);
        let scale = evals.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        if evals.windows(2).any(|w| (w[1] - w[0]) < 1e-7 * scale) {
            return Err(Error::Numeric("degenerate eigenvalues; retrying".into()));
        }
        let mut rows = Vec::with_capacity(r);
        for col in 0..r {
            let v = eig.eigenvectors.column(col);
            // conj χ(g_k) ∝ v_k / √|C_k|
            let u: Vec<Complex64> = (0..r).map(|k| v[k].conj() / sizes[k].sqrt()).collect();
            if u[0].norm() < 1e-12 {
                return Err(Error::Numeric("eigenvector vanishes at the identity".into()));
            }
            let ratios: Vec<Complex64> = u.iter().map(|x| x / u[0]).collect();
            let norm: f64 = ratios.iter().zip(sizes).map(|(x, s)| s * x.norm_sqr()).sum();
            let degree = (order as f64 / norm).sqrt();
            let rounded = degree.round();
            if (degree - rounded).abs() > INTEGRALITY_TOLERANCE || rounded < 1.0 {
                return Err(Error::Numeric(format!("non-integral degree {degree}")));
            }
            let values: Vec<Complex64> = ratios.iter().map(|x| x * rounded).collect();
            rows.push((rounded as u64, values));
        }
        rows.sort_by(|a, b| {
            a.0.cmp(&b.0).then_with(|| {
                for (x, y) in a.1.iter().zip(&b.1) {
                    let ord = quantize(y.re)
                        .cmp(&quantize(x.re))
                        .then(quantize(y.im).cmp(&quantize(x.im)));
                    if ord.is_ne() {
                        return ord;
                    }
                }
                std::cmp::Ordering::Equal
            })
        });
        Ok(rows.into_iter().unzip())
    }

    /// Verifies row orthogonality and `Σ χ(1)² = |G|`.
    fn check(&self) -> Result<()> {
        let err = self.orthogonality_error();
        if err > ORTHOGONALITY_TOLERANCE {
            return Err(Error::Numeric(format!("orthogonality error {err:e}")));
        }
        let sum: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum != self.order as u64 {
            return Err(Error::Numeric(format!(
                "squared degrees sum to {sum}, group order is {}",
                self.order
            )));
        }
        Ok(())
    }

    /// Largest deviation of `Σ_c |c| χ(c) conj ψ(c)` from `|G| δ_χψ`.
    pub fn orthogonality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, ra) in self.values.iter().enumerate() {
            for (b, rb) in self.values.iter().enumerate() {
                let s: Complex64 = ra
                    .iter()
                    .zip(rb)
                    .zip(&self.classes)
                    .map(|((x, y), c)| x * y.conj() * c.len() as f64)
                    .sum();
                let target = if a == b { self.order as f64 } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn num_irreducibles(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, element: usize) -> Option<usize> {
        self.class_of.get(element).copied().flatten()
    }

    /// Index of the class holding the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn values(&self, chi: usize) -> &[Complex64] {
        &self.values[chi]
    }

    /// `χ(x)` for an element of the subgroup; panics outside it.
    pub fn value(&self, chi: usize, element: usize) -> Complex64 {
        let c = self.class_of(element).expect("element lies in the subgroup");
        self.values[chi][c]
    }

    /// Index of the complex-conjugate character of `chi`.
    pub fn conjugate_of(&self, chi: usize) -> Result<usize> {
        let target: Vec<Complex64> = self.values[chi].iter().map(|z| z.conj()).collect();
        self.find_row(&target)
            .ok_or_else(|| Error::Numeric(format!("no conjugate character for row {chi}")))
    }

    /// Unique row whose values match `target` within the orthogonality tolerance.
    pub fn find_row(&self, target: &[Complex64]) -> Option<usize> {
        let matches: Vec<usize> = (0..self.values.len())
            .filter(|&r| {
                self.values[r]
                    .iter()
                    .zip(target)
                    .all(|(a, b)| (a - b).norm() < ORTHOGONALITY_TOLERANCE)
            })
            .collect();
        (matches.len() == 1).then(|| matches[0])
    }
}

fn quantize(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

/// Conjugacy classes of `s` under conjugation by `s`, ordered by smallest
/// element (so the identity class is first), each sorted.
pub fn conjugacy_classes(g: &PermGroup, s: &Subgroup) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; g.order()];
    let mut out = Vec::new();
    for &x in s.members() {
        if assigned[x] {
            continue;
        }
        let mut class = Vec::new();
        for &y in s.members() {
            let z = g.conjugate(x, y);
            if !assigned[z] {
                assigned[z] = true;
                class.push(z);
            }
        }
        class.sort_unstable();
        out.push(class);
    }
    out
}

/// Deterministic generator for the random Hermitian combination.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}
