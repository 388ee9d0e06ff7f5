use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::complex::{FlagComplex, Simplex};
use super::snf::{smith_decompose, sparse_invariant_factors, IntMatrix, SparseIntMatrix};
use crate::error::Result;

/// One reduced homology group: `Z^rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Torsion coefficients (> 1), each dividing the next. Decimal strings
    /// because they are unbounded.
    pub torsion: Vec<String>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        f.write_str(&parts.join(" + "))
    }
}

/// Reduced integer homology in dimensions `0..=d_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn group(&self, k: usize) -> &HomologyGroup {
        &self.groups[k]
    }

    pub fn d_max(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// True when the only nonzero group is a single `Z` in dimension `k`.
    pub fn is_sphere_like(&self, k: usize) -> bool {
        self.groups.iter().enumerate().all(|(i, g)| {
            if i == k {
                g.is_infinite_cyclic()
            } else {
                g.is_zero()
            }
        })
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.groups.iter().enumerate() {
            writeln!(f, "dim {k}: {g}")?;
        }
        Ok(())
    }
}

/// Integer chain on simplices of a fixed dimension, keyed by canonical simplex.
pub type Chain = BTreeMap<Simplex, BigInt>;

/// Sign of the permutation that sorts `v`; `None` if `v` has a repeat.
pub(crate) fn sort_sign(v: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Boundary matrix `C_k -> C_{k-1}`; for `k == 0` this is the augmentation.
pub(crate) fn sparse_boundary(lower: &[Simplex], upper: &[Simplex], k: usize) -> SparseIntMatrix {
    if k == 0 {
        let mut m = SparseIntMatrix::zeros(1, upper.len());
        for j in 0..upper.len() {
            m.set(0, j, BigInt::one());
        }
        return m;
    }
    let position: BTreeMap<&Simplex, usize> =
        lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = SparseIntMatrix::zeros(lower.len(), upper.len());
    for (j, s) in upper.iter().enumerate() {
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m.set(position[&face], j, BigInt::from(sign));
        }
    }
    m
}

pub(crate) fn boundary_matrix(lower: &[Simplex], upper: &[Simplex], k: usize) -> IntMatrix {
    sparse_boundary(lower, upper, k).to_dense()
}

/// Boundary of a chain, computed face by face.
pub fn chain_boundary(chain: &Chain) -> Chain {
    let mut out = Chain::new();
    for (s, c) in chain {
        if s.len() <= 1 {
            continue;
        }
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            let entry = out.entry(face).or_insert_with(BigInt::zero);
            if i % 2 == 0 {
                *entry += c;
            } else {
                *entry -= c;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Reduced homology of `c` in dimensions `0..=d_max`.
pub fn reduced_homology(c: &FlagComplex, d_max: usize, cap: usize) -> Result<HomologyProfile> {
    let layers = c.cliques_by_dimension(d_max + 1, cap)?;
    // ranks[k] = rank of ∂_k : C_k -> C_{k-1}, k = 0..=d_max+1
    let mut ranks = Vec::with_capacity(d_max + 2);
    let mut torsion: Vec<Vec<BigInt>> = Vec::with_capacity(d_max + 2);
    for k in 0..=d_max + 1 {
        let lower: &[Simplex] = if k == 0 { &[] } else { &layers[k - 1] };
        let f = sparse_invariant_factors(sparse_boundary(lower, &layers[k], k));
        ranks.push(f.len());
        torsion.push(f.into_iter().filter(|x| !x.is_one()).collect());
    }
    let groups = (0..=d_max)
        .map(|k| HomologyGroup {
            rank: layers[k].len() - ranks[k] - ranks[k + 1],
            torsion: torsion[k + 1].iter().map(|t| t.abs().to_string()).collect(),
        })
        .collect();
    Ok(HomologyProfile { groups })
}

/// Cycles whose classes form a basis of the free part of reduced `H_k`.
pub fn free_cycle_generators(c: &FlagComplex, k: usize, cap: usize) -> Result<Vec<Chain>> {
    let layers = c.cliques_by_dimension(k + 1, cap)?;
    let lower: &[Simplex] = if k == 0 { &[] } else { &layers[k - 1] };
    let dk = boundary_matrix(lower, &layers[k], k);
    let dk1 = boundary_matrix(&layers[k], &layers[k + 1], k + 1);

    let n = layers[k].len();
    let outer = smith_decompose(&dk);
    let r = outer.rank();
    // Columns r.. of the right transform span ker ∂_k over Z.
    let kernel_dim = n - r;
    let coords = outer.right_inv.mul(&dk1);
    let mut image = IntMatrix::zeros(kernel_dim, dk1.cols());
    for i in 0..kernel_dim {
        for j in 0..dk1.cols() {
            image.set(i, j, coords.get(r + i, j).clone());
        }
    }
    let inner = smith_decompose(&image);
    let r2 = inner.rank();
    let mut out = Vec::new();
    for free in r2..kernel_dim {
        let x = inner.left_inv.column(free);
        let mut full = vec![BigInt::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            full[r + i] = xi.clone();
        }
        let z = outer.right.mul_vec(&full);
        let chain: Chain = layers[k]
            .iter()
            .zip(z)
            .filter(|(_, v)| !v.is_zero())
            .map(|(s, v)| (s.clone(), v))
            .collect();
        out.push(chain);
    }
    Ok(out)
}
