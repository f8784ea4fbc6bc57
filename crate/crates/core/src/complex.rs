//! Finite free chain complexes and their (co)homology.
//!
//! Two independent computation paths exist on purpose. The integral path
//! reads homology off a Smith decomposition and feeds universal-coefficient
//! formulas. The field path counts ranks by Gaussian elimination over Q or
//! F_p and never touches the Smith code. Tests compare the two on random
//! complexes; a disagreement means a bug in one of them.

use crate::abelian::{group_from_relations, CoefficientRing, FgAbGroup, SymbolicGroup};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::primes::{is_prime, mul_mod, pow_mod};
use crate::snf::{smith_normal_form, unimodular_inverse};
use crate::{Int, IntMatrix};
use num_integer::Integer as _;
use num_traits::{Signed, Zero};

/// A chain complex of finitely generated free groups concentrated in degrees
/// `0..=top`, with `differentials[n]` mapping degree `n + 1` to degree `n`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    differentials: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, differentials: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidComplex("no degrees".into()));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(Error::InvalidComplex(format!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.rows() != ranks[n] || d.cols() != ranks[n + 1] {
                return Err(Error::InvalidComplex(format!(
                    "differential into degree {n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[n],
                    ranks[n + 1]
                )));
            }
        }
        for n in 0..differentials.len().saturating_sub(1) {
            if !differentials[n].mul(&differentials[n + 1]).is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "composite of differentials into degree {n} is nonzero"
                )));
            }
        }
        Ok(ChainComplex {
            ranks,
            differentials,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// The differential from degree `n + 1` into degree `n`.
    pub fn differential(&self, n: usize) -> &IntMatrix {
        &self.differentials[n]
    }

    /// The differential landing in degree `n` (zero columns above the top).
    fn incoming(&self, n: usize) -> IntMatrix {
        match self.differentials.get(n) {
            Some(d) => d.clone(),
            None => Matrix::zeros(self.rank(n), 0),
        }
    }

    /// The differential leaving degree `n` (zero rows below degree 0).
    fn outgoing(&self, n: usize) -> IntMatrix {
        if n == 0 || n > self.top_degree() {
            let target_rank = if n == 0 { 0 } else { self.rank(n - 1) };
            return Matrix::zeros(target_rank, self.rank(n));
        }
        self.differentials[n - 1].clone()
    }

    /// Integral homology at degree `n`.
    ///
    /// With `left * outgoing * right` in Smith form, the kernel of the
    /// outgoing map is spanned by the trailing columns of `right`. Rewriting
    /// the incoming differential in the `right` basis turns its columns into
    /// relators on that kernel.
    pub fn homology_at(&self, n: usize) -> FgAbGroup {
        if self.rank(n) == 0 {
            return FgAbGroup::trivial();
        }
        let out = self.outgoing(n);
        let inc = self.incoming(n);
        let dec = smith_normal_form(&out);
        let coords = unimodular_inverse(&dec.right).mul(&inc);
        // Rows hitting nonzero diagonal entries vanish because the composite
        // of consecutive differentials is zero.
        debug_assert!((0..dec.rank)
            .all(|i| (0..coords.cols()).all(|j| coords[(i, j)].is_zero())));
        group_from_relations(&coords.submatrix_rows(dec.rank..self.rank(n)))
    }

    /// Integral homology in all degrees `0..=top`.
    pub fn homology(&self) -> Vec<FgAbGroup> {
        (0..=self.top_degree()).map(|n| self.homology_at(n)).collect()
    }

    /// Homology with coefficients, assembled from the integral groups: the
    /// degree-`n` value is `H_n (x) R` plus the torsion product of
    /// `H_{n-1}` with `R`.
    pub fn homology_with(&self, ring: &CoefficientRing) -> Vec<SymbolicGroup> {
        let h = self.homology();
        (0..=self.top_degree())
            .map(|n| {
                let mut parts = vec![h[n].tensor_with(ring)];
                if n > 0 {
                    parts.push(h[n - 1].tor_with(ring));
                }
                SymbolicGroup::sum(parts)
            })
            .collect()
    }

    /// Cohomology with coefficients: `Hom(H_n, R)` plus `Ext(H_{n-1}, R)`.
    pub fn cohomology_with(&self, ring: &CoefficientRing) -> Vec<SymbolicGroup> {
        let h = self.homology();
        (0..=self.top_degree())
            .map(|n| {
                let mut parts = vec![h[n].hom_into(ring)];
                if n > 0 {
                    parts.push(h[n - 1].ext_into(ring));
                }
                SymbolicGroup::sum(parts)
            })
            .collect()
    }

    /// Betti numbers over a field, by elimination only:
    /// `dim H_n = rank C_n - rank d_n - rank d_{n+1}`.
    fn field_dims(&self, ring: &CoefficientRing, dual: bool) -> Result<Vec<usize>> {
        let rank_of = |m: &IntMatrix| -> Result<usize> {
            let m = if dual { m.transpose() } else { m.clone() };
            match ring {
                CoefficientRing::Rationals => Ok(m.rank_via_elimination()),
                CoefficientRing::Mod(md) if md.is_prime() => Ok(rank_mod_p(&m, md.value())),
                other => Err(Error::NotAField(other.to_string())),
            }
        };
        (0..=self.top_degree())
            .map(|n| {
                Ok(self.rank(n) - rank_of(&self.outgoing(n))? - rank_of(&self.incoming(n))?)
            })
            .collect()
    }

    /// Homology over Q or F_p via the rank path.
    pub fn field_homology(&self, ring: &CoefficientRing) -> Result<Vec<SymbolicGroup>> {
        let dims = self.field_dims(ring, false)?;
        Ok(dims.into_iter().map(|d| field_power(ring, d)).collect())
    }

    /// Cohomology over Q or F_p via the rank path, on the transposed
    /// differentials.
    pub fn field_cohomology(&self, ring: &CoefficientRing) -> Result<Vec<SymbolicGroup>> {
        let dims = self.field_dims(ring, true)?;
        Ok(dims.into_iter().map(|d| field_power(ring, d)).collect())
    }

    /// Homology of the suspension: everything shifts up one degree, a fresh
    /// `Z` appears in degree 0, and the old degree-0 group loses one free
    /// summand. Fails when degree 0 has no free summand to remove.
    pub fn suspension_homology(&self) -> Result<Vec<FgAbGroup>> {
        let h = self.homology();
        let base = &h[0];
        if base.free_rank() == 0 {
            return Err(Error::SuspensionBase(base.to_string()));
        }
        let reduced = FgAbGroup::free(base.free_rank() - 1)
            .direct_sum(&base.torsion());
        let mut out = vec![FgAbGroup::free(1), reduced];
        out.extend(h.into_iter().skip(1));
        Ok(out)
    }
}

fn field_power(ring: &CoefficientRing, dim: usize) -> SymbolicGroup {
    match ring {
        CoefficientRing::Rationals => SymbolicGroup::rationals_power(dim),
        CoefficientRing::Mod(m) => {
            SymbolicGroup::fg(FgAbGroup::from_parts(0, vec![m.big(); dim]))
        }
        CoefficientRing::Integers => unreachable!("field_power needs a field"),
    }
}

/// Rank over F_p by straightforward Gaussian elimination on reduced entries.
fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    assert!(is_prime(p));
    let reduce = |x: &Int| -> u64 {
        let r = x.mod_floor(&Int::from(p));
        let digits = r.magnitude().to_u64_digits();
        debug_assert!(!r.is_negative() && digits.len() <= 1);
        digits.first().copied().unwrap_or(0)
    };
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| reduce(&m[(i, j)])).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&i| a[i][col] != 0);
        let pivot = match pivot {
            Some(i) => i,
            None => continue,
        };
        a.swap(rank, pivot);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for j in col..cols {
            a[rank][j] = mul_mod(a[rank][j], inv, p);
        }
        for i in 0..rows {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in col..cols {
                    let sub = mul_mod(f, a[rank][j], p);
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// The standard small complex whose degree-1 homology is cyclic of order
/// `q`: ranks (1, 1, 1, 1), with multiplication by `q` as the middle
/// differential and zero maps elsewhere.
pub fn lens_complex(q: u64) -> Result<ChainComplex> {
    if q == 0 {
        return Err(Error::InvalidLensOrder);
    }
    let zero = Matrix::zeros(1, 1);
    let mut middle: IntMatrix = Matrix::zeros(1, 1);
    middle[(0, 0)] = Int::from(q);
    ChainComplex::new(vec![1, 1, 1, 1], vec![zero.clone(), middle, zero])
}
