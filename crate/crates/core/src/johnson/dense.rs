//! Dense materialisation. These paths exist to cross-check the coefficient
//! arithmetic and are capped by a size budget.

use std::ops::{Index, IndexMut};

use super::{BMVector, SchemeParams};
use crate::error::{Error, Result};
use crate::exact::{binom_u64, Rational, Scalar};
use crate::exec::Execution;
use crate::subsets::{meet, KSubset};

/// Largest order `C(n,k)` materialised unless the caller raises it.
pub const DEFAULT_DENSE_BUDGET: u64 = 5000;

/// Row-major matrix of exact scalars; rows and columns follow colex order.
#[derive(Clone, PartialEq, Debug)]
pub struct DenseMatrix<S = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, exec: Execution, f: impl Fn(usize, usize) -> S + Sync + Send) -> Self {
        let data = exec
            .map_range(rows, |i| (0..cols).map(|j| f(i, j)).collect::<Vec<_>>())
            .into_iter()
            .flatten()
            .collect();
        DenseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, Execution::Sequential, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Mismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, Execution::default(), |i, j| {
            (0..self.cols).fold(S::zero(), |acc, l| {
                let a = &self[(i, l)];
                if a.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(&rhs[(l, j)]))
                }
            })
        }))
    }

    /// Entrywise (Schur) product.
    pub fn hadamard(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, S::mul)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, S::add)
    }

    pub fn scale(&self, c: &S) -> Self {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul(c)).collect(),
        }
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Mismatch("matrix shapes differ".into()));
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc.add(&self[(i, i)]))
    }

    /// Sum of all entries.
    pub fn elsm(&self) -> S {
        self.data.iter().fold(S::zero(), |acc, x| acc.add(x))
    }
}

impl<S> Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for DenseMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

fn check_budget(order: u64, budget: u64) -> Result<()> {
    if order > budget {
        return Err(Error::SizeBudget { order, budget });
    }
    Ok(())
}

/// The `C(n,k) × C(n,k)` matrix `Σ_r c_r A_r`.
pub fn bm_dense<S: Scalar>(v: &BMVector<S>, budget: u64) -> Result<DenseMatrix<S>> {
    let params = v.params()?;
    let order = binom_u64(params.n(), params.k());
    check_budget(order, budget)?;
    let sets: Vec<KSubset> = KSubset::all(params.n(), params.k()).collect();
    let k = params.k();
    Ok(DenseMatrix::from_fn(sets.len(), sets.len(), Execution::default(), |i, j| {
        v.coeff(k - meet(sets[i].elements(), sets[j].elements())).clone()
    }))
}

fn incidence(
    i: usize,
    params: SchemeParams,
    budget: u64,
    rel: impl Fn(&KSubset, &KSubset) -> bool + Sync + Send,
) -> Result<DenseMatrix<Rational>> {
    if i > params.k() {
        return Err(Error::InvalidParams(format!("i = {i} exceeds k = {}", params.k())));
    }
    let (n, k) = (params.n(), params.k());
    check_budget(binom_u64(n, i).max(binom_u64(n, k)), budget)?;
    let rows: Vec<KSubset> = KSubset::all(n, i).collect();
    let cols: Vec<KSubset> = KSubset::all(n, k).collect();
    Ok(DenseMatrix::from_fn(rows.len(), cols.len(), Execution::default(), |a, b| {
        if rel(&rows[a], &cols[b]) {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// `W_{i,k}`: rows are i-subsets, columns k-subsets, entry 1 when row ⊆ column.
pub fn w_dense(i: usize, params: SchemeParams, budget: u64) -> Result<DenseMatrix<Rational>> {
    incidence(i, params, budget, |a, b| b.contains_all(a))
}

/// `W̄_{i,k}`: entry 1 when the i-subset and the k-subset are disjoint.
pub fn wbar_dense(i: usize, params: SchemeParams, budget: u64) -> Result<DenseMatrix<Rational>> {
    incidence(i, params, budget, |a, b| meet(a.elements(), b.elements()) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binom;

    fn params(n: usize, k: usize) -> SchemeParams {
        SchemeParams::new(n, k).unwrap()
    }

    fn ones_count(m: &DenseMatrix) -> Vec<i64> {
        (0..m.rows())
            .map(|i| m.row(i).iter().filter(|x| **x == Rational::one()).count() as i64)
            .collect()
    }

    #[test]
    fn identity_and_all_ones() {
        let p = params(4, 2);
        let i = bm_dense(&BMVector::<Rational>::identity(p), 100).unwrap();
        assert_eq!(i.rows(), 6);
        for r in 0..6 {
            for c in 0..6 {
                assert_eq!(i[(r, c)], if r == c { Rational::one() } else { Rational::zero() });
            }
        }
        let j = bm_dense(&BMVector::<Rational>::all_ones(p), 100).unwrap();
        assert!(j.row(3).iter().all(|x| *x == Rational::one()));
    }

    #[test]
    fn octahedron() {
        let a1 = bm_dense(&BMVector::<Rational>::basis(params(4, 2), 1).unwrap(), 100).unwrap();
        assert!(a1.is_symmetric());
        assert_eq!(ones_count(&a1), vec![4; 6]);
        assert_eq!(a1.trace(), Rational::zero());
        // octahedron: each vertex is non-adjacent only to its antipode
        let a1_sq = a1.matmul(&a1).unwrap();
        assert_eq!(a1_sq[(0, 0)], Rational::from_int(4));
    }

    #[test]
    fn budget_enforced() {
        let v = BMVector::<Rational>::identity(params(10, 5));
        assert_eq!(bm_dense(&v, 100), Err(Error::SizeBudget { order: 252, budget: 100 }));
        assert!(w_dense(2, params(10, 5), 100).is_err());
    }

    #[test]
    fn inclusion_and_disjointness_row_sums() {
        let p = params(7, 3);
        let w0 = w_dense(0, p, 100).unwrap();
        assert_eq!(w0.rows(), 1);
        assert!(w0.row(0).iter().all(|x| *x == Rational::one()));
        let w1 = w_dense(1, p, 100).unwrap();
        assert_eq!(ones_count(&w1), vec![15; 7]);
        let wb1 = wbar_dense(1, p, 100).unwrap();
        assert_eq!(ones_count(&wb1), vec![20; 7]);
        for i in 0..=3 {
            let w = w_dense(i, p, 100).unwrap();
            let expected = binom(7 - i as i64, 3 - i as i64).unwrap();
            assert!(ones_count(&w).iter().all(|&c| Rational::from_int(c) == Rational::from(expected.clone())));
        }
        assert!(w_dense(4, p, 100).is_err());
    }
}
