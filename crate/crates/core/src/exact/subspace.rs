//! Subspaces of `k^n` with a canonical RREF basis, so equality is structural.

use super::matrix::{vec_is_zero, vec_scale, vec_sub, Matrix};
use super::{ExactError, Field, Scalar};

/// A linear subspace in canonical form: basis rows are in reduced row-echelon
/// form with strictly increasing pivot columns, so two subspaces are equal as
/// sets iff they are equal as values.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonicalizes arbitrary generators (zero vectors allowed).
    pub fn from_generators(field: Field, ambient_dim: usize, gens: Vec<Vec<Scalar>>) -> Subspace {
        for g in &gens {
            assert_eq!(g.len(), ambient_dim, "generator of wrong length");
        }
        if gens.is_empty() {
            return Subspace {
                field,
                ambient_dim,
                basis: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let m = Matrix::from_rows(field, ambient_dim, gens);
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            field,
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace::from_generators(field, ambient_dim, Vec::new())
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        let gens = (0..ambient_dim)
            .map(|i| super::matrix::unit_vector(field, ambient_dim, i))
            .collect();
        Subspace::from_generators(field, ambient_dim, gens)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Residual of `v` after eliminating along the basis; zero iff `v` lies in
    /// the subspace.
    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim, "vector of wrong length");
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = w[p].clone();
                w = vec_sub(&w, &vec_scale(&c, row));
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the canonical basis; `None` when outside.
    pub fn coordinates_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !vec_is_zero(&self.reduce(v)) {
            return None;
        }
        // RREF basis: coordinate i is just the pivot-column entry.
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check_compatible(other)?;
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Ok(Subspace::from_generators(self.field, self.ambient_dim, gens))
    }

    /// Intersection via the kernel trick on stacked coefficient matrices.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check_compatible(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field, self.ambient_dim));
        }
        // Solve x A = y B: kernel of [A^T | -B^T] gives coefficient pairs.
        let a_t = Matrix::from_rows(self.field, self.ambient_dim, self.basis.clone()).transpose();
        let b_t = Matrix::from_rows(self.field, self.ambient_dim, other.basis.clone()).transpose();
        let neg_b_t = b_t.scale(&(-&self.field.one()));
        let stacked = a_t.hstack(&neg_b_t);
        let ker = stacked.kernel();
        let mut gens = Vec::new();
        for w in ker.basis() {
            let mut v = vec![self.field.zero(); self.ambient_dim];
            for (i, row) in self.basis.iter().enumerate() {
                if !w[i].is_zero() {
                    v = super::matrix::vec_add(&v, &vec_scale(&w[i], row));
                }
            }
            gens.push(v);
        }
        Ok(Subspace::from_generators(self.field, self.ambient_dim, gens))
    }

    /// Tensor with the full space `k^m` on the right: span of `b tensor e_j`.
    pub fn tensor_full(&self, m: usize) -> Subspace {
        let gens = self
            .basis
            .iter()
            .flat_map(|b| {
                (0..m).map(move |j| {
                    let mut v = vec![self.field.zero(); b.len() * m];
                    for (i, c) in b.iter().enumerate() {
                        v[i * m + j] = c.clone();
                    }
                    v
                })
            })
            .collect();
        Subspace::from_generators(self.field, self.ambient_dim * m, gens)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), ExactError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(ExactError::DimensionMismatch {
                expected: (self.ambient_dim, 1),
                got: (other.ambient_dim, 1),
            });
        }
        assert_eq!(self.field, other.field, "subspaces over different fields");
        Ok(())
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "Subspace dim {} of k^{} over {}",
            self.dim(),
            self.ambient_dim,
            self.field
        )?;
        for b in &self.basis {
            let row: Vec<String> = b.iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::matrix::unit_vector;
    use super::*;

    fn e(i: usize, n: usize) -> Vec<Scalar> {
        unit_vector(Field::Q, n, i)
    }

    #[test]
    fn axis_sum_and_intersection() {
        let a = Subspace::from_generators(Field::Q, 2, vec![e(0, 2)]);
        let b = Subspace::from_generators(Field::Q, 2, vec![e(1, 2)]);
        assert!(a.sum(&b).unwrap().is_full());
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        assert_eq!(a, a.clone());
    }

    #[test]
    fn equality_ignores_generator_order() {
        let v = vec![Field::Q.integer(1), Field::Q.integer(2)];
        let w = vec![Field::Q.integer(3), Field::Q.integer(4)];
        let a = Subspace::from_generators(Field::Q, 2, vec![v.clone(), w.clone()]);
        let b = Subspace::from_generators(Field::Q, 2, vec![w, v]);
        assert_eq!(a, b);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Subspace::full(Field::Q, 2);
        let b = Subspace::full(Field::Q, 3);
        assert!(a.sum(&b).is_err());
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn coordinates_in_canonical_basis() {
        let gen = vec![
            vec![Field::Q.integer(1), Field::Q.integer(1), Field::Q.integer(0)],
            vec![Field::Q.integer(0), Field::Q.integer(1), Field::Q.integer(1)],
        ];
        let s = Subspace::from_generators(Field::Q, 3, gen);
        let v = vec![Field::Q.integer(2), Field::Q.integer(3), Field::Q.integer(1)];
        let coords = s.coordinates_of(&v).unwrap();
        let mut rebuilt = vec![Field::Q.zero(); 3];
        for (c, b) in coords.iter().zip(s.basis()) {
            rebuilt = super::super::matrix::vec_add(&rebuilt, &vec_scale(c, b));
        }
        assert_eq!(rebuilt, v);
        assert!(s.coordinates_of(&e(0, 3)).is_none());
    }
}
