//! Finite-dimensional unital associative algebras over an exact field:
//! structure constants, group algebras, tensor products, two-sided ideals,
//! quotients, and algebra-map verification.

use thiserror::Error;

use crate::exact::{unit_vector, vec_scale, Field, LinMap, Matrix, Scalar, Subspace};
use crate::monoid::FiniteMonoid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("multiplication is not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails at basis element {0}")]
    BadUnit(usize),
    #[error("structure data has inconsistent shape")]
    BadShape,
    #[error("operands live over different fields")]
    FieldMismatch,
}

/// A unital associative algebra given by structure constants
/// `e_i e_j = sum_k c[i][j][k] e_k` and a unit vector.
#[derive(Clone)]
pub struct FinDimAlgebra {
    field: Field,
    dim: usize,
    basis: Vec<String>,
    /// Flattened structure constants, index `(i * dim + j) * dim + k`.
    constants: Vec<Scalar>,
    /// Nonzero entries of each basis product, indexed by `i * dim + j`;
    /// group-algebra-like products are very sparse, and every multiplication
    /// routine walks this table instead of the dense cube.
    sparse: Vec<Vec<(usize, Scalar)>>,
    unit: Vec<Scalar>,
}

impl std::fmt::Debug for FinDimAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FinDimAlgebra(dim {}, basis [{}], over {})",
            self.dim,
            self.basis.join(", "),
            self.field
        )
    }
}

impl FinDimAlgebra {
    /// Validates associativity and the unit laws on all basis triples.
    pub fn new(
        field: Field,
        basis: Vec<String>,
        constants: Vec<Scalar>,
        unit: Vec<Scalar>,
    ) -> Result<FinDimAlgebra, AlgebraError> {
        let dim = basis.len();
        if constants.len() != dim * dim * dim || unit.len() != dim {
            return Err(AlgebraError::BadShape);
        }
        if constants.iter().chain(unit.iter()).any(|s| s.field() != field) {
            return Err(AlgebraError::FieldMismatch);
        }
        let a = FinDimAlgebra::from_parts(field, basis, constants, unit);
        for i in 0..dim {
            let e_i = unit_vector(field, dim, i);
            if a.mul_vec(&a.unit, &e_i) != e_i || a.mul_vec(&e_i, &a.unit) != e_i {
                return Err(AlgebraError::BadUnit(i));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = a.mul_basis(i, j);
                for k in 0..dim {
                    let e_k = unit_vector(field, dim, k);
                    let lhs = a.mul_vec(&ij, &e_k);
                    let jk = a.mul_basis(j, k);
                    let e_i = unit_vector(field, dim, i);
                    let rhs = a.mul_vec(&e_i, &jk);
                    if lhs != rhs {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(a)
    }

    /// Assembles the value and its sparse product table without validating
    /// the algebra laws; private to constructions that guarantee them.
    fn from_parts(
        field: Field,
        basis: Vec<String>,
        constants: Vec<Scalar>,
        unit: Vec<Scalar>,
    ) -> FinDimAlgebra {
        let dim = basis.len();
        let sparse = (0..dim * dim)
            .map(|p| {
                (0..dim)
                    .filter_map(|k| {
                        let c = &constants[p * dim + k];
                        (!c.is_zero()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        FinDimAlgebra {
            field,
            dim,
            basis,
            constants,
            sparse,
            unit,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Product of two basis elements as a coordinate vector.
    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim).map(|k| self.constant(i, j, k).clone()).collect()
    }

    /// Nonzero entries of a basis product.
    pub fn mul_basis_sparse(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.sparse[i * self.dim + j]
    }

    /// Bilinear product of coordinate vectors.
    pub fn mul_vec(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(u.len(), self.dim);
        assert_eq!(v.len(), self.dim);
        let mut out = vec![self.field.zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let c = &u[i] * &v[j];
                for (k, s) in self.mul_basis_sparse(i, j) {
                    out[*k] = &out[*k] + &(&c * s);
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `u`.
    pub fn left_mul_matrix(&self, u: &[Scalar]) -> Matrix {
        let cols = (0..self.dim)
            .map(|j| self.mul_vec(u, &unit_vector(self.field, self.dim, j)))
            .collect();
        Matrix::from_columns(self.field, self.dim, cols)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground_field(field: Field) -> FinDimAlgebra {
        FinDimAlgebra::new(
            field,
            vec!["1".to_string()],
            vec![field.one()],
            vec![field.one()],
        )
        .expect("the ground field is an algebra")
    }

    /// Group (monoid) algebra: basis indexed by the elements, products from the
    /// multiplication table.
    pub fn monoid_algebra(m: &FiniteMonoid, field: Field) -> FinDimAlgebra {
        let dim = m.size();
        let mut constants = vec![field.zero(); dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                constants[(i * dim + j) * dim + m.mul(i, j)] = field.one();
            }
        }
        let unit = unit_vector(field, dim, m.identity());
        FinDimAlgebra::new(field, m.labels().to_vec(), constants, unit)
            .expect("a monoid table yields an associative unital algebra")
    }

    /// Tensor product with componentwise multiplication; index `(i, j)` maps to
    /// `i * dim_b + j`. Associativity and the unit laws transfer from the
    /// factors, so the result skips re-validation.
    pub fn tensor(&self, b: &FinDimAlgebra) -> Result<FinDimAlgebra, AlgebraError> {
        if self.field != b.field {
            return Err(AlgebraError::FieldMismatch);
        }
        let (da, db) = (self.dim, b.dim);
        let dim = da * db;
        let basis = (0..da)
            .flat_map(|i| {
                (0..db).map(move |j| format!("{}(x){}", self.basis[i], b.basis[j]))
            })
            .collect();
        let mut constants = vec![self.field.zero(); dim * dim * dim];
        for i1 in 0..da {
            for j1 in 0..db {
                for i2 in 0..da {
                    for j2 in 0..db {
                        let row = i1 * db + j1;
                        let col = i2 * db + j2;
                        for (ka, ca) in self.mul_basis_sparse(i1, i2) {
                            for (kb, cb) in b.mul_basis_sparse(j1, j2) {
                                constants[(row * dim + col) * dim + ka * db + kb] = ca * cb;
                            }
                        }
                    }
                }
            }
        }
        let unit = crate::exact::vec_tensor(&self.unit, &b.unit, self.field);
        Ok(FinDimAlgebra::from_parts(self.field, basis, constants, unit))
    }

    /// Whether `f` preserves the unit and all basis products.
    pub fn is_algebra_map(&self, f: &LinMap, target: &FinDimAlgebra) -> bool {
        if f.cols() != self.dim || f.rows() != target.dim {
            return false;
        }
        if f.apply(&self.unit) != target.unit {
            return false;
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = f.apply(&self.mul_basis(i, j));
                let rhs = target.mul_vec(
                    &f.apply(&unit_vector(self.field, self.dim, i)),
                    &f.apply(&unit_vector(self.field, self.dim, j)),
                );
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Product of two vectors of `A (x) B` without materializing the tensor
/// algebra, used where the tensor algebra would be large.
pub fn tensor_mul(a: &FinDimAlgebra, b: &FinDimAlgebra, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    assert_eq!(u.len(), dim);
    assert_eq!(v.len(), dim);
    let field = a.field();
    let mut out = vec![field.zero(); dim];
    for p in 0..dim {
        if u[p].is_zero() {
            continue;
        }
        let (i1, j1) = (p / db, p % db);
        for q in 0..dim {
            if v[q].is_zero() {
                continue;
            }
            let (i2, j2) = (q / db, q % db);
            let c = &u[p] * &v[q];
            for (ka, ca) in a.mul_basis_sparse(i1, i2) {
                for (kb, cb) in b.mul_basis_sparse(j1, j2) {
                    let t = &(&c * ca) * cb;
                    out[ka * db + kb] = &out[ka * db + kb] + &t;
                }
            }
        }
    }
    out
}

/// A two-sided ideal: generators plus their closure under multiplication by
/// all basis elements on both sides.
#[derive(Debug, Clone)]
pub struct IdealPresentation {
    generators: Vec<Vec<Scalar>>,
    closure: Subspace,
}

impl IdealPresentation {
    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    pub fn closure(&self) -> &Subspace {
        &self.closure
    }

    pub fn dim(&self) -> usize {
        self.closure.dim()
    }
}

/// Smallest two-sided ideal containing the generators, by iterating one-sided
/// multiplications until the dimension stabilizes (at most `dim` rounds).
/// Only directions added in the previous round need their products rechecked:
/// products of older basis vectors already landed inside the span.
pub fn two_sided_ideal(a: &FinDimAlgebra, generators: &[Vec<Scalar>]) -> IdealPresentation {
    let field = a.field();
    let dim = a.dim();
    let mut closure = Subspace::from_generators(field, dim, generators.to_vec());
    let mut frontier: Vec<Vec<Scalar>> = closure.basis().to_vec();
    while !frontier.is_empty() {
        let mut escaped = Vec::new();
        for v in &frontier {
            for i in 0..dim {
                let e_i = unit_vector(field, dim, i);
                for p in [a.mul_vec(&e_i, v), a.mul_vec(v, &e_i)] {
                    if !closure.contains(&p) {
                        escaped.push(p);
                    }
                }
            }
        }
        if escaped.is_empty() {
            break;
        }
        let mut gens = closure.basis().to_vec();
        gens.extend(escaped);
        let bigger = Subspace::from_generators(field, dim, gens);
        frontier = bigger
            .basis()
            .iter()
            .filter(|b| !closure.contains(b))
            .cloned()
            .collect();
        closure = bigger;
    }
    IdealPresentation {
        generators: generators.to_vec(),
        closure,
    }
}

/// A quotient algebra together with the projection; the basis is the set of
/// non-pivot coordinates of the ideal, so projections are reproducible.
pub struct QuotientAlgebra {
    pub algebra: FinDimAlgebra,
    pub projection: LinMap,
}

pub fn quotient_algebra(
    a: &FinDimAlgebra,
    ideal: &IdealPresentation,
) -> Result<QuotientAlgebra, AlgebraError> {
    let field = a.field();
    let dim = a.dim();
    assert_eq!(ideal.closure().ambient_dim(), dim, "ideal of a different algebra");
    let pivots: Vec<usize> = ideal.closure().pivots().to_vec();
    let free: Vec<usize> = (0..dim).filter(|i| !pivots.contains(i)).collect();
    let qdim = free.len();

    // proj(v): reduce modulo the ideal (clearing pivot coordinates), keep the
    // free coordinates.
    let reduce = |v: &[Scalar]| -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in ideal.closure().basis().iter().zip(&pivots) {
            if !w[p].is_zero() {
                let c = w[p].clone();
                w = crate::exact::vec_sub(&w, &vec_scale(&c, row));
            }
        }
        free.iter().map(|&i| w[i].clone()).collect()
    };
    let proj_cols = (0..dim)
        .map(|i| reduce(&unit_vector(field, dim, i)))
        .collect();
    let projection = Matrix::from_columns(field, qdim, proj_cols);

    let basis = free.iter().map(|&i| format!("[{}]", a.basis_labels()[i])).collect();
    let mut constants = vec![field.zero(); qdim * qdim * qdim];
    for (qi, &i) in free.iter().enumerate() {
        for (qj, &j) in free.iter().enumerate() {
            let prod = reduce(&a.mul_basis(i, j));
            for (k, c) in prod.into_iter().enumerate() {
                constants[(qi * qdim + qj) * qdim + k] = c;
            }
        }
    }
    let unit = reduce(a.unit());
    let algebra = FinDimAlgebra::new(field, basis, constants, unit)?;
    Ok(QuotientAlgebra {
        algebra,
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Q
    }

    fn m2x2() -> FinDimAlgebra {
        // 2x2 matrix units e11, e12, e21, e22.
        let field = q();
        let dim = 4;
        let idx = |r: usize, c: usize| r * 2 + c;
        let mut constants = vec![field.zero(); dim * dim * dim];
        for r in 0..2 {
            for c in 0..2 {
                for r2 in 0..2 {
                    for c2 in 0..2 {
                        if c == r2 {
                            constants[(idx(r, c) * dim + idx(r2, c2)) * dim + idx(r, c2)] =
                                field.one();
                        }
                    }
                }
            }
        }
        let mut unit = vec![field.zero(); 4];
        unit[idx(0, 0)] = field.one();
        unit[idx(1, 1)] = field.one();
        FinDimAlgebra::new(
            field,
            vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()],
            constants,
            unit,
        )
        .unwrap()
    }

    #[test]
    fn ground_field_and_matrix_algebra_validate() {
        assert_eq!(FinDimAlgebra::ground_field(q()).dim(), 1);
        assert_eq!(m2x2().dim(), 4);
    }

    #[test]
    fn broken_associativity_reports_witness() {
        // Basis {1, a, b}: a·a = b, a·b = 1, b·a = a. Then (a·a)·a = a while
        // a·(a·a) = 1, so associativity fails at (a, a, a).
        let field = q();
        let dim = 3;
        let mut constants = vec![field.zero(); dim * dim * dim];
        let mut set = |i: usize, j: usize, k: usize| {
            constants[(i * dim + j) * dim + k] = field.one();
        };
        for i in 0..dim {
            set(0, i, i);
            if i != 0 {
                set(i, 0, i);
            }
        }
        set(1, 1, 2);
        set(1, 2, 0);
        set(2, 1, 1);
        let err = FinDimAlgebra::new(
            field,
            vec!["1".into(), "a".into(), "b".into()],
            constants,
            unit_vector(field, dim, 0),
        )
        .unwrap_err();
        assert_eq!(err, AlgebraError::NotAssociative(1, 1, 1));
    }

    #[test]
    fn broken_unit_reports_witness() {
        // x·1 = 0 violates the right unit law.
        let field = q();
        let dim = 2;
        let mut constants = vec![field.zero(); dim * dim * dim];
        let mut set = |i: usize, j: usize, k: usize| {
            constants[(i * dim + j) * dim + k] = field.one();
        };
        set(0, 0, 0);
        set(0, 1, 1);
        set(1, 1, 1);
        let err = FinDimAlgebra::new(
            field,
            vec!["1".into(), "x".into()],
            constants,
            unit_vector(field, dim, 0),
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::BadUnit(_)));
    }

    #[test]
    fn monoid_algebra_small_cases() {
        let k = FinDimAlgebra::monoid_algebra(&FiniteMonoid::trivial(), q());
        assert_eq!(k.dim(), 1);
        let c2 = FinDimAlgebra::monoid_algebra(&FiniteMonoid::cyclic(2).unwrap(), q());
        assert_eq!(c2.dim(), 2);
        // g^2 = 1.
        assert_eq!(c2.mul_basis(1, 1), c2.unit());
    }

    #[test]
    fn group_algebra_of_s3_is_noncommutative() {
        let s3 = FiniteMonoid::symmetric(3).unwrap();
        let a = FinDimAlgebra::monoid_algebra(&s3, q());
        assert_eq!(a.dim(), 6);
        let witness = (0..6).flat_map(|i| (0..6).map(move |j| (i, j))).find(|&(i, j)| {
            a.mul_basis(i, j) != a.mul_basis(j, i)
        });
        assert!(witness.is_some());
    }

    #[test]
    fn tensor_with_ground_field_is_identity() {
        let a = m2x2();
        let k = FinDimAlgebra::ground_field(q());
        let t = a.tensor(&k).unwrap();
        assert_eq!(t.dim(), a.dim());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert_eq!(t.mul_basis(i, j), a.mul_basis(i, j));
            }
        }
    }

    #[test]
    fn materialized_tensor_passes_full_validation() {
        // The tensor constructor skips the law checks; they must still hold.
        let c2 = FiniteMonoid::cyclic(2).unwrap();
        let a = FinDimAlgebra::monoid_algebra(&c2, q());
        let t = a.tensor(&m2x2()).unwrap();
        let constants = (0..t.dim() * t.dim() * t.dim())
            .map(|p| {
                t.constant(p / (t.dim() * t.dim()), p / t.dim() % t.dim(), p % t.dim())
                    .clone()
            })
            .collect();
        FinDimAlgebra::new(
            q(),
            t.basis_labels().to_vec(),
            constants,
            t.unit().to_vec(),
        )
        .unwrap();
    }

    #[test]
    fn tensor_is_associative_up_to_reindexing() {
        let c2 = FiniteMonoid::cyclic(2).unwrap();
        let c3 = FiniteMonoid::cyclic(3).unwrap();
        let a = FinDimAlgebra::monoid_algebra(&c2, q());
        let b = FinDimAlgebra::monoid_algebra(&c3, q());
        let c = m2x2();
        let left = a.tensor(&b).unwrap().tensor(&c).unwrap();
        let right = a.tensor(&b.tensor(&c).unwrap()).unwrap();
        // (i, j, k) flattens identically on both sides.
        for i in 0..left.dim() {
            for j in 0..left.dim() {
                assert_eq!(left.mul_basis(i, j), right.mul_basis(i, j));
            }
        }
        assert_eq!(left.unit(), right.unit());
    }

    #[test]
    fn tensor_of_group_algebras_is_commutative() {
        let c2 = FiniteMonoid::cyclic(2).unwrap();
        let a = FinDimAlgebra::monoid_algebra(&c2, q());
        let t = a.tensor(&a).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.unit(), &crate::exact::vec_tensor(a.unit(), a.unit(), q())[..]);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(t.mul_basis(i, j), t.mul_basis(j, i));
            }
        }
    }

    #[test]
    fn tensor_mul_agrees_with_materialized_tensor() {
        let c2 = FiniteMonoid::cyclic(2).unwrap();
        let a = FinDimAlgebra::monoid_algebra(&c2, q());
        let b = m2x2();
        let t = a.tensor(&b).unwrap();
        let u: Vec<Scalar> = (0..8).map(|i| q().integer(i as i64 - 3)).collect();
        let v: Vec<Scalar> = (0..8).map(|i| q().integer(2 * i as i64 + 1)).collect();
        assert_eq!(tensor_mul(&a, &b, &u, &v), t.mul_vec(&u, &v));
    }

    #[test]
    fn ideal_extremes() {
        let a = m2x2();
        let whole = two_sided_ideal(&a, &[a.unit().to_vec()]);
        assert_eq!(whole.dim(), 4);
        let zero = two_sided_ideal(&a, &[vec![q().zero(); 4]]);
        assert_eq!(zero.dim(), 0);
        // Matrix units generate the whole algebra (simple algebra).
        let e12 = unit_vector(q(), 4, 1);
        assert_eq!(two_sided_ideal(&a, &[e12]).dim(), 4);
    }

    #[test]
    fn ideal_closure_is_idempotent() {
        let c2 = FiniteMonoid::cyclic(2).unwrap();
        let a = FinDimAlgebra::monoid_algebra(&c2, q());
        // (1 - g) generates the augmentation-complement ideal.
        let gen = vec![q().one(), -&q().one()];
        let i1 = two_sided_ideal(&a, &[gen]);
        let i2 = two_sided_ideal(&a, i1.closure().basis());
        assert_eq!(i1.closure(), i2.closure());
    }

    #[test]
    fn quotient_by_zero_and_by_whole() {
        let a = m2x2();
        let zero = two_sided_ideal(&a, &[]);
        let quo = quotient_algebra(&a, &zero).unwrap();
        assert_eq!(quo.algebra.dim(), 4);
        assert!(a.is_algebra_map(&quo.projection, &quo.algebra));
        let whole = two_sided_ideal(&a, &[a.unit().to_vec()]);
        let collapsed = quotient_algebra(&a, &whole).unwrap();
        assert_eq!(collapsed.algebra.dim(), 0);
    }

    #[test]
    fn quotient_projection_is_an_algebra_map() {
        let c4 = FiniteMonoid::cyclic(4).unwrap();
        let a = FinDimAlgebra::monoid_algebra(&c4, q());
        // Ideal generated by g^2 - 1 gives the group algebra of Z/2.
        let mut gen = vec![q().zero(); 4];
        gen[2] = q().one();
        gen[0] = -&q().one();
        let ideal = two_sided_ideal(&a, &[gen]);
        let quo = quotient_algebra(&a, &ideal).unwrap();
        assert_eq!(quo.algebra.dim(), 4 - ideal.dim());
        assert!(a.is_algebra_map(&quo.projection, &quo.algebra));
    }

    #[test]
    fn algebra_map_rejections() {
        let a = FinDimAlgebra::ground_field(q());
        let zero_map = Matrix::zeros(q(), 1, 1);
        assert!(!a.is_algebra_map(&zero_map, &a));
        let id = Matrix::identity(q(), 1);
        assert!(a.is_algebra_map(&id, &a));
    }
}
