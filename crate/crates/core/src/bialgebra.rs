//! Finite-dimensional bialgebras: axiom verification, group bialgebras,
//! Sweedler's four-dimensional bialgebra, and dual-basis slicing of tensor
//! legs.
//!
//! Comultiplications are matrices `dim^2 x dim` under the column convention,
//! with tensor index `(i, j) -> i * dim + j`.

use thiserror::Error;

use crate::algebra::{AlgebraError, FinDimAlgebra};
use crate::exact::{unit_vector, Field, LinMap, Matrix, Scalar};
use crate::monoid::FiniteMonoid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BialgebraError {
    #[error("comultiplication is not coassociative at basis element {0}")]
    NotCoassociative(usize),
    #[error("counit law fails at basis element {0}")]
    BadCounit(usize),
    #[error("comultiplication is not multiplicative at basis pair ({0}, {1})")]
    DeltaNotMultiplicative(usize, usize),
    #[error("counit is not an algebra map")]
    CounitNotAlgebraMap,
    #[error("structure maps have inconsistent shapes")]
    BadShape,
    #[error("construction requires characteristic different from two")]
    CharTwo,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A bialgebra: an algebra with comultiplication and counit that are algebra
/// maps, coassociative and counital.
#[derive(Debug, Clone)]
pub struct Bialgebra {
    algebra: FinDimAlgebra,
    comult: LinMap,
    counit: LinMap,
}

impl Bialgebra {
    pub fn new(
        algebra: FinDimAlgebra,
        comult: LinMap,
        counit: LinMap,
    ) -> Result<Bialgebra, BialgebraError> {
        let d = algebra.dim();
        let field = algebra.field();
        if comult.rows() != d * d || comult.cols() != d || counit.rows() != 1 || counit.cols() != d
        {
            return Err(BialgebraError::BadShape);
        }
        let id = Matrix::identity(field, d);

        // Coassociativity: (Delta (x) id) Delta = (id (x) Delta) Delta.
        let lhs = &comult.kron(&id) * &comult;
        let rhs = &id.kron(&comult) * &comult;
        for i in 0..d {
            if lhs.column(i) != rhs.column(i) {
                return Err(BialgebraError::NotCoassociative(i));
            }
        }

        // Counit laws: (eps (x) id) Delta = id = (id (x) eps) Delta.
        let left = &counit.kron(&id) * &comult;
        let right = &id.kron(&counit) * &comult;
        for i in 0..d {
            let e_i = unit_vector(field, d, i);
            if left.column(i) != e_i || right.column(i) != e_i {
                return Err(BialgebraError::BadCounit(i));
            }
        }

        // Delta and eps are algebra maps into H (x) H and k.
        let hh = algebra.tensor(&algebra)?;
        for i in 0..d {
            for j in 0..d {
                let lhs = comult.apply(&algebra.mul_basis(i, j));
                let rhs = hh.mul_vec(&comult.column(i), &comult.column(j));
                if lhs != rhs {
                    return Err(BialgebraError::DeltaNotMultiplicative(i, j));
                }
            }
        }
        if comult.apply(algebra.unit()) != hh.unit() {
            return Err(BialgebraError::DeltaNotMultiplicative(0, 0));
        }
        let k = FinDimAlgebra::ground_field(field);
        if !algebra.is_algebra_map(&counit, &k) {
            return Err(BialgebraError::CounitNotAlgebraMap);
        }

        Ok(Bialgebra {
            algebra,
            comult,
            counit,
        })
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn comult(&self) -> &LinMap {
        &self.comult
    }

    pub fn counit(&self) -> &LinMap {
        &self.counit
    }

    /// Counit of a coordinate vector, as a scalar.
    pub fn counit_of(&self, v: &[Scalar]) -> Scalar {
        self.counit.apply(v).pop().expect("counit has one row")
    }

    /// Group bialgebra: every basis element grouplike.
    pub fn group_bialgebra(m: &FiniteMonoid, field: Field) -> Bialgebra {
        let algebra = FinDimAlgebra::monoid_algebra(m, field);
        let d = algebra.dim();
        let comult_cols = (0..d)
            .map(|g| {
                let mut v = vec![field.zero(); d * d];
                v[g * d + g] = field.one();
                v
            })
            .collect();
        let comult = Matrix::from_columns(field, d * d, comult_cols);
        let counit = Matrix::from_columns(field, 1, vec![vec![field.one()]; d]);
        Bialgebra::new(algebra, comult, counit).expect("group bialgebras satisfy the axioms")
    }

    /// Sweedler's four-dimensional bialgebra on the basis (1, g, x, gx), with
    /// g grouplike, g^2 = 1, x^2 = 0, xg = -gx, Delta(x) = x(x)1 + g(x)x and
    /// eps(x) = 0. Requires characteristic different from 2 for the relations
    /// to stay nondegenerate (and for the standard idempotents to exist).
    pub fn sweedler_h4(field: Field) -> Result<Bialgebra, BialgebraError> {
        if field.characteristic() == 2 {
            return Err(BialgebraError::CharTwo);
        }
        let d = 4;
        // Encode the basis element g^a x^b as index a + 2b, giving the order
        // (1, g, x, gx); the relation xg = -gx contributes the sign.
        let to_idx = |a: usize, b: usize| a + 2 * b;
        let mut constants = vec![field.zero(); d * d * d];
        for a1 in 0..2usize {
            for b1 in 0..2usize {
                for a2 in 0..2usize {
                    for b2 in 0..2usize {
                        if b1 + b2 >= 2 {
                            continue; // x^2 = 0
                        }
                        let sign = if b1 * a2 % 2 == 1 { -1 } else { 1 };
                        let i = to_idx(a1, b1);
                        let j = to_idx(a2, b2);
                        let k = to_idx((a1 + a2) % 2, b1 + b2);
                        constants[(i * d + j) * d + k] = field.integer(sign);
                    }
                }
            }
        }
        let algebra = FinDimAlgebra::new(
            field,
            vec!["1".into(), "g".into(), "x".into(), "gx".into()],
            constants,
            unit_vector(field, d, 0),
        )?;

        let t = |i: usize, j: usize| i * d + j;
        let mut cols = vec![vec![field.zero(); d * d]; d];
        cols[0][t(0, 0)] = field.one(); // Delta(1) = 1 (x) 1
        cols[1][t(1, 1)] = field.one(); // Delta(g) = g (x) g
        cols[2][t(2, 0)] = field.one(); // Delta(x) = x (x) 1 + g (x) x
        cols[2][t(1, 2)] = field.one();
        cols[3][t(3, 1)] = field.one(); // Delta(gx) = gx (x) g + 1 (x) gx
        cols[3][t(0, 3)] = field.one();
        let comult = Matrix::from_columns(field, d * d, cols);
        let counit = Matrix::from_columns(
            field,
            1,
            vec![
                vec![field.one()],
                vec![field.one()],
                vec![field.zero()],
                vec![field.zero()],
            ],
        );
        Bialgebra::new(algebra, comult, counit)
    }

    /// The idempotent `(1 + g + alpha·gx) / 2` of the Sweedler bialgebra.
    pub fn h4_idempotent(&self, alpha: &Scalar) -> Vec<Scalar> {
        assert_eq!(self.dim(), 4, "idempotent family lives in the Sweedler bialgebra");
        let field = self.field();
        let half = field
            .integer(2)
            .inv()
            .expect("characteristic is not two");
        vec![
            half.clone(),
            half.clone(),
            field.zero(),
            &half * alpha,
        ]
    }
}

/// Which tensor leg of `V1 (x) V2 (x) V3` to contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leg {
    First,
    Second,
    Third,
}

/// Applies a linear functional (a row vector) to one leg of a three-fold
/// tensor, returning the contraction in the remaining two legs.
pub fn contract_leg(
    v: &[Scalar],
    dims: (usize, usize, usize),
    leg: Leg,
    functional: &[Scalar],
    field: Field,
) -> Vec<Scalar> {
    let (d1, d2, d3) = dims;
    assert_eq!(v.len(), d1 * d2 * d3, "tensor shape mismatch");
    let fdim = match leg {
        Leg::First => d1,
        Leg::Second => d2,
        Leg::Third => d3,
    };
    assert_eq!(functional.len(), fdim, "functional shape mismatch");
    let out_len = d1 * d2 * d3 / fdim;
    let mut out = vec![field.zero(); out_len];
    for i in 0..d1 {
        for j in 0..d2 {
            for k in 0..d3 {
                let c = &v[(i * d2 + j) * d3 + k];
                if c.is_zero() {
                    continue;
                }
                let (fidx, oidx) = match leg {
                    Leg::First => (i, j * d3 + k),
                    Leg::Second => (j, i * d3 + k),
                    Leg::Third => (k, i * d2 + j),
                };
                if !functional[fidx].is_zero() {
                    out[oidx] = &out[oidx] + &(c * &functional[fidx]);
                }
            }
        }
    }
    out
}

/// Contracts one leg with the dual-basis functional `e_k^*`.
pub fn slice(
    v: &[Scalar],
    dims: (usize, usize, usize),
    leg: Leg,
    k: usize,
    field: Field,
) -> Vec<Scalar> {
    let fdim = match leg {
        Leg::First => dims.0,
        Leg::Second => dims.1,
        Leg::Third => dims.2,
    };
    contract_leg(v, dims, leg, &unit_vector(field, fdim, k), field)
}
