//! Partial comodule algebras over a bialgebra: axiom verification, the
//! geometric realization through the idempotent `e' = 1(x)1 - delta(1)`, the
//! globalization as an equalizer subspace of `A (x) H` with its pushout
//! certificate, the enveloping coaction built from dual-basis slices, and the
//! comparison embedding of the envelope into the globalization.
//!
//! Everything is realized in exact linear algebra: coactions are matrices,
//! the globalization is a kernel, and every theorem invoked along the way is
//! re-checked numerically instead of trusted.

use thiserror::Error;

use crate::algebra::{
    quotient_algebra, tensor_mul, two_sided_ideal, AlgebraError, FinDimAlgebra,
    IdealPresentation,
};
use crate::bialgebra::{slice, Bialgebra, BialgebraError, Leg};
use crate::exact::{
    unit_vector, vec_sub, vec_tensor, Field, LinMap, Matrix, Scalar, Subspace,
};
use crate::monoid::{quotient_group, FiniteMonoid, MonoidError, SubgroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcaError {
    #[error("coaction is not multiplicative at basis pair ({0}, {1})")]
    NotMultiplicative(usize, usize),
    #[error("coaction is not counital at basis element {0}")]
    NotCounital(usize),
    #[error("coaction is not weakly coassociative at basis element {0}")]
    NotWeaklyCoassociative(usize),
    #[error("e' is not idempotent (axiom verification defect)")]
    NotIdempotent,
    #[error("equalizer is not a unital subalgebra (library defect)")]
    NotSubalgebra,
    #[error("subspace is not stable under the extended coaction (library defect)")]
    NotCoactionStable,
    #[error("pushout certificate failed: {0}")]
    PushoutFailed(String),
    #[error("envelope axiom ({axiom}) failed: {witness}")]
    EnvelopeAxiomFailed { axiom: char, witness: String },
    #[error("comparison identity {identity} failed")]
    ComparisonFailed { identity: String },
    #[error("field characteristic divides the subgroup order")]
    CharDividesN,
    #[error("coaction matrix has the wrong shape")]
    BadShape,
    #[error("algebra and bialgebra live over different fields")]
    FieldMismatch,
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Bialgebra(#[from] BialgebraError),
}

/// A verified algebraic partial comodule algebra: the coaction is
/// multiplicative, counital, and weakly coassociative (the coassociator is
/// twisted by left multiplication with `delta(1) (x) 1`).
#[derive(Debug, Clone)]
pub struct AlgebraicPca {
    algebra: FinDimAlgebra,
    bialgebra: Bialgebra,
    coaction: LinMap,
}

impl AlgebraicPca {
    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.algebra
    }

    pub fn bialgebra(&self) -> &Bialgebra {
        &self.bialgebra
    }

    pub fn coaction(&self) -> &LinMap {
        &self.coaction
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    /// `delta(1_A)` in `A (x) H` coordinates.
    pub fn delta_unit(&self) -> Vec<Scalar> {
        self.coaction.apply(self.algebra.unit())
    }
}

/// Verifies the three axioms as matrix identities on basis vectors.
pub fn verify_algebraic_pca(
    algebra: FinDimAlgebra,
    bialgebra: Bialgebra,
    coaction: LinMap,
) -> Result<AlgebraicPca, PcaError> {
    let field = algebra.field();
    if bialgebra.field() != field {
        return Err(PcaError::FieldMismatch);
    }
    let (da, dh) = (algebra.dim(), bialgebra.dim());
    if coaction.rows() != da * dh || coaction.cols() != da {
        return Err(PcaError::BadShape);
    }
    let ah = algebra.tensor(bialgebra.algebra())?;

    // (ii) counitality first: it pins the normalization.
    let a_eps = Matrix::identity(field, da).kron(bialgebra.counit());
    let counit_composite = &a_eps * &coaction;
    for i in 0..da {
        if counit_composite.column(i) != unit_vector(field, da, i) {
            return Err(PcaError::NotCounital(i));
        }
    }

    // (i) multiplicativity in A (x) H.
    for i in 0..da {
        for j in 0..da {
            let lhs = coaction.apply(&algebra.mul_basis(i, j));
            let rhs = ah.mul_vec(&coaction.column(i), &coaction.column(j));
            if lhs != rhs {
                return Err(PcaError::NotMultiplicative(i, j));
            }
        }
    }

    // (iii) weak coassociativity in A (x) H (x) H.
    let id_h = Matrix::identity(field, dh);
    let lhs_mat = &coaction.kron(&id_h) * &coaction;
    let extend = Matrix::identity(field, da).kron(bialgebra.comult());
    let rhs_pre = &extend * &coaction;
    let w = vec_tensor(
        &coaction.apply(algebra.unit()),
        bialgebra.algebra().unit(),
        field,
    );
    for i in 0..da {
        let rhs = tensor_mul(&ah, bialgebra.algebra(), &w, &rhs_pre.column(i));
        if lhs_mat.column(i) != rhs {
            return Err(PcaError::NotWeaklyCoassociative(i));
        }
    }

    Ok(AlgebraicPca {
        algebra,
        bialgebra,
        coaction,
    })
}

/// The geometric realization: the idempotent `e'`, the quotient `A (x) H /
/// <e'>` with projection, and the induced structure map.
#[derive(Debug, Clone)]
pub struct GeometricPca {
    pub pca: AlgebraicPca,
    /// The tensor algebra `A (x) H`, materialized.
    pub ah: FinDimAlgebra,
    pub e_prime: Vec<Scalar>,
    pub ideal: IdealPresentation,
    pub a_bullet_h: FinDimAlgebra,
    /// Projection `A (x) H -> A • H`.
    pub pi: LinMap,
    /// `pi ∘ delta : A -> A • H`.
    pub rho: LinMap,
}

pub fn geometrize(pca: AlgebraicPca) -> Result<GeometricPca, PcaError> {
    let field = pca.field();
    let ah = pca.algebra().tensor(pca.bialgebra().algebra())?;
    let unit_ah = ah.unit().to_vec();
    let e_prime = vec_sub(&unit_ah, &pca.delta_unit());
    if ah.mul_vec(&e_prime, &e_prime) != e_prime {
        return Err(PcaError::NotIdempotent);
    }
    let ideal = two_sided_ideal(&ah, std::slice::from_ref(&e_prime));
    let quo = quotient_algebra(&ah, &ideal)?;
    let rho = &quo.projection * pca.coaction();
    assert!(
        pca.algebra().is_algebra_map(&rho, &quo.algebra),
        "the induced structure map must be an algebra morphism"
    );
    let _ = field;
    Ok(GeometricPca {
        pca,
        ah,
        e_prime,
        ideal,
        a_bullet_h: quo.algebra,
        pi: quo.projection,
        rho,
    })
}

/// A comodule algebra realized as a subspace of `A (x) H`: its canonical
/// basis, its own multiplication, the restricted coaction in subspace
/// coordinates, and the inclusion back into `A (x) H`.
#[derive(Debug, Clone)]
pub struct ComoduleAlgebra {
    pub subspace: Subspace,
    pub algebra: FinDimAlgebra,
    /// Coaction `V -> V (x) H` in subspace coordinates.
    pub coaction: LinMap,
    /// Inclusion `V -> A (x) H`; columns are the canonical basis.
    pub inclusion: LinMap,
}

impl ComoduleAlgebra {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

/// Equips a subspace of `A (x) H` with its induced algebra and comodule
/// structure, verifying that it is a unital subalgebra stable under
/// `A (x) Delta` and that the global comodule-algebra axioms hold on it.
fn comodule_from_subspace(
    pca: &AlgebraicPca,
    ah: &FinDimAlgebra,
    subspace: Subspace,
    name: &str,
) -> Result<ComoduleAlgebra, PcaError> {
    let field = pca.field();
    let (da, dh) = (pca.algebra().dim(), pca.bialgebra().dim());
    let dim = subspace.dim();

    if !subspace.contains(ah.unit()) {
        return Err(PcaError::NotSubalgebra);
    }
    let basis = subspace.basis().to_vec();
    let unit = subspace
        .coordinates_of(ah.unit())
        .ok_or(PcaError::NotSubalgebra)?;
    let mut constants = vec![field.zero(); dim * dim * dim];
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            let prod = ah.mul_vec(u, v);
            let coords = subspace
                .coordinates_of(&prod)
                .ok_or(PcaError::NotSubalgebra)?;
            for (k, c) in coords.into_iter().enumerate() {
                constants[(i * dim + j) * dim + k] = c;
            }
        }
    }
    let labels = (0..dim).map(|i| format!("{name}{i}")).collect();
    let algebra = FinDimAlgebra::new(field, labels, constants, unit)?;

    // Restricted coaction: (A (x) Delta) must send the subspace into
    // subspace (x) H. Slicing off the last tensor leg reduces membership and
    // coordinates to the subspace itself.
    let extend = Matrix::identity(field, da).kron(pca.bialgebra().comult());
    let mut co_cols = Vec::with_capacity(dim);
    for b in &basis {
        let z = extend.apply(b);
        let mut coords = vec![field.zero(); dim * dh];
        for k in 0..dh {
            let z_k = slice(&z, (da, dh, dh), Leg::Third, k, field);
            let c = subspace
                .coordinates_of(&z_k)
                .ok_or(PcaError::NotCoactionStable)?;
            for (r, v) in c.into_iter().enumerate() {
                coords[r * dh + k] = v;
            }
        }
        co_cols.push(coords);
    }
    let coaction = Matrix::from_columns(field, dim * dh, co_cols);

    // Global comodule-algebra axioms hold on the result; re-check them.
    let id_v = Matrix::identity(field, dim);
    let counit_law = &id_v.kron(pca.bialgebra().counit()) * &coaction;
    assert_eq!(
        counit_law,
        id_v,
        "restricted coaction must be counital"
    );
    let id_h = Matrix::identity(field, dh);
    let coassoc_l = &coaction.kron(&id_h) * &coaction;
    let coassoc_r = &id_v.kron(pca.bialgebra().comult()) * &coaction;
    assert_eq!(
        coassoc_l, coassoc_r,
        "restricted coaction must be coassociative"
    );
    for i in 0..dim {
        for j in 0..dim {
            let lhs = coaction.apply(&algebra.mul_basis(i, j));
            let rhs = tensor_mul(
                &algebra,
                pca.bialgebra().algebra(),
                &coaction.column(i),
                &coaction.column(j),
            );
            assert_eq!(lhs, rhs, "restricted coaction must be multiplicative");
        }
    }

    let inclusion = Matrix::from_columns(field, da * dh, basis);
    Ok(ComoduleAlgebra {
        subspace,
        algebra,
        coaction,
        inclusion,
    })
}

/// The globalization candidate: the equalizer of `rho (x) H` and
/// `(pi (x) H) ∘ (A (x) Delta)` inside `A (x) H`, computed as a kernel and
/// then upgraded to a comodule algebra.
pub fn compute_y(g: &GeometricPca) -> Result<ComoduleAlgebra, PcaError> {
    let field = g.pca.field();
    let dh = g.pca.bialgebra().dim();
    let da = g.pca.algebra().dim();
    let id_h = Matrix::identity(field, dh);
    let map1 = g.rho.kron(&id_h);
    let map2 = &g.pi.kron(&id_h) * &Matrix::identity(field, da).kron(g.pca.bialgebra().comult());
    let kernel = (&map1 - &map2).kernel();
    comodule_from_subspace(&g.pca, &g.ah, kernel, "y")
}

/// Outcome of the pushout criterion for the equalizer to be the globalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushoutReport {
    /// `ker(pi)` equals the two-sided ideal generated by the counit-killed
    /// part of the equalizer.
    pub kernel_is_generated: bool,
    /// The counit leg restricted to the equalizer surjects onto the base.
    pub restriction_surjective: bool,
    pub ideal_dim: usize,
    pub kernel_dim: usize,
}

impl PushoutReport {
    pub fn pass(&self) -> bool {
        self.kernel_is_generated && self.restriction_surjective
    }
}

/// Checks that the projection kernel is generated, as a two-sided ideal, by
/// the elements of the equalizer killed by the counit leg, and that the counit
/// leg restricted to the equalizer is surjective.
pub fn check_pushout(g: &GeometricPca, y: &ComoduleAlgebra) -> PushoutReport {
    let field = g.pca.field();
    let da = g.pca.algebra().dim();
    let ker_pi = g.pi.kernel();
    let a_eps = Matrix::identity(field, da).kron(g.pca.bialgebra().counit());
    let killed = y
        .subspace
        .intersect(&a_eps.kernel())
        .expect("same ambient space");
    let generated = two_sided_ideal(&g.ah, killed.basis());
    let kernel_is_generated = *generated.closure() == ker_pi;
    let restricted = &a_eps * &y.inclusion;
    let restriction_surjective = restricted.rank() == da;
    PushoutReport {
        kernel_is_generated,
        restriction_surjective,
        ideal_dim: generated.dim(),
        kernel_dim: ker_pi.dim(),
    }
}

/// The full globalization pipeline with its certificates.
#[derive(Debug, Clone)]
pub struct PcaGlobalization {
    pub geometric: GeometricPca,
    pub y: ComoduleAlgebra,
    pub pushout: PushoutReport,
    /// `(A (x) eps)` restricted to the equalizer, in its coordinates.
    pub epsilon_a: LinMap,
    /// Corestriction of the coaction to the equalizer.
    pub vartheta: LinMap,
}

/// Globalizes a verified partial comodule algebra. The pushout certificate is
/// guaranteed to pass; a failure is reported, not patched. Additionally
/// verifies the two numerical lemmas behind the guarantee: the defect of `e'`
/// under the two extended maps lies in `ker(pi) (x) H`, and the coaction
/// factors through the equalizer.
pub fn globalize_pca(pca: AlgebraicPca) -> Result<PcaGlobalization, PcaError> {
    let geometric = geometrize(pca)?;
    let y = compute_y(&geometric)?;
    let pushout = check_pushout(&geometric, &y);
    if !pushout.pass() {
        return Err(PcaError::PushoutFailed(format!(
            "kernel generated: {}, restriction surjective: {}",
            pushout.kernel_is_generated, pushout.restriction_surjective
        )));
    }
    let pca = &geometric.pca;
    let field = pca.field();
    let (da, dh) = (pca.algebra().dim(), pca.bialgebra().dim());
    let id_h = Matrix::identity(field, dh);

    // Lemma 1: (delta (x) H - A (x) Delta)(e') lands in ker(pi) (x) H,
    // hence e' lies in the equalizer.
    let lhs = pca.coaction().kron(&id_h).apply(&geometric.e_prime);
    let rhs = Matrix::identity(field, da)
        .kron(pca.bialgebra().comult())
        .apply(&geometric.e_prime);
    let defect = vec_sub(&lhs, &rhs);
    let ker_tensor_h = geometric.pi.kernel().tensor_full(dh);
    assert!(
        ker_tensor_h.contains(&defect),
        "the coassociativity defect of e' must lie in ker(pi) (x) H"
    );
    assert!(
        y.subspace.contains(&geometric.e_prime),
        "e' must lie in the equalizer"
    );

    // Lemma 2: the coaction factors through the equalizer.
    let mut theta_cols = Vec::with_capacity(da);
    for i in 0..da {
        let col = pca.coaction().column(i);
        let coords = y
            .subspace
            .coordinates_of(&col)
            .expect("the coaction factors through the equalizer");
        theta_cols.push(coords);
    }
    let vartheta = Matrix::from_columns(field, y.dim(), theta_cols);
    assert_eq!(
        &y.inclusion * &vartheta,
        *pca.coaction(),
        "inclusion ∘ vartheta must recover the coaction"
    );

    let epsilon_a = &Matrix::identity(field, da).kron(pca.bialgebra().counit()) * &y.inclusion;
    assert_eq!(
        &epsilon_a * &vartheta,
        Matrix::identity(field, da),
        "counitality transports through the equalizer"
    );

    Ok(PcaGlobalization {
        geometric,
        y,
        pushout,
        epsilon_a,
        vartheta,
    })
}

/// The enveloping coaction: the smallest unital subalgebra of `A (x) H` that
/// contains the coaction image and is stable under the extended coaction,
/// together with its structure maps.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub b: ComoduleAlgebra,
    /// Corestriction of the coaction: `A -> B`.
    pub theta: LinMap,
    /// `theta(1)` in `A (x) H` coordinates.
    pub e: Vec<Scalar>,
    /// Splitting `B -> A`.
    pub p: LinMap,
}

/// Builds the envelope: first the span of all dual-basis slices of the
/// extended coaction (the subcomodule generated by the coaction image), then
/// the multiplicative closure, then the structure maps; the envelope axioms
/// are verified before returning.
pub fn enveloping_coaction(pca: &AlgebraicPca) -> Result<Envelope, PcaError> {
    let field = pca.field();
    let (da, dh) = (pca.algebra().dim(), pca.bialgebra().dim());
    let ah = pca.algebra().tensor(pca.bialgebra().algebra())?;
    let extend = Matrix::identity(field, da).kron(pca.bialgebra().comult());

    // Slice span of the coaction image, plus the unit of A (x) H.
    let mut gens = vec![ah.unit().to_vec()];
    for i in 0..da {
        let z = extend.apply(&pca.coaction().column(i));
        for k in 0..dh {
            gens.push(slice(&z, (da, dh, dh), Leg::Third, k, field));
        }
    }
    let span = multiplicative_closure(&ah, Subspace::from_generators(field, da * dh, gens));

    let b = comodule_from_subspace(pca, &ah, span, "b")?;

    // theta: corestriction of the coaction (the slice span contains its image
    // by the counit law).
    let mut theta_cols = Vec::with_capacity(da);
    for i in 0..da {
        let coords = b
            .subspace
            .coordinates_of(&pca.coaction().column(i))
            .ok_or(PcaError::EnvelopeAxiomFailed {
                axiom: 'b',
                witness: format!("coaction image escapes the envelope at basis {i}"),
            })?;
        theta_cols.push(coords);
    }
    let theta = Matrix::from_columns(field, b.dim(), theta_cols);
    let e = pca.delta_unit();

    // p(a (x) h) = 1_[0] a eps(1_[1] h), assembled columnwise on A (x) H and
    // restricted to the envelope.
    let p_full = projection_matrix(pca)?;
    let p = &p_full * &b.inclusion;

    verify_envelope_axioms(pca, &ah, &b, &theta, &e, &p)?;

    Ok(Envelope { b, theta, e, p })
}

/// Closure of a subspace under pairwise products; products touching only the
/// settled part of the basis never escape it, so each round multiplies the
/// newly added directions against everything.
fn multiplicative_closure(ah: &FinDimAlgebra, start: Subspace) -> Subspace {
    let field = start.field();
    let ambient = start.ambient_dim();
    let mut span = start;
    let mut frontier: Vec<Vec<Scalar>> = span.basis().to_vec();
    while !frontier.is_empty() {
        let mut escaped = Vec::new();
        for u in &frontier {
            for v in span.basis() {
                for p in [ah.mul_vec(u, v), ah.mul_vec(v, u)] {
                    if !span.contains(&p) {
                        escaped.push(p);
                    }
                }
            }
        }
        if escaped.is_empty() {
            break;
        }
        let mut gens = span.basis().to_vec();
        gens.extend(escaped);
        let bigger = Subspace::from_generators(field, ambient, gens);
        frontier = bigger
            .basis()
            .iter()
            .filter(|b| !span.contains(b))
            .cloned()
            .collect();
        span = bigger;
    }
    span
}

/// The matrix of `a (x) h -> 1_[0] a eps(1_[1] h)` on all of `A (x) H`.
fn projection_matrix(pca: &AlgebraicPca) -> Result<LinMap, PcaError> {
    let field = pca.field();
    let (da, dh) = (pca.algebra().dim(), pca.bialgebra().dim());
    let delta_one = pca.delta_unit();
    let mut cols = Vec::with_capacity(da * dh);
    for i in 0..da {
        for j in 0..dh {
            let mut acc = vec![field.zero(); da];
            for r in 0..da {
                for s in 0..dh {
                    let d = &delta_one[r * dh + s];
                    if d.is_zero() {
                        continue;
                    }
                    let prod_a = pca.algebra().mul_basis(r, i);
                    let eps = pca
                        .bialgebra()
                        .counit_of(&pca.bialgebra().algebra().mul_basis(s, j));
                    if eps.is_zero() {
                        continue;
                    }
                    let c = d * &eps;
                    for (k, v) in prod_a.iter().enumerate() {
                        if !v.is_zero() {
                            acc[k] = &acc[k] + &(&c * v);
                        }
                    }
                }
            }
            cols.push(acc);
        }
    }
    Ok(Matrix::from_columns(field, da, cols))
}

fn verify_envelope_axioms(
    pca: &AlgebraicPca,
    ah: &FinDimAlgebra,
    b: &ComoduleAlgebra,
    theta: &LinMap,
    e: &[Scalar],
    p: &LinMap,
) -> Result<(), PcaError> {
    let field = pca.field();
    let (da, dh) = (pca.algebra().dim(), pca.bialgebra().dim());

    // (a) theta(A) is the unital right ideal e·B, with e acting as its left
    // identity.
    let theta_image = Subspace::from_generators(
        field,
        da * dh,
        (0..da).map(|i| pca.coaction().column(i)).collect(),
    );
    let e_times_b: Vec<Vec<Scalar>> = b
        .subspace
        .basis()
        .iter()
        .map(|v| ah.mul_vec(e, v))
        .collect();
    let e_b = Subspace::from_generators(field, da * dh, e_times_b);
    if e_b != theta_image {
        return Err(PcaError::EnvelopeAxiomFailed {
            axiom: 'a',
            witness: format!("e·B has dim {}, theta(A) has dim {}", e_b.dim(), theta_image.dim()),
        });
    }
    for v in theta_image.basis() {
        for u in b.subspace.basis() {
            if !theta_image.contains(&ah.mul_vec(v, u)) {
                return Err(PcaError::EnvelopeAxiomFailed {
                    axiom: 'a',
                    witness: "theta(A) is not a right ideal".to_string(),
                });
            }
        }
        if ah.mul_vec(e, v) != *v {
            return Err(PcaError::EnvelopeAxiomFailed {
                axiom: 'a',
                witness: "e does not act as identity on theta(A)".to_string(),
            });
        }
    }

    // (b) B is generated by theta(A) as a comodule algebra: alternate slice
    // spans and multiplicative closure from the image, plus the unit.
    let extend = Matrix::identity(field, da).kron(pca.bialgebra().comult());
    let mut gen = theta_image.sum(&Subspace::from_generators(
        field,
        da * dh,
        vec![ah.unit().to_vec()],
    ))
    .expect("same ambient");
    loop {
        let mut next = gen.basis().to_vec();
        for v in gen.basis() {
            let z = extend.apply(v);
            for k in 0..dh {
                next.push(slice(&z, (da, dh, dh), Leg::Third, k, field));
            }
        }
        for u in gen.basis() {
            for v in gen.basis() {
                next.push(ah.mul_vec(u, v));
            }
        }
        let bigger = Subspace::from_generators(field, da * dh, next);
        if bigger.dim() == gen.dim() {
            break;
        }
        gen = bigger;
    }
    if gen != b.subspace {
        return Err(PcaError::EnvelopeAxiomFailed {
            axiom: 'b',
            witness: format!(
                "comodule-algebra closure of theta(A) has dim {}, envelope has dim {}",
                gen.dim(),
                b.dim()
            ),
        });
    }

    // (c) (theta (x) H) ∘ delta = (e (x) 1) · (delta_B ∘ theta), checked in
    // A (x) H (x) H through the inclusion.
    let id_h = Matrix::identity(field, dh);
    let lhs = &pca.coaction().kron(&id_h) * pca.coaction();
    let w = vec_tensor(e, pca.bialgebra().algebra().unit(), field);
    let incl_tensor_h = b.inclusion.kron(&id_h);
    let delta_b_theta = &(&incl_tensor_h * &b.coaction) * theta;
    for i in 0..da {
        let rhs = tensor_mul(ah, pca.bialgebra().algebra(), &w, &delta_b_theta.column(i));
        if lhs.column(i) != rhs {
            return Err(PcaError::EnvelopeAxiomFailed {
                axiom: 'c',
                witness: format!("identity fails at basis element {i}"),
            });
        }
    }

    // Splitting identities: p ∘ theta = id, theta ∘ p = left multiplication
    // by e on the envelope.
    if (p * theta) != Matrix::identity(field, da) {
        return Err(PcaError::EnvelopeAxiomFailed {
            axiom: 'a',
            witness: "p ∘ theta is not the identity".to_string(),
        });
    }
    let theta_p = &b.inclusion * &(theta * p);
    for (j, v) in b.subspace.basis().iter().enumerate() {
        if theta_p.column(j) != ah.mul_vec(e, v) {
            return Err(PcaError::EnvelopeAxiomFailed {
                axiom: 'a',
                witness: "theta ∘ p is not left multiplication by e".to_string(),
            });
        }
    }
    Ok(())
}

/// Comparison of the envelope with the globalization: the canonical map
/// `(p (x) H) ∘ delta_B` coincides with the inclusion of the envelope and
/// embeds it into the equalizer as a comodule algebra.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub globalization: PcaGlobalization,
    pub envelope: Envelope,
    /// `(p (x) H) ∘ delta_B : B -> A (x) H`.
    pub varkappa: LinMap,
    /// The same map in equalizer coordinates.
    pub j: LinMap,
    pub dim_b: usize,
    pub dim_y: usize,
    /// Whether the inclusion of the envelope into the globalization is proper.
    pub strict: bool,
}

pub fn compare_envelope_globalization(pca: AlgebraicPca) -> Result<ComparisonReport, PcaError> {
    let envelope = enveloping_coaction(&pca)?;
    let globalization = globalize_pca(pca)?;
    let pca = &globalization.geometric.pca;
    let field = pca.field();
    let dh = pca.bialgebra().dim();
    let id_h = Matrix::identity(field, dh);

    let b = &envelope.b;
    let varkappa = &envelope.p.kron(&id_h) * &b.coaction;
    // On the coaction image the map is the inclusion...
    if &varkappa * &envelope.theta != *pca.coaction() {
        return Err(PcaError::ComparisonFailed {
            identity: "varkappa ∘ theta = coaction".to_string(),
        });
    }
    // ...and therefore on the whole envelope.
    if varkappa != b.inclusion {
        return Err(PcaError::ComparisonFailed {
            identity: "varkappa = inclusion of the envelope".to_string(),
        });
    }

    // j: corestriction to the equalizer.
    let y = &globalization.y;
    let mut j_cols = Vec::with_capacity(b.dim());
    for c in 0..b.dim() {
        let col = varkappa.column(c);
        let coords = y
            .subspace
            .coordinates_of(&col)
            .ok_or(PcaError::ComparisonFailed {
                identity: "image of varkappa lies in the equalizer".to_string(),
            })?;
        j_cols.push(coords);
    }
    let j = Matrix::from_columns(field, y.dim(), j_cols);

    if j.rank() != b.dim() {
        return Err(PcaError::ComparisonFailed {
            identity: "j is injective".to_string(),
        });
    }
    if !b.algebra.is_algebra_map(&j, &y.algebra) {
        return Err(PcaError::ComparisonFailed {
            identity: "j is an algebra map".to_string(),
        });
    }
    // j intertwines the coactions.
    if &y.coaction * &j != &j.kron(&id_h) * &b.coaction {
        return Err(PcaError::ComparisonFailed {
            identity: "j is a comodule map".to_string(),
        });
    }
    // (I) eps_A ∘ j = p.
    if &globalization.epsilon_a * &j != envelope.p {
        return Err(PcaError::ComparisonFailed {
            identity: "eps_A ∘ j = p".to_string(),
        });
    }
    // (II) kappa ∘ j = varkappa.
    if &y.inclusion * &j != varkappa {
        return Err(PcaError::ComparisonFailed {
            identity: "kappa ∘ j = varkappa".to_string(),
        });
    }

    let dim_b = b.dim();
    let dim_y = y.dim();
    Ok(ComparisonReport {
        globalization,
        envelope,
        varkappa,
        j,
        dim_b,
        dim_y,
        strict: dim_b < dim_y,
    })
}

/// Conjugates the coaction by an algebra automorphism of the base:
/// `delta' = (T^{-1} (x) id) ∘ delta ∘ T`. The result satisfies the axioms
/// whenever the input does and is re-verified.
pub fn conjugate_by_automorphism(
    pca: &AlgebraicPca,
    t: &LinMap,
    t_inv: &LinMap,
) -> Result<AlgebraicPca, PcaError> {
    let field = pca.field();
    let da = pca.algebra().dim();
    assert!(
        pca.algebra().is_algebra_map(t, pca.algebra()),
        "conjugation needs an algebra automorphism"
    );
    assert_eq!(&(t * t_inv), &Matrix::identity(field, da), "inverse pair");
    let id_h = Matrix::identity(field, pca.bialgebra().dim());
    let coaction = &(&t_inv.kron(&id_h) * pca.coaction()) * t;
    verify_algebraic_pca(pca.algebra().clone(), pca.bialgebra().clone(), coaction)
}

/// The group-algebra fixture: a finite group with a normal subgroup of order
/// invertible in the field; the base is spanned by the translates of the
/// subgroup average, one per right coset, and the coaction is diagonal on
/// that basis.
pub fn fixture_integral_coaction(
    group: &FiniteMonoid,
    normal_members: &[usize],
    field: Field,
) -> Result<AlgebraicPca, PcaError> {
    let n = SubgroupSpec::new(group, normal_members)?;
    if field.char_divides(n.order() as u64) {
        return Err(PcaError::CharDividesN);
    }
    let q = quotient_group(group, &n)?;
    let h = Bialgebra::group_bialgebra(group, field);
    let dg = group.size();

    // t = |N|^{-1} sum of the subgroup elements, a central idempotent and an
    // integral for the subgroup; all three properties are re-checked.
    let inv_order = field.integer(n.order() as i64).inv().expect("char check");
    let mut t = vec![field.zero(); dg];
    for &m in n.members() {
        t[m] = inv_order.clone();
    }
    let hg = h.algebra();
    assert_eq!(hg.mul_vec(&t, &t), t, "t must be idempotent");
    for g in 0..dg {
        let e_g = unit_vector(field, dg, g);
        assert_eq!(
            hg.mul_vec(&t, &e_g),
            hg.mul_vec(&e_g, &t),
            "t must be central"
        );
    }
    for &m in n.members() {
        let e_m = unit_vector(field, dg, m);
        assert_eq!(hg.mul_vec(&e_m, &t), t, "t must be an integral");
        assert_eq!(hg.mul_vec(&t, &e_m), t, "t must be an integral");
    }

    // The base: one basis vector per right coset, multiplying by the quotient
    // table (the translates t·g_i multiply exactly that way).
    let r = q.quotient.size();
    let basis_labels = q
        .representatives
        .iter()
        .map(|&g| format!("t{}", group.label(g)))
        .collect();
    let mut constants = vec![field.zero(); r * r * r];
    for i in 0..r {
        for j in 0..r {
            constants[(i * r + j) * r + q.quotient.mul(i, j)] = field.one();
        }
    }
    let unit = unit_vector(field, r, q.quotient.identity());
    let a = FinDimAlgebra::new(field, basis_labels, constants, unit)?;

    // Coaction: each coset basis vector goes to itself tensored with its
    // translate inside the group algebra.
    let dh = h.dim();
    let mut cols = Vec::with_capacity(r);
    for i in 0..r {
        let rep = q.representatives[i];
        let mut translate = vec![field.zero(); dh];
        for &m in n.members() {
            translate[group.mul(m, rep)] = inv_order.clone();
        }
        let mut col = vec![field.zero(); r * dh];
        for (u, c) in translate.into_iter().enumerate() {
            col[i * dh + u] = c;
        }
        cols.push(col);
    }
    let coaction = Matrix::from_columns(field, r * dh, cols);
    verify_algebraic_pca(a, h, coaction)
}

/// The Sweedler fixture: the ground field coacting along the idempotent
/// `(1 + g + alpha·gx)/2`.
pub fn fixture_sweedler_coaction(field: Field, alpha: &Scalar) -> Result<AlgebraicPca, PcaError> {
    let h4 = Bialgebra::sweedler_h4(field)?;
    let a = FinDimAlgebra::ground_field(field);
    let f = h4.h4_idempotent(alpha);
    let coaction = Matrix::from_columns(field, 4, vec![f]);
    verify_algebraic_pca(a, h4, coaction)
}

/// A bialgebra coacting on itself by its comultiplication: the global case.
pub fn fixture_global_self_coaction(h: Bialgebra) -> Result<AlgebraicPca, PcaError> {
    let a = h.algebra().clone();
    let coaction = h.comult().clone();
    verify_algebraic_pca(a, h, coaction)
}
