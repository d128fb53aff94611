//! Geometric partial modules over finite topological monoids: verification in
//! Top, the topological-partial-action predicate (open embedding of the
//! domain), the coarsest-topology globalizability criterion, and the open
//! embedding of the unit section into the globalization.
//!
//! Topology comparisons run on minimal-neighborhood profiles, which determine
//! finite topologies; full open families are materialized only where results
//! carry them.

use thiserror::Error;

use crate::fintop::{
    initial_profile, is_continuous, is_open_embedding, pair_set, preimage, profile_is_open,
    product_topology, quotient_topology, subspace_topology, FinTopology,
};
use crate::monoid::FiniteMonoid;
use crate::setact::{
    globalize_set, verify_partial_action, GlobalAction, GlobalizationResult, PaViolation,
    PartialActionDatum, SetActError,
};

/// Caps keeping every bitset and materialization in range; fixtures stay far
/// below them.
pub const MAX_PRODUCT_CARRIER: usize = 16;
pub const MAX_TRIPLE_CARRIER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopActError {
    #[error("carrier sizes exceed the supported caps")]
    CapExceeded,
    #[error("topology carrier does not match the underlying set")]
    CarrierMismatch,
    #[error("monoid multiplication is not continuous: preimage of {open:#b} is not open")]
    MultiplicationNotContinuous { open: u64 },
    #[error("group inversion is not continuous: preimage of {open:#b} is not open")]
    InversionNotContinuous { open: u64 },
    #[error("global action is not continuous: preimage of {open:#b} is not open")]
    ActionNotContinuous { open: u64 },
    #[error(transparent)]
    Set(#[from] SetActError),
}

/// A finite monoid with a topology making multiplication continuous.
#[derive(Debug, Clone)]
pub struct TopMonoid {
    monoid: FiniteMonoid,
    topology: FinTopology,
}

impl TopMonoid {
    pub fn new(monoid: FiniteMonoid, topology: FinTopology) -> Result<TopMonoid, TopActError> {
        let n = monoid.size();
        if topology.carrier_size() != n {
            return Err(TopActError::CarrierMismatch);
        }
        if n * n > MAX_TRIPLE_CARRIER {
            return Err(TopActError::CapExceeded);
        }
        let mul: Vec<usize> = (0..n * n).map(|p| monoid.mul(p / n, p % n)).collect();
        if let Some(open) = continuity_violation_into(&mul, &topology, &topology, &topology) {
            return Err(TopActError::MultiplicationNotContinuous { open });
        }
        Ok(TopMonoid { monoid, topology })
    }

    /// As `new`, additionally requiring inversion continuity; only meaningful
    /// for group fixtures.
    pub fn new_group(monoid: FiniteMonoid, topology: FinTopology) -> Result<TopMonoid, TopActError> {
        let inv = monoid
            .inverses()
            .expect("new_group requires a group");
        let tm = TopMonoid::new(monoid, topology)?;
        for &u in tm.topology.opens() {
            if !tm.topology.is_open(preimage(u, &inv)) {
                return Err(TopActError::InversionNotContinuous { open: u });
            }
        }
        Ok(tm)
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn topology(&self) -> &FinTopology {
        &self.topology
    }
}

/// Continuity of a map out of a product `(A, ta) x (B, tb)` into `(C, tc)`,
/// where `f` is indexed by `a * |B| + b`. Returns a violating open of `tc`.
/// Only box preimages need checking because preimages respect unions and
/// intersections.
fn continuity_violation_into(
    f: &[usize],
    ta: &FinTopology,
    tb: &FinTopology,
    tc: &FinTopology,
) -> Option<u64> {
    let prod_profile = product_profile(ta, tb);
    tc.opens().iter().find(|&&u| !profile_is_open(&prod_profile, preimage(u, f))).copied()
}

/// Minimal-neighborhood profile of a product topology.
fn product_profile(ta: &FinTopology, tb: &FinTopology) -> Vec<u64> {
    let (na, nb) = (ta.carrier_size(), tb.carrier_size());
    let pa = ta.neighborhood_profile();
    let pb = tb.neighborhood_profile();
    (0..na * nb)
        .map(|p| pair_set(pa[p / nb], pb[p % nb], na, nb))
        .collect()
}

/// A partial action datum with topologies on the carrier, the monoid, and the
/// domain.
#[derive(Debug, Clone)]
pub struct TopPartialModule {
    base: PartialActionDatum,
    t_x: FinTopology,
    t_m: FinTopology,
    t_d: FinTopology,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopModuleViolation {
    #[error("underlying partial action fails: {0}")]
    SetAxioms(PaViolation),
    #[error("monoid multiplication is not continuous")]
    MultiplicationNotContinuous,
    #[error("domain inclusion into the product is not continuous: box {open:#b} pulls back to a non-open")]
    InclusionNotContinuous { open: u64 },
    #[error("action map is not continuous: open {open:#b} of the carrier pulls back to a non-open")]
    ActionNotContinuous { open: u64 },
    #[error("iterated-domain comparison is not a homeomorphism at triple ({x}, {m}, {n})")]
    ThetaNotHomeomorphism { x: String, m: String, n: String },
}

impl TopPartialModule {
    /// Builds the module; `t_d` defaults to the subspace topology induced from
    /// the product when not supplied.
    pub fn new(
        base: PartialActionDatum,
        t_x: FinTopology,
        top_monoid: &TopMonoid,
        t_d: Option<FinTopology>,
    ) -> Result<TopPartialModule, TopActError> {
        if base.monoid() != top_monoid.monoid() {
            return Err(TopActError::CarrierMismatch);
        }
        if t_x.carrier_size() != base.carrier_size() {
            return Err(TopActError::CarrierMismatch);
        }
        let nm = base.monoid().size();
        if base.carrier_size() * nm > MAX_PRODUCT_CARRIER
            || base.domain_size() * nm > MAX_TRIPLE_CARRIER
        {
            return Err(TopActError::CapExceeded);
        }
        let t_m = top_monoid.topology().clone();
        let t_d = match t_d {
            Some(t) => {
                if t.carrier_size() != base.domain_size() {
                    return Err(TopActError::CarrierMismatch);
                }
                t
            }
            None => {
                let prod = product_topology(&t_x, &t_m);
                let points: Vec<usize> =
                    base.domain().iter().map(|&(x, m)| x * nm + m).collect();
                subspace_topology(&prod, &points)
            }
        };
        Ok(TopPartialModule { base, t_x, t_m, t_d })
    }

    pub fn base(&self) -> &PartialActionDatum {
        &self.base
    }

    pub fn carrier_topology(&self) -> &FinTopology {
        &self.t_x
    }

    pub fn monoid_topology(&self) -> &FinTopology {
        &self.t_m
    }

    pub fn domain_topology(&self) -> &FinTopology {
        &self.t_d
    }

    /// Inclusion of the domain into the product carrier, position-indexed.
    fn inclusion_map(&self) -> Vec<usize> {
        let nm = self.base.monoid().size();
        self.base
            .domain()
            .iter()
            .map(|&(x, m)| x * nm + m)
            .collect()
    }

    /// The action as a map from domain positions to carrier points.
    fn rho_map(&self) -> Vec<usize> {
        (0..self.base.domain_size())
            .map(|p| self.base.image_at(p))
            .collect()
    }
}

/// Full verification: set axioms, continuity of the structure maps, continuity
/// of the monoid multiplication, and the homeomorphism between the two
/// iterated-domain topologies.
pub fn verify_top_module(m: &TopPartialModule) -> Result<(), TopModuleViolation> {
    verify_partial_action(&m.base).map_err(TopModuleViolation::SetAxioms)?;

    let nm = m.base.monoid().size();
    let mul: Vec<usize> = (0..nm * nm)
        .map(|p| m.base.monoid().mul(p / nm, p % nm))
        .collect();
    if continuity_violation_into(&mul, &m.t_m, &m.t_m, &m.t_m).is_some() {
        return Err(TopModuleViolation::MultiplicationNotContinuous);
    }

    let rho = m.rho_map();
    for &u in m.t_x.opens() {
        if !m.t_d.is_open(preimage(u, &rho)) {
            return Err(TopModuleViolation::ActionNotContinuous { open: u });
        }
    }

    // Inclusion into (X x M, product): box preimages suffice.
    let incl = m.inclusion_map();
    let nx = m.base.carrier_size();
    for &u in m.t_x.opens() {
        for &v in m.t_m.opens() {
            let box_open = pair_set(u, v, nx, nm);
            if !m.t_d.is_open(preimage(box_open, &incl)) {
                return Err(TopModuleViolation::InclusionNotContinuous { open: box_open });
            }
        }
    }

    // The two iterated pullbacks share their carrier (set axioms hold); compare
    // the initial topologies through their minimal-neighborhood profiles.
    let triples: Vec<(usize, usize)> = iterated_domain(&m.base);
    let t_d_profile = m.t_d.neighborhood_profile();
    let t_m_profile = m.t_m.neighborhood_profile();
    let dm_profile: Vec<u64> = {
        let nd = m.base.domain_size();
        (0..nd * nm)
            .map(|p| pair_set(t_d_profile[p / nm], t_m_profile[p % nm], nd, nm))
            .collect()
    };
    let incl_dm: Vec<usize> = triples.iter().map(|&(pos, n)| pos * nm + n).collect();
    // First pullback: act on the domain leg, then pair with the extra factor.
    let leg_act: Vec<usize> = triples
        .iter()
        .map(|&(pos, n)| {
            let (x, mm) = m.base.domain()[pos];
            let xm = m.base.act(x, mm).expect("verified domain");
            m.base.pair_position(xm, n).expect("verified axioms")
        })
        .collect();
    // Second pullback: multiply inside the monoid.
    let leg_mul: Vec<usize> = triples
        .iter()
        .map(|&(pos, n)| {
            let (x, mm) = m.base.domain()[pos];
            m.base
                .pair_position(x, m.base.monoid().mul(mm, n))
                .expect("verified axioms")
        })
        .collect();
    let p1 = initial_profile(
        triples.len(),
        &[(&dm_profile, &incl_dm), (&t_d_profile, &leg_act)],
    );
    let p2 = initial_profile(
        triples.len(),
        &[(&dm_profile, &incl_dm), (&t_d_profile, &leg_mul)],
    );
    if let Some(i) = (0..triples.len()).find(|&i| p1[i] != p2[i]) {
        let (pos, n) = triples[i];
        let (x, mm) = m.base.domain()[pos];
        return Err(TopModuleViolation::ThetaNotHomeomorphism {
            x: m.base.x_label(x).to_string(),
            m: m.base.monoid().label(mm).to_string(),
            n: m.base.monoid().label(n).to_string(),
        });
    }
    Ok(())
}

/// The common carrier of both iterated pullbacks, for verified set axioms:
/// pairs (domain position, n) with `x·m` still actable by `n`.
fn iterated_domain(base: &PartialActionDatum) -> Vec<(usize, usize)> {
    let nm = base.monoid().size();
    let mut out = Vec::new();
    for pos in 0..base.domain_size() {
        let (x, m) = base.domain()[pos];
        let xm = base.act(x, m).unwrap();
        for n in 0..nm {
            if base.defined(xm, n) {
                out.push((pos, n));
            }
        }
    }
    out
}

/// Details reported when the module is a topological partial action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TpaReport {
    pub is_tpa: bool,
    /// For each monoid element: is the per-element domain open in the carrier?
    pub domains_open: Vec<bool>,
    /// For each monoid element: is the restricted action continuous from the
    /// subspace topology on its domain?
    pub actions_continuous: Vec<bool>,
}

/// A verified geometric partial module is a topological partial action exactly
/// when the domain inclusion is an open embedding into the product. When it
/// is, every per-element domain is open and every restricted action map is
/// continuous; both are recomputed and reported.
pub fn is_topological_partial_action(m: &TopPartialModule) -> TpaReport {
    let nm = m.base.monoid().size();
    let prod = product_topology(&m.t_x, &m.t_m);
    let is_tpa = is_open_embedding(&m.inclusion_map(), &m.t_d, &prod);

    let mut domains_open = Vec::with_capacity(nm);
    let mut actions_continuous = Vec::with_capacity(nm);
    for mm in 0..nm {
        let dom = m.base.domain_of(mm);
        let mask = dom.iter().fold(0u64, |acc, &x| acc | (1 << x));
        domains_open.push(m.t_x.is_open(mask));
        let sub = subspace_topology(&m.t_x, &dom);
        let alpha: Vec<usize> = dom.iter().map(|&x| m.base.act(x, mm).unwrap()).collect();
        actions_continuous.push(is_continuous(&alpha, &sub, &m.t_x));
    }
    if is_tpa {
        assert!(
            domains_open.iter().all(|&b| b) && actions_continuous.iter().all(|&b| b),
            "open domain inclusion must make per-element domains open and actions continuous"
        );
    }
    TpaReport {
        is_tpa,
        domains_open,
        actions_continuous,
    }
}

/// Which side a globalizability witness lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSide {
    /// Open in the declared domain topology, missing from the coarsest one.
    DeclaredNotInitial,
    /// Open in the coarsest topology, missing from the declared one.
    InitialNotDeclared,
}

/// A witness open, as pairs of the underlying domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopWitness {
    pub side: WitnessSide,
    pub pairs: Vec<(usize, usize)>,
}

/// Result of the topological globalization.
#[derive(Debug, Clone)]
pub struct TopGlobalizationResult {
    pub set_result: GlobalizationResult,
    /// Quotient topology on the classes.
    pub t_y: FinTopology,
    pub globalizable: bool,
    pub witness: Option<TopWitness>,
}

/// Globalizes the underlying partial action, endows the quotient with the
/// quotient topology, and decides globalizability: the declared domain
/// topology must be the coarsest one making the inclusion and the action
/// continuous. The quotient action and projection are re-checked for
/// continuity rather than trusted.
pub fn globalize_top(m: &TopPartialModule) -> Result<TopGlobalizationResult, TopActError> {
    let set_result = globalize_set(&m.base)?;
    let nm = m.base.monoid().size();
    let nx = m.base.carrier_size();
    let prod = product_topology(&m.t_x, &m.t_m);
    let t_y = quotient_topology(&prod, &set_result.kappa, set_result.global.size())
        .expect("kappa is surjective");

    // Coarsest topology making inclusion and action continuous, as a profile.
    let incl = m.inclusion_map();
    let rho = m.rho_map();
    let prod_profile = product_profile(&m.t_x, &m.t_m);
    let t_x_profile = m.t_x.neighborhood_profile();
    let coarsest = initial_profile(
        m.base.domain_size(),
        &[(&prod_profile, &incl), (&t_x_profile, &rho)],
    );
    let declared = m.t_d.neighborhood_profile();

    let mut witness = None;
    if let Some(d) = (0..m.base.domain_size()).find(|&d| declared[d] != coarsest[d]) {
        // One of the two minimal neighborhoods is open on its side only.
        let (side, mask) = if !profile_is_open(&coarsest, declared[d]) {
            (WitnessSide::DeclaredNotInitial, declared[d])
        } else {
            (WitnessSide::InitialNotDeclared, coarsest[d])
        };
        let pairs = (0..m.base.domain_size())
            .filter(|&p| mask & (1 << p) != 0)
            .map(|p| m.base.domain()[p])
            .collect();
        witness = Some(TopWitness { side, pairs });
    }
    let globalizable = witness.is_none();

    if globalizable && (nx * nm) * nx <= MAX_TRIPLE_CARRIER {
        // Cross-check: the restriction square through the globalization is a
        // pullback in Top. The pullback of the two maps into Y is the subspace
        // of (X x M) x X on the matching pairs, which is the domain; its
        // subspace topology must be the declared one.
        let big_profile: Vec<u64> = (0..(nx * nm) * nx)
            .map(|q| pair_set(prod_profile[q / nx], t_x_profile[q % nx], nx * nm, nx))
            .collect();
        let embed: Vec<usize> = (0..m.base.domain_size())
            .map(|d| incl[d] * nx + rho[d])
            .collect();
        let p_mask = embed.iter().fold(0u64, |acc, &q| acc | (1 << q));
        let pullback_profile: Vec<u64> = embed
            .iter()
            .map(|&q| {
                let trace = big_profile[q] & p_mask;
                // Re-index the trace along the embedding.
                embed
                    .iter()
                    .enumerate()
                    .filter(|&(_, &r)| trace & (1 << r) != 0)
                    .fold(0u64, |acc, (d, _)| acc | (1 << d))
            })
            .collect();
        assert_eq!(
            pullback_profile, declared,
            "the restriction square must be a pullback in Top"
        );
    }

    // The coequalizer is computed in Top: the projection must be continuous
    // (by construction of the quotient topology) and the induced action on the
    // quotient must be continuous as well.
    assert!(
        is_continuous(&set_result.kappa, &prod, &t_y),
        "quotient projection must be continuous"
    );
    let ny = set_result.global.size();
    let act_map: Vec<usize> = (0..ny * nm)
        .map(|p| set_result.global.act(p / nm, p % nm))
        .collect();
    if let Some(open) = continuity_violation_into(&act_map, &t_y, &m.t_m, &t_y) {
        return Err(TopActError::ActionNotContinuous { open });
    }
    Ok(TopGlobalizationResult {
        set_result,
        t_y,
        globalizable,
        witness,
    })
}

/// Restricts a continuous global action to a subset carrying the subspace
/// topology; the domain gets the subspace topology of the product. When the
/// subset is open this produces a topological partial action (asserted).
pub fn induce_from_global_top(
    global: &GlobalAction,
    t_y: &FinTopology,
    top_monoid: &TopMonoid,
    subset: &[usize],
) -> Result<TopPartialModule, TopActError> {
    if t_y.carrier_size() != global.size() || global.monoid() != top_monoid.monoid() {
        return Err(TopActError::CarrierMismatch);
    }
    let nm = global.monoid().size();
    let act_map: Vec<usize> = (0..global.size() * nm)
        .map(|p| global.act(p / nm, p % nm))
        .collect();
    if let Some(open) = continuity_violation_into(&act_map, t_y, top_monoid.topology(), t_y) {
        return Err(TopActError::ActionNotContinuous { open });
    }
    let base = crate::setact::induce_from_global(global, subset);
    let t_x = subspace_topology(t_y, subset);
    let module = TopPartialModule::new(base, t_x, top_monoid, None)?;
    let incl: Vec<usize> = subset.to_vec();
    if is_open_embedding(&incl, module.carrier_topology(), t_y) {
        assert!(
            is_topological_partial_action(&module).is_tpa,
            "restriction along an open embedding must be a topological partial action"
        );
    }
    Ok(module)
}

/// Report of the open-embedding check for the unit section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonReport {
    pub open_embedding: bool,
    /// The identity `kappa^{-1}(eps(V)) = incl(rho^{-1}(V))` checked over all
    /// carrier opens; a failure is a library defect.
    pub preimage_identity: bool,
}

/// Decides whether the unit section embeds the carrier openly into the
/// globalization. For topological partial actions this must hold and is
/// asserted.
pub fn check_epsilon_open_embedding(
    m: &TopPartialModule,
    res: &TopGlobalizationResult,
) -> EpsilonReport {
    assert!(res.globalizable, "epsilon check needs a globalizable input");
    let nm = m.base.monoid().size();
    let open_embedding = is_open_embedding(&res.set_result.epsilon, &m.t_x, &res.t_y);

    let mut preimage_identity = true;
    'outer: for &v in m.t_x.opens() {
        let eps_v: Vec<bool> = {
            let mut cls = vec![false; res.set_result.global.size()];
            for x in 0..m.base.carrier_size() {
                if v & (1 << x) != 0 {
                    cls[res.set_result.epsilon[x]] = true;
                }
            }
            cls
        };
        for x in 0..m.base.carrier_size() {
            for mm in 0..nm {
                let lhs = eps_v[res.set_result.kappa[x * nm + mm]];
                let rhs = m.base.act(x, mm).map(|y| v & (1 << y) != 0) == Some(true);
                if lhs != rhs {
                    preimage_identity = false;
                    break 'outer;
                }
            }
        }
    }
    assert!(
        preimage_identity,
        "the quotient preimage identity holds for every verified input"
    );
    if is_topological_partial_action(m).is_tpa {
        assert!(
            open_embedding,
            "a globalizable topological partial action embeds openly"
        );
    }
    EpsilonReport {
        open_embedding,
        preimage_identity,
    }
}
