//! Canonical worked fixtures shared by the tests and the CLI catalog.

use crate::fintop::FinTopology;
use crate::monoid::FiniteMonoid;
use crate::setact::{GlobalAction, PartialActionDatum};
use crate::topact::{TopMonoid, TopPartialModule};

/// The two-point partial flip: `M = Z/2` acting on `{1, 2}` with the
/// nontrivial element defined only on `1`, where it is the identity.
pub fn z2part() -> PartialActionDatum {
    let m = FiniteMonoid::cyclic(2).unwrap();
    PartialActionDatum::new(
        m,
        vec!["1".to_string(), "2".to_string()],
        &[((0, 0), 0), ((1, 0), 1), ((0, 1), 0)],
    )
    .unwrap()
}

/// The non-globalizable module: an indiscrete two-point carrier with the
/// trivial action of the trivial monoid, but a discrete domain topology. The
/// domain inclusion is continuous yet not an open embedding, and the domain
/// topology is strictly finer than the coarsest admissible one.
pub fn counter() -> TopPartialModule {
    let m = FiniteMonoid::trivial();
    let tm = TopMonoid::new(m.clone(), FinTopology::discrete(1)).unwrap();
    let base = PartialActionDatum::new(
        m,
        vec!["a".to_string(), "b".to_string()],
        &[((0, 0), 0), ((1, 0), 1)],
    )
    .unwrap();
    TopPartialModule::new(
        base,
        FinTopology::indiscrete(2),
        &tm,
        Some(FinTopology::discrete(2)),
    )
    .unwrap()
}

/// The counter fixture with the action map redirected into a finer carrier
/// topology, breaking its continuity.
pub fn counter_broken_rho() -> TopPartialModule {
    let m = FiniteMonoid::trivial();
    let tm = TopMonoid::new(m.clone(), FinTopology::discrete(1)).unwrap();
    let base = PartialActionDatum::new(
        m,
        vec!["a".to_string(), "b".to_string()],
        &[((0, 0), 0), ((1, 0), 1)],
    )
    .unwrap();
    // Sierpinski carrier, indiscrete domain: the preimage of {a} is not open.
    TopPartialModule::new(
        base,
        FinTopology::new(2, &[0b00, 0b01, 0b11]).unwrap(),
        &tm,
        Some(FinTopology::indiscrete(2)),
    )
    .unwrap()
}

/// Ambient data of the finite restriction example: a four-point carrier
/// `(i, j)` for `i, j in {0, 1}` (point index `2i + j`), the column topology,
/// and the indiscrete flip of the second coordinate.
pub fn finite_ggpm_ambient() -> (GlobalAction, FinTopology, TopMonoid) {
    let m = FiniteMonoid::cyclic(2).unwrap();
    let tm = TopMonoid::new_group(m.clone(), FinTopology::indiscrete(2)).unwrap();
    let labels = vec![
        "00".to_string(),
        "01".to_string(),
        "10".to_string(),
        "11".to_string(),
    ];
    // Flip j: 00 <-> 01, 10 <-> 11.
    let act = vec![0, 1, 1, 0, 2, 3, 3, 2];
    let y = GlobalAction::new(m, labels, act).unwrap();
    // Columns {00, 01} and {10, 11} are open; the j = 0 row is not.
    let t_y = FinTopology::new(4, &[0b0000, 0b0011, 0b1100, 0b1111]).unwrap();
    (y, t_y, tm)
}

/// The induced module on the non-open row `j = 0`: a trivial partial module
/// that is globalizable but not a topological partial action.
pub fn finite_ggpm() -> TopPartialModule {
    let (y, t_y, tm) = finite_ggpm_ambient();
    crate::topact::induce_from_global_top(&y, &t_y, &tm, &[0, 2]).unwrap()
}

/// A genuine topological partial action over the discrete group `Z/2` on a
/// Sierpinski carrier: the flip is defined only on the open point, fixing it.
pub fn z2sier() -> TopPartialModule {
    let m = FiniteMonoid::cyclic(2).unwrap();
    let tm = TopMonoid::new_group(m.clone(), FinTopology::discrete(2)).unwrap();
    let base = PartialActionDatum::new(
        m,
        vec!["a".to_string(), "b".to_string()],
        &[((0, 0), 0), ((1, 0), 1), ((0, 1), 0)],
    )
    .unwrap();
    let t_x = FinTopology::new(2, &[0b00, 0b01, 0b11]).unwrap();
    TopPartialModule::new(base, t_x, &tm, None).unwrap()
}
