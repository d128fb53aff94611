//! Seeded generators for the randomized suites: partial actions induced from
//! random global actions, domain topologies refining a given profile, and
//! automorphism-conjugated coactions. All draws go through an explicit
//! ChaCha RNG, so every suite is reproducible from its seed.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{Field, LinMap, Matrix};
use crate::fintop::FinTopology;
use crate::monoid::FiniteMonoid;
use crate::pca::{conjugate_by_automorphism, AlgebraicPca, PcaError};
use crate::setact::{
    induce_from_global, verify_partial_action, GlobalAction, PartialActionDatum,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Monoids of size at most `cap` drawn from the builder catalog.
pub fn random_monoid(rng: &mut ChaCha8Rng, cap: usize) -> FiniteMonoid {
    let mut catalog: Vec<FiniteMonoid> = Vec::new();
    for n in 1..=cap {
        catalog.push(FiniteMonoid::cyclic(n).unwrap());
    }
    if cap >= 2 {
        catalog.push(
            FiniteMonoid::new(
                vec!["e".into(), "z".into()],
                vec![vec![0, 1], vec![1, 1]],
                0,
            )
            .unwrap(),
        );
    }
    let trunc = FiniteMonoid::bicyclic_truncated(1).unwrap();
    if trunc.size() <= cap {
        catalog.push(trunc);
    }
    if cap >= 4 {
        let c2 = FiniteMonoid::cyclic(2).unwrap();
        catalog.push(FiniteMonoid::product(&c2, &c2).unwrap());
    }
    catalog.choose(rng).expect("catalog is nonempty").clone()
}

/// A random global action: disjoint copies of the regular action plus some
/// fixed points, then an optional shuffle of the carrier labels.
pub fn random_global_action(
    rng: &mut ChaCha8Rng,
    monoid: &FiniteMonoid,
    max_size: usize,
) -> GlobalAction {
    let nm = monoid.size();
    let max_regular = (max_size / nm).min(3);
    let regular_copies = if max_regular == 0 {
        0
    } else {
        rng.gen_range(0..=max_regular)
    };
    let mut size = regular_copies * nm;
    let fixed = if size >= max_size {
        0
    } else {
        rng.gen_range(if size == 0 { 1 } else { 0 }..=(max_size - size))
    };
    size += fixed;

    let mut act = vec![0usize; size * nm];
    for c in 0..regular_copies {
        for a in 0..nm {
            for m in 0..nm {
                act[(c * nm + a) * nm + m] = c * nm + monoid.mul(a, m);
            }
        }
    }
    for y in (regular_copies * nm)..size {
        for m in 0..nm {
            act[y * nm + m] = y;
        }
    }
    let labels = (0..size).map(|i| format!("y{i}")).collect();
    GlobalAction::new(monoid.clone(), labels, act).expect("constructed actions are global")
}

/// A random verified partial action with carrier and monoid sizes bounded by
/// `cap`: induce from a random global action on a random nonempty subset, then
/// sometimes shrink the domain, keeping the shrink only when the axioms
/// survive.
pub fn random_partial_action(rng: &mut ChaCha8Rng, cap: usize) -> PartialActionDatum {
    let monoid = random_monoid(rng, cap);
    let global = random_global_action(rng, &monoid, cap.max(1));
    let size = global.size();
    let subset_size = rng.gen_range(1..=size.min(cap));
    let mut points: Vec<usize> = (0..size).collect();
    points.shuffle(rng);
    let mut subset: Vec<usize> = points.into_iter().take(subset_size).collect();
    subset.sort();
    let induced = induce_from_global(&global, &subset);

    if rng.gen_bool(0.3) && induced.domain_size() > induced.carrier_size() {
        // Try dropping one non-identity pair; keep only verified shrinks.
        let e = induced.monoid().identity();
        let candidates: Vec<(usize, usize)> = induced
            .domain()
            .iter()
            .copied()
            .filter(|&(_, m)| m != e)
            .collect();
        if let Some(&drop) = candidates.as_slice().choose(rng) {
            let remaining: Vec<((usize, usize), usize)> = induced
                .domain()
                .iter()
                .copied()
                .filter(|&p| p != drop)
                .map(|(x, m)| ((x, m), induced.act(x, m).unwrap()))
                .collect();
            let shrunk = PartialActionDatum::new(
                induced.monoid().clone(),
                induced.x_labels().to_vec(),
                &remaining,
            )
            .unwrap();
            if verify_partial_action(&shrunk).is_ok() {
                return shrunk;
            }
        }
    }
    induced
}

/// A random topology on `carrier` points refining the given generators:
/// the generated topology of the generators plus a few random subsets.
pub fn random_refinement(
    rng: &mut ChaCha8Rng,
    carrier: usize,
    generators: &[u64],
    extra: usize,
) -> FinTopology {
    let full = if carrier == 64 {
        u64::MAX
    } else {
        (1u64 << carrier) - 1
    };
    let mut gens = generators.to_vec();
    for _ in 0..extra {
        gens.push(rng.gen_range(0..=full));
    }
    FinTopology::generate(carrier, &gens)
}

/// All algebra automorphisms of a commutative monoid algebra that come from
/// monoid automorphisms, as matrix pairs `(T, T^{-1})`.
pub fn monoid_automorphism_matrices(m: &FiniteMonoid, field: Field) -> Vec<(LinMap, LinMap)> {
    let n = m.size();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(n, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, &mut cur, &mut perms);
    perms
        .into_iter()
        .filter(|p| {
            p[m.identity()] == m.identity()
                && (0..n).all(|a| (0..n).all(|b| p[m.mul(a, b)] == m.mul(p[a], p[b])))
        })
        .map(|p| {
            let mut t = Matrix::zeros(field, n, n);
            let mut t_inv = Matrix::zeros(field, n, n);
            for (src, &dst) in p.iter().enumerate() {
                t[(dst, src)] = field.one();
                t_inv[(src, dst)] = field.one();
            }
            (t, t_inv)
        })
        .collect()
}

/// A random admissible perturbation of a coaction fixture: conjugation by a
/// random monoid automorphism of the base. The base must be a monoid algebra
/// for the supplied monoid.
pub fn random_conjugate(
    rng: &mut ChaCha8Rng,
    pca: &AlgebraicPca,
    base_monoid: &FiniteMonoid,
) -> Result<AlgebraicPca, PcaError> {
    let autos = monoid_automorphism_matrices(base_monoid, pca.field());
    let (t, t_inv) = autos.choose(rng).expect("identity is always present");
    conjugate_by_automorphism(pca, t, t_inv)
}
