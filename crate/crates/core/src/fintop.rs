//! Finite topological spaces as explicit open-set families over bitset
//! carriers, with the constructions quantified over by the topological
//! globalization criteria: products, subspaces, quotients, initial topologies,
//! continuity, open embeddings, and Hausdorff detection.

use std::collections::BTreeSet;

use thiserror::Error;

/// Carriers are bitsets in a u64.
pub const MAX_CARRIER: usize = 64;

/// Generated topologies are materialized by filtering all subsets, so their
/// carriers must stay enumerable.
pub const MAX_GENERATED_CARRIER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("carrier of {0} points exceeds the supported maximum {1}")]
    CarrierTooLarge(usize, usize),
    #[error("family misses the empty set or the full carrier")]
    MissingBounds,
    #[error("not closed under union: opens {0:#b} and {1:#b}")]
    NotClosedUnderUnion(u64, u64),
    #[error("not closed under intersection: opens {0:#b} and {1:#b}")]
    NotClosedUnderIntersection(u64, u64),
    #[error("open set {0:#b} is not a subset of the carrier")]
    NotASubset(u64),
    #[error("map is not surjective: {0} has no preimage")]
    NotSurjective(usize),
    #[error("map entry out of range")]
    BadMap,
    #[error("family of {0} opens exceeds the supported maximum {1}")]
    TooManyOpens(usize, usize),
}

/// A topology on `{0, .., carrier_size-1}`: the canonically sorted family of
/// open sets, each a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinTopology {
    carrier_size: usize,
    opens: Vec<u64>,
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl FinTopology {
    /// Validates closure under union and intersection exhaustively and
    /// canonicalizes the family.
    pub fn new(carrier_size: usize, opens: &[u64]) -> Result<FinTopology, TopologyError> {
        if carrier_size > MAX_CARRIER {
            return Err(TopologyError::CarrierTooLarge(carrier_size, MAX_CARRIER));
        }
        let full = full_mask(carrier_size);
        let set: BTreeSet<u64> = opens.iter().copied().collect();
        // Validation is quadratic in the family size; a family larger than
        // the biggest materializable topology is rejected up front.
        let max_opens = 1usize << MAX_GENERATED_CARRIER;
        if set.len() > max_opens {
            return Err(TopologyError::TooManyOpens(set.len(), max_opens));
        }
        for &u in &set {
            if u & !full != 0 {
                return Err(TopologyError::NotASubset(u));
            }
        }
        if !set.contains(&0) || !set.contains(&full) {
            return Err(TopologyError::MissingBounds);
        }
        for &u in &set {
            for &v in &set {
                if !set.contains(&(u | v)) {
                    return Err(TopologyError::NotClosedUnderUnion(u, v));
                }
                if !set.contains(&(u & v)) {
                    return Err(TopologyError::NotClosedUnderIntersection(u, v));
                }
            }
        }
        Ok(FinTopology {
            carrier_size,
            opens: set.into_iter().collect(),
        })
    }

    pub fn discrete(carrier_size: usize) -> FinTopology {
        assert!(carrier_size <= MAX_GENERATED_CARRIER, "discrete topology too large to materialize");
        let opens: Vec<u64> = (0..(1u64 << carrier_size)).collect();
        FinTopology {
            carrier_size,
            opens,
        }
    }

    pub fn indiscrete(carrier_size: usize) -> FinTopology {
        assert!(carrier_size <= MAX_CARRIER);
        let full = full_mask(carrier_size);
        let opens = if full == 0 { vec![0] } else { vec![0, full] };
        FinTopology {
            carrier_size,
            opens,
        }
    }

    /// The topology generated by arbitrary subsets: minimal neighborhoods are
    /// intersections of generators, opens are the sets closed under them.
    pub fn generate(carrier_size: usize, generators: &[u64]) -> FinTopology {
        assert!(
            carrier_size <= MAX_GENERATED_CARRIER,
            "generated topology carrier exceeds {MAX_GENERATED_CARRIER}"
        );
        let full = full_mask(carrier_size);
        let mins = minimal_neighborhoods_of_generators(carrier_size, generators);
        let mut opens = Vec::new();
        for s in 0..=full {
            let mut ok = true;
            for (x, &mn) in mins.iter().enumerate() {
                if s & (1 << x) != 0 && mn & !s != 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                opens.push(s);
            }
            if s == full {
                break;
            }
        }
        FinTopology {
            carrier_size,
            opens,
        }
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    pub fn opens(&self) -> &[u64] {
        &self.opens
    }

    pub fn is_open(&self, set: u64) -> bool {
        self.opens.binary_search(&set).is_ok()
    }

    /// Smallest open set containing the point; finite topologies always have one.
    pub fn minimal_neighborhood(&self, x: usize) -> u64 {
        let mut acc = full_mask(self.carrier_size);
        for &u in &self.opens {
            if u & (1 << x) != 0 {
                acc &= u;
            }
        }
        acc
    }

    /// All minimal neighborhoods; two topologies on one carrier are equal iff
    /// these profiles agree.
    pub fn neighborhood_profile(&self) -> Vec<u64> {
        (0..self.carrier_size)
            .map(|x| self.minimal_neighborhood(x))
            .collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.opens.len() == 1usize << self.carrier_size.min(63)
    }
}

impl std::fmt::Debug for FinTopology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sets: Vec<String> = self
            .opens
            .iter()
            .map(|&u| {
                let pts: Vec<String> = (0..self.carrier_size)
                    .filter(|&x| u & (1 << x) != 0)
                    .map(|x| x.to_string())
                    .collect();
                format!("{{{}}}", pts.join(","))
            })
            .collect();
        write!(
            f,
            "FinTopology({} pts; {})",
            self.carrier_size,
            sets.join(" ")
        )
    }
}

fn minimal_neighborhoods_of_generators(carrier_size: usize, generators: &[u64]) -> Vec<u64> {
    let full = full_mask(carrier_size);
    (0..carrier_size)
        .map(|x| {
            let mut acc = full;
            for &g in generators {
                if g & (1 << x) != 0 {
                    acc &= g;
                }
            }
            acc
        })
        .collect()
}

/// Product topology with the pairing `(i, j) -> i * size2 + j`, generated by
/// boxes of opens.
pub fn product_topology(t1: &FinTopology, t2: &FinTopology) -> FinTopology {
    let n1 = t1.carrier_size();
    let n2 = t2.carrier_size();
    let mut boxes = Vec::with_capacity(t1.opens().len() * t2.opens().len());
    for &u in t1.opens() {
        for &v in t2.opens() {
            boxes.push(pair_set(u, v, n1, n2));
        }
    }
    FinTopology::generate(n1 * n2, &boxes)
}

/// Embeds `U x V` into the product carrier.
pub fn pair_set(u: u64, v: u64, size1: usize, size2: usize) -> u64 {
    let mut out = 0u64;
    for i in 0..size1 {
        if u & (1 << i) != 0 {
            for j in 0..size2 {
                if v & (1 << j) != 0 {
                    out |= 1 << (i * size2 + j);
                }
            }
        }
    }
    out
}

/// Subspace topology on the listed points, which become `0..subset.len()`;
/// opens are the traces of the ambient opens, re-indexed along the list.
pub fn subspace_topology(t: &FinTopology, subset: &[usize]) -> FinTopology {
    let mut opens = BTreeSet::new();
    for &u in t.opens() {
        let mut trace = 0u64;
        for (i, &p) in subset.iter().enumerate() {
            if u & (1 << p) != 0 {
                trace |= 1 << i;
            }
        }
        opens.insert(trace);
    }
    let opens: Vec<u64> = opens.into_iter().collect();
    FinTopology::new(subset.len(), &opens).expect("traces of a topology form a topology")
}

/// Quotient topology along a surjection `q`: the opens are the images of the
/// saturated opens of the source.
pub fn quotient_topology(
    t: &FinTopology,
    q: &[usize],
    target_size: usize,
) -> Result<FinTopology, TopologyError> {
    if q.len() != t.carrier_size() || q.iter().any(|&v| v >= target_size) {
        return Err(TopologyError::BadMap);
    }
    let mut hit = vec![false; target_size];
    for &v in q {
        hit[v] = true;
    }
    if let Some(missing) = hit.iter().position(|&h| !h) {
        return Err(TopologyError::NotSurjective(missing));
    }
    let mut fibers = vec![0u64; target_size];
    for (x, &v) in q.iter().enumerate() {
        fibers[v] |= 1 << x;
    }
    let mut opens = BTreeSet::new();
    for &w in t.opens() {
        // Saturated means a union of fibers.
        let mut image = 0u64;
        let mut saturated = true;
        for (y, &f) in fibers.iter().enumerate() {
            if w & f != 0 {
                if w & f != f {
                    saturated = false;
                    break;
                }
                image |= 1 << y;
            }
        }
        if saturated {
            opens.insert(image);
        }
    }
    let opens: Vec<u64> = opens.into_iter().collect();
    Ok(FinTopology::new(target_size, &opens)
        .expect("images of saturated opens form a topology"))
}

/// Coarsest topology on a carrier making every listed map continuous.
pub fn initial_topology(carrier_size: usize, maps: &[(&FinTopology, &[usize])]) -> FinTopology {
    let mut gens = Vec::new();
    for (t, f) in maps {
        assert_eq!(f.len(), carrier_size, "map domain must be the carrier");
        for &u in t.opens() {
            gens.push(preimage(u, f));
        }
    }
    FinTopology::generate(carrier_size, &gens)
}

/// Minimal-neighborhood profile of the initial topology, computable without
/// materializing the open family: the minimal neighborhood of a point is the
/// intersection of the pulled-back minimal neighborhoods of its images.
pub fn initial_profile(carrier_size: usize, maps: &[(&[u64], &[usize])]) -> Vec<u64> {
    (0..carrier_size)
        .map(|x| {
            let mut acc = full_mask(carrier_size);
            for (profile, f) in maps {
                acc &= preimage(profile[f[x]], f);
            }
            acc
        })
        .collect()
}

/// Whether a set is open in the topology described by a minimal-neighborhood
/// profile.
pub fn profile_is_open(profile: &[u64], set: u64) -> bool {
    (0..profile.len()).all(|x| set & (1 << x) == 0 || profile[x] & !set == 0)
}

pub fn preimage(u: u64, f: &[usize]) -> u64 {
    let mut out = 0u64;
    for (x, &fx) in f.iter().enumerate() {
        if u & (1 << fx) != 0 {
            out |= 1 << x;
        }
    }
    out
}

pub fn is_continuous(f: &[usize], src: &FinTopology, dst: &FinTopology) -> bool {
    assert_eq!(f.len(), src.carrier_size());
    dst.opens().iter().all(|&u| src.is_open(preimage(u, f)))
}

/// Open embedding: injective, the image is open, and the source topology is
/// exactly the family of preimages of the target opens (which makes the map a
/// homeomorphism onto its image).
pub fn is_open_embedding(f: &[usize], src: &FinTopology, dst: &FinTopology) -> bool {
    assert_eq!(f.len(), src.carrier_size());
    let mut seen = 0u64;
    let mut image = 0u64;
    for &fx in f {
        if seen & (1 << fx) != 0 {
            return false;
        }
        seen |= 1 << fx;
        image |= 1 << fx;
    }
    if !dst.is_open(image) {
        return false;
    }
    let pulled: BTreeSet<u64> = dst.opens().iter().map(|&u| preimage(u, f)).collect();
    let src_set: BTreeSet<u64> = src.opens().iter().copied().collect();
    pulled == src_set
}

/// Finite Hausdorff spaces are discrete; computed from the separation
/// definition with discreteness asserted as a cross-check.
pub fn is_hausdorff(t: &FinTopology) -> bool {
    let n = t.carrier_size();
    let mut separated = true;
    'outer: for x in 0..n {
        for y in (x + 1)..n {
            let found = t.opens().iter().any(|&u| {
                u & (1 << x) != 0
                    && t.opens()
                        .iter()
                        .any(|&v| v & (1 << y) != 0 && u & v == 0)
            });
            if !found {
                separated = false;
                break 'outer;
            }
        }
    }
    assert_eq!(
        separated,
        t.is_discrete(),
        "finite Hausdorff must coincide with discrete"
    );
    separated
}

/// All topologies on a carrier of at most [`MAX_ENUMERATED_CARRIER`] points,
/// by filtering every family of subsets that contains the bounds.
pub const MAX_ENUMERATED_CARRIER: usize = 4;

pub fn all_topologies(carrier_size: usize) -> Vec<FinTopology> {
    assert!(
        carrier_size <= MAX_ENUMERATED_CARRIER,
        "exhaustive topology enumeration capped at {MAX_ENUMERATED_CARRIER} points"
    );
    let full = full_mask(carrier_size);
    let proper: Vec<u64> = (0..=full).filter(|&s| s != 0 && s != full).collect();
    let k = proper.len();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << k) {
        let mut opens = vec![0u64];
        if full != 0 {
            opens.push(full);
        }
        for (i, &s) in proper.iter().enumerate() {
            if mask & (1 << i) != 0 {
                opens.push(s);
            }
        }
        if let Ok(t) = FinTopology::new(carrier_size, &opens) {
            out.push(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sierpinski() -> FinTopology {
        // {∅, {a}, {a,b}} with a = point 0.
        FinTopology::new(2, &[0b00, 0b01, 0b11]).unwrap()
    }

    #[test]
    fn validates_discrete_and_indiscrete() {
        assert_eq!(FinTopology::discrete(2).opens().len(), 4);
        assert_eq!(FinTopology::indiscrete(3).opens().len(), 2);
    }

    #[test]
    fn rejects_family_missing_a_union() {
        // {∅, {a}, {b}, X} on three points: {a} ∪ {b} is missing.
        let err = FinTopology::new(3, &[0b000, 0b001, 0b010, 0b111]).unwrap_err();
        assert!(matches!(err, TopologyError::NotClosedUnderUnion(_, _)));
    }

    /// Independent oracle: close a family under pairwise union and
    /// intersection by fixpoint iteration.
    fn closure_oracle(mut fam: BTreeSet<u64>) -> BTreeSet<u64> {
        loop {
            let snapshot: Vec<u64> = fam.iter().copied().collect();
            let before = fam.len();
            for &u in &snapshot {
                for &v in &snapshot {
                    fam.insert(u | v);
                    fam.insert(u & v);
                }
            }
            if fam.len() == before {
                return fam;
            }
        }
    }

    #[test]
    fn product_of_sierpinski_spaces_matches_the_closure_oracle() {
        let s = sierpinski();
        let p = product_topology(&s, &s);
        let boxes: BTreeSet<u64> = s
            .opens()
            .iter()
            .flat_map(|&u| s.opens().iter().map(move |&v| pair_set(u, v, 2, 2)))
            .collect();
        let oracle = closure_oracle(boxes);
        assert_eq!(
            p.opens().iter().copied().collect::<BTreeSet<u64>>(),
            oracle
        );
        // The nine boxes collapse to five distinct sets and close to six opens.
        assert_eq!(p.opens().len(), 6);
        assert_eq!(
            product_topology(&FinTopology::discrete(2), &FinTopology::discrete(2))
                .opens()
                .len(),
            16
        );
    }

    #[test]
    fn product_with_indiscrete_factor() {
        let ind = FinTopology::indiscrete(2);
        let s = sierpinski();
        let p = product_topology(&ind, &s);
        // Opens are exactly X x V.
        let expected: BTreeSet<u64> = s
            .opens()
            .iter()
            .map(|&v| pair_set(0b11, v, 2, 2))
            .collect();
        let got: BTreeSet<u64> = p.opens().iter().copied().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn subspace_cases() {
        let s = sierpinski();
        assert_eq!(subspace_topology(&s, &[0, 1]), s);
        assert_eq!(
            subspace_topology(&s, &[1]),
            FinTopology::indiscrete(1)
        );
        let single = subspace_topology(&s, &[0]);
        assert_eq!(single.opens(), &[0, 1]);
    }

    #[test]
    fn quotient_cases() {
        let d4 = FinTopology::discrete(4);
        let q = quotient_topology(&d4, &[0, 0, 1, 1], 2).unwrap();
        assert_eq!(q, FinTopology::discrete(2));
        let s = sierpinski();
        assert_eq!(quotient_topology(&s, &[0, 1], 2).unwrap(), s);
        assert_eq!(
            quotient_topology(&s, &[0, 0], 1).unwrap(),
            FinTopology::indiscrete(1)
        );
        assert!(matches!(
            quotient_topology(&s, &[0, 0], 2),
            Err(TopologyError::NotSurjective(1))
        ));
    }

    #[test]
    fn initial_topology_cases() {
        let s = sierpinski();
        assert_eq!(initial_topology(2, &[(&s, &[0, 1])]), s);
        assert_eq!(initial_topology(2, &[]), FinTopology::indiscrete(2));
        // Two maps into discrete points separating everything give discrete.
        let d2 = FinTopology::discrete(2);
        let t = initial_topology(2, &[(&d2, &[0, 1]), (&d2, &[1, 0])]);
        assert!(t.is_discrete());
    }

    #[test]
    fn subspace_agrees_with_initial_along_inclusion() {
        let s = sierpinski();
        let sub = subspace_topology(&s, &[1]);
        let init = initial_topology(1, &[(&s, &[1])]);
        assert_eq!(sub, init);
    }

    #[test]
    fn continuity() {
        let s = sierpinski();
        let d = FinTopology::discrete(2);
        let i = FinTopology::indiscrete(2);
        assert!(is_continuous(&[0, 1], &s, &s));
        assert!(is_continuous(&[0, 1], &i, &i));
        assert!(!is_continuous(&[0, 1], &i, &d));
        assert!(is_continuous(&[0, 1], &d, &i));
    }

    #[test]
    fn open_embedding_depends_on_the_image_being_open() {
        let s = sierpinski();
        let pt_open = FinTopology::discrete(1);
        // {a} is open in Sierpinski: inclusion of the open point embeds openly.
        assert!(is_open_embedding(&[0], &pt_open, &s));
        // {b} is not open.
        assert!(!is_open_embedding(&[1], &pt_open, &s));
        assert!(is_open_embedding(&[0, 1], &s, &s));
    }

    #[test]
    fn hausdorff_is_discrete() {
        assert!(is_hausdorff(&FinTopology::discrete(3)));
        assert!(!is_hausdorff(&FinTopology::indiscrete(2)));
        assert!(!is_hausdorff(&sierpinski()));
    }

    #[test]
    fn oversized_families_are_rejected_before_validation() {
        let opens: Vec<u64> = (0..=(1u64 << 16)).collect();
        assert!(matches!(
            FinTopology::new(17, &opens),
            Err(TopologyError::TooManyOpens(_, _))
        ));
    }

    #[test]
    fn counts_of_small_topology_lattices() {
        assert_eq!(all_topologies(0).len(), 1);
        assert_eq!(all_topologies(1).len(), 1);
        assert_eq!(all_topologies(2).len(), 4);
        assert_eq!(all_topologies(3).len(), 29);
        assert_eq!(all_topologies(4).len(), 355);
    }

    #[test]
    fn profiles_determine_topologies() {
        for t in all_topologies(3) {
            let regen = FinTopology::generate(3, &t.neighborhood_profile());
            assert_eq!(regen, t);
        }
    }
}
