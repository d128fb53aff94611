//! Partial actions of finite monoids on finite sets: axiom verification,
//! induced partial actions, morphisms, and globalization by the quotient of
//! `X x M` under the equivalence closure of `(x·m, n) ~ (x, mn)`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::monoid::FiniteMonoid;

/// A partial action datum: carrier `X`, domain `D ⊆ X x M`, and the action map
/// `rho: D -> X`. The domain is a genuine subset, so the structural inclusion
/// into `X x M` is injective by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialActionDatum {
    monoid: FiniteMonoid,
    x_labels: Vec<String>,
    /// Domain pairs `(x, m)` in lexicographic order.
    pairs: Vec<(usize, usize)>,
    /// Image of each domain pair under rho, parallel to `pairs`.
    images: Vec<usize>,
    /// Position of `(x, m)` in `pairs`, indexed by `x * |M| + m`.
    position: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetActError {
    #[error("domain pair or image out of range")]
    BadIndex,
    #[error("partial-action axioms unverified: {0}")]
    AxiomsFail(PaViolation),
    #[error("the induced action on classes is ill-defined at class {class} and {m} (library defect)")]
    IllDefinedAction { class: usize, m: String },
    #[error("the unit section of the globalization is not injective (library defect)")]
    EpsilonNotInjective,
    #[error("enumeration of {0} candidate maps exceeds the cap {1}")]
    EnumerationTooLarge(u128, u128),
}

/// First witness of a failed partial-action axiom.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PaViolation {
    #[error("unitality: ({x}, e) is not in the domain")]
    UnitDomain { x: String },
    #[error("unitality: {x}·e = {image} differs from {x}")]
    UnitMap { x: String, image: String },
    #[error("associativity domain: {x} in X_{m}, {x}·{m} in X_{n}, but {x} not in X_(mn)")]
    DomainForward { x: String, m: String, n: String },
    #[error("associativity domain: {x} in X_(mn) and X_{m}, but {x}·{m} not in X_{n}")]
    DomainBackward { x: String, m: String, n: String },
    #[error("associativity: ({x}·{m})·{n} != {x}·{mn}")]
    Compat {
        x: String,
        m: String,
        n: String,
        mn: String,
    },
}

impl PartialActionDatum {
    /// Builds a datum from explicit domain pairs and images. Duplicated pairs
    /// collapse; indices are checked, axioms are not (see [`verify_partial_action`]).
    pub fn new(
        monoid: FiniteMonoid,
        x_labels: Vec<String>,
        domain: &[((usize, usize), usize)],
    ) -> Result<PartialActionDatum, SetActError> {
        let nx = x_labels.len();
        let nm = monoid.size();
        let mut map = BTreeMap::new();
        for &((x, m), y) in domain {
            if x >= nx || m >= nm || y >= nx {
                return Err(SetActError::BadIndex);
            }
            map.insert((x, m), y);
        }
        let pairs: Vec<(usize, usize)> = map.keys().copied().collect();
        let images: Vec<usize> = map.values().copied().collect();
        let mut position = vec![None; nx * nm];
        for (i, &(x, m)) in pairs.iter().enumerate() {
            position[x * nm + m] = Some(i);
        }
        Ok(PartialActionDatum {
            monoid,
            x_labels,
            pairs,
            images,
            position,
        })
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn carrier_size(&self) -> usize {
        self.x_labels.len()
    }

    pub fn x_label(&self, i: usize) -> &str {
        &self.x_labels[i]
    }

    pub fn x_labels(&self) -> &[String] {
        &self.x_labels
    }

    /// Domain pairs in lexicographic order.
    pub fn domain(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn domain_size(&self) -> usize {
        self.pairs.len()
    }

    pub fn defined(&self, x: usize, m: usize) -> bool {
        self.position[x * self.monoid.size() + m].is_some()
    }

    /// `x · m` when defined.
    pub fn act(&self, x: usize, m: usize) -> Option<usize> {
        self.position[x * self.monoid.size() + m].map(|i| self.images[i])
    }

    /// Position of `(x, m)` in the canonical domain ordering.
    pub fn pair_position(&self, x: usize, m: usize) -> Option<usize> {
        self.position[x * self.monoid.size() + m]
    }

    pub fn image_at(&self, pos: usize) -> usize {
        self.images[pos]
    }

    /// The per-element domain `X_m`.
    pub fn domain_of(&self, m: usize) -> Vec<usize> {
        (0..self.carrier_size())
            .filter(|&x| self.defined(x, m))
            .collect()
    }
}

/// Checks unitality and partial associativity, returning the first witness on
/// failure. Passing certifies that the two iterated-pullback sets agree, i.e.
/// the canonical comparison between them is a bijection.
pub fn verify_partial_action(d: &PartialActionDatum) -> Result<(), PaViolation> {
    let e = d.monoid.identity();
    for x in 0..d.carrier_size() {
        match d.act(x, e) {
            None => {
                return Err(PaViolation::UnitDomain {
                    x: d.x_label(x).to_string(),
                })
            }
            Some(y) if y != x => {
                return Err(PaViolation::UnitMap {
                    x: d.x_label(x).to_string(),
                    image: d.x_label(y).to_string(),
                })
            }
            _ => {}
        }
    }
    for m in 0..d.monoid.size() {
        for n in 0..d.monoid.size() {
            let mn = d.monoid.mul(m, n);
            for x in 0..d.carrier_size() {
                let in_m = d.defined(x, m);
                let lhs = in_m && d.act(x, m).map(|xm| d.defined(xm, n)) == Some(true);
                let rhs = in_m && d.defined(x, mn);
                if lhs && !rhs {
                    return Err(PaViolation::DomainForward {
                        x: d.x_label(x).to_string(),
                        m: d.monoid.label(m).to_string(),
                        n: d.monoid.label(n).to_string(),
                    });
                }
                if rhs && !lhs {
                    return Err(PaViolation::DomainBackward {
                        x: d.x_label(x).to_string(),
                        m: d.monoid.label(m).to_string(),
                        n: d.monoid.label(n).to_string(),
                    });
                }
                if lhs {
                    let xm = d.act(x, m).unwrap();
                    if d.act(xm, n) != d.act(x, mn) {
                        return Err(PaViolation::Compat {
                            x: d.x_label(x).to_string(),
                            m: d.monoid.label(m).to_string(),
                            n: d.monoid.label(n).to_string(),
                            mn: d.monoid.label(mn).to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// A total (global) action of a finite monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalAction {
    monoid: FiniteMonoid,
    labels: Vec<String>,
    /// `act[y * |M| + m]`.
    act: Vec<usize>,
}

impl GlobalAction {
    pub fn new(
        monoid: FiniteMonoid,
        labels: Vec<String>,
        act: Vec<usize>,
    ) -> Result<GlobalAction, SetActError> {
        let ny = labels.len();
        let nm = monoid.size();
        if act.len() != ny * nm || act.iter().any(|&v| v >= ny) {
            return Err(SetActError::BadIndex);
        }
        let g = GlobalAction {
            monoid,
            labels,
            act,
        };
        let e = g.monoid.identity();
        for y in 0..ny {
            if g.act(y, e) != y {
                return Err(SetActError::AxiomsFail(PaViolation::UnitMap {
                    x: g.labels[y].clone(),
                    image: g.labels[g.act(y, e)].clone(),
                }));
            }
            for m in 0..nm {
                for n in 0..nm {
                    let mn = g.monoid.mul(m, n);
                    if g.act(g.act(y, m), n) != g.act(y, mn) {
                        return Err(SetActError::AxiomsFail(PaViolation::Compat {
                            x: g.labels[y].clone(),
                            m: g.monoid.label(m).to_string(),
                            n: g.monoid.label(n).to_string(),
                            mn: g.monoid.label(mn).to_string(),
                        }));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn act(&self, y: usize, m: usize) -> usize {
        self.act[y * self.monoid.size() + m]
    }

    /// Right regular action of a monoid on itself.
    pub fn regular(monoid: &FiniteMonoid) -> GlobalAction {
        let n = monoid.size();
        let act = (0..n)
            .flat_map(|a| (0..n).map(move |m| (a, m)))
            .map(|(a, m)| monoid.mul(a, m))
            .collect();
        GlobalAction::new(monoid.clone(), monoid.labels().to_vec(), act)
            .expect("regular action satisfies the axioms")
    }

    /// The action fixing every point.
    pub fn trivial(monoid: &FiniteMonoid, labels: Vec<String>) -> GlobalAction {
        let n = labels.len();
        let act = (0..n)
            .flat_map(|y| std::iter::repeat_n(y, monoid.size()))
            .collect();
        GlobalAction::new(monoid.clone(), labels, act).expect("trivial action is global")
    }

    /// All global actions of `monoid` on a carrier of the given size, by
    /// exhaustive table search. Only sensible for tiny sizes.
    pub fn enumerate_all(monoid: &FiniteMonoid, size: usize) -> Vec<GlobalAction> {
        let nm = monoid.size();
        let cells = size * nm;
        let mut out = Vec::new();
        let mut table = vec![0usize; cells];
        loop {
            let labels = (0..size).map(|i| format!("z{i}")).collect();
            if let Ok(g) = GlobalAction::new(monoid.clone(), labels, table.clone()) {
                out.push(g);
            }
            // Odometer increment in base `size`.
            let mut i = 0;
            loop {
                if i == cells {
                    return out;
                }
                table[i] += 1;
                if table[i] < size {
                    break;
                }
                table[i] = 0;
                i += 1;
            }
        }
    }
}

/// Views a global action as a partial action with full domain.
pub fn view_global_as_partial(y: &GlobalAction) -> PartialActionDatum {
    let nm = y.monoid().size();
    let domain: Vec<((usize, usize), usize)> = (0..y.size())
        .flat_map(|x| (0..nm).map(move |m| (x, m)))
        .map(|(x, m)| ((x, m), y.act(x, m)))
        .collect();
    PartialActionDatum::new(y.monoid().clone(), y.labels().to_vec(), &domain)
        .expect("indices are in range")
}

/// Restricts a global action to a subset: the domain keeps the pairs whose
/// image stays inside. The result always satisfies the partial-action axioms.
pub fn induce_from_global(y: &GlobalAction, subset: &[usize]) -> PartialActionDatum {
    assert!(!subset.is_empty(), "subset must be nonempty");
    let mut back = vec![None; y.size()];
    for (i, &p) in subset.iter().enumerate() {
        back[p] = Some(i);
    }
    let labels = subset.iter().map(|&p| y.label(p).to_string()).collect();
    let mut domain = Vec::new();
    for (i, &p) in subset.iter().enumerate() {
        for m in 0..y.monoid().size() {
            if let Some(j) = back[y.act(p, m)] {
                domain.push(((i, m), j));
            }
        }
    }
    let d = PartialActionDatum::new(y.monoid().clone(), labels, &domain)
        .expect("indices are in range");
    debug_assert!(verify_partial_action(&d).is_ok());
    d
}

/// A morphism of partial action data over one monoid: the carrier map plus an
/// explicit domain map (positions into the target's canonical domain order).
#[derive(Debug, Clone)]
pub struct PartialMorphism {
    pub f: Vec<usize>,
    pub f_dom: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismViolation {
    #[error("map data has wrong length or out-of-range entries")]
    Shape,
    #[error("inclusion square fails at ({x}, {m}): expected ({fx}, {m}) in the target domain")]
    InclusionSquare { x: String, m: String, fx: String },
    #[error("action square fails at ({x}, {m})")]
    ActionSquare { x: String, m: String },
}

/// Checks both squares of the morphism condition elementwise.
pub fn verify_morphism(
    src: &PartialActionDatum,
    tgt: &PartialActionDatum,
    mor: &PartialMorphism,
) -> Result<(), MorphismViolation> {
    assert_eq!(
        src.monoid(),
        tgt.monoid(),
        "morphisms live over one monoid"
    );
    if mor.f.len() != src.carrier_size()
        || mor.f.iter().any(|&v| v >= tgt.carrier_size())
        || mor.f_dom.len() != src.domain_size()
        || mor.f_dom.iter().any(|&v| v >= tgt.domain_size())
    {
        return Err(MorphismViolation::Shape);
    }
    for (pos, &(x, m)) in src.domain().iter().enumerate() {
        let tgt_pos = mor.f_dom[pos];
        let (tx, tm) = tgt.domain()[tgt_pos];
        // Square with the inclusions: f_dom must sit over (f(x), m).
        if (tx, tm) != (mor.f[x], m) {
            return Err(MorphismViolation::InclusionSquare {
                x: src.x_label(x).to_string(),
                m: src.monoid().label(m).to_string(),
                fx: tgt.x_label(mor.f[x]).to_string(),
            });
        }
        // Square with the actions: f(x·m) = f(x)·m.
        if mor.f[src.image_at(pos)] != tgt.image_at(tgt_pos) {
            return Err(MorphismViolation::ActionSquare {
                x: src.x_label(x).to_string(),
                m: src.monoid().label(m).to_string(),
            });
        }
    }
    Ok(())
}

/// The globalization of a partial action: the quotient global action, the unit
/// section `epsilon`, the quotient map `kappa` on `X x M`, and the classes.
#[derive(Debug, Clone)]
pub struct GlobalizationResult {
    pub global: GlobalAction,
    /// `epsilon[x]` = class of `(x, e)`.
    pub epsilon: Vec<usize>,
    /// `kappa[x * |M| + m]` = class of `(x, m)`.
    pub kappa: Vec<usize>,
    /// Members of each class, lexicographically sorted; classes are numbered
    /// by their smallest member, so the construction is deterministic.
    pub classes: Vec<Vec<(usize, usize)>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            self.parent[r] = self.parent[self.parent[r]];
            r = self.parent[r];
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins, keeping representatives lexicographically minimal.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Globalizes a verified partial action. The action on classes is re-checked
/// for well-definedness and the unit section for injectivity; violations are
/// internal defects, not input errors.
pub fn globalize_set(d: &PartialActionDatum) -> Result<GlobalizationResult, SetActError> {
    verify_partial_action(d).map_err(SetActError::AxiomsFail)?;
    let nm = d.monoid().size();
    let nx = d.carrier_size();
    let idx = |x: usize, m: usize| x * nm + m;

    let mut uf = UnionFind::new(nx * nm);
    for &(x, m) in d.domain() {
        let xm = d.act(x, m).unwrap();
        for n in 0..nm {
            uf.union(idx(xm, n), idx(x, d.monoid().mul(m, n)));
        }
    }

    // Classes numbered by smallest member.
    let mut class_of_root = BTreeMap::new();
    let mut kappa = vec![usize::MAX; nx * nm];
    for x in 0..nx {
        for m in 0..nm {
            let root = uf.find(idx(x, m));
            let next = class_of_root.len();
            kappa[idx(x, m)] = *class_of_root.entry(root).or_insert(next);
        }
    }
    let ny = class_of_root.len();
    let mut classes = vec![Vec::new(); ny];
    for x in 0..nx {
        for m in 0..nm {
            classes[kappa[idx(x, m)]].push((x, m));
        }
    }

    // [x, m] ◁ n = [x, mn]; check it does not depend on the representative.
    let mut act = vec![usize::MAX; ny * nm];
    for (c, members) in classes.iter().enumerate() {
        for n in 0..nm {
            let targets: Vec<usize> = members
                .iter()
                .map(|&(x, m)| kappa[idx(x, d.monoid().mul(m, n))])
                .collect();
            if targets.windows(2).any(|w| w[0] != w[1]) {
                return Err(SetActError::IllDefinedAction {
                    class: c,
                    m: d.monoid().label(n).to_string(),
                });
            }
            act[c * nm + n] = targets[0];
        }
    }

    let labels = classes
        .iter()
        .map(|members| {
            let (x, m) = members[0];
            format!("[{},{}]", d.x_label(x), d.monoid().label(m))
        })
        .collect();
    let global = GlobalAction::new(d.monoid().clone(), labels, act)?;

    let e = d.monoid().identity();
    let epsilon: Vec<usize> = (0..nx).map(|x| kappa[idx(x, e)]).collect();
    for a in 0..nx {
        for b in (a + 1)..nx {
            if epsilon[a] == epsilon[b] {
                return Err(SetActError::EpsilonNotInjective);
            }
        }
    }
    Ok(GlobalizationResult {
        global,
        epsilon,
        kappa,
        classes,
    })
}

/// Outcome of the restriction check against the globalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gl1Verdict {
    Pass,
    /// In Set this cannot happen for verified inputs; report as a defect.
    LibraryDefect(String),
}

impl Gl1Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Gl1Verdict::Pass)
    }
}

/// Verifies that the declared domain is exactly the preimage of the embedded
/// carrier under `kappa`, and that the partial action is the restriction of
/// the global one.
pub fn check_gl1_pullback(d: &PartialActionDatum, res: &GlobalizationResult) -> Gl1Verdict {
    let nm = d.monoid().size();
    let mut eps_class_to_x = BTreeMap::new();
    for (x, &c) in res.epsilon.iter().enumerate() {
        eps_class_to_x.insert(c, x);
    }
    for x in 0..d.carrier_size() {
        for m in 0..nm {
            let kl = res.kappa[x * nm + m];
            match (eps_class_to_x.get(&kl), d.defined(x, m)) {
                (Some(&y), true) => {
                    if d.act(x, m) != Some(y) {
                        return Gl1Verdict::LibraryDefect(format!(
                            "action mismatch at ({}, {})",
                            d.x_label(x),
                            d.monoid().label(m)
                        ));
                    }
                }
                (Some(_), false) => {
                    return Gl1Verdict::LibraryDefect(format!(
                        "({}, {}) lands in the embedded carrier but is not declared",
                        d.x_label(x),
                        d.monoid().label(m)
                    ));
                }
                (None, true) => {
                    return Gl1Verdict::LibraryDefect(format!(
                        "declared pair ({}, {}) leaves the embedded carrier",
                        d.x_label(x),
                        d.monoid().label(m)
                    ));
                }
                (None, false) => {}
            }
        }
    }
    Gl1Verdict::Pass
}

/// Certificate for the universal property: the maps out of the globalization
/// correspond bijectively to the partial-module maps out of the datum itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gl2Certificate {
    pub global_homs: usize,
    pub partial_homs: usize,
    pub bijective: bool,
}

/// Exhaustively enumerates both hom-sets into a global target and checks that
/// composition with the unit section is a bijection.
pub fn check_gl2_universal(
    d: &PartialActionDatum,
    res: &GlobalizationResult,
    z: &GlobalAction,
    cap: u128,
) -> Result<Gl2Certificate, SetActError> {
    assert_eq!(d.monoid(), z.monoid(), "target must live over one monoid");
    let ny = res.global.size();
    let nz = z.size();
    let count = (nz as u128).checked_pow(ny as u32).unwrap_or(u128::MAX);
    if count > cap {
        return Err(SetActError::EnumerationTooLarge(count, cap));
    }
    let nm = d.monoid().size();

    let equivariant = |eta: &[usize]| {
        (0..ny).all(|y| (0..nm).all(|n| eta[res.global.act(y, n)] == z.act(eta[y], n)))
    };
    let partial_map = |f: &[usize]| {
        d.domain()
            .iter()
            .all(|&(x, m)| f[d.act(x, m).unwrap()] == z.act(f[x], m))
    };

    let global_homs: Vec<Vec<usize>> = maps(ny, nz).into_iter().filter(|m| equivariant(m)).collect();
    let partial_homs: Vec<Vec<usize>> = maps(d.carrier_size(), nz)
        .into_iter()
        .filter(|m| partial_map(m))
        .collect();

    let mut images: Vec<Vec<usize>> = global_homs
        .iter()
        .map(|eta| res.epsilon.iter().map(|&c| eta[c]).collect())
        .collect();
    images.sort();
    let distinct = images.windows(2).all(|w| w[0] != w[1]);
    let mut expected = partial_homs.clone();
    expected.sort();
    let bijective = distinct && images == expected;
    Ok(Gl2Certificate {
        global_homs: global_homs.len(),
        partial_homs: partial_homs.len(),
        bijective,
    })
}

fn maps(src: usize, dst: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; src];
    if dst == 0 {
        return if src == 0 { vec![Vec::new()] } else { out };
    }
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == src {
                return out;
            }
            cur[i] += 1;
            if cur[i] < dst {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// The canonical comparison from the globalization of a full-domain datum back
/// to the original global action, `[y, m] -> y·m`. Returns the class-indexed
/// map when it is a bijection intertwining the actions, which the theory
/// guarantees; `None` signals a defect.
pub fn global_roundtrip_iso(y: &GlobalAction, res: &GlobalizationResult) -> Option<Vec<usize>> {
    let ny = res.global.size();
    if ny != y.size() {
        return None;
    }
    let mut map = vec![usize::MAX; ny];
    for (c, members) in res.classes.iter().enumerate() {
        let targets: Vec<usize> = members.iter().map(|&(x, m)| y.act(x, m)).collect();
        if targets.windows(2).any(|w| w[0] != w[1]) {
            return None;
        }
        map[c] = targets[0];
    }
    let mut seen = vec![false; ny];
    for &t in &map {
        if seen[t] {
            return None;
        }
        seen[t] = true;
    }
    for c in 0..ny {
        for n in 0..y.monoid().size() {
            if map[res.global.act(c, n)] != y.act(map[c], n) {
                return None;
            }
        }
    }
    Some(map)
}
