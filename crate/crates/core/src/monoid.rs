//! Finite monoids and groups given by validated multiplication tables,
//! plus the quotient groups used by the group-algebra fixtures.
//!
//! Elements are indices into a label list; everything downstream references
//! indices, so serialization is stable and table lookup is O(1).

use std::collections::BTreeSet;

use thiserror::Error;

/// Default cap on monoid size: every validation here is O(|M|^3) or worse.
pub const DEFAULT_SIZE_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("not associative at ({a}, {b}, {c}): ({a}·{b})·{c} != {a}·({b}·{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("identity law fails at {m}")]
    BadIdentity { m: String },
    #[error("table entry out of range")]
    BadIndex,
    #[error("duplicate or empty element label {0:?}")]
    BadLabel(String),
    #[error("monoid size {0} exceeds cap {1}")]
    TooLarge(usize, usize),
    #[error("builder parameter must be at least 1")]
    BadParameter,
    #[error("{0} is not a group")]
    NotAGroup(String),
    #[error("subgroup is not closed or misses identity/inverses")]
    BadSubgroup,
    #[error("subgroup is not normal: conjugation by {g} leaves it")]
    NotNormal { g: String },
}

/// A finite monoid: labels, an |M| x |M| index table, and the identity index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    elements: Vec<String>,
    table: Vec<usize>,
    identity: usize,
}

impl FiniteMonoid {
    /// Validates associativity and the identity laws exhaustively.
    pub fn new(
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        identity: usize,
    ) -> Result<FiniteMonoid, MonoidError> {
        let n = elements.len();
        if n == 0 || n > DEFAULT_SIZE_CAP {
            return Err(MonoidError::TooLarge(n, DEFAULT_SIZE_CAP));
        }
        let mut seen = BTreeSet::new();
        for l in &elements {
            if l.is_empty() || !seen.insert(l.clone()) {
                return Err(MonoidError::BadLabel(l.clone()));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) || identity >= n {
            return Err(MonoidError::BadIndex);
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            for &v in row {
                if v >= n {
                    return Err(MonoidError::BadIndex);
                }
                flat.push(v);
            }
        }
        let m = FiniteMonoid {
            elements,
            table: flat,
            identity,
        };
        for a in 0..n {
            if m.mul(m.identity, a) != a || m.mul(a, m.identity) != a {
                return Err(MonoidError::BadIdentity {
                    m: m.elements[a].clone(),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)) {
                        return Err(MonoidError::NotAssociative {
                            a: m.elements[a].clone(),
                            b: m.elements[b].clone(),
                            c: m.elements[c].clone(),
                        });
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|l| l == label)
    }

    /// Two-sided inverse table when the monoid is a group.
    pub fn inverses(&self) -> Option<Vec<usize>> {
        let n = self.size();
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            let found = (0..n)
                .find(|&b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)?;
            inv[a] = found;
        }
        Some(inv)
    }

    pub fn is_group(&self) -> bool {
        self.inverses().is_some()
    }

    /// The trivial one-element monoid.
    pub fn trivial() -> FiniteMonoid {
        FiniteMonoid::new(vec!["e".to_string()], vec![vec![0]], 0).unwrap()
    }

    /// Cyclic group of order `n`, labels e, g, g2, ...
    pub fn cyclic(n: usize) -> Result<FiniteMonoid, MonoidError> {
        if n < 1 {
            return Err(MonoidError::BadParameter);
        }
        let elements: Vec<String> = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteMonoid::new(elements, table, 0)
    }

    /// Symmetric group on `{1..n}`; elements labeled in one-line notation and
    /// listed in lexicographic order, so the identity is element 0.
    /// Product is "apply left, then right", matching right actions.
    pub fn symmetric(n: usize) -> Result<FiniteMonoid, MonoidError> {
        if n < 1 {
            return Err(MonoidError::BadParameter);
        }
        let perms = permutations(n);
        let labels: Vec<String> = perms
            .iter()
            .map(|p| p.iter().map(|&i| (i + 1).to_string()).collect::<String>())
            .collect();
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let composed: Vec<usize> = (0..n).map(|i| b[a[i]]).collect();
                        index(&composed)
                    })
                    .collect()
            })
            .collect();
        FiniteMonoid::new(labels, table, 0)
    }

    /// Truncated shift monoid on `{0..n}`: the submonoid of transformations
    /// generated by the capped increment and floored decrement, a finite stand-in
    /// for the bicyclic monoid. Elements are labeled by their image tuples.
    pub fn bicyclic_truncated(n: usize) -> Result<FiniteMonoid, MonoidError> {
        if n < 1 {
            return Err(MonoidError::BadParameter);
        }
        let pts = n + 1;
        let up: Vec<usize> = (0..pts).map(|i| (i + 1).min(n)).collect();
        let down: Vec<usize> = (0..pts).map(|i| i.saturating_sub(1)).collect();
        let id: Vec<usize> = (0..pts).collect();
        // BFS closure under composition (apply left, then right).
        let mut maps = vec![id];
        let mut frontier = 0;
        while frontier < maps.len() {
            let cur = maps[frontier].clone();
            frontier += 1;
            for gen in [&up, &down] {
                let next: Vec<usize> = cur.iter().map(|&i| gen[i]).collect();
                if !maps.contains(&next) {
                    maps.push(next);
                }
            }
            if maps.len() > DEFAULT_SIZE_CAP {
                return Err(MonoidError::TooLarge(maps.len(), DEFAULT_SIZE_CAP));
            }
        }
        maps.sort();
        let labels: Vec<String> = maps
            .iter()
            .map(|m| m.iter().map(|i| i.to_string()).collect::<String>())
            .collect();
        let identity = maps.iter().position(|m| m.iter().enumerate().all(|(i, &v)| i == v)).unwrap();
        let table = maps
            .iter()
            .map(|a| {
                maps.iter()
                    .map(|b| {
                        let composed: Vec<usize> = a.iter().map(|&i| b[i]).collect();
                        maps.iter().position(|q| *q == composed).unwrap()
                    })
                    .collect()
            })
            .collect();
        FiniteMonoid::new(labels, table, identity)
    }

    /// Direct product; labels are joined with `|`.
    pub fn product(m1: &FiniteMonoid, m2: &FiniteMonoid) -> Result<FiniteMonoid, MonoidError> {
        let (n1, n2) = (m1.size(), m2.size());
        let labels = (0..n1)
            .flat_map(|a| (0..n2).map(move |b| format!("{}|{}", m1.label(a), m2.label(b))))
            .collect();
        let table = (0..n1 * n2)
            .map(|x| {
                let (a1, b1) = (x / n2, x % n2);
                (0..n1 * n2)
                    .map(|y| {
                        let (a2, b2) = (y / n2, y % n2);
                        m1.mul(a1, a2) * n2 + m2.mul(b1, b2)
                    })
                    .collect()
            })
            .collect();
        FiniteMonoid::new(labels, table, m1.identity * n2 + m2.identity)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
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
    rec(n, &mut cur, &mut out);
    out
}

/// A subgroup given by its member indices; validated against the parent.
#[derive(Debug, Clone)]
pub struct SubgroupSpec {
    members: Vec<usize>,
}

impl SubgroupSpec {
    pub fn new(parent: &FiniteMonoid, members: &[usize]) -> Result<SubgroupSpec, MonoidError> {
        let inv = parent
            .inverses()
            .ok_or_else(|| MonoidError::NotAGroup("subgroup parent".to_string()))?;
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if set.is_empty()
            || !set.contains(&parent.identity())
            || set.iter().any(|&a| a >= parent.size())
        {
            return Err(MonoidError::BadSubgroup);
        }
        for &a in &set {
            if !set.contains(&inv[a]) {
                return Err(MonoidError::BadSubgroup);
            }
            for &b in &set {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(MonoidError::BadSubgroup);
                }
            }
        }
        Ok(SubgroupSpec {
            members: set.into_iter().collect(),
        })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }
}

/// Result of a quotient by a normal subgroup: the quotient group, the chosen
/// right-coset representatives (smallest index per coset), and the projection
/// sending each element to its coset index.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    pub quotient: FiniteMonoid,
    pub representatives: Vec<usize>,
    pub projection: Vec<usize>,
}

/// Quotient of a group by a subgroup; verifies normality and returns
/// right cosets `N·g` with deterministic representatives.
pub fn quotient_group(
    group: &FiniteMonoid,
    normal: &SubgroupSpec,
) -> Result<QuotientGroup, MonoidError> {
    let inv = group
        .inverses()
        .ok_or_else(|| MonoidError::NotAGroup("quotient base".to_string()))?;
    let in_n: BTreeSet<usize> = normal.members().iter().copied().collect();
    for g in 0..group.size() {
        for &n in normal.members() {
            let conj = group.mul(group.mul(g, n), inv[g]);
            if !in_n.contains(&conj) {
                return Err(MonoidError::NotNormal {
                    g: group.label(g).to_string(),
                });
            }
        }
    }
    // Right cosets N·g, representative = smallest member index.
    let mut coset_of = vec![usize::MAX; group.size()];
    let mut representatives = Vec::new();
    for g in 0..group.size() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let idx = representatives.len();
        representatives.push(g);
        for &n in normal.members() {
            coset_of[group.mul(n, g)] = idx;
        }
    }
    let r = representatives.len();
    let labels = representatives
        .iter()
        .map(|&g| format!("[{}]", group.label(g)))
        .collect();
    let table: Vec<Vec<usize>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| coset_of[group.mul(representatives[i], representatives[j])])
                .collect()
        })
        .collect();
    let quotient = FiniteMonoid::new(labels, table, coset_of[group.identity()])?;
    Ok(QuotientGroup {
        quotient,
        representatives,
        projection: coset_of,
    })
}
