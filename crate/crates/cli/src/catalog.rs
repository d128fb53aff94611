//! The canonical fixture catalog. Every fixture is generated from the core
//! constructors and serialized to canonical JSON, so the committed golden
//! inputs, the `--fixture` flag, and the library fixtures cannot drift apart.

use serde_json::{json, Map, Value};

use globalize_core::algebra::FinDimAlgebra;
use globalize_core::exact::{Field, Matrix, Scalar};
use globalize_core::fintop::FinTopology;
use globalize_core::fixtures as core_fixtures;
use globalize_core::monoid::FiniteMonoid;
use globalize_core::pca;
use globalize_core::setact::{view_global_as_partial, GlobalAction, PartialActionDatum};
use globalize_core::topact::TopPartialModule;

use crate::schema::InputError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    SetAction,
    TopAction,
    Pca,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::SetAction => "set-action",
            Kind::TopAction => "top-action",
            Kind::Pca => "pca",
        }
    }
}

/// Catalog names with their pipelines and one-line descriptions.
pub fn list() -> Vec<(&'static str, Kind, &'static str)> {
    vec![
        (
            "z2part",
            Kind::SetAction,
            "Z/2 acting partially on two points; globalization has three classes",
        ),
        (
            "global:z2",
            Kind::SetAction,
            "the regular Z/2 action viewed as a partial action with full domain",
        ),
        (
            "counter",
            Kind::TopAction,
            "indiscrete carrier with a discrete domain topology; not globalizable",
        ),
        (
            "finite-ggpm",
            Kind::TopAction,
            "restriction to a non-open row; globalizable but not a topological partial action",
        ),
        (
            "z2sier",
            Kind::TopAction,
            "topological partial action of discrete Z/2 on the Sierpinski space",
        ),
        (
            "ab1:z2/z2",
            Kind::Pca,
            "group-algebra coaction from the full subgroup of Z/2",
        ),
        (
            "ab1:sym3/alt3",
            Kind::Pca,
            "group-algebra coaction from the alternating subgroup of S3",
        ),
        (
            "ab2:alpha=0",
            Kind::Pca,
            "ground field coacting along the Sweedler idempotent, alpha = 0",
        ),
        (
            "ab2:alpha=1",
            Kind::Pca,
            "ground field coacting along the Sweedler idempotent, alpha = 1",
        ),
        (
            "global:h4",
            Kind::Pca,
            "the Sweedler bialgebra coacting on itself: a global comodule algebra",
        ),
        (
            "global:kz2",
            Kind::Pca,
            "the group bialgebra of Z/2 coacting on itself",
        ),
    ]
}

/// Canonical input bytes for a fixture name; parametrized names such as
/// `ab2:alpha=<rational>` are accepted beyond the static list.
pub fn fixture(name: &str) -> Result<(Kind, String), InputError> {
    match name {
        "z2part" => Ok((
            Kind::SetAction,
            render(set_action_value(&core_fixtures::z2part(), json!("cyclic:2"))),
        )),
        "global:z2" => {
            let reg = GlobalAction::regular(&FiniteMonoid::cyclic(2).unwrap());
            let d = view_global_as_partial(&reg);
            Ok((
                Kind::SetAction,
                render(set_action_value(&d, json!("cyclic:2"))),
            ))
        }
        "counter" => Ok((
            Kind::TopAction,
            render(top_action_value(
                &core_fixtures::counter(),
                json!("trivial"),
                true,
            )),
        )),
        "finite-ggpm" => Ok((
            Kind::TopAction,
            render(top_action_value(
                &core_fixtures::finite_ggpm(),
                json!("cyclic:2"),
                false,
            )),
        )),
        "z2sier" => Ok((
            Kind::TopAction,
            render(top_action_value(
                &core_fixtures::z2sier(),
                json!("cyclic:2"),
                false,
            )),
        )),
        "ab1:z2" | "ab1:z2/z2" => {
            let c2 = FiniteMonoid::cyclic(2).unwrap();
            let p = pca::fixture_integral_coaction(&c2, &[0, 1], Field::Q)
                .map_err(|e| InputError::construction("fixture ab1:z2/z2", e))?;
            Ok((Kind::Pca, render(pca_value(&p, json!("group:cyclic:2")))))
        }
        "ab1:sym3" | "ab1:sym3/alt3" => {
            let s3 = FiniteMonoid::symmetric(3).unwrap();
            let a3: Vec<usize> = ["123", "231", "312"]
                .iter()
                .map(|l| s3.index_of(l).unwrap())
                .collect();
            let p = pca::fixture_integral_coaction(&s3, &a3, Field::Q)
                .map_err(|e| InputError::construction("fixture ab1:sym3/alt3", e))?;
            Ok((Kind::Pca, render(pca_value(&p, json!("group:sym:3")))))
        }
        "global:h4" => {
            let h = globalize_core::bialgebra::Bialgebra::sweedler_h4(Field::Q)
                .map_err(|e| InputError::construction("fixture global:h4", e))?;
            let p = pca::fixture_global_self_coaction(h)
                .map_err(|e| InputError::construction("fixture global:h4", e))?;
            Ok((Kind::Pca, render(pca_value(&p, json!("h4")))))
        }
        "global:kz2" => {
            let h = globalize_core::bialgebra::Bialgebra::group_bialgebra(
                &FiniteMonoid::cyclic(2).unwrap(),
                Field::Q,
            );
            let p = pca::fixture_global_self_coaction(h)
                .map_err(|e| InputError::construction("fixture global:kz2", e))?;
            Ok((Kind::Pca, render(pca_value(&p, json!("group:cyclic:2")))))
        }
        other => {
            if let Some(alpha) = other.strip_prefix("ab2:alpha=") {
                let alpha = Field::Q
                    .parse_scalar(alpha)
                    .map_err(|e| InputError::construction("fixture ab2", e))?;
                let p = pca::fixture_sweedler_coaction(Field::Q, &alpha)
                    .map_err(|e| InputError::construction("fixture ab2", e))?;
                return Ok((Kind::Pca, render(pca_value(&p, json!("h4")))));
            }
            Err(InputError::UnknownFixture(other.to_string()))
        }
    }
}

fn render(v: Value) -> String {
    let mut out = serde_json::to_string_pretty(&v).expect("fixture serializes");
    out.push('\n');
    out
}

fn set_action_value(d: &PartialActionDatum, monoid: Value) -> Value {
    let domain: Vec<Value> = d
        .domain()
        .iter()
        .map(|&(x, m)| json!([d.x_label(x), d.monoid().label(m)]))
        .collect();
    let mut rho = Map::new();
    for &(x, m) in d.domain() {
        rho.insert(
            format!("{},{}", d.x_label(x), d.monoid().label(m)),
            json!(d.x_label(d.act(x, m).unwrap())),
        );
    }
    json!({
        "schema": 1,
        "monoid": monoid,
        "X": d.x_labels(),
        "domain": domain,
        "rho": rho,
    })
}

fn topology_value(t: &FinTopology, labels: &[String]) -> Value {
    let opens: Vec<Value> = t
        .opens()
        .iter()
        .map(|&u| {
            let pts: Vec<&str> = (0..t.carrier_size())
                .filter(|&i| u & (1 << i) != 0)
                .map(|i| labels[i].as_str())
                .collect();
            json!(pts)
        })
        .collect();
    json!({ "opens": opens })
}

fn top_action_value(m: &TopPartialModule, monoid: Value, include_td: bool) -> Value {
    let base = m.base();
    let mut v = set_action_value(base, monoid);
    let obj = v.as_object_mut().unwrap();
    obj.insert(
        "tX".to_string(),
        topology_value(m.carrier_topology(), base.x_labels()),
    );
    obj.insert(
        "tM".to_string(),
        topology_value(m.monoid_topology(), base.monoid().labels()),
    );
    if include_td {
        let t_d = m.domain_topology();
        let opens: Vec<Value> = t_d
            .opens()
            .iter()
            .map(|&u| {
                let pairs: Vec<Value> = (0..t_d.carrier_size())
                    .filter(|&p| u & (1 << p) != 0)
                    .map(|p| {
                        let (x, mm) = base.domain()[p];
                        json!([base.x_label(x), base.monoid().label(mm)])
                    })
                    .collect();
                json!(pairs)
            })
            .collect();
        obj.insert("tD".to_string(), json!({ "opens": opens }));
    }
    v
}

fn scalar_str(s: &Scalar) -> String {
    s.to_string()
}

fn algebra_value(a: &FinDimAlgebra) -> Value {
    let mut constants = Map::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let mut row = Map::new();
            for k in 0..a.dim() {
                let c = a.constant(i, j, k);
                if !c.is_zero() {
                    row.insert(k.to_string(), json!(scalar_str(c)));
                }
            }
            if !row.is_empty() {
                constants.insert(format!("{i},{j}"), Value::Object(row));
            }
        }
    }
    let unit: Vec<String> = a.unit().iter().map(scalar_str).collect();
    json!({
        "dim": a.dim(),
        "basis": a.basis_labels(),
        "constants": constants,
        "unit": unit,
    })
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(scalar_str).collect())
        .collect()
}

fn pca_value(p: &pca::AlgebraicPca, bialgebra: Value) -> Value {
    json!({
        "schema": 1,
        "field": p.field().to_string(),
        "algebra": algebra_value(p.algebra()),
        "bialgebra": bialgebra,
        "coaction": matrix_rows(p.coaction()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema;

    #[test]
    fn every_catalog_fixture_parses_back() {
        for (name, kind, _) in list() {
            let (k, bytes) = fixture(name).unwrap();
            assert_eq!(k, kind, "{name}");
            match kind {
                Kind::SetAction => {
                    schema::parse_set_action(&bytes).unwrap();
                }
                Kind::TopAction => {
                    schema::parse_top_action(&bytes).unwrap();
                }
                Kind::Pca => {
                    let (a, h, c) = schema::parse_pca_parts(&bytes).unwrap();
                    globalize_core::pca::verify_algebraic_pca(a, h, c).unwrap();
                }
            }
        }
    }

    #[test]
    fn z2part_round_trips_exactly() {
        let (_, bytes) = fixture("z2part").unwrap();
        let parsed = schema::parse_set_action(&bytes).unwrap();
        assert_eq!(parsed, core_fixtures::z2part());
    }

    #[test]
    fn counter_round_trips_with_its_domain_topology() {
        let (_, bytes) = fixture("counter").unwrap();
        let parsed = schema::parse_top_action(&bytes).unwrap();
        let expected = core_fixtures::counter();
        assert_eq!(parsed.base(), expected.base());
        assert_eq!(parsed.carrier_topology(), expected.carrier_topology());
        assert_eq!(parsed.domain_topology(), expected.domain_topology());
    }

    #[test]
    fn fixture_bytes_are_deterministic() {
        for (name, _, _) in list() {
            assert_eq!(fixture(name).unwrap().1, fixture(name).unwrap().1, "{name}");
        }
    }

    #[test]
    fn parametrized_alpha_is_accepted() {
        let (_, bytes) = fixture("ab2:alpha=-3/7").unwrap();
        let (a, h, c) = schema::parse_pca_parts(&bytes).unwrap();
        globalize_core::pca::verify_algebraic_pca(a, h, c).unwrap();
        assert!(fixture("nope").is_err());
    }
}
