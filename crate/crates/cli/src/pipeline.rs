//! The three verification pipelines, each producing an ordered verdict report.

use serde_json::json;

use globalize_core::exact::Matrix;
use globalize_core::pca;
use globalize_core::setact::{
    check_gl1_pullback, check_gl2_universal, globalize_set, verify_partial_action, GlobalAction,
    Gl1Verdict,
};
use globalize_core::topact::{
    check_epsilon_open_embedding, globalize_top, is_topological_partial_action,
    verify_top_module, TopPartialModule, WitnessSide,
};

use crate::report::RunReport;
use crate::schema::{self, InputError};

/// Where the input came from, for the report header.
pub struct Input {
    pub source: String,
    pub bytes: String,
}

impl Input {
    pub fn from_fixture(name: &str, bytes: String) -> Input {
        Input {
            source: format!("fixture:{name}"),
            bytes,
        }
    }

    pub fn from_file(path: &str, bytes: String) -> Input {
        Input {
            source: format!("file:{path}"),
            bytes,
        }
    }
}

/// Default cap on the universal-property enumeration.
pub const GL2_CAP: u128 = 1_000_000;

pub fn run_set_action(
    input: &Input,
    gl2_target: Option<&Input>,
    seed: u64,
) -> Result<RunReport, InputError> {
    let mut report = RunReport::new("set-action", &input.source, input.bytes.as_bytes(), seed);
    let datum = schema::parse_set_action(&input.bytes)?;
    report.dim("carrier", datum.carrier_size());
    report.dim("monoid", datum.monoid().size());
    report.dim("domain", datum.domain_size());

    match verify_partial_action(&datum) {
        Ok(()) => report.pass("axioms"),
        Err(v) => {
            report.fail("axioms", v.to_string());
            return Ok(report);
        }
    }

    let res = match globalize_set(&datum) {
        Ok(res) => {
            report.pass("globalize");
            res
        }
        Err(e) => {
            report.fail("globalize", e.to_string());
            return Ok(report);
        }
    };
    report.dim("classes", res.global.size());
    let classes: Vec<Vec<String>> = res
        .classes
        .iter()
        .map(|members| {
            members
                .iter()
                .map(|&(x, m)| format!("{},{}", datum.x_label(x), datum.monoid().label(m)))
                .collect()
        })
        .collect();
    report.note("classes", json!(classes));
    let action: Vec<Vec<String>> = (0..res.global.size())
        .map(|c| {
            (0..datum.monoid().size())
                .map(|m| res.global.label(res.global.act(c, m)).to_string())
                .collect()
        })
        .collect();
    report.note("action", json!(action));
    report.note(
        "epsilon",
        json!(res
            .epsilon
            .iter()
            .map(|&c| res.global.label(c))
            .collect::<Vec<_>>()),
    );

    match check_gl1_pullback(&datum, &res) {
        Gl1Verdict::Pass => report.pass("gl1-pullback"),
        Gl1Verdict::LibraryDefect(w) => report.fail("gl1-pullback", w),
    }

    if let Some(target) = gl2_target {
        let z: GlobalAction = schema::parse_global_action(&target.bytes)?;
        let cert = check_gl2_universal(&datum, &res, &z, GL2_CAP)
            .map_err(|e| InputError::construction("gl2 target", e))?;
        report.note(
            "gl2",
            json!({
                "global_homs": cert.global_homs,
                "partial_homs": cert.partial_homs,
            }),
        );
        if cert.bijective {
            report.pass("gl2-universal");
        } else {
            report.fail(
                "gl2-universal",
                format!(
                    "hom-set sizes {} vs {} do not correspond",
                    cert.global_homs, cert.partial_homs
                ),
            );
        }
    }
    Ok(report)
}

fn witness_string(m: &TopPartialModule, pairs: &[(usize, usize)], side: WitnessSide) -> String {
    let base = m.base();
    let rendered: Vec<String> = pairs
        .iter()
        .map(|&(x, mm)| format!("({},{})", base.x_label(x), base.monoid().label(mm)))
        .collect();
    let set = format!("{{{}}}", rendered.join(", "));
    match side {
        WitnessSide::DeclaredNotInitial => {
            format!("open {set} of tD is not open in the coarsest admissible topology")
        }
        WitnessSide::InitialNotDeclared => {
            format!("coarsest-topology open {set} is not open in tD")
        }
    }
}

pub fn run_top_action(input: &Input, seed: u64) -> Result<RunReport, InputError> {
    let mut report = RunReport::new("top-action", &input.source, input.bytes.as_bytes(), seed);
    let module = schema::parse_top_action(&input.bytes)?;
    let base = module.base();
    report.dim("carrier", base.carrier_size());
    report.dim("monoid", base.monoid().size());
    report.dim("domain", base.domain_size());

    match verify_top_module(&module) {
        Ok(()) => report.pass("module-axioms"),
        Err(v) => {
            report.fail("module-axioms", v.to_string());
            return Ok(report);
        }
    }

    let tpa = is_topological_partial_action(&module);
    report.note("topological_partial_action", json!(tpa.is_tpa));
    report.note(
        "domains_open",
        json!(base
            .monoid()
            .labels()
            .iter()
            .zip(&tpa.domains_open)
            .map(|(l, &b)| (l.clone(), b))
            .collect::<std::collections::BTreeMap<_, _>>()),
    );

    let res = globalize_top(&module).map_err(|e| InputError::construction("globalize", e))?;
    report.dim("classes", res.set_result.global.size());
    if res.globalizable {
        report.pass("globalizable");
        let eps = check_epsilon_open_embedding(&module, &res);
        report.note("epsilon_open_embedding", json!(eps.open_embedding));
        report.note("preimage_identity", json!(eps.preimage_identity));
    } else {
        let w = res.witness.as_ref().expect("failure carries a witness");
        report.fail("globalizable", witness_string(&module, &w.pairs, w.side));
    }
    Ok(report)
}

pub struct PcaOptions {
    pub envelope: bool,
    pub compare: bool,
    pub dump_matrices: bool,
}

fn matrix_note(m: &Matrix) -> serde_json::Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|s| s.to_string()).collect())
        .collect();
    json!(rows)
}

pub fn run_pca(input: &Input, opts: &PcaOptions, seed: u64) -> Result<RunReport, InputError> {
    let mut report = RunReport::new("pca", &input.source, input.bytes.as_bytes(), seed);
    let (algebra, bialgebra, coaction) = schema::parse_pca_parts(&input.bytes)?;
    report.dim("algebra", algebra.dim());
    report.dim("bialgebra", bialgebra.dim());
    if opts.dump_matrices {
        report.note("coaction", matrix_note(&coaction));
    }

    let verified = match pca::verify_algebraic_pca(algebra, bialgebra, coaction) {
        Ok(p) => {
            report.pass("axioms");
            p
        }
        Err(e) => {
            report.fail("axioms", e.to_string());
            return Ok(report);
        }
    };

    if opts.compare {
        match pca::compare_envelope_globalization(verified) {
            Ok(cmp) => {
                report.pass("globalization");
                report.pass("envelope-axioms");
                report.pass("comparison");
                let glob = &cmp.globalization;
                report.dim("e_prime_ideal", glob.geometric.ideal.dim());
                report.dim("a_bullet_h", glob.geometric.a_bullet_h.dim());
                report.dim("y", cmp.dim_y);
                report.dim("b", cmp.dim_b);
                report.note("strict", json!(cmp.strict));
                if opts.dump_matrices {
                    report.note("pi", matrix_note(&glob.geometric.pi));
                    report.note("rho", matrix_note(&glob.geometric.rho));
                    report.note("vartheta", matrix_note(&glob.vartheta));
                    report.note("epsilon_a", matrix_note(&glob.epsilon_a));
                    report.note("j", matrix_note(&cmp.j));
                    report.note("p", matrix_note(&cmp.envelope.p));
                }
            }
            Err(e) => {
                report.fail("comparison", e.to_string());
            }
        }
        return Ok(report);
    }

    match pca::globalize_pca(verified.clone()) {
        Ok(glob) => {
            report.pass("globalization");
            report.dim("e_prime_ideal", glob.geometric.ideal.dim());
            report.dim("a_bullet_h", glob.geometric.a_bullet_h.dim());
            report.dim("y", glob.y.dim());
            if opts.dump_matrices {
                report.note("pi", matrix_note(&glob.geometric.pi));
                report.note("rho", matrix_note(&glob.geometric.rho));
                report.note("vartheta", matrix_note(&glob.vartheta));
                report.note("epsilon_a", matrix_note(&glob.epsilon_a));
            }
        }
        Err(e) => {
            report.fail("globalization", e.to_string());
            return Ok(report);
        }
    }

    if opts.envelope {
        match pca::enveloping_coaction(&verified) {
            Ok(env) => {
                report.pass("envelope-axioms");
                report.dim("b", env.b.dim());
                if opts.dump_matrices {
                    report.note("theta", matrix_note(&env.theta));
                    report.note("p", matrix_note(&env.p));
                }
            }
            Err(e) => {
                report.fail("envelope-axioms", e.to_string());
            }
        }
    }
    Ok(report)
}
