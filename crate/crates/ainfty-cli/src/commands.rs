//! Command implementations. Each returns the report body (printed to stdout
//! verbatim, so a fixed input yields byte-identical output) and an exit code:
//! 0 = pass, 1 = violation or failed finding, 2 = malformed input.

use std::collections::BTreeMap;

use ainfty::algebra::{check_algebra, check_coalgebra, dualize_coalgebra};
use ainfty::cd::{check_cd_space, contratensor, hom_into_contramodule, verify_contratensor_adjunction};
use ainfty::comodule::check_comodule;
use ainfty::contramodule::{check_contramodule, induce_free_contramodule};
use ainfty::em::{
    contramodule_to_monad_module, em_check_contra_data, em_relations_check, EmFlavor, EmInstance,
};
use ainfty::module::{check_module, induce_free_module};
use ainfty::pairing::{iota, rationalize, verify_pairing_adjunction};
use ainfty::report::ViolationReport;
use ainfty::Error as LibError;

use crate::format::{
    parse_structure_file, register_spaces, serialize_structure_file, Structure, StructureFile,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

pub struct RunResult {
    pub body: String,
    pub exit: i32,
}

fn malformed(msg: impl std::fmt::Display) -> RunResult {
    RunResult { body: format!("malformed: {}\n", msg), exit: EXIT_MALFORMED }
}

/// Library errors signalling that the input data cannot name a computation
/// are malformed input; errors about a computation's outcome are failures.
fn lib_error(e: LibError) -> RunResult {
    let exit = match e {
        LibError::Descent(_) | LibError::NoSolution(_) => EXIT_FAIL,
        _ => EXIT_MALFORMED,
    };
    let prefix = if exit == EXIT_FAIL { "failure" } else { "malformed" };
    RunResult { body: format!("{}: {}\n", prefix, e), exit }
}

fn parse(text: &str) -> Result<StructureFile, RunResult> {
    parse_structure_file(text).map_err(|e| malformed(e))
}

fn lookup<'a>(sf: &'a StructureFile, name: &str) -> Result<&'a Structure, RunResult> {
    sf.structures
        .get(name)
        .ok_or_else(|| malformed(format!("no structure named `{}`", name)))
}

fn report_result(name: &str, rep: &ViolationReport) -> (String, bool) {
    (format!("== {}\n{}", name, rep), rep.passed())
}

fn check_one(name: &str, s: &Structure, n_max: Option<usize>) -> Result<(String, bool), RunResult> {
    let rep = match s {
        Structure::Algebra(a) => check_algebra(a, n_max),
        Structure::Coalgebra(c) => check_coalgebra(c, n_max),
        Structure::Module(m) => check_module(m, n_max),
        Structure::Comodule(p) => check_comodule(p, n_max),
        Structure::Contramodule(cm) => check_contramodule(cm, n_max),
        Structure::Pairing(p) => p.validate(n_max),
        Structure::CdSpace(n) => check_cd_space(n, n_max).map_err(lib_error)?,
    };
    Ok(report_result(name, &rep))
}

/// `check`: run the structure-appropriate identity checker on one named
/// structure or, with no name, every structure in the file.
pub fn cmd_check(text: &str, name: Option<&str>, n_max: Option<usize>) -> RunResult {
    let sf = match parse(text) {
        Ok(sf) => sf,
        Err(r) => return r,
    };
    let mut body = String::new();
    let mut all_pass = true;
    let targets: Vec<(&String, &Structure)> = match name {
        Some(n) => match sf.structures.get_key_value(n) {
            Some((k, v)) => vec![(k, v)],
            None => return malformed(format!("no structure named `{}`", n)),
        },
        None => sf.structures.iter().collect(),
    };
    for (n, s) in targets {
        match check_one(n, s, n_max) {
            Ok((text, pass)) => {
                body.push_str(&text);
                all_pass &= pass;
            }
            Err(r) => return r,
        }
    }
    RunResult { body, exit: if all_pass { EXIT_PASS } else { EXIT_FAIL } }
}

fn emit_graph(field: ainfty::scalar::Field, structures: Vec<(String, Structure)>) -> String {
    let mut out = StructureFile { field, spaces: BTreeMap::new(), structures: structures.into_iter().collect() };
    register_spaces(&mut out);
    serialize_structure_file(&out)
}

/// `dualize`: graded dual of a named coalgebra, emitted as a structure file
/// that can be piped back into `check`.
pub fn cmd_dualize(text: &str, name: &str) -> RunResult {
    let sf = match parse(text) {
        Ok(sf) => sf,
        Err(r) => return r,
    };
    let c = match lookup(&sf, name) {
        Ok(Structure::Coalgebra(c)) => c,
        Ok(s) => return malformed(format!("`{}` is a {}, not a coalgebra", name, s.kind())),
        Err(r) => return r,
    };
    let a = dualize_coalgebra(c);
    let body = emit_graph(sf.field, vec![(format!("{}_dual", name), Structure::Algebra(a))]);
    RunResult { body, exit: EXIT_PASS }
}

/// `pair-check`: validate that a pairing's components form a morphism of
/// A∞-algebras A → C*.
pub fn cmd_pair_check(text: &str, name: &str, n_max: Option<usize>) -> RunResult {
    let sf = match parse(text) {
        Ok(sf) => sf,
        Err(r) => return r,
    };
    let p = match lookup(&sf, name) {
        Ok(Structure::Pairing(p)) => p,
        Ok(s) => return malformed(format!("`{}` is a {}, not a pairing", name, s.kind())),
        Err(r) => return r,
    };
    let rep = p.validate(n_max);
    let (body, pass) = report_result(name, &rep);
    RunResult { body, exit: if pass { EXIT_PASS } else { EXIT_FAIL } }
}

fn subspace_lines(out: &mut String, sub: &ainfty::graded::Subspace) {
    for d in sub.ambient.degrees() {
        let k = sub.dim(d);
        if k > 0 {
            out.push_str(&format!("  deg {}: {}\n", d, k));
        }
    }
    out.push_str(&format!("  total: {}\n", sub.total_dim()));
}

/// `rationalize`: largest subcomodule of a module along a pairing; prints
/// the subspace profile and checks the induced comodule.
pub fn cmd_rationalize(text: &str, pairing: &str, module: &str, co_k_max: usize) -> RunResult {
    let sf = match parse(text) {
        Ok(sf) => sf,
        Err(r) => return r,
    };
    let p = match lookup(&sf, pairing) {
        Ok(Structure::Pairing(p)) => p,
        Ok(s) => return malformed(format!("`{}` is a {}, not a pairing", pairing, s.kind())),
        Err(r) => return r,
    };
    let m = match lookup(&sf, module) {
        Ok(Structure::Module(m)) => m,
        Ok(s) => return malformed(format!("`{}` is a {}, not a module", module, s.kind())),
        Err(r) => return r,
    };
    let rat = match rationalize(p, m, co_k_max) {
        Ok(r) => r,
        Err(e) => return lib_error(e),
    };
    let rep = check_comodule(&rat.comodule, None);
    let mut body = format!("iterations: {}\nsubspace:\n", rat.iterations);
    subspace_lines(&mut body, &rat.subspace);
    body.push_str(&format!("comodule check: {}", rep));
    RunResult { body, exit: if rep.passed() { EXIT_PASS } else { EXIT_FAIL } }
}

/// `iota`: underlying module of a right comodule along a pairing, emitted
/// as a structure file, with the module identities verified.
pub fn cmd_iota(text: &str, pairing: &str, comodule: &str) -> RunResult {
    let sf = match parse(text) {
        Ok(sf) => sf,
        Err(r) => return r,
    };
    let p = match lookup(&sf, pairing) {
        Ok(Structure::Pairing(p)) => p,
        Ok(s) => return malformed(format!("`{}` is a {}, not a pairing", pairing, s.kind())),
        Err(r) => return r,
    };
    let pm = match lookup(&sf, comodule) {
        Ok(Structure::Comodule(pm)) => pm,
        Ok(s) => return malformed(format!("`{}` is a {}, not a comodule", comodule, s.kind())),
        Err(r) => return r,
    };
    let m = match iota(p, pm) {
        Ok(m) => m,
        Err(e) => return lib_error(e),
    };
    let rep = check_module(&m, None);
    let mut body = emit_graph(
        sf.field,
        vec![
            (format!("{}_alg", pairing), Structure::Algebra(m.algebra.clone())),
            (format!("{}_iota", comodule), Structure::Module(m)),
        ],
    );
    body.push_str(&format!("# check: {}", rep));
    RunResult { body, exit: if rep.passed() { EXIT_PASS } else { EXIT_FAIL } }
}

/// `contratensor`: contratensor product of a contramodule against a
/// two-sided comodule; prints the quotient profile and checks the result.
pub fn cmd_contratensor(text: &str, contramodule: &str, cdspace: &str) -> RunResult {
    let sf = match parse(text) {
        Ok(sf) => sf,
        Err(r) => return r,
    };
    let m = match lookup(&sf, contramodule) {
        Ok(Structure::Contramodule(m)) => m,
        Ok(s) => return malformed(format!("`{}` is a {}, not a contramodule", contramodule, s.kind())),
        Err(r) => return r,
    };
    let n = match lookup(&sf, cdspace) {
        Ok(Structure::CdSpace(n)) => n,
        Ok(s) => return malformed(format!("`{}` is a {}, not a cd-space", cdspace, s.kind())),
        Err(r) => return r,
    };
    let ct = match contratensor(m, n) {
        Ok(ct) => ct,
        Err(e) => return lib_error(e),
    };
    let rep = check_comodule(&ct.comodule, None);
    let mut body = String::from("relations:\n");
    subspace_lines(&mut body, &ct.relations);
    body.push_str("quotient:\n");
    for d in ct.comodule.carrier.degrees() {
        body.push_str(&format!("  deg {}: {}\n", d, ct.comodule.carrier.dim(d)));
    }
    body.push_str(&format!("  total: {}\n", ct.comodule.carrier.total_dim()));
    body.push_str(&format!("comodule check: {}", rep));
    RunResult { body, exit: if rep.passed() { EXIT_PASS } else { EXIT_FAIL } }
}

/// `hom`: contramodule of colinear maps out of a two-sided comodule into a
/// right comodule; prints the carrier profile and checks the result.
pub fn cmd_hom(text: &str, cdspace: &str, comodule: &str) -> RunResult {
    let sf = match parse(text) {
        Ok(sf) => sf,
        Err(r) => return r,
    };
    let n = match lookup(&sf, cdspace) {
        Ok(Structure::CdSpace(n)) => n,
        Ok(s) => return malformed(format!("`{}` is a {}, not a cd-space", cdspace, s.kind())),
        Err(r) => return r,
    };
    let q = match lookup(&sf, comodule) {
        Ok(Structure::Comodule(q)) => q,
        Ok(s) => return malformed(format!("`{}` is a {}, not a comodule", comodule, s.kind())),
        Err(r) => return r,
    };
    let hc = match hom_into_contramodule(n, q) {
        Ok(hc) => hc,
        Err(e) => return lib_error(e),
    };
    let rep = check_contramodule(&hc.contramodule, None);
    let mut body = String::from("carrier:\n");
    subspace_lines(&mut body, &hc.subspace);
    body.push_str(&format!("contramodule check: {}", rep));
    RunResult { body, exit: if rep.passed() { EXIT_PASS } else { EXIT_FAIL } }
}

fn adjunction_body(
    label: &str,
    left_dim: usize,
    right_dim: usize,
    bijective: bool,
    findings: &[String],
    passed: bool,
) -> RunResult {
    let mut body = format!(
        "{}\nleft homs: {}\nright homs: {}\nbijective: {}\n",
        label, left_dim, right_dim, bijective
    );
    for f in findings {
        body.push_str(&format!("finding: {}\n", f));
    }
    body.push_str(if passed { "pass\n" } else { "fail\n" });
    RunResult { body, exit: if passed { EXIT_PASS } else { EXIT_FAIL } }
}

/// `adjunction pairing`: hom-set comparison for rationalization against the
/// underlying-module functor.
pub fn cmd_adjunction_pairing(
    text: &str,
    pairing: &str,
    comodule: &str,
    module: &str,
    co_k_max: usize,
) -> RunResult {
    let sf = match parse(text) {
        Ok(sf) => sf,
        Err(r) => return r,
    };
    let p = match lookup(&sf, pairing) {
        Ok(Structure::Pairing(p)) => p,
        Ok(s) => return malformed(format!("`{}` is a {}, not a pairing", pairing, s.kind())),
        Err(r) => return r,
    };
    let pm = match lookup(&sf, comodule) {
        Ok(Structure::Comodule(pm)) => pm,
        Ok(s) => return malformed(format!("`{}` is a {}, not a comodule", comodule, s.kind())),
        Err(r) => return r,
    };
    let m = match lookup(&sf, module) {
        Ok(Structure::Module(m)) => m,
        Ok(s) => return malformed(format!("`{}` is a {}, not a module", module, s.kind())),
        Err(r) => return r,
    };
    match verify_pairing_adjunction(p, pm, m, co_k_max) {
        Ok(rep) => adjunction_body(
            "module homs vs comodule homs",
            rep.dim_module_homs,
            rep.dim_comodule_homs,
            rep.bijective,
            &rep.findings,
            rep.passed(),
        ),
        Err(e) => lib_error(e),
    }
}

/// `adjunction contratensor`: hom-set comparison for the contratensor
/// product against colinear maps into a contramodule.
pub fn cmd_adjunction_contratensor(
    text: &str,
    contramodule: &str,
    cdspace: &str,
    comodule: &str,
) -> RunResult {
    let sf = match parse(text) {
        Ok(sf) => sf,
        Err(r) => return r,
    };
    let m = match lookup(&sf, contramodule) {
        Ok(Structure::Contramodule(m)) => m,
        Ok(s) => return malformed(format!("`{}` is a {}, not a contramodule", contramodule, s.kind())),
        Err(r) => return r,
    };
    let n = match lookup(&sf, cdspace) {
        Ok(Structure::CdSpace(n)) => n,
        Ok(s) => return malformed(format!("`{}` is a {}, not a cd-space", cdspace, s.kind())),
        Err(r) => return r,
    };
    let q = match lookup(&sf, comodule) {
        Ok(Structure::Comodule(q)) => q,
        Ok(s) => return malformed(format!("`{}` is a {}, not a comodule", comodule, s.kind())),
        Err(r) => return r,
    };
    match verify_contratensor_adjunction(m, n, q) {
        Ok(rep) => {
            let passed = rep.passed();
            adjunction_body(
                "comodule homs vs contramodule homs",
                rep.dim_comodule_homs,
                rep.dim_contramodule_homs,
                rep.bijective,
                &rep.findings,
                passed,
            )
        }
        Err(e) => lib_error(e),
    }
}

/// `em-check`: Eilenberg–Moore-side identity check of a module, left
/// comodule, or contramodule.
pub fn cmd_em_check(text: &str, name: &str, n_max: Option<usize>) -> RunResult {
    let sf = match parse(text) {
        Ok(sf) => sf,
        Err(r) => return r,
    };
    let rep = match lookup(&sf, name) {
        Ok(Structure::Module(m)) => {
            em_relations_check(&EmInstance::Module(m), EmFlavor::MonadModule, n_max)
        }
        Ok(Structure::Comodule(p)) => {
            em_relations_check(&EmInstance::Comodule(p), EmFlavor::ComonadComodule, n_max)
        }
        Ok(Structure::Contramodule(cm)) => {
            em_check_contra_data(&contramodule_to_monad_module(cm), n_max)
        }
        Ok(s) => {
            return malformed(format!(
                "`{}` is a {}; em-check applies to modules, comodules, and contramodules",
                name,
                s.kind()
            ))
        }
        Err(r) => return r,
    };
    let (body, pass) = report_result(name, &rep);
    RunResult { body, exit: if pass { EXIT_PASS } else { EXIT_FAIL } }
}

/// `free module` / `free contramodule`: induced structure on a named space,
/// emitted as a structure file.
pub fn cmd_free(text: &str, kind: &str, over: &str, space: &str) -> RunResult {
    let sf = match parse(text) {
        Ok(sf) => sf,
        Err(r) => return r,
    };
    let Some(w) = sf.spaces.get(space) else {
        return malformed(format!("no space named `{}`", space));
    };
    match kind {
        "module" => {
            let a = match lookup(&sf, over) {
                Ok(Structure::Algebra(a)) => a,
                Ok(s) => return malformed(format!("`{}` is a {}, not an algebra", over, s.kind())),
                Err(r) => return r,
            };
            let m = induce_free_module(a, w);
            let rep = check_module(&m, None);
            let mut body = emit_graph(
                sf.field,
                vec![
                    (over.to_string(), Structure::Algebra(a.clone())),
                    (format!("free_{}", space), Structure::Module(m)),
                ],
            );
            body.push_str(&format!("# check: {}", rep));
            RunResult { body, exit: if rep.passed() { EXIT_PASS } else { EXIT_FAIL } }
        }
        "contramodule" => {
            let c = match lookup(&sf, over) {
                Ok(Structure::Coalgebra(c)) => c,
                Ok(s) => return malformed(format!("`{}` is a {}, not a coalgebra", over, s.kind())),
                Err(r) => return r,
            };
            let cm = induce_free_contramodule(c, w);
            let rep = check_contramodule(&cm, None);
            let mut body = emit_graph(
                sf.field,
                vec![
                    (over.to_string(), Structure::Coalgebra(c.clone())),
                    (format!("free_{}", space), Structure::Contramodule(cm)),
                ],
            );
            body.push_str(&format!("# check: {}", rep));
            RunResult { body, exit: if rep.passed() { EXIT_PASS } else { EXIT_FAIL } }
        }
        other => malformed(format!("unknown free construction `{}`", other)),
    }
}

/// `dualize` for comodules: left comodule ↦ module over the dual algebra,
/// exposed through the em layer's adjoint duality.
pub fn cmd_adjoint_dualize(text: &str, name: &str) -> RunResult {
    let sf = match parse(text) {
        Ok(sf) => sf,
        Err(r) => return r,
    };
    match lookup(&sf, name) {
        Ok(Structure::Module(m)) => match ainfty::em::adjoint_dualize(m) {
            Ok(p) => {
                let body = emit_graph(
                    sf.field,
                    vec![
                        (format!("{}_coa", name), Structure::Coalgebra(p.coalgebra.clone())),
                        (format!("{}_dual", name), Structure::Comodule(p)),
                    ],
                );
                RunResult { body, exit: EXIT_PASS }
            }
            Err(e) => lib_error(e),
        },
        Ok(Structure::Comodule(p)) => match ainfty::em::adjoint_undualize(p) {
            Ok(m) => {
                let body = emit_graph(
                    sf.field,
                    vec![
                        (format!("{}_alg", name), Structure::Algebra(m.algebra.clone())),
                        (format!("{}_dual", name), Structure::Module(m)),
                    ],
                );
                RunResult { body, exit: EXIT_PASS }
            }
            Err(e) => lib_error(e),
        },
        Ok(s) => malformed(format!(
            "`{}` is a {}; adjoint duality applies to modules and comodules",
            name,
            s.kind()
        )),
        Err(r) => r,
    }
}
