//! Seeded fuzz campaigns over randomly generated structures.
//!
//! Targets: `identity` checks generated (co)algebras against their own
//! defining identities, `functor` checks that dualization lands in valid
//! algebras, `adjunction` verifies the hom-set comparison for
//! rationalization on generated instances.
//!
//! With `--mutate` each case gets one random coefficient perturbation before
//! checking; the checker is then expected to flag the case, and a missed
//! mutation fails the campaign. Flagged mutants are shrunk by zeroing
//! structure coefficients one at a time while the violation persists, and
//! the shrunk witness is written to the corpus directory under the SHA-256
//! of its serialization. Corpus files are replayed (in name order) before
//! fresh generation.

use std::fmt;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use ainfty::algebra::{check_algebra, check_coalgebra, dualize_coalgebra, AInftyAlgebra, AInftyCoalgebra};
use ainfty::comodule::{comodule_over_self, Side};
use ainfty::generate::{
    dga_algebra, dga_coalgebra, generate_even_algebra, generate_even_coalgebra, rand_scalar, rng,
};
use ainfty::graded::GradedMap;
use ainfty::module::module_over_self;
use ainfty::pairing::{identity_pairing, verify_pairing_adjunction};
use ainfty::report::ViolationReport;
use ainfty::scalar::Field;

use crate::commands::{cmd_check, RunResult, EXIT_FAIL, EXIT_PASS};
use crate::format::{register_spaces, serialize_structure_file, Structure, StructureFile};

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Identity,
    Functor,
    Adjunction,
}

impl std::str::FromStr for Target {
    type Err = String;
    fn from_str(s: &str) -> Result<Target, String> {
        match s {
            "identity" => Ok(Target::Identity),
            "functor" => Ok(Target::Functor),
            "adjunction" => Ok(Target::Adjunction),
            other => Err(format!("unknown fuzz target `{}`", other)),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Identity => "identity",
            Target::Functor => "functor",
            Target::Adjunction => "adjunction",
        })
    }
}

pub struct FuzzConfig {
    pub target: Target,
    pub field: Field,
    pub seed: u64,
    pub count: u64,
    pub mutate: bool,
    pub corpus: Option<PathBuf>,
}

#[derive(Clone)]
enum Subject {
    Algebra(AInftyAlgebra),
    Coalgebra(AInftyCoalgebra),
}

impl Subject {
    fn check(&self, target: Target) -> ViolationReport {
        match (self, target) {
            (Subject::Algebra(a), _) => check_algebra(a, None),
            (Subject::Coalgebra(c), Target::Functor) => check_algebra(&dualize_coalgebra(c), None),
            (Subject::Coalgebra(c), _) => check_coalgebra(c, None),
        }
    }

    fn ops_mut(&mut self) -> Vec<usize> {
        match self {
            Subject::Algebra(a) => a.ops().map(|(k, _)| k).collect(),
            Subject::Coalgebra(c) => c.ops().map(|(k, _)| k).collect(),
        }
    }

    fn op(&self, k: usize) -> Option<&GradedMap> {
        match self {
            Subject::Algebra(a) => a.op(k),
            Subject::Coalgebra(c) => c.op(k),
        }
    }

    fn set_op(&mut self, k: usize, m: GradedMap) {
        match self {
            Subject::Algebra(a) => a.set_op(k, m).expect("same-shape op"),
            Subject::Coalgebra(c) => c.set_op(k, m).expect("same-shape op"),
        }
    }

    fn to_structure(&self) -> Structure {
        match self {
            Subject::Algebra(a) => Structure::Algebra(a.clone()),
            Subject::Coalgebra(c) => Structure::Coalgebra(c.clone()),
        }
    }

    fn field(&self) -> Field {
        match self {
            Subject::Algebra(a) => a.carrier.field,
            Subject::Coalgebra(c) => c.carrier.field,
        }
    }
}

/// Add one random nonzero coefficient somewhere in an existing operation.
/// Returns false when the subject has no room for a perturbation.
fn mutate_subject(s: &mut Subject, r: &mut ChaCha8Rng) -> bool {
    let ks = s.ops_mut();
    if ks.is_empty() {
        return false;
    }
    for _ in 0..32 {
        let k = ks[r.gen_range(0..ks.len())];
        let op = s.op(k).expect("listed op").clone();
        let degs: Vec<i64> = op
            .source
            .degrees()
            .filter(|&d| op.source.dim(d) > 0 && op.target.dim(d + op.degree) > 0)
            .collect();
        if degs.is_empty() {
            continue;
        }
        let d = degs[r.gen_range(0..degs.len())];
        let col = r.gen_range(0..op.source.dim(d));
        let row = r.gen_range(0..op.target.dim(d + op.degree));
        let mut op2 = op.clone();
        op2.add_entry(d, col, row, &rand_scalar(r, op.field()));
        if op2.sub(&op).is_zero() {
            continue; // perturbation cancelled the entry; retry
        }
        s.set_op(k, op2);
        return true;
    }
    false
}

/// Zero coefficients one at a time while the check still fails.
fn shrink_subject(s: &mut Subject, target: Target) {
    loop {
        let mut changed = false;
        for k in s.ops_mut() {
            let op = s.op(k).expect("listed op").clone();
            for d in op.nonzero_degrees().collect::<Vec<_>>() {
                let b = op.block(d);
                for j in 0..b.cols {
                    for i in 0..b.rows {
                        let cur = s.op(k).expect("listed op").clone();
                        let v = cur.entry(d, j, i);
                        if v.is_zero() {
                            continue;
                        }
                        let mut trial = cur.clone();
                        trial.add_entry(d, j, i, &v.neg());
                        s.set_op(k, trial);
                        if s.check(target).passed() {
                            s.set_op(k, cur); // zeroing repaired it; keep the entry
                        } else {
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn serialize_subject(s: &Subject) -> String {
    let mut sf = StructureFile {
        field: s.field(),
        spaces: Default::default(),
        structures: [("case".to_string(), s.to_structure())].into_iter().collect(),
    };
    register_spaces(&mut sf);
    serialize_structure_file(&sf)
}

fn save_to_corpus(dir: &Path, text: &str) -> std::io::Result<String> {
    let mut h = Sha256::new();
    h.update(text.as_bytes());
    let name = format!("{:x}.af", h.finalize());
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(&name), text)?;
    Ok(name)
}

fn replay(dir: &Path, body: &mut String) -> std::io::Result<()> {
    if !dir.exists() {
        return Ok(());
    }
    let mut names: Vec<String> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .filter(|e| e.path().is_file())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    for name in names {
        let text = std::fs::read_to_string(dir.join(&name))?;
        let res = cmd_check(&text, None, None);
        let verdict = match res.exit {
            EXIT_PASS => "pass",
            EXIT_FAIL => "fail",
            _ => "malformed",
        };
        body.push_str(&format!("replay {}: {}\n", name, verdict));
    }
    Ok(())
}

fn adjunction_case(field: Field, seed: u64) -> Result<bool, ainfty::Error> {
    let c = generate_even_coalgebra(field, seed);
    let p = identity_pairing(&c);
    let m = module_over_self(p.algebra());
    let mprime = comodule_over_self(&c, Side::Right);
    let rep = verify_pairing_adjunction(&p, &mprime, &m, c.k_max)?;
    Ok(rep.passed())
}

pub fn fuzz_campaign(cfg: &FuzzConfig) -> RunResult {
    let mut body = format!("target: {}\nseed: {}\ncount: {}\n", cfg.target, cfg.seed, cfg.count);
    if let Some(dir) = &cfg.corpus {
        if let Err(e) = replay(dir, &mut body) {
            body.push_str(&format!("replay error: {}\n", e));
            return RunResult { body, exit: EXIT_FAIL };
        }
    }
    if cfg.count == 0 {
        body.push_str("no cases run\n");
        return RunResult { body, exit: EXIT_PASS };
    }
    let mut unexpected = 0u64;
    for i in 0..cfg.count {
        let seed = cfg.seed.wrapping_add(i);
        let line = match cfg.target {
            Target::Adjunction => match adjunction_case(cfg.field, seed) {
                Ok(true) => "pass".to_string(),
                Ok(false) => {
                    unexpected += 1;
                    "fail".to_string()
                }
                Err(e) => {
                    unexpected += 1;
                    format!("error {}", e)
                }
            },
            Target::Identity | Target::Functor => {
                // mutation needs a base whose identities have nonvanishing
                // composites; word (co)algebras with words up to length 3
                // have nontrivial triple products, unlike the small even
                // families used for plain identity checking
                let subject = match (cfg.mutate, cfg.target == Target::Identity && i % 2 == 0) {
                    (true, true) => {
                        let mut r = rng(seed);
                        Subject::Algebra(dga_algebra(cfg.field, 1, 3, false, &mut r))
                    }
                    (true, false) => {
                        let mut r = rng(seed);
                        Subject::Coalgebra(dga_coalgebra(cfg.field, 1, 3, false, &mut r))
                    }
                    (false, true) => Subject::Algebra(generate_even_algebra(cfg.field, seed)),
                    (false, false) => Subject::Coalgebra(generate_even_coalgebra(cfg.field, seed)),
                };
                if cfg.mutate {
                    // a single perturbation can land in a block where every
                    // identity term vanishes; retry until one is caught
                    let mut r = rng(seed ^ 0x6d75_7461_7465);
                    let mut caught = None;
                    let mut mutated = false;
                    for _ in 0..16 {
                        let mut trial = subject.clone();
                        if !mutate_subject(&mut trial, &mut r) {
                            break;
                        }
                        mutated = true;
                        if !trial.check(cfg.target).passed() {
                            caught = Some(trial);
                            break;
                        }
                    }
                    match caught {
                        None if !mutated => "skipped (nothing to mutate)".to_string(),
                        None => "mutations survived".to_string(),
                        Some(mut bad) => {
                            shrink_subject(&mut bad, cfg.target);
                            let text = serialize_subject(&bad);
                            if let Some(dir) = &cfg.corpus {
                                match save_to_corpus(dir, &text) {
                                    Ok(name) => format!("caught, saved {}", name),
                                    Err(e) => format!("caught, save failed: {}", e),
                                }
                            } else {
                                "caught".to_string()
                            }
                        }
                    }
                } else {
                    let rep = subject.check(cfg.target);
                    if rep.passed() {
                        "pass".to_string()
                    } else {
                        unexpected += 1;
                        let text = serialize_subject(&subject);
                        if let Some(dir) = &cfg.corpus {
                            match save_to_corpus(dir, &text) {
                                Ok(name) => format!("violation, saved {}", name),
                                Err(e) => format!("violation, save failed: {}", e),
                            }
                        } else {
                            "violation".to_string()
                        }
                    }
                }
            }
        };
        body.push_str(&format!("case {} seed {}: {}\n", i, seed, line));
    }
    body.push_str(&format!("unexpected: {}\n", unexpected));
    RunResult { body, exit: if unexpected == 0 { EXIT_PASS } else { EXIT_FAIL } }
}
