//! Structure-constant file format: a line-oriented, human-writable document
//! declaring a field, named graded spaces, and named structures with sparse
//! operation entries. Output degrees are implied by arity and input degrees
//! and validated against the declared slot.
//!
//! Grammar (one declaration per line, `#` starts a comment):
//!
//! ```text
//! field rational            | field mod <p>
//! space <name> <deg>:<dim> ...
//! algebra <name> <space> <k_max>
//! coalgebra <name> <space> <k_max>
//! module <name> <algebra> <space> <k_max>
//! comodule <name> <coalgebra> left|right <space> <k_max>
//! contramodule <name> <coalgebra> <space> <k_max>
//! pairing <name> <algebra> <coalgebra>
//! cdspace <name> <left-comodule> <right-comodule>
//! op <name> <k> <src_degs> <src_idxs> <tgt_degs> <tgt_idxs> <coef>
//! ```
//!
//! Lists are comma-separated; the empty list is `-`. For an algebra the
//! source of `op` is a k-tuple and the target a single element; coalgebras
//! and comodules mirror that; a contramodule source is a hom-space basis
//! element written as the k−1 coalgebra factors followed by the carrier
//! element it hits; a pairing entry is a component of the structure morphism
//! A → C* (target written in C* degrees).

use std::collections::BTreeMap;
use std::fmt;

use ainfty::algebra::{AInftyAlgebra, AInftyCoalgebra};
use ainfty::cd::CDSpace;
use ainfty::comodule::{AInftyComodule, Side};
use ainfty::contramodule::AInftyContramodule;
use ainfty::graded::{GradedMap, GradedSpace};
use ainfty::module::AInftyModule;
use ainfty::pairing::Pairing;
use ainfty::scalar::{Field, Scalar};
use ainfty::tensor::{TensorIndex, TensorSpace};

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

#[derive(Clone, Debug)]
pub enum Structure {
    Algebra(AInftyAlgebra),
    Coalgebra(AInftyCoalgebra),
    Module(AInftyModule),
    Comodule(AInftyComodule),
    Contramodule(AInftyContramodule),
    Pairing(Pairing),
    CdSpace(CDSpace),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Algebra(_) => "algebra",
            Structure::Coalgebra(_) => "coalgebra",
            Structure::Module(_) => "module",
            Structure::Comodule(_) => "comodule",
            Structure::Contramodule(_) => "contramodule",
            Structure::Pairing(_) => "pairing",
            Structure::CdSpace(_) => "cdspace",
        }
    }
}

#[derive(Debug)]
pub struct StructureFile {
    pub field: Field,
    pub spaces: BTreeMap<String, GradedSpace>,
    pub structures: BTreeMap<String, Structure>,
}

struct OpEntry {
    line: usize,
    name: String,
    k: usize,
    src_degs: Vec<i64>,
    src_idxs: Vec<usize>,
    tgt_degs: Vec<i64>,
    tgt_idxs: Vec<usize>,
    coef: String,
}

enum Decl {
    Algebra { name: String, space: String, k_max: usize },
    Coalgebra { name: String, space: String, k_max: usize },
    Module { name: String, algebra: String, space: String, k_max: usize },
    Comodule { name: String, coalgebra: String, side: Side, space: String, k_max: usize },
    Contramodule { name: String, coalgebra: String, space: String, k_max: usize },
    Pairing { name: String, algebra: String, coalgebra: String },
    CdSpace { name: String, left: String, right: String },
}

fn parse_list<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<Vec<T>, ParseError> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| ParseError {
            line,
            msg: format!("cannot parse {} list `{}`", what, s),
        }))
        .collect()
}

pub fn parse_structure_file(text: &str) -> Result<StructureFile, ParseError> {
    let mut field: Option<(usize, Field)> = None;
    let mut spaces: BTreeMap<String, GradedSpace> = BTreeMap::new();
    let mut decls: Vec<(usize, Decl)> = Vec::new();
    let mut entries: Vec<OpEntry> = Vec::new();
    let mut names: BTreeMap<String, &'static str> = BTreeMap::new();

    for (lno, raw) in text.lines().enumerate() {
        let line = lno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "field" => {
                if field.is_some() {
                    return err(line, "duplicate field declaration");
                }
                let f = match toks.get(1) {
                    Some(&"rational") => Field::Rational,
                    Some(&"mod") => {
                        let p: u64 = toks
                            .get(2)
                            .and_then(|s| s.parse().ok())
                            .ok_or(ParseError { line, msg: "expected `field mod <p>`".into() })?;
                        Field::prime(p).map_err(|e| ParseError { line, msg: e.to_string() })?
                    }
                    _ => return err(line, "expected `field rational` or `field mod <p>`"),
                };
                field = Some((line, f));
            }
            "space" => {
                let (_, f) = field.ok_or(ParseError {
                    line,
                    msg: "field must be declared before spaces".into(),
                })?;
                let name = *toks.get(1).ok_or(ParseError { line, msg: "space needs a name".into() })?;
                if spaces.contains_key(name) {
                    return err(line, format!("duplicate space `{}`", name));
                }
                let mut dims = Vec::new();
                for t in &toks[2..] {
                    let (d, n) = t
                        .split_once(':')
                        .ok_or(ParseError { line, msg: format!("bad dim token `{}`", t) })?;
                    let d: i64 = d.parse().map_err(|_| ParseError {
                        line,
                        msg: format!("bad degree in `{}`", t),
                    })?;
                    let n: usize = n.parse().map_err(|_| ParseError {
                        line,
                        msg: format!("bad dimension in `{}`", t),
                    })?;
                    dims.push((d, n));
                }
                spaces.insert(name.to_string(), GradedSpace::new(f, dims));
            }
            "algebra" | "coalgebra" | "module" | "comodule" | "contramodule" | "pairing"
            | "cdspace" => {
                let kind = toks[0];
                let name = toks
                    .get(1)
                    .ok_or(ParseError { line, msg: format!("{} needs a name", kind) })?
                    .to_string();
                if names.contains_key(&name) {
                    return err(line, format!("duplicate structure name `{}`", name));
                }
                let get = |i: usize, what: &str| -> Result<String, ParseError> {
                    toks.get(i).map(|s| s.to_string()).ok_or(ParseError {
                        line,
                        msg: format!("{} `{}` is missing its {}", kind, name, what),
                    })
                };
                let get_k = |i: usize| -> Result<usize, ParseError> {
                    toks.get(i).and_then(|s| s.parse().ok()).ok_or(ParseError {
                        line,
                        msg: format!("{} `{}` needs an arity bound", kind, name),
                    })
                };
                let decl = match kind {
                    "algebra" => Decl::Algebra { name: name.clone(), space: get(2, "carrier")?, k_max: get_k(3)? },
                    "coalgebra" => Decl::Coalgebra { name: name.clone(), space: get(2, "carrier")?, k_max: get_k(3)? },
                    "module" => Decl::Module {
                        name: name.clone(),
                        algebra: get(2, "algebra")?,
                        space: get(3, "carrier")?,
                        k_max: get_k(4)?,
                    },
                    "comodule" => {
                        let side = match toks.get(3) {
                            Some(&"left") => Side::Left,
                            Some(&"right") => Side::Right,
                            _ => return err(line, "comodule side must be `left` or `right`"),
                        };
                        Decl::Comodule {
                            name: name.clone(),
                            coalgebra: get(2, "coalgebra")?,
                            side,
                            space: get(4, "carrier")?,
                            k_max: get_k(5)?,
                        }
                    }
                    "contramodule" => Decl::Contramodule {
                        name: name.clone(),
                        coalgebra: get(2, "coalgebra")?,
                        space: get(3, "carrier")?,
                        k_max: get_k(4)?,
                    },
                    "pairing" => Decl::Pairing {
                        name: name.clone(),
                        algebra: get(2, "algebra")?,
                        coalgebra: get(3, "coalgebra")?,
                    },
                    "cdspace" => Decl::CdSpace {
                        name: name.clone(),
                        left: get(2, "left comodule")?,
                        right: get(3, "right comodule")?,
                    },
                    _ => unreachable!(),
                };
                names.insert(name, kind_str(kind));
                decls.push((line, decl));
            }
            "op" => {
                if toks.len() != 8 {
                    return err(
                        line,
                        "expected `op <name> <k> <src_degs> <src_idxs> <tgt_degs> <tgt_idxs> <coef>`",
                    );
                }
                let k: usize = toks[2]
                    .parse()
                    .map_err(|_| ParseError { line, msg: format!("bad arity `{}`", toks[2]) })?;
                entries.push(OpEntry {
                    line,
                    name: toks[1].to_string(),
                    k,
                    src_degs: parse_list(toks[3], line, "source degree")?,
                    src_idxs: parse_list(toks[4], line, "source index")?,
                    tgt_degs: parse_list(toks[5], line, "target degree")?,
                    tgt_idxs: parse_list(toks[6], line, "target index")?,
                    coef: toks[7].to_string(),
                });
            }
            other => return err(line, format!("unknown declaration `{}`", other)),
        }
    }

    let (_, field) = field.ok_or(ParseError { line: 1, msg: "missing field declaration".into() })?;
    let space = |line: usize, n: &str| -> Result<GradedSpace, ParseError> {
        spaces.get(n).cloned().ok_or(ParseError { line, msg: format!("unknown space `{}`", n) })
    };

    // build in dependency order: (co)algebras, then representations, then
    // pairings and cd-spaces (which clone completed structures)
    let mut structures: BTreeMap<String, Structure> = BTreeMap::new();
    for (line, d) in &decls {
        match d {
            Decl::Algebra { name, space: s, k_max } => {
                structures.insert(
                    name.clone(),
                    Structure::Algebra(AInftyAlgebra::new(space(*line, s)?, *k_max)),
                );
            }
            Decl::Coalgebra { name, space: s, k_max } => {
                structures.insert(
                    name.clone(),
                    Structure::Coalgebra(AInftyCoalgebra::new(space(*line, s)?, *k_max)),
                );
            }
            _ => {}
        }
    }
    apply_entries(&mut structures, &entries, field, &["algebra", "coalgebra"])?;
    for (line, d) in &decls {
        match d {
            Decl::Module { name, algebra, space: s, k_max } => {
                let a = match structures.get(algebra) {
                    Some(Structure::Algebra(a)) => a.clone(),
                    _ => return err(*line, format!("`{}` is not a declared algebra", algebra)),
                };
                structures.insert(
                    name.clone(),
                    Structure::Module(AInftyModule::new(a, space(*line, s)?, *k_max)),
                );
            }
            Decl::Comodule { name, coalgebra, side, space: s, k_max } => {
                let c = match structures.get(coalgebra) {
                    Some(Structure::Coalgebra(c)) => c.clone(),
                    _ => return err(*line, format!("`{}` is not a declared coalgebra", coalgebra)),
                };
                structures.insert(
                    name.clone(),
                    Structure::Comodule(AInftyComodule::new(c, space(*line, s)?, *side, *k_max)),
                );
            }
            Decl::Contramodule { name, coalgebra, space: s, k_max } => {
                let c = match structures.get(coalgebra) {
                    Some(Structure::Coalgebra(c)) => c.clone(),
                    _ => return err(*line, format!("`{}` is not a declared coalgebra", coalgebra)),
                };
                structures.insert(
                    name.clone(),
                    Structure::Contramodule(AInftyContramodule::new(c, space(*line, s)?, *k_max)),
                );
            }
            _ => {}
        }
    }
    apply_entries(&mut structures, &entries, field, &["module", "comodule", "contramodule"])?;
    for (line, d) in &decls {
        match d {
            Decl::Pairing { name, algebra, coalgebra } => {
                let a = match structures.get(algebra) {
                    Some(Structure::Algebra(a)) => a.clone(),
                    _ => return err(*line, format!("`{}` is not a declared algebra", algebra)),
                };
                let c = match structures.get(coalgebra) {
                    Some(Structure::Coalgebra(c)) => c.clone(),
                    _ => return err(*line, format!("`{}` is not a declared coalgebra", coalgebra)),
                };
                structures.insert(name.clone(), Structure::Pairing(Pairing::new(a, c)));
            }
            Decl::CdSpace { name, left, right } => {
                let l = match structures.get(left) {
                    Some(Structure::Comodule(p)) if p.side == Side::Left => p.clone(),
                    _ => return err(*line, format!("`{}` is not a declared left comodule", left)),
                };
                let r = match structures.get(right) {
                    Some(Structure::Comodule(p)) if p.side == Side::Right => p.clone(),
                    _ => return err(*line, format!("`{}` is not a declared right comodule", right)),
                };
                let cd = CDSpace::new(l, r)
                    .map_err(|e| ParseError { line: *line, msg: e.to_string() })?;
                structures.insert(name.clone(), Structure::CdSpace(cd));
            }
            _ => {}
        }
    }
    apply_entries(&mut structures, &entries, field, &["pairing"])?;
    // every entry must have found its structure
    for e in &entries {
        if !structures.contains_key(&e.name) {
            return err(e.line, format!("op entry names unknown structure `{}`", e.name));
        }
        if matches!(structures.get(&e.name), Some(Structure::CdSpace(_))) {
            return err(e.line, "cd-space ops belong to its two comodules");
        }
    }
    Ok(StructureFile { field, spaces, structures })
}

fn kind_str(k: &str) -> &'static str {
    match k {
        "algebra" => "algebra",
        "coalgebra" => "coalgebra",
        "module" => "module",
        "comodule" => "comodule",
        "contramodule" => "contramodule",
        "pairing" => "pairing",
        _ => "cdspace",
    }
}

/// Group the op entries belonging to structures of the listed kinds by
/// (structure, arity), build the graded maps, and install them.
fn apply_entries(
    structures: &mut BTreeMap<String, Structure>,
    entries: &[OpEntry],
    field: Field,
    kinds: &[&str],
) -> Result<(), ParseError> {
    let mut grouped: BTreeMap<(String, usize), Vec<&OpEntry>> = BTreeMap::new();
    for e in entries {
        let Some(s) = structures.get(&e.name) else { continue };
        if kinds.contains(&s.kind()) {
            grouped.entry((e.name.clone(), e.k)).or_default().push(e);
        }
    }
    for ((name, k), es) in grouped {
        let line0 = es[0].line;
        let lib = |e: ainfty::Error| ParseError { line: line0, msg: e.to_string() };
        let s = structures.get_mut(&name).expect("grouped name");
        match s {
            Structure::Algebra(a) => {
                let src = TensorSpace::power(&a.carrier, k);
                let mut op = GradedMap::zero(&src.space, &a.carrier, 2 - k as i64);
                for e in es {
                    let (d, col) = tuple_pos(&src, &e.src_degs, &e.src_idxs, k, e.line)?;
                    let row = single_pos(&a.carrier, &e.tgt_degs, &e.tgt_idxs, d + 2 - k as i64, e.line)?;
                    op.add_entry(d, col, row, &coef(field, &e.coef, e.line)?);
                }
                a.set_op(k, op).map_err(lib)?;
            }
            Structure::Coalgebra(c) => {
                let tgt = TensorSpace::power(&c.carrier, k);
                let mut op = GradedMap::zero(&c.carrier, &tgt.space, 2 - k as i64);
                for e in es {
                    let d = single_src(&c.carrier, &e.src_degs, &e.src_idxs, e.line)?;
                    let (td, row) = tuple_pos(&tgt, &e.tgt_degs, &e.tgt_idxs, k, e.line)?;
                    expect_deg(td, d + 2 - k as i64, e.line)?;
                    op.add_entry(d, e.src_idxs[0], row, &coef(field, &e.coef, e.line)?);
                }
                c.set_op(k, op).map_err(lib)?;
            }
            Structure::Module(m) => {
                let src = m.op_source(k);
                let mut op = GradedMap::zero(&src.space, &m.carrier, 2 - k as i64);
                for e in es {
                    let (d, col) = tuple_pos(&src, &e.src_degs, &e.src_idxs, k, e.line)?;
                    let row = single_pos(&m.carrier, &e.tgt_degs, &e.tgt_idxs, d + 2 - k as i64, e.line)?;
                    op.add_entry(d, col, row, &coef(field, &e.coef, e.line)?);
                }
                m.set_op(k, op).map_err(lib)?;
            }
            Structure::Comodule(p) => {
                let tgt = p.op_target(k);
                let mut op = GradedMap::zero(&p.carrier, &tgt.space, 2 - k as i64);
                for e in es {
                    let d = single_src(&p.carrier, &e.src_degs, &e.src_idxs, e.line)?;
                    let (td, row) = tuple_pos(&tgt, &e.tgt_degs, &e.tgt_idxs, k, e.line)?;
                    expect_deg(td, d + 2 - k as i64, e.line)?;
                    op.add_entry(d, e.src_idxs[0], row, &coef(field, &e.coef, e.line)?);
                }
                p.set_op(k, op).map_err(lib)?;
            }
            Structure::Contramodule(cm) => {
                let hs = cm.op_source(k);
                let cpow = TensorSpace::power(&cm.coalgebra.carrier, k - 1);
                let mut op = GradedMap::zero(&hs.space, &cm.carrier, 2 - k as i64);
                for e in es {
                    if e.src_degs.len() != k || e.src_idxs.len() != k {
                        return err(e.line, format!("contramodule source wants {} factors", k));
                    }
                    let cdegs = &e.src_degs[..k - 1];
                    let l = e.src_degs[k - 1];
                    let j = e.src_idxs[k - 1];
                    let hd: i64 = cdegs.iter().sum();
                    let (hd, hi) = if k == 1 {
                        (0, 0)
                    } else {
                        let ti = TensorIndex {
                            degrees: cdegs.to_vec(),
                            indices: e.src_idxs[..k - 1].to_vec(),
                        };
                        let pos = cpow.position(&ti).ok_or(ParseError {
                            line: e.line,
                            msg: "coalgebra tuple out of range".into(),
                        })?;
                        (hd, pos)
                    };
                    if j >= cm.carrier.dim(l) {
                        return err(e.line, "carrier index out of range");
                    }
                    let p = l - hd;
                    let col = hs.position(p, &(hd, hi, j)).ok_or(ParseError {
                        line: e.line,
                        msg: "hom basis element out of range".into(),
                    })?;
                    let row = single_pos(&cm.carrier, &e.tgt_degs, &e.tgt_idxs, p + 2 - k as i64, e.line)?;
                    op.add_entry(p, col, row, &coef(field, &e.coef, e.line)?);
                }
                cm.set_op(k, op).map_err(lib)?;
            }
            Structure::Pairing(p) => {
                let src = TensorSpace::power(&p.algebra().carrier, k);
                let dual = p.dual_algebra().carrier.clone();
                let mut f = GradedMap::zero(&src.space, &dual, 1 - k as i64);
                for e in es {
                    let (d, col) = tuple_pos(&src, &e.src_degs, &e.src_idxs, k, e.line)?;
                    let row = single_pos(&dual, &e.tgt_degs, &e.tgt_idxs, d + 1 - k as i64, e.line)?;
                    f.add_entry(d, col, row, &coef(field, &e.coef, e.line)?);
                }
                p.set_comp(k, f).map_err(lib)?;
            }
            Structure::CdSpace(_) => unreachable!("cd-space entries rejected earlier"),
        }
    }
    Ok(())
}

fn coef(field: Field, s: &str, line: usize) -> Result<Scalar, ParseError> {
    Scalar::parse(field, s).map_err(|e| ParseError { line, msg: e.to_string() })
}

fn expect_deg(got: i64, want: i64, line: usize) -> Result<(), ParseError> {
    if got != want {
        return err(line, format!("output degree {} contradicts arity (expected {})", got, want));
    }
    Ok(())
}

fn tuple_pos(
    ts: &TensorSpace,
    degs: &[i64],
    idxs: &[usize],
    k: usize,
    line: usize,
) -> Result<(i64, usize), ParseError> {
    if degs.len() != k || idxs.len() != k {
        return err(line, format!("expected a {}-factor tuple", k));
    }
    let ti = TensorIndex { degrees: degs.to_vec(), indices: idxs.to_vec() };
    let d: i64 = degs.iter().sum();
    let pos = ts
        .position(&ti)
        .ok_or(ParseError { line, msg: "tuple degree or index out of range".into() })?;
    Ok((d, pos))
}

fn single_src(
    space: &GradedSpace,
    degs: &[i64],
    idxs: &[usize],
    line: usize,
) -> Result<i64, ParseError> {
    if degs.len() != 1 || idxs.len() != 1 {
        return err(line, "expected a single source element");
    }
    if idxs[0] >= space.dim(degs[0]) {
        return err(line, "source element out of range");
    }
    Ok(degs[0])
}

fn single_pos(
    space: &GradedSpace,
    degs: &[i64],
    idxs: &[usize],
    want_deg: i64,
    line: usize,
) -> Result<usize, ParseError> {
    if degs.len() != 1 || idxs.len() != 1 {
        return err(line, "expected a single target element");
    }
    expect_deg(degs[0], want_deg, line)?;
    if idxs[0] >= space.dim(degs[0]) {
        return err(line, "target element out of range");
    }
    Ok(idxs[0])
}

fn list_i64(v: &[i64]) -> String {
    if v.is_empty() {
        "-".into()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn list_usize(v: &[usize]) -> String {
    if v.is_empty() {
        "-".into()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn emit_entries(
    out: &mut String,
    name: &str,
    k: usize,
    op: &GradedMap,
    mut describe: impl FnMut(i64, usize, usize) -> (Vec<i64>, Vec<usize>, Vec<i64>, Vec<usize>),
) {
    for d in op.nonzero_degrees() {
        let Some(b) = op.block_ref(d) else { continue };
        for j in 0..b.cols {
            for i in 0..b.rows {
                let v = b.at(i, j);
                if v.is_zero() {
                    continue;
                }
                let (sd, si, td, ti) = describe(d, j, i);
                out.push_str(&format!(
                    "op {} {} {} {} {} {} {}\n",
                    name,
                    k,
                    list_i64(&sd),
                    list_usize(&si),
                    list_i64(&td),
                    list_usize(&ti),
                    v
                ));
            }
        }
    }
}

fn space_name(spaces: &BTreeMap<String, GradedSpace>, s: &GradedSpace) -> String {
    for (n, sp) in spaces {
        if sp == s {
            return n.clone();
        }
    }
    // serialization of graphs built programmatically: synthesize nothing,
    // callers register all carriers first via `register_spaces`
    panic!("carrier not registered in the space table");
}

/// Ensure every carrier appearing in the graph has a named space entry.
pub fn register_spaces(sf: &mut StructureFile) {
    let mut fresh = Vec::new();
    {
        let have: Vec<&GradedSpace> = sf.spaces.values().collect();
        let mut ensure = |s: &GradedSpace, hint: String| {
            if !have.iter().any(|x| *x == s) && !fresh.iter().any(|(_, x): &(String, GradedSpace)| x == s) {
                fresh.push((hint, s.clone()));
            }
        };
        for (name, st) in &sf.structures {
            match st {
                Structure::Algebra(a) => ensure(&a.carrier, format!("sp_{}", name)),
                Structure::Coalgebra(c) => ensure(&c.carrier, format!("sp_{}", name)),
                Structure::Module(m) => {
                    ensure(&m.algebra.carrier, format!("sp_{}_alg", name));
                    ensure(&m.carrier, format!("sp_{}", name));
                }
                Structure::Comodule(p) => {
                    ensure(&p.coalgebra.carrier, format!("sp_{}_coa", name));
                    ensure(&p.carrier, format!("sp_{}", name));
                }
                Structure::Contramodule(cm) => {
                    ensure(&cm.coalgebra.carrier, format!("sp_{}_coa", name));
                    ensure(&cm.carrier, format!("sp_{}", name));
                }
                Structure::Pairing(p) => {
                    ensure(&p.algebra().carrier, format!("sp_{}_alg", name));
                    ensure(&p.coalgebra.carrier, format!("sp_{}_coa", name));
                }
                Structure::CdSpace(n) => {
                    ensure(&n.left.coalgebra.carrier, format!("sp_{}_c", name));
                    ensure(&n.right.coalgebra.carrier, format!("sp_{}_d", name));
                    ensure(n.carrier(), format!("sp_{}", name));
                }
            }
        }
    }
    for (hint, s) in fresh {
        let mut name = hint.clone();
        let mut i = 0;
        while sf.spaces.contains_key(&name) {
            i += 1;
            name = format!("{}_{}", hint, i);
        }
        sf.spaces.insert(name, s);
    }
}

/// Canonical serialization; parse ∘ serialize is the identity on the graph.
pub fn serialize_structure_file(sf: &StructureFile) -> String {
    let mut out = String::new();
    out.push_str(&format!("field {}\n", sf.field));
    for (name, s) in &sf.spaces {
        let mut line = format!("space {}", name);
        for d in s.degrees() {
            line.push_str(&format!(" {}:{}", d, s.dim(d)));
        }
        out.push_str(&line);
        out.push('\n');
    }
    // declarations before any cd-space that references them
    for (name, st) in &sf.structures {
        match st {
            Structure::Algebra(a) => out.push_str(&format!(
                "algebra {} {} {}\n",
                name,
                space_name(&sf.spaces, &a.carrier),
                a.k_max
            )),
            Structure::Coalgebra(c) => out.push_str(&format!(
                "coalgebra {} {} {}\n",
                name,
                space_name(&sf.spaces, &c.carrier),
                c.k_max
            )),
            Structure::Module(m) => out.push_str(&format!(
                "module {} {} {} {}\n",
                name,
                find_structure(sf, |s| matches!(s, Structure::Algebra(a) if same_algebra(a, &m.algebra))),
                space_name(&sf.spaces, &m.carrier),
                m.k_max
            )),
            Structure::Comodule(p) => out.push_str(&format!(
                "comodule {} {} {} {} {}\n",
                name,
                find_structure(sf, |s| matches!(s, Structure::Coalgebra(c) if same_coalgebra(c, &p.coalgebra))),
                if p.side == Side::Left { "left" } else { "right" },
                space_name(&sf.spaces, &p.carrier),
                p.k_max
            )),
            Structure::Contramodule(cm) => out.push_str(&format!(
                "contramodule {} {} {} {}\n",
                name,
                find_structure(sf, |s| matches!(s, Structure::Coalgebra(c) if same_coalgebra(c, &cm.coalgebra))),
                space_name(&sf.spaces, &cm.carrier),
                cm.k_max
            )),
            Structure::Pairing(p) => out.push_str(&format!(
                "pairing {} {} {}\n",
                name,
                find_structure(sf, |s| matches!(s, Structure::Algebra(a) if same_algebra(a, p.algebra()))),
                find_structure(sf, |s| matches!(s, Structure::Coalgebra(c) if same_coalgebra(c, &p.coalgebra))),
            )),
            Structure::CdSpace(n) => out.push_str(&format!(
                "cdspace {} {} {}\n",
                name,
                find_structure(sf, |s| matches!(s, Structure::Comodule(p) if p.side == Side::Left && same_comodule(p, &n.left))),
                find_structure(sf, |s| matches!(s, Structure::Comodule(p) if p.side == Side::Right && same_comodule(p, &n.right))),
            )),
        }
    }
    for (name, st) in &sf.structures {
        match st {
            Structure::Algebra(a) => {
                for (k, op) in a.ops() {
                    let src = TensorSpace::power(&a.carrier, k);
                    emit_entries(&mut out, name, k, op, |d, j, i| {
                        let ti = &src.basis_at(d)[j];
                        (ti.degrees.clone(), ti.indices.clone(), vec![d + 2 - k as i64], vec![i])
                    });
                }
            }
            Structure::Coalgebra(c) => {
                for (k, op) in c.ops() {
                    let tgt = TensorSpace::power(&c.carrier, k);
                    emit_entries(&mut out, name, k, op, |d, j, i| {
                        let ti = &tgt.basis_at(d + 2 - k as i64)[i];
                        (vec![d], vec![j], ti.degrees.clone(), ti.indices.clone())
                    });
                }
            }
            Structure::Module(m) => {
                for (k, op) in m.ops() {
                    let src = m.op_source(k);
                    emit_entries(&mut out, name, k, op, |d, j, i| {
                        let ti = &src.basis_at(d)[j];
                        (ti.degrees.clone(), ti.indices.clone(), vec![d + 2 - k as i64], vec![i])
                    });
                }
            }
            Structure::Comodule(p) => {
                for (k, op) in p.ops() {
                    let tgt = p.op_target(k);
                    emit_entries(&mut out, name, k, op, |d, j, i| {
                        let ti = &tgt.basis_at(d + 2 - k as i64)[i];
                        (vec![d], vec![j], ti.degrees.clone(), ti.indices.clone())
                    });
                }
            }
            Structure::Contramodule(cm) => {
                for (k, op) in cm.ops() {
                    let hs = cm.op_source(k);
                    let cpow = TensorSpace::power(&cm.coalgebra.carrier, k - 1);
                    emit_entries(&mut out, name, k, op, |p, j, i| {
                        let (hd, hi, mj) = hs.basis_at(p)[j];
                        let (mut sd, mut si) = if k == 1 {
                            (Vec::new(), Vec::new())
                        } else {
                            let ti = &cpow.basis_at(hd)[hi];
                            (ti.degrees.clone(), ti.indices.clone())
                        };
                        sd.push(hd + p);
                        si.push(mj);
                        (sd, si, vec![p + 2 - k as i64], vec![i])
                    });
                }
            }
            Structure::Pairing(p) => {
                for k in 1..=p.max_f_arity() {
                    let Some(f) = p.comp(k) else { continue };
                    let src = TensorSpace::power(&p.algebra().carrier, k);
                    emit_entries(&mut out, name, k, f, |d, j, i| {
                        let ti = &src.basis_at(d)[j];
                        (ti.degrees.clone(), ti.indices.clone(), vec![d + 1 - k as i64], vec![i])
                    });
                }
            }
            Structure::CdSpace(_) => {}
        }
    }
    out
}

fn find_structure(sf: &StructureFile, pred: impl Fn(&Structure) -> bool) -> String {
    for (n, s) in &sf.structures {
        if pred(s) {
            return n.clone();
        }
    }
    panic!("referenced structure not present in the graph");
}

fn maps_eq(a: Option<&GradedMap>, b: Option<&GradedMap>) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => x.degree == y.degree && x.sub(y).is_zero(),
        (Some(x), None) | (None, Some(x)) => x.is_zero(),
    }
}

pub fn same_algebra(a: &AInftyAlgebra, b: &AInftyAlgebra) -> bool {
    a.carrier == b.carrier
        && a.k_max == b.k_max
        && (1..=a.k_max).all(|k| maps_eq(a.op(k), b.op(k)))
}

pub fn same_coalgebra(a: &AInftyCoalgebra, b: &AInftyCoalgebra) -> bool {
    a.carrier == b.carrier
        && a.k_max == b.k_max
        && (1..=a.k_max).all(|k| maps_eq(a.op(k), b.op(k)))
}

pub fn same_comodule(a: &AInftyComodule, b: &AInftyComodule) -> bool {
    a.carrier == b.carrier
        && a.side == b.side
        && a.k_max == b.k_max
        && same_coalgebra(&a.coalgebra, &b.coalgebra)
        && (1..=a.k_max).all(|k| maps_eq(a.op(k), b.op(k)))
}

pub fn same_module(a: &AInftyModule, b: &AInftyModule) -> bool {
    a.carrier == b.carrier
        && a.k_max == b.k_max
        && same_algebra(&a.algebra, &b.algebra)
        && (1..=a.k_max).all(|k| maps_eq(a.op(k), b.op(k)))
}

pub fn same_contramodule(a: &AInftyContramodule, b: &AInftyContramodule) -> bool {
    a.carrier == b.carrier
        && a.k_max == b.k_max
        && same_coalgebra(&a.coalgebra, &b.coalgebra)
        && (1..=a.k_max).all(|k| maps_eq(a.op(k), b.op(k)))
}

pub fn same_structure(a: &Structure, b: &Structure) -> bool {
    match (a, b) {
        (Structure::Algebra(x), Structure::Algebra(y)) => same_algebra(x, y),
        (Structure::Coalgebra(x), Structure::Coalgebra(y)) => same_coalgebra(x, y),
        (Structure::Module(x), Structure::Module(y)) => same_module(x, y),
        (Structure::Comodule(x), Structure::Comodule(y)) => same_comodule(x, y),
        (Structure::Contramodule(x), Structure::Contramodule(y)) => same_contramodule(x, y),
        (Structure::Pairing(x), Structure::Pairing(y)) => {
            same_algebra(x.algebra(), y.algebra())
                && same_coalgebra(&x.coalgebra, &y.coalgebra)
                && {
                    let kk = x.max_f_arity().max(y.max_f_arity());
                    (1..=kk).all(|k| maps_eq(x.comp(k), y.comp(k)))
                }
        }
        (Structure::CdSpace(x), Structure::CdSpace(y)) => {
            same_comodule(&x.left, &y.left) && same_comodule(&x.right, &y.right)
        }
        _ => false,
    }
}

pub fn same_graph(a: &StructureFile, b: &StructureFile) -> bool {
    a.field == b.field
        && a.structures.len() == b.structures.len()
        && a.structures.iter().all(|(n, s)| {
            b.structures.get(n).map(|t| same_structure(s, t)).unwrap_or(false)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = "\
field mod 5
space C 0:1
space N 0:2
space W 0:1 1:1
coalgebra K C 2
comodule L K left N 2
comodule R K right N 2
contramodule T K W 2
cdspace S L R
algebra A W 2
module M A W 2
pairing P A K
op K 2 0 0 0,0 0,0 1
op L 2 0 0 0,0 0,1 1
op L 2 0 1 0,0 0,1 1
op R 2 0 0 0,0 0,0 1
op T 2 0,0 0,0 0 0 2
op T 1 0 0 1 0 3
op A 2 0,0 0,0 0 0 1
op M 2 0,1 0,0 1 0 4
op P 1 0 0 0 0 1
";

    #[test]
    fn round_trip_preserves_every_structure_kind() {
        let sf = parse_structure_file(FULL).expect("parse");
        assert_eq!(sf.structures.len(), 8);
        let text = serialize_structure_file(&sf);
        let back = parse_structure_file(&text).expect("reparse");
        assert!(same_graph(&sf, &back));
        // serialization is canonical: a second round emits identical bytes
        assert_eq!(text, serialize_structure_file(&back));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_structure_file("field rational\nspace V 0:1\nbogus V\n").unwrap_err();
        assert_eq!(e.line, 3);

        // output degree contradicting the arity
        let e = parse_structure_file(
            "field rational\nspace V 0:1 1:1\nalgebra A V 2\nop A 2 0,0 0,0 1 0 1\n",
        )
        .unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.msg.contains("degree"));

        let e = parse_structure_file("space V 0:1\n").unwrap_err();
        assert!(e.msg.contains("field"));
    }

    #[test]
    fn op_entries_resolve_against_declared_structures() {
        let e = parse_structure_file(
            "field rational\nspace V 0:1\nalgebra A V 2\nop B 2 0,0 0,0 0 0 1\n",
        )
        .unwrap_err();
        assert!(e.msg.contains("unknown structure"));

        // entries land regardless of declaration order in the file
        let sf = parse_structure_file(
            "field rational\nop A 2 0,0 0,0 0 0 1\nspace V 0:1\nalgebra A V 2\n",
        )
        .expect("ops may precede declarations");
        let Structure::Algebra(a) = &sf.structures["A"] else { panic!() };
        assert!(a.op(2).is_some());
    }

    #[test]
    fn representations_see_completed_coefficient_rings() {
        // the module must capture the algebra with its ops installed even
        // though all op lines are grouped at the end
        let sf = parse_structure_file(
            "field rational\nspace V 0:1\nmodule M A V 2\nalgebra A V 2\nop A 2 0,0 0,0 0 0 1\n",
        )
        .expect("parse");
        let Structure::Module(m) = &sf.structures["M"] else { panic!() };
        assert!(m.algebra.op(2).is_some());
    }
}
