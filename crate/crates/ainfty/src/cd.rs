//! Spaces with commuting left and right coactions, the hom contramodule
//! [N,Q]ᴰ, the contratensor product M⊠N, and exact verification of the
//! hom-contratensor adjunction.
//!
//! Everything here assumes even coalgebras and even coactions (operations
//! vanish at odd arity). Operations of even arity have even degree 2−k, so
//! every Koszul sign that could distinguish conventions in the evaluation and
//! currying legs is +1; the implementation uses sign-free evaluation
//! ev(f⊗c) = f(c) and left-concatenating currying throughout.

use std::collections::BTreeMap;

use crate::comodule::{check_comodule, AInftyComodule, Side};
use crate::contramodule::AInftyContramodule;
use crate::graded::{image, quotient, GradedMap, GradedSpace, Subspace};
use crate::homspace::{postcompose, precompose, HomSpace};
use crate::matrix::Mat;
use crate::report::ViolationReport;
use crate::scalar::Scalar;
use crate::tensor::{interleave_in, TensorIndex, TensorSpace};

/// A graded space carrying a left C-coaction and a right D-coaction. The
/// commuting-square axiom is checked by [`check_cd_space`], not the
/// constructor.
#[derive(Clone, Debug)]
pub struct CDSpace {
    /// (N, w^L) as a left comodule over C.
    pub left: AInftyComodule,
    /// (N, w^R) as a right comodule over D, same carrier.
    pub right: AInftyComodule,
}

impl CDSpace {
    pub fn new(left: AInftyComodule, right: AInftyComodule) -> Result<CDSpace, crate::Error> {
        if left.side != Side::Left || right.side != Side::Right {
            return Err(crate::Error::Shape(
                "cd-space needs a left coaction and a right coaction".into(),
            ));
        }
        if left.carrier != right.carrier {
            return Err(crate::Error::Shape("cd-space coactions on different carriers".into()));
        }
        Ok(CDSpace { left, right })
    }

    pub fn carrier(&self) -> &GradedSpace {
        &self.left.carrier
    }
}

fn require_even_cd(n: &CDSpace) -> Result<(), crate::Error> {
    if !n.left.coalgebra.is_even() || !n.right.coalgebra.is_even() {
        return Err(crate::Error::OddStructure("cd-space coalgebras must be even".into()));
    }
    if !n.left.is_even() || !n.right.is_even() {
        return Err(crate::Error::OddStructure("cd-space coactions must be even".into()));
    }
    Ok(())
}

/// Both comodule identities plus the commuting squares
/// (w^L_k⊗1)∘w^R_l = (1⊗w^R_l)∘w^L_k for every pair of present arities.
pub fn check_cd_space(
    n: &CDSpace,
    n_max: Option<usize>,
) -> Result<ViolationReport, crate::Error> {
    require_even_cd(n)?;
    let mut rep = ViolationReport::default();
    let mut lrep = check_comodule(&n.left, n_max);
    for v in &mut lrep.violations {
        v.identity = format!("cd-left-{}", v.identity);
    }
    rep.merge(lrep);
    let mut rrep = check_comodule(&n.right, n_max);
    for v in &mut rrep.violations {
        v.identity = format!("cd-right-{}", v.identity);
    }
    rep.merge(rrep);
    let nts = TensorSpace::power(n.carrier(), 1);
    let c = &n.left.coalgebra.carrier;
    let d = &n.right.coalgebra.carrier;
    for (k, wlk) in n.left.ops() {
        for (l, wrl) in n.right.ops() {
            let tgt_l = n.left.op_target(k);
            let tgt_r = n.right.op_target(l);
            let mut fs: Vec<GradedSpace> = vec![c.clone(); k - 1];
            fs.push(n.carrier().clone());
            fs.extend(vec![d.clone(); l - 1]);
            let full = TensorSpace::new(fs)?;
            let r1 = interleave_in(&tgt_r, &full, 0, wlk, &nts, &tgt_l, true).compose(wrl);
            let r2 = interleave_in(&tgt_l, &full, k - 1, wrl, &nts, &tgt_r, true).compose(wlk);
            let residual = r1.sub(&r2);
            rep.record_residual(&format!("cd-square-l{}", l), k, &residual, &nts);
        }
    }
    Ok(rep)
}

/// N₁⊗N₂ with w^L_k = (coaction on N₁)⊗1 and w^R_l = 1⊗(coaction on N₂);
/// the two coactions act on disjoint factors, so the squares commute.
pub fn cd_space_from_comodules(
    n1: &AInftyComodule,
    n2: &AInftyComodule,
) -> Result<CDSpace, crate::Error> {
    if n1.side != Side::Left || n2.side != Side::Right {
        return Err(crate::Error::Shape(
            "tensor cd-space needs a left comodule and a right comodule".into(),
        ));
    }
    let ts12 = TensorSpace::new(vec![n1.carrier.clone(), n2.carrier.clone()])?;
    let carrier = ts12.space.clone();
    let c = n1.coalgebra.clone();
    let d = n2.coalgebra.clone();
    let p1 = TensorSpace::power(&n1.carrier, 1);
    let p2 = TensorSpace::power(&n2.carrier, 1);
    let mut left = AInftyComodule::new(c.clone(), carrier.clone(), Side::Left, n1.k_max);
    for (k, w) in n1.ops() {
        // flat [C^{k−1}, N₁, N₂] regrouped so the cd-space carrier is one factor
        let mut fs: Vec<GradedSpace> = vec![c.carrier.clone(); k - 1];
        fs.push(n1.carrier.clone());
        fs.push(n2.carrier.clone());
        let flat = TensorSpace::new(fs)?;
        let step = interleave_in(&ts12, &flat, 0, w, &p1, &n1.op_target(k), true);
        let op = group_factors(&step, &flat, k - 1, &ts12, &left.op_target(k));
        left.set_op(k, op)?;
    }
    let mut right = AInftyComodule::new(d.clone(), carrier.clone(), Side::Right, n2.k_max);
    for (l, w) in n2.ops() {
        let mut fs: Vec<GradedSpace> = vec![n1.carrier.clone(), n2.carrier.clone()];
        fs.extend(vec![d.carrier.clone(); l - 1]);
        let flat = TensorSpace::new(fs)?;
        let step = interleave_in(&ts12, &flat, 1, w, &p2, &n2.op_target(l), true);
        let op = group_factors(&step, &flat, 0, &ts12, &right.op_target(l));
        right.set_op(l, op)?;
    }
    CDSpace::new(left, right)
}

/// Collapse the factors [start, start+pair.arity()) of `map`'s flat tensor
/// target into the single factor `pair.space`, landing in `nested`. Pure
/// basis permutation on the target side.
fn group_factors(
    map: &GradedMap,
    flat: &TensorSpace,
    start: usize,
    pair: &TensorSpace,
    nested: &TensorSpace,
) -> GradedMap {
    let a = pair.arity();
    let mut out = GradedMap::zero(&map.source, &nested.space, map.degree);
    for sd in map.nonzero_degrees() {
        let Some(b) = map.block_ref(sd) else { continue };
        let td = sd + map.degree;
        let basis = flat.basis_at(td);
        for j in 0..b.cols {
            for i in 0..b.rows {
                let v = b.at(i, j);
                if v.is_zero() {
                    continue;
                }
                let ti = &basis[i];
                let part = TensorIndex {
                    degrees: ti.degrees[start..start + a].to_vec(),
                    indices: ti.indices[start..start + a].to_vec(),
                };
                let pd: i64 = part.degrees.iter().sum();
                let pi = pair.position(&part).expect("group inner position");
                let mut degrees = ti.degrees[..start].to_vec();
                degrees.push(pd);
                degrees.extend(&ti.degrees[start + a..]);
                let mut indices = ti.indices[..start].to_vec();
                indices.push(pi);
                indices.extend(&ti.indices[start + a..]);
                let row = nested
                    .position(&TensorIndex { degrees, indices })
                    .expect("group outer position");
                out.add_entry(sd, j, row, v);
            }
        }
    }
    out
}

/// The graded equalizer of a family of linear constraints on a hom space:
/// per degree, the kernel of the stacked residual matrix.
fn graded_equalizer(
    hom: &HomSpace,
    residuals: impl Fn(&GradedMap) -> Vec<Scalar>,
) -> Subspace {
    let field = hom.space.field;
    let mut gens = BTreeMap::new();
    for p in hom.space.degrees().collect::<Vec<_>>() {
        let np = hom.space.dim(p);
        if np == 0 {
            continue;
        }
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(np);
        for e in 0..np {
            let mut coords = vec![Scalar::zero(field); np];
            coords[e] = Scalar::one(field);
            cols.push(residuals(&hom.to_map(p, &coords)));
        }
        let rows = cols[0].len();
        let mut m = Mat::zero(field, rows, np);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        gens.insert(p, m.kernel());
    }
    Subspace::from_generators(&hom.space, gens)
}

/// [X,Y]ᴰ ⊆ [X,Y]: graded maps f with w^Y_l∘f = (f⊗1)∘w^X_l for every l.
/// The degree-p part is the space of comodule morphisms out of the p-shift;
/// with even structures the shift does not disturb the coactions.
pub fn colinear_subspace(
    x: &AInftyComodule,
    y: &AInftyComodule,
) -> Result<Subspace, crate::Error> {
    if x.side != Side::Right || y.side != Side::Right {
        return Err(crate::Error::Shape("colinear subspace wants right comodules".into()));
    }
    if x.coalgebra.carrier != y.coalgebra.carrier {
        return Err(crate::Error::Shape("comodules live over different coalgebras".into()));
    }
    let hom = HomSpace::new(&x.carrier, &y.carrier);
    let xts = TensorSpace::power(&x.carrier, 1);
    let yts = TensorSpace::power(&y.carrier, 1);
    let kk = x.effective_k().max(y.effective_k());
    let mut constraints = Vec::new();
    for l in 1..=kk {
        if x.op(l).is_none() && y.op(l).is_none() {
            continue;
        }
        constraints.push((l, x.op_target(l), y.op_target(l)));
    }
    let res_spaces: Vec<HomSpace> = constraints
        .iter()
        .map(|(_, _, ty)| HomSpace::new(&x.carrier, &ty.space))
        .collect();
    Ok(graded_equalizer(&hom, |h| {
        let mut out = Vec::new();
        for ((l, tx, ty), rs) in constraints.iter().zip(&res_spaces) {
            let deg = h.degree + 2 - *l as i64;
            let leg1 = match y.op(*l) {
                Some(op) => op.compose(h),
                None => GradedMap::zero(&x.carrier, &ty.space, deg),
            };
            let leg2 = match x.op(*l) {
                Some(op) => interleave_in(tx, ty, 0, h, &xts, &yts, true).compose(op),
                None => GradedMap::zero(&x.carrier, &ty.space, deg),
            };
            out.extend(rs.from_map(&leg1.sub(&leg2)));
        }
        out
    }))
}

/// Contramodule morphism space in all degrees: f with
/// t^Y_k∘[C^{⊗k−1},f] = f∘t^X_k for every k.
pub fn contra_hom_subspace(
    x: &AInftyContramodule,
    y: &AInftyContramodule,
) -> Result<Subspace, crate::Error> {
    if x.coalgebra.carrier != y.coalgebra.carrier {
        return Err(crate::Error::Shape("contramodules live over different coalgebras".into()));
    }
    let hom = HomSpace::new(&x.carrier, &y.carrier);
    let kk = x.effective_k().max(y.effective_k());
    let mut constraints = Vec::new();
    for k in 1..=kk {
        if x.op(k).is_none() && y.op(k).is_none() {
            continue;
        }
        constraints.push((k, x.op_source(k), y.op_source(k)));
    }
    let res_spaces: Vec<HomSpace> = constraints
        .iter()
        .map(|(_, hx, _)| HomSpace::new(&hx.space, &y.carrier))
        .collect();
    Ok(graded_equalizer(&hom, |h| {
        let mut out = Vec::new();
        for ((k, hx, hy), rs) in constraints.iter().zip(&res_spaces) {
            let deg = h.degree + 2 - *k as i64;
            let leg1 = match x.op(*k) {
                Some(op) => h.compose(op),
                None => GradedMap::zero(&hx.space, &y.carrier, deg),
            };
            let leg2 = match y.op(*k) {
                Some(op) => op.compose(&postcompose(hx, h, hy)),
                None => GradedMap::zero(&hx.space, &y.carrier, deg),
            };
            out.extend(rs.from_map(&leg1.sub(&leg2)));
        }
        out
    }))
}

/// The coordinate bijection [X⊗N, Q] ≅ [X, [N,Q]] with f′(x)(n) = f(x⊗n);
/// returns (flat→nested, nested→flat), both permutation matrices. With even
/// structures, both directions carry the D-colinear subspaces onto each other.
pub fn curry_iso(
    x: &GradedSpace,
    n: &GradedSpace,
    q: &GradedSpace,
) -> (GradedMap, GradedMap) {
    let ts = TensorSpace::new(vec![x.clone(), n.clone()]).expect("curry source");
    let hs_flat = HomSpace::new(&ts.space, q);
    let hs_inner = HomSpace::new(n, q);
    let hs_outer = HomSpace::new(x, &hs_inner.space);
    let one = Scalar::one(q.field);
    let mut fwd = GradedMap::zero(&hs_flat.space, &hs_outer.space, 0);
    let mut bwd = GradedMap::zero(&hs_outer.space, &hs_flat.space, 0);
    for p in hs_flat.space.degrees().collect::<Vec<_>>() {
        for (col, &(d, i, j)) in hs_flat.basis_at(p).iter().enumerate() {
            let ti = &ts.basis_at(d)[i];
            let inner = (ti.degrees[1], ti.indices[1], j);
            let r_in = hs_inner.position(ti.degrees[0] + p, &inner).expect("curry inner index");
            let outer = (ti.degrees[0], ti.indices[0], r_in);
            let row = hs_outer.position(p, &outer).expect("curry outer index");
            fwd.add_entry(p, col, row, &one);
            bwd.add_entry(p, row, col, &one);
        }
    }
    (fwd, bwd)
}

/// Factor `map` through the inclusion of `sub` into its target. Fails when
/// some image vector leaves the subspace.
fn corestrict(map: &GradedMap, sub: &Subspace) -> Result<GradedMap, crate::Error> {
    let ecar = sub.as_space();
    let mut out = GradedMap::zero(&map.source, &ecar, map.degree);
    for d in map.source.degrees().collect::<Vec<_>>() {
        let Some(b) = map.block_ref(d) else { continue };
        for j in 0..b.cols {
            let colv = b.column(j);
            if colv.iter().all(|v| v.is_zero()) {
                continue;
            }
            let coords = sub.coords_of(d + map.degree, &colv).ok_or_else(|| {
                crate::Error::Invalid("image vector leaves the colinear subspace".into())
            })?;
            for (i, v) in coords.iter().enumerate() {
                if !v.is_zero() {
                    out.add_entry(d, j, i, v);
                }
            }
        }
    }
    Ok(out)
}

/// The hom contramodule [N,Q]ᴰ over C together with its realization inside
/// the full hom space [N,Q].
pub struct HomContramodule {
    pub contramodule: AInftyContramodule,
    /// The D-colinear maps as a subspace of [N,Q]; the contramodule carrier
    /// is its abstract copy, related by `subspace.inclusion()`.
    pub subspace: Subspace,
    pub hom: HomSpace,
}

/// [N,Q]ᴰ with t_k given by precomposition with w^L_k under the currying
/// identification; w^L_k is a right-D-comodule map by the commuting squares,
/// so precomposition preserves colinearity.
pub fn hom_into_contramodule(
    n: &CDSpace,
    q: &AInftyComodule,
) -> Result<HomContramodule, crate::Error> {
    require_even_cd(n)?;
    if q.side != Side::Right || q.coalgebra.carrier != n.right.coalgebra.carrier {
        return Err(crate::Error::Shape(
            "hom contramodule wants a right comodule over the same D".into(),
        ));
    }
    let hom = HomSpace::new(n.carrier(), &q.carrier);
    let sub = colinear_subspace(&n.right, q)?;
    let ecar = sub.as_space();
    let incl = sub.inclusion();
    let c = n.left.coalgebra.clone();
    let mut cm = AInftyContramodule::new(c.clone(), ecar.clone(), n.left.k_max.max(1));
    for (k, wlk) in n.left.ops() {
        // ambient T_k : [C^{⊗k−1}, [N,Q]] → [N,Q], g ↦ (uncurried g)∘w^L_k
        let ambient = if k == 1 {
            precompose(&hom, wlk, &hom)
        } else {
            let cpow = TensorSpace::power(&c.carrier, k - 1);
            let pairts = TensorSpace::new(vec![cpow.space.clone(), n.carrier().clone()])?;
            let wl_grouped = group_factors(wlk, &n.left.op_target(k), 0, &cpow, &pairts);
            let (_, bwd) = curry_iso(&cpow.space, n.carrier(), &q.carrier);
            let hs_flat = HomSpace::new(&pairts.space, &q.carrier);
            precompose(&hs_flat, &wl_grouped, &hom).compose(&bwd)
        };
        let t = if k == 1 {
            corestrict(&ambient.compose(&incl), &sub)?
        } else {
            // embed [C^{⊗k−1}, E] into [C^{⊗k−1}, [N,Q]], act, corestrict
            let hs_e = cm.op_source(k);
            let hs_outer = HomSpace::new(
                &TensorSpace::power(&c.carrier, k - 1).space,
                &hom.space,
            );
            let src = postcompose(&hs_e, &incl, &hs_outer);
            corestrict(&ambient.compose(&src), &sub)?
        };
        cm.set_op(k, t)?;
    }
    Ok(HomContramodule { contramodule: cm, subspace: sub, hom })
}

/// The contratensor product M⊠N with its induced right D-comodule structure.
pub struct Contratensor {
    pub comodule: AInftyComodule,
    /// Canonical projection M⊗N → M⊠N.
    pub projection: GradedMap,
    /// A section of the projection (deterministic choice of coset reps).
    pub section: GradedMap,
    /// The ambient two-factor tensor space [M, N].
    pub ambient: TensorSpace,
    /// The relation subspace being quotiented out.
    pub relations: Subspace,
}

/// Evaluation collapse ev⊗1 : [C^{⊗k−1},M] ⊗ C^{⊗k−1} ⊗ N → M ⊗ N with the
/// sign-free convention ev(f⊗c) = f(c).
fn eval_collapse(
    hs: &HomSpace,
    cts: &TensorSpace,
    mid: &TensorSpace,
    mn: &TensorSpace,
) -> GradedMap {
    let k1 = cts.arity();
    let one = Scalar::one(mn.space.field);
    let mut out = GradedMap::zero(&mid.space, &mn.space, 0);
    for d in mid.space.degrees().collect::<Vec<_>>() {
        for (col, ti) in mid.basis_at(d).iter().enumerate() {
            let (dh, ih) = (ti.degrees[0], ti.indices[0]);
            let (sc, si, mj) = hs.basis_at(dh)[ih];
            let part = TensorIndex {
                degrees: ti.degrees[1..1 + k1].to_vec(),
                indices: ti.indices[1..1 + k1].to_vec(),
            };
            let csum: i64 = part.degrees.iter().sum();
            let Some(cpos) = cts.position(&part) else { continue };
            if csum != sc || cpos != si {
                continue;
            }
            let out_ti = TensorIndex {
                degrees: vec![sc + dh, ti.degrees[1 + k1]],
                indices: vec![mj, ti.indices[1 + k1]],
            };
            let row = mn.position(&out_ti).expect("evaluation output index");
            out.add_entry(d, col, row, &one);
        }
    }
    out
}

pub fn contratensor(
    m: &AInftyContramodule,
    n: &CDSpace,
) -> Result<Contratensor, crate::Error> {
    require_even_cd(n)?;
    if m.coalgebra.carrier != n.left.coalgebra.carrier {
        return Err(crate::Error::Shape(
            "contratensor wants a contramodule over the cd-space's left coalgebra".into(),
        ));
    }
    let ncar = n.carrier().clone();
    let mnts = TensorSpace::new(vec![m.carrier.clone(), ncar.clone()])?;
    let mn = mnts.space.clone();
    let nts = TensorSpace::power(&ncar, 1);
    let mts = TensorSpace::power(&m.carrier, 1);
    let c = &n.left.coalgebra.carrier;
    let kk = m.effective_k().max(n.left.effective_k());
    let mut relations = Subspace::zero(&mn);
    let mut diffs = Vec::new();
    for k in 1..=kk {
        if m.op(k).is_none() && n.left.op(k).is_none() {
            continue;
        }
        let hs = m.op_source(k);
        let hts = TensorSpace::power(&hs.space, 1);
        let src = TensorSpace::new(vec![hs.space.clone(), ncar.clone()])?;
        let deg = 2 - k as i64;
        let leg_t = match m.op(k) {
            Some(t) => interleave_in(&src, &mnts, 0, t, &hts, &mts, true),
            None => GradedMap::zero(&src.space, &mn, deg),
        };
        let leg_ev = match n.left.op(k) {
            Some(w) => {
                let mut fs = vec![hs.space.clone()];
                fs.extend(vec![c.clone(); k - 1]);
                fs.push(ncar.clone());
                let midts = TensorSpace::new(fs)?;
                let step = interleave_in(&src, &midts, 1, w, &nts, &n.left.op_target(k), true);
                let cts = TensorSpace::power(c, k - 1);
                eval_collapse(&hs, &cts, &midts, &mnts).compose(&step)
            }
            None => GradedMap::zero(&src.space, &mn, deg),
        };
        let diff = leg_ev.sub(&leg_t);
        relations = relations.sum(&image(&diff));
        diffs.push(diff);
    }
    let (qspace, proj, section) = quotient(&relations);
    let d = n.right.coalgebra.clone();
    let mut comodule = AInftyComodule::new(d.clone(), qspace.clone(), Side::Right, n.right.k_max);
    let mnp = TensorSpace::power(&mn, 1);
    let qp = TensorSpace::power(&qspace, 1);
    for (l, wrl) in n.right.ops() {
        let mut fs = vec![m.carrier.clone(), ncar.clone()];
        fs.extend(vec![d.carrier.clone(); l - 1]);
        let flat = TensorSpace::new(fs)?;
        let step = interleave_in(&mnts, &flat, 1, wrl, &nts, &n.right.op_target(l), true);
        let mut nf = vec![mn.clone()];
        nf.extend(vec![d.carrier.clone(); l - 1]);
        let nested = TensorSpace::new(nf)?;
        let grouped = group_factors(&step, &flat, 0, &mnts, &nested);
        let qtgt = comodule.op_target(l);
        let big = interleave_in(&nested, &qtgt, 0, &proj, &mnp, &qp, true).compose(&grouped);
        for diff in &diffs {
            if !big.compose(diff).is_zero() {
                return Err(crate::Error::Descent(format!(
                    "coaction w_{} does not descend through the contratensor quotient",
                    l
                )));
            }
        }
        let wbar = big.compose(&section);
        if !wbar.compose(&proj).sub(&big).is_zero() {
            return Err(crate::Error::Descent(format!(
                "descended coaction w_{} depends on the choice of section",
                l
            )));
        }
        comodule.set_op(l, wbar)?;
    }
    Ok(Contratensor { comodule, projection: proj, section, ambient: mnts, relations })
}

/// Exact verification of the hom-contratensor adjunction: the currying map
/// Φ from D-colinear maps M⊠N → Q to contramodule maps M → [N,Q]ᴰ is
/// well defined, injective, and hits a space of the same dimension, degree by
/// degree.
pub struct ContratensorAdjunction {
    pub dim_comodule_homs: usize,
    pub dim_contramodule_homs: usize,
    pub bijective: bool,
    pub findings: Vec<String>,
}

impl ContratensorAdjunction {
    pub fn passed(&self) -> bool {
        self.bijective && self.findings.is_empty()
    }
}

pub fn verify_contratensor_adjunction(
    m: &AInftyContramodule,
    n: &CDSpace,
    q: &AInftyComodule,
) -> Result<ContratensorAdjunction, crate::Error> {
    let ct = contratensor(m, n)?;
    let hc = hom_into_contramodule(n, q)?;
    let hom_l = HomSpace::new(&ct.comodule.carrier, &q.carrier);
    let homs_l = colinear_subspace(&ct.comodule, q)?;
    let hom_r = HomSpace::new(&m.carrier, &hc.contramodule.carrier);
    let homs_r = contra_hom_subspace(m, &hc.contramodule)?;
    let (fwd, _) = curry_iso(&m.carrier, n.carrier(), &q.carrier);
    let hs_flat = HomSpace::new(&ct.ambient.space, &q.carrier);
    let hs_outer = HomSpace::new(&m.carrier, &hc.hom.space);
    let mut findings = Vec::new();
    let mut bijective = true;
    let mut degrees: Vec<i64> = hom_l.space.degrees().chain(hom_r.space.degrees()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    for p in degrees {
        let dl = homs_l.dim(p);
        let dr = homs_r.dim(p);
        if dl != dr {
            bijective = false;
            findings.push(format!("hom dimensions differ at degree {}: {} vs {}", p, dl, dr));
            continue;
        }
        if dl == 0 {
            continue;
        }
        let basis = homs_l.basis_at(p);
        let mut img = Mat::zero(hom_r.space.field, hom_r.space.dim(p), dl);
        for j in 0..dl {
            let g = hom_l.to_map(p, &basis.column(j));
            let flat = g.compose(&ct.projection);
            let flat_coords = hs_flat.from_map(&flat);
            let fl = fwd.block(p);
            let field = hom_r.space.field;
            let mut nested = vec![Scalar::zero(field); fl.rows];
            for (r, slot) in nested.iter_mut().enumerate() {
                let mut acc = Scalar::zero(field);
                for (cidx, fc) in flat_coords.iter().enumerate() {
                    let a = fl.at(r, cidx);
                    if !a.is_zero() && !fc.is_zero() {
                        acc = &acc + &(a * fc);
                    }
                }
                *slot = acc;
            }
            let phi = hs_outer.to_map(p, &nested);
            let phi_e = match corestrict(&phi, &hc.subspace) {
                Ok(x) => x,
                Err(_) => {
                    bijective = false;
                    findings.push(format!(
                        "curried image at degree {} is not D-colinear",
                        p
                    ));
                    continue;
                }
            };
            let coords = hom_r.from_map(&phi_e);
            if !homs_r.contains_vector(p, &coords) {
                bijective = false;
                findings
                    .push(format!("curried image at degree {} is not contramodule-linear", p));
            }
            for (i, v) in coords.iter().enumerate() {
                if !v.is_zero() {
                    img.set(i, j, v.clone());
                }
            }
        }
        if img.rank() != dl {
            bijective = false;
            findings.push(format!("currying is not injective at degree {}", p));
        }
    }
    Ok(ContratensorAdjunction {
        dim_comodule_homs: homs_l.total_dim(),
        dim_contramodule_homs: homs_r.total_dim(),
        bijective,
        findings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AInftyCoalgebra;
    use crate::comodule::comodule_over_self;
    use crate::contramodule::{check_contramodule, induce_free_contramodule};
    use crate::generate;
    use crate::scalar::Field;

    fn q() -> Field {
        Field::Rational
    }

    /// C as a commuting (C,C)-space over itself on both sides (the squares
    /// are the coassociativity-type identities).
    fn over_self_cd(c: &AInftyCoalgebra) -> CDSpace {
        CDSpace::new(comodule_over_self(c, Side::Left), comodule_over_self(c, Side::Right))
            .unwrap()
    }

    fn zero_coalgebra(field: Field) -> AInftyCoalgebra {
        AInftyCoalgebra::new(GradedSpace::zero(field), 1)
    }

    #[test]
    fn degenerate_and_tensor_cd_spaces_pass() {
        // C = D = 0, arbitrary carrier, zero coactions
        let c0 = zero_coalgebra(q());
        let ncar = GradedSpace::new(q(), [(0, 2), (1, 1)]);
        let n = CDSpace::new(
            AInftyComodule::new(c0.clone(), ncar.clone(), Side::Left, 1),
            AInftyComodule::new(c0.clone(), ncar, Side::Right, 1),
        )
        .unwrap();
        assert!(check_cd_space(&n, None).unwrap().passed());

        for seed in 0..4u64 {
            let c = generate::generate_even_coalgebra(q(), seed);
            let d = generate::generate_even_coalgebra(q(), seed + 100);
            let n = cd_space_from_comodules(
                &comodule_over_self(&c, Side::Left),
                &comodule_over_self(&d, Side::Right),
            )
            .unwrap();
            assert!(check_cd_space(&n, None).unwrap().passed(), "seed {}", seed);
            assert!(check_cd_space(&over_self_cd(&c), None).unwrap().passed(), "seed {}", seed);
        }
    }

    #[test]
    fn broken_square_detected_with_witness() {
        // both coactions are valid comodule structures, but they fail to
        // commute: λ(x) = c⊗y, λ(y) = c⊗y; ρ(x) = x⊗c, ρ(y) = 0
        let c = generate::grouplike_coalgebra(q(), 1);
        let ncar = GradedSpace::new(q(), [(0, 2)]);
        let one = Scalar::one(q());
        let mut left = AInftyComodule::new(c.clone(), ncar.clone(), Side::Left, 2);
        let lt = left.op_target(2);
        let mut wl = GradedMap::zero(&ncar, &lt.space, 0);
        let cy = lt.position(&TensorIndex { degrees: vec![0, 0], indices: vec![0, 1] }).unwrap();
        wl.add_entry(0, 0, cy, &one);
        wl.add_entry(0, 1, cy, &one);
        left.set_op(2, wl).unwrap();
        let mut right = AInftyComodule::new(c.clone(), ncar.clone(), Side::Right, 2);
        let rt = right.op_target(2);
        let mut wr = GradedMap::zero(&ncar, &rt.space, 0);
        let xc = rt.position(&TensorIndex { degrees: vec![0, 0], indices: vec![0, 0] }).unwrap();
        wr.add_entry(0, 0, xc, &one);
        right.set_op(2, wr).unwrap();
        assert!(check_comodule(&left, None).passed());
        assert!(check_comodule(&right, None).passed());
        let n = CDSpace::new(left, right).unwrap();
        let rep = check_cd_space(&n, None).unwrap();
        assert!(!rep.passed());
        assert!(rep.violations.iter().all(|v| v.identity.starts_with("cd-square")));
        assert!(rep.violations.iter().any(|v| v.identity == "cd-square-l2" && v.arity == 2));
    }

    #[test]
    fn odd_structures_rejected() {
        // a coalgebra with a nonzero differential is odd
        let ccar = GradedSpace::new(q(), [(0, 1), (1, 1)]);
        let mut c = AInftyCoalgebra::new(ccar.clone(), 1);
        let mut w1 = GradedMap::zero(&ccar, &ccar, 1);
        w1.add_entry(0, 0, 0, &Scalar::one(q()));
        c.set_op(1, w1).unwrap();
        let d = zero_coalgebra(q());
        let n = CDSpace::new(
            comodule_over_self(&c, Side::Left),
            AInftyComodule::new(d, ccar, Side::Right, 1),
        )
        .unwrap();
        assert!(matches!(check_cd_space(&n, None), Err(crate::Error::OddStructure(_))));
        let m = induce_free_contramodule(&n.left.coalgebra, &GradedSpace::new(q(), [(0, 1)]));
        assert!(matches!(contratensor(&m, &n), Err(crate::Error::OddStructure(_))));
    }

    #[test]
    fn hom_contramodule_recovers_free_contramodules() {
        // D = 0 makes colinearity vacuous: [N,Q]^D = [C,W] with t_k the
        // precomposition operations — exactly the free contramodule on W.
        for seed in 0..4u64 {
            let c = generate::generate_even_coalgebra(q(), seed);
            let d0 = zero_coalgebra(q());
            let w = GradedSpace::new(q(), [(0, 1), (1, 1)]);
            let n = CDSpace::new(
                comodule_over_self(&c, Side::Left),
                AInftyComodule::new(d0.clone(), c.carrier.clone(), Side::Right, 1),
            )
            .unwrap();
            let qmod = AInftyComodule::new(d0, w.clone(), Side::Right, 1);
            let hc = hom_into_contramodule(&n, &qmod).unwrap();
            assert!(hc.subspace.is_full(), "seed {}", seed);
            let free = induce_free_contramodule(&c, &w);
            assert_eq!(hc.contramodule.carrier, free.carrier, "seed {}", seed);
            for k in 1..=free.effective_k() {
                match (hc.contramodule.op(k), free.op(k)) {
                    (None, None) => {}
                    (Some(x), Some(y)) => assert!(x.sub(y).is_zero(), "seed {} k {}", seed, k),
                    _ => panic!("op mismatch at k={} seed {}", k, seed),
                }
            }
        }
    }

    #[test]
    fn hom_contramodule_passes_checker() {
        for seed in 0..4u64 {
            let c = generate::generate_even_coalgebra(q(), seed);
            let d = generate::generate_even_coalgebra(q(), seed + 50);
            let n = cd_space_from_comodules(
                &comodule_over_self(&c, Side::Left),
                &comodule_over_self(&d, Side::Right),
            )
            .unwrap();
            let qmod = comodule_over_self(&d, Side::Right);
            let hc = hom_into_contramodule(&n, &qmod).unwrap();
            assert!(check_contramodule(&hc.contramodule, None).passed(), "seed {}", seed);
        }
    }

    #[test]
    fn contratensor_soundness_and_dimension_accounting() {
        for seed in 0..4u64 {
            let c = generate::generate_even_coalgebra(q(), seed);
            let w = GradedSpace::new(q(), [(0, 1), (1, 1)]);
            let m = induce_free_contramodule(&c, &w);
            let n = over_self_cd(&c);
            let ct = contratensor(&m, &n).unwrap();
            assert!(check_comodule(&ct.comodule, None).passed(), "seed {}", seed);
            for dg in ct.ambient.space.degrees() {
                assert_eq!(
                    ct.comodule.carrier.dim(dg) + ct.relations.dim(dg),
                    ct.ambient.space.dim(dg),
                    "seed {} degree {}",
                    seed,
                    dg
                );
            }
            // the projection is onto and the section splits it
            assert!(ct
                .projection
                .compose(&ct.section)
                .sub(&GradedMap::identity(&ct.comodule.carrier))
                .is_zero());
        }
        // zero C: M⊠N = M⊗N on the nose
        let c0 = AInftyCoalgebra::new(GradedSpace::new(q(), [(0, 1)]), 1);
        let m = induce_free_contramodule(&c0, &GradedSpace::new(q(), [(0, 2)]));
        let n = over_self_cd(&c0);
        let ct = contratensor(&m, &n).unwrap();
        assert_eq!(ct.relations.total_dim(), 0);
        assert_eq!(ct.comodule.carrier.total_dim(), ct.ambient.space.total_dim());
    }

    #[test]
    fn adjunction_zero_case_reduces_to_currying() {
        let c0 = AInftyCoalgebra::new(GradedSpace::new(q(), [(0, 1), (1, 1)]), 1);
        let d0 = AInftyCoalgebra::new(GradedSpace::new(q(), [(0, 1)]), 1);
        let mcar = GradedSpace::new(q(), [(0, 1), (1, 1)]);
        let ncar = GradedSpace::new(q(), [(0, 2)]);
        let qcar = GradedSpace::new(q(), [(0, 1), (1, 1)]);
        let m = AInftyContramodule::new(c0.clone(), mcar, 1);
        let n = CDSpace::new(
            AInftyComodule::new(c0, ncar.clone(), Side::Left, 1),
            AInftyComodule::new(d0.clone(), ncar, Side::Right, 1),
        )
        .unwrap();
        let qmod = AInftyComodule::new(d0, qcar, Side::Right, 1);
        let rep = verify_contratensor_adjunction(&m, &n, &qmod).unwrap();
        assert!(rep.passed(), "findings: {:?}", rep.findings);
        assert_eq!(rep.dim_comodule_homs, rep.dim_contramodule_homs);
        assert!(rep.dim_comodule_homs > 0);
    }

    #[test]
    fn adjunction_with_nonzero_structure() {
        // nonzero t_2, w^L_2 and w^R_2 throughout
        for seed in 0..3u64 {
            let c = generate::generate_even_coalgebra(q(), seed);
            if c.op(2).is_none() {
                continue;
            }
            let w = GradedSpace::new(q(), [(0, 1)]);
            let m = induce_free_contramodule(&c, &w);
            let n = over_self_cd(&c);
            let qmod = comodule_over_self(&c, Side::Right);
            let rep = verify_contratensor_adjunction(&m, &n, &qmod).unwrap();
            assert!(rep.passed(), "seed {} findings: {:?}", seed, rep.findings);
        }
        // and the grouplike family, where the contratensor is a proper quotient
        let c = generate::grouplike_coalgebra(q(), 2);
        let m = induce_free_contramodule(&c, &GradedSpace::new(q(), [(0, 1)]));
        let n = over_self_cd(&c);
        let ct = contratensor(&m, &n).unwrap();
        assert!(ct.relations.total_dim() > 0);
        let qmod = comodule_over_self(&c, Side::Right);
        let rep = verify_contratensor_adjunction(&m, &n, &qmod).unwrap();
        assert!(rep.passed(), "findings: {:?}", rep.findings);
    }

    #[test]
    fn adjunction_over_f2() {
        let f2 = Field::prime(2).unwrap();
        for seed in 0..3u64 {
            let c = generate::generate_even_coalgebra(f2, seed);
            let d = generate::generate_even_coalgebra(f2, seed + 7);
            let n = cd_space_from_comodules(
                &comodule_over_self(&c, Side::Left),
                &comodule_over_self(&d, Side::Right),
            )
            .unwrap();
            let m = induce_free_contramodule(&c, &GradedSpace::new(f2, [(0, 1)]));
            let qmod = comodule_over_self(&d, Side::Right);
            let rep = verify_contratensor_adjunction(&m, &n, &qmod).unwrap();
            assert!(rep.passed(), "seed {} findings: {:?}", seed, rep.findings);
        }
    }
}
