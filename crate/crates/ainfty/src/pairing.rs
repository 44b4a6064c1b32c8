//! Pairings f: A → C* between an A∞-algebra and an A∞-coalgebra, the
//! rationality test via the canonical comparison map α, the induced
//! comodule→module functor ι, the rationalization R_f of a module, and exact
//! verification of the ι ⊣ R_f adjunction.
//!
//! All sign conventions are inherited from the frozen dual-module recipe
//! (comodule_to_dual_module): the comparison map α is defined so that for a
//! right comodule P with coaction w, the curried action of ι(P) is exactly
//! α applied to w. In particular the degenerate index-0 component of α is
//! −id (the arity-1 dual convention carries a global sign), which changes no
//! rank, image, or solvability statement.

use crate::algebra::{
    check_aa_morphism, compositions, dualize_coalgebra, pair_sign, AInftyAlgebra,
    AInftyAlgebraMorphism, AInftyCoalgebra,
};
use crate::comodule::{comodule_to_dual_module, AInftyComodule, Side};
use crate::graded::{GradedMap, GradedSpace, Subspace};
use crate::homsolve::{strict_hom_comodule, strict_hom_module};
use crate::matrix::Mat;
use crate::module::AInftyModule;
use crate::report::ViolationReport;
use crate::scalar::Scalar;
use crate::tensor::{tensor_many, TensorIndex, TensorSpace};
use std::collections::{BTreeMap, BTreeSet};

/// A pairing between C and A: the components f_k: A^{⊗k} → C* of an
/// A∞-algebra morphism A → C*.
#[derive(Clone, Debug)]
pub struct Pairing {
    pub coalgebra: AInftyCoalgebra,
    pub morphism: AInftyAlgebraMorphism,
}

impl Pairing {
    pub fn new(algebra: AInftyAlgebra, coalgebra: AInftyCoalgebra) -> Pairing {
        let dual = dualize_coalgebra(&coalgebra);
        let morphism = AInftyAlgebraMorphism::new(algebra, dual);
        Pairing { coalgebra, morphism }
    }

    pub fn algebra(&self) -> &AInftyAlgebra {
        &self.morphism.source
    }

    pub fn dual_algebra(&self) -> &AInftyAlgebra {
        &self.morphism.target
    }

    pub fn set_comp(&mut self, k: usize, f: GradedMap) -> Result<(), crate::Error> {
        self.morphism.set_comp(k, f)
    }

    pub fn comp(&self, k: usize) -> Option<&GradedMap> {
        self.morphism.comp(k)
    }

    pub fn max_f_arity(&self) -> usize {
        self.morphism.comps.keys().max().copied().unwrap_or(0)
    }

    /// The defining condition: f is an A∞-algebra morphism A → C*.
    pub fn validate(&self, n_max: Option<usize>) -> ViolationReport {
        check_aa_morphism(&self.morphism, n_max)
    }
}

/// The pairing with A = C* and f_1 = id.
pub fn identity_pairing(c: &AInftyCoalgebra) -> Pairing {
    let a = dualize_coalgebra(c);
    let mut p = Pairing::new(a.clone(), c.clone());
    p.set_comp(1, GradedMap::identity(&a.carrier)).expect("identity comp");
    p
}

/// The zero pairing (all f_k = 0); always a morphism when it typechecks.
pub fn zero_pairing(a: AInftyAlgebra, c: AInftyCoalgebra) -> Pairing {
    Pairing::new(a, c)
}

/// The components f̃_{(k,l)}: A^{⊗k} → (C*)^{⊗l} of the corestriction
/// extension of f: sum over decompositions k = i₁+…+i_l of
/// (−1)^s f_{i₁}⊗…⊗f_{i_l} with s = Σ_j (l−1−j)(i_j−1).
pub fn tilde_f(p: &Pairing, bound: usize) -> BTreeMap<(usize, usize), GradedMap> {
    let a = p.algebra();
    let dual = p.dual_algebra();
    let maxf = p.max_f_arity();
    let mut out: BTreeMap<(usize, usize), GradedMap> = BTreeMap::new();
    if maxf == 0 {
        return out;
    }
    let apowers: Vec<TensorSpace> =
        (0..=bound).map(|j| TensorSpace::power(&a.carrier, j)).collect();
    let dual1 = TensorSpace::power(&dual.carrier, 1);
    for k in 1..=bound {
        for comp in compositions(k, maxf) {
            let l = comp.len();
            if l > bound {
                continue;
            }
            let parts: Option<Vec<&GradedMap>> = comp.iter().map(|&i| p.comp(i)).collect();
            let Some(parts) = parts else { continue };
            let tuples: Vec<(&GradedMap, &TensorSpace, &TensorSpace)> =
                parts.iter().zip(&comp).map(|(g, &i)| (*g, &apowers[i], &dual1)).collect();
            let tens = tensor_many(&tuples, true);
            let mut s = 0usize;
            for (j, &ij) in comp.iter().enumerate() {
                s += (l - 1 - j) * (ij - 1);
            }
            let signed = if s % 2 == 1 { tens.neg() } else { tens };
            let entry = out.entry((k, l)).or_insert_with(|| {
                GradedMap::zero(
                    &apowers[k].space,
                    &TensorSpace::power(&dual.carrier, l).space,
                    l as i64 - k as i64,
                )
            });
            *entry = entry.add(&signed);
        }
    }
    out.retain(|_, g| !g.is_zero());
    out
}

/// The α comparison system for a fixed ambient test space V: per virtual
/// degree D, the matrix of α from ⊕_l S⊗C^{⊗l} (at degree D−l) into
/// ⊕_k [A^{⊗k},V] (at hom-degree D−k), for a subspace S ⊆ V.
struct AlphaSystem {
    vamb: GradedSpace,
    lb: usize,
    kb: usize,
    ftilde: BTreeMap<(usize, usize), GradedMap>,
    apowers: Vec<TensorSpace>,
    dual_powers: Vec<TensorSpace>,
    hs: Vec<crate::homspace::HomSpace>, // index k ≥ 1
}

impl AlphaSystem {
    fn new(p: &Pairing, vamb: &GradedSpace, lb: usize, kb: usize) -> AlphaSystem {
        let a = p.algebra();
        let apowers: Vec<TensorSpace> =
            (0..=kb).map(|j| TensorSpace::power(&a.carrier, j)).collect();
        let dual_powers: Vec<TensorSpace> = (0..=lb)
            .map(|j| TensorSpace::power(&p.dual_algebra().carrier, j))
            .collect();
        let mut hs = vec![crate::homspace::HomSpace::new(&GradedSpace::unit(vamb.field), vamb)];
        for k in 1..=kb {
            hs.push(crate::homspace::HomSpace::new(&apowers[k].space, vamb));
        }
        AlphaSystem {
            vamb: vamb.clone(),
            lb,
            kb,
            ftilde: tilde_f(p, kb.max(lb)),
            apowers,
            dual_powers,
            hs,
        }
    }

    /// Row offsets of ⊕_{k=0}^{kb} [A^{⊗k},V] at virtual degree D.
    fn row_layout(&self, d: i64) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(self.kb + 1);
        let mut total = 0usize;
        for k in 0..=self.kb {
            offsets.push(total);
            total += if k == 0 {
                self.vamb.dim(d)
            } else {
                self.hs[k].basis_at(d - k as i64).len()
            };
        }
        (offsets, total)
    }

    /// Source tensor spaces [S]++[C;l] for l = 0..=lb.
    fn source_spaces(&self, s: &GradedSpace, c: &GradedSpace) -> Vec<TensorSpace> {
        (0..=self.lb)
            .map(|l| {
                let mut fs = vec![s.clone()];
                fs.extend(std::iter::repeat(c.clone()).take(l));
                TensorSpace::new(fs).expect("alpha source")
            })
            .collect()
    }

    /// Virtual degrees D where some source component is nonzero.
    fn virtual_degrees(&self, sts: &[TensorSpace]) -> Vec<i64> {
        let mut ds = BTreeSet::new();
        for (l, ts) in sts.iter().enumerate() {
            for deg in ts.space.degrees() {
                ds.insert(deg + l as i64);
            }
        }
        ds.into_iter().collect()
    }

    /// The α matrix at virtual degree D for the subspace with inclusion
    /// `incl` (a degree-0 map S → V). Columns are the basis of
    /// ⊕_l (S⊗C^{⊗l})_{D−l} in l-major order.
    fn alpha_matrix(&self, sts: &[TensorSpace], incl: &GradedMap, d: i64) -> Mat {
        let field = self.vamb.field;
        let (offsets, rows) = self.row_layout(d);
        let ncols: usize = sts
            .iter()
            .enumerate()
            .map(|(l, ts)| ts.basis_at(d - l as i64).len())
            .sum();
        let mut m = Mat::zero(field, rows, ncols);
        let mut col = 0usize;
        for (l, ts) in sts.iter().enumerate() {
            for e in ts.basis_at(d - l as i64) {
                let dv = e.degrees[0];
                let vi = e.indices[0];
                let u = incl.block(dv).column(vi);
                let phis: Vec<i64> = e.degrees[1..].iter().map(|&x| -x).collect();
                let sigma: i64 = phis.iter().sum();
                let mut exp = if pair_sign(&phis) { 1i64 } else { 0 };
                exp += (d - 1) * sigma;
                exp += (l as i64 + 1) * (sigma + 1);
                let neg = exp.rem_euclid(2) == 1;
                if l == 0 {
                    debug_assert_eq!(dv, d);
                    for (j, uj) in u.iter().enumerate() {
                        if !uj.is_zero() {
                            let v = if neg { uj.neg() } else { uj.clone() };
                            m.add_at(offsets[0] + j, col, &v);
                        }
                    }
                } else {
                    let phi_ti = TensorIndex {
                        degrees: phis.clone(),
                        indices: e.indices[1..].to_vec(),
                    };
                    let rphi = self.dual_powers[l].position(&phi_ti);
                    for k in 1..=self.kb {
                        let (Some(ft), Some(rphi)) = (self.ftilde.get(&(k, l)), rphi) else {
                            continue;
                        };
                        let na = sigma + k as i64 - l as i64;
                        let Some(block) = ft.block_ref(na) else { continue };
                        for ca in 0..block.cols {
                            let coeff = block.at(rphi, ca);
                            if coeff.is_zero() {
                                continue;
                            }
                            for (j, uj) in u.iter().enumerate() {
                                if uj.is_zero() {
                                    continue;
                                }
                                let row = self
                                    .hs[k]
                                    .position(d - k as i64, &(na, ca, j))
                                    .expect("alpha row");
                                let mut v = coeff * uj;
                                if neg {
                                    v = v.neg();
                                }
                                m.add_at(offsets[k] + row, col, &v);
                            }
                        }
                    }
                }
                col += 1;
            }
        }
        m
    }

    /// The curried-action matrix at virtual degree D: columns are an ambient
    /// basis of R at degree D−1 (given as ambient coordinate columns), rows
    /// as in row_layout; entry blocks are m^M_{k+1}(ā ⊗ −).
    fn lambda_matrix(&self, m: &AInftyModule, rbasis: &Mat, d: i64) -> Mat {
        let field = self.vamb.field;
        let (offsets, rows) = self.row_layout(d);
        let deg = d - 1;
        let mut out = Mat::zero(field, rows, rbasis.cols);
        for k in 0..=self.kb {
            let Some(op) = m.op(k + 1) else { continue };
            if k == 0 {
                let Some(block) = op.block_ref(deg) else { continue };
                for x in 0..rbasis.cols {
                    for r in 0..block.rows {
                        let mut acc = Scalar::zero(field);
                        for uidx in 0..block.cols {
                            let c = block.at(r, uidx);
                            if !c.is_zero() {
                                acc = &acc + &(c * rbasis.at(uidx, x));
                            }
                        }
                        if !acc.is_zero() {
                            out.add_at(offsets[0] + r, x, &acc);
                        }
                    }
                }
                continue;
            }
            let src = m.op_source(k + 1);
            for sd in op.nonzero_degrees().collect::<Vec<_>>() {
                let block = op.block(sd);
                for (ci, ti) in src.basis_at(sd).iter().enumerate() {
                    if ti.degrees[k] != deg {
                        continue;
                    }
                    let na = sd - deg;
                    let prefix = TensorIndex {
                        degrees: ti.degrees[..k].to_vec(),
                        indices: ti.indices[..k].to_vec(),
                    };
                    let Some(ca) = self.apowers[k].position(&prefix) else { continue };
                    let uidx = ti.indices[k];
                    for j in 0..block.rows {
                        let c = block.at(j, ci);
                        if c.is_zero() {
                            continue;
                        }
                        let row = self
                            .hs[k]
                            .position(d - k as i64, &(na, ca, j))
                            .expect("lambda row");
                        for x in 0..rbasis.cols {
                            let xc = rbasis.at(uidx, x);
                            if !xc.is_zero() {
                                let v = c * xc;
                                out.add_at(offsets[k] + row, x, &v);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Per-degree rank record for one test space.
#[derive(Clone, Debug)]
pub struct RankRecord {
    pub virtual_degree: i64,
    pub cols: usize,
    pub rank: usize,
}

/// A truncated rationality certificate: α injectivity per virtual degree on
/// a finite family of test spaces, up to the stated arity bound.
#[derive(Clone, Debug)]
pub struct RationalityCertificate {
    pub bound: usize,
    pub tested: Vec<(String, Vec<RankRecord>)>,
    pub rational: bool,
    pub witness: Option<(String, i64)>,
}

/// Test injectivity of α(C,A,V) for each test space, per virtual degree,
/// truncated at the arity bound. The result certifies the scoped statement
/// only.
pub fn is_rational(
    p: &Pairing,
    test_spaces: &[(String, GradedSpace)],
    bound: usize,
) -> RationalityCertificate {
    let mut cert = RationalityCertificate {
        bound,
        tested: Vec::new(),
        rational: true,
        witness: None,
    };
    for (name, v) in test_spaces {
        let sys = AlphaSystem::new(p, v, bound, bound);
        let sts = sys.source_spaces(v, &p.coalgebra.carrier);
        let incl = GradedMap::identity(v);
        let mut records = Vec::new();
        for d in sys.virtual_degrees(&sts) {
            let m = sys.alpha_matrix(&sts, &incl, d);
            if m.cols == 0 {
                continue;
            }
            let rank = m.rank();
            records.push(RankRecord { virtual_degree: d, cols: m.cols, rank });
            if rank < m.cols && cert.rational {
                cert.rational = false;
                cert.witness = Some((name.clone(), d));
            }
        }
        cert.tested.push((name.clone(), records));
    }
    cert
}

/// Restriction of scalars along f of a module over C*:
/// m^{A,M}_{k+1} = Σ(−1)^s m^{C*,M}_{l+1}∘(f_{i₁}⊗…⊗f_{i_l}⊗1_M).
pub fn restrict_scalars(
    p: &Pairing,
    dm: &AInftyModule,
    out_k_max: usize,
) -> Result<AInftyModule, crate::Error> {
    if dm.algebra.carrier != p.dual_algebra().carrier {
        return Err(crate::Error::Shape("module is not over the dual algebra".into()));
    }
    let maxf = p.max_f_arity();
    let a = p.algebra();
    let mut out = AInftyModule::new(a.clone(), dm.carrier.clone(), out_k_max);
    if let Some(d1) = dm.op(1) {
        out.set_op(1, d1.clone())?;
    }
    let apowers: Vec<TensorSpace> = (0..out_k_max)
        .map(|j| TensorSpace::power(&a.carrier, j))
        .collect();
    let dual1 = TensorSpace::power(&dm.algebra.carrier, 1);
    let mts = TensorSpace::power(&dm.carrier, 1);
    for k in 1..out_k_max {
        let src = out.op_source(k + 1);
        let mut op = GradedMap::zero(&src.space, &dm.carrier, 1 - k as i64);
        if maxf > 0 {
            for comp in compositions(k, maxf) {
                let l = comp.len();
                let Some(inner) = dm.op(l + 1) else { continue };
                let parts: Option<Vec<&GradedMap>> = comp.iter().map(|&i| p.comp(i)).collect();
                let Some(parts) = parts else { continue };
                let id_m = GradedMap::identity(&dm.carrier);
                let mut tuples: Vec<(&GradedMap, &TensorSpace, &TensorSpace)> =
                    parts.iter().zip(&comp).map(|(g, &i)| (*g, &apowers[i], &dual1)).collect();
                tuples.push((&id_m, &mts, &mts));
                let tens = tensor_many(&tuples, true);
                let mut s = 0usize;
                for (j, &ij) in comp.iter().enumerate() {
                    s += (l - 1 - j) * (ij - 1);
                }
                let term = inner.compose(&tens);
                op = op.add(&if s % 2 == 1 { term.neg() } else { term });
            }
        }
        if !op.is_zero() {
            out.set_op(k + 1, op)?;
        }
    }
    Ok(out)
}

/// The comodule→module functor ι(C,A): dualize the coaction into a
/// C*-module, then restrict scalars along f.
pub fn iota(p: &Pairing, pm: &AInftyComodule) -> Result<AInftyModule, crate::Error> {
    if pm.side != Side::Right {
        return Err(crate::Error::Shape("iota consumes right comodules".into()));
    }
    if pm.coalgebra.carrier != p.coalgebra.carrier {
        return Err(crate::Error::Shape("comodule is not over the pairing's coalgebra".into()));
    }
    let dm = comodule_to_dual_module(pm)?;
    let maxf = p.max_f_arity();
    let out_k = (maxf * dm.effective_k().saturating_sub(1) + 1).max(1);
    restrict_scalars(p, &dm, out_k)
}

/// The rationalization of a module: the largest subspace whose action is
/// induced from a C-coaction through ι, with that coaction solved exactly.
pub struct Rationalization {
    pub subspace: Subspace,
    pub comodule: AInftyComodule,
    pub iterations: usize,
}

fn stack_preimage(a: &Mat, b: &Mat) -> Mat {
    // columns x with Bx ∈ Im(A): x-parts of ker [A | B]
    let combined = a.hstack(b);
    let ker = combined.kernel();
    let mut xpart = Mat::zero(b.field, b.cols, ker.cols);
    for j in 0..ker.cols {
        for i in 0..b.cols {
            let v = ker.at(a.cols + i, j);
            if !v.is_zero() {
                xpart.set(i, j, v.clone());
            }
        }
    }
    xpart
}

pub fn rationalize(
    p: &Pairing,
    m: &AInftyModule,
    co_k_max: usize,
) -> Result<Rationalization, crate::Error> {
    if m.algebra.carrier != p.algebra().carrier {
        return Err(crate::Error::Shape("module is not over the pairing's algebra".into()));
    }
    let lb = co_k_max.saturating_sub(1);
    let kb = (m.effective_k().saturating_sub(1)).max(p.max_f_arity() * lb);
    let sys = AlphaSystem::new(p, &m.carrier, lb, kb);
    let mut r = Subspace::full(&m.carrier);
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        let rspace = r.as_space();
        let incl = r.inclusion();
        let sts = sys.source_spaces(&rspace, &p.coalgebra.carrier);
        let mut gens = BTreeMap::new();
        for deg in rspace.degrees().collect::<Vec<_>>() {
            let d = deg + 1;
            let a = sys.alpha_matrix(&sts, &incl, d);
            let rb = r.basis_at(deg);
            let b = sys.lambda_matrix(m, &rb, d);
            let xpart = stack_preimage(&a, &b);
            // back to ambient coordinates
            gens.insert(deg, rb.mul(&xpart));
        }
        let next = Subspace::from_generators(&m.carrier, gens);
        if next.total_dim() == r.total_dim() {
            break;
        }
        r = next;
    }
    // solve the coaction on the stabilized subspace
    let rspace = r.as_space();
    let incl = r.inclusion();
    let sts = sys.source_spaces(&rspace, &p.coalgebra.carrier);
    let mut comodule =
        AInftyComodule::new(p.coalgebra.clone(), rspace.clone(), Side::Right, lb + 1);
    let mut ops: BTreeMap<usize, GradedMap> = BTreeMap::new();
    for deg in rspace.degrees().collect::<Vec<_>>() {
        let d = deg + 1;
        let a = sys.alpha_matrix(&sts, &incl, d);
        let rb = r.basis_at(deg);
        let b = sys.lambda_matrix(m, &rb, d);
        for x in 0..rb.cols {
            let y = a.solve(&b.column(x)).ok_or_else(|| {
                crate::Error::Invalid(format!(
                    "alpha preimage missing at degree {} after fixpoint",
                    deg
                ))
            })?;
            // split y into the w_{l+1} blocks
            let mut off = 0usize;
            for (l, ts) in sts.iter().enumerate() {
                let n = ts.basis_at(d - l as i64).len();
                for i in 0..n {
                    let v = &y[off + i];
                    if !v.is_zero() {
                        let op = ops.entry(l + 1).or_insert_with(|| {
                            GradedMap::zero(&rspace, &ts.space, 1 - l as i64)
                        });
                        op.add_entry(deg, x, i, v);
                    }
                }
                off += n;
            }
        }
    }
    for (k, op) in ops {
        comodule.set_op(k, op)?;
    }
    Ok(Rationalization { subspace: r, comodule, iterations })
}

/// Exhaustive-subspace oracle for R_f over F₂ (or another prime field at
/// very small dimension): the sum of all graded subspaces whose restricted
/// action is induced from some coaction.
pub fn rationalize_oracle(
    p: &Pairing,
    m: &AInftyModule,
    co_k_max: usize,
) -> Result<Subspace, crate::Error> {
    let field = m.carrier.field;
    let q = match field {
        crate::scalar::Field::Prime(q) => q,
        _ => return Err(crate::Error::Shape("oracle requires a prime field".into())),
    };
    if m.carrier.total_dim() > 4 {
        return Err(crate::Error::Shape("oracle limited to total dim ≤ 4".into()));
    }
    let lb = co_k_max.saturating_sub(1);
    let kb = (m.effective_k().saturating_sub(1)).max(p.max_f_arity() * lb);
    let sys = AlphaSystem::new(p, &m.carrier, lb, kb);
    let mut total = Subspace::zero(&m.carrier);
    for sub in enumerate_graded_subspaces(&m.carrier, q) {
        let rspace = sub.as_space();
        let incl = sub.inclusion();
        let sts = sys.source_spaces(&rspace, &p.coalgebra.carrier);
        let mut admissible = true;
        for deg in rspace.degrees().collect::<Vec<_>>() {
            let d = deg + 1;
            let a = sys.alpha_matrix(&sts, &incl, d);
            let rb = sub.basis_at(deg);
            let b = sys.lambda_matrix(m, &rb, d);
            for x in 0..rb.cols {
                if a.solve(&b.column(x)).is_none() {
                    admissible = false;
                    break;
                }
            }
            if !admissible {
                break;
            }
        }
        if admissible {
            total = total.sum(&sub);
        }
    }
    Ok(total)
}

/// All graded subspaces of a small space over F_q (per-degree product of the
/// subspace lattices).
pub fn enumerate_graded_subspaces(space: &GradedSpace, q: u64) -> Vec<Subspace> {
    let field = space.field;
    let degrees: Vec<i64> = space.degrees().collect();
    // per-degree subspace bases, canonicalized by image()
    let mut per_degree: Vec<Vec<Mat>> = Vec::new();
    for &d in &degrees {
        let n = space.dim(d);
        let mut vectors: Vec<Vec<u64>> = vec![vec![0; n]];
        for _ in 0..n {
            let mut next = Vec::new();
            for v in &vectors {
                for c in 0..q {
                    let mut w = v.clone();
                    w.remove(0);
                    w.push(c);
                    next.push(w);
                }
            }
            vectors = next;
        }
        // all subsets is exponential; instead enumerate spans of all subsets
        // of nonzero vectors, deduplicated by rref
        let nonzero: Vec<&Vec<u64>> = vectors.iter().filter(|v| v.iter().any(|&c| c != 0)).collect();
        let mut seen: BTreeMap<Vec<String>, Mat> = BTreeMap::new();
        let zero = Mat::zero(field, n, 0);
        seen.insert(vec![], zero);
        for mask in 0..(1u64 << nonzero.len()) {
            let mut cols: Vec<Vec<Scalar>> = Vec::new();
            for (i, v) in nonzero.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    cols.push(v.iter().map(|&c| Scalar::from_i64(field, c as i64)).collect());
                }
            }
            if cols.is_empty() {
                continue;
            }
            let mut m = Mat::zero(field, n, cols.len());
            for (j, col) in cols.iter().enumerate() {
                for (i, v) in col.iter().enumerate() {
                    if !v.is_zero() {
                        m.set(i, j, v.clone());
                    }
                }
            }
            let im = m.image();
            let (rref, _) = im.transpose().rref();
            let key: Vec<String> = (0..rref.rows)
                .map(|i| (0..rref.cols).map(|j| format!("{:?},", rref.at(i, j))).collect())
                .collect();
            seen.entry(key).or_insert(im);
        }
        per_degree.push(seen.into_values().collect());
    }
    // cartesian product
    let mut out: Vec<BTreeMap<i64, Mat>> = vec![BTreeMap::new()];
    for (i, &d) in degrees.iter().enumerate() {
        let mut next = Vec::new();
        for partial in &out {
            for b in &per_degree[i] {
                let mut p2 = partial.clone();
                if b.cols > 0 {
                    p2.insert(d, b.clone());
                }
                next.push(p2);
            }
        }
        out = next;
    }
    out.into_iter().map(|gens| Subspace::from_generators(space, gens)).collect()
}

/// Report for the ι ⊣ R_f adjunction on one instance.
#[derive(Clone, Debug)]
pub struct AdjunctionReport {
    pub dim_module_homs: usize,
    pub dim_comodule_homs: usize,
    pub bijective: bool,
    pub findings: Vec<String>,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.dim_module_homs == self.dim_comodule_homs && self.bijective && self.findings.is_empty()
    }
}

/// Verify dim _A𝐌(ι(M′), M) = dim 𝐌^C(M′, R_f(M)) and that composing with
/// the inclusion R_f(M) ⊆ M is a bijection on strict hom bases.
pub fn verify_pairing_adjunction(
    p: &Pairing,
    mprime: &AInftyComodule,
    m: &AInftyModule,
    co_k_max: usize,
) -> Result<AdjunctionReport, crate::Error> {
    let iot = iota(p, mprime)?;
    let rat = rationalize(p, m, co_k_max)?;
    let hom_mod = strict_hom_module(&iot, m)?;
    let hom_com = strict_hom_comodule(mprime, &rat.comodule)?;
    let incl = rat.subspace.inclusion();
    let mut findings = Vec::new();
    let mut images: Vec<Vec<Scalar>> = Vec::new();
    for g in hom_com.maps() {
        let composed = incl.compose(&g);
        if !hom_mod.contains_map(&composed) {
            findings.push("corestriction image is not a strict module morphism".into());
        }
        images.push(hom_mod.hom.from_map(&composed));
    }
    let bijective = if images.is_empty() {
        hom_mod.dim() == 0
    } else {
        let field = m.carrier.field;
        let rows = images[0].len();
        let mut mat = Mat::zero(field, rows, images.len());
        for (j, col) in images.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    mat.set(i, j, v.clone());
                }
            }
        }
        mat.rank() == hom_com.dim() && hom_com.dim() == hom_mod.dim()
    };
    Ok(AdjunctionReport {
        dim_module_homs: hom_mod.dim(),
        dim_comodule_homs: hom_com.dim(),
        bijective,
        findings,
    })
}

/// Fullness at rational targets: dim _A𝐌(ιM′, ιN′) = dim 𝐌^C(M′, N′).
pub fn fullness_dims(
    p: &Pairing,
    mprime: &AInftyComodule,
    nprime: &AInftyComodule,
) -> Result<(usize, usize), crate::Error> {
    let im = iota(p, mprime)?;
    let in_ = iota(p, nprime)?;
    let hm = strict_hom_module(&im, &in_)?;
    let hc = strict_hom_comodule(mprime, nprime)?;
    Ok((hm.dim(), hc.dim()))
}
