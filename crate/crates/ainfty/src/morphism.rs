//! ∞-morphisms of A∞-modules and of left A∞-comodules: components of degree
//! 1−k, the defining-identity checker, and composition.

use crate::comodule::{AInftyComodule, Side};
use crate::graded::GradedMap;
use crate::module::AInftyModule;
use crate::report::ViolationReport;
use crate::scalar::Scalar;
use crate::tensor::{interleave_in, TensorSpace};
use std::collections::BTreeMap;

/// Module case: f_k: A^{⊗k−1}⊗M → N. Comodule case (left comodules over the
/// same coalgebra): g_k: P → C^{⊗k−1}⊗Q. Both of degree 1−k.
#[derive(Clone, Debug)]
pub enum InftyMorphism {
    Module { source: AInftyModule, target: AInftyModule, k_max: usize, comps: BTreeMap<usize, GradedMap> },
    Comodule { source: AInftyComodule, target: AInftyComodule, k_max: usize, comps: BTreeMap<usize, GradedMap> },
}

impl InftyMorphism {
    pub fn new_module(source: AInftyModule, target: AInftyModule, k_max: usize) -> InftyMorphism {
        assert_eq!(source.algebra.carrier, target.algebra.carrier, "same algebra required");
        InftyMorphism::Module { source, target, k_max, comps: BTreeMap::new() }
    }

    pub fn new_comodule(source: AInftyComodule, target: AInftyComodule, k_max: usize) -> InftyMorphism {
        assert_eq!(source.coalgebra.carrier, target.coalgebra.carrier, "same coalgebra required");
        assert!(source.side == Side::Left && target.side == Side::Left, "left comodules required");
        InftyMorphism::Comodule { source, target, k_max, comps: BTreeMap::new() }
    }

    /// Source of the arity-k component.
    fn comp_source(&self, k: usize) -> TensorSpace {
        match self {
            InftyMorphism::Module { source, .. } => {
                let mut f = vec![source.algebra.carrier.clone(); k - 1];
                f.push(source.carrier.clone());
                TensorSpace::new(f).expect("morphism comp source")
            }
            InftyMorphism::Comodule { source, .. } => TensorSpace::power(&source.carrier, 1),
        }
    }

    /// Target of the arity-k component.
    fn comp_target(&self, k: usize) -> TensorSpace {
        match self {
            InftyMorphism::Module { target, .. } => TensorSpace::power(&target.carrier, 1),
            InftyMorphism::Comodule { source, target, .. } => {
                let mut f = vec![source.coalgebra.carrier.clone(); k - 1];
                f.push(target.carrier.clone());
                TensorSpace::new(f).expect("morphism comp target")
            }
        }
    }

    pub fn k_max(&self) -> usize {
        match self {
            InftyMorphism::Module { k_max, .. } | InftyMorphism::Comodule { k_max, .. } => *k_max,
        }
    }

    fn comps_mut(&mut self) -> &mut BTreeMap<usize, GradedMap> {
        match self {
            InftyMorphism::Module { comps, .. } | InftyMorphism::Comodule { comps, .. } => comps,
        }
    }

    pub fn set_comp(&mut self, k: usize, f: GradedMap) -> Result<(), crate::Error> {
        if k == 0 || k > self.k_max() {
            return Err(crate::Error::Shape(format!("arity {} out of range 1..={}", k, self.k_max())));
        }
        if f.source != self.comp_source(k).space || f.target != self.comp_target(k).space {
            return Err(crate::Error::Shape(format!("morphism comp f_{} endpoint mismatch", k)));
        }
        if !f.is_zero() {
            self.comps_mut().insert(k, f);
        }
        Ok(())
    }

    pub fn comp(&self, k: usize) -> Option<&GradedMap> {
        match self {
            InftyMorphism::Module { comps, .. } | InftyMorphism::Comodule { comps, .. } => comps.get(&k),
        }
    }

    pub fn comps(&self) -> impl Iterator<Item = (usize, &GradedMap)> {
        match self {
            InftyMorphism::Module { comps, .. } | InftyMorphism::Comodule { comps, .. } => {
                comps.iter().map(|(&k, m)| (k, m))
            }
        }
    }

    /// Odd morphisms have components only in odd arities.
    pub fn is_odd(&self) -> bool {
        self.comps().all(|(k, _)| k % 2 == 1)
    }

    /// The strict identity morphism of a module.
    pub fn identity_module(m: &AInftyModule) -> InftyMorphism {
        let mut f = InftyMorphism::new_module(m.clone(), m.clone(), m.k_max);
        f.set_comp(1, GradedMap::identity(&m.carrier)).expect("identity shape");
        f
    }

    /// The strict identity morphism of a left comodule.
    pub fn identity_comodule(p: &AInftyComodule) -> InftyMorphism {
        let mut f = InftyMorphism::new_comodule(p.clone(), p.clone(), p.k_max);
        f.set_comp(1, GradedMap::identity(&p.carrier)).expect("identity shape");
        f
    }
}

/// Module-morphism identity, per arity n = a+b(+c):
///   Σ(−1)^a f_{a+1}(1^{⊗a}⊗m^M_b)
///     + Σ(−1)^{a+bc} f_{a+1+c}(1^{⊗a}⊗m_b⊗1^{⊗c−1}⊗1_M)
///     − Σ m^N_{a+1}(1^{⊗a}⊗f_b) = 0.
/// Comodule-morphism identity:
///   Σ(−1)^{ab}(1^{⊗a}⊗w^Q_b)g_{a+1}
///     + Σ(−1)^{ab+c}(1^{⊗a}⊗w_b⊗1^{⊗c−1}⊗1_Q)g_{a+1+c}
///     − Σ(1^{⊗a}⊗g_b)w^P_{a+1} = 0.
pub fn check_infty_morphism(f: &InftyMorphism, n_max: Option<usize>) -> ViolationReport {
    let mut rep = ViolationReport::default();
    for (k, c) in f.comps() {
        if c.degree != 1 - k as i64 {
            rep.malformed.push(format!("morphism comp f_{} has degree {}, expected {}", k, c.degree, 1 - k as i64));
        }
    }
    if !rep.malformed.is_empty() {
        return rep;
    }
    match f {
        InftyMorphism::Module { source, target, k_max, .. } => {
            let kk = (*k_max).max(source.effective_k()).max(target.effective_k());
            let n_max = n_max.unwrap_or(2 * kk - 1);
            let alg = &source.algebra;
            let field = source.carrier.field;
            let neg1 = Scalar::from_i64(field, -1);
            let apowers: Vec<TensorSpace> =
                (0..=n_max).map(|j| TensorSpace::power(&alg.carrier, j)).collect();
            let msrc: Vec<TensorSpace> = (1..=n_max).map(|j| source.op_source(j)).collect();
            let nsrc: Vec<TensorSpace> = (1..=n_max).map(|j| target.op_source(j)).collect();
            let mts = TensorSpace::power(&source.carrier, 1);
            let nts = TensorSpace::power(&target.carrier, 1);
            for n in 1..=n_max {
                let ts_n = &msrc[n - 1];
                if ts_n.space.is_zero() {
                    continue;
                }
                let mut residual = GradedMap::zero(&ts_n.space, &target.carrier, 2 - n as i64);
                // source action inside
                for b in 1..=n.min(source.k_max) {
                    let a = n - b;
                    let (Some(mb), Some(fo)) = (source.op(b), f.comp(a + 1)) else { continue };
                    let step = interleave_in(ts_n, &msrc[a], a, mb, &msrc[b - 1], &mts, true);
                    let mut term = fo.compose(&step);
                    if a % 2 == 1 {
                        term = term.scale(&neg1);
                    }
                    residual = residual.add(&term);
                }
                // algebra operation inside, away from the module slot
                for b in 1..=n.min(alg.k_max) {
                    let Some(mb) = alg.op(b) else { continue };
                    for a in 0..n.saturating_sub(b) {
                        let c = n - b - a;
                        let Some(fo) = f.comp(a + 1 + c) else { continue };
                        let step = interleave_in(ts_n, &msrc[a + c], a, mb, &apowers[b], &apowers[1], true);
                        let mut term = fo.compose(&step);
                        if (a + b * c) % 2 == 1 {
                            term = term.scale(&neg1);
                        }
                        residual = residual.add(&term);
                    }
                }
                // target action outside, moved to the left side
                for b in 1..=n.min(f.k_max()) {
                    let a = n - b;
                    let (Some(fb), Some(mo)) = (f.comp(b), target.op(a + 1)) else { continue };
                    let step = interleave_in(ts_n, &nsrc[a], a, fb, &msrc[b - 1], &nts, true);
                    let term = mo.compose(&step).scale(&neg1);
                    residual = residual.add(&term);
                }
                rep.record_residual("module-morphism", n, &residual, ts_n);
            }
        }
        InftyMorphism::Comodule { source, target, k_max, .. } => {
            let kk = (*k_max).max(source.effective_k()).max(target.effective_k());
            let n_max = n_max.unwrap_or(2 * kk - 1);
            let coa = &source.coalgebra;
            let field = source.carrier.field;
            let neg1 = Scalar::from_i64(field, -1);
            let cpowers: Vec<TensorSpace> =
                (0..=n_max).map(|j| TensorSpace::power(&coa.carrier, j)).collect();
            let gtgt: Vec<TensorSpace> = (1..=n_max).map(|j| f.comp_target(j)).collect();
            let ptgt: Vec<TensorSpace> = (1..=n_max).map(|j| source.op_target(j)).collect();
            let qtgt: Vec<TensorSpace> = (1..=n_max).map(|j| target.op_target(j)).collect();
            let pts = TensorSpace::power(&source.carrier, 1);
            let qts = TensorSpace::power(&target.carrier, 1);
            for n in 1..=n_max {
                let ts_n = &gtgt[n - 1];
                let mut residual = GradedMap::zero(&source.carrier, &ts_n.space, 2 - n as i64);
                // target coaction outside
                for b in 1..=n.min(target.k_max) {
                    let a = n - b;
                    let (Some(wb), Some(go)) = (target.op(b), f.comp(a + 1)) else { continue };
                    let step = interleave_in(&gtgt[a], ts_n, a, wb, &qts, &qtgt[b - 1], true);
                    let mut term = step.compose(go);
                    if (a * b) % 2 == 1 {
                        term = term.scale(&neg1);
                    }
                    residual = residual.add(&term);
                }
                // coalgebra operation applied to a C-slot of a longer component
                for b in 1..=n.min(coa.k_max) {
                    let Some(wb) = coa.op(b) else { continue };
                    for a in 0..n.saturating_sub(b) {
                        let c = n - b - a;
                        let Some(go) = f.comp(a + 1 + c) else { continue };
                        let step = interleave_in(&gtgt[a + c], ts_n, a, wb, &cpowers[1], &cpowers[b], true);
                        let mut term = step.compose(go);
                        if (a * b + c) % 2 == 1 {
                            term = term.scale(&neg1);
                        }
                        residual = residual.add(&term);
                    }
                }
                // source coaction inside, moved to the left side
                for b in 1..=n.min(f.k_max()) {
                    let a = n - b;
                    let (Some(gb), Some(wi)) = (f.comp(b), source.op(a + 1)) else { continue };
                    let step = interleave_in(&ptgt[a], ts_n, a, gb, &pts, &gtgt[b - 1], true);
                    let term = step.compose(wi).scale(&neg1);
                    residual = residual.add(&term);
                }
                rep.record_residual("comodule-morphism", n, &residual, &pts);
            }
        }
    }
    rep
}

/// Composition γ = β∘α: module case γ_k = Σ_{a+b=k} β_{a+1}∘(1^{⊗a}⊗α_b),
/// comodule case γ_k = Σ_{a+b=k} (1^{⊗a}⊗β_b)∘α_{a+1}.
pub fn compose_infty_morphisms(beta: &InftyMorphism, alpha: &InftyMorphism) -> Result<InftyMorphism, crate::Error> {
    match (beta, alpha) {
        (InftyMorphism::Module { source: bs, target: bt, .. }, InftyMorphism::Module { source: as_, target: at, .. }) => {
            if at.carrier != bs.carrier || as_.algebra.carrier != bs.algebra.carrier {
                return Err(crate::Error::Shape("composition endpoint mismatch".into()));
            }
            let k_max = alpha.k_max().max(beta.k_max());
            let mut gamma = InftyMorphism::new_module(as_.clone(), bt.clone(), k_max);
            let nts = TensorSpace::power(&bs.carrier, 1);
            for k in 1..=k_max {
                let src = gamma.comp_source(k);
                let mut comp = GradedMap::zero(&src.space, &bt.carrier, 1 - k as i64);
                let mut any = false;
                for b in 1..=k {
                    let a = k - b;
                    let (Some(bo), Some(al)) = (beta.comp(a + 1), alpha.comp(b)) else { continue };
                    let bsrc = alpha.comp_source(b);
                    let btgt_src = {
                        let mut fs = vec![as_.algebra.carrier.clone(); a];
                        fs.push(bs.carrier.clone());
                        TensorSpace::new(fs).expect("composition mid")
                    };
                    let step = interleave_in(&src, &btgt_src, a, al, &bsrc, &nts, true);
                    comp = comp.add(&bo.compose(&step));
                    any = true;
                }
                if any {
                    gamma.set_comp(k, comp)?;
                }
            }
            Ok(gamma)
        }
        (InftyMorphism::Comodule { source: bs, target: bt, .. }, InftyMorphism::Comodule { source: as_, target: at, .. }) => {
            if at.carrier != bs.carrier || as_.coalgebra.carrier != bs.coalgebra.carrier {
                return Err(crate::Error::Shape("composition endpoint mismatch".into()));
            }
            let k_max = alpha.k_max().max(beta.k_max());
            let mut gamma = InftyMorphism::new_comodule(as_.clone(), bt.clone(), k_max);
            let qts = TensorSpace::power(&bs.carrier, 1);
            for k in 1..=k_max {
                let tgt = gamma.comp_target(k);
                let mut comp = GradedMap::zero(&as_.carrier, &tgt.space, 1 - k as i64);
                let mut any = false;
                for b in 1..=k {
                    let a = k - b;
                    let (Some(bo), Some(al)) = (beta.comp(b), alpha.comp(a + 1)) else { continue };
                    let mid = alpha.comp_target(a + 1);
                    let btgt = beta.comp_target(b);
                    let step = interleave_in(&mid, &tgt, a, bo, &qts, &btgt, true);
                    comp = comp.add(&step.compose(al));
                    any = true;
                }
                if any {
                    gamma.set_comp(k, comp)?;
                }
            }
            Ok(gamma)
        }
        _ => Err(crate::Error::Shape("cannot compose morphisms of different kinds".into())),
    }
}
