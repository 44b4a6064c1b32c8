//! Left A∞-modules: carrier M with actions m^M_k: A^{⊗k−1}⊗M → M of degree
//! 2−k, the defining identity checker, free modules A⊗W, and direct sums.

use crate::algebra::AInftyAlgebra;
use crate::graded::{GradedMap, GradedSpace};
use crate::report::ViolationReport;
use crate::scalar::Scalar;
use crate::tensor::{interleave_in, regroup, TensorSpace};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct AInftyModule {
    pub algebra: AInftyAlgebra,
    pub carrier: GradedSpace,
    pub k_max: usize,
    ops: BTreeMap<usize, GradedMap>,
}

impl AInftyModule {
    pub fn new(algebra: AInftyAlgebra, carrier: GradedSpace, k_max: usize) -> AInftyModule {
        assert!(k_max >= 1);
        AInftyModule { algebra, carrier, k_max, ops: BTreeMap::new() }
    }

    /// Tensor space A^{⊗k−1}⊗M hosting the arity-k action's source.
    pub fn op_source(&self, k: usize) -> TensorSpace {
        let mut f = vec![self.algebra.carrier.clone(); k - 1];
        f.push(self.carrier.clone());
        TensorSpace::new(f).expect("module op source")
    }

    pub fn set_op(&mut self, k: usize, m: GradedMap) -> Result<(), crate::Error> {
        if k == 0 || k > self.k_max {
            return Err(crate::Error::Shape(format!("arity {} out of range 1..={}", k, self.k_max)));
        }
        if m.source != self.op_source(k).space || m.target != self.carrier {
            return Err(crate::Error::Shape(format!("module op m_{} endpoint mismatch", k)));
        }
        if !m.is_zero() {
            self.ops.insert(k, m);
        }
        Ok(())
    }

    pub fn op(&self, k: usize) -> Option<&GradedMap> {
        self.ops.get(&k)
    }

    pub fn ops(&self) -> impl Iterator<Item = (usize, &GradedMap)> {
        self.ops.iter().map(|(&k, m)| (k, m))
    }

    pub fn is_even(&self) -> bool {
        self.ops.keys().all(|k| k % 2 == 0)
    }

    pub fn effective_k(&self) -> usize {
        self.k_max.max(self.algebra.k_max)
    }
}

/// Module identity checker:
///   Σ(−1)^{p+qr} m^M_{p+1+r}(1^{⊗p}⊗m_q⊗1^{⊗r−1}⊗1_M)
///     + Σ(−1)^a m^M_{a+1}(1^{⊗a}⊗m^M_b) = 0,
/// first sum over p+q+r=n with q,r ≥ 1, second over a+b=n with b ≥ 1.
pub fn check_module(m: &AInftyModule, n_max: Option<usize>) -> ViolationReport {
    let mut rep = ViolationReport::default();
    for (k, op) in m.ops() {
        if op.degree != 2 - k as i64 {
            rep.malformed.push(format!("module op m_{} has degree {}, expected {}", k, op.degree, 2 - k as i64));
        }
    }
    if !rep.malformed.is_empty() {
        return rep;
    }
    let kk = m.effective_k();
    let n_max = n_max.unwrap_or(2 * kk - 1);
    let a = &m.algebra;
    let apowers: Vec<TensorSpace> =
        (0..=n_max).map(|j| TensorSpace::power(&a.carrier, j)).collect();
    let sources: Vec<TensorSpace> = (1..=n_max + 1).map(|j| m.op_source(j)).collect();
    let msrc = |j: usize| -> &TensorSpace { &sources[j - 1] };
    let mts = TensorSpace::power(&m.carrier, 1);
    let neg1 = Scalar::from_i64(m.carrier.field, -1);
    for n in 1..=n_max {
        let ts_n = msrc(n);
        if ts_n.space.is_zero() {
            continue;
        }
        let mut residual = GradedMap::zero(&ts_n.space, &m.carrier, 3 - n as i64);
        // algebra operation inside, away from the module slot (r ≥ 1)
        for q in 1..=n.min(a.k_max) {
            let Some(mq) = a.op(q) else { continue };
            for p in 0..n - q {
                let r = n - q - p;
                let outer = p + 1 + r;
                let Some(mo) = m.op(outer) else { continue };
                let step = interleave_in(ts_n, msrc(outer), p, mq, &apowers[q], &apowers[1], true);
                let mut term = mo.compose(&step);
                if (p + q * r) % 2 == 1 {
                    term = term.scale(&neg1);
                }
                residual = residual.add(&term);
            }
        }
        // module action inside, on the trailing segment
        for b in 1..=n.min(m.k_max) {
            let aa = n - b;
            let Some(mb) = m.op(b) else { continue };
            let Some(mo) = m.op(aa + 1) else { continue };
            let step = interleave_in(ts_n, msrc(aa + 1), aa, mb, msrc(b), &mts, true);
            let mut term = mo.compose(&step);
            if aa % 2 == 1 {
                term = term.scale(&neg1);
            }
            residual = residual.add(&term);
        }
        rep.record_residual("module", n, &residual, ts_n);
    }
    rep
}

/// A as a left module over itself: m^M_k = m_k.
pub fn module_over_self(a: &AInftyAlgebra) -> AInftyModule {
    let mut m = AInftyModule::new(a.clone(), a.carrier.clone(), a.k_max);
    for (k, op) in a.ops() {
        m.set_op(k, op.clone()).expect("self module shapes");
    }
    m
}

/// Free module on W: carrier A⊗W with (ÛW)_l = ⊕_{x+y=l} A_x⊗W_y and the
/// action induced by m_k⊗1_W through reassociation.
pub fn induce_free_module(a: &AInftyAlgebra, w: &GradedSpace) -> AInftyModule {
    let tsaw = TensorSpace::new(vec![a.carrier.clone(), w.clone()]).expect("A⊗W");
    let mut m = AInftyModule::new(a.clone(), tsaw.space.clone(), a.k_max);
    for (k, mk) in a.ops() {
        // A^{⊗k−1}⊗(A⊗W) → A^{⊗k}⊗W → A⊗W
        let pa1 = TensorSpace::power(&a.carrier, 1);
        let mut groups: Vec<&TensorSpace> = vec![&pa1; k - 1];
        groups.push(&tsaw);
        let (flat, _grouped, _to_grouped, to_flat) = regroup(&groups);
        // m_k⊗1_W on the flat space
        let pak = TensorSpace::power(&a.carrier, k);
        let step = interleave_in(&flat, &tsaw, 0, mk, &pak, &pa1, true);
        m.set_op(k, step.compose(&to_flat)).expect("free module shapes");
    }
    m
}

/// Direct sum of modules over the same algebra, with the canonical inclusions
/// of the summands into the sum carrier (first summand's coordinates first).
pub struct ModuleSum {
    pub module: AInftyModule,
    pub incl: [GradedMap; 2],
    pub proj: [GradedMap; 2],
}

pub fn direct_sum_modules(m1: &AInftyModule, m2: &AInftyModule) -> ModuleSum {
    assert_eq!(m1.algebra.carrier, m2.algebra.carrier, "same algebra required");
    let field = m1.carrier.field;
    let carrier = GradedSpace::new(
        field,
        m1.carrier
            .degrees()
            .map(|d| (d, m1.carrier.dim(d)))
            .chain(m2.carrier.degrees().map(|d| (d, m2.carrier.dim(d)))),
    );
    let one = Scalar::one(field);
    let mut i1 = GradedMap::zero(&m1.carrier, &carrier, 0);
    let mut i2 = GradedMap::zero(&m2.carrier, &carrier, 0);
    let mut p1 = GradedMap::zero(&carrier, &m1.carrier, 0);
    let mut p2 = GradedMap::zero(&carrier, &m2.carrier, 0);
    for d in carrier.degrees().collect::<Vec<_>>() {
        let d1 = m1.carrier.dim(d);
        for j in 0..d1 {
            i1.add_entry(d, j, j, &one);
            p1.add_entry(d, j, j, &one);
        }
        for j in 0..m2.carrier.dim(d) {
            i2.add_entry(d, j, d1 + j, &one);
            p2.add_entry(d, d1 + j, j, &one);
        }
    }
    let k_max = m1.k_max.max(m2.k_max);
    let mut m = AInftyModule::new(m1.algebra.clone(), carrier.clone(), k_max);
    for k in 1..=k_max {
        let src = m.op_source(k);
        let mut op = GradedMap::zero(&src.space, &carrier, 2 - k as i64);
        let mut any = false;
        for (mm, inc, prj) in [(m1, &i1, &p1), (m2, &i2, &p2)] {
            let Some(opk) = mm.op(k) else { continue };
            let msrc = mm.op_source(k);
            let mcar = TensorSpace::power(&mm.carrier, 1);
            let sum_car = TensorSpace::power(&carrier, 1);
            let step = interleave_in(&src, &msrc, k - 1, prj, &sum_car, &mcar, true);
            op = op.add(&inc.compose(&opk.compose(&step)));
            any = true;
        }
        if any {
            m.set_op(k, op).expect("sum module shapes");
        }
    }
    ModuleSum { module: m, incl: [i1, i2], proj: [p1, p2] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{self, Strategy};
    use crate::scalar::Field;

    #[test]
    fn module_over_self_passes() {
        for seed in 0..6u64 {
            for strat in [Strategy::Dga, Strategy::CompositionFree, Strategy::A2p] {
                let a = generate::generate_algebra(strat, Field::Rational, seed).unwrap();
                let m = module_over_self(&a);
                assert!(check_module(&m, None).passed(), "{:?} seed {}", strat, seed);
            }
        }
    }

    #[test]
    fn free_module_passes_and_unit_case() {
        let mut r = generate::rng(7);
        let a = generate::dga_algebra(Field::Rational, 1, 3, true, &mut r);
        let w = GradedSpace::new(Field::Rational, [(0, 1), (2, 2)]);
        let fm = induce_free_module(&a, &w);
        assert!(check_module(&fm, None).passed());
        // Û(K in degree 0) is A as a module over itself
        let k = GradedSpace::unit(Field::Rational);
        let fk = induce_free_module(&a, &k);
        assert_eq!(fk.carrier, a.carrier);
        let selfm = module_over_self(&a);
        for kk in 1..=a.k_max {
            match (fk.op(kk), selfm.op(kk)) {
                (None, None) => {}
                (Some(x), Some(y)) => assert!(x.sub(y).is_zero()),
                _ => panic!("op mismatch"),
            }
        }
    }

    #[test]
    fn broken_module_detected() {
        // scale one action block: intertwining with the identity breaks
        let mut r = generate::rng(3);
        let a = generate::dga_algebra(Field::Rational, 1, 3, false, &mut r);
        let mut m = module_over_self(&a);
        let two = Scalar::from_i64(Field::Rational, 2);
        let bad = m.op(2).unwrap().scale(&two);
        m.set_op(2, bad).unwrap();
        let rep = check_module(&m, None);
        assert!(!rep.passed());
        assert!(rep.violations.iter().all(|v| v.identity == "module"));
    }

    #[test]
    fn direct_sum_passes() {
        let mut r = generate::rng(11);
        let a = generate::dga_algebra(Field::Rational, 1, 2, false, &mut r);
        let m1 = module_over_self(&a);
        let w = GradedSpace::new(Field::Rational, [(0, 2)]);
        let m2 = induce_free_module(&a, &w);
        let sum = direct_sum_modules(&m1, &m2);
        assert!(check_module(&sum.module, None).passed());
        assert_eq!(
            sum.module.carrier.total_dim(),
            m1.carrier.total_dim() + m2.carrier.total_dim()
        );
    }
}
