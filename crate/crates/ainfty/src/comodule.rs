//! A∞-comodules: carrier P with coactions w^P_k of degree 2−k
//! (left: P → C^{⊗k−1}⊗P, right: P → P⊗C^{⊗k−1}), the identity checker for
//! both sides, the dual left C*-module of a right comodule, and the
//! local-finiteness predicate.

use crate::algebra::{pair_sign, AInftyCoalgebra};
use crate::graded::GradedMap;
use crate::module::AInftyModule;
use crate::report::ViolationReport;
use crate::scalar::Scalar;
use crate::tensor::{interleave_in, TensorSpace};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct AInftyComodule {
    pub coalgebra: AInftyCoalgebra,
    pub carrier: crate::graded::GradedSpace,
    pub side: Side,
    pub k_max: usize,
    ops: BTreeMap<usize, GradedMap>,
    /// Symbolic marker for ingested data claiming an infinite nonzero family
    /// of components; finite structure-constant data never sets it.
    pub unbounded_marker: Option<String>,
}

impl AInftyComodule {
    pub fn new(
        coalgebra: AInftyCoalgebra,
        carrier: crate::graded::GradedSpace,
        side: Side,
        k_max: usize,
    ) -> AInftyComodule {
        assert!(k_max >= 1);
        AInftyComodule { coalgebra, carrier, side, k_max, ops: BTreeMap::new(), unbounded_marker: None }
    }

    /// Tensor space hosting the arity-k coaction's target.
    pub fn op_target(&self, k: usize) -> TensorSpace {
        let c = &self.coalgebra.carrier;
        let mut f = match self.side {
            Side::Left => vec![c.clone(); k - 1],
            Side::Right => vec![self.carrier.clone()],
        };
        match self.side {
            Side::Left => f.push(self.carrier.clone()),
            Side::Right => f.extend(vec![c.clone(); k - 1]),
        }
        TensorSpace::new(f).expect("comodule op target")
    }

    pub fn set_op(&mut self, k: usize, w: GradedMap) -> Result<(), crate::Error> {
        if k == 0 || k > self.k_max {
            return Err(crate::Error::Shape(format!("arity {} out of range 1..={}", k, self.k_max)));
        }
        if w.source != self.carrier || w.target != self.op_target(k).space {
            return Err(crate::Error::Shape(format!("comodule op w_{} endpoint mismatch", k)));
        }
        if !w.is_zero() {
            self.ops.insert(k, w);
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
        self.k_max.max(self.coalgebra.k_max)
    }
}

/// Comodule identity checker. Left side:
///   Σ(−1)^{pq+r}(1^{⊗p}⊗w_q⊗1^{⊗r−1}⊗1_P)w^P_{p+1+r}
///     + Σ(−1)^{ab}(1^{⊗a}⊗w^P_b)w^P_{a+1} = 0
/// over p+q+r = n (q,r ≥ 1) and a+b = n (b ≥ 1). Right side mirrors the
/// factor order:
///   Σ(−1)^{pq+r}(1_P⊗1^{⊗p−1}⊗w_q⊗1^{⊗r})w^P_{p+1+r}
///     + Σ(−1)^a(w^P_b⊗1^{⊗a})w^P_{a+1} = 0
/// over p+q+r = n (p,q ≥ 1) and a+b = n (b ≥ 1).
pub fn check_comodule(pm: &AInftyComodule, n_max: Option<usize>) -> ViolationReport {
    let mut rep = ViolationReport::default();
    for (k, op) in pm.ops() {
        if op.degree != 2 - k as i64 {
            rep.malformed.push(format!("comodule op w_{} has degree {}, expected {}", k, op.degree, 2 - k as i64));
        }
    }
    if !rep.malformed.is_empty() {
        return rep;
    }
    let kk = pm.effective_k();
    let n_max = n_max.unwrap_or(2 * kk - 1);
    let c = &pm.coalgebra;
    let cpowers: Vec<TensorSpace> =
        (0..=n_max).map(|j| TensorSpace::power(&c.carrier, j)).collect();
    let targets: Vec<TensorSpace> = (1..=n_max + 1).map(|j| pm.op_target(j)).collect();
    let tgt = |j: usize| -> &TensorSpace { &targets[j - 1] };
    let pts = TensorSpace::power(&pm.carrier, 1);
    let neg1 = Scalar::from_i64(pm.carrier.field, -1);
    for n in 1..=n_max {
        let ts_n = tgt(n);
        let mut residual = GradedMap::zero(&pm.carrier, &ts_n.space, 3 - n as i64);
        // coalgebra operation applied to one C-slot of a longer coaction
        for q in 1..=(n - 1).min(c.k_max) {
            let Some(wq) = c.op(q) else { continue };
            let (plo, phi) = match pm.side {
                Side::Left => (0usize, n - q - 1),  // r = n−q−p ≥ 1
                Side::Right => (1usize, n - q),     // r = n−q−p ≥ 0
            };
            for p in plo..=phi {
                let r = n - q - p;
                let inner_k = p + 1 + r;
                let Some(wi) = pm.op(inner_k) else { continue };
                let step = interleave_in(tgt(inner_k), ts_n, p, wq, &cpowers[1], &cpowers[q], true);
                let mut term = step.compose(wi);
                if (p * q + r) % 2 == 1 {
                    term = term.scale(&neg1);
                }
                residual = residual.add(&term);
            }
        }
        // second coaction applied to the P-slot of a shorter coaction
        for b in 1..=n.min(pm.k_max) {
            let aa = n - b;
            let Some(wb) = pm.op(b) else { continue };
            let Some(wi) = pm.op(aa + 1) else { continue };
            let p_pre = match pm.side {
                Side::Left => aa,
                Side::Right => 0,
            };
            let step = interleave_in(tgt(aa + 1), ts_n, p_pre, wb, &pts, tgt(b), true);
            let mut term = step.compose(wi);
            let e = match pm.side {
                Side::Left => aa * b,
                Side::Right => aa,
            };
            if e % 2 == 1 {
                term = term.scale(&neg1);
            }
            residual = residual.add(&term);
        }
        rep.record_residual("comodule", n, &residual, &pts);
    }
    rep
}

/// C as a comodule over itself on either side: w^P_k = w_k.
pub fn comodule_over_self(c: &AInftyCoalgebra, side: Side) -> AInftyComodule {
    let mut p = AInftyComodule::new(c.clone(), c.carrier.clone(), side, c.k_max);
    for (k, op) in c.ops() {
        p.set_op(k, op.clone()).expect("self comodule shapes");
    }
    p
}

/// The left C*-module underlying a right C-comodule: the action
/// (C*)^{⊗k−1}⊗M → (C*)^{⊗k−1}⊗M⊗C^{⊗k−1} → M coacts and then evaluates
/// each dual-basis factor against the matching coaction output factor,
/// with the Koszul signs of the index-preserving pairing.
pub fn comodule_to_dual_module(p: &AInftyComodule) -> Result<AInftyModule, crate::Error> {
    if p.side != Side::Right {
        return Err(crate::Error::Shape("dual module requires a right comodule".into()));
    }
    let a = crate::algebra::dualize_coalgebra(&p.coalgebra);
    let mut m = AInftyModule::new(a, p.carrier.clone(), p.k_max);
    for (k, wk) in p.ops() {
        let src = m.op_source(k);
        let wtgt = p.op_target(k);
        let mut op = GradedMap::zero(&src.space, &p.carrier, 2 - k as i64);
        for d in src.space.degrees().collect::<Vec<_>>() {
            for (col, ti) in src.basis_at(d).iter().enumerate() {
                let phis = &ti.degrees[..k - 1];
                let l = ti.degrees[k - 1];
                let block = match wk.block_ref(l) {
                    Some(b) => b,
                    None => continue,
                };
                let out_basis = wtgt.basis_at(l + 2 - k as i64);
                for (row, oti) in out_basis.iter().enumerate() {
                    let lam = block.at(row, ti.indices[k - 1]);
                    if lam.is_zero() {
                        continue;
                    }
                    // match φ_i against the i-th coaction output C-factor
                    let cs = &oti.degrees[1..];
                    if (0..k - 1).any(|i| cs[i] != -phis[i] || oti.indices[1 + i] != ti.indices[i])
                    {
                        continue;
                    }
                    let sigma: i64 = phis.iter().sum();
                    let mut e = if pair_sign(phis) { 1i64 } else { 0 };
                    e += l * sigma;
                    e += (k as i64) * (sigma + 1);
                    let v = if e.rem_euclid(2) == 1 { lam.neg() } else { lam.clone() };
                    debug_assert_eq!(oti.degrees[0], d + 2 - k as i64);
                    op.add_entry(d, col, oti.indices[0], &v);
                }
            }
        }
        m.set_op(k, op)?;
    }
    Ok(m)
}

/// Local finiteness of a comodule's component family: for finite
/// structure-constant data this is automatic; ingested data carrying an
/// explicit infinite-family marker is rejected.
pub fn local_finiteness_check(p: &AInftyComodule) -> bool {
    p.unbounded_marker.is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::module::check_module;
    use crate::scalar::Field;

    #[test]
    fn comodule_over_self_passes_both_sides() {
        for seed in 0..4u64 {
            for strat in [
                generate::Strategy::Dga,
                generate::Strategy::CompositionFree,
                generate::Strategy::A2p,
            ] {
                let c = generate::generate_coalgebra(strat, Field::Rational, seed).unwrap();
                for side in [Side::Left, Side::Right] {
                    let p = comodule_over_self(&c, side);
                    assert!(
                        check_comodule(&p, None).passed(),
                        "{:?} {:?} seed {}",
                        strat,
                        side,
                        seed
                    );
                }
            }
        }
    }

    #[test]
    fn broken_comodule_detected() {
        let mut r = generate::rng(5);
        let c = generate::dga_coalgebra(Field::Rational, 1, 3, false, &mut r);
        for side in [Side::Left, Side::Right] {
            let mut p = comodule_over_self(&c, side);
            let two = Scalar::from_i64(Field::Rational, 2);
            let bad = p.op(2).unwrap().scale(&two);
            p.set_op(2, bad).unwrap();
            assert!(!check_comodule(&p, None).passed(), "{:?}", side);
        }
    }

    #[test]
    fn dual_module_of_self_comodule_passes() {
        for seed in 0..4u64 {
            for strat in [
                generate::Strategy::Dga,
                generate::Strategy::CompositionFree,
                generate::Strategy::A2p,
            ] {
                let c = generate::generate_coalgebra(strat, Field::Rational, seed).unwrap();
                let p = comodule_over_self(&c, Side::Right);
                let m = comodule_to_dual_module(&p).unwrap();
                assert!(check_module(&m, None).passed(), "{:?} seed {}", strat, seed);
            }
        }
    }

    #[test]
    fn dual_module_of_perturbed_comodule_passes() {
        let mut n = 0;
        for seed in 0..30u64 {
            let Ok(c) = generate::perturb_coalgebra(5, 4000, seed) else { continue };
            let p = comodule_over_self(&c, Side::Right);
            assert!(check_comodule(&p, None).passed(), "seed {}", seed);
            let m = comodule_to_dual_module(&p).unwrap();
            assert!(check_module(&m, None).passed(), "seed {}", seed);
            n += 1;
        }
        assert!(n >= 5, "only {} perturbed instances generated", n);
    }

    #[test]
    fn local_finiteness() {
        let mut r = generate::rng(1);
        let c = generate::dga_coalgebra(Field::Prime(5), 2, 2, false, &mut r);
        let mut p = comodule_over_self(&c, Side::Left);
        assert!(local_finiteness_check(&p));
        p.unbounded_marker = Some("family rho_k(n,l) for all n >= 1".into());
        assert!(!local_finiteness_check(&p));
    }
}
