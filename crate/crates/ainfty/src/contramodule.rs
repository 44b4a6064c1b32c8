//! A∞-contramodules: carrier M with operations t_k: [C^{⊗k−1},M] → M of
//! degree 2−k, checked at the component level against the twisted
//! cooperations w′. The currying convention concatenates the outer hom's
//! arguments to the left of the inner ones, fixed here once and reused by the
//! contratensor machinery.

use crate::algebra::{pair_sign, twist_w_prime, AInftyCoalgebra};
use crate::graded::{GradedMap, GradedSpace};
use crate::homspace::{postcompose, precompose, HomSpace};
use crate::module::AInftyModule;
use crate::report::ViolationReport;
use crate::scalar::Scalar;
use crate::tensor::{interleave_in, TensorIndex, TensorSpace};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct AInftyContramodule {
    pub coalgebra: AInftyCoalgebra,
    pub carrier: GradedSpace,
    pub k_max: usize,
    ops: BTreeMap<usize, GradedMap>,
}

impl AInftyContramodule {
    pub fn new(coalgebra: AInftyCoalgebra, carrier: GradedSpace, k_max: usize) -> AInftyContramodule {
        assert!(k_max >= 1);
        AInftyContramodule { coalgebra, carrier, k_max, ops: BTreeMap::new() }
    }

    /// Hom space [C^{⊗k−1}, M] hosting the arity-k operation's source;
    /// [C^{⊗0}, M] is identified with M.
    pub fn op_source(&self, k: usize) -> HomSpace {
        let field = self.carrier.field;
        let src = if k == 1 {
            GradedSpace::unit(field)
        } else {
            TensorSpace::power(&self.coalgebra.carrier, k - 1).space
        };
        HomSpace::new(&src, &self.carrier)
    }

    pub fn set_op(&mut self, k: usize, t: GradedMap) -> Result<(), crate::Error> {
        if k == 0 || k > self.k_max {
            return Err(crate::Error::Shape(format!("arity {} out of range 1..={}", k, self.k_max)));
        }
        if t.source != self.op_source(k).space || t.target != self.carrier {
            return Err(crate::Error::Shape(format!("contramodule op t_{} endpoint mismatch", k)));
        }
        if !t.is_zero() {
            self.ops.insert(k, t);
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

/// The coordinate bijection [C^{⊗a+b}, M] ≅ [C^{⊗a}, [C^{⊗b}, M]] that peels
/// the first a arguments into the outer hom (a, b ≥ 1). Returns
/// (flat→nested, nested→flat); both are permutation matrices.
pub fn hom_curry_iso(
    c: &GradedSpace,
    a: usize,
    b: usize,
    m: &GradedSpace,
) -> (GradedMap, GradedMap) {
    assert!(a >= 1 && b >= 1);
    let ts_flat = TensorSpace::power(c, a + b);
    let ts_a = TensorSpace::power(c, a);
    let ts_b = TensorSpace::power(c, b);
    let hs_flat = HomSpace::new(&ts_flat.space, m);
    let hs_inner = HomSpace::new(&ts_b.space, m);
    let hs_outer = HomSpace::new(&ts_a.space, &hs_inner.space);
    let one = Scalar::one(m.field);
    let mut fwd = GradedMap::zero(&hs_flat.space, &hs_outer.space, 0);
    let mut bwd = GradedMap::zero(&hs_outer.space, &hs_flat.space, 0);
    for p in hs_flat.space.degrees().collect::<Vec<_>>() {
        for (col, &(d, i, j)) in hs_flat.basis_at(p).iter().enumerate() {
            let ti = &ts_flat.basis_at(d)[i];
            let left = TensorIndex {
                degrees: ti.degrees[..a].to_vec(),
                indices: ti.indices[..a].to_vec(),
            };
            let right = TensorIndex {
                degrees: ti.degrees[a..].to_vec(),
                indices: ti.indices[a..].to_vec(),
            };
            let du: i64 = left.degrees.iter().sum();
            let dv = d - du;
            let iu = ts_a.position(&left).expect("left split index");
            let iv = ts_b.position(&right).expect("right split index");
            let inner = (dv, iv, j);
            let r_in = hs_inner.position(du + p, &inner).expect("inner hom index");
            let outer = (du, iu, r_in);
            let row = hs_outer.position(p, &outer).expect("outer hom index");
            fwd.add_entry(p, col, row, &one);
            bwd.add_entry(p, row, col, &one);
        }
    }
    (fwd, bwd)
}

/// Contramodule identity checker, per arity n = p+q+r = a+b as maps
/// [C^{⊗n−1},M] → M:
///   Σ(−1)^{p+qr} t_{p+1+r}∘[1^{⊗p}⊗w′_q⊗1^{⊗r−1}, M]
///     + Σ(−1)^a t_{a+1}∘[C^{⊗a}, t_b] = 0,
/// with w′ the sign-twisted cooperations and the left-concatenating currying.
pub fn check_contramodule(cm: &AInftyContramodule, n_max: Option<usize>) -> ViolationReport {
    let mut rep = ViolationReport::default();
    for (k, op) in cm.ops() {
        if op.degree != 2 - k as i64 {
            rep.malformed.push(format!("contramodule op t_{} has degree {}, expected {}", k, op.degree, 2 - k as i64));
        }
    }
    if !rep.malformed.is_empty() {
        return rep;
    }
    let kk = cm.effective_k();
    let n_max = n_max.unwrap_or(2 * kk - 1);
    let c = &cm.coalgebra;
    let wp = twist_w_prime(c);
    let field = cm.carrier.field;
    let neg1 = Scalar::from_i64(field, -1);
    let cpow: Vec<TensorSpace> = (0..=n_max).map(|j| TensorSpace::power(&c.carrier, j)).collect();
    let homs: Vec<HomSpace> = (1..=n_max).map(|j| cm.op_source(j)).collect();
    let hs = |j: usize| -> &HomSpace { &homs[j - 1] };
    for n in 1..=n_max {
        let ts_wit = TensorSpace::power(&hs(n).space, 1);
        let mut residual = GradedMap::zero(&hs(n).space, &cm.carrier, 3 - n as i64);
        // twisted cooperation inside the hom argument
        for q in 1..=(n.saturating_sub(1)).min(c.k_max) {
            let Some(wq) = wp.get(&q) else { continue };
            for p in 0..n - q {
                let r = n - q - p;
                let outer = p + 1 + r;
                let Some(to) = cm.op(outer) else { continue };
                // 1^{⊗p}⊗w′_q⊗1^{⊗r−1}: C^{⊗p+r} → C^{⊗n−1}, component-level
                let g = interleave_in(&cpow[p + r], &cpow[n - 1], p, wq, &cpow[1], &cpow[q], false);
                let step = precompose(hs(n), &g, hs(outer));
                let mut term = to.compose(&step);
                if (p + q * r) % 2 == 1 {
                    term = term.scale(&neg1);
                }
                residual = residual.add(&term);
            }
        }
        // inner contramodule operation under the hom
        for b in 1..=n.min(cm.k_max) {
            let a = n - b;
            let (Some(tb), Some(to)) = (cm.op(b), cm.op(a + 1)) else { continue };
            let term = if a == 0 {
                // [C^{⊗0}, t_b] = t_b, and t_1 acts on M directly
                to.compose(tb)
            } else if b == 1 {
                // postcompose the degree-1 differential under the hom
                let step = postcompose(hs(n), tb, hs(n));
                to.compose(&step)
            } else {
                let (fwd, _bwd) = hom_curry_iso(&c.carrier, a, b - 1, &cm.carrier);
                let hs_inner = hs(b);
                let hs_outer = HomSpace::new(&cpow[a].space, &hs_inner.space);
                let hs_am = HomSpace::new(&cpow[a].space, &cm.carrier);
                let step = postcompose(&hs_outer, tb, &hs_am);
                to.compose(&step).compose(&fwd)
            };
            let term = if a % 2 == 1 { term.scale(&neg1) } else { term };
            residual = residual.add(&term);
        }
        rep.record_residual("contramodule", n, &residual, &ts_wit);
    }
    rep
}

/// Free contramodule on W: carrier [C,W] with t_k = [w′_k, W] through the
/// left-concatenating identification [C^{⊗k−1},[C,W]] ≅ [C^{⊗k},W].
pub fn induce_free_contramodule(c: &AInftyCoalgebra, w: &GradedSpace) -> AInftyContramodule {
    let hs_cw = HomSpace::new(&c.carrier, w);
    let mut cm = AInftyContramodule::new(c.clone(), hs_cw.space.clone(), c.k_max);
    let wp = twist_w_prime(c);
    for (k, wpk) in &wp {
        let k = *k;
        let op = if k == 1 {
            // [w′_1, W]: [C,W] → [C,W]
            precompose(&hs_cw, wpk, &hs_cw)
        } else {
            let (_fwd, bwd) = hom_curry_iso(&c.carrier, k - 1, 1, w);
            let ts_k = TensorSpace::power(&c.carrier, k);
            let hs_ckw = HomSpace::new(&ts_k.space, w);
            precompose(&hs_ckw, wpk, &hs_cw).compose(&bwd)
        };
        cm.set_op(k, op).expect("free contramodule shapes");
    }
    cm
}

/// κ^C: the C*-module underlying a contramodule, acting through the canonical
/// map (C*)^{⊗k−1}⊗M → [C^{⊗k−1},M] (an isomorphism in this bounded
/// finite-dimensional setting) followed by t_k.
pub fn contramodule_to_dual_module(cm: &AInftyContramodule) -> Result<AInftyModule, crate::Error> {
    let a = crate::algebra::dualize_coalgebra(&cm.coalgebra);
    let mut m = AInftyModule::new(a, cm.carrier.clone(), cm.k_max);
    let c = &cm.coalgebra.carrier;
    for (k, tk) in cm.ops() {
        if k == 1 {
            m.set_op(1, tk.clone())?;
            continue;
        }
        let src = m.op_source(k);
        let ts_c = TensorSpace::power(c, k - 1);
        let hs = cm.op_source(k);
        let mut op = GradedMap::zero(&src.space, &cm.carrier, 2 - k as i64);
        for d in src.space.degrees().collect::<Vec<_>>() {
            for (col, ti) in src.basis_at(d).iter().enumerate() {
                let phis = &ti.degrees[..k - 1];
                let l = ti.degrees[k - 1];
                let j = ti.indices[k - 1];
                let sigma: i64 = phis.iter().sum();
                // the matching argument tuple in C^{⊗k−1}
                let cdegs: Vec<i64> = phis.iter().map(|&x| -x).collect();
                let arg = TensorIndex { degrees: cdegs, indices: ti.indices[..k - 1].to_vec() };
                let Some(ci) = ts_c.position(&arg) else { continue };
                let he = (-sigma, ci, j);
                let Some(hrow) = hs.position(l + sigma, &he) else { continue };
                let mut e = if pair_sign(phis) { 1i64 } else { 0 };
                e += l * sigma;
                e += (k as i64) * (sigma + 1);
                let neg = e.rem_euclid(2) == 1;
                // image under t_k of the matrix unit carried by this tensor factor
                let b = match tk.block_ref(l + sigma) {
                    Some(b) => b,
                    None => continue,
                };
                for out_i in 0..b.rows {
                    let cval = b.at(out_i, hrow);
                    if cval.is_zero() {
                        continue;
                    }
                    let v = if neg { cval.neg() } else { cval.clone() };
                    op.add_entry(d, col, out_i, &v);
                }
            }
        }
        m.set_op(k, op)?;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::module::check_module;
    use crate::scalar::Field;

    #[test]
    fn cochain_complex_over_zero_coalgebra() {
        let field = Field::Rational;
        let c = AInftyCoalgebra::new(GradedSpace::zero(field), 1);
        // M: K in degrees 0 and 1, t_1 = the isomorphism — t_1² = 0 holds
        // trivially only if the composite vanishes; build both cases
        let car = GradedSpace::new(field, [(0, 1), (1, 1), (2, 1)]);
        let mut good = AInftyContramodule::new(c.clone(), car.clone(), 2);
        let mut d1 = GradedMap::zero(&car, &car, 1);
        d1.add_entry(0, 0, 0, &Scalar::one(field)); // 0 → 1, then nothing
        good.set_op(1, d1).unwrap();
        assert!(check_contramodule(&good, None).passed());

        let mut bad = AInftyContramodule::new(c, car.clone(), 2);
        let mut d = GradedMap::zero(&car, &car, 1);
        d.add_entry(0, 0, 0, &Scalar::one(field));
        d.add_entry(1, 0, 0, &Scalar::one(field)); // d² ≠ 0
        bad.set_op(1, d).unwrap();
        let rep = check_contramodule(&bad, None);
        assert!(!rep.passed());
        assert_eq!(rep.violations[0].arity, 1);
    }

    #[test]
    fn free_contramodule_passes() {
        for seed in 0..4u64 {
            for strat in [
                generate::Strategy::Dga,
                generate::Strategy::CompositionFree,
                generate::Strategy::A2p,
            ] {
                let c = generate::generate_coalgebra(strat, Field::Rational, seed).unwrap();
                let w = GradedSpace::new(Field::Rational, [(0, 1), (1, 1)]);
                let f = induce_free_contramodule(&c, &w);
                assert!(
                    check_contramodule(&f, None).passed(),
                    "{:?} seed {}",
                    strat,
                    seed
                );
            }
        }
        // perturbed coalgebras exercise mixed-arity composites
        for seed in 0..20u64 {
            let Ok(c) = generate::perturb_coalgebra(5, 4000, seed) else { continue };
            let w = GradedSpace::new(Field::Prime(5), [(0, 1), (2, 1)]);
            let f = induce_free_contramodule(&c, &w);
            assert!(check_contramodule(&f, None).passed(), "seed {}", seed);
        }
    }

    #[test]
    fn free_on_unit_mirrors_precomposition() {
        // [C,K] for a w_2-only coalgebra: t_2 is precomposition by ±w_2
        let mut r = generate::rng(8);
        let c = generate::dga_coalgebra(Field::Rational, 2, 2, false, &mut r);
        let k = GradedSpace::unit(Field::Rational);
        let f = induce_free_contramodule(&c, &k);
        assert!(check_contramodule(&f, None).passed());
        assert!(f.op(2).is_some());
        assert!(f.op(1).is_none());
    }

    #[test]
    fn broken_contramodule_detected() {
        let mut r = generate::rng(12);
        let c = generate::dga_coalgebra(Field::Rational, 1, 3, true, &mut r);
        let w = GradedSpace::new(Field::Rational, [(0, 2)]);
        let mut f = induce_free_contramodule(&c, &w);
        let two = Scalar::from_i64(Field::Rational, 2);
        let bad = f.op(2).unwrap().scale(&two);
        f.set_op(2, bad).unwrap();
        assert!(!check_contramodule(&f, None).passed());
    }

    #[test]
    fn dual_module_of_contramodule_passes() {
        for seed in 0..4u64 {
            let c = generate::generate_coalgebra(generate::Strategy::Dga, Field::Rational, seed)
                .unwrap();
            let w = GradedSpace::new(Field::Rational, [(0, 1), (1, 1)]);
            let f = induce_free_contramodule(&c, &w);
            let m = contramodule_to_dual_module(&f).unwrap();
            assert!(check_module(&m, None).passed(), "seed {}", seed);
        }
        for seed in 0..20u64 {
            let Ok(c) = generate::perturb_coalgebra(5, 4000, seed) else { continue };
            let w = GradedSpace::new(Field::Prime(5), [(0, 1), (1, 1)]);
            let f = induce_free_contramodule(&c, &w);
            let m = contramodule_to_dual_module(&f).unwrap();
            assert!(check_module(&m, None).passed(), "seed {}", seed);
        }
    }
}
