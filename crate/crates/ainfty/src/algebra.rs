//! A∞-algebras and A∞-coalgebras as truncated structure-constant families,
//! with complete identity checkers, morphism checking, the graded-dual
//! functor, and the w′ twist used by the contramodule layer.
//!
//! Truncation: with all operations of arity > K_max declared zero, every term
//! of the defining identity at arity n > 2·K_max−1 contains a factor of arity
//! > K_max, so checking n ≤ 2·K_max−1 is complete.

use crate::graded::{GradedMap, GradedSpace};
use crate::report::ViolationReport;
use crate::scalar::Scalar;
use crate::tensor::{interleave_in, tensor_many, TensorSpace};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct AInftyAlgebra {
    pub carrier: GradedSpace,
    pub k_max: usize,
    ops: BTreeMap<usize, GradedMap>,
}

#[derive(Clone, Debug)]
pub struct AInftyCoalgebra {
    pub carrier: GradedSpace,
    pub k_max: usize,
    ops: BTreeMap<usize, GradedMap>,
}

/// Sign of evaluating a tensor of homogeneous functionals on a tensor of
/// elements slotwise: (−1)^{Σ_{i<j} |φ_j||c_i|} with |φ_i| ≡ |c_i| ≡ d_i.
pub fn pair_sign(degrees: &[i64]) -> bool {
    let mut parity = 0i64;
    for i in 0..degrees.len() {
        for j in i + 1..degrees.len() {
            parity += degrees[i] * degrees[j];
        }
    }
    parity.rem_euclid(2) == 1
}

impl AInftyAlgebra {
    pub fn new(carrier: GradedSpace, k_max: usize) -> AInftyAlgebra {
        assert!(k_max >= 1);
        AInftyAlgebra { carrier, k_max, ops: BTreeMap::new() }
    }

    /// Install m_k: A^{⊗k} → A. Shape is enforced; the degree is data and is
    /// validated by the checker (wrong degrees are reported as malformations).
    pub fn set_op(&mut self, k: usize, m: GradedMap) -> Result<(), crate::Error> {
        if k == 0 || k > self.k_max {
            return Err(crate::Error::Shape(format!("arity {} out of range 1..={}", k, self.k_max)));
        }
        let src = TensorSpace::power(&self.carrier, k).space;
        if m.source != src || m.target != self.carrier {
            return Err(crate::Error::Shape(format!("m_{} endpoint mismatch", k)));
        }
        if !m.is_zero() {
            self.ops.insert(k, m);
        }
        self
            .ops
            .retain(|_, v| !v.is_zero());
        Ok(())
    }

    pub fn op(&self, k: usize) -> Option<&GradedMap> {
        self.ops.get(&k)
    }

    pub fn ops(&self) -> impl Iterator<Item = (usize, &GradedMap)> {
        self.ops.iter().map(|(&k, m)| (k, m))
    }

    pub fn is_even(&self) -> bool {
        self.ops.iter().all(|(&k, m)| k % 2 == 0 || m.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.ops.is_empty()
    }
}

impl AInftyCoalgebra {
    pub fn new(carrier: GradedSpace, k_max: usize) -> AInftyCoalgebra {
        assert!(k_max >= 1);
        AInftyCoalgebra { carrier, k_max, ops: BTreeMap::new() }
    }

    /// Install w_k: C → C^{⊗k}.
    pub fn set_op(&mut self, k: usize, w: GradedMap) -> Result<(), crate::Error> {
        if k == 0 || k > self.k_max {
            return Err(crate::Error::Shape(format!("arity {} out of range 1..={}", k, self.k_max)));
        }
        let tgt = TensorSpace::power(&self.carrier, k).space;
        if w.source != self.carrier || w.target != tgt {
            return Err(crate::Error::Shape(format!("w_{} endpoint mismatch", k)));
        }
        if !w.is_zero() {
            self.ops.insert(k, w);
        }
        self.ops.retain(|_, v| !v.is_zero());
        Ok(())
    }

    pub fn op(&self, k: usize) -> Option<&GradedMap> {
        self.ops.get(&k)
    }

    pub fn ops(&self) -> impl Iterator<Item = (usize, &GradedMap)> {
        self.ops.iter().map(|(&k, m)| (k, m))
    }

    pub fn is_even(&self) -> bool {
        self.ops.iter().all(|(&k, m)| k % 2 == 0 || m.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.ops.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct AInftyAlgebraMorphism {
    pub source: AInftyAlgebra,
    pub target: AInftyAlgebra,
    /// f_k: A^{⊗k} → B of degree 1−k.
    pub comps: BTreeMap<usize, GradedMap>,
    pub k_max: usize,
}

impl AInftyAlgebraMorphism {
    pub fn new(source: AInftyAlgebra, target: AInftyAlgebra) -> AInftyAlgebraMorphism {
        let k_max = source.k_max.max(target.k_max);
        AInftyAlgebraMorphism { source, target, comps: BTreeMap::new(), k_max }
    }

    pub fn set_comp(&mut self, k: usize, f: GradedMap) -> Result<(), crate::Error> {
        if k == 0 || k > self.k_max {
            return Err(crate::Error::Shape(format!("arity {} out of range", k)));
        }
        let src = TensorSpace::power(&self.source.carrier, k).space;
        if f.source != src || f.target != self.target.carrier {
            return Err(crate::Error::Shape(format!("f_{} endpoint mismatch", k)));
        }
        if !f.is_zero() {
            self.comps.insert(k, f);
        }
        Ok(())
    }

    pub fn comp(&self, k: usize) -> Option<&GradedMap> {
        self.comps.get(&k)
    }
}

fn sign_scalar(space: &GradedSpace, neg: bool) -> Scalar {
    Scalar::from_i64(space.field, if neg { -1 } else { 1 })
}

/// All ordered compositions n = i₁+…+i_t with 1 ≤ i_j ≤ max_part.
pub fn compositions(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n.min(max_part) {
        for rest in compositions(n - first, max_part) {
            let mut c = vec![first];
            c.extend(rest);
            out.push(c);
        }
    }
    out
}

/// Stasheff identity checker: Σ(−1)^{p+qr} m_{p+1+r}(1^{⊗p}⊗m_q⊗1^{⊗r}) = 0
/// for every n ≤ n_max (default 2·K_max−1), evaluated with Koszul signs.
pub fn check_algebra(a: &AInftyAlgebra, n_max: Option<usize>) -> ViolationReport {
    let mut rep = ViolationReport::default();
    for (k, m) in a.ops() {
        if m.degree != 2 - k as i64 {
            rep.malformed.push(format!("m_{} has degree {}, expected {}", k, m.degree, 2 - k as i64));
        }
    }
    if !rep.malformed.is_empty() {
        return rep;
    }
    let n_max = n_max.unwrap_or(2 * a.k_max - 1);
    let powers: Vec<TensorSpace> = (0..=n_max).map(|k| TensorSpace::power(&a.carrier, k)).collect();
    for n in 1..=n_max {
        let ts_n = &powers[n];
        if ts_n.space.is_zero() {
            continue;
        }
        let mut residual = GradedMap::zero(&ts_n.space, &a.carrier, 3 - n as i64);
        let mut any = false;
        for q in 1..=n.min(a.k_max) {
            let Some(mq) = a.op(q) else { continue };
            for p in 0..=n - q {
                let r = n - q - p;
                let outer = p + 1 + r;
                if outer > a.k_max {
                    continue;
                }
                let Some(mo) = a.op(outer) else { continue };
                let step = interleave_in(ts_n, &powers[outer], p, mq, &powers[q], &powers[1], true);
                let term = mo.compose(&step);
                let neg = (p + q * r) % 2 == 1;
                residual = residual.add(&term.scale(&sign_scalar(&a.carrier, neg)));
                any = true;
            }
        }
        if any {
            rep.record_residual("stasheff", n, &residual, ts_n);
        }
    }
    rep
}

/// Coalgebra identity: Σ(−1)^{pq+r} (1^{⊗p}⊗w_q⊗1^{⊗r}) w_{p+1+r} = 0.
pub fn check_coalgebra(c: &AInftyCoalgebra, n_max: Option<usize>) -> ViolationReport {
    let mut rep = ViolationReport::default();
    for (k, w) in c.ops() {
        if w.degree != 2 - k as i64 {
            rep.malformed.push(format!("w_{} has degree {}, expected {}", k, w.degree, 2 - k as i64));
        }
    }
    if !rep.malformed.is_empty() {
        return rep;
    }
    let n_max = n_max.unwrap_or(2 * c.k_max - 1);
    let powers: Vec<TensorSpace> = (0..=n_max).map(|k| TensorSpace::power(&c.carrier, k)).collect();
    for n in 1..=n_max {
        let ts_n = &powers[n];
        let mut residual = GradedMap::zero(&c.carrier, &ts_n.space, 3 - n as i64);
        let mut any = false;
        for q in 1..=n.min(c.k_max) {
            let Some(wq) = c.op(q) else { continue };
            for p in 0..=n - q {
                let r = n - q - p;
                let inner = p + 1 + r;
                if inner > c.k_max {
                    continue;
                }
                let Some(wi) = c.op(inner) else { continue };
                let step = interleave_in(&powers[inner], ts_n, p, wq, &powers[1], &powers[q], true);
                let term = step.compose(wi);
                let neg = (p * q + r) % 2 == 1;
                residual = residual.add(&term.scale(&sign_scalar(&c.carrier, neg)));
                any = true;
            }
        }
        if any {
            rep.record_residual("coalgebra", n, &residual, &powers[1]);
        }
    }
    rep
}

/// Morphism identity:
///   Σ(−1)^{p+qr} f_{p+1+r}(1^{⊗p}⊗m_q⊗1^{⊗r})
///     = Σ(−1)^s m_t(f_{i₁}⊗…⊗f_{i_t}),   s = Σ_j (t−j)(i_j−1).
pub fn check_aa_morphism(f: &AInftyAlgebraMorphism, n_max: Option<usize>) -> ViolationReport {
    let mut rep = ViolationReport::default();
    for (&k, c) in &f.comps {
        if c.degree != 1 - k as i64 {
            rep.malformed.push(format!("f_{} has degree {}, expected {}", k, c.degree, 1 - k as i64));
        }
    }
    if !rep.malformed.is_empty() {
        return rep;
    }
    let n_max = n_max.unwrap_or(2 * f.k_max - 1);
    let a = &f.source;
    let b = &f.target;
    let apowers: Vec<TensorSpace> =
        (0..=n_max).map(|k| TensorSpace::power(&a.carrier, k)).collect();
    let bpowers: Vec<TensorSpace> =
        (0..=n_max).map(|k| TensorSpace::power(&b.carrier, k)).collect();
    for n in 1..=n_max {
        let ts_n = &apowers[n];
        if ts_n.space.is_zero() {
            continue;
        }
        let mut residual = GradedMap::zero(&ts_n.space, &b.carrier, 2 - n as i64);
        for q in 1..=n.min(a.k_max) {
            let Some(mq) = a.op(q) else { continue };
            for p in 0..=n - q {
                let r = n - q - p;
                let outer = p + 1 + r;
                let Some(fo) = f.comp(outer) else { continue };
                let step = interleave_in(ts_n, &apowers[outer], p, mq, &apowers[q], &apowers[1], true);
                let term = fo.compose(&step);
                let neg = (p + q * r) % 2 == 1;
                residual = residual.add(&term.scale(&sign_scalar(&b.carrier, neg)));
            }
        }
        for comp in compositions(n, n) {
            let t = comp.len();
            if t > b.k_max {
                continue;
            }
            let Some(mt) = b.op(t) else { continue };
            let parts: Option<Vec<&GradedMap>> = comp.iter().map(|&i| f.comp(i)).collect();
            let Some(parts) = parts else { continue };
            let tuples: Vec<(&GradedMap, &TensorSpace, &TensorSpace)> = parts
                .iter()
                .zip(&comp)
                .map(|(g, &i)| (*g, &apowers[i], &bpowers[1]))
                .collect();
            let tens = tensor_many(&tuples, true);
            let term = mt.compose(&tens);
            let mut s = 0usize;
            for (j, &ij) in comp.iter().enumerate() {
                s += (t - 1 - j) * (ij - 1);
            }
            // right-hand side moves over with a minus sign
            let neg = s % 2 == 0;
            residual = residual.add(&term.scale(&sign_scalar(&b.carrier, neg)));
        }
        rep.record_residual("aa-morphism", n, &residual, ts_n);
    }
    rep
}

/// Graded dual C ↦ C*: m_k(φ₁⊗…⊗φ_k) = (−1)^{k(|φ₁|+…+|φ_k|+1)} μ∘(φ₁⊗…⊗φ_k)∘w_k,
/// the sign applied per homogeneous component, evaluation slotwise with the
/// pairing sign (−1)^{Σ_{i<j}|φ_j||c_i|}.
pub fn dualize_coalgebra(c: &AInftyCoalgebra) -> AInftyAlgebra {
    let dual = c.carrier.dual();
    let mut a = AInftyAlgebra::new(dual.clone(), c.k_max);
    let dual_powers_cache: BTreeMap<usize, TensorSpace> =
        (1..=c.k_max).map(|k| (k, TensorSpace::power(&dual, k))).collect();
    for (k, wk) in c.ops() {
        let dts = &dual_powers_cache[&k];
        let cts = TensorSpace::power(&c.carrier, k);
        let mut m = GradedMap::zero(&dts.space, &dual, 2 - k as i64);
        for s in wk.nonzero_degrees().collect::<Vec<_>>() {
            let block = wk.block(s);
            let out_basis = cts.basis_at(s + 2 - k as i64);
            for (row, oti) in out_basis.iter().enumerate() {
                for j in 0..block.cols {
                    let coeff = block.at(row, j);
                    if coeff.is_zero() {
                        continue;
                    }
                    // φ̄ dual to the output tuple; target functional dual to c_{s,j}
                    let phi = crate::tensor::TensorIndex {
                        degrees: oti.degrees.iter().map(|&d| -d).collect(),
                        indices: oti.indices.clone(),
                    };
                    let col = dts.position(&phi).expect("dual basis position");
                    let src_deg: i64 = phi.degrees.iter().sum();
                    let sum_n: i64 = oti.degrees.iter().sum();
                    let mut neg = pair_sign(&oti.degrees);
                    if (k as i64 * (sum_n + 1)).rem_euclid(2) == 1 {
                        neg = !neg;
                    }
                    let v = if neg { coeff.neg() } else { coeff.clone() };
                    m.add_entry(src_deg, col, j, &v);
                }
            }
        }
        a.set_op(k, m).expect("dualize shapes");
    }
    a
}

/// Inverse construction: algebra A on V yields the coalgebra on V* whose
/// graded dual is A again (finite-dimensional bijection on structure
/// constants; signs as in dualize_coalgebra, inverted).
pub fn undualize_algebra(a: &AInftyAlgebra) -> AInftyCoalgebra {
    let dual = a.carrier.dual();
    let mut c = AInftyCoalgebra::new(dual.clone(), a.k_max);
    for (k, mk) in a.ops() {
        let ats = TensorSpace::power(&a.carrier, k);
        let dts = TensorSpace::power(&dual, k);
        let mut w = GradedMap::zero(&dual, &dts.space, 2 - k as i64);
        for s in mk.nonzero_degrees().collect::<Vec<_>>() {
            // m_k block at tuple-degree s: columns = A-tuples, rows = A at s+2−k
            let block = mk.block(s);
            for (col, ati) in ats.basis_at(s).iter().enumerate() {
                for j in 0..block.rows {
                    let coeff = block.at(j, col);
                    if coeff.is_zero() {
                        continue;
                    }
                    // w_k on the functional dual to the output element produces
                    // the dual tuple, with the same sign factor as dualize.
                    let out_ti = crate::tensor::TensorIndex {
                        degrees: ati.degrees.iter().map(|&d| -d).collect(),
                        indices: ati.indices.clone(),
                    };
                    let row = dts.position(&out_ti).expect("undualize position");
                    // In dualize: m-entry = ± w-entry with the sign depending only
                    // on the C-side degree tuple; here C-side degrees are −(A-side).
                    let cdegs: Vec<i64> = ati.degrees.iter().map(|&d| -d).collect();
                    let sum_n: i64 = cdegs.iter().sum();
                    let mut neg = pair_sign(&cdegs);
                    if (k as i64 * (sum_n + 1)).rem_euclid(2) == 1 {
                        neg = !neg;
                    }
                    let src_deg = -(s + 2 - k as i64);
                    let v = if neg { coeff.neg() } else { coeff.clone() };
                    w.add_entry(src_deg, j, row, &v);
                }
            }
        }
        c.set_op(k, w).expect("undualize shapes");
    }
    c
}

/// The twisted cooperations w′_k(n̄) = (−1)^{k(Σn̄+1)} w_k(n̄). In block terms
/// the component at source degree s carries the sign (−1)^{k·s}.
pub fn twist_w_prime(c: &AInftyCoalgebra) -> BTreeMap<usize, GradedMap> {
    let mut out = BTreeMap::new();
    for (k, wk) in c.ops() {
        let mut w = GradedMap::zero(&wk.source, &wk.target, wk.degree);
        for s in wk.nonzero_degrees().collect::<Vec<_>>() {
            let b = wk.block(s);
            let neg = (k as i64 * s).rem_euclid(2) == 1;
            w.set_block(s, if neg { b.neg() } else { b });
        }
        out.insert(k, w);
    }
    out
}
