//! Graded tensor products with a canonical basis enumeration, interleaved
//! application of maps with Koszul signs, tensor products of several maps,
//! and reassociation isomorphisms between flat and grouped tensor spaces.

use crate::graded::{GradedMap, GradedSpace};
use crate::scalar::Scalar;
use std::collections::{BTreeMap, HashMap};

/// Basis element of a tensor product: one degree and one index per factor.
/// Canonical order: ascending lexicographic on degree tuples, then row-major
/// on index tuples.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TensorIndex {
    pub degrees: Vec<i64>,
    pub indices: Vec<usize>,
}

/// A tensor product that remembers its factors and basis enumeration.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub factors: Vec<GradedSpace>,
    pub space: GradedSpace,
    basis: BTreeMap<i64, Vec<TensorIndex>>,
    // starting offset of each degree tuple's row-major block, per total degree
    tuple_offset: BTreeMap<i64, HashMap<Vec<i64>, usize>>,
}

impl TensorSpace {
    pub fn new(factors: Vec<GradedSpace>) -> Result<TensorSpace, crate::Error> {
        let field = match factors.first() {
            Some(f) => f.field,
            None => crate::scalar::Field::Rational,
        };
        for f in &factors {
            if f.field != field {
                return Err(crate::Error::FieldMismatch);
            }
        }
        let mut basis: BTreeMap<i64, Vec<TensorIndex>> = BTreeMap::new();
        let mut tuple_offset: BTreeMap<i64, HashMap<Vec<i64>, usize>> = BTreeMap::new();
        // enumerate degree tuples in ascending lex order
        let mut tuples: Vec<Vec<i64>> = vec![vec![]];
        for f in &factors {
            let degs: Vec<i64> = f.degrees().collect();
            let mut next = Vec::new();
            for t in &tuples {
                for &d in &degs {
                    let mut t2 = t.clone();
                    t2.push(d);
                    next.push(t2);
                }
            }
            tuples = next;
        }
        tuples.sort();
        for t in tuples {
            let total: i64 = t.iter().sum();
            let dims: Vec<usize> =
                t.iter().enumerate().map(|(i, &d)| factors[i].dim(d)).collect();
            let count: usize = dims.iter().product();
            if count == 0 {
                continue;
            }
            let entry = basis.entry(total).or_default();
            tuple_offset.entry(total).or_default().insert(t.clone(), entry.len());
            // row-major: last index varies fastest
            let mut idx = vec![0usize; t.len()];
            loop {
                entry.push(TensorIndex { degrees: t.clone(), indices: idx.clone() });
                let mut pos = t.len();
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < dims[pos] {
                        break;
                    }
                    idx[pos] = 0;
                    if pos == 0 {
                        pos = usize::MAX;
                        break;
                    }
                }
                if pos == usize::MAX || t.is_empty() {
                    break;
                }
            }
        }
        let space = GradedSpace::new(field, basis.iter().map(|(&d, v)| (d, v.len())));
        Ok(TensorSpace { factors, space, basis, tuple_offset })
    }

    pub fn power(space: &GradedSpace, k: usize) -> TensorSpace {
        TensorSpace::new(vec![space.clone(); k]).expect("single-space power")
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn basis_at(&self, d: i64) -> &[TensorIndex] {
        self.basis.get(&d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Position of a basis element within its total-degree component.
    pub fn position(&self, ti: &TensorIndex) -> Option<usize> {
        let total: i64 = ti.degrees.iter().sum();
        let off = *self.tuple_offset.get(&total)?.get(&ti.degrees)?;
        let mut rank = 0usize;
        for (i, (&d, &ix)) in ti.degrees.iter().zip(&ti.indices).enumerate() {
            let dim = self.factors[i].dim(d);
            if ix >= dim {
                return None;
            }
            rank = rank * dim + ix;
        }
        Some(off + rank)
    }
}

/// Convenience: tensor product as a plain graded space.
pub fn tensor_space(factors: &[GradedSpace]) -> Result<GradedSpace, crate::Error> {
    Ok(TensorSpace::new(factors.to_vec())?.space)
}

/// 1^{⊗p} ⊗ g ⊗ 1^{⊗r} acting between flat tensor spaces whose factor lists
/// are pre ++ g_src.factors ++ post and pre ++ g_tgt.factors ++ post.
/// With `koszul`, a basis element a₁⊗…⊗a_p⊗x⊗… picks up
/// (−1)^{|g|·(|a₁|+…+|a_p|)}; component-level constructions pass false.
pub fn interleave(
    pre: &[GradedSpace],
    g: &GradedMap,
    g_src: &TensorSpace,
    g_tgt: &TensorSpace,
    post: &[GradedSpace],
    koszul: bool,
) -> GradedMap {
    assert_eq!(g.source, g_src.space, "interleave: g source mismatch");
    assert_eq!(g.target, g_tgt.space, "interleave: g target mismatch");
    let mut src_factors: Vec<GradedSpace> = pre.to_vec();
    src_factors.extend(g_src.factors.iter().cloned());
    src_factors.extend(post.iter().cloned());
    let mut tgt_factors: Vec<GradedSpace> = pre.to_vec();
    tgt_factors.extend(g_tgt.factors.iter().cloned());
    tgt_factors.extend(post.iter().cloned());
    let src_ts = TensorSpace::new(src_factors).expect("interleave source");
    let tgt_ts = TensorSpace::new(tgt_factors).expect("interleave target");
    interleave_in(&src_ts, &tgt_ts, pre.len(), g, g_src, g_tgt, koszul)
}

/// As [`interleave`], with caller-supplied ambient tensor spaces (cheaper when
/// the same ambient space hosts many terms of an identity).
pub fn interleave_in(
    src_ts: &TensorSpace,
    tgt_ts: &TensorSpace,
    p: usize,
    g: &GradedMap,
    g_src: &TensorSpace,
    g_tgt: &TensorSpace,
    koszul: bool,
) -> GradedMap {
    let gs = g_src.arity();
    let gt = g_tgt.arity();
    assert_eq!(src_ts.arity(), p + gs + (tgt_ts.arity() - p - gt), "interleave arity");
    let field = src_ts.space.field;
    let mut out = GradedMap::zero(&src_ts.space, &tgt_ts.space, g.degree);
    let g_odd = g.degree.rem_euclid(2) == 1;
    for d in src_ts.space.degrees() {
        for (col, ti) in src_ts.basis_at(d).iter().enumerate() {
            let mid_deg: i64 = ti.degrees[p..p + gs].iter().sum();
            let mid = TensorIndex {
                degrees: ti.degrees[p..p + gs].to_vec(),
                indices: ti.indices[p..p + gs].to_vec(),
            };
            let Some(mid_col) = g_src.position(&mid) else { continue };
            let block = match g.block_ref(mid_deg) {
                Some(b) => b,
                None => continue,
            };
            let sign_neg = koszul && g_odd && {
                let pre_deg: i64 = ti.degrees[..p].iter().sum();
                pre_deg.rem_euclid(2) == 1
            };
            let out_basis = g_tgt.basis_at(mid_deg + g.degree);
            for (row, oti) in out_basis.iter().enumerate() {
                let c = block.at(row, mid_col);
                if c.is_zero() {
                    continue;
                }
                let mut degrees = ti.degrees[..p].to_vec();
                degrees.extend(&oti.degrees);
                degrees.extend(&ti.degrees[p + gs..]);
                let mut indices = ti.indices[..p].to_vec();
                indices.extend(&oti.indices);
                indices.extend(&ti.indices[p + gs..]);
                let out_ti = TensorIndex { degrees, indices };
                let out_row = tgt_ts
                    .position(&out_ti)
                    .expect("interleave output index in range");
                let v = if sign_neg { c.neg() } else { c.clone() };
                out.add_entry(d, col, out_row, &v);
            }
        }
    }
    let _ = field;
    out
}

/// f₁ ⊗ … ⊗ f_t as (f₁⊗1…)∘…∘(1…⊗f_t): Koszul signs per the convention
/// (f⊗g)(x⊗y) = (−1)^{|g||x|} f(x)⊗g(y).
pub fn tensor_many(parts: &[(&GradedMap, &TensorSpace, &TensorSpace)], koszul: bool) -> GradedMap {
    assert!(!parts.is_empty());
    let mut acc: Option<GradedMap> = None;
    // apply rightmost first
    for j in (0..parts.len()).rev() {
        let (g, g_src, g_tgt) = parts[j];
        let mut pre: Vec<GradedSpace> = Vec::new();
        for (_, s, _) in &parts[..j] {
            pre.extend(s.factors.iter().cloned());
        }
        let mut post: Vec<GradedSpace> = Vec::new();
        for (_, _, t) in &parts[j + 1..] {
            post.extend(t.factors.iter().cloned());
        }
        let step = interleave(&pre, g, g_src, g_tgt, &post, koszul);
        acc = Some(match acc {
            None => step,
            Some(a) => step.compose(&a),
        });
    }
    acc.unwrap()
}

/// Reassociation between the flat tensor product of all group factors and the
/// tensor product of the groups' total spaces. Pure basis permutation.
pub fn regroup(groups: &[&TensorSpace]) -> (TensorSpace, TensorSpace, GradedMap, GradedMap) {
    let mut flat_factors = Vec::new();
    for g in groups {
        flat_factors.extend(g.factors.iter().cloned());
    }
    let flat = TensorSpace::new(flat_factors).expect("regroup flat");
    let grouped =
        TensorSpace::new(groups.iter().map(|g| g.space.clone()).collect()).expect("regroup grouped");
    let field = flat.space.field;
    let one = Scalar::one(field);
    let mut to_grouped = GradedMap::zero(&flat.space, &grouped.space, 0);
    let mut to_flat = GradedMap::zero(&grouped.space, &flat.space, 0);
    for d in flat.space.degrees() {
        for (col, ti) in flat.basis_at(d).iter().enumerate() {
            let mut gdegs = Vec::with_capacity(groups.len());
            let mut gidx = Vec::with_capacity(groups.len());
            let mut off = 0;
            for g in groups {
                let a = g.arity();
                let part = TensorIndex {
                    degrees: ti.degrees[off..off + a].to_vec(),
                    indices: ti.indices[off..off + a].to_vec(),
                };
                gdegs.push(part.degrees.iter().sum::<i64>());
                gidx.push(g.position(&part).expect("regroup inner position"));
                off += a;
            }
            let gti = TensorIndex { degrees: gdegs, indices: gidx };
            let row = grouped.position(&gti).expect("regroup outer position");
            to_grouped.add_entry(d, col, row, &one);
            to_flat.add_entry(d, row, col, &one);
        }
    }
    (flat, grouped, to_grouped, to_flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat;
    use crate::scalar::Field;

    fn s(n: i64) -> Scalar {
        Scalar::from_i64(Field::Rational, n)
    }

    #[test]
    fn dims_convolve() {
        let v = GradedSpace::new(Field::Rational, [(0, 1), (1, 1)]);
        let sq = TensorSpace::power(&v, 2).space;
        assert_eq!(sq.dim(0), 1);
        assert_eq!(sq.dim(1), 2);
        assert_eq!(sq.dim(2), 1);
        let w = GradedSpace::new(Field::Rational, [(1, 2)]);
        assert_eq!(TensorSpace::power(&w, 2).space.dim(2), 4);
        // empty product: ground field in degree 0
        let e = TensorSpace::new(vec![]).unwrap();
        assert_eq!(e.space.dim(0), 1);
        assert_eq!(e.basis_at(0).len(), 1);
    }

    #[test]
    fn basis_enumeration_deterministic() {
        let v = GradedSpace::new(Field::Rational, [(0, 2), (1, 1)]);
        let a = TensorSpace::power(&v, 2);
        let b = TensorSpace::power(&v, 2);
        for d in a.space.degrees() {
            assert_eq!(a.basis_at(d), b.basis_at(d));
            for (i, ti) in a.basis_at(d).iter().enumerate() {
                assert_eq!(a.position(ti), Some(i));
            }
        }
        // lex order on degrees at degree 1: (0,1) before (1,0)
        let b1 = a.basis_at(1);
        assert_eq!(b1[0].degrees, vec![0, 1]);
        assert!(b1.iter().position(|t| t.degrees == vec![1, 0]).unwrap() > 1);
    }

    fn rand_map(src: &GradedSpace, tgt: &GradedSpace, degree: i64, seed: u64) -> GradedMap {
        // small deterministic pseudo-random entries
        let mut st = seed.wrapping_mul(2654435761).wrapping_add(12345);
        let mut next = move || {
            st ^= st << 13;
            st ^= st >> 7;
            st ^= st << 17;
            (st % 5) as i64 - 2
        };
        let mut f = GradedMap::zero(src, tgt, degree);
        for d in src.degrees() {
            let rows = tgt.dim(d + degree);
            let cols = src.dim(d);
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut b = Mat::zero(src.field, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    b.set(i, j, s(next()));
                }
            }
            f.set_block(d, b);
        }
        f
    }

    #[test]
    fn koszul_bilinearity() {
        // (f⊗g)∘(f'⊗g') = (−1)^{|g||f'|}(f∘f')⊗(g∘g')
        let u = GradedSpace::new(Field::Rational, [(0, 1), (1, 2)]);
        let v = GradedSpace::new(Field::Rational, [(0, 2), (1, 1)]);
        for (df, dg, dfp, dgp) in [(1i64, 1i64, 1i64, 1i64), (0, 1, 1, 0), (1, 0, 1, 1), (2, 1, 1, 1)] {
            let fp = rand_map(&u, &v, dfp, 1);
            let gp = rand_map(&u, &v, dgp, 2);
            let f = rand_map(&v, &u, df, 3);
            let g = rand_map(&v, &u, dg, 4);
            let tu = TensorSpace::power(&u, 1);
            let tv = TensorSpace::power(&v, 1);
            let fg = tensor_many(&[(&f, &tv, &tu), (&g, &tv, &tu)], true);
            let fpgp = tensor_many(&[(&fp, &tu, &tv), (&gp, &tu, &tv)], true);
            let lhs = fg.compose(&fpgp);
            let ff = f.compose(&fp);
            let gg = g.compose(&gp);
            let mut rhs = tensor_many(&[(&ff, &tu, &tu), (&gg, &tu, &tu)], true);
            if (dg * dfp).rem_euclid(2) == 1 {
                rhs = rhs.neg();
            }
            assert!(lhs.sub(&rhs).is_zero(), "bilinearity failed at ({},{},{},{})", df, dg, dfp, dgp);
        }
    }

    #[test]
    fn interleave_commutation() {
        // (1⊗g)∘(f⊗1) = (−1)^{|f||g|}(f⊗1)∘(1⊗g)
        let u = GradedSpace::new(Field::Rational, [(0, 1), (1, 2)]);
        let f = rand_map(&u, &u, 1, 7);
        let g = rand_map(&u, &u, 1, 8);
        let tu = TensorSpace::power(&u, 1);
        let f1 = interleave(&[], &f, &tu, &tu, &[u.clone()], true);
        let g1 = interleave(&[u.clone()], &g, &tu, &tu, &[], true);
        let lhs = g1.compose(&f1);
        let rhs = f1.compose(&g1).neg(); // |f||g| = 1
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn regroup_roundtrip() {
        let u = GradedSpace::new(Field::Rational, [(0, 1), (2, 2)]);
        let v = GradedSpace::new(Field::Rational, [(1, 1), (3, 1)]);
        let tu = TensorSpace::power(&u, 2);
        let tv = TensorSpace::power(&v, 1);
        let (flat, grouped, fwd, bwd) = regroup(&[&tu, &tv]);
        assert_eq!(flat.space.total_dim(), grouped.space.total_dim());
        assert!(fwd.compose(&bwd).sub(&GradedMap::identity(&grouped.space)).is_zero());
        assert!(bwd.compose(&fwd).sub(&GradedMap::identity(&flat.space)).is_zero());
    }
}
