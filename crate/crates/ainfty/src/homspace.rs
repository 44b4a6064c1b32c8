//! Internal hom spaces [W′,W] with a matrix-unit basis, pre/post-composition
//! functoriality, evaluation, and sign-free currying (the chosen convention
//! moves no odd symbols past each other).

use crate::graded::{GradedMap, GradedSpace};
use crate::scalar::Scalar;
use crate::tensor::{TensorIndex, TensorSpace};
use std::collections::{BTreeMap, HashMap};

/// Basis element at hom-degree p: the matrix unit sending source basis vector
/// (n, i) to target basis vector (n+p, j), zero elsewhere.
pub type HomBasisElt = (i64, usize, usize);

#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub space: GradedSpace,
    basis: BTreeMap<i64, Vec<HomBasisElt>>,
    pos: BTreeMap<i64, HashMap<HomBasisElt, usize>>,
}

impl HomSpace {
    pub fn new(source: &GradedSpace, target: &GradedSpace) -> HomSpace {
        assert_eq!(source.field, target.field, "field mismatch");
        let mut basis: BTreeMap<i64, Vec<HomBasisElt>> = BTreeMap::new();
        for n in source.degrees() {
            for m in target.degrees() {
                let p = m - n;
                let entry = basis.entry(p).or_default();
                for i in 0..source.dim(n) {
                    for j in 0..target.dim(m) {
                        entry.push((n, i, j));
                    }
                }
            }
        }
        // enumeration: source degree ascending, then source index, then target index
        for v in basis.values_mut() {
            v.sort();
        }
        let mut pos = BTreeMap::new();
        for (&p, v) in &basis {
            let mut h = HashMap::new();
            for (k, &e) in v.iter().enumerate() {
                h.insert(e, k);
            }
            pos.insert(p, h);
        }
        let space = GradedSpace::new(source.field, basis.iter().map(|(&p, v)| (p, v.len())));
        HomSpace { source: source.clone(), target: target.clone(), space, basis, pos }
    }

    pub fn basis_at(&self, p: i64) -> &[HomBasisElt] {
        self.basis.get(&p).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn position(&self, p: i64, e: &HomBasisElt) -> Option<usize> {
        self.pos.get(&p)?.get(e).copied()
    }

    /// Realize coordinates at hom-degree p as an honest graded map.
    pub fn to_map(&self, p: i64, coords: &[Scalar]) -> GradedMap {
        let mut f = GradedMap::zero(&self.source, &self.target, p);
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (n, i, j) = self.basis_at(p)[k];
            f.add_entry(n, i, j, c);
        }
        f
    }

    /// Coordinates of a graded map source → target of degree p.
    pub fn from_map(&self, f: &GradedMap) -> Vec<Scalar> {
        assert_eq!(f.source, self.source);
        assert_eq!(f.target, self.target);
        let p = f.degree;
        self.basis_at(p)
            .iter()
            .map(|&(n, i, j)| f.entry(n, i, j))
            .collect()
    }
}

/// Precomposition [g, T]: [X,T] → [Y,T] for g: Y → X; φ ↦ φ∘g, no sign.
pub fn precompose(dom: &HomSpace, g: &GradedMap, cod: &HomSpace) -> GradedMap {
    assert_eq!(dom.source, g.target, "precompose: domain mismatch");
    assert_eq!(cod.source, g.source);
    assert_eq!(dom.target, cod.target);
    let mut out = GradedMap::zero(&dom.space, &cod.space, g.degree);
    for p in dom.space.degrees() {
        for (col, &(n, i, j)) in dom.basis_at(p).iter().enumerate() {
            // φ = E_{(n,i)→(n+p,j)}; (φ∘g)(y_a at n−|g|) = g-entry · e_j
            let src_deg = n - g.degree;
            let b = match g.block_ref(src_deg) {
                Some(b) => b,
                None => continue,
            };
            for a in 0..b.cols {
                let c = b.at(i, a);
                if c.is_zero() {
                    continue;
                }
                let e = (src_deg, a, j);
                if let Some(row) = cod.position(p + g.degree, &e) {
                    out.add_entry(p, col, row, c);
                }
            }
        }
    }
    out
}

/// Postcomposition [S, h]: [S,T] → [S,T′]; φ ↦ h∘φ, no sign.
pub fn postcompose(dom: &HomSpace, h: &GradedMap, cod: &HomSpace) -> GradedMap {
    assert_eq!(dom.target, h.source, "postcompose: domain mismatch");
    assert_eq!(cod.target, h.target);
    assert_eq!(dom.source, cod.source);
    let mut out = GradedMap::zero(&dom.space, &cod.space, h.degree);
    for p in dom.space.degrees() {
        for (col, &(n, i, j)) in dom.basis_at(p).iter().enumerate() {
            let b = match h.block_ref(n + p) {
                Some(b) => b,
                None => continue,
            };
            for bj in 0..b.rows {
                let c = b.at(bj, j);
                if c.is_zero() {
                    continue;
                }
                let e = (n, i, bj);
                if let Some(row) = cod.position(p + h.degree, &e) {
                    out.add_entry(p, col, row, c);
                }
            }
        }
    }
    out
}

/// Evaluation [S,T]⊗S → T, φ⊗x ↦ φ(x); pair_ts must be the tensor space with
/// factors [hs.space, hs.source]. No sign in the chosen convention.
pub fn eval_map(hs: &HomSpace, pair_ts: &TensorSpace) -> GradedMap {
    assert_eq!(pair_ts.arity(), 2);
    assert_eq!(pair_ts.factors[0], hs.space);
    assert_eq!(pair_ts.factors[1], hs.source);
    let mut out = GradedMap::zero(&pair_ts.space, &hs.target, 0);
    let field = hs.space.field;
    for d in pair_ts.space.degrees() {
        for (col, ti) in pair_ts.basis_at(d).iter().enumerate() {
            let (p, n) = (ti.degrees[0], ti.degrees[1]);
            let (hi, si) = (ti.indices[0], ti.indices[1]);
            let (bn, bi, bj) = hs.basis_at(p)[hi];
            if bn == n && bi == si {
                out.add_entry(d, col, bj, &Scalar::one(field));
            }
        }
    }
    out
}

/// Curry f: U⊗V → W (over the given tensor space with factors [U, V]) into
/// U → [V,W]; sign-free.
pub fn curry(f: &GradedMap, uv_ts: &TensorSpace, hs: &HomSpace) -> GradedMap {
    assert_eq!(uv_ts.arity(), 2);
    assert_eq!(f.source, uv_ts.space);
    assert_eq!(hs.source, uv_ts.factors[1]);
    assert_eq!(hs.target, f.target);
    let u = &uv_ts.factors[0];
    let v = &uv_ts.factors[1];
    let mut out = GradedMap::zero(u, &hs.space, f.degree);
    for ud in u.degrees() {
        for ui in 0..u.dim(ud) {
            for vd in v.degrees() {
                for vi in 0..v.dim(vd) {
                    let ti = TensorIndex { degrees: vec![ud, vd], indices: vec![ui, vi] };
                    let Some(pos) = uv_ts.position(&ti) else { continue };
                    let b = match f.block_ref(ud + vd) {
                        Some(b) => b,
                        None => continue,
                    };
                    for wj in 0..b.rows {
                        let c = b.at(wj, pos);
                        if c.is_zero() {
                            continue;
                        }
                        // φ_u sends (vd, vi) to (vd + ud + deg, wj): hom-degree ud + deg
                        let he = (vd, vi, wj);
                        let hp = ud + f.degree;
                        if let Some(row) = hs.position(hp, &he) {
                            out.add_entry(ud, ui, row, c);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Inverse of [`curry`].
pub fn uncurry(g: &GradedMap, uv_ts: &TensorSpace, hs: &HomSpace) -> GradedMap {
    assert_eq!(g.target, hs.space);
    assert_eq!(g.source, uv_ts.factors[0]);
    assert_eq!(hs.source, uv_ts.factors[1]);
    let u = &uv_ts.factors[0];
    let mut out = GradedMap::zero(&uv_ts.space, &hs.target, g.degree);
    for ud in u.degrees() {
        let b = match g.block_ref(ud) {
            Some(b) => b,
            None => continue,
        };
        let hp = ud + g.degree;
        for ui in 0..b.cols {
            for hrow in 0..b.rows {
                let c = b.at(hrow, ui);
                if c.is_zero() {
                    continue;
                }
                let (vd, vi, wj) = hs.basis_at(hp)[hrow];
                let ti = TensorIndex { degrees: vec![ud, vd], indices: vec![ui, vi] };
                if let Some(col) = uv_ts.position(&ti) {
                    out.add_entry(ud + vd, col, wj, c);
                }
            }
        }
    }
    out
}
