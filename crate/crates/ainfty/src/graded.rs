//! Bounded-support ℤ-graded vector spaces, homogeneous maps of fixed degree,
//! and exact per-degree subspace computations (kernel, image, cokernel,
//! preimage) — the substrate for every identity check.

use crate::matrix::Mat;
use crate::scalar::{Field, Scalar};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSpace {
    pub field: Field,
    dims: BTreeMap<i64, usize>, // no zero entries stored
}

impl GradedSpace {
    pub fn new(field: Field, dims: impl IntoIterator<Item = (i64, usize)>) -> GradedSpace {
        let mut m = BTreeMap::new();
        for (d, n) in dims {
            if n > 0 {
                *m.entry(d).or_insert(0) += n;
            }
        }
        GradedSpace { field, dims: m }
    }

    pub fn zero(field: Field) -> GradedSpace {
        GradedSpace { field, dims: BTreeMap::new() }
    }

    /// The ground field concentrated in degree 0.
    pub fn unit(field: Field) -> GradedSpace {
        GradedSpace::new(field, [(0, 1)])
    }

    pub fn dim(&self, d: i64) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        let lo = self.dims.keys().next()?;
        let hi = self.dims.keys().last()?;
        Some((*lo, *hi))
    }

    /// T inverts the grading: (TW)_k = W_{−k}.
    pub fn shift_t(&self) -> GradedSpace {
        GradedSpace::new(self.field, self.dims.iter().map(|(&d, &n)| (-d, n)))
    }

    /// (W*)_n = dim(W_{−n}); same dimension bookkeeping as T on objects.
    pub fn dual(&self) -> GradedSpace {
        self.shift_t()
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, n)) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {}", d, n)?;
        }
        write!(f, "}}")
    }
}

/// Homogeneous map of fixed degree; block at source degree n has shape
/// dim(target_{n+d}) × dim(source_n). Absent blocks are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMap {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub degree: i64,
    blocks: BTreeMap<i64, Mat>,
}

impl GradedMap {
    pub fn zero(source: &GradedSpace, target: &GradedSpace, degree: i64) -> GradedMap {
        assert_eq!(source.field, target.field, "field mismatch");
        GradedMap { source: source.clone(), target: target.clone(), degree, blocks: BTreeMap::new() }
    }

    pub fn identity(space: &GradedSpace) -> GradedMap {
        let mut m = GradedMap::zero(space, space, 0);
        for d in space.degrees() {
            m.blocks.insert(d, Mat::identity(space.field, space.dim(d)));
        }
        m
    }

    pub fn field(&self) -> Field {
        self.source.field
    }

    pub fn block(&self, n: i64) -> Mat {
        self.blocks.get(&n).cloned().unwrap_or_else(|| {
            Mat::zero(self.field(), self.target.dim(n + self.degree), self.source.dim(n))
        })
    }

    pub fn block_ref(&self, n: i64) -> Option<&Mat> {
        self.blocks.get(&n)
    }

    pub fn set_block(&mut self, n: i64, m: Mat) {
        assert_eq!(m.rows, self.target.dim(n + self.degree), "block row mismatch at {}", n);
        assert_eq!(m.cols, self.source.dim(n), "block col mismatch at {}", n);
        if m.is_zero() {
            self.blocks.remove(&n);
        } else {
            self.blocks.insert(n, m);
        }
    }

    /// Add `c` to the (tgt_idx, src_idx) entry of the block at source degree n.
    pub fn add_entry(&mut self, n: i64, src_idx: usize, tgt_idx: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let field = self.source.field;
        let rows = self.target.dim(n + self.degree);
        let cols = self.source.dim(n);
        let b = self.blocks.entry(n).or_insert_with(|| Mat::zero(field, rows, cols));
        b.add_at(tgt_idx, src_idx, c);
    }

    pub fn entry(&self, n: i64, src_idx: usize, tgt_idx: usize) -> Scalar {
        match self.blocks.get(&n) {
            Some(b) => b.at(tgt_idx, src_idx).clone(),
            None => Scalar::zero(self.field()),
        }
    }

    pub fn nonzero_degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.blocks.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.is_zero())
    }

    /// self ∘ g (apply g first).
    pub fn compose(&self, g: &GradedMap) -> GradedMap {
        assert_eq!(g.target, self.source, "composition shape mismatch");
        let mut out = GradedMap::zero(&g.source, &self.target, self.degree + g.degree);
        for (&n, gb) in &g.blocks {
            if let Some(fb) = self.blocks.get(&(n + g.degree)) {
                let prod = fb.mul(gb);
                if !prod.is_zero() {
                    out.set_block(n, prod);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &GradedMap) -> GradedMap {
        assert_eq!(self.source, o.source);
        assert_eq!(self.target, o.target);
        assert_eq!(self.degree, o.degree);
        let mut out = self.clone();
        for (&n, b) in &o.blocks {
            let s = out.block(n).add(b);
            out.set_block(n, s);
        }
        out
    }

    pub fn sub(&self, o: &GradedMap) -> GradedMap {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> GradedMap {
        self.scale(&Scalar::from_i64(self.field(), -1))
    }

    pub fn scale(&self, c: &Scalar) -> GradedMap {
        let mut out = GradedMap::zero(&self.source, &self.target, self.degree);
        if c.is_zero() {
            return out;
        }
        for (&n, b) in &self.blocks {
            out.set_block(n, b.scale(c));
        }
        out
    }

    /// Graded dual: blocks are the transposes, indexed at negated degrees.
    /// f: V → W of degree d yields f*: W* → V* of degree d with
    /// (f*)-block at n = transpose of the f-block at −n−d.
    pub fn dual(&self) -> GradedMap {
        let mut out = GradedMap::zero(&self.target.dual(), &self.source.dual(), self.degree);
        for (&n, b) in &self.blocks {
            // original block at n: V_n → W_{n+d}; transposed: (W*)_{−n−d} → (V*)_{−n}
            out.set_block(-n - self.degree, b.transpose());
        }
        out
    }

    pub fn reduce_mod(&self, p: u64) -> Option<GradedMap> {
        let src = GradedSpace { field: Field::Prime(p), dims: self.source.dims.clone() };
        let tgt = GradedSpace { field: Field::Prime(p), dims: self.target.dims.clone() };
        let mut out = GradedMap::zero(&src, &tgt, self.degree);
        for (&n, b) in &self.blocks {
            out.set_block(n, b.reduce_mod(p)?);
        }
        Some(out)
    }

    pub fn apply(&self, deg: i64, coords: &[Scalar]) -> Vec<Scalar> {
        self.block(deg).mul_vec(coords)
    }
}

/// A graded subspace of an ambient space, stored as per-degree column bases.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub ambient: GradedSpace,
    basis: BTreeMap<i64, Mat>, // dim_ambient(d) × k_d, columns independent; no zero-width entries
}

impl Subspace {
    pub fn zero(ambient: &GradedSpace) -> Subspace {
        Subspace { ambient: ambient.clone(), basis: BTreeMap::new() }
    }

    pub fn full(ambient: &GradedSpace) -> Subspace {
        let mut basis = BTreeMap::new();
        for d in ambient.degrees() {
            basis.insert(d, Mat::identity(ambient.field, ambient.dim(d)));
        }
        Subspace { ambient: ambient.clone(), basis }
    }

    pub fn from_generators(ambient: &GradedSpace, gens: BTreeMap<i64, Mat>) -> Subspace {
        let mut basis = BTreeMap::new();
        for (d, g) in gens {
            assert_eq!(g.rows, ambient.dim(d));
            let im = g.image();
            if im.cols > 0 {
                basis.insert(d, im);
            }
        }
        Subspace { ambient: ambient.clone(), basis }
    }

    pub fn basis_at(&self, d: i64) -> Mat {
        self.basis
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Mat::zero(self.ambient.field, self.ambient.dim(d), 0))
    }

    pub fn dim(&self, d: i64) -> usize {
        self.basis.get(&d).map(|b| b.cols).unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(|b| b.cols).sum()
    }

    pub fn is_full(&self) -> bool {
        self.ambient.degrees().all(|d| self.dim(d) == self.ambient.dim(d))
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn contains_vector(&self, d: i64, coords: &[Scalar]) -> bool {
        if coords.iter().all(|c| c.is_zero()) {
            return true;
        }
        self.basis_at(d).solve(coords).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient);
        other.basis.iter().all(|(&d, b)| {
            (0..b.cols).all(|j| self.contains_vector(d, &b.column(j)))
        })
    }

    pub fn eq_subspace(&self, other: &Subspace) -> bool {
        self.contains(other) && other.contains(self)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut gens = BTreeMap::new();
        let degrees: Vec<i64> =
            self.basis.keys().chain(other.basis.keys()).copied().collect();
        for d in degrees {
            gens.insert(d, self.basis_at(d).hstack(&other.basis_at(d)));
        }
        Subspace::from_generators(&self.ambient, gens)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut gens = BTreeMap::new();
        for (&d, b1) in &self.basis {
            let b2 = other.basis_at(d);
            if b2.cols == 0 {
                continue;
            }
            // kernel of [b1 | b2]: top part gives intersection coordinates in b1
            let k = b1.hstack(&b2).kernel();
            if k.cols == 0 {
                continue;
            }
            let mut top = Mat::zero(self.ambient.field, b1.cols, k.cols);
            for i in 0..b1.cols {
                for j in 0..k.cols {
                    top.set(i, j, k.at(i, j).clone());
                }
            }
            gens.insert(d, b1.mul(&top));
        }
        Subspace::from_generators(&self.ambient, gens)
    }

    /// The subspace as an abstract graded space (dims = per-degree ranks).
    pub fn as_space(&self) -> GradedSpace {
        GradedSpace::new(self.ambient.field, self.basis.iter().map(|(&d, b)| (d, b.cols)))
    }

    /// Degree-0 inclusion of the abstract space into the ambient.
    pub fn inclusion(&self) -> GradedMap {
        let mut m = GradedMap::zero(&self.as_space(), &self.ambient, 0);
        for (&d, b) in &self.basis {
            m.set_block(d, b.clone());
        }
        m
    }

    /// Express ambient vectors in subspace coordinates; `None` outside.
    pub fn coords_of(&self, d: i64, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.dim(d) == 0 {
            return if v.iter().all(|c| c.is_zero()) { Some(vec![]) } else { None };
        }
        self.basis_at(d).solve(v)
    }

    /// Image of the subspace under a graded map, as a subspace of f's target.
    pub fn map_forward(&self, f: &GradedMap) -> Subspace {
        assert_eq!(self.ambient, f.source);
        let mut gens = BTreeMap::new();
        for (&d, b) in &self.basis {
            gens.insert(d + f.degree, f.block(d).mul(b));
        }
        Subspace::from_generators(&f.target, gens)
    }
}

pub fn kernel(f: &GradedMap) -> Subspace {
    let mut gens = BTreeMap::new();
    for d in f.source.degrees() {
        gens.insert(d, f.block(d).kernel());
    }
    Subspace::from_generators(&f.source, gens)
}

pub fn image(f: &GradedMap) -> Subspace {
    let mut gens = BTreeMap::new();
    for d in f.source.degrees() {
        gens.insert(d + f.degree, f.block(d).image());
    }
    Subspace::from_generators(&f.target, gens)
}

/// Quotient of the ambient space by a subspace: abstract quotient space, the
/// canonical projection, and a section (projection ∘ section = identity).
pub fn quotient(sub: &Subspace) -> (GradedSpace, GradedMap, GradedMap) {
    let amb = &sub.ambient;
    let field = amb.field;
    let mut qdims = Vec::new();
    let mut pblocks = BTreeMap::new();
    for d in amb.degrees() {
        let n = amb.dim(d);
        let b = sub.basis_at(d);
        let r = b.cols;
        let q = n - r;
        if q == 0 {
            continue;
        }
        qdims.push((d, q));
        // row-reduce [B | I]: rows past rank(B) annihilate col(B)
        let aug = b.hstack(&Mat::identity(field, n));
        let (rr, _) = aug.rref();
        let mut p = Mat::zero(field, q, n);
        for i in 0..q {
            for j in 0..n {
                p.set(i, j, rr.at(r + i, b.cols + j).clone());
            }
        }
        pblocks.insert(d, p);
    }
    let qspace = GradedSpace::new(field, qdims);
    let mut proj = GradedMap::zero(amb, &qspace, 0);
    let mut sect = GradedMap::zero(&qspace, amb, 0);
    for (d, p) in pblocks {
        // section: solve P·S = I column by column (P has full row rank)
        let q = p.rows;
        let mut s = Mat::zero(field, p.cols, q);
        for j in 0..q {
            let mut e = vec![Scalar::zero(field); q];
            e[j] = Scalar::one(field);
            let col = p.solve(&e).expect("projection is surjective");
            for i in 0..p.cols {
                s.set(i, j, col[i].clone());
            }
        }
        proj.set_block(d, p);
        sect.set_block(d, s);
    }
    (qspace, proj, sect)
}

/// Cokernel of a map: quotient of the target by the image.
pub fn cokernel(f: &GradedMap) -> (GradedSpace, GradedMap, GradedMap) {
    quotient(&image(f))
}

/// Solve f ∘ h = g for h; `None` when some column of g misses the image of f.
/// Free coordinates are zero (deterministic canonical lift).
pub fn solve_right(f: &GradedMap, g: &GradedMap) -> Option<GradedMap> {
    assert_eq!(f.target, g.target);
    let deg = g.degree - f.degree;
    let mut h = GradedMap::zero(&g.source, &f.source, deg);
    for d in g.source.degrees() {
        let gb = g.block(d);
        if gb.is_zero() {
            continue;
        }
        let fb = f.block(d + deg);
        let mut hb = Mat::zero(f.field(), fb.cols, gb.cols);
        for j in 0..gb.cols {
            let x = fb.solve(&gb.column(j))?;
            for i in 0..fb.cols {
                hb.set(i, j, x[i].clone());
            }
        }
        h.set_block(d, hb);
    }
    Some(h)
}

/// Solve h ∘ f = g for h, given f surjective (descend g through f).
/// `None` when g does not vanish on ker f (no well-defined descent).
pub fn solve_left(f: &GradedMap, g: &GradedMap) -> Option<GradedMap> {
    assert_eq!(f.source, g.source);
    // candidate via any section of f, then verify
    let mut h = GradedMap::zero(&f.target, &g.target, g.degree - f.degree);
    for d in f.target.degrees() {
        // want block H_d with H_d · F = G at source degree d - f.degree... assemble via transpose solve
        let sd = d - f.degree;
        let fb = f.block(sd);
        let gb = g.block(sd);
        // solve H · fb = gb  ⇔  fb^T · H^T = gb^T
        let ft = fb.transpose();
        let gt = gb.transpose();
        let mut ht = Mat::zero(f.field(), ft.cols, gt.cols);
        for j in 0..gt.cols {
            let x = ft.solve(&gt.column(j))?;
            for i in 0..ft.cols {
                ht.set(i, j, x[i].clone());
            }
        }
        h.set_block(d, ht.transpose());
    }
    if h.compose(f) == *g || h.compose(f).sub(g).is_zero() {
        Some(h)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_i64(Field::Rational, n)
    }

    #[test]
    fn shift_and_dual_dims() {
        let w = GradedSpace::new(Field::Rational, [(3, 1), (-2, 4)]);
        assert_eq!(w.shift_t().dim(-3), 1);
        assert_eq!(w.shift_t().shift_t(), w);
        assert_eq!(w.dual().dual(), w);
        assert_eq!(w.dual().shift_t(), w.shift_t().dual());
    }

    #[test]
    fn dual_map_blocks() {
        // f: V -> W degree 1, block at n=0 of shape 2x3
        let v = GradedSpace::new(Field::Rational, [(0, 3)]);
        let w = GradedSpace::new(Field::Rational, [(1, 2)]);
        let mut f = GradedMap::zero(&v, &w, 1);
        let mut b = Mat::zero(Field::Rational, 2, 3);
        b.set(0, 1, s(5));
        f.set_block(0, b);
        let fd = f.dual();
        assert_eq!(fd.degree, 1);
        // dual block lives at -0-1 = -1 and is 3x2
        let db = fd.block(-1);
        assert_eq!((db.rows, db.cols), (3, 2));
        assert_eq!(db.at(1, 0), &s(5));
        // evaluation pairing: <f*(phi), v> = <phi, f(v)>
        for i in 0..2 {
            for j in 0..3 {
                let mut phi = vec![s(0), s(0)];
                phi[i] = s(1);
                let mut x = vec![s(0); 3];
                x[j] = s(1);
                let lhs = fd.apply(-1, &phi)[j].clone();
                let rhs = f.apply(0, &x)[i].clone();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn kernel_image_cokernel() {
        let v = GradedSpace::new(Field::Rational, [(0, 3)]);
        let w = GradedSpace::new(Field::Rational, [(0, 2)]);
        let mut f = GradedMap::zero(&v, &w, 0);
        f.set_block(0, Mat::from_rows(Field::Rational, vec![vec![s(1), s(0), s(1)], vec![s(0), s(0), s(0)]]));
        let k = kernel(&f);
        assert_eq!(k.dim(0), 2);
        let im = image(&f);
        assert_eq!(im.dim(0), 1);
        let (q, proj, sect) = cokernel(&f);
        assert_eq!(q.dim(0), 1);
        assert!(proj.compose(&sect).sub(&GradedMap::identity(&q)).is_zero());
        assert!(proj.compose(&f).is_zero());
        // kernel of zero map is whole source; image of identity is whole target
        let z = GradedMap::zero(&v, &w, 0);
        assert!(kernel(&z).is_full());
        assert!(image(&GradedMap::identity(&v)).is_full());
    }

    #[test]
    fn subspace_lattice() {
        let v = GradedSpace::new(Field::Rational, [(0, 3)]);
        let mut g1 = BTreeMap::new();
        g1.insert(0, Mat::from_rows(Field::Rational, vec![vec![s(1)], vec![s(0)], vec![s(0)]]));
        let a = Subspace::from_generators(&v, g1);
        let mut g2 = BTreeMap::new();
        g2.insert(0, Mat::from_rows(Field::Rational, vec![vec![s(1)], vec![s(1)], vec![s(0)]]));
        let b = Subspace::from_generators(&v, g2);
        let sum = a.sum(&b);
        assert_eq!(sum.dim(0), 2);
        assert_eq!(a.intersect(&b).dim(0), 0);
        assert!(sum.contains(&a) && sum.contains(&b));
        assert!(a.eq_subspace(&a.intersect(&sum)));
    }

    #[test]
    fn solve_right_left() {
        let v = GradedSpace::new(Field::Rational, [(0, 2)]);
        let f = GradedMap::identity(&v).scale(&s(2));
        let g = GradedMap::identity(&v);
        let h = solve_right(&f, &g).unwrap();
        assert!(f.compose(&h).sub(&g).is_zero());
        let h2 = solve_left(&f, &g).unwrap();
        assert!(h2.compose(&f).sub(&g).is_zero());
    }
}
