//! Strict morphism spaces computed as exact linear equalizers: the space of
//! degree-0 maps h between carriers intertwining every structure operation on
//! the nose. No Koszul signs enter (h has degree 0), so each constraint is a
//! plain difference of two composites, and the solution space is the kernel
//! of the stacked constraint matrix at hom-degree 0.

use crate::comodule::{AInftyComodule, Side};
use crate::contramodule::AInftyContramodule;
use crate::graded::{GradedMap, Subspace};
use crate::homspace::{postcompose, HomSpace};
use crate::matrix::Mat;
use crate::module::AInftyModule;
use crate::scalar::Scalar;
use crate::tensor::{interleave_in, TensorSpace};

/// Degree-0 strict morphisms X → Y as a subspace of the hom space of the
/// carriers.
pub struct StrictHoms {
    pub hom: HomSpace,
    pub solutions: Subspace,
}

impl StrictHoms {
    /// The solution basis as honest graded maps.
    pub fn maps(&self) -> Vec<GradedMap> {
        let b = self.solutions.basis_at(0);
        (0..b.cols).map(|j| self.hom.to_map(0, &b.column(j))).collect()
    }

    pub fn dim(&self) -> usize {
        self.solutions.dim(0)
    }

    pub fn contains_map(&self, f: &GradedMap) -> bool {
        f.degree == 0 && self.solutions.contains_vector(0, &self.hom.from_map(f))
    }
}

/// Solve the stacked constraints: for each candidate basis map h, `residuals`
/// returns the per-constraint residual coordinates; the kernel of the stacked
/// matrix is the strict hom space.
fn solve_constraints(
    hom: HomSpace,
    residuals: impl Fn(&GradedMap) -> Vec<Scalar>,
) -> StrictHoms {
    let field = hom.space.field;
    let n0 = hom.space.dim(0);
    if n0 == 0 {
        let solutions = Subspace::zero(&hom.space);
        return StrictHoms { hom, solutions };
    }
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n0);
    for e in 0..n0 {
        let mut coords = vec![Scalar::zero(field); n0];
        coords[e] = Scalar::one(field);
        let h = hom.to_map(0, &coords);
        cols.push(residuals(&h));
    }
    let rows = cols[0].len();
    let mut m = Mat::zero(field, rows, n0);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if !v.is_zero() {
                m.set(i, j, v.clone());
            }
        }
    }
    let ker = m.kernel();
    let mut gens = std::collections::BTreeMap::new();
    if ker.cols > 0 {
        gens.insert(0, ker);
    }
    let solutions = Subspace::from_generators(&hom.space, gens);
    StrictHoms { hom, solutions }
}

/// Strict module morphisms: h∘m^X_k = m^Y_k∘(1^{⊗k−1}⊗h) for every k.
pub fn strict_hom_module(
    x: &AInftyModule,
    y: &AInftyModule,
) -> Result<StrictHoms, crate::Error> {
    if x.algebra.carrier != y.algebra.carrier {
        return Err(crate::Error::Shape("modules live over different algebras".into()));
    }
    let hom = HomSpace::new(&x.carrier, &y.carrier);
    let xts = TensorSpace::power(&x.carrier, 1);
    let yts = TensorSpace::power(&y.carrier, 1);
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
        .map(|(_, sx, _)| HomSpace::new(&sx.space, &y.carrier))
        .collect();
    Ok(solve_constraints(hom, |h| {
        let mut out = Vec::new();
        for ((k, sx, sy), rs) in constraints.iter().zip(&res_spaces) {
            let deg = 2 - *k as i64;
            let leg1 = match x.op(*k) {
                Some(op) => h.compose(op),
                None => GradedMap::zero(&sx.space, &y.carrier, deg),
            };
            let leg2 = match y.op(*k) {
                Some(op) => op.compose(&interleave_in(sx, sy, *k - 1, h, &xts, &yts, false)),
                None => GradedMap::zero(&sx.space, &y.carrier, deg),
            };
            out.extend(rs.from_map(&leg1.sub(&leg2)));
        }
        out
    }))
}

/// Strict comodule morphisms: (1^{⊗k−1}⊗h)∘w^X_k = w^Y_k∘h for left
/// comodules, (h⊗1^{⊗k−1})∘w^X_k = w^Y_k∘h for right ones.
pub fn strict_hom_comodule(
    x: &AInftyComodule,
    y: &AInftyComodule,
) -> Result<StrictHoms, crate::Error> {
    if x.side != y.side {
        return Err(crate::Error::Shape("strict comodule homs require matching sides".into()));
    }
    if x.coalgebra.carrier != y.coalgebra.carrier {
        return Err(crate::Error::Shape("comodules live over different coalgebras".into()));
    }
    let hom = HomSpace::new(&x.carrier, &y.carrier);
    let xts = TensorSpace::power(&x.carrier, 1);
    let yts = TensorSpace::power(&y.carrier, 1);
    let kk = x.effective_k().max(y.effective_k());
    let mut constraints = Vec::new();
    for k in 1..=kk {
        if x.op(k).is_none() && y.op(k).is_none() {
            continue;
        }
        constraints.push((k, x.op_target(k), y.op_target(k)));
    }
    let res_spaces: Vec<HomSpace> = constraints
        .iter()
        .map(|(_, _, ty)| HomSpace::new(&x.carrier, &ty.space))
        .collect();
    let slot = |k: usize| if x.side == Side::Left { k - 1 } else { 0 };
    Ok(solve_constraints(hom, |h| {
        let mut out = Vec::new();
        for ((k, tx, ty), rs) in constraints.iter().zip(&res_spaces) {
            let deg = 2 - *k as i64;
            let leg1 = match x.op(*k) {
                Some(op) => interleave_in(tx, ty, slot(*k), h, &xts, &yts, false).compose(op),
                None => GradedMap::zero(&x.carrier, &ty.space, deg),
            };
            let leg2 = match y.op(*k) {
                Some(op) => op.compose(h),
                None => GradedMap::zero(&x.carrier, &ty.space, deg),
            };
            out.extend(rs.from_map(&leg1.sub(&leg2)));
        }
        out
    }))
}

/// Strict contramodule morphisms: h∘t^X_k = t^Y_k∘[C^{⊗k−1},h] for every k.
pub fn strict_hom_contramodule(
    x: &AInftyContramodule,
    y: &AInftyContramodule,
) -> Result<StrictHoms, crate::Error> {
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
    Ok(solve_constraints(hom, |h| {
        let mut out = Vec::new();
        for ((k, hx, hy), rs) in constraints.iter().zip(&res_spaces) {
            let deg = 2 - *k as i64;
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
