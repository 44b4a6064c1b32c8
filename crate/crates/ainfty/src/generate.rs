//! Seeded instance generators. Every strategy either produces valid instances
//! by construction (verified in tests against the checkers) or
//! rejection-samples against the checker.
//!
//! Strategies:
//! - `dga`: word algebras on letters of degree 1, truncated above a top
//!   degree (multiplication is concatenation, an ideal quotient, hence
//!   associative), optionally plus a disjoint two-term complex carrying m_1.
//! - `composition_free`: carrier {1: a, 2: b}; operations only on all-degree-1
//!   inputs with values in degree 2, so every quadratic composite hits a zero
//!   slot and arbitrary coefficients are valid.
//! - `a2p`: the m_2 + m_p special case of the same window.
//! - `perturb`: rejection sampling of sparse structure constants over F_p.

use crate::algebra::{check_algebra, AInftyAlgebra, AInftyCoalgebra};
use crate::graded::{GradedMap, GradedSpace};
use crate::scalar::{Field, Scalar};
use crate::tensor::{TensorIndex, TensorSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero scalar.
pub fn rand_scalar(r: &mut ChaCha8Rng, field: Field) -> Scalar {
    match field {
        Field::Rational => {
            let mut n: i64 = r.gen_range(-3..=3);
            if n == 0 {
                n = 1;
            }
            Scalar::from_i64(field, n)
        }
        Field::Prime(p) => {
            let n = r.gen_range(1..p);
            Scalar::from_i64(field, n as i64)
        }
    }
}

/// Fully random dense map of the given degree (may have zero entries).
pub fn rand_map(
    r: &mut ChaCha8Rng,
    src: &GradedSpace,
    tgt: &GradedSpace,
    degree: i64,
) -> GradedMap {
    let mut f = GradedMap::zero(src, tgt, degree);
    for d in src.degrees().collect::<Vec<_>>() {
        let rows = tgt.dim(d + degree);
        let cols = src.dim(d);
        for i in 0..rows {
            for j in 0..cols {
                if r.gen_bool(0.5) {
                    f.add_entry(d, j, i, &rand_scalar(r, src.field));
                }
            }
        }
    }
    f
}

/// Word algebra: `letters` generators of degree 1, all words of length
/// 1..=top, product = concatenation (zero past the top degree). With
/// `with_m1`, a disjoint two-term complex x → y in degrees top+1, top+2.
pub fn dga_algebra(
    field: Field,
    letters: usize,
    top: usize,
    with_m1: bool,
    r: &mut ChaCha8Rng,
) -> AInftyAlgebra {
    assert!(letters >= 1 && top >= 1);
    let mut dims: Vec<(i64, usize)> = (1..=top as i64)
        .map(|d| (d, letters.pow(d as u32)))
        .collect();
    if with_m1 {
        dims.push((top as i64 + 1, 1));
        dims.push((top as i64 + 2, 1));
    }
    let a = GradedSpace::new(field, dims);
    let mut alg = AInftyAlgebra::new(a.clone(), 2);
    let ts2 = TensorSpace::power(&a, 2);
    let lambda = rand_scalar(r, field);
    let mut m2 = GradedMap::zero(&ts2.space, &a, 0);
    for d1 in 1..=top as i64 {
        for d2 in 1..=top as i64 {
            if d1 + d2 > top as i64 {
                continue;
            }
            for i1 in 0..letters.pow(d1 as u32) {
                for i2 in 0..letters.pow(d2 as u32) {
                    let ti = TensorIndex { degrees: vec![d1, d2], indices: vec![i1, i2] };
                    let col = ts2.position(&ti).unwrap();
                    let out = i1 * letters.pow(d2 as u32) + i2;
                    m2.add_entry(d1 + d2, col, out, &lambda);
                }
            }
        }
    }
    alg.set_op(2, m2).unwrap();
    if with_m1 {
        let mu = rand_scalar(r, field);
        let mut m1 = GradedMap::zero(&TensorSpace::power(&a, 1).space, &a, 1);
        // the complex basis elements are the unique vectors in degrees top+1, top+2
        m1.add_entry(top as i64 + 1, 0, 0, &mu);
        alg.set_op(1, m1).unwrap();
    }
    alg
}

/// Carrier {1: dim1, 2: dim2}; for each k in `ks`, a random m_k supported on
/// (A_1)^{⊗k} with values in A_2. All composites vanish because every
/// operation requires all inputs in degree 1 while all outputs are in degree 2.
pub fn composition_free_algebra(
    field: Field,
    dim1: usize,
    dim2: usize,
    ks: &[usize],
    r: &mut ChaCha8Rng,
) -> AInftyAlgebra {
    let a = GradedSpace::new(field, [(1, dim1), (2, dim2)]);
    let k_max = ks.iter().copied().max().unwrap_or(1);
    let mut alg = AInftyAlgebra::new(a.clone(), k_max);
    for &k in ks {
        let ts = TensorSpace::power(&a, k);
        let mut m = GradedMap::zero(&ts.space, &a, 2 - k as i64);
        // inputs of total degree k with all slots in degree 1 come first in
        // the lex enumeration only when they exist; address them explicitly
        for col_ti in ts.basis_at(k as i64).iter() {
            if col_ti.degrees.iter().any(|&d| d != 1) {
                continue;
            }
            let col = ts.position(col_ti).unwrap();
            for out in 0..dim2 {
                if r.gen_bool(0.6) {
                    m.add_entry(k as i64, col, out, &rand_scalar(r, field));
                }
            }
        }
        alg.set_op(k, m).unwrap();
    }
    alg
}

/// m_2 + m_p on the composition-free window.
pub fn a2p_algebra(
    field: Field,
    dim1: usize,
    dim2: usize,
    p: usize,
    r: &mut ChaCha8Rng,
) -> AInftyAlgebra {
    assert!(p >= 3);
    composition_free_algebra(field, dim1, dim2, &[2, p], r)
}

/// Rejection sampling of sparse structure constants over F_p.
pub fn perturb_algebra(
    p: u64,
    budget: u64,
    seed: u64,
) -> Result<AInftyAlgebra, crate::Error> {
    let field = Field::prime(p)?;
    let mut r = rng(seed);
    for _ in 0..budget {
        let dim0 = r.gen_range(1..=2usize);
        let dim1 = r.gen_range(1..=2usize);
        let a = GradedSpace::new(field, [(1, dim0), (2, dim1)]);
        let k_max = r.gen_range(1..=3usize);
        let mut alg = AInftyAlgebra::new(a.clone(), k_max);
        for k in 1..=k_max {
            let ts = TensorSpace::power(&a, k);
            let mut m = GradedMap::zero(&ts.space, &a, 2 - k as i64);
            let entries = r.gen_range(0..=2usize);
            for _ in 0..entries {
                let degs: Vec<i64> = ts.space.degrees().collect();
                if degs.is_empty() {
                    continue;
                }
                let d = degs[r.gen_range(0..degs.len())];
                let rows = a.dim(d + 2 - k as i64);
                let cols = ts.space.dim(d);
                if rows == 0 || cols == 0 {
                    continue;
                }
                let i = r.gen_range(0..rows);
                let j = r.gen_range(0..cols);
                m.add_entry(d, j, i, &rand_scalar(&mut r, field));
            }
            alg.set_op(k, m).unwrap();
        }
        if check_algebra(&alg, None).passed() {
            return Ok(alg);
        }
    }
    Err(crate::Error::BudgetExhausted(seed))
}

/// Word coalgebra: letters of degree −1, words of length 1..=top, w_2 = sum
/// over proper splits (coassociative); optional two-term complex for w_1.
pub fn dga_coalgebra(
    field: Field,
    letters: usize,
    top: usize,
    with_w1: bool,
    r: &mut ChaCha8Rng,
) -> AInftyCoalgebra {
    assert!(letters >= 1 && top >= 2);
    let mut dims: Vec<(i64, usize)> = (1..=top as i64)
        .map(|d| (-d, letters.pow(d as u32)))
        .collect();
    if with_w1 {
        dims.push((-(top as i64) - 2, 1));
        dims.push((-(top as i64) - 1, 1));
    }
    let c = GradedSpace::new(field, dims);
    let mut co = AInftyCoalgebra::new(c.clone(), 2);
    let ts2 = TensorSpace::power(&c, 2);
    let lambda = rand_scalar(r, field);
    let mut w2 = GradedMap::zero(&c, &ts2.space, 0);
    for len in 2..=top {
        for w in 0..letters.pow(len as u32) {
            for cut in 1..len {
                let right_len = len - cut;
                let i1 = w / letters.pow(right_len as u32);
                let i2 = w % letters.pow(right_len as u32);
                let ti = TensorIndex {
                    degrees: vec![-(cut as i64), -(right_len as i64)],
                    indices: vec![i1, i2],
                };
                let row = ts2.position(&ti).unwrap();
                w2.add_entry(-(len as i64), w, row, &lambda);
            }
        }
    }
    co.set_op(2, w2).unwrap();
    if with_w1 {
        let mu = rand_scalar(r, field);
        let mut w1 = GradedMap::zero(&c, &TensorSpace::power(&c, 1).space, 1);
        w1.add_entry(-(top as i64) - 2, 0, 0, &mu);
        co.set_op(1, w1).unwrap();
    }
    co
}

/// Carrier {−1: dim1, −2: dim2}; w_k supported on C_{−2} with values in
/// (C_{−1})^{⊗k}. All composites vanish (cooperations are zero on C_{−1}).
pub fn composition_free_coalgebra(
    field: Field,
    dim1: usize,
    dim2: usize,
    ks: &[usize],
    r: &mut ChaCha8Rng,
) -> AInftyCoalgebra {
    let c = GradedSpace::new(field, [(-1, dim1), (-2, dim2)]);
    let k_max = ks.iter().copied().max().unwrap_or(1);
    let mut co = AInftyCoalgebra::new(c.clone(), k_max);
    for &k in ks {
        let ts = TensorSpace::power(&c, k);
        let mut w = GradedMap::zero(&c, &ts.space, 2 - k as i64);
        for row_ti in ts.basis_at(-(k as i64)).iter() {
            if row_ti.degrees.iter().any(|&d| d != -1) {
                continue;
            }
            let row = ts.position(row_ti).unwrap();
            for src in 0..dim2 {
                if r.gen_bool(0.6) {
                    w.add_entry(-2, src, row, &rand_scalar(r, field));
                }
            }
        }
        co.set_op(k, w).unwrap();
    }
    co
}

pub fn a2p_coalgebra(
    field: Field,
    dim1: usize,
    dim2: usize,
    p: usize,
    r: &mut ChaCha8Rng,
) -> AInftyCoalgebra {
    assert!(p >= 3);
    composition_free_coalgebra(field, dim1, dim2, &[2, p], r)
}

pub fn perturb_coalgebra(
    p: u64,
    budget: u64,
    seed: u64,
) -> Result<AInftyCoalgebra, crate::Error> {
    let alg = perturb_algebra(p, budget, seed)?;
    Ok(crate::algebra::undualize_algebra(&alg))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Dga,
    CompositionFree,
    A2p,
    Perturb,
}

impl std::str::FromStr for Strategy {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Strategy, crate::Error> {
        match s {
            "dga" => Ok(Strategy::Dga),
            "composition_free" | "composition-free" => Ok(Strategy::CompositionFree),
            "a2p" => Ok(Strategy::A2p),
            "perturb" => Ok(Strategy::Perturb),
            _ => Err(crate::Error::Invalid(format!("unknown strategy `{}`", s))),
        }
    }
}

/// Seeded top-level generator with randomized desk-scale size parameters.
/// Sizes are capped so that complete checking at 3·K_max stays cheap.
pub fn generate_algebra(
    strategy: Strategy,
    field: Field,
    seed: u64,
) -> Result<AInftyAlgebra, crate::Error> {
    let mut r = rng(seed);
    Ok(match strategy {
        Strategy::Dga => {
            let letters = r.gen_range(1..=2usize);
            let top = r.gen_range(1..=if letters == 1 { 3 } else { 2 });
            let with_m1 = r.gen_bool(0.5);
            dga_algebra(field, letters, top.max(1), with_m1, &mut r)
        }
        Strategy::CompositionFree => {
            let dim1 = r.gen_range(1..=2usize);
            let dim2 = r.gen_range(1..=2usize);
            let nks = r.gen_range(1..=2usize);
            let mut ks: Vec<usize> = Vec::new();
            for _ in 0..nks {
                let k = r.gen_range(1..=3usize);
                if !ks.contains(&k) {
                    ks.push(k);
                }
            }
            composition_free_algebra(field, dim1, dim2, &ks, &mut r)
        }
        Strategy::A2p => {
            let p = if r.gen_bool(0.5) { 3 } else { 4 };
            a2p_algebra(field, 1, 1, p, &mut r)
        }
        Strategy::Perturb => {
            let p = match field {
                Field::Prime(p) => p,
                Field::Rational => 5,
            };
            perturb_algebra(p, 200, seed)?
        }
    })
}

pub fn generate_coalgebra(
    strategy: Strategy,
    field: Field,
    seed: u64,
) -> Result<AInftyCoalgebra, crate::Error> {
    let mut r = rng(seed);
    Ok(match strategy {
        Strategy::Dga => {
            let letters = r.gen_range(1..=2usize);
            let top = if letters == 1 { r.gen_range(2..=3usize) } else { 2 };
            let with_w1 = r.gen_bool(0.5);
            dga_coalgebra(field, letters, top, with_w1, &mut r)
        }
        Strategy::CompositionFree => {
            let dim1 = r.gen_range(1..=2usize);
            let dim2 = r.gen_range(1..=2usize);
            let nks = r.gen_range(1..=2usize);
            let mut ks: Vec<usize> = Vec::new();
            for _ in 0..nks {
                let k = r.gen_range(1..=3usize);
                if !ks.contains(&k) {
                    ks.push(k);
                }
            }
            composition_free_coalgebra(field, dim1, dim2, &ks, &mut r)
        }
        Strategy::A2p => {
            let p = if r.gen_bool(0.5) { 3 } else { 4 };
            a2p_coalgebra(field, 1, 1, p, &mut r)
        }
        Strategy::Perturb => {
            let p = match field {
                Field::Prime(p) => p,
                Field::Rational => 5,
            };
            perturb_coalgebra(p, 200, seed)?
        }
    })
}

/// Generate an even coalgebra (all odd-arity cooperations zero).
pub fn generate_even_coalgebra(field: Field, seed: u64) -> AInftyCoalgebra {
    let mut r = rng(seed);
    match r.gen_range(0..3) {
        0 => dga_coalgebra(field, r.gen_range(1..=2usize), 2, false, &mut r),
        1 => {
            let dim1 = r.gen_range(1..=2usize);
            let dim2 = r.gen_range(1..=2usize);
            composition_free_coalgebra(field, dim1, dim2, &[2], &mut r)
        }
        _ => a2p_coalgebra(field, 1, r.gen_range(1..=2usize), 4, &mut r),
    }
}

/// Coalgebra spanned by n grouplike elements in degree 0:
/// w_2(c_i) = c_i ⊗ c_i, nothing else.
pub fn grouplike_coalgebra(field: Field, n: usize) -> AInftyCoalgebra {
    let carrier = GradedSpace::new(field, [(0, n)]);
    let mut c = AInftyCoalgebra::new(carrier.clone(), 2);
    let ts = TensorSpace::power(&carrier, 2);
    let one = Scalar::one(field);
    let mut w = GradedMap::zero(&carrier, &ts.space, 0);
    for i in 0..n {
        let pos = ts
            .position(&TensorIndex { degrees: vec![0, 0], indices: vec![i, i] })
            .expect("grouplike index");
        w.add_entry(0, i, pos, &one);
    }
    c.set_op(2, w).expect("grouplike shapes");
    c
}

/// Algebra spanned by n orthogonal idempotents in degree 0:
/// m_2(e_i ⊗ e_i) = e_i, mixed products zero.
pub fn idempotents_algebra(field: Field, n: usize) -> AInftyAlgebra {
    let carrier = GradedSpace::new(field, [(0, n)]);
    let mut a = AInftyAlgebra::new(carrier.clone(), 2);
    let ts = TensorSpace::power(&carrier, 2);
    let one = Scalar::one(field);
    let mut m = GradedMap::zero(&ts.space, &carrier, 0);
    for i in 0..n {
        let pos = ts
            .position(&TensorIndex { degrees: vec![0, 0], indices: vec![i, i] })
            .expect("idempotent index");
        m.add_entry(0, pos, i, &one);
    }
    a.set_op(2, m).expect("idempotent shapes");
    a
}

/// Generate an even algebra (all odd-arity operations zero).
pub fn generate_even_algebra(field: Field, seed: u64) -> AInftyAlgebra {
    let mut r = rng(seed);
    match r.gen_range(0..3) {
        0 => dga_algebra(field, r.gen_range(1..=2usize), 2, false, &mut r),
        1 => {
            let dim1 = r.gen_range(1..=2usize);
            let dim2 = r.gen_range(1..=2usize);
            composition_free_algebra(field, dim1, dim2, &[2], &mut r)
        }
        _ => a2p_algebra(field, 1, r.gen_range(1..=2usize), 4, &mut r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_coalgebra;

    #[test]
    fn generated_algebras_pass() {
        for seed in 0..12u64 {
            for strat in [Strategy::Dga, Strategy::CompositionFree, Strategy::A2p] {
                let a = generate_algebra(strat, Field::Rational, seed).unwrap();
                assert!(check_algebra(&a, None).passed(), "{:?} seed {}", strat, seed);
                let a5 = generate_algebra(strat, Field::Prime(5), seed).unwrap();
                assert!(check_algebra(&a5, None).passed());
            }
        }
        let p = generate_algebra(Strategy::Perturb, Field::Prime(5), 3).unwrap();
        assert!(check_algebra(&p, None).passed());
    }

    #[test]
    fn generated_coalgebras_pass() {
        for seed in 0..12u64 {
            for strat in [Strategy::Dga, Strategy::CompositionFree, Strategy::A2p] {
                let c = generate_coalgebra(strat, Field::Rational, seed).unwrap();
                assert!(check_coalgebra(&c, None).passed(), "{:?} seed {}", strat, seed);
            }
        }
    }

    #[test]
    fn dualize_generated_coalgebras() {
        // graded-dual functor sends valid coalgebras to valid algebras and
        // transports evenness
        for seed in 0..8u64 {
            for strat in [Strategy::Dga, Strategy::CompositionFree, Strategy::A2p] {
                let c = generate_coalgebra(strat, Field::Rational, seed).unwrap();
                let a = crate::algebra::dualize_coalgebra(&c);
                assert!(check_algebra(&a, None).passed(), "{:?} seed {}", strat, seed);
                if c.is_even() {
                    assert!(a.is_even());
                }
            }
        }
    }

    #[test]
    fn even_generators_even() {
        for seed in 0..6u64 {
            let c = generate_even_coalgebra(Field::Rational, seed);
            assert!(c.is_even() && check_coalgebra(&c, None).passed());
            let a = generate_even_algebra(Field::Rational, seed);
            assert!(a.is_even() && check_algebra(&a, None).passed());
        }
    }
}
