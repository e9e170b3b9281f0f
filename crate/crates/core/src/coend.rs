//! The functor tensor product `X ⊗_ab G` over ab truncated at rank `N`.

use std::fmt;

use num_bigint::BigInt;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functor::{ab_generators, degree, ExprFunctor, FunctorExpr, TabulatedFunctor, Variance};
use crate::gcat::case_rng;
use crate::linalg::{bigint_strings, cokernel_summary, Matrix, Ring};
use crate::par::{self, Execution};

/// Free rank and, over `ℤ`, torsion divisors `> 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoendValue {
    pub ring: Ring,
    pub free_rank: usize,
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for CoendValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = crate::linalg::HomologyGroup {
            ring: self.ring,
            degree: 0,
            free_rank: self.free_rank,
            torsion: self.torsion.clone(),
        };
        write!(f, "{g}")
    }
}

/// `⊕_{m <= N} X(m) ⊗ G(m)` modulo the relations of the generating morphisms.
#[derive(Clone, Debug, Serialize)]
pub struct CoendPresentation {
    pub x: String,
    pub g: String,
    pub n: usize,
    /// The value is trusted one rank below the truncation.
    pub level: usize,
    pub generators: usize,
    pub relations: usize,
    pub morphisms: usize,
    pub value: CoendValue,
    #[serde(skip)]
    pub relation_matrix: Matrix,
}

/// Columns `X(b) ⊗ G(a)` of the relation `X(φ)x ⊗ y - x ⊗ G(φ)y`.
fn relation_columns(
    x: &dyn TabulatedFunctor,
    g: &dyn TabulatedFunctor,
    phi: &Matrix,
    offsets: &[usize],
    dims: &[(usize, usize)],
    total: usize,
) -> Result<Matrix> {
    let ring = x.ring();
    let (b, a) = phi.shape();
    let ((xa, ga), (xb, gb)) = (dims[a], dims[b]);
    let mut m = Matrix::zeros(ring, total, xb * ga);
    m.add_block(offsets[a], 0, &x.on_matrix(phi)?.kronecker(&Matrix::identity(ring, ga)));
    m.add_block(offsets[b], 0, &Matrix::identity(ring, xb).kronecker(&g.on_matrix(phi)?).scale_i64(-1));
    debug_assert_eq!((xa * ga, xb * gb), (dims[a].0 * dims[a].1, dims[b].0 * dims[b].1));
    Ok(m)
}

/// Builds the truncated presentation. `extra` morphisms are added to the
/// standard generators; they must have ranks `<= n`.
pub fn functor_tensor(
    x: &dyn TabulatedFunctor,
    g: &dyn TabulatedFunctor,
    n: usize,
    extra: &[Matrix],
    exec: Execution,
) -> Result<CoendPresentation> {
    if n == 0 {
        return Err(Error::Precondition("functor_tensor needs N >= 1".into()));
    }
    if x.variance() == Variance::Co {
        return Err(Error::Variance(format!("left factor {} must be contravariant", x.name())));
    }
    if g.variance() == Variance::Contra {
        return Err(Error::Variance(format!("right factor {} must be covariant", g.name())));
    }
    if x.ring() != g.ring() {
        return Err(Error::Ring(format!("{} vs {}", x.ring(), g.ring())));
    }
    let ring = x.ring();
    let dims = (0..=n).map(|m| Ok((x.dim(m)?, g.dim(m)?))).collect::<Result<Vec<_>>>()?;
    let mut offsets = vec![0];
    for (dx, dg) in &dims {
        offsets.push(offsets.last().unwrap() + dx * dg);
    }
    let total = offsets[n + 1];
    let mut morphisms = ab_generators(n);
    for e in extra {
        if e.rows() > n || e.cols() > n {
            return Err(Error::InvalidArgument(format!("extra morphism {}x{} exceeds rank {n}", e.rows(), e.cols())));
        }
        morphisms.push(e.clone());
    }
    let parts = par::try_map(exec, &morphisms, |phi| relation_columns(x, g, phi, &offsets, &dims, total))?;
    let relation_matrix = Matrix::hstack(&parts, ring, total)?;
    let value = if ring == Ring::Z {
        let (free_rank, torsion) = cokernel_summary(&relation_matrix)?;
        CoendValue { ring, free_rank, torsion }
    } else {
        CoendValue { ring, free_rank: total - relation_matrix.rank(), torsion: Vec::new() }
    };
    Ok(CoendPresentation {
        x: x.name(),
        g: g.name(),
        n,
        level: n - 1,
        generators: total,
        relations: relation_matrix.cols(),
        morphisms: morphisms.len(),
        value,
        relation_matrix,
    })
}

/// Random integer matrices with ranks in `0..=max_rank` and entries in `-3..=3`.
pub fn random_morphisms(count: usize, max_rank: usize, seed: u64) -> Vec<Matrix> {
    (0..count as u64)
        .map(|k| {
            let mut rng = case_rng(seed, k);
            let (b, a) = (rng.random_range(0..=max_rank), rng.random_range(0..=max_rank));
            let entries: Vec<i64> = (0..a * b).map(|_| rng.random_range(-3..=3)).collect();
            Matrix::from_i64(Ring::Z, b, a, &entries)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizeReport {
    pub n_min: usize,
    pub n_max: usize,
    pub levels: Vec<CoendPresentation>,
    /// Higher level of the first agreeing consecutive pair.
    pub stable_at: Option<usize>,
    pub value: Option<CoendValue>,
}

/// Computes levels from `n_min` upward until two consecutive ones agree.
pub fn stabilize(
    x: &dyn TabulatedFunctor,
    g: &dyn TabulatedFunctor,
    n_min: usize,
    n_max: usize,
    exec: Execution,
) -> Result<StabilizeReport> {
    if n_min < 2 || n_max < n_min {
        return Err(Error::Precondition(format!("need 2 <= n_min <= n_max, got {n_min}..{n_max}")));
    }
    let mut levels: Vec<CoendPresentation> = Vec::new();
    let mut stable_at = None;
    for n in n_min..=n_max {
        let p = functor_tensor(x, g, n, &[], exec)?;
        let agrees = levels.last().is_some_and(|q| q.value == p.value);
        levels.push(p);
        if agrees {
            stable_at = Some(n);
            break;
        }
    }
    let value = stable_at.map(|_| levels.last().unwrap().value.clone());
    Ok(StabilizeReport { n_min, n_max, levels, stable_at, value })
}

#[derive(Clone, Debug, Serialize)]
pub struct StableH1Report {
    pub functor: FunctorExpr,
    pub degree: usize,
    pub coend: StabilizeReport,
}

const DEGREE_BOUND: usize = 6;

/// The coend `F ⊗_ab Id`, stabilized, as the predicted stable `H_1` with
/// coefficients in a reduced contravariant polynomial functor `F`.
pub fn stable_h1(f: &FunctorExpr, ring: Ring, exec: Execution) -> Result<StableH1Report> {
    if f.variance()? != Variance::Contra {
        return Err(Error::Precondition(format!("{f} must be contravariant and non-constant")));
    }
    let x = ExprFunctor::new(f.clone(), ring)?;
    if x.dim(0)? != 0 {
        return Err(Error::Precondition(format!("{f} is not reduced")));
    }
    let deg = degree(&x, DEGREE_BOUND)?
        .ok_or_else(|| Error::Precondition(format!("{f} has degree > {DEGREE_BOUND}")))?;
    if deg == 0 {
        return Err(Error::Precondition(format!("{f} is zero")));
    }
    let id = ExprFunctor::new(FunctorExpr::Id, ring)?;
    let coend = stabilize(&x, &id, 2, deg + 3, exec)?;
    Ok(StableH1Report { functor: f.clone(), degree: deg, coend })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str, ring: Ring) -> ExprFunctor {
        ExprFunctor::new(FunctorExpr::parse(s).unwrap(), ring).unwrap()
    }

    #[test]
    fn dual_id_with_id_is_z() {
        let p = functor_tensor(&f("dual(id)", Ring::Z), &f("id", Ring::Z), 3, &[], Execution::Sequential).unwrap();
        assert_eq!((p.value.free_rank, p.value.torsion.len()), (1, 0));
        assert_eq!(p.value.to_string(), "Z");
        let s = stabilize(&f("dual(id)", Ring::Z), &f("id", Ring::Z), 2, 5, Execution::Parallel).unwrap();
        assert_eq!(s.stable_at, Some(3));
    }

    #[test]
    fn zero_cases() {
        let p = functor_tensor(&f("const(1)", Ring::Z), &f("id", Ring::Z), 3, &[], Execution::Sequential).unwrap();
        assert_eq!(p.value.to_string(), "0");
        let p = functor_tensor(&f("dual(id)", Ring::Z), &f("reduced(const(1))", Ring::Z), 3, &[], Execution::Sequential)
            .unwrap();
        assert_eq!(p.value.to_string(), "0");
    }

    #[test]
    fn single_level_has_unknown_stability() {
        let s = stabilize(&f("dual(id)", Ring::Q), &f("id", Ring::Q), 3, 3, Execution::Sequential).unwrap();
        assert_eq!((s.levels.len(), s.stable_at), (1, None));
    }

    #[test]
    fn stable_h1_preconditions() {
        let r = stable_h1(&FunctorExpr::parse("dual(id)").unwrap(), Ring::Z, Execution::Sequential).unwrap();
        assert_eq!(r.coend.value.unwrap().to_string(), "Z");
        for bad in ["const(1)", "id", "sum(dual(id),const(1))"] {
            assert!(stable_h1(&FunctorExpr::parse(bad).unwrap(), Ring::Z, Execution::Sequential).is_err(), "{bad}");
        }
    }

    #[test]
    fn extra_morphisms_do_not_change_the_value() {
        let (x, g) = (f("dual(id)", Ring::Z), f("id", Ring::Z));
        let base = functor_tensor(&x, &g, 3, &[], Execution::Sequential).unwrap();
        let more = functor_tensor(&x, &g, 3, &random_morphisms(12, 2, 5), Execution::Sequential).unwrap();
        assert_eq!(base.value, more.value);
    }
}
