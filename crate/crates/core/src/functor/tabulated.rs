//! Functors on ab given by their values on integer matrices.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use super::expr::{FunctorExpr, Variance};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Ring, Scalar, Subspace};
use crate::word::GrMorphism;

/// A functor `ab -> k-Mod` with finitely generated free values.
///
/// `on_matrix` takes a `b x a` integer matrix (a morphism `ℤ^a -> ℤ^b`). For
/// a covariant functor it returns a `dim(b) x dim(a)` matrix over the ring,
/// for a contravariant one a `dim(a) x dim(b)` matrix.
pub trait TabulatedFunctor: Send + Sync {
    fn ring(&self) -> Ring;
    fn variance(&self) -> Variance;
    fn dim(&self, m: usize) -> Result<usize>;
    fn on_matrix(&self, m: &Matrix) -> Result<Matrix>;
    fn name(&self) -> String;

    /// Value on a morphism of gr, through abelianization.
    fn on_morphism(&self, f: &GrMorphism) -> Result<Matrix> {
        self.on_matrix(&f.abelianize())
    }
}

pub type SharedFunctor = Arc<dyn TabulatedFunctor>;

fn check_integer(m: &Matrix) -> Result<()> {
    if m.ring() != Ring::Z {
        return Err(Error::Ring(format!("ab-morphisms are integer matrices, got {}", m.ring())));
    }
    Ok(())
}

/// Evaluation of a [`FunctorExpr`] over a ring.
pub struct ExprFunctor {
    expr: FunctorExpr,
    ring: Ring,
    variance: Variance,
    /// Reduced parts, keyed by (node id, rank).
    reduced: RwLock<HashMap<(usize, usize), Arc<Subspace>>>,
}

impl ExprFunctor {
    pub fn new(expr: FunctorExpr, ring: Ring) -> Result<Self> {
        let variance = expr.variance()?;
        Ok(ExprFunctor { expr, ring, variance, reduced: RwLock::new(HashMap::new()) })
    }

    pub fn shared(expr: FunctorExpr, ring: Ring) -> Result<SharedFunctor> {
        Ok(Arc::new(ExprFunctor::new(expr, ring)?))
    }

    pub fn expr(&self) -> &FunctorExpr {
        &self.expr
    }

    fn reduced_part(&self, e: &FunctorExpr, id: usize, m: usize) -> Result<Arc<Subspace>> {
        if let Some(s) = self.reduced.read().unwrap().get(&(id, m)) {
            return Ok(s.clone());
        }
        // F(m) = F(0) ⊕ ker F(ℤ^m -> 0 -> ℤ^m)
        let zero = self.eval(e, id, &Matrix::zeros(Ring::Z, m, m))?;
        let s = Arc::new(Subspace::kernel(&zero)?);
        self.reduced.write().unwrap().insert((id, m), s.clone());
        Ok(s)
    }

    fn eval(&self, e: &FunctorExpr, id: usize, m: &Matrix) -> Result<Matrix> {
        use FunctorExpr::*;
        let ring = self.ring;
        let (b, a) = m.shape();
        Ok(match e {
            Id => m.to_ring(ring)?,
            Const(r) => Matrix::identity(ring, *r),
            Dual(f) => self.eval(f, id + 1, m)?.transpose(),
            Tensor(f, g) => {
                let x = self.eval(f, id + 1, m)?;
                let y = self.eval(g, id + 1 + f.size(), m)?;
                x.kronecker(&y)
            }
            DirectSum(f, g) => {
                let x = self.eval(f, id + 1, m)?;
                let y = self.eval(g, id + 1 + f.size(), m)?;
                x.direct_sum(&y)
            }
            TensorPower(f, n) => self.eval(f, id + 1, m)?.kronecker_power(*n),
            Sym(n) => sym_power(&m.to_ring(ring)?, *n),
            Ext(n) => ext_power(&m.to_ring(ring)?, *n),
            Reduced(f) => {
                let full = self.eval(f, id + 1, m)?;
                let contra = f.variance()? == Variance::Contra;
                let (src, dst) = if contra { (b, a) } else { (a, b) };
                let s = self.reduced_part(f, id + 1, src)?;
                let t = self.reduced_part(f, id + 1, dst)?;
                t.coordinates_unchecked(&(&full * s.basis()))
            }
        })
    }
}

impl TabulatedFunctor for ExprFunctor {
    fn ring(&self) -> Ring {
        self.ring
    }

    fn variance(&self) -> Variance {
        self.variance
    }

    fn dim(&self, m: usize) -> Result<usize> {
        Ok(self.expr.dim(m))
    }

    fn on_matrix(&self, m: &Matrix) -> Result<Matrix> {
        check_integer(m)?;
        self.eval(&self.expr, 0, m)
    }

    fn name(&self) -> String {
        self.expr.to_string()
    }
}

/// Non-decreasing index tuples of length `n` over `0..m`, in lex order.
pub fn sym_basis(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in lo..m {
            cur.push(i);
            go(m, n, i, cur, out);
            cur.pop();
        }
    }
    go(m, n, 0, &mut cur, &mut out);
    out
}

/// Increasing index tuples of length `n` over `0..m`, in lex order.
pub fn ext_basis(m: usize, n: usize) -> Vec<Vec<usize>> {
    sym_basis(m, n).into_iter().filter(|t| t.windows(2).all(|w| w[0] < w[1])).collect()
}

fn sym_power(m: &Matrix, n: usize) -> Matrix {
    let ring = m.ring();
    let (b, a) = m.shape();
    let src = sym_basis(a, n);
    let dst = sym_basis(b, n);
    let index: HashMap<&[usize], usize> =
        dst.iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect();
    let mut out = Matrix::zeros(ring, dst.len(), src.len());
    for (col, mono) in src.iter().enumerate() {
        // expand prod_k (sum_j m[j][mono_k] e_j)
        let mut terms: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), ring.one())];
        for &i in mono {
            let mut next = Vec::new();
            for (t, c) in &terms {
                for j in 0..b {
                    let x = m.get(j, i);
                    if x.is_zero() {
                        continue;
                    }
                    let mut t2 = t.clone();
                    t2.push(j);
                    next.push((t2, ring.mul(c, x)));
                }
            }
            terms = next;
        }
        for (mut t, c) in terms {
            t.sort_unstable();
            let row = index[t.as_slice()];
            let v = ring.add(out.get(row, col), &c);
            out.set(row, col, v);
        }
    }
    out
}

fn ext_power(m: &Matrix, n: usize) -> Matrix {
    let (b, a) = m.shape();
    let src = ext_basis(a, n);
    let dst = ext_basis(b, n);
    let mut out = Matrix::zeros(m.ring(), dst.len(), src.len());
    for (r, rows) in dst.iter().enumerate() {
        let sub = m.select_rows(rows);
        for (c, cols) in src.iter().enumerate() {
            out.set(r, c, sub.select_cols(cols).determinant());
        }
    }
    out
}

/// Generating morphisms of ab within ranks `<= n`: elementary transvections
/// `E_ij(±1)`, transpositions, and the canonical injections and projections
/// between consecutive ranks.
pub fn ab_generators(n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for m in 1..=n {
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                for s in [1, -1] {
                    let mut e = Matrix::identity(Ring::Z, m);
                    e.set_i64(i, j, s);
                    out.push(e);
                }
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                let mut perm: Vec<usize> = (0..m).collect();
                perm.swap(i, j);
                out.push(Matrix::permutation(Ring::Z, &perm));
            }
        }
    }
    for m in 0..n {
        out.push(injection(m));
        out.push(projection(m));
    }
    out
}

/// `ℤ^m -> ℤ^{m+1}` onto the first `m` coordinates.
pub fn injection(m: usize) -> Matrix {
    let mut e = Matrix::zeros(Ring::Z, m + 1, m);
    for i in 0..m {
        e.set_i64(i, i, 1);
    }
    e
}

/// `ℤ^{m+1} -> ℤ^m` forgetting the last coordinate.
pub fn projection(m: usize) -> Matrix {
    injection(m).transpose()
}

/// Checks `F(AB) = F(A)F(B)` (or `F(B)F(A)` if contravariant) and `F(I) = I`.
pub fn check_functoriality(f: &dyn TabulatedFunctor, a: &Matrix, b: &Matrix) -> Result<bool> {
    let ab = a.checked_mul(b)?;
    let fab = f.on_matrix(&ab)?;
    let (fa, fb) = (f.on_matrix(a)?, f.on_matrix(b)?);
    let prod = if f.variance() == Variance::Contra { fb.checked_mul(&fa)? } else { fa.checked_mul(&fb)? };
    let id = f.on_matrix(&Matrix::identity(Ring::Z, b.cols()))?;
    Ok(prod == fab && id.is_identity())
}

type Components = dyn Fn(usize) -> Result<Matrix> + Send + Sync;

/// Natural transformation between functors of the same variance, given by
/// its components at each rank.
#[derive(Clone)]
pub struct NatTransformation {
    source: SharedFunctor,
    target: SharedFunctor,
    component: Arc<Components>,
    cache: Arc<RwLock<HashMap<usize, Matrix>>>,
}

impl NatTransformation {
    pub fn new(
        source: SharedFunctor,
        target: SharedFunctor,
        component: impl Fn(usize) -> Result<Matrix> + Send + Sync + 'static,
    ) -> Result<Self> {
        let (vs, vt) = (source.variance(), target.variance());
        if vs != vt && vs != Variance::Both && vt != Variance::Both {
            return Err(Error::Variance(format!("{} -> {}", source.name(), target.name())));
        }
        Ok(NatTransformation {
            source,
            target,
            component: Arc::new(component),
            cache: Arc::new(RwLock::new(HashMap::new())),
        })
    }

    pub fn source(&self) -> &SharedFunctor {
        &self.source
    }

    pub fn target(&self) -> &SharedFunctor {
        &self.target
    }

    /// `η_m: F(m) -> G(m)`.
    pub fn at(&self, m: usize) -> Result<Matrix> {
        if let Some(c) = self.cache.read().unwrap().get(&m) {
            return Ok(c.clone());
        }
        let c = (self.component)(m)?;
        let expect = (self.target.dim(m)?, self.source.dim(m)?);
        if c.shape() != expect {
            return Err(Error::Shape(format!(
                "component at rank {m} is {:?}, expected {expect:?}",
                c.shape()
            )));
        }
        self.cache.write().unwrap().insert(m, c.clone());
        Ok(c)
    }

    /// Naturality square for one matrix `φ: ℤ^a -> ℤ^b`.
    pub fn is_natural_at(&self, phi: &Matrix) -> Result<bool> {
        let (b, a) = phi.shape();
        let fs = self.source.on_matrix(phi)?;
        let gs = self.target.on_matrix(phi)?;
        Ok(if self.source.variance() == Variance::Contra {
            &self.at(a)? * &fs == &gs * &self.at(b)?
        } else {
            &gs * &self.at(a)? == &self.at(b)? * &fs
        })
    }

    /// Naturality on all generating morphisms within ranks `<= n`.
    pub fn check_naturality(&self, n: usize) -> Result<bool> {
        for g in ab_generators(n) {
            if !self.is_natural_at(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Pointwise kernel of a natural transformation.
pub struct KernelFunctor {
    eta: NatTransformation,
    cache: RwLock<HashMap<usize, Arc<Subspace>>>,
}

impl KernelFunctor {
    pub fn new(eta: NatTransformation) -> Self {
        KernelFunctor { eta, cache: RwLock::new(HashMap::new()) }
    }

    pub fn subspace(&self, m: usize) -> Result<Arc<Subspace>> {
        if let Some(s) = self.cache.read().unwrap().get(&m) {
            return Ok(s.clone());
        }
        let s = Arc::new(Subspace::kernel(&self.eta.at(m)?)?);
        self.cache.write().unwrap().insert(m, s.clone());
        Ok(s)
    }
}

impl TabulatedFunctor for KernelFunctor {
    fn ring(&self) -> Ring {
        self.eta.source.ring()
    }

    fn variance(&self) -> Variance {
        self.eta.source.variance()
    }

    fn dim(&self, m: usize) -> Result<usize> {
        Ok(self.subspace(m)?.dim())
    }

    fn on_matrix(&self, m: &Matrix) -> Result<Matrix> {
        let (b, a) = m.shape();
        let (src, dst) = if self.variance() == Variance::Contra { (b, a) } else { (a, b) };
        let full = self.eta.source.on_matrix(m)?;
        let (s, t) = (self.subspace(src)?, self.subspace(dst)?);
        Ok(t.coordinates_unchecked(&(&full * s.basis())))
    }

    fn name(&self) -> String {
        format!("ker({} -> {})", self.eta.source.name(), self.eta.target.name())
    }
}
