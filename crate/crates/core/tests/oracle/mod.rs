//! Small independent reference implementations used by the integration
//! tests. Nothing here calls into the engine.

#![allow(dead_code)]

use std::collections::HashMap;

/// A word in a free group: `k` is the generator `e_k`, `-k` its inverse.
pub type Word = Vec<i32>;
/// Images of the generators of the source.
pub type Hom = Vec<Word>;

pub fn reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|x| -x).collect()
}

pub fn gen(k: usize) -> Word {
    vec![k as i32]
}

/// `f(w)` where `f` sends `e_k` to `f[k-1]`.
pub fn apply(f: &Hom, w: &[i32]) -> Word {
    let mut out = Vec::new();
    for &x in w {
        let img = &f[x.unsigned_abs() as usize - 1];
        if x > 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(inverse(img));
        }
    }
    reduce(&out)
}

/// `g ∘ f`.
pub fn compose(g: &Hom, f: &Hom) -> Hom {
    f.iter().map(|w| apply(g, w)).collect()
}

pub fn identity(n: usize) -> Hom {
    (1..=n).map(gen).collect()
}

/// Free product `f * g`, with `g` acting on the generators after those of `f`.
pub fn free_product(f: &Hom, f_dst: usize, g: &Hom) -> Hom {
    let mut out = f.clone();
    for w in g {
        out.push(w.iter().map(|&x| if x > 0 { x + f_dst as i32 } else { x - f_dst as i32 }).collect());
    }
    out
}

// ------------------------------------------------------------- bar faces

/// `a^{n,r}`: `e_k -> e_{k+1}`.
pub fn face_a(n: usize, r: usize) -> Hom {
    (2..=n + r + 1).map(gen).collect()
}

/// `b_i^{n,r}`: `e_i -> e_i e_{i+1}`, later generators shifted by one.
pub fn face_b(i: usize, n: usize, r: usize) -> Hom {
    let mut out: Hom = (1..i).map(gen).collect();
    out.push(vec![i as i32, i as i32 + 1]);
    out.extend((i + 2..=n + r + 1).map(gen));
    out
}

/// `c^{n,r}`: skips `e_{n+1}`.
pub fn face_c(n: usize, r: usize) -> Hom {
    (1..=n).chain(n + 2..=n + r + 1).map(gen).collect()
}

pub type Sum = HashMap<Hom, i64>;

pub fn bar(n: usize, r: usize) -> Sum {
    let mut s = Sum::new();
    let mut add = |h: Hom, c: i64| *s.entry(h).or_insert(0) += c;
    add(face_a(n, r), 1);
    for i in 1..=n {
        add(face_b(i, n, r), if i % 2 == 0 { 1 } else { -1 });
    }
    add(face_c(n, r), if n % 2 == 1 { 1 } else { -1 });
    s.retain(|_, c| *c != 0);
    s
}

/// Bilinear extension of composition, `s ∘ t`.
pub fn compose_sums(s: &Sum, t: &Sum) -> Sum {
    let mut out = Sum::new();
    for (g, a) in s {
        for (f, b) in t {
            *out.entry(compose(g, f)).or_insert(0) += a * b;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Abelianization as a `dst x src` integer matrix.
pub fn abelianize(f: &Hom, dst: usize) -> Vec<Vec<i128>> {
    let mut m = vec![vec![0i128; f.len()]; dst];
    for (j, w) in f.iter().enumerate() {
        for &x in w {
            m[x.unsigned_abs() as usize - 1][j] += x.signum() as i128;
        }
    }
    m
}

// ------------------------------------------------------------- integer linear algebra

pub type Mat = Vec<Vec<i128>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![0; c]; r]
}

pub fn eye(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn transpose(m: &Mat, rows: usize, cols: usize) -> Mat {
    (0..cols).map(|j| (0..rows).map(|i| m[i][j]).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat, inner: usize, cols: usize) -> Mat {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (br, bc) = (b.len(), b.first().map_or(0, Vec::len));
    let ac = a.first().map_or(0, Vec::len);
    let mut out = zeros(a.len() * br, ac * bc);
    for (i, ar) in a.iter().enumerate() {
        for (j, &x) in ar.iter().enumerate() {
            for (k, brow) in b.iter().enumerate() {
                for (l, &y) in brow.iter().enumerate() {
                    out[i * br + k][j * bc + l] = x * y;
                }
            }
        }
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, x, y)` with `g = gcd(a, b) = x a + y b`, `g >= 0`.
fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1, 0, 0, 1);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 { (-r0, -s0, -t0) } else { (r0, s0, t0) }
}

/// Row-echelon basis of a sublattice of `ℤ^n`, grown one vector at a time.
pub struct Lattice {
    n: usize,
    /// `rows[p]` has its pivot at column `p`, if present.
    rows: Vec<Option<Vec<i128>>>,
}

impl Lattice {
    pub fn new(n: usize) -> Self {
        Lattice { n, rows: vec![None; n] }
    }

    pub fn insert(&mut self, mut v: Vec<i128>) {
        for p in 0..self.n {
            if v[p] == 0 {
                continue;
            }
            match self.rows[p].take() {
                None => {
                    if v[p] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.rows[p] = Some(v);
                    return;
                }
                Some(b) => {
                    let (g, x, y) = xgcd(b[p], v[p]);
                    let (bp, vp) = (b[p] / g, v[p] / g);
                    let new_b: Vec<i128> = (0..self.n).map(|k| x * b[k] + y * v[k]).collect();
                    let new_v: Vec<i128> = (0..self.n).map(|k| bp * v[k] - vp * b[k]).collect();
                    self.rows[p] = Some(new_b);
                    v = new_v;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().flatten().count()
    }

    pub fn basis(&self) -> Mat {
        self.rows.iter().flatten().cloned().collect()
    }
}

pub fn rank(rows: &Mat, cols: usize) -> usize {
    let mut l = Lattice::new(cols);
    for r in rows {
        l.insert(r.clone());
    }
    l.rank()
}

/// Nonzero invariant factors of an integer matrix, ascending.
pub fn invariant_factors(m: &Mat, cols: usize) -> Vec<i128> {
    let mut a: Mat = m.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let rows = a.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t] / a[t][t];
            if q != 0 {
                for k in t..cols {
                    a[i][k] -= q * a[t][k];
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / a[t][t];
            if q != 0 {
                for row in a.iter_mut() {
                    row[j] -= q * row[t];
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        let p = a[t][t];
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
            for k in t..cols {
                a[t][k] += a[i][k];
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out.sort();
    out
}

/// Homology of `C_0 <- C_1 <- ...` at `n` over ℤ from `dims` and
/// `d[k]: C_{k+1} -> C_k`: `(free rank, torsion)`.
pub fn homology(dims: &[usize], d: &[Mat], n: usize) -> (usize, Vec<i128>) {
    let rank_out = if n == 0 { 0 } else { rank(&d[n - 1], dims[n]) };
    let (rank_in, torsion) = match d.get(n) {
        Some(m) => {
            let f = invariant_factors(m, dims[n + 1]);
            (f.len(), f.into_iter().filter(|&x| x > 1).collect())
        }
        None => (0, Vec::new()),
    };
    (dims[n] - rank_out - rank_in, torsion)
}

pub fn determinant(m: &Mat) -> i128 {
    // fraction-free Bareiss
    let n = m.len();
    let mut a = m.clone();
    let (mut sign, mut prev) = (1i128, 1i128);
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 { 1 } else { sign * a[n - 1][n - 1] }
}

/// All `rows x cols` matrices with entries in `-1..=1`.
pub fn unit_entry_matrices(rows: usize, cols: usize) -> Vec<Mat> {
    let cells = rows * cols;
    let total = 3usize.pow(cells as u32);
    (0..total)
        .map(|mut code| {
            let mut m = zeros(rows, cols);
            for k in 0..cells {
                m[k / cols][k % cols] = (code % 3) as i128 - 1;
                code /= 3;
            }
            m
        })
        .collect()
}

// ------------------------------------------------------------- functors on ab

/// Non-decreasing `k`-tuples over `0..n`, lex order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for t in multisets(n, k - 1) {
        let lo = t.last().copied().unwrap_or(0);
        for x in lo..n {
            let mut s = t.clone();
            s.push(x);
            out.push(s);
        }
    }
    out
}

/// Strictly increasing `k`-tuples over `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    multisets(n, k).into_iter().filter(|t| t.windows(2).all(|w| w[0] < w[1])).collect()
}

/// All `k`-tuples over `0..n`.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n.pow(k as u32))
        .map(|mut c| {
            let mut t = vec![0; k];
            for x in t.iter_mut().rev() {
                *x = c % n;
                c /= n;
            }
            t
        })
        .collect()
}

/// `Sym^k(f)` on monomial bases, `f` a `dst x src` matrix.
pub fn sym_power(f: &Mat, src: usize, dst: usize, k: usize) -> Mat {
    let (rows, cols) = (multisets(dst, k), multisets(src, k));
    let index: HashMap<Vec<usize>, usize> = rows.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let mut out = zeros(rows.len(), cols.len());
    for (j, mono) in cols.iter().enumerate() {
        for t in tuples(dst, k) {
            let c: i128 = t.iter().zip(mono).map(|(&l, &i)| f[l][i]).product();
            if c != 0 {
                let mut s = t.clone();
                s.sort();
                out[index[&s]][j] += c;
            }
        }
    }
    out
}

/// `Λ^k(f)`: entries are `k x k` minors.
pub fn ext_power(f: &Mat, src: usize, dst: usize, k: usize) -> Mat {
    let (rows, cols) = (subsets(dst, k), subsets(src, k));
    rows.iter()
        .map(|r| {
            cols.iter()
                .map(|c| determinant(&r.iter().map(|&i| c.iter().map(|&j| f[i][j]).collect()).collect()))
                .collect()
        })
        .collect()
}

pub fn tensor_power(f: &Mat, k: usize) -> Mat {
    (1..k).fold(f.clone(), |acc, _| kron(&acc, f))
}

/// The covariant functors of the degree table, as `(name, F(f), dim F(n))`.
pub fn functor_value(name: &str, f: &Mat, src: usize, dst: usize) -> Mat {
    match name {
        "id" => f.clone(),
        "pow(id,2)" => tensor_power(f, 2),
        "pow(id,3)" => tensor_power(f, 3),
        "sym(2)" => sym_power(f, src, dst, 2),
        "sym(3)" => sym_power(f, src, dst, 3),
        "ext(2)" => ext_power(f, src, dst, 2),
        "ext(3)" => ext_power(f, src, dst, 3),
        other => panic!("no oracle for {other}"),
    }
}

/// `dim cr_n F(ℤ,...,ℤ)` as the joint kernel of `F(p_i)`, `p_i` killing the
/// `i`-th summand.
pub fn cross_effect_dim(name: &str, n: usize) -> usize {
    let mut stacked = Vec::new();
    let mut dim = 0;
    for i in 0..n {
        let mut p = eye(n);
        p[i][i] = 0;
        let m = functor_value(name, &p, n, n);
        dim = m.len();
        stacked.extend(m);
    }
    if n == 0 {
        return 0;
    }
    dim - rank(&stacked, dim)
}

pub fn trace(m: &Mat) -> i128 {
    (0..m.len()).map(|i| m[i][i]).sum()
}

// ------------------------------------------------------------- arbitrary precision

pub type BigMat = Vec<Vec<num_bigint::BigInt>>;

pub fn big_mul(a: &BigMat, b: &BigMat, inner: usize, cols: usize) -> BigMat {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect())
        .collect()
}

/// Fraction-free Bareiss determinant.
pub fn big_determinant(m: &BigMat) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.clone();
    let (mut sign, mut prev) = (BigInt::from(1), BigInt::from(1));
    let zero = BigInt::from(0);
    for k in 0..n {
        if a[k][k] == zero {
            match (k + 1..n).find(|&i| a[i][k] != zero) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return zero,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
