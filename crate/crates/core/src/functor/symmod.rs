//! Representations of the symmetric group given by adjacent transpositions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Ring, Scalar};

/// A `k[𝔖_n]`-module: matrices of `s_i = (i, i+1)` for `1 <= i < n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymModule {
    n: usize,
    ring: Ring,
    dim: usize,
    generators: Vec<Matrix>,
}

/// All permutations of `0..n` in lex order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

impl SymModule {
    /// Validates the Coxeter relations.
    pub fn new(n: usize, ring: Ring, generators: Vec<Matrix>) -> Result<Self> {
        if generators.len() != n.saturating_sub(1) {
            return Err(Error::InvalidArgument(format!(
                "S_{n} needs {} generators, got {}",
                n.saturating_sub(1),
                generators.len()
            )));
        }
        let dim = generators.first().map_or(0, Matrix::rows);
        for g in &generators {
            if g.shape() != (dim, dim) || g.ring() != ring {
                return Err(Error::Shape("generator matrices must share shape and ring".into()));
            }
        }
        let m = SymModule { n, ring, dim, generators };
        m.check_relations()?;
        Ok(m)
    }

    /// Module with given dimension when `n <= 1` (no generators).
    pub fn without_generators(n: usize, ring: Ring, dim: usize) -> Self {
        assert!(n <= 1);
        SymModule { n, ring, dim, generators: Vec::new() }
    }

    fn check_relations(&self) -> Result<()> {
        let id = Matrix::identity(self.ring, self.dim);
        let g = &self.generators;
        for i in 0..g.len() {
            if &g[i] * &g[i] != id {
                return Err(Error::InvalidArgument(format!("s_{} is not an involution", i + 1)));
            }
            for j in i + 1..g.len() {
                let p = &g[i] * &g[j];
                let order = if j == i + 1 { 3 } else { 2 };
                let mut q = id.clone();
                for _ in 0..order {
                    q = &q * &p;
                }
                if q != id {
                    return Err(Error::InvalidArgument(format!(
                        "(s_{} s_{})^{order} != 1",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(n: usize, ring: Ring) -> Self {
        let one = Matrix::identity(ring, 1);
        if n <= 1 {
            return SymModule::without_generators(n, ring, 1);
        }
        SymModule { n, ring, dim: 1, generators: vec![one; n - 1] }
    }

    pub fn sign(n: usize, ring: Ring) -> Self {
        if n <= 1 {
            return SymModule::without_generators(n, ring, 1);
        }
        let m = Matrix::from_i64(ring, 1, 1, &[-1]);
        SymModule { n, ring, dim: 1, generators: vec![m; n - 1] }
    }

    /// `k[𝔖_n]` with basis the permutations in lex order, `s · e_g = e_{s∘g}`.
    pub fn regular(n: usize, ring: Ring) -> Self {
        let perms = permutations(n);
        let index: std::collections::HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(k, p)| (p.as_slice(), k)).collect();
        let generators = (0..n.saturating_sub(1))
            .map(|i| {
                let image: Vec<usize> = perms
                    .iter()
                    .map(|g| {
                        let sg: Vec<usize> = g
                            .iter()
                            .map(|&x| if x == i { i + 1 } else if x == i + 1 { i } else { x })
                            .collect();
                        index[sg.as_slice()]
                    })
                    .collect();
                Matrix::permutation(ring, &image)
            })
            .collect();
        SymModule { n, ring, dim: perms.len(), generators }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix of `s_{i+1}`, zero-based.
    pub fn generator(&self, i: usize) -> &Matrix {
        &self.generators[i]
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// Matrix of the word `s_{w_1+1} s_{w_2+1} ...` (zero-based indices).
    pub fn word_action(&self, word: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.ring, self.dim);
        for &i in word {
            m = &m * &self.generators[i];
        }
        m
    }

    /// Matrix of the transposition `(i j)`, zero-based, `i < j`.
    pub fn transposition(&self, i: usize, j: usize) -> Matrix {
        assert!(i < j && j < self.n);
        // (i j) = s_i s_{i+1} ... s_{j-2} s_{j-1} s_{j-2} ... s_i
        let mut w: Vec<usize> = (i..j).collect();
        w.extend((i..j - 1).rev());
        self.word_action(&w)
    }

    /// Character values: every transposition `(i j)` and the `n`-cycle
    /// `s_1 s_2 ... s_{n-1}`, plus the dimension.
    pub fn character(&self) -> Character {
        let mut transpositions = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                transpositions.push(((i + 1, j + 1), self.transposition(i, j).trace()));
            }
        }
        let cycle: Vec<usize> = (0..self.n.saturating_sub(1)).collect();
        Character {
            dim: self.dim,
            transpositions,
            n_cycle: self.word_action(&cycle).trace(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    pub dim: usize,
    #[serde(serialize_with = "ser_pairs")]
    pub transpositions: Vec<((usize, usize), Scalar)>,
    #[serde(serialize_with = "ser_scalar")]
    pub n_cycle: Scalar,
}

fn ser_scalar<S: serde::Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::linalg::scalar_to_string(x))
}

fn ser_pairs<S: serde::Serializer>(
    v: &[((usize, usize), Scalar)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|((i, j), x)| (format!("({i} {j})"), crate::linalg::scalar_to_string(x))))
}
