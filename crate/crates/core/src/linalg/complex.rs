use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::ring::Ring;
use super::snf::invariant_factors;
use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Finite chain complex `C_0 <-d_1- C_1 <-d_2- ... <-d_N- C_N`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainComplex {
    ring: Ring,
    /// `boundaries[n - 1]` is `d_n`.
    boundaries: Vec<Matrix>,
}

/// One homology group: free rank plus (over Z) torsion divisors `> 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub ring: Ring,
    pub degree: usize,
    pub free_rank: usize,
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let base = match self.ring {
            Ring::Z => "Z".to_string(),
            Ring::Q => "Q".to_string(),
            Ring::Fp(p) => format!("F{p}"),
        };
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(base),
            r => parts.push(format!("{base}^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

impl ChainComplex {
    /// Builds a complex from `d_1, d_2, ...`, checking shapes and `d_n d_{n+1} = 0`.
    pub fn new(ring: Ring, boundaries: Vec<Matrix>) -> Result<ChainComplex> {
        for (i, d) in boundaries.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::Ring(format!("d_{} is over {}, expected {ring}", i + 1, d.ring())));
            }
        }
        for (i, w) in boundaries.windows(2).enumerate() {
            if w[0].cols() != w[1].rows() {
                return Err(Error::Shape(format!(
                    "d_{} has {} columns but d_{} has {} rows",
                    i + 1,
                    w[0].cols(),
                    i + 2,
                    w[1].rows()
                )));
            }
            if !(&w[0] * &w[1]).is_zero() {
                return Err(Error::NotAComplex { degree: i + 1 });
            }
        }
        Ok(ChainComplex { ring, boundaries })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Number of boundaries provided.
    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    /// `d_n` for `1 <= n <= len`.
    pub fn boundary(&self, n: usize) -> Option<&Matrix> {
        n.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn boundaries(&self) -> &[Matrix] {
        &self.boundaries
    }

    /// Dimension of `C_n`, if determined by the provided boundaries.
    pub fn dim(&self, n: usize) -> Option<usize> {
        if n == 0 {
            self.boundaries.first().map(Matrix::rows)
        } else {
            self.boundary(n).map(Matrix::cols)
        }
    }

    /// `H_n`; a missing `d_{n+1}` is read as the zero map.
    pub fn homology(&self, n: usize) -> Result<HomologyGroup> {
        let dim = self.dim(n).ok_or_else(|| {
            Error::Precondition(format!("C_{n} is not determined by {} boundaries", self.len()))
        })?;
        let rank_in = if n == 0 { 0 } else { self.boundary(n).unwrap().rank() };
        let (rank_out, torsion) = match self.boundary(n + 1) {
            None => (0, Vec::new()),
            Some(d) if self.ring == Ring::Z => {
                // C_n / ker d_n is free, so the torsion of H_n is that of coker d_{n+1}
                let divs = invariant_factors(d)?;
                let rank = divs.len();
                (rank, divs.into_iter().filter(|x| *x != BigInt::from(1)).collect())
            }
            Some(d) => (d.rank(), Vec::new()),
        };
        Ok(HomologyGroup {
            ring: self.ring,
            degree: n,
            free_rank: dim - rank_in - rank_out,
            torsion,
        })
    }

    /// Homology in several degrees, computed independently.
    pub fn homology_many(&self, degrees: &[usize], exec: Execution) -> Result<Vec<HomologyGroup>> {
        par::try_map(exec, degrees, |&n| self.homology(n))
    }

    /// The dual complex over a field: `d_n^T` in reversed order.
    pub fn dual(&self) -> ChainComplex {
        let boundaries = self.boundaries.iter().rev().map(Matrix::transpose).collect();
        ChainComplex { ring: self.ring, boundaries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn times_two(ring: Ring) -> ChainComplex {
        ChainComplex::new(ring, vec![Matrix::from_rows(ring, &[vec![2]])]).unwrap()
    }

    #[test]
    fn multiplication_by_two() {
        let c = times_two(Ring::Z);
        let h0 = c.homology(0).unwrap();
        assert_eq!((h0.free_rank, h0.torsion.clone()), (0, vec![BigInt::from(2)]));
        assert_eq!(h0.to_string(), "Z/2");
        assert!(c.homology(1).unwrap().is_zero());

        let c = times_two(Ring::Fp(2));
        assert_eq!(c.homology(0).unwrap().free_rank, 1);
        assert_eq!(c.homology(1).unwrap().free_rank, 1);
    }

    #[test]
    fn zero_maps() {
        let z = Matrix::zeros(Ring::Q, 1, 1);
        let c = ChainComplex::new(Ring::Q, vec![z.clone(), z.clone(), z]).unwrap();
        for n in 0..=3 {
            assert_eq!(c.homology(n).unwrap().free_rank, 1);
        }
        assert!(c.homology(4).is_err());
    }

    #[test]
    fn rejects_non_complex() {
        let one = Matrix::identity(Ring::Z, 1);
        assert_eq!(
            ChainComplex::new(Ring::Z, vec![one.clone(), one]).unwrap_err(),
            Error::NotAComplex { degree: 1 }
        );
    }

    #[test]
    fn homology_json() {
        let h = times_two(Ring::Z).homology(0).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"ring":"z","degree":0,"free_rank":0,"torsion":["2"]}"#);
    }
}
