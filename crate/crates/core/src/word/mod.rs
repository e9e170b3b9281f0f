//! Reduced words in free groups and morphisms of **gr** as word tuples.

mod nielsen;
mod parse;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Ring};

pub use nielsen::{invert_automorphism, is_basis, nielsen_reduce, NielsenMove, NielsenRecord};
pub use parse::{parse_morphism, parse_word, parse_word_list};

/// A signed generator: `+k` is `x_k`, `-k` is `x_k^-1`. Never zero.
pub type Letter = i32;

/// A freely reduced word in the free group of rank `rank`.
///
/// Construction always reduces, so two words are equal as group elements iff
/// they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FreeWord {
    letters: Vec<Letter>,
    rank: usize,
}

/// Free reduction of a raw letter sequence.
pub fn reduce(letters: &[Letter], rank: usize) -> Result<FreeWord> {
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if l == 0 {
            return Err(Error::ZeroIndex);
        }
        let index = l.unsigned_abs() as usize;
        if index > rank {
            return Err(Error::IndexOutOfRange { index, rank });
        }
        if stack.last() == Some(&-l) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Ok(FreeWord { letters: stack, rank })
}

impl FreeWord {
    pub fn new(letters: Vec<Letter>, rank: usize) -> Result<Self> {
        reduce(&letters, rank)
    }

    pub fn identity(rank: usize) -> Self {
        FreeWord { letters: Vec::new(), rank }
    }

    /// The generator `x_index` (1-based).
    pub fn generator(index: usize, rank: usize) -> Self {
        assert!(index >= 1 && index <= rank, "generator x{index} not in rank {rank}");
        FreeWord { letters: vec![index as Letter], rank }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
            rank: self.rank,
        }
    }

    /// Group product `self * other`.
    pub fn mul(&self, other: &FreeWord) -> Self {
        assert_eq!(self.rank, other.rank, "multiplying words of different ranks");
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            if letters.last() == Some(&-l) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        FreeWord { letters, rank: self.rank }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity(self.rank);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Same letters, viewed in another ambient rank.
    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        reduce(&self.letters, rank)
    }

    /// Shifts every generator index by `offset`, landing in rank `rank`.
    pub fn shifted(&self, offset: usize, rank: usize) -> Self {
        let letters = self
            .letters
            .iter()
            .map(|&l| if l > 0 { l + offset as Letter } else { l - offset as Letter })
            .collect();
        let w = FreeWord { letters, rank };
        debug_assert!(w.letters.iter().all(|l| l.unsigned_abs() as usize <= rank));
        w
    }

    /// Exponent sum of each generator, i.e. the image in the abelianization.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }

    /// Substitutes `images[k-1]` for `x_k`; all images must share `dst_rank`.
    pub fn substitute(&self, images: &[FreeWord], dst_rank: usize) -> FreeWord {
        let mut out = FreeWord::identity(dst_rank);
        for &l in &self.letters {
            let w = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                out = out.mul(w);
            } else {
                out = out.mul(&w.inverse());
            }
        }
        out
    }

    /// Ordering by length first, then letter content with
    /// `x1 < x1^-1 < x2 < x2^-1 < ...`.
    pub fn shortlex_cmp(&self, other: &FreeWord) -> Ordering {
        fn key(l: Letter) -> (u32, bool) {
            (l.unsigned_abs(), l < 0)
        }
        self.len().cmp(&other.len()).then_with(|| {
            self.letters
                .iter()
                .map(|&l| key(l))
                .cmp(other.letters.iter().map(|&l| key(l)))
        })
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank.cmp(&other.rank).then_with(|| self.shortlex_cmp(other))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if l > 0 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

/// A group homomorphism `F_src -> F_dst`, stored as the images of the
/// generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct GrMorphism {
    src: usize,
    dst: usize,
    images: Vec<FreeWord>,
}

impl GrMorphism {
    pub fn new(src: usize, dst: usize, images: Vec<FreeWord>) -> Result<Self> {
        if images.len() != src {
            return Err(Error::RankMismatch { expected: src, found: images.len() });
        }
        for w in &images {
            if w.rank() != dst {
                return Err(Error::RankMismatch { expected: dst, found: w.rank() });
            }
        }
        Ok(GrMorphism { src, dst, images })
    }

    /// Builds a morphism from raw letter tuples, reducing each image.
    pub fn from_letters(dst: usize, images: &[&[Letter]]) -> Result<Self> {
        let images = images
            .iter()
            .map(|ls| reduce(ls, dst))
            .collect::<Result<Vec<_>>>()?;
        GrMorphism::new(images.len(), dst, images)
    }

    pub fn identity(n: usize) -> Self {
        GrMorphism {
            src: n,
            dst: n,
            images: (1..=n).map(|i| FreeWord::generator(i, n)).collect(),
        }
    }

    /// The unique morphism `F_0 -> F_n`.
    pub fn from_trivial(n: usize) -> Self {
        GrMorphism { src: 0, dst: n, images: Vec::new() }
    }

    /// The trivial morphism `F_src -> F_dst`.
    pub fn trivial(src: usize, dst: usize) -> Self {
        GrMorphism { src, dst, images: vec![FreeWord::identity(dst); src] }
    }

    /// Canonical inclusion `u(A, T): A -> T * A`, onto the last block.
    pub fn inclusion_last(a: usize, t: usize) -> Self {
        let n = t + a;
        GrMorphism {
            src: a,
            dst: n,
            images: (1..=a).map(|i| FreeWord::generator(t + i, n)).collect(),
        }
    }

    /// Canonical inclusion `A -> A * B` onto the first block.
    pub fn inclusion_first(a: usize, b: usize) -> Self {
        let n = a + b;
        GrMorphism {
            src: a,
            dst: n,
            images: (1..=a).map(|i| FreeWord::generator(i, n)).collect(),
        }
    }

    /// Retraction `T * A -> A` killing the first `t` generators.
    pub fn projection_last(a: usize, t: usize) -> Self {
        let n = t + a;
        let mut images = vec![FreeWord::identity(a); t];
        images.extend((1..=a).map(|i| FreeWord::generator(i, a)));
        GrMorphism { src: n, dst: a, images }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        assert_eq!(w.rank(), self.src, "word not in the source group");
        w.substitute(&self.images, self.dst)
    }

    /// `g ∘ f`.
    pub fn compose(g: &GrMorphism, f: &GrMorphism) -> Result<GrMorphism> {
        if f.dst != g.src {
            return Err(Error::RankMismatch { expected: g.src, found: f.dst });
        }
        Ok(GrMorphism {
            src: f.src,
            dst: g.dst,
            images: f.images.iter().map(|w| g.apply(w)).collect(),
        })
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &GrMorphism) -> Result<GrMorphism> {
        GrMorphism::compose(self, f)
    }

    /// `f * g : A * C -> B * D`, second block shifted past `f.dst`.
    pub fn free_product(f: &GrMorphism, g: &GrMorphism) -> GrMorphism {
        let dst = f.dst + g.dst;
        let mut images: Vec<FreeWord> = f.images.iter().map(|w| w.shifted(0, dst)).collect();
        images.extend(g.images.iter().map(|w| w.shifted(f.dst, dst)));
        GrMorphism { src: f.src + g.src, dst, images }
    }

    /// Matrix of the induced map on abelianizations, `dst x src` over Z.
    /// Column `j` is the exponent-sum vector of image `j`.
    pub fn abelianize(&self) -> Matrix {
        let mut m = Matrix::zeros(Ring::Z, self.dst, self.src);
        for (j, w) in self.images.iter().enumerate() {
            for (i, e) in w.exponent_sums().into_iter().enumerate() {
                if e != 0 {
                    m.set_i64(i, j, e);
                }
            }
        }
        m
    }

    pub fn is_automorphism(&self) -> bool {
        self.src == self.dst && is_basis(&self.images, self.dst)
    }

    pub fn total_length(&self) -> usize {
        self.images.iter().map(FreeWord::len).sum()
    }
}

impl fmt::Display for GrMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ") : {} -> {}", self.src, self.dst)
    }
}

/// All reduced words of length `1..=max_len` in the given rank, shortlex
/// ordered, followed by the identity.
pub fn enumerate_words(rank: usize, max_len: usize) -> Vec<FreeWord> {
    let alphabet: Vec<Letter> = (1..=rank as Letter).flat_map(|i| [i, -i]).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                if w.last() == Some(&-l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|ls| FreeWord { letters: ls.clone(), rank }));
        layer = next;
    }
    out.push(FreeWord::identity(rank));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ls: &[Letter], rank: usize) -> FreeWord {
        reduce(ls, rank).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(w(&[1, -1], 1).is_identity());
        assert_eq!(w(&[1, 2, -2, 1], 2).letters(), &[1, 1]);
        assert!(w(&[], 0).is_identity());
        assert_eq!(reduce(&[3], 2), Err(Error::IndexOutOfRange { index: 3, rank: 2 }));
        assert_eq!(reduce(&[0], 2), Err(Error::ZeroIndex));
    }

    #[test]
    fn compose_examples() {
        let f = GrMorphism::from_letters(3, &[&[2], &[3]]).unwrap();
        let g = GrMorphism::from_letters(2, &[&[1, 2]]).unwrap();
        let h = GrMorphism::compose(&f, &g).unwrap();
        assert_eq!(h, GrMorphism::from_letters(3, &[&[2, 3]]).unwrap());
        assert_eq!(GrMorphism::compose(&GrMorphism::identity(2), &g).unwrap(), g);
        assert_eq!(GrMorphism::compose(&g, &GrMorphism::identity(1)).unwrap(), g);
        assert!(matches!(
            GrMorphism::compose(&g, &g),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn free_product_examples() {
        let b1 = GrMorphism::from_letters(2, &[&[1, 2]]).unwrap();
        let fp = GrMorphism::free_product(&GrMorphism::identity(1), &b1);
        assert_eq!(fp, GrMorphism::from_letters(3, &[&[1], &[2, 3]]).unwrap());
        assert_eq!(GrMorphism::free_product(&GrMorphism::identity(0), &b1), b1);
    }

    #[test]
    fn abelianize_examples() {
        let b1 = GrMorphism::from_letters(2, &[&[1, 2]]).unwrap();
        assert_eq!(b1.abelianize(), Matrix::from_i64(Ring::Z, 2, 1, &[1, 1]));
        let conj = GrMorphism::from_letters(2, &[&[1, 2, -1]]).unwrap();
        assert_eq!(conj.abelianize(), Matrix::from_i64(Ring::Z, 2, 1, &[0, 1]));
        assert_eq!(GrMorphism::identity(3).abelianize(), Matrix::identity(Ring::Z, 3));
    }

    #[test]
    fn rank_zero_is_a_genuine_object() {
        let z = GrMorphism::from_trivial(2);
        assert_eq!(z.src(), 0);
        assert_eq!(GrMorphism::compose(&GrMorphism::identity(2), &z).unwrap(), z);
        assert_eq!(z.abelianize().rows(), 2);
        assert_eq!(z.abelianize().cols(), 0);
    }

    #[test]
    fn enumerate_counts() {
        // 4 + 12 reduced words of length 1 and 2 in rank 2, plus the identity
        assert_eq!(enumerate_words(2, 2).len(), 17);
        assert_eq!(enumerate_words(1, 3).len(), 7);
        assert_eq!(enumerate_words(2, 2)[0], FreeWord::generator(1, 2));
    }

    #[test]
    fn display_round_trip() {
        let x = w(&[1, -2, 3], 3);
        assert_eq!(x.to_string(), "x1*x2^-1*x3");
        assert_eq!(parse_word(&x.to_string(), Some(3)).unwrap(), x);
    }
}
