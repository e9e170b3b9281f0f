//! Nielsen reduction of finite word tuples.
//!
//! The reduction loop applies length-decreasing elementary moves. When none
//! exists it searches breadth-first through moves that keep every length
//! unchanged for a tuple that admits one. A tuple with no such continuation
//! satisfies the usual Nielsen conditions, so for a basis of `F_n` the loop
//! ends at single letters. Orientation and order are normalized last.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{FreeWord, GrMorphism};

/// Elementary Nielsen move acting on positions of a word tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NielsenMove {
    Swap(usize, usize),
    Invert(usize),
    /// `w[target] <- w[target] * w[by]^(±1)`
    RightMul { target: usize, by: usize, inverse: bool },
    /// `w[target] <- w[by]^(±1) * w[target]`
    LeftMul { target: usize, by: usize, inverse: bool },
    /// Removes a trivial word.
    Delete(usize),
}

impl NielsenMove {
    pub fn apply(&self, words: &mut Vec<FreeWord>) {
        match *self {
            NielsenMove::Swap(i, j) => words.swap(i, j),
            NielsenMove::Invert(i) => words[i] = words[i].inverse(),
            NielsenMove::RightMul { target, by, inverse } => {
                let b = if inverse { words[by].inverse() } else { words[by].clone() };
                words[target] = words[target].mul(&b);
            }
            NielsenMove::LeftMul { target, by, inverse } => {
                let b = if inverse { words[by].inverse() } else { words[by].clone() };
                words[target] = b.mul(&words[target]);
            }
            NielsenMove::Delete(i) => {
                words.remove(i);
            }
        }
    }
}

/// Replayable trace of a Nielsen reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NielsenRecord {
    pub rank: usize,
    pub initial: Vec<FreeWord>,
    pub steps: Vec<NielsenMove>,
    pub reduced: Vec<FreeWord>,
}

impl NielsenRecord {
    /// Replays the steps on `initial`.
    pub fn replay(&self) -> Vec<FreeWord> {
        self.replay_on(self.initial.clone())
    }

    /// Replays the steps on an arbitrary tuple of the same length. Applied to
    /// the identity tuple this yields the automorphism `ν` with
    /// `initial ∘ ν = reduced`.
    pub fn replay_on(&self, mut words: Vec<FreeWord>) -> Vec<FreeWord> {
        for s in &self.steps {
            s.apply(&mut words);
        }
        words
    }
}

fn find_reducing_move(words: &[FreeWord]) -> Option<NielsenMove> {
    let mut best: Option<(usize, FreeWord, NielsenMove)> = None;
    for (i, wi) in words.iter().enumerate() {
        for (j, wj) in words.iter().enumerate() {
            if i == j {
                continue;
            }
            let inv = wj.inverse();
            let candidates = [
                (wi.mul(wj), NielsenMove::RightMul { target: i, by: j, inverse: false }),
                (wi.mul(&inv), NielsenMove::RightMul { target: i, by: j, inverse: true }),
                (wj.mul(wi), NielsenMove::LeftMul { target: i, by: j, inverse: false }),
                (inv.mul(wi), NielsenMove::LeftMul { target: i, by: j, inverse: true }),
            ];
            for (w, mv) in candidates {
                if w.len() >= wi.len() {
                    continue;
                }
                let gain = wi.len() - w.len();
                let better = match &best {
                    None => true,
                    Some((g, bw, _)) => gain > *g || (gain == *g && w.shortlex_cmp(bw).is_lt()),
                };
                if better {
                    best = Some((gain, w, mv));
                }
            }
        }
    }
    best.map(|(_, _, mv)| mv)
}

/// Cap on the states visited by one length-preserving search.
const SEARCH_LIMIT: usize = 200_000;

fn level_moves(words: &[FreeWord]) -> Vec<(NielsenMove, Vec<FreeWord>)> {
    let mut out = Vec::new();
    for (i, wi) in words.iter().enumerate() {
        for j in 0..words.len() {
            if i == j {
                continue;
            }
            for mv in [
                NielsenMove::RightMul { target: i, by: j, inverse: false },
                NielsenMove::RightMul { target: i, by: j, inverse: true },
                NielsenMove::LeftMul { target: i, by: j, inverse: false },
                NielsenMove::LeftMul { target: i, by: j, inverse: true },
            ] {
                let mut next = words.to_vec();
                mv.apply(&mut next);
                if next[i].len() == wi.len() {
                    out.push((mv, next));
                }
            }
        }
    }
    out
}

/// Shortest sequence of length-preserving moves reaching a tuple with a
/// length-decreasing move.
fn level_search(start: &[FreeWord]) -> Option<Vec<NielsenMove>> {
    let mut parent: HashMap<Vec<FreeWord>, Option<(Vec<FreeWord>, NielsenMove)>> = HashMap::new();
    parent.insert(start.to_vec(), None);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for (mv, next) in level_moves(&cur) {
            if parent.contains_key(&next) {
                continue;
            }
            let found = find_reducing_move(&next).is_some();
            parent.insert(next.clone(), Some((cur.clone(), mv)));
            if found {
                let mut path = Vec::new();
                let mut at = next;
                while let Some(Some((prev, mv))) = parent.get(&at) {
                    path.push(*mv);
                    at = prev.clone();
                }
                path.reverse();
                return Some(path);
            }
            if parent.len() >= SEARCH_LIMIT {
                return None;
            }
            queue.push_back(next);
        }
    }
    None
}

/// Nielsen-reduces a tuple of words in `F_rank`.
///
/// The returned tuple generates the same subgroup; it is the result of
/// replaying `record.steps` on the input.
pub fn nielsen_reduce(words: &[FreeWord], rank: usize) -> (Vec<FreeWord>, NielsenRecord) {
    for w in words {
        assert_eq!(w.rank(), rank, "word {w} is not in rank {rank}");
    }
    let mut cur = words.to_vec();
    let mut steps = Vec::new();
    let mut push = |mv: NielsenMove, cur: &mut Vec<FreeWord>| {
        mv.apply(cur);
        steps.push(mv);
    };

    loop {
        if let Some(i) = cur.iter().position(FreeWord::is_identity) {
            push(NielsenMove::Delete(i), &mut cur);
            continue;
        }
        if let Some(mv) = find_reducing_move(&cur) {
            push(mv, &mut cur);
            continue;
        }
        if cur.iter().all(|w| w.len() <= 1) {
            break;
        }
        match level_search(&cur) {
            Some(path) => {
                for mv in path {
                    push(mv, &mut cur);
                }
            }
            None => break,
        }
    }

    // orientation: each word or its inverse, whichever is shortlex-smaller
    for i in 0..cur.len() {
        if cur[i].inverse().shortlex_cmp(&cur[i]).is_lt() {
            push(NielsenMove::Invert(i), &mut cur);
        }
    }
    // order: selection sort by shortlex
    for i in 0..cur.len() {
        let mut m = i;
        for j in i + 1..cur.len() {
            if cur[j].shortlex_cmp(&cur[m]).is_lt() {
                m = j;
            }
        }
        if m != i {
            push(NielsenMove::Swap(i, m), &mut cur);
        }
    }

    let record = NielsenRecord {
        rank,
        initial: words.to_vec(),
        steps,
        reduced: cur.clone(),
    };
    (cur, record)
}

/// True iff `words` is a basis of `F_rank`.
pub fn is_basis(words: &[FreeWord], rank: usize) -> bool {
    if words.len() != rank || words.iter().any(|w| w.rank() != rank) {
        return false;
    }
    let (reduced, _) = nielsen_reduce(words, rank);
    reduced.len() == rank
        && reduced
            .iter()
            .enumerate()
            .all(|(i, w)| w.letters() == [(i + 1) as i32])
}

/// Inverse of an automorphism of `F_n`, or `None` if `phi` is not one.
///
/// The reduction of `phi`'s images ends at the standard basis, so replaying the
/// same moves on the identity tuple produces `phi^-1` directly.
pub fn invert_automorphism(phi: &GrMorphism) -> Option<GrMorphism> {
    let n = phi.src();
    if phi.dst() != n {
        return None;
    }
    let (reduced, record) = nielsen_reduce(phi.images(), n);
    let standard = GrMorphism::identity(n);
    if reduced.as_slice() != standard.images() {
        return None;
    }
    let inv = record.replay_on(standard.images().to_vec());
    GrMorphism::new(n, n, inv).ok()
}
