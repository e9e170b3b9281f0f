//! The category 𝒢: monomorphisms of free groups with a chosen free
//! complement, and its two functors to gr.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::word::{invert_automorphism, is_basis, FreeWord, GrMorphism};

/// A morphism `A -> B` of 𝒢: `u` plus a basis of a complement `H` with
/// `B = u(A) * H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GMorphism {
    u: GrMorphism,
    complement: Vec<FreeWord>,
}

impl GMorphism {
    pub fn new(u: GrMorphism, complement: Vec<FreeWord>) -> Result<Self> {
        let (a, b) = (u.src(), u.dst());
        if a > b || complement.len() != b - a {
            return Err(Error::InvalidGMorphism(format!(
                "complement of a {a} -> {b} morphism needs {} words, got {}",
                b.saturating_sub(a),
                complement.len()
            )));
        }
        if let Some(w) = complement.iter().find(|w| w.rank() != b) {
            return Err(Error::RankMismatch { expected: b, found: w.rank() });
        }
        let f = GMorphism { u, complement };
        if !is_basis(f.combined().images(), b) {
            return Err(Error::InvalidGMorphism(
                "image and complement do not form a basis of the target".into(),
            ));
        }
        Ok(f)
    }

    pub fn identity(n: usize) -> Self {
        GMorphism { u: GrMorphism::identity(n), complement: Vec::new() }
    }

    /// The canonical morphism `A = A * 0 -> A * B`.
    pub fn canonical(a: usize, b: usize) -> Self {
        let n = a + b;
        GMorphism {
            u: GrMorphism::inclusion_first(a, b),
            complement: (a + 1..=n).map(|k| FreeWord::generator(k, n)).collect(),
        }
    }

    /// An automorphism of `F_n` as an isomorphism of 𝒢.
    pub fn from_automorphism(phi: &GrMorphism) -> Result<Self> {
        if !phi.is_automorphism() {
            return Err(Error::InvalidGMorphism(format!("{phi} is not an automorphism")));
        }
        Ok(GMorphism { u: phi.clone(), complement: Vec::new() })
    }

    pub fn src(&self) -> usize {
        self.u.src()
    }

    pub fn dst(&self) -> usize {
        self.u.dst()
    }

    pub fn u(&self) -> &GrMorphism {
        &self.u
    }

    pub fn complement(&self) -> &[FreeWord] {
        &self.complement
    }

    /// The automorphism of `B` sending the standard basis to
    /// `u(x_1), ..., u(x_a), h_1, ..., h_{b-a}`.
    pub fn combined(&self) -> GrMorphism {
        let mut images = self.u.images().to_vec();
        images.extend_from_slice(&self.complement);
        GrMorphism::new(self.dst(), self.dst(), images).expect("ranks checked")
    }

    fn combined_inverse(&self) -> GrMorphism {
        invert_automorphism(&self.combined()).expect("GMorphism invariant")
    }

    /// Equality in 𝒢: same `u` and the complements generate the same subgroup.
    pub fn same_morphism(&self, other: &GMorphism) -> bool {
        if self.u != other.u {
            return false;
        }
        let a = self.src();
        let inv = self.combined_inverse();
        let pulled: Vec<FreeWord> = other.complement.iter().map(|h| inv.apply(h)).collect();
        if pulled.iter().any(|w| w.letters().iter().any(|l| l.unsigned_abs() as usize <= a)) {
            return false;
        }
        let k = self.dst() - a;
        let down: Vec<FreeWord> = pulled
            .iter()
            .map(|w| {
                let ls: Vec<i32> = w.letters().iter().map(|&l| l - l.signum() * a as i32).collect();
                FreeWord::new(ls, k).expect("letters in range")
            })
            .collect();
        is_basis(&down, k)
    }
}

/// `g ∘ f = (g.u ∘ f.u, g.u(f.H) * g.H)`.
pub fn g_compose(g: &GMorphism, f: &GMorphism) -> Result<GMorphism> {
    let u = GrMorphism::compose(&g.u, &f.u)?;
    let mut complement: Vec<FreeWord> = f.complement.iter().map(|h| g.u.apply(h)).collect();
    complement.extend_from_slice(&g.complement);
    let out = GMorphism { u, complement };
    if !is_basis(out.combined().images(), out.dst()) {
        return Err(Error::InvalidGMorphism("composite violates the basis condition".into()));
    }
    Ok(out)
}

/// `i(f)`: forgets the complement.
pub fn functor_i(f: &GMorphism) -> GrMorphism {
    f.u.clone()
}

/// `ι(f): B -> A`, the retraction killing the complement.
pub fn functor_iota(f: &GMorphism) -> GrMorphism {
    let (a, b) = (f.src(), f.dst());
    let mut kill = (1..=a).map(|k| FreeWord::generator(k, a)).collect::<Vec<_>>();
    kill.extend(std::iter::repeat_n(FreeWord::identity(a), b - a));
    let drop_last = GrMorphism::new(b, a, kill).expect("well-formed");
    GrMorphism::compose(&drop_last, &f.combined_inverse()).expect("ranks match")
}

/// An automorphism `φ` of `B` with `φ ∘ f = g` in 𝒢.
pub fn transitivity_witness(f: &GMorphism, g: &GMorphism) -> Result<GrMorphism> {
    if (f.src(), f.dst()) != (g.src(), g.dst()) {
        return Err(Error::RankMismatch { expected: f.dst(), found: g.dst() });
    }
    GrMorphism::compose(&g.combined(), &f.combined_inverse())
}

/// Checks `φ ∘ f = g` in 𝒢 for an automorphism `φ`.
pub fn witness_holds(phi: &GrMorphism, f: &GMorphism, g: &GMorphism) -> bool {
    match GMorphism::from_automorphism(phi).and_then(|p| g_compose(&p, f)) {
        Ok(h) => h.same_morphism(g),
        Err(_) => false,
    }
}

/// Random automorphism of `F_n` as a product of `steps` elementary Nielsen
/// automorphisms.
pub fn random_automorphism<R: Rng>(n: usize, steps: usize, rng: &mut R) -> GrMorphism {
    let mut images: Vec<FreeWord> = (1..=n).map(|k| FreeWord::generator(k, n)).collect();
    if n == 0 {
        return GrMorphism::identity(0);
    }
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        match rng.random_range(0..4) {
            0 if n > 1 => {
                let j = (i + rng.random_range(1..n)) % n;
                images.swap(i, j);
            }
            1 => images[i] = images[i].inverse(),
            _ if n > 1 => {
                let j = (i + rng.random_range(1..n)) % n;
                let by = if rng.random() { images[j].clone() } else { images[j].inverse() };
                images[i] = if rng.random() { images[i].mul(&by) } else { by.mul(&images[i]) };
            }
            _ => images[i] = images[i].inverse(),
        }
    }
    GrMorphism::new(n, n, images).expect("well-formed")
}

/// Random 𝒢-morphism `F_a -> F_b` obtained by splitting a random automorphism.
pub fn random_gmorphism<R: Rng>(a: usize, b: usize, steps: usize, rng: &mut R) -> GMorphism {
    assert!(a <= b);
    let phi = random_automorphism(b, steps, rng);
    let images = phi.images();
    GMorphism {
        u: GrMorphism::new(a, b, images[..a].to_vec()).expect("well-formed"),
        complement: images[a..].to_vec(),
    }
}

pub(crate) fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

/// Outcome of one randomized 𝒢 case.
#[derive(Clone, Debug, Serialize)]
pub struct GcatCase {
    pub case: u64,
    pub ranks: [usize; 3],
    pub retraction: bool,
    pub associativity: bool,
    pub i_functorial: bool,
    pub iota_functorial: bool,
    pub witness: bool,
}

impl GcatCase {
    pub fn pass(&self) -> bool {
        self.retraction && self.associativity && self.i_functorial && self.iota_functorial && self.witness
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GcatReport {
    pub seed: u64,
    pub max_rank: usize,
    pub cases: Vec<GcatCase>,
}

impl GcatReport {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(GcatCase::pass)
    }

    pub fn failures(&self) -> Vec<u64> {
        self.cases.iter().filter(|c| !c.pass()).map(|c| c.case).collect()
    }
}

fn run_case(seed: u64, case: u64, max_rank: usize) -> GcatCase {
    let mut rng = case_rng(seed, case);
    let mut ranks = [0usize; 4];
    for r in &mut ranks {
        *r = rng.random_range(0..=max_rank);
    }
    ranks.sort_unstable();
    let [a, b, c, d] = ranks;
    let steps = 5;
    let f = random_gmorphism(a, b, steps, &mut rng);
    let g = random_gmorphism(b, c, steps, &mut rng);
    let h = random_gmorphism(c, d, steps, &mut rng);
    let f2 = random_gmorphism(a, b, steps, &mut rng);

    let gf = g_compose(&g, &f).expect("composable");
    let retraction = GrMorphism::compose(&functor_iota(&f), &functor_i(&f)).unwrap()
        == GrMorphism::identity(a);
    let associativity = g_compose(&h, &gf).unwrap() == g_compose(&g_compose(&h, &g).unwrap(), &f).unwrap();
    let i_functorial = functor_i(&gf) == GrMorphism::compose(&functor_i(&g), &functor_i(&f)).unwrap();
    let iota_functorial =
        functor_iota(&gf) == GrMorphism::compose(&functor_iota(&f), &functor_iota(&g)).unwrap();
    let witness = transitivity_witness(&f, &f2)
        .map(|phi| phi.is_automorphism() && witness_holds(&phi, &f, &f2))
        .unwrap_or(false);
    GcatCase {
        case,
        ranks: [a, b, c],
        retraction,
        associativity,
        i_functorial,
        iota_functorial,
        witness,
    }
}

/// Randomized checks of the 𝒢 calculus on `cases` cases with ranks `<= max_rank`.
pub fn check_random_cases(cases: u64, max_rank: usize, seed: u64, exec: Execution) -> GcatReport {
    let ids: Vec<u64> = (0..cases).collect();
    let cases = par::map(exec, &ids, |&k| run_case(seed, k, max_rank));
    GcatReport { seed, max_rank, cases }
}

/// Stabilizer checks for the canonical morphism `A -> A * B`.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizerReport {
    pub a: usize,
    pub b: usize,
    pub samples: usize,
    /// Product automorphisms `id_A * φ` that fix the canonical morphism.
    pub product_forms_fixing: usize,
    /// Random automorphisms found to fix it.
    pub random_fixing: usize,
    /// Of those, how many restrict to the identity on `A` and preserve the
    /// complement subgroup.
    pub random_fixing_restricting: usize,
}

impl StabilizerReport {
    pub fn pass(&self) -> bool {
        self.product_forms_fixing == self.samples && self.random_fixing == self.random_fixing_restricting
    }
}

/// Tests both inclusions of the stabilizer description on random samples.
pub fn check_stabilizer(a: usize, b: usize, samples: usize, seed: u64) -> StabilizerReport {
    let can = GMorphism::canonical(a, b);
    let n = a + b;
    let mut product_forms_fixing = 0;
    let mut random_fixing = 0;
    let mut random_fixing_restricting = 0;
    for k in 0..samples {
        let mut rng = case_rng(seed, k as u64);
        let phi = random_automorphism(b, 6, &mut rng);
        let psi = GrMorphism::free_product(&GrMorphism::identity(a), &phi);
        if witness_holds(&psi, &can, &can) {
            product_forms_fixing += 1;
        }
        // a random automorphism of A * B, biased to touch few generators
        let chi = random_automorphism(n, rng.random_range(0..4), &mut rng);
        if witness_holds(&chi, &can, &can) {
            random_fixing += 1;
            let fixes_a = (1..=a).all(|i| chi.images()[i - 1] == FreeWord::generator(i, n));
            let image = GMorphism { u: can.u.clone(), complement: chi.images()[a..].to_vec() };
            if fixes_a && image.same_morphism(&can) {
                random_fixing_restricting += 1;
            }
        }
    }
    StabilizerReport { a, b, samples, product_forms_fixing, random_fixing, random_fixing_restricting }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{parse_morphism, parse_word_list};

    fn gm(u: &str, h: &str, rank: usize) -> GMorphism {
        GMorphism::new(parse_morphism(u).unwrap(), parse_word_list(h, Some(rank)).unwrap()).unwrap()
    }

    #[test]
    fn compose_by_hand() {
        let f = gm("(x1) : 1 -> 2", "{x2}", 2);
        let g = gm("(x1, x2) : 2 -> 3", "{x3}", 3);
        let gf = g_compose(&g, &f).unwrap();
        assert_eq!(gf.u(), &parse_morphism("(x1) : 1 -> 3").unwrap());
        assert_eq!(gf.complement(), parse_word_list("{x2, x3}", Some(3)).unwrap().as_slice());
        assert_eq!(g_compose(&GMorphism::identity(2), &f).unwrap(), f);
    }

    #[test]
    fn invariant_is_enforced() {
        let u = parse_morphism("(x1) : 1 -> 2").unwrap();
        let bad = parse_word_list("{x2^2}", Some(2)).unwrap();
        assert!(matches!(GMorphism::new(u, bad), Err(Error::InvalidGMorphism(_))));
    }

    #[test]
    fn iota_examples() {
        let f = gm("(x1) : 1 -> 2", "{x2}", 2);
        assert_eq!(functor_iota(&f), parse_morphism("(x1, 1) : 2 -> 1").unwrap());
        let f = gm("(x1 x2) : 1 -> 2", "{x2}", 2);
        let r = GrMorphism::compose(&functor_iota(&f), &functor_i(&f)).unwrap();
        assert_eq!(r, GrMorphism::identity(1));
        assert_eq!(functor_iota(&GMorphism::identity(3)), GrMorphism::identity(3));
    }

    #[test]
    fn witness_example() {
        let f = gm("(x1) : 1 -> 2", "{x2}", 2);
        let g = gm("(x1 x2 x1^-1) : 1 -> 2", "{x1}", 2);
        let phi = transitivity_witness(&f, &g).unwrap();
        assert_eq!(phi, parse_morphism("(x1 x2 x1^-1, x1)").unwrap());
        assert!(witness_holds(&phi, &f, &g));
        assert!(witness_holds(&GrMorphism::identity(2), &f, &f));
    }

    #[test]
    fn complement_compared_as_subgroup() {
        let f = gm("(x1) : 1 -> 2", "{x2}", 2);
        let g = gm("(x1) : 1 -> 2", "{x1 x2}", 2);
        let h = gm("(x1) : 1 -> 2", "{x2^-1}", 2);
        assert!(!f.same_morphism(&g));
        assert!(f.same_morphism(&h));
    }

    #[test]
    fn random_cases_pass() {
        let r = check_random_cases(40, 4, 7, Execution::Sequential);
        assert!(r.all_pass(), "failures: {:?}", r.failures());
    }

    #[test]
    fn stabilizer() {
        let r = check_stabilizer(1, 2, 30, 3);
        assert!(r.pass(), "{r:?}");
        assert!(r.random_fixing > 0);
    }
}
