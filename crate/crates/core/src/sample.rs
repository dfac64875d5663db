//! Seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::trinomial::{Trinomial, Validity};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub max_n: usize,
    pub max_exp: u64,
    /// Require at least one exponent equal to 1.
    pub require_unit: bool,
}

/// Draws a valid instance (every block has an exponent sum of at least 2).
pub fn random_trinomial<R: Rng>(rng: &mut R, max_n: usize, max_exp: u64) -> Trinomial {
    assert!(max_n >= 3 && max_exp >= 2);
    loop {
        let n = rng.gen_range(3..=max_n);
        let mut sizes = [1usize; 3];
        for _ in 3..n {
            sizes[rng.gen_range(0..3)] += 1;
        }
        let blocks: Vec<Vec<u64>> = sizes
            .iter()
            .map(|&s| (0..s).map(|_| rng.gen_range(1..=max_exp)).collect())
            .collect();
        if let Ok(t) = Trinomial::new(blocks[0].clone(), blocks[1].clone(), blocks[2].clone()) {
            if t.validate() == Validity::Ok {
                return t;
            }
        }
    }
}

/// Draws a valid factorial instance matching `spec`.
pub fn random_factorial<R: Rng>(rng: &mut R, spec: SampleSpec) -> Trinomial {
    loop {
        let t = random_trinomial(rng, spec.max_n, spec.max_exp);
        if spec.require_unit && t.unit_variables().is_empty() {
            continue;
        }
        if t.is_factorial().unwrap_or(false) {
            return t;
        }
    }
}

/// `count` instances from a fixed seed.
pub fn batch(seed: u64, count: usize, spec: SampleSpec) -> Vec<Trinomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_factorial(&mut rng, spec)).collect()
}
