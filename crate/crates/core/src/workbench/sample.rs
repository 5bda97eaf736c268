use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::CyclotomicNumber;

type Cyclo = CyclotomicNumber;

const POOL: [(i64, i64); 12] = [
    (1, 1),
    (-1, 1),
    (2, 1),
    (-2, 1),
    (3, 1),
    (-3, 1),
    (1, 2),
    (-1, 2),
    (3, 2),
    (-2, 3),
    (5, 1),
    (-5, 4),
];

/// Attempts per requested point before giving up.
pub const RETRY_BUDGET: usize = 100;

/// Seeded source of pool values in `ℚ(ζ_N)`.
#[derive(Clone, Debug)]
pub struct PointSampler {
    rng: ChaCha8Rng,
    conductor: u32,
}

impl PointSampler {
    pub fn new(seed: u64, conductor: u32) -> Self {
        PointSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            conductor,
        }
    }

    /// A small rational, times a random power of `ζ_N` one time in three.
    pub fn value(&mut self) -> Cyclo {
        let (p, q) = POOL[self.rng.gen_range(0..POOL.len())];
        let r = Cyclo::from_ratio(p, q);
        if self.conductor > 2 && self.rng.gen_range(0..3) == 0 {
            let j = self.rng.gen_range(1..self.conductor) as i64;
            &r * &Cyclo::primitive_root_of_unity(j, self.conductor)
        } else {
            r
        }
    }

    pub fn pair(&mut self) -> (Cyclo, Cyclo) {
        let a = self.value();
        let b = self.value();
        (a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_draws_repeat() {
        let mut a = PointSampler::new(7, 4);
        let mut b = PointSampler::new(7, 4);
        for _ in 0..20 {
            assert_eq!(a.value(), b.value());
        }
    }
}
