//! Seeded random rationals (ChaCha8): numerators uniform in `[-9, 9]`,
//! denominators uniform in `{1, 2, 3, 4}`.

use num::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::groupoid::{FiniteGroupoid, GroupoidFunction};
use crate::ideal::GroupAlgebraElement;
use crate::linalg::Rational;

pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rational(&mut self) -> Rational {
        let num: i64 = self.rng.gen_range(-9..=9);
        let den: i64 = self.rng.gen_range(1..=4);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn vector(&mut self, len: usize) -> Vec<Rational> {
        (0..len).map(|_| self.rational()).collect()
    }

    pub fn group_algebra_element(&mut self, order: usize) -> GroupAlgebraElement {
        GroupAlgebraElement::new(self.vector(order))
    }

    pub fn groupoid_function(&mut self, g: &FiniteGroupoid) -> GroupoidFunction {
        GroupoidFunction::from_values(g, self.vector(g.num_arrows())).expect("length matches")
    }
}
