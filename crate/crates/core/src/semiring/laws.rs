use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Boolean, Integer, Rational, Semiring, Tropical};

/// Random element generation for law checking.
pub trait Sample: Semiring {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Sample for Boolean {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Boolean(rng.gen())
    }
}

impl Sample for Integer {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        // mix small values with a few that exceed 64 bits
        if rng.gen_bool(0.2) {
            let big = BigInt::from(rng.gen::<i64>()) * BigInt::from(rng.gen::<i64>());
            Integer(big)
        } else {
            Integer::from(rng.gen_range(-20..=20))
        }
    }
}

impl Sample for Rational {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let denom = rng.gen_range(1..=12i64);
        Rational::new(rng.gen_range(-30..=30i64), denom)
    }
}

impl Sample for Tropical {
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.gen_bool(0.15) {
            Tropical::Infinity
        } else {
            Tropical::Finite(BigUint::from(rng.gen_range(0..50u32)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: &'static str,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct LawReport {
    pub semiring: &'static str,
    pub samples: usize,
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every semiring law on `samples` random triples drawn from a seeded RNG.
pub fn check_semiring_laws<S: Sample>(samples: usize, seed: u64) -> LawReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = LawReport {
        semiring: S::NAME,
        samples,
        violations: Vec::new(),
    };
    for _ in 0..samples {
        let a = S::sample(&mut rng);
        let b = S::sample(&mut rng);
        let c = S::sample(&mut rng);
        check_triple(&a, &b, &c, &mut report.violations);
    }
    report
}

pub(crate) fn check_triple<S: Semiring>(a: &S, b: &S, c: &S, out: &mut Vec<LawViolation>) {
    let zero = S::zero();
    let one = S::one();
    let mut law = |name: &'static str, ok: bool| {
        if !ok {
            out.push(LawViolation {
                law: name,
                values: vec![a.to_string(), b.to_string(), c.to_string()],
            });
        }
    };
    law("add associative", a.add(b).add(c) == a.add(&b.add(c)));
    law("add commutative", a.add(b) == b.add(a));
    law("add unit", a.add(&zero) == *a && zero.add(a) == *a);
    law("mul associative", a.mul(b).mul(c) == a.mul(&b.mul(c)));
    law("mul unit", a.mul(&one) == *a && one.mul(a) == *a);
    law(
        "left distributive",
        a.mul(&b.add(c)) == a.mul(b).add(&a.mul(c)),
    );
    law(
        "right distributive",
        a.add(b).mul(c) == a.mul(c).add(&b.mul(c)),
    );
    law("annihilation", a.mul(&zero) == zero && zero.mul(a) == zero);
}
