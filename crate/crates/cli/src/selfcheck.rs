//! Randomized consistency checks behind `schouten selfcheck`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schouten_core::{
    sample, schouten_closed, schouten_oracle, shifted_bracket, Heisenberg, TransferTable,
};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub samples: usize,
    pub passed: bool,
}

type Check = fn(&Heisenberg, &mut ChaCha8Rng) -> bool;

fn delta_squared(ctx: &Heisenberg, rng: &mut ChaCha8Rng) -> bool {
    (0..4).all(|k| {
        let u = sample::cochain(rng, k, 3);
        matches!(ctx.delta(&u).and_then(|v| ctx.delta(&v)), Ok(w) if w.is_zero())
    })
}

fn closed_matches_oracle(_: &Heisenberg, rng: &mut ChaCha8Rng) -> bool {
    (0..4).all(|i| {
        (0..4).all(|j| {
            let u = sample::cochain(rng, i, 2);
            let v = sample::cochain(rng, j, 2);
            schouten_closed(&u, &v).ok() == schouten_oracle(&u, &v).ok()
        })
    })
}

fn normal_form_round_trip(ctx: &Heisenberg, rng: &mut ChaCha8Rng) -> bool {
    (0..4).all(|k| {
        let c = sample::class(rng, k, 3);
        let v = if k > 0 {
            sample::cochain(rng, k - 1, 3)
        } else {
            Default::default()
        };
        let run = || -> schouten_core::Result<bool> {
            let u = ctx.include(&c)? + ctx.delta(&v)?;
            let nf = ctx.normal_form_at(&u, k)?;
            Ok(nf.class == c && ctx.delta(&nf.primitive)? == ctx.delta(&v)?)
        };
        run().unwrap_or(false)
    })
}

fn order_one_identity(ctx: &Heisenberg, rng: &mut ChaCha8Rng) -> bool {
    let mut table = TransferTable::new(ctx.clone());
    (0..4).all(|i| {
        (0..4).all(|j| {
            let c1 = sample::class(rng, i, 2);
            let c2 = sample::class(rng, j, 2);
            let mut run = || -> schouten_core::Result<bool> {
                let lhs = ctx.include(&table.d2(&c1, &c2)?)?;
                let rhs = ctx.delta(&table.phi2(&c1, &c2)?)?
                    + shifted_bracket(ctx, &ctx.include(&c1)?, &ctx.include(&c2)?)?;
                Ok(lhs == rhs)
            };
            run().unwrap_or(false)
        })
    })
}

const CHECKS: [(&str, Check); 4] = [
    ("delta squares to zero", delta_squared),
    (
        "closed bracket matches superfunction bracket",
        closed_matches_oracle,
    ),
    (
        "normal form recovers class and coboundary",
        normal_form_round_trip,
    ),
    ("order one transfer identity", order_one_identity),
];

pub fn run(ctx: &Heisenberg, seed: u64, samples: usize) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CHECKS
        .iter()
        .map(|(name, check)| CheckResult {
            name,
            samples,
            passed: (0..samples).all(|_| check(ctx, &mut rng)),
        })
        .collect()
}
