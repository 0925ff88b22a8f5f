//! Random polynomials, cochains and classes for property checks and
//! benchmarks.

use rand::Rng;

use crate::cohomology::CohClass;
use crate::poly::{ratio, Monomial, Poly, Var};
use crate::polyvector::{Blade, PolyVector};

/// A small nonzero rational, an integer in `-4..=4` most of the time.
pub fn coefficient<R: Rng + ?Sized>(rng: &mut R) -> crate::poly::Rational {
    let mut num = rng.gen_range(1..=4);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    let den = if rng.gen_bool(0.2) {
        rng.gen_range(2..=3)
    } else {
        1
    };
    ratio(num, den)
}

/// Random polynomial in `vars` of total degree at most `max_degree`, each
/// monomial present with probability `density`.
pub fn poly_in<R: Rng + ?Sized>(rng: &mut R, vars: &[Var], max_degree: u32, density: f64) -> Poly {
    let mut p = Poly::zero();
    let range = |v: Var| if vars.contains(&v) { max_degree } else { 0 };
    for i in 0..=range(Var::X) {
        for j in 0..=range(Var::Y).min(max_degree - i) {
            for k in 0..=range(Var::Z).min(max_degree - i - j) {
                if rng.gen_bool(density) {
                    p.add_term(Monomial::new(i, j, k), coefficient(rng));
                }
            }
        }
    }
    p
}

pub fn poly<R: Rng + ?Sized>(rng: &mut R, max_degree: u32) -> Poly {
    poly_in(rng, &Var::ALL, max_degree, 0.3)
}

/// Homogeneous cochain of CE degree `k`.
pub fn cochain<R: Rng + ?Sized>(rng: &mut R, k: usize, max_degree: u32) -> PolyVector {
    let mut u = PolyVector::zero();
    for b in Blade::ALL.into_iter().filter(|b| b.degree() == k) {
        u.add_component(b, &poly(rng, max_degree));
    }
    u
}

/// Cochain with components in several degrees.
pub fn mixed<R: Rng + ?Sized>(rng: &mut R, max_degree: u32) -> PolyVector {
    let mut u = PolyVector::zero();
    for b in Blade::ALL {
        if rng.gen_bool(0.4) {
            u.add_component(b, &poly(rng, max_degree));
        }
    }
    u
}

/// Random class of degree `k` satisfying the representative invariants.
pub fn class<R: Rng + ?Sized>(rng: &mut R, k: usize, max_degree: u32) -> CohClass {
    let xy = [Var::X, Var::Y];
    let z_only = |rng: &mut R| poly_in(rng, &[Var::Z], max_degree, 0.5);
    let c = match k {
        0 => CohClass::H0 { psi: z_only(rng) },
        1 => CohClass::H1 {
            g0: poly_in(rng, &xy, max_degree, 0.4),
            psi: z_only(rng),
        },
        2 => {
            let g0 = poly_in(rng, &xy, max_degree, 0.4);
            let g1 = poly_in(rng, &xy, max_degree.saturating_sub(1), 0.4);
            CohClass::H2 {
                g: g0 + g1 * Poly::z(),
            }
        }
        _ => CohClass::H3 {
            p: poly_in(rng, &xy, max_degree, 0.4),
        },
    };
    c.normalized()
        .expect("sampled data satisfies the invariants")
}

/// As [`class`], retried until the result is nonzero.
pub fn nonzero_class<R: Rng + ?Sized>(rng: &mut R, k: usize, max_degree: u32) -> CohClass {
    loop {
        let c = class(rng, k, max_degree.max(1));
        if !c.is_zero() {
            return c;
        }
    }
}
