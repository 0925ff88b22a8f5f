//! Cohomology of the Heisenberg algebra `[x, y] = z` with coefficients in
//! `K[x, y, z]`.
//!
//! Representatives, with `X_g = -g_y dx + g_x dy` and
//! `D_a = a x dx + (1 - a) y dy + z dz`:
//!
//! | degree | class            | cochain            | data                                   |
//! |--------|------------------|--------------------|----------------------------------------|
//! | 0      | `H0(psi)`        | `psi`              | `psi` in `K[z]`                        |
//! | 1      | `H1(g0; psi)`    | `X_g0 + psi D_a`   | `g0` in `K[x,y]` without constant term |
//! | 2      | `H2(G)`          | `X_G ^ dz`         | `G = G0 + z G1`, no pure `z` terms     |
//! | 3      | `H3(P)`          | `P dx^dy^dz`       | `P` in `K[x,y]`                        |
//!
//! [`Heisenberg::normal_form`] returns the class together with a primitive
//! `p` such that `u = include(class) + delta(p)`; these are the projection
//! and homotopy of the contraction used by the transfer engine.

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Rational, Var};
use crate::polyvector::{Blade, PolyVector};
use crate::schouten::{bracket, BracketKind};
use num::{One, Zero};
use serde::{Deserialize, Serialize};

/// Tie-break for `d_x A + d_y B = h`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Gauge {
    /// `A = int h dx`, `B = 0`.
    #[default]
    X,
    /// `A = 0`, `B = int h dy`.
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "crate::json::ClassRepr", try_from = "crate::json::ClassRepr")]
pub enum CohClass {
    H0 { psi: Poly },
    H1 { g0: Poly, psi: Poly },
    H2 { g: Poly },
    H3 { p: Poly },
}

impl CohClass {
    pub fn h0(psi: Poly) -> Result<CohClass> {
        CohClass::H0 { psi }.normalized()
    }

    pub fn h1(g0: Poly, psi: Poly) -> Result<CohClass> {
        CohClass::H1 { g0, psi }.normalized()
    }

    pub fn h2(g: Poly) -> Result<CohClass> {
        CohClass::H2 { g }.normalized()
    }

    pub fn h3(p: Poly) -> Result<CohClass> {
        CohClass::H3 { p }.normalized()
    }

    pub fn zero(degree: usize) -> CohClass {
        match degree {
            0 => CohClass::H0 { psi: Poly::zero() },
            1 => CohClass::H1 {
                g0: Poly::zero(),
                psi: Poly::zero(),
            },
            2 => CohClass::H2 { g: Poly::zero() },
            _ => CohClass::H3 { p: Poly::zero() },
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            CohClass::H0 { .. } => 0,
            CohClass::H1 { .. } => 1,
            CohClass::H2 { .. } => 2,
            CohClass::H3 { .. } => 3,
        }
    }

    /// Degree after the double shift, `degree - 2`.
    pub fn shifted_degree(&self) -> i64 {
        self.degree() as i64 - 2
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CohClass::H0 { psi } => psi.is_zero(),
            CohClass::H1 { g0, psi } => g0.is_zero() && psi.is_zero(),
            CohClass::H2 { g } => g.is_zero(),
            CohClass::H3 { p } => p.is_zero(),
        }
    }

    pub fn neg(&self) -> CohClass {
        match self {
            CohClass::H0 { psi } => CohClass::H0 { psi: -psi },
            CohClass::H1 { g0, psi } => CohClass::H1 { g0: -g0, psi: -psi },
            CohClass::H2 { g } => CohClass::H2 { g: -g },
            CohClass::H3 { p } => CohClass::H3 { p: -p },
        }
    }

    pub fn scale(&self, c: &Rational) -> CohClass {
        match self {
            CohClass::H0 { psi } => CohClass::H0 { psi: psi.scale(c) },
            CohClass::H1 { g0, psi } => CohClass::H1 {
                g0: g0.scale(c),
                psi: psi.scale(c),
            },
            CohClass::H2 { g } => CohClass::H2 { g: g.scale(c) },
            CohClass::H3 { p } => CohClass::H3 { p: p.scale(c) },
        }
    }

    /// Checks the invariants and removes the data that does not change the
    /// represented cochain (constants in `g0`, pure `z` terms in `G`).
    pub fn normalized(self) -> Result<CohClass> {
        let invalid = |msg: &str| Err(Error::InvalidClass(msg.to_string()));
        match self {
            CohClass::H0 { psi } => {
                if !psi.depends_only_on(Var::Z) {
                    return invalid("H0 payload must be a polynomial in z only");
                }
                Ok(CohClass::H0 { psi })
            }
            CohClass::H1 { g0, psi } => {
                if !g0.is_free_of(Var::Z) {
                    return invalid("H1 function g0 must not depend on z");
                }
                if !psi.depends_only_on(Var::Z) {
                    return invalid("H1 coefficient psi must be a polynomial in z only");
                }
                Ok(CohClass::H1 {
                    g0: g0.without_constant(),
                    psi,
                })
            }
            CohClass::H2 { g } => {
                if g.degree_in(Var::Z).unwrap_or(0) > 1 {
                    return invalid("H2 function G must have z-degree at most 1");
                }
                Ok(CohClass::H2 {
                    g: g.without_pure_z(),
                })
            }
            CohClass::H3 { p } => {
                if !p.is_free_of(Var::Z) {
                    return invalid("H3 density P must not depend on z");
                }
                Ok(CohClass::H3 { p })
            }
        }
    }
}

/// `X_g = -g_y dx + g_x dy`
pub fn hamiltonian_field(g: &Poly) -> PolyVector {
    PolyVector::vector(-g.partial(Var::Y), g.partial(Var::X), Poly::zero())
}

/// `{g, h} = g_x h_y - h_x g_y`
pub fn poisson(g: &Poly, h: &Poly) -> Poly {
    g.partial(Var::X) * h.partial(Var::Y) - h.partial(Var::X) * g.partial(Var::Y)
}

/// Finds `g` with `-g_y = u` and `g_x = v`, given `u_x + v_y = 0`.
///
/// The result is `int v dx - int u(0, y, z) dy`, which has no term free of
/// both `x` and `y`.
pub fn reconstruct_potential(u: &Poly, v: &Poly) -> Result<Poly> {
    if !(u.partial(Var::X) + v.partial(Var::Y)).is_zero() {
        return Err(Error::NotIntegrable);
    }
    Ok(v.antiderivative(Var::X) - u.at_zero(Var::X).antiderivative(Var::Y))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub class: CohClass,
    /// Degree `k - 1`, zero for `k = 0`.
    pub primitive: PolyVector,
}

/// Session context: the parameter `a` of `D_a`, the divergence gauge and the
/// bracket implementation. Immutable once built.
#[derive(Clone, Debug)]
pub struct Heisenberg {
    a: Rational,
    gauge: Gauge,
    kind: BracketKind,
}

impl Default for Heisenberg {
    fn default() -> Self {
        Heisenberg {
            a: Rational::zero(),
            gauge: Gauge::X,
            kind: BracketKind::Closed,
        }
    }
}

impl Heisenberg {
    pub fn new(a: Rational) -> Self {
        Heisenberg {
            a,
            ..Heisenberg::default()
        }
    }

    pub fn with_gauge(mut self, gauge: Gauge) -> Self {
        self.gauge = gauge;
        self
    }

    pub fn with_bracket(mut self, kind: BracketKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn gauge(&self) -> Gauge {
        self.gauge
    }

    pub fn bracket_kind(&self) -> BracketKind {
        self.kind
    }

    pub fn bracket(&self, u: &PolyVector, v: &PolyVector) -> Result<PolyVector> {
        bracket(self.kind, u, v)
    }

    pub fn delta(&self, u: &PolyVector) -> Result<PolyVector> {
        u.degree("delta_ce")?;
        bracket(self.kind, &PolyVector::heisenberg_pi(), u)
    }

    /// `D_a = a x dx + (1 - a) y dy + z dz`
    pub fn euler_field(&self) -> PolyVector {
        PolyVector::vector(
            Poly::x().scale(&self.a),
            Poly::y().scale(&(Rational::one() - &self.a)),
            Poly::z(),
        )
    }

    /// `D_a(f)` for a function `f`.
    pub fn euler_apply(&self, f: &Poly) -> Poly {
        f.partial(Var::X)
            .mul_monomial(Monomial::var(Var::X))
            .scale(&self.a)
            + f.partial(Var::Y)
                .mul_monomial(Monomial::var(Var::Y))
                .scale(&(Rational::one() - &self.a))
            + f.partial(Var::Z).mul_monomial(Monomial::var(Var::Z))
    }

    pub fn is_cocycle(&self, u: &PolyVector) -> Result<bool> {
        Ok(self.delta(u)?.is_zero())
    }

    /// Returns `(A, B)` with `A_x + B_y = h`.
    pub fn solve_divergence(&self, h: &Poly) -> (Poly, Poly) {
        match self.gauge {
            Gauge::X => (h.antiderivative(Var::X), Poly::zero()),
            Gauge::Y => (Poly::zero(), h.antiderivative(Var::Y)),
        }
    }

    pub fn include(&self, c: &CohClass) -> Result<PolyVector> {
        let c = c.clone().normalized()?;
        Ok(match &c {
            CohClass::H0 { psi } => PolyVector::scalar(psi.clone()),
            CohClass::H1 { g0, psi } => hamiltonian_field(g0) + self.euler_field().mul_poly(psi),
            CohClass::H2 { g } => {
                hamiltonian_field(g).wedge(&PolyVector::from_blade(Blade::Dz, Poly::one()))
            }
            CohClass::H3 { p } => PolyVector::trivector(p.clone()),
        })
    }

    pub fn class_equal(&self, c1: &CohClass, c2: &CohClass) -> Result<bool> {
        if c1.degree() != c2.degree() {
            return Err(Error::DegreeMismatch {
                op: "class_equal",
                left: c1.degree(),
                right: c2.degree(),
            });
        }
        Ok(c1.clone().normalized()? == c2.clone().normalized()?)
    }

    /// Normal form of a homogeneous cocycle. The zero cochain maps to the
    /// zero class of degree 0.
    pub fn normal_form(&self, u: &PolyVector) -> Result<NormalForm> {
        let k = u.degree("normal_form")?.unwrap_or(0);
        self.normal_form_at(u, k)
    }

    /// Normal form of `u`, read as a cochain of degree `k`.
    pub fn normal_form_at(&self, u: &PolyVector, k: usize) -> Result<NormalForm> {
        match u.degree("normal_form")? {
            None => {
                return Ok(NormalForm {
                    class: CohClass::zero(k),
                    primitive: PolyVector::zero(),
                })
            }
            Some(d) if d != k => {
                return Err(Error::DegreeMismatch {
                    op: "normal_form",
                    left: d,
                    right: k,
                })
            }
            Some(_) => {}
        }
        if !self.is_cocycle(u)? {
            return Err(Error::NotACocycle);
        }
        match k {
            0 => Ok(NormalForm {
                class: CohClass::h0(u.component(Blade::One))?,
                primitive: PolyVector::zero(),
            }),
            1 => self.normal_form_1(u),
            2 => self.normal_form_2(u),
            _ => self.normal_form_3(u),
        }
    }

    // X = psi D_a + X_g0 - delta(g1)
    fn normal_form_1(&self, u: &PolyVector) -> Result<NormalForm> {
        let (rest, psi) = u.component(Blade::Dz).z_split();
        debug_assert!(rest.is_zero());
        let one_minus_a = Rational::one() - &self.a;
        let fu = u.component(Blade::Dx) - (Poly::x() * &psi).scale(&self.a);
        let fv = u.component(Blade::Dy) - (Poly::y() * &psi).scale(&one_minus_a);
        let g = reconstruct_potential(&fu, &fv)?;
        let (g0, g1) = g.z_split();
        Ok(NormalForm {
            class: CohClass::h1(g0, psi)?,
            primitive: PolyVector::scalar(-g1),
        })
    }

    // h dx^dy + X_g ^ dz = X_(g0 - z k0) ^ dz + delta(A dx + B dy - (g1 + k0) dz)
    // with g = g0 + z g1, h - g1 = k0 + z k1 and A_x + B_y = k1.
    fn normal_form_2(&self, u: &PolyVector) -> Result<NormalForm> {
        let h = u.component(Blade::DxDy);
        let g = reconstruct_potential(&u.component(Blade::DxDz), &u.component(Blade::DyDz))?;
        let (g0, g1) = g.z_split();
        let (k0, k1) = (&h - &g1).z_split();
        let (a, b) = self.solve_divergence(&k1);
        let big_g = g0 - k0.mul_monomial(Monomial::var(Var::Z));
        Ok(NormalForm {
            class: CohClass::h2(big_g.without_pure_z())?,
            primitive: PolyVector::vector(a, b, -(g1 + k0)),
        })
    }

    // (xi0 + z xi1) w = xi0 w + delta(A dx^dz + B dy^dz) with A_x + B_y = xi1
    fn normal_form_3(&self, u: &PolyVector) -> Result<NormalForm> {
        let (xi0, xi1) = u.component(Blade::DxDyDz).z_split();
        let (a, b) = self.solve_divergence(&xi1);
        Ok(NormalForm {
            class: CohClass::h3(xi0)?,
            primitive: PolyVector::bivector(Poly::zero(), a, b),
        })
    }
}
