//! The Schouten-Nijenhuis bracket on polyvector fields and the
//! Chevalley-Eilenberg differential `delta = [pi, .]`.
//!
//! Sign conventions, fixed once for the whole crate:
//!
//! * `|u|` in bracket identities is the degree in the once-shifted complex,
//!   `wedge degree - 1`. With it the bracket is graded antisymmetric,
//!   `[v, u] = -(-1)^{|u||v|} [u, v]`, satisfies the graded Jacobi identity,
//!   and is a graded biderivation of the wedge product,
//!   `[u, v ^ w] = [u, v] ^ w + (-1)^{|u|(|v|+1)} v ^ [u, w]`.
//! * The wedge product itself is graded commutative for the unshifted wedge
//!   degree.
//! * Normalisation: `[X, f] = X(f)` for a vector field `X` and a function
//!   `f`, and `[X, Y]` is the commutator of vector fields.
//!
//! Two independent routes are provided. [`schouten_closed`] is the explicit
//! component table for each pair of degrees; [`schouten_oracle`] treats a
//! polyvector as a superfunction in `x, y, z` and odd `theta_1..3` and
//! evaluates the odd Poisson pairing
//! `[P, Q] = sum_i (P d/dtheta_i)(d/dx_i Q) - (d/dx_i P)(d/dtheta_i Q)`
//! with right and left odd derivatives respectively.

use crate::error::Result;
use crate::poly::{Poly, Var};
use crate::polyvector::{Blade, PolyVector};

/// Which implementation computes brackets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BracketKind {
    #[default]
    Closed,
    Oracle,
}

pub fn bracket(kind: BracketKind, u: &PolyVector, v: &PolyVector) -> Result<PolyVector> {
    match kind {
        BracketKind::Closed => schouten_closed(u, v),
        BracketKind::Oracle => schouten_oracle(u, v),
    }
}

/// Degree in the once-shifted complex.
pub fn shifted_degree(wedge_degree: usize) -> i64 {
    wedge_degree as i64 - 1
}

/// `delta(u) = [z dx^dy, u]`.
pub fn delta_ce(u: &PolyVector) -> Result<PolyVector> {
    delta_ce_with(BracketKind::Closed, &PolyVector::heisenberg_pi(), u)
}

/// `[pi, u]` for an arbitrary bivector `pi`.
pub fn delta_ce_with(kind: BracketKind, pi: &PolyVector, u: &PolyVector) -> Result<PolyVector> {
    u.degree("delta_ce")?;
    bracket(kind, pi, u)
}

struct Field {
    x: Poly,
    y: Poly,
    z: Poly,
}

impl Field {
    fn of(u: &PolyVector) -> Field {
        Field {
            x: u.component(Blade::Dx),
            y: u.component(Blade::Dy),
            z: u.component(Blade::Dz),
        }
    }

    fn get(&self, v: Var) -> &Poly {
        match v {
            Var::X => &self.x,
            Var::Y => &self.y,
            Var::Z => &self.z,
        }
    }

    /// `X(f)`
    fn apply(&self, f: &Poly) -> Poly {
        Var::ALL
            .iter()
            .map(|&v| self.get(v) * &f.partial(v))
            .fold(Poly::zero(), |acc, t| acc + t)
    }

    fn divergence(&self) -> Poly {
        self.x.partial(Var::X) + self.y.partial(Var::Y) + self.z.partial(Var::Z)
    }
}

struct Bi {
    xy: Poly,
    xz: Poly,
    yz: Poly,
}

impl Bi {
    fn of(u: &PolyVector) -> Bi {
        Bi {
            xy: u.component(Blade::DxDy),
            xz: u.component(Blade::DxDz),
            yz: u.component(Blade::DyDz),
        }
    }
}

fn d(p: &Poly, v: Var) -> Poly {
    p.partial(v)
}

/// The closed-form bracket, one formula per pair of wedge degrees.
pub fn schouten_closed(u: &PolyVector, v: &PolyVector) -> Result<PolyVector> {
    let du = u.degree("schouten_closed")?;
    let dv = v.degree("schouten_closed")?;
    let (i, j) = match (du, dv) {
        (Some(i), Some(j)) => (i, j),
        _ => return Ok(PolyVector::zero()),
    };
    Ok(closed_pair(u, i, v, j))
}

fn closed_pair(u: &PolyVector, i: usize, v: &PolyVector, j: usize) -> PolyVector {
    use Var::{X, Y, Z};
    match (i, j) {
        (0, 0) | (2, 3) | (3, 3) => PolyVector::zero(),
        (1, 0) => {
            let xf = Field::of(u);
            PolyVector::scalar(xf.apply(&v.component(Blade::One)))
        }
        (0, 2) => {
            let f = u.component(Blade::One);
            let xi = Bi::of(v);
            let (fx, fy, fz) = (d(&f, X), d(&f, Y), d(&f, Z));
            PolyVector::vector(
                &xi.xy * &fy + &xi.xz * &fz,
                -(&xi.xy * &fx) + &xi.yz * &fz,
                -(&xi.xz * &fx) - &xi.yz * &fy,
            )
        }
        (0, 3) => {
            let f = u.component(Blade::One);
            let w = v.component(Blade::DxDyDz);
            PolyVector::bivector(-(&w * &d(&f, Z)), &w * &d(&f, Y), -(&w * &d(&f, X)))
        }
        (1, 1) => {
            let (a, b) = (Field::of(u), Field::of(v));
            let comp = |t: Var| a.apply(b.get(t)) - b.apply(a.get(t));
            PolyVector::vector(comp(X), comp(Y), comp(Z))
        }
        (1, 2) => {
            let a = Field::of(u);
            let xi = Bi::of(v);
            let (x1, x2, x3) = (&a.x, &a.y, &a.z);
            let xy = a.apply(&xi.xy) - &xi.xy * &d(x1, X) - &xi.xy * &d(x2, Y) - &xi.xz * &d(x2, Z)
                + &xi.yz * &d(x1, Z);
            let xz = a.apply(&xi.xz)
                - &xi.xz * &d(x1, X)
                - &xi.xy * &d(x3, Y)
                - &xi.xz * &d(x3, Z)
                - &xi.yz * &d(x1, Y);
            let yz = a.apply(&xi.yz) - &xi.xz * &d(x2, X) - &xi.yz * &d(x2, Y) - &xi.yz * &d(x3, Z)
                + &xi.xy * &d(x3, X);
            PolyVector::bivector(xy, xz, yz)
        }
        (1, 3) => {
            let a = Field::of(u);
            let w = v.component(Blade::DxDyDz);
            PolyVector::trivector(a.apply(&w) - &w * &a.divergence())
        }
        (2, 2) => {
            let (a, b) = (Bi::of(u), Bi::of(v));
            let t = &a.xy * &d(&b.xz, X) - &b.xz * &d(&a.xy, X) + &a.xy * &d(&b.yz, Y)
                - &b.yz * &d(&a.xy, Y)
                + &b.xy * &d(&a.xz, X)
                - &a.xz * &d(&b.xy, X)
                + &a.xz * &d(&b.yz, Z)
                - &b.yz * &d(&a.xz, Z)
                + &b.xy * &d(&a.yz, Y)
                - &a.yz * &d(&b.xy, Y)
                + &b.xz * &d(&a.yz, Z)
                - &a.yz * &d(&b.xz, Z);
            PolyVector::trivector(t)
        }
        _ => {
            // graded antisymmetry in the shifted degree
            let swapped = closed_pair(v, j, u, i);
            let e = shifted_degree(i) * shifted_degree(j);
            -swapped.signed(e)
        }
    }
}

/// Superfunction route.
pub fn schouten_oracle(u: &PolyVector, v: &PolyVector) -> Result<PolyVector> {
    u.degree("schouten_oracle")?;
    v.degree("schouten_oracle")?;
    let mut out = PolyVector::zero();
    for (bp, p) in u.components() {
        for (bq, q) in v.components() {
            for (i, var) in Var::ALL.iter().enumerate() {
                if let Some((s, rest)) = odd::right_derivative(bp.mask(), i) {
                    if let Some((t, m)) = odd::product(rest, bq.mask()) {
                        let c = &(p * &q.partial(*var)) * (s * t);
                        out.add_component(Blade::from_mask(m), &c);
                    }
                }
                if let Some((s, rest)) = odd::left_derivative(bq.mask(), i) {
                    if let Some((t, m)) = odd::product(bp.mask(), rest) {
                        let c = &(&p.partial(*var) * q) * (-s * t);
                        out.add_component(Blade::from_mask(m), &c);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Odd generators `theta_0, theta_1, theta_2` encoded as bit masks; a mask
/// stands for the ascending product of its generators.
mod odd {
    /// `theta_a * theta_b = sign * theta_(a|b)`
    pub fn product(a: u8, b: u8) -> Option<(i64, u8)> {
        if a & b != 0 {
            return None;
        }
        let mut sign = 1;
        for i in 0..3u8 {
            if b & (1 << i) != 0 {
                // theta_i travels left past every generator of a above it
                let above = (a >> (i + 1)).count_ones();
                if above % 2 == 1 {
                    sign = -sign;
                }
            }
        }
        Some((sign, a | b))
    }

    /// Derivative acting from the right: move `theta_i` to the end first.
    pub fn right_derivative(m: u8, i: usize) -> Option<(i64, u8)> {
        if m & (1 << i) == 0 {
            return None;
        }
        let after = (m >> (i + 1)).count_ones();
        Some((if after.is_multiple_of(2) { 1 } else { -1 }, m & !(1 << i)))
    }

    /// Derivative acting from the left: move `theta_i` to the front first.
    pub fn left_derivative(m: u8, i: usize) -> Option<(i64, u8)> {
        if m & (1 << i) == 0 {
            return None;
        }
        let before = (m & ((1 << i) - 1)).count_ones();
        Some((if before.is_multiple_of(2) { 1 } else { -1 }, m & !(1 << i)))
    }
}
