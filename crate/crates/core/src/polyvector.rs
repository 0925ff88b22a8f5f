//! Polyvector fields on the three dimensional space, i.e. Chevalley-Eilenberg
//! cochains `C^0 + C^1 + C^2 + C^3` with values in `K[x, y, z]`.
//!
//! Blades are stored in ascending generator order only; every sign coming
//! from reordering generators is resolved when a product is formed.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::poly::{Poly, Rational};

/// A basis element of the exterior algebra on `dx, dy, dz`.
///
/// The declaration order is the canonical printing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Blade {
    One,
    Dx,
    Dy,
    Dz,
    DxDy,
    DxDz,
    DyDz,
    DxDyDz,
}

impl Blade {
    pub const ALL: [Blade; 8] = [
        Blade::One,
        Blade::Dx,
        Blade::Dy,
        Blade::Dz,
        Blade::DxDy,
        Blade::DxDz,
        Blade::DyDz,
        Blade::DxDyDz,
    ];

    /// Bit `i` set iff generator `i` (x, y, z) occurs.
    pub fn mask(self) -> u8 {
        match self {
            Blade::One => 0b000,
            Blade::Dx => 0b001,
            Blade::Dy => 0b010,
            Blade::Dz => 0b100,
            Blade::DxDy => 0b011,
            Blade::DxDz => 0b101,
            Blade::DyDz => 0b110,
            Blade::DxDyDz => 0b111,
        }
    }

    pub fn from_mask(mask: u8) -> Blade {
        match mask & 0b111 {
            0b000 => Blade::One,
            0b001 => Blade::Dx,
            0b010 => Blade::Dy,
            0b100 => Blade::Dz,
            0b011 => Blade::DxDy,
            0b101 => Blade::DxDz,
            0b110 => Blade::DyDz,
            _ => Blade::DxDyDz,
        }
    }

    pub fn degree(self) -> usize {
        self.mask().count_ones() as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Blade::One => "1",
            Blade::Dx => "dx",
            Blade::Dy => "dy",
            Blade::Dz => "dz",
            Blade::DxDy => "dx^dy",
            Blade::DxDz => "dx^dz",
            Blade::DyDz => "dy^dz",
            Blade::DxDyDz => "dx^dy^dz",
        }
    }

    pub fn from_name(s: &str) -> Option<Blade> {
        Blade::ALL.iter().copied().find(|b| b.name() == s)
    }

    /// `self ^ other = sign * Blade(result)`, or `None` if a generator repeats.
    pub fn wedge(self, other: Blade) -> Option<(i8, Blade)> {
        let (a, b) = (self.mask(), other.mask());
        if a & b != 0 {
            return None;
        }
        // one transposition for each pair (i in a, j in b) with i > j
        let mut inversions = 0;
        for i in 0..3 {
            if a & (1 << i) != 0 {
                inversions += (b & ((1 << i) - 1)).count_ones();
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, Blade::from_mask(a | b)))
    }
}

/// Homogeneity of a polyvector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Zero,
    Homogeneous(usize),
    Mixed,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(
    into = "crate::json::PolyVectorRepr",
    try_from = "crate::json::PolyVectorRepr"
)]
pub struct PolyVector {
    coeffs: BTreeMap<Blade, Poly>,
}

impl PolyVector {
    pub fn zero() -> Self {
        PolyVector::default()
    }

    pub fn from_blade(b: Blade, p: Poly) -> Self {
        let mut v = PolyVector::zero();
        v.add_component(b, &p);
        v
    }

    pub fn scalar(p: Poly) -> Self {
        PolyVector::from_blade(Blade::One, p)
    }

    /// `a dx + b dy + c dz`
    pub fn vector(a: Poly, b: Poly, c: Poly) -> Self {
        let mut v = PolyVector::zero();
        v.add_component(Blade::Dx, &a);
        v.add_component(Blade::Dy, &b);
        v.add_component(Blade::Dz, &c);
        v
    }

    /// `xy dx^dy + xz dx^dz + yz dy^dz`
    pub fn bivector(xy: Poly, xz: Poly, yz: Poly) -> Self {
        let mut v = PolyVector::zero();
        v.add_component(Blade::DxDy, &xy);
        v.add_component(Blade::DxDz, &xz);
        v.add_component(Blade::DyDz, &yz);
        v
    }

    pub fn trivector(p: Poly) -> Self {
        PolyVector::from_blade(Blade::DxDyDz, p)
    }

    /// The Heisenberg bracket `z dx^dy`.
    pub fn heisenberg_pi() -> Self {
        PolyVector::from_blade(Blade::DxDy, Poly::z())
    }

    /// The volume blade `dx^dy^dz`.
    pub fn omega() -> Self {
        PolyVector::trivector(Poly::one())
    }

    pub fn add_component(&mut self, b: Blade, p: &Poly) {
        if p.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(b).or_default();
        *entry += p;
        if entry.is_zero() {
            self.coeffs.remove(&b);
        }
    }

    pub fn component(&self, b: Blade) -> Poly {
        self.coeffs.get(&b).cloned().unwrap_or_default()
    }

    pub fn component_ref(&self, b: Blade) -> Option<&Poly> {
        self.coeffs.get(&b)
    }

    pub fn components(&self) -> impl Iterator<Item = (Blade, &Poly)> {
        self.coeffs.iter().map(|(b, p)| (*b, p))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn grading(&self) -> Grading {
        let mut degrees = self.coeffs.keys().map(|b| b.degree());
        match degrees.next() {
            None => Grading::Zero,
            Some(d) if degrees.all(|e| e == d) => Grading::Homogeneous(d),
            Some(_) => Grading::Mixed,
        }
    }

    /// Wedge degree of a homogeneous value; `None` for zero.
    pub fn degree(&self, op: &'static str) -> Result<Option<usize>> {
        match self.grading() {
            Grading::Zero => Ok(None),
            Grading::Homogeneous(d) => Ok(Some(d)),
            Grading::Mixed => Err(Error::MixedDegree { op }),
        }
    }

    pub fn homogeneous_part(&self, k: usize) -> PolyVector {
        PolyVector {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(b, _)| b.degree() == k)
                .map(|(b, p)| (*b, p.clone()))
                .collect(),
        }
    }

    pub fn wedge(&self, other: &PolyVector) -> PolyVector {
        let mut out = PolyVector::zero();
        for (a, p) in &self.coeffs {
            for (b, q) in &other.coeffs {
                if let Some((sign, c)) = a.wedge(*b) {
                    let prod = p * q;
                    if sign > 0 {
                        out.add_component(c, &prod);
                    } else {
                        out.add_component(c, &-prod);
                    }
                }
            }
        }
        out
    }

    /// Coefficient-wise multiplication by a function.
    pub fn mul_poly(&self, f: &Poly) -> PolyVector {
        let mut out = PolyVector::zero();
        for (b, p) in &self.coeffs {
            out.add_component(*b, &(p * f));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> PolyVector {
        let mut out = PolyVector::zero();
        for (b, p) in &self.coeffs {
            out.add_component(*b, &p.scale(c));
        }
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Poly) -> Poly) -> PolyVector {
        let mut out = PolyVector::zero();
        for (b, p) in &self.coeffs {
            out.add_component(*b, &f(p));
        }
        out
    }

    /// Multiplies by `(-1)^k` for odd `k`.
    pub fn signed(self, k: i64) -> PolyVector {
        if k.rem_euclid(2) == 0 {
            self
        } else {
            -self
        }
    }
}

impl From<Poly> for PolyVector {
    fn from(p: Poly) -> Self {
        PolyVector::scalar(p)
    }
}

impl AddAssign<&PolyVector> for PolyVector {
    fn add_assign(&mut self, rhs: &PolyVector) {
        for (b, p) in &rhs.coeffs {
            self.add_component(*b, p);
        }
    }
}

impl SubAssign<&PolyVector> for PolyVector {
    fn sub_assign(&mut self, rhs: &PolyVector) {
        for (b, p) in &rhs.coeffs {
            self.add_component(*b, &-p);
        }
    }
}

impl Neg for PolyVector {
    type Output = PolyVector;
    fn neg(self) -> PolyVector {
        PolyVector {
            coeffs: self.coeffs.into_iter().map(|(b, p)| (b, -p)).collect(),
        }
    }
}

impl Neg for &PolyVector {
    type Output = PolyVector;
    fn neg(self) -> PolyVector {
        -(self.clone())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<&PolyVector> for &PolyVector {
            type Output = PolyVector;
            fn $method(self, rhs: &PolyVector) -> PolyVector {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $tr<PolyVector> for PolyVector {
            type Output = PolyVector;
            fn $method(mut self, rhs: PolyVector) -> PolyVector {
                self.$assign(&rhs);
                self
            }
        }
        impl $tr<&PolyVector> for PolyVector {
            type Output = PolyVector;
            fn $method(mut self, rhs: &PolyVector) -> PolyVector {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<PolyVector> for &PolyVector {
            type Output = PolyVector;
            fn $method(self, rhs: PolyVector) -> PolyVector {
                let mut out = self.clone();
                out.$assign(&rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);
