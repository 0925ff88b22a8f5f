//! JSON representation.
//!
//! ```json
//! {"components": [{"blade": "dx^dy", "terms": [{"coeff": "1/2", "exp": [0, 0, 1]}]}]}
//! ```
//!
//! A polynomial is `{"terms": [...]}` with terms in print order, a cochain
//! lists its nonzero components in basis order (`"1"` names the scalar blade)
//! and a class is tagged by `"class"`:
//! `{"class": "H1", "g0": {...}, "psi": {...}}`. Coefficients are exact
//! `"num/den"` strings, or `"num"` for integers.

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::cohomology::{CohClass, NormalForm};
use crate::poly::{Monomial, Poly, Rational, Var};
use crate::polyvector::{Blade, PolyVector};
use crate::transfer::{DValue, ResidualReport};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermRepr {
    pub coeff: String,
    pub exp: [u32; 3],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyRepr {
    pub terms: Vec<TermRepr>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentRepr {
    pub blade: String,
    pub terms: Vec<TermRepr>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyVectorRepr {
    pub components: Vec<ComponentRepr>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum ClassRepr {
    H0 { psi: Poly },
    H1 { g0: Poly, psi: Poly },
    H2 { g: Poly },
    H3 { p: Poly },
}

fn terms_of(p: &Poly) -> Vec<TermRepr> {
    p.sorted_terms()
        .into_iter()
        .map(|(m, c)| TermRepr {
            coeff: c.to_string(),
            exp: Var::ALL.map(|v| m.exp(v)),
        })
        .collect()
}

fn poly_of(terms: Vec<TermRepr>) -> Result<Poly, String> {
    let mut p = Poly::zero();
    for t in terms {
        let c: Rational = t
            .coeff
            .parse()
            .map_err(|_| format!("invalid coefficient {:?}", t.coeff))?;
        let m = Monomial::new(t.exp[0], t.exp[1], t.exp[2]);
        if !p.coeff(m).is_zero() {
            return Err(format!("repeated exponent {:?}", t.exp));
        }
        p.add_term(m, c);
    }
    Ok(p)
}

impl From<Poly> for PolyRepr {
    fn from(p: Poly) -> Self {
        PolyRepr {
            terms: terms_of(&p),
        }
    }
}

impl TryFrom<PolyRepr> for Poly {
    type Error = String;
    fn try_from(r: PolyRepr) -> Result<Self, String> {
        poly_of(r.terms)
    }
}

impl From<PolyVector> for PolyVectorRepr {
    fn from(u: PolyVector) -> Self {
        PolyVectorRepr {
            components: u
                .components()
                .map(|(b, p)| ComponentRepr {
                    blade: b.name().to_string(),
                    terms: terms_of(p),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyVectorRepr> for PolyVector {
    type Error = String;
    fn try_from(r: PolyVectorRepr) -> Result<Self, String> {
        let mut u = PolyVector::zero();
        for c in r.components {
            let b =
                Blade::from_name(&c.blade).ok_or_else(|| format!("unknown blade {:?}", c.blade))?;
            if u.component_ref(b).is_some() {
                return Err(format!("repeated blade {:?}", c.blade));
            }
            u.add_component(b, &poly_of(c.terms)?);
        }
        Ok(u)
    }
}

impl From<CohClass> for ClassRepr {
    fn from(c: CohClass) -> Self {
        match c {
            CohClass::H0 { psi } => ClassRepr::H0 { psi },
            CohClass::H1 { g0, psi } => ClassRepr::H1 { g0, psi },
            CohClass::H2 { g } => ClassRepr::H2 { g },
            CohClass::H3 { p } => ClassRepr::H3 { p },
        }
    }
}

impl TryFrom<ClassRepr> for CohClass {
    type Error = String;
    fn try_from(r: ClassRepr) -> Result<Self, String> {
        let c = match r {
            ClassRepr::H0 { psi } => CohClass::H0 { psi },
            ClassRepr::H1 { g0, psi } => CohClass::H1 { g0, psi },
            ClassRepr::H2 { g } => CohClass::H2 { g },
            ClassRepr::H3 { p } => CohClass::H3 { p },
        };
        c.normalized().map_err(|e| e.to_string())
    }
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            class: &'a CohClass,
            primitive: &'a PolyVector,
        }
        Repr {
            class: &self.class,
            primitive: &self.primitive,
        }
        .serialize(s)
    }
}

impl Serialize for DValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(tag = "kind", rename_all = "lowercase")]
        enum Repr<'a> {
            Zero,
            Class { value: &'a CohClass },
            Raw { value: &'a PolyVector },
        }
        match self {
            DValue::Zero => Repr::Zero,
            DValue::Class(c) => Repr::Class { value: c },
            DValue::Raw(r) => Repr::Raw { value: r },
        }
        .serialize(s)
    }
}

impl Serialize for ResidualReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            residual: &'a PolyVector,
            target_degree: i64,
            is_cocycle: bool,
            normal: &'a Option<NormalForm>,
            d: &'a DValue,
            phi: &'a PolyVector,
            z_constant_part: PolyVector,
            obstructed: bool,
        }
        Repr {
            residual: &self.residual,
            target_degree: self.target_degree,
            is_cocycle: self.is_cocycle,
            normal: &self.normal,
            d: &self.d_value,
            phi: &self.phi_value,
            z_constant_part: self.z_constant_part(),
            obstructed: self.obstructed(),
        }
        .serialize(s)
    }
}
