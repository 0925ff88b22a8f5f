//! Homotopy transfer of the shifted Schouten algebra `C[2]` onto its
//! cohomology `H[2]`.
//!
//! The contraction is `include` / [`Heisenberg::normal_form`]: every cocycle
//! `u` splits as `include(class) + delta(primitive)`. On a word
//! `y_1 ... y_n` the order `n - 1` equation reads
//!
//! ```text
//! include(d_n(w)) + delta(phi_n(w)) = R(w)
//! R(w) = sum_{I, 0 in I}  nu_I D2(phi(w_I), phi(w_J))
//!      - sum_{2 <= |I| < n} nu_I phi(d(w_I), w_J)
//! ```
//!
//! where `J` is the complement of `I`, `nu_I` is the Koszul sign of moving
//! `I` to the front and `D2(u, v) = (-1)^|u| [u, v]` with `|u|` the degree in
//! `C[2]`. Requiring `0 in I` in the first sum visits every unordered split
//! exactly once, which absorbs the usual factor `1/2`. The recursion then sets
//! `d_n(w) = class(R)` and `phi_n(w) = -primitive(R)`.
//!
//! All values are computed pointwise on concrete words and memoized in a
//! [`TransferTable`].

use std::collections::HashMap;

use crate::cohomology::{CohClass, Heisenberg, NormalForm};
use crate::error::{Error, Result};
use crate::polyvector::PolyVector;

/// A word `y_1 ... y_n` in the graded symmetric algebra of `H[2]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassWord {
    entries: Vec<CohClass>,
}

impl ClassWord {
    pub fn new(entries: Vec<CohClass>) -> Self {
        ClassWord { entries }
    }

    pub fn entries(&self) -> &[CohClass] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of the `C[2]` degrees of the entries.
    pub fn shifted_degree(&self) -> i64 {
        self.entries.iter().map(CohClass::shifted_degree).sum()
    }

    pub fn has_zero_entry(&self) -> bool {
        self.entries.iter().any(CohClass::is_zero)
    }

    /// The sorted word together with the Koszul sign `w = sign * sorted`.
    pub fn canonical(&self) -> (i8, ClassWord) {
        let mut w = self.entries.clone();
        let mut sign = 1i8;
        for i in 0..w.len() {
            for j in 0..w.len().saturating_sub(1 + i) {
                if w[j] > w[j + 1] {
                    if odd(w[j].shifted_degree() * w[j + 1].shifted_degree()) {
                        sign = -sign;
                    }
                    w.swap(j, j + 1);
                }
            }
        }
        (sign, ClassWord::new(w))
    }

    fn select(&self, indices: &[usize]) -> Vec<CohClass> {
        indices.iter().map(|&i| self.entries[i].clone()).collect()
    }
}

impl From<Vec<CohClass>> for ClassWord {
    fn from(entries: Vec<CohClass>) -> Self {
        ClassWord::new(entries)
    }
}

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// Sign of the permutation that moves the entries at `subset` to the front,
/// keeping both parts in their original order. Degrees are those of `H[2]`.
pub fn koszul_sign(word: &ClassWord, subset: &[usize]) -> i8 {
    let deg: Vec<i64> = word.entries.iter().map(CohClass::shifted_degree).collect();
    let mut parity = 0i64;
    for &i in subset {
        let passed: i64 = (0..i).filter(|j| !subset.contains(j)).map(|j| deg[j]).sum();
        parity += deg[i] * passed;
    }
    if odd(parity) {
        -1
    } else {
        1
    }
}

/// `D2(u, v) = (-1)^|u| [u, v]` with `|u| = deg(u) - 2`.
pub fn shifted_bracket(ctx: &Heisenberg, u: &PolyVector, v: &PolyVector) -> Result<PolyVector> {
    let Some(k) = u.degree("shifted_bracket")? else {
        return Ok(PolyVector::zero());
    };
    Ok(ctx.bracket(u, v)?.signed(k as i64 - 2))
}

/// Value of `d_n` on a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DValue {
    Zero,
    Class(CohClass),
    /// The residual was not a cocycle and is recorded as is.
    Raw(PolyVector),
}

impl DValue {
    pub fn is_zero(&self) -> bool {
        match self {
            DValue::Zero => true,
            DValue::Class(c) => c.is_zero(),
            DValue::Raw(r) => r.is_zero(),
        }
    }

    fn signed(self, sign: i8) -> DValue {
        if sign > 0 {
            return self;
        }
        match self {
            DValue::Zero => DValue::Zero,
            DValue::Class(c) => DValue::Class(c.neg()),
            DValue::Raw(r) => DValue::Raw(-r),
        }
    }
}

/// Outcome of one step of the recursion on a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub residual: PolyVector,
    /// CE degree of the residual, `sum |y_i| + 3`.
    pub target_degree: i64,
    pub is_cocycle: bool,
    /// Present whenever the residual is a cocycle in an admissible degree.
    pub normal: Option<NormalForm>,
    pub d_value: DValue,
    pub phi_value: PolyVector,
}

impl ResidualReport {
    fn zero(target_degree: i64) -> Self {
        ResidualReport {
            residual: PolyVector::zero(),
            target_degree,
            is_cocycle: true,
            normal: None,
            d_value: DValue::Zero,
            phi_value: PolyVector::zero(),
        }
    }

    /// The residual with every coefficient replaced by its `z`-free part.
    pub fn z_constant_part(&self) -> PolyVector {
        self.residual.map_coeffs(|p| p.z_split().0)
    }

    /// True when no choice of `phi` cancels the residual, i.e. `d` is nonzero.
    pub fn obstructed(&self) -> bool {
        !self.d_value.is_zero()
    }

    fn signed(self, sign: i8) -> Self {
        if sign > 0 {
            return self;
        }
        ResidualReport {
            residual: -self.residual,
            target_degree: self.target_degree,
            is_cocycle: self.is_cocycle,
            normal: self.normal.map(|n| NormalForm {
                class: n.class.neg(),
                primitive: -n.primitive,
            }),
            d_value: self.d_value.signed(sign),
            phi_value: -self.phi_value,
        }
    }
}

/// Memoized `d_n` and `phi_n`, keyed by canonical words, for one session.
#[derive(Clone, Debug)]
pub struct TransferTable {
    ctx: Heisenberg,
    memo: HashMap<ClassWord, ResidualReport>,
}

impl TransferTable {
    pub fn new(ctx: Heisenberg) -> Self {
        TransferTable {
            ctx,
            memo: HashMap::new(),
        }
    }

    pub fn context(&self) -> &Heisenberg {
        &self.ctx
    }

    /// Number of memoized words.
    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// `phi_n(w)`; `phi_1` is the inclusion.
    pub fn phi(&mut self, word: &ClassWord) -> Result<PolyVector> {
        match word.len() {
            0 => Err(Error::Arity {
                op: "phi",
                message: "empty word".into(),
            }),
            1 => self.ctx.include(&word.entries[0]),
            _ => Ok(self.report(word)?.phi_value),
        }
    }

    /// `d_n(w)` for `n >= 2`.
    pub fn d(&mut self, word: &ClassWord) -> Result<DValue> {
        if word.len() < 2 {
            return Err(Error::Arity {
                op: "d",
                message: "words of length at least 2 are required".into(),
            });
        }
        Ok(self.report(word)?.d_value)
    }

    /// Induced bracket on cohomology. Targets outside degrees 0..=3 give the
    /// zero class of the nearest degree.
    pub fn d2(&mut self, c1: &CohClass, c2: &CohClass) -> Result<CohClass> {
        let word = ClassWord::new(vec![c1.clone(), c2.clone()]);
        let target = word.shifted_degree() + 3;
        match self.d(&word)? {
            DValue::Class(c) => Ok(c),
            DValue::Zero => Ok(CohClass::zero(target.clamp(0, 3) as usize)),
            DValue::Raw(_) => Err(Error::NotACocycle),
        }
    }

    pub fn phi2(&mut self, c1: &CohClass, c2: &CohClass) -> Result<PolyVector> {
        self.phi(&ClassWord::new(vec![c1.clone(), c2.clone()]))
    }

    /// The cochain `R` that `include(d_{k+1}) + delta(phi_{k+1})` must equal
    /// on a word of `k + 1` entries.
    pub fn formality_residual(&mut self, k: usize, word: &ClassWord) -> Result<PolyVector> {
        check_arity(k, word)?;
        let target = word.shifted_degree() + 3;
        if !(0..=3).contains(&target) {
            return Err(Error::DegreeOutOfRange {
                op: "formality_residual",
                degree: (target - 2) as i32,
            });
        }
        if word.has_zero_entry() {
            return Ok(PolyVector::zero());
        }
        self.residual(word)
    }

    /// Runs the step of order `k` on a word of `k + 1` entries and records the
    /// result. Out-of-range targets give a zero report.
    pub fn formality_step(&mut self, k: usize, word: &ClassWord) -> Result<ResidualReport> {
        check_arity(k, word)?;
        self.report(word)
    }

    fn report(&mut self, word: &ClassWord) -> Result<ResidualReport> {
        let target = word.shifted_degree() + 3;
        if !(0..=3).contains(&target) || word.has_zero_entry() {
            return Ok(ResidualReport::zero(target));
        }
        let (sign, sorted) = word.canonical();
        if let Some(hit) = self.memo.get(&sorted) {
            return Ok(hit.clone().signed(sign));
        }
        let report = self.compute(&sorted, target)?;
        self.memo.insert(sorted, report.clone());
        Ok(report.signed(sign))
    }

    fn compute(&mut self, word: &ClassWord, target: i64) -> Result<ResidualReport> {
        let residual = self.residual(word)?;
        let k = target as usize;
        if !residual.is_zero() && !self.ctx.is_cocycle(&residual)? {
            return Ok(ResidualReport {
                d_value: DValue::Raw(residual.clone()),
                residual,
                target_degree: target,
                is_cocycle: false,
                normal: None,
                phi_value: PolyVector::zero(),
            });
        }
        let normal = self.ctx.normal_form_at(&residual, k)?;
        let d_value = if normal.class.is_zero() {
            DValue::Zero
        } else {
            DValue::Class(normal.class.clone())
        };
        Ok(ResidualReport {
            residual,
            target_degree: target,
            is_cocycle: true,
            d_value,
            phi_value: -normal.primitive.clone(),
            normal: Some(normal),
        })
    }

    fn residual(&mut self, word: &ClassWord) -> Result<PolyVector> {
        let n = word.len();
        let mut r = PolyVector::zero();
        for mask in 1u32..(1 << n) - 1 {
            let (inside, outside) = split(mask, n);
            let nu = koszul_sign(word, &inside);
            let part = ClassWord::new(word.select(&inside));
            let rest = ClassWord::new(word.select(&outside));

            if mask & 1 == 1 {
                let u = self.phi(&part)?;
                let v = self.phi(&rest)?;
                r = r + shifted_bracket(&self.ctx, &u, &v)?.signed(i64::from(nu < 0));
            }

            if inside.len() >= 2 {
                let c = match self.d(&part)? {
                    DValue::Zero => continue,
                    DValue::Class(c) if c.is_zero() => continue,
                    DValue::Class(c) => c,
                    DValue::Raw(_) => return Err(Error::RawEntry),
                };
                let mut entries = vec![c];
                entries.extend(rest.entries);
                let v = self.phi(&ClassWord::new(entries))?;
                r = r - v.signed(i64::from(nu < 0));
            }
        }
        Ok(r)
    }
}

fn check_arity(k: usize, word: &ClassWord) -> Result<()> {
    if k == 0 || word.len() != k + 1 {
        return Err(Error::Arity {
            op: "formality",
            message: format!("order {k} needs {} classes, got {}", k + 1, word.len()),
        });
    }
    Ok(())
}

fn split(mask: u32, n: usize) -> (Vec<usize>, Vec<usize>) {
    (0..n).partition(|i| mask & (1 << i) != 0)
}

/// `d_2(c1, c2)` in a fresh table.
pub fn d2(ctx: &Heisenberg, c1: &CohClass, c2: &CohClass) -> Result<CohClass> {
    TransferTable::new(ctx.clone()).d2(c1, c2)
}

/// `phi_2(c1, c2)` in a fresh table.
pub fn phi2(ctx: &Heisenberg, c1: &CohClass, c2: &CohClass) -> Result<PolyVector> {
    TransferTable::new(ctx.clone()).phi2(c1, c2)
}
