//! Divisor classes over a fixed basis, the symmetric trilinear form that
//! cubes them, and the linear form that pairs them with the second Chern
//! class.
//!
//! A [`TrilinearForm`] stores one exact integer per unordered label
//! triple (keys are kept in sorted index order, which realizes the full
//! symmetry of the cup product); absent triples are zero. A
//! [`DivisorExpr`] is a linear combination of basis classes whose
//! coefficients are integer polynomials, so whole ample families are
//! single expressions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{div_exact, mod_floor, Int, MultiPoly};

/// Ordered list of unique labels naming the divisor classes of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    labels: Vec<String>,
}

impl Basis {
    pub fn new(labels: Vec<String>) -> Result<Arc<Self>> {
        let mut seen = BTreeSet::new();
        for label in &labels {
            if label.is_empty() {
                return Err(Error::InvalidArgument(
                    "basis labels must be non-empty".to_string(),
                ));
            }
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        Ok(Arc::new(Self { labels }))
    }

    pub fn from_strs(labels: &[&str]) -> Result<Arc<Self>> {
        Self::new(labels.iter().map(|s| s.to_string()).collect())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel {
                label: label.to_string(),
            })
    }

    fn mismatch(&self, other: &Basis) -> Error {
        Error::BasisMismatch {
            left: self.labels.join(","),
            right: other.labels.join(","),
        }
    }
}

fn check_same_basis(a: &Basis, b: &Basis) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(a.mismatch(b))
    }
}

/// A divisor class written in the basis: a finite sum
/// `sum_l coeff_l * l` with polynomial coefficients (free parameters of
/// an ample family stay symbolic). Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorExpr {
    basis: Arc<Basis>,
    coeffs: BTreeMap<usize, MultiPoly>,
}

impl DivisorExpr {
    pub fn zero(basis: &Arc<Basis>) -> Self {
        Self {
            basis: Arc::clone(basis),
            coeffs: BTreeMap::new(),
        }
    }

    /// The single basis class `label` with coefficient 1.
    pub fn class(basis: &Arc<Basis>, label: &str) -> Result<Self> {
        Self::from_coeffs(basis, &[(label, MultiPoly::from(1))])
    }

    /// Builds from `(label, coefficient)` pairs; repeated labels
    /// accumulate.
    pub fn from_coeffs(basis: &Arc<Basis>, pairs: &[(&str, MultiPoly)]) -> Result<Self> {
        let mut coeffs: BTreeMap<usize, MultiPoly> = BTreeMap::new();
        for (label, c) in pairs {
            let i = basis.index_of(label)?;
            let entry = coeffs.entry(i).or_insert_with(MultiPoly::zero);
            *entry = &*entry + c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(Self {
            basis: Arc::clone(basis),
            coeffs,
        })
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of `label` (zero when absent).
    pub fn coefficient(&self, label: &str) -> Result<MultiPoly> {
        let i = self.basis.index_of(label)?;
        Ok(self.coeffs.get(&i).cloned().unwrap_or_else(MultiPoly::zero))
    }

    /// Iterates `(label, coefficient)` over the nonzero coefficients in
    /// basis order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &MultiPoly)> {
        self.coeffs
            .iter()
            .map(|(&i, c)| (self.basis.labels()[i].as_str(), c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_basis(&self.basis, &other.basis)?;
        let mut coeffs = self.coeffs.clone();
        for (&i, c) in &other.coeffs {
            let entry = coeffs.entry(i).or_insert_with(MultiPoly::zero);
            *entry = &*entry + c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(Self {
            basis: Arc::clone(&self.basis),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            basis: Arc::clone(&self.basis),
            coeffs: self.coeffs.iter().map(|(&i, c)| (i, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiplies every coefficient by the polynomial `factor`.
    pub fn scale(&self, factor: &MultiPoly) -> Self {
        let mut coeffs: BTreeMap<usize, MultiPoly> = self
            .coeffs
            .iter()
            .map(|(&i, c)| (i, c * factor))
            .collect();
        coeffs.retain(|_, c| !c.is_zero());
        Self {
            basis: Arc::clone(&self.basis),
            coeffs,
        }
    }

    /// Substitutes into every coefficient polynomial.
    pub fn substitute(&self, bindings: &BTreeMap<String, MultiPoly>) -> Self {
        let mut coeffs: BTreeMap<usize, MultiPoly> = self
            .coeffs
            .iter()
            .map(|(&i, c)| (i, c.substitute(bindings)))
            .collect();
        coeffs.retain(|_, c| !c.is_zero());
        Self {
            basis: Arc::clone(&self.basis),
            coeffs,
        }
    }

    /// Sorted union of the free parameters appearing in the coefficients.
    pub fn params(&self) -> Vec<String> {
        let mut set = BTreeSet::new();
        for c in self.coeffs.values() {
            set.extend(c.vars().iter().cloned());
        }
        set.into_iter().collect()
    }

    /// Splits into the part with constant coefficients and the part whose
    /// coefficients carry free parameters.
    pub fn split_constant_parametric(&self) -> (Self, Self) {
        let mut constant = BTreeMap::new();
        let mut parametric = BTreeMap::new();
        for (&i, c) in &self.coeffs {
            if c.is_constant() {
                constant.insert(i, c.clone());
            } else {
                parametric.insert(i, c.clone());
            }
        }
        (
            Self {
                basis: Arc::clone(&self.basis),
                coeffs: constant,
            },
            Self {
                basis: Arc::clone(&self.basis),
                coeffs: parametric,
            },
        )
    }
}

impl fmt::Display for DivisorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (label, c)) in self.entries().enumerate() {
            let lead = n == 0;
            if let Some(k) = c.as_constant() {
                let sign = k.is_negative();
                match (lead, sign) {
                    (true, true) => write!(f, "-")?,
                    (true, false) => {}
                    (false, true) => write!(f, " - ")?,
                    (false, false) => write!(f, " + ")?,
                }
                if k.abs().is_one() {
                    write!(f, "{label}")?;
                } else {
                    write!(f, "{}*{label}", k.abs())?;
                }
            } else {
                if !lead {
                    write!(f, " + ")?;
                }
                if c.num_terms() > 1 {
                    write!(f, "({c})*{label}")?;
                } else {
                    write!(f, "{c}*{label}")?;
                }
            }
        }
        Ok(())
    }
}

/// A symmetric integer-valued trilinear form on the basis (the
/// cup-product table of a threefold).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrilinearForm {
    basis: Arc<Basis>,
    entries: BTreeMap<[usize; 3], Int>,
}

impl TrilinearForm {
    pub fn new(basis: &Arc<Basis>) -> Self {
        Self {
            basis: Arc::clone(basis),
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    fn key(&self, l1: &str, l2: &str, l3: &str) -> Result<[usize; 3]> {
        let mut key = [
            self.basis.index_of(l1)?,
            self.basis.index_of(l2)?,
            self.basis.index_of(l3)?,
        ];
        key.sort_unstable();
        Ok(key)
    }

    /// Records `f(l1, l2, l3) = value` (in every argument order). Setting
    /// the same unordered triple twice is allowed only with the same
    /// value; zero values are simply not stored.
    pub fn set(&mut self, l1: &str, l2: &str, l3: &str, value: Int) -> Result<()> {
        let key = self.key(l1, l2, l3)?;
        match self.entries.get(&key) {
            Some(old) if *old == value => Ok(()),
            Some(old) => Err(Error::InconsistentModel(format!(
                "triple ({l1}, {l2}, {l3}) assigned both {old} and {value}"
            ))),
            None => {
                if !value.is_zero() {
                    self.entries.insert(key, value);
                }
                Ok(())
            }
        }
    }

    /// The value on an unordered label triple (zero when absent).
    pub fn value(&self, l1: &str, l2: &str, l3: &str) -> Result<Int> {
        let key = self.key(l1, l2, l3)?;
        Ok(self.entries.get(&key).cloned().unwrap_or_else(Int::zero))
    }

    /// Iterates the stored (nonzero) entries as `([l1, l2, l3], value)`
    /// with the labels in basis order.
    pub fn entries(&self) -> impl Iterator<Item = ([&str; 3], &Int)> {
        self.entries.iter().map(|(k, v)| {
            (
                [
                    self.basis.labels()[k[0]].as_str(),
                    self.basis.labels()[k[1]].as_str(),
                    self.basis.labels()[k[2]].as_str(),
                ],
                v,
            )
        })
    }

    /// `f(d1, d2, d3)`, extended trilinearly from the basis values. With
    /// repeated arguments this is the standard multinomial expansion
    /// (coefficient 3 on square terms, 6 on mixed triples) -- nothing is
    /// inserted by hand, it falls out of the triple sum.
    pub fn triple_product(
        &self,
        d1: &DivisorExpr,
        d2: &DivisorExpr,
        d3: &DivisorExpr,
    ) -> Result<MultiPoly> {
        check_same_basis(&self.basis, &d1.basis)?;
        check_same_basis(&self.basis, &d2.basis)?;
        check_same_basis(&self.basis, &d3.basis)?;
        let mut acc = MultiPoly::zero();
        for (&i, ci) in &d1.coeffs {
            for (&j, cj) in &d2.coeffs {
                for (&k, ck) in &d3.coeffs {
                    let mut key = [i, j, k];
                    key.sort_unstable();
                    let Some(v) = self.entries.get(&key) else {
                        continue;
                    };
                    acc = &acc + &(ci * cj * ck).scale(v);
                }
            }
        }
        Ok(acc)
    }

    /// `f(d, d, d)`, the cubic self-intersection.
    pub fn cube(&self, d: &DivisorExpr) -> Result<MultiPoly> {
        self.triple_product(d, d, d)
    }

    /// Expands `(p + l)^3` block by block and returns both ways of
    /// recombining the blocks; see [`CubeSplit`].
    pub fn cube_split(&self, p: &DivisorExpr, l: &DivisorExpr) -> Result<CubeSplit> {
        let p3 = self.triple_product(p, p, p)?;
        let p2l = self.triple_product(p, p, l)?;
        let pl2 = self.triple_product(p, l, l)?;
        let l3 = self.triple_product(l, l, l)?;
        let paper_sum = &(&(&p3 + &p2l) + &pl2) + &l3;
        let three = MultiPoly::from(3);
        let standard_sum = &(&(&p3 + &(&three * &p2l)) + &(&three * &pl2)) + &l3;
        Ok(CubeSplit {
            p3,
            p2l,
            pl2,
            l3,
            paper_sum,
            standard_sum,
        })
    }

    /// The cube of the generic class `sum_i t_i * l_i` as a cubic
    /// polynomial in fresh variables `t0, t1, ...` (one per basis label,
    /// in basis order).
    pub fn generic_cube(&self) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (key, v) in &self.entries {
            let [i, j, k] = *key;
            // Number of ordered triples realizing the sorted key.
            let mult: i64 = if i == j && j == k {
                1
            } else if i == j || j == k {
                3
            } else {
                6
            };
            let term = MultiPoly::var(&format!("t{i}"))
                * MultiPoly::var(&format!("t{j}"))
                * MultiPoly::var(&format!("t{k}"));
            acc = &acc + &term.scale(&(v * Int::from(mult)));
        }
        acc
    }

    /// Decides whether `prime` divides `D^3` for every integer class `D`
    /// in the span of the basis, by reducing the generic cube as a
    /// function on the prime field (Fermat's little theorem); exact, no
    /// sampling.
    pub fn cubic_divisibility_fermat(&self, prime: &Int) -> Result<bool> {
        Ok(self.generic_cube().fermat_reduce(prime)?.is_zero())
    }
}

/// The four blocks of `(p + l)^3 = p^3 + 3 p^2 l + 3 p l^2 + l^3` plus
/// the two ways of summing them.
///
/// `paper_sum` is the plain sum `p3 + p2l + pl2 + l3` of the four blocks
/// (the form in which such decompositions are usually displayed);
/// `standard_sum` carries the multinomial coefficients and always equals
/// `cube(p + l)`. The two agree exactly when the cross blocks vanish, so
/// both are reported and callers choose explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeSplit {
    pub p3: MultiPoly,
    pub p2l: MultiPoly,
    pub pl2: MultiPoly,
    pub l3: MultiPoly,
    pub paper_sum: MultiPoly,
    pub standard_sum: MultiPoly,
}

/// An integer-valued linear form on the basis (the pairing with the
/// second Chern class).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    basis: Arc<Basis>,
    entries: BTreeMap<usize, Int>,
}

impl LinearForm {
    pub fn new(basis: &Arc<Basis>) -> Self {
        Self {
            basis: Arc::clone(basis),
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    /// Records `lf(label) = value`; duplicate assignments must agree.
    pub fn set(&mut self, label: &str, value: Int) -> Result<()> {
        let i = self.basis.index_of(label)?;
        match self.entries.get(&i) {
            Some(old) if *old == value => Ok(()),
            Some(old) => Err(Error::InconsistentModel(format!(
                "label {label} assigned both {old} and {value}"
            ))),
            None => {
                if !value.is_zero() {
                    self.entries.insert(i, value);
                }
                Ok(())
            }
        }
    }

    /// The value on a basis label (zero when absent).
    pub fn value(&self, label: &str) -> Result<Int> {
        let i = self.basis.index_of(label)?;
        Ok(self.entries.get(&i).cloned().unwrap_or_else(Int::zero))
    }

    /// Iterates the stored (nonzero) values as `(label, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &Int)> {
        self.entries
            .iter()
            .map(|(&i, v)| (self.basis.labels()[i].as_str(), v))
    }

    /// `lf(d)`, extended linearly; polynomial coefficients pass through.
    pub fn pair(&self, d: &DivisorExpr) -> Result<MultiPoly> {
        check_same_basis(&self.basis, &d.basis)?;
        let mut acc = MultiPoly::zero();
        for (&i, c) in &d.coeffs {
            let Some(v) = self.entries.get(&i) else {
                continue;
            };
            acc = &acc + &c.scale(v);
        }
        Ok(acc)
    }
}

/// A divisor class with a cleared denominator: the class is
/// `numer / denom`, where `numer` has integer coefficients.
///
/// Classes like this arise as fractional combinations of basis classes
/// that are nevertheless integral on the actual lattice; the engine never
/// stores rational coefficients, it carries the denominator alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledDivisor {
    pub numer: DivisorExpr,
    pub denom: Int,
}

impl ScaledDivisor {
    pub fn new(numer: DivisorExpr, denom: Int) -> Result<Self> {
        if !denom.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "denominator must be positive, got {denom}"
            )));
        }
        Ok(Self { numer, denom })
    }
}

/// One generator fed to [`linear_divisibility`]: either an explicit
/// (possibly denominator-scaled) expression paired through the form, or a
/// value known from surface geometry.
#[derive(Debug, Clone)]
pub struct Generator {
    pub name: String,
    pub source: GeneratorSource,
}

#[derive(Debug, Clone)]
pub enum GeneratorSource {
    Expr(ScaledDivisor),
    Value(Int),
}

impl Generator {
    pub fn from_expr(name: &str, sd: ScaledDivisor) -> Self {
        Self {
            name: name.to_string(),
            source: GeneratorSource::Expr(sd),
        }
    }

    pub fn from_value(name: &str, value: Int) -> Self {
        Self {
            name: name.to_string(),
            source: GeneratorSource::Value(value),
        }
    }
}

/// One row of a [`DivisibilityReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWitness {
    pub name: String,
    pub value: Int,
    pub residue: Int,
}

/// Result of [`linear_divisibility`]: every generator with its pairing
/// value and residue; `divisible` holds when every residue vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub modulus: Int,
    pub divisible: bool,
    pub witnesses: Vec<GeneratorWitness>,
}

impl DivisibilityReport {
    /// The witnesses with nonzero residue.
    pub fn failing(&self) -> impl Iterator<Item = &GeneratorWitness> {
        self.witnesses.iter().filter(|w| !w.residue.is_zero())
    }
}

/// Checks `modulus | lf(g)` for every generator `g`.
///
/// Expression generators are paired through `lf` and must evaluate to a
/// constant that their denominator divides exactly (hard error
/// otherwise -- a fractional generator that pairs non-integrally is not
/// a lattice class, so the input is wrong, not the report).
pub fn linear_divisibility(
    lf: &LinearForm,
    generators: &[Generator],
    modulus: &Int,
) -> Result<DivisibilityReport> {
    if !modulus.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "modulus must be positive, got {modulus}"
        )));
    }
    let mut witnesses = Vec::with_capacity(generators.len());
    for g in generators {
        let value = match &g.source {
            GeneratorSource::Value(v) => v.clone(),
            GeneratorSource::Expr(sd) => {
                let pairing = lf.pair(&sd.numer)?;
                let c = pairing.as_constant().ok_or_else(|| Error::NonConstant {
                    context: format!("pairing of generator `{}`", g.name),
                    value: pairing.to_string(),
                })?;
                div_exact(&c, &sd.denom, "generator pairing").map_err(|_| {
                    Error::NonIntegralPairing {
                        generator: g.name.clone(),
                        numerator: c,
                        denominator: sd.denom.clone(),
                    }
                })?
            }
        };
        witnesses.push(GeneratorWitness {
            name: g.name.clone(),
            residue: mod_floor(&value, modulus),
            value,
        });
    }
    Ok(DivisibilityReport {
        modulus: modulus.clone(),
        divisible: witnesses.iter().all(|w| w.residue.is_zero()),
        witnesses,
    })
}
