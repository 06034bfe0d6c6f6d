//! Sparse multivariate polynomials with exact integer coefficients.
//!
//! Canonical form invariants, maintained by every operation:
//! * the variable list is sorted, duplicate-free, and contains exactly the
//!   variables that occur in some term with a positive exponent;
//! * no stored coefficient is zero (the zero polynomial has no terms);
//! * terms are keyed by exponent vectors aligned to the variable list and
//!   ordered graded-lexicographically.
//!
//! Because the form is canonical, two polynomials are equal as functions
//! if and only if they are structurally equal, and [`MultiPoly::to_string`]
//! followed by [`MultiPoly::parse`] is the identity.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, is_prime, mod_floor, Int};

/// Exponent vector of a single term, aligned to the owning polynomial's
/// variable list.
///
/// Ordered graded-lexicographically: lower total degree first, ties broken
/// by the exponent vector's lexicographic order. Iterating a term map in
/// reverse therefore yields the conventional leading term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the integers, always kept in
/// canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Int>,
}

/// Returns true when `name` is a valid variable name:
/// `[A-Za-z][A-Za-z0-9_]*`.
pub(crate) fn is_valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl MultiPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// A constant polynomial.
    pub fn constant(value: Int) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial(Vec::new()), value);
        }
        Self {
            vars: Vec::new(),
            terms,
        }
    }

    /// The polynomial consisting of the single variable `name`.
    ///
    /// Panics if `name` is not a valid variable name
    /// (`[A-Za-z][A-Za-z0-9_]*`); variable names reaching this constructor
    /// come from source code or from the polynomial parser, which only
    /// produces valid names.
    pub fn var(name: &str) -> Self {
        assert!(
            is_valid_var_name(name),
            "invalid variable name `{name}`: expected [A-Za-z][A-Za-z0-9_]*"
        );
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Int::one());
        Self {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Parses polynomial text (integer literals, variables, `+ - * ^`,
    /// parentheses) into canonical form.
    pub fn parse(text: &str) -> Result<Self> {
        super::parse::parse_poly(text)
    }

    /// The sorted list of variables occurring in the polynomial.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Number of stored (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over `(exponent vector, coefficient)` pairs in ascending
    /// graded-lex order; exponent vectors align with [`MultiPoly::vars`].
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Int)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the polynomial has no variables.
    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// Returns the value of a constant polynomial, or `None` if any
    /// variable occurs.
    pub fn as_constant(&self) -> Option<Int> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(Int::zero),
        )
    }

    /// Total degree of the polynomial; 0 for constants (including zero).
    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Coefficient of the monomial described by `exps` (variables absent
    /// from `exps` must have exponent zero).
    pub fn coefficient(&self, exps: &[(&str, u32)]) -> Int {
        let mut target = vec![0u32; self.vars.len()];
        for (name, e) in exps {
            match self.vars.iter().position(|v| v == name) {
                Some(i) => target[i] = *e,
                None if *e == 0 => {}
                None => return Int::zero(),
            }
        }
        self.terms
            .get(&Monomial(target))
            .cloned()
            .unwrap_or_else(Int::zero)
    }

    /// Rebuilds canonical form from raw parts: drops zero coefficients and
    /// prunes variables that no longer occur.
    fn normalize(vars: Vec<String>, terms: BTreeMap<Monomial, Int>) -> Self {
        let mut terms: BTreeMap<Monomial, Int> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let used: Vec<bool> = (0..vars.len())
            .map(|i| terms.keys().any(|m| m.0[i] != 0))
            .collect();
        if used.iter().any(|&u| !u) {
            let keep: Vec<usize> = (0..vars.len()).filter(|&i| used[i]).collect();
            let vars: Vec<String> = keep.iter().map(|&i| vars[i].clone()).collect();
            terms = terms
                .into_iter()
                .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c))
                .collect();
            return Self { vars, terms };
        }
        Self { vars, terms }
    }

    /// Reindexes `self`'s exponent vectors into the (sorted) variable
    /// superset `target`.
    fn align_to(&self, target: &[String]) -> BTreeMap<Monomial, Int> {
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .binary_search(v)
                    .expect("alignment target must contain every variable")
            })
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u32; target.len()];
                for (i, &e) in m.0.iter().enumerate() {
                    exps[positions[i]] = e;
                }
                (Monomial(exps), c.clone())
            })
            .collect()
    }

    fn merged_vars(&self, other: &Self) -> Vec<String> {
        let mut set: BTreeSet<String> = self.vars.iter().cloned().collect();
        set.extend(other.vars.iter().cloned());
        set.into_iter().collect()
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: &Int) -> Self {
        Self::normalize(
            self.vars.clone(),
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c * k))
                .collect(),
        )
    }

    /// `self^exp` by repeated multiplication (`exp = 0` gives 1).
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(Int::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Divides every coefficient exactly by `k`, or reports which context
    /// failed when some coefficient is not a multiple of `k`.
    pub fn div_exact(&self, k: &Int, context: &str) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.clone(), super::div_exact(c, k, context)?);
        }
        Ok(Self::normalize(self.vars.clone(), terms))
    }

    /// Substitutes polynomials for variables. Bound names missing from the
    /// polynomial are ignored; unbound variables stay symbolic.
    pub fn substitute(&self, bindings: &BTreeMap<String, MultiPoly>) -> Self {
        let mut powers: Vec<Option<Vec<MultiPoly>>> = vec![None; self.vars.len()];
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = powers[i].get_or_insert_with(|| {
                    let base = bindings
                        .get(&self.vars[i])
                        .cloned()
                        .unwrap_or_else(|| Self::var(&self.vars[i]));
                    vec![Self::constant(Int::one()), base]
                });
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Renames variables according to `renames` (a special case of
    /// substitution by fresh variables).
    pub fn rename_vars(&self, renames: &BTreeMap<String, String>) -> Self {
        let bindings: BTreeMap<String, MultiPoly> = renames
            .iter()
            .map(|(from, to)| (from.clone(), Self::var(to)))
            .collect();
        self.substitute(&bindings)
    }

    /// Evaluates at an integer point; every variable must be bound.
    pub fn eval(&self, env: &BTreeMap<String, Int>) -> Result<Int> {
        for v in &self.vars {
            if !env.contains_key(v) {
                return Err(Error::InvalidArgument(format!(
                    "evaluation point does not bind variable `{v}`"
                )));
            }
        }
        let mut total = Int::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                term *= env[&self.vars[i]].pow(e);
            }
            total += term;
        }
        Ok(total)
    }

    /// Reduces the polynomial as a function on the prime field with
    /// `prime` elements: coefficients are reduced to `{0, ..., prime-1}`
    /// and exponents `e >= prime` are lowered by multiples of `prime - 1`
    /// (Fermat's little theorem: `x^prime = x` on every point).
    ///
    /// The result is the zero polynomial if and only if `self` vanishes at
    /// every point of the prime field.
    pub fn fermat_reduce(&self, prime: &Int) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NonPrimeModulus {
                modulus: prime.clone(),
            });
        }
        // For e >= 1, repeated e -> e - (prime - 1) lands in 1..prime-1:
        // ((e - 1) mod (prime - 1)) + 1. When prime - 1 exceeds u32::MAX
        // every stored exponent is already below prime, so only the
        // coefficients reduce.
        let pm1: Option<u32> = (prime - 1u32).try_into().ok();
        let reduce_exp = |e: u32| -> u32 {
            match (e, pm1) {
                (0, _) => 0,
                (e, Some(pm1)) if pm1 > 0 => ((e - 1) % pm1) + 1,
                (e, _) => e,
            }
        };
        let mut terms: BTreeMap<Monomial, Int> = BTreeMap::new();
        for (m, c) in &self.terms {
            let reduced = Monomial(m.0.iter().map(|&e| reduce_exp(e)).collect());
            let entry = terms.entry(reduced).or_insert_with(Int::zero);
            *entry += c;
        }
        let terms = terms
            .into_iter()
            .map(|(m, c)| (m, mod_floor(&c, prime)))
            .collect();
        Ok(Self::normalize(self.vars.clone(), terms))
    }
}

impl From<i64> for MultiPoly {
    fn from(v: i64) -> Self {
        Self::constant(int(v))
    }
}

impl From<Int> for MultiPoly {
    fn from(v: Int) -> Self {
        Self::constant(v)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let vars = self.merged_vars(rhs);
        let mut terms = self.align_to(&vars);
        for (m, c) in rhs.align_to(&vars) {
            let entry = terms.entry(m).or_insert_with(Int::zero);
            *entry += c;
        }
        MultiPoly::normalize(vars, terms)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let vars = self.merged_vars(rhs);
        let left = self.align_to(&vars);
        let right = rhs.align_to(&vars);
        let mut terms: BTreeMap<Monomial, Int> = BTreeMap::new();
        for (ma, ca) in &left {
            for (mb, cb) in &right {
                let exps: Vec<u32> = ma
                    .0
                    .iter()
                    .zip(&mb.0)
                    .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                    .collect();
                let entry = terms.entry(Monomial(exps)).or_insert_with(Int::zero);
                *entry += ca * cb;
            }
        }
        MultiPoly::normalize(vars, terms)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text: terms in descending graded-lex order, explicit `*`
    /// between factors and `^` for exponents, e.g. `54*x*y*z - 243`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() || m.degree() == 0 {
                factors.push(magnitude.to_string());
            }
            for (j, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[j].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[j], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
