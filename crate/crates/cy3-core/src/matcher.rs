//! Matching the cubes of two parameterized ample families, and turning a
//! match into a deformation certificate.
//!
//! The built-in problem equates the cube of the first model's family
//! `H(x,y,z)` with a chosen total of the second model's cube blocks in
//! `(a,b)`. Both totals differ from the first cube by a multiple of 9,
//! so the engine divides the difference exactly by 9 and works with the
//! reduced equation; the reduction changes no integer solutions but
//! exposes residues that the raw cubes hide (both raw sides vanish
//! modulo 3, while the reduced sides need not).
//!
//! Enumeration is a hash join: the side owning the alphabetically first
//! parameter is scanned in chunks over that parameter's range, against a
//! value table of the fully enumerated other side. Chunks run in
//! parallel under the `parallel` feature and sequentially otherwise, and
//! the final canonical sort makes the output byte-identical for every
//! chunk count and scheduling order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::One;

use crate::chern::{hilbert_polynomial, ChernPair, HilbertPolynomial};
use crate::error::{Error, Result};
use crate::exact::{int, Int, MultiPoly};
use crate::models::{model_x_phi, model_x_t, ThreefoldModel};

/// Which total of the four cube blocks the right side uses.
///
/// `Paper` adds the blocks with unit weights; `Standard` applies the
/// binomial multiplicities 1, 3, 3, 1, which makes the total equal to
/// the cube of the full family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquationKind {
    Paper,
    Standard,
}

impl EquationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Paper => "paper",
            Self::Standard => "standard",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "paper" => Ok(Self::Paper),
            "standard" => Ok(Self::Standard),
            other => Err(Error::InvalidArgument(format!(
                "unknown equation kind `{other}` (expected `paper` or `standard`)"
            ))),
        }
    }
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The raw cube identity and its reduction by the common factor 9,
/// rearranged so each side owns one model's parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub kind: EquationKind,
    /// Cube of the first family, e.g. `54*x*y*z - 243`.
    pub raw_lhs: MultiPoly,
    /// Chosen block total of the second family.
    pub raw_rhs: MultiPoly,
    /// Reduced left side in the first family's parameters.
    pub lhs: MultiPoly,
    /// Reduced right side in the second family's parameters.
    pub rhs: MultiPoly,
    /// The exact factor between raw and reduced: `raw_lhs - raw_rhs =
    /// scale * (lhs - rhs)`.
    pub scale: Int,
}

/// Splits `p` into the terms that use at least one variable from
/// `side_vars` and the terms that use none (constants land in the second
/// part).
fn partition_by_vars(p: &MultiPoly, side_vars: &BTreeSet<String>) -> (MultiPoly, MultiPoly) {
    let vars = p.vars().to_vec();
    let mut with = MultiPoly::zero();
    let mut without = MultiPoly::zero();
    for (mono, coeff) in p.terms() {
        let mut term = MultiPoly::constant(coeff.clone());
        let mut uses = false;
        for (&e, v) in mono.0.iter().zip(&vars) {
            if e > 0 {
                term = &term * &MultiPoly::var(v).pow(e);
                uses = uses || side_vars.contains(v);
            }
        }
        if uses {
            with = &with + &term;
        } else {
            without = &without + &term;
        }
    }
    (with, without)
}

/// Derives the reduced matching equation for the built-in model pair.
///
/// Fails (rather than rounding) if the difference of the raw sides is
/// not exactly divisible by 9.
pub fn derived_equation(kind: EquationKind) -> Result<Equation> {
    let x_phi = model_x_phi();
    let x_t = model_x_t();
    let h_phi = x_phi.template("H_phi")?;
    let h_t = x_t.template("H_T")?;
    let raw_lhs = x_phi.cup.cube(&h_phi.expr)?;
    let (p, l) = h_t.expr.split_constant_parametric();
    let split = x_t.cup.cube_split(&p, &l)?;
    let raw_rhs = match kind {
        EquationKind::Paper => split.paper_sum,
        EquationKind::Standard => split.standard_sum,
    };
    let diff = &raw_lhs - &raw_rhs;
    let scale = int(9);
    let reduced = diff.div_exact(&scale, "reduced matching equation")?;
    let lhs_vars: BTreeSet<String> = h_phi.params.iter().cloned().collect();
    let (lhs, rest) = partition_by_vars(&reduced, &lhs_vars);
    Ok(Equation {
        kind,
        raw_lhs,
        raw_rhs,
        lhs,
        rhs: -rest,
        scale,
    })
}

/// A bounded search for integer parameter assignments giving both sides
/// the same value.
///
/// The two sides must use disjoint parameter sets, every parameter must
/// carry an inclusive `(lo, hi)` bound, and the linear `c2` pairings of
/// the two families must already agree (a match with unequal pairings
/// could never yield one Hilbert polynomial, so the constructor rejects
/// it up front).
#[derive(Debug, Clone)]
pub struct MatchProblem {
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
    pub c2_lhs: Int,
    pub c2_rhs: Int,
    pub bounds: BTreeMap<String, (Int, Int)>,
}

impl MatchProblem {
    pub fn new(
        lhs: MultiPoly,
        rhs: MultiPoly,
        c2_lhs: Int,
        c2_rhs: Int,
        bounds: BTreeMap<String, (Int, Int)>,
    ) -> Result<Self> {
        if c2_lhs != c2_rhs {
            return Err(Error::ContractViolation(format!(
                "c2 pairings differ ({c2_lhs} vs {c2_rhs}); equal cubes could not give \
                 one Hilbert polynomial"
            )));
        }
        let lhs_vars: BTreeSet<&String> = lhs.vars().iter().collect();
        let rhs_vars: BTreeSet<&String> = rhs.vars().iter().collect();
        if let Some(shared) = lhs_vars.intersection(&rhs_vars).next() {
            return Err(Error::InvalidArgument(format!(
                "parameter `{shared}` appears on both sides; the sides must use \
                 disjoint parameters"
            )));
        }
        for v in lhs_vars.iter().chain(rhs_vars.iter()) {
            match bounds.get(*v) {
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "parameter `{v}` has no search bound"
                    )))
                }
                Some((lo, hi)) if lo > hi => {
                    return Err(Error::InvalidArgument(format!(
                        "parameter `{v}` has an empty bound ({lo} > {hi})"
                    )))
                }
                Some(_) => {}
            }
        }
        for key in bounds.keys() {
            if !lhs_vars.contains(key) && !rhs_vars.contains(key) {
                return Err(Error::InvalidArgument(format!(
                    "bound `{key}` names no parameter of either side"
                )));
            }
        }
        Ok(Self {
            lhs,
            rhs,
            c2_lhs,
            c2_rhs,
            bounds,
        })
    }
}

/// The reduced matching polynomial of the unit-weight total, written as
/// a single expression that vanishes exactly on matches:
/// `6*x*y*z - 2*a*b + 3*b + 10`.
pub fn paper_equation() -> Result<MultiPoly> {
    let eq = derived_equation(EquationKind::Paper)?;
    Ok(&eq.lhs - &eq.rhs)
}

/// The reduced matching polynomial of the binomially weighted total:
/// `6*x*y*z - 6*a*b + 9*b + 10`.
pub fn standard_equation() -> Result<MultiPoly> {
    let eq = derived_equation(EquationKind::Standard)?;
    Ok(&eq.lhs - &eq.rhs)
}

/// Builds the built-in matching problem over the half-open box: every
/// parameter ranges over integers strictly greater than `lower_bound`
/// and at most `box_upper`. The exclusive lower bound is the positivity
/// floor ("greater than any given constant"), so it is never itself a
/// candidate.
pub fn builtin_problem(kind: EquationKind, lower_bound: i64, box_upper: i64) -> Result<MatchProblem> {
    let x_phi = model_x_phi();
    let x_t = model_x_t();
    let h_phi = x_phi.template("H_phi")?;
    let h_t = x_t.template("H_T")?;
    let raw_lhs = x_phi.cup.cube(&h_phi.expr)?;
    let (p, l) = h_t.expr.split_constant_parametric();
    let split = x_t.cup.cube_split(&p, &l)?;
    let raw_rhs = match kind {
        EquationKind::Paper => split.paper_sum,
        EquationKind::Standard => split.standard_sum,
    };
    let constant_pairing = |poly: MultiPoly, which: &str| -> Result<Int> {
        poly.as_constant().ok_or_else(|| Error::NonConstant {
            context: format!("{which} family c2 pairing"),
            value: poly.to_string(),
        })
    };
    let c2_lhs = constant_pairing(x_phi.c2.pair(&h_phi.expr)?, "first")?;
    let c2_rhs = constant_pairing(x_t.c2.pair(&h_t.expr)?, "second")?;
    let mut bounds = BTreeMap::new();
    for p in h_phi.params.iter().chain(h_t.params.iter()) {
        bounds.insert(p.clone(), (int(lower_bound) + 1, int(box_upper)));
    }
    MatchProblem::new(raw_lhs, raw_rhs, c2_lhs, c2_rhs, bounds)
}

/// One parameter assignment on which both sides take the same value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MatchSolution {
    pub assignment: BTreeMap<String, Int>,
    pub common_value: Int,
}

fn range_values(lo: &Int, hi: &Int) -> Vec<Int> {
    let one = Int::one();
    let mut out = Vec::new();
    let mut v = lo.clone();
    while &v <= hi {
        out.push(v.clone());
        v = &v + &one;
    }
    out
}

/// All assignments of `vars` inside their bounds, in odometer order.
fn grid(vars: &[String], bounds: &BTreeMap<String, (Int, Int)>) -> Vec<BTreeMap<String, Int>> {
    let mut acc = vec![BTreeMap::new()];
    for v in vars {
        let (lo, hi) = &bounds[v];
        let values = range_values(lo, hi);
        let mut next = Vec::with_capacity(acc.len() * values.len());
        for value in &values {
            for base in &acc {
                let mut a = base.clone();
                a.insert(v.clone(), value.clone());
                next.push(a);
            }
        }
        acc = next;
    }
    acc
}

/// Searches the whole box with an automatically chosen chunk count.
pub fn enumerate_matches(problem: &MatchProblem) -> Result<Vec<MatchSolution>> {
    enumerate_matches_chunked(problem, 16)
}

/// Searches the whole box, splitting the scanned side into `chunks`
/// contiguous slices of its first parameter.
///
/// The result is sorted by assignment and is identical for every
/// positive chunk count.
pub fn enumerate_matches_chunked(
    problem: &MatchProblem,
    chunks: usize,
) -> Result<Vec<MatchSolution>> {
    if chunks == 0 {
        return Err(Error::InvalidArgument(
            "chunk count must be positive".to_string(),
        ));
    }
    let mut all_params: BTreeSet<String> = problem.lhs.vars().iter().cloned().collect();
    all_params.extend(problem.rhs.vars().iter().cloned());

    let Some(first) = all_params.first().cloned() else {
        // Both sides constant: zero or one trivial solution.
        let lv = problem.lhs.as_constant().expect("no variables");
        let rv = problem.rhs.as_constant().expect("no variables");
        return Ok(if lv == rv {
            vec![MatchSolution {
                assignment: BTreeMap::new(),
                common_value: lv,
            }]
        } else {
            Vec::new()
        });
    };

    let scan_is_lhs = problem.lhs.vars().contains(&first);
    let (scan_poly, table_poly) = if scan_is_lhs {
        (&problem.lhs, &problem.rhs)
    } else {
        (&problem.rhs, &problem.lhs)
    };

    let mut table: HashMap<Int, Vec<BTreeMap<String, Int>>> = HashMap::new();
    for assignment in grid(table_poly.vars(), &problem.bounds) {
        let value = table_poly.eval(&assignment)?;
        table.entry(value).or_default().push(assignment);
    }

    let rest_vars: Vec<String> = scan_poly
        .vars()
        .iter()
        .filter(|v| **v != first)
        .cloned()
        .collect();
    let rest_assignments = grid(&rest_vars, &problem.bounds);

    let (lo, hi) = &problem.bounds[&first];
    let first_values = range_values(lo, hi);
    if first_values.is_empty() {
        return Ok(Vec::new());
    }
    let chunk_size = first_values.len().div_ceil(chunks);
    let slices: Vec<&[Int]> = first_values.chunks(chunk_size).collect();

    let scan_slice = |values: &[Int]| -> Result<Vec<MatchSolution>> {
        let mut out = Vec::new();
        for value in values {
            for rest in &rest_assignments {
                let mut assignment = rest.clone();
                assignment.insert(first.clone(), value.clone());
                let side_value = scan_poly.eval(&assignment)?;
                if let Some(partners) = table.get(&side_value) {
                    for partner in partners {
                        let mut full = assignment.clone();
                        for (k, v) in partner {
                            full.insert(k.clone(), v.clone());
                        }
                        out.push(MatchSolution {
                            assignment: full,
                            common_value: side_value.clone(),
                        });
                    }
                }
            }
        }
        Ok(out)
    };

    #[cfg(feature = "parallel")]
    let partials: Vec<Vec<MatchSolution>> = {
        use rayon::prelude::*;
        slices
            .par_iter()
            .map(|s| scan_slice(s))
            .collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<Vec<MatchSolution>> = slices
        .iter()
        .map(|s| scan_slice(s))
        .collect::<Result<_>>()?;

    let mut solutions: Vec<MatchSolution> = partials.into_iter().flatten().collect();
    solutions.sort_unstable();
    Ok(solutions)
}

/// A proof that an equation has no integer solutions at all: modulo a
/// prime both sides reduce (as functions) to distinct constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibilityProof {
    pub modulus: Int,
    pub lhs_reduced: MultiPoly,
    pub rhs_reduced: MultiPoly,
    pub lhs_residue: Int,
    pub rhs_residue: Int,
}

impl fmt::Display for InfeasibilityProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "no integer solutions: modulo {} the left side reduces to the constant {} \
             and the right side to {}",
            self.modulus, self.lhs_residue, self.rhs_residue
        )
    }
}

/// Tries to refute `lhs = rhs` over the integers by reducing both sides
/// modulo `p`. Returns a proof only when both reductions are constant
/// and distinct; a non-constant reduction is simply inconclusive.
pub fn mod_p_obstruction(
    lhs: &MultiPoly,
    rhs: &MultiPoly,
    p: &Int,
) -> Result<Option<InfeasibilityProof>> {
    let lhs_reduced = lhs.fermat_reduce(p)?;
    let rhs_reduced = rhs.fermat_reduce(p)?;
    match (lhs_reduced.as_constant(), rhs_reduced.as_constant()) {
        (Some(lv), Some(rv)) if lv != rv => Ok(Some(InfeasibilityProof {
            modulus: p.clone(),
            lhs_reduced,
            rhs_reduced,
            lhs_residue: lv,
            rhs_residue: rv,
        })),
        _ => Ok(None),
    }
}

/// A one-parameter polynomial family of claimed matches: one
/// substitution per equation parameter, all in a single free variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyWitness {
    pub kind: EquationKind,
    pub free_var: String,
    pub substitutions: BTreeMap<String, MultiPoly>,
}

/// The built-in family: substituting it into the reduced equation makes
/// both sides the same polynomial, so it matches at every integer value
/// of the free variable.
pub fn builtin_family() -> FamilyWitness {
    let mut substitutions = BTreeMap::new();
    for (param, text) in [
        ("x", "12*C^2 - 6"),
        ("y", "2*C"),
        ("z", "2*C"),
        ("a", "6*C^2 + 1"),
        ("b", "24*C^2 - 10"),
    ] {
        substitutions.insert(
            param.to_string(),
            MultiPoly::parse(text).expect("curated family entry parses"),
        );
    }
    FamilyWitness {
        kind: EquationKind::Paper,
        free_var: "C".to_string(),
        substitutions,
    }
}

/// Substitutes a family into an arbitrary equation polynomial and
/// returns the composed polynomial in the free variable.
///
/// Every variable of `equation` must be substituted, and every
/// substitution may use only `free_var`; the composition vanishes
/// identically exactly when the family solves `equation = 0` at every
/// value of the free variable.
pub fn compose_family(
    equation: &MultiPoly,
    free_var: &str,
    substitutions: &BTreeMap<String, MultiPoly>,
) -> Result<MultiPoly> {
    for v in equation.vars() {
        if !substitutions.contains_key(v) {
            return Err(Error::InvalidArgument(format!(
                "equation parameter `{v}` has no substitution"
            )));
        }
    }
    for (param, s) in substitutions {
        if s.vars().iter().any(|v| v != free_var) {
            return Err(Error::InvalidArgument(format!(
                "substitution for `{param}` uses a variable other than `{free_var}`"
            )));
        }
    }
    Ok(equation.substitute(substitutions))
}

/// Growth certificate for one substituted parameter: writing the
/// substitution as `s`, the shift `s(1 + u)` in the free variable `u`
/// must have non-negative coefficients and positive constant term, so
/// `s` is at least 1 on every integer `>= 1`; with positive degree it
/// then exceeds any fixed threshold for large arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthRow {
    pub param: String,
    pub substitution: MultiPoly,
    pub shifted: MultiPoly,
    pub coeffs_nonnegative: bool,
    pub value_at_one: Int,
    pub unbounded: bool,
}

/// One sampled point of a family check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySample {
    pub c: Int,
    pub assignment: BTreeMap<String, Int>,
    pub lhs_value: Int,
    pub rhs_value: Int,
}

/// Outcome of [`verify_family`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub kind: EquationKind,
    /// The substituted reduced sides are equal as polynomials.
    pub identity_holds: bool,
    /// The substituted raw cubes are equal as polynomials.
    pub raw_identity_holds: bool,
    /// The linear `c2` pairings of the two families agree.
    pub c2_equal: bool,
    pub lhs_substituted: MultiPoly,
    pub rhs_substituted: MultiPoly,
    /// The shared polynomial value when the identity holds.
    pub common_value: Option<MultiPoly>,
    pub growth: Vec<GrowthRow>,
    pub samples: Vec<FamilySample>,
    pub all_ok: bool,
}

/// Checks a family witness against the derived equation: polynomial
/// identity of both the reduced and the raw sides, agreement of the `c2`
/// pairings, growth of every substituted parameter, and pointwise
/// equality at `free_var = 1..=sample_points`.
pub fn verify_family(family: &FamilyWitness, sample_points: u32) -> Result<FamilyReport> {
    let eq = derived_equation(family.kind)?;
    let mut needed: BTreeSet<String> = eq.raw_lhs.vars().iter().cloned().collect();
    needed.extend(eq.raw_rhs.vars().iter().cloned());
    let provided: BTreeSet<String> = family.substitutions.keys().cloned().collect();
    if needed != provided {
        return Err(Error::InvalidArgument(format!(
            "family substitutes {provided:?} but the equation uses {needed:?}"
        )));
    }
    for (param, s) in &family.substitutions {
        if s.vars().iter().any(|v| *v != family.free_var) {
            return Err(Error::InvalidArgument(format!(
                "substitution for `{param}` uses a variable other than `{}`",
                family.free_var
            )));
        }
    }

    let lhs_substituted = eq.lhs.substitute(&family.substitutions);
    let rhs_substituted = eq.rhs.substitute(&family.substitutions);
    let identity_holds = lhs_substituted == rhs_substituted;
    let raw_identity_holds =
        eq.raw_lhs.substitute(&family.substitutions) == eq.raw_rhs.substitute(&family.substitutions);

    let x_phi = model_x_phi();
    let x_t = model_x_t();
    let c2_lhs = x_phi.c2.pair(&x_phi.template("H_phi")?.expr)?;
    let c2_rhs = x_t.c2.pair(&x_t.template("H_T")?.expr)?;
    let c2_equal = c2_lhs == c2_rhs;

    let mut shift = BTreeMap::new();
    shift.insert(
        family.free_var.clone(),
        &MultiPoly::var(&family.free_var) + &MultiPoly::from(1),
    );
    let mut growth = Vec::new();
    for (param, s) in &family.substitutions {
        let shifted = s.substitute(&shift);
        let coeffs_nonnegative = shifted.terms().all(|(_, c)| c >= &Int::from(0));
        let mut at_one = BTreeMap::new();
        at_one.insert(family.free_var.clone(), Int::one());
        let value_at_one = s.eval(&at_one)?;
        let unbounded =
            coeffs_nonnegative && value_at_one >= Int::one() && s.total_degree() >= 1;
        growth.push(GrowthRow {
            param: param.clone(),
            substitution: s.clone(),
            shifted,
            coeffs_nonnegative,
            value_at_one,
            unbounded,
        });
    }

    let mut samples = Vec::new();
    let mut samples_agree = true;
    for c in 1..=i64::from(sample_points) {
        let mut env = BTreeMap::new();
        env.insert(family.free_var.clone(), int(c));
        let mut assignment = BTreeMap::new();
        for (param, s) in &family.substitutions {
            assignment.insert(param.clone(), s.eval(&env)?);
        }
        let lhs_value = eq.raw_lhs.eval(&assignment)?;
        let rhs_value = eq.raw_rhs.eval(&assignment)?;
        samples_agree = samples_agree && lhs_value == rhs_value;
        samples.push(FamilySample {
            c: int(c),
            assignment,
            lhs_value,
            rhs_value,
        });
    }

    let all_growth = growth.iter().all(|g| g.unbounded);
    let all_ok = identity_holds && raw_identity_holds && c2_equal && all_growth && samples_agree;
    Ok(FamilyReport {
        kind: family.kind,
        identity_holds,
        raw_identity_holds,
        c2_equal,
        common_value: identity_holds.then(|| lhs_substituted.clone()),
        lhs_substituted,
        rhs_substituted,
        growth,
        samples,
        all_ok,
    })
}

/// Checks that two divisor pairs agree and that their shared Hilbert
/// polynomial is integer-valued; equal pairs put both polarized models
/// in the same Hilbert scheme.
pub fn certify_pairs(
    left: &ChernPair,
    right: &ChernPair,
    left_name: &str,
    right_name: &str,
) -> Result<(ChernPair, HilbertPolynomial)> {
    if left != right {
        return Err(Error::ContractViolation(format!(
            "divisor pairs differ: {left_name} carries {left} but {right_name} carries {right}"
        )));
    }
    let hp = hilbert_polynomial(left)?;
    Ok((left.clone(), hp))
}

/// A verified deformation certificate for one matched assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityCertificate {
    pub left_model: String,
    pub right_model: String,
    pub left_assignment: BTreeMap<String, Int>,
    pub right_assignment: BTreeMap<String, Int>,
    pub d3: Int,
    pub dc2: Int,
    pub hilbert: HilbertPolynomial,
    pub citation: String,
}

/// Re-verifies a claimed solution against the problem's own polynomials
/// and assembles the certificate. Every claim is recomputed: a tampered
/// common value, a mismatched pair, or a non-integer-valued Hilbert
/// polynomial is a contract violation, not a bad certificate.
pub fn build_certificate(
    problem: &MatchProblem,
    solution: &MatchSolution,
    left_model: &ThreefoldModel,
    right_model: &ThreefoldModel,
) -> Result<ConnectivityCertificate> {
    let mut left_assignment = BTreeMap::new();
    let mut right_assignment = BTreeMap::new();
    for (k, v) in &solution.assignment {
        if problem.lhs.vars().contains(k) {
            left_assignment.insert(k.clone(), v.clone());
        } else if problem.rhs.vars().contains(k) {
            right_assignment.insert(k.clone(), v.clone());
        } else {
            return Err(Error::ContractViolation(format!(
                "assignment binds `{k}`, which is a parameter of neither side"
            )));
        }
    }
    let lhs_value = problem.lhs.eval(&left_assignment)?;
    let rhs_value = problem.rhs.eval(&right_assignment)?;
    if lhs_value != solution.common_value || rhs_value != solution.common_value {
        return Err(Error::ContractViolation(format!(
            "claimed common value {} but the sides evaluate to {} and {}",
            solution.common_value, lhs_value, rhs_value
        )));
    }
    let left_pair = ChernPair::numeric(lhs_value, problem.c2_lhs.clone());
    let right_pair = ChernPair::numeric(rhs_value, problem.c2_rhs.clone());
    let (pair, hilbert) = certify_pairs(
        &left_pair,
        &right_pair,
        &left_model.name,
        &right_model.name,
    )?;
    let (d3, dc2) = pair.as_numeric()?;
    let citation = format!(
        "Both polarized models share the Hilbert polynomial {hilbert}, so they sit in \
         one Hilbert scheme over a common projective space. By Hartshorne's \
         connectedness theorem that scheme is connected, giving a chain of flat \
         projective deformations between the two points. Ampleness of the matched \
         divisors is assumed, not computed: it holds once every parameter exceeds a \
         positive threshold that this engine does not quantify."
    );
    Ok(ConnectivityCertificate {
        left_model: left_model.name.clone(),
        right_model: right_model.name.clone(),
        left_assignment,
        right_assignment,
        d3,
        dc2,
        hilbert,
        citation,
    })
}
