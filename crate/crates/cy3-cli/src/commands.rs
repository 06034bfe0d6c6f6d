//! One function per subcommand.
//!
//! Every command produces both a human rendering and a canonical JSON
//! report; the caller picks one. Commands never print — they return a
//! [`CommandOutput`] and the binary decides where it goes.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use cy3_core::chern::{
    chern_pair_of_surface, hilbert_polynomial, rr_cubic_divisibility, ChernPair, RrVerdict,
};
use cy3_core::forms::DivisorExpr;
use cy3_core::matcher::{
    builtin_family, builtin_problem, certify_pairs, compose_family, derived_equation,
    enumerate_matches, enumerate_matches_chunked, mod_p_obstruction, EquationKind, FamilyWitness,
    MatchSolution,
};
use cy3_core::models::{
    distinguish, generator_c2_table, model_x_phi, model_x_t, ns_e2_gram,
    surface_abelian, surface_hirzebruch_f1, surface_projective_plane,
    surface_rational_elliptic_minimal, surface_rational_elliptic_three_blowup, ModelParity,
    ThreefoldModel,
};
use cy3_core::{int, Int, MultiPoly};

use crate::model_io::{canonical_json, from_model, load_model, to_model, ModelFile};
use crate::report::{sha256_hex, ReportDocument};
use crate::CliError;

/// What a subcommand hands back to `run`.
#[derive(Debug)]
pub struct CommandOutput {
    /// Text rendering, newline-terminated.
    pub human: String,
    /// Canonical JSON report (printed under `--json`).
    pub report: ReportDocument,
    /// Number of failed checks; nonzero makes the process exit 1.
    pub failures: usize,
}

fn compute(source: cy3_core::Error) -> CliError {
    CliError::Compute { source }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Info,
}

/// Ordered collector of PASS/FAIL/INFO lines plus their JSON mirror.
struct Checks {
    entries: Vec<Value>,
    lines: Vec<String>,
    passed: usize,
    failed: usize,
    info: usize,
}

impl Checks {
    fn new() -> Self {
        Self {
            entries: Vec::new(),
            lines: Vec::new(),
            passed: 0,
            failed: 0,
            info: 0,
        }
    }

    fn push(
        &mut self,
        statement: String,
        status: Status,
        expected: Option<String>,
        computed: Option<String>,
    ) {
        let (word, line) = match status {
            Status::Pass => {
                self.passed += 1;
                ("PASS", format!("{statement} PASS"))
            }
            Status::Info => {
                self.info += 1;
                ("INFO", format!("{statement} INFO"))
            }
            Status::Fail => {
                self.failed += 1;
                let line = match (&expected, &computed) {
                    (Some(e), Some(c)) => {
                        format!("{statement} FAIL (expected {e}, computed {c})")
                    }
                    _ => format!("{statement} FAIL"),
                };
                ("FAIL", line)
            }
        };
        let mut entry = json!({ "statement": statement, "status": word });
        if let Some(e) = expected {
            entry["expected"] = Value::String(e);
        }
        if let Some(c) = computed {
            entry["computed"] = Value::String(c);
        }
        self.entries.push(entry);
        self.lines.push(line);
    }

    /// Pins a computed value against its frozen expected rendering.
    fn value(&mut self, label: &str, computed: impl std::fmt::Display, expected: &str) {
        let computed = computed.to_string();
        let status = if computed == expected {
            Status::Pass
        } else {
            Status::Fail
        };
        let statement = format!("{label} = {computed}");
        self.push(statement, status, Some(expected.to_string()), Some(computed));
    }

    /// Records a named true/false predicate.
    fn claim(&mut self, statement: &str, ok: bool) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(statement.to_string(), status, None, None);
    }

    /// Records a deliberate non-check observation.
    fn note(&mut self, statement: &str) {
        self.push(statement.to_string(), Status::Info, None, None);
    }
}

/// Resolves `template:NAME` or `label:LABEL` against a model.
fn divisor_expr(model: &ThreefoldModel, spec: &str) -> Result<DivisorExpr, CliError> {
    if let Some(name) = spec.strip_prefix("template:") {
        return Ok(model
            .template(name)
            .map_err(|e| CliError::Usage(e.to_string()))?
            .expr
            .clone());
    }
    if let Some(label) = spec.strip_prefix("label:") {
        return DivisorExpr::from_coeffs(&model.basis, &[(label, MultiPoly::constant(int(1)))])
            .map_err(|e| CliError::Usage(e.to_string()));
    }
    Err(CliError::Usage(format!(
        "divisor spec `{spec}` must start with `template:` or `label:`"
    )))
}

fn parse_kind(text: &str) -> Result<EquationKind, CliError> {
    EquationKind::parse(text).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_decimal(text: &str, what: &str) -> Result<Int, CliError> {
    text.parse::<Int>()
        .map_err(|e| CliError::Usage(format!("--{what} `{text}` is not a decimal integer ({e})")))
}

fn solution_line(s: &MatchSolution) -> String {
    let parts: Vec<String> = s
        .assignment
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    format!("{} (common value {})", parts.join(" "), s.common_value)
}

fn solution_json(s: &MatchSolution) -> Value {
    let assignment: BTreeMap<&String, String> = s
        .assignment
        .iter()
        .map(|(k, v)| (k, v.to_string()))
        .collect();
    json!({ "assignment": assignment, "common_value": s.common_value.to_string() })
}

/// Exhaustive nested scan of the reduced equation over `(0, hi]^5`,
/// independent of the hash-join search path.
fn direct_scan(hi: i128) -> Vec<([i128; 5], i128)> {
    let mut out = Vec::new();
    for a in 1..=hi {
        for b in 1..=hi {
            let rhs = 2 * a * b - 3 * b - 10;
            for x in 1..=hi {
                for y in 1..=hi {
                    for z in 1..=hi {
                        if 6 * x * y * z == rhs {
                            out.push(([a, b, x, y, z], 54 * x * y * z - 243));
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn solution_tuple(s: &MatchSolution) -> Option<([i128; 5], i128)> {
    let mut vals = [0i128; 5];
    for (slot, key) in vals.iter_mut().zip(["a", "b", "x", "y", "z"]) {
        *slot = i128::try_from(s.assignment.get(key)?).ok()?;
    }
    Some((vals, i128::try_from(&s.common_value).ok()?))
}

/// The full reproduction suite: one PASS/FAIL/INFO line per check.
pub fn verify_paper(argv: Vec<String>) -> Result<CommandOutput, CliError> {
    let x_phi = model_x_phi();
    let x_t = model_x_t();
    let mut checks = Checks::new();

    // Surface catalog: each named surface type against its (K^2, e - K^2)
    // divisor pair.
    for (surface, expected) in [
        (surface_projective_plane(), "(9, -6)"),
        (surface_hirzebruch_f1(), "(8, -4)"),
        (surface_abelian(), "(0, 0)"),
        (surface_rational_elliptic_minimal(), "(0, 12)"),
        (surface_rational_elliptic_three_blowup(), "(-3, 18)"),
    ] {
        let (d3, dc2) = chern_pair_of_surface(&surface)
            .as_numeric()
            .map_err(compute)?;
        checks.value(
            &format!("pair({})", surface.name),
            format!("({d3}, {dc2})"),
            expected,
        );
    }

    // Intersection matrix of the four exceptional-plane generators.
    let gram = ns_e2_gram();
    let det = gram.det().map_err(compute)?;
    checks.value("det(Gram)", &det, "-3");
    let abs_det = if det < int(0) { -det.clone() } else { det.clone() };
    checks.value("|det(Gram)| (discriminant)", abs_det, "3");
    let factors: Vec<String> = gram
        .smith_normal_form()
        .invariant_factors()
        .iter()
        .map(|f| f.to_string())
        .collect();
    checks.value(
        "Smith invariant factors",
        format!("({})", factors.join(", ")),
        "(1, 1, 1, 3)",
    );

    // The first family's template.
    let h_phi = x_phi.template("H_phi").map_err(compute)?.expr.clone();
    checks.value(
        "H_phi^3",
        x_phi.cup.cube(&h_phi).map_err(compute)?,
        "54*x*y*z - 243",
    );
    let c2_phi = x_phi.c2.pair(&h_phi).map_err(compute)?;
    checks.value("H_phi.c2", &c2_phi, "162");

    // The second family's template, cube split into blocks by the
    // constant part P and the parametric part L.
    let h_t = x_t.template("H_T").map_err(compute)?.expr.clone();
    let (p_part, l_part) = h_t.split_constant_parametric();
    let split = x_t.cup.cube_split(&p_part, &l_part).map_err(compute)?;
    checks.value("P^3", &split.p3, "-333");
    checks.value("P^2L", &split.p2l, "-27*b");
    checks.value("PL^2", &split.pl2, "18*a*b");
    checks.value("L^3", &split.l3, "0");
    checks.value("paper_sum", &split.paper_sum, "18*a*b - 27*b - 333");
    checks.value("standard_sum", &split.standard_sum, "54*a*b - 81*b - 333");
    checks.note(&format!(
        "paper_sum adds the blocks with unit weights and diverges from the \
         binomial-weight expansion: paper_sum = {}, standard_sum = {}",
        split.paper_sum, split.standard_sum
    ));
    let full_cube = x_t.cup.cube(&h_t).map_err(compute)?;
    checks.claim(
        "standard_sum equals the full trilinear cube of H_T",
        split.standard_sum == full_cube,
    );
    let c2_t = x_t.c2.pair(&h_t).map_err(compute)?;
    checks.value("H_T.c2", &c2_t, "162");

    // Reduction of the matching equation by the exact factor 9.
    let eq = derived_equation(EquationKind::Paper).map_err(compute)?;
    let raw_diff = &eq.raw_lhs - &eq.raw_rhs;
    let reduced_diff = &eq.lhs - &eq.rhs;
    checks.claim(
        "H_phi^3 - paper_sum = 9 * (reduced left - reduced right)",
        raw_diff == reduced_diff.scale(&eq.scale) && eq.scale == int(9),
    );
    checks.value(
        "reduced equation",
        format!("{} = {}", eq.lhs, eq.rhs),
        "6*x*y*z = 2*a*b - 3*b - 10",
    );

    // The one-parameter family of matches.
    let family = builtin_family();
    let family_report = cy3_core::matcher::verify_family(&family, 5).map_err(compute)?;
    let subs: Vec<String> = family
        .substitutions
        .iter()
        .map(|(p, s)| format!("{p} = {s}"))
        .collect();
    checks.claim(
        &format!(
            "family {} solves the reduced equation identically",
            subs.join(", ")
        ),
        family_report.identity_holds,
    );
    checks.claim(
        "family matches the raw cubes identically",
        family_report.raw_identity_holds,
    );
    checks.claim("family c2 pairings agree", family_report.c2_equal);
    let common = family_report
        .common_value
        .as_ref()
        .map(|p| p.to_string())
        .unwrap_or_else(|| "<no common value>".to_string());
    checks.value("family reduced common value", common, "288*C^4 - 144*C^2");
    checks.claim(
        "every family parameter is unbounded and >= 1 for C >= 1",
        family_report.growth.iter().all(|g| g.unbounded),
    );
    checks.claim(
        "family samples C = 1..=5 all match",
        family_report.samples.len() == 5
            && family_report
                .samples
                .iter()
                .all(|s| s.lhs_value == s.rhs_value),
    );
    let lhs_in_c =
        compose_family(&eq.raw_lhs, &family.free_var, &family.substitutions).map_err(compute)?;
    let rhs_in_c =
        compose_family(&eq.raw_rhs, &family.free_var, &family.substitutions).map_err(compute)?;
    let mut at_one = BTreeMap::new();
    at_one.insert(family.free_var.clone(), int(1));
    let left_cube = lhs_in_c.eval(&at_one).map_err(compute)?;
    let right_cube = rhs_in_c.eval(&at_one).map_err(compute)?;
    let c2_phi_value = c2_phi.as_constant().ok_or_else(|| CliError::Compute {
        source: cy3_core::Error::NonConstant {
            context: "H_phi.c2".to_string(),
            value: c2_phi.to_string(),
        },
    })?;
    let c2_t_value = c2_t.as_constant().ok_or_else(|| CliError::Compute {
        source: cy3_core::Error::NonConstant {
            context: "H_T.c2".to_string(),
            value: c2_t.to_string(),
        },
    })?;
    checks.value(
        "matched pair (D^3, D.c2) at C = 1, first family",
        format!("({left_cube}, {c2_phi_value})"),
        "(1053, 162)",
    );
    checks.value(
        "matched pair (D^3, D.c2) at C = 1, second family",
        format!("({right_cube}, {c2_t_value})"),
        "(1053, 162)",
    );
    let left_pair = ChernPair::numeric(left_cube, c2_phi_value);
    let right_pair = ChernPair::numeric(right_cube, c2_t_value);
    match certify_pairs(&left_pair, &right_pair, &x_phi.name, &x_t.name) {
        Ok((_, hilbert)) => {
            checks.claim(
                "both polarized families share one integer-valued Hilbert polynomial at C = 1",
                true,
            );
            checks.value("Hilbert polynomial at C = 1", &hilbert, "(351*n^3 + 27*n)/2");
            let p1 = hilbert
                .eval_int(&int(1))
                .map(|v| v.to_string())
                .unwrap_or_else(|| "<non-integer>".to_string());
            let p2 = hilbert
                .eval_int(&int(2))
                .map(|v| v.to_string())
                .unwrap_or_else(|| "<non-integer>".to_string());
            checks.value("P(1)", p1, "189");
            checks.value("P(2)", p2, "1431");
        }
        Err(_) => {
            checks.claim(
                "both polarized families share one integer-valued Hilbert polynomial at C = 1",
                false,
            );
        }
    }

    // Bounded search, cross-checked against an independent nested scan.
    let problem = builtin_problem(EquationKind::Paper, 0, 16).map_err(compute)?;
    let solutions = enumerate_matches(&problem).map_err(compute)?;
    let as_tuples: Option<Vec<([i128; 5], i128)>> =
        solutions.iter().map(solution_tuple).collect();
    checks.claim(
        "bounded search over (0, 16]^5 equals the direct nested scan",
        as_tuples.as_deref() == Some(&direct_scan(16)[..]),
    );
    let mut target = BTreeMap::new();
    for (k, v) in [("a", 2), ("b", 16), ("x", 1), ("y", 1), ("z", 1)] {
        target.insert(k.to_string(), int(v));
    }
    checks.claim(
        "solution a=2 b=16 x=1 y=1 z=1 is found",
        solutions.iter().any(|s| s.assignment == target),
    );
    let chunked_1 = enumerate_matches_chunked(&problem, 1).map_err(compute)?;
    let chunked_5 = enumerate_matches_chunked(&problem, 5).map_err(compute)?;
    checks.claim(
        "searches with 1, 5, and 16 slices return identical solution lists",
        chunked_1 == solutions && chunked_5 == solutions,
    );

    // Negative control: the two cubic ranges 9*k^3 and 5*l^3 never meet.
    let mut collision = false;
    for k in 1..=100i128 {
        for l in 1..=100i128 {
            collision = collision || 9 * k * k * k == 5 * l * l * l;
        }
    }
    checks.claim(
        "9*k^3 = 5*l^3 has no solutions with 1 <= k, l <= 100",
        !collision,
    );

    // The divisibility parities that tell the two models apart.
    let phi_table = generator_c2_table(&x_phi).map_err(compute)?;
    let e_row = phi_table
        .rows
        .iter()
        .find(|w| w.name == "E000")
        .map(|w| w.value.to_string())
        .unwrap_or_else(|| "<missing>".to_string());
    let d_row = phi_table
        .rows
        .iter()
        .find(|w| w.name == "D_ijl")
        .map(|w| w.value.to_string())
        .unwrap_or_else(|| "<missing>".to_string());
    checks.value("first-model generator c2: E000", e_row, "-6");
    checks.value("first-model generator c2: D_ijl", d_row, "18");
    let t_family_ok = phi_table
        .t_family
        .as_ref()
        .is_some_and(|t| t.formula_matches && t.all_divisible && t.samples == 100);
    checks.claim(
        "first model: c2 divisible by 6 on every generator, including 100 sampled \
         fractional combinations matching -2*|L| - 4*|L'|",
        phi_table.divisible && t_family_ok,
    );
    let f_pair = x_t.extra_class("F_ijk").cloned().ok_or_else(|| CliError::Compute {
        source: cy3_core::Error::ContractViolation(
            "built-in second model lost its F_ijk class".to_string(),
        ),
    })?;
    let (f_cube, f_c2) = f_pair.as_numeric().map_err(compute)?;
    checks.value("second-model witness F_ijk.c2", &f_c2, "-4");
    checks.value("second-model witness F_ijk^3", &f_cube, "8");
    let rep = distinguish(&x_phi, &x_t).map_err(compute)?;
    checks.claim(
        "witness F_ijk.c2 = -4 breaks divisibility by 6, F_ijk^3 = 8 breaks divisibility by 3",
        rep.witnesses
            .iter()
            .any(|w| w.item == "F_ijk.c2" && w.modulus == int(6))
            && rep
                .witnesses
                .iter()
                .any(|w| w.item == "F_ijk^3" && w.modulus == int(3)),
    );
    checks.claim(
        "the two models have different parities, so they are not homeomorphic",
        rep.distinguished,
    );

    // The divisibility implication on the catalog pairs.
    for (d3, dc2) in [(9i64, -6i64), (-3, 18)] {
        let verdict = rr_cubic_divisibility(&ChernPair::from_i64(d3, dc2)).map_err(compute)?;
        let holds = matches!(verdict, RrVerdict::Applicable { holds: true, .. });
        checks.claim(
            &format!("divisibility implication on ({d3}, {dc2}): 6 | d.c2 forces 3 | d3"),
            holds,
        );
    }
    let verdict = rr_cubic_divisibility(&ChernPair::from_i64(8, -4)).map_err(compute)?;
    checks.claim(
        "divisibility implication is not applicable to (8, -4): d.c2 mod 6 = 2",
        matches!(verdict, RrVerdict::NotApplicable { dc2_mod_6 } if dc2_mod_6 == int(2)),
    );

    // Function-field reduction of cubics modulo small primes.
    let three = int(3);
    let reduced_a = MultiPoly::parse("3*x^2*y + 3*x*y^2")
        .and_then(|p| p.fermat_reduce(&three))
        .map_err(compute)?;
    checks.value("reduction of 3*x^2*y + 3*x*y^2 mod 3", &reduced_a, "0");
    let reduced_b = MultiPoly::parse("x^3 + y^3 + z^3")
        .and_then(|p| p.fermat_reduce(&three))
        .map_err(compute)?;
    checks.value("reduction of x^3 + y^3 + z^3 mod 3", &reduced_b, "x + y + z");
    checks.claim(
        "generic cube of the first model's basis span vanishes mod 3",
        x_phi.cup.cubic_divisibility_fermat(&three).map_err(compute)?,
    );
    checks.claim(
        "generic cube of the second model's basis span vanishes mod 3",
        x_t.cup.cubic_divisibility_fermat(&three).map_err(compute)?,
    );

    // The binomial-weight equation is unmatchable over the integers.
    let std_eq = derived_equation(EquationKind::Standard).map_err(compute)?;
    let proof = mod_p_obstruction(&std_eq.lhs, &std_eq.rhs, &three).map_err(compute)?;
    checks.claim(
        "binomial-weight matching is infeasible mod 3 (left reduces to 0, right to 2)",
        proof
            .as_ref()
            .is_some_and(|p| p.lhs_residue == int(0) && p.rhs_residue == int(2)),
    );
    checks.value(
        "binomial-weight reduced equation",
        format!("{} = {}", std_eq.lhs, std_eq.rhs),
        "6*x*y*z = 6*a*b - 9*b - 10",
    );

    // Export / import round trips.
    let phi_file = from_model(&x_phi)?;
    let phi_json = canonical_json(&phi_file);
    let phi_reload = to_model(
        &serde_json::from_str::<ModelFile>(&phi_json).map_err(|e| CliError::Schema {
            path: "<round-trip>".to_string(),
            detail: e.to_string(),
        })?,
        "<round-trip>",
    )?;
    let phi_reload_template = phi_reload.template("H_phi").map_err(compute)?.expr.clone();
    checks.claim(
        "export/import round trip preserves the first model (H_phi^3 and H_phi.c2)",
        phi_reload.cup.cube(&phi_reload_template).map_err(compute)?
            == x_phi.cup.cube(&h_phi).map_err(compute)?
            && phi_reload.c2.pair(&phi_reload_template).map_err(compute)? == c2_phi,
    );
    let t_file = from_model(&x_t)?;
    let t_json = canonical_json(&t_file);
    let t_reload = to_model(
        &serde_json::from_str::<ModelFile>(&t_json).map_err(|e| CliError::Schema {
            path: "<round-trip>".to_string(),
            detail: e.to_string(),
        })?,
        "<round-trip>",
    )?;
    let t_reload_template = t_reload.template("H_T").map_err(compute)?.expr.clone();
    let (rp, rl) = t_reload_template.split_constant_parametric();
    let reload_split = t_reload.cup.cube_split(&rp, &rl).map_err(compute)?;
    checks.claim(
        "export/import round trip preserves the second model (block totals)",
        reload_split.paper_sum == split.paper_sum
            && reload_split.standard_sum == split.standard_sum,
    );

    let mut human = checks.lines.join("\n");
    human.push('\n');
    human.push_str(&format!(
        "---\n{} passed, {} failed, {} informational\n",
        checks.passed, checks.failed, checks.info
    ));

    let mut report = ReportDocument::new(argv);
    report
        .inputs
        .insert("model.x_phi.sha256".to_string(), sha256_hex(phi_json.as_bytes()));
    report
        .inputs
        .insert("model.x_t.sha256".to_string(), sha256_hex(t_json.as_bytes()));
    report.results = json!({
        "checks": checks.entries,
        "passed": checks.passed,
        "failed": checks.failed,
        "info": checks.info,
    });
    report.citations = citations();
    Ok(CommandOutput {
        human,
        report,
        failures: checks.failed,
    })
}

fn citations() -> Vec<String> {
    vec![
        "Surface invariant pairs (K^2, e) for the five named surface types are catalog \
         values, validated in the models against the (K^2, e - K^2) rule."
            .to_string(),
        "Equal integer-valued Hilbert polynomials put both polarized models in one \
         Hilbert scheme; its connectedness (Hartshorne) supplies the chain of flat \
         projective deformations and is assumed, not computed."
            .to_string(),
        "Ampleness of the matched divisor classes is assumed: it holds once every \
         parameter exceeds a positive threshold that this engine does not quantify."
            .to_string(),
    ]
}

/// `cube`: trilinear cube of a divisor expression.
pub fn cube_cmd(argv: Vec<String>, model_spec: &str, divisor_spec: &str) -> Result<CommandOutput, CliError> {
    let loaded = load_model(model_spec)?;
    let expr = divisor_expr(&loaded.model, divisor_spec)?;
    let value = loaded.model.cup.cube(&expr).map_err(compute)?;
    let human = format!("cube({divisor_spec}) = {value}\n");
    let mut report = ReportDocument::new(argv);
    report.inputs.insert("model".to_string(), loaded.source.clone());
    report.inputs.insert("model.sha256".to_string(), loaded.digest.clone());
    report.inputs.insert("divisor".to_string(), divisor_spec.to_string());
    report.results = json!({ "cube": value.to_string() });
    Ok(CommandOutput {
        human,
        report,
        failures: 0,
    })
}

/// `c2`: linear pairing of a divisor expression with the second Chern
/// class.
pub fn c2_cmd(argv: Vec<String>, model_spec: &str, divisor_spec: &str) -> Result<CommandOutput, CliError> {
    let loaded = load_model(model_spec)?;
    let expr = divisor_expr(&loaded.model, divisor_spec)?;
    let value = loaded.model.c2.pair(&expr).map_err(compute)?;
    let human = format!("c2({divisor_spec}) = {value}\n");
    let mut report = ReportDocument::new(argv);
    report.inputs.insert("model".to_string(), loaded.source.clone());
    report.inputs.insert("model.sha256".to_string(), loaded.digest.clone());
    report.inputs.insert("divisor".to_string(), divisor_spec.to_string());
    report.results = json!({ "c2": value.to_string() });
    Ok(CommandOutput {
        human,
        report,
        failures: 0,
    })
}

/// `hilbert`: Hilbert polynomial of a numeric `(d3, d.c2)` pair.
pub fn hilbert_cmd(argv: Vec<String>, d3_text: &str, dc2_text: &str) -> Result<CommandOutput, CliError> {
    let d3 = parse_decimal(d3_text, "d3")?;
    let dc2 = parse_decimal(dc2_text, "dc2")?;
    let pair = ChernPair::numeric(d3.clone(), dc2.clone());
    let hp = hilbert_polynomial(&pair).map_err(compute)?;
    if !hp.is_integer_valued() {
        return Err(CliError::Compute {
            source: cy3_core::Error::NotIntegerValued { d3, dc2 },
        });
    }
    let mut values = BTreeMap::new();
    let mut human = format!("P(n) = {hp}\n");
    for n in 1..=3i64 {
        let v = hp
            .eval_int(&int(n))
            .expect("integer-valued polynomial evaluates to integers");
        human.push_str(&format!("P({n}) = {v}\n"));
        values.insert(n.to_string(), v.to_string());
    }
    human.push_str("integer-valued: yes\n");
    let verdict = rr_cubic_divisibility(&pair).map_err(compute)?;
    let verdict_json = match &verdict {
        RrVerdict::Applicable { holds, trace } => {
            human.push_str(&format!(
                "cubic divisibility: {} ({trace})\n",
                if *holds { "3 | d3 holds" } else { "3 | d3 FAILS" }
            ));
            json!({ "applicable": true, "holds": holds, "trace": trace.to_string() })
        }
        RrVerdict::NotApplicable { dc2_mod_6 } => {
            human.push_str(&format!(
                "cubic divisibility: not applicable (d.c2 mod 6 = {dc2_mod_6})\n"
            ));
            json!({ "applicable": false, "dc2_mod_6": dc2_mod_6.to_string() })
        }
    };
    let mut report = ReportDocument::new(argv);
    report.inputs.insert("d3".to_string(), d3_text.to_string());
    report.inputs.insert("dc2".to_string(), dc2_text.to_string());
    report.results = json!({
        "polynomial": hp.to_string(),
        "values": values,
        "integer_valued": true,
        "divisibility": verdict_json,
    });
    Ok(CommandOutput {
        human,
        report,
        failures: 0,
    })
}

fn parity_json(p: &ModelParity) -> Value {
    json!({
        "name": p.name,
        "c2_divisible_6": p.c2_report.divisible,
        "cubic_divisible_3": p.cubic_divisible_3,
    })
}

/// `distinguish`: compare the divisibility parities of two models.
pub fn distinguish_cmd(argv: Vec<String>, left_spec: &str, right_spec: &str) -> Result<CommandOutput, CliError> {
    let left = load_model(left_spec)?;
    let right = load_model(right_spec)?;
    let rep = distinguish(&left.model, &right.model).map_err(compute)?;
    let mut human = String::new();
    if rep.distinguished {
        let witnesses: Vec<String> = rep
            .witnesses
            .iter()
            .map(|w| format!("{} = {} (mod {} fails)", w.item, w.value, w.modulus))
            .collect();
        human.push_str(&format!("distinguished: {}\n", witnesses.join(", ")));
    } else {
        human.push_str("inconclusive: both models share the same divisibility parities\n");
    }
    for p in [&rep.left, &rep.right] {
        human.push_str(&format!(
            "{}: c2 divisible by 6 on all generators = {}; cubic form divisible by 3 = {}\n",
            p.name, p.c2_report.divisible, p.cubic_divisible_3
        ));
    }
    let witnesses: Vec<Value> = rep
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "model": w.model,
                "item": w.item,
                "value": w.value.to_string(),
                "modulus": w.modulus.to_string(),
            })
        })
        .collect();
    let mut report = ReportDocument::new(argv);
    report.inputs.insert("left".to_string(), left.source.clone());
    report.inputs.insert("left.sha256".to_string(), left.digest.clone());
    report.inputs.insert("right".to_string(), right.source.clone());
    report.inputs.insert("right.sha256".to_string(), right.digest.clone());
    report.results = json!({
        "distinguished": rep.distinguished,
        "left": parity_json(&rep.left),
        "right": parity_json(&rep.right),
        "witnesses": witnesses,
    });
    Ok(CommandOutput {
        human,
        report,
        failures: 0,
    })
}

/// `match`: bounded search for equal cube values, or an infeasibility
/// proof when a modular obstruction exists.
pub fn match_cmd(argv: Vec<String>, equation: &str, bound: i64, box_upper: i64) -> Result<CommandOutput, CliError> {
    let kind = parse_kind(equation)?;
    let eq = derived_equation(kind).map_err(compute)?;
    let mut report = ReportDocument::new(argv);
    report.inputs.insert("equation".to_string(), kind.as_str().to_string());
    report.inputs.insert("lower_bound".to_string(), bound.to_string());
    report.inputs.insert("box".to_string(), box_upper.to_string());
    let mut human = format!("equation ({}): {} = {}\n", kind.as_str(), eq.lhs, eq.rhs);

    for p in [2i64, 3, 5, 7] {
        if let Some(proof) = mod_p_obstruction(&eq.lhs, &eq.rhs, &int(p)).map_err(compute)? {
            human.push_str(&format!("{proof}\n(no search performed)\n"));
            report.results = json!({
                "equation": kind.as_str(),
                "lhs": eq.lhs.to_string(),
                "rhs": eq.rhs.to_string(),
                "infeasible": {
                    "modulus": proof.modulus.to_string(),
                    "lhs_residue": proof.lhs_residue.to_string(),
                    "rhs_residue": proof.rhs_residue.to_string(),
                },
                "solutions": [],
            });
            return Ok(CommandOutput {
                human,
                report,
                failures: 0,
            });
        }
    }

    let problem = builtin_problem(kind, bound, box_upper)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let solutions = enumerate_matches(&problem).map_err(compute)?;
    let params: Vec<String> = problem.bounds.keys().cloned().collect();
    human.push_str(&format!(
        "searched box: {} < {} <= {}\n",
        bound,
        params.join(", "),
        box_upper
    ));
    if solutions.is_empty() {
        human.push_str("no solutions in the searched box\n");
    } else {
        human.push_str(&format!("{} solution(s):\n", solutions.len()));
        for s in &solutions {
            human.push_str(&solution_line(s));
            human.push('\n');
        }
    }
    report.results = json!({
        "equation": kind.as_str(),
        "lhs": eq.lhs.to_string(),
        "rhs": eq.rhs.to_string(),
        "solutions": solutions.iter().map(solution_json).collect::<Vec<_>>(),
    });
    Ok(CommandOutput {
        human,
        report,
        failures: 0,
    })
}

/// `family-check`: verify the built-in one-parameter family against the
/// chosen equation.
pub fn family_check_cmd(argv: Vec<String>, equation: &str, samples: u32) -> Result<CommandOutput, CliError> {
    let kind = parse_kind(equation)?;
    let family = FamilyWitness {
        kind,
        ..builtin_family()
    };
    let rep = cy3_core::matcher::verify_family(&family, samples).map_err(compute)?;

    let subs: Vec<String> = family
        .substitutions
        .iter()
        .map(|(p, s)| format!("{p} = {s}"))
        .collect();
    let mut human = format!("family ({}): {}\n", kind.as_str(), subs.join(", "));
    if rep.identity_holds {
        let common = rep
            .common_value
            .as_ref()
            .map(|p| p.to_string())
            .unwrap_or_default();
        human.push_str(&format!(
            "reduced identity: holds (both sides equal {common})\n"
        ));
    } else {
        human.push_str(&format!(
            "reduced identity: FAILS (left {}, right {})\n",
            rep.lhs_substituted, rep.rhs_substituted
        ));
    }
    human.push_str(&format!(
        "raw cube identity: {}\n",
        if rep.raw_identity_holds { "holds" } else { "FAILS" }
    ));
    human.push_str(&format!(
        "c2 pairings equal: {}\n",
        if rep.c2_equal { "holds" } else { "FAILS" }
    ));
    let growing: Vec<&str> = rep
        .growth
        .iter()
        .filter(|g| !g.unbounded)
        .map(|g| g.param.as_str())
        .collect();
    if growing.is_empty() {
        human.push_str("growth: every parameter is unbounded and >= 1 for C >= 1\n");
    } else {
        human.push_str(&format!("growth: FAILS for {}\n", growing.join(", ")));
    }
    let mismatches = rep
        .samples
        .iter()
        .filter(|s| s.lhs_value != s.rhs_value)
        .count();
    if mismatches == 0 {
        human.push_str(&format!("samples C = 1..={samples}: all match\n"));
    } else {
        human.push_str(&format!(
            "samples C = 1..={samples}: {mismatches} mismatch(es)\n"
        ));
    }
    if !rep.all_ok {
        let eq = derived_equation(kind).map_err(compute)?;
        if let Some(proof) = mod_p_obstruction(&eq.lhs, &eq.rhs, &int(3)).map_err(compute)? {
            human.push_str(&format!("refutation: {proof}\n"));
        }
    }
    human.push_str(&format!(
        "verdict: {}\n",
        if rep.all_ok { "PASS" } else { "FAIL" }
    ));

    let growth_json: Vec<Value> = rep
        .growth
        .iter()
        .map(|g| {
            json!({
                "param": g.param,
                "substitution": g.substitution.to_string(),
                "shifted": g.shifted.to_string(),
                "value_at_one": g.value_at_one.to_string(),
                "unbounded": g.unbounded,
            })
        })
        .collect();
    let samples_json: Vec<Value> = rep
        .samples
        .iter()
        .map(|s| {
            let assignment: BTreeMap<&String, String> = s
                .assignment
                .iter()
                .map(|(k, v)| (k, v.to_string()))
                .collect();
            json!({
                "c": s.c.to_string(),
                "assignment": assignment,
                "lhs_value": s.lhs_value.to_string(),
                "rhs_value": s.rhs_value.to_string(),
            })
        })
        .collect();
    let mut report = ReportDocument::new(argv);
    report.inputs.insert("equation".to_string(), kind.as_str().to_string());
    report.inputs.insert("samples".to_string(), samples.to_string());
    report.results = json!({
        "identity_holds": rep.identity_holds,
        "raw_identity_holds": rep.raw_identity_holds,
        "c2_equal": rep.c2_equal,
        "common_value": rep.common_value.as_ref().map(|p| p.to_string()),
        "growth": growth_json,
        "samples": samples_json,
        "all_ok": rep.all_ok,
    });
    Ok(CommandOutput {
        human,
        report,
        failures: usize::from(!rep.all_ok),
    })
}

/// `export-model`: canonical JSON model file, to a path or stdout.
pub fn export_model_cmd(argv: Vec<String>, model_spec: &str, out: Option<&std::path::Path>) -> Result<CommandOutput, CliError> {
    let loaded = load_model(model_spec)?;
    let file = from_model(&loaded.model)?;
    let text = canonical_json(&file);
    let digest = sha256_hex(text.as_bytes());
    let human = match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                detail: e.to_string(),
            })?;
            format!(
                "wrote {} ({} bytes)\nsha256: {digest}\n",
                path.display(),
                text.len()
            )
        }
        None => text.clone(),
    };
    let mut report = ReportDocument::new(argv);
    report.inputs.insert("model".to_string(), loaded.source.clone());
    if let Some(path) = out {
        report.inputs.insert("out".to_string(), path.display().to_string());
    }
    report.results = json!({
        "sha256": digest,
        "bytes": text.len(),
        "model_file": serde_json::from_str::<Value>(&text).expect("canonical export is JSON"),
    });
    Ok(CommandOutput {
        human,
        report,
        failures: 0,
    })
}
