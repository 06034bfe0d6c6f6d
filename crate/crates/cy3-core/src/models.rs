//! Curated data for the two built-in threefolds and the operations that
//! compare them.
//!
//! `X_phi` is Beauville's rigid Calabi-Yau threefold: the quotient of a
//! triple product of the Fermat-point elliptic curve by the diagonal
//! order-3 automorphism, with its 27 isolated `1/3(1,1,1)` singular
//! points resolved by planes. `X_T` is its birational modification along
//! the 27 exceptional fiber lines. Both models store the full trilinear
//! cup-product table on a fixed basis, the second-Chern-class pairing,
//! surface provenance for each class where one exists, and a named ample
//! template with free parameters.
//!
//! Every number in the tables is validated on construction against the
//! surface rule `(S^3, S.c2) = (K^2, e - K^2)`, so a transcription slip
//! in either the cube or the pairing is a constructor error, not a wrong
//! answer later.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chern::{chern_pair_of_surface, ChernPair, SurfaceInvariants};
use crate::error::{Error, Result};
use crate::exact::{div_exact, int, mod_floor, Int, IntMatrix, MultiPoly};
use crate::forms::{Basis, DivisorExpr, GeneratorWitness, LinearForm, ScaledDivisor, TrilinearForm};

/// The exceptional plane over an isolated `1/3(1,1,1)` point:
/// `K^2 = 9`, `e = 3`, so the divisor pair is `(9, -6)`.
pub fn surface_projective_plane() -> SurfaceInvariants {
    SurfaceInvariants::new("projective plane", 9, 3)
}

/// The Hirzebruch surface `F1` (one-point blow-up of the plane):
/// `K^2 = 8`, `e = 4`, divisor pair `(8, -4)`.
pub fn surface_hirzebruch_f1() -> SurfaceInvariants {
    SurfaceInvariants::new("Hirzebruch surface F1", 8, 4)
}

/// An abelian surface: `K^2 = 0`, `e = 0`, divisor pair `(0, 0)`.
pub fn surface_abelian() -> SurfaceInvariants {
    SurfaceInvariants::new("abelian surface", 0, 0)
}

/// A relatively minimal rational elliptic surface: `K^2 = 0`, `e = 12`,
/// divisor pair `(0, 12)`.
pub fn surface_rational_elliptic_minimal() -> SurfaceInvariants {
    SurfaceInvariants::new("relatively minimal rational elliptic surface", 0, 12)
}

/// A rational elliptic surface blown up in three points: `K^2 = -3`,
/// `e = 15`, divisor pair `(-3, 18)`.
pub fn surface_rational_elliptic_three_blowup() -> SurfaceInvariants {
    SurfaceInvariants::new("rational elliptic surface blown up at three points", -3, 15)
}

/// A named ample family `sum_l coeff_l(params) * l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmpleTemplate {
    pub name: String,
    pub expr: DivisorExpr,
    /// Exactly the free parameters occurring in the coefficients.
    pub params: Vec<String>,
    /// Human-readable statement of the (assumed) positivity domain.
    pub positivity: String,
}

impl AmpleTemplate {
    pub fn new(name: &str, expr: DivisorExpr) -> Self {
        let params = expr.params();
        Self {
            name: name.to_string(),
            expr,
            params,
            positivity:
                "ample once every parameter exceeds an unquantified positive constant".to_string(),
        }
    }
}

/// A threefold model: basis, cup-product table, `c2` pairing, surface
/// provenance, ample templates, and classes tracked outside the basis.
#[derive(Debug, Clone)]
pub struct ThreefoldModel {
    pub name: String,
    pub basis: Arc<Basis>,
    pub cup: TrilinearForm,
    pub c2: LinearForm,
    /// Surface representatives, keyed by basis label or extra-class name.
    pub surfaces: BTreeMap<String, SurfaceInvariants>,
    pub templates: Vec<AmpleTemplate>,
    /// `(name, (d3, d.c2))` for classes carried outside the basis span.
    pub extra_classes: Vec<(String, ChernPair)>,
}

impl ThreefoldModel {
    pub fn new(
        name: &str,
        basis: Arc<Basis>,
        cup: TrilinearForm,
        c2: LinearForm,
        surfaces: BTreeMap<String, SurfaceInvariants>,
        templates: Vec<AmpleTemplate>,
        extra_classes: Vec<(String, ChernPair)>,
    ) -> Result<Self> {
        let model = Self {
            name: name.to_string(),
            basis,
            cup,
            c2,
            surfaces,
            templates,
            extra_classes,
        };
        model.validate()?;
        Ok(model)
    }

    /// Checks internal consistency:
    ///
    /// * cup table, pairing, and templates share the model basis;
    /// * each basis label with a surface representative satisfies
    ///   `cube(l) = K^2` and `c2(l) = e - K^2`;
    /// * each extra class with a surface representative carries exactly
    ///   the surface's pair;
    /// * surface keys refer to a basis label or an extra class;
    /// * template names are unique and each template's recorded
    ///   parameters are exactly the variables of its coefficients.
    pub fn validate(&self) -> Result<()> {
        if self.cup.basis() != &self.basis || self.c2.basis() != &self.basis {
            return Err(Error::InconsistentModel(format!(
                "model {}: cup table or c2 pairing built over a different basis",
                self.name
            )));
        }
        for (key, surface) in &self.surfaces {
            let in_basis = self.basis.index_of(key).is_ok();
            let extra = self.extra_classes.iter().find(|(n, _)| n == key);
            if !in_basis && extra.is_none() {
                return Err(Error::InconsistentModel(format!(
                    "model {}: surface entry `{key}` names no basis label or extra class",
                    self.name
                )));
            }
            let expected = chern_pair_of_surface(surface);
            if in_basis {
                let class = DivisorExpr::class(&self.basis, key)?;
                let cube = self.cup.cube(&class)?;
                let pairing = self.c2.pair(&class)?;
                let got = ChernPair::new(cube, pairing);
                if got != expected {
                    return Err(Error::InconsistentModel(format!(
                        "model {}: class {key} has pair {got} but its surface `{}` demands {expected}",
                        self.name, surface.name
                    )));
                }
            }
            if let Some((_, pair)) = extra {
                if *pair != expected {
                    return Err(Error::InconsistentModel(format!(
                        "model {}: extra class {key} declares {pair} but its surface `{}` demands {expected}",
                        self.name, surface.name
                    )));
                }
            }
        }
        let mut names = BTreeSet::new();
        for t in &self.templates {
            if !names.insert(t.name.clone()) {
                return Err(Error::InconsistentModel(format!(
                    "model {}: duplicate template `{}`",
                    self.name, t.name
                )));
            }
            if t.expr.basis() != &self.basis {
                return Err(Error::InconsistentModel(format!(
                    "model {}: template `{}` built over a different basis",
                    self.name, t.name
                )));
            }
            if t.params != t.expr.params() {
                return Err(Error::InconsistentModel(format!(
                    "model {}: template `{}` records params {:?} but its coefficients use {:?}",
                    self.name,
                    t.name,
                    t.params,
                    t.expr.params()
                )));
            }
        }
        Ok(())
    }

    pub fn template(&self, name: &str) -> Result<&AmpleTemplate> {
        self.templates
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "model {} has no template `{name}`",
                    self.name
                ))
            })
    }

    pub fn extra_class(&self, name: &str) -> Option<&ChernPair> {
        self.extra_classes
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
    }

    /// Evaluates a template's cube and pairing at a numeric parameter
    /// assignment, yielding the divisor's numeric pair.
    pub fn template_pair(
        &self,
        template: &str,
        assignment: &BTreeMap<String, Int>,
    ) -> Result<ChernPair> {
        let t = self.template(template)?;
        let cube = self.cup.cube(&t.expr)?.eval(assignment)?;
        let pairing = self.c2.pair(&t.expr)?.eval(assignment)?;
        Ok(ChernPair::numeric(cube, pairing))
    }
}

/// The resolved quotient threefold: 27 exceptional planes `E000..E222`
/// (one per isolated fixed point, indexed over `{0,1,2}^3`) and the three
/// abelian-surface classes `L1, L2, L3` descending from the elliptic
/// factors.
pub fn model_x_phi() -> ThreefoldModel {
    let mut labels: Vec<String> = Vec::with_capacity(30);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                labels.push(format!("E{i}{j}{k}"));
            }
        }
    }
    for l in ["L1", "L2", "L3"] {
        labels.push(l.to_string());
    }
    let basis = Basis::new(labels).expect("labels are unique");

    let mut cup = TrilinearForm::new(&basis);
    let mut c2 = LinearForm::new(&basis);
    let mut surfaces = BTreeMap::new();
    for label in basis.labels() {
        if !label.starts_with('E') {
            continue;
        }
        // Each exceptional plane has normal bundle O(-1): E^3 = K^2 = 9,
        // E.c2 = e - K^2 = -6; distinct planes are disjoint, and the
        // planes miss the abelian classes entirely.
        cup.set(label, label, label, int(9)).expect("curated entry");
        c2.set(label, int(-6)).expect("curated entry");
        surfaces.insert(label.clone(), surface_projective_plane());
    }
    // The three abelian classes multiply to the orbit count of a point
    // triple, 27/3 = 9; a repeated factor kills the product, and
    // L.c2 = 0 because abelian surfaces have e = K^2 = 0.
    cup.set("L1", "L2", "L3", int(9)).expect("curated entry");
    for l in ["L1", "L2", "L3"] {
        surfaces.insert(l.to_string(), surface_abelian());
    }

    // Ample family: minus all exceptional planes plus weighted abelian
    // classes.
    let mut pairs: Vec<(&str, MultiPoly)> = basis
        .labels()
        .iter()
        .filter(|l| l.starts_with('E'))
        .map(|l| (l.as_str(), MultiPoly::from(-1)))
        .collect();
    pairs.push(("L1", MultiPoly::var("x")));
    pairs.push(("L2", MultiPoly::var("y")));
    pairs.push(("L3", MultiPoly::var("z")));
    let h_phi = DivisorExpr::from_coeffs(&basis, &pairs).expect("labels exist");

    // Moving planes: images of the blown-up rational elliptic surfaces
    // cut out by pairs of fibrations; not in the basis span with integer
    // coefficients, but their pair follows from the surface rule.
    let extra = vec![(
        "D_ijl".to_string(),
        chern_pair_of_surface(&surface_rational_elliptic_three_blowup()),
    )];
    surfaces.insert(
        "D_ijl".to_string(),
        surface_rational_elliptic_three_blowup(),
    );

    ThreefoldModel::new(
        "X_phi",
        basis,
        cup,
        c2,
        surfaces,
        vec![AmpleTemplate::new("H_phi", h_phi)],
        extra,
    )
    .expect("curated data is consistent")
}

/// The birational modification of `X_phi` across the 27 fiber lines:
/// three relatively minimal rational elliptic classes `M1..M3`, three
/// three-point blow-up classes `S1..S3`, and two abelian classes
/// `A1, A2`.
pub fn model_x_t() -> ThreefoldModel {
    let basis =
        Basis::from_strs(&["M1", "M2", "M3", "S1", "S2", "S3", "A1", "A2"]).expect("unique");
    let m = ["M1", "M2", "M3"];
    let s = ["S1", "S2", "S3"];

    let mut cup = TrilinearForm::new(&basis);
    // Triple self-intersections: M^3 = 0 (relatively minimal rational
    // elliptic, K^2 = 0), S^3 = -3 (three-point blow-up, K^2 = -3).
    for sj in s {
        cup.set(sj, sj, sj, int(-3)).expect("curated entry");
    }
    // Mixed products of the nine fibration pairs.
    for mi in m {
        for sj in s {
            cup.set(mi, mi, sj, int(-1)).expect("curated entry");
            cup.set(mi, sj, sj, int(-1)).expect("curated entry");
        }
    }
    // Products against the abelian direction a*A1 + b*A2: only the listed
    // blocks survive. M_i^2 A2 = -3, M_i S_j A2 = 1, S_j A1 A2 = 3; the
    // remaining A-products (including everything quadratic in A) vanish.
    for mi in m {
        cup.set(mi, mi, "A2", int(-3)).expect("curated entry");
        for sj in s {
            cup.set(mi, sj, "A2", int(1)).expect("curated entry");
        }
    }
    for sj in s {
        cup.set(sj, "A1", "A2", int(3)).expect("curated entry");
    }

    let mut c2 = LinearForm::new(&basis);
    let mut surfaces = BTreeMap::new();
    for mi in m {
        c2.set(mi, int(12)).expect("curated entry");
        surfaces.insert(mi.to_string(), surface_rational_elliptic_minimal());
    }
    for sj in s {
        c2.set(sj, int(18)).expect("curated entry");
        surfaces.insert(sj.to_string(), surface_rational_elliptic_three_blowup());
    }
    for a in ["A1", "A2"] {
        surfaces.insert(a.to_string(), surface_abelian());
    }

    // Ample family: 3(M1+M2+M3) + (S1+S2+S3) + a*A1 + b*A2.
    let mut pairs: Vec<(&str, MultiPoly)> = Vec::new();
    for mi in m {
        pairs.push((mi, MultiPoly::from(3)));
    }
    for sj in s {
        pairs.push((sj, MultiPoly::from(1)));
    }
    pairs.push(("A1", MultiPoly::var("a")));
    pairs.push(("A2", MultiPoly::var("b")));
    let h_t = DivisorExpr::from_coeffs(&basis, &pairs).expect("labels exist");

    // The flopped fiber surfaces are Hirzebruch F1's; their pair (8, -4)
    // is the whole reason the two models are topologically distinct.
    let extra = vec![(
        "F_ijk".to_string(),
        chern_pair_of_surface(&surface_hirzebruch_f1()),
    )];
    surfaces.insert("F_ijk".to_string(), surface_hirzebruch_f1());

    ThreefoldModel::new(
        "X_T",
        basis,
        cup,
        c2,
        surfaces,
        vec![AmpleTemplate::new("H_T", h_t)],
        extra,
    )
    .expect("curated data is consistent")
}

/// Row/column labels of [`ns_e2_gram`]: the two product classes, the
/// diagonal, and the graph of the order-3 automorphism on the square of
/// the Fermat-point elliptic curve.
pub const NS_E2_LABELS: [&str; 4] = ["0xE", "Ex0", "Delta", "Gamma"];

/// Intersection Gram matrix of the rank-4 sublattice of the elliptic
/// curve square spanned by [`NS_E2_LABELS`].
///
/// Its determinant is -3; the discriminant (absolute value) is 3, and the
/// Smith normal form has invariant factors (1, 1, 1, 3).
pub fn ns_e2_gram() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![0, 1, 1, 1],
        vec![1, 0, 1, 1],
        vec![1, 1, 0, 3],
        vec![1, 1, 3, 0],
    ])
    .expect("rows are rectangular")
}

/// A pair of disjoint sets of exceptional-plane indices, each of
/// cardinality divisible by 3; these are exactly the combinations whose
/// weighted third-sums are lattice classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalCombo {
    lambda: BTreeSet<[u8; 3]>,
    lambda_prime: BTreeSet<[u8; 3]>,
}

impl ExceptionalCombo {
    pub fn new(
        lambda: BTreeSet<[u8; 3]>,
        lambda_prime: BTreeSet<[u8; 3]>,
    ) -> Result<Self> {
        for t in lambda.iter().chain(lambda_prime.iter()) {
            if t.iter().any(|&c| c > 2) {
                return Err(Error::ComboConstraint(format!(
                    "index triple {t:?} has a component outside 0..=2"
                )));
            }
        }
        if !lambda.len().is_multiple_of(3) {
            return Err(Error::ComboConstraint(format!(
                "first set has cardinality {}, not a multiple of 3",
                lambda.len()
            )));
        }
        if !lambda_prime.len().is_multiple_of(3) {
            return Err(Error::ComboConstraint(format!(
                "second set has cardinality {}, not a multiple of 3",
                lambda_prime.len()
            )));
        }
        if let Some(t) = lambda.intersection(&lambda_prime).next() {
            return Err(Error::ComboConstraint(format!(
                "sets overlap at {t:?}"
            )));
        }
        Ok(Self {
            lambda,
            lambda_prime,
        })
    }

    pub fn from_slices(lambda: &[[u8; 3]], lambda_prime: &[[u8; 3]]) -> Result<Self> {
        Self::new(
            lambda.iter().copied().collect(),
            lambda_prime.iter().copied().collect(),
        )
    }

    pub fn lambda(&self) -> &BTreeSet<[u8; 3]> {
        &self.lambda
    }

    pub fn lambda_prime(&self) -> &BTreeSet<[u8; 3]> {
        &self.lambda_prime
    }

    /// Short human-readable description, e.g. `|L|=3, |L'|=6`.
    pub fn describe(&self) -> String {
        format!("|L|={}, |L'|={}", self.lambda.len(), self.lambda_prime.len())
    }
}

fn plane_label(t: &[u8; 3]) -> String {
    format!("E{}{}{}", t[0], t[1], t[2])
}

/// The lattice class `(1/3) sum_{L} E + (2/3) sum_{L'} E` of a valid
/// combination, carried with cleared denominator 3.
pub fn t_class(model: &ThreefoldModel, combo: &ExceptionalCombo) -> Result<ScaledDivisor> {
    let mut pairs: Vec<(String, MultiPoly)> = Vec::new();
    for t in combo.lambda() {
        pairs.push((plane_label(t), MultiPoly::from(1)));
    }
    for t in combo.lambda_prime() {
        pairs.push((plane_label(t), MultiPoly::from(2)));
    }
    let borrowed: Vec<(&str, MultiPoly)> =
        pairs.iter().map(|(l, c)| (l.as_str(), c.clone())).collect();
    let numer = DivisorExpr::from_coeffs(&model.basis, &borrowed)?;
    ScaledDivisor::new(numer, int(3))
}

/// Seed for the deterministic sampling of exceptional combinations; fixed
/// so that reports are byte-identical across runs.
pub const COMBO_SAMPLE_SEED: u64 = 0x5945_3343;

/// Deterministically samples `count` valid exceptional combinations.
pub fn sample_exceptional_combos(count: usize, seed: u64) -> Vec<ExceptionalCombo> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let s_lambda = rng.gen_range(0..=4usize);
            let s_prime = rng.gen_range(0..=(9 - s_lambda).min(4));
            let mut idx: Vec<u8> = (0..27).collect();
            for i in (1..27usize).rev() {
                let j = rng.gen_range(0..=i);
                idx.swap(i, j);
            }
            let decode = |n: u8| [n / 9, (n % 9) / 3, n % 3];
            let lambda: BTreeSet<[u8; 3]> =
                idx[..3 * s_lambda].iter().map(|&n| decode(n)).collect();
            let lambda_prime: BTreeSet<[u8; 3]> = idx[3 * s_lambda..3 * (s_lambda + s_prime)]
                .iter()
                .map(|&n| decode(n))
                .collect();
            ExceptionalCombo::new(lambda, lambda_prime).expect("sampled combo is valid")
        })
        .collect()
}

/// Summary of the fractional-family check inside a
/// [`GeneratorC2Report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TFamilyCheck {
    /// Closed form of the pairing on a valid combination.
    pub formula: String,
    pub samples: usize,
    /// Every sampled pairing matched the closed form.
    pub formula_matches: bool,
    /// Every sampled pairing was divisible by the modulus.
    pub all_divisible: bool,
    /// Any failing samples, as `(description, value)`.
    pub failures: Vec<(String, Int)>,
}

/// The `c2` values of a model's declared generator families, each reduced
/// modulo 6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorC2Report {
    pub model: String,
    pub modulus: Int,
    /// One row per basis label, then one per extra class.
    pub rows: Vec<GeneratorWitness>,
    /// Present when the model carries the full set of 27 exceptional
    /// planes and therefore supports fractional combinations.
    pub t_family: Option<TFamilyCheck>,
    pub divisible: bool,
}

/// Number of combinations sampled by [`generator_c2_table`].
pub const T_FAMILY_SAMPLES: usize = 100;

/// Tabulates `c2` on every declared generator: basis labels, extra
/// classes, and (when the model has all 27 exceptional planes) the
/// fractional combinations, sampled deterministically and checked against
/// the closed form `-2|L| - 4|L'|`.
pub fn generator_c2_table(model: &ThreefoldModel) -> Result<GeneratorC2Report> {
    let six = int(6);
    let mut rows = Vec::new();
    for label in model.basis.labels() {
        let value = model.c2.value(label)?;
        rows.push(GeneratorWitness {
            name: label.clone(),
            residue: mod_floor(&value, &six),
            value,
        });
    }
    for (name, pair) in &model.extra_classes {
        let (_, dc2) = pair.as_numeric()?;
        rows.push(GeneratorWitness {
            name: name.clone(),
            residue: mod_floor(&dc2, &six),
            value: dc2,
        });
    }

    let has_all_planes = (0..27u8).all(|n| {
        model
            .basis
            .index_of(&plane_label(&[n / 9, (n % 9) / 3, n % 3]))
            .is_ok()
    });
    let t_family = if has_all_planes {
        let mut formula_matches = true;
        let mut failures = Vec::new();
        for combo in sample_exceptional_combos(T_FAMILY_SAMPLES, COMBO_SAMPLE_SEED) {
            let sd = t_class(model, &combo)?;
            let pairing = model.c2.pair(&sd.numer)?.as_constant().ok_or_else(|| {
                Error::NonConstant {
                    context: "fractional-family pairing".to_string(),
                    value: "non-constant".to_string(),
                }
            })?;
            let value = div_exact(&pairing, &sd.denom, "fractional-family pairing")?;
            let expected =
                int(-2) * int(combo.lambda().len() as i64)
                    + int(-4) * int(combo.lambda_prime().len() as i64);
            if value != expected {
                formula_matches = false;
                failures.push((combo.describe(), value.clone()));
                continue;
            }
            if !mod_floor(&value, &six).is_zero() {
                failures.push((combo.describe(), value));
            }
        }
        Some(TFamilyCheck {
            formula: "-2*|L| - 4*|L'|".to_string(),
            samples: T_FAMILY_SAMPLES,
            formula_matches,
            all_divisible: failures.is_empty() && formula_matches,
            failures,
        })
    } else {
        None
    };

    let rows_ok = rows.iter().all(|w| w.residue.is_zero());
    let family_ok = t_family.as_ref().is_none_or(|t| t.all_divisible);
    Ok(GeneratorC2Report {
        model: model.name.clone(),
        modulus: six,
        rows,
        t_family,
        divisible: rows_ok && family_ok,
    })
}

/// The two topological parities of one model: is `c2` divisible by 6 on
/// the declared generators, and is the cubic form divisible by 3?
#[derive(Debug, Clone)]
pub struct ModelParity {
    pub name: String,
    pub c2_report: GeneratorC2Report,
    /// True when every integer class in the basis span has `3 | D^3`
    /// (decided exactly by Fermat reduction of the generic cube).
    pub cubic_span_divisible_3: bool,
    /// Cubes of the extra classes, reduced mod 3.
    pub cubic_extra_rows: Vec<GeneratorWitness>,
    pub cubic_divisible_3: bool,
}

/// Computes both parities for a model.
pub fn topological_parity(model: &ThreefoldModel) -> Result<ModelParity> {
    let three = int(3);
    let c2_report = generator_c2_table(model)?;
    let span = model.cup.cubic_divisibility_fermat(&three)?;
    let mut extra_rows = Vec::new();
    for (name, pair) in &model.extra_classes {
        let (d3, _) = pair.as_numeric()?;
        extra_rows.push(GeneratorWitness {
            name: name.clone(),
            residue: mod_floor(&d3, &three),
            value: d3,
        });
    }
    let cubic_divisible_3 = span && extra_rows.iter().all(|w| w.residue.is_zero());
    Ok(ModelParity {
        name: model.name.clone(),
        c2_report,
        cubic_span_divisible_3: span,
        cubic_extra_rows: extra_rows,
        cubic_divisible_3,
    })
}

/// A single failed divisibility, pinned to a model and a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishWitness {
    pub model: String,
    pub item: String,
    pub value: Int,
    pub modulus: Int,
}

/// Outcome of [`distinguish`].
#[derive(Debug, Clone)]
pub struct DistinguishReport {
    pub left: ModelParity,
    pub right: ModelParity,
    /// True when the parity pairs differ, which certifies the models are
    /// not homeomorphic (the parities are homeomorphism invariants).
    pub distinguished: bool,
    pub witnesses: Vec<DistinguishWitness>,
}

fn parity_witnesses(p: &ModelParity, out: &mut Vec<DistinguishWitness>) {
    for w in &p.c2_report.rows {
        if !w.residue.is_zero() {
            out.push(DistinguishWitness {
                model: p.name.clone(),
                item: format!("{}.c2", w.name),
                value: w.value.clone(),
                modulus: int(6),
            });
        }
    }
    if let Some(t) = &p.c2_report.t_family {
        for (desc, value) in &t.failures {
            out.push(DistinguishWitness {
                model: p.name.clone(),
                item: format!("fractional combination {desc}"),
                value: value.clone(),
                modulus: int(6),
            });
        }
    }
    for w in &p.cubic_extra_rows {
        if !w.residue.is_zero() {
            out.push(DistinguishWitness {
                model: p.name.clone(),
                item: format!("{}^3", w.name),
                value: w.value.clone(),
                modulus: int(3),
            });
        }
    }
}

/// Compares the divisibility parities of two models. Differing parities
/// certify non-homeomorphic threefolds; equal parities are inconclusive
/// (the invariants simply do not separate them).
pub fn distinguish(m1: &ThreefoldModel, m2: &ThreefoldModel) -> Result<DistinguishReport> {
    let left = topological_parity(m1)?;
    let right = topological_parity(m2)?;
    let distinguished = (left.c2_report.divisible, left.cubic_divisible_3)
        != (right.c2_report.divisible, right.cubic_divisible_3);
    let mut witnesses = Vec::new();
    parity_witnesses(&left, &mut witnesses);
    parity_witnesses(&right, &mut witnesses);
    Ok(DistinguishReport {
        left,
        right,
        distinguished,
        witnesses,
    })
}
