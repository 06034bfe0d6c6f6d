//! JSON model files and the `builtin:` model registry.
//!
//! The on-disk schema keeps every integer as a decimal string so the
//! format stays language-neutral at any magnitude, lists only nonzero
//! triple products (symmetric closure is applied on load), and is
//! rejected on unknown fields, contradictory duplicate entries, or any
//! violation of the surface consistency rule.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use cy3_core::chern::{ChernPair, SurfaceInvariants};
use cy3_core::forms::{Basis, DivisorExpr, LinearForm, TrilinearForm};
use cy3_core::models::{model_x_phi, model_x_t, AmpleTemplate, ThreefoldModel};
use cy3_core::{Int, MultiPoly};

use crate::report::sha256_hex;
use crate::CliError;

pub const BUILTIN_X_PHI: &str = "builtin:x_phi";
pub const BUILTIN_X_T: &str = "builtin:x_t";

/// One nonzero trilinear entry: sorted or unsorted label triple plus the
/// value as a decimal string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleEntry {
    pub t: [String; 3],
    pub v: String,
}

/// Surface provenance for one class.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceEntry {
    pub k2: String,
    pub e: String,
}

/// A class tracked outside the basis, by its two characteristic numbers.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtraEntry {
    pub d3: String,
    pub dc2: String,
}

/// The complete model file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub basis: Vec<String>,
    pub triple_products: Vec<TripleEntry>,
    #[serde(default)]
    pub c2: BTreeMap<String, String>,
    #[serde(default)]
    pub surfaces: BTreeMap<String, SurfaceEntry>,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub templates: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub extra_classes: BTreeMap<String, ExtraEntry>,
}

/// Canonical serialization of a model file: pretty JSON, sorted map
/// keys, trailing newline.
pub fn canonical_json(file: &ModelFile) -> String {
    let mut text = serde_json::to_string_pretty(file).expect("model file serializes");
    text.push('\n');
    text
}

fn parse_int(text: &str, path: &str, field: &str) -> Result<Int, CliError> {
    text.parse::<Int>().map_err(|e| CliError::Schema {
        path: path.to_string(),
        detail: format!("field `{field}`: `{text}` is not a decimal integer ({e})"),
    })
}

fn schema_err(path: &str, detail: impl std::fmt::Display) -> CliError {
    CliError::Schema {
        path: path.to_string(),
        detail: detail.to_string(),
    }
}

/// Builds a validated model from a parsed file. `path` only labels error
/// messages.
pub fn to_model(file: &ModelFile, path: &str) -> Result<ThreefoldModel, CliError> {
    let basis = Basis::new(file.basis.clone())
        .map_err(|e| schema_err(path, format!("field `basis`: {e}")))?;

    let mut cup = TrilinearForm::new(&basis);
    for entry in &file.triple_products {
        let value = parse_int(&entry.v, path, "triple_products.v")?;
        cup.set(&entry.t[0], &entry.t[1], &entry.t[2], value)
            .map_err(|e| schema_err(path, format!("field `triple_products`: {e}")))?;
    }

    let mut c2 = LinearForm::new(&basis);
    for (label, value) in &file.c2 {
        let value = parse_int(value, path, "c2")?;
        c2.set(label, value)
            .map_err(|e| schema_err(path, format!("field `c2`: {e}")))?;
    }

    let mut surfaces = BTreeMap::new();
    for (label, entry) in &file.surfaces {
        surfaces.insert(
            label.clone(),
            SurfaceInvariants {
                name: label.clone(),
                k_squared: parse_int(&entry.k2, path, "surfaces.k2")?,
                euler: parse_int(&entry.e, path, "surfaces.e")?,
            },
        );
    }

    let mut templates = Vec::new();
    let mut used_params: BTreeSet<String> = BTreeSet::new();
    for (name, coeffs) in &file.templates {
        let mut pairs: Vec<(&str, MultiPoly)> = Vec::with_capacity(coeffs.len());
        for (label, text) in coeffs {
            let poly = MultiPoly::parse(text).map_err(|e| {
                schema_err(path, format!("field `templates.{name}.{label}`: {e}"))
            })?;
            pairs.push((label.as_str(), poly));
        }
        let expr = DivisorExpr::from_coeffs(&basis, &pairs)
            .map_err(|e| schema_err(path, format!("field `templates.{name}`: {e}")))?;
        let template = AmpleTemplate::new(name, expr);
        used_params.extend(template.params.iter().cloned());
        templates.push(template);
    }
    let declared: BTreeSet<String> = file.params.iter().cloned().collect();
    if declared != used_params {
        return Err(schema_err(
            path,
            format!(
                "field `params`: declared {:?} but the templates use {:?}",
                file.params,
                used_params.iter().collect::<Vec<_>>()
            ),
        ));
    }

    let mut extra_classes = Vec::new();
    for (label, entry) in &file.extra_classes {
        extra_classes.push((
            label.clone(),
            ChernPair::numeric(
                parse_int(&entry.d3, path, "extra_classes.d3")?,
                parse_int(&entry.dc2, path, "extra_classes.dc2")?,
            ),
        ));
    }

    ThreefoldModel::new(
        &file.name,
        basis,
        cup,
        c2,
        surfaces,
        templates,
        extra_classes,
    )
    .map_err(|source| CliError::Model { source })
}

/// Serializes a model into the file schema.
pub fn from_model(model: &ThreefoldModel) -> Result<ModelFile, CliError> {
    let triple_products = model
        .cup
        .entries()
        .map(|([l1, l2, l3], v)| TripleEntry {
            t: [l1.to_string(), l2.to_string(), l3.to_string()],
            v: v.to_string(),
        })
        .collect();
    let c2 = model
        .c2
        .entries()
        .map(|(label, v)| (label.to_string(), v.to_string()))
        .collect();
    let surfaces = model
        .surfaces
        .iter()
        .map(|(label, s)| {
            (
                label.clone(),
                SurfaceEntry {
                    k2: s.k_squared.to_string(),
                    e: s.euler.to_string(),
                },
            )
        })
        .collect();
    let mut params: BTreeSet<String> = BTreeSet::new();
    let mut templates = BTreeMap::new();
    for t in &model.templates {
        params.extend(t.params.iter().cloned());
        let coeffs: BTreeMap<String, String> = t
            .expr
            .entries()
            .map(|(label, c)| (label.to_string(), c.to_string()))
            .collect();
        templates.insert(t.name.clone(), coeffs);
    }
    let mut extra_classes = BTreeMap::new();
    for (label, pair) in &model.extra_classes {
        let (d3, dc2) = pair
            .as_numeric()
            .map_err(|source| CliError::Model { source })?;
        extra_classes.insert(
            label.clone(),
            ExtraEntry {
                d3: d3.to_string(),
                dc2: dc2.to_string(),
            },
        );
    }
    Ok(ModelFile {
        name: model.name.clone(),
        basis: model.basis.labels().to_vec(),
        triple_products,
        c2,
        surfaces,
        params: params.into_iter().collect(),
        templates,
        extra_classes,
    })
}

/// A model plus the provenance recorded in reports.
#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub model: ThreefoldModel,
    /// The `--model` argument as given.
    pub source: String,
    /// SHA-256 of the file bytes (for `builtin:` models, of the
    /// canonical export).
    pub digest: String,
}

/// Resolves `builtin:x_phi`, `builtin:x_t`, or a model-file path.
pub fn load_model(spec: &str) -> Result<LoadedModel, CliError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let model = match name {
            "x_phi" => model_x_phi(),
            "x_t" => model_x_t(),
            other => {
                return Err(CliError::Usage(format!(
                    "unknown built-in model `{other}` (expected `x_phi` or `x_t`)"
                )))
            }
        };
        let digest = sha256_hex(canonical_json(&from_model(&model)?).as_bytes());
        return Ok(LoadedModel {
            model,
            source: spec.to_string(),
            digest,
        });
    }
    let bytes = std::fs::read(Path::new(spec)).map_err(|e| CliError::Io {
        path: spec.to_string(),
        detail: e.to_string(),
    })?;
    let file: ModelFile = serde_json::from_slice(&bytes).map_err(|e| CliError::Schema {
        path: spec.to_string(),
        detail: e.to_string(),
    })?;
    let model = to_model(&file, spec)?;
    Ok(LoadedModel {
        model,
        source: spec.to_string(),
        digest: sha256_hex(&bytes),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_round_trip_through_the_schema() {
        for (model, template) in [(model_x_phi(), "H_phi"), (model_x_t(), "H_T")] {
            let file = from_model(&model).unwrap();
            let text = canonical_json(&file);
            let reparsed: ModelFile = serde_json::from_str(&text).unwrap();
            let reloaded = to_model(&reparsed, "round-trip").unwrap();
            assert_eq!(reloaded.name, model.name);
            let t_orig = model.template(template).unwrap();
            let t_new = reloaded.template(template).unwrap();
            assert_eq!(
                model.cup.cube(&t_orig.expr).unwrap(),
                reloaded.cup.cube(&t_new.expr).unwrap()
            );
            assert_eq!(
                model.c2.pair(&t_orig.expr).unwrap(),
                reloaded.c2.pair(&t_new.expr).unwrap()
            );
            // Canonical text is a fixed point of the round trip.
            assert_eq!(text, canonical_json(&from_model(&reloaded).unwrap()));
        }
    }

    #[test]
    fn contradictory_duplicate_triples_are_schema_errors() {
        let mut file = from_model(&model_x_phi()).unwrap();
        file.triple_products.push(TripleEntry {
            t: [
                "E000".to_string(),
                "E000".to_string(),
                "E000".to_string(),
            ],
            v: "8".to_string(),
        });
        assert!(matches!(
            to_model(&file, "test").unwrap_err(),
            CliError::Schema { .. }
        ));
    }

    #[test]
    fn symmetric_closure_accepts_unsorted_triples() {
        let mut file = from_model(&model_x_phi()).unwrap();
        // Restate an existing entry with permuted labels and equal value.
        file.triple_products.push(TripleEntry {
            t: ["L3".to_string(), "L1".to_string(), "L2".to_string()],
            v: "9".to_string(),
        });
        assert!(to_model(&file, "test").is_ok());
    }

    #[test]
    fn surface_inconsistency_is_a_validation_error() {
        let mut file = from_model(&model_x_phi()).unwrap();
        file.surfaces.get_mut("E000").unwrap().k2 = "8".to_string();
        assert!(matches!(
            to_model(&file, "test").unwrap_err(),
            CliError::Model { .. }
        ));
    }

    #[test]
    fn unknown_fields_and_bad_integers_are_rejected() {
        let err = serde_json::from_str::<ModelFile>(
            r#"{"name":"m","basis":["G"],"triple_products":[],"bogus":1}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("bogus"));

        let mut file = from_model(&model_x_phi()).unwrap();
        file.c2.insert("E000".to_string(), "not-a-number".to_string());
        assert!(matches!(
            to_model(&file, "test").unwrap_err(),
            CliError::Schema { .. }
        ));
    }

    #[test]
    fn params_must_match_template_variables() {
        let mut file = from_model(&model_x_phi()).unwrap();
        file.params = vec!["x".to_string(), "y".to_string()];
        let err = to_model(&file, "test").unwrap_err();
        match err {
            CliError::Schema { detail, .. } => assert!(detail.contains("params")),
            other => panic!("expected schema error, got {other:?}"),
        }
    }
}
