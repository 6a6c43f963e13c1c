//! The full analysis pipeline and its serializable report.
//!
//! `analyze` never fails: every downstream error becomes a structured partial
//! result. JSON serialization is deterministic (sorted keys, canonical
//! polynomial strings) so identical inputs and seeds produce byte-identical
//! documents.

use serde_json::{json, Map, Value};

use crate::catalog::{
    catalog, classify_quadric_image, match_against_catalog, QuadricClassification,
};
use crate::error::Error;
use crate::planarity::{
    degree_formula_check, dual_map, implicitize, is_cotrivial, is_planarization, is_trivial,
    DegreeFormulaOutcome, DualMap, SurfaceModel,
};
use crate::ratmap::{BaseLocus, RationalMap, TopologicalDegree};

pub const SCHEMA_VERSION: u64 = 1;

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// How classification labels are reported: the real classification keeps
/// Phi1a and Phi1b distinct; over the complex numbers they merge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldMode {
    Rational,
    Complex,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub seed: u64,
    pub dmax: usize,
    pub field: FieldMode,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            seed: 0,
            dmax: 4,
            field: FieldMode::Rational,
        }
    }
}

/// Aggregated results of the full pipeline.
#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub input: String,
    pub degree: usize,
    pub is_planarization: bool,
    pub is_trivial: bool,
    pub is_cotrivial: Option<bool>,
    pub cotrivial_center: Option<String>,
    pub image_spans_line: bool,
    pub base_locus: BaseLocus,
    pub surface: Option<SurfaceModel>,
    pub surface_error: Option<String>,
    pub topological_degree: Option<TopologicalDegree>,
    pub degree_formula: Option<DegreeFormulaOutcome>,
    pub dual: Option<DualMap>,
    pub quadric_classification: Option<QuadricClassification>,
    pub catalog_matches: Option<Vec<String>>,
    pub seed: u64,
    pub field: FieldMode,
}

/// Runs the full pipeline: planarity, triviality and co-triviality, base
/// locus, implicitization, topological degree, degree formula, dual map and
/// classification.
pub fn analyze(map: &RationalMap, options: &AnalyzeOptions) -> AnalysisReport {
    let seed = options.seed;
    let planar = is_planarization(map);
    let trivial = is_trivial(map);
    let base_locus = map.base_locus(seed);
    let (surface, surface_error) = match implicitize(map, options.dmax) {
        Ok(s) => (Some(s), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let topological_degree = surface.as_ref().and_then(|s| {
        if s.image_dimension == 2 {
            map.topological_degree(seed).ok()
        } else {
            None
        }
    });
    let degree_formula = degree_formula_check(map, seed).ok();
    let (dual, image_spans_line) = if planar && !trivial {
        match dual_map(map) {
            Ok(d) => (Some(d), false),
            Err(Error::ImageSpansLine) => (None, true),
            Err(_) => (None, false),
        }
    } else {
        (None, false)
    };
    let (cotrivial, cotrivial_center) = if planar {
        match is_cotrivial(map) {
            Ok(c) => (Some(c.cotrivial), c.center.map(|p| p.to_string())),
            Err(_) => (None, None),
        }
    } else {
        (None, None)
    };
    let quadric_classification = if planar {
        classify_quadric_image(map, seed).ok()
    } else {
        None
    };
    let catalog_matches = if planar {
        match_against_catalog(map, seed)
            .ok()
            .map(|labels| labels.iter().map(|l| l.as_str().to_string()).collect())
    } else {
        None
    };
    AnalysisReport {
        input: map.to_string(),
        degree: map.degree(),
        is_planarization: planar,
        is_trivial: trivial,
        is_cotrivial: cotrivial,
        cotrivial_center,
        image_spans_line,
        base_locus,
        surface,
        surface_error,
        topological_degree,
        degree_formula,
        dual,
        quadric_classification,
        catalog_matches,
        seed,
        field: options.field,
    }
}

fn base_locus_json(b: &BaseLocus) -> Value {
    let points: Vec<Value> = b
        .points
        .iter()
        .map(|bp| {
            json!({
                "disc": bp.point.field_disc().map(|d| d.to_string()).unwrap_or_else(|| "0".to_string()),
                "multiplicity": bp.multiplicity,
                "point": bp.point.to_string(),
            })
        })
        .collect();
    json!({
        "complete": b.complete,
        "points": points,
        "positiveDimensional": b.positive_dimensional,
        "weight": b.weight,
    })
}

fn surface_json(s: &SurfaceModel) -> Value {
    let eqs: Vec<Value> = s
        .equations
        .iter()
        .map(|e| Value::String(e.to_string()))
        .collect();
    json!({
        "degree": s.degree,
        "equations": eqs,
        "imageDimension": s.image_dimension,
    })
}

fn degree_formula_json(d: &DegreeFormulaOutcome) -> Value {
    match d {
        DegreeFormulaOutcome::Checked(c) => json!({
            "baseWeight": c.base_weight,
            "complete": true,
            "holds": c.holds,
            "lhs": c.map_degree_squared,
            "rhs": c.surface_degree * c.topological_degree + c.base_weight,
            "surfaceDegree": c.surface_degree,
            "topologicalDegree": c.topological_degree,
        }),
        DegreeFormulaOutcome::Incomplete {
            map_degree_squared,
            surface_degree,
            base_weight_partial,
        } => json!({
            "baseWeightPartial": base_weight_partial,
            "complete": false,
            "lhs": map_degree_squared,
            "surfaceDegree": surface_degree,
        }),
    }
}

impl AnalysisReport {
    /// Deterministic JSON document; `serde_json`'s map keeps keys sorted.
    pub fn to_json(&self) -> Value {
        let mut flags = Map::new();
        flags.insert("imageSpansLine".into(), json!(self.image_spans_line));
        flags.insert("isPlanarization".into(), json!(self.is_planarization));
        flags.insert("isTrivial".into(), json!(self.is_trivial));
        if let Some(c) = self.is_cotrivial {
            flags.insert("isCotrivial".into(), json!(c));
        }
        if let Some(center) = &self.cotrivial_center {
            flags.insert("cotrivialCenter".into(), json!(center));
        }

        let mut root = Map::new();
        root.insert("schema".into(), json!(SCHEMA_VERSION));
        root.insert("toolVersion".into(), json!(tool_version()));
        root.insert("seed".into(), json!(self.seed));
        root.insert("input".into(), json!(self.input));
        root.insert("degree".into(), json!(self.degree));
        root.insert("flags".into(), Value::Object(flags));
        root.insert("baseLocus".into(), base_locus_json(&self.base_locus));
        match (&self.surface, &self.surface_error) {
            (Some(s), _) => {
                root.insert("surface".into(), surface_json(s));
            }
            (None, Some(e)) => {
                root.insert("surface".into(), json!({ "error": e }));
            }
            _ => {}
        }
        if let Some(k) = &self.topological_degree {
            root.insert(
                "topologicalDegree".into(),
                json!({
                    "sampled": k.sampled,
                    "samplesComplete": k.samples_complete,
                }),
            );
        }
        if let Some(d) = &self.degree_formula {
            root.insert("degreeFormula".into(), degree_formula_json(d));
        }
        if self.is_planarization {
            if let Some(dual) = &self.dual {
                let comps: Vec<Value> = dual
                    .components
                    .iter()
                    .map(|c| Value::String(c.to_string()))
                    .collect();
                root.insert(
                    "dual".into(),
                    json!({
                        "components": comps,
                        "degree": dual.degree,
                    }),
                );
            }
            let mut classification = Map::new();
            if let Some(qc) = &self.quadric_classification {
                let label = match self.field {
                    FieldMode::Rational => qc.label.as_str(),
                    FieldMode::Complex => qc.label.complex_str(),
                };
                classification.insert("quadricLabel".into(), json!(label));
                classification.insert("witnessAvailable".into(), json!(qc.witness.is_some()));
            }
            if let Some(matches) = &self.catalog_matches {
                classification.insert("catalogMatches".into(), json!(matches));
            }
            root.insert("classification".into(), Value::Object(classification));
        }
        Value::Object(root)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("map: {}", self.input));
        line(format!("degree: {}", self.degree));
        line(format!(
            "planarization: {}",
            if self.is_planarization { "yes" } else { "no" }
        ));
        line(format!("trivial: {}", if self.is_trivial { "yes" } else { "no" }));
        if let Some(c) = self.is_cotrivial {
            match &self.cotrivial_center {
                Some(center) if c => line(format!("co-trivial: yes (center {})", center)),
                _ => line(format!("co-trivial: {}", if c { "yes" } else { "no" })),
            }
        }
        if self.image_spans_line {
            line("note: generic line images span lines; no dual planarization".to_string());
        }
        let b = &self.base_locus;
        if b.points.is_empty() {
            line(format!(
                "base locus: empty (complete: {})",
                b.complete
            ));
        } else {
            line(format!(
                "base locus: weight {} (complete: {})",
                b.weight, b.complete
            ));
            for bp in &b.points {
                line(format!(
                    "  {} with multiplicity {}",
                    bp.point, bp.multiplicity
                ));
            }
        }
        match (&self.surface, &self.surface_error) {
            (Some(s), _) => {
                line(format!(
                    "image: dimension {}, surface degree {}",
                    s.image_dimension, s.degree
                ));
                for e in &s.equations {
                    line(format!("  equation: {} = 0", e));
                }
            }
            (None, Some(e)) => line(format!("image: {}", e)),
            _ => {}
        }
        if let Some(k) = &self.topological_degree {
            line(format!(
                "topological degree: {} (samples complete: {})",
                k.sampled, k.samples_complete
            ));
        }
        if let Some(DegreeFormulaOutcome::Checked(c)) = &self.degree_formula {
            line(format!(
                "degree formula: {} = {}*{} + {} -> {}",
                c.map_degree_squared,
                c.surface_degree,
                c.topological_degree,
                c.base_weight,
                if c.holds { "holds" } else { "fails" }
            ));
        }
        if let Some(d) = &self.dual {
            line(format!(
                "dual planarization (degree {}): [{} : {} : {} : {}]",
                d.degree, d.components[0], d.components[1], d.components[2], d.components[3]
            ));
        }
        if let Some(qc) = &self.quadric_classification {
            let label = match self.field {
                FieldMode::Rational => qc.label.as_str(),
                FieldMode::Complex => qc.label.complex_str(),
            };
            line(format!(
                "quadric classification: {} (witness: {})",
                label,
                if qc.witness.is_some() {
                    "available"
                } else {
                    "unavailable"
                }
            ));
        }
        if let Some(matches) = &self.catalog_matches {
            if matches.is_empty() {
                line("catalog matches: none".to_string());
            } else {
                line(format!("catalog matches: {}", matches.join(", ")));
            }
        }
        out
    }
}

/// The machine-readable catalog export: label, map text, components, and
/// expected invariants of every built-in normal form.
pub fn catalog_json() -> Value {
    let entries: Vec<Value> = catalog()
        .iter()
        .map(|nf| {
            let e = &nf.expected;
            let mut expected = Map::new();
            expected.insert("baseMultiplicities".into(), json!(e.base_multiplicities));
            expected.insert("baseWeight".into(), json!(e.base_weight));
            expected.insert("cotrivial".into(), json!(e.cotrivial));
            expected.insert("dualDegree".into(), json!(e.dual_degree));
            expected.insert("mapDegree".into(), json!(e.map_degree));
            expected.insert("surfaceDegree".into(), json!(e.surface_degree));
            expected.insert("topologicalDegree".into(), json!(e.topological_degree));
            if let Some(eq) = e.surface_equation {
                expected.insert("surfaceEquation".into(), json!(eq));
            }
            json!({
                "components": nf.map.components().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "expected": Value::Object(expected),
                "label": nf.label.as_str(),
                "map": nf.map.to_string(),
            })
        })
        .collect();
    json!({
        "forms": entries,
        "schema": SCHEMA_VERSION,
        "toolVersion": tool_version(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_map;

    fn analyze_text(text: &str, seed: u64) -> AnalysisReport {
        let map = parse_map(text).unwrap().to_rational_map().unwrap();
        analyze(
            &map,
            &AnalyzeOptions {
                seed,
                ..Default::default()
            },
        )
    }

    #[test]
    fn analyze_c1_report() {
        let report = analyze_text("[z*(x^2+y^2) : y*(x^2+z^2) : x*(y^2+z^2) : x*y*z]", 0);
        assert!(report.is_planarization);
        assert!(!report.is_trivial);
        assert_eq!(report.is_cotrivial, Some(false));
        assert_eq!(report.base_locus.weight, 3);
        let s = report.surface.as_ref().unwrap();
        assert_eq!(s.degree, 3);
        assert_eq!(
            s.equations[0].to_string(),
            "4*t^3 - t*u^2 - t*v^2 - t*w^2 + u*v*w"
        );
        assert_eq!(report.topological_degree.as_ref().unwrap().sampled, 2);
        match report.degree_formula.as_ref().unwrap() {
            DegreeFormulaOutcome::Checked(c) => assert!(c.holds),
            _ => panic!("complete check"),
        }
        // The first two cubic forms share every signature invariant (three
        // simple rational base points, cubic surface, topological degree 2,
        // quadratic dual), so signature matching returns both labels.
        assert_eq!(
            report.catalog_matches.as_ref().unwrap(),
            &vec!["C1".to_string(), "C2".to_string()]
        );
    }

    #[test]
    fn analyze_non_planarization() {
        let report = analyze_text("[x^3 : y^3 : z^3 : x^2*y]", 0);
        assert!(!report.is_planarization);
        assert!(report.is_cotrivial.is_none());
        assert!(report.dual.is_none());
        assert!(report.catalog_matches.is_none());
        let v = report.to_json();
        assert!(v.get("classification").is_none());
        assert!(v.get("dual").is_none());
        assert!(v["flags"].get("isCotrivial").is_none());
    }

    #[test]
    fn analyze_phi1a_center() {
        let report = analyze_text("[x^2 : x*y : x*z : y*z]", 0);
        assert_eq!(report.is_cotrivial, Some(true));
        assert_eq!(report.cotrivial_center.as_deref(), Some("[0:0:0:1]"));
    }

    #[test]
    fn json_deterministic() {
        let a = analyze_text("[x^2 : x*y : y^2 : z^2]", 7).to_json_string();
        let b = analyze_text("[x^2 : x*y : y^2 : z^2]", 7).to_json_string();
        assert_eq!(a, b);
        // Key order is sorted at every level.
        let v: Value = serde_json::from_str(&a).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn catalog_export_shape() {
        let v = catalog_json();
        assert_eq!(v["forms"].as_array().unwrap().len(), 19);
        assert_eq!(v["schema"], json!(SCHEMA_VERSION));
        let c1 = &v["forms"][10];
        assert_eq!(c1["label"], json!("C1"));
        assert_eq!(
            c1["expected"]["surfaceEquation"],
            json!("4*t^3 - t*u^2 - t*v^2 - t*w^2 + u*v*w")
        );
    }
}
