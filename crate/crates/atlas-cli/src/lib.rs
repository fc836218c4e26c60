//! Plan documents, reports and the bodies of the `atlas` subcommands.
//!
//! A plan document is JSON:
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "base": "B",
//!   "params": {},
//!   "steps": [
//!     { "op": "luttinger", "torus": "T2", "curve": "m", "coefficient": "1/1" },
//!     { "op": "sum", "left_surface": "T1", "block": "E", "params": { "k": 1 },
//!       "right_surface": "T", "identifications": [["@m", "@m"]], "kill": [] },
//!     { "op": "torus_surgery", "torus": "T1", "curve": "l", "coefficient": "1/1" },
//!     { "op": "blow_up", "count": 1 }
//!   ],
//!   "target": { "c1sq": 6, "chi_h": 1, "pi1": "zp:3" }
//! }
//! ```
//!
//! Identification and kill words use the presentation grammar (`a b^-1`,
//! `[a, b]`, `(w)^k`, `1`); `@m`, `@l`, `@mu`, `@a1`, ... stand for the curves of
//! the surface being summed on that side.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use atlas_core::catalog::{all_blocks, audit_catalog, render_surface, BlockRef, Inconsistency};
use atlas_core::classifier::{prototype, PrototypeName};
use atlas_core::invariants::{betti, chern_coords};
use atlas_core::realizer::{known_discrepancies, CoverageReport, PointStatus};
use atlas_core::surgery::{evaluate_plan, ConstructionPlan, ManifoldState, Pi1, PlanStep, SurgeryError, Target};
use fpgroups::VerdictLevel;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanDocument {
    pub format_version: u32,
    pub base: String,
    #[serde(default)]
    pub params: BTreeMap<String, u32>,
    pub steps: Vec<StepRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum StepRecord {
    Sum {
        left_surface: String,
        block: String,
        #[serde(default)]
        params: BTreeMap<String, u32>,
        right_surface: String,
        #[serde(default)]
        identifications: Vec<(String, String)>,
        #[serde(default)]
        kill: Vec<String>,
    },
    BlowUp {
        count: u32,
    },
    Luttinger {
        torus: String,
        curve: String,
        coefficient: String,
    },
    TorusSurgery {
        torus: String,
        curve: String,
        coefficient: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetRecord {
    pub c1sq: i64,
    pub chi_h: i64,
    pub pi1: String,
}

fn coefficient_text(c: &Ratio<i64>) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn parse_coefficient(s: &str) -> Result<Ratio<i64>> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: i64 = n.trim().parse().with_context(|| format!("bad coefficient `{s}`"))?;
    let d: i64 = d.trim().parse().with_context(|| format!("bad coefficient `{s}`"))?;
    if d == 0 {
        bail!("bad coefficient `{s}`: zero denominator");
    }
    Ok(Ratio::new(n, d))
}

impl PlanDocument {
    pub fn from_plan(plan: &ConstructionPlan) -> Self {
        let steps = plan
            .steps
            .iter()
            .map(|s| match s {
                PlanStep::Sum { left_surface, right_block, right_surface, identifications, kill } => StepRecord::Sum {
                    left_surface: left_surface.clone(),
                    block: right_block.name.clone(),
                    params: right_block.params.clone(),
                    right_surface: right_surface.clone(),
                    identifications: identifications.clone(),
                    kill: kill.clone(),
                },
                PlanStep::BlowUp { count } => StepRecord::BlowUp { count: *count },
                PlanStep::Luttinger { torus, curve, coefficient } => StepRecord::Luttinger {
                    torus: torus.clone(),
                    curve: curve.clone(),
                    coefficient: coefficient_text(coefficient),
                },
                PlanStep::TorusSurgery { torus, curve, coefficient } => StepRecord::TorusSurgery {
                    torus: torus.clone(),
                    curve: curve.clone(),
                    coefficient: coefficient_text(coefficient),
                },
            })
            .collect();
        PlanDocument {
            format_version: FORMAT_VERSION,
            base: plan.base.name.clone(),
            params: plan.base.params.clone(),
            steps,
            target: plan.target.map(|t| TargetRecord { c1sq: t.c1sq, chi_h: t.chi_h, pi1: t.pi1.descriptor() }),
        }
    }

    pub fn to_plan(&self) -> Result<ConstructionPlan> {
        if self.format_version != FORMAT_VERSION {
            bail!("unsupported format_version {} (expected {FORMAT_VERSION})", self.format_version);
        }
        let block = |name: &str, params: &BTreeMap<String, u32>| BlockRef { name: name.into(), params: params.clone() };
        let mut plan = ConstructionPlan::new(block(&self.base, &self.params));
        for s in &self.steps {
            plan.steps.push(match s {
                StepRecord::Sum { left_surface, block: b, params, right_surface, identifications, kill } => PlanStep::Sum {
                    left_surface: left_surface.clone(),
                    right_block: block(b, params),
                    right_surface: right_surface.clone(),
                    identifications: identifications.clone(),
                    kill: kill.clone(),
                },
                StepRecord::BlowUp { count } => PlanStep::BlowUp { count: *count },
                StepRecord::Luttinger { torus, curve, coefficient } => PlanStep::Luttinger {
                    torus: torus.clone(),
                    curve: curve.clone(),
                    coefficient: parse_coefficient(coefficient)?,
                },
                StepRecord::TorusSurgery { torus, curve, coefficient } => PlanStep::TorusSurgery {
                    torus: torus.clone(),
                    curve: curve.clone(),
                    coefficient: parse_coefficient(coefficient)?,
                },
            });
        }
        if let Some(t) = &self.target {
            let pi1 = parse_pi1(&t.pi1, default_p())?;
            plan.target = Some(Target { c1sq: t.c1sq, chi_h: t.chi_h, pi1 });
        }
        Ok(plan)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plan documents serialize");
        s.push('\n');
        s
    }

    /// Parse errors carry the line and column of the offending token.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| anyhow!("plan parse error at line {}, column {}: {e}", e.line(), e.column()))
    }
}

/// `3` unless `ATLAS_DEFAULT_P` says otherwise.
pub fn default_p() -> u64 {
    std::env::var("ATLAS_DEFAULT_P").ok().and_then(|v| v.trim().parse().ok()).filter(|&p| p >= 2).unwrap_or(3)
}

/// `z`, `zp:P`, or bare `zp` for the default order.
pub fn parse_pi1(s: &str, default: u64) -> Result<Pi1> {
    if s.trim() == "zp" {
        return Ok(Pi1::Finite(default));
    }
    s.parse::<Pi1>().map_err(|e| anyhow!(e))
}

// ---------------------------------------------------------------------------
// reports

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub exit_code: i32,
}

fn prototype_text(state: &ManifoldState, pi1: Pi1) -> String {
    match prototype(state, pi1) {
        Ok(p) => p.to_string(),
        Err(e) => format!("Unclassified ({e})"),
    }
}

/// The report shared by `realize` and `verify`; exit code 0 for a proven
/// cyclic group, 2 for agreement up to abelianization, 1 on failure.
pub fn report(plan: &ConstructionPlan) -> Report {
    let mut out = String::new();
    let _ = writeln!(out, "base: {}", plan.base);
    for (i, s) in plan.steps.iter().enumerate() {
        let _ = writeln!(out, "step {}: {s}", i + 1);
    }
    if let Some(t) = plan.target {
        let _ = writeln!(out, "target: {t}");
    }
    let state = match evaluate_plan(plan) {
        Ok(s) => s,
        Err(e) => {
            let kind = match e {
                SurgeryError::TargetMismatch { .. } => "TargetMismatch",
                _ => "EvaluationError",
            };
            let _ = writeln!(out, "error: {kind}: {e}");
            return Report { text: out, exit_code: 1 };
        }
    };
    let inv = &state.invariants;
    let closure = state.closure.as_ref().expect("evaluated");
    let _ = writeln!(
        out,
        "invariants: e = {}, sigma = {}, b1 = {}, parity {:?}, {:?}, symplectic {}",
        inv.e, inv.sigma, inv.b1, inv.parity, inv.minimal, inv.symplectic
    );
    let _ = writeln!(out, "(c1^2, chi_h) = {}", chern_coords(inv));
    if let Ok((b2, plus, minus)) = betti(inv) {
        let _ = writeln!(out, "b2 = {b2}, b2+ = {plus}, b2- = {minus}");
    }
    let _ = writeln!(out, "pi1 abelianization: {}", closure.abelianization);
    let _ = writeln!(out, "infinite family: {}", if state.admits_infinite_family { "yes" } else { "no" });
    let exit_code = match (plan.target, &closure.verdict) {
        (Some(t), Some(v)) => {
            let _ = writeln!(out, "verdict: {}", v.level.as_str());
            let _ = writeln!(out, "prototype: {}", prototype_text(&state, t.pi1));
            match v.level {
                VerdictLevel::ProvenCyclic => 0,
                VerdictLevel::AbelianizationOnly => 2,
                VerdictLevel::Mismatch => 1,
            }
        }
        _ => {
            let _ = writeln!(out, "verdict: none (no target)");
            0
        }
    };
    Report { text: out, exit_code }
}

// ---------------------------------------------------------------------------
// coverage tables

fn point_columns(p: &atlas_core::realizer::PointReport, pi1: Pi1) -> (String, String) {
    match (&p.status, &p.state) {
        (PointStatus::Realized { level, .. }, Some(s)) => (prototype_text(s, pi1), level.as_str().to_string()),
        (PointStatus::SpecialCase { citation }, _) => (String::new(), citation.clone()),
        (PointStatus::Unrealized { reason }, _) => (String::new(), reason.clone()),
        _ => (String::new(), String::new()),
    }
}

pub fn coverage_csv(r: &CoverageReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["c1sq", "chi_h", "status", "prototype", "verdict"])?;
    for p in &r.points {
        let (proto, verdict) = point_columns(p, r.pi1);
        w.write_record([p.c1sq.to_string(), p.chi_h.to_string(), p.status.label().to_string(), proto, verdict])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn status_colour(p: &atlas_core::realizer::PointReport) -> &'static str {
    match &p.status {
        PointStatus::Realized { level: VerdictLevel::ProvenCyclic, .. } => "#2e7d32",
        PointStatus::Realized { level: VerdictLevel::AbelianizationOnly, .. } => "#f9a825",
        PointStatus::Realized { .. } => "#c62828",
        PointStatus::SpecialCase { .. } => "#1565c0",
        PointStatus::Unrealized { .. } => "#c62828",
    }
}

/// `chi_h` across, `c1^2` up, with the lines `c = 8 chi` and `c = 8 chi - 1`.
pub fn coverage_svg(r: &CoverageReport) -> String {
    let chi_max = r.chi_max.max(1);
    let c_max = 8 * chi_max;
    let (margin, sx) = (40.0, 600.0 / chi_max as f64);
    let sy = 600.0 / c_max as f64;
    let (w, h) = (600.0 + 2.0 * margin, 600.0 + 2.0 * margin);
    let x = |chi: f64| margin + chi * sx;
    let y = |c: f64| h - margin - c * sy;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        x(0.0),
        y(0.0),
        x(chi_max as f64),
        y(0.0)
    );
    let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#, x(0.0), y(0.0), x(0.0), y(c_max as f64));
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12">chi_h</text>"#, x(chi_max as f64) - 30.0, y(0.0) + 25.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12">c1^2</text>"#, x(0.0) - 35.0, y(c_max as f64) - 10.0);
    for (offset, dash) in [(0.0, "none"), (1.0, "4 3")] {
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray" stroke-dasharray="{dash}"/>"#,
            x(offset / 8.0),
            y(0.0),
            x(chi_max as f64),
            y(8.0 * chi_max as f64 - offset)
        );
    }
    for p in &r.points {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{}"><title>({}, {}) {}</title></circle>"#,
            x(p.chi_h as f64),
            y(p.c1sq as f64),
            status_colour(p),
            p.c1sq,
            p.chi_h,
            p.status.label()
        );
    }
    s.push_str("</svg>\n");
    s
}

// ---------------------------------------------------------------------------
// audits and dumps

pub fn paper_audit() -> Vec<Inconsistency> {
    let mut all = audit_catalog();
    all.extend(known_discrepancies());
    all
}

pub fn paper_audit_text() -> String {
    let found = paper_audit();
    let mut s = String::new();
    for f in &found {
        let _ = writeln!(s, "{f}");
    }
    let _ = writeln!(s, "{} findings", found.len());
    s
}

#[derive(Serialize)]
struct SurfaceDump {
    name: String,
    genus: u32,
    self_intersection: i64,
    words: String,
    absorbs_exceptional: bool,
}

#[derive(Serialize)]
struct BlockDump {
    name: String,
    params: BTreeMap<String, u32>,
    e: i64,
    sigma: i64,
    c1sq: i64,
    chi_h: String,
    parity: String,
    minimal: String,
    telescoping: bool,
    presentation: String,
    surfaces: Vec<SurfaceDump>,
    notes: String,
}

pub fn catalog_dump() -> String {
    let blocks: Vec<BlockDump> = all_blocks()
        .iter()
        .map(|b| {
            let cc = chern_coords(&b.invariants);
            BlockDump {
                name: b.name.clone(),
                params: b.params.clone(),
                e: b.invariants.e,
                sigma: b.invariants.sigma,
                c1sq: cc.c1sq,
                chi_h: cc.chi_h.to_string(),
                parity: format!("{:?}", b.invariants.parity),
                minimal: format!("{:?}", b.invariants.minimal),
                telescoping: b.telescoping,
                presentation: b.presentation.to_string(),
                surfaces: b
                    .surfaces
                    .iter()
                    .map(|s| SurfaceDump {
                        name: s.name.clone(),
                        genus: s.genus,
                        self_intersection: s.self_intersection,
                        words: render_surface(b, s),
                        absorbs_exceptional: s.absorbs_exceptional,
                    })
                    .collect(),
                notes: b.notes.to_string(),
            }
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&blocks).expect("catalog serializes");
    s.push('\n');
    s
}

/// Prototype string if the state classifies; `None` for unclassified states.
pub fn prototype_name(state: &ManifoldState, pi1: Pi1) -> Option<String> {
    match prototype(state, pi1).ok()? {
        PrototypeName::Unclassified(_) => None,
        p => Some(p.to_string()),
    }
}
