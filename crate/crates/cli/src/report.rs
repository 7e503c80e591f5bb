//! Machine-readable reports and plain-text tables.
//!
//! Floats are rendered as fixed 12-digit decimal strings and exact rationals
//! as `"p/q"` strings, so identical jobs produce byte-identical reports.

use std::fmt::Write as _;

use entrodyn_core::endo_actions::{DegreeEntry, DegreeReport};
use entrodyn_core::entropy_lab::{AutoeqReport, EntropyReport, EntropySequence, HtPoint, LimitEstimate, Verdict};
use entrodyn_core::exact_linalg::rational::{format_rational, to_f64};
use entrodyn_core::exact_linalg::{BigRational, SpectralInterval};
use serde::Serialize;

pub const FORMAT_VERSION: u32 = 1;

pub fn num(x: f64) -> String {
    format!("{x:.12}")
}

#[derive(Debug, Clone, Serialize)]
pub struct Exact {
    pub exact: String,
    pub decimal: String,
}

impl From<&BigRational> for Exact {
    fn from(x: &BigRational) -> Self {
        Self {
            exact: format_rational(x),
            decimal: num(to_f64(x)),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Interval {
    pub lower: Exact,
    pub upper: Exact,
    pub log_lower: String,
    pub log_upper: String,
}

impl From<&SpectralInterval> for Interval {
    fn from(iv: &SpectralInterval) -> Self {
        let (lo, hi) = iv.ln_bounds();
        Self {
            lower: iv.lower().into(),
            upper: iv.upper().into(),
            log_lower: num(lo),
            log_upper: num(hi),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Limit {
    pub h: String,
    pub error_bar: String,
    pub max_residual: String,
}

impl From<&LimitEstimate> for Limit {
    fn from(l: &LimitEstimate) -> Self {
        Self {
            h: num(l.h),
            error_bar: num(l.error_bar),
            max_residual: num(l.max_residual),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Term {
    pub n: u32,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sequence {
    pub descriptor: String,
    pub terms: Vec<Term>,
}

impl From<&EntropySequence> for Sequence {
    fn from(s: &EntropySequence) -> Self {
        let terms = s
            .terms
            .iter()
            .enumerate()
            .map(|(i, &(n, value))| Term {
                n,
                value: num(value),
                exact: s.exact.get(i).map(format_rational),
            })
            .collect();
        Self {
            descriptor: s.descriptor.clone(),
            terms,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictRecord {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
    pub tolerance: String,
    pub pass: bool,
}

impl From<&Verdict> for VerdictRecord {
    fn from(v: &Verdict) -> Self {
        Self {
            name: v.name.clone(),
            lhs: num(v.lhs),
            rhs: num(v.rhs),
            difference: num(v.difference),
            tolerance: num(v.tolerance),
            pass: v.pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SeqRoute {
    pub value: String,
    pub log_value: String,
    pub error_bar: String,
    pub max_residual: String,
    pub reliable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeRow {
    pub q: usize,
    pub eigen_route: Interval,
    pub seq_route: SeqRoute,
    pub multiplicity: usize,
    pub route_gap: String,
    pub agree: bool,
}

impl DegreeRow {
    pub fn new(e: &DegreeEntry, tol: f64) -> Self {
        let s = &e.seq_route;
        Self {
            q: e.codim,
            eigen_route: (&e.eigen_route).into(),
            seq_route: SeqRoute {
                value: num(s.value()),
                log_value: num(s.log_value),
                error_bar: num(s.error_bar),
                max_residual: num(s.max_residual),
                reliable: s.reliable,
            },
            multiplicity: e.multiplicity,
            route_gap: num(e.route_gap()),
            agree: routes_agree(e, tol),
        }
    }
}

pub fn routes_agree(e: &DegreeEntry, tol: f64) -> bool {
    e.seq_route.reliable && e.route_gap() <= tol
}

#[derive(Debug, Clone, Serialize)]
pub struct Params {
    pub tol: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_tol: Option<String>,
    pub n_max: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_grid: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreesReport {
    pub format_version: u32,
    pub command: &'static str,
    pub model: String,
    pub action_degree: String,
    pub params: Params,
    pub degrees: Vec<DegreeRow>,
    pub pass: bool,
}

impl DegreesReport {
    pub fn new(model: &str, degree: &str, params: Params, report: &DegreeReport, tol: f64) -> Self {
        let degrees: Vec<DegreeRow> = report.entries.iter().map(|e| DegreeRow::new(e, tol)).collect();
        Self {
            format_version: FORMAT_VERSION,
            command: "degrees",
            model: model.to_string(),
            action_degree: degree.to_string(),
            params,
            pass: degrees.iter().all(|r| r.agree),
            degrees,
        }
    }

    pub fn table(&self) -> String {
        let mut out = format!("degrees on {} (deg f = {})\n", self.model, self.action_degree);
        let _ = writeln!(
            out,
            "{:>3}  {:>16}  {:>16}  {:>16}  {:>4}  {:>10}  agree",
            "q", "r_q lower", "r_q upper", "d_q (seq)", "l_q", "gap"
        );
        for r in &self.degrees {
            let _ = writeln!(
                out,
                "{:>3}  {:>16}  {:>16}  {:>16}  {:>4}  {:>10.3e}  {}",
                r.q,
                r.eigen_route.lower.decimal,
                r.eigen_route.upper.decimal,
                r.seq_route.value,
                r.multiplicity,
                r.route_gap.parse::<f64>().unwrap_or(f64::NAN),
                if r.agree { "yes" } else { "NO" }
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyJson {
    pub format_version: u32,
    pub command: &'static str,
    pub model: String,
    pub action_degree: String,
    pub params: Params,
    pub h: Limit,
    pub rho: Interval,
    pub max_rq: Interval,
    pub log_max_dq: String,
    pub degrees: Vec<DegreeRow>,
    pub sequence: Sequence,
    pub verdicts: Vec<VerdictRecord>,
    pub pass: bool,
}

impl EntropyJson {
    pub fn new(model: &str, degree: &str, params: Params, r: &EntropyReport, tol: f64) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            command: "entropy",
            model: model.to_string(),
            action_degree: degree.to_string(),
            params,
            h: (&r.h).into(),
            rho: (&r.rho).into(),
            max_rq: (&r.degrees.max_radius()).into(),
            log_max_dq: num(r.log_max_dq()),
            degrees: r.degrees.entries.iter().map(|e| DegreeRow::new(e, tol)).collect(),
            sequence: (&r.sequence).into(),
            verdicts: r.verdicts.iter().map(Into::into).collect(),
            pass: r.all_pass(),
        }
    }

    pub fn table(&self) -> String {
        let mut out = format!("entropy on {} (deg f = {})\n", self.model, self.action_degree);
        let _ = writeln!(out, "  h_cat            {} ± {}", self.h.h, self.h.error_bar);
        let _ = writeln!(out, "  log rho([Lf*])   [{}, {}]", self.rho.log_lower, self.rho.log_upper);
        let _ = writeln!(out, "  log max r_q      [{}, {}]", self.max_rq.log_lower, self.max_rq.log_upper);
        let _ = writeln!(out, "  log max d_q      {}", self.log_max_dq);
        out.push_str(&verdict_table(&self.verdicts));
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AutoeqJson {
    pub format_version: u32,
    pub command: &'static str,
    pub model: String,
    pub twist: Vec<String>,
    pub shift: i64,
    pub l: i64,
    pub anti_ample_twist: Vec<String>,
    pub params: Params,
    pub h: Limit,
    pub rho: Interval,
    pub sequence: Sequence,
    pub verdicts: Vec<VerdictRecord>,
    pub pass: bool,
}

impl AutoeqJson {
    pub fn new(model: &str, twist: &[BigRational], shift: i64, params: Params, r: &AutoeqReport) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            command: "autoeq",
            model: model.to_string(),
            twist: twist.iter().map(format_rational).collect(),
            shift,
            l: r.l,
            anti_ample_twist: r.anti_ample_twist.iter().map(format_rational).collect(),
            params,
            h: (&r.h).into(),
            rho: (&r.rho).into(),
            sequence: (&r.sequence).into(),
            verdicts: r.verdicts.iter().map(Into::into).collect(),
            pass: r.all_pass(),
        }
    }

    pub fn table(&self) -> String {
        let mut out = format!(
            "autoeq on {}: L' = ({}), shift {}, l = {}\n",
            self.model,
            self.twist.join(", "),
            self.shift,
            self.l
        );
        let _ = writeln!(out, "  h(F)             {} ± {}", self.h.h, self.h.error_bar);
        let _ = writeln!(out, "  rho([F])         [{}, {}]", self.rho.lower.decimal, self.rho.upper.decimal);
        out.push_str(&verdict_table(&self.verdicts));
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HtRow {
    pub t: String,
    pub h: Limit,
}

#[derive(Debug, Clone, Serialize)]
pub struct HtJson {
    pub format_version: u32,
    pub command: &'static str,
    pub model: String,
    pub functor: String,
    pub params: Params,
    pub points: Vec<HtRow>,
}

impl HtJson {
    pub fn new(model: &str, functor: String, params: Params, points: &[HtPoint]) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            command: "ht",
            model: model.to_string(),
            functor,
            params,
            points: points
                .iter()
                .map(|p| HtRow {
                    t: num(p.t),
                    h: (&p.h).into(),
                })
                .collect(),
        }
    }

    pub fn table(&self) -> String {
        let mut out = format!("h_t on {} for F = {}\n", self.model, self.functor);
        let _ = writeln!(out, "{:>16}  {:>16}  {:>10}", "t", "h_t", "error");
        for p in &self.points {
            let _ = writeln!(
                out,
                "{:>16}  {:>16}  {:>10.3e}",
                p.t,
                p.h.h,
                p.h.error_bar.parse::<f64>().unwrap_or(f64::NAN)
            );
        }
        out
    }
}

fn verdict_table(verdicts: &[VerdictRecord]) -> String {
    let mut out = String::new();
    for v in verdicts {
        let _ = writeln!(
            out,
            "  [{}] {:<34} diff {:>10.3e} (tol {:.1e})",
            if v.pass { "pass" } else { "FAIL" },
            v.name,
            v.difference.parse::<f64>().unwrap_or(f64::NAN),
            v.tolerance.parse::<f64>().unwrap_or(f64::NAN)
        );
    }
    out
}
