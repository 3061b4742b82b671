//! Report construction: runs the requested analysis on a parsed document
//! and renders the result as stable machine-readable lines or as text.
//!
//! Every reported number carries its arithmetic mode: `exact:` values come
//! from the rational/quadratic-extension path, `float[tol]:` values from
//! the floating path with the active zero-test tolerance.

use std::fmt::Write as _;

use corank2::applications::motion::{motion_classify, motion_trajectory_jet, MotionSpec};
use corank2::applications::whitney::{
    whitney_direct_jet, whitney_project_classify, UmbrellaForm, UmbrellaType,
};
use corank2::classify::{classify_germ, Classification, HessIndex};
use corank2::cusp::{branch_curves, branch_image_cusps, CuspData};
use corank2::jets::{Jet2, MapJet2};
use corank2::normalform::{so2_invariants, so2_normal_form, NormalFormError, TransformStep};
use corank2::num::{float_tolerance, Coeff, Cplx, Rational, Scalar, F64};

use crate::document::{DocumentBody, GermTerm, InputDocument, MotionDoc, UmbrellaDoc};
use crate::error::CliError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Machine,
}

/// A report: an ordered list of key/value lines plus rendering.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub input_name: String,
    lines: Vec<(String, String)>,
}

impl Report {
    fn new(command: &'static str, input_name: &str) -> Self {
        Report {
            command,
            input_name: input_name.to_string(),
            lines: Vec::new(),
        }
    }

    fn push(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut out = String::from("corank2 report 1\n");
                let _ = writeln!(out, "command {}", self.command);
                let _ = writeln!(out, "input {}", self.input_name);
                for (k, v) in &self.lines {
                    let _ = writeln!(out, "{} {}", k, v);
                }
                out
            }
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "{} report for {}", self.command, self.input_name);
                for (k, v) in &self.lines {
                    let _ = writeln!(out, "  {:<24} {}", k, v);
                }
                out
            }
        }
    }
}

fn exact_tag(v: impl std::fmt::Display) -> String {
    format!("exact:{}", v)
}

fn float_tag(x: f64) -> String {
    format!("float[{:e}]:{}", float_tolerance(), x)
}

fn scalar_tag(s: &Scalar) -> String {
    exact_tag(s)
}

fn cplx_tag(c: &Cplx) -> String {
    format!("float[{:e}]:{}", float_tolerance(), c)
}

/// Builds an exact germ jet from document terms.
pub fn scalar_jet_of_terms(
    terms: &[GermTerm],
    order: usize,
) -> Result<MapJet2<Scalar>, CliError> {
    let mut comps = [Jet2::<Scalar>::zero(order), Jet2::<Scalar>::zero(order)];
    for t in terms {
        if t.i + t.j > order {
            continue; // beyond the truncation order
        }
        let q = t
            .value
            .exact()
            .map_err(|e| CliError::Document(e.to_string()))?;
        let c = comps[(t.component - 1) as usize].get(t.i, t.j).clone();
        comps[(t.component - 1) as usize].set(t.i, t.j, c.add(&Scalar::rational(q.clone())));
    }
    let [x, y] = comps;
    if !x.constant_term().is_zero() || !y.constant_term().is_zero() {
        return Err(CliError::Document(
            "germ must have zero constant terms".to_string(),
        ));
    }
    Ok(MapJet2::new(x, y))
}

/// Builds a complex floating germ jet (any coefficients allowed).
pub fn cplx_jet_of_terms(terms: &[GermTerm], order: usize) -> Result<MapJet2<Cplx>, CliError> {
    let mut comps = [Jet2::<Cplx>::zero(order), Jet2::<Cplx>::zero(order)];
    for t in terms {
        if t.i + t.j > order {
            continue;
        }
        let c = comps[(t.component - 1) as usize].get(t.i, t.j).clone();
        comps[(t.component - 1) as usize].set(
            t.i,
            t.j,
            c.add(&Cplx::new(t.value.to_f64(), 0.0)),
        );
    }
    let [x, y] = comps;
    if !x.constant_term().is_zero() || !y.constant_term().is_zero() {
        return Err(CliError::Document(
            "germ must have zero constant terms".to_string(),
        ));
    }
    Ok(MapJet2::new(x, y))
}

pub fn umbrella_of_doc(u: &UmbrellaDoc) -> Result<UmbrellaForm, CliError> {
    let ex = |v: &crate::document::Value| -> Result<Rational, CliError> {
        Ok(v.exact().map_err(|e| CliError::Document(e.to_string()))?.clone())
    };
    UmbrellaForm::new(
        ex(&u.c3)?,
        ex(&u.d20)?,
        ex(&u.d11)?,
        ex(&u.d02)?,
        ex(&u.d30)?,
        ex(&u.d21)?,
        ex(&u.d12)?,
        ex(&u.d03)?,
    )
    .map_err(|e| CliError::Precondition(e.to_string()))
}

pub fn motion_of_doc(m: &MotionDoc) -> Result<MotionSpec, CliError> {
    let ex_vec = |vs: &[crate::document::Value]| -> Result<Vec<Rational>, CliError> {
        vs.iter()
            .map(|v| {
                Ok(v.exact()
                    .map_err(|e| CliError::Document(e.to_string()))?
                    .clone())
            })
            .collect()
    };
    Ok(MotionSpec {
        a1: ex_vec(&m.a1)?,
        a2: ex_vec(&m.a2)?,
        p: ex_vec(&m.p)?,
        b1: ex_vec(&m.b1)?,
        b2: ex_vec(&m.b2)?,
        q: ex_vec(&m.q)?,
        omega: [
            m.omega[0]
                .exact()
                .map_err(|e| CliError::Document(e.to_string()))?
                .clone(),
            m.omega[1]
                .exact()
                .map_err(|e| CliError::Document(e.to_string()))?
                .clone(),
        ],
    })
}

/// Builds the exact planar germ a document describes.
pub fn scalar_germ_of_document(
    doc: &InputDocument,
    order: usize,
) -> Result<MapJet2<Scalar>, CliError> {
    match &doc.body {
        DocumentBody::Germ(terms) => scalar_jet_of_terms(terms, order),
        DocumentBody::Umbrella(u) => Ok(whitney_direct_jet(&umbrella_of_doc(u)?, order)),
        DocumentBody::Motion(m) => Ok(motion_trajectory_jet(&motion_of_doc(m)?, order)),
    }
}

fn hessian_lines(report: &mut Report, out: &Classification<Scalar>) {
    if let Some(h) = &out.hessian {
        report.push("hessian.uu", scalar_tag(&h.huu));
        report.push("hessian.uv", scalar_tag(&h.huv));
        report.push("hessian.vv", scalar_tag(&h.hvv));
        report.push("hessian.det", scalar_tag(&h.det));
        let idx = match h.index {
            HessIndex::IndexOne => "index-1",
            HessIndex::Definite => "definite",
            HessIndex::Degenerate => "degenerate",
        };
        report.push("hessian.index", idx);
    }
    if let Some(r) = &out.roots {
        report.push("quadric.disc", scalar_tag(&r.disc));
        report.push("quadric.field-disc", r.field_discriminant().to_string());
        report.push(
            "quadric.eta1",
            format!("{} {}", scalar_tag(&r.eta1[0]), scalar_tag(&r.eta1[1])),
        );
        report.push(
            "quadric.eta2",
            format!("{} {}", scalar_tag(&r.eta2[0]), scalar_tag(&r.eta2[1])),
        );
    }
    if let Some(c) = &out.criterion {
        report.push("criterion.d1", scalar_tag(&c.d1));
        report.push("criterion.d2", scalar_tag(&c.d2));
        report.push("criterion.product", scalar_tag(&c.product));
    }
}

fn branch_lines(report: &mut Report, f: &MapJet2<Scalar>, out: &Classification<Scalar>) {
    let (Some(h), Some(roots)) = (&out.hessian, &out.roots) else {
        return;
    };
    if h.index != HessIndex::IndexOne || f.order() < 4 {
        return;
    }
    let id = corank2::classify::Identifier::jacobian(f);
    let Ok(branches) = branch_curves(&id, roots) else {
        return;
    };
    let Ok((c1, c2)) = branch_image_cusps(f, &branches) else {
        return;
    };
    let mut push_branch = |name: &str, c: &CuspData<Scalar>| {
        report.push(&format!("branch.{}.cusp", name), c.is_cusp);
        report.push(&format!("branch.{}.det", name), scalar_tag(&c.det));
        if let Some(kappa) = c.kappa() {
            report.push(&format!("branch.{}.kappa", name), float_tag(kappa));
        }
    };
    push_branch("1", &c1);
    push_branch("2", &c2);
    // angle between the cuspidal directions
    if let (Some(u0), Some(u1), Some(v0), Some(v1)) = (
        c1.c2[0].to_f64(),
        c1.c2[1].to_f64(),
        c2.c2[0].to_f64(),
        c2.c2[1].to_f64(),
    ) {
        let dot = u0 * v0 + u1 * v1;
        let n1 = (u0 * u0 + u1 * u1).sqrt();
        let n2 = (v0 * v0 + v1 * v1).sqrt();
        if n1 > 0.0 && n2 > 0.0 {
            report.push("theta", float_tag((dot.abs() / (n1 * n2)).acos()));
        }
    }
}

/// Exact classification of a germ document.
pub fn classify_exact(doc: &InputDocument, name: &str, order: usize) -> Result<Report, CliError> {
    let mut report = Report::new("classify", name);
    report.push("mode", doc.mode_name());
    report.push("order", order);
    report.push("arithmetic", "exact");
    match &doc.body {
        DocumentBody::Germ(terms) => {
            let f = scalar_jet_of_terms(terms, order)?;
            let out = classify_germ(&f).map_err(|e| CliError::Precondition(e.to_string()))?;
            report.push("verdict", out.verdict);
            report.push("rank", out.rank);
            hessian_lines(&mut report, &out);
            branch_lines(&mut report, &f, &out);
        }
        DocumentBody::Umbrella(u) => {
            let form = umbrella_of_doc(u)?;
            let closed =
                whitney_project_classify(&form).map_err(|e| CliError::Precondition(e.to_string()))?;
            let jet = whitney_direct_jet(&form, order.max(4));
            let direct = classify_germ(&jet).map_err(|e| CliError::Precondition(e.to_string()))?;
            report.push("verdict", closed.verdict);
            report.push(
                "umbrella.type",
                match closed.umbrella_type {
                    UmbrellaType::Elliptic => "elliptic",
                    UmbrellaType::Hyperbolic => "hyperbolic",
                    UmbrellaType::Parabolic => "parabolic",
                },
            );
            report.push(
                "witness.expr1",
                float_tag(closed.witness.expressions[0]),
            );
            report.push(
                "witness.expr2",
                float_tag(closed.witness.expressions[1]),
            );
            report.push("witness.decision", exact_tag(&closed.witness.decision));
            report.push("crosscheck.verdict", direct.verdict);
            report.push("rank", direct.rank);
            hessian_lines(&mut report, &direct);
            branch_lines(&mut report, &jet, &direct);
        }
        DocumentBody::Motion(m) => {
            let spec = motion_of_doc(m)?;
            let (verdict, witness) = motion_classify(&spec);
            let jet = motion_trajectory_jet(&spec, order.max(4));
            let direct = classify_germ(&jet).map_err(|e| CliError::Precondition(e.to_string()))?;
            report.push("verdict", verdict);
            report.push("witness.det-mixed", exact_tag(&witness.det_mixed));
            report.push("witness.det-alpha", exact_tag(&witness.det_alpha));
            report.push("witness.det-beta", exact_tag(&witness.det_beta));
            report.push("crosscheck.verdict", direct.verdict);
            report.push("rank", direct.rank);
            hessian_lines(&mut report, &direct);
            branch_lines(&mut report, &jet, &direct);
        }
    }
    Ok(report)
}

/// Tolerance-based classification of a germ document (decimal inputs
/// allowed).
pub fn classify_float(doc: &InputDocument, name: &str, order: usize) -> Result<Report, CliError> {
    let DocumentBody::Germ(terms) = &doc.body else {
        return Err(CliError::Unsupported(
            "float classification is only available for germ documents".to_string(),
        ));
    };
    let f = cplx_jet_of_terms(terms, order)?;
    let out = classify_germ(&f).map_err(|e| CliError::Precondition(e.to_string()))?;
    let mut report = Report::new("classify", name);
    report.push("mode", doc.mode_name());
    report.push("order", order);
    report.push(
        "arithmetic",
        format!("float tolerance {:e}", float_tolerance()),
    );
    report.push("verdict", out.verdict);
    report.push("rank", out.rank);
    if let Some(h) = &out.hessian {
        report.push("hessian.det", cplx_tag(&h.det));
    }
    if let Some(c) = &out.criterion {
        report.push("criterion.d1", cplx_tag(&c.d1));
        report.push("criterion.d2", cplx_tag(&c.d2));
        report.push("criterion.product", cplx_tag(&c.product));
    }
    Ok(report)
}

/// Builds a floating germ jet straight from document terms.
pub fn f64_jet_of_terms(terms: &[GermTerm], order: usize) -> Result<MapJet2<F64>, CliError> {
    let mut comps = [Jet2::<F64>::zero(order), Jet2::<F64>::zero(order)];
    for t in terms {
        if t.i + t.j > order {
            continue;
        }
        let c = comps[(t.component - 1) as usize].get(t.i, t.j).0;
        comps[(t.component - 1) as usize].set(t.i, t.j, F64(c + t.value.to_f64()));
    }
    let [x, y] = comps;
    if !x.constant_term().is_zero() || !y.constant_term().is_zero() {
        return Err(CliError::Document(
            "germ must have zero constant terms".to_string(),
        ));
    }
    Ok(MapJet2::new(x, y))
}

/// Normal-form report (floating pipeline).
pub fn normal_form_report(
    doc: &InputDocument,
    name: &str,
    order: usize,
) -> Result<Report, CliError> {
    let order = order.max(4);
    let jet = match &doc.body {
        // decimal germ documents go straight to the floating path
        DocumentBody::Germ(terms) => f64_jet_of_terms(terms, order)?,
        _ => scalar_germ_of_document(doc, order)?.map(|s| F64(s.to_f64().unwrap_or(0.0))),
    };
    let nf = so2_normal_form(&jet).map_err(|e| CliError::Precondition(e.to_string()))?;
    let mut report = Report::new("normal-form", name);
    report.push("mode", doc.mode_name());
    report.push("order", jet.order());
    report.push(
        "arithmetic",
        format!("float tolerance {:e}", float_tolerance()),
    );
    report.push("nf.a20", float_tag(nf.a20));
    report.push("nf.eps1", nf.eps1);
    report.push("nf.eps2", nf.eps2);
    report.push("nf.a30", float_tag(nf.a30));
    report.push("nf.a03", float_tag(nf.a03));
    match so2_invariants(&nf) {
        Ok(inv) => {
            report.push("invariants.kappa-plus", float_tag(inv.kappa_plus));
            report.push("invariants.kappa-minus", float_tag(inv.kappa_minus));
            report.push("invariants.theta", float_tag(inv.theta));
        }
        Err(NormalFormError::DeltoidCase) => {
            // deltoid normal form carries no branch invariants
        }
        Err(e) => return Err(CliError::Precondition(e.to_string())),
    }
    for (k, step) in nf.log.steps.iter().enumerate() {
        let rendered = match step {
            TransformStep::TargetRotation(a) => format!("rotate {}", a),
            TransformStep::SourceChange(m) => format!("source {}", m),
        };
        report.push(&format!("transform.{}", k + 1), rendered);
    }
    Ok(report)
}
