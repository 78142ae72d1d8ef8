use std::path::Path;

use dertool_core::algebra::{AlgElem, FinDimAlgebra};
use dertool_core::arith::{fmt_rational, series_identity_check};
use dertool_core::calc::hunter::{hunt, HuntMode};
use dertool_core::calc::{
    classify_matrix, classify_poly, ederiv_preimage_findim, ederiv_preimage_poly, exp_map, grade,
    image_decomposition, lambda_map, operator_matrix, preimage_one_sided, preimage_two_sided,
    spectral_block_preimage, surjectivity_findim, surjectivity_poly, verify_certificate, Backend, CertBackend,
    Certificate, FnOp, GradeKind, ImageKind, KernelData, LinOp, LnVerdict, OpClass, Operator, ProjSide,
    Surjectivity, Verdict,
};
use dertool_core::calc::xi_map;
use dertool_core::linalg::{jordan_chevalley, QMat};
use dertool_core::polyext::{PolyExtAlgebra, PolyOp};
use dertool_core::text::{parse_op_spec, OpSpec};
use dertool_core::{Error, Result};
use serde_json::{json, Value};

use crate::session::{findim_elem, poly_elem, read_file, read_matrix, Session, Space};

/// Result of a command that ran to completion: exit code 0 or 1 plus the
/// human and machine renderings.
pub struct Outcome {
    pub code: u8,
    pub human: String,
    pub json: Value,
}

impl Outcome {
    fn ok(human: String, json: Value) -> Self {
        Outcome { code: 0, human, json }
    }

    fn negative(human: String, json: Value) -> Self {
        Outcome { code: 1, human, json }
    }
}

/// Per-backend element parsing and slice solving.
trait Front: CertBackend {
    fn parse(&self, src: &str) -> Result<Self::Elem>;
    fn solve(&self, op: &LinOp, target: &Self::Elem) -> Result<Option<Self::Elem>>;
}

impl Front for FinDimAlgebra {
    fn parse(&self, src: &str) -> Result<AlgElem> {
        findim_elem(self, src)
    }
    fn solve(&self, op: &LinOp, target: &AlgElem) -> Result<Option<AlgElem>> {
        Ok(op.as_matrix()?.solve(target.coeffs())?.map(AlgElem::new))
    }
}

impl Front for PolyExtAlgebra {
    fn parse(&self, src: &str) -> Result<Self::Elem> {
        poly_elem(self, src)
    }
    fn solve(&self, op: &LinOp, target: &Self::Elem) -> Result<Option<Self::Elem>> {
        self.solve_slice(op.as_poly()?, target)
    }
}

fn findim_only(what: &str) -> Error {
    Error::UnsupportedOperator(format!("{what} needs a finite-dimensional algebra (drop --poly)"))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fmt_matrix(m: &QMat) -> String {
    m.to_strings().iter().map(|r| format!("  [{}]", r.join(", "))).collect::<Vec<_>>().join("\n")
}

fn op_for(session: &mut Session, space: &Space, spec: &str) -> Result<LinOp> {
    match space {
        Space::Findim(a) => session.findim_op(a, spec),
        Space::Poly(_) => session.poly_op(spec),
    }
}

// ---------------------------------------------------------------------------

pub fn check(session: &mut Session, space: &Space, spec: &str) -> Result<Outcome> {
    let class = match space {
        Space::Findim(a) => classify_matrix(a, session.findim_op(a, spec)?.as_matrix()?)?,
        Space::Poly(a) => classify_poly(a, session.poly_op(spec)?.as_poly()?, session.seed)?,
    };
    Ok(Outcome::ok(render_class(spec, &class), serde_json::to_value(&class).expect("serializable")))
}

fn render_class(spec: &str, c: &OpClass) -> String {
    let ln = match &c.locally_nilpotent {
        LnVerdict::Yes { index, witness } if *index > 0 => format!("yes (index {index}; {witness})"),
        LnVerdict::Yes { witness, .. } => format!("yes ({witness})"),
        LnVerdict::No { counterexample } => format!("no (counterexample {counterexample})"),
        LnVerdict::Unknown => "unknown".into(),
    };
    let mut out = vec![
        format!("operator: {spec}"),
        format!("derivation: {}", yes_no(c.is_derivation)),
        format!("endomorphism: {}", yes_no(c.is_endomorphism)),
        format!("E-derivation: {}", yes_no(c.is_ederivation)),
        format!("locally nilpotent: {ln}"),
    ];
    if let Some((a, b)) = &c.failure_witness {
        out.push(format!("Leibniz fails on ({a}, {b})"));
    }
    if c.sampled {
        out.push("laws checked on sampled pairs".into());
    }
    out.join("\n")
}

pub fn jc(session: &mut Session, space: &Space, spec: &str) -> Result<Outcome> {
    let m = match (parse_op_spec(spec)?, space) {
        (OpSpec::MatrixFile(p), _) => read_matrix(Path::new(&p))?,
        (_, Space::Findim(a)) => session.findim_op(a, spec)?.as_matrix()?.clone(),
        (_, Space::Poly(_)) => return Err(findim_only("jc")),
    };
    let d = jordan_chevalley(&m)?;
    d.verify(&m).map_err(Error::CertificateRejected)?;
    let human = format!(
        "semisimple part:\n{}\nnilpotent part:\n{}\nS = p(A) with p = {}\nnilpotency index: {}\nNewton steps: {}",
        fmt_matrix(&d.semisimple),
        fmt_matrix(&d.nilpotent),
        d.witness,
        d.nilpotency_index,
        d.iterations
    );
    let js = json!({
        "semisimple": d.semisimple,
        "nilpotent": d.nilpotent,
        "witness": d.witness.coeffs().iter().map(fmt_rational).collect::<Vec<_>>(),
        "nilpotency_index": d.nilpotency_index,
        "iterations": d.iterations,
    });
    Ok(Outcome::ok(human, js))
}

pub fn grade_cmd(session: &mut Session, space: &Space, spec: &str, kind: GradeKind) -> Result<Outcome> {
    let Space::Findim(a) = space else { return Err(findim_only("grade")) };
    let m = session.findim_op(a, spec)?.as_matrix()?.clone();
    let g = grade(a, &m, kind)?;
    let mut lines = vec![];
    for (l, b) in g.eigenvalues.iter().zip(&g.blocks) {
        let names: Vec<String> = b.iter().map(|x| a.format(x)).collect();
        lines.push(format!("A_{} = span{{{}}}", fmt_rational(l), names.join(", ")));
    }
    for (l, r) in &g.reciprocal_pairs {
        lines.push(format!("reciprocal pair: {}, {}", fmt_rational(l), fmt_rational(r)));
    }
    lines.push("product rule verified on all block basis pairs".into());
    Ok(Outcome::ok(lines.join("\n"), g.to_json(a)))
}

pub fn image(session: &mut Session, space: &Space, spec: &str, kind: ImageKind) -> Result<Outcome> {
    let Space::Findim(a) = space else { return Err(findim_only("image")) };
    let m = session.findim_op(a, spec)?.as_matrix()?.clone();
    let dec = image_decomposition(a, &m, kind)?;
    let fmt = |v: &[AlgElem]| v.iter().map(|x| a.format(x)).collect::<Vec<_>>();
    let mut lines = vec![format!("im = span{{{}}} (dim {})", fmt(&dec.direct).join(", "), dec.direct.len())];
    for (label, piece) in &dec.pieces {
        lines.push(format!("  {label}: span{{{}}}", fmt(piece).join(", ")));
    }
    lines.push("structured image equals the direct image".into());
    let js = json!({
        "image": fmt(&dec.direct),
        "pieces": dec.pieces.iter().map(|(l, p)| json!({"label": l, "basis": fmt(p)})).collect::<Vec<_>>(),
        "grading": dec.grading.to_json(a),
    });
    Ok(Outcome::ok(lines.join("\n"), js))
}

/// `exp` reports `Xi(D) = I - e^D` and `e^D`; `log` reports `Lambda(delta)`.
pub fn series(session: &mut Session, space: &Space, spec: &str, a: Option<&str>, log: bool) -> Result<Outcome> {
    let op = op_for(session, space, spec)?;
    match space {
        Space::Findim(alg) => match a {
            Some(src) => elementwise(alg, &op, &alg.parse(src)?, log),
            None => {
                let maps: Vec<(&str, QMat)> = if log {
                    vec![("Lambda", operator_matrix(alg, &FnOp(|x: &AlgElem| lambda_map(alg, &op, x)))?)]
                } else {
                    vec![
                        ("Xi", operator_matrix(alg, &FnOp(|x: &AlgElem| xi_map(alg, &op, x)))?),
                        ("exp", operator_matrix(alg, &FnOp(|x: &AlgElem| exp_map(alg, &op, x)))?),
                    ]
                };
                let human = maps.iter().map(|(n, m)| format!("{n}({spec}):\n{}", fmt_matrix(m))).collect::<Vec<_>>();
                let js: serde_json::Map<String, Value> =
                    maps.into_iter().map(|(n, m)| (n.to_lowercase(), json!(m))).collect();
                Ok(Outcome::ok(human.join("\n"), Value::Object(js)))
            }
        },
        Space::Poly(alg) => {
            let src = a.ok_or_else(|| Error::Invalid("--a is required on B[t]".into()))?;
            elementwise(alg, &op, &alg.parse(src)?, log)
        }
    }
}

fn elementwise<B: Front + ?Sized>(alg: &B, op: &LinOp, a: &B::Elem, log: bool) -> Result<Outcome>
where
    LinOp: Operator<B>,
{
    let (label, vals) = if log {
        ("Lambda", vec![("lambda", lambda_map(alg, op, a)?)])
    } else {
        ("Xi", vec![("xi", xi_map(alg, op, a)?), ("exp", exp_map(alg, op, a)?)])
    };
    let a_text = alg.format(a);
    let human = vals
        .iter()
        .map(|(k, v)| {
            let name = if *k == "exp" { "e^D" } else { label };
            format!("{name}({a_text}) = {}", alg.format(v))
        })
        .collect::<Vec<_>>()
        .join("\n");
    let mut js = serde_json::Map::new();
    js.insert("a".into(), json!(a_text));
    for (k, v) in &vals {
        js.insert((*k).into(), json!(alg.format(v)));
        js.insert(format!("{k}_coeffs"), alg.elem_to_json(v));
    }
    Ok(Outcome::ok(human, Value::Object(js)))
}

// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CertSide {
    /// Choose a construction from the operator and the given elements.
    Auto,
    /// Target `a e`.
    Right,
    /// Target `e a`.
    Left,
    /// Target `a e b`.
    Two,
    /// E-derivation preimage through `ln(I - delta)`.
    Ederiv,
    /// Blockwise preimage from the spectral grading.
    Spectral,
}

pub struct CertArgs<'a> {
    pub spec: &'a str,
    pub side: CertSide,
    pub e: Option<&'a str>,
    pub s: Option<&'a str>,
    pub a: Option<&'a str>,
    pub b: Option<&'a str>,
    pub target: Option<&'a str>,
    pub kind: Option<ImageKind>,
    pub name: &'a str,
}

fn need<'a>(v: Option<&'a str>, flag: &str) -> Result<&'a str> {
    v.ok_or_else(|| Error::Invalid(format!("{flag} is required here")))
}

/// `(s, e)` from `--e` and optional `--s`; without `--s`, `s = e s0 e` for a
/// solution `s0` of `D(s0) = e`.
fn kernel_data<B: Front + ?Sized>(alg: &B, d: &LinOp, e: B::Elem, s: Option<&str>) -> Result<KernelData<B::Elem>>
where
    LinOp: Operator<B>,
    B::Elem: Clone + PartialEq,
{
    let s = match s {
        Some(src) => alg.parse(src)?,
        None => {
            let s0 = alg
                .solve(d, &e)?
                .ok_or_else(|| Error::PreconditionFailed(format!("{} is not in the image of D", alg.format(&e))))?;
            alg.mul(&alg.mul(&e, &s0)?, &e)?
        }
    };
    KernelData::new(alg, d, s, e)
}

fn certify_kernel<B: Front + ?Sized>(alg: &B, d: &LinOp, args: &CertArgs, side: CertSide, e: B::Elem) -> Result<Certificate>
where
    LinOp: Operator<B>,
    B::Elem: Clone + PartialEq,
{
    let k = kernel_data(alg, d, e, args.s)?;
    let target = args.target.map(|t| alg.parse(t)).transpose()?;
    let cert = match side {
        CertSide::Two => {
            let (a, b) = (alg.parse(need(args.a, "--a")?)?, alg.parse(need(args.b, "--b")?)?);
            preimage_two_sided(alg, d, &k, &a, &b)?
        }
        CertSide::Right | CertSide::Left if args.a.is_some() => {
            let a = alg.parse(need(args.a, "--a")?)?;
            let side = if side == CertSide::Right { ProjSide::Right } else { ProjSide::Left };
            preimage_one_sided(alg, d, &k, &a, side)?
        }
        _ => {
            // The target itself plays the role of `a`; it must absorb `e` on
            // the chosen side.
            let t = target.clone().ok_or_else(|| Error::Invalid("--target or --a is required".into()))?;
            let right_ok = alg.mul(&t, &k.e)? == t;
            let left_ok = alg.mul(&k.e, &t)? == t;
            let side = match side {
                CertSide::Right if right_ok => ProjSide::Right,
                CertSide::Left if left_ok => ProjSide::Left,
                CertSide::Auto if right_ok => ProjSide::Right,
                CertSide::Auto if left_ok => ProjSide::Left,
                _ => {
                    return Err(Error::Invalid(format!(
                        "target {} is not of the requested form a e / e a",
                        alg.format(&t)
                    )))
                }
            };
            preimage_one_sided(alg, d, &k, &t, side)?
        }
    };
    if let Some(t) = target {
        if cert.target(alg)? != t {
            return Err(Error::Invalid(format!(
                "--target {} differs from the constructed target {}",
                alg.format(&t),
                alg.format(&cert.target(alg)?)
            )));
        }
    }
    Ok(cert)
}

pub fn certify(session: &mut Session, space: &Space, args: &CertArgs) -> Result<Outcome> {
    let op = op_for(session, space, args.spec)?;
    let kernel_side = |e_given: bool| match args.side {
        CertSide::Auto => e_given,
        CertSide::Right | CertSide::Left | CertSide::Two => true,
        _ => false,
    };
    let cert = match space {
        Space::Findim(alg) => {
            let class = classify_matrix(alg, op.as_matrix()?)?;
            let ln = matches!(class.locally_nilpotent, LnVerdict::Yes { .. });
            let unit = alg.unit().cloned();
            if kernel_side(args.e.is_some()) || (args.side == CertSide::Auto && class.is_derivation && ln && unit.is_some()) {
                let e = match args.e {
                    Some(src) => alg.parse(src)?,
                    None => unit.ok_or(Error::NotUnital)?,
                };
                certify_kernel(alg, &op, args, args.side, e)?
            } else {
                let v = alg.parse(need(args.target, "--target")?)?;
                match args.side {
                    CertSide::Ederiv => ederiv_preimage_findim(alg, &op, &v)?,
                    CertSide::Auto if class.is_ederivation && ln => ederiv_preimage_findim(alg, &op, &v)?,
                    _ => {
                        let kind = args.kind.unwrap_or(if class.is_derivation {
                            ImageKind::Derivation
                        } else {
                            ImageKind::Ederivation
                        });
                        spectral_block_preimage(alg, &op, kind, &v)?
                    }
                }
            }
        }
        Space::Poly(alg) => {
            let p = op.as_poly()?.clone();
            let derivation = p == PolyOp::Derivative;
            if kernel_side(args.e.is_some()) || (args.side == CertSide::Auto && derivation) {
                let e = match args.e {
                    Some(src) => alg.parse(src)?,
                    None => alg.one()?,
                };
                certify_kernel(alg, &op, args, args.side, e)?
            } else if args.side == CertSide::Spectral {
                return Err(findim_only("the spectral construction"));
            } else {
                let v = alg.parse(need(args.target, "--target")?)?;
                ederiv_preimage_poly(alg, &p, &v)?
            }
        }
    };
    let text = serde_json::to_string_pretty(&cert).expect("serializable");
    let path = session.write(args.name, &text)?;
    let meta = |k: &str| cert.meta.get(k).and_then(Value::as_str).unwrap_or("?").to_string();
    let human = format!(
        "{}({}) = {}\nconstruction: {}\nwritten to {}",
        args.spec,
        meta("preimage_text"),
        meta("target_text"),
        serde_json::to_value(cert.construction).expect("serializable").as_str().unwrap_or("?"),
        path.display()
    );
    let js = json!({ "path": path.display().to_string(), "certificate": cert });
    Ok(Outcome::ok(human, js))
}

pub fn verify(path: &Path) -> Result<Outcome> {
    let cert: Certificate = serde_json::from_str(&read_file(path)?)
        .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    let verdict = verify_certificate(&cert)?;
    let js = serde_json::to_value(&verdict).expect("serializable");
    Ok(match &verdict {
        Verdict::Verified => Outcome::ok(format!("verified: {}", path.display()), js),
        Verdict::Mismatch { expected, got, difference } => Outcome::negative(
            format!("MISMATCH in {}\n  expected: {expected}\n  got:      {got}\n  got - expected: {difference}", path.display()),
            js,
        ),
    })
}

pub fn surjectivity(session: &mut Session, space: &Space, spec: &str, cert_name: Option<&str>) -> Result<Outcome> {
    let found: Option<(String, Value, Certificate)> = match space {
        Space::Findim(alg) => {
            let op = session.findim_op(alg, spec)?;
            match surjectivity_findim(alg, &op)? {
                Surjectivity::NotInImage => None,
                Surjectivity::Surjective { u, report, certificate } => Some((alg.format(&u), report, certificate)),
            }
        }
        Space::Poly(alg) => {
            let op = session.poly_op(spec)?;
            match surjectivity_poly(alg, op.as_poly()?)? {
                Surjectivity::NotInImage => None,
                Surjectivity::Surjective { u, report, certificate } => Some((alg.format(&u), report, certificate)),
            }
        }
    };
    match found {
        None => Ok(Outcome::negative(
            format!("NotInImage: 1 is not in the image of {spec}"),
            json!({ "status": "not_in_image" }),
        )),
        Some((u, report, certificate)) => {
            let mut human = format!("Surjective: {spec}({u}) = 1");
            if let Value::Object(m) = &report {
                for (k, v) in m {
                    if k != "u" {
                        human.push_str(&format!("\n  {k}: {}", v.as_str().map(String::from).unwrap_or_else(|| v.to_string())));
                    }
                }
            }
            let mut js = json!({ "status": "surjective", "u": u, "report": report, "certificate": certificate });
            if let Some(name) = cert_name {
                let path = session.write(name, &serde_json::to_string_pretty(&certificate).expect("serializable"))?;
                human.push_str(&format!("\ncertificate written to {}", path.display()));
                js["path"] = json!(path.display().to_string());
            }
            Ok(Outcome::ok(human, js))
        }
    }
}

pub fn hunt_cmd(session: &mut Session, mode: HuntMode, trials: usize, report_name: Option<&str>) -> Result<Outcome> {
    let report = hunt(mode, session.seed, trials);
    let text = serde_json::to_string_pretty(&report).expect("serializable");
    let mut human = format!(
        "mode {mode}, seed {}: {} trials, {} passed, {} skipped, {} violations",
        report.seed,
        report.trials,
        report.passes,
        report.skipped,
        report.violations.len()
    );
    for (k, v) in &report.stats {
        human.push_str(&format!("\n  {k}: {v}"));
    }
    for v in &report.violations {
        human.push_str(&format!("\n  VIOLATION trial {} on {}: {}", v.trial, v.algebra, v.detail));
    }
    if let Some(name) = report_name {
        let path = session.write(name, &text)?;
        human.push_str(&format!("\nreport written to {}", path.display()));
    }
    let js: Value = serde_json::from_str(&text).expect("valid json");
    Ok(if report.violations.is_empty() { Outcome::ok(human, js) } else { Outcome::negative(human, js) })
}

pub fn series_claim(i: Option<usize>, order: usize) -> Result<Outcome> {
    let range: Vec<usize> = match i {
        Some(0) => return Err(Error::Invalid("i must be at least 1".into())),
        Some(i) => vec![i],
        None => (1..=10).collect(),
    };
    let results: Vec<(usize, bool)> = range.iter().map(|&i| (i, series_identity_check(i, order))).collect();
    let human = results
        .iter()
        .map(|(i, ok)| format!("i = {i}, N = {order}: {}", if *ok { "holds" } else { "FAILS" }))
        .collect::<Vec<_>>()
        .join("\n");
    let js = json!({
        "order": order,
        "results": results.iter().map(|(i, ok)| json!({"i": i, "holds": ok})).collect::<Vec<_>>(),
    });
    Ok(if results.iter().all(|(_, ok)| *ok) { Outcome::ok(human, js) } else { Outcome::negative(human, js) })
}
