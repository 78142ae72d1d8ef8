//! Seeded random searches for counterexamples to the structural statements
//! on finite-dimensional algebras. Every trial draws from its own RNG stream,
//! so reports do not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::backend::{operator_matrix, FnOp};
use super::classify::classify_matrix;
use super::grading::{image_decomposition, ImageKind};
use super::op::LinOp;
use super::series::{exp_map, lambda_map, xi_map};
use super::surject::{surjectivity_findim, unit_orbit, Surjectivity};
use crate::algebra::{
    direct_sum, dual_numbers, rationals, strictly_upper_3, truncated_poly, upper_triangular_2, AlgElem,
    FinDimAlgebra,
};
use crate::arith::{frac, int, Rational};
use crate::error::{Error, ErrorClass, Result};
use crate::linalg::{in_span, jordan_chevalley, same_span, solvability_transfer_check, QMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HuntMode {
    /// Derivations and LN E-derivations annihilate central idempotents.
    CentralIdemKernel,
    /// LN operators have no nonzero idempotent in kernel and image at once.
    NoIdemInKerAndIm,
    /// `ln(I - (I - e^D)) = D`, the dual identity, multiplicativity of `e^D`
    /// and equality of kernels and images.
    Roundtrip,
    /// Solvability over Q agrees with solvability over Q(sqrt 2).
    Transfer,
    /// Unit orbits stabilize and `1 in im delta` forces full rank.
    Surjectivity,
    /// Gradings satisfy the product rules and describe the image.
    Grading,
}

pub const ALL_MODES: [HuntMode; 6] = [
    HuntMode::CentralIdemKernel,
    HuntMode::NoIdemInKerAndIm,
    HuntMode::Roundtrip,
    HuntMode::Transfer,
    HuntMode::Surjectivity,
    HuntMode::Grading,
];

impl HuntMode {
    pub fn as_str(self) -> &'static str {
        match self {
            HuntMode::CentralIdemKernel => "central_idem_kernel",
            HuntMode::NoIdemInKerAndIm => "no_idem_in_ker_and_im",
            HuntMode::Roundtrip => "roundtrip",
            HuntMode::Transfer => "transfer",
            HuntMode::Surjectivity => "surjectivity",
            HuntMode::Grading => "grading",
        }
    }
}

impl fmt::Display for HuntMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HuntMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_MODES
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown hunt mode '{s}'")))
    }
}

// ---------------------------------------------------------------------------
// Random algebras and operators

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Q,
    Dual,
    T2,
    Trunc3,
    N3,
}

impl FactorKind {
    fn algebra(self) -> FinDimAlgebra {
        match self {
            FactorKind::Q => rationals(),
            FactorKind::Dual => dual_numbers(),
            FactorKind::T2 => upper_triangular_2(),
            FactorKind::Trunc3 => truncated_poly(3),
            FactorKind::N3 => strictly_upper_3(),
        }
    }

    fn dim(self) -> usize {
        match self {
            FactorKind::Q => 1,
            FactorKind::Dual => 2,
            _ => 3,
        }
    }
}

/// A direct sum of small factors, remembering the block layout.
#[derive(Clone, Debug)]
pub struct RandomAlgebra {
    pub alg: FinDimAlgebra,
    pub factors: Vec<FactorKind>,
    offsets: Vec<usize>,
}

const UNITAL_KINDS: [FactorKind; 4] = [FactorKind::Q, FactorKind::Dual, FactorKind::T2, FactorKind::Trunc3];
const ALL_KINDS: [FactorKind; 5] = [FactorKind::Q, FactorKind::Dual, FactorKind::T2, FactorKind::Trunc3, FactorKind::N3];

/// One to three factors; with `unital` the non-unital factor is excluded.
pub fn random_algebra(rng: &mut impl Rng, unital: bool) -> RandomAlgebra {
    let kinds: &[FactorKind] = if unital { &UNITAL_KINDS } else { &ALL_KINDS };
    let k = rng.gen_range(1..=3);
    let factors: Vec<FactorKind> = (0..k).map(|_| *kinds.choose(rng).expect("nonempty")).collect();
    let algs: Vec<FinDimAlgebra> = factors.iter().map(|f| f.algebra()).collect();
    let alg = if algs.len() == 1 { algs[0].clone() } else { direct_sum(&algs.iter().collect::<Vec<_>>()) };
    let mut offsets = vec![0];
    for f in &factors {
        offsets.push(offsets.last().unwrap() + f.dim());
    }
    RandomAlgebra { alg, factors, offsets }
}

fn small(rng: &mut impl Rng) -> Rational {
    int(rng.gen_range(-2..=2))
}

fn nonzero(rng: &mut impl Rng) -> Rational {
    [int(1), int(-1), int(2), frac(1, 2), int(-2), frac(-1, 3)].choose(rng).expect("nonempty").clone()
}

pub fn random_elem(rng: &mut impl Rng, dim: usize) -> AlgElem {
    AlgElem::new((0..dim).map(|_| int(rng.gen_range(-3..=3))).collect())
}

/// Random combination of a basis of the derivation space.
pub fn random_derivation(rng: &mut impl Rng, ra: &RandomAlgebra) -> QMat {
    let n = ra.alg.dim();
    ra.alg
        .derivation_space()
        .iter()
        .fold(QMat::zeros(n, n), |acc, b| acc.add(&b.scale(&small(rng))))
}

/// Nilpotent part of a random derivation, retried a few times to avoid the
/// zero operator when the algebra admits nonzero LN derivations.
pub fn random_ln_derivation(rng: &mut impl Rng, ra: &RandomAlgebra) -> Result<QMat> {
    let mut last = None;
    for _ in 0..4 {
        let d = random_derivation(rng, ra);
        let dn = jordan_chevalley(&d)?.nilpotent;
        if !dn.is_zero() {
            return Ok(dn);
        }
        last = Some(dn);
    }
    Ok(last.expect("at least one attempt"))
}

/// Images of the source basis (columns) for an algebra map between factors.
type Block = Vec<Vec<Rational>>;

fn zero_block(src: FactorKind, dst: FactorKind) -> Block {
    vec![vec![Rational::zero(); dst.dim()]; src.dim()]
}

fn characters(k: FactorKind) -> Vec<Vec<Rational>> {
    let (z, o) = (Rational::zero(), Rational::one());
    match k {
        FactorKind::Q => vec![vec![o]],
        FactorKind::Dual => vec![vec![o, z]],
        FactorKind::T2 => vec![vec![o.clone(), z.clone(), z.clone()], vec![z.clone(), z, o]],
        FactorKind::Trunc3 => vec![vec![o, z.clone(), z]],
        FactorKind::N3 => vec![],
    }
}

fn idempotents(k: FactorKind, rng: &mut impl Rng) -> Vec<Vec<Rational>> {
    let (z, o) = (Rational::zero(), Rational::one());
    match k {
        FactorKind::Q => vec![vec![o]],
        FactorKind::Dual => vec![vec![o, z]],
        FactorKind::T2 => {
            let b = small(rng);
            vec![vec![o.clone(), b.clone(), z.clone()], vec![z.clone(), b, o.clone()], vec![o.clone(), z, o]]
        }
        FactorKind::Trunc3 => vec![vec![o, z.clone(), z]],
        FactorKind::N3 => vec![],
    }
}

/// Self-map of a factor; `unipotent` restricts to maps with `phi - I`
/// nilpotent.
fn self_map(k: FactorKind, rng: &mut impl Rng, unipotent: bool) -> Block {
    let (z, o) = (Rational::zero(), Rational::one());
    match k {
        FactorKind::Q => vec![vec![o]],
        FactorKind::Dual => {
            let a = if unipotent { o.clone() } else { small(rng) };
            vec![vec![o, z.clone()], vec![z, a]]
        }
        FactorKind::T2 => {
            let choice = if unipotent { 0 } else { rng.gen_range(0..4) };
            match choice {
                0 => {
                    // Conjugation by [[1, b], [0, g]].
                    let b = small(rng);
                    let g = if unipotent { o.clone() } else { nonzero(rng) };
                    let r = &b / &g;
                    vec![vec![o.clone(), -r.clone(), z.clone()], vec![z.clone(), o / &g, z.clone()], vec![z, r, Rational::one()]]
                }
                1 => vec![vec![o.clone(), z.clone(), z.clone()], vec![z.clone(); 3], vec![z.clone(), z, o]],
                2 => vec![vec![o, z.clone(), z.clone()], vec![z.clone(); 3], vec![z; 3]],
                _ => vec![vec![z.clone(); 3], vec![z.clone(); 3], vec![z.clone(), z, o]],
            }
        }
        FactorKind::Trunc3 => {
            let a = if unipotent { o.clone() } else { small(rng) };
            let b = small(rng);
            vec![vec![o, z.clone(), z.clone()], vec![z.clone(), a.clone(), b], vec![z.clone(), z, &a * &a]]
        }
        FactorKind::N3 => {
            let (a, b) = if unipotent { (o.clone(), o) } else { (small(rng), small(rng)) };
            let (c, d) = (small(rng), small(rng));
            vec![vec![a.clone(), c, z.clone()], vec![z.clone(), &a * &b, z.clone()], vec![z, d, b]]
        }
    }
}

fn cross_map(src: FactorKind, dst: FactorKind, rng: &mut impl Rng) -> Block {
    let chars = characters(src);
    let idems = idempotents(dst, rng);
    if chars.is_empty() || idems.is_empty() {
        return zero_block(src, dst);
    }
    let chi = chars.choose(rng).expect("nonempty");
    let f = idems.choose(rng).expect("nonempty");
    chi.iter().map(|c| f.iter().map(|x| c * x).collect()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndoShape {
    General,
    /// `phi - I` nilpotent: every factor maps to itself unipotently.
    Unipotent,
    /// Factor `k` only receives from factors `j < k`, so `phi` is nilpotent.
    Nilpotent,
}

/// Random algebra endomorphism assembled from maps between factors.
pub fn random_endomorphism(rng: &mut impl Rng, ra: &RandomAlgebra, shape: EndoShape) -> QMat {
    let n = ra.alg.dim();
    let mut m = QMat::zeros(n, n);
    for (k, &dst) in ra.factors.iter().enumerate() {
        let (src_idx, block) = match shape {
            EndoShape::Unipotent => (k, self_map(dst, rng, true)),
            EndoShape::Nilpotent => {
                if k == 0 || rng.gen_bool(0.25) {
                    continue;
                }
                let j = rng.gen_range(0..k);
                (j, cross_map(ra.factors[j], dst, rng))
            }
            EndoShape::General => {
                if rng.gen_bool(0.15) {
                    continue;
                }
                let j = rng.gen_range(0..ra.factors.len());
                let src = ra.factors[j];
                if src == dst && rng.gen_bool(0.6) {
                    (j, self_map(dst, rng, false))
                } else {
                    (j, cross_map(src, dst, rng))
                }
            }
        };
        for (c, col) in block.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                m[(ra.offsets[k] + r, ra.offsets[src_idx] + c)] = x.clone();
            }
        }
    }
    m
}

/// Idempotents reachable without solving `e^2 = e`: subset sums of factor
/// units, embedded factor idempotents, and spectral idempotents of random
/// elements when the algebra is unital.
pub fn sample_idempotents(rng: &mut impl Rng, ra: &RandomAlgebra, central_only: bool) -> Vec<AlgElem> {
    let n = ra.alg.dim();
    let mut out = vec![];
    let embed = |k: usize, v: &[Rational]| {
        let mut e = vec![Rational::zero(); n];
        for (i, x) in v.iter().enumerate() {
            e[ra.offsets[k] + i] = x.clone();
        }
        AlgElem::new(e)
    };
    let units: Vec<Option<AlgElem>> = ra
        .factors
        .iter()
        .enumerate()
        .map(|(k, f)| f.algebra().unit().map(|u| embed(k, u.coeffs())))
        .collect();
    for mask in 1u32..(1 << ra.factors.len()) {
        let mut acc = AlgElem::zero(n);
        let mut ok = true;
        for (k, u) in units.iter().enumerate() {
            if mask & (1 << k) != 0 {
                match u {
                    Some(u) => acc = &acc + u,
                    None => ok = false,
                }
            }
        }
        if ok {
            out.push(acc);
        }
    }
    if !central_only {
        for (k, &f) in ra.factors.iter().enumerate() {
            for e in idempotents(f, rng) {
                out.push(embed(k, &e));
            }
        }
    }
    if ra.alg.is_unital() {
        let z = if central_only { random_central(rng, &ra.alg) } else { random_elem(rng, n) };
        if let Ok(es) = ra.alg.spectral_idempotents(&z) {
            out.extend(es);
        }
    }
    out.retain(|e| !e.is_zero());
    out.dedup();
    out
}

fn random_central(rng: &mut impl Rng, alg: &FinDimAlgebra) -> AlgElem {
    let n = alg.dim();
    let rows: Vec<Vec<Rational>> = (0..n)
        .flat_map(|i| {
            let b = alg.basis_elem(i);
            alg.right_mul_matrix(&b).sub(&alg.left_mul_matrix(&b)).to_rows()
        })
        .collect();
    let center = QMat::from_rows(rows).expect("rectangular").nullspace();
    let mut z = vec![Rational::zero(); n];
    for v in &center {
        let c = int(rng.gen_range(-3..=3));
        for (zi, vi) in z.iter_mut().zip(v) {
            *zi += &c * vi;
        }
    }
    AlgElem::new(z)
}

// ---------------------------------------------------------------------------
// Trials and reports

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub trial: usize,
    pub algebra: String,
    pub operator: Vec<Vec<String>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HuntReport {
    pub mode: HuntMode,
    pub seed: u64,
    pub trials: usize,
    pub passes: usize,
    pub skipped: usize,
    pub violations: Vec<Violation>,
    /// Mode-specific tallies (instances checked, branches taken, ...).
    pub stats: BTreeMap<String, usize>,
}

enum Status {
    Pass,
    Skip,
    Violation(String),
}

struct Trial {
    status: Status,
    algebra: String,
    operator: Vec<Vec<String>>,
    stats: Vec<(&'static str, usize)>,
}

impl Trial {
    fn new(algebra: &FinDimAlgebra, operator: &QMat) -> Self {
        Trial { status: Status::Pass, algebra: algebra.name().to_string(), operator: operator.to_strings(), stats: vec![] }
    }

    fn fail(&mut self, detail: impl Into<String>) {
        if matches!(self.status, Status::Pass | Status::Skip) {
            self.status = Status::Violation(detail.into());
        }
    }

    fn count(&mut self, key: &'static str, k: usize) {
        self.stats.push((key, k));
    }
}

/// RNG for one trial: the master seed selects the key, the trial index the
/// stream.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub fn hunt(mode: HuntMode, seed: u64, trials: usize) -> HuntReport {
    let outcomes: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            run_trial(mode, &mut rng)
        })
        .collect();
    let mut report = HuntReport {
        mode,
        seed,
        trials,
        passes: 0,
        skipped: 0,
        violations: vec![],
        stats: BTreeMap::new(),
    };
    for (i, t) in outcomes.into_iter().enumerate() {
        match t.status {
            Status::Pass => report.passes += 1,
            Status::Skip => report.skipped += 1,
            Status::Violation(detail) => report.violations.push(Violation {
                trial: i,
                algebra: t.algebra,
                operator: t.operator,
                detail,
            }),
        }
        for (k, v) in t.stats {
            *report.stats.entry(k.to_string()).or_default() += v;
        }
    }
    report
}

fn run_trial(mode: HuntMode, rng: &mut ChaCha8Rng) -> Trial {
    match mode {
        HuntMode::CentralIdemKernel => central_idem_trial(rng),
        HuntMode::NoIdemInKerAndIm => no_idem_trial(rng),
        HuntMode::Roundtrip => roundtrip_trial(rng),
        HuntMode::Transfer => transfer_trial(rng),
        HuntMode::Surjectivity => surjectivity_trial(rng),
        HuntMode::Grading => grading_trial(rng),
    }
}

fn matrix_of(alg: &FinDimAlgebra, f: impl Fn(&AlgElem) -> Result<AlgElem>) -> Result<QMat> {
    operator_matrix(alg, &FnOp(f))
}

fn xi_matrix(alg: &FinDimAlgebra, d: &QMat) -> Result<QMat> {
    matrix_of(alg, |a| xi_map(alg, d, a))
}

fn lambda_matrix(alg: &FinDimAlgebra, delta: &QMat) -> Result<QMat> {
    matrix_of(alg, |a| lambda_map(alg, delta, a))
}

fn central_idem_trial(rng: &mut ChaCha8Rng) -> Trial {
    // Sums of copies of N3 have no nonzero idempotents to test.
    let ra = loop {
        let ra = random_algebra(rng, false);
        if ra.factors.iter().any(|f| *f != FactorKind::N3) {
            break ra;
        }
    };
    let d = random_derivation(rng, &ra);
    let mut t = Trial::new(&ra.alg, &d);
    let mut body = || -> Result<std::result::Result<usize, String>> {
        let dn = jordan_chevalley(&d)?.nilpotent;
        let delta = xi_matrix(&ra.alg, &dn)?;
        let idems = sample_idempotents(rng, &ra, true);
        for e in &idems {
            if !ra.alg.is_central(e) || !ra.alg.is_idempotent(e) {
                return Ok(Err(format!("sampler produced a non-central idempotent {e:?}")));
            }
            for (name, op) in [("derivation", &d), ("LN E-derivation", &delta)] {
                if !op.apply(e.coeffs()).iter().all(Zero::is_zero) {
                    return Ok(Err(format!("{name} does not annihilate central idempotent {e:?}")));
                }
            }
        }
        Ok(Ok(idems.len()))
    };
    match body() {
        Ok(Ok(0)) => t.status = Status::Skip,
        Ok(Ok(k)) => t.count("idempotents_checked", k),
        Ok(Err(s)) => t.fail(s),
        Err(e) => t.fail(e.to_string()),
    }
    t
}

fn no_idem_trial(rng: &mut ChaCha8Rng) -> Trial {
    let ra = random_algebra(rng, false);
    let n = ra.alg.dim();
    let flavour = rng.gen_range(0..3);
    let op = match flavour {
        0 => random_ln_derivation(rng, &ra),
        1 => random_ln_derivation(rng, &ra).and_then(|d| xi_matrix(&ra.alg, &d)),
        _ => Ok(QMat::identity(n).sub(&random_endomorphism(rng, &ra, EndoShape::Unipotent))),
    };
    let op = match op {
        Ok(op) => op,
        Err(e) => {
            let mut t = Trial::new(&ra.alg, &QMat::zeros(n, n));
            t.fail(e.to_string());
            return t;
        }
    };
    let mut t = Trial::new(&ra.alg, &op);
    if op.nilpotency_index().is_none() {
        t.fail("sampled operator is not locally nilpotent");
        return t;
    }
    let idems = sample_idempotents(rng, &ra, false);
    let image = op.image_basis();
    for e in &idems {
        if !ra.alg.is_idempotent(e) {
            t.fail(format!("sampler produced a non-idempotent {e:?}"));
            return t;
        }
        let in_kernel = op.apply(e.coeffs()).iter().all(Zero::is_zero);
        if in_kernel && in_span(n, &image, e.coeffs()) {
            t.fail(format!("nonzero idempotent {e:?} lies in kernel and image"));
            return t;
        }
    }
    t.count("idempotents_checked", idems.len());
    t.count(["ln_derivation", "ln_ederivation_xi", "ln_ederivation_unipotent"][flavour], 1);
    t
}

pub const MULTIPLICATIVE_PAIRS: usize = 50;

fn roundtrip_trial(rng: &mut ChaCha8Rng) -> Trial {
    let ra = random_algebra(rng, false);
    let alg = &ra.alg;
    let n = alg.dim();
    let d = match random_ln_derivation(rng, &ra) {
        Ok(d) => d,
        Err(e) => {
            let mut t = Trial::new(alg, &QMat::zeros(n, n));
            t.fail(e.to_string());
            return t;
        }
    };
    let mut t = Trial::new(alg, &d);
    let mut body = || -> Result<Option<String>> {
        if !classify_matrix(alg, &d)?.is_derivation {
            return Ok(Some("nilpotent part of a derivation is not a derivation".into()));
        }
        let xi = xi_matrix(alg, &d)?;
        if lambda_matrix(alg, &xi)? != d {
            return Ok(Some("ln(I - Xi(D)) != D".into()));
        }
        for _ in 0..MULTIPLICATIVE_PAIRS {
            let (a, b) = (random_elem(rng, n), random_elem(rng, n));
            let lhs = exp_map(alg, &d, &alg.mul(&a, &b)?)?;
            let rhs = alg.mul(&exp_map(alg, &d, &a)?, &exp_map(alg, &d, &b)?)?;
            if lhs != rhs {
                return Ok(Some("e^D is not multiplicative".into()));
            }
        }
        if !same_span(n, &d.nullspace(), &xi.nullspace()) {
            return Ok(Some("ker D != ker Xi(D)".into()));
        }
        if !same_span(n, &d.image_basis(), &xi.image_basis()) {
            return Ok(Some("im D != im Xi(D)".into()));
        }
        let phi = random_endomorphism(rng, &ra, EndoShape::Unipotent);
        let delta = QMat::identity(n).sub(&phi);
        if !classify_matrix(alg, &delta)?.is_ederivation {
            return Ok(Some("I - unipotent endomorphism is not an E-derivation".into()));
        }
        let log = lambda_matrix(alg, &delta)?;
        if !classify_matrix(alg, &log)?.is_derivation {
            return Ok(Some("Lambda(delta) is not a derivation".into()));
        }
        if xi_matrix(alg, &log)? != delta {
            return Ok(Some("Xi(Lambda(delta)) != delta".into()));
        }
        Ok(None)
    };
    match body() {
        Ok(None) => {
            t.count("ln_derivations", 1);
            t.count("nonzero_ln_derivations", usize::from(!d.is_zero()));
            t.count("ln_ederivations", 1);
            t.count("multiplicative_pairs", MULTIPLICATIVE_PAIRS);
        }
        Ok(Some(s)) => t.fail(s),
        Err(e) => t.fail(e.to_string()),
    }
    t
}

fn transfer_trial(rng: &mut ChaCha8Rng) -> Trial {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    let inner = rng.gen_range(1..=rows.min(cols));
    let rand_mat = |rng: &mut ChaCha8Rng, r: usize, c: usize| {
        QMat::new(r, c, (0..r * c).map(|_| int(rng.gen_range(-3..=3))).collect()).expect("shape")
    };
    let a = rand_mat(rng, rows, inner).mul(&rand_mat(rng, inner, cols));
    let y = if rng.gen_bool(0.5) {
        a.apply(&(0..cols).map(|_| int(rng.gen_range(-3..=3))).collect::<Vec<_>>())
    } else {
        (0..rows).map(|_| int(rng.gen_range(-3..=3))).collect()
    };
    let mut t = Trial { status: Status::Pass, algebra: "-".into(), operator: a.to_strings(), stats: vec![] };
    match solvability_transfer_check(&a, &y) {
        Ok(true) => {
            let solvable = a.solve(&y).ok().flatten().is_some();
            t.count(if solvable { "solvable" } else { "unsolvable" }, 1);
        }
        Ok(false) => t.fail("solvability differs between Q and Q(sqrt 2)"),
        Err(e) => t.fail(e.to_string()),
    }
    t
}

fn surjectivity_trial(rng: &mut ChaCha8Rng) -> Trial {
    let ra = random_algebra(rng, true);
    let alg = &ra.alg;
    let n = alg.dim();
    let choice = rng.gen_range(0..4);
    let (delta, phi) = match choice {
        0 => (random_derivation(rng, &ra), None),
        1 => {
            let phi = random_endomorphism(rng, &ra, EndoShape::Nilpotent);
            (QMat::identity(n).sub(&phi), Some(phi))
        }
        _ => {
            let phi = random_endomorphism(rng, &ra, EndoShape::General);
            (QMat::identity(n).sub(&phi), Some(phi))
        }
    };
    let mut t = Trial::new(alg, &delta);
    if let Some(phi) = &phi {
        match unit_orbit(alg, phi) {
            Ok(o) => {
                t.count("unit_orbits", 1);
                t.count("orbit_steps_total", o.d);
            }
            Err(e) => {
                t.fail(format!("unit orbit: {e}"));
                return t;
            }
        }
    }
    match surjectivity_findim(alg, &LinOp::matrix("delta", delta.clone())) {
        Ok(Surjectivity::NotInImage) => t.count("not_in_image", 1),
        Ok(Surjectivity::Surjective { .. }) => t.count("surjective", 1),
        Err(e) if e.class() == ErrorClass::Internal => t.fail(e.to_string()),
        Err(e) => t.fail(format!("unexpected error: {e}")),
    }
    t
}

fn grading_trial(rng: &mut ChaCha8Rng) -> Trial {
    let ra = random_algebra(rng, false);
    let n = ra.alg.dim();
    let (op, kind) = if rng.gen_bool(0.5) {
        (random_derivation(rng, &ra), ImageKind::Derivation)
    } else {
        let phi = random_endomorphism(rng, &ra, EndoShape::General);
        (QMat::identity(n).sub(&phi), ImageKind::Ederivation)
    };
    let mut t = Trial::new(&ra.alg, &op);
    match image_decomposition(&ra.alg, &op, kind) {
        Ok(dec) => {
            t.count("split_instances", 1);
            t.count("blocks", dec.grading.blocks.len());
            t.count("reciprocal_pairs", dec.grading.reciprocal_pairs.len());
        }
        Err(Error::NotSplit(_)) => t.status = Status::Skip,
        Err(e) => t.fail(e.to_string()),
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endomorphisms_are_multiplicative() {
        for i in 0..40 {
            let mut rng = trial_rng(99, i);
            let ra = random_algebra(&mut rng, i % 2 == 0);
            for shape in [EndoShape::General, EndoShape::Unipotent, EndoShape::Nilpotent] {
                let phi = random_endomorphism(&mut rng, &ra, shape);
                assert!(classify_matrix(&ra.alg, &phi).unwrap().is_endomorphism, "{shape:?} on {}", ra.alg.name());
                let n = ra.alg.dim();
                match shape {
                    EndoShape::Unipotent => assert!(phi.sub(&QMat::identity(n)).nilpotency_index().is_some()),
                    EndoShape::Nilpotent => assert!(phi.nilpotency_index().is_some()),
                    EndoShape::General => {}
                }
            }
        }
    }

    #[test]
    fn sampled_idempotents_are_idempotent() {
        for i in 0..40 {
            let mut rng = trial_rng(5, i);
            let ra = random_algebra(&mut rng, false);
            for central in [true, false] {
                for e in sample_idempotents(&mut rng, &ra, central) {
                    assert!(ra.alg.is_idempotent(&e));
                    if central {
                        assert!(ra.alg.is_central(&e));
                    }
                }
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        for mode in ALL_MODES {
            let a = hunt(mode, 11, 12);
            let b = hunt(mode, 11, 12);
            assert_eq!(a, b);
            assert!(a.violations.is_empty(), "{mode}: {:?}", a.violations);
        }
        assert_ne!(hunt(HuntMode::Transfer, 1, 10), hunt(HuntMode::Transfer, 2, 10));
        assert_eq!("roundtrip".parse::<HuntMode>().unwrap(), HuntMode::Roundtrip);
        assert!("nope".parse::<HuntMode>().is_err());
    }
}
