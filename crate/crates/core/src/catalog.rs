//! Registry of worked examples with their closed-form curvature.
//!
//! Every entry is a two-dimensional invariant complex structure, stored with
//! exact rational-complex structure constants. Metrics come from
//! [`SurfaceMetricParams`] except for `hopf`, whose round metric
//! (r²/2)·Identity has a single parameter.
//!
//! Expected values are closed forms in (r, s, u) and, for `snow-s5`, the
//! structure parameter ℓ. Rows marked [`Status::ConventionSensitive`] are
//! reported but do not affect the verdict: their published sign depends on an
//! unstated basis convention (raw Hopf curvature components, Hopf S^(3)).
//!
//! The Podestà C-manifolds are homogeneous spaces without an explicit
//! coframe; they are listed in [`OUT_OF_SCOPE`] and not computed.

use crate::error::{Error, Result};
use crate::forms::{CoframeAlgebra, InvariantForm};
use crate::invariant::{
    chern_curvature, lee_form, CurvatureTensor, HermitianMetric, RicciReport, ScanPoint,
    SurfaceMetricParams,
};
use crate::invariant::scan::Certificate;
use crate::linalg::Matrix;
use crate::scalar::{cq, format_ratio, Scalar, C64, CQ};
use crate::structure::{MetricSpec, StructureFile};
use crate::tolerance;

const P1: usize = 0;
const P2: usize = 1;
const Q1: usize = 2;
const Q2: usize = 3;

pub const ENTRY_NAMES: [&str; 9] = [
    "flat-torus",
    "hopf",
    "inoue-sm",
    "inoue-spm",
    "kodaira-primary",
    "kodaira-secondary",
    "snow-s5",
    "ovando-r2r2",
    "ovando-r4",
];

/// Examples deliberately not computed, with the reason.
pub const OUT_OF_SCOPE: &[(&str, &str)] = &[(
    "podesta",
    "C-manifolds: torus bundles over products of Hermitian symmetric spaces; no explicit invariant coframe is available",
)];

pub fn list_entries() -> Vec<&'static str> {
    ENTRY_NAMES.to_vec()
}

/// Metric parameters plus the structure parameter ℓ (used by `snow-s5` only).
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub r: CQ,
    pub s: CQ,
    pub u: CQ,
    pub ell: CQ,
}

impl Params {
    pub fn new(r: CQ, s: CQ, u: CQ) -> Self {
        Params { r, s, u, ell: CQ::one() }
    }

    pub fn with_ell(mut self, ell: CQ) -> Self {
        self.ell = ell;
        self
    }

    pub fn surface(&self) -> SurfaceMetricParams<CQ> {
        SurfaceMetricParams::new(self.r.clone(), self.s.clone(), self.u.clone())
    }

    pub fn render(&self) -> String {
        format!("r={} s={} u={} ell={}", format_ratio(&self.r.re), format_ratio(&self.s.re), self.u.render(), format_ratio(&self.ell.re))
    }
}

fn q(num: i64, den: i64) -> CQ {
    CQ::from_ratio(num, den)
}

fn p(r: CQ, s: CQ, u: CQ) -> Params {
    Params::new(r, s, u)
}

/// The five rational test points used by default for surface families.
pub fn standard_points() -> Vec<Params> {
    vec![
        p(q(1, 1), q(1, 1), CQ::zero()),
        p(q(2, 1), q(1, 1), q(1, 2)),
        p(q(1, 1), q(3, 1), cq((1, 1), (1, 1))),
        p(q(1, 2), q(2, 1), cq((0, 1), (1, 3))),
        p(q(3, 2), q(2, 3), cq((1, 4), (-1, 5))),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// h from (r, s, u).
    Surface,
    /// h = (r²/2)·Identity; s = r and u = 0 are required.
    Round,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Asserted,
    /// Reported only; the published value depends on a sign convention.
    ConventionSensitive,
}

/// What to read off a computation.
#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Ric1,
    Ric2,
    Ric3,
    /// Conjugate transpose of Ric^(3), i.e. h^{il̄}Θ_{il̄kj̄} read as a (k, j̄) tensor.
    Ric3Adjoint,
    SChern,
    SThird,
    /// Strong kind-2 Einstein factor S^Ch/n.
    Lambda2,
    /// Ric^(2) − (S^Ch/n)·h.
    Einstein2Defect,
    /// All components Θ_{ij̄kl̄} as an n²×n² matrix.
    Curvature,
    /// Θ_{ij̄kl̄} (0-based indices).
    Theta([usize; 4]),
    /// |Θ_{ij̄kl̄}|².
    ThetaAbs2([usize; 4]),
    /// factor·(Ric^(2) − λh)_{ij̄} with λ = S^Ch/n; used to compare against
    /// the unnormalized coefficients of the non-existence arguments.
    Einstein2Entry { i: usize, j: usize, label: &'static str, factor: CQ },
    /// Coefficients of the Lee form on φ¹, …, φⁿ, φ̄¹, …, φ̄ⁿ.
    Lee,
    /// Whether the metric is locally conformally Kähler.
    Lck,
}

impl Quantity {
    pub fn name(&self) -> String {
        let idx = |t: &[usize; 4]| t.iter().map(|i| (i + 1).to_string()).collect::<String>();
        match self {
            Quantity::Ric1 => "ric1".into(),
            Quantity::Ric2 => "ric2".into(),
            Quantity::Ric3 => "ric3".into(),
            Quantity::Ric3Adjoint => "ric3_adjoint".into(),
            Quantity::SChern => "s_chern".into(),
            Quantity::SThird => "s_third".into(),
            Quantity::Lambda2 => "lambda2".into(),
            Quantity::Einstein2Defect => "einstein2_defect".into(),
            Quantity::Curvature => "curvature".into(),
            Quantity::Theta(t) => format!("theta_{}", idx(t)),
            Quantity::ThetaAbs2(t) => format!("theta_{}_abs2", idx(t)),
            Quantity::Einstein2Entry { label, .. } => (*label).into(),
            Quantity::Lee => "lee".into(),
            Quantity::Lck => "lck".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value<S> {
    Scalar(S),
    Matrix(Matrix<S>),
    Flag(bool),
}

impl<S: Scalar> Value<S> {
    pub fn render(&self) -> String {
        match self {
            Value::Scalar(v) => v.render(),
            Value::Flag(b) => b.to_string(),
            Value::Matrix(m) => {
                let rows: Vec<String> =
                    m.iter().map(|row| row.iter().map(Scalar::render).collect::<Vec<_>>().join(", ")).collect();
                format!("[{}]", rows.join("; "))
            }
        }
    }

    fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Value<T> {
        match self {
            Value::Scalar(v) => Value::Scalar(f(v)),
            Value::Matrix(m) => Value::Matrix(m.iter().map(|row| row.iter().map(&f).collect()).collect()),
            Value::Flag(b) => Value::Flag(*b),
        }
    }
}

fn values_match<S: Scalar>(a: &Value<S>, b: &Value<S>) -> bool {
    match (a, b) {
        (Value::Flag(x), Value::Flag(y)) => x == y,
        (Value::Scalar(x), Value::Scalar(y)) => {
            S::EXACT && x == y || !S::EXACT && close(&x.to_c64(), &y.to_c64(), x.norm().max(y.norm()))
        }
        (Value::Matrix(x), Value::Matrix(y)) => {
            if x.len() != y.len() || x.iter().zip(y).any(|(r, t)| r.len() != t.len()) {
                return false;
            }
            if S::EXACT {
                return x == y;
            }
            let scale = x.iter().chain(y).flatten().map(Scalar::norm).fold(0.0, f64::max);
            x.iter().flatten().zip(y.iter().flatten()).all(|(a, b)| close(&a.to_c64(), &b.to_c64(), scale))
        }
        _ => false,
    }
}

/// Float agreement: relative to the largest magnitude in the compared value,
/// with an absolute floor for values that vanish.
fn close(a: &C64, b: &C64, scale: f64) -> bool {
    (a - b).norm() <= tolerance::CATALOG_REL * scale + CATALOG_ABS
}

/// Absolute floor for float catalog comparisons of vanishing quantities.
pub const CATALOG_ABS: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub quantity: Quantity,
    pub value: Value<CQ>,
    pub provenance: &'static str,
    pub status: Status,
}

fn asserted(quantity: Quantity, value: Value<CQ>, provenance: &'static str) -> Expected {
    Expected { quantity, value, provenance, status: Status::Asserted }
}

fn scalar(v: CQ) -> Value<CQ> {
    Value::Scalar(v)
}

fn mat(rows: [[CQ; 2]; 2]) -> Value<CQ> {
    Value::Matrix(rows.into_iter().map(|r| r.into_iter().collect()).collect())
}

fn diag(a: CQ, b: CQ) -> Value<CQ> {
    mat([[a, CQ::zero()], [CQ::zero(), b]])
}

fn zero2() -> Value<CQ> {
    diag(CQ::zero(), CQ::zero())
}

/// Shorthands for closed forms.
struct Sym {
    r2: CQ,
    s2: CQ,
    u: CQ,
    ubar: CQ,
    au2: CQ,
    d: CQ,
    d2: CQ,
    ell: CQ,
}

impl Sym {
    fn new(p: &Params) -> Self {
        let r2 = p.r.clone() * p.r.clone();
        let s2 = p.s.clone() * p.s.clone();
        let au2 = p.u.clone() * p.u.conj();
        let d = r2.clone() * s2.clone() - au2.clone();
        Sym { d2: d.clone() * d.clone(), r2, s2, u: p.u.clone(), ubar: p.u.conj(), au2, d, ell: p.ell.clone() }
    }
}

fn surface_h(p: &Params) -> Matrix<CQ> {
    p.surface().matrix()
}

fn scale_matrix(m: &Matrix<CQ>, c: &CQ) -> Value<CQ> {
    Value::Matrix(m.iter().map(|row| row.iter().map(|v| v.clone() * c.clone()).collect()).collect())
}

fn form(terms: &[(usize, usize, CQ)]) -> InvariantForm<CQ> {
    let mut f = InvariantForm::zero(2);
    for (a, b, c) in terms {
        f = f.add_unchecked(&InvariantForm::from_product(2, &[*a, *b], c.clone()));
    }
    f
}

fn algebra(d1: &[(usize, usize, CQ)], d2: &[(usize, usize, CQ)]) -> CoframeAlgebra<CQ> {
    CoframeAlgebra::new(2, vec![form(d1), form(d2)]).expect("catalog algebras are well formed")
}

fn i_q(num: i64, den: i64) -> CQ {
    cq((0, 1), (num, den))
}

pub type CertificateEval = fn(&ScanPoint, f64) -> Certificate;

/// One catalogued example.
pub struct ExampleEntry {
    pub name: &'static str,
    pub title: &'static str,
    pub family: Family,
    build: fn(&Params) -> CoframeAlgebra<CQ>,
    expectations: fn(&Params) -> Vec<Expected>,
    defaults: fn() -> Vec<Params>,
    /// Sign certificate of the non-existence argument for kind-2 Einstein metrics.
    pub certificate: Option<CertificateEval>,
}

impl std::fmt::Debug for ExampleEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExampleEntry").field("name", &self.name).finish()
    }
}

impl ExampleEntry {
    pub fn algebra(&self, params: &Params) -> CoframeAlgebra<CQ> {
        (self.build)(params)
    }

    pub fn default_params(&self) -> Vec<Params> {
        (self.defaults)()
    }

    /// Parameters with unspecified values filled from the entry's conventions:
    /// s defaults to r for `hopf` and to 1 otherwise, u to 0 and ℓ to 1.
    pub fn params(&self, r: Option<CQ>, s: Option<CQ>, u: Option<CQ>, ell: Option<CQ>) -> Params {
        let r = r.unwrap_or_else(CQ::one);
        let s = s.unwrap_or_else(|| if self.family == Family::Round { r.clone() } else { CQ::one() });
        Params::new(r, s, u.unwrap_or_else(CQ::zero)).with_ell(ell.unwrap_or_else(CQ::one))
    }

    pub fn metric(&self, params: &Params) -> Result<HermitianMetric<CQ>> {
        if self.family == Family::Round && (params.s != params.r || !params.u.is_exact_zero()) {
            return Err(Error::Inadmissible(format!("{} uses the round metric: s must equal r and u must be 0", self.name)));
        }
        params.surface().metric()
    }

    pub fn expectations(&self, params: &Params) -> Result<Vec<Expected>> {
        self.metric(params)?;
        Ok((self.expectations)(params))
    }

    /// Entry rendered in the structure-file format, with its metric line.
    pub fn export(&self, params: &Params) -> Result<String> {
        self.metric(params)?;
        Ok(StructureFile::new(self.algebra(params), Some(MetricSpec::Surface(params.surface()))).print())
    }
}

pub fn entry(name: &str) -> Result<&'static ExampleEntry> {
    ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

pub fn entries() -> &'static [ExampleEntry] {
    &ENTRIES
}

/// Closed-form value of one quantity. Matrix quantities also answer
/// component queries such as `ric2_12` (1-based indices).
pub fn expected(name: &str, quantity: &str, params: &Params) -> Result<Value<CQ>> {
    let e = entry(name)?;
    let unknown = || Error::UnknownQuantity { entry: name.into(), quantity: quantity.into() };
    let all = e.expectations(params)?;
    if let Some(x) = all.iter().find(|x| x.quantity.name() == quantity) {
        return Ok(x.value.clone());
    }
    let (base, idx) = quantity.rsplit_once('_').ok_or_else(unknown)?;
    let digits: Vec<usize> = idx.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(unknown)?;
    let [i, j] = digits[..] else { return Err(unknown()) };
    match all.into_iter().find(|x| x.quantity.name() == base).map(|x| x.value) {
        Some(Value::Matrix(m)) if (1..=m.len()).contains(&i) && (1..=m[i - 1].len()).contains(&j) => {
            Ok(Value::Scalar(m[i - 1][j - 1].clone()))
        }
        _ => Err(unknown()),
    }
}

static ENTRIES: [ExampleEntry; 9] = [
    ExampleEntry {
        name: "flat-torus",
        title: "complex torus (abelian)",
        family: Family::Surface,
        build: |_| CoframeAlgebra::abelian(2),
        expectations: |_| {
            let zero4 = Value::Matrix(vec![vec![CQ::zero(); 4]; 4]);
            vec![
                asserted(Quantity::Curvature, zero4, "flat: dφ = 0"),
                asserted(Quantity::Ric1, zero2(), "flat"),
                asserted(Quantity::Ric2, zero2(), "flat"),
                asserted(Quantity::Ric3, zero2(), "flat"),
                asserted(Quantity::SChern, scalar(CQ::zero()), "flat"),
                asserted(Quantity::SThird, scalar(CQ::zero()), "flat"),
            ]
        },
        defaults: standard_points,
        certificate: None,
    },
    ExampleEntry {
        name: "hopf",
        title: "Hopf surface S¹×SU(2), round metric",
        family: Family::Round,
        build: |_| {
            algebra(&[(P1, P2, CQ::i()), (P1, Q2, CQ::i())], &[(P1, Q1, -CQ::i())])
        },
        expectations: |p| {
            let sym = Sym::new(p);
            let half_r2 = sym.r2.clone() * q(1, 2);
            let four_over = q(4, 1) / sym.r2.clone();
            vec![
                asserted(Quantity::Ric1, diag(q(2, 1), CQ::zero()), "Hopf: Ric1 = 2√−1 φ¹∧φ̄¹"),
                asserted(Quantity::Ric2, scale_matrix(&surface_h(p), &(q(2, 1) / sym.r2.clone())), "Hopf: Ric2 = (2/r²)ω"),
                asserted(Quantity::SChern, scalar(four_over.clone()), "Hopf: S^Ch = 4/r²"),
                asserted(Quantity::Lambda2, scalar(q(2, 1) / sym.r2.clone()), "Hopf: Einstein factor 2/r²"),
                asserted(Quantity::Einstein2Defect, zero2(), "Hopf: strong (2)-Chern-Einstein"),
                asserted(Quantity::Ric3, diag(CQ::one(), CQ::zero()), "Hopf: Ric3_11 = 1 only"),
                asserted(Quantity::Theta([0, 0, 0, 0]), scalar(half_r2.clone()), "Hopf: Θ_1111 = r²/2"),
                asserted(
                    Quantity::ThetaAbs2([0, 0, 1, 1]),
                    scalar(half_r2.clone() * half_r2.clone()),
                    "Hopf: |Θ_1122| = r²/2",
                ),
                Expected {
                    quantity: Quantity::Theta([0, 0, 1, 1]),
                    value: scalar(-half_r2),
                    provenance: "Hopf: published Θ_1122 = −r²/2 (sign convention-dependent; the Ricci anchors force +r²/2)",
                    status: Status::ConventionSensitive,
                },
                Expected {
                    quantity: Quantity::SThird,
                    value: scalar(four_over),
                    provenance: "Hopf: published S^(3) = S^Ch (Ric3_11 = 1 contracts to 2/r²)",
                    status: Status::ConventionSensitive,
                },
            ]
        },
        defaults: || {
            [q(1, 1), q(2, 1), q(1, 3), q(3, 2), q(5, 1)]
                .into_iter()
                .map(|r| Params::new(r.clone(), r, CQ::zero()))
                .collect()
        },
        certificate: None,
    },
    ExampleEntry {
        name: "inoue-sm",
        title: "Inoue surface S_M",
        family: Family::Surface,
        build: |_| algebra(&[(P1, P2, i_q(1, 4)), (P1, Q2, i_q(-1, 4))], &[(P2, Q2, i_q(1, 2))]),
        expectations: |p| {
            let y = Sym::new(p);
            let lambda = -y.r2.clone() / (q(4, 1) * y.d.clone());
            let r4 = y.r2.clone() * y.r2.clone();
            let cert = q(8, 1) * lambda * y.r2.clone() * y.d2.clone()
                - r4.clone() * (q(4, 1) * y.r2.clone() * y.s2.clone() + q(5, 1) * y.au2.clone());
            vec![
                asserted(Quantity::Ric1, diag(CQ::zero(), q(-1, 4)), "Inoue S_M: Ric1 = −(√−1/4) φ²∧φ̄²"),
                asserted(Quantity::SChern, scalar(-y.r2.clone() / (q(2, 1) * y.d.clone())), "Inoue S_M: S^Ch = −r²/(2D)"),
                asserted(
                    Quantity::SThird,
                    scalar(
                        -y.r2.clone() * (q(8, 1) * y.r2.clone() * y.s2.clone() + y.au2.clone())
                            / (q(8, 1) * y.d2.clone()),
                    ),
                    "Inoue S_M: S^(3) = −r²(8r²s²+|u|²)/(8D²)",
                ),
                asserted(
                    Quantity::Einstein2Entry { i: 0, j: 0, label: "einstein2_11_certificate", factor: -q(16, 1) * y.d2 },
                    scalar(cert),
                    "Inoue S_M: φ¹∧φ̄¹ coefficient 8λr²D² − r⁴(4r²s²+5|u|²)",
                ),
            ]
        },
        defaults: standard_points,
        certificate: Some(|pt, lambda| {
            let (r2, s2, au2, d) = (pt.r * pt.r, pt.s * pt.s, pt.u.norm_sqr(), pt.discriminant());
            let value = 8.0 * lambda * r2 * d * d - r2 * r2 * (4.0 * r2 * s2 + 5.0 * au2);
            Certificate { value, holds: value < 0.0 }
        }),
    },
    ExampleEntry {
        name: "inoue-spm",
        title: "Inoue surface S±",
        family: Family::Surface,
        build: |_| {
            algebra(
                &[(P1, P2, i_q(-1, 2)), (P2, Q1, i_q(-1, 2)), (P2, Q2, i_q(1, 2))],
                &[(P2, Q2, i_q(-1, 2))],
            )
        },
        expectations: |p| {
            let y = Sym::new(p);
            let lambda = -y.r2.clone() / (q(2, 1) * y.d.clone());
            let r4 = y.r2.clone() * y.r2.clone();
            let re_u2 = (y.u.clone() * y.u.clone()).re();
            let cert = q(2, 1) * lambda * y.r2.clone() * y.d2.clone()
                - r4.clone() * (r4 + y.r2.clone() * y.s2.clone() + y.au2.clone() + q(2, 1) * re_u2);
            vec![
                asserted(Quantity::Ric1, diag(CQ::zero(), q(-1, 2)), "Inoue S±: Ric1 = −(√−1/2) φ²∧φ̄²"),
                asserted(Quantity::SChern, scalar(-y.r2.clone() / y.d.clone()), "Inoue S±: S^Ch = −r²/D"),
                asserted(
                    Quantity::Einstein2Entry { i: 0, j: 0, label: "einstein2_11_certificate", factor: -q(4, 1) * y.d2 },
                    scalar(cert),
                    "Inoue S±: φ¹∧φ̄¹ coefficient 2λr²D² − r⁴(r⁴+r²s²+|u|²+2Re u²)",
                ),
            ]
        },
        defaults: standard_points,
        certificate: Some(|pt, lambda| {
            let (r2, s2, au2, d) = (pt.r * pt.r, pt.s * pt.s, pt.u.norm_sqr(), pt.discriminant());
            let re_u2 = (pt.u * pt.u).re;
            let value = 2.0 * lambda * r2 * d * d - r2 * r2 * (r2 * r2 + r2 * s2 + au2 + 2.0 * re_u2);
            let lemma = r2 * s2 + au2 + 2.0 * re_u2 >= d * (1.0 - 1e-12) && d > 0.0;
            Certificate { value, holds: value < 0.0 && lemma }
        }),
    },
    ExampleEntry {
        name: "kodaira-primary",
        title: "primary Kodaira surface",
        family: Family::Surface,
        build: |_| algebra(&[], &[(P1, Q1, i_q(1, 2))]),
        expectations: |p| {
            let y = Sym::new(p);
            let s4 = y.s2.clone() * y.s2.clone();
            let s6 = s4.clone() * y.s2.clone();
            // λ = S^Ch/2 = 0
            let c12 = y.u.clone() * (CQ::zero() - s6.clone());
            let c11 = s4 * (y.r2.clone() * y.s2.clone() - q(2, 1) * y.au2.clone());
            vec![
                asserted(Quantity::Ric1, zero2(), "primary Kodaira: Ric1 = 0"),
                asserted(Quantity::SChern, scalar(CQ::zero()), "primary Kodaira: S^Ch = 0"),
                asserted(Quantity::Lambda2, scalar(CQ::zero()), "primary Kodaira: λ = S^Ch/2 = 0"),
                asserted(Quantity::SThird, scalar(-s6 / (q(2, 1) * y.d2.clone())), "primary Kodaira: S^(3) = −s⁶/(2D²)"),
                asserted(
                    Quantity::Einstein2Entry {
                        i: 0,
                        j: 1,
                        label: "einstein2_12_certificate",
                        factor: -CQ::i() * q(4, 1) * y.d2.clone(),
                    },
                    scalar(c12),
                    "primary Kodaira: φ¹∧φ̄² coefficient u(2λD² − s⁶)",
                ),
                asserted(
                    Quantity::Einstein2Entry { i: 0, j: 0, label: "einstein2_11_certificate", factor: -q(4, 1) * y.d2 },
                    scalar(c11),
                    "primary Kodaira: φ¹∧φ̄¹ coefficient s⁴(r²s² − 2|u|²)",
                ),
            ]
        },
        defaults: standard_points,
        certificate: Some(|pt, lambda| {
            let (s2, d) = (pt.s * pt.s, pt.discriminant());
            let s6 = s2 * s2 * s2;
            let value = if pt.u.norm() > 0.0 {
                (pt.u * (2.0 * lambda * d * d - s6)).norm()
            } else {
                s2 * s2 * (pt.r * pt.r * s2 - 2.0 * pt.u.norm_sqr())
            };
            Certificate { value, holds: value > 0.0 }
        }),
    },
    ExampleEntry {
        name: "kodaira-secondary",
        title: "secondary Kodaira surface",
        family: Family::Surface,
        build: |_| algebra(&[(P1, P2, q(-1, 2)), (P1, Q2, q(1, 2))], &[(P1, Q1, i_q(1, 2))]),
        expectations: |p| {
            let y = Sym::new(p);
            let r4 = y.r2.clone() * y.r2.clone();
            let s4 = y.s2.clone() * y.s2.clone();
            let c12 = -y.u.clone() * y.s2.clone() * (CQ::i() * y.d.clone() + r4 + s4);
            let mut out = vec![
                asserted(Quantity::Ric1, zero2(), "secondary Kodaira: Ric1 = 0"),
                asserted(Quantity::SChern, scalar(CQ::zero()), "secondary Kodaira: S^Ch = 0"),
                asserted(
                    Quantity::Einstein2Entry {
                        i: 0,
                        j: 1,
                        label: "einstein2_12_certificate",
                        factor: -CQ::i() * q(4, 1) * y.d2,
                    },
                    scalar(c12),
                    "secondary Kodaira: φ¹∧φ̄² coefficient −us²(√−1D + r⁴ + s⁴)",
                ),
            ];
            if y.u.is_exact_zero() {
                out.push(asserted(
                    Quantity::Einstein2Entry { i: 0, j: 0, label: "einstein2_11_at_u0", factor: -CQ::one() },
                    scalar(y.s2 / (q(4, 1) * y.r2)),
                    "secondary Kodaira, u = 0: φ¹∧φ̄¹ coefficient s²/(4r²)",
                ));
            }
            out
        },
        defaults: standard_points,
        certificate: Some(|pt, _lambda| {
            let (r2, s2, d) = (pt.r * pt.r, pt.s * pt.s, pt.discriminant());
            let value = if pt.u.norm() > 0.0 {
                (pt.u * s2 * C64::new(r2 * r2 + s2 * s2, d)).norm()
            } else {
                s2 / (4.0 * r2)
            };
            Certificate { value, holds: value > 0.0 }
        }),
    },
    ExampleEntry {
        name: "snow-s5",
        title: "Snow solvable group S5 with parameter ℓ",
        family: Family::Surface,
        build: |p| {
            let half = p.ell.clone() * q(1, 2);
            algebra(&[], &[(P1, P2, half.clone()), (P2, Q1, -half)])
        },
        expectations: |p| {
            let y = Sym::new(p);
            let l2 = y.ell.clone() * y.ell.clone();
            let s4 = y.s2.clone() * y.s2.clone();
            let den = q(4, 1) * y.d2.clone();
            let r11 = l2.clone() * y.r2.clone() * y.s2.clone() * y.au2.clone() / den.clone();
            let r12 = -CQ::i() * l2.clone() * y.r2.clone() * s4.clone() * y.u.clone() / den.clone();
            let r21 = CQ::i() * l2.clone() * y.r2.clone() * s4.clone() * y.ubar.clone() / den.clone();
            let r22 = l2.clone() * s4 * y.au2.clone() / den;
            let ric3_12 = -CQ::i() * l2.clone() * y.s2.clone() * y.u.clone() / (q(4, 1) * y.d.clone());
            let mut out = vec![
                asserted(Quantity::Ric1, zero2(), "Snow S5: Ric1 = 0"),
                asserted(Quantity::SChern, scalar(CQ::zero()), "Snow S5: S^Ch = 0"),
                asserted(Quantity::Ric2, mat([[r11, r12], [r21, r22]]), "Snow S5: the three displayed Ric2 components"),
                asserted(
                    Quantity::Ric3Adjoint,
                    mat([[CQ::zero(), ric3_12.clone()], [CQ::zero(), CQ::zero()]]),
                    "Snow S5: displayed Ric3_12 = −√−1ℓ²s²u/(4D) is the only non-zero component",
                ),
                Expected {
                    quantity: Quantity::Ric3,
                    value: mat([[CQ::zero(), ric3_12], [CQ::zero(), CQ::zero()]]),
                    provenance: "Snow S5: displayed Ric3_12 read in the h^{il̄}Θ_{ij̄kl̄} index order (lands in the 21 slot, conjugated)",
                    status: Status::ConventionSensitive,
                },
                asserted(
                    Quantity::SThird,
                    scalar(-l2 * y.s2.clone() * y.au2.clone() / (q(2, 1) * y.d2.clone())),
                    "Snow S5: S^(3) = −ℓ²s²|u|²/(2D²)",
                ),
            ];
            if y.u.is_exact_zero() {
                let half = y.ell.clone() * q(1, 2);
                out.push(asserted(
                    Quantity::Lee,
                    Value::Matrix(vec![vec![y.ell.clone(), CQ::zero(), y.ell.clone(), CQ::zero()]]),
                    "Snow S5, u = 0: dω = ϑ∧ω solved by hand from the structure equations, ϑ = ℓ(φ¹ + φ̄¹)",
                ));
                out.push(Expected {
                    quantity: Quantity::Lee,
                    value: Value::Matrix(vec![vec![half.clone(), CQ::zero(), half, CQ::zero()]]),
                    provenance: "Snow S5, u = 0: published Lee form (ℓ/2)(φ¹ + φ̄¹), half the value forced by dω = ϑ∧ω",
                    status: Status::ConventionSensitive,
                });
                out.push(asserted(Quantity::Lck, Value::Flag(true), "Snow S5: LCK iff u = 0"));
                out.push(asserted(Quantity::Curvature, Value::Matrix(vec![vec![CQ::zero(); 4]; 4]), "Snow S5, u = 0: Chern-flat"));
            } else {
                out.push(asserted(Quantity::Lck, Value::Flag(false), "Snow S5: LCK iff u = 0"));
            }
            out
        },
        defaults: || {
            let ells = [q(1, 1), q(2, 1), q(1, 2), q(3, 1), q(-1, 1)];
            standard_points().into_iter().zip(ells).map(|(p, l)| p.with_ell(l)).collect()
        },
        certificate: None,
    },
    ExampleEntry {
        name: "ovando-r2r2",
        title: "Ovando r2r2 (Kähler for diagonal metrics)",
        family: Family::Surface,
        build: |_| algebra(&[(P1, Q1, q(-1, 2))], &[(P2, Q2, q(-1, 2))]),
        expectations: |p| {
            let y = Sym::new(p);
            let mut out = vec![asserted(Quantity::Ric1, diag(q(-1, 2), q(-1, 2)), "Ovando r2r2: Ric1 = −(√−1/2)(φ¹∧φ̄¹ + φ²∧φ̄²)")];
            if y.u.is_exact_zero() {
                out.push(asserted(Quantity::Ric2, diag(q(-1, 2), q(-1, 2)), "Ovando r2r2, u = 0: Kähler, Ric2 = Ric1"));
                if y.r2 == CQ::one() && y.s2 == CQ::one() {
                    out.push(asserted(
                        Quantity::Ric2,
                        scale_matrix(&surface_h(p), &q(-1, 1)),
                        "Ovando r2r2, (1,1,0): Ric2 = Ric1 = −ω",
                    ));
                    out.push(asserted(Quantity::Lambda2, scalar(q(-1, 1)), "Ovando r2r2, (1,1,0): Einstein factor −1"));
                    out.push(asserted(Quantity::Einstein2Defect, zero2(), "Ovando r2r2, (1,1,0): Kähler-Einstein"));
                }
            }
            out
        },
        defaults: || {
            vec![
                p(q(1, 1), q(1, 1), CQ::zero()),
                p(q(2, 1), q(2, 1), CQ::zero()),
                p(q(1, 2), q(1, 2), CQ::zero()),
                p(q(1, 1), q(3, 1), CQ::zero()),
                p(q(3, 2), q(2, 3), CQ::zero()),
                p(q(2, 1), q(1, 1), q(1, 2)),
            ]
        },
        certificate: None,
    },
    ExampleEntry {
        name: "ovando-r4",
        title: "Ovando r4,−1,−1",
        family: Family::Surface,
        build: |_| algebra(&[(P1, Q1, i_q(-1, 2))], &[(P1, P2, i_q(-1, 2)), (P2, Q1, i_q(-1, 2))]),
        expectations: |p| {
            let y = Sym::new(p);
            let s_ch = -q(2, 1) * y.s2.clone() / y.d.clone();
            let lambda = s_ch.clone() * q(1, 2);
            vec![
                asserted(Quantity::Ric1, diag(q(-1, 1), CQ::zero()), "Ovando r4: Ric1 = −√−1 φ¹∧φ̄¹"),
                asserted(Quantity::SChern, scalar(s_ch), "Ovando r4: S^Ch = −2s²/D"),
                asserted(Quantity::Ric2, scale_matrix(&surface_h(p), &lambda), "Ovando r4: Ric2 = (S^Ch/2)ω"),
                asserted(Quantity::Lambda2, scalar(lambda), "Ovando r4: Einstein factor −s²/D"),
                asserted(Quantity::Einstein2Defect, zero2(), "Ovando r4: strong (2)-Chern-Einstein"),
            ]
        },
        defaults: standard_points,
        certificate: None,
    },
];

/// Everything [`Quantity`] can ask for, from one pipeline run.
pub struct Computation<S> {
    pub algebra: CoframeAlgebra<S>,
    pub metric: HermitianMetric<S>,
    pub tensor: CurvatureTensor<S>,
    pub report: RicciReport<S>,
    params: Params,
}

impl<S: Scalar> Computation<S> {
    pub fn new(entry: &ExampleEntry, params: &Params) -> Result<Self> {
        let metric = entry.metric(params).map_err(|e| e.in_entry(entry.name))?.to_scalar::<S>();
        let algebra = entry.algebra(params).to_scalar::<S>();
        let curvature = chern_curvature(&algebra, &metric).map_err(|e| e.in_entry(entry.name))?;
        let report = RicciReport::new(&curvature.tensor, &metric);
        Ok(Computation { algebra, metric, tensor: curvature.tensor, report, params: params.clone() })
    }

    pub fn value(&self, quantity: &Quantity) -> Result<Value<S>> {
        let n = self.metric.dim();
        let lambda = self.report.einstein[1].lambda.clone();
        let defect = |i: usize, j: usize| self.report.ric2[i][j].clone() - lambda.clone() * self.metric.h(i, j).clone();
        Ok(match quantity {
            Quantity::Ric1 => Value::Matrix(self.report.ric1.clone()),
            Quantity::Ric2 => Value::Matrix(self.report.ric2.clone()),
            Quantity::Ric3 => Value::Matrix(self.report.ric3.clone()),
            Quantity::Ric3Adjoint => {
                Value::Matrix((0..n).map(|i| (0..n).map(|j| self.report.ric3[j][i].conj()).collect()).collect())
            }
            Quantity::SChern => Value::Scalar(self.report.s_chern.clone()),
            Quantity::SThird => Value::Scalar(self.report.s_third.clone()),
            Quantity::Lambda2 => Value::Scalar(lambda),
            Quantity::Einstein2Defect => Value::Matrix((0..n).map(|i| (0..n).map(|j| defect(i, j)).collect()).collect()),
            Quantity::Curvature => Value::Matrix(
                (0..n * n)
                    .map(|row| (0..n * n).map(|col| self.tensor.get(row / n, row % n, col / n, col % n).clone()).collect())
                    .collect(),
            ),
            Quantity::Theta([i, j, k, l]) => Value::Scalar(self.tensor.get(*i, *j, *k, *l).clone()),
            Quantity::ThetaAbs2([i, j, k, l]) => {
                let t = self.tensor.get(*i, *j, *k, *l);
                Value::Scalar(t.clone() * t.conj())
            }
            Quantity::Einstein2Entry { i, j, factor, .. } => Value::Scalar(S::from_cq(factor) * defect(*i, *j)),
            Quantity::Lee | Quantity::Lck => {
                let lee = lee_form(&self.algebra, &self.metric)?;
                if *quantity == Quantity::Lck {
                    Value::Flag(lee.lck)
                } else {
                    let theta = lee.theta.ok_or_else(|| Error::Invalid("no Lee form".into()))?;
                    Value::Matrix(vec![(0..2 * n).map(|b| theta.coefficient(1 << b)).collect()])
                }
            }
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Float,
    Exact,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyRow {
    pub quantity: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub status: Status,
    pub provenance: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyTable {
    pub entry: &'static str,
    pub params: Params,
    pub mode: VerifyMode,
    pub rows: Vec<VerifyRow>,
}

impl VerifyTable {
    /// True when every asserted row passes.
    pub fn pass(&self) -> bool {
        self.rows.iter().filter(|r| r.status == Status::Asserted).all(|r| r.pass)
    }
}

pub fn verify(name: &str, params: &Params, mode: VerifyMode) -> Result<VerifyTable> {
    match mode {
        VerifyMode::Exact => verify_with::<CQ>(name, params, mode),
        VerifyMode::Float => verify_with::<C64>(name, params, mode),
    }
}

/// Verifies every entry at each of its default parameter points. Work is
/// spread over `workers` threads (`None` uses the global pool); the output
/// order is the registry order regardless of the thread count.
pub fn verify_all(mode: VerifyMode, workers: Option<usize>) -> Result<Vec<VerifyTable>> {
    use rayon::prelude::*;
    let jobs: Vec<(&'static str, Params)> =
        entries().iter().flat_map(|e| e.default_params().into_iter().map(move |p| (e.name, p))).collect();
    let run = || jobs.par_iter().map(|(name, p)| verify(name, p, mode)).collect::<Result<Vec<_>>>();
    match workers {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| Error::Invalid(format!("worker pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn verify_with<S: Scalar>(name: &str, params: &Params, mode: VerifyMode) -> Result<VerifyTable> {
    let entry = entry(name)?;
    let expectations = entry.expectations(params).map_err(|e| e.in_entry(name))?;
    let computation = Computation::<S>::new(entry, params)?;
    let mut rows = Vec::with_capacity(expectations.len());
    for exp in expectations {
        let computed = computation.value(&exp.quantity).map_err(|e| e.in_entry(name))?;
        let target = exp.value.convert(S::from_cq);
        rows.push(VerifyRow {
            quantity: exp.quantity.name(),
            expected: target.render(),
            computed: computed.render(),
            pass: values_match(&computed, &target),
            status: exp.status,
            provenance: exp.provenance,
        });
    }
    Ok(VerifyTable { entry: entry.name, params: params.clone(), mode, rows })
}
