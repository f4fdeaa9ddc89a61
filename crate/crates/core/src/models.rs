//! Catalog of Hopf model hypersurfaces with their principal-curvature
//! functions, the Hopf relation between phi-paired principal curvatures,
//! radius solvers for the equality condition, and the resulting
//! classification checks.
//!
//! Hyperbolic-side curvature functions follow the standard tables for
//! `CH^n(-4)`; the projective-side ones (geodesic sphere: `nu = 2 cot 2r`,
//! `lambda = cot r`; quadric tube: `cot(r - pi/4)` and `-tan(r - pi/4)`)
//! come from the standard Takagi classification and are double-validated
//! here by the Hopf relation at `c = +1` and by recovery of the known
//! equality radii.
//!
//! On the radius equations for the hyperbolic tube: numerically
//! `2 tanh 2r + tanh r = coth r` has the unique positive root, equal to
//! `(1/2) log((1 + sqrt5 + sqrt(2 + 2 sqrt5)) / 2)` (with `t = tanh r`
//! satisfying `t^4 + 4t^2 - 1 = 0`), while `2 tanh 2r + coth r = tanh r`
//! has none. The solver records which matching condition each root
//! satisfies rather than relying on either labeling.

use crate::contact_frame::{standard_frame, ShapeOperator};
use crate::curvature::{CurvaturePoint, DeltaReport};
use crate::error::Error;
use crate::numerics::{find_root, Bracket, SymMatrix};
use crate::tol::DEFAULTS;

/// Ambient space form: complex projective (`c = +1`) or complex hyperbolic
/// (`c = -1`) with holomorphic sectional curvature `4c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Space {
    Cp,
    Ch,
}

impl Space {
    pub fn c(self) -> f64 {
        match self {
            Space::Cp => 1.0,
            Space::Ch => -1.0,
        }
    }
}

/// Model families. The `A0`..`B` labels are the standard type names for
/// Hopf hypersurfaces with constant principal curvatures in `CH^n`; the
/// `Cp*` kinds are their projective counterparts used here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ModelKind {
    /// Horosphere (hyperbolic only; no radius parameter).
    A0,
    /// Geodesic sphere in CH^n.
    A1Sphere,
    /// Tube around a totally geodesic CH^{n-1}.
    A1Tube,
    /// Tube around a totally geodesic CH^k, `1 <= k <= n-2`.
    A2 { k: usize },
    /// Tube around a totally real totally geodesic real form.
    B,
    /// Geodesic sphere in CP^n.
    CpGeodesicSphere,
    /// Tube around a complex quadric (the projective type-B family).
    CpTypeBTube,
}

/// A named model hypersurface: space, family, complex dimension, radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub space: Space,
    pub kind: ModelKind,
    pub n: usize,
    pub r: Option<f64>,
}

/// Radius-independent validity of a (space, kind, n) combination.
pub fn validate_family(space: Space, kind: ModelKind, n: usize) -> Result<(), Error> {
    standard_frame(n)?;
    let expect_ch = matches!(
        kind,
        ModelKind::A0
            | ModelKind::A1Sphere
            | ModelKind::A1Tube
            | ModelKind::A2 { .. }
            | ModelKind::B
    );
    if expect_ch != (space == Space::Ch) {
        return Err(Error::InvalidModel(format!("{kind:?} does not live in {space:?}")));
    }
    if let ModelKind::A2 { k } = kind {
        if k < 1 || k > n - 2 {
            return Err(Error::InvalidModel(format!(
                "A2 requires 1 <= k <= n-2, got k={k}, n={n}"
            )));
        }
    }
    Ok(())
}

impl ModelSpec {
    pub fn new(space: Space, kind: ModelKind, n: usize, r: Option<f64>) -> Result<Self, Error> {
        validate_family(space, kind, n)?;
        match (kind, r) {
            (ModelKind::A0, None) => {}
            (ModelKind::A0, Some(_)) => {
                return Err(Error::InvalidModel("horosphere takes no radius".into()))
            }
            (_, None) => return Err(Error::InvalidModel("radius required".into())),
            (_, Some(r)) => {
                if !(r > 0.0 && r.is_finite()) {
                    return Err(Error::InvalidModel(format!("radius must be positive, got {r}")));
                }
                if space == Space::Cp && r >= std::f64::consts::FRAC_PI_2 {
                    return Err(Error::InvalidModel(
                        "projective radius must lie in (0, pi/2)".into(),
                    ));
                }
                if kind == ModelKind::CpTypeBTube && (r - std::f64::consts::FRAC_PI_4).abs() < 1e-9
                {
                    return Err(Error::InvalidModel(
                        "quadric tube curvatures are singular at r = pi/4".into(),
                    ));
                }
            }
        }
        Ok(Self { space, kind, n, r })
    }

    /// Principal curvatures with multiplicities and phi-pairing.
    pub fn principal_curvatures(&self) -> PrincipalData {
        let n = self.n;
        let r = self.r.unwrap_or(0.0);
        let data = match self.kind {
            ModelKind::A0 => PrincipalData {
                nu: 2.0,
                lambdas: vec![PrincipalFamily::self_paired(1.0, 2 * n - 2)],
            },
            ModelKind::A1Sphere => PrincipalData {
                nu: 2.0 / (2.0 * r).tanh(),
                lambdas: vec![PrincipalFamily::self_paired(1.0 / r.tanh(), 2 * n - 2)],
            },
            ModelKind::A1Tube => PrincipalData {
                nu: 2.0 / (2.0 * r).tanh(),
                lambdas: vec![PrincipalFamily::self_paired(r.tanh(), 2 * n - 2)],
            },
            ModelKind::A2 { k } => PrincipalData {
                nu: 2.0 / (2.0 * r).tanh(),
                lambdas: vec![
                    PrincipalFamily::self_paired(1.0 / r.tanh(), 2 * n - 2 * k - 2),
                    PrincipalFamily::self_paired(r.tanh(), 2 * k),
                ],
            },
            ModelKind::B => PrincipalData {
                nu: 2.0 * (2.0 * r).tanh(),
                lambdas: vec![
                    PrincipalFamily::cross_paired(1.0 / r.tanh(), n - 1),
                    PrincipalFamily::cross_paired(r.tanh(), n - 1),
                ],
            },
            ModelKind::CpGeodesicSphere => PrincipalData {
                nu: 2.0 / (2.0 * r).tan(),
                lambdas: vec![PrincipalFamily::self_paired(1.0 / r.tan(), 2 * n - 2)],
            },
            ModelKind::CpTypeBTube => {
                let s = r - std::f64::consts::FRAC_PI_4;
                PrincipalData {
                    nu: 2.0 / (2.0 * r).tan(),
                    lambdas: vec![
                        PrincipalFamily::cross_paired(1.0 / s.tan(), n - 1),
                        PrincipalFamily::cross_paired(-s.tan(), n - 1),
                    ],
                }
            }
        };
        debug_assert_eq!(1 + data.lambdas.iter().map(|f| f.multiplicity).sum::<usize>(), 2 * n - 1);
        data
    }

    /// Assembles the shape operator in the standard frame: xi gets `nu`,
    /// self-paired families fill whole phi-blocks diagonally, cross-paired
    /// pairs fill each block as `diag(lambda_2, lambda_1)` (so
    /// `A X = lambda_1 X` implies `A phi X = lambda_2 phi X`).
    pub fn to_shape_operator(&self) -> ShapeOperator {
        let pd = self.principal_curvatures();
        let frame = standard_frame(self.n).expect("n validated on construction");
        let m = frame.m();
        let mut diag = Vec::with_capacity(m);
        diag.push(pd.nu);

        let cross: Vec<&PrincipalFamily> =
            pd.lambdas.iter().filter(|f| f.pairing == PhiPairing::CrossPaired).collect();
        if cross.is_empty() {
            for fam in &pd.lambdas {
                assert!(fam.multiplicity % 2 == 0, "self-paired multiplicity must fill phi-blocks");
                for _ in 0..fam.multiplicity / 2 {
                    diag.push(fam.value);
                    diag.push(fam.value);
                }
            }
        } else {
            assert_eq!(cross.len(), 2, "cross-paired families come in pairs");
            assert_eq!(cross[0].multiplicity, cross[1].multiplicity);
            for _ in 0..cross[0].multiplicity {
                diag.push(cross[1].value);
                diag.push(cross[0].value);
            }
        }
        assert_eq!(diag.len(), m, "multiplicity bookkeeping");

        let mut a = SymMatrix::zeros(m).expect("m <= 64 for supported n");
        for (i, v) in diag.iter().enumerate() {
            a.set(i, i, *v);
        }
        ShapeOperator::new(frame, a).expect("dimensions agree by construction")
    }

    /// Composes the assembled operator with the invariant report.
    pub fn classify_ideal(&self, tol: f64) -> DeltaReport {
        let p = CurvaturePoint::new(self.to_shape_operator(), self.space.c())
            .expect("catalog curvature parameter is +-1");
        p.delta_report(tol)
    }
}

/// Principal curvature data: the xi-curvature `nu` plus the non-xi families.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalData {
    pub nu: f64,
    pub lambdas: Vec<PrincipalFamily>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalFamily {
    pub value: f64,
    pub multiplicity: usize,
    pub pairing: PhiPairing,
}

impl PrincipalFamily {
    fn self_paired(value: f64, multiplicity: usize) -> Self {
        Self { value, multiplicity, pairing: PhiPairing::SelfPaired }
    }

    fn cross_paired(value: f64, multiplicity: usize) -> Self {
        Self { value, multiplicity, pairing: PhiPairing::CrossPaired }
    }
}

/// Whether an eigenvector's phi-partner carries the same eigenvalue
/// (self-paired) or the partner family's (cross-paired).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiPairing {
    SelfPaired,
    CrossPaired,
}

/// Residual of the Hopf relation `2 l1 l2 = (l1 + l2) nu + 2c` linking the
/// principal curvatures of a phi-paired eigenvector pair; zero for every
/// catalog model.
pub fn hopf_relation_residual(nu: f64, l1: f64, l2: f64, c: f64) -> f64 {
    2.0 * l1 * l2 - (l1 + l2) * nu - 2.0 * c
}

/// Which eigenvalue-matching condition an equality radius satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchCondition {
    /// Two-curvature families: the canonical split forces `nu = 0`.
    NuVanishes,
    /// `nu + lambda_1 = lambda_2` with `lambda_1` the single direction.
    NuPlusL1EqL2,
    /// `nu + lambda_2 = lambda_1` with `lambda_2` the single direction.
    NuPlusL2EqL1,
}

/// One root of an equality-radius equation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct IdealRoot {
    pub r: f64,
    pub condition: MatchCondition,
    /// Value of the matching condition at the root.
    pub residual: f64,
    /// Known closed-form radius for this family, when one exists.
    pub closed_form: Option<f64>,
}

/// Scans the admissible radius interval for roots of the eigenvalue
/// matching conditions that the canonical two-block form imposes, with the
/// multiplicity bookkeeping required for the repeated eigenvalue. Families
/// whose multiplicities cannot fit the `1 (+) (2n-3)` split yield no
/// candidates: empty output is a result, not an error.
pub fn ideal_radii(space: Space, kind: ModelKind, n: usize) -> Result<Vec<IdealRoot>, Error> {
    validate_family(space, kind, n)?;
    // Conditions as (label, f(r)), honoring multiplicities.
    type RadiusCondition = (MatchCondition, Box<dyn Fn(f64) -> f64>);
    let mut conditions: Vec<RadiusCondition> = Vec::new();
    let spec_at = move |r: f64| -> Option<PrincipalData> {
        ModelSpec::new(space, kind, n, Some(r)).ok().map(|m| m.principal_curvatures())
    };
    match kind {
        ModelKind::A0 => return Ok(Vec::new()),
        ModelKind::A1Sphere | ModelKind::A1Tube | ModelKind::CpGeodesicSphere => {
            conditions.push((
                MatchCondition::NuVanishes,
                Box::new(move |r| spec_at(r).map_or(f64::NAN, |p| p.nu)),
            ));
        }
        ModelKind::A2 { .. } | ModelKind::B | ModelKind::CpTypeBTube => {
            let fits = |mult_single: usize, mult_repeated: usize| {
                mult_single == 1 && mult_repeated == 2 * n - 3
            };
            // gamma = lambda_1 (single), mu = lambda_2 (repeated)
            if let Some(p) = spec_at(0.5) {
                if fits(p.lambdas[0].multiplicity, p.lambdas[1].multiplicity) {
                    conditions.push((
                        MatchCondition::NuPlusL1EqL2,
                        Box::new(move |r| {
                            spec_at(r).map_or(f64::NAN, |p| {
                                p.nu + p.lambdas[0].value - p.lambdas[1].value
                            })
                        }),
                    ));
                }
                if fits(p.lambdas[1].multiplicity, p.lambdas[0].multiplicity) {
                    conditions.push((
                        MatchCondition::NuPlusL2EqL1,
                        Box::new(move |r| {
                            spec_at(r).map_or(f64::NAN, |p| {
                                p.nu + p.lambdas[1].value - p.lambdas[0].value
                            })
                        }),
                    ));
                }
            }
        }
    }

    // Projective tubes of radius r around the quadric are only
    // geometrically distinct for r < pi/4; the parameter r' = pi/2 - r
    // describes the same hypersurface from the other focal set, so the
    // solver scans the fundamental range only.
    let (lo, hi) = match (space, kind) {
        (Space::Ch, _) => (1e-3, 5.0),
        (Space::Cp, ModelKind::CpTypeBTube) => (1e-3, std::f64::consts::FRAC_PI_4 - 1e-3),
        (Space::Cp, _) => (1e-3, std::f64::consts::FRAC_PI_2 - 1e-3),
    };
    let closed_form = match (space, kind) {
        (Space::Ch, ModelKind::B) if n == 2 => {
            let s5 = 5f64.sqrt();
            Some(0.5 * ((1.0 + s5 + (2.0 + 2.0 * s5).sqrt()) / 2.0).ln())
        }
        (Space::Cp, ModelKind::CpTypeBTube) if n == 2 => {
            let s5 = 5f64.sqrt();
            Some(((1.0 + s5 - (2.0 + 2.0 * s5).sqrt()) / 2.0).atan())
        }
        (Space::Cp, ModelKind::CpGeodesicSphere) => Some(std::f64::consts::FRAC_PI_4),
        _ => None,
    };

    let mut roots = Vec::new();
    const SCAN: usize = 2000;
    for (label, f) in &conditions {
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..=SCAN {
            let r = lo + (hi - lo) * i as f64 / SCAN as f64;
            let v = f(r);
            if !v.is_finite() {
                prev = None;
                continue;
            }
            if let Some((rp, vp)) = prev {
                if vp == 0.0 {
                    roots.push((rp, *label, 0.0));
                } else if vp * v < 0.0 {
                    let b = Bracket::new(rp, r, vp, v).expect("scan found a sign change");
                    let root = find_root(f, b, DEFAULTS.root);
                    let res = f(root);
                    // Poles flip signs too; keep genuine roots only.
                    if res.abs() <= 1e-8 {
                        roots.push((root, *label, res));
                    }
                }
            }
            prev = Some((r, v));
        }
    }
    roots.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite roots"));
    roots.dedup_by(|a, b| (a.0 - b.0).abs() <= 1e-9);
    Ok(roots
        .into_iter()
        .map(|(r, condition, residual)| IdealRoot { r, condition, residual, closed_form })
        .collect())
}
