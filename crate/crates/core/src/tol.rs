//! Central tolerance configuration. Every default threshold used by the
//! numeric modules lives here; call sites take a tolerance argument so tests
//! and the CLI can override them.

/// Tolerance defaults for the numeric modules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Eigenpair residual bound, scaled by `1 + ||S||`.
    pub eigen_residual: f64,
    /// Bracket width at which the root finder stops.
    pub root: f64,
    /// Absolute gap below which a point counts as attaining equality.
    /// All quantities involved are O(1)-O(10) at the scales exercised here.
    pub ideal_gap: f64,
    /// Structural tolerance for recognizing the canonical two-block form.
    pub canonical_detect: f64,
    /// |beta| below which the structure-equation flow halts.
    pub beta_halt: f64,
    /// State magnitude treated as a finite-time blow-up by the flow.
    pub magnitude_guard: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eigen_residual: 1e-12,
            root: 1e-12,
            ideal_gap: 1e-9,
            canonical_detect: 1e-10,
            beta_halt: 1e-8,
            magnitude_guard: 1e6,
        }
    }
}

impl Tolerances {
    pub const fn const_default() -> Self {
        Self {
            eigen_residual: 1e-12,
            root: 1e-12,
            ideal_gap: 1e-9,
            canonical_detect: 1e-10,
            beta_halt: 1e-8,
            magnitude_guard: 1e6,
        }
    }
}

/// The compiled-in defaults.
pub const DEFAULTS: Tolerances = Tolerances::const_default();
