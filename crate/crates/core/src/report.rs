use serde::Serialize;

/// One named inequality or property, evaluated only when its hypotheses hold.
///
/// `lhs`/`rhs` are for display; the verdict in `holds` is always computed in
/// exact integer arithmetic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub applicable: bool,
    /// `None` when not applicable.
    pub holds: Option<bool>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis_failed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn evaluated(name: &str, holds: bool, lhs: f64, rhs: f64) -> Self {
        Check {
            name: name.to_string(),
            applicable: true,
            holds: Some(holds),
            lhs: Some(lhs),
            rhs: Some(rhs),
            hypothesis_failed: None,
            detail: None,
        }
    }

    pub fn inapplicable(name: &str, reason: &str) -> Self {
        Check {
            name: name.to_string(),
            applicable: false,
            holds: None,
            lhs: None,
            rhs: None,
            hypothesis_failed: Some(reason.to_string()),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Inapplicable checks count as passing.
    pub fn passes(&self) -> bool {
        !self.applicable || self.holds == Some(true)
    }
}

/// `√x > d` in exact arithmetic.
pub(crate) fn sqrt_gt(x: u128, d: i128) -> bool {
    if d < 0 {
        return true;
    }
    let d = d as u128;
    match d.checked_mul(d) {
        Some(sq) => x > sq,
        None => false,
    }
}

/// `√x < d` in exact arithmetic.
pub(crate) fn sqrt_lt(x: u128, d: i128) -> bool {
    if d <= 0 {
        return false;
    }
    let d = d as u128;
    match d.checked_mul(d) {
        Some(sq) => x < sq,
        None => true,
    }
}
