//! Shared rendering helpers for CSV and plain-text output.

/// Render a real with 12 significant digits. Deterministic across platforms
/// and thread counts; used for every real-valued CSV field.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.11e}")
}
