//! Shared inputs for the benchmarks.

use frobenius_core::ArithProgression;

/// Progressions from small to desk-scale, as `(label, progression)`.
pub fn progressions() -> Vec<(&'static str, ArithProgression)> {
    [("13-3-5", (13, 3, 5)), ("25-4-10", (25, 4, 10)), ("101-7-9", (101, 7, 9)), ("499-12-20", (499, 12, 20)), ("20011-13-40", (20011, 13, 40))]
        .into_iter()
        .map(|(label, (a, d, k))| (label, ArithProgression::new(a, d, k).expect("valid progression")))
        .collect()
}
