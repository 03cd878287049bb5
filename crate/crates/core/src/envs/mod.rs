//! The fifteen environments, grouped by family.

pub mod cards;
pub mod control;
pub mod diagnostic;
pub mod games;
pub mod nav;

/// log2(n!)
pub(crate) fn log2_factorial(n: u64) -> f64 {
    (2..=n).map(|i| (i as f64).log2()).sum()
}

/// log2 of the multinomial coefficient `(sum counts)! / prod(count!)`.
pub(crate) fn log2_multinomial(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    log2_factorial(total) - counts.iter().map(|&c| log2_factorial(c)).sum::<f64>()
}

/// log2 of the binomial coefficient `n choose k`.
pub(crate) fn log2_binomial(n: u64, k: u64) -> f64 {
    log2_multinomial(&[k, n - k])
}
