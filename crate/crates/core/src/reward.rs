//! Exact reward arithmetic.
//!
//! Episode returns are bounded in `[-1, 1]` with no slack. Two details make
//! that hold in floating point. Per-step magnitudes come from
//! [`unit_share`], which never rounds `1/n` up, so `n` of them sum to at
//! most one in exact arithmetic. Returns are then accumulated with
//! [`ExactSum`], which rounds the true sum only once.

/// Largest `r` with `r * n <= 1` exactly: `1/n`, rounded down if needed.
pub fn unit_share(n: u64) -> f64 {
    assert!(n > 0, "share of zero parts");
    let parts = n as f64;
    let r = 1.0 / parts;
    // fma rounds once, so its sign is the sign of the exact r * n - 1
    if libm::fma(r, parts, -1.0) > 0.0 {
        r.next_down()
    } else {
        r
    }
}

/// Running sum without accumulated rounding error (Shewchuk's algorithm).
/// [`ExactSum::value`] is the correctly rounded exact sum of all terms.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExactSum {
    partials: Vec<f64>,
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let mut x = value;
        let mut kept = 0;
        for j in 0..self.partials.len() {
            let mut y = self.partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                self.partials[kept] = lo;
                kept += 1;
            }
            x = hi;
        }
        self.partials.truncate(kept);
        self.partials.push(x);
    }

    pub fn value(&self) -> f64 {
        let p = &self.partials;
        let Some(&last) = p.last() else {
            return 0.0;
        };
        let mut n = p.len() - 1;
        let mut hi = last;
        let mut lo = 0.0;
        while n > 0 {
            let x = hi;
            let y = p[n - 1];
            n -= 1;
            hi = x + y;
            lo = y - (hi - x);
            if lo != 0.0 {
                break;
            }
        }
        // round half to even across the remaining partials
        if n > 0 && ((lo < 0.0 && p[n - 1] < 0.0) || (lo > 0.0 && p[n - 1] > 0.0)) {
            let y = lo * 2.0;
            let x = hi + y;
            if y == x - hi {
                hi = x;
            }
        }
        hi
    }
}

impl Extend<f64> for ExactSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<f64> for ExactSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = ExactSum::new();
        s.extend(iter);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shares_never_overshoot() {
        for n in 1..5000u64 {
            let r = unit_share(n);
            let total: ExactSum = std::iter::repeat_n(r, n as usize).collect();
            assert!(total.value() <= 1.0, "n = {n}");
            assert!((r - 1.0 / n as f64).abs() <= f64::EPSILON * r);
        }
        assert_eq!(unit_share(256), 1.0 / 256.0);
    }

    #[test]
    fn cancellation_is_exact() {
        let s: ExactSum = [1e100, 1.0, -1e100, 1e-30].into_iter().collect();
        assert_eq!(s.value(), 1.0 + 1e-30);
        let tenths: ExactSum = std::iter::repeat_n(0.1, 10).collect();
        assert_eq!(tenths.value(), 1.0);
        assert_eq!(ExactSum::new().value(), 0.0);
    }

    #[test]
    fn matches_integer_sums() {
        let mut rng = crate::rng::Pcg32::new(1, 1);
        let mut exact = ExactSum::new();
        let mut int = 0i64;
        for _ in 0..10_000 {
            let v = rng.below(2_000_001) as i64 - 1_000_000;
            int += v;
            exact.add(v as f64 / 1024.0);
        }
        assert_eq!(exact.value(), int as f64 / 1024.0);
    }
}
