//! Iterated averaging of partial sums and its continuous counterpart, the
//! smooth truncation window used for lattice tails.

use crate::Real;

/// Binomial-weighted mean of the last `depth + 1` entries of `partial`,
/// i.e. `depth` rounds of pairwise averaging applied to the partial sums.
/// Returns `None` while fewer than `depth + 1` partial sums are available.
pub fn iterated_average<T: Real>(partial: &[T], depth: usize) -> Option<T> {
    if partial.len() < depth + 1 {
        return None;
    }
    let window = &partial[partial.len() - depth - 1..];
    let mut row: Vec<T> = window.to_vec();
    let half = T::lit(0.5);
    for level in 0..depth {
        for i in 0..row.len() - 1 - level {
            row[i] = half * (row[i] + row[i + 1]);
        }
    }
    Some(row[0])
}

/// Streaming accelerator over a sequence of partial sums.
#[derive(Debug, Clone)]
pub struct IteratedAverager<T> {
    depth: usize,
    partial: Vec<T>,
    history: Vec<T>,
}

impl<T: Real> IteratedAverager<T> {
    pub fn new(depth: usize) -> Self {
        Self {
            depth,
            partial: Vec::new(),
            history: Vec::new(),
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn push(&mut self, partial_sum: T) {
        self.partial.push(partial_sum);
        if let Some(v) = iterated_average(&self.partial, self.depth) {
            self.history.push(v);
        }
        // Only the trailing window is ever read.
        let keep = self.depth + 2;
        if self.partial.len() > 4 * keep {
            self.partial.drain(..self.partial.len() - keep);
        }
        if self.history.len() > 8 {
            self.history.drain(..self.history.len() - 2);
        }
    }

    pub fn len(&self) -> usize {
        self.partial.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partial.is_empty()
    }

    /// Current accelerated value, falling back to the raw partial sum.
    pub fn value(&self) -> Option<T> {
        self.history
            .last()
            .copied()
            .or_else(|| self.partial.last().copied())
    }

    /// Change of the accelerated value over the last step plus the gap to
    /// one order lower; `None` until two accelerated values exist.
    pub fn error_estimate(&self) -> Option<T> {
        let n = self.history.len();
        if n < 2 {
            return None;
        }
        let step = (self.history[n - 1] - self.history[n - 2]).abs();
        let lower = if self.depth == 0 {
            step
        } else {
            let below = iterated_average(&self.partial, self.depth - 1)?;
            (self.history[n - 1] - below).abs()
        };
        Some(step + lower)
    }
}

/// Weight left after `depth` rounds of averaging a truncated integral over
/// truncation points spread uniformly across one stage: one minus the
/// Irwin–Hall distribution function at `u` (measured in stage widths past
/// the start of the window). Equal to 1 for `u <= 0` and 0 for `u >= depth`.
pub fn tail_window<T: Real>(u: T, depth: usize) -> T {
    let u = u.as_f64();
    let m = depth as f64;
    if u <= 0.0 {
        return T::one();
    }
    if u >= m {
        return T::zero();
    }
    if depth == 0 {
        return T::zero();
    }
    // F(u) = 1 - F(m - u); evaluate the smaller half for accuracy.
    let (arg, flip) = if u > 0.5 * m {
        (m - u, true)
    } else {
        (u, false)
    };
    let cdf = irwin_hall_cdf(arg, depth);
    T::lit(if flip { cdf } else { 1.0 - cdf })
}

fn irwin_hall_cdf(u: f64, n: usize) -> f64 {
    let mut sum = 0.0;
    let mut binom = 1.0;
    let mut factorial = 1.0;
    for i in 1..=n {
        factorial *= i as f64;
    }
    let top = u.floor() as usize;
    for k in 0..=top.min(n) {
        if k > 0 {
            binom *= (n + 1 - k) as f64 / k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom * (u - k as f64).powi(n as i32);
    }
    (sum / factorial).clamp(0.0, 1.0)
}
