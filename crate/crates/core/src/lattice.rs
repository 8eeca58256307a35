//! Uniformly separated simple poles on the integration line.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Real, Result};

type IndexFn<T> = Arc<dyn Fn(i64) -> T + Send + Sync>;

/// Arithmetic lattice of simple-pole ordinates `c_k = origin + k * spacing`
/// together with the real residue data `e_k` (the residue of the underlying
/// half-plane function at `i c_k` is `i e_k`).
///
/// The index set is an optionally bounded range of integers with a finite
/// list of exclusions (e.g. `k = 0` for `z / sinh z`, whose origin
/// singularity is removable).
#[derive(Clone)]
pub struct PoleLattice<T> {
    origin: T,
    spacing: T,
    lo: Option<i64>,
    hi: Option<i64>,
    excluded: Vec<i64>,
    residue: IndexFn<T>,
    residue_bound: Option<T>,
}

impl<T: Real> fmt::Debug for PoleLattice<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PoleLattice")
            .field("origin", &self.origin)
            .field("spacing", &self.spacing)
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("excluded", &self.excluded)
            .field("residue_bound", &self.residue_bound)
            .finish()
    }
}

impl<T: Real> PoleLattice<T> {
    /// Lattice over all integers.
    pub fn new(
        origin: T,
        spacing: T,
        residue: impl Fn(i64) -> T + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(spacing > T::zero()) || !spacing.is_finite() || !origin.is_finite() {
            return Err(Error::Domain(
                "lattice spacing must be positive and finite".into(),
            ));
        }
        Ok(Self {
            origin,
            spacing,
            lo: None,
            hi: None,
            excluded: Vec::new(),
            residue: Arc::new(residue),
            residue_bound: None,
        })
    }

    /// Restricts the index set to `lo..=hi` (either side may stay open).
    pub fn with_range(mut self, lo: Option<i64>, hi: Option<i64>) -> Self {
        self.lo = lo;
        self.hi = hi;
        self
    }

    pub fn excluding(mut self, k: i64) -> Self {
        if !self.excluded.contains(&k) {
            self.excluded.push(k);
        }
        self
    }

    /// Declares `|e_k| <= bound` for all `k`, enabling [`Self::abs_tail_bound`].
    pub fn with_residue_bound(mut self, bound: T) -> Self {
        self.residue_bound = Some(bound);
        self
    }

    pub fn separation(&self) -> T {
        self.spacing
    }

    pub fn origin(&self) -> T {
        self.origin
    }

    pub fn residue_bound(&self) -> Option<T> {
        self.residue_bound
    }

    pub fn contains(&self, k: i64) -> bool {
        self.lo.is_none_or(|lo| k >= lo)
            && self.hi.is_none_or(|hi| k <= hi)
            && !self.excluded.contains(&k)
    }

    /// Ordinate `c_k`, defined for every integer whether or not `k` is in
    /// the index set.
    pub fn ordinate(&self, k: i64) -> T {
        self.origin + T::from_int(k) * self.spacing
    }

    pub fn residue(&self, k: i64) -> T {
        if self.contains(k) {
            (self.residue)(k)
        } else {
            T::zero()
        }
    }

    /// Index of the lattice site nearest to `t`.
    pub fn nearest_index(&self, t: T) -> i64 {
        ((t - self.origin) / self.spacing)
            .round()
            .to_i64()
            .unwrap_or(if t > self.origin { i64::MAX } else { i64::MIN })
    }

    /// Smallest midpoint `origin + (k + 1/2) spacing` that is `>= t`.
    pub fn midpoint_at_or_after(&self, t: T) -> T {
        let half = T::lit(0.5);
        let k = ((t - self.origin) / self.spacing - half).ceil();
        self.origin + (k + half) * self.spacing
    }

    /// Largest midpoint that is `<= t`.
    pub fn midpoint_at_or_before(&self, t: T) -> T {
        let half = T::lit(0.5);
        let k = ((t - self.origin) / self.spacing - half).floor();
        self.origin + (k + half) * self.spacing
    }

    /// Indices of poles with ordinates strictly inside `(a, b)`, ascending.
    pub fn indices_between(&self, a: T, b: T) -> Vec<i64> {
        if !(a < b) {
            return Vec::new();
        }
        let first = ((a - self.origin) / self.spacing)
            .floor()
            .to_i64()
            .unwrap_or(i64::MIN);
        let last = ((b - self.origin) / self.spacing)
            .ceil()
            .to_i64()
            .unwrap_or(i64::MAX);
        (first..=last)
            .filter(|&k| self.contains(k))
            .filter(|&k| {
                let c = self.ordinate(k);
                c > a && c < b
            })
            .collect()
    }

    /// Poles grouped in shells of increasing `|c_k|`: shell `n` holds the
    /// `n`-th pole with `c_k >= 0` and the `n`-th pole with `c_k < 0`, so the
    /// two members are mirror images for a lattice symmetric about zero.
    /// The iterator ends once both sides are exhausted.
    pub fn shells(&self) -> Shells<'_, T> {
        let k0 = (-self.origin / self.spacing).ceil().to_i64().unwrap_or(0);
        Shells {
            lattice: self,
            next_pos: Some(k0),
            next_neg: Some(k0 - 1),
        }
    }

    fn advance(&self, start: i64, dir: i64) -> Option<i64> {
        let mut k = start;
        loop {
            if dir > 0 && self.hi.is_some_and(|hi| k > hi) {
                return None;
            }
            if dir < 0 && self.lo.is_some_and(|lo| k < lo) {
                return None;
            }
            if self.contains(k) {
                return Some(k);
            }
            k += dir;
        }
    }

    /// Upper bound for `sum_{|c_k| > cutoff} |e_k| x / (x^2 + (c_k - y)^2)`
    /// when the lattice carries a uniform residue bound and `cutoff > |y|`.
    pub fn abs_tail_bound(&self, x: T, y: T, cutoff: T) -> Option<T> {
        let m = self.residue_bound?;
        let gap = cutoff - y.abs();
        if !(gap > T::zero()) {
            return None;
        }
        let two = T::lit(2.0);
        Some(two * m * x * (T::one() / (gap * gap) + T::one() / (self.spacing * gap)))
    }
}

/// Iterator returned by [`PoleLattice::shells`].
pub struct Shells<'a, T> {
    lattice: &'a PoleLattice<T>,
    next_pos: Option<i64>,
    next_neg: Option<i64>,
}

impl<T: Real> Iterator for Shells<'_, T> {
    type Item = (Option<i64>, Option<i64>);

    fn next(&mut self) -> Option<Self::Item> {
        let pos = self.next_pos.and_then(|k| self.lattice.advance(k, 1));
        let neg = self.next_neg.and_then(|k| self.lattice.advance(k, -1));
        self.next_pos = pos.map(|k| k + 1);
        self.next_neg = neg.map(|k| k - 1);
        if pos.is_none() && neg.is_none() {
            None
        } else {
            Some((pos, neg))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sech_lattice(a: f64) -> PoleLattice<f64> {
        PoleLattice::new(PI / (2.0 * a), PI / a, move |k| {
            if k.rem_euclid(2) == 0 {
                -1.0 / a
            } else {
                1.0 / a
            }
        })
        .unwrap()
        .with_residue_bound(1.0 / a)
    }

    #[test]
    fn ordinates_and_midpoints() {
        let lat = sech_lattice(2.0);
        assert!((lat.ordinate(0) - PI / 4.0).abs() < 1e-15);
        assert!((lat.ordinate(-1) + PI / 4.0).abs() < 1e-15);
        let m = lat.midpoint_at_or_after(0.1);
        assert!((m - PI / 4.0 - PI / 4.0).abs() < 1e-15 || m.abs() < 1e-15);
        assert!(lat.midpoint_at_or_before(0.1) <= 0.1);
    }

    #[test]
    fn shells_pair_mirror_images() {
        let lat = sech_lattice(1.0);
        for (p, q) in lat.shells().take(50) {
            let (p, q) = (p.unwrap(), q.unwrap());
            assert!((lat.ordinate(p) + lat.ordinate(q)).abs() < 1e-12);
        }
        let lat = PoleLattice::new(0.0, 1.0, |k| k as f64)
            .unwrap()
            .excluding(0);
        for (n, (p, q)) in lat.shells().take(50).enumerate() {
            assert_eq!(p, Some(n as i64 + 1));
            assert_eq!(q, Some(-(n as i64) - 1));
        }
    }

    #[test]
    fn finite_range_terminates() {
        let lat = PoleLattice::new(0.0, 1.0, |_| 1.0)
            .unwrap()
            .with_range(Some(-2), Some(3));
        let count: usize = lat
            .shells()
            .map(|(p, q)| p.is_some() as usize + q.is_some() as usize)
            .sum();
        assert_eq!(count, 6);
    }

    #[test]
    fn indices_between_respects_exclusions() {
        let lat = PoleLattice::new(0.0, PI, |k| k as f64)
            .unwrap()
            .excluding(0);
        assert_eq!(lat.indices_between(-4.0, 7.0), vec![-1, 1, 2]);
        assert_eq!(lat.residue(0), 0.0);
    }

    #[test]
    fn separation_is_spacing() {
        let lat = sech_lattice(0.5);
        for k in -20..20 {
            assert!(lat.ordinate(k + 1) - lat.ordinate(k) >= lat.separation() * (1.0 - 1e-12));
        }
    }

    #[test]
    fn rejects_bad_spacing() {
        assert!(PoleLattice::new(0.0, 0.0, |_| 1.0).is_err());
        assert!(PoleLattice::new(0.0, -1.0, |_| 1.0).is_err());
    }
}
