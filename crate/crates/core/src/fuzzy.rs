//! Regular fuzzy numbers in the α-cut representation.
//!
//! A fuzzy number is stored as `N` nested closed intervals, one per level
//! `α_k = k/N` for `k = 1..=N`. Level `α = 0` is never stored; the widest
//! stored cut (`α = 1/N`) stands in for the support.
//!
//! Arithmetic is done with [`zadeh_endpoint_map`]: for a function that is
//! monotone in every coordinate, the α-cut of its Zadeh extension is obtained
//! by evaluating the function at the appropriate cut endpoints. The finite
//! sup-min extension over [`DiscreteFuzzy`] values is provided by
//! [`discrete_zadeh`] and serves as an oracle.

use std::fmt;

use thiserror::Error;

/// Support values of a [`DiscreteFuzzy`] closer than this are treated as one value.
pub const MERGE_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FuzzyError {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("number of alpha-cuts must be at least 1")]
    ZeroCuts,
    #[error("alpha grids differ: {left} vs {right} cuts")]
    GridMismatch { left: usize, right: usize },
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("at least one argument is required")]
    NoArguments,
    #[error("cut at level {level} is not an interval: [{lo}, {hi}]")]
    InvalidCut { level: usize, lo: f64, hi: f64 },
    #[error("cuts are not nested between levels {} and {}", .level - 1, .level)]
    NotNested { level: usize },
    #[error("endpoint {value} at level {level} lies outside [0, 1]")]
    NotProbability { level: usize, value: f64 },
    #[error("invalid membership degree {degree} for value {value}")]
    InvalidDegree { value: f64, degree: f64 },
    #[error("support value {0} appears twice")]
    DuplicateValue(f64),
    #[error("non-finite support value")]
    NonFinite,
}

/// A closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub const fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Parametric description of a fuzzy number, before discretization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// `△_{a,b,d}`: support `[a, d]`, apex `b`.
    Triangular { a: f64, b: f64, d: f64 },
    /// `trap_{a,b,c,d}`: support `[a, d]`, plateau `[b, c]`.
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
    /// Indicator of `[a, b]`.
    Interval { a: f64, b: f64 },
    /// Gaussian membership `exp(-(x-m)²/(2s²))` restricted to `[lo, hi]`.
    TruncGaussian { mean: f64, std_dev: f64, lo: f64, hi: f64 },
}

impl Shape {
    /// Gaussian truncated to the probability range `[0, 1]`.
    pub fn gaussian(mean: f64, std_dev: f64) -> Self {
        Shape::TruncGaussian { mean, std_dev, lo: 0.0, hi: 1.0 }
    }

    pub fn crisp(x: f64) -> Self {
        Shape::Interval { a: x, b: x }
    }

    fn params(&self) -> Vec<f64> {
        match *self {
            Shape::Triangular { a, b, d } => vec![a, b, d],
            Shape::Trapezoidal { a, b, c, d } => vec![a, b, c, d],
            Shape::Interval { a, b } => vec![a, b],
            Shape::TruncGaussian { mean, std_dev, lo, hi } => vec![mean, std_dev, lo, hi],
        }
    }

    pub fn validate(&self) -> Result<(), FuzzyError> {
        if self.params().iter().any(|x| !x.is_finite()) {
            return Err(FuzzyError::InvalidShape(format!("non-finite parameter in {self}")));
        }
        let ordered = match *self {
            Shape::Triangular { a, b, d } => a <= b && b <= d,
            Shape::Trapezoidal { a, b, c, d } => a <= b && b <= c && c <= d,
            Shape::Interval { a, b } => a <= b,
            Shape::TruncGaussian { mean, std_dev, lo, hi } => {
                std_dev > 0.0 && lo < hi && lo <= mean && mean <= hi
            }
        };
        if ordered {
            Ok(())
        } else {
            Err(FuzzyError::InvalidShape(format!("parameters out of order in {self}")))
        }
    }

    /// Validation for shapes used as fuzzy probabilities: every parameter in `[0, 1]`.
    pub fn validate_probability(&self) -> Result<(), FuzzyError> {
        self.validate()?;
        let in_unit = match *self {
            Shape::TruncGaussian { mean, lo, hi, .. } => [mean, lo, hi].iter().all(|x| (0.0..=1.0).contains(x)),
            _ => self.params().iter().all(|x| (0.0..=1.0).contains(x)),
        };
        if in_unit {
            Ok(())
        } else {
            Err(FuzzyError::InvalidShape(format!("{self} is not a fuzzy probability")))
        }
    }

    /// Closed-form α-cut for `alpha` in `(0, 1]`.
    pub fn cut_at(&self, alpha: f64) -> Interval {
        match *self {
            Shape::Triangular { a, b, d } => flanks(a, b, b, d, alpha),
            Shape::Trapezoidal { a, b, c, d } => flanks(a, b, c, d, alpha),
            Shape::Interval { a, b } => Interval::new(a, b),
            Shape::TruncGaussian { mean, std_dev, lo, hi } => {
                let half = std_dev * (-2.0 * alpha.ln()).sqrt();
                Interval::new((mean - half).max(lo), (mean + half).min(hi))
            }
        }
    }
}

/// Measured from the core so the α = 1 cut is exactly `[b, c]`.
fn flanks(a: f64, b: f64, c: f64, d: f64, alpha: f64) -> Interval {
    let down = 1.0 - alpha;
    Interval::new((b - (b - a) * down).max(a), (c + (d - c) * down).min(d))
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Shape::Triangular { a, b, d } => write!(f, "tri({a}, {b}, {d})"),
            Shape::Trapezoidal { a, b, c, d } => write!(f, "trap({a}, {b}, {c}, {d})"),
            Shape::Interval { a, b } => write!(f, "interval({a}, {b})"),
            Shape::TruncGaussian { mean, std_dev, lo, hi } => {
                write!(f, "gauss({mean}, {std_dev}) on [{lo}, {hi}]")
            }
        }
    }
}

/// A regular fuzzy number as `N` nested α-cuts at levels `1/N, 2/N, …, 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaFuzzy {
    cuts: Vec<Interval>,
}

impl AlphaFuzzy {
    /// Builds a fuzzy number from cuts ordered by increasing α.
    pub fn from_cuts(cuts: Vec<Interval>) -> Result<Self, FuzzyError> {
        if cuts.is_empty() {
            return Err(FuzzyError::ZeroCuts);
        }
        for (k, cut) in cuts.iter().enumerate() {
            if !(cut.lo.is_finite() && cut.hi.is_finite() && cut.lo <= cut.hi) {
                return Err(FuzzyError::InvalidCut { level: k + 1, lo: cut.lo, hi: cut.hi });
            }
            if k > 0 && !cuts[k - 1].contains_interval(cut) {
                return Err(FuzzyError::NotNested { level: k + 1 });
            }
        }
        Ok(AlphaFuzzy { cuts })
    }

    /// Zero-width fuzzy number concentrated at `x`.
    pub fn crisp(x: f64, n_cuts: usize) -> Result<Self, FuzzyError> {
        Self::from_cuts(vec![Interval::point(x); n_cuts])
    }

    pub fn n_cuts(&self) -> usize {
        self.cuts.len()
    }

    /// α level of the cut stored at `index` (0-based).
    pub fn alpha(&self, index: usize) -> f64 {
        level_alpha(index, self.cuts.len())
    }

    pub fn alphas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.cuts.len()).map(|k| self.alpha(k))
    }

    pub fn cut(&self, index: usize) -> Interval {
        self.cuts[index]
    }

    pub fn cuts(&self) -> &[Interval] {
        &self.cuts
    }

    /// The widest stored cut.
    pub fn support(&self) -> Interval {
        self.cuts[0]
    }

    /// The cut at `α = 1`.
    pub fn core(&self) -> Interval {
        self.cuts[self.cuts.len() - 1]
    }

    pub fn is_crisp(&self) -> bool {
        self.support().width() == 0.0
    }

    pub fn same_grid(&self, other: &AlphaFuzzy) -> bool {
        self.cuts.len() == other.cuts.len()
    }

    pub fn check_probability(&self) -> Result<(), FuzzyError> {
        let s = self.support();
        for value in [s.lo, s.hi] {
            if !(0.0..=1.0).contains(&value) {
                return Err(FuzzyError::NotProbability { level: 1, value });
            }
        }
        Ok(())
    }

    /// Step-function reconstruction: the largest stored α whose cut contains `x`, or 0.
    pub fn membership_at(&self, x: f64) -> f64 {
        // Nestedness means the containing levels form a prefix.
        match self.cuts.iter().rposition(|c| c.contains(x)) {
            Some(k) => self.alpha(k),
            None => 0.0,
        }
    }
}

impl fmt::Display for AlphaFuzzy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .cuts
            .iter()
            .enumerate()
            .map(|(k, c)| format!("{:.3}:{}", self.alpha(k), c))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// α level of the 0-based `index` on an `n`-cut grid.
pub fn level_alpha(index: usize, n: usize) -> f64 {
    (index + 1) as f64 / n as f64
}

/// Samples the exact α-cuts of `shape` at levels `k/N`.
pub fn discretize(shape: &Shape, n_cuts: usize) -> Result<AlphaFuzzy, FuzzyError> {
    shape.validate()?;
    if n_cuts == 0 {
        return Err(FuzzyError::ZeroCuts);
    }
    let cuts = (0..n_cuts).map(|k| shape.cut_at(level_alpha(k, n_cuts))).collect();
    AlphaFuzzy::from_cuts(cuts)
}

/// Monotonicity of a map in one coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    NonDecreasing,
    NonIncreasing,
}

/// Zadeh extension of a coordinate-wise monotone continuous map, evaluated at
/// the cut endpoints level by level.
///
/// `directions[i]` declares how `f` behaves in argument `i`; it is trusted, not
/// checked. Products, for instance, are non-decreasing only on nonnegative inputs.
pub fn zadeh_endpoint_map<F>(f: F, directions: &[Direction], args: &[&AlphaFuzzy]) -> Result<AlphaFuzzy, FuzzyError>
where
    F: Fn(&[f64]) -> f64,
{
    if directions.len() != args.len() {
        return Err(FuzzyError::ArityMismatch { expected: directions.len(), got: args.len() });
    }
    let first = args.first().ok_or(FuzzyError::NoArguments)?;
    let n = first.n_cuts();
    if let Some(bad) = args.iter().find(|x| x.n_cuts() != n) {
        return Err(FuzzyError::GridMismatch { left: n, right: bad.n_cuts() });
    }

    let mut left = vec![0.0; args.len()];
    let mut right = vec![0.0; args.len()];
    let mut cuts = Vec::with_capacity(n);
    for k in 0..n {
        for (i, (arg, dir)) in args.iter().zip(directions).enumerate() {
            let c = arg.cuts[k];
            (left[i], right[i]) = match dir {
                Direction::NonDecreasing => (c.lo, c.hi),
                Direction::NonIncreasing => (c.hi, c.lo),
            };
        }
        cuts.push(Interval::new(f(&left), f(&right)));
    }
    AlphaFuzzy::from_cuts(cuts)
}

/// A fuzzy number with finite support, `{x_1 ↦ a_1, …, x_n ↦ a_n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteFuzzy {
    // Sorted by value.
    entries: Vec<(f64, f64)>,
}

impl DiscreteFuzzy {
    /// Builds from `(value, degree)` pairs with distinct values and degrees in `(0, 1]`.
    pub fn new(entries: impl IntoIterator<Item = (f64, f64)>) -> Result<Self, FuzzyError> {
        let mut entries: Vec<(f64, f64)> = entries.into_iter().collect();
        for &(value, degree) in &entries {
            if !value.is_finite() {
                return Err(FuzzyError::NonFinite);
            }
            if !(degree > 0.0 && degree <= 1.0) {
                return Err(FuzzyError::InvalidDegree { value, degree });
            }
        }
        entries.sort_by(|a, b| a.0.total_cmp(&b.0));
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(FuzzyError::DuplicateValue(w[0].0));
        }
        Ok(DiscreteFuzzy { entries })
    }

    pub fn singleton(value: f64) -> Self {
        DiscreteFuzzy { entries: vec![(value, 1.0)] }
    }

    /// Collects `(value, degree)` pairs, merging values within [`MERGE_EPS`]
    /// and keeping the largest degree of each group.
    pub fn merged(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self, FuzzyError> {
        let mut pairs: Vec<(f64, f64)> = pairs.into_iter().collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut entries: Vec<(f64, f64)> = Vec::with_capacity(pairs.len());
        for (value, degree) in pairs {
            match entries.last_mut() {
                Some(last) if (value - last.0).abs() <= MERGE_EPS => {
                    if degree > last.1 {
                        *last = (value, degree);
                    }
                }
                _ => entries.push((value, degree)),
            }
        }
        Self::new(entries)
    }

    pub fn entries(&self) -> &[(f64, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Membership degree of `x`, matching support values within [`MERGE_EPS`].
    pub fn degree(&self, x: f64) -> f64 {
        self.entries
            .iter()
            .filter(|(v, _)| (v - x).abs() <= MERGE_EPS)
            .map(|&(_, d)| d)
            .fold(0.0, f64::max)
    }
}

/// Exact sup-min Zadeh extension of an `arity`-ary map over finite supports.
pub fn discrete_zadeh<F>(arity: usize, f: F, args: &[&DiscreteFuzzy]) -> Result<DiscreteFuzzy, FuzzyError>
where
    F: Fn(&[f64]) -> f64,
{
    if args.len() != arity {
        return Err(FuzzyError::ArityMismatch { expected: arity, got: args.len() });
    }
    if args.iter().any(|a| a.is_empty()) {
        return DiscreteFuzzy::new([]);
    }
    let mut index = vec![0usize; arity];
    let mut point = vec![0.0; arity];
    let mut out = Vec::new();
    loop {
        let mut degree = 1.0f64;
        for (i, arg) in args.iter().enumerate() {
            let (value, d) = arg.entries[index[i]];
            point[i] = value;
            degree = degree.min(d);
        }
        out.push((f(&point), degree));

        // Odometer step over the product of supports.
        let mut i = 0;
        loop {
            if i == arity {
                return DiscreteFuzzy::merged(out);
            }
            index[i] += 1;
            if index[i] < args[i].entries.len() {
                break;
            }
            index[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn trapezoid_cuts_follow_closed_form() {
        let trap = Shape::Trapezoidal { a: 0.1, b: 0.4, c: 0.6, d: 0.8 };
        let f = discretize(&trap, 2).unwrap();
        assert_eq!(f.alpha(1), 1.0);
        assert_eq!(f.cut(1), Interval::new(0.4, 0.6));
        assert!(close(f.cut(0).lo, 0.25, 1e-15));
        assert!(close(f.cut(0).hi, 0.7, 1e-15));
    }

    #[test]
    fn interval_cuts_are_constant() {
        for n in [1, 3, 10] {
            let f = discretize(&Shape::Interval { a: 0.3, b: 0.6 }, n).unwrap();
            assert!(f.cuts().iter().all(|c| *c == Interval::new(0.3, 0.6)));
        }
    }

    #[test]
    fn gaussian_is_clamped_to_truncation() {
        let g = discretize(&Shape::gaussian(0.05, 0.1), 10).unwrap();
        assert_eq!(g.support().lo, 0.0);
        assert_eq!(g.core(), Interval::point(0.05));
        let half = 0.1 * (-2.0 * 0.1f64.ln()).sqrt();
        assert!(close(g.support().hi, 0.05 + half, 1e-15));
    }

    #[test]
    fn invalid_shapes_are_rejected() {
        assert!(discretize(&Shape::Triangular { a: 0.5, b: 0.4, d: 0.8 }, 4).is_err());
        assert!(discretize(&Shape::Interval { a: 0.6, b: 0.3 }, 4).is_err());
        assert!(discretize(&Shape::gaussian(0.5, 0.0), 4).is_err());
        assert!(discretize(&Shape::gaussian(1.5, 0.1), 4).is_err());
        assert_eq!(discretize(&Shape::crisp(0.2), 0), Err(FuzzyError::ZeroCuts));
        assert!(Shape::Triangular { a: 0.5, b: 0.9, d: 1.2 }.validate_probability().is_err());
    }

    #[test]
    fn from_cuts_rejects_non_nested() {
        let err = AlphaFuzzy::from_cuts(vec![Interval::new(0.2, 0.4), Interval::new(0.1, 0.3)]).unwrap_err();
        assert_eq!(err, FuzzyError::NotNested { level: 2 });
        assert!(AlphaFuzzy::from_cuts(vec![Interval::new(0.4, 0.2)]).is_err());
    }

    #[test]
    fn membership_is_step_reconstruction() {
        let interval = discretize(&Shape::Interval { a: 0.3, b: 0.6 }, 10).unwrap();
        assert_eq!(interval.membership_at(0.45), 1.0);
        let tri = discretize(&Shape::Triangular { a: 0.2, b: 0.4, d: 0.8 }, 10).unwrap();
        assert_eq!(tri.membership_at(0.4), 1.0);
        assert_eq!(tri.membership_at(0.1), 0.0);
        // Just above halfway up the left flank: in the cut for α = 0.5, not 0.6.
        assert_eq!(tri.membership_at(0.31), 0.5);
    }

    #[test]
    fn product_of_triangles() {
        let n = 20;
        let x = discretize(&Shape::Triangular { a: 1.0, b: 2.0, d: 3.0 }, n).unwrap();
        let y = discretize(&Shape::Triangular { a: 3.0, b: 4.0, d: 6.0 }, n).unwrap();
        let dirs = [Direction::NonDecreasing; 2];
        let p = zadeh_endpoint_map(|v| v[0] * v[1], &dirs, &[&x, &y]).unwrap();
        for (k, alpha) in p.alphas().enumerate() {
            let c = p.cut(k);
            assert!(close(c.lo, alpha * alpha + 4.0 * alpha + 3.0, 1e-12));
            assert!(close(c.hi, 2.0 * alpha * alpha - 12.0 * alpha + 18.0, 1e-12));
        }
    }

    #[test]
    fn complement_reflects_interval() {
        let x = discretize(&Shape::Interval { a: 0.1, b: 0.4 }, 5).unwrap();
        let c = zadeh_endpoint_map(|v| 1.0 - v[0], &[Direction::NonIncreasing], &[&x]).unwrap();
        for cut in c.cuts() {
            assert!(close(cut.lo, 0.6, 1e-15) && close(cut.hi, 0.9, 1e-15));
        }
    }

    #[test]
    fn sum_of_trapezoids_is_trapezoid() {
        let a = Shape::Trapezoidal { a: 0.1, b: 0.2, c: 0.3, d: 0.5 };
        let b = Shape::Trapezoidal { a: 1.0, b: 1.5, c: 2.5, d: 2.6 };
        let expected = discretize(&Shape::Trapezoidal { a: 1.1, b: 1.7, c: 2.8, d: 3.1 }, 8).unwrap();
        let (x, y) = (discretize(&a, 8).unwrap(), discretize(&b, 8).unwrap());
        let s = zadeh_endpoint_map(|v| v[0] + v[1], &[Direction::NonDecreasing; 2], &[&x, &y]).unwrap();
        for (got, want) in s.cuts().iter().zip(expected.cuts()) {
            assert!(close(got.lo, want.lo, 1e-12) && close(got.hi, want.hi, 1e-12));
        }
    }

    #[test]
    fn endpoint_map_errors() {
        let x = AlphaFuzzy::crisp(0.5, 4).unwrap();
        let y = AlphaFuzzy::crisp(0.5, 5).unwrap();
        let dirs = [Direction::NonDecreasing; 2];
        assert_eq!(
            zadeh_endpoint_map(|v| v[0], &dirs[..1], &[&x, &y]),
            Err(FuzzyError::ArityMismatch { expected: 1, got: 2 })
        );
        assert_eq!(
            zadeh_endpoint_map(|v| v[0] * v[1], &dirs, &[&x, &y]),
            Err(FuzzyError::GridMismatch { left: 4, right: 5 })
        );
    }

    #[test]
    fn discrete_zadeh_and_or() {
        let pb = DiscreteFuzzy::singleton(0.1);
        let pc = DiscreteFuzzy::singleton(0.4);
        let or = discrete_zadeh(2, |v| 1.0 - (1.0 - v[0]) * (1.0 - v[1]), &[&pb, &pc]).unwrap();
        assert_eq!(or.len(), 1);
        assert!(close(or.entries()[0].0, 0.46, 1e-12));
        assert_eq!(or.entries()[0].1, 1.0);

        let pa = DiscreteFuzzy::new([(0.5, 0.7), (0.8, 1.0)]).unwrap();
        let top = discrete_zadeh(2, |v| v[0] * v[1], &[&pa, &or]).unwrap();
        let e = top.entries();
        assert_eq!(e.len(), 2);
        assert!(close(e[0].0, 0.23, 1e-12) && e[0].1 == 0.7);
        assert!(close(e[1].0, 0.368, 1e-12) && e[1].1 == 1.0);
    }

    #[test]
    fn discrete_zadeh_identity_and_arity() {
        let x = DiscreteFuzzy::new([(0.3, 0.5)]).unwrap();
        assert_eq!(discrete_zadeh(1, |v| v[0], &[&x]).unwrap(), x);
        assert!(matches!(
            discrete_zadeh(2, |v| v[0], &[&x]),
            Err(FuzzyError::ArityMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn discrete_merge_keeps_max_degree() {
        // max(x, y) has preimage {(0.1, 0.2), (0.2, 0.1), (0.2, 0.2)} at 0.2.
        let x = DiscreteFuzzy::new([(0.1, 1.0), (0.2, 0.3)]).unwrap();
        let y = DiscreteFuzzy::new([(0.1, 0.4), (0.2, 0.9)]).unwrap();
        let m = discrete_zadeh(2, |v| v[0].max(v[1]), &[&x, &y]).unwrap();
        assert_eq!(m.entries(), &[(0.1, 0.4), (0.2, 0.9)]);
    }

    #[test]
    fn discrete_rejects_bad_entries() {
        assert!(DiscreteFuzzy::new([(0.1, 0.0)]).is_err());
        assert!(DiscreteFuzzy::new([(0.1, 1.2)]).is_err());
        assert!(DiscreteFuzzy::new([(0.1, 1.0), (0.1, 0.5)]).is_err());
    }
}
