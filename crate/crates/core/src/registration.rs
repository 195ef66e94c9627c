//! Dynamic-programming reparametrization of one curve against another.
//!
//! Registration searches monotone lattice paths through the common grid of
//! two transformed signals. A path step from `(i, j)` to `(i + di, j + dj)`
//! warps `dj` segments of the second signal onto `di` segments of the first
//! at constant slope `dj/di`; the square root velocity scaling multiplies
//! the warped value by `sqrt(dj/di)`, which is what keeps the comparison
//! reparametrization-invariant. The DP is exact over all paths built from
//! the admissible step set.

use crate::curve::{CurvePoint, DiscreteCurve, TimeGrid};
use crate::error::{Error, Result};
use crate::srvt::{AlgebraElement, AlgebraSignal};

/// Relative tolerance for the uniform-grid precondition of the DP.
const UNIFORM_TOL: f64 = 1e-9;

/// Admissible lattice steps `(di, dj)` for the DP search, held in
/// tie-breaking order: nearest to the diagonal first, then smaller `di`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeSet {
    steps: Vec<(usize, usize)>,
}

impl SlopeSet {
    pub fn new(steps: Vec<(usize, usize)>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptySlopeSet);
        }
        for &(di, dj) in &steps {
            if di == 0 || dj == 0 {
                return Err(Error::InvalidSlope { di, dj });
            }
        }
        let mut steps = steps;
        steps.sort_by_key(|&(di, dj)| (di.abs_diff(dj), di, dj));
        steps.dedup();
        Ok(SlopeSet { steps })
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }
}

impl Default for SlopeSet {
    /// The standard seven-step neighborhood with slopes in `[1/3, 3]`.
    fn default() -> Self {
        SlopeSet::new(vec![(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)])
            .expect("default steps are valid")
    }
}

/// A monotone piecewise-linear reparametrization of a grid span, fixing
/// both endpoints. Produced by [`dp_reparametrize`].
#[derive(Debug, Clone, PartialEq)]
pub struct Warp {
    times: Vec<f64>,
    knots: Vec<(usize, usize)>,
}

impl Warp {
    fn new(times: Vec<f64>, knots: Vec<(usize, usize)>) -> Self {
        let n = times.len() - 1;
        assert_eq!(knots.first(), Some(&(0, 0)), "warp must fix the start");
        assert_eq!(knots.last(), Some(&(n, n)), "warp must fix the end");
        for w in knots.windows(2) {
            assert!(
                w[1].0 > w[0].0 && w[1].1 > w[0].1,
                "warp knots must increase strictly in both indices"
            );
        }
        Warp { times, knots }
    }

    /// The identity warp on a grid.
    pub fn identity(grid: &TimeGrid) -> Self {
        let knots = (0..grid.len()).map(|i| (i, i)).collect();
        Warp::new(grid.nodes().to_vec(), knots)
    }

    /// A warp through explicit lattice knots; asserts the warp invariants
    /// (endpoint-fixing, strictly increasing in both indices).
    pub fn from_knots(grid: &TimeGrid, knots: Vec<(usize, usize)>) -> Self {
        Warp::new(grid.nodes().to_vec(), knots)
    }

    /// Lattice knots `(i, j)`: the path maps `t_i` to `t_j`.
    pub fn knots(&self) -> &[(usize, usize)] {
        &self.knots
    }

    pub fn is_identity(&self) -> bool {
        self.knots.iter().all(|&(i, j)| i == j)
    }

    pub fn domain_start(&self) -> f64 {
        self.times[0]
    }

    pub fn domain_end(&self) -> f64 {
        *self.times.last().unwrap()
    }

    /// Evaluates the warp: piecewise-linear interpolation through the knot
    /// points `(t_i, t_j)`. Knot times map exactly; interior values are
    /// clamped into the knot interval so rounding never leaves the span.
    pub fn phi(&self, t: f64) -> Result<f64> {
        if t < self.domain_start() || t > self.domain_end() {
            return Err(Error::OutOfRange {
                t,
                start: self.domain_start(),
                end: self.domain_end(),
            });
        }
        let pos = self
            .knots
            .partition_point(|&(i, _)| self.times[i] <= t)
            .saturating_sub(1);
        let (ia, ja) = self.knots[pos];
        if t == self.times[ia] {
            return Ok(self.times[ja]);
        }
        let (ib, jb) = self.knots[pos + 1];
        let (ta, tb) = (self.times[ia], self.times[ib]);
        let (ya, yb) = (self.times[ja], self.times[jb]);
        let y = ya + (t - ta) / (tb - ta) * (yb - ya);
        Ok(y.clamp(ya, yb))
    }

    /// Per-node images `phi(t_i)` on the warp's own grid.
    pub fn node_images(&self) -> Vec<f64> {
        self.times
            .iter()
            .map(|&t| self.phi(t).expect("node inside domain"))
            .collect()
    }
}

fn require_uniform_common_grid<V: AlgebraElement>(
    q1: &AlgebraSignal<V>,
    q2: &AlgebraSignal<V>,
) -> Result<f64> {
    if q1.grid() != q2.grid() {
        return Err(Error::GridMismatch);
    }
    if !q1.grid().is_uniform(UNIFORM_TOL) {
        return Err(Error::NonUniformGrid);
    }
    Ok((q1.grid().end() - q1.grid().start()) / q1.grid().segments() as f64)
}

/// Cost of warping `dj` segments of `q2` starting at `j` onto `di`
/// segments of `q1` starting at `i`: the left-endpoint discrepancy with
/// the square-root slope factor, weighted by the covered length `di * h`.
fn step_cost<V: AlgebraElement>(
    q1: &AlgebraSignal<V>,
    q2: &AlgebraSignal<V>,
    h: f64,
    i: usize,
    j: usize,
    di: usize,
    dj: usize,
) -> f64 {
    let slope = dj as f64 / di as f64;
    let d = q1.values()[i] - q2.values()[j] * slope.sqrt();
    d.inner(&d) * di as f64 * h
}

/// Finds the monotone lattice warp minimizing the summed step cost between
/// two signals on a common uniform grid. Exact over all admissible paths;
/// ties prefer steps nearest the diagonal, then smaller `di`.
pub fn dp_reparametrize<V: AlgebraElement>(
    q1: &AlgebraSignal<V>,
    q2: &AlgebraSignal<V>,
    slopes: &SlopeSet,
) -> Result<Warp> {
    let h = require_uniform_common_grid(q1, q2)?;
    let n = q1.len();
    if n == 0 {
        return Ok(Warp::identity(q1.grid()));
    }

    let width = n + 1;
    let mut cost = vec![f64::INFINITY; width * width];
    let mut from = vec![usize::MAX; width * width];
    cost[0] = 0.0;

    for i in 0..=n {
        for j in 0..=n {
            if i == 0 && j == 0 {
                continue;
            }
            let cell = i * width + j;
            // Steps are in preference order; strict improvement required,
            // so ties resolve to the earliest (most diagonal) step.
            for (s, &(di, dj)) in slopes.steps().iter().enumerate() {
                if di > i || dj > j {
                    continue;
                }
                let prev = (i - di) * width + (j - dj);
                if cost[prev].is_infinite() {
                    continue;
                }
                let c = cost[prev] + step_cost(q1, q2, h, i - di, j - dj, di, dj);
                if c < cost[cell] {
                    cost[cell] = c;
                    from[cell] = s;
                }
            }
        }
    }

    let goal = n * width + n;
    if cost[goal].is_infinite() {
        return Err(Error::NoAdmissiblePath);
    }

    let mut knots = vec![(n, n)];
    let (mut i, mut j) = (n, n);
    while i > 0 || j > 0 {
        let (di, dj) = slopes.steps()[from[i * width + j]];
        i -= di;
        j -= dj;
        knots.push((i, j));
    }
    knots.reverse();
    Ok(Warp::new(q1.grid().nodes().to_vec(), knots))
}

/// Total path cost of a warp under the DP cost model; exposed so callers
/// can compare against the optimum or report registration quality.
pub fn warp_cost<V: AlgebraElement>(
    q1: &AlgebraSignal<V>,
    q2: &AlgebraSignal<V>,
    warp: &Warp,
) -> Result<f64> {
    let h = require_uniform_common_grid(q1, q2)?;
    let mut total = 0.0;
    for w in warp.knots().windows(2) {
        let (i, j) = w[0];
        let (di, dj) = (w[1].0 - i, w[1].1 - j);
        total += step_cost(q1, q2, h, i, j, di, dj);
    }
    Ok(total)
}

/// Reparametrizes a curve: samples its interpolant at `phi(t_i)`, keeping
/// the original grid.
pub fn apply_warp<P: CurvePoint>(
    curve: &DiscreteCurve<P>,
    warp: &Warp,
) -> Result<DiscreteCurve<P>> {
    let samples = curve
        .grid()
        .nodes()
        .iter()
        .map(|&t| curve.eval(warp.phi(t)?))
        .collect::<Result<Vec<_>>>()?;
    DiscreteCurve::new(curve.grid().clone(), samples)
}

/// Reparametrizes a signal directly: `(q o phi) * sqrt(phi')` evaluated
/// segmentwise at left endpoints. This is the square root velocity action
/// of a warp, the signal-level counterpart of [`apply_warp`] followed by a
/// re-transform.
pub fn warp_signal<V: AlgebraElement>(
    q: &AlgebraSignal<V>,
    warp: &Warp,
) -> Result<AlgebraSignal<V>> {
    let grid = q.grid().clone();
    let mut values = Vec::with_capacity(grid.segments());
    for i in 0..grid.segments() {
        let a = warp.phi(grid.nodes()[i])?;
        let b = warp.phi(grid.nodes()[i + 1])?;
        let slope = (b - a) / grid.dt(i);
        values.push(q.value_at(a)? * slope.sqrt());
    }
    AlgebraSignal::new(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::so3::{hat, Vec3};
    use crate::srvt::l2_distance;
    use crate::synth;

    #[test]
    fn slope_set_rejects_empty_and_zero_components() {
        assert!(matches!(SlopeSet::new(vec![]), Err(Error::EmptySlopeSet)));
        assert!(matches!(
            SlopeSet::new(vec![(1, 0)]),
            Err(Error::InvalidSlope { .. })
        ));
    }

    #[test]
    fn slope_set_orders_by_diagonal_preference() {
        let s = SlopeSet::default();
        assert_eq!(s.steps()[0], (1, 1));
        assert!(s.steps().contains(&(2, 3)));
    }

    #[test]
    fn identity_signal_gives_identity_warp_with_zero_cost() {
        let mut rng = synth::rng(51);
        let q = synth::skew_signal(&mut rng, &TimeGrid::uniform_unit(12));
        let w = dp_reparametrize(&q, &q, &SlopeSet::default()).unwrap();
        assert!(w.is_identity());
        assert_eq!(warp_cost(&q, &q, &w).unwrap(), 0.0);
    }

    #[test]
    fn dp_recovers_known_lattice_warp() {
        // Build a warp with slope-2 and slope-1/2 stretches, warp a smooth
        // signal with the square-root scaling, and ask the DP to undo it.
        let grid = TimeGrid::uniform_unit(16);
        let values = grid.nodes()[..16]
            .iter()
            .map(|&t| hat(Vec3::new((0.6 * t).cos(), (0.6 * t).sin(), 0.4 + 0.1 * t)))
            .collect();
        let q1 = AlgebraSignal::new(grid.clone(), values).unwrap();
        let knots = vec![
            (0, 0),
            (1, 2),
            (2, 4),
            (3, 6),
            (4, 8),
            (5, 9),
            (6, 10),
            (7, 11),
            (8, 12),
            (10, 13),
            (12, 14),
            (14, 15),
            (16, 16),
        ];
        let w_true = Warp::new(grid.nodes().to_vec(), knots);
        let q2 = warp_signal(&q1, &w_true).unwrap();

        let pre = l2_distance(&q1, &q2).unwrap();
        let w = dp_reparametrize(&q1, &q2, &SlopeSet::default()).unwrap();
        let post = l2_distance(&q1, &warp_signal(&q2, &w).unwrap()).unwrap();
        assert!(
            post < 0.1 * pre,
            "post-warp distance {post} not below 10% of pre-warp {pre}"
        );
    }

    /// Exhaustive enumeration of all admissible lattice paths.
    fn brute_force_cost(
        q1: &AlgebraSignal<crate::so3::SkewMatrix>,
        q2: &AlgebraSignal<crate::so3::SkewMatrix>,
        slopes: &SlopeSet,
    ) -> f64 {
        let h = (q1.grid().end() - q1.grid().start()) / q1.grid().segments() as f64;
        let n = q1.len();
        #[allow(clippy::too_many_arguments)]
        fn rec(
            q1: &AlgebraSignal<crate::so3::SkewMatrix>,
            q2: &AlgebraSignal<crate::so3::SkewMatrix>,
            slopes: &SlopeSet,
            h: f64,
            n: usize,
            i: usize,
            j: usize,
            acc: f64,
            best: &mut f64,
        ) {
            if i == n && j == n {
                if acc < *best {
                    *best = acc;
                }
                return;
            }
            for &(di, dj) in slopes.steps() {
                if i + di <= n && j + dj <= n {
                    let c = acc + super::step_cost(q1, q2, h, i, j, di, dj);
                    rec(q1, q2, slopes, h, n, i + di, j + dj, c, best);
                }
            }
        }
        let mut best = f64::INFINITY;
        rec(q1, q2, slopes, h, n, 0, 0, 0.0, &mut best);
        best
    }

    #[test]
    fn dp_matches_brute_force_on_small_grids() {
        let slopes = SlopeSet::new(vec![(1, 1), (1, 2), (2, 1)]).unwrap();
        let mut rng = synth::rng(53);
        for _ in 0..25 {
            let grid = TimeGrid::uniform_unit(7);
            let q1 = synth::skew_signal(&mut rng, &grid);
            let q2 = synth::skew_signal(&mut rng, &grid);
            let w = dp_reparametrize(&q1, &q2, &slopes).unwrap();
            let dp = warp_cost(&q1, &q2, &w).unwrap();
            let brute = brute_force_cost(&q1, &q2, &slopes);
            assert!(
                (dp - brute).abs() <= 1e-12 * (1.0 + brute),
                "dp {dp} vs brute {brute}"
            );
        }
    }

    #[test]
    fn dp_never_worsens_the_signal_distance() {
        let mut rng = synth::rng(54);
        for _ in 0..20 {
            let grid = TimeGrid::uniform_unit(10);
            let q1 = synth::skew_signal(&mut rng, &grid);
            let q2 = synth::skew_signal(&mut rng, &grid);
            let pre = l2_distance(&q1, &q2).unwrap();
            let w = dp_reparametrize(&q1, &q2, &SlopeSet::default()).unwrap();
            let post = l2_distance(&q1, &warp_signal(&q2, &w).unwrap()).unwrap();
            assert!(post * post <= pre * pre + 1e-9);
        }
    }

    #[test]
    fn dp_warp_invariants_reverified() {
        let mut rng = synth::rng(55);
        let grid = TimeGrid::uniform_unit(14);
        let q1 = synth::skew_signal(&mut rng, &grid);
        let q2 = synth::skew_signal(&mut rng, &grid);
        let w = dp_reparametrize(&q1, &q2, &SlopeSet::default()).unwrap();
        assert_eq!(*w.knots().first().unwrap(), (0, 0));
        assert_eq!(*w.knots().last().unwrap(), (14, 14));
        for pair in w.knots().windows(2) {
            assert!(pair[1].0 > pair[0].0);
            assert!(pair[1].1 > pair[0].1);
        }
    }

    #[test]
    fn dp_rejects_mismatched_and_nonuniform_grids() {
        let mut rng = synth::rng(56);
        let a = synth::skew_signal(&mut rng, &TimeGrid::uniform_unit(4));
        let b = synth::skew_signal(&mut rng, &TimeGrid::uniform_unit(5));
        assert!(matches!(
            dp_reparametrize(&a, &b, &SlopeSet::default()),
            Err(Error::GridMismatch)
        ));
        let grid = TimeGrid::new(vec![0.0, 0.1, 0.5, 1.0]).unwrap();
        let c = synth::skew_signal(&mut rng, &grid);
        assert!(matches!(
            dp_reparametrize(&c, &c, &SlopeSet::default()),
            Err(Error::NonUniformGrid)
        ));
    }

    #[test]
    fn apply_identity_warp_is_identity() {
        let mut rng = synth::rng(57);
        let c = synth::sphere_curve(&mut rng, 9);
        let w = Warp::identity(c.grid());
        let warped = apply_warp(&c, &w).unwrap();
        assert_eq!(c.samples(), warped.samples());
    }

    #[test]
    fn apply_warp_fixes_endpoints() {
        let mut rng = synth::rng(58);
        let c = synth::so3_curve(&mut rng, 16);
        let q = crate::srvt::srvt_group(&c).unwrap();
        let q2 = synth::skew_signal(&mut rng, c.grid());
        let w = dp_reparametrize(&q, &q2, &SlopeSet::default()).unwrap();
        let warped = apply_warp(&c, &w).unwrap();
        assert_eq!(warped.samples()[0], c.samples()[0]);
        assert_eq!(warped.samples().last(), c.samples().last());
    }

    #[test]
    fn warp_signal_scales_by_sqrt_slope() {
        // A two-piece warp with slopes 2 then 2/3 on a curve sampled so the
        // warped nodes are exactly representable.
        let grid = TimeGrid::new(vec![0.0, 0.25, 1.0]).unwrap();
        let values = vec![hat(Vec3::new(0.0, 0.0, 1.0)), hat(Vec3::new(0.0, 1.0, 0.0))];
        let q = AlgebraSignal::new(grid.clone(), values).unwrap();
        let w = Warp::new(grid.nodes().to_vec(), vec![(0, 0), (1, 1), (2, 2)]);
        // Identity knots: warped signal equals the original.
        let same = warp_signal(&q, &w).unwrap();
        assert_eq!(same.values(), q.values());
    }

    /// Smooth analytic sphere curve for refinement studies.
    fn smooth_sphere_samples(n: usize) -> Vec<crate::curve::UnitVector> {
        (0..=n)
            .map(|k| {
                let t = k as f64 / n as f64;
                let lat = 0.7 * (std::f64::consts::PI * t).sin();
                let lon = 2.0 * t;
                crate::curve::UnitVector::try_new(Vec3::new(
                    lat.cos() * lon.cos(),
                    lat.cos() * lon.sin(),
                    lat.sin(),
                ))
                .unwrap()
            })
            .collect()
    }

    #[test]
    fn curve_warp_consistent_with_signal_warp_under_refinement() {
        // srvt(apply_warp(c, w)) approaches warp_signal(srvt(c), w) as the
        // grid refines; check the error halves from N=16 to N=64.
        let mut errors = Vec::new();
        for n in [16usize, 64] {
            let c =
                DiscreteCurve::new(TimeGrid::uniform_unit(n), smooth_sphere_samples(n)).unwrap();
            let q = crate::srvt::srvt_sphere(&c).unwrap();
            // A mild smooth-ish lattice warp: slope 2 then 1 then 1/2.
            let quarter = n / 4;
            let mut knots = Vec::new();
            for k in 0..=quarter {
                knots.push((k, 2 * k));
            }
            for k in 1..=(n / 2 - quarter) {
                knots.push((quarter + k, 2 * quarter + k));
            }
            let (mut i, mut j) = *knots.last().unwrap();
            while i < n {
                i += 2;
                j += 1;
                knots.push((i, j));
            }
            let w = Warp::new(c.grid().nodes().to_vec(), knots);
            let via_curve = crate::srvt::srvt_sphere(&apply_warp(&c, &w).unwrap()).unwrap();
            let via_signal = warp_signal(&q, &w).unwrap();
            errors.push(l2_distance(&via_curve, &via_signal).unwrap());
        }
        assert!(
            errors[1] < errors[0] * 0.5,
            "refinement did not shrink the gap: {errors:?}"
        );
    }
}
