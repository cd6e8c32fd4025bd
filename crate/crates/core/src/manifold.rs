//! Hyperboloid-model geometry in Minkowski ambient coordinates.
//!
//! Points carry `n` spatial coordinates followed by one time-like
//! coordinate; the model is the upper sheet of `<x,x>_M = -1` with the
//! inner product `sum_i u_i v_i - u_last v_last`.

/// How far off the sheet or off the tangent plane a vector may drift
/// before it counts as invalid.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-9;

/// Below this tangent norm the exponential map returns its base point.
pub const EXP_MAP_CUTOFF: f64 = 1e-12;

/// A point on the upper sheet, kept within [`MEMBERSHIP_TOLERANCE`] of the
/// hyperboloid by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperboloidPoint {
    coords: Vec<f64>,
}

impl HyperboloidPoint {
    /// The sheet's apex `(0, ..., 0, 1)`.
    pub fn origin(spatial_dim: usize) -> HyperboloidPoint {
        let mut coords = vec![0.0; spatial_dim + 1];
        coords[spatial_dim] = 1.0;
        HyperboloidPoint { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn spatial(&self) -> &[f64] {
        &self.coords[..self.coords.len() - 1]
    }

    pub fn time(&self) -> f64 {
        self.coords[self.coords.len() - 1]
    }

    pub fn spatial_dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Signed deviation `<x,x>_M + 1`; zero on the sheet.
    pub fn constraint_residual(&self) -> f64 {
        minkowski_inner(&self.coords, &self.coords) + 1.0
    }
}

/// Minkowski inner product with the time-like coordinate last.
pub fn minkowski_inner(u: &[f64], v: &[f64]) -> f64 {
    assert_eq!(u.len(), v.len(), "dimension mismatch");
    let last = u.len() - 1;
    let mut acc = 0.0;
    for i in 0..last {
        acc += u[i] * v[i];
    }
    acc - u[last] * v[last]
}

/// Ambient-space gradient from Euclidean partials: the time-like partial
/// flips sign.
pub fn ambient_gradient(partials: &[f64]) -> Vec<f64> {
    let mut g = partials.to_vec();
    let last = g.len() - 1;
    g[last] = -g[last];
    g
}

/// Project an ambient vector onto the tangent space at `p`:
/// `v = g + <p,g>_M p`.
pub fn tangent_project(p: &HyperboloidPoint, g: &[f64]) -> Vec<f64> {
    let inner = minkowski_inner(p.coords(), g);
    g.iter()
        .zip(p.coords())
        .map(|(&gi, &pi)| gi + inner * pi)
        .collect()
}

/// Follow the geodesic from `p` with initial velocity `v` for time
/// `|v|`: `cosh(|v|) p + sinh(|v|) v/|v|`, repaired back onto the sheet.
pub fn exp_map(p: &HyperboloidPoint, v: &[f64]) -> HyperboloidPoint {
    let vv = minkowski_inner(v, v);
    assert!(
        vv >= -MEMBERSHIP_TOLERANCE,
        "exp_map needs a spacelike tangent vector, got <v,v>_M = {vv}"
    );
    let norm = vv.max(0.0).sqrt();
    if norm < EXP_MAP_CUTOFF {
        return p.clone();
    }
    let (cosh, sinh) = (norm.cosh(), norm.sinh());
    let ambient: Vec<f64> = p
        .coords()
        .iter()
        .zip(v)
        .map(|(&pi, &vi)| cosh * pi + sinh * vi / norm)
        .collect();
    repair(&ambient)
}

/// Geodesic distance `arccosh(-<u,v>_M)`, with the argument clamped below
/// at 1 to absorb rounding on near-coincident points.
pub fn hyperbolic_distance(u: &HyperboloidPoint, v: &HyperboloidPoint) -> f64 {
    (-minkowski_inner(u.coords(), v.coords())).max(1.0).acosh()
}

/// Put an ambient vector exactly onto the upper sheet by recomputing its
/// time-like coordinate from the spatial ones.
pub fn repair(ambient: &[f64]) -> HyperboloidPoint {
    let last = ambient.len() - 1;
    let mut coords = ambient.to_vec();
    coords[last] = (1.0 + coords[..last].iter().map(|x| x * x).sum::<f64>()).sqrt();
    HyperboloidPoint { coords }
}

/// Projection onto the open unit ball: `y_i = x_i / (1 + x_last)`.
pub fn to_poincare(x: &HyperboloidPoint) -> Vec<f64> {
    let denom = 1.0 + x.time();
    x.spatial().iter().map(|&xi| xi / denom).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_point<R: Rng>(dim: usize, rng: &mut R) -> HyperboloidPoint {
        let spatial: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.5..1.5)).collect();
        let mut ambient = spatial;
        ambient.push(0.0);
        repair(&ambient)
    }

    pub(crate) fn random_tangent<R: Rng>(p: &HyperboloidPoint, rng: &mut R) -> Vec<f64> {
        let g: Vec<f64> = (0..p.coords().len())
            .map(|_| rng.random_range(-1.0..1.0))
            .collect();
        tangent_project(p, &g)
    }

    #[test]
    fn inner_examples() {
        assert_eq!(minkowski_inner(&[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0]), -1.0);
        assert_eq!(minkowski_inner(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]), 0.0);
        let s = 2.0f64.sqrt();
        assert_eq!(minkowski_inner(&[1.0, 0.0, s], &[0.0, 0.0, 1.0]), -s);
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn inner_rejects_mismatch() {
        minkowski_inner(&[1.0, 2.0], &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn ambient_gradient_flips_time_partial() {
        assert_eq!(ambient_gradient(&[1.0, 2.0, 3.0]), vec![1.0, 2.0, -3.0]);
        assert_eq!(ambient_gradient(&[0.0, 0.0, 0.0]), vec![0.0, 0.0, 0.0]);
        assert_eq!(ambient_gradient(&[0.0, 0.0, 5.0]), vec![0.0, 0.0, -5.0]);
    }

    #[test]
    fn tangent_project_is_idempotent_and_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let p = random_point(3, &mut rng);
            let g: Vec<f64> = (0..4).map(|_| rng.random_range(-2.0..2.0)).collect();
            let v = tangent_project(&p, &g);
            assert!(minkowski_inner(p.coords(), &v).abs() <= MEMBERSHIP_TOLERANCE);
            let vv = tangent_project(&p, &v);
            for (a, b) in v.iter().zip(&vv) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn tangent_project_annihilates_normal_direction() {
        let p = HyperboloidPoint::origin(2);
        let v = tangent_project(&p, p.coords());
        assert_eq!(v, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn exp_map_identity_and_closed_form() {
        let p = HyperboloidPoint::origin(2);
        assert_eq!(exp_map(&p, &[0.0, 0.0, 0.0]).coords(), p.coords());
        let t = 0.8f64;
        let q = exp_map(&p, &[t, 0.0, 0.0]);
        assert_relative_eq!(q.coords()[0], t.sinh(), max_relative = 1e-12);
        assert_relative_eq!(q.coords()[2], t.cosh(), max_relative = 1e-12);
    }

    #[test]
    fn exp_map_stays_on_sheet() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..500 {
            let p = random_point(4, &mut rng);
            let v = random_tangent(&p, &mut rng);
            let q = exp_map(&p, &v);
            assert!(q.constraint_residual().abs() <= MEMBERSHIP_TOLERANCE);
            assert!(q.time() >= 1.0);
        }
    }

    #[test]
    #[should_panic(expected = "spacelike tangent")]
    fn exp_map_rejects_timelike_vectors() {
        let p = HyperboloidPoint::origin(2);
        exp_map(&p, &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn distance_examples() {
        let p = HyperboloidPoint::origin(2);
        assert_eq!(hyperbolic_distance(&p, &p), 0.0);
        let q = repair(&[1.0f64.sinh(), 0.0, 0.0]);
        assert_relative_eq!(hyperbolic_distance(&p, &q), 1.0, max_relative = 1e-12);
        assert_relative_eq!(hyperbolic_distance(&q, &p), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn geodesic_speed() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let p = random_point(3, &mut rng);
            let v = random_tangent(&p, &mut rng);
            let norm = minkowski_inner(&v, &v).max(0.0).sqrt();
            if norm < 1e-6 {
                continue;
            }
            let t = rng.random_range(0.0..5.0);
            let unit: Vec<f64> = v.iter().map(|x| x * t / norm).collect();
            let q = exp_map(&p, &unit);
            assert_abs_diff_eq!(hyperbolic_distance(&p, &q), t, epsilon = 1e-6);
        }
    }

    #[test]
    fn triangle_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..500 {
            let a = random_point(3, &mut rng);
            let b = random_point(3, &mut rng);
            let c = random_point(3, &mut rng);
            let (ab, bc, ac) = (
                hyperbolic_distance(&a, &b),
                hyperbolic_distance(&b, &c),
                hyperbolic_distance(&a, &c),
            );
            assert!(ac <= ab + bc + 1e-9);
        }
    }

    #[test]
    fn repair_examples() {
        assert_eq!(repair(&[0.0, 0.0, 0.9]).coords(), &[0.0, 0.0, 1.0]);
        let r = repair(&[3.0, 4.0, -7.0]);
        assert_relative_eq!(r.time(), 26.0f64.sqrt(), max_relative = 1e-15);
        let rr = repair(r.coords());
        assert_eq!(r.coords(), rr.coords());
    }

    #[test]
    fn poincare_projection() {
        let origin = HyperboloidPoint::origin(2);
        assert_eq!(to_poincare(&origin), vec![0.0, 0.0]);
        let q = repair(&[1.0f64.sinh(), 0.0, 0.0]);
        let disk = to_poincare(&q);
        assert_relative_eq!(disk[0], 0.5f64.tanh(), max_relative = 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let p = random_point(2, &mut rng);
            let y = to_poincare(&p);
            let norm: f64 = y.iter().map(|x| x * x).sum::<f64>();
            assert!(norm < 1.0);
        }
    }
}
