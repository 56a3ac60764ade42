//! Closed-form hyperbolic trigonometry: pants heights and boundary
//! distances, quasi-geodesic constants, corridor bounds, and the capping
//! arithmetic. These are formula evaluators in `f64`; nothing here feeds the
//! exact admissibility verdicts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::generators::{self, PlainGraph};
use crate::Error;

fn require_positive(name: &str, x: f64) -> Result<(), Error> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("{name} must be positive, got {x}")));
    }
    Ok(())
}

fn acosh_checked(x: f64) -> Result<f64, Error> {
    if x < 1.0 {
        return Err(Error::Domain(format!("acosh argument {x} < 1")));
    }
    Ok(x.acosh())
}

/// A pair of pants `P(l, kl, kl)` with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PantsSpec {
    pub waist: f64,
    pub multiplier: f64,
    pub l_prime: f64,
    pub height: f64,
}

/// Height of `P(l, kl, kl)` with respect to the waist of length `l`:
/// `cosh(l') = (cosh(l/2) cosh(kl/2) + cosh(kl/2)) / (sinh(l/2) sinh(kl/2))`
/// and `cosh(m/2) = sinh(kl/2) sinh(l')`.
pub fn pants_spec(l: f64, k: f64) -> Result<PantsSpec, Error> {
    require_positive("waist", l)?;
    require_positive("multiplier", k)?;
    let cosh_lp = ((l / 2.0).cosh() * (k * l / 2.0).cosh() + (k * l / 2.0).cosh())
        / ((l / 2.0).sinh() * (k * l / 2.0).sinh());
    let l_prime = acosh_checked(cosh_lp)?;
    let height = 2.0 * acosh_checked((k * l / 2.0).sinh() * l_prime.sinh())?;
    Ok(PantsSpec {
        waist: l,
        multiplier: k,
        l_prime,
        height,
    })
}

pub fn pants_height(l: f64, k: f64) -> Result<f64, Error> {
    Ok(pants_spec(l, k)?.height)
}

/// Height variant for equal boundaries `P(l, l, l)`, evaluated as printed:
/// `cosh(l') = (cosh^2(l/2) + cosh(l/2)) / sinh(l/2)` and
/// `cosh(m/2) = sinh(l/2) cosh(l')`. Exceeds `l/2` for every positive `l`.
pub fn pants_height_uniform(l: f64) -> Result<f64, Error> {
    require_positive("waist", l)?;
    let cosh_lp = ((l / 2.0).cosh().powi(2) + (l / 2.0).cosh()) / (l / 2.0).sinh();
    Ok(2.0 * acosh_checked((l / 2.0).sinh() * cosh_lp)?)
}

/// Distance between two distinct boundary components of `P(l, l, l)`:
/// `asinh(1 / (2 sinh(l/4)))`.
pub fn pants_boundary_distance(l: f64) -> Result<f64, Error> {
    require_positive("boundary length", l)?;
    Ok((1.0 / (2.0 * (l / 4.0).sinh())).asinh())
}

/// Multiplicative quasi-geodesic constant for two geodesic segments meeting
/// at interior angle `alpha`: `1/sin + 1/tan + 1` up to a right angle,
/// `1/sin + 1` beyond it. Continuous (value 2) at `pi/2`.
pub fn quasi_constant(alpha: f64) -> Result<f64, Error> {
    if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
        return Err(Error::Domain(format!(
            "angle must lie strictly between 0 and pi, got {alpha}"
        )));
    }
    if alpha <= std::f64::consts::FRAC_PI_2 {
        Ok(1.0 / alpha.sin() + 1.0 / alpha.tan() + 1.0)
    } else {
        Ok(1.0 / alpha.sin() + 1.0)
    }
}

/// Quasi-geodesic data for a corner angle. The additive constant promoting
/// a local quasi-geodesic to a global one has no closed form here and stays
/// unset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiParams {
    pub alpha: f64,
    pub k_alpha: f64,
    pub corridor_width: Option<f64>,
    pub epsilon: Option<f64>,
}

impl QuasiParams {
    pub fn new(alpha: f64) -> Result<Self, Error> {
        Ok(QuasiParams {
            alpha,
            k_alpha: quasi_constant(alpha)?,
            corridor_width: None,
            epsilon: None,
        })
    }
}

/// Bounds on the ratio of a crossing geodesic to the corridor length:
/// `1 <= ratio <= 1 + 2W / len`.
pub fn corridor_bounds(width: f64, corridor_length: f64) -> Result<(f64, f64), Error> {
    require_positive("corridor width", width)?;
    require_positive("corridor length", corridor_length)?;
    Ok((1.0, 1.0 + 2.0 * width / corridor_length))
}

/// Per-pants length gap used by the capping construction:
/// `a(l) = min( 2 asinh(1/(2 sinh(l/2))), acosh(1 + (1 + cosh(l/2)) / sinh^2(l)) )`.
pub fn capping_gap(l: f64) -> Result<f64, Error> {
    require_positive("boundary length", l)?;
    let first = 2.0 * (1.0 / (2.0 * (l / 2.0).sinh())).asinh();
    let second = (1.0 + (1.0 + (l / 2.0).cosh()) / l.sinh().powi(2)).acosh();
    Ok(first.min(second))
}

/// Girth required of the capping graph: `t(l) = floor(l / a(l)) + 1`, so
/// that `t * a(l) > l` always.
pub fn capping_girth(l: f64) -> Result<u64, Error> {
    let a = capping_gap(l)?;
    let q = l / a;
    if !(q.is_finite() && q < 1e15) {
        return Err(Error::BadParameter(format!(
            "girth target out of range for boundary length {l}"
        )));
    }
    Ok(q.floor() as u64 + 1)
}

/// Capping data for one boundary length.
#[derive(Debug, Clone)]
pub struct BoundaryPlan {
    pub boundary_length: f64,
    pub gap: f64,
    /// `t(l)` as defined by the gap.
    pub girth_required: u64,
    /// Girth actually requested from the generator (at least 4).
    pub girth_used: usize,
    pub graph: PlainGraph,
    pub graph_vertices: usize,
    /// Boundary triple of the pants at the terminal edge.
    pub terminal_pants: (f64, f64, f64),
    /// Boundary triple of every other pants, with its count.
    pub interior_pants: (f64, f64, f64),
    pub interior_pants_count: usize,
    /// The two lower bounds entering the gap: seams between equal pants and
    /// seams inside the mixed pants.
    pub seam_bound_equal: f64,
    pub seam_bound_mixed: f64,
}

/// A capping plan covering a list of boundary lengths.
#[derive(Debug, Clone)]
pub struct CappingPlan {
    pub boundaries: Vec<BoundaryPlan>,
}

/// For each boundary length `l`: compute the gap and required girth,
/// generate a uni-trivalent graph of at least that girth, and lay out the
/// pants inventory — `P(l, 2l, 2l)` at the terminal edge and `P(2l, 2l, 2l)`
/// at every other trivalent vertex.
pub fn cap_plan(boundary_lengths: &[f64]) -> Result<CappingPlan, Error> {
    let mut boundaries = Vec::with_capacity(boundary_lengths.len());
    for &l in boundary_lengths {
        require_positive("boundary length", l)?;
        let gap = capping_gap(l)?;
        let t = capping_girth(l)?;
        let girth_used: usize = (t.max(4))
            .try_into()
            .map_err(|_| Error::BadParameter(format!("girth {t} too large to generate")))?;
        let graph = generators::unitrivalent_girth(girth_used)?;
        let graph_vertices = graph.vertex_count();
        let trivalent_vertices = graph_vertices - 1;
        boundaries.push(BoundaryPlan {
            boundary_length: l,
            gap,
            girth_required: t,
            girth_used,
            graph,
            graph_vertices,
            terminal_pants: (l, 2.0 * l, 2.0 * l),
            interior_pants: (2.0 * l, 2.0 * l, 2.0 * l),
            interior_pants_count: trivalent_vertices - 1,
            seam_bound_equal: 2.0 * (1.0 / (2.0 * (l / 2.0).sinh())).asinh(),
            seam_bound_mixed: (1.0 + (1.0 + (l / 2.0).cosh()) / l.sinh().powi(2)).acosh(),
        });
    }
    Ok(CappingPlan { boundaries })
}

/// Distance in the upper half-plane:
/// `acosh(1 + |p - q|^2 / (2 y_p y_q))`.
pub fn hyp_distance(p: (f64, f64), q: (f64, f64)) -> Result<f64, Error> {
    require_positive("height of first point", p.1)?;
    require_positive("height of second point", q.1)?;
    let dx = p.0 - q.0;
    let dy = p.1 - q.1;
    Ok((1.0 + (dx * dx + dy * dy) / (2.0 * p.1 * q.1)).acosh())
}

/// Sampled check of the two-segment inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSegReport {
    pub samples: usize,
    pub k_alpha: f64,
    /// Minimum over samples of `k(alpha) * |BC| / (t1 + t2)` in the
    /// Euclidean comparison triangle.
    pub min_euclidean_ratio: f64,
    /// Same ratio with the corner realised at `i` in the upper half-plane.
    pub min_hyperbolic_ratio: f64,
}

impl TwoSegReport {
    pub fn min_ratio(&self) -> f64 {
        self.min_euclidean_ratio.min(self.min_hyperbolic_ratio)
    }
}

/// Sample segment lengths `t1 <= l1`, `t2 <= l2` meeting at angle `alpha`
/// and report the worst observed ratio of endpoint distance (scaled by
/// `k(alpha)`) to path length. The claim is that the ratio never drops
/// below 1; the infimum is approached as the angle closes with equal arms.
pub fn twoseg_quasi_check(
    l1: f64,
    l2: f64,
    alpha: f64,
    samples: usize,
) -> Result<TwoSegReport, Error> {
    require_positive("first segment bound", l1)?;
    require_positive("second segment bound", l2)?;
    if samples == 0 {
        return Err(Error::BadParameter("need at least one sample".into()));
    }
    let k = quasi_constant(alpha)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x2e7d_a3c1);
    let mut min_euc = f64::INFINITY;
    let mut min_hyp = f64::INFINITY;
    for _ in 0..samples {
        let t1 = l1 * (1.0 - rng.gen::<f64>());
        let t2 = l2 * (1.0 - rng.gen::<f64>());
        let euc = (t1 * t1 + t2 * t2 - 2.0 * t1 * t2 * alpha.cos()).sqrt();
        let ratio_e = k * euc / (t1 + t2);
        min_euc = min_euc.min(ratio_e);

        // Corner at i; one arm straight up, the other rotated by alpha.
        let b = (0.0, t1.exp());
        let c = rotate_about_i(alpha, (0.0, t2.exp()));
        let d = hyp_distance(b, c)?;
        let ratio_h = k * d / (t1 + t2);
        min_hyp = min_hyp.min(ratio_h);
    }
    Ok(TwoSegReport {
        samples,
        k_alpha: k,
        min_euclidean_ratio: min_euc,
        min_hyperbolic_ratio: min_hyp,
    })
}

/// Apply the rotation about `i` by angle `phi` to a point of the upper
/// half-plane: the Moebius map with matrix [cos(phi/2), sin(phi/2);
/// -sin(phi/2), cos(phi/2)].
fn rotate_about_i(phi: f64, z: (f64, f64)) -> (f64, f64) {
    let c = (phi / 2.0).cos();
    let s = (phi / 2.0).sin();
    // (c z + s) / (-s z + c) with z = x + iy.
    let (x, y) = z;
    let num = (c * x + s, c * y);
    let den = (-s * x + c, -s * y);
    let d2 = den.0 * den.0 + den.1 * den.1;
    (
        (num.0 * den.0 + num.1 * den.1) / d2,
        (num.1 * den.0 - num.0 * den.1) / d2,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn pants_height_reference_value() {
        // Independent high-precision evaluation of the printed formulas.
        let m = pants_height(2.0, 2.0).unwrap();
        assert!((m - 5.349468499013945).abs() < TOL, "got {m}");
    }

    #[test]
    fn pants_height_exceeds_waist_for_double() {
        for i in 5..=100 {
            let l = i as f64 / 10.0;
            let m = pants_height(l, 2.0).unwrap();
            assert!(m > l + TOL, "l = {l}, m = {m}");
        }
    }

    #[test]
    fn uniform_height_reference_and_bound() {
        let m = pants_height_uniform(2.0).unwrap();
        assert!((m - 4.087_318_651_636_2).abs() < TOL, "got {m}");
        for i in 5..=100 {
            let l = i as f64 / 10.0;
            let m = pants_height_uniform(l).unwrap();
            assert!(m > l / 2.0 + TOL);
        }
    }

    #[test]
    fn boundary_distance_monotone() {
        let d4 = pants_boundary_distance(4.0).unwrap();
        assert!((d4 - 0.413568450819278).abs() < TOL);
        let mut prev = f64::INFINITY;
        for i in 5..=100 {
            let d = pants_boundary_distance(i as f64 / 10.0).unwrap();
            assert!(d < prev);
            prev = d;
        }
    }

    #[test]
    fn doubled_distance_matches_gap_branch() {
        for i in 5..=50 {
            let l = i as f64 / 10.0;
            let via_distance = 2.0 * pants_boundary_distance(2.0 * l).unwrap();
            let branch = 2.0 * (1.0 / (2.0 * (l / 2.0).sinh())).asinh();
            assert!((via_distance - branch).abs() < 1e-12);
        }
    }

    #[test]
    fn quasi_constant_values() {
        let at_right = quasi_constant(std::f64::consts::FRAC_PI_2).unwrap();
        assert!((at_right - 2.0).abs() < 1e-12);
        let below = quasi_constant(std::f64::consts::FRAC_PI_2 - 1e-9).unwrap();
        let above = quasi_constant(std::f64::consts::FRAC_PI_2 + 1e-9).unwrap();
        assert!((below - above).abs() < 1e-7);
        let sixth = quasi_constant(std::f64::consts::PI / 6.0).unwrap();
        assert!((sixth - (3.0 + 3.0_f64.sqrt())).abs() < 1e-12);
        assert!(quasi_constant(0.0).is_err());
        assert!(quasi_constant(std::f64::consts::PI).is_err());
        // Diverges as the angle closes.
        assert!(quasi_constant(1e-6).unwrap() > 1e6);
    }

    #[test]
    fn corridor_bounds_shape() {
        let (lo, hi) = corridor_bounds(1.0, 4.0).unwrap();
        assert_eq!(lo, 1.0);
        assert!((hi - 1.5).abs() < 1e-15);
        let (_, far) = corridor_bounds(1.0, 1e9).unwrap();
        assert!(far - 1.0 < 1e-8);
    }

    #[test]
    fn capping_gap_reference() {
        let a = capping_gap(2.0).unwrap();
        assert!((a - 0.612213568218175).abs() < TOL, "got {a}");
        // Second branch is the smaller one at l = 2.
        let first = 2.0 * (1.0 / (2.0 * 1.0_f64.sinh())).asinh();
        assert!(a < first);
        for i in 5..=100 {
            let l = i as f64 / 10.0;
            assert!(capping_gap(l).unwrap() > 0.0);
        }
    }

    #[test]
    fn capping_girth_floor_identity() {
        assert_eq!(capping_girth(2.0).unwrap(), 4);
        for i in 5..=100 {
            let l = i as f64 / 10.0;
            let a = capping_gap(l).unwrap();
            let t = capping_girth(l).unwrap() as f64;
            assert!(t * a > l);
            assert!(l >= (t - 1.0) * a - 1e-12 * l.max(1.0));
        }
    }

    #[test]
    fn plan_layout() {
        let plan = cap_plan(&[2.0]).unwrap();
        assert_eq!(plan.boundaries.len(), 1);
        let b = &plan.boundaries[0];
        assert_eq!(b.girth_required, 4);
        assert_eq!(b.girth_used, 4);
        let g = b.girth_used;
        assert_eq!(b.graph_vertices, 2 * (g * g - 3 * g + 1));
        assert_eq!(b.terminal_pants, (2.0, 4.0, 4.0));
        assert_eq!(b.interior_pants, (4.0, 4.0, 4.0));
        assert_eq!(b.interior_pants_count, b.graph_vertices - 2);
    }

    #[test]
    fn hyp_distance_basics() {
        assert_eq!(hyp_distance((0.3, 2.0), (0.3, 2.0)).unwrap(), 0.0);
        let d = hyp_distance((0.0, 1.0), (0.0, std::f64::consts::E)).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        assert!(hyp_distance((0.0, 0.0), (0.0, 1.0)).is_err());
    }

    #[test]
    fn twoseg_ratios_stay_above_one() {
        for alpha in [
            std::f64::consts::PI / 6.0,
            std::f64::consts::PI / 3.0,
            std::f64::consts::FRAC_PI_2,
            2.0 * std::f64::consts::PI / 3.0,
        ] {
            let report = twoseg_quasi_check(3.0, 3.0, alpha, 2000).unwrap();
            assert!(
                report.min_ratio() >= 1.0 - 1e-9,
                "alpha = {alpha}, min = {}",
                report.min_ratio()
            );
        }
    }

    #[test]
    fn twoseg_right_angle_equal_arms() {
        // d = sqrt(2) t, k = 2: ratio = sqrt(2) exactly in the Euclidean
        // comparison; every sampled ratio must be at least that.
        let report = twoseg_quasi_check(1.0, 1.0, std::f64::consts::FRAC_PI_2, 500).unwrap();
        assert!(report.min_euclidean_ratio >= 2.0_f64.sqrt() - 1e-9);
    }
}
