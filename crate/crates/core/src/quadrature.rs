//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.
//!
//! The panel with the largest error estimate is bisected until the summed
//! estimate meets `max(abs_tol, rel_tol * |I|)`. Callers pass breakpoints at
//! known features (Fermi edges, near-poles) so that panels never straddle them.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

// Nodes and weights as tabulated in QUADPACK.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances and evaluation budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evals: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 0.0,
            max_evals: 300_000,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0) {
            return Err(Error::invalid("quadrature rel_tol must be > 0"));
        }
        if self.abs_tol.is_nan() || self.abs_tol < 0.0 {
            return Err(Error::invalid("quadrature abs_tol must be >= 0"));
        }
        if self.max_evals < 15 {
            return Err(Error::invalid("quadrature max_evals must be >= 15"));
        }
        Ok(())
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += pair * w;
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).norm();
    Panel { a, b, value, error }
}

/// Integrates `f` over `[points[0], points[last]]`, with the interior points
/// used as initial panel boundaries. `points` must be strictly increasing.
pub fn integrate<F>(f: F, points: &[f64], spec: &QuadratureSpec) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if points.len() < 2 {
        return Err(Error::invalid("integration needs at least two points"));
    }
    if points.iter().any(|p| !p.is_finite()) || points.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(
            "integration points must be finite and strictly increasing",
        ));
    }

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        heap.push(kronrod15(&f, w[0], w[1]));
        evaluations += 15;
    }

    loop {
        let (value, error) = totals(&heap);
        let target = spec.abs_tol.max(spec.rel_tol * value.norm());
        if error <= target {
            return Ok(Integral {
                value,
                error,
                evaluations,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if evaluations + 30 > spec.max_evals || !(mid > worst.a && mid < worst.b) {
            heap.push(worst);
            let (estimate, error) = totals(&heap);
            return Err(Error::QuadratureNonConvergence {
                estimate,
                error,
                evaluations,
            });
        }
        heap.push(kronrod15(&f, worst.a, mid));
        heap.push(kronrod15(&f, mid, worst.b));
        evaluations += 30;
    }
}

fn totals(heap: &BinaryHeap<Panel>) -> (Complex64, f64) {
    // Sum in position order so the total does not depend on heap layout.
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    panels
        .iter()
        .fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), p| {
            (v + p.value, e + p.error)
        })
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F>(f: F, points: &[f64], spec: &QuadratureSpec) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let r = integrate(|x| Complex64::new(f(x), 0.0), points, spec)?;
    Ok((r.value.re, r.error))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        // K15 is exact for polynomials up to degree 22.
        let (v, _) = integrate_real(
            |x| x.powi(7) - 3.0 * x * x,
            &[0.0, 2.0],
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((v - (256.0 / 8.0 - 8.0)).abs() < 1e-12);
    }

    #[test]
    fn lorentzian_peak_with_breakpoint() {
        let g = 1e-4;
        let f = |x: f64| g / ((x - 0.3).powi(2) + g * g);
        let r = integrate_real(f, &[0.0, 0.3, 1.0], &QuadratureSpec::default()).unwrap();
        let exact = (0.7 / g).atan() + (0.3 / g).atan();
        assert!((r.0 - exact).abs() < 1e-8 * exact, "{} vs {}", r.0, exact);
    }

    #[test]
    fn complex_oscillatory() {
        let r = integrate(
            |x| Complex64::new(0.0, 5.0 * x).exp(),
            &[0.0, PI],
            &QuadratureSpec::default(),
        )
        .unwrap();
        let exact = (Complex64::new(0.0, 5.0 * PI).exp() - 1.0) / Complex64::new(0.0, 5.0);
        assert!((r.value - exact).norm() < 1e-12);
    }

    #[test]
    fn zero_integrand_converges_immediately() {
        let r = integrate(
            |_| Complex64::new(0.0, 0.0),
            &[0.0, 1.0],
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
        assert_eq!(r.evaluations, 15);
    }

    #[test]
    fn budget_exhaustion_reports_partial_estimate() {
        let spec = QuadratureSpec {
            rel_tol: 1e-14,
            abs_tol: 0.0,
            max_evals: 45,
        };
        let err = integrate_real(|x| x.abs().sqrt(), &[-1.0, 1.3], &spec).unwrap_err();
        match err {
            Error::QuadratureNonConvergence {
                estimate,
                evaluations,
                ..
            } => {
                assert!(evaluations <= 45);
                assert!((estimate.re - (2.0 / 3.0) * (1.0 + 1.3f64.powf(1.5))).abs() < 1e-2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_points() {
        assert!(integrate_real(|x| x, &[1.0, 1.0], &QuadratureSpec::default()).is_err());
        assert!(integrate_real(|x| x, &[0.0], &QuadratureSpec::default()).is_err());
        assert!(integrate_real(|x| x, &[0.0, 1.0], &QuadratureSpec::with_rel_tol(0.0)).is_err());
    }
}
