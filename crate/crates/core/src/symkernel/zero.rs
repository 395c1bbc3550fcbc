//! Two-tier zero test: exact normalization first, seeded random probing second.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::coords::{CoordinateSystem, Point};
use super::expr::Expr;
use super::SymError;

/// Lower and upper edge of the sampling box for every coordinate.
pub const SAMPLE_BOX: (f64, f64) = (0.2, 1.2);
pub const DEFAULT_PROBES: usize = 12;
pub const DEFAULT_TOL: f64 = 1e-8;
/// Redraws allowed per probe after an evaluation domain error.
pub const MAX_RETRIES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroTest {
    pub probes: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for ZeroTest {
    fn default() -> Self {
        Self { probes: DEFAULT_PROBES, seed: 0, tol: DEFAULT_TOL }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ZeroVerdict {
    /// The normal form is the literal zero.
    Symbolic,
    /// The normal form is not literally zero but vanishes at every probe.
    Numeric { max_abs: f64 },
    /// Non-zero at `witness`.
    NonZero { witness: Point, value: f64 },
}

impl ZeroVerdict {
    pub fn is_zero(&self) -> bool {
        !matches!(self, ZeroVerdict::NonZero { .. })
    }

    pub fn residual(&self) -> f64 {
        match self {
            ZeroVerdict::Symbolic => 0.0,
            ZeroVerdict::Numeric { max_abs } => *max_abs,
            ZeroVerdict::NonZero { value, .. } => value.abs(),
        }
    }
}

/// Seeded stream of probe points in [`SAMPLE_BOX`].
pub struct ProbeSampler<'a> {
    rng: ChaCha8Rng,
    coords: &'a CoordinateSystem,
}

impl<'a> ProbeSampler<'a> {
    pub fn new(coords: &'a CoordinateSystem, seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), coords }
    }

    pub fn draw(&mut self) -> Point {
        let (lo, hi) = SAMPLE_BOX;
        let values = (0..self.coords.len()).map(|_| self.rng.random_range(lo..hi)).collect();
        Point::new(self.coords, values).expect("finite sample")
    }

    /// Draws a point where `f` succeeds, redrawing at most [`MAX_RETRIES`] times.
    pub fn draw_valid<T, F>(&mut self, mut f: F) -> Result<(Point, T), SymError>
    where
        F: FnMut(&Point) -> Result<T, SymError>,
    {
        let mut last = None;
        for _ in 0..=MAX_RETRIES {
            let p = self.draw();
            match f(&p) {
                Ok(v) => return Ok((p, v)),
                Err(e @ SymError::Domain { .. }) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(SymError::RetriesExhausted(Box::new(last.expect("at least one attempt"))))
    }
}

/// Normalized-zero check backed by numeric probing.
pub fn is_zero(e: &Expr, coords: &CoordinateSystem, test: &ZeroTest) -> Result<ZeroVerdict, SymError> {
    assert!(test.probes >= 1 && test.tol > 0.0, "probes >= 1 and tol > 0");
    let normal = e.normalize()?;
    if normal.is_zero_literal() {
        return Ok(ZeroVerdict::Symbolic);
    }
    let mut sampler = ProbeSampler::new(coords, test.seed);
    let mut max_abs: f64 = 0.0;
    for _ in 0..test.probes {
        let (point, value) = sampler.draw_valid(|p| normal.eval(p))?;
        if value.abs() >= test.tol {
            return Ok(ZeroVerdict::NonZero { witness: point, value });
        }
        max_abs = max_abs.max(value.abs());
    }
    Ok(ZeroVerdict::Numeric { max_abs })
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_expression;
    use super::*;

    fn check(text: &str) -> ZeroVerdict {
        let cs = CoordinateSystem::new(1, 2).unwrap();
        let e = parse_expression(text, &cs).unwrap();
        is_zero(&e, &cs, &ZeroTest::default()).unwrap()
    }

    #[test]
    fn symbolic_tier() {
        assert_eq!(check("sin(x1)^2 + cos(x1)^2 - 1"), ZeroVerdict::Symbolic);
        assert_eq!(check("x1 - x1"), ZeroVerdict::Symbolic);
    }

    #[test]
    fn numeric_tier_catches_identities_outside_the_normalizer() {
        // double-angle identity is not a rewrite rule
        let v = check("sin(2*x1) - 2*sin(x1)*cos(x1)");
        assert!(matches!(v, ZeroVerdict::Numeric { .. }), "{v:?}");
    }

    #[test]
    fn nonzero_reports_witness() {
        // every probe has x1 >= 0.2, so x1 - 1/1000 >= 0.199
        match check("x1 - 1/1000") {
            ZeroVerdict::NonZero { witness, value } => {
                let cs = CoordinateSystem::new(1, 2).unwrap();
                let x1 = witness.get(cs.x(0));
                assert!((0.2..1.2).contains(&x1));
                assert_eq!(value, x1 - 1e-3);
                assert!(value > 0.199);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sampler_is_reproducible_and_in_box() {
        let cs = CoordinateSystem::new(2, 2).unwrap();
        let a: Vec<Point> = {
            let mut s = ProbeSampler::new(&cs, 7);
            (0..5).map(|_| s.draw()).collect()
        };
        let mut s = ProbeSampler::new(&cs, 7);
        for p in &a {
            assert_eq!(*p, s.draw());
            assert!(p.values().iter().all(|v| (0.2..1.2).contains(v)));
        }
    }

    #[test]
    fn persistent_domain_errors_surface() {
        let cs = CoordinateSystem::new(1, 1).unwrap();
        let e = parse_expression("log(-x1) + x1", &cs).unwrap();
        let err = is_zero(&e, &cs, &ZeroTest::default()).unwrap_err();
        assert!(matches!(err, SymError::RetriesExhausted(_)));
    }
}
