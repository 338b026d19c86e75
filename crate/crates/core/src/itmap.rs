//! Double intermittency map, the classical chaotic LRD generator.
//!
//! ```text
//! x' = x + ((1-d)/d^m1) x^m1        0 < x <= d
//! x' = x - (d/(1-d)^m2) (1-x)^m2    d <  x <  1
//! ```
//!
//! Thresholding the orbit at `d` gives a binary series whose Hurst parameter
//! is `(3m-4)/(2m-2)` when `m1 = m2 = m`.
//!
//! Orbits spend long laminar phases next to the marginal fixed points at 0
//! and at 1. Near 1 a plain `f64` orbit stalls once `(1-x)^m2` drops below
//! half an ulp of 1, so the orbit is tracked as a distance to whichever
//! fixed point lies on its side of `d`. Distances are clamped below at [`ORBIT_EPS`].

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::rng::{stream_rng, uniform};
use crate::series::{BinarySeries, Generator};

pub const ORBIT_EPS: f64 = 1e-15;
/// Iterations discarded before the first emitted symbol.
pub const TRANSIENT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    d: f64,
    m1: f64,
    m2: f64,
    x0: Option<f64>,
    seed: u64,
}

impl MapParams {
    pub fn new(d: f64, m1: f64, m2: f64, seed: u64) -> Result<Self> {
        in_range("d", d, 0.0, 1.0)?;
        in_range("m1", m1, 1.5, 2.0)?;
        in_range("m2", m2, 1.5, 2.0)?;
        Ok(Self {
            d,
            m1,
            m2,
            x0: None,
            seed,
        })
    }

    /// Symmetric exponents tuned to the target Hurst parameter.
    pub fn for_hurst(d: f64, hurst: f64, seed: u64) -> Result<Self> {
        let m = hurst_to_m(hurst)?;
        Self::new(d, m, m, seed)
    }

    pub fn with_x0(self, x0: f64) -> Result<Self> {
        in_range("x0", x0, 0.0, 1.0)?;
        Ok(Self {
            x0: Some(x0),
            ..self
        })
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn m1(&self) -> f64 {
        self.m1
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }

    pub fn x0(&self) -> Option<f64> {
        self.x0
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Inverse of `H = (3m - 4) / (2m - 2)`.
pub fn hurst_to_m(hurst: f64) -> Result<f64> {
    in_range("hurst", hurst, 0.5, 1.0)?;
    Ok((4.0 - 2.0 * hurst) / (3.0 - 2.0 * hurst))
}

pub fn m_to_hurst(m: f64) -> Result<f64> {
    in_range("m", m, 1.5, 2.0)?;
    Ok((3.0 * m - 4.0) / (2.0 * m - 2.0))
}

fn in_range(name: &'static str, value: f64, low: f64, high: f64) -> Result<()> {
    if value > low && value < high {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            low,
            high,
        })
    }
}

/// Orbit point as a distance to the nearer marginal fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Point {
    /// `x = u`, `u <= d`.
    Left(f64),
    /// `x = 1 - v`, `v < 1 - d`.
    Right(f64),
}

#[derive(Debug, Clone, Copy)]
struct Map {
    d: f64,
    m1: f64,
    m2: f64,
    a: f64,
    b: f64,
}

impl Map {
    fn new(p: &MapParams) -> Self {
        Self {
            d: p.d,
            m1: p.m1,
            m2: p.m2,
            a: (1.0 - p.d) / p.d.powf(p.m1),
            b: p.d / (1.0 - p.d).powf(p.m2),
        }
    }

    fn point(&self, x: f64) -> Point {
        if x <= self.d {
            Point::Left(x.max(ORBIT_EPS))
        } else {
            Point::Right((1.0 - x).max(ORBIT_EPS))
        }
    }

    #[inline]
    fn symbol(&self, p: Point) -> u8 {
        match p {
            Point::Left(u) => (u >= self.d) as u8,
            Point::Right(_) => 1,
        }
    }

    #[inline]
    fn step(&self, p: Point) -> Point {
        let (d, e) = (self.d, 1.0 - self.d);
        match p {
            Point::Left(u) => {
                let next = u + self.a * u.powf(self.m1);
                if next <= d {
                    return Point::Left(next.max(ORBIT_EPS));
                }
                // 1 - next = w + (1-d)(1 - (u/d)^m1), both terms non-negative
                let w = d - u;
                let v = w - e * (self.m1 * (-w / d).ln_1p()).exp_m1();
                if v < e {
                    Point::Right(v.max(ORBIT_EPS))
                } else {
                    Point::Left(d)
                }
            }
            Point::Right(v) => {
                let next = v + self.b * v.powf(self.m2);
                if next < e {
                    return Point::Right(next.max(ORBIT_EPS));
                }
                let w = e - v;
                let u = w - d * (self.m2 * (-w / e).ln_1p()).exp_m1();
                Point::Left(u.clamp(ORBIT_EPS, d))
            }
        }
    }
}

/// One application of the map to `x` in `(0, 1)`. `x = d` takes the left
/// branch, and the image is kept inside `[ORBIT_EPS, 1 - ORBIT_EPS]`.
pub fn map_step(x: f64, params: &MapParams) -> f64 {
    let map = Map::new(params);
    match map.step(map.point(x)) {
        Point::Left(u) => u,
        Point::Right(v) => 1.0 - v,
    }
}

/// Reproducible stream of thresholded map symbols.
#[derive(Debug, Clone)]
pub struct MapSource {
    map: Map,
    point: Point,
}

impl MapSource {
    pub fn new(params: MapParams) -> Self {
        Self::with_stream(params, 0)
    }

    /// Starts from `params.x0()`, or from a uniform draw on `(0.1, 0.9)` taken
    /// from substream `stream` of the params' seed, then discards the
    /// transient.
    pub fn with_stream(params: MapParams, stream: u64) -> Self {
        let map = Map::new(&params);
        let x0 = params
            .x0
            .unwrap_or_else(|| 0.1 + 0.8 * uniform(&mut stream_rng(params.seed, stream)));
        let mut point = map.point(x0);
        for _ in 0..TRANSIENT {
            point = map.step(point);
        }
        Self { map, point }
    }

    /// Current orbit point as a value in `(0, 1)`.
    pub fn x(&self) -> f64 {
        match self.point {
            Point::Left(u) => u,
            Point::Right(v) => 1.0 - v,
        }
    }

    #[inline]
    pub fn next_symbol(&mut self) -> u8 {
        let y = self.map.symbol(self.point);
        self.point = self.map.step(self.point);
        y
    }

    pub fn fill(&mut self, out: &mut [u8]) {
        for slot in out {
            *slot = self.next_symbol();
        }
    }

    pub fn count_ones(&mut self, len: u64) -> u64 {
        (0..len).map(|_| self.next_symbol() as u64).sum()
    }

    pub fn block_sums(&mut self, block: u64, count: usize) -> Vec<f64> {
        (0..count).map(|_| self.count_ones(block) as f64).collect()
    }
}

pub fn map_generate(params: &MapParams, n: usize) -> Result<BinarySeries> {
    if n == 0 {
        return Err(Error::EmptySeries);
    }
    let mut symbols = vec![0u8; n];
    MapSource::new(*params).fill(&mut symbols);
    Ok(BinarySeries::from_trusted(symbols, None, Generator::ItMap))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hurst_m_round_trip() {
        assert!((hurst_to_m(0.75).unwrap() - 5.0 / 3.0).abs() < 1e-15);
        assert!((hurst_to_m(0.875).unwrap() - 1.8).abs() < 1e-15);
        for i in 0..9 {
            let h = 0.55 + 0.05 * i as f64;
            let m = hurst_to_m(h).unwrap();
            assert!(m > 1.5 && m < 2.0);
            assert!((m_to_hurst(m).unwrap() - h).abs() < 1e-12);
        }
        assert!(hurst_to_m(0.5).is_err());
        assert!(hurst_to_m(1.0).is_err());
    }

    #[test]
    fn step_matches_formula() {
        let p = MapParams::new(0.5, 1.8, 1.8, 0).unwrap();
        let x: f64 = 0.499;
        let expected = x + (0.5 / 0.5f64.powf(1.8)) * x.powf(1.8);
        assert!((map_step(x, &p) - expected).abs() < 1e-14);
        let x: f64 = 0.7;
        let expected = x - (0.5 / 0.5f64.powf(1.8)) * (1.0 - x).powf(1.8);
        assert!((map_step(x, &p) - expected).abs() < 1e-14);
        let x: f64 = 0.2;
        let expected = x + (0.5 / 0.5f64.powf(1.8)) * x.powf(1.8);
        assert!((map_step(x, &p) - expected).abs() < 1e-15);
    }

    #[test]
    fn escape_near_fixed_points() {
        let p = MapParams::new(0.3, 1.7, 1.9, 0).unwrap();
        let lo = map_step(ORBIT_EPS, &p);
        assert!(lo > ORBIT_EPS && lo - ORBIT_EPS < 1e-20);
        assert!(map_step(1.0 - ORBIT_EPS, &p) <= 1.0 - ORBIT_EPS);
        let map = Map::new(&p);
        match map.step(Point::Right(ORBIT_EPS)) {
            Point::Right(v) => assert!(v > ORBIT_EPS),
            other => panic!("left the right branch: {other:?}"),
        }
        // x = d goes through the left branch to 1, then is clamped
        assert_eq!(map_step(0.3, &p), 1.0 - ORBIT_EPS);
    }

    #[test]
    fn near_one_orbit_keeps_moving() {
        // a plain f64 orbit would stall here
        let p = MapParams::new(0.5, 1.8, 1.8, 0).unwrap();
        let map = Map::new(&p);
        let mut pt = Point::Right(1e-12);
        for _ in 0..1000 {
            let next = map.step(pt);
            assert_ne!(next, pt);
            pt = next;
        }
    }

    #[test]
    fn threshold_near_one_gives_zeros() {
        let p = MapParams::new(0.999, 1.6, 1.6, 4).unwrap();
        let s = map_generate(&p, 20_000).unwrap();
        assert!(s.mean() < 0.05);
    }

    #[test]
    fn reproducible() {
        let p = MapParams::for_hurst(0.5, 0.75, 11).unwrap();
        assert_eq!(
            map_generate(&p, 5000).unwrap(),
            map_generate(&p, 5000).unwrap()
        );
        let q = p.with_x0(0.3).unwrap();
        let mut a = MapSource::new(q);
        let mut b = MapSource::new(q.with_seed(999));
        assert_eq!(a.block_sums(10, 100), b.block_sums(10, 100));
    }

    #[test]
    fn parameter_validation() {
        assert!(MapParams::new(0.0, 1.6, 1.6, 0).is_err());
        assert!(MapParams::new(0.5, 1.5, 1.6, 0).is_err());
        assert!(MapParams::new(0.5, 1.6, 2.0, 0).is_err());
        let p = MapParams::new(0.5, 1.6, 1.6, 0).unwrap();
        assert!(p.with_x0(1.0).is_err());
    }
}
