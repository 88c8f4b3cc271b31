//! The cosine change of variables between [0,1] and [-1,1], and the geometric
//! rate ceiling E(T) it induces.

use crate::error::{FEError, Result};
use std::f64::consts::PI;

/// Excursions of the arccos argument beyond [-1,1] up to this size are rounding
/// noise and get clamped; anything larger is a genuine domain violation.
const ARCCOS_CLAMP: f64 = 1e-14;

/// The bijection m(x) = 2(cos(pi x/T) - cos(pi/T))/(1 - cos(pi/T)) - 1 from
/// [0,1] onto [-1,1], strictly decreasing, with m(0) = 1 and m(1) = -1.
#[derive(Debug, Clone, Copy)]
pub struct ExtensionMap {
    /// Extension parameter T > 1.
    pub t: f64,
}

impl ExtensionMap {
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() || t <= 1.0 {
            return Err(FEError::Domain(format!(
                "extension map requires T > 1, got {t}"
            )));
        }
        Ok(Self { t })
    }

    /// Evaluates m(x) for x in [0,1].
    pub fn forward(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(FEError::Domain(format!(
                "map_forward argument must lie in [0,1], got {x}"
            )));
        }
        let c1 = (PI / self.t).cos();
        Ok(2.0 * ((PI * x / self.t).cos() - c1) / (1.0 - c1) - 1.0)
    }

    /// Evaluates m^{-1}(z) = (T/pi) arccos(cos(pi/T) + (z+1)(1-cos(pi/T))/2)
    /// for z in [-1,1].
    pub fn inverse(&self, z: f64) -> Result<f64> {
        if !(-1.0..=1.0).contains(&z) {
            return Err(FEError::Domain(format!(
                "map_inverse argument must lie in [-1,1], got {z}"
            )));
        }
        let c1 = (PI / self.t).cos();
        let u = c1 + (z + 1.0) * (1.0 - c1) / 2.0;
        if u > 1.0 + ARCCOS_CLAMP || u < -1.0 - ARCCOS_CLAMP {
            return Err(FEError::Domain(format!(
                "arccos argument {u} outside [-1,1] beyond rounding tolerance"
            )));
        }
        Ok(self.t / PI * u.clamp(-1.0, 1.0).acos())
    }
}

/// Maximal geometric convergence rate E(T) = cot^2(pi/(4T)); strictly
/// increasing in T, approaching 1 as T -> 1+.
pub fn max_geometric_rate(t: f64) -> Result<f64> {
    if !t.is_finite() || t <= 1.0 {
        return Err(FEError::Domain(format!(
            "geometric rate requires T > 1, got {t}"
        )));
    }
    let angle = PI / (4.0 * t);
    let cot = angle.cos() / angle.sin();
    Ok(cot * cot)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_endpoints() {
        let map = ExtensionMap::new(2.0).unwrap();
        assert!((map.forward(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((map.forward(1.0).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn forward_halfway_at_t2() {
        // cos(pi/2) = 0 shifts the denominator to exactly 1.
        let map = ExtensionMap::new(2.0).unwrap();
        let expected = std::f64::consts::SQRT_2 - 1.0;
        assert!((map.forward(0.5).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn forward_strictly_decreasing() {
        let map = ExtensionMap::new(3.0).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..=100 {
            let v = map.forward(i as f64 / 100.0).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn inverse_endpoints_and_midpoint() {
        let map = ExtensionMap::new(2.0).unwrap();
        assert!(map.inverse(1.0).unwrap().abs() < 1e-15);
        assert!((map.inverse(-1.0).unwrap() - 1.0).abs() < 1e-15);
        let z = std::f64::consts::SQRT_2 - 1.0;
        assert!((map.inverse(z).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn round_trip_on_uniform_samples() {
        for &t in &[1.125, 1.5, 2.0, 4.0, 6.0] {
            let map = ExtensionMap::new(t).unwrap();
            for i in 0..=1000 {
                let z = -1.0 + 2.0 * i as f64 / 1000.0;
                let x = map.inverse(z).unwrap();
                assert!((0.0..=1.0).contains(&x));
                assert!(
                    (map.forward(x).unwrap() - z).abs() < 1e-12,
                    "round trip failed at T={t}, z={z}"
                );
            }
        }
    }

    #[test]
    fn rejects_out_of_domain_arguments() {
        let map = ExtensionMap::new(2.0).unwrap();
        assert!(map.forward(-0.1).is_err());
        assert!(map.forward(1.1).is_err());
        assert!(map.inverse(1.5).is_err());
        assert!(ExtensionMap::new(1.0).is_err());
    }

    #[test]
    fn geometric_rate_values() {
        // cot^2(pi/8) = 3 + 2 sqrt(2).
        let e2 = max_geometric_rate(2.0).unwrap();
        assert!((e2 - (3.0 + 2.0 * std::f64::consts::SQRT_2)).abs() < 1e-12);
        // Approaches cot^2(pi/4) = 1 from above as T -> 1+.
        let near_one = max_geometric_rate(1.0 + 1e-9).unwrap();
        assert!((near_one - 1.0).abs() < 1e-6);
        assert!(max_geometric_rate(4.0).unwrap() > e2);
        assert!(max_geometric_rate(1.0).is_err());
    }
}
