use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::YamabeError;

/// Real scalar field on an N×N periodic grid, row-major with x varying along rows.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    n: usize,
    values: Vec<f64>,
}

impl GridField {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self, YamabeError> {
        if values.len() != n * n {
            return Err(YamabeError::ShapeMismatch { expected: n * n, found: values.len() });
        }
        Ok(GridField { n, values })
    }

    pub fn constant(n: usize, c: f64) -> Self {
        GridField { n, values: vec![c; n * n] }
    }

    pub fn resolution(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        GridField { n: self.n, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self, YamabeError> {
        if self.n != other.n {
            return Err(YamabeError::ShapeMismatch { expected: self.n * self.n, found: other.n * other.n });
        }
        Ok(GridField { n: self.n, values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect() })
    }

    /// max |self − other| after subtracting each field's mean.
    pub fn distance_mod_constants(&self, other: &Self) -> Result<f64, YamabeError> {
        let (ma, mb) = (self.mean(), other.mean());
        Ok(self.zip(other, |a, b| (a - ma) - (b - mb))?.max_abs())
    }
}

/// The unit-square flat torus sampled on an N×N grid with spacing 1/N.
#[derive(Clone)]
pub struct PeriodicGrid {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    /// −|2πk|² per Fourier mode, row-major.
    symbol: Vec<f64>,
}

impl std::fmt::Debug for PeriodicGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PeriodicGrid").field("n", &self.n).finish()
    }
}

impl PeriodicGrid {
    pub fn new(n: usize) -> Result<Self, YamabeError> {
        if n < 4 {
            return Err(YamabeError::InvalidGrid(n));
        }
        let mut planner = FftPlanner::new();
        let wave = |k: usize| {
            let k = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
            2.0 * PI * k
        };
        let mut symbol = Vec::with_capacity(n * n);
        for row in 0..n {
            for col in 0..n {
                symbol.push(-(wave(row).powi(2) + wave(col).powi(2)));
            }
        }
        Ok(PeriodicGrid { n, forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n), symbol })
    }

    pub fn resolution(&self) -> usize {
        self.n
    }

    /// Samples `f(x, y)` at x = col/N, y = row/N.
    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> GridField {
        let n = self.n;
        let h = 1.0 / n as f64;
        let values = (0..n * n).map(|idx| f((idx % n) as f64 * h, (idx / n) as f64 * h)).collect();
        GridField { n, values }
    }

    fn check(&self, field: &GridField) -> Result<(), YamabeError> {
        if field.n != self.n {
            return Err(YamabeError::ShapeMismatch { expected: self.n * self.n, found: field.values.len() });
        }
        Ok(())
    }

    fn transform_2d(&self, data: &mut [Complex<f64>], fft: &Arc<dyn Fft<f64>>) {
        let n = self.n;
        fft.process(data);
        let mut column = vec![Complex::new(0.0, 0.0); n];
        for col in 0..n {
            for row in 0..n {
                column[row] = data[row * n + col];
            }
            fft.process(&mut column);
            for row in 0..n {
                data[row * n + col] = column[row];
            }
        }
    }

    /// Applies the Fourier multiplier `m(symbol)` to a field.
    fn multiplier(&self, field: &GridField, m: impl Fn(f64) -> f64) -> GridField {
        let mut data: Vec<Complex<f64>> = field.values.iter().map(|&v| Complex::new(v, 0.0)).collect();
        self.transform_2d(&mut data, &self.forward);
        for (c, &k2) in data.iter_mut().zip(&self.symbol) {
            *c *= m(k2);
        }
        self.transform_2d(&mut data, &self.inverse);
        let scale = 1.0 / (self.n * self.n) as f64;
        GridField { n: self.n, values: data.iter().map(|c| c.re * scale).collect() }
    }

    /// Spectral Laplacian ∂²ₓ + ∂²ᵧ.
    pub fn laplacian(&self, field: &GridField) -> Result<GridField, YamabeError> {
        self.check(field)?;
        Ok(self.multiplier(field, |k2| k2))
    }

    /// Mean-zero solution u of Δu = g − mean(g).
    pub fn inverse_laplacian(&self, g: &GridField) -> Result<GridField, YamabeError> {
        self.check(g)?;
        Ok(self.multiplier(g, |k2| if k2 == 0.0 { 0.0 } else { 1.0 / k2 }))
    }

    /// Solves (−Δ + c) u = g for a constant c > 0.
    pub(crate) fn shifted_inverse(&self, g: &GridField, c: f64) -> GridField {
        self.multiplier(g, |k2| 1.0 / (c - k2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplacian_of_sine() {
        let grid = PeriodicGrid::new(32).unwrap();
        let f = grid.sample(|x, _| (2.0 * PI * x).sin());
        let lap = grid.laplacian(&f).unwrap();
        let expected = f.map(|v| -4.0 * PI * PI * v);
        assert!(lap.zip(&expected, |a, b| a - b).unwrap().max_abs() < 1e-10);
    }

    #[test]
    fn laplacian_annihilates_constants() {
        let grid = PeriodicGrid::new(16).unwrap();
        assert!(grid.laplacian(&GridField::constant(16, 3.5)).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn inverse_laplacian_round_trip() {
        let grid = PeriodicGrid::new(16).unwrap();
        let f = grid.sample(|x, y| (2.0 * PI * x).cos() * (4.0 * PI * y).sin());
        let back = grid.inverse_laplacian(&grid.laplacian(&f).unwrap()).unwrap();
        assert!(back.distance_mod_constants(&f).unwrap() < 1e-12);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let grid = PeriodicGrid::new(8).unwrap();
        assert!(matches!(grid.laplacian(&GridField::constant(4, 1.0)), Err(YamabeError::ShapeMismatch { .. })));
        assert!(matches!(GridField::new(3, vec![0.0; 8]), Err(YamabeError::ShapeMismatch { .. })));
    }
}
