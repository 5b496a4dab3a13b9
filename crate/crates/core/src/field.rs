//! Regular-grid scalar fields, their time series, and the synthetic Gauss8 generator.
//!
//! Values are stored x-fastest: `index = ix + nx * (iy + ny * iz)`. On disk a
//! volume is a bare stream of little-endian `f32`; in memory values are `f64`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Geometry of a regular 3D grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub dims: [usize; 3],
    pub origin: [f64; 3],
    pub spacing: [f64; 3],
}

impl Grid {
    pub fn new(dims: [usize; 3], origin: [f64; 3], spacing: [f64; 3]) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "grid dims must be positive, got {dims:?}"
            )));
        }
        if spacing.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "grid spacing must be positive, got {spacing:?}"
            )));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "grid origin must be finite, got {origin:?}"
            )));
        }
        Ok(Grid {
            dims,
            origin,
            spacing,
        })
    }

    /// Grid of the given dims spanning `[-1, 1]` along every axis.
    pub fn unit_cube(dims: [usize; 3]) -> Result<Self> {
        if dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidParameter(format!(
                "a [-1,1]^3 grid needs at least 2 samples per axis, got {dims:?}"
            )));
        }
        let spacing = dims.map(|d| 2.0 / (d - 1) as f64);
        Grid::new(dims, [-1.0; 3], spacing)
    }

    pub fn len(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        ix + self.dims[0] * (iy + self.dims[1] * iz)
    }

    #[inline]
    pub fn coords(&self, index: usize) -> [usize; 3] {
        let [nx, ny, _] = self.dims;
        [index % nx, (index / nx) % ny, index / (nx * ny)]
    }

    /// World-space position of a voxel.
    pub fn world(&self, index: usize) -> [f64; 3] {
        let c = self.coords(index);
        [0, 1, 2].map(|a| self.origin[a] + self.spacing[a] * c[a] as f64)
    }

    /// Calls `visit` for every voxel in the 26-neighborhood of `index`, clipped at the boundary.
    #[inline]
    pub fn for_each_neighbor(&self, index: usize, mut visit: impl FnMut(usize)) {
        let [nx, ny, nz] = self.dims;
        let [x, y, z] = self.coords(index);
        let (x0, x1) = (x.saturating_sub(1), (x + 1).min(nx - 1));
        let (y0, y1) = (y.saturating_sub(1), (y + 1).min(ny - 1));
        let (z0, z1) = (z.saturating_sub(1), (z + 1).min(nz - 1));
        for iz in z0..=z1 {
            for iy in y0..=y1 {
                let row = nx * (iy + ny * iz);
                for ix in x0..=x1 {
                    let n = row + ix;
                    if n != index {
                        visit(n);
                    }
                }
            }
        }
    }

    /// World-space extent `(max - min)` along each axis.
    pub fn extent(&self) -> [f64; 3] {
        [0, 1, 2].map(|a| self.spacing[a] * (self.dims[a] - 1) as f64)
    }
}

/// Samples of a scalar function on a regular grid at one time step.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField3D {
    pub grid: Grid,
    values: Vec<f64>,
    pub time_index: usize,
}

impl ScalarField3D {
    pub fn new(grid: Grid, values: Vec<f64>, time_index: usize) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::SizeMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if let Some(voxel) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                t: time_index,
                voxel,
            });
        }
        Ok(ScalarField3D {
            grid,
            values,
            time_index,
        })
    }

    /// Evaluates `f` at every voxel's world position.
    pub fn from_fn(grid: Grid, time_index: usize, f: impl Fn([f64; 3]) -> f64) -> Result<Self> {
        let values = (0..grid.len()).map(|i| f(grid.world(i))).collect();
        ScalarField3D::new(grid, values, time_index)
    }

    /// Convenience for small hand-written fields: a `values.len() x 1 x 1` line with unit spacing.
    pub fn line(values: &[f64]) -> Result<Self> {
        let grid = Grid::new([values.len(), 1, 1], [0.0; 3], [1.0; 3])?;
        ScalarField3D::new(grid, values.to_vec(), 1)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn value(&self, index: usize) -> f64 {
        self.values[index]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(min, max)` of the sampled values.
    pub fn range(&self) -> (f64, f64) {
        self.values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    pub fn read_raw(path: &Path, grid: Grid, time_index: usize) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        let expected = grid.len();
        if bytes.len() != expected * 4 {
            return Err(Error::SizeMismatch {
                expected,
                got: bytes.len() / 4,
            });
        }
        let values = bytes
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]) as f64)
            .collect();
        ScalarField3D::new(grid, values, time_index)
    }

    /// Writes the values as little-endian `f32`.
    pub fn write_raw(&self, path: &Path) -> Result<()> {
        let mut bytes = Vec::with_capacity(self.values.len() * 4);
        for &v in &self.values {
            bytes.extend_from_slice(&(v as f32).to_le_bytes());
        }
        fs::write(path, bytes).map_err(|e| Error::io(path, e))
    }
}

/// Contiguous sequence of fields sharing one grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSeries {
    fields: Vec<ScalarField3D>,
}

impl FieldSeries {
    pub fn new(fields: Vec<ScalarField3D>) -> Result<Self> {
        for pair in fields.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if a.grid.dims != b.grid.dims {
                return Err(Error::InconsistentDims(format!(
                    "step {} has {:?}, step {} has {:?}",
                    a.time_index, a.grid.dims, b.time_index, b.grid.dims
                )));
            }
            if a.grid != b.grid {
                return Err(Error::InconsistentDims(format!(
                    "origin/spacing differ between steps {} and {}",
                    a.time_index, b.time_index
                )));
            }
            if b.time_index != a.time_index + 1 {
                return Err(Error::InconsistentTime(format!(
                    "step {} follows step {}",
                    b.time_index, a.time_index
                )));
            }
        }
        Ok(FieldSeries { fields })
    }

    pub fn fields(&self) -> &[ScalarField3D] {
        &self.fields
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn grid(&self) -> Option<Grid> {
        self.fields.first().map(|f| f.grid)
    }

    /// Field at time index `t`, if present.
    pub fn at(&self, t: usize) -> Option<&ScalarField3D> {
        let first = self.fields.first()?.time_index;
        t.checked_sub(first).and_then(|i| self.fields.get(i))
    }

    /// Steps `p..=r`.
    pub fn window(&self, p: usize, r: usize) -> Result<FieldSeries> {
        let (Some(first), Some(last)) = (self.fields.first(), self.fields.last()) else {
            return Err(Error::InvalidParameter("empty series".into()));
        };
        if p >= r || p < first.time_index || r > last.time_index {
            return Err(Error::InvalidParameter(format!(
                "time range [{p},{r}] must satisfy p < r within [{},{}]",
                first.time_index, last.time_index
            )));
        }
        let lo = p - first.time_index;
        FieldSeries::new(self.fields[lo..=lo + (r - p)].to_vec())
    }

    /// Global `(min, max)` over all steps.
    pub fn range(&self) -> (f64, f64) {
        self.fields
            .iter()
            .map(ScalarField3D::range)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (a, b)| {
                (lo.min(a), hi.max(b))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestStep {
    pub t: usize,
    pub file: String,
}

/// JSON description of a raw-volume series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub dims: [usize; 3],
    pub origin: [f64; 3],
    pub spacing: [f64; 3],
    pub steps: Vec<ManifestStep>,
}

/// Reads a manifest and every raw volume it references. Relative file
/// names resolve against the manifest's directory.
pub fn load_series(manifest_path: &Path) -> Result<FieldSeries> {
    let text = fs::read_to_string(manifest_path).map_err(|e| Error::io(manifest_path, e))?;
    let manifest: Manifest = serde_json::from_str(&text).map_err(|source| Error::Json {
        path: manifest_path.to_path_buf(),
        source,
    })?;
    let grid = Grid::new(manifest.dims, manifest.origin, manifest.spacing)?;
    let base = manifest_path.parent().unwrap_or_else(|| Path::new("."));
    let fields = manifest
        .steps
        .iter()
        .map(|step| ScalarField3D::read_raw(&base.join(&step.file), grid, step.t))
        .collect::<Result<Vec<_>>>()?;
    FieldSeries::new(fields)
}

/// Writes `step_<t>.raw` files plus `manifest.json` into `dir`; returns the manifest path.
pub fn save_series(series: &FieldSeries, dir: &Path) -> Result<PathBuf> {
    let grid = series
        .grid()
        .ok_or_else(|| Error::InvalidParameter("cannot save an empty series".into()))?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut steps = Vec::with_capacity(series.len());
    for field in series.fields() {
        let file = format!("step_{:04}.raw", field.time_index);
        field.write_raw(&dir.join(&file))?;
        steps.push(ManifestStep {
            t: field.time_index,
            file,
        });
    }
    let manifest = Manifest {
        dims: grid.dims,
        origin: grid.origin,
        spacing: grid.spacing,
        steps,
    };
    let path = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Parameters of the eight-Gaussian synthetic series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gauss8 {
    pub dims: [usize; 3],
    pub steps: usize,
    pub amplitude: f64,
    pub sigma: f64,
}

impl Gauss8 {
    pub const START_RADIUS: f64 = 0.7;
    pub const END_RADIUS: f64 = 0.15;
    pub const DEFAULT_AMPLITUDE: f64 = 20.0;
    pub const DEFAULT_SIGMA: f64 = 0.08;

    pub fn new(dims: [usize; 3], steps: usize) -> Self {
        Gauss8 {
            dims,
            steps,
            amplitude: Self::DEFAULT_AMPLITUDE,
            sigma: Self::DEFAULT_SIGMA,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.steps == 0 || !self.steps.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "gauss8 needs a positive even number of steps, got {}",
                self.steps
            )));
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gauss8 sigma must be positive, got {}",
                self.sigma
            )));
        }
        if !self.amplitude.is_finite() {
            return Err(Error::InvalidParameter("gauss8 amplitude must be finite".into()));
        }
        Ok(())
    }

    /// Ring radius at time `t` (1-based). The second half mirrors the first.
    pub fn radius(&self, t: usize) -> f64 {
        let s = t.min(self.steps + 1 - t);
        let half = self.steps / 2;
        if half <= 1 {
            return Self::START_RADIUS;
        }
        let frac = (s - 1) as f64 / (half - 1) as f64;
        Self::START_RADIUS + (Self::END_RADIUS - Self::START_RADIUS) * frac
    }

    /// The eight centres at time `t`, all on the `x = 0` plane.
    pub fn centers(&self, t: usize) -> [[f64; 3]; 8] {
        let r = self.radius(t);
        let d = r * std::f64::consts::FRAC_1_SQRT_2;
        [[r, 0.0], [d, d], [0.0, r], [-d, d], [-r, 0.0], [-d, -d], [0.0, -r], [d, -d]]
            .map(|[y, z]| [0.0, y, z])
    }

    /// Samples step `t`. Coordinates and the summation order are chosen
    /// so that mirror-image voxels get bit-identical values.
    pub fn field(&self, t: usize) -> Result<ScalarField3D> {
        self.validate()?;
        if t == 0 || t > self.steps {
            return Err(Error::InvalidParameter(format!(
                "time step {t} outside 1..={}",
                self.steps
            )));
        }
        let grid = Grid::unit_cube(self.dims)?;
        let axes: Vec<Vec<f64>> = self.dims.iter().map(|&n| symmetric_axis(n)).collect();
        let centers = self.centers(t);
        let inv = 1.0 / (2.0 * self.sigma * self.sigma);
        let amp = self.amplitude;
        let mut values = Vec::with_capacity(grid.len());
        for k in 0..self.dims[2] {
            for j in 0..self.dims[1] {
                for i in 0..self.dims[0] {
                    let p = [axes[0][i], axes[1][j], axes[2][k]];
                    let mut terms = centers.map(|c| {
                        let d2 = (p[0] - c[0]).powi(2) + ((p[1] - c[1]).powi(2) + (p[2] - c[2]).powi(2));
                        amp * (-d2 * inv).exp()
                    });
                    terms.sort_by(f64::total_cmp);
                    values.push(terms.iter().sum());
                }
            }
        }
        ScalarField3D::new(grid, values, t)
    }

    pub fn generate(&self) -> Result<FieldSeries> {
        self.validate()?;
        let fields = (1..=self.steps)
            .map(|t| self.field(t))
            .collect::<Result<Vec<_>>>()?;
        FieldSeries::new(fields)
    }
}

// (2i + 1 - n) / (n - 1) is exactly antisymmetric in i.
fn symmetric_axis(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (2.0 * i as f64 + 1.0 - n as f64) / (n - 1) as f64)
        .collect()
}

/// Builds the Gauss8 series with explicit amplitude and sigma.
pub fn generate_gauss8(
    dims: [usize; 3],
    steps: usize,
    amplitude: f64,
    sigma: f64,
) -> Result<FieldSeries> {
    Gauss8 {
        dims,
        steps,
        amplitude,
        sigma,
    }
    .generate()
}

/// `mask[v] = f(v) >= isovalue`.
pub fn superlevel_mask(field: &ScalarField3D, isovalue: f64) -> Vec<bool> {
    field.values().iter().map(|&v| v >= isovalue).collect()
}
