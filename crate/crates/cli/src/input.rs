//! Resolution of the geometric input: a catalog entry or a structure file,
//! with metric parameters from `--params`.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use chern_core::catalog::{self, ExampleEntry, Params};
use chern_core::forms::CoframeAlgebra;
use chern_core::invariant::{HermitianMetric, SurfaceMetricParams};
use chern_core::literal::{parse_complex, parse_real};
use chern_core::scalar::{Scalar, CQ};
use chern_core::structure::{MetricSpec, StructureFile};

/// Values given with `--params`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamArgs {
    pub r: Option<CQ>,
    pub s: Option<CQ>,
    pub u: Option<CQ>,
    pub ell: Option<CQ>,
}

impl ParamArgs {
    /// `r=1,s=2,u=1/2-1/3i,ell=3`; separators are commas or whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = ParamArgs::default();
        for item in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| anyhow!("expected key=value, got `{item}`"))?;
            let real = || -> Result<CQ> {
                let q = parse_real(value).map_err(|e| anyhow!("{key}: {e}"))?;
                Ok(CQ::new(q, CQ::zero().im))
            };
            match key {
                "r" => out.r = Some(real()?),
                "s" => out.s = Some(real()?),
                "u" => out.u = Some(parse_complex(value).map_err(|e| anyhow!("u: {e}"))?),
                "ell" | "l" => out.ell = Some(real()?),
                _ => bail!("unknown parameter `{key}` (expected r, s, u, ell)"),
            }
        }
        Ok(out)
    }

    pub fn is_empty(&self) -> bool {
        *self == ParamArgs::default()
    }

    pub fn for_entry(&self, entry: &ExampleEntry) -> Params {
        entry.params(self.r.clone(), self.s.clone(), self.u.clone(), self.ell.clone())
    }

    /// Surface metric with missing values taken from `base`.
    fn surface(&self, base: SurfaceMetricParams<CQ>) -> SurfaceMetricParams<CQ> {
        SurfaceMetricParams::new(
            self.r.clone().unwrap_or(base.r),
            self.s.clone().unwrap_or(base.s),
            self.u.clone().unwrap_or(base.u),
        )
    }
}

/// An algebra with a metric, ready for the invariant pipeline.
#[derive(Clone, Debug)]
pub struct Input {
    pub label: String,
    pub algebra: CoframeAlgebra<CQ>,
    pub metric: HermitianMetric<CQ>,
    pub entry: Option<&'static ExampleEntry>,
}

pub fn resolve(file: Option<&Path>, entry: Option<&str>, params: &ParamArgs) -> Result<Input> {
    match (file, entry) {
        (Some(_), Some(_)) => bail!("give either --file or --entry, not both"),
        (None, None) => bail!("no input: give --file <structure file> or --entry <catalog name>"),
        (None, Some(name)) => {
            let e = catalog::entry(name)?;
            let p = params.for_entry(e);
            let metric = e.metric(&p)?;
            Ok(Input { label: format!("{} {}", e.name, p.render()), algebra: e.algebra(&p), metric, entry: Some(e) })
        }
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let file = StructureFile::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
            let n = file.algebra.dim();
            let metric = if !params.is_empty() {
                if n != 2 {
                    bail!("--params describes a surface metric but the file has dim {n}");
                }
                let base = match &file.metric {
                    Some(MetricSpec::Surface(p)) => p.clone(),
                    _ => SurfaceMetricParams::new(CQ::one(), CQ::one(), CQ::zero()),
                };
                params.surface(base).metric()?
            } else {
                match &file.metric {
                    Some(MetricSpec::Surface(p)) => p.metric()?,
                    Some(MetricSpec::Identity) | None => HermitianMetric::identity(n),
                }
            };
            if !file.jacobi.pass {
                eprintln!("warning: {}: structure equations fail d∘d = 0 (residual {:e})", path.display(), file.jacobi.residual);
            }
            Ok(Input {
                label: path.display().to_string(),
                algebra: file.algebra,
                metric,
                entry: None,
            })
        }
    }
}

/// Parses `x1,y1,x2,y2` real coordinates.
pub fn parse_point(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| anyhow!("bad coordinate `{v}`")))
        .collect()
}
