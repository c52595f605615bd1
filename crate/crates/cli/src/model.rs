use anyhow::{bail, Context, Result};
use chebsim::fem::{grid_mesh, matern_operator, AnisotropyField, MaternParams, TriMesh};
use chebsim::order::TestConfig;
use chebsim::simulate::Raster;
use chebsim::validate::GridGeometry;
use chebsim::PrecisionOperator;

use crate::args::{ModelArgs, OrderArgs};
use crate::manifest::Manifest;

/// Input problems, reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

pub fn input<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| InputError(e).into())
}

/// Full simulated grid and the window kept for output.
#[derive(Debug, Clone, Copy)]
pub struct GridLayout {
    pub full: GridGeometry,
    pub margin: usize,
    pub window: GridGeometry,
}

impl GridLayout {
    pub fn crop(&self, z: &[f64]) -> Result<Raster> {
        let r = Raster::new(self.full.nx, self.full.ny, self.full.h, z.to_vec())?;
        Ok(r.crop(self.margin, self.margin, self.window.nx, self.window.ny)?)
    }
}

pub struct Model {
    pub params: MaternParams,
    pub op: PrecisionOperator,
    pub grid: Option<GridLayout>,
}

pub fn matern_params(args: &ModelArgs) -> Result<MaternParams> {
    let params = match (args.range, args.scale) {
        (Some(r), None) => MaternParams::from_range(args.sill, r, args.nu)?,
        (None, Some(s)) => MaternParams::new(args.sill, s, args.nu)?,
        _ => bail!("exactly one of --range and --scale is required"),
    };
    let alpha = params.alpha_spde()?;
    if let Some(a) = args.alpha_spde {
        if a != alpha {
            bail!("--alpha-spde {a} does not match nu + 1 = {alpha}");
        }
    }
    Ok(params)
}

pub fn build_model(args: &ModelArgs) -> Result<Model> {
    let params = input(matern_params(args))?;
    let (mesh, grid) = match &args.mesh {
        Some(path) => {
            let mesh = input(
                TriMesh::read(path).with_context(|| format!("cannot load mesh {}", path.display())),
            )?;
            (mesh, None)
        }
        None => {
            let buffer = args.buffer.unwrap_or(2.0 * params.range());
            if !(buffer >= 0.0) || !(args.h > 0.0) {
                return Err(InputError(anyhow::anyhow!("buffer and h must be non-negative and positive")).into());
            }
            let margin = (buffer / args.h).ceil() as usize;
            let full = GridGeometry {
                nx: args.nx + 2 * margin,
                ny: args.ny + 2 * margin,
                h: args.h,
            };
            let mesh = input(grid_mesh(full.nx, full.ny, full.h).map_err(Into::into))?;
            let window = GridGeometry {
                nx: args.nx,
                ny: args.ny,
                h: args.h,
            };
            (mesh, Some(GridLayout { full, margin, window }))
        }
    };
    let field = match &args.anisotropy {
        Some(path) => Some(input(
            AnisotropyField::read(path).with_context(|| format!("cannot load anisotropy {}", path.display())),
        )?),
        None => None,
    };
    let op = input(matern_operator(&mesh, &params, field.as_ref()).map_err(Into::into))?;
    Ok(Model { params, op, grid })
}

pub fn test_config(args: &OrderArgs) -> Result<TestConfig> {
    input(TestConfig::new(args.n_samples, args.significance, args.gamma, args.eta).map_err(Into::into))
}

pub fn record_model(m: &mut Manifest, args: &ModelArgs, model: &Model) {
    if let Some(p) = &args.mesh {
        m.set("mesh", p.display());
    }
    if let Some(p) = &args.anisotropy {
        m.set("anisotropy", p.display());
    }
    if let Some(g) = model.grid {
        m.set("nx", g.window.nx);
        m.set("ny", g.window.ny);
        m.set("h", format!("{:?}", g.window.h));
        m.set("buffer_nodes", g.margin);
    }
    m.set("sill", format!("{:?}", model.params.sigma2));
    m.set("scale", format!("{:?}", model.params.range_phi));
    m.set("range", format!("{:?}", model.params.range()));
    m.set("nu", format!("{:?}", model.params.nu));
    m.set("alpha_spde", model.params.alpha_spde().unwrap_or(0));
    m.set("n", model.op.n());
    m.set("nnz", model.op.s().nnz());
}

pub fn record_order(m: &mut Manifest, args: &OrderArgs, n_sims: usize) {
    m.set("significance", format!("{:?}", args.significance));
    m.set("gamma", format!("{:?}", args.gamma));
    m.set("n_samples", args.n_samples);
    if let Some(eta) = args.eta {
        m.set("eta", format!("{eta:?}"));
    }
    if let Some(k) = args.order {
        m.set("forced_order", k);
    }
    m.set("k_max", args.k_max);
    m.set("seed", args.seed);
    m.set("n_sims", n_sims);
}
