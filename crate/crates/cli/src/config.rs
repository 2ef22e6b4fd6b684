use std::fmt;

use clap::{Args, ValueEnum};
use netlsd::{
    GridSpec, Kernel, Method, Normalization, SpectrumOptions, Strategy, TimeGrid, DEFAULT_APPROX_K,
    DEFAULT_DENSE_THRESHOLD,
};

use crate::failure::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Full,
    Approx,
    Taylor,
    Auto,
}

/// Flags shared by every subcommand. Each one can also be set through a
/// `NETLSD_`-prefixed environment variable.
#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// heat or wave
    #[arg(long, global = true, env = "NETLSD_KERNEL", default_value = "heat")]
    pub kernel: String,

    /// none, empty or complete
    #[arg(long, global = true, env = "NETLSD_NORM", default_value = "empty")]
    pub norm: String,

    /// count,min,max,log|lin; defaults to the kernel's standard grid
    #[arg(long, global = true, env = "NETLSD_GRID")]
    pub grid: Option<String>,

    #[arg(long, global = true, env = "NETLSD_STRATEGY", value_enum, default_value = "auto")]
    pub strategy: StrategyArg,

    /// Eigenvalues computed by the approximate strategies, split between both ends
    #[arg(long, global = true, env = "NETLSD_K", default_value_t = DEFAULT_APPROX_K)]
    pub k: usize,

    /// Eigensolver residual tolerance
    #[arg(long, global = true, env = "NETLSD_TOL")]
    pub tol: Option<f64>,

    /// Largest graph solved densely by the auto strategy
    #[arg(long, global = true, env = "NETLSD_DENSE_THRESHOLD", default_value_t = DEFAULT_DENSE_THRESHOLD)]
    pub dense_threshold: usize,

    #[arg(long, global = true, env = "NETLSD_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Worker threads; 0 uses every logical core
    #[arg(long, global = true, env = "NETLSD_THREADS", default_value_t = 0)]
    pub threads: usize,
}

/// Validated settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub method: Method,
    pub strategy: StrategyArg,
    pub k: usize,
    pub seed: u64,
    pub threads: usize,
}

impl RunConfig {
    pub fn from_args(args: &GlobalArgs) -> Result<Self, Failure> {
        let kernel: Kernel = args.kernel.parse()?;
        let normalization: Normalization = args.norm.parse()?;
        let mut method = Method::new(kernel, normalization);
        if let Some(spec) = &args.grid {
            let spec: GridSpec = spec.parse()?;
            method.grid = TimeGrid::new(spec)?;
        }
        let mut spectrum = SpectrumOptions {
            dense_threshold: args.dense_threshold,
            auto_k: args.k,
            ..SpectrumOptions::default()
        };
        if let Some(tol) = args.tol {
            spectrum.eigen.tol = tol;
        }
        spectrum.eigen.seed ^= args.seed;
        method.spectrum = spectrum;
        method.strategy = match args.strategy {
            StrategyArg::Full => Strategy::Full,
            StrategyArg::Approx => Strategy::approx(args.k),
            StrategyArg::Taylor => Strategy::Taylor,
            StrategyArg::Auto => Strategy::Auto,
        };
        method.validate()?;
        Ok(RunConfig {
            method,
            strategy: args.strategy,
            k: args.k,
            seed: args.seed,
            threads: args.threads,
        })
    }

    /// Same settings with a different kernel and normalization; an explicit
    /// grid is kept only when it was given for the same kernel.
    pub fn with_method_name(&self, name: &str, explicit_grid: bool) -> Result<Self, Failure> {
        let named = Method::named(name)?;
        let mut out = self.clone();
        if !(explicit_grid && named.kernel == self.method.kernel) {
            out.method.grid = named.grid;
        }
        out.method.kernel = named.kernel;
        out.method.normalization = named.normalization;
        out.method.validate()?;
        Ok(out)
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.method;
        let strategy = self.strategy.to_possible_value().expect("no skipped variants");
        write!(
            f,
            "kernel={} norm={} grid={} strategy={} k={} tol={:e} dense-threshold={} seed={} threads={}",
            m.kernel,
            m.normalization,
            m.grid.spec(),
            strategy.get_name(),
            self.k,
            m.spectrum.eigen.tol,
            m.spectrum.dense_threshold,
            self.seed,
            self.threads
        )
    }
}
