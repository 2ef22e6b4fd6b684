//! Synthetic classification harnesses: Erdős–Rényi against block model
//! graphs, and real graphs against degree-preserving rewirings.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use super::collection::SignatureCollection;
use super::eval::{evaluate_1nn, EvalReport, Metric};
use crate::error::{Error, Result};
use crate::graph::{rewire_degree_preserving, sample_block_model, sbm_probabilities, Graph};
use crate::signature::{
    check_grid, compute_signature, compute_spectrum, signature_from_spectrum, Kernel, Normalization, SignatureMeta,
    SpectrumOptions, Strategy, TimeGrid,
};
use crate::spectral::Spectrum;

/// Node count distribution for generated graphs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SizeLaw {
    Fixed(usize),
    Poisson(f64),
    /// Uniform on `10..=max`.
    Uniform(usize),
}

impl SizeLaw {
    fn sample<R: Rng>(&self, rng: &mut R) -> Result<usize> {
        match *self {
            SizeLaw::Fixed(n) => Ok(n),
            SizeLaw::Poisson(lambda) => {
                let dist = Poisson::new(lambda).map_err(|e| Error::invalid(format!("poisson({lambda}): {e}")))?;
                Ok(dist.sample(rng) as usize)
            }
            SizeLaw::Uniform(max) => Ok(rng.random_range(10..=max)),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            SizeLaw::Fixed(n) if n < 12 => Err(Error::invalid(format!("fixed size {n} below 12"))),
            SizeLaw::Poisson(l) if !(l >= 12.0 && l.is_finite()) => {
                Err(Error::invalid(format!("poisson mean {l} below 12")))
            }
            SizeLaw::Uniform(max) if max < 10 => Err(Error::invalid(format!("uniform upper bound {max} below 10"))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SizeLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeLaw::Fixed(n) => write!(f, "fixed({n})"),
            SizeLaw::Poisson(l) => write!(f, "poisson({l})"),
            SizeLaw::Uniform(m) => write!(f, "uniform(10,{m})"),
        }
    }
}

impl FromStr for SizeLaw {
    type Err = Error;

    /// Accepts `fixed(n)`, `poisson(l)`, `uniform(10,m)`, `uniform(m)` or a bare `n`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("cannot parse size law `{s}`"));
        if let Ok(n) = s.parse::<usize>() {
            return Ok(SizeLaw::Fixed(n));
        }
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let args: Vec<&str> = args.split(',').map(str::trim).collect();
        match (name, args.as_slice()) {
            ("fixed", [n]) => Ok(SizeLaw::Fixed(n.parse().map_err(|_| bad())?)),
            ("poisson", [l]) => Ok(SizeLaw::Poisson(l.parse().map_err(|_| bad())?)),
            ("uniform", [m]) | ("uniform", ["10", m]) => Ok(SizeLaw::Uniform(m.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

/// How block model edges are split between and within blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mixing {
    /// Fraction of expected edges leaving a node's block.
    Ratio(f64),
    /// `p_in = p_out`; both classes are Erdős–Rényi.
    Degenerate,
}

pub const DEFAULT_MIXING_RATIO: f64 = 0.1;

/// Kernel, normalization, grid and spectrum strategy used to embed graphs.
#[derive(Debug, Clone)]
pub struct Method {
    pub kernel: Kernel,
    pub normalization: Normalization,
    pub grid: TimeGrid,
    pub strategy: Strategy,
    pub spectrum: SpectrumOptions,
}

impl Method {
    pub fn new(kernel: Kernel, normalization: Normalization) -> Self {
        let grid = match kernel {
            Kernel::Heat => TimeGrid::heat_default(),
            Kernel::Wave => TimeGrid::wave_default(),
        };
        Method {
            kernel,
            normalization,
            grid,
            strategy: Strategy::Auto,
            spectrum: SpectrumOptions::default(),
        }
    }

    /// `heat`, `heat-empty`, `heat-complete`, and the same for `wave`.
    pub fn named(name: &str) -> Result<Self> {
        let (kernel, norm) = match name.split_once('-') {
            Some((k, n)) => (k, n),
            None => (name, "none"),
        };
        Ok(Method::new(kernel.parse()?, norm.parse()?))
    }

    pub fn name(&self) -> String {
        match self.normalization {
            Normalization::None => self.kernel.to_string(),
            n => format!("{}-{}", self.kernel, n),
        }
    }

    pub fn meta(&self) -> SignatureMeta {
        SignatureMeta {
            kernel: self.kernel,
            normalization: self.normalization,
            grid: self.grid.spec(),
        }
    }

    /// Rejects settings that would fail on every graph.
    pub fn validate(&self) -> Result<()> {
        check_grid(self.kernel, &self.grid)?;
        match self.strategy {
            Strategy::Taylor if self.kernel != Kernel::Heat => Err(Error::Unsupported(
                "the Taylor strategy supports the heat kernel only".into(),
            )),
            Strategy::Approx { k_lo: 0, k_hi: 0 } => Err(Error::invalid("approximate spectrum needs k ≥ 1")),
            Strategy::Auto if self.spectrum.auto_k == 0 => Err(Error::invalid("approximate spectrum needs k ≥ 1")),
            _ if self.spectrum.eigen.tol.is_nan() || self.spectrum.eigen.tol <= 0.0 => {
                Err(Error::invalid("solver tolerance must be positive"))
            }
            _ => Ok(()),
        }
    }
}

/// A graph with an id and a class label.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub id: String,
    pub label: i64,
    pub graph: Graph,
}

/// Embeds every graph with `method`, in parallel, keeping input order.
pub fn embed_labeled(graphs: &[LabeledGraph], method: &Method) -> Result<SignatureCollection> {
    let sigs = graphs
        .par_iter()
        .map(|g| {
            compute_signature(
                &g.graph,
                method.kernel,
                &method.grid,
                method.normalization,
                method.strategy,
                &method.spectrum,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut coll = SignatureCollection::new(method.meta());
    for (g, sig) in graphs.iter().zip(sigs) {
        coll.insert(g.id.clone(), sig, Some(g.label))?;
    }
    Ok(coll)
}

/// Spectra of labeled graphs, so several trace methods can share one
/// eigensolve per graph.
#[derive(Debug, Clone)]
pub struct LabeledSpectra {
    entries: Vec<(String, i64, Spectrum)>,
}

impl LabeledSpectra {
    pub fn compute(graphs: &[LabeledGraph], strategy: Strategy, opts: &SpectrumOptions) -> Result<Self> {
        let spectra = graphs
            .par_iter()
            .map(|g| compute_spectrum(&g.graph, strategy, opts))
            .collect::<Result<Vec<_>>>()?;
        Ok(LabeledSpectra {
            entries: graphs
                .iter()
                .zip(spectra)
                .map(|(g, s)| (g.id.clone(), g.label, s))
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Signatures for `method`; its strategy and spectrum options are ignored.
    pub fn signatures(&self, method: &Method) -> Result<SignatureCollection> {
        let mut coll = SignatureCollection::new(method.meta());
        for (id, label, spectrum) in &self.entries {
            let sig = signature_from_spectrum(spectrum, method.kernel, &method.grid, method.normalization)?;
            coll.insert(id.clone(), sig, Some(*label))?;
        }
        Ok(coll)
    }
}

#[derive(Debug, Clone)]
pub struct CommunityBench {
    pub sizes: SizeLaw,
    pub graphs_per_class: usize,
    pub mean_degree: f64,
    pub blocks: usize,
    pub mixing: Mixing,
    pub train_fraction: f64,
    pub trials: usize,
    pub seed: u64,
}

impl CommunityBench {
    pub fn new(sizes: SizeLaw, graphs_per_class: usize) -> Self {
        CommunityBench {
            sizes,
            graphs_per_class,
            mean_degree: 10.0,
            blocks: 10,
            mixing: Mixing::Ratio(DEFAULT_MIXING_RATIO),
            train_fraction: 0.8,
            trials: 100,
            seed: 0,
        }
    }

    /// `graphs_per_class` Erdős–Rényi graphs (label 0, ids `er-<i>`) and as
    /// many block model graphs (label 1, ids `sbm-<i>`) of matched expected
    /// degree. Graph `i` of each class draws from its own seeded stream.
    ///
    /// Sizes below 12 are raised to 12. When `n − 1` is below twice the
    /// mean degree, the degree target drops to `(n − 1) / 2` for both
    /// classes.
    pub fn generate(&self) -> Result<Vec<LabeledGraph>> {
        if self.graphs_per_class < 10 {
            return Err(Error::invalid(format!(
                "graphs per class must be at least 10, got {}",
                self.graphs_per_class
            )));
        }
        self.sizes.validate()?;
        if self.blocks < 2 || self.blocks > 12 {
            return Err(Error::invalid(format!("block count {} outside 2..=12", self.blocks)));
        }
        if self.mean_degree.is_nan() || self.mean_degree <= 0.0 {
            return Err(Error::invalid("mean degree must be positive"));
        }
        if let Mixing::Ratio(r) = self.mixing {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::invalid(format!("mixing ratio {r} outside [0, 1]")));
            }
        }
        (0..2 * self.graphs_per_class)
            .into_par_iter()
            .map(|slot| {
                let (class, i) = (slot % 2, slot / 2);
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(slot as u64);
                let n = self.sizes.sample(&mut rng)?.max(12);
                let degree = self.mean_degree.min((n - 1) as f64 / 2.0);
                let p = degree / (n - 1) as f64;
                let (p_in, p_out) = match (class, self.mixing) {
                    (0, _) | (_, Mixing::Degenerate) => (p, p),
                    (_, Mixing::Ratio(r)) => sbm_probabilities(n, self.blocks, degree, r)?,
                };
                let (id, graph) = if class == 0 {
                    (format!("er-{i:05}"), sample_block_model(n, 1, p, p, &mut rng))
                } else {
                    (format!("sbm-{i:05}"), sample_block_model(n, self.blocks, p_in, p_out, &mut rng))
                };
                Ok(LabeledGraph {
                    id,
                    label: class as i64,
                    graph,
                })
            })
            .collect()
    }

    pub fn evaluate(&self, coll: &SignatureCollection) -> Result<EvalReport> {
        evaluate_1nn(coll, self.train_fraction, self.trials, Metric::Accuracy, self.seed)
    }
}

/// Generates, embeds and scores one community benchmark.
pub fn bench_communities(cfg: &CommunityBench, method: &Method) -> Result<EvalReport> {
    let graphs = cfg.generate()?;
    let coll = embed_labeled(&graphs, method)?;
    cfg.evaluate(&coll)
}

/// Pairs every input graph (label 1, positive) with a rewired copy
/// (label 0, id `<id>~rewired`).
pub fn rewired_pairs(graphs: &[(String, Graph)], sweeps: usize, seed: u64) -> Result<Vec<LabeledGraph>> {
    let copies = graphs
        .par_iter()
        .enumerate()
        .map(|(i, (_, g))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            rewire_degree_preserving(g, sweeps, rng.random())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(2 * graphs.len());
    for ((id, g), fake) in graphs.iter().zip(copies) {
        out.push(LabeledGraph {
            id: id.clone(),
            label: 1,
            graph: g.clone(),
        });
        out.push(LabeledGraph {
            id: format!("{id}~rewired"),
            label: 0,
            graph: fake,
        });
    }
    Ok(out)
}

/// Real-versus-rewired detection by 1-NN, usually scored by ROC AUC.
pub fn bench_real_vs_rewired(
    graphs: &[(String, Graph)],
    sweeps: usize,
    method: &Method,
    metric: Metric,
    train_fraction: f64,
    trials: usize,
    seed: u64,
) -> Result<EvalReport> {
    if graphs.len() < 20 {
        return Err(Error::invalid(format!("need at least 20 graphs, got {}", graphs.len())));
    }
    let labeled = rewired_pairs(graphs, sweeps, seed)?;
    let coll = embed_labeled(&labeled, method)?;
    evaluate_1nn(&coll, train_fraction, trials, metric, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_erdos_renyi, gen_named, GraphFamily};

    #[test]
    fn size_law_parsing() {
        assert_eq!("fixed(64)".parse::<SizeLaw>().unwrap(), SizeLaw::Fixed(64));
        assert_eq!("256".parse::<SizeLaw>().unwrap(), SizeLaw::Fixed(256));
        assert_eq!("poisson(1024)".parse::<SizeLaw>().unwrap(), SizeLaw::Poisson(1024.0));
        assert_eq!("uniform(10,128)".parse::<SizeLaw>().unwrap(), SizeLaw::Uniform(128));
        assert_eq!("uniform(128)".parse::<SizeLaw>().unwrap(), SizeLaw::Uniform(128));
        assert!("uniform(5,128)".parse::<SizeLaw>().is_err());
        assert!("gauss(3)".parse::<SizeLaw>().is_err());
        for law in [SizeLaw::Fixed(64), SizeLaw::Poisson(100.0), SizeLaw::Uniform(50)] {
            assert_eq!(law.to_string().parse::<SizeLaw>().unwrap(), law);
        }
    }

    #[test]
    fn method_names() {
        for name in ["heat", "heat-empty", "heat-complete", "wave", "wave-empty", "wave-complete"] {
            assert_eq!(Method::named(name).unwrap().name(), name);
        }
        assert!(Method::named("heat-full").is_err());
        assert_eq!(Method::named("wave").unwrap().grid, TimeGrid::wave_default());
    }

    #[test]
    fn method_validation() {
        assert!(Method::named("wave").unwrap().validate().is_ok());
        let mut m = Method::named("wave").unwrap();
        m.grid = TimeGrid::heat_default();
        assert!(m.validate().is_err());
        let mut m = Method::named("wave").unwrap();
        m.strategy = Strategy::Taylor;
        assert!(matches!(m.validate(), Err(Error::Unsupported(_))));
        let mut m = Method::named("heat").unwrap();
        m.strategy = Strategy::approx(0);
        assert!(m.validate().is_err());
        m.strategy = Strategy::Full;
        m.spectrum.eigen.tol = 0.0;
        assert!(m.validate().is_err());
    }

    #[test]
    fn generation_is_balanced_and_seeded() {
        let mut cfg = CommunityBench::new(SizeLaw::Uniform(80), 10);
        cfg.seed = 4;
        let a = cfg.generate().unwrap();
        let b = cfg.generate().unwrap();
        assert_eq!(a.len(), 20);
        assert_eq!(a.iter().filter(|g| g.label == 1).count(), 10);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.id, y.id);
            assert_eq!(x.graph, y.graph);
            assert!((12..=80).contains(&x.graph.node_count()));
        }
        cfg.graphs_per_class = 9;
        assert!(cfg.generate().is_err());
    }

    #[test]
    fn degenerate_mixing_is_chance() {
        let mut cfg = CommunityBench::new(SizeLaw::Fixed(64), 200);
        cfg.mixing = Mixing::Degenerate;
        cfg.trials = 20;
        cfg.seed = 11;
        let report = bench_communities(&cfg, &Method::named("heat-empty").unwrap()).unwrap();
        assert!((0.45..=0.55).contains(&report.value), "accuracy {}", report.value);
    }

    #[test]
    fn default_mixing_separates_small_graphs() {
        let mut cfg = CommunityBench::new(SizeLaw::Fixed(64), 200);
        cfg.trials = 20;
        let report = bench_communities(&cfg, &Method::named("heat").unwrap()).unwrap();
        assert!(report.value > 0.99, "accuracy {}", report.value);
    }

    #[test]
    fn small_graphs_are_hard_near_the_detection_limit() {
        let mut cfg = CommunityBench::new(SizeLaw::Fixed(64), 200);
        cfg.trials = 20;
        cfg.mixing = Mixing::Ratio(0.75);
        for name in ["heat", "heat-empty", "wave-complete"] {
            let report = bench_communities(&cfg, &Method::named(name).unwrap()).unwrap();
            assert!((0.5..=0.75).contains(&report.value), "{name}: accuracy {}", report.value);
        }
    }

    #[test]
    fn triangles_are_indistinguishable_from_rewirings() {
        let tri = gen_named(GraphFamily::Complete, 3).unwrap();
        let graphs: Vec<(String, Graph)> = (0..20).map(|i| (format!("t{i:02}"), tri.clone())).collect();
        let method = Method::named("heat-empty").unwrap();
        let report = bench_real_vs_rewired(&graphs, 10, &method, Metric::RocAuc, 0.8, 10, 0).unwrap();
        assert_eq!(report.value, 0.5);
    }

    #[test]
    fn rings_are_told_apart_from_rewirings() {
        let ring = gen_named(GraphFamily::Ring, 100).unwrap();
        let graphs: Vec<(String, Graph)> = (0..30).map(|i| (format!("r{i:02}"), ring.clone())).collect();
        let method = Method::named("heat-empty").unwrap();
        let report = bench_real_vs_rewired(&graphs, 10, &method, Metric::RocAuc, 0.8, 10, 1).unwrap();
        assert!(report.value > 0.9, "AUC {}", report.value);
    }

    #[test]
    fn erdos_renyi_inputs_are_near_chance() {
        let graphs: Vec<(String, Graph)> = (0..60)
            .map(|i| (format!("er{i:02}"), gen_erdos_renyi(100, 10.0, i).unwrap()))
            .collect();
        let method = Method::named("heat-empty").unwrap();
        let report = bench_real_vs_rewired(&graphs, 10, &method, Metric::RocAuc, 0.8, 20, 2).unwrap();
        assert!((0.4..=0.65).contains(&report.value), "AUC {}", report.value);
    }

    #[test]
    fn shared_spectra_match_direct_embedding() {
        let mut cfg = CommunityBench::new(SizeLaw::Fixed(40), 10);
        cfg.seed = 2;
        let graphs = cfg.generate().unwrap();
        let spectra = LabeledSpectra::compute(&graphs, Strategy::Full, &SpectrumOptions::default()).unwrap();
        for name in ["heat", "wave-complete"] {
            let mut method = Method::named(name).unwrap();
            method.strategy = Strategy::Full;
            let a = spectra.signatures(&method).unwrap();
            let b = embed_labeled(&graphs, &method).unwrap();
            assert_eq!(a.to_file(), b.to_file());
        }
    }
}
