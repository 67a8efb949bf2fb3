//! Command-line grammar. Parsing yields a [`RunConfig`]; numeric fields are
//! checked against module preconditions in [`RunConfig::validate`].

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::UsageError;

#[derive(Parser, Debug, Clone)]
#[command(name = "ncg", version, about = "Noncommutative geometry workbench", propagate_version = true)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Print the JSON report on stdout instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the command's table as CSV.
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Tolerance for floating-point checks; each command has its own default.
    #[arg(long, global = true, value_name = "X")]
    pub tol: Option<f64>,
    /// Truncation order; each command has its own default.
    #[arg(long, global = true, value_name = "K")]
    pub order: Option<usize>,
    /// Record per-check wall-clock time. Reports are then no longer reproducible byte for byte.
    #[arg(long, global = true)]
    pub timing: bool,
    /// The arguments as given, echoed into the report.
    #[arg(skip)]
    pub argv: Vec<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Twisted polynomial algebras and the torus algebra.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Derivations, the Schwartz module, curvature and the Harper operator.
    #[command(subcommand)]
    Torus(TorusCmd),
    /// Cyclic cohomology of finite-dimensional algebras.
    #[command(subcommand)]
    Cyclic(CyclicCmd),
    /// Rooted-tree Hopf algebra and Birkhoff decomposition.
    #[command(subcommand)]
    Renorm(RenormCmd),
    /// Finite spectral triples, Dixmier traces and Weyl asymptotics.
    #[command(subcommand)]
    Spectral(SpectralCmd),
    /// The instanton projector over the deformed four-sphere.
    #[command(subcommand)]
    Instanton(InstantonCmd),
    /// Zeros of the Riemann zeta function and their counting function.
    #[command(subcommand)]
    Zeta(ZetaCmd),
    /// Run every module's invariant suite.
    VerifyAll,
    /// Compare a saved JSON report against a golden report.
    GoldenDiff {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        golden: PathBuf,
        /// Absolute/relative tolerance on floats.
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum AlgebraCmd {
    /// Normal form of a word in the generators a, a*, b, b*, t.
    NormalForm {
        #[arg(long, default_value = "1/3")]
        theta: String,
        #[arg(long)]
        word: String,
    },
    /// Reduce a polynomial such as "b a - a b + t^2" modulo the relations.
    Reduce {
        #[arg(long, default_value = "1/3")]
        theta: String,
        #[arg(long)]
        poly: String,
    },
    /// Products, adjoints and traces of monomials U^n V^m.
    Torus {
        #[arg(long, default_value = "1/3")]
        theta: String,
        /// Exponents "n,m" of the first monomial.
        #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        y: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum TorusCmd {
    /// Harper spectra for every reduced p/q with q ≤ qmax.
    Butterfly {
        #[arg(long, default_value_t = 12)]
        qmax: usize,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        /// CSV output path (same as --csv).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Curvature of the Schwartz-space connection.
    Curvature {
        #[arg(long, default_value = "1/3")]
        theta: String,
    },
    /// Spectrum of the Harper operator at θ = p/q.
    Harper {
        #[arg(long, default_value_t = 1)]
        p: i64,
        #[arg(long, default_value_t = 3)]
        q: usize,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
    },
    /// The derivations δ₁, δ₂ on U^n V^m, with a Leibniz check.
    Delta {
        #[arg(long, default_value = "1/3")]
        theta: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        m: i64,
    },
    /// The module action of U, V and the connection on a sampled Gaussian.
    Module {
        #[arg(long, default_value_t = 0.25)]
        theta: f64,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum CyclicCmd {
    /// b² = 0, B² = 0, bB + Bb = 0 and the Λ relations on random cochains.
    Check {
        #[arg(long, default_value = "m2")]
        algebra: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Pair the Chern character of a projection in functions on ℤ/n with the counting trace.
    Chern {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Bit k set means the projection contains the point k.
        #[arg(long, default_value_t = 1)]
        mask: u64,
    },
    /// Normal form of a word in the cyclic category, e.g. "d0 s1 t".
    Lambda {
        /// Object the word starts from.
        #[arg(long, default_value_t = 2)]
        source: usize,
        /// Generators d<i>, s<j>, t; the rightmost acts first.
        #[arg(long)]
        word: String,
    },
    /// Λ-module relations on the cochains of a named algebra.
    LambdaModule {
        #[arg(long, default_value = "m2")]
        algebra: String,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Hopf-cyclic operators of ℂ[ℤ/n] (or its dual) up to a degree.
    Hopf {
        #[arg(long, default_value_t = 2)]
        group: usize,
        /// σ = g^k.
        #[arg(long, default_value_t = 0)]
        sigma_power: usize,
        /// Use the dual Hopf algebra of functions, with δ evaluation at this point.
        #[arg(long)]
        dual_point: Option<usize>,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// The area cocycle on ℤ² as a cyclic 2-cocycle on a lattice box.
    GroupCocycle {
        #[arg(long, default_value_t = 2)]
        radius: i64,
    },
    /// Images of Hopf-cyclic cocycles of ℂ[ℤ/n] acting on functions on ℤ/n.
    Characteristic {
        #[arg(long, default_value_t = 2)]
        group: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    /// φ(t) = e^{|t|εL}/(t! ε^{|t|}).
    Ladder,
    /// φ(t) = (e^{εL}/ε)^{|t|}.
    Power,
}

#[derive(Subcommand, Debug, Clone)]
pub enum RenormCmd {
    /// Counterterms and renormalized values for every tree up to the order.
    Birkhoff {
        #[arg(long, value_enum, default_value = "ladder")]
        rule: Rule,
        #[arg(long = "L", default_value = "1")]
        l: String,
    },
    /// Admissible cuts of a tree such as "B+[B+[•] •]".
    Coproduct {
        #[arg(long)]
        tree: String,
    },
    /// The antipode of a tree as a signed sum of forests.
    Antipode {
        #[arg(long)]
        tree: String,
    },
    /// The one-parameter group θ_t acting on the ladder character.
    Theta {
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        t: String,
        #[arg(long = "L", default_value = "1")]
        l: String,
    },
    /// Distance of the scattering product to the counterterm at large t.
    Scattering {
        #[arg(long, default_value_t = 8.0)]
        t: f64,
        /// Largest tree size compared.
        #[arg(long, default_value_t = 2)]
        nodes: usize,
        #[arg(long = "L", default_value = "1")]
        l: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TripleKind {
    TwoPoint,
    Circle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Domain {
    Circle,
    Square,
    Rectangle,
}

#[derive(Subcommand, Debug, Clone)]
pub enum SpectralCmd {
    /// Connes distance between two states.
    Distance {
        #[arg(long, value_enum, default_value = "two-point")]
        triple: TripleKind,
        /// Dirac coupling of the two-point triple.
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        /// Truncation of the circle triple.
        #[arg(long, default_value_t = 16)]
        n: usize,
        /// Angles of the two point states on the circle.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        y: f64,
    },
    /// Dixmier-trace estimates on the circle, a square or a 2×1 rectangle.
    Dixmier {
        #[arg(long, value_enum, default_value = "circle")]
        domain: Domain,
        /// Number of eigenvalues.
        #[arg(long, default_value_t = 100_000)]
        n: usize,
    },
    /// Index of P U P for the shift U^w on the truncated circle.
    Index {
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        winding: i64,
    },
    /// Real-structure sign and order-one checks on the doubled two-point triple.
    Real {
        #[arg(long, default_value_t = 1.5)]
        m: f64,
        /// KO-dimension mod 8.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        dim: i64,
    },
    /// Coefficient of the local index formula for a multi-index "k1,k2,...".
    LocalIndex {
        /// Odd dimension.
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "1,0,0")]
        k: String,
    },
    /// Number of Dirac eigenvalues of the circle triple with |λ| ≤ Λ.
    Action {
        #[arg(long, default_value_t = 32)]
        n: usize,
        #[arg(long, default_value_t = 5.5)]
        lambda: f64,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum InstantonCmd {
    /// Idempotent, Chern-character and control checks at θ.
    Verify {
        #[arg(long, default_value = "1/4")]
        theta: String,
    },
    /// All generators commute at λ = 1, up to a monomial degree.
    Commutative {
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum ZetaCmd {
    /// Zeros of Z(t) on (0, E].
    Count {
        #[arg(long = "E", default_value_t = 100.0)]
        e: f64,
        #[arg(long, default_value_t = ncg_core::zeta_lab::DEFAULT_RESOLUTION)]
        resolution: f64,
    },
    /// Counting function against its smooth and prime-sum parts on a grid "start:stop:step".
    Compare {
        #[arg(long = "E-grid", default_value = "20:200:5")]
        e_grid: String,
        #[arg(long, default_value_t = 1000)]
        p_max: u64,
        #[arg(long, default_value_t = 3)]
        m_max: u32,
    },
    /// Hardy's Z(t).
    Hardy {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Semiclassical phase-space area below E with cutoff Λ.
    Area {
        #[arg(long = "E", default_value_t = 100.0)]
        e: f64,
        #[arg(long, default_value_t = 1000.0)]
        lambda: f64,
    },
}

/// Parses `p/q` with `q > 0`, or a bare integer.
pub fn parse_ratio(field: &str, s: &str) -> Result<(i64, i64), UsageError> {
    let bad = || UsageError::new(field, format!("expected p/q, got {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1),
    };
    if q <= 0 {
        return Err(UsageError::new(field, "denominator must be positive"));
    }
    Ok((p, q))
}

/// Parses `start:stop:step` into the grid points, inclusive of `stop`.
pub fn parse_grid(field: &str, s: &str) -> Result<Vec<f64>, UsageError> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| UsageError::new(field, format!("expected start:stop:step, got {s:?}")))?;
    let [start, stop, step] = parts[..] else {
        return Err(UsageError::new(field, format!("expected start:stop:step, got {s:?}")));
    };
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(UsageError::new(field, "need start ≤ stop and step > 0"));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| start + k as f64 * step).collect())
}

/// Parses a comma-separated list.
pub fn parse_list<T: std::str::FromStr>(field: &str, s: &str) -> Result<Vec<T>, UsageError> {
    s.split(',')
        .map(|x| x.trim().parse::<T>())
        .collect::<Result<_, _>>()
        .map_err(|_| UsageError::new(field, format!("expected a comma-separated list, got {s:?}")))
}

fn positive(field: &str, x: f64) -> Result<(), UsageError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(UsageError::new(field, format!("must be positive and finite, got {x}")))
    }
}

impl RunConfig {
    /// Parses `args` (without the program name).
    pub fn try_parse_args<I, S>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let argv: Vec<String> = args.into_iter().map(Into::into).collect();
        let mut cfg = RunConfig::try_parse_from(std::iter::once("ncg".to_string()).chain(argv.iter().cloned()))?;
        cfg.argv = argv;
        Ok(cfg)
    }

    /// Checks the numeric fields before anything is dispatched.
    pub fn validate(&self) -> Result<(), UsageError> {
        if let Some(t) = self.tol {
            positive("tol", t)?;
        }
        match &self.command {
            Command::Torus(TorusCmd::Butterfly { qmax, mu, .. }) => {
                if *qmax == 0 {
                    return Err(UsageError::new("qmax", "must be at least 1"));
                }
                positive("mu", *mu)?;
            }
            Command::Torus(TorusCmd::Harper { p, q, mu }) => {
                if *q == 0 || *p < 0 {
                    return Err(UsageError::new("q", "need p ≥ 0 and q ≥ 1"));
                }
                positive("mu", *mu)?;
            }
            Command::Torus(TorusCmd::Module { theta }) => positive("theta", *theta)?,
            Command::Cyclic(CyclicCmd::Check { degree, .. }) if *degree > 4 => {
                return Err(UsageError::new("degree", "at most 4"));
            }
            Command::Cyclic(CyclicCmd::LambdaModule { n_max, .. }) if *n_max > 4 => {
                return Err(UsageError::new("n-max", "at most 4"));
            }
            Command::Cyclic(CyclicCmd::Chern { n, mask }) if *n == 0 || *n > 8 || *mask >= 1 << *n => {
                return Err(UsageError::new("mask", "need 1 ≤ n ≤ 8 and mask < 2^n"));
            }
            Command::Cyclic(CyclicCmd::Hopf { group, degree, .. }) if *group < 1 || *degree > 3 => {
                return Err(UsageError::new("degree", "need group ≥ 1 and degree ≤ 3"));
            }
            Command::Cyclic(CyclicCmd::Characteristic { group, degree }) if *group < 1 || *degree > 2 => {
                return Err(UsageError::new("degree", "need group ≥ 1 and degree ≤ 2"));
            }
            Command::Renorm(RenormCmd::Scattering { t, .. }) => positive("t", *t)?,
            Command::Spectral(SpectralCmd::Distance { m, .. }) => positive("m", *m)?,
            Command::Spectral(SpectralCmd::Action { lambda, .. }) => positive("lambda", *lambda)?,
            Command::Zeta(ZetaCmd::Count { e, resolution }) => {
                positive("E", *e)?;
                positive("resolution", *resolution)?;
            }
            Command::Zeta(ZetaCmd::Area { e, lambda }) => {
                positive("E", *e)?;
                positive("lambda", *lambda)?;
            }
            Command::Zeta(ZetaCmd::Compare { e_grid, .. }) => {
                parse_grid("E-grid", e_grid)?;
            }
            Command::GoldenDiff { eps, .. } if !(*eps >= 0.0) => {
                return Err(UsageError::new("eps", "must be nonnegative"));
            }
            _ => {}
        }
        Ok(())
    }
}
