//! `key = value` run configuration. Every key has a default; the resolved
//! table is echoed into each output file.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use pentajm::potmat::PotentialModel;
use pentajm::refsol::{effective_nu, BasisSpec, PhysicalParams, Precision};
use pentajm::smatrix::AutoSize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    ReferenceConvergence,
    Scatter,
    QuadratureCheck,
    GreensCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::ReferenceConvergence => "reference-convergence",
            Command::Scatter => "scatter",
            Command::QuadratureCheck => "quadrature-check",
            Command::GreensCheck => "greens-check",
        }
    }
}

impl FromStr for Command {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "reference-convergence" => Ok(Command::ReferenceConvergence),
            "scatter" => Ok(Command::Scatter),
            "quadrature-check" => Ok(Command::QuadratureCheck),
            "greens-check" => Ok(Command::GreensCheck),
            other => Err(CliError::Config(format!("command: unknown command '{other}'"))),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Defaults for every recognized key, in echo order.
const DEFAULTS: &[(&str, &str)] = &[
    ("basis", "laguerre"),
    ("beta", "4"),
    ("ell", "0"),
    ("nu", "3"),
    ("strength", ""),
    ("lambda", "1"),
    ("mu", "2"),
    ("reference.sizes", "100, 1000, 10000"),
    ("reference.far", "10, 40"),
    ("reference.near", "0.001, 0.01"),
    ("reference.far_points", "601"),
    ("reference.near_points", "201"),
    ("potential.kind", "exponential"),
    ("potential.v0", "-2"),
    ("potential.range", "1"),
    ("potential.r", ""),
    ("potential.u", ""),
    ("scatter.size", "80"),
    ("scatter.auto_start", "20"),
    ("scatter.auto_max", "320"),
    ("scatter.auto_tolerance", "1e-3"),
    ("scatter.quadrature_order", ""),
    ("energy.min", "0.05"),
    ("energy.max", "3"),
    ("energy.points", "60"),
    ("energy.list", ""),
    ("checks.orders", "2, 5, 10"),
    ("checks.betas", "0, 4"),
    ("checks.systems", "50"),
    ("checks.max_order", "8"),
    ("checks.seed", "1"),
    ("checks.recursion_n_max", "10000"),
    ("tolerance.unitarity", "1e-8"),
    ("tolerance.boundary", "1e-8"),
    ("tolerance.quadrature", "1e-12"),
    ("tolerance.green", "1e-8"),
    ("tolerance.recursion", "1e-8"),
    ("precision", "double"),
    ("jobs", ""),
];

#[derive(Debug, Clone, PartialEq)]
pub enum SizeChoice {
    Fixed(usize),
    Auto(AutoSize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSettings {
    pub mu: f64,
    pub sizes: Vec<usize>,
    pub far: (f64, f64),
    pub near: (f64, f64),
    pub far_points: usize,
    pub near_points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterSettings {
    pub size: SizeChoice,
    pub energies: Vec<f64>,
    pub quadrature_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSettings {
    pub orders: Vec<usize>,
    pub betas: Vec<f64>,
    pub systems: usize,
    pub max_order: usize,
    pub seed: u64,
    pub recursion_n_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub unitarity: f64,
    pub boundary: f64,
    pub quadrature: f64,
    pub green: f64,
    pub recursion: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub ell: u32,
    pub strength: f64,
    pub nu: f64,
    pub lambda: f64,
    pub basis: BasisSpec,
    pub potential: PotentialModel,
    pub reference: ReferenceSettings,
    pub scatter: ScatterSettings,
    pub checks: CheckSettings,
    pub tolerances: Tolerances,
    pub precision: Precision,
    pub jobs: Option<usize>,
    /// Resolved `key = value` table, sorted by key.
    pub echo: BTreeMap<String, String>,
}

/// Per-invocation overrides from the command line.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub precision: Option<String>,
    pub jobs: Option<usize>,
}

fn err(key: &str, msg: impl fmt::Display) -> CliError {
    CliError::Config(format!("{key}: {msg}"))
}

/// Splits config text into a key table, rejecting malformed lines,
/// duplicates and unknown keys.
pub fn parse_table(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected 'key = value', got '{line}'", no + 1)))?;
        let key = key.trim().to_string();
        if key != "command" && !DEFAULTS.iter().any(|(k, _)| *k == key) {
            return Err(CliError::Config(format!("line {}: unknown key '{key}'", no + 1)));
        }
        if out.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(CliError::Config(format!("line {}: duplicate key '{key}'", no + 1)));
        }
    }
    Ok(out)
}

struct Table {
    values: BTreeMap<String, String>,
    user: BTreeMap<String, String>,
}

impl Table {
    fn raw(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or("")
    }

    fn is_set(&self, key: &str) -> bool {
        !self.raw(key).is_empty()
    }

    fn parse<T: FromStr>(&self, key: &str) -> Result<T, CliError>
    where
        T::Err: fmt::Display,
    {
        let raw = self.raw(key);
        raw.parse::<T>().map_err(|e| err(key, format!("cannot parse '{raw}': {e}")))
    }

    fn finite(&self, key: &str) -> Result<f64, CliError> {
        let v: f64 = self.parse(key)?;
        if !v.is_finite() {
            return Err(err(key, "must be finite"));
        }
        Ok(v)
    }

    fn positive(&self, key: &str) -> Result<f64, CliError> {
        let v = self.finite(key)?;
        if v <= 0.0 {
            return Err(err(key, format!("must be positive, got {v}")));
        }
        Ok(v)
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>, CliError>
    where
        T::Err: fmt::Display,
    {
        self.raw(key)
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<T>().map_err(|e| err(key, format!("cannot parse '{s}': {e}"))))
            .collect()
    }

    fn window(&self, key: &str) -> Result<(f64, f64), CliError> {
        let v: Vec<f64> = self.list(key)?;
        match v.as_slice() {
            [a, b] if a.is_finite() && b.is_finite() && *a > 0.0 && b > a => Ok((*a, *b)),
            _ => Err(err(key, "expected two increasing positive numbers 'lo, hi'")),
        }
    }
}

impl RunConfig {
    /// Parses and validates the whole configuration before any work starts.
    pub fn from_text(command: Command, text: &str, overrides: &Overrides) -> Result<Self, CliError> {
        let user = parse_table(text)?;
        if let Some(c) = user.get("command") {
            let named: Command = c.parse()?;
            if named != command {
                return Err(err("command", format!("config is for '{named}' but '{command}' was requested")));
            }
        }
        let mut values: BTreeMap<String, String> =
            DEFAULTS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        for (k, v) in &user {
            if k != "command" {
                values.insert(k.clone(), v.clone());
            }
        }
        if let Some(p) = &overrides.precision {
            values.insert("precision".into(), p.clone());
        }
        if let Some(j) = overrides.jobs {
            values.insert("jobs".into(), j.to_string());
        }
        let t = Table { values, user };

        let basis_beta = t.finite("beta")?;
        let basis = match t.raw("basis") {
            "laguerre" => BasisSpec::laguerre(basis_beta),
            "oscillator" => BasisSpec::oscillator(basis_beta),
            other => return Err(err("basis", format!("expected 'laguerre' or 'oscillator', got '{other}'"))),
        }
        .map_err(|e| err("beta", e))?;

        let ell: u32 = t.parse("ell")?;
        let half = ell as f64 + 0.5;
        let (nu, strength) = match (t.user.contains_key("nu"), t.is_set("strength")) {
            (true, true) => return Err(err("strength", "give either 'nu' or 'strength', not both")),
            (_, true) => {
                let a = t.finite("strength")?;
                (effective_nu(ell, a).map_err(|e| err("strength", e))?, a)
            }
            (_, false) => {
                let nu = t.positive("nu")?;
                (nu, nu * nu + half * half)
            }
        };
        let lambda = t.positive("lambda")?;

        let potential = match t.raw("potential.kind") {
            "none" => PotentialModel::zero(),
            kind @ ("exponential" | "gaussian" | "poschl-teller") => {
                let v0 = t.finite("potential.v0")?;
                let range = t.positive("potential.range")?;
                match kind {
                    "exponential" => PotentialModel::Exponential { v0, range },
                    "gaussian" => PotentialModel::Gaussian { v0, range },
                    _ => PotentialModel::PoschlTellerCosh { v0, range },
                }
            }
            "tabulated" => PotentialModel::Tabulated { r: t.list("potential.r")?, u: t.list("potential.u")? },
            other => {
                return Err(err(
                    "potential.kind",
                    format!("expected none, exponential, gaussian, poschl-teller or tabulated, got '{other}'"),
                ))
            }
        };
        potential.validate().map_err(|e| err("potential", e))?;

        let sizes: Vec<usize> = t.list("reference.sizes")?;
        if sizes.is_empty() || sizes.iter().any(|&n| n == 0) {
            return Err(err("reference.sizes", "need at least one positive size"));
        }
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let reference = ReferenceSettings {
            mu: t.positive("mu")?,
            sizes: sorted,
            far: t.window("reference.far")?,
            near: t.window("reference.near")?,
            far_points: t.parse("reference.far_points")?,
            near_points: t.parse("reference.near_points")?,
        };
        if reference.far_points < 2 || reference.near_points < 2 {
            return Err(err("reference.far_points", "windows need at least two points each"));
        }

        let size = match t.raw("scatter.size") {
            "auto" => {
                let auto = AutoSize {
                    start: t.parse("scatter.auto_start")?,
                    max: t.parse("scatter.auto_max")?,
                    tolerance: t.positive("scatter.auto_tolerance")?,
                };
                if auto.start < 5 || auto.max < auto.start {
                    return Err(err("scatter.auto_start", "need 5 <= auto_start <= auto_max"));
                }
                SizeChoice::Auto(auto)
            }
            _ => {
                let n: usize = t.parse("scatter.size")?;
                if n < 5 {
                    return Err(err("scatter.size", format!("must be 'auto' or at least 5, got {n}")));
                }
                SizeChoice::Fixed(n)
            }
        };
        let energies = if t.is_set("energy.list") {
            t.list::<f64>("energy.list")?
        } else {
            let (lo, hi) = (t.positive("energy.min")?, t.positive("energy.max")?);
            let points: usize = t.parse("energy.points")?;
            if points == 0 || hi < lo {
                return Err(err("energy.points", "need points >= 1 and energy.min <= energy.max"));
            }
            if points == 1 {
                vec![lo]
            } else {
                (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect()
            }
        };
        if energies.is_empty() || energies.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(err("energy", "energies must be positive and finite"));
        }
        let quadrature_order =
            if t.is_set("scatter.quadrature_order") { Some(t.parse::<usize>("scatter.quadrature_order")?) } else { None };
        let scatter = ScatterSettings { size, energies, quadrature_order };
        let min_size = match scatter.size {
            SizeChoice::Fixed(n) => n,
            SizeChoice::Auto(a) => a.start,
        };
        if let Some(q) = quadrature_order {
            if q < min_size {
                return Err(err("scatter.quadrature_order", format!("must be at least the inner size {min_size}")));
            }
        }

        let checks = CheckSettings {
            orders: t.list("checks.orders")?,
            betas: t.list("checks.betas")?,
            systems: t.parse("checks.systems")?,
            max_order: t.parse("checks.max_order")?,
            seed: t.parse("checks.seed")?,
            recursion_n_max: t.parse("checks.recursion_n_max")?,
        };
        if checks.orders.is_empty() || checks.orders.iter().any(|&n| n < 2) {
            return Err(err("checks.orders", "need quadrature orders >= 2"));
        }
        if checks.betas.is_empty() || checks.betas.iter().any(|b| !(b.is_finite() && *b > -1.0)) {
            return Err(err("checks.betas", "need beta values > -1"));
        }
        if checks.max_order < 2 {
            return Err(err("checks.max_order", "must be at least 2"));
        }
        if checks.recursion_n_max < 4 {
            return Err(err("checks.recursion_n_max", "must be at least 4"));
        }

        let tolerances = Tolerances {
            unitarity: t.positive("tolerance.unitarity")?,
            boundary: t.positive("tolerance.boundary")?,
            quadrature: t.positive("tolerance.quadrature")?,
            green: t.positive("tolerance.green")?,
            recursion: t.positive("tolerance.recursion")?,
        };
        let precision = match t.raw("precision") {
            "double" => Precision::Double,
            "extended" => Precision::Extended,
            other => return Err(err("precision", format!("expected 'double' or 'extended', got '{other}'"))),
        };
        let jobs = if t.is_set("jobs") {
            let j: usize = t.parse("jobs")?;
            if j == 0 {
                return Err(err("jobs", "must be at least 1"));
            }
            Some(j)
        } else {
            None
        };

        let cfg = RunConfig {
            command,
            ell,
            strength,
            nu,
            lambda,
            basis,
            potential,
            reference,
            scatter,
            checks,
            tolerances,
            precision,
            jobs,
            echo: BTreeMap::new(),
        };
        // The scattering energy range must lie in the supercritical regime
        // for this ell, which `params_at_k` checks once here.
        cfg.params_at_k(1.0)?;
        let mut echo = t.values;
        echo.insert("command".into(), command.name().into());
        echo.insert("nu".into(), format!("{nu}"));
        echo.insert("strength".into(), format!("{strength}"));
        echo.remove("jobs");
        Ok(RunConfig { echo, ..cfg })
    }

    pub fn params_at_k(&self, k: f64) -> Result<PhysicalParams, CliError> {
        PhysicalParams::new(self.ell, self.strength, k, self.lambda).map_err(|e| err("physical parameters", e))
    }

    /// Reference-problem parameters (`k = mu lambda`).
    pub fn reference_params(&self) -> Result<PhysicalParams, CliError> {
        PhysicalParams::from_mu_nu(self.reference.mu, self.nu, self.lambda).map_err(|e| err("mu", e))
    }

    /// `# key = value` lines for the output header. The worker count is
    /// left out so output does not depend on it.
    pub fn echo_lines(&self) -> Vec<String> {
        self.echo.iter().map(|(k, v)| format!("# {k} = {v}")).collect()
    }
}
