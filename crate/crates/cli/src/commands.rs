use std::io::Write;
use std::path::Path;

use abelianfft_core::circulant::{g_naive_convolve, GCirculant};
use abelianfft_core::complex::{hadamard, max_abs_diff, scaled_tolerance};
use abelianfft_core::fft::{self, bench, BenchConfig, FactorStrategy, PlanG};
use abelianfft_core::fourier::{apply_d, apply_f, g_circulant_eigenvalues, CharacterTable};
use abelianfft_core::verify::{self, Suite, VerifyConfig, DOUBLING_RATIO_RANGE};
use abelianfft_core::{Complex, Direction, FiniteAbelianGroup};
use clap::ValueEnum;

use crate::error::{CliError, CliResult};
use crate::format::{fmt_complex, Table};
use crate::io::{self, Format};

/// Options shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Settings {
    pub tolerance: f64,
    pub seed: u64,
    pub oracle_cap: usize,
    /// Forced file format; otherwise chosen from the file extension.
    pub format: Option<Format>,
    pub porcelain: bool,
    pub precision: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            tolerance: abelianfft_core::complex::DEFAULT_TOLERANCE,
            seed: 0,
            oracle_cap: abelianfft_core::DEFAULT_ORACLE_CAP,
            format: None,
            porcelain: false,
            precision: 6,
        }
    }
}

impl Settings {
    pub fn validate(&self) -> CliResult<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(CliError::Semantic("--tolerance must be positive".into()));
        }
        if self.oracle_cap == 0 {
            return Err(CliError::Semantic("--oracle-cap must be at least 1".into()));
        }
        Ok(())
    }

    fn table(&self) -> Table {
        Table::new(self.porcelain)
    }
}

/// Output streams, so commands can be driven from tests.
pub struct Streams<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Dense O(|G|²) matrix products.
    Naive,
    /// Radix-2 FFT per power-of-two factor, dense per-factor otherwise.
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    /// D = (1/|G|)·F*, coordinates in the Fourier basis.
    Analysis,
    /// F, the inverse of analysis.
    Synthesis,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Analysis => Direction::Analysis,
            DirectionArg::Synthesis => Direction::Synthesis,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CirculantAction {
    /// Print the dense G-circulant.
    Materialize,
    /// Print the eigenvalues Λ_g.
    Spectrum,
    /// Print the generators of the blocks C_0..C_{k-1}.
    Blocks,
    /// Check C = F·diag(Λ)·(1/|G|)F* against the tolerance.
    Check,
}

pub fn parse_group(spec: &str) -> CliResult<FiniteAbelianGroup> {
    spec.parse().map_err(|e: abelianfft_core::Error| CliError::Semantic(e.to_string()))
}

fn read_input(settings: &Settings, path: &Path, group: &FiniteAbelianGroup) -> CliResult<Vec<Complex>> {
    let v = io::read_vector_file(path, settings.format)?;
    if v.len() != group.order() {
        return Err(CliError::Semantic(format!(
            "{} has {} elements but {group} has order {}",
            path.display(),
            v.len(),
            group.order()
        )));
    }
    Ok(v.into_inner())
}

fn emit_vector(settings: &Settings, v: &[Complex], output: Option<&Path>, io: &mut Streams) -> CliResult<()> {
    match output {
        Some(path) => {
            let format = settings.format.unwrap_or_else(|| Format::for_path(path));
            io::write_file(path, &io::write_vector(v, format))
        }
        None => {
            let text = io::write_vector(v, settings.format.unwrap_or(Format::Json));
            write!(io.out, "{text}").map_err(stream_error)
        }
    }
}

fn stream_error(e: std::io::Error) -> CliError {
    CliError::Semantic(format!("write failed: {e}"))
}

fn check_cap(settings: &Settings, group: &FiniteAbelianGroup, what: &str) -> CliResult<()> {
    if group.order() > settings.oracle_cap {
        return Err(CliError::ResourceLimit(format!(
            "{what} needs a dense {0}×{0} matrix, above the oracle cap of {1} (raise --oracle-cap)",
            group.order(),
            settings.oracle_cap
        )));
    }
    Ok(())
}

fn normalization(direction: Direction) -> &'static str {
    match direction {
        Direction::Analysis => "D = (1/|G|)·F*",
        Direction::Synthesis => "F (unnormalized)",
    }
}

pub fn transform(
    settings: &Settings,
    group_spec: &str,
    input: &Path,
    direction: Direction,
    engine: Engine,
    output: Option<&Path>,
    io: &mut Streams,
) -> CliResult<()> {
    let group = parse_group(group_spec)?;
    let x = read_input(settings, input, &group)?;
    let y = match (engine, direction) {
        (Engine::Fast, _) => PlanG::new(&group).execute(&x, direction)?,
        (Engine::Naive, Direction::Synthesis) => apply_f(&group, &x)?,
        (Engine::Naive, Direction::Analysis) => apply_d(&group, &x)?,
    };
    writeln!(
        io.err,
        "group {group}  engine {}  direction {direction}  normalization {}",
        engine_name(engine),
        normalization(direction)
    )
    .map_err(stream_error)?;
    emit_vector(settings, &y, output, io)
}

fn engine_name(engine: Engine) -> &'static str {
    match engine {
        Engine::Naive => "naive",
        Engine::Fast => "fast",
    }
}

pub fn convolve(
    settings: &Settings,
    group_spec: &str,
    c_path: &Path,
    d_path: &Path,
    engine: Engine,
    output: Option<&Path>,
    io: &mut Streams,
) -> CliResult<()> {
    let group = parse_group(group_spec)?;
    let c = read_input(settings, c_path, &group)?;
    let d = read_input(settings, d_path, &group)?;
    let result = match engine {
        Engine::Naive => {
            writeln!(io.err, "group {group}  engine naive  O(|G|²) direct sum").map_err(stream_error)?;
            g_naive_convolve(&group, &c, &d)?
        }
        Engine::Fast if group.rank() == 1 && group.order().is_power_of_two() => {
            writeln!(io.err, "group {group}  engine fast  radix-2 circular convolution")
                .map_err(stream_error)?;
            fft::fast_convolve(&c, &d)?
        }
        Engine::Fast if group.rank() == 0 => {
            writeln!(io.err, "group {group}  engine fast  trivial group").map_err(stream_error)?;
            vec![c[0] * d[0]]
        }
        Engine::Fast => {
            let plan = PlanG::new(&group);
            for s in plan.strategies() {
                if let FactorStrategy::Dense { k, .. } = s {
                    writeln!(io.err, "notice: factor Z{k} is not a power of two; using a dense {k}×{k} transform on that axis")
                        .map_err(stream_error)?;
                }
            }
            writeln!(io.err, "group {group}  engine fast  diagonalized by the group transform")
                .map_err(stream_error)?;
            // c∗d = F·(|G|·(Dc ∘ Dd))
            let n = group.order() as f64;
            let dc = plan.execute(&c, Direction::Analysis)?;
            let dd = plan.execute(&d, Direction::Analysis)?;
            let prod: Vec<Complex> = hadamard(&dc, &dd)?.into_iter().map(|z| z * n).collect();
            plan.execute(&prod, Direction::Synthesis)?
        }
    };
    emit_vector(settings, &result, output, io)
}

fn parse_element(group: &FiniteAbelianGroup, label: &str) -> CliResult<usize> {
    let coords: Result<Vec<usize>, _> = label
        .trim_matches(|ch| ch == '(' || ch == ')')
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>())
        .collect();
    let coords = coords.map_err(|_| CliError::Semantic(format!("bad element label {label:?}")))?;
    group
        .index_of_coords(&coords)
        .map_err(|e| CliError::Semantic(format!("bad element label {label:?}: {e}")))
}

pub fn characters(
    settings: &Settings,
    group_spec: &str,
    element: Option<&str>,
    io: &mut Streams,
) -> CliResult<()> {
    let group = parse_group(group_spec)?;
    let rows: Vec<usize> = match element {
        Some(label) => vec![parse_element(&group, label)?],
        None => {
            check_cap(settings, &group, "the character table")?;
            (0..group.order()).collect()
        }
    };
    let table = CharacterTable::new(&group);
    let mut out = settings.table();
    if !settings.porcelain {
        let mut header = vec!["g \\ x".to_string()];
        header.extend((0..group.order()).map(|x| group.element_at(x).expect("in range").to_string()));
        out.row(header);
    }
    for g in rows {
        let mut cells = vec![group.element_at(g)?.to_string()];
        cells.extend((0..group.order()).map(|x| fmt_complex(table.value(x, g), settings.precision)));
        out.row(cells);
    }
    write!(io.out, "{out}").map_err(stream_error)
}

pub fn circulant(
    settings: &Settings,
    group_spec: &str,
    v_path: &Path,
    action: CirculantAction,
    output: Option<&Path>,
    io: &mut Streams,
) -> CliResult<()> {
    let group = parse_group(group_spec)?;
    let v = read_input(settings, v_path, &group)?;
    let gc = GCirculant::new(group.clone(), v.clone())?;
    let p = settings.precision;
    match action {
        CirculantAction::Materialize => {
            check_cap(settings, &group, "materialize")?;
            let m = gc.materialize(settings.oracle_cap)?;
            if let Some(path) = output {
                return io::write_file(path, &io::write_matrix_json(&m));
            }
            let mut out = settings.table();
            for i in 0..m.rows() {
                out.row(m.row(i).iter().map(|&z| fmt_complex(z, p)).collect());
            }
            write!(io.out, "{out}").map_err(stream_error)
        }
        CirculantAction::Spectrum => {
            let spectrum = g_circulant_eigenvalues(&group, &v)?;
            if output.is_some() {
                return emit_vector(settings, spectrum.values(), output, io);
            }
            let mut out = settings.table();
            for (g, lambda) in spectrum.values().iter().enumerate() {
                out.row(vec![group.element_at(g)?.to_string(), fmt_complex(*lambda, p)]);
            }
            write!(io.out, "{out}").map_err(stream_error)
        }
        CirculantAction::Blocks => {
            let blocks = gc.block_decompose()?;
            let mut out = settings.table();
            for (m, block) in blocks.iter().enumerate() {
                let mut cells = vec![format!("C_{m}"), block.group().to_string()];
                cells.extend(block.generator().iter().map(|&z| fmt_complex(z, p)));
                out.row(cells);
            }
            write!(io.out, "{out}").map_err(stream_error)
        }
        CirculantAction::Check => {
            check_cap(settings, &group, "the diagonalization check")?;
            let residual = abelianfft_core::fourier::diagonalize_check(&group, &v, settings.oracle_cap)?;
            let tol = scaled_tolerance(settings.tolerance, &v);
            let pass = residual <= tol;
            if settings.porcelain {
                writeln!(io.out, "{residual:e}\t{tol:e}\t{}", if pass { "PASS" } else { "FAIL" })
            } else {
                writeln!(
                    io.out,
                    "residual {residual:.3e}  tolerance {tol:.3e}  {}",
                    if pass { "PASS" } else { "FAIL" }
                )
            }
            .map_err(stream_error)?;
            if pass {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "diagonalization residual {residual:e} exceeds {tol:e}"
                )))
            }
        }
    }
}

pub fn run_verify(settings: &Settings, scope: &str, timing: bool, io: &mut Streams) -> CliResult<()> {
    let suites = match scope {
        "all" => Vec::new(),
        name => vec![name.parse::<Suite>().map_err(|e| CliError::Semantic(e.to_string()))?],
    };
    let config = VerifyConfig {
        seed: settings.seed,
        tolerance_scale: settings.tolerance / abelianfft_core::complex::DEFAULT_TOLERANCE,
        oracle_cap: settings.oracle_cap,
        include_timing: timing,
    };
    let report = verify::run(&suites, &config);
    if settings.porcelain {
        write!(io.out, "{}", report.to_tsv())
    } else {
        writeln!(io.out, "{report}")
    }
    .map_err(stream_error)?;
    for w in report.warnings() {
        writeln!(io.err, "warning: {} missed its soft bound ({})", w.name, w.detail).map_err(stream_error)?;
    }
    let failed: Vec<&str> = report.failures().map(|c| c.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join(", ")))
    }
}

pub const MAX_BENCH_EXPONENT: u32 = 24;

pub fn run_bench(settings: &Settings, max_exponent: u32, repetitions: usize, io: &mut Streams) -> CliResult<()> {
    if max_exponent > MAX_BENCH_EXPONENT {
        return Err(CliError::Semantic(format!(
            "--max-exponent {max_exponent} is above {MAX_BENCH_EXPONENT}"
        )));
    }
    let sizes: Vec<usize> = (max_exponent.min(12)..=max_exponent).map(|k| 1usize << k).collect();
    let config = BenchConfig {
        repetitions,
        naive_cap: settings.oracle_cap,
        seed: settings.seed,
        ..BenchConfig::default()
    };
    let report = bench(&sizes, &config)?;
    let mut out = settings.table();
    out.row(
        ["n", "fft_us", "naive_us", "speedup", "doubling_ratio"]
            .map(String::from)
            .to_vec(),
    );
    let (lo, hi) = DOUBLING_RATIO_RANGE;
    let mut warnings = Vec::new();
    for row in &report.rows {
        let micros = |d: std::time::Duration| format!("{:.3}", d.as_secs_f64() * 1e6);
        out.row(vec![
            format!("2^{}", row.n.trailing_zeros()),
            micros(row.fft),
            row.naive.map_or("skipped".into(), micros),
            row.speedup().map_or("-".into(), |s| format!("{s:.1}")),
            row.doubling_ratio.map_or("-".into(), |q| format!("{q:.2}")),
        ]);
        if let Some(q) = row.doubling_ratio {
            if !(lo..=hi).contains(&q) {
                warnings.push(format!("doubling ratio {q:.2} at n = {} is outside [{lo}, {hi}]", row.n));
            }
        }
    }
    write!(io.out, "{out}").map_err(stream_error)?;
    for w in warnings {
        writeln!(io.err, "warning: {w}").map_err(stream_error)?;
    }
    Ok(())
}

/// `max_abs_diff` between the naive and fast transforms of `x`.
pub fn engine_disagreement(group: &FiniteAbelianGroup, x: &[Complex], direction: Direction) -> CliResult<f64> {
    let fast = PlanG::new(group).execute(x, direction)?;
    let slow = match direction {
        Direction::Synthesis => apply_f(group, x)?,
        Direction::Analysis => apply_d(group, x)?,
    };
    Ok(max_abs_diff(&fast, &slow)?)
}
