//! `phase-stretch` command-line tool: PST / PAGE / VEViD over single
//! images or numbered frame sequences, plus the runtime benchmark.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 I/O error,
//! 3 internal error.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use phase_stretch::spectral::LowpassSpec;
use phase_stretch::{Image, Page, PageParams, Pst, PstParams, Vevid, VevidChannel, VevidParams};
use phase_stretch_cli::bench::{run_bench, to_csv, BenchAlgorithm, BenchConfig, Resolution};
use phase_stretch_cli::config::ConfigMap;
use phase_stretch_cli::{apply, io, CliError};

#[derive(Parser)]
#[command(
    name = "phase-stretch",
    version,
    about = "Spectral phase-kernel image processing: PST edges, PAGE directional edges, VEViD enhancement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Edge/texture detection with the phase-stretch kernel
    Pst(PstArgs),
    /// Directional edge extraction with an oriented kernel bank
    Page(PageArgs),
    /// Low-light or color enhancement on an HSV channel
    Vevid(VevidArgs),
    /// Per-frame runtime benchmark over synthetic frames (CSV output)
    Bench(BenchArgs),
}

#[derive(Args)]
struct IoArgs {
    /// Input image (PNG/JPEG/BMP), or frame directory with --frames
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Output PNG path, or output directory with --frames
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Flat `key = value` config file; explicit flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Process every frame in the input directory (outputs keep the
    /// frame's name, as PNG)
    #[arg(long)]
    frames: bool,
}

#[derive(Args)]
struct PstArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Kernel phase strength S (peak phase in radians)
    #[arg(long)]
    strength: Option<f64>,
    /// Frequency warp W of the arctangent profile
    #[arg(long)]
    warp: Option<f64>,
    /// Gaussian low-pass cutoff (normalized radial frequency)
    #[arg(long)]
    lowpass_sigma: Option<f64>,
    /// Disable the low-pass filter
    #[arg(long)]
    no_lowpass: bool,
    /// Lower edge threshold in [-1, 0] on the normalized phase map
    #[arg(long)]
    thresh_min: Option<f64>,
    /// Upper edge threshold in [0, 1] on the normalized phase map
    #[arg(long)]
    thresh_max: Option<f64>,
    /// Drop edge components smaller than this many pixels
    #[arg(long)]
    min_component: Option<usize>,
    /// Thin edges to 1-pixel strokes (true/false)
    #[arg(long)]
    thin: Option<bool>,
    /// Emit the binary edge map instead of the analog phase map
    #[arg(long)]
    digital: bool,
}

#[derive(Args)]
struct PageArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Number of kernel orientations spread over [0, pi)
    #[arg(long)]
    directions: Option<usize>,
    /// Center of the |k'_m| band selector (cycles/sample; 0 = baseband)
    #[arg(long)]
    mu1: Option<f64>,
    /// Width of the |k'_m| band selector
    #[arg(long)]
    sigma1: Option<f64>,
    /// Gain of the band selector
    #[arg(long)]
    s1: Option<f64>,
    /// Log-domain center of the |k'_n| log-normal profile
    #[arg(long)]
    mu2: Option<f64>,
    /// Log-domain width of the |k'_n| profile
    #[arg(long)]
    sigma2: Option<f64>,
    /// Gain of the edge profile
    #[arg(long)]
    s2: Option<f64>,
    /// Gaussian low-pass cutoff (normalized radial frequency)
    #[arg(long)]
    lowpass_sigma: Option<f64>,
    /// Disable the low-pass filter
    #[arg(long)]
    no_lowpass: bool,
    /// Lower edge threshold in [-1, 0] (per direction layer)
    #[arg(long)]
    thresh_min: Option<f64>,
    /// Upper edge threshold in [0, 1] (per direction layer)
    #[arg(long)]
    thresh_max: Option<f64>,
    /// Drop edge components smaller than this many pixels
    #[arg(long)]
    min_component: Option<usize>,
    /// Thin edges to 1-pixel strokes (true/false)
    #[arg(long)]
    thin: Option<bool>,
    /// Also write one grayscale image per direction into this directory
    #[arg(long)]
    layers: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChannelArg {
    Value,
    Saturation,
}

#[derive(Args)]
struct VevidArgs {
    #[command(flatten)]
    io: IoArgs,
    /// HSV channel to enhance: value (low-light) or saturation (color)
    #[arg(long, value_enum)]
    channel: Option<ChannelArg>,
    /// Use the closed-form lite approximation (no transforms)
    #[arg(long)]
    lite: bool,
    /// Kernel phase strength S (radians at DC)
    #[arg(long)]
    strength: Option<f64>,
    /// Kernel spectral variance T
    #[arg(long)]
    variance: Option<f64>,
    /// Regularization offset b added before the transform
    #[arg(long)]
    regularization: Option<f64>,
    /// Phase activation gain G
    #[arg(long)]
    gain: Option<f64>,
}

#[derive(Args)]
struct BenchArgs {
    /// Write the CSV here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Flat `key = value` config file; explicit flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Timed repetitions per (algorithm, resolution); minimum 3
    #[arg(long)]
    repetitions: Option<usize>,
    /// Subset of: pst,page,vevid,vevid-lite
    #[arg(long, value_delimiter = ',')]
    algorithms: Vec<String>,
    /// Resolutions: 480p,720p,1080p,2k,4k or WxH
    #[arg(long, value_delimiter = ',')]
    resolutions: Vec<String>,
    /// PAGE orientation count used in the benchmark
    #[arg(long)]
    directions: Option<usize>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version print to stdout and exit 0; everything else
            // is a usage error (exit 1).
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = dispatch(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Pst(args) => run_pst(args),
        Command::Page(args) => run_page(args),
        Command::Vevid(args) => run_vevid(args),
        Command::Bench(args) => run_bench_command(args),
    }
}

/// Core parameter names rendered as the CLI flags they correspond to.
fn flag_for(name: &str) -> String {
    match name {
        "lowpass.sigma" => "lowpass-sigma".to_string(),
        "digital_output" => "digital".to_string(),
        other => other.replace('_', "-"),
    }
}

fn validation_to_usage(result: phase_stretch::Result<()>) -> Result<(), CliError> {
    result.map_err(|e| match e {
        phase_stretch::Error::InvalidParameter { name, reason } => {
            CliError::usage(format!("invalid value for --{}: {reason}", flag_for(name)))
        }
        other => CliError::Internal(other.to_string()),
    })
}

struct IoPlan {
    input: PathBuf,
    output: Option<PathBuf>,
    frames: bool,
}

fn resolve_io(args: &IoArgs, cfg: &mut ConfigMap, output_required: bool) -> Result<IoPlan, CliError> {
    let input = args
        .input
        .clone()
        .or_else(|| cfg.take_path("input"))
        .ok_or_else(|| CliError::usage("missing required --input"))?;
    let output = args.output.clone().or_else(|| cfg.take_path("output"));
    if output_required && output.is_none() {
        return Err(CliError::usage("missing required --output"));
    }
    let frames = args.frames || cfg.take_bool("frames")?.unwrap_or(false);
    Ok(IoPlan {
        input,
        output,
        frames,
    })
}

fn resolve_lowpass(
    flag_sigma: Option<f64>,
    flag_disable: bool,
    cfg: &mut ConfigMap,
    default: LowpassSpec,
) -> Result<LowpassSpec, CliError> {
    let sigma = flag_sigma
        .or(cfg.take_f64("lowpass-sigma")?)
        .unwrap_or(default.sigma);
    let disabled = flag_disable || cfg.take_bool("no-lowpass")?.unwrap_or(false);
    Ok(if disabled {
        LowpassSpec::disabled()
    } else {
        LowpassSpec::enabled(sigma)
    })
}

fn with_frame_context(err: CliError, frame: &Path) -> CliError {
    let msg = format!("frame {}: {err}", frame.display());
    match err {
        CliError::Usage(_) => CliError::Usage(msg),
        CliError::Io(_) => CliError::Io(msg),
        CliError::Internal(_) => CliError::Internal(msg),
    }
}

/// Run `process` over one image or every frame of a directory. Frame
/// outputs keep the input file's stem with a `.png` extension.
fn process_plan(
    plan: &IoPlan,
    process: impl Fn(&Image) -> Result<Image, CliError>,
) -> Result<(), CliError> {
    let output = plan
        .output
        .as_ref()
        .expect("output presence checked at resolve time");
    if plan.frames {
        let frames = io::list_frames(&plan.input)?;
        std::fs::create_dir_all(output)
            .map_err(|e| CliError::io(format!("cannot create {}: {e}", output.display())))?;
        for frame in frames {
            let image = io::load_image(&frame)?;
            let result = process(&image).map_err(|e| with_frame_context(e, &frame))?;
            let stem = frame
                .file_stem()
                .expect("listed frames have file names")
                .to_string_lossy();
            io::save_image(&result, &output.join(format!("{stem}.png")))?;
        }
        Ok(())
    } else {
        let image = io::load_image(&plan.input)?;
        let result = process(&image)?;
        io::save_image(&result, output)
    }
}

fn run_pst(args: PstArgs) -> Result<(), CliError> {
    let mut cfg = ConfigMap::load(args.io.config.as_deref())?;
    let plan = resolve_io(&args.io, &mut cfg, true)?;
    let d = PstParams::default();
    let params = PstParams {
        strength: args.strength.or(cfg.take_f64("strength")?).unwrap_or(d.strength),
        warp: args.warp.or(cfg.take_f64("warp")?).unwrap_or(d.warp),
        lowpass: resolve_lowpass(args.lowpass_sigma, args.no_lowpass, &mut cfg, d.lowpass)?,
        thresh_min: args
            .thresh_min
            .or(cfg.take_f64("thresh-min")?)
            .unwrap_or(d.thresh_min),
        thresh_max: args
            .thresh_max
            .or(cfg.take_f64("thresh-max")?)
            .unwrap_or(d.thresh_max),
        min_component: args
            .min_component
            .or(cfg.take_usize("min-component")?)
            .unwrap_or(d.min_component),
        thin: args.thin.or(cfg.take_bool("thin")?).unwrap_or(d.thin),
        digital_output: args.digital || cfg.take_bool("digital")?.unwrap_or(false),
    };
    cfg.finish()?;
    validation_to_usage(params.validate())?;
    let pst = Pst::new(params)?;
    process_plan(&plan, |image| apply::pst_output_image(&pst, image))
}

fn run_page(args: PageArgs) -> Result<(), CliError> {
    let mut cfg = ConfigMap::load(args.io.config.as_deref())?;
    let layers_dir = args.layers.clone().or_else(|| cfg.take_path("layers"));
    let plan = resolve_io(&args.io, &mut cfg, false)?;
    if plan.output.is_none() && layers_dir.is_none() {
        return Err(CliError::usage("need --output and/or --layers"));
    }
    if plan.frames && layers_dir.is_some() {
        return Err(CliError::usage("--layers is not supported with --frames"));
    }
    let d = PageParams::default();
    let params = PageParams {
        mu1: args.mu1.or(cfg.take_f64("mu1")?).unwrap_or(d.mu1),
        sigma1: args.sigma1.or(cfg.take_f64("sigma1")?).unwrap_or(d.sigma1),
        s1: args.s1.or(cfg.take_f64("s1")?).unwrap_or(d.s1),
        mu2: args.mu2.or(cfg.take_f64("mu2")?).unwrap_or(d.mu2),
        sigma2: args.sigma2.or(cfg.take_f64("sigma2")?).unwrap_or(d.sigma2),
        s2: args.s2.or(cfg.take_f64("s2")?).unwrap_or(d.s2),
        directions: args
            .directions
            .or(cfg.take_usize("directions")?)
            .unwrap_or(d.directions),
        lowpass: resolve_lowpass(args.lowpass_sigma, args.no_lowpass, &mut cfg, d.lowpass)?,
        thresh_min: args
            .thresh_min
            .or(cfg.take_f64("thresh-min")?)
            .unwrap_or(d.thresh_min),
        thresh_max: args
            .thresh_max
            .or(cfg.take_f64("thresh-max")?)
            .unwrap_or(d.thresh_max),
        min_component: args
            .min_component
            .or(cfg.take_usize("min-component")?)
            .unwrap_or(d.min_component),
        thin: args.thin.or(cfg.take_bool("thin")?).unwrap_or(d.thin),
    };
    cfg.finish()?;
    validation_to_usage(params.validate())?;
    let page = Page::new(params)?;

    if let Some(dir) = &layers_dir {
        let image = io::load_image(&plan.input)?;
        let layers = apply::page_layer_images(&page, &image)?;
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::io(format!("cannot create {}: {e}", dir.display())))?;
        for (i, layer) in layers.iter().enumerate() {
            io::save_grid(layer, &dir.join(format!("layer_{i:02}.png")))?;
        }
        if let Some(output) = &plan.output {
            let fused = apply::page_output_image(&page, &image)?;
            io::save_image(&fused, output)?;
        }
        return Ok(());
    }
    process_plan(&plan, |image| apply::page_output_image(&page, image))
}

fn run_vevid(args: VevidArgs) -> Result<(), CliError> {
    let mut cfg = ConfigMap::load(args.io.config.as_deref())?;
    let plan = resolve_io(&args.io, &mut cfg, true)?;
    let d = VevidParams::default();
    let channel = match args.channel {
        Some(ChannelArg::Value) => VevidChannel::Value,
        Some(ChannelArg::Saturation) => VevidChannel::Saturation,
        None => match cfg.take_string("channel").as_deref() {
            None => d.channel,
            Some("value") => VevidChannel::Value,
            Some("saturation") => VevidChannel::Saturation,
            Some(other) => {
                return Err(CliError::usage(format!(
                    "key `channel`: expected value or saturation, got `{other}`"
                )))
            }
        },
    };
    let params = VevidParams {
        strength: args.strength.or(cfg.take_f64("strength")?).unwrap_or(d.strength),
        variance: args.variance.or(cfg.take_f64("variance")?).unwrap_or(d.variance),
        regularization: args
            .regularization
            .or(cfg.take_f64("regularization")?)
            .unwrap_or(d.regularization),
        gain: args.gain.or(cfg.take_f64("gain")?).unwrap_or(d.gain),
        channel,
        lite: args.lite || cfg.take_bool("lite")?.unwrap_or(false),
    };
    cfg.finish()?;
    validation_to_usage(params.validate())?;
    let vevid = Vevid::new(params)?;
    process_plan(&plan, |image| apply::vevid_output_image(&vevid, image))
}

fn run_bench_command(args: BenchArgs) -> Result<(), CliError> {
    let mut cfg = ConfigMap::load(args.config.as_deref())?;
    let defaults = BenchConfig::default();

    let algorithm_names: Vec<String> = if args.algorithms.is_empty() {
        cfg.take_string("algorithms")
            .map(|v| v.split(',').map(|s| s.trim().to_string()).collect())
            .unwrap_or_default()
    } else {
        args.algorithms
    };
    let algorithms = if algorithm_names.is_empty() {
        defaults.algorithms.clone()
    } else {
        algorithm_names
            .iter()
            .map(|s| BenchAlgorithm::from_str(s))
            .collect::<Result<Vec<_>, _>>()?
    };

    let resolution_names: Vec<String> = if args.resolutions.is_empty() {
        cfg.take_string("resolutions")
            .map(|v| v.split(',').map(|s| s.trim().to_string()).collect())
            .unwrap_or_default()
    } else {
        args.resolutions
    };
    let resolutions = if resolution_names.is_empty() {
        defaults.resolutions.clone()
    } else {
        resolution_names
            .iter()
            .map(|s| Resolution::from_str(s))
            .collect::<Result<Vec<_>, _>>()?
    };

    let config = BenchConfig {
        algorithms,
        resolutions,
        repetitions: args
            .repetitions
            .or(cfg.take_usize("repetitions")?)
            .unwrap_or(defaults.repetitions),
        directions: args
            .directions
            .or(cfg.take_usize("directions")?)
            .unwrap_or(defaults.directions),
    };
    let output = args.output.or_else(|| cfg.take_path("output"));
    cfg.finish()?;

    let records = run_bench(&config)?;
    let csv = to_csv(&records);
    match output {
        Some(path) if path != Path::new("-") => std::fs::write(&path, csv)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display()))),
        _ => {
            print!("{csv}");
            Ok(())
        }
    }
}
