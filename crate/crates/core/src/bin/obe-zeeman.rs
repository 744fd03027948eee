use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use obe_zeeman::io::{self, config::Origin, preset::FigurePreset, ConfigError, RunError};

#[derive(Parser)]
#[command(
    name = "obe-zeeman",
    version,
    about = "Pump-probe spectra of a driven F=1 -> F'=0 Zeeman manifold"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the pump-probe detuning and write CSV/SVG/JSON
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out_csv: Option<String>,
        #[arg(long)]
        out_svg: Option<String>,
        #[arg(long)]
        out_json: Option<String>,
        /// chi | populations
        #[arg(long)]
        svg_panel: Option<String>,
    },
    /// Reproduce one of the reference spectra
    Figure {
        /// fig2 | fig3 | fig4 | fig5 | fig6
        name: String,
        #[arg(long)]
        outdir: PathBuf,
        #[arg(long)]
        gv_omega: Option<String>,
    },
    /// Solve a single detuning and print the point and report as JSON
    Point {
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep several drive amplitudes and print a report per amplitude
    Scan {
        /// Comma-separated drive amplitudes, e.g. 1,2.5,5,10
        #[arg(long, value_delimiter = ',')]
        vc_list: Vec<f64>,
        #[arg(long)]
        outdir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    vc: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    vp: Option<String>,
    #[arg(long = "omega-1m1", allow_hyphen_values = true)]
    omega_1m1: Option<String>,
    #[arg(long = "delta-c", allow_hyphen_values = true)]
    delta_c: Option<String>,
    /// min:max:n
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    /// fourier | timedomain
    #[arg(long)]
    solver: Option<String>,
    #[arg(long)]
    gv_omega: Option<String>,
    #[arg(long)]
    strict: bool,
}

impl Common {
    fn load(&self, extra: &[(&str, &Option<String>)]) -> Result<io::RunConfig, RunError> {
        let text = match &self.config {
            Some(path) => std::fs::read_to_string(path).map_err(|source| RunError::Io {
                path: path.clone(),
                source,
            })?,
            None => String::new(),
        };
        let mut flags: Vec<(String, String)> = [
            ("preset", &self.preset),
            ("vc", &self.vc),
            ("vp", &self.vp),
            ("omega_1m1", &self.omega_1m1),
            ("delta_c", &self.delta_c),
            ("sweep", &self.range),
            ("solver", &self.solver),
            ("gv_omega", &self.gv_omega),
        ]
        .iter()
        .chain(extra)
        .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
        .collect();
        if self.strict {
            flags.push(("strict".into(), "true".into()));
        }
        Ok(io::parse_config(&text, &flags)?)
    }
}

fn run(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::Sweep {
            common,
            out_csv,
            out_svg,
            out_json,
            svg_panel,
        } => {
            let cfg = common.load(&[
                ("out_csv", &out_csv),
                ("out_svg", &out_svg),
                ("out_json", &out_json),
                ("svg_panel", &svg_panel),
            ])?;
            for path in io::run::run_sweep(&cfg)? {
                println!("{}", path.display());
            }
        }
        Command::Figure {
            name,
            outdir,
            gv_omega,
        } => {
            let preset = FigurePreset::from_name(&name).ok_or_else(|| ConfigError::BadValue {
                origin: Origin::Flag,
                key: "figure".into(),
                value: name.clone(),
            })?;
            let gv = gv_omega
                .map(|s| {
                    s.parse::<f64>().map_err(|_| ConfigError::BadValue {
                        origin: Origin::Flag,
                        key: "gv_omega".into(),
                        value: s.clone(),
                    })
                })
                .transpose()?;
            for path in io::run_figure_preset(preset, &outdir, gv)? {
                println!("{}", path.display());
            }
        }
        Command::Point { delta, common } => {
            let cfg = common.load(&[])?;
            print!("{}", io::run::run_point(&cfg, delta)?);
        }
        Command::Scan {
            vc_list,
            outdir,
            common,
        } => {
            let cfg = common.load(&[])?;
            print!("{}", io::run::run_scan(&cfg, &vc_list, outdir.as_deref())?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
