use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jsc::driver::{self, BuildConfig, DriverError, Mode};

/// Compiler for JSC, a class-based superset of ES5.
#[derive(Debug, Parser)]
#[command(name = "jscc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compile every source root into a classpool image.
    Build(Options),
    /// Run every check without writing an image.
    Check(Options),
    /// Report only undeclared-global writes in method bodies.
    Lint(Options),
}

#[derive(Debug, Args)]
struct Options {
    /// Source root; repeatable. Defaults to the JSCC_ROOTS path list.
    #[arg(long = "root", value_name = "DIR")]
    roots: Vec<PathBuf>,
    /// Where to write the image.
    #[arg(long, value_name = "FILE", default_value = "classpool.js")]
    out: PathBuf,
    /// Print diagnostics as one JSON object per line.
    #[arg(long)]
    json: bool,
    /// Fail the build on warnings.
    #[arg(long)]
    deny_warnings: bool,
    /// Also write `<out>.manifest` with each registration's byte range.
    #[arg(long)]
    manifest: bool,
    /// Replace the embedded runtime kernel with this file.
    #[arg(long, value_name = "FILE")]
    kernel: Option<PathBuf>,
}

impl Options {
    fn config(self) -> Result<BuildConfig, DriverError> {
        let mut roots = self.roots;
        if roots.is_empty() {
            if let Some(list) = std::env::var_os("JSCC_ROOTS") {
                roots = std::env::split_paths(&list).filter(|p| !p.as_os_str().is_empty()).collect();
            }
        }
        if roots.is_empty() {
            return Err(DriverError::Usage("no source root given; pass --root DIR or set JSCC_ROOTS".into()));
        }
        Ok(BuildConfig {
            roots,
            out_path: self.out,
            deny_warnings: self.deny_warnings,
            json_diagnostics: self.json,
            manifest: self.manifest,
            kernel_override: self.kernel,
        })
    }
}

fn run(mode: Mode, options: Options) -> Result<i32, DriverError> {
    let config = options.config()?;
    config.validate()?;
    let image_options = driver::image_options(&config)?;
    let sources = driver::load_sources(&config.roots)?;
    let result = driver::compile(&sources, mode, &image_options, config.deny_warnings);
    print!("{}", driver::render_diagnostics(&sources, &result.diagnostics, config.json_diagnostics));
    let code = driver::exit_code(mode, &result.diagnostics, config.deny_warnings);
    if let (0, Some(image)) = (code, &result.image) {
        std::fs::write(&config.out_path, &image.text)
            .map_err(|e| DriverError::Io { path: config.out_path.clone(), source: e })?;
        if config.manifest {
            let path = config.manifest_path();
            std::fs::write(&path, image.manifest_text()).map_err(|e| DriverError::Io { path, source: e })?;
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, options) = match cli.command {
        Command::Build(o) => (Mode::Build, o),
        Command::Check(o) => (Mode::Check, o),
        Command::Lint(o) => (Mode::Lint, o),
    };
    match run(mode, options) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("jscc: {e}");
            ExitCode::from(2)
        }
    }
}
