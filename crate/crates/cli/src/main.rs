use std::process::ExitCode;

use agfuzz_cli::{render_error, run_command, RunConfig};
use clap::Parser;

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run_command(&cfg) {
        Ok(report) => {
            print!("{}", report.render(cfg.format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            match cfg.format {
                agfuzz_cli::Format::Json => print!("{}", render_error(&e, cfg.format)),
                agfuzz_cli::Format::Text => eprint!("{}", render_error(&e, cfg.format)),
            }
            ExitCode::from(2)
        }
    }
}
