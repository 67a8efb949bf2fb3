use std::io::Write;
use std::process::ExitCode;

use ncg_cli::{dispatch, exit_code_for, RunConfig, EXIT_CHECK_FAILED, EXIT_PASS, EXIT_USAGE};

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse_args(std::env::args().skip(1)) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let report = match dispatch(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code_for(&e) as u8);
        }
    };
    let text = if cfg.json { report.to_json(cfg.timing) + "\n" } else { report.to_text(cfg.timing) };
    if std::io::stdout().write_all(text.as_bytes()).is_err() {
        return ExitCode::from(EXIT_CHECK_FAILED as u8);
    }
    ExitCode::from(if report.passed() { EXIT_PASS } else { EXIT_CHECK_FAILED } as u8)
}
