use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let started = Instant::now();
    let run = hodiff_tools::cli::execute(std::env::args_os());
    let _ = std::io::stdout().write_all(run.stdout.as_bytes());
    eprint!("{}", run.stderr);
    eprintln!("hodiff: finished in {:.2}s", started.elapsed().as_secs_f64());
    ExitCode::from(run.code as u8)
}
