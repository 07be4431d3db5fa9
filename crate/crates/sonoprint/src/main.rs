use std::process::ExitCode;

fn main() -> ExitCode {
    match sonoprint::cli::run(std::env::args_os()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("sonoprint: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
