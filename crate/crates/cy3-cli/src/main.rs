//! Binary entry point: run the CLI and translate errors to exit codes.

fn main() {
    if let Err(e) = cy3_cli::run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
