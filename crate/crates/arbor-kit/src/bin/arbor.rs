use std::io::Write;

fn main() {
    let (code, output) = arbor_kit::cli::dispatch(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(output.as_bytes());
    let _ = stdout.flush();
    std::process::exit(code);
}
