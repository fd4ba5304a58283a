use std::io::Write;

fn main() {
    let Some(result) = mgslab::cli::run(std::env::args_os()) else {
        return;
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(result.to_json().as_bytes());
    let _ = out.flush();
    std::process::exit(result.exit_code);
}
