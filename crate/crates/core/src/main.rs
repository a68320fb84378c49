use std::io::Write;

fn main() {
    let out = polytract::cli::run(std::env::args_os(), &mut std::io::stdin());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    std::process::exit(out.code);
}
