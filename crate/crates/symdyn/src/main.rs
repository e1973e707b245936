use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let (code, report) = symdyn::cli::run(&argv);
    let _ = writeln!(std::io::stdout(), "{}", report.to_json());
    std::process::exit(code);
}
