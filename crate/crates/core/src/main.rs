fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(logmat::cli::run(&args));
}
