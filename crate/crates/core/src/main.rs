fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(hforge::cli::run(&args));
}
