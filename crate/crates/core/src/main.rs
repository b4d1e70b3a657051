fn main() {
    std::process::exit(morsegrowth::cli::run(std::env::args_os()));
}
