fn main() {
    std::process::exit(spike_entropy::cli::run(std::env::args_os()));
}
