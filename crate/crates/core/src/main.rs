fn main() {
    std::process::exit(vqc_core::cli::main());
}
