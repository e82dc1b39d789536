fn main() {
    std::process::exit(entangle_tl::cli::main());
}
