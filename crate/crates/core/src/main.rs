fn main() {
    std::process::exit(symstab::cli::main_with_env());
}
