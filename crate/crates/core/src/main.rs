fn main() {
    std::process::exit(curvemin::cli::main());
}
