fn main() {
    std::process::exit(normgeo::cli::main())
}
