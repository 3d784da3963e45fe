fn main() {
    std::process::exit(pascal_fields::cli::main_with_io());
}
