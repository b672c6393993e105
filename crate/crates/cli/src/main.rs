fn main() {
    std::process::exit(mldeg_cli::main_entry());
}
