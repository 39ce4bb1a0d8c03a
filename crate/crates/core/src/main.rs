fn main() {
    let result = pcsplab::cli::run(std::env::args_os());
    if result.exit_code == pcsplab::cli::EXIT_OK || result.exit_code == pcsplab::cli::EXIT_NEGATIVE {
        print!("{}", result.report);
    } else {
        eprint!("{}", result.report);
    }
    std::process::exit(result.exit_code);
}
