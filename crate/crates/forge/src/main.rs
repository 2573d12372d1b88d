fn main() {
    std::process::exit(subgoal_forge::cli::run(std::env::args_os()));
}
