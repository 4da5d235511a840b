fn main() {
    std::process::exit(llab::run(std::env::args_os()));
}
