fn main() {
    std::process::exit(invertcert::run(std::env::args_os()));
}
