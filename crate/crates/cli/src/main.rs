fn main() {
    std::process::exit(mlf_audit::run(std::env::args_os()));
}
