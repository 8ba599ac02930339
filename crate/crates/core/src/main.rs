fn main() {
    std::process::exit(dicke_chaos::cli::main(std::env::args_os()));
}
