fn main() {
    let o = ski_cli::run(std::env::args_os());
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    std::process::exit(o.code);
}
