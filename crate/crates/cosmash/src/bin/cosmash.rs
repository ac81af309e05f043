fn main() {
    let (code, body) = cosmash::cli::run(std::env::args());
    if code == 2 {
        eprint!("{body}");
    } else {
        print!("{body}");
    }
    std::process::exit(code);
}
