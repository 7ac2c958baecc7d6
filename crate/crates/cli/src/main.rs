fn main() {
    eprintln!("crosscap: not yet implemented");
    std::process::exit(2);
}
