fn main() {
    std::process::exit(teich2::run());
}
