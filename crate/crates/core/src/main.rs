fn main() -> std::process::ExitCode {
    genarc::cli::main()
}
