fn main() -> std::process::ExitCode {
    dexor::cli::main()
}
