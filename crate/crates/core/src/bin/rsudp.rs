use std::process::ExitCode;

fn main() -> ExitCode {
    rsudp::harness::main_from_args(std::env::args_os())
}
