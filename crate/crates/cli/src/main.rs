use std::io;

fn main() {
    let code = genquat_cli::run(
        std::env::args_os(),
        io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
