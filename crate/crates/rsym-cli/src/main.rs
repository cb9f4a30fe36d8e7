use std::io::Write;

fn main() {
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    let code = rsym_cli::run(std::env::args_os(), rsym_cli::Io { out: &mut out, err: &mut err });
    let _ = out.flush();
    std::process::exit(code);
}
