use std::io::{Read, Write};

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut stdin = String::new();
    if argv.iter().any(|a| a == "-") {
        std::io::stdin()
            .read_to_string(&mut stdin)
            .expect("read stdin");
    }
    let out = unipotent::cli::run_command(&argv, &stdin);
    std::io::stdout()
        .write_all(out.stdout.as_bytes())
        .expect("write stdout");
    std::io::stderr()
        .write_all(out.stderr.as_bytes())
        .expect("write stderr");
    std::process::exit(out.code);
}
