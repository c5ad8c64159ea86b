use clap::Parser;
use nijenhuis_cli::{execute, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let report = execute(&cli.command);
    println!("{}", report.render(cli.json));
    std::process::exit(report.status.exit_code());
}
