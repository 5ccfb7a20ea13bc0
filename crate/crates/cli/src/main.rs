use clap::error::ErrorKind;
use clap::Parser;
use ext_vanishing_cli::commands::{run, Cli};

fn main() {
    let code = match Cli::try_parse() {
        Ok(cli) => run(cli, &mut std::io::stdout(), &mut std::io::stderr()),
        Err(e) => {
            let _ = e.print();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            }
        }
    };
    std::process::exit(code);
}
