use std::process::ExitCode;

use clap::Parser;

use holocert::Certificate;
use holocert_cli::{
    cmd_list, cmd_verify, exit_code, render_list, render_report, resolve, Cli, Command, Format, Progress, EXIT_USAGE,
};

/// Reports each finished certificate on stderr.
struct Stderr;

impl Progress for Stderr {
    fn finished(&mut self, node: usize, c: &Certificate) {
        eprintln!(
            "node {node}: {} span {}/{} after {} generators",
            c.check, c.achieved_dim, c.target_dim, c.generators_consumed
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::List(args) => match cmd_list(&args) {
            Ok(r) => {
                match args.format {
                    Format::Json => println!("{}", serde_json::to_string_pretty(&r).expect("serializable")),
                    Format::Text => print!("{}", render_list(&r)),
                }
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Command::Verify(args) => {
            let result = resolve(&args).and_then(|cfg| {
                if args.allow_slow {
                    cmd_verify(&cfg, args.timing, &mut Stderr)
                } else {
                    cmd_verify(&cfg, args.timing, &mut ())
                }
            });
            match result {
                Ok(r) => {
                    match args.format {
                        Format::Json => println!("{}", serde_json::to_string_pretty(&r).expect("serializable")),
                        Format::Text => print!("{}", render_report(&r)),
                    }
                    exit_code(&r)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_USAGE
                }
            }
        }
    };
    ExitCode::from(code as u8)
}
