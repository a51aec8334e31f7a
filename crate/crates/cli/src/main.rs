use clap::Parser;
use twistq_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let o = run(&cli.command);
    if o.code >= 2 {
        eprint!("{}", o.out);
    } else {
        print!("{}", o.out);
    }
    std::process::exit(o.code);
}
