use pdmpct_cli::{parse_args, run, ParseError};

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let code = match parse_args(&argv) {
        Ok(config) => run(&config),
        Err(ParseError::Help(text)) => {
            print!("{text}");
            0
        }
        Err(ParseError::Usage(msg)) => {
            eprintln!("{}", msg.trim_end());
            2
        }
    };
    std::process::exit(code);
}
