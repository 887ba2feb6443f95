//! Drives the command-line front end in-process, as the `friezelab` binary
//! does, showing output formats and exit statuses.

use friezelab::cli::run;

fn show(args: &[&str]) {
    let out = run(std::iter::once("friezelab").chain(args.iter().copied()));
    println!("$ friezelab {}", args.join(" "));
    print!("{}", out.stdout);
    print!("{}", out.stderr);
    println!("[exit {}]\n", out.code);
}

fn main() {
    show(&["count", "--k", "3", "--w", "1", "--q", "2"]);
    show(&["count", "--k", "4", "--w", "3", "--q", "2"]);
    show(&["count", "--family", "c4", "--n", "6", "--q", "2", "--method", "all"]);
    show(&["count", "--k", "4", "--w", "4", "--q", "7", "--format", "json"]);
    show(&["tables", "--which", "fig2", "--format", "csv"]);
    show(&["enumerate-quiddities", "--k", "2", "--n", "4", "--q", "3"]);
    show(&["enumerate-configs", "--family", "c3_pm", "--n", "5", "--q", "3", "--count-only"]);
    show(&["lift", "--q", "2", "--config", "1,0,0 0,1,0 0,0,1 1,1,1 1,0,0 0,1,0"]);
    show(&["count", "--k", "3", "--w", "1", "--q", "6"]);
}
