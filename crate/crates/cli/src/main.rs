use clap::Parser;

use disasm_advisor::app::{dispatch, Cli};

/// DISASM_ADVISOR_THREADS caps the rayon worker count; 0 or unset means
/// auto. Returns a usage-style message on a malformed value.
fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("DISASM_ADVISOR_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("DISASM_ADVISOR_THREADS must be a non-negative integer, got '{raw}'"))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| format!("cannot configure {threads} worker threads: {e}"))?;
    }
    Ok(())
}

fn main() {
    env_logger::init();
    if let Err(message) = configure_threads() {
        eprintln!("disasm-advisor: {message}");
        std::process::exit(2);
    }
    let cli = Cli::parse();
    if let Err(e) = dispatch(cli) {
        eprintln!("disasm-advisor: {}", e.message());
        std::process::exit(e.code());
    }
}
