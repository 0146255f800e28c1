fn main() {
    if let Err(e) = fracdyn::cli::run() {
        let code = e.exit_code();
        let report = serde_json::json!({ "error": e.to_string(), "exit_code": code });
        eprintln!("{report}");
        std::process::exit(code);
    }
}
