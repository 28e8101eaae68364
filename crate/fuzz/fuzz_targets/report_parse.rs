#![no_main]
use libfuzzer_sys::fuzz_target;
use wignerkit_cli::Report;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = Report::parse(text) {
        // Printing a parsed report must parse back to the same entries.
        let again = Report::parse(&report.to_string()).expect("printed report reparses");
        assert_eq!(again.entries(), report.entries());
    }
});
