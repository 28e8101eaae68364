#![no_main]
use libfuzzer_sys::fuzz_target;
use wignerkit_cli::ScenarioConfig;

// Tokens are NUL-separated so the fuzzer can produce any argv.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let args = std::iter::once("wignerkit").chain(text.split('\0'));
    let _ = ScenarioConfig::from_args(args);
});
