#![no_main]
use libfuzzer_sys::fuzz_target;
use wignerkit_cli::{Report, ScenarioConfig};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(report) = Report::parse(text) {
            if let Ok(config) = ScenarioConfig::from_report(&report) {
                let mut echo = Report::new();
                for (k, v) in config.echo() {
                    echo.set(format!("config.{k}"), v);
                }
                assert_eq!(ScenarioConfig::from_report(&echo).unwrap(), config);
            }
        }
    }
});
