#![no_main]
use libfuzzer_sys::fuzz_target;
use wignerkit_cli::curve::Curve;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(curve) = Curve::parse(text) {
            let back = Curve::parse(&curve.to_csv()).expect("printed curve reparses");
            assert_eq!(back.columns, curve.columns);
            assert_eq!(back.rows.len(), curve.rows.len());
        }
    }
});
