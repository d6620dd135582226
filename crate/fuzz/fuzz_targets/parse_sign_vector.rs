#![no_main]
use libfuzzer_sys::fuzz_target;
use schubert_core::SignVector;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(x) = text.parse::<SignVector>() {
        let printed = x.to_string();
        assert_eq!(printed.parse::<SignVector>().unwrap(), x);
        assert_eq!(x.negate().negate(), x);
        assert!(x.plus().is_disjoint(x.minus()));
    }
});
