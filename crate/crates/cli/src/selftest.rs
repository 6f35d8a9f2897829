//! The built-in corpus run by `orbitcat selftest`.

pub const CORPUS: &[(&str, &str)] = &[
    ("f7c3-inversion", include_str!("../scenarios/f7c3-inversion.json")),
    ("mat2-swap", include_str!("../scenarios/mat2-swap.json")),
    ("f3c3-inversion", include_str!("../scenarios/f3c3-inversion.json")),
    ("kronecker-swap", include_str!("../scenarios/kronecker-swap.json")),
    ("f5c4-character", include_str!("../scenarios/f5c4-character.json")),
    ("counit-char2", include_str!("../scenarios/counit-char2.json")),
    ("galois", include_str!("../scenarios/galois.json")),
];
