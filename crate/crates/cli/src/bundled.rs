//! Inputs and golden outputs compiled into the binary.

pub const GCMS: &[(&str, &str)] = &[
    ("a1", include_str!("../data/gcm/a1.json")),
    ("a2", include_str!("../data/gcm/a2.json")),
    ("b2", include_str!("../data/gcm/b2.json")),
    ("g2", include_str!("../data/gcm/g2.json")),
    ("affine_a1", include_str!("../data/gcm/affine_a1.json")),
    ("hyperbolic", include_str!("../data/gcm/hyperbolic.json")),
];

pub fn gcm(name: &str) -> Option<&'static str> {
    GCMS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// A golden file and the invocation that reproduces it.
pub struct Golden {
    pub file: &'static str,
    pub contents: &'static str,
    pub gcm: &'static str,
    pub levi: Option<&'static str>,
    /// `None` for `inequalities`, the word triple for `face`.
    pub face: Option<[&'static str; 3]>,
}

pub const GOLDEN: &[Golden] = &[
    Golden {
        file: "a1_inequalities.json",
        contents: include_str!("../data/golden/a1_inequalities.json"),
        gcm: "a1",
        levi: None,
        face: None,
    },
    Golden {
        file: "a2_inequalities.json",
        contents: include_str!("../data/golden/a2_inequalities.json"),
        gcm: "a2",
        levi: None,
        face: None,
    },
    Golden {
        file: "a1_face_s0_e_s0.json",
        contents: include_str!("../data/golden/a1_face_s0_e_s0.json"),
        gcm: "a1",
        levi: Some("borel"),
        face: Some(["s0", "e", "s0"]),
    },
    Golden {
        file: "a2_face_s0_s0_s1s0.json",
        contents: include_str!("../data/golden/a2_face_s0_s0_s1s0.json"),
        gcm: "a2",
        levi: Some("1"),
        face: Some(["s0", "s0", "s1s0"]),
    },
];
