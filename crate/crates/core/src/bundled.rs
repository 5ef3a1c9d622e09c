//! Instances shipped with the crate.

use crate::instance::Instance;

pub const KASHINA: &str = include_str!("../data/kashina.json");

pub const GROUP_S3: &str = include_str!("../data/groups/s3.json");
pub const GROUP_S4: &str = include_str!("../data/groups/s4.json");
pub const GROUP_A4: &str = include_str!("../data/groups/a4.json");
pub const GROUP_D8: &str = include_str!("../data/groups/d8.json");
pub const GROUP_Q8: &str = include_str!("../data/groups/q8.json");
pub const GROUP_C2XC2: &str = include_str!("../data/groups/c2xc2.json");

/// `(file stem, group-spec JSON)` for every bundled group.
pub const GROUPS: [(&str, &str); 6] = [
    ("s3", GROUP_S3),
    ("s4", GROUP_S4),
    ("a4", GROUP_A4),
    ("d8", GROUP_D8),
    ("q8", GROUP_Q8),
    ("c2xc2", GROUP_C2XC2),
];

/// `(group file stem, normal subgroup name)` pairs with clifford and
/// conjugation data.
pub const NORMAL_PAIRS: [(&str, &str); 5] = [("s3", "A3"), ("s4", "V4"), ("a4", "V4"), ("q8", "Z"), ("d8", "C4")];

pub fn group_spec(stem: &str) -> Option<&'static str> {
    GROUPS.iter().find(|(s, _)| *s == stem).map(|(_, t)| *t)
}

pub fn kashina() -> Instance {
    Instance::from_json(KASHINA).expect("bundled Kashina instance parses")
}
