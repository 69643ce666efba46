//! `.lag` sources bundled with the crate.

pub const WAVE: &str = include_str!("../lag/wave.lag");
pub const KIRCHHOFF: &str = include_str!("../lag/kirchhoff.lag");
pub const KIRCHHOFF_NULL: &str = include_str!("../lag/kirchhoff_null.lag");
pub const WING: &str = include_str!("../lag/wing.lag");
pub const TWT: &str = include_str!("../lag/twt.lag");
pub const MINDLIN: &str = include_str!("../lag/mindlin.lag");
pub const CROSSPOINT: &str = include_str!("../lag/crosspoint.lag");

const ALL: [(&str, &str); 7] = [
    ("wave", WAVE),
    ("kirchhoff", KIRCHHOFF),
    ("kirchhoff_null", KIRCHHOFF_NULL),
    ("wing", WING),
    ("twt", TWT),
    ("mindlin", MINDLIN),
    ("crosspoint", CROSSPOINT),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ALL.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}
