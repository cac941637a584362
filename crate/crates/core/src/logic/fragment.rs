use super::ast::Formula;

/// Syntactic fragments, ordered from most to least restrictive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fragment {
    /// Quantifier-, function- and equality-free.
    ZeroRFOLNoEq,
    /// Quantifier- and function-free.
    ZeroRFOL,
    /// Function-free.
    RFOL,
    FOL,
}

impl Fragment {
    /// Whether every formula of `other` also belongs to `self`.
    pub fn includes(self, other: Fragment) -> bool {
        other <= self
    }

    pub fn name(self) -> &'static str {
        match self {
            Fragment::ZeroRFOLNoEq => "0-RFOL(no =)",
            Fragment::ZeroRFOL => "0-RFOL",
            Fragment::RFOL => "RFOL",
            Fragment::FOL => "FOL",
        }
    }
}

/// The most restrictive fragment containing `f`.
pub fn classify_fragment(f: &Formula) -> Fragment {
    if f.has_function() {
        Fragment::FOL
    } else if f.has_quantifier() {
        Fragment::RFOL
    } else if f.has_equality() {
        Fragment::ZeroRFOL
    } else {
        Fragment::ZeroRFOLNoEq
    }
}
