use std::fmt;

/// A hop distance that is either finite or unknown/infinite.
///
/// `Dist::UNKNOWN` compares strictly greater than every finite value, so
/// `max`/`min` over mixed collections behave as expected. Arithmetic on the
/// sentinel is a logic error and panics.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Dist(u32);

impl Dist {
    pub const ZERO: Dist = Dist(0);
    pub const UNKNOWN: Dist = Dist(u32::MAX);

    pub fn finite(d: u32) -> Dist {
        assert!(d != u32::MAX, "finite distance collides with the sentinel");
        Dist(d)
    }

    pub fn is_finite(self) -> bool {
        self.0 != u32::MAX
    }

    pub fn get(self) -> Option<u32> {
        self.is_finite().then_some(self.0)
    }

    /// Finite value; panics on the sentinel.
    pub fn value(self) -> u32 {
        assert!(self.is_finite(), "arithmetic on an unknown distance");
        self.0
    }

    pub fn plus(self, k: u32) -> Dist {
        Dist::finite(self.value() + k)
    }

    pub fn as_f64(self) -> f64 {
        match self.get() {
            Some(d) => d as f64,
            None => f64::INFINITY,
        }
    }
}

impl fmt::Debug for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.get() {
            Some(d) => write!(f, "{d}"),
            None => f.write_str("?"),
        }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.get() {
            Some(d) => write!(f, "{d}"),
            None => f.write_str("inf"),
        }
    }
}

impl From<u32> for Dist {
    fn from(d: u32) -> Self {
        Dist::finite(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinel_orders_above_finite() {
        assert!(Dist::UNKNOWN > Dist::finite(u32::MAX - 1));
        assert_eq!(Dist::finite(3).max(Dist::UNKNOWN), Dist::UNKNOWN);
        assert_eq!(Dist::finite(3).min(Dist::UNKNOWN), Dist::finite(3));
        assert_eq!(Dist::UNKNOWN.get(), None);
        assert_eq!(Dist::UNKNOWN.as_f64(), f64::INFINITY);
    }

    #[test]
    #[should_panic(expected = "unknown distance")]
    fn arithmetic_on_sentinel_panics() {
        let _ = Dist::UNKNOWN.plus(1);
    }
}
