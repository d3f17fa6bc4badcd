//! Compiler version constraints from `pragma solidity` directives.
//!
//! Only the constraint shapes that matter to the rules are modeled: exact
//! pins, caret/tilde ranges, one-sided bounds, and two-sided ranges. The
//! questions the rules ask are narrow — "is this an exact pin?" and "does
//! this constraint admit any compiler below 0.8.0?" — so lossy corners are
//! resolved conservatively:
//!
//! * `~` is folded into [`VersionConstraint::Caret`] and `>`/`<` into
//!   [`VersionConstraint::Gte`]/[`VersionConstraint::Lte`]; every one of
//!   those is "not locked", and the lower bound is what overflow checking
//!   cares about.
//! * A bare two-component version such as `0.8` floats over its patch
//!   releases, so it is treated as a caret constraint, not an exact pin.

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Version {
    pub major: u32,
    pub minor: u32,
    pub patch: u32,
}

impl Version {
    pub const fn new(major: u32, minor: u32, patch: u32) -> Self {
        Version { major, minor, patch }
    }
}

impl fmt::Display for Version {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.major, self.minor, self.patch)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "op", content = "version")]
#[serde(rename_all = "kebab-case")]
pub enum VersionConstraint {
    /// `0.8.19` or `=0.8.19`: exactly one compiler version.
    Exact(Version),
    /// `^0.8.0`, `~0.6.2`, or a floating `0.8`: from the given version up to
    /// the next breaking release.
    Caret(Version),
    /// `>=0.4.22` (also used for `>`).
    Gte(Version),
    /// `<=0.7.6` (also used for `<`).
    Lte(Version),
    /// A two-sided range such as `>=0.4.22 <0.9.0`.
    Range(Version, Version),
}

impl VersionConstraint {
    /// True only for an exact pin — the one shape that locks builds to a
    /// single compiler.
    pub fn is_exact(&self) -> bool {
        matches!(self, VersionConstraint::Exact(_))
    }

    /// Could a compiler strictly below `bound` satisfy this constraint?
    pub fn allows_below(&self, bound: Version) -> bool {
        match *self {
            VersionConstraint::Exact(v) => v < bound,
            VersionConstraint::Caret(v) => v < bound,
            VersionConstraint::Gte(v) => v < bound,
            // One-sided upper bounds reach all the way down.
            VersionConstraint::Lte(_) => true,
            VersionConstraint::Range(lo, _) => lo < bound,
        }
    }
}

impl fmt::Display for VersionConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VersionConstraint::Exact(v) => write!(f, "={v}"),
            VersionConstraint::Caret(v) => write!(f, "^{v}"),
            VersionConstraint::Gte(v) => write!(f, ">={v}"),
            VersionConstraint::Lte(v) => write!(f, "<={v}"),
            VersionConstraint::Range(lo, hi) => write!(f, ">={lo} <{hi}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Bare,
    Exact,
    Caret,
    Lower, // >= or >
    Upper, // <= or <
}

/// Parse the body of a `pragma solidity` directive (the text between the
/// `solidity` token and the `;`).
///
/// Returns `None` when the text holds nothing recognizable as a version
/// constraint; callers treat that the same as an unlocked pragma.
pub fn parse_constraint(text: &str) -> Option<VersionConstraint> {
    let mut rest = text.trim();
    let mut parts: Vec<(Op, Version, u8)> = Vec::new();
    while !rest.is_empty() {
        let (op, after) = take_op(rest);
        let (version, components, after) = take_version(after.trim_start())?;
        parts.push((op, version, components));
        rest = after.trim_start();
    }
    let (&first, tail) = parts.split_first()?;
    match (first, tail) {
        // `>=a <b` (or with one-sided ops in either order) forms a range.
        ((Op::Lower, lo, _), [(Op::Upper, hi, _)]) => Some(VersionConstraint::Range(lo, *hi)),
        ((Op::Upper, hi, _), [(Op::Lower, lo, _)]) => Some(VersionConstraint::Range(*lo, hi)),
        ((op, v, components), _) => Some(match op {
            // A floating `0.8` admits every 0.8.x patch release.
            Op::Bare | Op::Exact if components < 3 => VersionConstraint::Caret(v),
            Op::Bare | Op::Exact => VersionConstraint::Exact(v),
            Op::Caret => VersionConstraint::Caret(v),
            Op::Lower => VersionConstraint::Gte(v),
            Op::Upper => VersionConstraint::Lte(v),
        }),
    }
}

fn take_op(s: &str) -> (Op, &str) {
    for (prefix, op) in [
        (">=", Op::Lower),
        ("<=", Op::Upper),
        (">", Op::Lower),
        ("<", Op::Upper),
        ("^", Op::Caret),
        ("~", Op::Caret),
        ("=", Op::Exact),
    ] {
        if let Some(rest) = s.strip_prefix(prefix) {
            return (op, rest);
        }
    }
    (Op::Bare, s)
}

/// Read `major[.minor[.patch]]`, returning the version, how many components
/// were present, and the remaining text.
fn take_version(s: &str) -> Option<(Version, u8, &str)> {
    let mut nums = [0u32; 3];
    let mut count = 0u8;
    let mut rest = s;
    while count < 3 {
        let digits = rest.len() - rest.trim_start_matches(|c: char| c.is_ascii_digit()).len();
        if digits == 0 {
            break;
        }
        nums[count as usize] = rest[..digits].parse().ok()?;
        count += 1;
        rest = &rest[digits..];
        if count < 3 {
            match rest.strip_prefix('.') {
                Some(r) if r.starts_with(|c: char| c.is_ascii_digit()) => rest = r,
                _ => break,
            }
        }
    }
    if count == 0 {
        return None;
    }
    Some((Version::new(nums[0], nums[1], nums[2]), count, rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    const V0_8_0: Version = Version::new(0, 8, 0);

    #[test]
    fn exact_forms() {
        assert_eq!(
            parse_constraint("0.8.19"),
            Some(VersionConstraint::Exact(Version::new(0, 8, 19)))
        );
        assert_eq!(
            parse_constraint("=0.8.19"),
            Some(VersionConstraint::Exact(Version::new(0, 8, 19)))
        );
        assert!(parse_constraint("0.8.19").unwrap().is_exact());
    }

    #[test]
    fn floating_two_component_version_is_not_exact() {
        let c = parse_constraint("0.8").unwrap();
        assert_eq!(c, VersionConstraint::Caret(V0_8_0));
        assert!(!c.is_exact());
    }

    #[test]
    fn caret_and_tilde() {
        assert_eq!(
            parse_constraint("^0.8.0"),
            Some(VersionConstraint::Caret(V0_8_0))
        );
        assert_eq!(
            parse_constraint("~0.6.2"),
            Some(VersionConstraint::Caret(Version::new(0, 6, 2)))
        );
    }

    #[test]
    fn one_sided_bounds() {
        assert_eq!(
            parse_constraint(">=0.4.22"),
            Some(VersionConstraint::Gte(Version::new(0, 4, 22)))
        );
        assert_eq!(
            parse_constraint(">0.4.22"),
            Some(VersionConstraint::Gte(Version::new(0, 4, 22)))
        );
        assert_eq!(
            parse_constraint("<=0.7.6"),
            Some(VersionConstraint::Lte(Version::new(0, 7, 6)))
        );
    }

    #[test]
    fn two_sided_range() {
        assert_eq!(
            parse_constraint(">=0.4.22 <0.9.0"),
            Some(VersionConstraint::Range(
                Version::new(0, 4, 22),
                Version::new(0, 9, 0)
            ))
        );
        // Spaces around the operator are tolerated.
        assert_eq!(
            parse_constraint(">= 0.4.22  < 0.9.0"),
            Some(VersionConstraint::Range(
                Version::new(0, 4, 22),
                Version::new(0, 9, 0)
            ))
        );
    }

    #[test]
    fn garbage_is_none() {
        assert_eq!(parse_constraint(""), None);
        assert_eq!(parse_constraint("stable"), None);
        assert_eq!(parse_constraint("^x.y"), None);
    }

    #[test]
    fn allows_below_0_8() {
        // Hand-derived truth table for the overflow rule's question.
        let yes = ["0.5.17", "^0.5.0", ">=0.4.22 <0.9.0", "<=0.8.4", "^0.7.6"];
        let no = ["0.8.19", "^0.8.0", ">=0.8.0", ">=0.8.1 <0.9.0"];
        for text in yes {
            assert!(
                parse_constraint(text).unwrap().allows_below(V0_8_0),
                "{text} should admit a pre-0.8 compiler"
            );
        }
        for text in no {
            assert!(
                !parse_constraint(text).unwrap().allows_below(V0_8_0),
                "{text} should not admit a pre-0.8 compiler"
            );
        }
    }

    #[test]
    fn version_ordering() {
        assert!(Version::new(0, 7, 6) < V0_8_0);
        assert!(Version::new(0, 8, 1) > V0_8_0);
        assert!(Version::new(1, 0, 0) > Version::new(0, 99, 99));
    }
}
