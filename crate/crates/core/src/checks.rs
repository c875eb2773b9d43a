//! Named boolean checks collected while computing a decomposition.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether a failed check aborts (`Verify`) or is only recorded (`Explore`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Verify,
    Explore,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            holds,
            detail: detail.into(),
        }
    }

    pub fn equal<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, left: &T, right: &T) -> Self {
        let holds = left == right;
        let detail = if holds {
            String::new()
        } else {
            format!("{left:?} != {right:?}")
        };
        Self::new(name, holds, detail)
    }
}

/// In verify mode, turns the first failing check into a counterexample error.
pub fn enforce(mode: Mode, checks: &[Check]) -> Result<()> {
    if mode == Mode::Explore {
        return Ok(());
    }
    match checks.iter().find(|c| !c.holds) {
        Some(c) => Err(Error::Counterexample {
            check: c.name.clone(),
            detail: c.detail.clone(),
        }),
        None => Ok(()),
    }
}

pub fn all_hold(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.holds)
}

fn entry(v: &[BigInt], i: usize) -> BigInt {
    v.get(i).cloned().unwrap_or_else(BigInt::zero)
}

/// `v_0 <= v_1 <= v_j` for every `j` in `1..=hi`; vacuous when `hi < 1`.
pub fn chain_check(name: &str, v: &[BigInt], hi: usize) -> Check {
    let (v0, v1) = (entry(v, 0), entry(v, 1));
    if hi < 1 {
        return Check::new(name, true, "vacuous");
    }
    if v0 > v1 {
        return Check::new(name, false, format!("v0 = {v0} > v1 = {v1}"));
    }
    for j in 2..=hi {
        let vj = entry(v, j);
        if v1 > vj {
            return Check::new(name, false, format!("v1 = {v1} > v{j} = {vj}"));
        }
    }
    Check::new(name, true, "")
}

pub fn positive_check(name: &str, v: &[BigInt]) -> Check {
    match v.iter().position(|x| !x.is_positive()) {
        Some(i) => Check::new(name, false, format!("entry {i} = {}", v[i])),
        None => Check::new(name, true, ""),
    }
}

pub fn nonnegative_check(name: &str, v: &[BigInt]) -> Check {
    match v.iter().position(|x| x.is_negative()) {
        Some(i) => Check::new(name, false, format!("entry {i} = {}", v[i])),
        None => Check::new(name, true, ""),
    }
}

/// `p_j >= q_j` for `j` in `lo..=hi`.
pub fn dominance_check(name: &str, p: &[BigInt], q: &[BigInt], lo: usize, hi: usize) -> Check {
    for j in lo..=hi {
        let (a, b) = (entry(p, j), entry(q, j));
        if a < b {
            return Check::new(name, false, format!("index {j}: {a} < {b}"));
        }
    }
    Check::new(name, true, "")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn chains() {
        assert!(chain_check("c", &ints(&[1, 2, 3, 2]), 3).holds);
        assert!(!chain_check("c", &ints(&[3, 2, 3]), 2).holds);
        assert!(!chain_check("c", &ints(&[1, 3, 2]), 2).holds);
        assert!(chain_check("c", &ints(&[5]), 0).holds);
    }

    #[test]
    fn enforce_modes() {
        let checks = vec![Check::new("ok", true, ""), Check::new("bad", false, "why")];
        assert!(enforce(Mode::Explore, &checks).is_ok());
        match enforce(Mode::Verify, &checks) {
            Err(Error::Counterexample { check, .. }) => assert_eq!(check, "bad"),
            other => panic!("{other:?}"),
        }
    }
}
