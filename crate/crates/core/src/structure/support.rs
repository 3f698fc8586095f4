use serde::Serialize;

use crate::engine::{Mono, Tensor};
use crate::rootdata::Root;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportViolation {
    pub root: Root,
    pub power: u16,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SupportReport {
    pub checked: usize,
    pub violations: Vec<SupportViolation>,
}

impl SupportReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn in_omega(root: Root, l: &Mono, r: &Mono) -> bool {
    let k = root.rank();
    l.e.iter().enumerate().all(|(i, e)| *e == 0 || i <= k) && r.e.iter().enumerate().all(|(i, e)| *e == 0 || i >= k)
}

/// Checks that every term of each `Delta(x_root^power)` has left-leg roots `<= root`
/// and right-leg roots `>= root` in the convex order.
pub fn check_support<'a>(items: impl IntoIterator<Item = (Root, u16, &'a Tensor)>) -> SupportReport {
    let mut report = SupportReport::default();
    for (root, power, t) in items {
        report.checked += 1;
        for (l, r) in t.sorted().into_iter().map(|(k, _)| k) {
            if !in_omega(root, &l, &r) {
                report.violations.push(SupportViolation { root, power, left: l.to_string(), right: r.to_string() });
            }
        }
    }
    report
}
