//! Checks of the two pumping inequalities on concrete words.

use chier_classes::{ClassMonoid, LanguageClass};
use chier_regular::Word;

use crate::error::{Error, Result};
use crate::words::WordOrder;

fn bound(k: usize) -> usize {
    (1 << (k + 1)) - 1
}

fn check_bound(k: usize, name: &str, m: usize) -> Result<()> {
    if m < bound(k) {
        Err(Error::PreconditionViolated(format!("{name} = {m} is below 2^(k+1) - 1 = {}", bound(k))))
    } else {
        Ok(())
    }
}

/// u^{pm} ≤_k u^{pm'} where p is the period of the class.
pub fn verify_pumping_1(class: &LanguageClass, k: usize, u: &Word, m: usize, m2: usize) -> Result<bool> {
    check_bound(k, "m", m)?;
    check_bound(k, "m'", m2)?;
    let mut order = WordOrder::new(class)?;
    let p = order.monoid().period();
    order.leq(k, &u.pow(p * m), &u.pow(p * m2))
}

/// u^{pm} ≤_k u^{pm1}·v·u^{pm2}, given u^p ≤_C v.
pub fn verify_pumping_2(
    class: &LanguageClass,
    k: usize,
    u: &Word,
    v: &Word,
    m: usize,
    m1: usize,
    m2: usize,
) -> Result<bool> {
    check_bound(k, "m", m)?;
    check_bound(k, "m1", m1)?;
    check_bound(k, "m2", m2)?;
    let monoid = ClassMonoid::new(class)?;
    let p = monoid.period();
    if !monoid.leq(monoid.eval(&u.pow(p).0), monoid.eval(&v.0)) {
        return Err(Error::PreconditionViolated("u^p is not below v for the class preorder".into()));
    }
    let mut order = WordOrder::new(class)?;
    order.leq(k, &u.pow(p * m), &u.pow(p * m1).concat(v).concat(&u.pow(p * m2)))
}
