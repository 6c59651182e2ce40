//! Lifting: freely adding a least element.
//!
//! With decidable definedness, a partial element of a finite set either is
//! undefined or holds a value, so the lifting of `X` is just `X` plus a fresh
//! bottom, with `Defined` values pairwise incomparable. The same applies to
//! lifting a poset. The interest is in the universal properties: every
//! function out of the carrier into a pointed poset extends uniquely to a
//! strict monotone map out of the lifting.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finposet::{FinPoset, MonotoneMap};

/// A partial element of a finite carrier, identified by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Partial {
    Undefined,
    Defined(usize),
}

/// `l ⊑ m` iff `l` is undefined or `l = m`.
pub fn lift_order(l: Partial, m: Partial) -> bool {
    match l {
        Partial::Undefined => true,
        defined => defined == m,
    }
}

/// The embedding of the carrier into its lifting.
pub fn eta(x: usize) -> Partial {
    Partial::Defined(x)
}

/// The lifting of a finite set, materialized as a poset.
///
/// Element 0 is the fresh bottom; element `i + 1` is `Defined(i)`.
#[derive(Debug, Clone)]
pub struct LiftedPoset {
    poset: Arc<FinPoset>,
    carrier: Vec<String>,
}

impl LiftedPoset {
    pub fn new(carrier: Vec<String>) -> Self {
        let n = carrier.len() + 1;
        let mut names = Vec::with_capacity(n);
        names.push("⊥".to_string());
        names.extend(carrier.iter().map(|x| format!("η{x}")));
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
            leq[/* 0 * n + */ i] = true; // ⊥ below everything
        }
        LiftedPoset {
            poset: Arc::new(FinPoset::from_parts(names, leq)),
            carrier,
        }
    }

    pub fn poset(&self) -> &Arc<FinPoset> {
        &self.poset
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn index_of(&self, p: Partial) -> usize {
        match p {
            Partial::Undefined => 0,
            Partial::Defined(x) => {
                assert!(x < self.carrier.len());
                x + 1
            }
        }
    }

    pub fn partial_of(&self, index: usize) -> Partial {
        if index == 0 {
            Partial::Undefined
        } else {
            Partial::Defined(index - 1)
        }
    }

    /// The unique strict monotone extension of `f : X → E` along `eta`,
    /// where `f` is given as a table of element indices of `e`.
    pub fn free_extension(&self, f: &[usize], e: &Arc<FinPoset>) -> Result<MonotoneMap> {
        assert_eq!(f.len(), self.carrier.len(), "one value per carrier element");
        let bot = e.least().ok_or(Error::NotPointed)?;
        let mut table = Vec::with_capacity(self.poset.len());
        table.push(bot);
        table.extend_from_slice(f);
        MonotoneMap::new(self.poset.clone(), e.clone(), table)
    }
}

/// Freely add a bottom to a poset: element 0 is the fresh `⊥`, element
/// `i + 1` is the old element `i` with the order otherwise unchanged.
pub fn lift_dcpo(d: &FinPoset) -> FinPoset {
    let n = d.len() + 1;
    let mut names = Vec::with_capacity(n);
    names.push("⊥".to_string());
    names.extend(d.names().iter().cloned());
    let mut leq = vec![false; n * n];
    leq[0] = true;
    for i in 0..n {
        leq[i * n + i] = true;
        leq[/* 0 * n + */ i] = true;
    }
    for x in 0..d.len() {
        for y in 0..d.len() {
            if d.leq(x, y) {
                leq[(x + 1) * n + (y + 1)] = true;
            }
        }
    }
    FinPoset::from_parts(names, leq)
}

/// The embedding of a poset into its lifting, as an index translation.
pub fn eta_dcpo(x: usize) -> usize {
    x + 1
}

/// The strict monotone extension of `f : D → E` (E pointed) through the
/// lifting of `D`. `lifted` must be `lift_dcpo(f.dom())`.
pub fn free_extension_dcpo(lifted: &Arc<FinPoset>, f: &MonotoneMap) -> Result<MonotoneMap> {
    assert_eq!(lifted.len(), f.dom().len() + 1, "lifted poset size mismatch");
    let bot = f.cod().least().ok_or(Error::NotPointed)?;
    let mut table = Vec::with_capacity(lifted.len());
    table.push(bot);
    table.extend(f.table().iter().copied());
    MonotoneMap::new(lifted.clone(), f.cod().clone(), table)
}

/// Supremum of a family indexed by a decidable proposition: `val` if the
/// proposition holds, `⊥` otherwise.
pub fn subsingleton_sup(e: &FinPoset, cond: bool, val: usize) -> Result<usize> {
    let bot = e.least().ok_or(Error::NotPointed)?;
    Ok(if cond { val } else { bot })
}
