//! Exponentials of finite posets: the poset `E^D` of all monotone maps
//! `D → E` under the pointwise order.
//!
//! On finite carriers the monotone maps are exactly the continuous ones, so
//! the carrier is produced by exhaustive enumeration and suprema are computed
//! pointwise.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finposet::{enumerate_monotone_maps, FinPoset, MonotoneMap, Subset};

/// The exponential `E^D`, with its maps tabulated and the pointwise order
/// materialized as a poset.
#[derive(Debug, Clone)]
pub struct ExponentialPoset {
    dom: Arc<FinPoset>,
    cod: Arc<FinPoset>,
    maps: Vec<MonotoneMap>,
    poset: Arc<FinPoset>,
    index: HashMap<Vec<usize>, usize>,
}

/// All monotone maps `dom → cod` ordered pointwise.
pub fn build_exponential(dom: &Arc<FinPoset>, cod: &Arc<FinPoset>) -> ExponentialPoset {
    let maps = enumerate_monotone_maps(dom, cod);
    let n = maps.len();
    let names = maps
        .iter()
        .map(|m| {
            let images: Vec<&str> = m.table().iter().map(|&v| cod.name(v)).collect();
            format!("[{}]", images.join(","))
        })
        .collect();
    let mut leq = vec![false; n * n];
    for (i, f) in maps.iter().enumerate() {
        for (j, g) in maps.iter().enumerate() {
            leq[i * n + j] = f
                .table()
                .iter()
                .zip(g.table())
                .all(|(&fx, &gx)| cod.leq(fx, gx));
        }
    }
    let index = maps
        .iter()
        .enumerate()
        .map(|(i, m)| (m.table().to_vec(), i))
        .collect();
    ExponentialPoset {
        dom: dom.clone(),
        cod: cod.clone(),
        maps,
        poset: Arc::new(FinPoset::from_parts(names, leq)),
        index,
    }
}

impl ExponentialPoset {
    pub fn dom(&self) -> &Arc<FinPoset> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinPoset> {
        &self.cod
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn map(&self, i: usize) -> &MonotoneMap {
        &self.maps[i]
    }

    pub fn maps(&self) -> &[MonotoneMap] {
        &self.maps
    }

    /// The carrier with the pointwise order.
    pub fn poset(&self) -> &Arc<FinPoset> {
        &self.poset
    }

    /// Index of a map given by its table, if it is one of the maps.
    pub fn index_of_table(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).copied()
    }

    /// Apply the `i`-th map to a domain element.
    pub fn eval(&self, i: usize, x: usize) -> usize {
        self.maps[i].apply(x)
    }

    /// Pointwise supremum of a directed set of maps.
    ///
    /// The result is itself monotone and is the least upper bound in the
    /// exponential order.
    pub fn pointwise_sup(&self, s: &Subset) -> Result<MonotoneMap> {
        if !self.poset.is_directed(s) {
            return Err(Error::NotDirected);
        }
        let mut table = Vec::with_capacity(self.dom.len());
        for x in 0..self.dom.len() {
            let values: Vec<usize> = s.iter().map(|i| self.maps[i].apply(x)).collect();
            let at_x = Subset::from_indices(self.cod.len(), &values);
            table.push(self.cod.supremum(&at_x)?);
        }
        MonotoneMap::new(self.dom.clone(), self.cod.clone(), table)
    }
}

/// Table composition: apply `f` first, then `g`.
pub fn compose(f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
    f.then(g)
}
