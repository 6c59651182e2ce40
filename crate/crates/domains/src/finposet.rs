//! Finite posets with exhaustive order-theoretic oracles.
//!
//! Everything here is deliberately brute force: the point of these functions
//! is to serve as ground truth for the constructions layered on top, not to
//! scale. `way_below` quantifies over all directed subsets of the carrier
//! (2^n of them), which is fine for the desk-scale posets this crate works
//! with (n up to ~20 or so).
//!
//! Elements are identified by index; names are labels for display only.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite poset: named elements plus an explicit `leq` truth table.
///
/// `leq[x][y]` means `x ⊑ y`. The constructor only checks the table shape;
/// the order axioms are checked by [`check_poset_axioms`] so that callers can
/// inspect broken relations instead of being refused outright.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    names: Vec<String>,
    // flat n*n, row-major: entry x*n+y is x ⊑ y
    leq: Vec<bool>,
}

/// Result of checking the three poset axioms, with counterexamples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// `Some(x)` when `x ⊑ x` fails.
    pub reflexivity: Option<usize>,
    /// `Some((x, y))` when `x ⊑ y`, `y ⊑ x` but `x ≠ y`.
    pub antisymmetry: Option<(usize, usize)>,
    /// `Some((x, y, z))` when `x ⊑ y ⊑ z` but not `x ⊑ z`.
    pub transitivity: Option<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.reflexivity.is_none() && self.antisymmetry.is_none() && self.transitivity.is_none()
    }
}

/// A subset of a poset's carrier, as a membership bit vector.
///
/// Finite subsets stand in for directed families here: on a finite carrier
/// every family has the same suprema as its image subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    bits: Vec<bool>,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset {
            bits: vec![false; n],
        }
    }

    pub fn full(n: usize) -> Self {
        Subset {
            bits: vec![true; n],
        }
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mut bits = vec![false; n];
        for &i in indices {
            bits[i] = true;
        }
        Subset { bits }
    }

    /// Subset from the low `n` bits of a mask (for exhaustive enumeration).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Subset {
            bits: (0..n).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.get(i).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits[i] = true;
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl FinPoset {
    /// Build a poset from names and a relation table. Only the table shape is
    /// validated here; run [`check_poset_axioms`] for the axioms.
    pub fn new(names: Vec<String>, leq_rows: Vec<Vec<bool>>) -> Result<Self> {
        let n = names.len();
        if leq_rows.len() != n {
            return Err(Error::MalformedRelation(format!(
                "{} rows for {} elements",
                leq_rows.len(),
                n
            )));
        }
        let mut leq = Vec::with_capacity(n * n);
        for (i, row) in leq_rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedRelation(format!(
                    "row {} has length {}, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            leq.extend_from_slice(row);
        }
        Ok(FinPoset { names, leq })
    }

    /// Internal constructor for relations known to satisfy the axioms.
    pub(crate) fn from_parts(names: Vec<String>, leq: Vec<bool>) -> Self {
        debug_assert_eq!(leq.len(), names.len() * names.len());
        FinPoset { names, leq }
    }

    /// The n-element chain 0 ⊑ 1 ⊑ … ⊑ n−1.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| format!("c{i}")).collect();
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in x..n {
                leq[x * n + y] = true;
            }
        }
        FinPoset { names, leq }
    }

    /// The n-element antichain (only reflexive pairs related).
    pub fn antichain(n: usize) -> Self {
        let names = (0..n).map(|i| format!("a{i}")).collect();
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
        }
        FinPoset { names, leq }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.names.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// Check reflexivity, antisymmetry and transitivity, reporting a
    /// counterexample for each failing axiom.
    pub fn check_poset_axioms(&self) -> AxiomReport {
        let n = self.len();
        let mut report = AxiomReport {
            reflexivity: None,
            antisymmetry: None,
            transitivity: None,
        };
        for x in 0..n {
            if !self.leq(x, x) {
                report.reflexivity = Some(x);
                break;
            }
        }
        'anti: for x in 0..n {
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    report.antisymmetry = Some((x, y));
                    break 'anti;
                }
            }
        }
        'trans: for x in 0..n {
            for y in 0..n {
                if !self.leq(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.leq(y, z) && !self.leq(x, z) {
                        report.transitivity = Some((x, y, z));
                        break 'trans;
                    }
                }
            }
        }
        report
    }

    /// Is `s` inhabited and closed under pairwise upper bounds within itself?
    pub fn is_directed(&self, s: &Subset) -> bool {
        if s.is_empty() {
            return false;
        }
        for a in s.iter() {
            for b in s.iter() {
                if !s.iter().any(|c| self.leq(a, c) && self.leq(b, c)) {
                    return false;
                }
            }
        }
        true
    }

    /// Least upper bound of `s` over the whole carrier, if it exists.
    ///
    /// Directedness is deliberately not required: lattice-style joins of
    /// arbitrary subsets are wanted by the step-function machinery. Callers
    /// that care report directedness separately via [`is_directed`].
    ///
    /// [`is_directed`]: FinPoset::is_directed
    pub fn supremum(&self, s: &Subset) -> Result<usize> {
        let n = self.len();
        let upper = |u: usize| s.iter().all(|x| self.leq(x, u));
        let mut best: Option<usize> = None;
        for u in 0..n {
            if upper(u) {
                match best {
                    Some(b) if self.leq(b, u) => {}
                    _ => best = Some(u),
                }
            }
        }
        // `best` is a minimal upper bound candidate; confirm it is least.
        match best {
            Some(b) if (0..n).all(|u| !upper(u) || self.leq(b, u)) => Ok(b),
            _ => Err(Error::NoSupremum),
        }
    }

    /// The global least element, if any.
    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&b| (0..self.len()).all(|x| self.leq(b, x)))
    }

    /// The global greatest element, if any.
    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|x| self.leq(x, t)))
    }

    /// Brute-force way-below: `x ≪ y` iff every directed subset whose
    /// supremum dominates `y` already contains a member above `x`.
    ///
    /// Walks all 2^n subsets, so keep the carrier small (asserted ≤ 24).
    pub fn way_below(&self, x: usize, y: usize) -> bool {
        let n = self.len();
        assert!(
            n <= 24,
            "way_below enumerates 2^n subsets; {n} elements is past the oracle's budget"
        );
        'subsets: for mask in 1u64..(1 << n) {
            // directedness check on the raw mask
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            for &a in &members {
                for &b in &members {
                    if !members.iter().any(|&c| self.leq(a, c) && self.leq(b, c)) {
                        continue 'subsets;
                    }
                }
            }
            // a finite directed subset has a maximum, which is its supremum
            let sup = members
                .iter()
                .copied()
                .find(|&m| members.iter().all(|&a| self.leq(a, m)))
                .expect("directed finite subset has a maximum");
            if self.leq(y, sup) && !members.iter().any(|&s| self.leq(x, s)) {
                return false;
            }
        }
        true
    }

    /// `x` is compact iff `x ≪ x`.
    pub fn is_compact(&self, x: usize) -> bool {
        self.way_below(x, x)
    }

    /// The set `{y : y ⊑ x}`.
    pub fn down_set(&self, x: usize) -> Subset {
        Subset {
            bits: (0..self.len()).map(|y| self.leq(y, x)).collect(),
        }
    }
}

/// An order-preserving function between finite posets, tabulated.
#[derive(Debug, Clone)]
pub struct MonotoneMap {
    dom: Arc<FinPoset>,
    cod: Arc<FinPoset>,
    table: Vec<usize>,
}

impl PartialEq for MonotoneMap {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.dom == other.dom && self.cod == other.cod
    }
}

impl Eq for MonotoneMap {}

impl MonotoneMap {
    /// Wrap a table after verifying it preserves the order.
    pub fn new(dom: Arc<FinPoset>, cod: Arc<FinPoset>, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(Error::MalformedRelation(format!(
                "table length {} does not match domain size {}",
                table.len(),
                dom.len()
            )));
        }
        for &v in &table {
            if v >= cod.len() {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    size: cod.len(),
                });
            }
        }
        for x in 0..dom.len() {
            for y in 0..dom.len() {
                if dom.leq(x, y) && !cod.leq(table[x], table[y]) {
                    return Err(Error::MonotonicityViolation(format!(
                        "{} ⊑ {} but {} ⋢ {}",
                        dom.name(x),
                        dom.name(y),
                        cod.name(table[x]),
                        cod.name(table[y])
                    )));
                }
            }
        }
        Ok(MonotoneMap { dom, cod, table })
    }

    pub(crate) fn from_parts(dom: Arc<FinPoset>, cod: Arc<FinPoset>, table: Vec<usize>) -> Self {
        MonotoneMap { dom, cod, table }
    }

    pub fn identity(p: Arc<FinPoset>) -> Self {
        let table = (0..p.len()).collect();
        MonotoneMap {
            dom: p.clone(),
            cod: p,
            table,
        }
    }

    pub fn constant(dom: Arc<FinPoset>, cod: Arc<FinPoset>, value: usize) -> Self {
        let table = vec![value; dom.len()];
        MonotoneMap { dom, cod, table }
    }

    pub fn dom(&self) -> &Arc<FinPoset> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinPoset> {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `g ∘ self` (apply `self` first, then `g`).
    pub fn then(&self, g: &MonotoneMap) -> Result<MonotoneMap> {
        if self.cod != g.dom {
            return Err(Error::ComposeMismatch);
        }
        Ok(MonotoneMap {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            table: self.table.iter().map(|&x| g.table[x]).collect(),
        })
    }

    /// Image of a subset of the domain.
    pub fn image(&self, s: &Subset) -> Subset {
        let mut out = Subset::empty(self.cod.len());
        for x in s.iter() {
            out.insert(self.table[x]);
        }
        out
    }
}

/// All monotone maps `dom → cod`, in lexicographic table order.
///
/// Backtracks over elements in index order, pruning assignments that already
/// violate monotonicity against earlier indices, so the output is
/// deterministic and free of duplicates.
pub fn enumerate_monotone_maps(dom: &Arc<FinPoset>, cod: &Arc<FinPoset>) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut table = Vec::with_capacity(dom.len());
    fn go(
        dom: &Arc<FinPoset>,
        cod: &Arc<FinPoset>,
        table: &mut Vec<usize>,
        out: &mut Vec<MonotoneMap>,
    ) {
        let i = table.len();
        if i == dom.len() {
            out.push(MonotoneMap::from_parts(
                dom.clone(),
                cod.clone(),
                table.clone(),
            ));
            return;
        }
        'vals: for v in 0..cod.len() {
            for j in 0..i {
                if dom.leq(j, i) && !cod.leq(table[j], v) {
                    continue 'vals;
                }
                if dom.leq(i, j) && !cod.leq(v, table[j]) {
                    continue 'vals;
                }
            }
            table.push(v);
            go(dom, cod, table, out);
            table.pop();
        }
    }
    if dom.len() == 0 {
        // the unique empty map
        out.push(MonotoneMap::from_parts(dom.clone(), cod.clone(), vec![]));
        return out;
    }
    go(dom, cod, &mut table, &mut out);
    out
}

/// Count monotone maps without materializing them (same traversal as
/// [`enumerate_monotone_maps`]).
pub fn count_monotone_maps(dom: &FinPoset, cod: &FinPoset) -> usize {
    fn go(dom: &FinPoset, cod: &FinPoset, table: &mut Vec<usize>) -> usize {
        let i = table.len();
        if i == dom.len() {
            return 1;
        }
        let mut total = 0;
        'vals: for v in 0..cod.len() {
            for j in 0..i {
                if dom.leq(j, i) && !cod.leq(table[j], v) {
                    continue 'vals;
                }
                if dom.leq(i, j) && !cod.leq(v, table[j]) {
                    continue 'vals;
                }
            }
            table.push(v);
            total += go(dom, cod, table);
            table.pop();
        }
        total
    }
    if dom.len() == 0 {
        return 1;
    }
    go(dom, cod, &mut Vec::new())
}

/// Per-element outcome of a basis check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisElementReport {
    pub element: usize,
    pub approx_directed: bool,
    /// supremum of the approximating image, if it exists
    pub sup: Option<usize>,
    pub sup_is_element: bool,
    /// basis indices in the approximating set whose image is not way below the element
    pub not_way_below: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    pub per_element: Vec<BasisElementReport>,
}

impl BasisReport {
    pub fn passed(&self) -> bool {
        self.per_element.iter().all(|r| {
            r.approx_directed && r.sup_is_element && r.not_way_below.is_empty() && r.sup.is_some()
        })
    }
}

/// Check that `beta` (basis carrier → elements of `p`) with the given
/// per-element approximating sets exhibits a basis: for each `x` the image of
/// `approx[x]` must be directed, have supremum `x`, and consist of elements
/// way below `x`.
///
/// `approx[x]` contains indices into `beta`.
pub fn verify_basis(p: &FinPoset, beta: &[usize], approx: &[Vec<usize>]) -> BasisReport {
    assert_eq!(approx.len(), p.len(), "one approximating set per element");
    let mut per_element = Vec::with_capacity(p.len());
    for x in 0..p.len() {
        let image = Subset::from_indices(
            p.len(),
            &approx[x].iter().map(|&b| beta[b]).collect::<Vec<_>>(),
        );
        let approx_directed = p.is_directed(&image);
        let sup = p.supremum(&image).ok();
        let sup_is_element = sup == Some(x);
        let not_way_below: Vec<usize> = approx[x]
            .iter()
            .copied()
            .filter(|&b| !p.way_below(beta[b], x))
            .collect();
        per_element.push(BasisElementReport {
            element: x,
            approx_directed,
            sup,
            sup_is_element,
            not_way_below,
        });
    }
    BasisReport { per_element }
}

/// All posets on `n` labeled elements.
///
/// Iterates over the three states of each unordered pair (incomparable,
/// x below y, y below x) and keeps the transitive ones; reflexivity and
/// antisymmetry hold by construction.
pub fn enumerate_posets(n: usize) -> Vec<FinPoset> {
    assert!(n <= 6, "poset enumeration is exponential; n ≤ 6 only");
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    if n == 0 {
        return vec![FinPoset::from_parts(vec![], vec![])];
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    let mut out = Vec::new();
    let mut states = vec![0u8; pairs.len()];
    loop {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
        }
        for (k, &(x, y)) in pairs.iter().enumerate() {
            match states[k] {
                1 => leq[x * n + y] = true,
                2 => leq[y * n + x] = true,
                _ => {}
            }
        }
        let p = FinPoset::from_parts(names.clone(), leq);
        if p.check_poset_axioms().passed() {
            out.push(p);
        }
        // odometer over pair states
        let mut k = 0;
        loop {
            if k == states.len() {
                return out;
            }
            states[k] += 1;
            if states[k] < 3 {
                break;
            }
            states[k] = 0;
            k += 1;
        }
    }
}

// --- JSON and DOT interchange ---------------------------------------------

/// On-disk poset format: `{"elements": [...], "leq": [[...], ...]}` where row
/// `x`, column `y` means `x ⊑ y`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

impl FinPoset {
    pub fn to_json(&self) -> PosetJson {
        let n = self.len();
        PosetJson {
            elements: self.names.clone(),
            leq: (0..n)
                .map(|x| (0..n).map(|y| self.leq(x, y)).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Self> {
        FinPoset::new(json.elements.clone(), json.leq.clone())
    }

    /// Hasse diagram (transitive reduction of the strict order) in DOT form.
    pub fn to_dot(&self) -> String {
        let n = self.len();
        let mut dot = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for i in 0..n {
            let _ = writeln!(dot, "  n{} [label=\"{}\"];", i, self.names[i]);
        }
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    let _ = writeln!(dot, "  n{x} -> n{y};");
                }
            }
        }
        dot.push_str("}\n");
        dot
    }

    /// Hasse edges (covers) of the strict order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    edges.push((x, y));
                }
            }
        }
        edges
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_chain() -> FinPoset {
        FinPoset::chain(2)
    }

    #[test]
    fn axioms_pass_on_chain() {
        assert!(two_chain().check_poset_axioms().passed());
    }

    #[test]
    fn antisymmetry_failure_is_witnessed() {
        // a ⊑ b and b ⊑ a with a ≠ b
        let p = FinPoset::new(
            vec!["a".into(), "b".into()],
            vec![vec![true, true], vec![true, true]],
        )
        .unwrap();
        let report = p.check_poset_axioms();
        assert_eq!(report.antisymmetry, Some((0, 1)));
        assert!(report.reflexivity.is_none());
    }

    #[test]
    fn reflexivity_failure_is_witnessed() {
        let p = FinPoset::new(
            vec!["a".into(), "b".into()],
            vec![vec![false, false], vec![false, true]],
        )
        .unwrap();
        assert_eq!(p.check_poset_axioms().reflexivity, Some(0));
    }

    #[test]
    fn malformed_table_is_rejected() {
        let err = FinPoset::new(vec!["a".into(), "b".into()], vec![vec![true, false]]);
        assert!(matches!(err, Err(Error::MalformedRelation(_))));
    }

    #[test]
    fn directedness_on_chain_and_antichain() {
        let c = two_chain();
        assert!(c.is_directed(&Subset::from_indices(2, &[0, 1])));
        let a = FinPoset::antichain(2);
        assert!(!a.is_directed(&Subset::from_indices(2, &[0, 1])));
        assert!(!c.is_directed(&Subset::empty(2)));
    }

    #[test]
    fn supremum_cases() {
        let c = two_chain();
        assert_eq!(c.supremum(&Subset::from_indices(2, &[0, 1])), Ok(1));
        assert_eq!(c.supremum(&Subset::from_indices(2, &[0])), Ok(0));
        let a = FinPoset::antichain(2);
        assert_eq!(
            a.supremum(&Subset::from_indices(2, &[0, 1])),
            Err(Error::NoSupremum)
        );
    }

    #[test]
    fn empty_subset_supremum_is_least_if_any() {
        // sup ∅ = least element when the poset has one
        let c = FinPoset::chain(3);
        assert_eq!(c.supremum(&Subset::empty(3)), Ok(0));
        let a = FinPoset::antichain(2);
        assert!(a.supremum(&Subset::empty(2)).is_err());
    }

    #[test]
    fn least_element() {
        assert_eq!(two_chain().least(), Some(0));
        assert_eq!(FinPoset::antichain(2).least(), None);
    }

    #[test]
    fn way_below_on_chain() {
        let c = two_chain();
        assert!(c.way_below(0, 1));
        assert!(c.way_below(0, 0)); // least element of a pointed poset is compact
        assert!(c.is_compact(1));
    }

    #[test]
    fn way_below_on_antichain_needs_leq() {
        let a = FinPoset::antichain(2);
        assert!(!a.way_below(0, 1));
    }

    #[test]
    fn monotone_map_counts_match_binomial_oracle() {
        // maps between chains are counted by a binomial coefficient:
        // #monotone(n-chain → m-chain) = C(n+m-1, n)
        fn binom(n: u64, k: u64) -> u64 {
            (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
        }
        for n in 1..=4usize {
            for m in 1..=4usize {
                let dom = Arc::new(FinPoset::chain(n));
                let cod = Arc::new(FinPoset::chain(m));
                let maps = enumerate_monotone_maps(&dom, &cod);
                let expected = binom((n + m - 1) as u64, n as u64) as usize;
                assert_eq!(maps.len(), expected, "chains {n} -> {m}");
                assert_eq!(count_monotone_maps(&dom, &cod), expected);
            }
        }
        // the two frozen counts used everywhere else
        let two = Arc::new(FinPoset::chain(2));
        assert_eq!(enumerate_monotone_maps(&two, &two).len(), 3);
        let three = Arc::new(FinPoset::chain(3));
        assert_eq!(enumerate_monotone_maps(&three, &three).len(), 10);
    }

    #[test]
    fn maps_to_singleton() {
        let dom = Arc::new(FinPoset::antichain(3));
        let cod = Arc::new(FinPoset::chain(1));
        assert_eq!(enumerate_monotone_maps(&dom, &cod).len(), 1);
    }

    #[test]
    fn enumeration_is_deduplicated_and_sorted() {
        let dom = Arc::new(FinPoset::chain(2));
        let cod = Arc::new(FinPoset::chain(2));
        let maps = enumerate_monotone_maps(&dom, &cod);
        let tables: Vec<&[usize]> = maps.iter().map(|m| m.table()).collect();
        let mut sorted = tables.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(tables, sorted);
    }

    #[test]
    fn composition_identities() {
        let p = Arc::new(FinPoset::chain(3));
        let id = MonotoneMap::identity(p.clone());
        let f = MonotoneMap::new(p.clone(), p.clone(), vec![0, 0, 2]).unwrap();
        assert_eq!(f.then(&id).unwrap(), f);
        assert_eq!(id.then(&f).unwrap(), f);
    }

    #[test]
    fn composition_mismatch_errors() {
        let p = Arc::new(FinPoset::chain(2));
        let q = Arc::new(FinPoset::chain(3));
        let f = MonotoneMap::identity(p);
        let g = MonotoneMap::identity(q);
        assert_eq!(f.then(&g), Err(Error::ComposeMismatch));
    }

    #[test]
    fn identity_basis_passes() {
        for p in [FinPoset::chain(3), FinPoset::antichain(2)] {
            let beta: Vec<usize> = (0..p.len()).collect();
            let approx: Vec<Vec<usize>> =
                (0..p.len()).map(|x| p.down_set(x).iter().collect()).collect();
            assert!(verify_basis(&p, &beta, &approx).passed());
        }
    }

    #[test]
    fn basis_missing_maximal_element_fails() {
        // only basis element a0, but a1 is not a sup of elements below it
        let p = FinPoset::antichain(2);
        let beta = vec![0];
        let approx = vec![vec![0], vec![]];
        assert!(!verify_basis(&p, &beta, &approx).passed());
    }

    #[test]
    fn labeled_poset_counts() {
        // 1, 3, 19, 219 labeled posets on 1..=4 elements
        assert_eq!(enumerate_posets(1).len(), 1);
        assert_eq!(enumerate_posets(2).len(), 3);
        assert_eq!(enumerate_posets(3).len(), 19);
        assert_eq!(enumerate_posets(4).len(), 219);
    }

    #[test]
    fn json_round_trip() {
        let p = FinPoset::chain(3);
        let q = FinPoset::from_json(&p.to_json()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn dot_export_is_transitive_reduction() {
        let p = FinPoset::chain(3);
        let dot = p.to_dot();
        assert!(dot.contains("n0 -> n1"));
        assert!(dot.contains("n1 -> n2"));
        assert!(!dot.contains("n0 -> n2"));
    }
}
