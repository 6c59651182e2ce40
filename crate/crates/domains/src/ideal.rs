//! Abstract bases and their rounded ideal completions.
//!
//! An abstract basis is a set with a transitive relation satisfying nullary
//! and binary interpolation. Ideals are directed lower sets; here they are
//! presented either by a single generator (principal) or by an ascending
//! generator chain, and all queries are depth-bounded. Queries return
//! three-valued verdicts: a definite answer needs either a witness or a
//! basis-supplied guarantee that the bounded search was conclusive.
//!
//! Two bases ship with the crate: any finite poset under its own (reflexive)
//! order, whose completion is algebraic with the principal ideals as compact
//! elements, and the dyadics under their strict order, whose completion is
//! continuous with no compact elements at all.

use std::fmt;
use std::sync::Arc;

use crate::dyadics::{self, Dyadic};
use crate::error::{Error, Result};
use crate::finposet::{enumerate_monotone_maps, FinPoset, MonotoneMap, Subset};

/// A decidable abstract basis, presented as an enumeration oracle.
///
/// `enumerate(d)` must be monotone in `d` and eventually produce every
/// element relevant to bounded searches. The interpolation methods return
/// `None` when no witness exists — that is a defect of the relation, and
/// [`check_abstract_basis`] will report it.
pub trait AbstractBasis {
    type Elem: Clone + Eq + fmt::Display;

    fn prec(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    fn enumerate(&self, depth: usize) -> Vec<Self::Elem>;

    /// Nullary interpolation: some `y ≺ x`.
    fn below_witness(&self, x: &Self::Elem) -> Option<Self::Elem>;

    /// Binary interpolation: some `z` with `x ≺ z ≺ y`, given `x ≺ y`.
    fn interpolant(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem>;

    /// A depth `d` such that `enumerate(d)` is guaranteed to contain a
    /// witness for any failing subset query and any successful way-below
    /// search among principal ideals over `xs`, whenever such a witness
    /// exists at all. `None` when the basis offers no such bound; bounded
    /// queries then stay three-valued.
    fn decision_depth(&self, xs: &[&Self::Elem]) -> Option<usize>;
}

/// A finite poset read as an abstract basis via its (reflexive) order.
#[derive(Clone)]
pub struct PosetBasis {
    poset: Arc<FinPoset>,
}

impl PosetBasis {
    pub fn new(poset: Arc<FinPoset>) -> Self {
        PosetBasis { poset }
    }

    pub fn poset(&self) -> &Arc<FinPoset> {
        &self.poset
    }
}

impl AbstractBasis for PosetBasis {
    type Elem = usize;

    fn prec(&self, x: &usize, y: &usize) -> bool {
        self.poset.leq(*x, *y)
    }

    fn enumerate(&self, _depth: usize) -> Vec<usize> {
        (0..self.poset.len()).collect()
    }

    fn below_witness(&self, x: &usize) -> Option<usize> {
        Some(*x) // reflexivity
    }

    fn interpolant(&self, x: &usize, _y: &usize) -> Option<usize> {
        Some(*x) // x ≺ x ≺ y by reflexivity and the hypothesis
    }

    fn decision_depth(&self, _xs: &[&usize]) -> Option<usize> {
        Some(0) // the enumeration is complete at any depth
    }
}

/// The dyadics in (−1, 1) with their strict structural order.
#[derive(Clone, Default)]
pub struct DyadicBasis;

impl AbstractBasis for DyadicBasis {
    type Elem = Dyadic;

    fn prec(&self, x: &Dyadic, y: &Dyadic) -> bool {
        dyadics::prec(x, y)
    }

    fn enumerate(&self, depth: usize) -> Vec<Dyadic> {
        dyadics::enumerate(depth)
    }

    fn below_witness(&self, x: &Dyadic) -> Option<Dyadic> {
        Some(x.clone().left()) // l(x) < x numerically
    }

    fn interpolant(&self, x: &Dyadic, y: &Dyadic) -> Option<Dyadic> {
        dyadics::density_witness(x, y).ok()
    }

    fn decision_depth(&self, xs: &[&Dyadic]) -> Option<usize> {
        // Trichotomy and density localize witnesses: any witness that
        // separates or connects principal ideals over `xs` can be chosen
        // among the elements mentioned or a midpoint one level deeper.
        Some(xs.iter().map(|x| x.depth()).max().unwrap_or(0) + 2)
    }
}

/// A check report for the abstract-basis laws, with counterexamples.
#[derive(Debug, Clone)]
pub struct AbstractBasisReport<E> {
    pub transitivity: Option<(E, E, E)>,
    pub nullary: Option<E>,
    pub binary: Option<(E, E)>,
    pub checked: usize,
}

impl<E> AbstractBasisReport<E> {
    pub fn passed(&self) -> bool {
        self.transitivity.is_none() && self.nullary.is_none() && self.binary.is_none()
    }
}

/// Verify transitivity and both interpolation properties over the
/// enumeration up to `depth`.
pub fn check_abstract_basis<B: AbstractBasis>(
    basis: &B,
    depth: usize,
) -> AbstractBasisReport<B::Elem> {
    let elems = basis.enumerate(depth);
    let mut report = AbstractBasisReport {
        transitivity: None,
        nullary: None,
        binary: None,
        checked: elems.len(),
    };
    'trans: for x in &elems {
        for y in &elems {
            if !basis.prec(x, y) {
                continue;
            }
            for z in &elems {
                if basis.prec(y, z) && !basis.prec(x, z) {
                    report.transitivity = Some((x.clone(), y.clone(), z.clone()));
                    break 'trans;
                }
            }
        }
    }
    for x in &elems {
        match basis.below_witness(x) {
            Some(w) if basis.prec(&w, x) => {}
            _ => {
                report.nullary = Some(x.clone());
                break;
            }
        }
    }
    'binary: for x in &elems {
        for y in &elems {
            if !basis.prec(x, y) {
                continue;
            }
            match basis.interpolant(x, y) {
                Some(z) if basis.prec(x, &z) && basis.prec(&z, y) => {}
                _ => {
                    report.binary = Some((x.clone(), y.clone()));
                    break 'binary;
                }
            }
        }
    }
    report
}

/// An ideal of the completion, presented by generators.
#[derive(Clone)]
pub enum Ideal<E> {
    /// `↓x = { y : y ≺ x }`.
    Principal(E),
    /// The down-closure of an ascending generator chain.
    Generated(Chain<E>),
}

/// An ascending chain of generators, either a finite list or a function
/// producing the `i`-th generator (for ideals with no principal bound).
#[derive(Clone)]
pub enum Chain<E> {
    Finite(Vec<E>),
    Unbounded(Arc<dyn Fn(usize) -> E + Send + Sync>),
}

impl<E: Clone> Chain<E> {
    pub fn nth(&self, i: usize) -> Option<E> {
        match self {
            Chain::Finite(v) => v.get(i).cloned(),
            Chain::Unbounded(f) => Some(f(i)),
        }
    }

    /// Generators visible at `depth`.
    pub fn prefix(&self, depth: usize) -> Vec<E> {
        (0..=depth).map_while(|i| self.nth(i)).collect()
    }
}

impl<E: fmt::Display> fmt::Display for Ideal<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ideal::Principal(x) => write!(f, "↓{x}"),
            Ideal::Generated(Chain::Finite(v)) => {
                let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "↓⟨{}⟩", parts.join(" ≺ "))
            }
            Ideal::Generated(Chain::Unbounded(_)) => write!(f, "↓⟨chain…⟩"),
        }
    }
}

impl<E: Clone> Ideal<E> {
    pub fn principal(x: E) -> Self {
        Ideal::Principal(x)
    }

    pub fn from_chain(v: Vec<E>) -> Self {
        Ideal::Generated(Chain::Finite(v))
    }

    /// All generators this ideal exposes at the given depth.
    pub fn generators(&self, depth: usize) -> Vec<E> {
        match self {
            Ideal::Principal(x) => vec![x.clone()],
            Ideal::Generated(c) => c.prefix(depth),
        }
    }

    /// The single generator dominating the ideal, when the presentation is
    /// finite: a finite ascending chain's down-closure is the down-set of
    /// its last element.
    pub fn principal_bound(&self) -> Option<E> {
        match self {
            Ideal::Principal(x) => Some(x.clone()),
            Ideal::Generated(Chain::Finite(v)) => v.last().cloned(),
            Ideal::Generated(Chain::Unbounded(_)) => None,
        }
    }
}

/// Membership of `b` in the ideal, inspected to `depth`; monotone in depth
/// for generated ideals, exact for principal ones.
pub fn member<B: AbstractBasis>(basis: &B, ideal: &Ideal<B::Elem>, b: &B::Elem, depth: usize) -> bool {
    match ideal {
        Ideal::Principal(x) => basis.prec(b, x),
        Ideal::Generated(chain) => chain
            .prefix(depth)
            .iter()
            .any(|c| basis.prec(b, c)),
    }
}

/// Verdict of a bounded subset query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetVerdict<E> {
    Holds,
    /// A member of the left ideal that the right one misses.
    FailsAt(E),
    Unknown,
}

/// `I ⊆ J`, decided to `depth`.
///
/// Queries between finitely presented ideals are exact whenever the basis
/// supplies a [`decision_depth`] bound; anything involving an unbounded
/// chain can refute but never confirm, except by finding a dominating
/// generator.
///
/// [`decision_depth`]: AbstractBasis::decision_depth
pub fn subset<B: AbstractBasis>(
    basis: &B,
    left: &Ideal<B::Elem>,
    right: &Ideal<B::Elem>,
    depth: usize,
) -> SubsetVerdict<B::Elem> {
    // positive shortcut: a generator of `right` dominating `left`
    if let Some(lb) = left.principal_bound() {
        for g in right.generators(depth) {
            // ↓lb ⊆ ↓g when every z ≺ lb is ≺ g; for that it is enough
            // that lb ≼ g in the sense below
            if basis.prec(&lb, &g) || lb == g {
                return SubsetVerdict::Holds;
            }
        }
    }
    // witness scan over the bounded enumeration plus the visible generators
    let mut pool = basis.enumerate(effective_depth(basis, left, right, depth));
    pool.extend(left.generators(depth));
    for z in &pool {
        if member(basis, left, z, depth) && !member(basis, right, z, depth) {
            return SubsetVerdict::FailsAt(z.clone());
        }
    }
    // no witness: exact only for finitely presented sides with a bound
    match (left.principal_bound(), right.principal_bound()) {
        (Some(lb), Some(rb)) if basis.decision_depth(&[&lb, &rb]).is_some() => {
            SubsetVerdict::Holds
        }
        _ => SubsetVerdict::Unknown,
    }
}

fn effective_depth<B: AbstractBasis>(
    basis: &B,
    left: &Ideal<B::Elem>,
    right: &Ideal<B::Elem>,
    depth: usize,
) -> usize {
    match (left.principal_bound(), right.principal_bound()) {
        (Some(lb), Some(rb)) => basis
            .decision_depth(&[&lb, &rb])
            .map_or(depth, |d| d.max(depth)),
        _ => depth,
    }
}

/// Verdict of a bounded way-below query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WayBelowVerdict<E> {
    /// `I ⊆ ↓x` for this `x ∈ J`.
    HoldsVia(E),
    Fails,
    Unknown,
}

/// `I ≪ J` in the ideal completion, decided to `depth` through the
/// containment characterization: search for `x ∈ J` with `I ⊆ ↓x`.
pub fn way_below_ideal<B: AbstractBasis>(
    basis: &B,
    left: &Ideal<B::Elem>,
    right: &Ideal<B::Elem>,
    depth: usize,
) -> WayBelowVerdict<B::Elem> {
    // candidates x ∈ J: the bounded enumeration filtered by membership,
    // plus J's own visible generators that belong to J
    let eff = effective_depth(basis, left, right, depth);
    let mut candidates: Vec<B::Elem> = basis
        .enumerate(eff)
        .into_iter()
        .filter(|x| member(basis, right, x, depth))
        .collect();
    for g in right.generators(depth) {
        if member(basis, right, &g, depth) && !candidates.contains(&g) {
            candidates.push(g);
        }
    }
    let mut any_unknown = false;
    for x in candidates {
        match subset(basis, left, &Ideal::Principal(x.clone()), depth) {
            SubsetVerdict::Holds => return WayBelowVerdict::HoldsVia(x),
            SubsetVerdict::Unknown => any_unknown = true,
            SubsetVerdict::FailsAt(_) => {}
        }
    }
    match (left.principal_bound(), right.principal_bound()) {
        (Some(lb), Some(rb)) if !any_unknown && basis.decision_depth(&[&lb, &rb]).is_some() => {
            WayBelowVerdict::Fails
        }
        _ => WayBelowVerdict::Unknown,
    }
}

/// Supremum of a directed family of ideals, as a generated ideal.
///
/// Directedness is checked to `depth`: every two members need a member
/// confirmed (at this depth) to contain both. The result's chain is built
/// by absorbing generators into a running ascending sequence, looking up
/// upper bounds in the bounded enumeration when two generators are
/// incomparable.
pub fn ideal_sup<B: AbstractBasis>(
    basis: &B,
    family: &[Ideal<B::Elem>],
    depth: usize,
) -> Result<Ideal<B::Elem>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for a in family {
        for b in family {
            let bounded = family.iter().any(|c| {
                subset(basis, a, c, depth) == SubsetVerdict::Holds
                    && subset(basis, b, c, depth) == SubsetVerdict::Holds
            });
            if !bounded {
                return Err(Error::NotDirectedAtDepth(depth));
            }
        }
    }
    let mut chain: Vec<B::Elem> = Vec::new();
    let mut all_generators: Vec<B::Elem> = Vec::new();
    for ideal in family {
        all_generators.extend(ideal.generators(depth));
    }
    for g in all_generators.clone() {
        match chain.last() {
            None => chain.push(g),
            Some(m) => {
                if basis.prec(m, &g) {
                    chain.push(g);
                } else if basis.prec(&g, m) || g == *m {
                    // absorbed
                } else {
                    // incomparable: find a bound inside the union
                    let bound = basis.enumerate(depth).into_iter().find(|u| {
                        basis.prec(m, u)
                            && basis.prec(&g, u)
                            && family.iter().any(|i| member(basis, i, u, depth))
                    });
                    match bound {
                        Some(u) => chain.push(u),
                        None => return Err(Error::NotDirectedAtDepth(depth)),
                    }
                }
            }
        }
    }
    Ok(Ideal::from_chain(chain))
}

/// Roundedness of an explicitly listed set of members: each must have a
/// strictly later member inside the list-or-ideal.
#[derive(Debug, Clone)]
pub struct RoundednessReport<E> {
    /// members with no witness above them
    pub failures: Vec<E>,
    pub checked: usize,
}

impl<E> RoundednessReport<E> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For sampled members `x` of the ideal, exhibit `y ∈ I` with `x ≺ y`.
/// Principal ideals get their witness from the interpolant; chains from a
/// later generator.
pub fn roundedness_check<B: AbstractBasis>(
    basis: &B,
    ideal: &Ideal<B::Elem>,
    depth: usize,
) -> RoundednessReport<B::Elem> {
    let samples: Vec<B::Elem> = basis
        .enumerate(depth)
        .into_iter()
        .filter(|x| member(basis, ideal, x, depth))
        .collect();
    let mut failures = Vec::new();
    for x in &samples {
        let witness = match ideal {
            Ideal::Principal(b) => basis.interpolant(x, b),
            Ideal::Generated(chain) => chain
                .prefix(depth)
                .iter()
                .find(|c| basis.prec(x, c))
                .and_then(|c| basis.interpolant(x, c)),
        };
        match witness {
            Some(y) if basis.prec(x, &y) && member(basis, ideal, &y, depth) => {}
            _ => failures.push(x.clone()),
        }
    }
    RoundednessReport {
        failures,
        checked: samples.len(),
    }
}

/// Roundedness of a raw member list: every member needs a strictly later
/// member in the list. Rejects down-sets with a top element.
pub fn roundedness_check_members<B: AbstractBasis>(
    basis: &B,
    members: &[B::Elem],
) -> RoundednessReport<B::Elem> {
    let failures = members
        .iter()
        .filter(|x| !members.iter().any(|y| basis.prec(x, y)))
        .cloned()
        .collect();
    RoundednessReport {
        failures,
        checked: members.len(),
    }
}

// --- the ideal completion of a finite poset, materialized ----------------

/// The ideal completion of a finite poset basis, as a finite poset of its
/// own, with bookkeeping to move between the two.
#[derive(Debug, Clone)]
pub struct FiniteIdealCompletion {
    base: Arc<FinPoset>,
    poset: Arc<FinPoset>,
    /// membership sets of the ideals, indexed like `poset`
    ideals: Vec<Subset>,
    /// index of `↓x` for each base element `x`
    principal: Vec<usize>,
}

impl FiniteIdealCompletion {
    /// Enumerate all ideals (inhabited directed lower sets) of the poset,
    /// ordered by inclusion.
    pub fn new(base: Arc<FinPoset>) -> Self {
        let n = base.len();
        assert!(n <= 16, "ideal enumeration walks 2^n subsets");
        let mut ideals = Vec::new();
        for mask in 1u64..(1 << n) {
            let s = Subset::from_mask(n, mask);
            let lower = s
                .iter()
                .all(|y| (0..n).all(|z| !base.leq(z, y) || s.contains(z)));
            if lower && base.is_directed(&s) {
                ideals.push(s);
            }
        }
        let m = ideals.len();
        let names = ideals
            .iter()
            .map(|s| {
                let parts: Vec<&str> = s.iter().map(|i| base.name(i)).collect();
                format!("{{{}}}", parts.join(","))
            })
            .collect();
        let mut leq = vec![false; m * m];
        for (i, a) in ideals.iter().enumerate() {
            for (j, b) in ideals.iter().enumerate() {
                leq[i * m + j] = a.iter().all(|x| b.contains(x));
            }
        }
        let poset = Arc::new(FinPoset::from_parts(names, leq));
        let principal = (0..n)
            .map(|x| {
                let down = base.down_set(x);
                ideals
                    .iter()
                    .position(|s| *s == down)
                    .expect("down-sets are ideals")
            })
            .collect();
        FiniteIdealCompletion {
            base,
            poset,
            ideals,
            principal,
        }
    }

    pub fn base(&self) -> &Arc<FinPoset> {
        &self.base
    }

    pub fn poset(&self) -> &Arc<FinPoset> {
        &self.poset
    }

    pub fn ideals(&self) -> &[Subset] {
        &self.ideals
    }

    pub fn principal_index(&self, x: usize) -> usize {
        self.principal[x]
    }

    /// The unique continuous extension of a monotone `f : P → D` along the
    /// principal-ideal embedding: an ideal maps to the supremum of the
    /// image of its members.
    pub fn free_extension(&self, f: &MonotoneMap) -> Result<MonotoneMap> {
        assert_eq!(f.dom(), &self.base, "map must start from the base poset");
        let d = f.cod().clone();
        let mut table = Vec::with_capacity(self.ideals.len());
        for s in &self.ideals {
            let image = f.image(s);
            table.push(d.supremum(&image)?);
        }
        MonotoneMap::new(self.poset.clone(), d, table)
    }

    /// Every monotone map out of the completion agreeing with `f` on
    /// principal ideals (exhaustive enumeration).
    pub fn extensions_agreeing_on_principals(&self, f: &MonotoneMap) -> Vec<MonotoneMap> {
        enumerate_monotone_maps(&self.poset, f.cod())
            .into_iter()
            .filter(|g| {
                (0..self.base.len()).all(|x| g.apply(self.principal[x]) == f.apply(x))
            })
            .collect()
    }
}

/// Outcome of the retract round trip between a finite poset and its ideal
/// completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractReport {
    pub section_monotone: bool,
    pub retraction_monotone: bool,
    /// elements failing `r(s(x)) = x`
    pub roundtrip_failures: Vec<usize>,
    /// ideals where `s(r(I)) ⊑ I` fails (as an inclusion of ideals)
    pub deflation_failures: Vec<usize>,
}

impl RetractReport {
    pub fn passed(&self) -> bool {
        self.section_monotone
            && self.retraction_monotone
            && self.roundtrip_failures.is_empty()
            && self.deflation_failures.is_empty()
    }
}

/// Exhibit a finite poset as a continuous retract of its ideal completion:
/// the section sends `x` to `↓x` (every element is compact here, so the
/// way-below set is the down-set) and the retraction takes suprema.
pub fn retract_roundtrip(d: &Arc<FinPoset>) -> Result<RetractReport> {
    let idl = FiniteIdealCompletion::new(d.clone());
    let n = d.len();
    // s : D → Idl(D), x ↦ ↓x
    let section = MonotoneMap::new(
        d.clone(),
        idl.poset().clone(),
        (0..n).map(|x| idl.principal_index(x)).collect(),
    );
    let section_monotone = section.is_ok();
    // r : Idl(D) → D, I ↦ ⊔ I
    let retraction = MonotoneMap::new(
        idl.poset().clone(),
        d.clone(),
        idl.ideals()
            .iter()
            .map(|s| d.supremum(s))
            .collect::<Result<Vec<_>>>()?,
    );
    let retraction_monotone = retraction.is_ok();
    let (Ok(s), Ok(r)) = (section, retraction) else {
        return Ok(RetractReport {
            section_monotone,
            retraction_monotone,
            roundtrip_failures: (0..n).collect(),
            deflation_failures: Vec::new(),
        });
    };
    let roundtrip_failures = (0..n).filter(|&x| r.apply(s.apply(x)) != x).collect();
    // s ∘ r sends an ideal I to ↓(⊔I) ⊒ I; on principal ideals (all of
    // them, here) the composite is the identity, hence deflationary too
    let deflation_failures = (0..idl.poset().len())
        .filter(|&i| {
            let through = s.apply(r.apply(i));
            !idl.poset().leq(through, i)
        })
        .collect();
    Ok(RetractReport {
        section_monotone,
        retraction_monotone,
        roundtrip_failures,
        deflation_failures,
    })
}
