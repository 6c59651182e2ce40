//! Kuratowski-finite subsets of the naturals, directed unions, and the
//! compactness dialogue for subsets of ℕ.
//!
//! A `List` subset is presented by a finite generator list (order and
//! repetitions irrelevant); a `Pred` subset is a decidable predicate
//! tabulated below an inspection bound. List subsets are the compact
//! elements here; for predicate subsets the best one can do at a bounded
//! depth is to certify, family by family, that no member contains them.

use serde::Serialize;

use crate::error::{Error, Result};

/// A subset of ℕ, either generated by a list or decided below a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PSubset {
    /// The set of elements occurring in `gen`.
    List { gen: Vec<usize> },
    /// `member[i]` decides membership of `i`; nothing is claimed at or
    /// beyond `member.len()`.
    Pred { member: Vec<bool> },
}

/// Regard a list as a subset: exactly its elements, ignoring order and
/// multiplicity.
pub fn iota(gen: &[usize]) -> PSubset {
    PSubset::List { gen: gen.to_vec() }
}

impl PSubset {
    pub fn contains(&self, x: usize) -> bool {
        match self {
            PSubset::List { gen } => gen.contains(&x),
            PSubset::Pred { member } => member.get(x).copied().unwrap_or(false),
        }
    }

    /// Elements up to the subset's own horizon: all generators for a list,
    /// the tabulated prefix for a predicate.
    pub fn known_elements(&self) -> Vec<usize> {
        match self {
            PSubset::List { gen } => {
                let mut xs = gen.clone();
                xs.sort_unstable();
                xs.dedup();
                xs
            }
            PSubset::Pred { member } => member
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i))
                .collect(),
        }
    }

    /// Largest index this subset can speak about, exclusive.
    pub fn horizon(&self) -> usize {
        match self {
            PSubset::List { gen } => gen.iter().max().map_or(0, |m| m + 1),
            PSubset::Pred { member } => member.len(),
        }
    }

    /// `self ⊆ other`, checked over `self`'s known elements.
    pub fn subset_of(&self, other: &PSubset) -> bool {
        self.known_elements().iter().all(|&x| other.contains(x))
    }

    /// Extensional equality below the two horizons.
    pub fn set_eq(&self, other: &PSubset) -> bool {
        self.subset_of(other) && other.subset_of(self)
    }
}

/// Pointwise union of a nonempty family.
///
/// A family of list subsets unions to the concatenation of the generators;
/// anything else is tabulated below the family's combined horizon.
pub fn directed_union(family: &[PSubset]) -> Result<PSubset> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if family.iter().all(|s| matches!(s, PSubset::List { .. })) {
        let mut gen = Vec::new();
        for s in family {
            if let PSubset::List { gen: g } = s {
                gen.extend_from_slice(g);
            }
        }
        return Ok(PSubset::List { gen });
    }
    let bound = family.iter().map(|s| s.horizon()).max().unwrap_or(0);
    let member = (0..bound)
        .map(|x| family.iter().any(|s| s.contains(x)))
        .collect();
    Ok(PSubset::Pred { member })
}

/// Is the family directed under inclusion (inhabited, pairwise bounded
/// within the family)?
pub fn family_is_directed(family: &[PSubset]) -> bool {
    !family.is_empty()
        && family.iter().all(|a| {
            family.iter().all(|b| {
                family
                    .iter()
                    .any(|c| a.subset_of(c) && b.subset_of(c))
            })
        })
}

/// How the family handed to [`compactness_witness`] is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// The family is the whole cover: `a ⊆ ⋃ family` is enforced, and a
    /// directed finite cover always has a containing member.
    Contained,
    /// The family is a finite sample of an infinite directed cover, so the
    /// sampled union need not contain `a`; the interesting outcome is the
    /// per-member escape certificate.
    Escaping,
}

/// Outcome of probing a subset's compactness against one directed cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CompactnessVerdict {
    /// Some member of the family already contains the subset.
    Contained { member: usize },
    /// No member contains the subset; for each member, an element of the
    /// subset it misses.
    Escapes { missing: Vec<(usize, usize)> },
}

/// Given a directed family covering `a`, either find a member containing
/// `a`, or certify that every member misses some element of `a`.
///
/// A positive answer for every cover is what compactness means; list
/// subsets always get one. A negative certificate only speaks about the
/// family at hand.
pub fn compactness_witness(
    a: &PSubset,
    family: &[PSubset],
    expectation: Expectation,
) -> Result<CompactnessVerdict> {
    if !family_is_directed(family) {
        return Err(Error::NotDirected);
    }
    if expectation == Expectation::Contained {
        let union = directed_union(family)?;
        for &x in &a.known_elements() {
            if !union.contains(x) {
                return Err(Error::CoverageViolation(x));
            }
        }
    }
    for (i, member) in family.iter().enumerate() {
        if a.subset_of(member) {
            return Ok(CompactnessVerdict::Contained { member: i });
        }
    }
    let missing = family
        .iter()
        .enumerate()
        .map(|(i, member)| {
            let x = a
                .known_elements()
                .into_iter()
                .find(|&x| !member.contains(x))
                .expect("member does not contain a, so it misses a known element");
            (i, x)
        })
        .collect();
    Ok(CompactnessVerdict::Escapes { missing })
}

/// A finite enumeration of a subset, when one is available.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitePresentation {
    pub size: usize,
    pub elements: Vec<usize>,
    /// true when the enumeration only covers the subset below its bound
    pub partial: bool,
}

/// For a list subset: its deduplicated enumeration (total). For a predicate
/// subset: the enumeration below the bound, flagged partial.
pub fn kuratowski_presentation(a: &PSubset) -> FinitePresentation {
    match a {
        PSubset::List { gen } => {
            let mut seen = Vec::new();
            for &x in gen {
                if !seen.contains(&x) {
                    seen.push(x);
                }
            }
            FinitePresentation {
                size: seen.len(),
                elements: seen,
                partial: false,
            }
        }
        PSubset::Pred { .. } => {
            let elements = a.known_elements();
            FinitePresentation {
                size: elements.len(),
                elements,
                partial: true,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prefix(k: usize, bound: usize) -> PSubset {
        // {0, …, k−1} as a predicate below `bound`
        PSubset::Pred {
            member: (0..bound).map(|x| x < k).collect(),
        }
    }

    #[test]
    fn iota_ignores_duplicates_and_order() {
        assert!(iota(&[3, 3]).set_eq(&iota(&[3])));
        assert!(iota(&[1, 2]).set_eq(&iota(&[2, 1])));
        assert!(iota(&[]).set_eq(&PSubset::Pred { member: vec![] }));
        assert!(iota(&[1]).subset_of(&iota(&[1, 2])));
        assert!(!iota(&[1, 2]).subset_of(&iota(&[1])));
    }

    #[test]
    fn union_of_lists_is_concatenation() {
        let family = [iota(&[0]), iota(&[0, 1]), iota(&[0, 1, 2])];
        let u = directed_union(&family).unwrap();
        assert!(u.set_eq(&iota(&[0, 1, 2])));
        assert!(matches!(u, PSubset::List { .. }));
    }

    #[test]
    fn union_of_prefixes() {
        let family: Vec<PSubset> = (0..5).map(|k| prefix(k, 5)).collect();
        let u = directed_union(&family).unwrap();
        assert!(u.set_eq(&prefix(4, 5)));
        let with_empty = [PSubset::List { gen: vec![] }, iota(&[7])];
        assert!(directed_union(&with_empty).unwrap().set_eq(&iota(&[7])));
    }

    #[test]
    fn union_needs_a_family() {
        assert_eq!(directed_union(&[]), Err(Error::EmptyFamily));
    }

    #[test]
    fn union_is_least_upper_bound() {
        let family = [iota(&[0, 2]), iota(&[0, 2, 4])];
        let u = directed_union(&family).unwrap();
        for s in &family {
            assert!(s.subset_of(&u));
        }
        // anything containing every member contains the union
        let bigger = iota(&[0, 1, 2, 3, 4]);
        assert!(family.iter().all(|s| s.subset_of(&bigger)));
        assert!(u.subset_of(&bigger));
    }

    #[test]
    fn kfinite_subset_is_contained_in_some_member() {
        let a = iota(&[0, 1]);
        let family: Vec<PSubset> = (1..=5).map(|k| prefix(k, 6)).collect();
        let verdict = compactness_witness(&a, &family, Expectation::Contained).unwrap();
        assert_eq!(verdict, CompactnessVerdict::Contained { member: 1 });
    }

    #[test]
    fn full_prefix_escapes_proper_prefixes() {
        // {0..=9} against its proper prefixes, read as a sample of the
        // infinite prefix chain: every member misses the next element
        let a = prefix(10, 10);
        let family: Vec<PSubset> = (1..10).map(|k| prefix(k, 10)).collect();
        match compactness_witness(&a, &family, Expectation::Escaping).unwrap() {
            CompactnessVerdict::Escapes { missing } => {
                // member {0..k−1} first misses k
                assert_eq!(missing, (1..10).map(|k| (k - 1, k)).collect::<Vec<_>>());
            }
            v => panic!("expected escape certificate, got {v:?}"),
        }
        // under the Contained reading the same query is a broken premise
        match compactness_witness(&a, &family, Expectation::Contained) {
            Err(Error::CoverageViolation(9)) => {}
            other => panic!("expected coverage violation, got {other:?}"),
        }
    }

    #[test]
    fn empty_subset_is_contained_in_first_member() {
        let a = iota(&[]);
        let family = [iota(&[4]), iota(&[4, 5])];
        assert_eq!(
            compactness_witness(&a, &family, Expectation::Contained).unwrap(),
            CompactnessVerdict::Contained { member: 0 }
        );
    }

    #[test]
    fn undirected_family_is_rejected() {
        let family = [iota(&[0]), iota(&[1])];
        assert_eq!(
            compactness_witness(&iota(&[0]), &family, Expectation::Contained),
            Err(Error::NotDirected)
        );
    }

    #[test]
    fn list_subsets_always_find_a_member_small_exhaustive() {
        // every directed cover of a list subset has a containing member:
        // exhaustive over families of ≤ 3 list subsets on carrier {0,1,2}
        let all_lists: Vec<Vec<usize>> = (0u8..8)
            .map(|mask| (0..3).filter(|&i| mask >> i & 1 == 1).collect())
            .collect();
        for a_mask in 0u8..8 {
            let a_gen: Vec<usize> = (0..3).filter(|&i| a_mask >> i & 1 == 1).collect();
            let a = iota(&a_gen);
            for i in 0..all_lists.len() {
                for j in 0..all_lists.len() {
                    for k in 0..all_lists.len() {
                        let family =
                            [iota(&all_lists[i]), iota(&all_lists[j]), iota(&all_lists[k])];
                        if !family_is_directed(&family) {
                            continue;
                        }
                        match compactness_witness(&a, &family, Expectation::Contained) {
                            Ok(CompactnessVerdict::Contained { .. })
                            | Err(Error::CoverageViolation(_)) => {}
                            other => panic!(
                                "list subset escaped a directed cover: {a_gen:?} vs \
                                 ({i},{j},{k}): {other:?}"
                            ),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn presentations() {
        let p = kuratowski_presentation(&iota(&[5, 7, 5]));
        assert_eq!(p.size, 2);
        assert_eq!(p.elements, vec![5, 7]);
        assert!(!p.partial);

        let empty = kuratowski_presentation(&iota(&[]));
        assert_eq!((empty.size, empty.partial), (0, false));

        let even = PSubset::Pred {
            member: (0..10).map(|x| x % 2 == 0).collect(),
        };
        let p = kuratowski_presentation(&even);
        assert_eq!(p.size, 5);
        assert_eq!(p.elements, vec![0, 2, 4, 6, 8]);
        assert!(p.partial);
    }
}
