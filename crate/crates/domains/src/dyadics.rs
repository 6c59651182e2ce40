//! Dyadic rationals in (−1, 1) as an inductive type with a structural
//! strict order, plus an exact-arithmetic oracle.
//!
//! The tree `c` sits at 0; `l` and `r` halve towards −1 and 1:
//! `l(x) = (x−1)/2`, `r(x) = (x+1)/2`. The structural order `prec` is
//! irreflexive, transitive, trichotomous, dense and endpoint-free, which
//! makes (𝔻, ≺) an abstract basis whose ideal completion has no compact
//! elements at all. `to_rational` grounds every structural claim in exact
//! integer arithmetic.

use std::fmt;

use crate::error::{Error, Result};

/// A dyadic rational in (−1, 1), as a finite constructor tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Dyadic {
    Center,
    Left(Box<Dyadic>),
    Right(Box<Dyadic>),
}

impl Dyadic {
    pub fn left(self) -> Dyadic {
        Dyadic::Left(Box::new(self))
    }

    pub fn right(self) -> Dyadic {
        Dyadic::Right(Box::new(self))
    }

    /// Nesting depth: `c` has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Dyadic::Center => 0,
            Dyadic::Left(d) | Dyadic::Right(d) => 1 + d.depth(),
        }
    }
}

/// The strict order, by structural recursion on both arguments.
pub fn prec(x: &Dyadic, y: &Dyadic) -> bool {
    use Dyadic::*;
    match (x, y) {
        (Center, Center) => false,
        (Center, Left(_)) => false,
        (Center, Right(_)) => true,
        (Left(_), Center) => true,
        (Left(a), Left(b)) => prec(a, b),
        (Left(_), Right(_)) => true,
        (Right(_), Center) => false,
        (Right(_), Left(_)) => false,
        (Right(a), Right(b)) => prec(a, b),
    }
}

/// An exact dyadic rational `num / den` with `den` a power of two,
/// normalized so that `num` is odd or zero and `|num| < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicRational {
    pub num: i64,
    pub den: i64,
}

impl DyadicRational {
    fn normalized(mut num: i64, mut den: i64) -> Self {
        debug_assert!(den > 0 && den.count_ones() == 1);
        while num % 2 == 0 && den > 1 {
            num /= 2;
            den /= 2;
        }
        DyadicRational { num, den }
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // denominators are positive, so cross-multiplication preserves order
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Exact value of a tree: `c ↦ 0`, `l(d) ↦ (v−1)/2`, `r(d) ↦ (v+1)/2`.
pub fn to_rational(x: &Dyadic) -> DyadicRational {
    match x {
        Dyadic::Center => DyadicRational { num: 0, den: 1 },
        Dyadic::Left(d) => {
            let v = to_rational(d);
            DyadicRational::normalized(v.num - v.den, 2 * v.den)
        }
        Dyadic::Right(d) => {
            let v = to_rational(d);
            DyadicRational::normalized(v.num + v.den, 2 * v.den)
        }
    }
}

/// The canonical tree denoting a given value in (−1, 1).
pub fn from_rational(v: DyadicRational) -> Dyadic {
    assert!(v.num.abs() < v.den, "value must lie in (-1, 1)");
    if v.num == 0 {
        Dyadic::Center
    } else if v.num < 0 {
        // v = (v'−1)/2 with v' = 2v+1
        from_rational(DyadicRational::normalized(2 * v.num + v.den, v.den)).left()
    } else {
        from_rational(DyadicRational::normalized(2 * v.num - v.den, v.den)).right()
    }
}

/// Some `z` with `x ≺ z ≺ y`.
///
/// The order is dense but the structural recursion gives no obvious witness,
/// so this goes through the numeric oracle: take the midpoint and read back
/// its canonical tree.
pub fn density_witness(x: &Dyadic, y: &Dyadic) -> Result<Dyadic> {
    if !prec(x, y) {
        return Err(Error::Precondition(format!("{x} does not precede {y}")));
    }
    let (a, b) = (to_rational(x), to_rational(y));
    let mid = DyadicRational::normalized(a.num * b.den + b.num * a.den, 2 * a.den * b.den);
    Ok(from_rational(mid))
}

/// Witnesses that the order has no endpoints: `l(x) ≺ x ≺ r(x)` always.
pub fn endpoint_witnesses(x: &Dyadic) -> (Dyadic, Dyadic) {
    (x.clone().left(), x.clone().right())
}

/// All trees of depth ≤ `depth`, in a deterministic order
/// (count is 2^(depth+1) − 1).
pub fn enumerate(depth: usize) -> Vec<Dyadic> {
    assert!(depth <= 20, "2^(depth+1) trees; depth ≤ 20 only");
    let mut out = vec![Dyadic::Center];
    let mut frontier = vec![Dyadic::Center];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for d in frontier {
            next.push(d.clone().left());
            next.push(d.right());
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dyadic::Center => write!(f, "c"),
            Dyadic::Left(d) => write!(f, "l({d})"),
            Dyadic::Right(d) => write!(f, "r({d})"),
        }
    }
}

/// Parse the `c` / `l(…)` / `r(…)` syntax.
pub fn parse(text: &str) -> Result<Dyadic> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    fn skip_ws(bytes: &[u8], pos: &mut usize) {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    }
    fn expr(bytes: &[u8], pos: &mut usize) -> Result<Dyadic> {
        skip_ws(bytes, pos);
        let err = |pos: usize, message: &str| Error::Parse {
            position: pos,
            message: message.into(),
        };
        match bytes.get(*pos) {
            Some(b'c') => {
                *pos += 1;
                Ok(Dyadic::Center)
            }
            Some(&ch @ (b'l' | b'r')) => {
                *pos += 1;
                skip_ws(bytes, pos);
                if bytes.get(*pos) != Some(&b'(') {
                    return Err(err(*pos, "expected `(`"));
                }
                *pos += 1;
                let inner = expr(bytes, pos)?;
                skip_ws(bytes, pos);
                if bytes.get(*pos) != Some(&b')') {
                    return Err(err(*pos, "expected `)`"));
                }
                *pos += 1;
                Ok(if ch == b'l' {
                    inner.left()
                } else {
                    inner.right()
                })
            }
            _ => Err(err(*pos, "expected `c`, `l(` or `r(`")),
        }
    }
    let d = expr(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(Error::Parse {
            position: pos,
            message: "trailing input".into(),
        });
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> Dyadic {
        Dyadic::Center
    }

    #[test]
    fn order_table_spot_checks() {
        assert!(prec(&c(), &c().right()));
        assert!(!prec(&c().right(), &c()));
        assert!(prec(&c().left(), &c()));
        assert!(prec(&c().left(), &c().right()));
        // recursive cases delegate to the subtree
        assert_eq!(
            prec(&c().left().left(), &c().right().left()),
            prec(&c().left(), &c().right())
        );
    }

    #[test]
    fn rational_values() {
        assert_eq!(to_rational(&c()), DyadicRational { num: 0, den: 1 });
        assert_eq!(to_rational(&c().left()), DyadicRational { num: -1, den: 2 });
        // r(l(c)) = r(-1/2) = 1/4
        assert_eq!(
            to_rational(&c().left().right()),
            DyadicRational { num: 1, den: 4 }
        );
    }

    #[test]
    fn from_rational_inverts_to_rational() {
        for d in enumerate(6) {
            assert_eq!(from_rational(to_rational(&d)), d);
        }
    }

    #[test]
    fn numeric_soundness_exhaustive() {
        // prec(x, y) ⟺ value(x) < value(y); the oracle anchoring everything
        let all = enumerate(5);
        for x in &all {
            for y in &all {
                assert_eq!(
                    prec(x, y),
                    to_rational(x) < to_rational(y),
                    "prec vs numeric at {x}, {y}"
                );
            }
        }
    }

    #[test]
    fn trichotomy_exhaustive() {
        let all = enumerate(5);
        for x in &all {
            for y in &all {
                let cases =
                    [prec(x, y), x == y, prec(y, x)].iter().filter(|&&b| b).count();
                assert_eq!(cases, 1, "trichotomy at {x}, {y}");
            }
        }
    }

    #[test]
    fn irreflexive_exhaustive() {
        for x in enumerate(6) {
            assert!(!prec(&x, &x));
        }
    }

    #[test]
    fn transitive_exhaustive_depth3() {
        let all = enumerate(3);
        for x in &all {
            for y in &all {
                if !prec(x, y) {
                    continue;
                }
                for z in &all {
                    if prec(y, z) {
                        assert!(prec(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn density_witness_lies_strictly_between() {
        let all = enumerate(5);
        for x in &all {
            for y in &all {
                if prec(x, y) {
                    let z = density_witness(x, y).unwrap();
                    assert!(prec(x, &z) && prec(&z, y), "witness {z} for {x} ≺ {y}");
                }
            }
        }
        // the canonical example: between 0 and 1/2 sits 1/4 = r(l(c))
        let z = density_witness(&c(), &c().right()).unwrap();
        assert_eq!(z, c().left().right());
    }

    #[test]
    fn density_witness_requires_prec() {
        assert!(density_witness(&c(), &c()).is_err());
    }

    #[test]
    fn endpoints_exhaustive() {
        for x in enumerate(5) {
            let (below, above) = endpoint_witnesses(&x);
            assert!(prec(&below, &x));
            assert!(prec(&x, &above));
        }
        assert_eq!(endpoint_witnesses(&c()), (c().left(), c().right()));
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate(0), vec![c()]);
        assert_eq!(enumerate(1).len(), 3);
        assert_eq!(enumerate(5).len(), 63);
    }

    #[test]
    fn parse_round_trip() {
        for d in enumerate(4) {
            assert_eq!(parse(&d.to_string()).unwrap(), d);
        }
        assert!(parse("l(c").is_err());
        assert!(parse("x").is_err());
        assert!(parse("c c").is_err());
    }
}
