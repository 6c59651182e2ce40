//! The sequential self-exponential tower: `D₀` is the lifted unit set and
//! `D_{n+1} = D_n^{D_n}`, with embedding-projection pairs between
//! consecutive levels and truncated limit elements.
//!
//! Level sizes grow violently (2, 3, 10, 120549, …), so levels are tabulated
//! as posets only up to `tab_limit`, guarded by an element budget. Elements
//! one level above the cutoff are still concrete — a monotone map over the
//! top tabulated level is just a table — and levels beyond that fall back to
//! closures, where equality is only ever checked on samples.
//!
//! A [`TowerElement`] is a π-compatible tuple `(σ₀, …, σ_N)`; the limit
//! itself is never materialized, every operation works on such truncations.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponential::build_exponential;
use crate::finposet::{
    count_monotone_maps, verify_basis, BasisReport, FinPoset, MonotoneMap, Subset,
};
use crate::lifting::LiftedPoset;

/// Default cap on the number of elements a level may have and still be
/// tabulated (the relation table is quadratic in this).
pub const DEFAULT_ELEMENT_BUDGET: usize = 5000;

/// An element of some tower level.
///
/// Which representation applies is a property of the level, not the value:
/// indices for tabulated levels, function tables over the top tabulated
/// level right above the cutoff, closures beyond.
#[derive(Clone)]
pub enum Value {
    Idx(usize),
    Table(Vec<usize>),
    Fun(Arc<dyn Fn(&Value) -> Value + Send + Sync>),
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Idx(i) => write!(f, "Idx({i})"),
            Value::Table(t) => write!(f, "Table({t:?})"),
            Value::Fun(_) => write!(f, "Fun(..)"),
        }
    }
}

impl Value {
    pub fn as_idx(&self) -> Option<usize> {
        match self {
            Value::Idx(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_table(&self) -> Option<&[usize]> {
        match self {
            Value::Table(t) => Some(t),
            _ => None,
        }
    }
}

/// Three-valued comparison outcome for values at closure levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ternary {
    True,
    False,
    Unknown,
}

impl Ternary {
    pub fn and(self, other: Ternary) -> Ternary {
        use Ternary::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, True) => True,
            _ => Unknown,
        }
    }
}

/// Equality verdict for tower values: exact at concrete levels, sampled at
/// closure levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EqVerdict {
    Equal,
    EqualOnSamples,
    Differs,
    Unknown,
}

struct Levels {
    trunc: usize,
    tab_limit: usize,
    posets: Vec<Arc<FinPoset>>,
    /// `tables[n][i]`: the function table of element `i` of level `n` over
    /// level `n − 1` (empty at level 0)
    tables: Vec<Vec<Vec<usize>>>,
    table_index: Vec<HashMap<Vec<usize>, usize>>,
    /// `eps[n][x] = ε_n(x)` for `n + 1 ≤ tab_limit`
    eps: Vec<Vec<usize>>,
    /// `pi[n][y] = π_n(y)` for `n + 1 ≤ tab_limit`
    pi: Vec<Vec<usize>>,
}

/// The tower truncated at level `N`, with levels tabulated up to
/// `tab_limit`.
#[derive(Clone)]
pub struct Tower {
    lv: Arc<Levels>,
}

/// A π-compatible tuple `(σ₀, …, σ_N)`.
#[derive(Debug, Clone)]
pub struct TowerElement {
    comps: Vec<Value>,
}

impl TowerElement {
    pub fn truncation(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn component(&self, n: usize) -> &Value {
        &self.comps[n]
    }

    pub fn components(&self) -> &[Value] {
        &self.comps
    }
}

/// Build the tower truncated at `trunc`, tabulating levels `0..=tab_limit`.
///
/// Tabulating a level requires its element count to stay within `budget`;
/// the count is established by a backtracking count before anything is
/// materialized. `D₃` already has 120549 elements, so `tab_limit ≤ 2` is the
/// realistic regime with the default budget.
pub fn build_tower(trunc: usize, tab_limit: usize, budget: usize) -> Result<Tower> {
    if tab_limit > trunc {
        return Err(Error::LevelOutOfRange {
            level: tab_limit,
            max: trunc,
        });
    }
    let d0 = LiftedPoset::new(vec!["⋆".to_string()]);
    let mut posets: Vec<Arc<FinPoset>> = vec![d0.poset().clone()];
    let mut tables: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    let mut table_index: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new()];
    for n in 1..=tab_limit {
        let prev = posets[n - 1].clone();
        let count = count_monotone_maps(&prev, &prev);
        if count > budget {
            return Err(Error::TabulationBudget {
                level: n,
                required: count,
                budget,
            });
        }
        let exp = build_exponential(&prev, &prev);
        let names: Vec<String> = (0..exp.len()).map(|i| format!("f{n}_{i}")).collect();
        let poset = Arc::new(FinPoset::from_parts(
            names,
            (0..exp.len())
                .flat_map(|i| (0..exp.len()).map(move |j| (i, j)))
                .map(|(i, j)| exp.poset().leq(i, j))
                .collect(),
        ));
        let level_tables: Vec<Vec<usize>> =
            exp.maps().iter().map(|m| m.table().to_vec()).collect();
        let index = level_tables
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        posets.push(poset);
        tables.push(level_tables);
        table_index.push(index);
    }
    // ε_n / π_n between consecutive tabulated levels
    let mut eps: Vec<Vec<usize>> = Vec::new();
    let mut pi: Vec<Vec<usize>> = Vec::new();
    for n in 0..tab_limit {
        let (e, p) = if n == 0 {
            // ε₀ x = the constantly-x map; π₀ f = f(⊥)
            let e = (0..posets[0].len())
                .map(|x| table_index[1][&vec![x; posets[0].len()]])
                .collect();
            let p = tables[1].iter().map(|t| t[0]).collect();
            (e, p)
        } else {
            let e = (0..posets[n].len())
                .map(|f| {
                    let t: Vec<usize> = (0..posets[n].len())
                        .map(|g| eps[n - 1][tables[n][f][pi[n - 1][g]]])
                        .collect();
                    table_index[n + 1][&t]
                })
                .collect();
            let p = (0..posets[n + 1].len())
                .map(|ff| {
                    let t: Vec<usize> = (0..posets[n - 1].len())
                        .map(|x| pi[n - 1][tables[n + 1][ff][eps[n - 1][x]]])
                        .collect();
                    table_index[n][&t]
                })
                .collect();
            (e, p)
        };
        eps.push(e);
        pi.push(p);
    }
    Ok(Tower {
        lv: Arc::new(Levels {
            trunc,
            tab_limit,
            posets,
            tables,
            table_index,
            eps,
            pi,
        }),
    })
}

// Value-level ε/π/application, dispatching on the level's representation.
// Free functions so closures can capture the levels by Arc.

fn v_bot(lv: &Arc<Levels>, n: usize) -> Value {
    let k = lv.tab_limit;
    if n <= k {
        Value::Idx(lv.posets[n].least().expect("tower levels are pointed"))
    } else if n == k + 1 {
        let bot = lv.posets[k].least().unwrap();
        Value::Table(vec![bot; lv.posets[k].len()])
    } else {
        let lv2 = lv.clone();
        Value::Fun(Arc::new(move |_| v_bot(&lv2, n - 1)))
    }
}

/// `f(x)` for `f : D_{n+1}` and `x : D_n`.
fn v_apply(lv: &Arc<Levels>, n: usize, f: &Value, x: &Value) -> Value {
    let k = lv.tab_limit;
    if n + 1 <= k {
        Value::Idx(lv.tables[n + 1][f.as_idx().unwrap()][x.as_idx().unwrap()])
    } else if n + 1 == k + 1 {
        Value::Idx(f.as_table().unwrap()[x.as_idx().unwrap()])
    } else {
        match f {
            Value::Fun(fun) => fun(x),
            _ => unreachable!("closure level value"),
        }
    }
}

/// `ε_n : D_n → D_{n+1}`.
fn v_eps(lv: &Arc<Levels>, n: usize, v: &Value) -> Value {
    let k = lv.tab_limit;
    if n + 1 <= k {
        Value::Idx(lv.eps[n][v.as_idx().unwrap()])
    } else if n == k {
        // lands just above the cutoff: produce the table directly
        let i = v.as_idx().unwrap();
        let size = lv.posets[k].len();
        if n == 0 {
            Value::Table(vec![i; size])
        } else {
            Value::Table(
                (0..size)
                    .map(|g| lv.eps[n - 1][lv.tables[n][i][lv.pi[n - 1][g]]])
                    .collect(),
            )
        }
    } else {
        // (ε_n v)(g) = ε_{n−1}(v(π_{n−1}(g)))
        let lv2 = lv.clone();
        let v = v.clone();
        Value::Fun(Arc::new(move |g| {
            let down = v_pi(&lv2, n - 1, g);
            let through = v_apply(&lv2, n - 1, &v, &down);
            v_eps(&lv2, n - 1, &through)
        }))
    }
}

/// `π_n : D_{n+1} → D_n`.
fn v_pi(lv: &Arc<Levels>, n: usize, v: &Value) -> Value {
    let k = lv.tab_limit;
    if n + 1 <= k {
        Value::Idx(lv.pi[n][v.as_idx().unwrap()])
    } else if n == k {
        let t = v.as_table().unwrap();
        if n == 0 {
            Value::Idx(t[0])
        } else {
            let key: Vec<usize> = (0..lv.posets[n - 1].len())
                .map(|x| lv.pi[n - 1][t[lv.eps[n - 1][x]]])
                .collect();
            Value::Idx(lv.table_index[n][&key])
        }
    } else if n == k + 1 {
        // from the first closure level back down to tables
        let fun = match v {
            Value::Fun(f) => f.clone(),
            _ => unreachable!("closure level value"),
        };
        let lv2 = lv.clone();
        Value::Table(
            (0..lv.posets[k].len())
                .map(|x| {
                    let up = v_eps(&lv2, k, &Value::Idx(x));
                    let through = fun(&up);
                    v_pi(&lv2, k, &through).as_idx().unwrap()
                })
                .collect(),
        )
    } else {
        let fun = match v {
            Value::Fun(f) => f.clone(),
            _ => unreachable!("closure level value"),
        };
        let lv2 = lv.clone();
        Value::Fun(Arc::new(move |x| {
            let up = v_eps(&lv2, n - 1, x);
            v_pi(&lv2, n - 1, &fun(&up))
        }))
    }
}

/// Sample values at level `n`, for probing closure-level claims.
fn v_samples(lv: &Arc<Levels>, n: usize) -> Vec<Value> {
    let k = lv.tab_limit;
    if n <= k {
        (0..lv.posets[n].len()).map(Value::Idx).collect()
    } else {
        let mut out = vec![v_bot(lv, n)];
        for below in v_samples(lv, n - 1) {
            out.push(v_eps(lv, n - 1, &below));
        }
        out
    }
}

fn v_leq(lv: &Arc<Levels>, n: usize, a: &Value, b: &Value) -> Ternary {
    let k = lv.tab_limit;
    if n <= k {
        if lv.posets[n].leq(a.as_idx().unwrap(), b.as_idx().unwrap()) {
            Ternary::True
        } else {
            Ternary::False
        }
    } else if n == k + 1 {
        let (ta, tb) = (a.as_table().unwrap(), b.as_table().unwrap());
        if ta.iter().zip(tb).all(|(&x, &y)| lv.posets[k].leq(x, y)) {
            Ternary::True
        } else {
            Ternary::False
        }
    } else {
        let mut acc = Ternary::Unknown;
        for s in v_samples(lv, n - 1) {
            match v_leq(lv, n - 1, &v_apply(lv, n - 1, a, &s), &v_apply(lv, n - 1, b, &s)) {
                Ternary::False => return Ternary::False,
                _ => acc = Ternary::Unknown,
            }
        }
        acc
    }
}

fn v_eq(lv: &Arc<Levels>, n: usize, a: &Value, b: &Value) -> EqVerdict {
    let k = lv.tab_limit;
    if n <= k {
        if a.as_idx() == b.as_idx() {
            EqVerdict::Equal
        } else {
            EqVerdict::Differs
        }
    } else if n == k + 1 {
        if a.as_table() == b.as_table() {
            EqVerdict::Equal
        } else {
            EqVerdict::Differs
        }
    } else {
        let mut all_equal = true;
        for s in v_samples(lv, n - 1) {
            match v_eq(lv, n - 1, &v_apply(lv, n - 1, a, &s), &v_apply(lv, n - 1, b, &s)) {
                EqVerdict::Differs => return EqVerdict::Differs,
                EqVerdict::Equal | EqVerdict::EqualOnSamples => {}
                EqVerdict::Unknown => all_equal = false,
            }
        }
        if all_equal {
            EqVerdict::EqualOnSamples
        } else {
            EqVerdict::Unknown
        }
    }
}

/// Supremum at level `n`. Directedness is the caller's obligation at
/// closure levels; concrete levels are checked.
fn v_sup(lv: &Arc<Levels>, n: usize, vals: &[Value]) -> Result<Value> {
    let k = lv.tab_limit;
    if vals.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if n <= k {
        let idxs: Vec<usize> = vals.iter().map(|v| v.as_idx().unwrap()).collect();
        let s = Subset::from_indices(lv.posets[n].len(), &idxs);
        lv.posets[n].supremum(&s).map(Value::Idx)
    } else if n == k + 1 {
        let size = lv.posets[k].len();
        let mut table = Vec::with_capacity(size);
        for x in 0..size {
            let at_x: Vec<usize> = vals.iter().map(|v| v.as_table().unwrap()[x]).collect();
            let s = Subset::from_indices(size, &at_x);
            table.push(lv.posets[k].supremum(&s)?);
        }
        Ok(Value::Table(table))
    } else {
        let lv2 = lv.clone();
        let vals: Vec<Value> = vals.to_vec();
        Ok(Value::Fun(Arc::new(move |x| {
            let at_x: Vec<Value> = vals.iter().map(|v| v_apply(&lv2, n - 1, v, x)).collect();
            v_sup(&lv2, n - 1, &at_x).expect("sup of directed family below")
        })))
    }
}

impl Tower {
    pub fn truncation(&self) -> usize {
        self.lv.trunc
    }

    pub fn tab_limit(&self) -> usize {
        self.lv.tab_limit
    }

    /// The tabulated poset at level `n ≤ tab_limit`.
    pub fn level(&self, n: usize) -> Result<&Arc<FinPoset>> {
        self.lv.posets.get(n).ok_or(Error::NotTabulated(n))
    }

    /// Function table of a tabulated element of level `n ≥ 1`.
    pub fn table_of(&self, n: usize, i: usize) -> Result<&[usize]> {
        if n == 0 || n > self.lv.tab_limit {
            return Err(Error::NotTabulated(n));
        }
        Ok(&self.lv.tables[n][i])
    }

    /// Index of a tabulated element given its function table.
    pub fn index_of_table(&self, n: usize, table: &[usize]) -> Option<usize> {
        self.lv.table_index.get(n)?.get(table).copied()
    }

    pub fn bot(&self, n: usize) -> Value {
        v_bot(&self.lv, n)
    }

    pub fn value_leq(&self, n: usize, a: &Value, b: &Value) -> Ternary {
        v_leq(&self.lv, n, a, b)
    }

    pub fn value_eq(&self, n: usize, a: &Value, b: &Value) -> EqVerdict {
        v_eq(&self.lv, n, a, b)
    }

    pub fn apply_value(&self, n: usize, f: &Value, x: &Value) -> Value {
        v_apply(&self.lv, n, f, x)
    }

    pub fn eps_value(&self, n: usize, v: &Value) -> Value {
        v_eps(&self.lv, n, v)
    }

    pub fn pi_value(&self, n: usize, v: &Value) -> Value {
        v_pi(&self.lv, n, v)
    }

    /// `ε_{n,m}` as a single map between tabulated levels.
    pub fn eps_nm(&self, n: usize, m: usize) -> Result<MonotoneMap> {
        if n > m {
            return Err(Error::Precondition(format!("ε_{{n,m}} needs n ≤ m ({n} > {m})")));
        }
        if m > self.lv.tab_limit {
            return Err(Error::NotTabulated(m));
        }
        let dom = self.lv.posets[n].clone();
        let cod = self.lv.posets[m].clone();
        let table = (0..dom.len())
            .map(|x| (n..m).fold(x, |acc, l| self.lv.eps[l][acc]))
            .collect();
        Ok(MonotoneMap::from_parts(dom, cod, table))
    }

    /// `π_{n,m}` as a single map between tabulated levels.
    pub fn pi_nm(&self, n: usize, m: usize) -> Result<MonotoneMap> {
        if n > m {
            return Err(Error::Precondition(format!("π_{{n,m}} needs n ≤ m ({n} > {m})")));
        }
        if m > self.lv.tab_limit {
            return Err(Error::NotTabulated(m));
        }
        let dom = self.lv.posets[m].clone();
        let cod = self.lv.posets[n].clone();
        let table = (0..dom.len())
            .map(|y| (n..m).rev().fold(y, |acc, l| self.lv.pi[l][acc]))
            .collect();
        Ok(MonotoneMap::from_parts(dom, cod, table))
    }

    /// Composite `ε_{n,m}` on values (any representable levels).
    pub fn eps_nm_value(&self, n: usize, m: usize, v: &Value) -> Value {
        (n..m).fold(v.clone(), |acc, l| v_eps(&self.lv, l, &acc))
    }

    /// Composite `π_{n,m}` on values.
    pub fn pi_nm_value(&self, n: usize, m: usize, v: &Value) -> Value {
        (n..m).rev().fold(v.clone(), |acc, l| v_pi(&self.lv, l, &acc))
    }

    /// `ε_{n,∞}` truncated: the compatible tuple with `x` at level `n`.
    pub fn embed(&self, n: usize, x: Value) -> Result<TowerElement> {
        let trunc = self.lv.trunc;
        if n > trunc {
            return Err(Error::LevelOutOfRange {
                level: n,
                max: trunc,
            });
        }
        let mut comps = vec![Value::Idx(0); trunc + 1];
        comps[n] = x;
        for j in (0..n).rev() {
            comps[j] = v_pi(&self.lv, j, &comps[j + 1]);
        }
        for j in n..trunc {
            comps[j + 1] = v_eps(&self.lv, j, &comps[j]);
        }
        Ok(TowerElement { comps })
    }

    /// `π_{n,∞}`: the component at level `n`.
    pub fn project(&self, sigma: &TowerElement, n: usize) -> Result<Value> {
        sigma
            .comps
            .get(n)
            .cloned()
            .ok_or(Error::LevelOutOfRange {
                level: n,
                max: sigma.truncation(),
            })
    }

    /// The least truncated element: `⊥` at every level.
    pub fn bot_element(&self) -> TowerElement {
        TowerElement {
            comps: (0..=self.lv.trunc).map(|n| v_bot(&self.lv, n)).collect(),
        }
    }

    /// Assemble a tuple, verifying π-compatibility at concrete levels.
    pub fn element(&self, comps: Vec<Value>) -> Result<TowerElement> {
        if comps.len() != self.lv.trunc + 1 {
            return Err(Error::TruncationMismatch(
                comps.len().saturating_sub(1),
                self.lv.trunc,
            ));
        }
        for n in 0..self.lv.trunc {
            let down = v_pi(&self.lv, n, &comps[n + 1]);
            if v_eq(&self.lv, n, &down, &comps[n]) == EqVerdict::Differs {
                return Err(Error::Precondition(format!(
                    "π_{n}(σ_{}) ≠ σ_{n}",
                    n + 1
                )));
            }
        }
        Ok(TowerElement { comps })
    }

    /// Componentwise order on truncated elements.
    pub fn element_leq(&self, a: &TowerElement, b: &TowerElement) -> Ternary {
        let mut acc = Ternary::True;
        for n in 0..=self.lv.trunc.min(a.truncation()).min(b.truncation()) {
            acc = acc.and(v_leq(&self.lv, n, &a.comps[n], &b.comps[n]));
            if acc == Ternary::False {
                return acc;
            }
        }
        acc
    }

    pub fn element_eq(&self, a: &TowerElement, b: &TowerElement) -> EqVerdict {
        let mut verdict = EqVerdict::Equal;
        for n in 0..=self.lv.trunc {
            match v_eq(&self.lv, n, &a.comps[n], &b.comps[n]) {
                EqVerdict::Differs => return EqVerdict::Differs,
                EqVerdict::Equal => {}
                EqVerdict::EqualOnSamples => {
                    if verdict == EqVerdict::Equal {
                        verdict = EqVerdict::EqualOnSamples;
                    }
                }
                EqVerdict::Unknown => verdict = EqVerdict::Unknown,
            }
        }
        verdict
    }

    /// Componentwise supremum of a family of truncated elements.
    ///
    /// The family must be directed componentwise, which at concrete levels
    /// is checked outright.
    pub fn tower_sup(&self, family: &[TowerElement]) -> Result<TowerElement> {
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let k = self.lv.tab_limit;
        for n in 0..=self.lv.trunc.min(k) {
            let idxs: Vec<usize> = family
                .iter()
                .map(|e| e.comps[n].as_idx().unwrap())
                .collect();
            let s = Subset::from_indices(self.lv.posets[n].len(), &idxs);
            if !self.lv.posets[n].is_directed(&s) {
                return Err(Error::NotDirected);
            }
        }
        let comps = (0..=self.lv.trunc)
            .map(|n| {
                let at_n: Vec<Value> = family.iter().map(|e| e.comps[n].clone()).collect();
                v_sup(&self.lv, n, &at_n)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TowerElement { comps })
    }

    /// Read a level element as a function on truncated elements:
    /// `f : D_m` (m ≥ 1) acts by `σ ↦ ε_{m−1,∞}(f(σ_{m−1}))`.
    pub fn eps_prime(
        &self,
        m: usize,
        f: &Value,
    ) -> Result<impl Fn(&TowerElement) -> TowerElement + 'static> {
        if m == 0 {
            return Err(Error::TruncationTooSmall);
        }
        if m > self.lv.trunc {
            return Err(Error::LevelOutOfRange {
                level: m,
                max: self.lv.trunc,
            });
        }
        let f = f.clone();
        let tower = self.clone();
        Ok(move |sigma: &TowerElement| {
            let arg = sigma.comps[m - 1].clone();
            let out = v_apply(&tower.lv, m - 1, &f, &arg);
            tower.embed(m - 1, out).expect("level in range")
        })
    }

    /// Tabulate a function on truncated elements back into level `m ≥ 1`:
    /// the table `x ↦ (F(ε_{m−1,∞}(x)))_{m−1}` over `D_{m−1}`.
    pub fn pi_prime<F>(&self, m: usize, f: F) -> Result<Value>
    where
        F: Fn(&TowerElement) -> TowerElement,
    {
        if m == 0 {
            return Err(Error::TruncationTooSmall);
        }
        let k = self.lv.tab_limit;
        if m > k + 1 {
            return Err(Error::NotTabulated(m));
        }
        let below = &self.lv.posets[m - 1];
        let mut table = Vec::with_capacity(below.len());
        for x in 0..below.len() {
            let embedded = self.embed(m - 1, Value::Idx(x))?;
            let image = f(&embedded);
            table.push(image.comps[m - 1].as_idx().unwrap());
        }
        for x in 0..below.len() {
            for y in 0..below.len() {
                if below.leq(x, y) && !below.leq(table[x], table[y]) {
                    return Err(Error::MonotonicityViolation(format!(
                        "{} ⊑ {} but images disagree at level {m}",
                        below.name(x),
                        below.name(y)
                    )));
                }
            }
        }
        if m <= k {
            Ok(Value::Idx(self.lv.table_index[m][&table]))
        } else {
            Ok(Value::Table(table))
        }
    }

    /// The step function `(a ⇒ b) : D_{m+1}` over basis (element) indices
    /// `a, b` of level `m`: sends `x` to `b` when `a ⊑ x` and to `⊥`
    /// otherwise.
    pub fn step_function(&self, m: usize, a: usize, b: usize) -> Result<Value> {
        let k = self.lv.tab_limit;
        if m > k {
            return Err(Error::NotTabulated(m));
        }
        let p = &self.lv.posets[m];
        if a >= p.len() || b >= p.len() {
            return Err(Error::IndexOutOfRange {
                index: a.max(b),
                size: p.len(),
            });
        }
        let bot = p.least().unwrap();
        let table: Vec<usize> = (0..p.len())
            .map(|x| if p.leq(a, x) { b } else { bot })
            .collect();
        if m + 1 <= k {
            Ok(Value::Idx(self.lv.table_index[m + 1][&table]))
        } else {
            Ok(Value::Table(table))
        }
    }

    /// The compact basis of level `n ≥ 1` generated by step functions:
    /// all joins of finite sets of step functions over level `n − 1`,
    /// together with the checks that make it a basis.
    pub fn step_basis(&self, n: usize) -> Result<StepBasisReport> {
        if n == 0 || n > self.lv.tab_limit {
            return Err(Error::NotTabulated(n));
        }
        let p = self.lv.posets[n].clone();
        let below = &self.lv.posets[n - 1];
        let mut step_functions = Vec::new();
        for a in 0..below.len() {
            for b in 0..below.len() {
                let idx = self.step_function(n - 1, a, b)?.as_idx().unwrap();
                step_functions.push((a, b, idx));
            }
        }
        // close the step functions under all existing finite joins; in
        // these levels every finite join exists, so a missing one is a
        // hard error rather than a skip
        let bot = p.least().unwrap();
        let mut basis: Vec<usize> = vec![bot];
        for &(_, _, s) in &step_functions {
            if !basis.contains(&s) {
                basis.push(s);
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            let snapshot = basis.clone();
            for &x in &snapshot {
                for &y in &snapshot {
                    let join = p
                        .supremum(&Subset::from_indices(p.len(), &[x, y]))
                        .map_err(|_| {
                            Error::Precondition(format!(
                                "level {n} lost a binary join of basis elements"
                            ))
                        })?;
                    if !basis.contains(&join) {
                        basis.push(join);
                        changed = true;
                    }
                }
            }
        }
        basis.sort_unstable();
        // every element is the join of the step functions below it
        let mut join_failures = Vec::new();
        for fidx in 0..p.len() {
            let below_f: Vec<usize> = step_functions
                .iter()
                .map(|&(_, _, s)| s)
                .filter(|&s| p.leq(s, fidx))
                .collect();
            let join = p.supremum(&Subset::from_indices(p.len(), &below_f));
            if join != Ok(fidx) {
                join_failures.push(fidx);
            }
        }
        let beta = basis.clone();
        let approx: Vec<Vec<usize>> = (0..p.len())
            .map(|x| {
                (0..beta.len())
                    .filter(|&bi| p.leq(beta[bi], x))
                    .collect()
            })
            .collect();
        let basis_report = verify_basis(&p, &beta, &approx);
        Ok(StepBasisReport {
            level: n,
            step_functions,
            basis,
            join_failures,
            basis_report,
        })
    }

    /// The truncated tower as a single poset: π-compatible tuples under the
    /// componentwise order. Requires the truncation to be tabulated; the
    /// tuples are in bijection with the top level.
    pub fn truncation_poset(&self) -> Result<(Arc<FinPoset>, Vec<TowerElement>)> {
        let n = self.lv.trunc;
        if n > self.lv.tab_limit {
            return Err(Error::NotTabulated(n));
        }
        let top = &self.lv.posets[n];
        let elements: Vec<TowerElement> = (0..top.len())
            .map(|i| self.embed(n, Value::Idx(i)).unwrap())
            .collect();
        let names = (0..top.len()).map(|i| format!("σ{i}")).collect();
        let m = top.len();
        let mut leq = vec![false; m * m];
        for i in 0..m {
            for j in 0..m {
                leq[i * m + j] =
                    self.element_leq(&elements[i], &elements[j]) == Ternary::True;
            }
        }
        Ok((Arc::new(FinPoset::from_parts(names, leq)), elements))
    }

    /// Human-readable label for a value at a level: element names at
    /// tabulated levels, the table itself just above, a placeholder beyond.
    pub fn value_label(&self, n: usize, v: &Value) -> String {
        match v {
            Value::Idx(i) => self.lv.posets[n].name(*i).to_string(),
            Value::Table(t) => format!(
                "t[{}]",
                t.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            Value::Fun(_) => "⟨closure⟩".to_string(),
        }
    }

    /// Structured dump of the tabulated tower.
    pub fn to_json(&self) -> TowerJson {
        let lv = &self.lv;
        TowerJson {
            truncation: lv.trunc,
            tab_limit: lv.tab_limit,
            levels: (0..=lv.tab_limit)
                .map(|n| LevelJson {
                    level: n,
                    elements: lv.posets[n].names().to_vec(),
                    leq: (0..lv.posets[n].len())
                        .map(|x| {
                            (0..lv.posets[n].len()).map(|y| lv.posets[n].leq(x, y)).collect()
                        })
                        .collect(),
                    tables: lv.tables[n].clone(),
                })
                .collect(),
            eps: lv.eps.clone(),
            pi: lv.pi.clone(),
        }
    }

    /// Check the embedding-projection laws and composite functoriality over
    /// all tabulated levels.
    pub fn law_report(&self) -> LawReport {
        let lv = &self.lv;
        let k = lv.tab_limit;
        let mut sections = Vec::new();
        for n in 0..k {
            let size = lv.posets[n].len();
            let retraction = (0..size).all(|x| lv.pi[n][lv.eps[n][x]] == x);
            let deflation = (0..lv.posets[n + 1].len())
                .all(|y| lv.posets[n + 1].leq(lv.eps[n][lv.pi[n][y]], y));
            let strict = lv.pi[n][lv.posets[n + 1].least().unwrap()]
                == lv.posets[n].least().unwrap();
            sections.push(LawSection {
                law: format!("π_{n} ∘ ε_{n} = id"),
                passed: retraction,
            });
            sections.push(LawSection {
                law: format!("ε_{n} ∘ π_{n} deflationary"),
                passed: deflation,
            });
            sections.push(LawSection {
                law: format!("π_{n} strict"),
                passed: strict,
            });
        }
        // functoriality of the composites
        let mut functorial = true;
        for a in 0..=k {
            for b in a..=k {
                for c in b..=k {
                    let e_ab = self.eps_nm(a, b).unwrap();
                    let e_bc = self.eps_nm(b, c).unwrap();
                    let e_ac = self.eps_nm(a, c).unwrap();
                    if e_ab.then(&e_bc).unwrap() != e_ac {
                        functorial = false;
                    }
                    let p_bc = self.pi_nm(b, c).unwrap();
                    let p_ab = self.pi_nm(a, b).unwrap();
                    let p_ac = self.pi_nm(a, c).unwrap();
                    if p_bc.then(&p_ab).unwrap() != p_ac {
                        functorial = false;
                    }
                }
            }
        }
        sections.push(LawSection {
            law: "ε/π composites functorial".into(),
            passed: functorial,
        });
        LawReport { sections }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelJson {
    pub level: usize,
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    /// for levels ≥ 1: the function table of each element over the level below
    pub tables: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TowerJson {
    pub truncation: usize,
    pub tab_limit: usize,
    pub levels: Vec<LevelJson>,
    pub eps: Vec<Vec<usize>>,
    pub pi: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LawSection {
    pub law: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    pub sections: Vec<LawSection>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.passed)
    }
}

/// Step-basis data for a tabulated level.
#[derive(Debug, Clone, Serialize)]
pub struct StepBasisReport {
    pub level: usize,
    /// `(a, b, index of (a ⇒ b))` for all pairs over the level below
    pub step_functions: Vec<(usize, usize, usize)>,
    /// all joins of step functions, sorted
    pub basis: Vec<usize>,
    /// elements that fail to be the join of the step functions below them
    pub join_failures: Vec<usize>,
    pub basis_report: BasisReport,
}

impl StepBasisReport {
    pub fn passed(&self) -> bool {
        self.join_failures.is_empty() && self.basis_report.passed()
    }
}
