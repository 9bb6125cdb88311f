//! Monotone processes and the predictors they induce.
//!
//! A process is a partial map `f: X* → X*` with `f(x) ⊑ f(xy)` whenever both
//! sides are defined. `x` encodes `y` when `f(x) ⊒ y` and no proper prefix of
//! `x` maps into `yX*`. The Solomonoff predictor is `p_f(y) = σ{x : x encodes y}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::bits::BitStr;
use crate::error::{Error, Result};
use crate::prefix::{sigma_of, PrefixFreeSet};
use crate::ratio::{Dyadic, Ratio};

mod build;

pub use build::{
    close_process, digit_aligned_process, digit_aligned_process_with,
    distribution_to_endless_process, distribution_to_endless_process_with, predictor_to_process,
    predictor_to_process_with, process_stages,
};

/// `(input, output)`.
pub type ProcessPair = (BitStr, BitStr);

/// One enumeration step; a step may produce nothing.
pub type ProcessEnumerator = Box<dyn Iterator<Item = Option<ProcessPair>> + Send>;

type Factory = Arc<dyn Fn() -> ProcessEnumerator + Send + Sync>;

/// The first pair `(x, x′)` with `x ⊏ x′` both listed and `f(x) ⋢ f(x′)`,
/// or `None` if the table is monotone.
pub fn check_monotone(table: &BTreeMap<BitStr, BitStr>) -> Option<(BitStr, BitStr)> {
    for (x, out) in table {
        for p in x.prefixes().take(x.len()) {
            if let Some(pout) = table.get(&p) {
                if !pout.is_prefix_of(out) {
                    return Some((p, x.clone()));
                }
            }
        }
    }
    None
}

/// A finite, functional, monotone graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProcessTable {
    map: BTreeMap<BitStr, BitStr>,
}

impl ProcessTable {
    /// Rejects repeated inputs, even with equal outputs.
    pub fn from_pairs<I: IntoIterator<Item = ProcessPair>>(pairs: I) -> Result<Self> {
        let mut t = Self::default();
        for (x, y) in pairs {
            if t.map.contains_key(&x) {
                return Err(Error::DuplicateInput(x));
            }
            t.insert(x, y)?;
        }
        Ok(t)
    }

    /// Adds `x ↦ y`. Re-adding an identical pair is a no-op and returns
    /// `false`.
    pub fn insert(&mut self, x: BitStr, y: BitStr) -> Result<bool> {
        if let Some(old) = self.map.get(&x) {
            if *old == y {
                return Ok(false);
            }
            return Err(Error::DuplicateInput(x));
        }
        for p in x.prefixes().take(x.len()) {
            if let Some(pout) = self.map.get(&p) {
                if !pout.is_prefix_of(&y) {
                    return Err(not_monotone(&p, pout, &x, &y));
                }
            }
        }
        for (ext, eout) in self.extensions(&x) {
            if !y.is_prefix_of(eout) {
                return Err(not_monotone(&x, &y, ext, eout));
            }
        }
        self.map.insert(x, y);
        Ok(true)
    }

    pub fn get(&self, x: &BitStr) -> Option<&BitStr> {
        self.map.get(x)
    }

    pub fn map(&self) -> &BTreeMap<BitStr, BitStr> {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitStr, &BitStr)> {
        self.map.iter()
    }

    /// Longest listed input.
    pub fn max_input_len(&self) -> usize {
        self.map.keys().map(BitStr::len).max().unwrap_or(0)
    }

    /// Listed inputs extending `x`, `x` included.
    fn extensions<'a>(&'a self, x: &'a BitStr) -> impl Iterator<Item = (&'a BitStr, &'a BitStr)> {
        self.map
            .range(x.clone()..)
            .take_while(move |(k, _)| x.is_prefix_of(k))
    }

    fn has_domain_below(&self, x: &BitStr) -> bool {
        self.extensions(x).next().is_some()
    }

    /// The minimal listed inputs satisfying `keep`.
    fn minimal_where<F: Fn(&BitStr) -> bool>(&self, keep: F) -> Vec<&BitStr> {
        let mut out: Vec<&BitStr> = Vec::new();
        for (x, y) in &self.map {
            if !keep(y) {
                continue;
            }
            // In lexicographic order a prefix comes before its extensions,
            // and the last kept element is the only candidate prefix.
            if out.last().is_some_and(|m| m.is_prefix_of(x)) {
                continue;
            }
            out.push(x);
        }
        out
    }

    pub fn encodings(&self, y: &BitStr) -> EncodingSet {
        let members = self.minimal_where(|out| y.is_prefix_of(out));
        EncodingSet {
            target: y.clone(),
            members: PrefixFreeSet::new(members.into_iter().cloned())
                .expect("minimal elements are prefix-free"),
        }
    }

    /// `p_f(y)`.
    pub fn solomonoff(&self, y: &BitStr) -> Ratio {
        sigma_of(self.minimal_where(|out| y.is_prefix_of(out)).into_iter())
    }

    /// `Σ_{|y|=n} p_f(y)`, the σ-mass of minimal inputs with outputs of
    /// length at least `n`.
    pub fn level_mass(&self, n: usize) -> Ratio {
        sigma_of(self.minimal_where(|out| out.len() >= n).into_iter())
    }

    /// Whether some complete prefix-free `S` with `|xs| ≤ |x| + search_depth`
    /// has every `f(xs)` defined and extending `y`, and no proper prefix of
    /// `x` has such a set within the same absolute depth.
    pub fn is_reduced_encoding(&self, x: &BitStr, y: &BitStr, search_depth: usize) -> bool {
        let horizon = x.len() + search_depth;
        self.covers(x, y, horizon)
            && !x
                .prefixes()
                .take(x.len())
                .any(|p| self.covers(&p, y, horizon))
    }

    /// Every reduced encoding of `y` within `horizon`, found by descending
    /// from the root until a covered node is met.
    pub fn reduced_encodings(&self, y: &BitStr, horizon: usize) -> Vec<BitStr> {
        let mut out = Vec::new();
        let mut stack = vec![BitStr::empty()];
        while let Some(z) = stack.pop() {
            if self.covers(&z, y, horizon) {
                out.push(z);
            } else if z.len() < horizon && self.has_domain_below(&z) {
                stack.push(z.child(1));
                stack.push(z.child(0));
            }
        }
        out
    }

    /// Some complete prefix-free set below `z`, within `horizon`, maps into
    /// `yX*`.
    fn covers(&self, z: &BitStr, y: &BitStr, horizon: usize) -> bool {
        if let Some(out) = self.map.get(z) {
            if y.is_prefix_of(out) {
                return true;
            }
        }
        z.len() < horizon
            && self.has_domain_below(z)
            && self.covers(&z.child(0), y, horizon)
            && self.covers(&z.child(1), y, horizon)
    }

    /// `min{|x| : |f(x)| ≥ n}` for `n = 0..=max_n`.
    pub fn min_input_lengths(&self, max_n: usize) -> Vec<Option<usize>> {
        let mut best: Vec<Option<usize>> = vec![None; max_n + 1];
        for (x, y) in &self.map {
            for slot in best.iter_mut().take(y.len().min(max_n) + 1) {
                if slot.is_none_or(|c| x.len() < c) {
                    *slot = Some(x.len());
                }
            }
        }
        best
    }

    /// Parses `input<TAB>output` lines; `.` is the empty string and lines
    /// starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut t = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim_end_matches('\r');
            if trimmed.trim().is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let parse_err = |column: usize, message: String| Error::Parse {
                line,
                column,
                message,
            };
            let (input, output) = trimmed
                .split_once('\t')
                .ok_or_else(|| parse_err(1, "expected input<TAB>output".into()))?;
            let x: BitStr = input
                .trim()
                .parse()
                .map_err(|e| parse_err(1, format!("bad input: {e}")))?;
            let y: BitStr = output
                .trim()
                .parse()
                .map_err(|e| parse_err(input.len() + 2, format!("bad output: {e}")))?;
            if t.map.contains_key(&x) {
                return Err(parse_err(1, format!("duplicate input {x}")));
            }
            t.insert(x, y).map_err(|e| parse_err(1, e.to_string()))?;
        }
        Ok(t)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (x, y) in &self.map {
            s.push_str(&format!("{x}\t{y}\n"));
        }
        s
    }
}

fn not_monotone(
    shorter: &BitStr,
    out_shorter: &BitStr,
    longer: &BitStr,
    out_longer: &BitStr,
) -> Error {
    Error::NotMonotone {
        shorter: shorter.clone(),
        out_shorter: out_shorter.clone(),
        longer: longer.clone(),
        out_longer: out_longer.clone(),
    }
}

/// The minimal inputs whose outputs extend `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingSet {
    pub target: BitStr,
    pub members: PrefixFreeSet,
}

impl EncodingSet {
    pub fn sigma(&self) -> Ratio {
        self.members.sigma()
    }
}

/// A process given by a listed table plus an optional enumerator of further
/// pairs.
#[derive(Clone)]
pub struct MonotoneProcess {
    table: ProcessTable,
    source: Option<Factory>,
    endless: bool,
}

impl fmt::Debug for MonotoneProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneProcess")
            .field("pairs", &self.table.len())
            .field("enumerated", &self.source.is_some())
            .field("endless", &self.endless)
            .finish()
    }
}

impl From<ProcessTable> for MonotoneProcess {
    fn from(table: ProcessTable) -> Self {
        Self {
            table,
            source: None,
            endless: false,
        }
    }
}

impl MonotoneProcess {
    pub fn from_pairs<I: IntoIterator<Item = ProcessPair>>(pairs: I) -> Result<Self> {
        Ok(ProcessTable::from_pairs(pairs)?.into())
    }

    /// `factory` must start a fresh enumeration on every call.
    pub fn with_enumerator<F>(table: ProcessTable, factory: F) -> Self
    where
        F: Fn() -> ProcessEnumerator + Send + Sync + 'static,
    {
        Self {
            table,
            source: Some(Arc::new(factory)),
            endless: false,
        }
    }

    pub fn declare_endless(mut self) -> Self {
        self.endless = true;
        self
    }

    pub fn is_endless(&self) -> bool {
        self.endless
    }

    /// `x ↦ x` on every `x` with `|x| ≤ depth`.
    pub fn identity(depth: usize) -> Self {
        Self::from_pairs(BitStr::all_up_to(depth).map(|x| (x.clone(), x)))
            .expect("identity is monotone")
    }

    /// `x ↦ x` for all `x`, enumerated in shortlex order.
    pub fn identity_enumerated() -> Self {
        Self::with_enumerator(ProcessTable::default(), || {
            Box::new(
                (0usize..)
                    .flat_map(BitStr::all_of_len)
                    .map(|x| Some((x.clone(), x))),
            )
        })
        .declare_endless()
    }

    /// `x ↦ Λ` for all `x`, enumerated in shortlex order.
    pub fn constant_empty() -> Self {
        Self::with_enumerator(ProcessTable::default(), || {
            Box::new(
                (0usize..)
                    .flat_map(BitStr::all_of_len)
                    .map(|x| Some((x, BitStr::empty()))),
            )
        })
    }

    pub fn table(&self) -> &ProcessTable {
        &self.table
    }

    pub fn enumerate(&self) -> Option<ProcessEnumerator> {
        self.source.as_ref().map(|f| f())
    }

    /// The listed table plus whatever `budget` enumeration steps add.
    pub fn snapshot(&self, budget: u64) -> Result<ProcessTable> {
        let mut t = self.table.clone();
        if let Some(steps) = self.enumerate() {
            for (x, y) in steps.take(budget as usize).flatten() {
                t.insert(x, y)?;
            }
        }
        Ok(t)
    }
}

pub fn encodings(f: &MonotoneProcess, y: &BitStr, budget: u64) -> Result<EncodingSet> {
    Ok(f.snapshot(budget)?.encodings(y))
}

/// A lower bound on `p_f(y)` that is nondecreasing in `budget`.
pub fn solomonoff_eval(f: &MonotoneProcess, y: &BitStr, budget: u64) -> Result<Ratio> {
    Ok(f.snapshot(budget)?.solomonoff(y))
}

/// Uses only the listed table of `f`.
pub fn is_reduced_encoding(
    f: &MonotoneProcess,
    x: &BitStr,
    y: &BitStr,
    search_depth: usize,
) -> bool {
    f.table.is_reduced_encoding(x, y, search_depth)
}

/// Enumerates `f` until the outputs of length `|y|` carry σ-mass 1, then
/// returns `p_f(y)`.
pub fn endless_process_to_distribution(
    f: &MonotoneProcess,
    y: &BitStr,
    budget_cap: u64,
) -> Result<Dyadic> {
    if !f.is_endless() {
        return Err(Error::NotEndless);
    }
    let mut t = f.table.clone();
    let done = |t: &ProcessTable| t.level_mass(y.len()).is_one();
    if !done(&t) {
        let mut steps = f
            .enumerate()
            .into_iter()
            .flatten()
            .take(budget_cap as usize);
        loop {
            let Some(step) = steps.next() else {
                return Err(Error::BudgetExceeded {
                    what: "endless_process_to_distribution",
                    limit: budget_cap,
                });
            };
            if let Some((x, out)) = step {
                if t.insert(x, out)? && done(&t) {
                    break;
                }
            }
        }
    }
    Dyadic::try_from(&t.solomonoff(y))
}
