//! Building processes whose Solomonoff predictor matches a given predictor,
//! by allocating dyadic intervals of inputs.
//!
//! A string `x` stands for the interval of reals whose binary expansion
//! starts with `x`. Every input assigned to `y` lies strictly inside an
//! input already assigned to the parent of `y`, in space nobody else uses.

use std::collections::{BTreeMap, BTreeSet};

use super::{MonotoneProcess, ProcessPair, ProcessTable};
use crate::bits::BitStr;
use crate::error::{Error, Result};
use crate::predictor::{exact_value, require_distribution, StagedPredictor};
use crate::ratio::{Dyadic, Ratio};

/// Free blocks, kept in interval order.
#[derive(Debug, Default)]
struct Pool(BTreeSet<BitStr>);

impl Pool {
    /// Removes blocks of total length `2^-i`: the leftmost free block of at
    /// least that size, cut down to its leftmost aligned piece, or failing
    /// that, smaller blocks taken largest first.
    fn take(&mut self, i: usize) -> Option<Vec<BitStr>> {
        if let Some(b) = self.0.iter().find(|b| b.len() <= i).cloned() {
            self.0.remove(&b);
            let mut piece = b;
            while piece.len() < i {
                self.0.insert(piece.child(1));
                piece.push(0);
            }
            return Some(vec![piece]);
        }
        let mut by_size: Vec<BitStr> = self.0.iter().cloned().collect();
        by_size.sort_by_key(|b| b.len());
        let mut need = Ratio::pow2_neg(i as u64);
        let mut out = Vec::new();
        for b in by_size {
            if need.is_zero() {
                break;
            }
            let size = Ratio::pow2_neg(b.len() as u64);
            if size <= need {
                need = need - size;
                out.push(b);
            }
        }
        if !need.is_zero() {
            return None;
        }
        for b in &out {
            self.0.remove(b);
        }
        Some(out)
    }
}

/// Incremental state: the table so far, the σ-mass given to each output,
/// and the free space under each output's inputs.
#[derive(Debug, Default)]
struct Allocator {
    table: ProcessTable,
    mass: BTreeMap<BitStr, Ratio>,
    free: BTreeMap<BitStr, Pool>,
    root: Pool,
}

impl Allocator {
    fn new() -> Self {
        Self {
            root: Pool(BTreeSet::from([BitStr::empty()])),
            ..Self::default()
        }
    }

    fn mass(&self, y: &BitStr) -> Ratio {
        self.mass.get(y).cloned().unwrap_or_else(Ratio::zero)
    }

    /// Adds inputs for `y` until `p_f(y) = target`, returning them.
    fn raise(&mut self, y: &BitStr, target: &Ratio) -> Result<Vec<ProcessPair>> {
        let delta = target
            .checked_sub(&self.mass(y))
            .ok_or_else(|| Error::Allocation {
                target: y.clone(),
                reason: format!("target {target} is below the mass already allocated"),
            })?;
        let digits = Dyadic::try_from(&delta)?.set_digits();
        let mut added = Vec::new();
        for i in digits {
            let pool = match y.parent() {
                Some(parent) => self.free.entry(parent).or_default(),
                None => &mut self.root,
            };
            let blocks = pool.take(i as usize).ok_or_else(|| Error::Allocation {
                target: y.clone(),
                reason: format!("no free space of size 2^-{i} under the parent's inputs"),
            })?;
            for x in blocks {
                self.table.insert(x.clone(), y.clone())?;
                let own = self.free.entry(y.clone()).or_default();
                own.0.insert(x.child(0));
                own.0.insert(x.child(1));
                added.push((x, y.clone()));
            }
        }
        self.mass.insert(y.clone(), target.clone());
        Ok(added)
    }
}

fn dyadic_value(v: Ratio) -> Result<Ratio> {
    if v.is_dyadic() {
        Ok(v)
    } else {
        Err(Error::NotDyadic { value: v })
    }
}

/// The pairs added at each stage `n = 0..=stages` while raising `p_f(y)` to
/// `h(y, n)` for every `|y| ≤ depth`, in shortlex order of `y`.
///
/// `h` must be stage-monotone, stage-wise subadditive and dyadic-valued.
pub fn process_stages(
    h: &dyn StagedPredictor,
    stages: u64,
    depth: usize,
) -> Result<Vec<Vec<ProcessPair>>> {
    let mut alloc = Allocator::new();
    let mut out = Vec::new();
    for n in 0..=stages {
        let mut added = Vec::new();
        for y in BitStr::all_up_to(depth) {
            let target = dyadic_value(h.approx(&y, n))?;
            if target < alloc.mass(&y) {
                return Err(Error::DecreasingStage {
                    at: y,
                    stage: n.saturating_sub(1),
                    next: n,
                });
            }
            added.extend(alloc.raise(&y, &target)?);
        }
        out.push(added);
    }
    Ok(out)
}

/// A process with `p_f(y) = h(y, stages)` for every `|y| ≤ depth`, closed
/// under the sibling rule of [`close_process`].
pub fn predictor_to_process(
    h: &dyn StagedPredictor,
    stages: u64,
    depth: usize,
) -> Result<MonotoneProcess> {
    predictor_to_process_with(h, stages, depth, true)
}

pub fn predictor_to_process_with(
    h: &dyn StagedPredictor,
    stages: u64,
    depth: usize,
    closure: bool,
) -> Result<MonotoneProcess> {
    let pairs = process_stages(h, stages, depth)?.into_iter().flatten();
    finish(ProcessTable::from_pairs(pairs)?, closure, false)
}

fn finish(table: ProcessTable, closure: bool, endless: bool) -> Result<MonotoneProcess> {
    let table = if closure {
        close_process(table)?
    } else {
        table
    };
    let f = MonotoneProcess::from(table);
    Ok(if endless { f.declare_endless() } else { f })
}

fn require_dyadic_distribution(
    p: &dyn StagedPredictor,
    depth: usize,
    op: &'static str,
) -> Result<Vec<(BitStr, Ratio)>> {
    require_distribution(p, op)?;
    BitStr::all_up_to(depth)
        .map(|y| {
            let v = dyadic_value(exact_value(p, &y)?)?;
            Ok((y, v))
        })
        .collect()
}

/// An endless process with `p_f(y) = p(y)` for `|y| ≤ depth`.
pub fn distribution_to_endless_process(
    p: &dyn StagedPredictor,
    depth: usize,
) -> Result<MonotoneProcess> {
    distribution_to_endless_process_with(p, depth, true)
}

pub fn distribution_to_endless_process_with(
    p: &dyn StagedPredictor,
    depth: usize,
    closure: bool,
) -> Result<MonotoneProcess> {
    let values = require_dyadic_distribution(p, depth, "distribution_to_endless_process")?;
    let mut alloc = Allocator::new();
    for (y, v) in &values {
        alloc.raise(y, v)?;
    }
    finish(alloc.table, closure, true)
}

/// Like [`distribution_to_endless_process`], but each set digit `2^-i` of
/// `p(y)` gets one aligned block of length `i` inside the blocks of the
/// parent, so each digit has exactly one reduced encoding.
///
/// The digits of both children are placed largest first (the 0-child first
/// on ties), each into the leftmost free aligned position.
pub fn digit_aligned_process(p: &dyn StagedPredictor, depth: usize) -> Result<MonotoneProcess> {
    digit_aligned_process_with(p, depth, true)
}

pub fn digit_aligned_process_with(
    p: &dyn StagedPredictor,
    depth: usize,
    closure: bool,
) -> Result<MonotoneProcess> {
    let values: BTreeMap<BitStr, Ratio> =
        require_dyadic_distribution(p, depth, "digit_aligned_process")?
            .into_iter()
            .collect();
    let root = BitStr::empty();
    let mut table = ProcessTable::default();
    let mut blocks: BTreeMap<BitStr, Vec<BitStr>> = BTreeMap::new();
    table.insert(root.clone(), root.clone())?;
    blocks.insert(root.clone(), vec![root.clone()]);

    for y in BitStr::all_up_to(depth).filter(|y| y.len() < depth) {
        let mut pool = Pool(blocks.get(&y).into_iter().flatten().cloned().collect());
        let mut items: Vec<(u64, u8)> = Vec::new();
        for u in 0..2u8 {
            let digits = Dyadic::try_from(&values[&y.child(u)])?.set_digits();
            items.extend(digits.into_iter().map(|i| (i, u)));
        }
        items.sort();
        let parent_inputs: Vec<BitStr> = table
            .iter()
            .filter(|(_, out)| **out == y)
            .map(|(x, _)| x.clone())
            .collect();
        for (i, u) in items {
            let child = y.child(u);
            let c = match pool.take(i as usize).as_deref() {
                Some([c]) => c.clone(),
                _ => {
                    return Err(Error::Allocation {
                        target: child,
                        reason: format!("no aligned block of size 2^-{i} left"),
                    })
                }
            };
            emit_block(&mut table, &parent_inputs, &c, &child)?;
            blocks.entry(child).or_default().push(c);
        }
    }
    finish(table, closure, true)
}

/// Maps the block `c` to `y`, splitting it until every piece lies strictly
/// below one of the parent's inputs.
fn emit_block(
    table: &mut ProcessTable,
    parent_inputs: &[BitStr],
    c: &BitStr,
    y: &BitStr,
) -> Result<()> {
    if parent_inputs.iter().any(|d| d.is_proper_prefix_of(c)) {
        table.insert(c.clone(), y.clone())?;
        return Ok(());
    }
    if !parent_inputs.iter().any(|d| c.is_prefix_of(d)) {
        return Err(Error::Allocation {
            target: y.clone(),
            reason: format!("block {c} lies outside the parent's inputs"),
        });
    }
    emit_block(table, parent_inputs, &c.child(0), y)?;
    emit_block(table, parent_inputs, &c.child(1), y)
}

/// Adds `x ↦ y` whenever `x0 ↦ yu` and `x1 ↦ yv` are present for digits
/// `u, v`, repeating until nothing changes. Solomonoff probabilities are
/// unaffected.
pub fn close_process(mut table: ProcessTable) -> Result<ProcessTable> {
    loop {
        let mut new = Vec::new();
        for (x0, out0) in table.iter() {
            if x0.last() != Some(0) {
                continue;
            }
            let x = x0.parent().expect("nonempty");
            if table.get(&x).is_some() {
                continue;
            }
            let Some(out1) = table.get(&x.child(1)) else {
                continue;
            };
            match (out0.parent(), out1.parent()) {
                (Some(a), Some(b)) if a == b => new.push((x, a)),
                _ => {}
            }
        }
        if new.is_empty() {
            return Ok(table);
        }
        for (x, y) in new {
            table.insert(x, y)?;
        }
    }
}
