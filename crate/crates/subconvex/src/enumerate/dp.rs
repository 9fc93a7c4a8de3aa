//! Column-state dynamic program for level-m column-subconvex counting.
//!
//! A left factor of a level-m polyomino is built column by column. All a
//! future column can see of the figure is the shape of the current last
//! column (one run, or two runs separated by a gap of at most m cells) and
//! whether the figure is currently connected or still split into the two
//! components hanging off the holed last column. Every component must own a
//! cell of the last column, otherwise no later column can ever reach it, so
//! this state is complete and the transfer is exact.

use num::bigint::BigUint;

use super::CoefficientTable;
use crate::{Error, Result};

/// Last-column shape: `upper = 0, gap = 0` encodes a single run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Shape {
    lower: u32,
    gap: u32,
    upper: u32,
}

impl Shape {
    fn cells(&self) -> u32 {
        self.lower + self.upper
    }

    fn height(&self) -> i64 {
        (self.lower + self.gap + self.upper) as i64
    }

    fn two_runs(&self) -> bool {
        self.upper > 0
    }
}

/// Row interval [start, end) of a run, with old-column contact test: a new
/// cell at row y touches old rows y and y+1.
fn contacts(new: (i64, i64), old: (i64, i64)) -> bool {
    new.0.max(old.0) < (new.1 + 1).min(old.1)
}

struct Engine {
    max_area: usize,
    shapes: Vec<Shape>,
    /// Shape indices grouped by cell count.
    by_cells: Vec<Vec<usize>>,
    /// dp[area][shape_idx * 2 + split]
    dp: Vec<Vec<u128>>,
}

impl Engine {
    fn new(m: u32, max_area: usize) -> Self {
        let mut shapes = Vec::new();
        for lower in 1..=max_area as u32 {
            shapes.push(Shape { lower, gap: 0, upper: 0 });
        }
        for lower in 1..max_area as u32 {
            for upper in 1..=(max_area as u32 - lower) {
                for gap in 1..=m {
                    shapes.push(Shape { lower, gap, upper });
                }
            }
        }
        let mut by_cells = vec![Vec::new(); max_area + 1];
        for (idx, s) in shapes.iter().enumerate() {
            by_cells[s.cells() as usize].push(idx);
        }
        let states = shapes.len() * 2;
        Self { max_area, shapes, by_cells, dp: vec![vec![0; states]; max_area + 1] }
    }

    fn seed(&mut self) {
        for (idx, s) in self.shapes.iter().enumerate() {
            // A first column with two runs starts split; one run is connected.
            let split = s.two_runs() as usize;
            self.dp[s.cells() as usize][idx * 2 + split] = 1;
        }
    }

    fn run(&mut self) -> Result<()> {
        for area in 1..=self.max_area {
            for state in 0..self.dp[area].len() {
                let count = self.dp[area][state];
                if count == 0 {
                    continue;
                }
                let old = self.shapes[state / 2];
                let split = state % 2 == 1;
                let budget = self.max_area - area;
                let mut updates: Vec<(usize, usize)> = Vec::new();
                for c2 in 1..=budget {
                    for &idx2 in &self.by_cells[c2] {
                        let new = self.shapes[idx2];
                        self.transitions(old, split, new, idx2, &mut updates);
                    }
                }
                for (next_area_cells, next_state) in updates {
                    let slot = &mut self.dp[area + next_area_cells][next_state];
                    *slot = slot
                        .checked_add(count)
                        .ok_or(Error::Overflow(area + next_area_cells))?;
                }
            }
        }
        Ok(())
    }

    /// All vertical placements of `new` against `old`, recorded as
    /// (cells added, successor state) pairs; invalid placements (one that
    /// strands a component) are skipped.
    fn transitions(
        &self,
        old: Shape,
        split: bool,
        new: Shape,
        new_idx: usize,
        out: &mut Vec<(usize, usize)>,
    ) {
        let old_h = old.height();
        let new_h = new.height();
        let old_lower = (0i64, old.lower as i64);
        let old_upper = (
            (old.lower + old.gap) as i64,
            old_h,
        );
        for offset in -new_h..old_h {
            let new_lower = (offset, offset + new.lower as i64);
            let new_upper = (
                offset + (new.lower + new.gap) as i64,
                offset + new_h,
            );
            // Contact of each new run with each old run.
            let ll = contacts(new_lower, old_lower);
            let lu = old.two_runs() && contacts(new_lower, old_upper);
            let ul = new.two_runs() && contacts(new_upper, old_lower);
            let uu = new.two_runs() && old.two_runs() && contacts(new_upper, old_upper);
            // Which new runs does each old component touch?
            let (comp_a, comp_b) = if split {
                // Old lower run and old upper run are separate components.
                ((ll, ul), Some((lu, uu)))
            } else {
                ((ll || lu, ul || uu), None)
            };
            // Every old component must reach the new column.
            if !(comp_a.0 || comp_a.1) {
                continue;
            }
            if let Some(b) = comp_b {
                if !(b.0 || b.1) {
                    continue;
                }
            }
            let next_split = if !new.two_runs() {
                false
            } else {
                // The two new runs join iff some old component touches both.
                let joined = (comp_a.0 && comp_a.1)
                    || comp_b.map_or(false, |b| b.0 && b.1);
                !joined
            };
            out.push((new.cells() as usize, new_idx * 2 + next_split as usize));
        }
    }

    fn totals(&self, split: bool) -> Vec<BigUint> {
        (1..=self.max_area)
            .map(|area| {
                let mut sum = BigUint::from(0u32);
                for (idx, _) in self.shapes.iter().enumerate() {
                    sum += BigUint::from(self.dp[area][idx * 2 + split as usize]);
                }
                sum
            })
            .collect()
    }
}

fn check_args(m: u32, max_area: usize) -> Result<()> {
    if m > 2 {
        return Err(Error::InvalidArgument(
            "the dynamic program supports levels 0, 1 and 2".into(),
        ));
    }
    if max_area < 1 {
        return Err(Error::InvalidArgument("max_area must be at least 1".into()));
    }
    Ok(())
}

/// Count level-m column-subconvex polyominoes by area up to `max_area`.
pub fn dp_count_subconvex(m: u32, max_area: usize) -> Result<CoefficientTable> {
    check_args(m, max_area)?;
    let mut engine = Engine::new(m, max_area);
    engine.seed();
    engine.run()?;
    let model = match m {
        0 => "column_convex",
        1 => "level1",
        _ => "level2",
    };
    Ok(CoefficientTable::new(model, engine.totals(false)))
}

/// Count incomplete level-m figures (split left factors) by area.
pub fn dp_count_incomplete(m: u32, max_area: usize) -> Result<CoefficientTable> {
    check_args(m, max_area)?;
    if m == 0 {
        // A column-convex left factor can never be split.
        return Ok(CoefficientTable::new(
            "incomplete_level0",
            vec![BigUint::from(0u32); max_area],
        ));
    }
    let mut engine = Engine::new(m, max_area);
    engine.seed();
    engine.run()?;
    let model = if m == 1 { "incomplete_level1" } else { "incomplete_level2" };
    Ok(CoefficientTable::new(model, engine.totals(true)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{classification_report, count_by_model, Model};
    use num::bigint::BigUint;

    #[test]
    fn rejects_bad_arguments() {
        assert!(dp_count_subconvex(3, 10).is_err());
        assert!(dp_count_subconvex(1, 0).is_err());
    }

    #[test]
    fn column_convex_matches_brute_force() {
        let dp = dp_count_subconvex(0, 10).unwrap();
        let brute = count_by_model(Model::ColumnConvex, 10).unwrap();
        assert_eq!(dp.counts, brute.counts);
    }

    #[test]
    fn level1_matches_brute_force() {
        let dp = dp_count_subconvex(1, 10).unwrap();
        let brute = count_by_model(Model::Level1, 10).unwrap();
        assert_eq!(dp.counts, brute.counts);
    }

    #[test]
    fn level2_matches_paper_coefficients() {
        let dp = dp_count_subconvex(2, 12).unwrap();
        let want: Vec<BigUint> = [
            1u64, 3, 11, 44, 186, 812, 3614, 16254, 73464, 332603, 1505877, 6813301,
        ]
        .iter()
        .map(|&c| BigUint::from(c))
        .collect();
        assert_eq!(dp.counts, want);
    }

    #[test]
    fn incomplete_counts_match_enumeration() {
        let dp = dp_count_incomplete(1, 8).unwrap();
        let report = classification_report(10, 0, 0).unwrap();
        let brute: Vec<BigUint> = report.incomplete_level1[..8]
            .iter()
            .map(|&c| BigUint::from(c))
            .collect();
        assert_eq!(dp.counts, brute);
    }
}
