//! Hexagonal-lattice geometry: cells, figures, column decompositions, and
//! the classification predicates behind the column-subconvex models.
//!
//! Coordinate convention: columns are vertical, `row` increases upward, and
//! the right neighbours of `(x, y)` are `(x+1, y)` (upper right) and
//! `(x+1, y-1)` (lower right). Any consistent convention yields identical
//! counts; this one makes the pivot-cell definitions one-line formulas.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{HashSet, VecDeque};

use crate::{Error, Result};

/// One hexagonal cell, addressed by column and position within the column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub col: i32,
    pub row: i32,
}

impl Cell {
    pub fn new(col: i32, row: i32) -> Self {
        Self { col, row }
    }

    /// The six neighbours under the declared convention.
    pub fn neighbors(&self) -> [Cell; 6] {
        let (x, y) = (self.col, self.row);
        [
            Cell::new(x, y + 1),
            Cell::new(x, y - 1),
            Cell::new(x + 1, y),
            Cell::new(x + 1, y - 1),
            Cell::new(x - 1, y),
            Cell::new(x - 1, y + 1),
        ]
    }

    pub fn is_adjacent(&self, other: &Cell) -> bool {
        self.neighbors().contains(other)
    }
}

/// A maximal vertical run of cells within one column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub bottom: i32,
    pub len: i32,
}

impl Run {
    pub fn top(&self) -> i32 {
        self.bottom + self.len - 1
    }
}

/// The runs of one column, bottom to top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub index: i32,
    pub runs: Vec<Run>,
}

impl Column {
    /// Cells plus gap cells spanned, top of top run to bottom of bottom run.
    pub fn height(&self) -> i32 {
        self.runs.last().unwrap().top() - self.runs[0].bottom + 1
    }

    pub fn cell_count(&self) -> i32 {
        self.runs.iter().map(|r| r.len).sum()
    }

    /// Gaps between consecutive runs, as runs of absent cells.
    pub fn gaps(&self) -> Vec<Run> {
        self.runs
            .windows(2)
            .map(|w| Run { bottom: w[0].top() + 1, len: w[1].bottom - w[0].top() - 1 })
            .collect()
    }
}

/// Column decomposition of a figure. Columns appear in increasing index
/// order; only non-empty columns are listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnDecomposition {
    pub columns: Vec<Column>,
}

impl ColumnDecomposition {
    pub fn last(&self) -> &Column {
        self.columns.last().unwrap()
    }

    /// True when the occupied column indices form a contiguous range.
    pub fn contiguous(&self) -> bool {
        self.columns
            .windows(2)
            .all(|w| w[1].index == w[0].index + 1)
    }
}

/// One of the eleven classes partitioning the level-one polyominoes (S) and
/// the incomplete ones (T).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassLabel {
    SAlpha,
    SBeta,
    SGamma,
    SDelta,
    SEpsilon,
    SZeta,
    TAlpha,
    TBeta,
    TGamma,
    TDelta,
    TEpsilon,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 11] = [
        ClassLabel::SAlpha,
        ClassLabel::SBeta,
        ClassLabel::SGamma,
        ClassLabel::SDelta,
        ClassLabel::SEpsilon,
        ClassLabel::SZeta,
        ClassLabel::TAlpha,
        ClassLabel::TBeta,
        ClassLabel::TGamma,
        ClassLabel::TDelta,
        ClassLabel::TEpsilon,
    ];

    pub fn index(&self) -> usize {
        Self::ALL.iter().position(|c| c == self).unwrap()
    }

    pub fn is_s_class(&self) -> bool {
        self.index() < 6
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClassLabel::SAlpha => "S_alpha",
            ClassLabel::SBeta => "S_beta",
            ClassLabel::SGamma => "S_gamma",
            ClassLabel::SDelta => "S_delta",
            ClassLabel::SEpsilon => "S_epsilon",
            ClassLabel::SZeta => "S_zeta",
            ClassLabel::TAlpha => "T_alpha",
            ClassLabel::TBeta => "T_beta",
            ClassLabel::TGamma => "T_gamma",
            ClassLabel::TDelta => "T_delta",
            ClassLabel::TEpsilon => "T_epsilon",
        }
    }
}

/// A non-empty finite set of cells in canonical translation: the minimum
/// column index is 0, and among the cells of column 0 the minimum row is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Figure {
    cells: Vec<Cell>, // sorted by (col, row), deduplicated
}

impl Figure {
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::EmptyFigure("a figure must contain at least one cell"));
        }
        cells.sort();
        cells.dedup();
        let dx = cells[0].col; // sorted by (col, row): first cell has min col
        let dy = cells[0].row; // and min row within that column
        for c in &mut cells {
            c.col -= dx;
            c.row -= dy;
        }
        Ok(Self { cells })
    }

    pub fn from_pairs(pairs: &[(i32, i32)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(c, r)| Cell::new(c, r)))
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn area(&self) -> usize {
        self.cells.len()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.cells.binary_search(cell).is_ok()
    }

    /// Column decomposition into maximal vertical runs.
    pub fn columns(&self) -> ColumnDecomposition {
        let mut columns: Vec<Column> = Vec::new();
        for cell in &self.cells {
            match columns.last_mut() {
                Some(col) if col.index == cell.col => {
                    let last = col.runs.last_mut().unwrap();
                    if cell.row == last.top() + 1 {
                        last.len += 1;
                    } else {
                        col.runs.push(Run { bottom: cell.row, len: 1 });
                    }
                }
                _ => columns.push(Column {
                    index: cell.col,
                    runs: vec![Run { bottom: cell.row, len: 1 }],
                }),
            }
        }
        ColumnDecomposition { columns }
    }

    pub fn column_count(&self) -> usize {
        self.columns().columns.len()
    }

    /// True iff the cell-adjacency graph is connected.
    pub fn is_polyomino(&self) -> bool {
        let set: HashSet<&Cell> = self.cells.iter().collect();
        let mut seen = HashSet::with_capacity(self.cells.len());
        let mut queue = VecDeque::new();
        queue.push_back(self.cells[0]);
        seen.insert(self.cells[0]);
        while let Some(c) = queue.pop_front() {
            for nb in c.neighbors() {
                if set.contains(&nb) && seen.insert(nb) {
                    queue.push_back(nb);
                }
            }
        }
        seen.len() == self.cells.len()
    }

    /// Column-level constraints of the level-m model: at most two runs per
    /// column, any gap of at most m cells. Says nothing about connectivity.
    pub fn columns_satisfy_level(&self, m: u32) -> bool {
        self.columns().columns.iter().all(|col| {
            col.runs.len() <= 2 && col.gaps().iter().all(|g| g.len as u32 <= m)
        })
    }

    pub fn is_column_convex(&self) -> Result<bool> {
        if !self.is_polyomino() {
            return Err(Error::NotPolyomino);
        }
        Ok(self.columns().columns.iter().all(|c| c.runs.len() == 1))
    }

    /// Level-m column-subconvex test. Level 0 coincides with column-convex.
    pub fn is_level_subconvex(&self, m: u32) -> Result<bool> {
        if !self.is_polyomino() {
            return Err(Error::NotPolyomino);
        }
        Ok(self.columns_satisfy_level(m))
    }

    /// The cork of a figure whose last column has gaps: all right neighbours
    /// of the gap cells. A gap of g cells yields g+1 cork cells.
    pub fn cork(&self) -> Vec<Cell> {
        let cols = self.columns();
        let last = cols.last();
        let mut cork: Vec<Cell> = Vec::new();
        for gap in last.gaps() {
            for y in gap.bottom..=gap.top() {
                cork.push(Cell::new(last.index + 1, y));
                cork.push(Cell::new(last.index + 1, y - 1));
            }
        }
        cork.sort();
        cork.dedup();
        cork
    }

    /// Incomplete level-m test: the figure is a left factor of a level-m
    /// column-subconvex polyomino without being one itself. Operationally:
    /// the column constraints hold, the figure is disconnected, and filling
    /// the last column's hole through the cork yields a level-m polyomino.
    pub fn is_incomplete_level(&self, m: u32) -> bool {
        if !self.columns_satisfy_level(m) || self.is_polyomino() {
            return false;
        }
        let cork = self.cork();
        if cork.is_empty() {
            return false;
        }
        let completed =
            Figure::new(self.cells.iter().copied().chain(cork)).expect("non-empty");
        completed.is_polyomino() && completed.columns_satisfy_level(m)
    }

    /// The figure without its last (rightmost) column.
    pub fn body(&self) -> Result<Figure> {
        let cols = self.columns();
        if cols.columns.len() < 2 {
            return Err(Error::SingleColumn);
        }
        let last = cols.last().index;
        Figure::new(self.cells.iter().copied().filter(|c| c.col != last))
    }

    fn second_last_column(&self) -> Result<Column> {
        let cols = self.columns();
        if cols.columns.len() < 2 {
            return Err(Error::SingleColumn);
        }
        Ok(cols.columns[cols.columns.len() - 2].clone())
    }

    /// Lower right neighbour of the lowest cell of the second-last column.
    pub fn pivot_cell(&self) -> Result<Cell> {
        let col = self.second_last_column()?;
        Ok(Cell::new(col.index + 1, col.runs[0].bottom - 1))
    }

    /// Same as [`Figure::pivot_cell`]; named for use on incomplete figures.
    pub fn lower_pivot_cell(&self) -> Result<Cell> {
        self.pivot_cell()
    }

    /// Upper right neighbour of the highest cell of the second-last column.
    pub fn upper_pivot_cell(&self) -> Result<Cell> {
        let col = self.second_last_column()?;
        Ok(Cell::new(col.index + 1, col.runs.last().unwrap().top()))
    }

    /// Classify a level-1 figure into one of the eleven S/T classes.
    pub fn classify(&self, m: u32) -> Result<ClassLabel> {
        if m != 1 {
            return Err(Error::InvalidArgument(
                "classification is defined for level 1 only".into(),
            ));
        }
        let unclassifiable = || Error::Unclassifiable { level: m };
        if self.is_polyomino() && self.columns_satisfy_level(m) {
            // f is in S.
            let cols = self.columns();
            if cols.columns.len() == 1 {
                return Ok(ClassLabel::SAlpha);
            }
            let body = self.body()?;
            let last_holed = cols.last().runs.len() == 2;
            if body.is_polyomino() {
                if last_holed {
                    Ok(ClassLabel::SDelta)
                } else if self.contains(&self.pivot_cell()?) {
                    Ok(ClassLabel::SBeta)
                } else {
                    Ok(ClassLabel::SGamma)
                }
            } else if body.is_incomplete_level(m) {
                if last_holed {
                    Ok(ClassLabel::SZeta)
                } else {
                    Ok(ClassLabel::SEpsilon)
                }
            } else {
                Err(unclassifiable())
            }
        } else if self.is_incomplete_level(m) {
            // f is in T; at level 1 its last column has a one-cell hole.
            let cols = self.columns();
            if cols.columns.len() == 1 {
                return Ok(ClassLabel::TAlpha);
            }
            let hole = cols.last().gaps()[0].bottom;
            let body = self.body()?;
            if body.is_polyomino() {
                let lower = self.lower_pivot_cell()?.row;
                let upper = self.upper_pivot_cell()?.row;
                if hole == lower || hole == upper {
                    Ok(ClassLabel::TBeta)
                } else if hole < lower || hole > upper {
                    Ok(ClassLabel::TGamma)
                } else {
                    Err(unclassifiable())
                }
            } else {
                let second = self.second_last_column()?;
                let gaps = second.gaps();
                if gaps.len() != 1 || gaps[0].len != 1 {
                    return Err(unclassifiable());
                }
                let hole2 = gaps[0].bottom;
                if hole == hole2 || hole == hole2 - 1 {
                    Ok(ClassLabel::TDelta)
                } else {
                    Ok(ClassLabel::TEpsilon)
                }
            }
        } else {
            Err(unclassifiable())
        }
    }

    /// Reflection about a vertical axis: (x, y) -> (-x, x + y), an
    /// adjacency-preserving involution of the hexagonal lattice.
    pub fn reflect_vertical(&self) -> Figure {
        Figure::new(self.cells.iter().map(|c| Cell::new(-c.col, c.col + c.row)))
            .expect("non-empty")
    }

    /// Reflection about a horizontal axis: (x, y) -> (x, -x - y); keeps
    /// columns and swaps up with down.
    pub fn reflect_horizontal(&self) -> Figure {
        Figure::new(self.cells.iter().map(|c| Cell::new(c.col, -c.col - c.row)))
            .expect("non-empty")
    }
}

impl Serialize for Figure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[i32; 2]> = self.cells.iter().map(|c| [c.col, c.row]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Figure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[i32; 2]>::deserialize(deserializer)?;
        Figure::new(pairs.into_iter().map(|[c, r]| Cell::new(c, r)))
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig(pairs: &[(i32, i32)]) -> Figure {
        Figure::from_pairs(pairs).unwrap()
    }

    #[test]
    fn neighbors_of_origin() {
        let mut got = Cell::new(0, 0).neighbors().to_vec();
        got.sort();
        let mut want = vec![
            Cell::new(0, 1),
            Cell::new(0, -1),
            Cell::new(1, 0),
            Cell::new(1, -1),
            Cell::new(-1, 0),
            Cell::new(-1, 1),
        ];
        want.sort();
        assert_eq!(got, want);
        assert!(Cell::new(0, 0).is_adjacent(&Cell::new(1, -1)));
        assert!(!Cell::new(0, 0).is_adjacent(&Cell::new(1, 1)));
    }

    #[test]
    fn adjacency_symmetric_via_table() {
        for x in -2..3 {
            for y in -2..3 {
                let c = Cell::new(x, y);
                for nb in c.neighbors() {
                    assert!(nb.is_adjacent(&c));
                }
            }
        }
    }

    #[test]
    fn connectivity_examples() {
        assert!(fig(&[(0, 0)]).is_polyomino());
        assert!(!fig(&[(0, 0), (0, 2)]).is_polyomino());
        // (1,0) bridges only (0,0): still disconnected from (0,2).
        assert!(!fig(&[(0, 0), (0, 2), (1, 0)]).is_polyomino());
        // (1,1) touches (0,1) and (0,2) on its left, so it does not reach (0,0).
        assert!(!fig(&[(0, 0), (0, 2), (1, 1)]).is_polyomino());
    }

    #[test]
    fn empty_figure_rejected() {
        assert!(matches!(Figure::new(std::iter::empty()), Err(Error::EmptyFigure(_))));
    }

    #[test]
    fn canonical_translation() {
        let a = fig(&[(3, 5), (3, 6), (4, 5)]);
        let b = fig(&[(0, 0), (0, 1), (1, 0)]);
        assert_eq!(a, b);
    }

    #[test]
    fn column_runs_and_heights() {
        let one_run = fig(&[(0, 0), (0, 1), (0, 2)]);
        let cols = one_run.columns();
        assert_eq!(cols.columns.len(), 1);
        assert_eq!(cols.last().runs, vec![Run { bottom: 0, len: 3 }]);
        assert_eq!(cols.last().height(), 3);

        let holed = fig(&[(0, 0), (0, 2)]);
        let cols = holed.columns();
        assert_eq!(
            cols.last().runs,
            vec![Run { bottom: 0, len: 1 }, Run { bottom: 2, len: 1 }]
        );
        assert_eq!(cols.last().gaps(), vec![Run { bottom: 1, len: 1 }]);
        assert_eq!(cols.last().height(), 3);
    }

    #[test]
    fn height_counts_cells_plus_gap_cells() {
        let holed = fig(&[(0, 0), (0, 1), (0, 3), (0, 6)]);
        let col = holed.columns().last().clone();
        let cells: i32 = col.cell_count();
        let gap_cells: i32 = col.gaps().iter().map(|g| g.len).sum();
        assert_eq!(col.height(), cells + gap_cells);
        assert_eq!(col.height(), 7);
    }

    #[test]
    fn level_membership() {
        // A single one-run column is level-m for every m.
        let bar = fig(&[(0, 0), (0, 1)]);
        assert!(bar.is_column_convex().unwrap());
        for m in 0..4 {
            assert!(bar.is_level_subconvex(m).unwrap());
        }
        // One column with a 1-cell gap, bridged by a neighbour column:
        // level 1 but not column-convex.
        let bridged = fig(&[(0, 0), (0, 2), (1, 0), (1, 1)]);
        assert!(bridged.is_polyomino());
        assert!(!bridged.is_column_convex().unwrap());
        assert!(!bridged.is_level_subconvex(0).unwrap());
        assert!(bridged.is_level_subconvex(1).unwrap());
        // A 2-cell gap: level 2 but not level 1.
        let wide = fig(&[(0, 0), (0, 3), (1, 0), (1, 1), (1, 2)]);
        assert!(wide.is_polyomino());
        assert!(!wide.is_level_subconvex(1).unwrap());
        assert!(wide.is_level_subconvex(2).unwrap());
    }

    #[test]
    fn level_test_requires_polyomino() {
        let disconnected = fig(&[(0, 0), (0, 2)]);
        assert!(matches!(disconnected.is_level_subconvex(1), Err(Error::NotPolyomino)));
    }

    #[test]
    fn smallest_incomplete_figure() {
        let t = fig(&[(0, 0), (0, 2)]);
        assert!(t.is_incomplete_level(1));
        assert_eq!(t.cork(), vec![Cell::new(1, 0), Cell::new(1, 1)]);
        assert_eq!(t.classify(1).unwrap(), ClassLabel::TAlpha);
        // Connected figures are never incomplete.
        assert!(!fig(&[(0, 0), (0, 1)]).is_incomplete_level(1));
    }

    #[test]
    fn pivot_cells() {
        // Two stacked columns; second-last lowest cell (0,0).
        let f = fig(&[(0, 0), (0, 1), (1, 0)]);
        assert_eq!(f.pivot_cell().unwrap(), Cell::new(1, -1));
        assert_eq!(f.upper_pivot_cell().unwrap(), Cell::new(1, 1));
        assert!(fig(&[(0, 0)]).pivot_cell().is_err());
    }

    #[test]
    fn classify_small_cases() {
        assert_eq!(fig(&[(0, 0)]).classify(1).unwrap(), ClassLabel::SAlpha);
        assert_eq!(
            fig(&[(0, 0), (0, 1), (0, 2)]).classify(1).unwrap(),
            ClassLabel::SAlpha
        );
        // Last column made up of exactly the pivot cell.
        let f = fig(&[(0, 0), (1, -1)]);
        assert_eq!(f.pivot_cell().unwrap(), Cell::new(1, -1));
        assert_eq!(f.classify(1).unwrap(), ClassLabel::SBeta);
    }

    #[test]
    fn classify_pivot_distinction() {
        // (0,0),(1,0): pivot is (1,-1), not contained -> S_gamma.
        let g = fig(&[(0, 0), (1, 0)]);
        assert_eq!(g.classify(1).unwrap(), ClassLabel::SGamma);
    }

    #[test]
    fn reflections_preserve_adjacency_and_level() {
        let f = fig(&[(0, 0), (0, 2), (1, 0), (1, 1), (2, 1)]);
        let v = f.reflect_vertical();
        let h = f.reflect_horizontal();
        assert_eq!(v.area(), f.area());
        assert_eq!(f.is_polyomino(), v.is_polyomino());
        assert_eq!(f.is_polyomino(), h.is_polyomino());
        assert_eq!(f.columns_satisfy_level(1), v.columns_satisfy_level(1));
        assert_eq!(f.columns_satisfy_level(1), h.columns_satisfy_level(1));
        // Involutions.
        assert_eq!(v.reflect_vertical(), f);
        assert_eq!(h.reflect_horizontal(), f);
    }

    #[test]
    fn figure_json_round_trip() {
        let f = fig(&[(1, 4), (1, 5), (2, 4)]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, "[[0,0],[0,1],[1,0]]");
        let back: Figure = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        // Non-canonical input is canonicalized on read.
        let shifted: Figure = serde_json::from_str("[[5,7],[5,8],[6,7]]").unwrap();
        assert_eq!(shifted, f);
    }
}
