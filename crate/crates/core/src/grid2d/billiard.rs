//! The billiard-ball block automaton in arrow-layer form: each cell
//! carries a color and an arrow pointing at the corner shared by its
//! current 2x2 block. A step applies the block permutation to the colors
//! of every block of the current partition and reverses all arrows,
//! which flips the partition; reversing the arrows alone is the
//! time-reversing involution.

use thiserror::Error;

use super::torus::TorusGrid;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BilliardError {
    #[error("billiard torus dimensions must be even, got {0}x{1}")]
    OddDimensions(usize, usize),
    #[error(
        "arrow layer is invalid at ({0}, {1}): arrows must all follow one partition anchoring"
    )]
    InvalidArrowLayer(i64, i64),
}

/// Arrow toward one corner of the cell. The y axis points down, so `Ne`
/// is up-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arrow {
    Ne,
    Se,
    Sw,
    Nw,
}

impl Arrow {
    pub fn opposite(self) -> Arrow {
        match self {
            Arrow::Ne => Arrow::Sw,
            Arrow::Se => Arrow::Nw,
            Arrow::Sw => Arrow::Ne,
            Arrow::Nw => Arrow::Se,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BilliardCell {
    pub black: bool,
    pub arrow: Arrow,
}

/// Which 2x2 partition the arrow layer currently selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partition {
    /// Blocks anchored at even coordinates.
    Even,
    /// Blocks anchored at odd coordinates.
    Odd,
}

/// The arrow of cell `(x, y)` in the even-anchored layer: each cell
/// points at the center of its block, so the block's top-left cell
/// points `Se`, and so on around.
pub fn primary_arrow(x: i64, y: i64) -> Arrow {
    match (x.rem_euclid(2), y.rem_euclid(2)) {
        (0, 0) => Arrow::Se,
        (1, 0) => Arrow::Sw,
        (0, 1) => Arrow::Ne,
        _ => Arrow::Nw,
    }
}

/// Checks that the arrow layer is one of the two consistent layers and
/// reports which partition it selects.
pub fn validate_arrows(grid: &TorusGrid<BilliardCell>) -> Result<Partition, BilliardError> {
    if !grid.width().is_multiple_of(2) || !grid.height().is_multiple_of(2) {
        return Err(BilliardError::OddDimensions(grid.width(), grid.height()));
    }
    let partition = if grid.get(0, 0).arrow == primary_arrow(0, 0) {
        Partition::Even
    } else {
        Partition::Odd
    };
    for (x, y) in grid.positions() {
        let want = match partition {
            Partition::Even => primary_arrow(x, y),
            Partition::Odd => primary_arrow(x, y).opposite(),
        };
        if grid.get(x, y).arrow != want {
            return Err(BilliardError::InvalidArrowLayer(x, y));
        }
    }
    Ok(partition)
}

/// The block permutation on 2x2 color patterns, indexed
/// `[top-left, top-right, bottom-left, bottom-right]`: a lone ball moves
/// to the diagonally opposite corner, two balls on a diagonal hop to the
/// other diagonal, everything else is fixed. An involution on the 16
/// patterns.
pub fn billiard_block_rule(block: [bool; 4]) -> [bool; 4] {
    let [tl, tr, bl, br] = block;
    match block.iter().filter(|&&b| b).count() {
        1 => [br, bl, tr, tl],
        2 if tl && br => [false, true, true, false],
        2 if tr && bl => [true, false, false, true],
        _ => block,
    }
}

/// One step: apply the block rule to every block of the current
/// partition, then reverse every arrow.
pub fn billiard_step(
    grid: &TorusGrid<BilliardCell>,
) -> Result<TorusGrid<BilliardCell>, BilliardError> {
    let partition = validate_arrows(grid)?;
    let anchor_offset = match partition {
        Partition::Even => 0i64,
        Partition::Odd => 1,
    };
    let mut next = grid.clone();
    let mut y = anchor_offset;
    while y < anchor_offset + grid.height() as i64 {
        let mut x = anchor_offset;
        while x < anchor_offset + grid.width() as i64 {
            let block = [
                grid.get(x, y).black,
                grid.get(x + 1, y).black,
                grid.get(x, y + 1).black,
                grid.get(x + 1, y + 1).black,
            ];
            let out = billiard_block_rule(block);
            for (i, (dx, dy)) in [(0, 0), (1, 0), (0, 1), (1, 1)].into_iter().enumerate() {
                let mut cell = next.get(x + dx, y + dy);
                cell.black = out[i];
                next.set(x + dx, y + dy, cell);
            }
            x += 2;
        }
        y += 2;
    }
    Ok(arrow_flip(&next))
}

/// The time-reversing involution: colors unchanged, every arrow replaced
/// by its opposite. Flipping selects the alternate partition.
pub fn arrow_flip(grid: &TorusGrid<BilliardCell>) -> TorusGrid<BilliardCell> {
    grid.map(|_, c| BilliardCell {
        black: c.black,
        arrow: c.arrow.opposite(),
    })
}
