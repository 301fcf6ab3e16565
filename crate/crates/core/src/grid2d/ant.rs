//! The turning ant as a torus automaton and as an agent oracle.
//!
//! The agent reads the color under it, turns (white one way, black the
//! other), flips the color and moves forward. The cell encoding uses two
//! adjacent marked cells: the head is the ant's position, the tail the
//! cell it came from; each step the tail empties, the head becomes a
//! tail and flips its color, and the cell the ant turns into becomes the
//! new head. Exchanging heads and tails reverses time.

use thiserror::Error;

use super::torus::TorusGrid;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AntError {
    #[error("ant torus must be at least 3x3, got {0}x{1}")]
    TooSmall(usize, usize),
    #[error(
        "grid must contain exactly one head and one tail, found {heads} heads and {tails} tails"
    )]
    WrongMarkCount { heads: usize, tails: usize },
    #[error("head and tail must be orthogonally adjacent")]
    NotAdjacent,
}

/// Cardinal direction; the y axis points down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    N,
    E,
    S,
    W,
}

pub const ALL_DIRS: [Dir; 4] = [Dir::N, Dir::E, Dir::S, Dir::W];

impl Dir {
    pub fn delta(self) -> (i64, i64) {
        match self {
            Dir::N => (0, -1),
            Dir::E => (1, 0),
            Dir::S => (0, 1),
            Dir::W => (-1, 0),
        }
    }

    pub fn left(self) -> Dir {
        match self {
            Dir::N => Dir::W,
            Dir::W => Dir::S,
            Dir::S => Dir::E,
            Dir::E => Dir::N,
        }
    }

    pub fn right(self) -> Dir {
        self.left().left().left()
    }

    pub fn opposite(self) -> Dir {
        self.left().left()
    }

    pub fn name(self) -> &'static str {
        match self {
            Dir::N => "N",
            Dir::E => "E",
            Dir::S => "S",
            Dir::W => "W",
        }
    }
}

/// Which way the ant turns on a white cell; it turns the other way on
/// black. The retrace and highway properties hold for either choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TurnConvention {
    #[default]
    WhiteRight,
    WhiteLeft,
}

impl TurnConvention {
    pub fn turn(self, dir: Dir, black: bool) -> Dir {
        match (self, black) {
            (TurnConvention::WhiteRight, false) | (TurnConvention::WhiteLeft, true) => dir.right(),
            _ => dir.left(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mark {
    Empty,
    Head,
    Tail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntCell {
    pub mark: Mark,
    pub black: bool,
}

impl AntCell {
    pub fn empty_white() -> Self {
        AntCell {
            mark: Mark::Empty,
            black: false,
        }
    }
}

/// Ant position and heading, in unwrapped plane coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntPose {
    pub x: i64,
    pub y: i64,
    pub dir: Dir,
}

/// The agent form: colors on a torus plus the ant's unwrapped position
/// and last movement direction.
#[derive(Debug, Clone)]
pub struct AntOracle {
    pub colors: TorusGrid<bool>,
    pub x: i64,
    pub y: i64,
    pub dir: Dir,
    pub convention: TurnConvention,
}

/// What one oracle step did, for trajectory logs.
#[derive(Debug, Clone, Copy)]
pub struct StepInfo {
    /// Color read under the ant before it flipped the cell.
    pub read_black: bool,
}

impl AntOracle {
    pub fn on_white(
        width: usize,
        height: usize,
        x: i64,
        y: i64,
        dir: Dir,
        convention: TurnConvention,
    ) -> Self {
        AntOracle {
            colors: TorusGrid::filled(width, height, false),
            x,
            y,
            dir,
            convention,
        }
    }

    pub fn pose(&self) -> AntPose {
        AntPose {
            x: self.x,
            y: self.y,
            dir: self.dir,
        }
    }

    pub fn step(&mut self) -> StepInfo {
        let read_black = self.colors.get(self.x, self.y);
        let new_dir = self.convention.turn(self.dir, read_black);
        self.colors.set(self.x, self.y, !read_black);
        let (dx, dy) = new_dir.delta();
        self.x += dx;
        self.y += dy;
        self.dir = new_dir;
        StepInfo { read_black }
    }
}

/// A wrapped cell position on the torus.
pub type CellPos = (i64, i64);

/// Checks the single-ant subshift: exactly one head and one tail,
/// orthogonally adjacent, on a torus big enough for unambiguous
/// neighborhoods. Returns (head, tail) positions.
pub fn validate_ant_grid(grid: &TorusGrid<AntCell>) -> Result<(CellPos, CellPos), AntError> {
    if grid.width() < 3 || grid.height() < 3 {
        return Err(AntError::TooSmall(grid.width(), grid.height()));
    }
    let mut heads = Vec::new();
    let mut tails = Vec::new();
    for (x, y) in grid.positions() {
        match grid.get(x, y).mark {
            Mark::Head => heads.push((x, y)),
            Mark::Tail => tails.push((x, y)),
            Mark::Empty => {}
        }
    }
    if heads.len() != 1 || tails.len() != 1 {
        return Err(AntError::WrongMarkCount {
            heads: heads.len(),
            tails: tails.len(),
        });
    }
    let (head, tail) = (heads[0], tails[0]);
    let adjacent = ALL_DIRS
        .iter()
        .any(|d| wrap_add(grid, tail, d.delta()) == head);
    if !adjacent {
        return Err(AntError::NotAdjacent);
    }
    Ok((head, tail))
}

fn wrap_add<C: Copy>(grid: &TorusGrid<C>, (x, y): (i64, i64), (dx, dy): (i64, i64)) -> (i64, i64) {
    (
        (x + dx).rem_euclid(grid.width() as i64),
        (y + dy).rem_euclid(grid.height() as i64),
    )
}

/// One synchronous step of the cell form: tails empty, the head becomes
/// a tail and flips its color, and the neighbor the ant turns toward
/// becomes the new head.
pub fn ant_step(
    grid: &TorusGrid<AntCell>,
    convention: TurnConvention,
) -> Result<TorusGrid<AntCell>, AntError> {
    let (head, tail) = validate_ant_grid(grid)?;
    let move_dir = ALL_DIRS
        .into_iter()
        .find(|d| wrap_add(grid, tail, d.delta()) == head)
        .expect("validated adjacency");
    let head_black = grid.get(head.0, head.1).black;
    let turn = convention.turn(move_dir, head_black);
    let new_head = wrap_add(grid, head, turn.delta());
    Ok(grid.map(|(x, y), c| {
        let pos = (x, y);
        match c.mark {
            Mark::Tail => AntCell {
                mark: Mark::Empty,
                black: c.black,
            },
            Mark::Head => AntCell {
                mark: Mark::Tail,
                black: !c.black,
            },
            Mark::Empty => AntCell {
                mark: if pos == new_head {
                    Mark::Head
                } else {
                    Mark::Empty
                },
                black: c.black,
            },
        }
    }))
}

/// The time-reversing involution: heads and tails exchange, colors
/// untouched.
pub fn head_tail_swap(grid: &TorusGrid<AntCell>) -> TorusGrid<AntCell> {
    grid.map(|_, c| AntCell {
        mark: match c.mark {
            Mark::Head => Mark::Tail,
            Mark::Tail => Mark::Head,
            Mark::Empty => Mark::Empty,
        },
        black: c.black,
    })
}

/// The cell form of an oracle state: head at the ant, tail behind it.
pub fn oracle_to_grid(oracle: &AntOracle) -> TorusGrid<AntCell> {
    let (dx, dy) = oracle.dir.delta();
    let w = oracle.colors.width() as i64;
    let h = oracle.colors.height() as i64;
    let head = (oracle.x.rem_euclid(w), oracle.y.rem_euclid(h));
    let tail = ((oracle.x - dx).rem_euclid(w), (oracle.y - dy).rem_euclid(h));
    oracle.colors.map(|pos, black| AntCell {
        mark: if pos == head {
            Mark::Head
        } else if pos == tail {
            Mark::Tail
        } else {
            Mark::Empty
        },
        black,
    })
}

/// A detected eventually-periodic drift: from step `onset` on, the pose
/// at `t + period` is the pose at `t` translated by `vector`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Highway {
    pub onset: usize,
    pub period: usize,
    pub vector: (i64, i64),
}

/// Scans a pose trajectory for the smallest period whose tail is
/// translation-periodic with a nonzero vector, observed for at least two
/// full periods, and the earliest onset for that period.
pub fn detect_highway(poses: &[AntPose], max_period: usize) -> Option<Highway> {
    if poses.len() < 3 {
        return None;
    }
    let last = poses.len() - 1;
    for period in 1..=max_period.min(last) {
        let a = poses[last - period];
        let b = poses[last];
        let vector = (b.x - a.x, b.y - a.y);
        if vector == (0, 0) || a.dir != b.dir {
            continue;
        }
        let mut onset = last - period;
        while onset > 0 {
            let p = poses[onset - 1];
            let q = poses[onset - 1 + period];
            if (q.x - p.x, q.y - p.y) == vector && p.dir == q.dir {
                onset -= 1;
            } else {
                break;
            }
        }
        // Demand three observed periods before trusting the drift.
        if onset + 3 * period <= last {
            return Some(Highway {
                onset,
                period,
                vector,
            });
        }
    }
    None
}

/// Axis-aligned bounding box of a trajectory: (min_x, min_y, max_x, max_y).
pub fn bounding_box(poses: &[AntPose]) -> Option<(i64, i64, i64, i64)> {
    let first = poses.first()?;
    let mut bb = (first.x, first.y, first.x, first.y);
    for p in poses {
        bb.0 = bb.0.min(p.x);
        bb.1 = bb.1.min(p.y);
        bb.2 = bb.2.max(p.x);
        bb.3 = bb.3.max(p.y);
    }
    Some(bb)
}
