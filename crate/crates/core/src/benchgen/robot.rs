//! Cleaning-robot grid worlds.
//!
//! The robot (Player 0) moves on a grid; the environment (Player 1) resolves
//! which rooms are still dirty. Modes are the nonempty dirty sets `S ⊆
//! {1..k}`: mode index `mask − 1`, named `M<mask>`, with targets `T<r>` for
//! `r ∈ S`. A product state is encoded as
//! `((cell · modeCount) + modeIdx) · 2 + turn` with `cell = row · width + col`
//! and `turn = 0` for the robot's move.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::io::tokens;
use crate::game::{GameBuilder, GameGraph, Player};
use crate::spec::{MTSpec, ModeSpec};

pub const MAX_ROOMS: usize = 8;

/// Half-open cell rectangle `[col_lo, col_hi) × [row_lo, row_hi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Room {
    pub col_lo: usize,
    pub col_hi: usize,
    pub row_lo: usize,
    pub row_hi: usize,
}

impl Room {
    pub fn contains(&self, col: usize, row: usize) -> bool {
        (self.col_lo..self.col_hi).contains(&col) && (self.row_lo..self.row_hi).contains(&row)
    }

    fn overlaps(&self, other: &Room) -> bool {
        self.col_lo < other.col_hi
            && other.col_lo < self.col_hi
            && self.row_lo < other.row_hi
            && other.row_lo < self.row_hi
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RobotWorld {
    pub width: usize,
    pub height: usize,
    pub rooms: Vec<Room>,
    /// Fraction of cells outside every room that are blocked.
    pub obstacle_density: f64,
    pub seed: u64,
}

impl RobotWorld {
    /// A world with the standard room layout and no obstacles.
    pub fn standard(rooms: usize, width: usize, height: usize) -> Result<Self, RobotError> {
        Ok(RobotWorld {
            width,
            height,
            rooms: standard_rooms(rooms, width, height)?,
            obstacle_density: 0.0,
            seed: 0,
        })
    }

    pub fn num_modes(&self) -> usize {
        (1 << self.rooms.len()) - 1
    }

    pub fn num_states(&self) -> usize {
        self.width * self.height * self.num_modes() * 2
    }

    pub fn state_index(&self, col: usize, row: usize, mode: usize, turn: usize) -> usize {
        (((row * self.width + col) * self.num_modes()) + mode) * 2 + turn
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RobotError {
    #[error("grid must be at least 1x1")]
    EmptyGrid,
    #[error("room count {0} out of range 1..={MAX_ROOMS}")]
    RoomCount(usize),
    #[error("room {0} is empty or lies outside the grid")]
    RoomOutOfBounds(usize),
    #[error("rooms {0} and {1} overlap")]
    RoomsOverlap(usize, usize),
    #[error("obstacle density must lie in [0, 1)")]
    ObstacleDensity,
    #[error("the standard layout has 5 rooms; supply room boxes for {0}")]
    NoStandardLayout(usize),
    #[error("line {line}: {message}")]
    BoxSyntax { line: usize, message: String },
}

/// Room boxes in continuous coordinates over `[1, 7.5] × [1, 7.5]`.
const STANDARD_BOXES: [(f64, f64, f64, f64); 5] = [
    (1.0, 3.0, 1.0, 2.5),
    (1.0, 3.0, 3.0, 5.0),
    (3.5, 5.5, 3.0, 5.5),
    (3.5, 5.5, 1.0, 2.5),
    (6.0, 7.5, 2.0, 5.0),
];

/// The first `k` standard rooms mapped onto a `width × height` grid by
/// `cell = ⌊(x − 1) · cells / 6.5⌋`, each at least one cell wide.
pub fn standard_rooms(k: usize, width: usize, height: usize) -> Result<Vec<Room>, RobotError> {
    if k == 0 {
        return Err(RobotError::RoomCount(k));
    }
    if k > STANDARD_BOXES.len() {
        return Err(RobotError::NoStandardLayout(k));
    }
    let cell = |x: f64, cells: usize| ((x - 1.0) * cells as f64 / 6.5).floor() as usize;
    Ok(STANDARD_BOXES[..k]
        .iter()
        .map(|&(x0, x1, y0, y1)| {
            let col_lo = cell(x0, width);
            let row_lo = cell(y0, height);
            Room {
                col_lo,
                col_hi: cell(x1, width).max(col_lo + 1),
                row_lo,
                row_hi: cell(y1, height).max(row_lo + 1),
            }
        })
        .collect())
}

/// Parses lines `room <col_lo> <col_hi> <row_lo> <row_hi>` (half-open).
pub fn parse_room_boxes(text: &str) -> Result<Vec<Room>, RobotError> {
    let mut rooms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let err = |message: String| RobotError::BoxSyntax { line: i + 1, message };
        match tokens(raw).as_slice() {
            [] => {}
            ["room", rest @ ..] if rest.len() == 4 => {
                let v: Vec<usize> = rest
                    .iter()
                    .map(|t| t.parse().map_err(|_| err(format!("expected a cell index, found `{t}`"))))
                    .collect::<Result<_, _>>()?;
                rooms.push(Room {
                    col_lo: v[0],
                    col_hi: v[1],
                    row_lo: v[2],
                    row_hi: v[3],
                });
            }
            other => {
                return Err(err(format!(
                    "expected `room <col_lo> <col_hi> <row_lo> <row_hi>`, found `{}`",
                    other.join(" ")
                )))
            }
        }
    }
    Ok(rooms)
}

fn validate(w: &RobotWorld) -> Result<(), RobotError> {
    if w.width == 0 || w.height == 0 {
        return Err(RobotError::EmptyGrid);
    }
    let k = w.rooms.len();
    if k == 0 || k > MAX_ROOMS {
        return Err(RobotError::RoomCount(k));
    }
    for (a, room) in w.rooms.iter().enumerate() {
        if room.col_lo >= room.col_hi || room.row_lo >= room.row_hi || room.col_hi > w.width || room.row_hi > w.height {
            return Err(RobotError::RoomOutOfBounds(a));
        }
        if let Some(b) = w.rooms[..a].iter().position(|r| r.overlaps(room)) {
            return Err(RobotError::RoomsOverlap(b, a));
        }
    }
    if !(0.0..1.0).contains(&w.obstacle_density) {
        return Err(RobotError::ObstacleDensity);
    }
    Ok(())
}

pub fn mode_name(mask: usize) -> String {
    format!("M{mask}")
}

pub fn room_name(r: usize) -> String {
    format!("T{}", r + 1)
}

/// Product of grid motion and the dirty-room mode automaton.
pub fn gen_cleaning_robot(world: &RobotWorld) -> Result<(GameGraph, MTSpec), RobotError> {
    validate(world)?;
    let (w, h) = (world.width, world.height);
    let k = world.rooms.len();
    let modes = world.num_modes();

    let mut rng = ChaCha8Rng::seed_from_u64(world.seed);
    let room_at: Vec<Option<usize>> = (0..w * h)
        .map(|c| world.rooms.iter().position(|r| r.contains(c % w, c / w)))
        .collect();
    let blocked: Vec<bool> = room_at
        .iter()
        .map(|room| world.obstacle_density > 0.0 && room.is_none() && rng.random_bool(world.obstacle_density))
        .collect();

    let mut b = GameBuilder::new(world.num_states());
    for row in 0..h {
        for col in 0..w {
            let cell = row * w + col;
            let mut moves = vec![(col, row)];
            if col > 0 {
                moves.push((col - 1, row));
            }
            if col + 1 < w {
                moves.push((col + 1, row));
            }
            if row > 0 {
                moves.push((col, row - 1));
            }
            if row + 1 < h {
                moves.push((col, row + 1));
            }
            moves.retain(|&(c, r)| (c, r) == (col, row) || !blocked[r * w + c]);

            for mode in 0..modes {
                let mask = mode + 1;
                let robot = world.state_index(col, row, mode, 0);
                let env = world.state_index(col, row, mode, 1);
                b.set_owner(robot, Player::Zero).set_owner(env, Player::One);
                for &(c, r) in &moves {
                    b.add_edge(robot, world.state_index(c, r, mode, 1));
                }

                let mut next: BTreeSet<usize> = BTreeSet::from([mode]);
                if let Some(r) = room_at[cell].filter(|&r| mask & (1 << r) != 0) {
                    let rest = mask & !(1 << r);
                    if rest == 0 {
                        next.extend(0..modes);
                    } else {
                        next.insert(rest - 1);
                    }
                }
                for m in next {
                    b.add_edge(env, world.state_index(col, row, m, 0));
                }

                for s in [robot, env] {
                    b.add_label(s, &mode_name(mask));
                    if let Some(r) = room_at[cell] {
                        b.add_label(s, &room_name(r));
                    }
                }
            }
        }
    }
    let g = b.build().expect("robot product is well formed");

    let spec = MTSpec::new(
        (1..=modes)
            .map(|mask| ModeSpec {
                name: mode_name(mask),
                targets: (0..k).filter(|r| mask & (1 << r) != 0).map(room_name).collect(),
            })
            .collect(),
    )
    .expect("robot spec is well formed");
    Ok((g, spec))
}
