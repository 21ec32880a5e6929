//! Deterministic instance generators.

mod random;
mod robot;

pub use random::{
    gen_multi_target_series, gen_random_game, OwnerMode, RandomGameError, RandomGameParams,
};
pub use robot::{
    gen_cleaning_robot, parse_room_boxes, standard_rooms, Room, RobotError, RobotWorld, MAX_ROOMS,
};
