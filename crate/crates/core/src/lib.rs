//! On-line vertex ranking games on trees.
//!
//! A Presenter reveals a forest one vertex at a time; a Ranker labels each
//! new vertex irrevocably so that the labels always form a ranking, trying to
//! keep the largest label small. The crate provides the board
//! ([`forest::LabeledForest`]), the game protocol ([`game`]), Ranker and
//! Presenter strategies, and exact brute-force oracles.

pub mod canon;
pub mod embed;
pub mod forest;
pub mod game;
pub mod generators;
pub mod oracles;
pub mod presenters;
pub mod rankers;
pub mod registry;
pub mod textfmt;
pub mod verify;
