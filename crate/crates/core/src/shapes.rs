//! Small diagram families built from "beads" (a circle through two
//! trivalent vertices) and legged polygons.
//!
//! A bead has vertices `A` with slots (link, lower arc, upper arc) and `B`
//! with slots (link, upper arc, lower arc), the orientation of a planar
//! drawing. Swapping `A` and `B` is a symmetry of the bead, so chains and
//! rings of beads do not depend on which end is linked.

use alloc::vec::Vec;

use crate::color::Color;
use crate::diagram::{canonicalize, Diagram, RawDiagram};
use crate::error::Error;

/// Cyclic orientation of a rim vertex relative to the drawing plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Turn {
    /// Slots (leg, next rim edge, previous rim edge).
    Planar,
    /// Slots (leg, previous rim edge, next rim edge).
    Reversed,
}

fn beads(raw: RawDiagram, k: u32) -> RawDiagram {
    let mut raw = raw;
    for i in 0..k {
        let (a, b) = (2 * i, 2 * i + 1);
        raw = raw.tri(a).tri(b).edge((a, 1), (b, 2)).edge((a, 2), (b, 1));
    }
    raw
}

/// `k >= 1` beads in a row, consecutive beads joined by an edge, with a
/// leg of color `first` on the first bead and `last` on the last one.
pub fn bead_chain(first: &Color, last: &Color, k: u32) -> Result<Diagram, Error> {
    if k == 0 {
        return Err(Error::InvalidArgument("a bead chain needs at least one bead".into()));
    }
    let mut raw = beads(RawDiagram::new(), k);
    for i in 0..k - 1 {
        raw = raw.edge((2 * i + 1, 0), (2 * i + 2, 0));
    }
    let (l0, l1) = (2 * k, 2 * k + 1);
    raw = raw
        .leg(l0, first.clone())
        .leg(l1, last.clone())
        .edge((l0, 0), (0, 0))
        .edge((l1, 0), (2 * k - 1, 0));
    canonicalize(&raw)
}

/// A single bead with two legs.
pub fn dumbbell(a: &Color, b: &Color) -> Diagram {
    bead_chain(a, b, 1).expect("one bead")
}

/// `k >= 1` beads joined in a closed ring; a colorless trivalent graph of
/// degree `2k`.
pub fn bead_ring(k: u32) -> Result<Diagram, Error> {
    if k == 0 {
        return Err(Error::InvalidArgument("a bead ring needs at least one bead".into()));
    }
    let mut raw = beads(RawDiagram::new(), k);
    for i in 0..k {
        raw = raw.edge((2 * i + 1, 0), (2 * ((i + 1) % k), 0));
    }
    canonicalize(&raw)
}

/// A polygon of trivalent vertices, one per entry, each carrying a leg of
/// the given color and having the given orientation.
pub fn legged_polygon(rim: &[(Color, Turn)]) -> Result<Diagram, Error> {
    let n = rim.len() as u32;
    if n == 0 {
        return Err(Error::InvalidArgument("a polygon needs at least one vertex".into()));
    }
    let slot = |turn: Turn, next: bool| -> u8 {
        match (turn, next) {
            (Turn::Planar, true) | (Turn::Reversed, false) => 1,
            _ => 2,
        }
    };
    let mut raw = RawDiagram::new();
    let turns: Vec<Turn> = rim.iter().map(|(_, t)| *t).collect();
    for (i, (color, turn)) in rim.iter().enumerate() {
        let i = i as u32;
        let j = (i + 1) % n;
        raw = raw
            .tri(2 * i)
            .leg(2 * i + 1, color.clone())
            .edge((2 * i, 0), (2 * i + 1, 0))
            .edge((2 * i, slot(*turn, true)), (2 * j, slot(turns[j as usize], false)));
    }
    canonicalize(&raw)
}
