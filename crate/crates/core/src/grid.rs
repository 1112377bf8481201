//! Dynamically growing occupancy grid of square cells.
//!
//! Each placed node owns a rectangular block of cells (its footprint). Cell
//! coordinates are absolute and may become negative when the grid grows to
//! the left or upwards; growing never moves a footprint.

use std::collections::BTreeSet;

use crate::error::GridError;
use crate::model::Extent;

const EMPTY: u32 = u32::MAX;

/// Compaction / scan direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    pub fn flip(self) -> Self {
        match self {
            Axis::Horizontal => Axis::Vertical,
            Axis::Vertical => Axis::Horizontal,
        }
    }
}

/// Rectangular block of cells: top-left `(x, y)` and size `w x h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Footprint {
    pub x: i64,
    pub y: i64,
    pub w: u32,
    pub h: u32,
}

impl Footprint {
    pub fn new(x: i64, y: i64, extent: Extent) -> Self {
        Self {
            x,
            y,
            w: extent.w,
            h: extent.h,
        }
    }

    pub fn extent(&self) -> Extent {
        Extent::new(self.w, self.h)
    }

    pub fn right(&self) -> i64 {
        self.x + self.w as i64
    }

    pub fn bottom(&self) -> i64 {
        self.y + self.h as i64
    }

    pub fn center(&self) -> (f64, f64) {
        (
            self.x as f64 + 0.5 * self.w as f64,
            self.y as f64 + 0.5 * self.h as f64,
        )
    }

    pub fn overlaps(&self, other: &Footprint) -> bool {
        self.x < other.right()
            && other.x < self.right()
            && self.y < other.bottom()
            && other.y < self.bottom()
    }

    /// Position along `axis`.
    pub fn start(&self, axis: Axis) -> i64 {
        match axis {
            Axis::Horizontal => self.x,
            Axis::Vertical => self.y,
        }
    }

    /// Length along `axis`.
    pub fn span(&self, axis: Axis) -> u32 {
        match axis {
            Axis::Horizontal => self.w,
            Axis::Vertical => self.h,
        }
    }

    fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.y..self.bottom()).flat_map(move |y| (self.x..self.right()).map(move |x| (x, y)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccupancyGrid {
    x0: i64,
    y0: i64,
    width: usize,
    height: usize,
    cells: Vec<u32>,
    footprints: Vec<Option<Footprint>>,
}

/// Side of the initial square grid for `node_count` nodes: `ceil(5 sqrt(n))`.
/// Smallest `(x, y, width, height)` rectangle covering `footprints`.
pub fn bounding_box<'a>(footprints: impl IntoIterator<Item = &'a Footprint>) -> Option<(i64, i64, usize, usize)> {
    let mut it = footprints.into_iter();
    let first = it.next()?;
    let init = (first.x, first.y, first.right(), first.bottom());
    let (x0, y0, x1, y1) = it.fold(init, |(x0, y0, x1, y1), f| {
        (x0.min(f.x), y0.min(f.y), x1.max(f.right()), y1.max(f.bottom()))
    });
    Some((x0, y0, (x1 - x0) as usize, (y1 - y0) as usize))
}

pub fn initial_side(node_count: usize) -> usize {
    (5.0 * (node_count as f64).sqrt()).ceil().max(1.0) as usize
}

impl OccupancyGrid {
    /// Empty grid sized for `node_count` nodes, spanning cells `[0, side)` on both axes.
    pub fn new(node_count: usize) -> Self {
        let side = initial_side(node_count);
        Self::with_bounds(node_count, 0, 0, side, side)
    }

    pub fn with_bounds(node_count: usize, x0: i64, y0: i64, width: usize, height: usize) -> Self {
        let (width, height) = (width.max(1), height.max(1));
        Self {
            x0,
            y0,
            width,
            height,
            cells: vec![EMPTY; width * height],
            footprints: vec![None; node_count],
        }
    }

    pub fn node_count(&self) -> usize {
        self.footprints.len()
    }

    /// `(x0, y0, width, height)` of the currently allocated cell range.
    pub fn bounds(&self) -> (i64, i64, usize, usize) {
        (self.x0, self.y0, self.width, self.height)
    }

    /// Cell nearest to the middle of the allocated range.
    pub fn center_cell(&self) -> (i64, i64) {
        (
            self.x0 + (self.width / 2) as i64,
            self.y0 + (self.height / 2) as i64,
        )
    }

    pub fn footprint(&self, node: usize) -> Option<Footprint> {
        self.footprints[node]
    }

    pub fn footprints(&self) -> &[Option<Footprint>] {
        &self.footprints
    }

    pub fn is_placed(&self, node: usize) -> bool {
        self.footprints[node].is_some()
    }

    fn index(&self, x: i64, y: i64) -> Option<usize> {
        let (dx, dy) = (x - self.x0, y - self.y0);
        if dx < 0 || dy < 0 || dx >= self.width as i64 || dy >= self.height as i64 {
            None
        } else {
            Some(dy as usize * self.width + dx as usize)
        }
    }

    /// Node occupying cell `(x, y)`; cells outside the bounds are empty.
    pub fn occupant(&self, x: i64, y: i64) -> Option<usize> {
        self.index(x, y)
            .map(|i| self.cells[i])
            .filter(|&c| c != EMPTY)
            .map(|c| c as usize)
    }

    /// Whether `fp` can be occupied, treating the cells of `mover` as free.
    pub fn is_free(&self, fp: &Footprint, mover: Option<usize>) -> bool {
        self.first_blocker(fp, mover).is_none()
    }

    fn first_blocker(&self, fp: &Footprint, mover: Option<usize>) -> Option<(i64, i64, usize)> {
        for y in fp.y..fp.bottom() {
            for x in fp.x..fp.right() {
                if let Some(o) = self.occupant(x, y) {
                    if Some(o) != mover {
                        return Some((x, y, o));
                    }
                }
            }
        }
        None
    }

    /// Grows the allocation until `fp` lies inside it, doubling an exceeded side each step.
    fn ensure_contains(&mut self, fp: &Footprint) {
        let (mut x0, mut y0, mut width, mut height) = (self.x0, self.y0, self.width, self.height);
        while fp.x < x0 {
            x0 -= width as i64;
            width *= 2;
        }
        while fp.right() > x0 + width as i64 {
            width *= 2;
        }
        while fp.y < y0 {
            y0 -= height as i64;
            height *= 2;
        }
        while fp.bottom() > y0 + height as i64 {
            height *= 2;
        }
        if (x0, y0, width, height) == (self.x0, self.y0, self.width, self.height) {
            return;
        }
        let mut cells = vec![EMPTY; width * height];
        for row in 0..self.height {
            let dst = (row as i64 + self.y0 - y0) as usize * width + (self.x0 - x0) as usize;
            cells[dst..dst + self.width]
                .copy_from_slice(&self.cells[row * self.width..(row + 1) * self.width]);
        }
        self.x0 = x0;
        self.y0 = y0;
        self.width = width;
        self.height = height;
        self.cells = cells;
    }

    fn fill(&mut self, fp: &Footprint, value: u32) {
        for y in fp.y..fp.bottom() {
            let start = self.index(fp.x, y).expect("footprint inside bounds");
            self.cells[start..start + fp.w as usize].fill(value);
        }
    }

    /// Places (or moves) `node` to the block at `(x, y)` of size `extent`.
    ///
    /// The node's previous cells count as free. On error the grid is unchanged.
    pub fn place(&mut self, node: usize, x: i64, y: i64, extent: Extent) -> Result<(), GridError> {
        let fp = Footprint::new(x, y, extent);
        if let Some((x, y, occupant)) = self.first_blocker(&fp, Some(node)) {
            return Err(GridError::Occupied { x, y, occupant });
        }
        self.remove(node);
        self.ensure_contains(&fp);
        self.fill(&fp, node as u32);
        self.footprints[node] = Some(fp);
        Ok(())
    }

    pub fn remove(&mut self, node: usize) -> Option<Footprint> {
        let fp = self.footprints[node].take()?;
        self.fill(&fp, EMPTY);
        Some(fp)
    }

    /// Removes every node, keeping the allocated bounds.
    pub fn clear(&mut self) {
        self.cells.fill(EMPTY);
        self.footprints.fill(None);
    }

    /// Bounding box of all placed footprints, if any.
    pub fn placement_bounds(&self) -> Option<(i64, i64, usize, usize)> {
        bounding_box(self.footprints.iter().flatten())
    }

    /// Grid holding every node at `footprints[node]`, with cells allocated
    /// for their bounding box plus `margin` on every side.
    pub fn from_footprints(footprints: &[Footprint], margin: usize) -> Result<Self, GridError> {
        let n = footprints.len();
        let Some((x, y, w, h)) = bounding_box(footprints) else {
            return Ok(Self::with_bounds(0, 0, 0, 1, 1));
        };
        let m = margin as i64;
        let mut grid = Self::with_bounds(n, x - m, y - m, w + 2 * margin, h + 2 * margin);
        for (node, fp) in footprints.iter().enumerate() {
            grid.place(node, fp.x, fp.y, fp.extent())?;
        }
        Ok(grid)
    }

    /// Exchanges the top-left corners of `a` and `b`; each keeps its own extent.
    pub fn swap(&mut self, a: usize, b: usize) -> Result<(), GridError> {
        let (fa, fb) = self.swapped(a, b)?;
        self.remove(a);
        self.remove(b);
        self.ensure_contains(&fa);
        self.ensure_contains(&fb);
        self.fill(&fa, a as u32);
        self.fill(&fb, b as u32);
        self.footprints[a] = Some(fa);
        self.footprints[b] = Some(fb);
        Ok(())
    }

    /// Footprints `a` and `b` would have after [`swap`](Self::swap), if admissible.
    pub fn swapped(&self, a: usize, b: usize) -> Result<(Footprint, Footprint), GridError> {
        let pa = self.footprints[a].ok_or(GridError::NotPlaced(a))?;
        let pb = self.footprints[b].ok_or(GridError::NotPlaced(b))?;
        let na = Footprint { x: pb.x, y: pb.y, ..pa };
        let nb = Footprint { x: pa.x, y: pa.y, ..pb };
        if pa.extent() == pb.extent() {
            return Ok((na, nb));
        }
        let free = |fp: &Footprint| {
            fp.cells().all(|(x, y)| match self.occupant(x, y) {
                None => true,
                Some(o) => o == a || o == b,
            })
        };
        if na.overlaps(&nb) || !free(&na) || !free(&nb) {
            return Err(GridError::InadmissibleSwap(a, b));
        }
        Ok((na, nb))
    }

    /// Admissible top-left positions for a block of size `extent` near `target`.
    ///
    /// `target` is a top-left position in cell units; it is rounded half-up to a
    /// cell. With `d` the smallest Manhattan distance from that cell at which the
    /// block fits, every fitting position within distance `d + 1` is returned,
    /// sorted by `(y, x)`. Cells of `mover` count as free and cells outside the
    /// allocation are empty, so the search always terminates.
    pub fn free_places_near(
        &self,
        target: (f64, f64),
        extent: Extent,
        mover: Option<usize>,
    ) -> Vec<(i64, i64)> {
        let cx = (target.0 + 0.5).floor() as i64;
        let cy = (target.1 + 0.5).floor() as i64;
        let fits = |x: i64, y: i64| self.is_free(&Footprint::new(x, y, extent), mover);
        let mut found = Vec::new();
        let mut nearest = None;
        let mut radius = 0i64;
        loop {
            if matches!(nearest, Some(d) if radius > d + 1) {
                break;
            }
            for_ring(cx, cy, radius, |x, y| {
                if fits(x, y) {
                    found.push((y, x));
                }
            });
            if nearest.is_none() && !found.is_empty() {
                nearest = Some(radius);
            }
            radius += 1;
        }
        found.sort_unstable();
        found.into_iter().map(|(y, x)| (x, y)).collect()
    }

    /// Distinct nodes in the cells surrounding `node`'s footprint (8-adjacency), ascending.
    pub fn adjacent_nodes(&self, node: usize) -> Vec<usize> {
        let Some(fp) = self.footprints[node] else {
            return Vec::new();
        };
        let mut out = BTreeSet::new();
        let mut visit = |x: i64, y: i64| {
            if let Some(o) = self.occupant(x, y) {
                if o != node {
                    out.insert(o);
                }
            }
        };
        for x in fp.x - 1..=fp.right() {
            visit(x, fp.y - 1);
            visit(x, fp.bottom());
        }
        for y in fp.y..fp.bottom() {
            visit(fp.x - 1, y);
            visit(fp.right(), y);
        }
        out.into_iter().collect()
    }

    /// Immediate visibility pairs `(i, j)` with `j` after `i` along `axis`.
    ///
    /// Along every row (column for [`Axis::Vertical`]) each pair of
    /// consecutive distinct occupants yields one pair. Output is sorted and
    /// free of duplicates. Cost depends on the footprints, not the grid area.
    pub fn visibility_scan(&self, axis: Axis) -> Vec<(usize, usize)> {
        let mut runs: Vec<(i64, i64, usize)> = Vec::new();
        for (node, fp) in self.footprints.iter().enumerate() {
            let Some(fp) = fp else { continue };
            match axis {
                Axis::Horizontal => runs.extend((fp.y..fp.bottom()).map(|y| (y, fp.x, node))),
                Axis::Vertical => runs.extend((fp.x..fp.right()).map(|x| (x, fp.y, node))),
            }
        }
        runs.sort_unstable();
        let mut pairs: Vec<(usize, usize)> = runs
            .windows(2)
            .filter(|w| w[0].0 == w[1].0)
            .map(|w| (w[0].2, w[1].2))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    /// Full rescan of the cell/footprint correspondence.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut expected = vec![EMPTY; self.cells.len()];
        for (node, fp) in self.footprints.iter().enumerate() {
            let Some(fp) = fp else { continue };
            for (x, y) in fp.cells() {
                let i = self
                    .index(x, y)
                    .ok_or_else(|| format!("node {node} extends outside the grid at ({x}, {y})"))?;
                if expected[i] != EMPTY {
                    return Err(format!("nodes {} and {node} overlap at ({x}, {y})", expected[i]));
                }
                expected[i] = node as u32;
            }
        }
        if expected != self.cells {
            return Err("cell map disagrees with footprints".into());
        }
        Ok(())
    }
}

/// Calls `f` for each cell at Manhattan distance exactly `r` from `(cx, cy)`.
fn for_ring(cx: i64, cy: i64, r: i64, mut f: impl FnMut(i64, i64)) {
    if r == 0 {
        f(cx, cy);
        return;
    }
    for dx in -r..=r {
        let dy = r - dx.abs();
        f(cx + dx, cy + dy);
        if dy != 0 {
            f(cx + dx, cy - dy);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cell-by-cell scan of the whole window.
    fn dense_visibility_scan(grid: &OccupancyGrid, axis: Axis) -> Vec<(usize, usize)> {
        let (lines, len) = match axis {
            Axis::Horizontal => (grid.height, grid.width),
            Axis::Vertical => (grid.width, grid.height),
        };
        let mut pairs = Vec::new();
        for line in 0..lines {
            let mut prev = EMPTY;
            for k in 0..len {
                let cell = match axis {
                    Axis::Horizontal => grid.cells[line * grid.width + k],
                    Axis::Vertical => grid.cells[k * grid.width + line],
                };
                if cell != EMPTY && cell != prev {
                    if prev != EMPTY {
                        pairs.push((prev as usize, cell as usize));
                    }
                    prev = cell;
                }
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }


    #[test]
    fn initial_sizes() {
        assert_eq!(initial_side(1), 5);
        assert_eq!(initial_side(4), 10);
        assert_eq!(initial_side(10), 16);
        let g = OccupancyGrid::new(10);
        assert_eq!(g.bounds(), (0, 0, 16, 16));
    }

    #[test]
    fn place_and_remove() {
        let mut g = OccupancyGrid::new(2);
        let empty = g.clone();
        g.place(0, 0, 0, Extent::UNIT).unwrap();
        assert_eq!(g.occupant(0, 0), Some(0));
        g.remove(0);
        assert_eq!(g, empty);
    }

    #[test]
    fn place_onto_occupied_fails_and_leaves_grid_untouched() {
        let mut g = OccupancyGrid::new(2);
        g.place(0, 1, 1, Extent::UNIT).unwrap();
        g.place(1, 3, 3, Extent::UNIT).unwrap();
        let before = g.clone();
        assert_eq!(
            g.place(1, 0, 0, Extent::new(2, 2)),
            Err(GridError::Occupied {
                x: 1,
                y: 1,
                occupant: 0
            })
        );
        assert_eq!(g, before);
    }

    #[test]
    fn moving_over_own_cells_is_allowed() {
        let mut g = OccupancyGrid::new(1);
        g.place(0, 0, 0, Extent::new(2, 2)).unwrap();
        g.place(0, 1, 1, Extent::new(2, 2)).unwrap();
        assert_eq!(g.occupant(0, 0), None);
        assert_eq!(g.occupant(2, 2), Some(0));
        g.check_invariants().unwrap();
    }

    #[test]
    fn grows_in_every_direction() {
        let mut g = OccupancyGrid::new(4);
        g.place(0, 2, 2, Extent::UNIT).unwrap();
        g.place(1, -3, 0, Extent::UNIT).unwrap();
        g.place(2, 12, 0, Extent::new(3, 1)).unwrap();
        g.place(3, 0, -20, Extent::new(1, 2)).unwrap();
        let (x0, y0, w, h) = g.bounds();
        assert!(x0 <= -3 && x0 + w as i64 >= 15);
        assert!(y0 <= -20 && y0 + h as i64 >= 10);
        assert_eq!(g.occupant(2, 2), Some(0));
        assert_eq!(g.footprint(0), Some(Footprint::new(2, 2, Extent::UNIT)));
        g.check_invariants().unwrap();
    }

    #[test]
    fn free_places_in_empty_grid() {
        let g = OccupancyGrid::new(1);
        let got = g.free_places_near((3.0, 3.0), Extent::UNIT, None);
        assert_eq!(got, vec![(3, 2), (2, 3), (3, 3), (4, 3), (3, 4)]);
    }

    #[test]
    fn free_places_around_occupied_target() {
        let mut g = OccupancyGrid::new(2);
        g.place(1, 2, 2, Extent::UNIT).unwrap();
        let got = g.free_places_near((2.0, 2.0), Extent::UNIT, Some(0));
        // 4 cells at distance 1 and 8 at distance 2.
        assert_eq!(got.len(), 12);
        assert!(!got.contains(&(2, 2)));
        assert!(got
            .iter()
            .all(|&(x, y)| (1..=2).contains(&((x - 2).abs() + (y - 2).abs()))));
    }

    #[test]
    fn free_places_keep_own_position() {
        let mut g = OccupancyGrid::new(1);
        g.place(0, 2, 2, Extent::new(2, 2)).unwrap();
        let got = g.free_places_near((2.0, 2.0), Extent::new(2, 2), Some(0));
        assert!(got.contains(&(2, 2)));
        assert_eq!(got.len(), 5);
    }

    #[test]
    fn free_places_round_half_up() {
        let g = OccupancyGrid::new(1);
        let got = g.free_places_near((2.5, 1.49), Extent::UNIT, None);
        assert!(got.contains(&(3, 1)));
        assert_eq!(got.len(), 5);
    }

    #[test]
    fn adjacency() {
        let mut g = OccupancyGrid::new(4);
        g.place(0, 0, 0, Extent::UNIT).unwrap();
        assert!(g.adjacent_nodes(0).is_empty());
        g.place(1, 1, 0, Extent::UNIT).unwrap();
        assert_eq!(g.adjacent_nodes(0), vec![1]);
        assert_eq!(g.adjacent_nodes(1), vec![0]);

        // 2x2 node touching a 1x1 node only at a corner.
        g.place(2, 3, 3, Extent::new(2, 2)).unwrap();
        g.place(3, 5, 5, Extent::UNIT).unwrap();
        assert_eq!(g.adjacent_nodes(3), vec![2]);
        assert_eq!(g.adjacent_nodes(2), vec![3]);
    }

    #[test]
    fn visibility_pairs() {
        let mut g = OccupancyGrid::new(3);
        g.place(0, 0, 0, Extent::UNIT).unwrap();
        g.place(1, 4, 0, Extent::UNIT).unwrap();
        assert_eq!(g.visibility_scan(Axis::Horizontal), vec![(0, 1)]);
        assert!(g.visibility_scan(Axis::Vertical).is_empty());

        g.place(1, 4, 2, Extent::UNIT).unwrap();
        assert!(g.visibility_scan(Axis::Horizontal).is_empty());

        g.place(1, 2, 0, Extent::UNIT).unwrap();
        g.place(2, 3, 0, Extent::UNIT).unwrap();
        assert_eq!(g.visibility_scan(Axis::Horizontal), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn visibility_of_four_node_arrangement() {
        // a: 1x2 at (0,0); b: 1x1 at (3,0); c: 1x1 at (2,1); d: 2x1 at (5,1)
        //
        //   a . . b . . .
        //   a . c . . d d
        let mut g = OccupancyGrid::new(4);
        g.place(0, 0, 0, Extent::new(1, 2)).unwrap();
        g.place(1, 3, 0, Extent::UNIT).unwrap();
        g.place(2, 2, 1, Extent::UNIT).unwrap();
        g.place(3, 5, 1, Extent::new(2, 1)).unwrap();
        assert_eq!(g.visibility_scan(Axis::Horizontal), vec![(0, 1), (0, 2), (2, 3)]);
        assert_eq!(g.visibility_scan(Axis::Vertical), vec![]);
    }

    #[test]
    fn swap_rules() {
        let mut g = OccupancyGrid::new(3);
        g.place(0, 0, 0, Extent::UNIT).unwrap();
        g.place(1, 1, 0, Extent::UNIT).unwrap();
        g.swap(0, 1).unwrap();
        assert_eq!(g.occupant(0, 0), Some(1));
        assert_eq!(g.occupant(1, 0), Some(0));

        // A 3x3 node cannot trade places with a 1x1 neighbor boxed in on the right.
        let mut g = OccupancyGrid::new(3);
        g.place(0, 0, 0, Extent::new(3, 3)).unwrap();
        g.place(1, 3, 0, Extent::UNIT).unwrap();
        g.place(2, 4, 0, Extent::UNIT).unwrap();
        assert_eq!(g.swap(0, 1), Err(GridError::InadmissibleSwap(0, 1)));
        g.check_invariants().unwrap();
    }

    proptest::proptest! {
        #[test]
        fn sparse_scan_matches_cell_scan(
            boxes in proptest::collection::vec((-6i64..6, -6i64..6, 1u32..4, 1u32..4), 1..25)
        ) {
            let mut g = OccupancyGrid::new(boxes.len());
            for (node, &(x, y, w, h)) in boxes.iter().enumerate() {
                let fp = Footprint::new(x, y, Extent::new(w, h));
                if g.is_free(&fp, None) {
                    g.place(node, x, y, fp.extent()).unwrap();
                }
            }
            for axis in [Axis::Horizontal, Axis::Vertical] {
                proptest::prop_assert_eq!(g.visibility_scan(axis), dense_visibility_scan(&g, axis));
            }
        }
    }
}
