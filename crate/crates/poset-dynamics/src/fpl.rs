//! Fully-packed loop configurations on an n x n grid of dots: construction
//! from height function matrices, local moves and gyration, link-pattern
//! extraction, and the per-square edge statistic.
//!
//! Geometry conventions. Dots sit at 1-based positions `(row, col)` with
//! `(1, 1)` the top-left corner. Height entry `h_{i,j}` occupies the face
//! whose corner dots are `(i, j)`, `(i, j+1)`, `(i+1, j)`, `(i+1, j+1)`, so
//! interior squares are indexed exactly like interior height entries. The
//! grid edge separating two horizontally adjacent height values is present
//! iff their minimum is even; the edge separating two vertically adjacent
//! values is present iff their minimum is odd. The fixed external edges are
//! the boundary case of the same rule and start with an upward edge at the
//! top-left dot, continuing clockwise at every second boundary slot with
//! corner dots counted twice.

use crate::asm::HeightFunction;
use crate::error::{Error, Result};
use crate::tl::LinkPattern;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Direction {
    Up,
    Right,
    Down,
    Left,
}

impl Direction {
    fn opposite(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Right => Direction::Left,
            Direction::Down => Direction::Up,
            Direction::Left => Direction::Right,
        }
    }

    fn index(self) -> usize {
        match self {
            Direction::Up => 0,
            Direction::Right => 1,
            Direction::Down => 2,
            Direction::Left => 3,
        }
    }
}

/// One of the 2n fixed external edges, attached to a boundary dot.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ExternalEdge {
    /// 1-based `(row, col)` of the dot the edge is attached to.
    pub dot: (usize, usize),
    pub direction: Direction,
}

/// An interior square, 1-based, with `1 <= row, col <= n-1`. Square
/// `(i, j)` is the face of height entry `h_{i,j}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Square {
    pub row: usize,
    pub col: usize,
}

/// Edge configuration on the four sides of a square.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SquareConfig {
    /// Exactly the top and bottom edges.
    HorizontalPair,
    /// Exactly the left and right edges.
    VerticalPair,
    Other,
}

impl SquareConfig {
    /// `+1` for a vertical pair, `-1` for a horizontal pair, `0` otherwise.
    pub fn sign(self) -> i64 {
        match self {
            SquareConfig::VerticalPair => 1,
            SquareConfig::HorizontalPair => -1,
            SquareConfig::Other => 0,
        }
    }
}

/// The 2n external edges in clockwise order, starting with the upward edge
/// at the top-left dot. Their position in the returned list is their 1-based
/// link-pattern number minus one.
pub fn external_edges(n: usize) -> Vec<ExternalEdge> {
    let mut slots = Vec::with_capacity(4 * n);
    for c in 1..=n {
        slots.push(ExternalEdge { dot: (1, c), direction: Direction::Up });
    }
    for r in 1..=n {
        slots.push(ExternalEdge { dot: (r, n), direction: Direction::Right });
    }
    for c in (1..=n).rev() {
        slots.push(ExternalEdge { dot: (n, c), direction: Direction::Down });
    }
    for r in (1..=n).rev() {
        slots.push(ExternalEdge { dot: (r, 1), direction: Direction::Left });
    }
    slots.into_iter().step_by(2).collect()
}

/// A fully-packed loop configuration: internal edge indicators over the
/// n x n dot grid, together with the implied fixed external edges. Every
/// dot has exactly two incident edges, external edges included.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FplGrid {
    n: usize,
    h_edges: Vec<bool>,
    v_edges: Vec<bool>,
}

impl FplGrid {
    /// Builds and validates a grid from row-major edge indicator matrices:
    /// `h_edges` is `n x (n-1)` (edge right of dot `(r, c)`), `v_edges` is
    /// `(n-1) x n` (edge below dot `(r, c)`).
    pub fn new(n: usize, h_edges: Vec<Vec<bool>>, v_edges: Vec<Vec<bool>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::OrderTooSmall(0));
        }
        let h_ok = h_edges.len() == n && h_edges.iter().all(|r| r.len() == n - 1);
        let v_ok = v_edges.len() == n.saturating_sub(1) && v_edges.iter().all(|r| r.len() == n);
        if !h_ok || !v_ok {
            return Err(Error::MalformedFpl("edge matrices have wrong dimensions".into()));
        }
        let grid = FplGrid {
            n,
            h_edges: h_edges.into_iter().flatten().collect(),
            v_edges: v_edges.into_iter().flatten().collect(),
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge between dots `(row, col)` and `(row, col + 1)`.
    pub fn horizontal_edge(&self, row: usize, col: usize) -> bool {
        debug_assert!((1..=self.n).contains(&row) && (1..=self.n - 1).contains(&col));
        self.h_edges[(row - 1) * (self.n - 1) + (col - 1)]
    }

    /// Edge between dots `(row, col)` and `(row + 1, col)`.
    pub fn vertical_edge(&self, row: usize, col: usize) -> bool {
        debug_assert!((1..=self.n - 1).contains(&row) && (1..=self.n).contains(&col));
        self.v_edges[(row - 1) * self.n + (col - 1)]
    }

    fn set_horizontal(&mut self, row: usize, col: usize, value: bool) {
        self.h_edges[(row - 1) * (self.n - 1) + (col - 1)] = value;
    }

    fn set_vertical(&mut self, row: usize, col: usize, value: bool) {
        self.v_edges[(row - 1) * self.n + (col - 1)] = value;
    }

    pub fn h_edge_rows(&self) -> Vec<Vec<bool>> {
        self.h_edges.chunks(self.n - 1).map(|r| r.to_vec()).collect()
    }

    pub fn v_edge_rows(&self) -> Vec<Vec<bool>> {
        if self.n == 1 {
            Vec::new()
        } else {
            self.v_edges.chunks(self.n).map(|r| r.to_vec()).collect()
        }
    }

    /// All interior squares in row-major order.
    pub fn squares(&self) -> Vec<Square> {
        let n = self.n;
        (1..n)
            .flat_map(move |row| (1..n).map(move |col| Square { row, col }))
            .collect()
    }

    /// Checks that every dot has exactly two incident edges, counting the
    /// fixed external edges.
    pub fn validate(&self) -> Result<()> {
        let ext = self.external_lookup();
        for r in 1..=self.n {
            for c in 1..=self.n {
                let degree = self.incident_count(r, c, &ext);
                if degree != 2 {
                    return Err(Error::MalformedFpl(format!(
                        "dot ({r}, {c}) has degree {degree}, expected 2"
                    )));
                }
            }
        }
        Ok(())
    }

    fn external_lookup(&self) -> Vec<[bool; 4]> {
        let n = self.n;
        let mut ext = vec![[false; 4]; n * n];
        for edge in external_edges(n) {
            let (r, c) = edge.dot;
            ext[(r - 1) * n + (c - 1)][edge.direction.index()] = true;
        }
        ext
    }

    fn incident_count(&self, r: usize, c: usize, ext: &[[bool; 4]]) -> usize {
        let n = self.n;
        let e = &ext[(r - 1) * n + (c - 1)];
        let mut degree = 0;
        degree += usize::from(if r > 1 { self.vertical_edge(r - 1, c) } else { e[Direction::Up.index()] });
        degree += usize::from(if r < n { self.vertical_edge(r, c) } else { e[Direction::Down.index()] });
        degree += usize::from(if c > 1 { self.horizontal_edge(r, c - 1) } else { e[Direction::Left.index()] });
        degree += usize::from(if c < n { self.horizontal_edge(r, c) } else { e[Direction::Right.index()] });
        degree
    }

    /// Edge configuration on the four sides of `square`.
    pub fn square_config(&self, square: Square) -> SquareConfig {
        let Square { row: i, col: j } = square;
        assert!(
            (1..self.n).contains(&i) && (1..self.n).contains(&j),
            "square ({i}, {j}) out of range for order {}",
            self.n
        );
        let top = self.horizontal_edge(i, j);
        let bottom = self.horizontal_edge(i + 1, j);
        let left = self.vertical_edge(i, j);
        let right = self.vertical_edge(i, j + 1);
        match (top, bottom, left, right) {
            (true, true, false, false) => SquareConfig::HorizontalPair,
            (false, false, true, true) => SquareConfig::VerticalPair,
            _ => SquareConfig::Other,
        }
    }

    /// The square edge statistic: `+1` for a vertical pair, `-1` for a
    /// horizontal pair, `0` otherwise.
    pub fn square_sign(&self, square: Square) -> i64 {
        self.square_config(square).sign()
    }

    /// Diagnostic drawing with box characters. Not a stable format.
    pub fn render(&self) -> String {
        let n = self.n;
        let size = 2 * n + 1;
        let mut canvas = vec![vec![' '; size]; size];
        for r in 1..=n {
            for c in 1..=n {
                canvas[2 * r - 1][2 * c - 1] = 'o';
            }
        }
        for r in 1..=n {
            for c in 1..n {
                if self.horizontal_edge(r, c) {
                    canvas[2 * r - 1][2 * c] = '─';
                }
            }
        }
        for r in 1..n {
            for c in 1..=n {
                if self.vertical_edge(r, c) {
                    canvas[2 * r][2 * c - 1] = '│';
                }
            }
        }
        for edge in external_edges(n) {
            let (r, c) = edge.dot;
            let (y, x, ch) = match edge.direction {
                Direction::Up => (2 * r - 2, 2 * c - 1, '│'),
                Direction::Down => (2 * r, 2 * c - 1, '│'),
                Direction::Left => (2 * r - 1, 2 * c - 2, '─'),
                Direction::Right => (2 * r - 1, 2 * c, '─'),
            };
            canvas[y][x] = ch;
        }
        canvas
            .into_iter()
            .map(|row| row.into_iter().collect::<String>())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Builds the FPL of a height function: a vertical grid edge is present iff
/// the two height values it separates have even minimum, a horizontal grid
/// edge iff their minimum is odd.
pub fn height_to_fpl(h: &HeightFunction) -> FplGrid {
    let n = h.n();
    let mut grid = FplGrid {
        n,
        h_edges: vec![false; n * (n - 1)],
        v_edges: vec![false; (n - 1) * n],
    };
    for r in 1..n {
        for c in 1..=n {
            let m = h.get(r, c - 1).min(h.get(r, c));
            grid.set_vertical(r, c, m.rem_euclid(2) == 0);
        }
    }
    for r in 1..=n {
        for c in 1..n {
            let m = h.get(r - 1, c).min(h.get(r, c));
            grid.set_horizontal(r, c, m.rem_euclid(2) == 1);
        }
    }
    debug_assert!(grid.validate().is_ok());
    grid
}

/// Inverse of [`height_to_fpl`]: recovers the height values row by row from
/// the horizontal edges and rejects inputs whose edges are inconsistent with
/// any height function.
pub fn fpl_to_height(grid: &FplGrid) -> Result<HeightFunction> {
    grid.validate()?;
    let n = grid.n();
    let mut rows = vec![vec![0i64; n + 1]; n + 1];
    for k in 0..=n {
        rows[0][k] = k as i64;
        rows[k][0] = k as i64;
        rows[n][k] = (n - k) as i64;
        rows[k][n] = (n - k) as i64;
    }
    for i in 1..n {
        for j in 1..n {
            let above = rows[i - 1][j];
            // The horizontal edge between dots (i, j) and (i, j+1) separates
            // h_{i-1,j} from h_{i,j}: present iff their minimum is odd.
            let edge = grid.horizontal_edge(i, j);
            let odd = above.rem_euclid(2) == 1;
            rows[i][j] = if edge == odd { above + 1 } else { above - 1 };
        }
    }
    let h = HeightFunction::new(rows)
        .map_err(|e| Error::MalformedFpl(format!("edges are inconsistent: {e}")))?;
    if &height_to_fpl(&h) != grid {
        return Err(Error::MalformedFpl(
            "edges do not arise from any height function".into(),
        ));
    }
    Ok(h)
}

/// The gyration local move: swaps the two parallel edges on the sides of a
/// square and does nothing when the sides are not a parallel pair. An
/// involution on each square.
pub fn local_move(grid: &FplGrid, square: Square) -> FplGrid {
    let mut out = grid.clone();
    let Square { row: i, col: j } = square;
    match grid.square_config(square) {
        SquareConfig::HorizontalPair => {
            out.set_horizontal(i, j, false);
            out.set_horizontal(i + 1, j, false);
            out.set_vertical(i, j, true);
            out.set_vertical(i, j + 1, true);
        }
        SquareConfig::VerticalPair => {
            out.set_vertical(i, j, false);
            out.set_vertical(i, j + 1, false);
            out.set_horizontal(i, j, true);
            out.set_horizontal(i + 1, j, true);
        }
        SquareConfig::Other => {}
    }
    debug_assert!(out.validate().is_ok());
    out
}

/// The checkerboard class visited first by gyration: squares `(i, j)` with
/// `i + j = n (mod 2)`, whose chains sit in even ranks of the ASM poset.
pub fn first_color_class(n: usize, square: Square) -> bool {
    (square.row + square.col) % 2 == n % 2
}

/// Wieland gyration: local moves on all squares of the first color class,
/// then on all squares of the other class. Squares of one class share no
/// edges, so the order within a class is immaterial.
pub fn gyration(grid: &FplGrid) -> FplGrid {
    let n = grid.n();
    let mut out = grid.clone();
    for pass in [true, false] {
        for square in out.squares() {
            if first_color_class(n, square) == pass {
                out = local_move(&out, square);
            }
        }
    }
    debug_assert!(out.validate().is_ok());
    out
}

/// Traces the paths between external edges and returns the induced
/// noncrossing matching on the 2n external points, numbered clockwise from
/// the upward edge at the top-left dot.
pub fn link_pattern(grid: &FplGrid) -> Result<LinkPattern> {
    grid.validate()?;
    let n = grid.n();
    let ext = external_edges(n);
    let mut ext_index = std::collections::HashMap::new();
    for (k, edge) in ext.iter().enumerate() {
        ext_index.insert((edge.dot, edge.direction), k);
    }

    enum Port {
        External(usize),
        Step((usize, usize)),
    }

    let port = |r: usize, c: usize, dir: Direction| -> Option<Port> {
        match dir {
            Direction::Up => {
                if r > 1 {
                    grid.vertical_edge(r - 1, c).then_some(Port::Step((r - 1, c)))
                } else {
                    ext_index.get(&((r, c), dir)).map(|&k| Port::External(k))
                }
            }
            Direction::Down => {
                if r < n {
                    grid.vertical_edge(r, c).then_some(Port::Step((r + 1, c)))
                } else {
                    ext_index.get(&((r, c), dir)).map(|&k| Port::External(k))
                }
            }
            Direction::Left => {
                if c > 1 {
                    grid.horizontal_edge(r, c - 1).then_some(Port::Step((r, c - 1)))
                } else {
                    ext_index.get(&((r, c), dir)).map(|&k| Port::External(k))
                }
            }
            Direction::Right => {
                if c < n {
                    grid.horizontal_edge(r, c).then_some(Port::Step((r, c + 1)))
                } else {
                    ext_index.get(&((r, c), dir)).map(|&k| Port::External(k))
                }
            }
        }
    };
    let all_dirs = [Direction::Up, Direction::Right, Direction::Down, Direction::Left];

    let mut pairs = Vec::new();
    let mut matched = vec![false; 2 * n];
    for start in 0..2 * n {
        if matched[start] {
            continue;
        }
        let mut dot = ext[start].dot;
        let mut came_from = ext[start].direction;
        let end = loop {
            let mut exit = None;
            for dir in all_dirs {
                if dir == came_from {
                    continue;
                }
                if let Some(p) = port(dot.0, dot.1, dir) {
                    exit = Some((dir, p));
                    break;
                }
            }
            let (dir, p) = exit.ok_or_else(|| {
                Error::MalformedFpl(format!("path from external edge {} dead-ends", start + 1))
            })?;
            match p {
                Port::External(k) => break k,
                Port::Step(next) => {
                    dot = next;
                    came_from = dir.opposite();
                }
            }
        };
        matched[start] = true;
        matched[end] = true;
        pairs.push((start + 1, end + 1));
    }
    LinkPattern::from_pairs(n, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::{asm_to_height, AsmMatrix};

    fn worked_fpl() -> FplGrid {
        let asm = AsmMatrix::new(vec![
            vec![0, 0, 1, 0],
            vec![1, 0, -1, 1],
            vec![0, 0, 1, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap();
        height_to_fpl(&asm_to_height(&asm))
    }

    #[test]
    fn external_edge_counts() {
        for n in 1..=6 {
            assert_eq!(external_edges(n).len(), 2 * n);
        }
    }

    #[test]
    fn external_edges_order_three() {
        use Direction::*;
        let expected = vec![
            ExternalEdge { dot: (1, 1), direction: Up },
            ExternalEdge { dot: (1, 3), direction: Up },
            ExternalEdge { dot: (2, 3), direction: Right },
            ExternalEdge { dot: (3, 3), direction: Down },
            ExternalEdge { dot: (3, 1), direction: Down },
            ExternalEdge { dot: (2, 1), direction: Left },
        ];
        assert_eq!(external_edges(3), expected);
    }

    #[test]
    fn external_edges_order_one() {
        use Direction::*;
        assert_eq!(
            external_edges(1),
            vec![
                ExternalEdge { dot: (1, 1), direction: Up },
                ExternalEdge { dot: (1, 1), direction: Down },
            ]
        );
    }

    #[test]
    fn worked_example_link_pattern() {
        let pattern = link_pattern(&worked_fpl()).unwrap();
        assert_eq!(pattern.pairs(), vec![(1, 8), (2, 5), (3, 4), (6, 7)]);
    }

    #[test]
    fn order_one_fpl() {
        let h = asm_to_height(&AsmMatrix::new(vec![vec![1]]).unwrap());
        let grid = height_to_fpl(&h);
        assert!(grid.validate().is_ok());
        let pattern = link_pattern(&grid).unwrap();
        assert_eq!(pattern.pairs(), vec![(1, 2)]);
        assert_eq!(fpl_to_height(&grid).unwrap(), h);
    }

    #[test]
    fn identity_asm_fpl_valid() {
        for n in 2..=5 {
            let h = asm_to_height(&AsmMatrix::identity(n));
            let grid = height_to_fpl(&h);
            assert!(grid.validate().is_ok());
            assert_eq!(fpl_to_height(&grid).unwrap(), h);
        }
    }

    #[test]
    fn local_move_examples() {
        let grid = worked_fpl();
        // Count a nontrivial move: find a square with a parallel pair.
        let sq = grid
            .squares()
            .into_iter()
            .find(|&s| grid.square_config(s) != SquareConfig::Other)
            .unwrap();
        let moved = local_move(&grid, sq);
        assert_ne!(moved, grid);
        match grid.square_config(sq) {
            SquareConfig::HorizontalPair => {
                assert_eq!(moved.square_config(sq), SquareConfig::VerticalPair)
            }
            SquareConfig::VerticalPair => {
                assert_eq!(moved.square_config(sq), SquareConfig::HorizontalPair)
            }
            SquareConfig::Other => unreachable!(),
        }
        // A square with a single incident edge is left unchanged.
        let untouched = grid
            .squares()
            .into_iter()
            .find(|&s| grid.square_config(s) == SquareConfig::Other)
            .unwrap();
        assert_eq!(local_move(&grid, untouched), grid);
    }

    #[test]
    fn local_move_matches_chain_toggle() {
        // A nontrivial move at square (i, j) changes exactly h_{i,j} by 2
        // and equals the toggle at the unique toggleable element of the
        // square's chain.
        use crate::toggles::toggle;
        let ap = crate::asm::AsmPoset::new(4).unwrap();
        for ideal in ap.poset().ideals() {
            let h = ap.ideal_to_height(ideal).unwrap();
            let grid = height_to_fpl(&h);
            for sq in grid.squares() {
                let moved = local_move(&grid, sq);
                let chain = ap.chain(sq.row, sq.col).unwrap();
                let toggleable: Vec<usize> = chain
                    .iter()
                    .copied()
                    .filter(|&p| toggle(ap.poset(), p, ideal) != ideal)
                    .collect();
                if moved == grid {
                    assert!(toggleable.is_empty());
                    continue;
                }
                assert_eq!(toggleable.len(), 1);
                let toggled = toggle(ap.poset(), toggleable[0], ideal);
                let h2 = ap.ideal_to_height(toggled).unwrap();
                assert_eq!(height_to_fpl(&h2), moved);
                let delta = h2.get(sq.row, sq.col) - h.get(sq.row, sq.col);
                assert_eq!(delta.abs(), 2);
            }
        }
    }

    #[test]
    fn local_move_is_involution_on_all_order_three_fpls() {
        let ap = crate::asm::AsmPoset::new(3).unwrap();
        for ideal in ap.poset().ideals() {
            let grid = height_to_fpl(&ap.ideal_to_height(ideal).unwrap());
            for sq in grid.squares() {
                assert_eq!(local_move(&local_move(&grid, sq), sq), grid);
            }
        }
    }

    #[test]
    fn square_signs() {
        let grid = worked_fpl();
        for sq in grid.squares() {
            let sign = grid.square_sign(sq);
            match grid.square_config(sq) {
                SquareConfig::HorizontalPair => assert_eq!(sign, -1),
                SquareConfig::VerticalPair => assert_eq!(sign, 1),
                SquareConfig::Other => assert_eq!(sign, 0),
            }
        }
    }

    #[test]
    fn gyration_preserves_validity() {
        let mut grid = worked_fpl();
        for _ in 0..5 {
            grid = gyration(&grid);
            assert!(grid.validate().is_ok());
        }
    }

    #[test]
    fn malformed_grid_rejected() {
        // Order 2 grid with no internal edges: corner dots get degree 1.
        let bad = FplGrid::new(2, vec![vec![false], vec![false]], vec![vec![false, false]]);
        assert!(bad.is_err());
    }

    #[test]
    fn render_smoke() {
        let drawing = worked_fpl().render();
        assert!(drawing.contains('o'));
        assert!(drawing.lines().count() == 9);
    }
}
