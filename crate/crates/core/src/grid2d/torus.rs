//! A toroidal grid of composite cell states, row-major with wrapping
//! indices.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusGrid<C> {
    width: usize,
    height: usize,
    cells: Vec<C>,
}

impl<C: Copy> TorusGrid<C> {
    pub fn filled(width: usize, height: usize, fill: C) -> Self {
        assert!(width > 0 && height > 0, "torus dimensions must be positive");
        TorusGrid {
            width,
            height,
            cells: vec![fill; width * height],
        }
    }

    pub fn from_cells(width: usize, height: usize, cells: Vec<C>) -> Self {
        assert_eq!(cells.len(), width * height);
        TorusGrid {
            width,
            height,
            cells,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cells(&self) -> &[C] {
        &self.cells
    }

    fn index(&self, x: i64, y: i64) -> usize {
        let x = x.rem_euclid(self.width as i64) as usize;
        let y = y.rem_euclid(self.height as i64) as usize;
        y * self.width + x
    }

    pub fn get(&self, x: i64, y: i64) -> C {
        self.cells[self.index(x, y)]
    }

    pub fn set(&mut self, x: i64, y: i64, value: C) {
        let i = self.index(x, y);
        self.cells[i] = value;
    }

    /// Positions in row-major order.
    pub fn positions(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let w = self.width as i64;
        let h = self.height as i64;
        (0..h).flat_map(move |y| (0..w).map(move |x| (x, y)))
    }

    pub fn map<D: Copy>(&self, mut f: impl FnMut((i64, i64), C) -> D) -> TorusGrid<D> {
        let cells = self
            .positions()
            .map(|(x, y)| f((x, y), self.get(x, y)))
            .collect();
        TorusGrid {
            width: self.width,
            height: self.height,
            cells,
        }
    }
}
