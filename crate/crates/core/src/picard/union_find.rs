/// Union-find where each node carries an integer potential relative to its
/// root, so that `potential(x) - potential(y)` is known whenever `x` and `y`
/// share a root.
#[derive(Clone, Debug)]
pub struct WeightedUnionFind {
    parent: Vec<usize>,
    /// Potential relative to `parent`.
    weight: Vec<i64>,
    size: Vec<usize>,
}

/// A union that contradicts the potentials already recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub expected: i64,
    pub found: i64,
}

impl WeightedUnionFind {
    pub fn new(n: usize) -> Self {
        WeightedUnionFind { parent: (0..n).collect(), weight: vec![0; n], size: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Root and potential of `x` relative to it, compressing the path.
    pub fn find(&mut self, x: usize) -> (usize, i64) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (root, above) = self.find(p);
        self.parent[x] = root;
        self.weight[x] += above;
        (root, self.weight[x])
    }

    /// Same as [`find`](Self::find) without mutating.
    pub fn root(&self, mut x: usize) -> (usize, i64) {
        let mut potential = 0;
        while self.parent[x] != x {
            potential += self.weight[x];
            x = self.parent[x];
        }
        (x, potential)
    }

    /// `potential(x) - potential(y)` if both lie in one set.
    pub fn diff(&self, x: usize, y: usize) -> Option<i64> {
        let (rx, px) = self.root(x);
        let (ry, py) = self.root(y);
        (rx == ry).then_some(px - py)
    }

    /// Records `potential(a) - potential(b) = w`. Returns whether two sets
    /// were joined.
    pub fn union(&mut self, a: usize, b: usize, w: i64) -> Result<bool, Conflict> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return if pa - pb == w { Ok(false) } else { Err(Conflict { expected: w, found: pa - pb }) };
        }
        // Hang the smaller tree below the larger root.
        if self.size[ra] >= self.size[rb] {
            self.parent[rb] = ra;
            self.weight[rb] = pa - pb - w;
            self.size[ra] += self.size[rb];
        } else {
            self.parent[ra] = rb;
            self.weight[ra] = w - pa + pb;
            self.size[rb] += self.size[ra];
        }
        Ok(true)
    }
}
