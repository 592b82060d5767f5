/// Disjoint sets with union by size and path compression.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Root lookup without compression, for shared borrows.
    pub fn find_const(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Union-find without path compression whose unions can be undone in LIFO
/// order; used by backtracking searches.
#[derive(Clone, Debug)]
pub struct RollbackUnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
    components: usize,
}

impl RollbackUnionFind {
    pub fn new(n: usize) -> Self {
        RollbackUnionFind { parent: (0..n).collect(), size: vec![1; n], history: Vec::new(), components: n }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Always records a history entry so that every call can be rolled back.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            self.history.push(None);
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.components -= 1;
        self.history.push(Some((a, b)));
        true
    }

    pub fn rollback(&mut self) {
        if let Some(Some((a, b))) = self.history.pop() {
            self.parent[b] = b;
            self.size[a] -= self.size[b];
            self.components += 1;
        }
    }
}
