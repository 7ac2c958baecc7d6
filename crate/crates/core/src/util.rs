//! Small shared utilities.

/// Union-find with parity: each element carries a Z/2 offset relative to its
/// root. `union(a, b, p)` imposes color(a) xor color(b) = p and reports
/// whether the constraint system is still satisfiable.
#[derive(Debug, Clone)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    /// parity of the element relative to its parent
    offset: Vec<bool>,
    rank: Vec<u32>,
    conflict: bool,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            offset: vec![false; n],
            rank: vec![0; n],
            conflict: false,
        }
    }

    /// Returns (root, parity of x relative to root).
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, parent_parity) = self.find(self.parent[x]);
        let my_parity = self.offset[x] ^ parent_parity;
        self.parent[x] = root;
        self.offset[x] = my_parity;
        (root, my_parity)
    }

    /// Impose color(a) xor color(b) = parity. Returns false on conflict.
    pub fn union(&mut self, a: usize, b: usize, parity: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != parity {
                self.conflict = true;
                return false;
            }
            return true;
        }
        // offset of rb relative to ra so that pa ^ (pb ^ off) = parity
        let off = pa ^ pb ^ parity;
        if self.rank[ra] < self.rank[rb] {
            self.parent[ra] = rb;
            self.offset[ra] = off;
        } else {
            self.parent[rb] = ra;
            self.offset[rb] = off;
            if self.rank[ra] == self.rank[rb] {
                self.rank[ra] += 1;
            }
        }
        true
    }

    pub fn same_set(&mut self, a: usize, b: usize) -> bool {
        self.find(a).0 == self.find(b).0
    }

    pub fn has_conflict(&self) -> bool {
        self.conflict
    }

    /// Roots in index order, giving each component a stable small id.
    pub fn component_ids(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut ids = vec![usize::MAX; n];
        let mut next = 0;
        for x in 0..n {
            let (root, _) = self.find(x);
            if ids[root] == usize::MAX {
                ids[root] = next;
                next += 1;
            }
        }
        (0..n).map(|x| ids[self.find(x).0]).collect()
    }
}

/// FNV-1a, used for stable corpus hashes in index files.
pub fn fnv1a_hex(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_cycle_conflict() {
        let mut uf = ParityUnionFind::new(3);
        assert!(uf.union(0, 1, false));
        assert!(uf.union(1, 2, false));
        // odd cycle
        assert!(!uf.union(2, 0, true));
        assert!(uf.has_conflict());
    }

    #[test]
    fn parity_consistent_cycle() {
        let mut uf = ParityUnionFind::new(4);
        assert!(uf.union(0, 1, true));
        assert!(uf.union(1, 2, true));
        assert!(uf.union(2, 3, false));
        assert!(uf.union(3, 0, false));
        assert!(!uf.has_conflict());
        assert_eq!(uf.component_ids(), vec![0, 0, 0, 0]);
    }
}
