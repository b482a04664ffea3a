//! HLT coset enumeration over the trivial subgroup.
//!
//! Columns are laid out as `2*i` for generator `i` and `2*i + 1` for its
//! inverse. Cosets are scanned in creation order, relators in input order, and
//! the final table is renumbered breadth-first from the subgroup coset, so the
//! numbering depends only on the presentation.

use crate::presdsl::Presentation;

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("coset enumeration exceeded the limit of {limit} cosets")]
pub struct CosetLimitExceeded {
    pub limit: usize,
}

/// A complete coset table: `table[c * cols + x]` is the image of coset `c` under
/// column `x`. Coset 0 is the subgroup itself.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub cols: usize,
    pub index: usize,
    pub table: Vec<u32>,
}

impl CosetTable {
    pub fn act(&self, coset: usize, col: usize) -> usize {
        self.table[coset * self.cols + col] as usize
    }
}

#[inline]
fn inv_col(x: usize) -> usize {
    x ^ 1
}

struct Enumerator {
    cols: usize,
    limit: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    queue: Vec<usize>,
}

impl Enumerator {
    fn new(cols: usize, limit: usize) -> Self {
        Enumerator {
            cols,
            limit,
            table: vec![UNDEF; cols],
            parent: vec![0],
            live: 1,
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> Option<usize> {
        let v = self.table[c * self.cols + x];
        (v != UNDEF).then_some(v as usize)
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: usize) {
        self.table[c * self.cols + x] = v as u32;
    }

    #[inline]
    fn unset(&mut self, c: usize, x: usize) {
        self.table[c * self.cols + x] = UNDEF;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), CosetLimitExceeded> {
        if self.live >= self.limit {
            return Err(CosetLimitExceeded { limit: self.limit });
        }
        let d = self.parent.len();
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.live += 1;
        self.set(c, x, d);
        self.set(d, inv_col(x), c);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = c;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, drop) = (ra.min(rb), ra.max(rb));
            self.parent[drop] = keep as u32;
            self.live -= 1;
            self.queue.push(drop);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let gamma = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                if let Some(delta) = self.get(gamma, x) {
                    self.unset(delta, inv_col(x));
                    let mu = self.rep(gamma);
                    let nu = self.rep(delta);
                    if let Some(t) = self.get(mu, x) {
                        self.merge(nu, t);
                    } else if let Some(t) = self.get(nu, inv_col(x)) {
                        self.merge(mu, t);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, inv_col(x), mu);
                    }
                }
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, alpha: usize, w: &[usize]) -> Result<(), CosetLimitExceeded> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            while i <= j {
                match self.get(f, w[i]) {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                match self.get(b, inv_col(w[j])) {
                    Some(n) => {
                        b = n;
                        if j == 0 {
                            // fully scanned from the back
                            self.coincidence(f, b);
                            return Ok(());
                        }
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.set(f, w[i], b);
                self.set(b, inv_col(w[i]), f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup. `limit` bounds the number of
/// simultaneously live cosets.
pub fn enumerate(p: &Presentation, limit: usize) -> Result<CosetTable, CosetLimitExceeded> {
    let cols = 2 * p.generator_count();
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| {
            r.letters()
                .map(|(g, inverse)| 2 * g + usize::from(inverse))
                .collect()
        })
        .collect();

    let mut e = Enumerator::new(cols, limit.max(1));
    let mut alpha = 0;
    while alpha < e.parent.len() {
        for r in &relators {
            if !e.is_live(alpha) {
                break;
            }
            e.scan_and_fill(alpha, r)?;
        }
        for x in 0..cols {
            if !e.is_live(alpha) {
                break;
            }
            if e.get(alpha, x).is_none() {
                e.define(alpha, x)?;
            }
        }
        alpha += 1;
    }

    // Breadth-first renumbering of the live cosets.
    let mut order = Vec::with_capacity(e.live);
    let mut newnum = vec![UNDEF; e.parent.len()];
    newnum[0] = 0;
    order.push(0usize);
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for x in 0..cols {
            let d = e.rep(e.get(c, x).expect("complete coset table"));
            if newnum[d] == UNDEF {
                newnum[d] = order.len() as u32;
                order.push(d);
            }
        }
    }
    let index = order.len();
    let mut table = vec![0u32; index * cols];
    for (new, &old) in order.iter().enumerate() {
        for x in 0..cols {
            let d = e.rep(e.get(old, x).expect("complete coset table"));
            table[new * cols + x] = newnum[d];
        }
    }
    Ok(CosetTable { cols, index, table })
}
