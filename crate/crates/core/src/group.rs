//! Concrete finite groups given by their Cayley tables, and subgroups of them.

use std::collections::VecDeque;
use std::fmt;

use crate::coset::{self, CosetLimitExceeded};
use crate::presdsl::{self, format_word, ParseError, Presentation, Word};

/// Largest group order any downstream operation accepts.
pub const MAX_ORDER: usize = 512;
/// Default bound on live cosets during enumeration.
pub const DEFAULT_COSET_LIMIT: usize = 4096;
/// Tables up to this order are checked for associativity on construction.
pub const EAGER_ASSOCIATIVITY_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    CosetLimit(#[from] CosetLimitExceeded),
    #[error("group order {order} exceeds the limit of {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("presentation has no generators")]
    NoGenerators,
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("Cayley table input, line {line}: {message}")]
    TableSyntax { line: usize, message: String },
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("the given generators do not generate the group")]
    NotGenerating,
}

/// A finite group as a Cayley table. Element 0 is the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    generators: Vec<usize>,
    gen_names: Vec<String>,
    names: Vec<String>,
    name_words: Vec<Word>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("gen_names", &self.gen_names)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, validating every
    /// group axiom. `generators` must generate the whole group; element display
    /// names are shortest words in them.
    pub fn from_table(
        order: usize,
        mul: Vec<u32>,
        generators: Vec<usize>,
        gen_names: Vec<String>,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidTable("empty group".into()));
        }
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge {
                order,
                limit: MAX_ORDER,
            });
        }
        if mul.len() != order * order {
            return Err(GroupError::InvalidTable(format!(
                "expected {} entries, found {}",
                order * order,
                mul.len()
            )));
        }
        if generators.len() != gen_names.len() || generators.iter().any(|&g| g >= order) {
            return Err(GroupError::InvalidTable("bad generator list".into()));
        }
        validate_latin(order, &mul)?;
        let mut inv = vec![0u32; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            let y = row.iter().position(|&v| v == 0).expect("latin row");
            inv[x] = y as u32;
        }
        let mut g = FiniteGroup {
            order,
            mul,
            inv,
            elem_order: Vec::new(),
            generators,
            gen_names,
            names: Vec::new(),
            name_words: Vec::new(),
        };
        if order <= EAGER_ASSOCIATIVITY_LIMIT {
            g.verify_associativity()?;
        }
        let mut elem_order = Vec::with_capacity(order);
        for x in 0..order {
            let mut k = 1;
            let mut y = x;
            while y != 0 {
                y = g.mul(y, x);
                k += 1;
                if k > order {
                    return Err(GroupError::InvalidTable(format!(
                        "powers of element {x} never reach the identity"
                    )));
                }
            }
            elem_order.push(k as u32);
        }
        g.elem_order = elem_order;
        g.assign_names()?;
        Ok(g)
    }

    fn assign_names(&mut self) -> Result<(), GroupError> {
        let n = self.order;
        let mut words: Vec<Option<Word>> = vec![None; n];
        words[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        let steps: Vec<(usize, i64)> = (0..self.generators.len())
            .map(|i| (i, 1))
            .chain((0..self.generators.len()).map(|i| (i, -1)))
            .collect();
        while let Some(x) = queue.pop_front() {
            for &(i, e) in &steps {
                let s = if e > 0 {
                    self.generators[i]
                } else {
                    self.inv(self.generators[i])
                };
                let y = self.mul(x, s);
                if words[y].is_none() {
                    let w = words[x].as_ref().unwrap().concat(&Word::from_factors([(i, e)]));
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        if words.iter().any(Option::is_none) {
            return Err(GroupError::NotGenerating);
        }
        self.name_words = words.into_iter().map(Option::unwrap).collect();
        self.names = self
            .name_words
            .iter()
            .map(|w| format_word(w, &self.gen_names))
            .collect();
        Ok(())
    }

    /// Cyclic group of order `n` on one generator `a`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        let mul = (0..n)
            .flat_map(|x| (0..n).map(move |y| ((x + y) % n) as u32))
            .collect();
        let generators = if n > 1 { vec![1] } else { vec![] };
        let names = generators.iter().map(|_| "a".to_string()).collect();
        FiniteGroup::from_table(n, mul, generators, names)
    }

    /// Elementary abelian group of order `2^rank`, generators named `e`, `f`, ...
    pub fn elementary_abelian(rank: u32) -> Result<Self, GroupError> {
        let n = 1usize << rank;
        let mul = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x ^ y) as u32))
            .collect();
        let generators: Vec<usize> = (0..rank).map(|i| 1usize << i).collect();
        let names = fresh_names(&[], rank as usize);
        FiniteGroup::from_table(n, mul, generators, names)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    #[inline]
    pub fn elem_order(&self, x: usize) -> usize {
        self.elem_order[x] as usize
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// The multiplicative commutator `x y x^-1 y^-1`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let xy = self.mul(x, y);
        self.mul(self.mul(xy, self.inv(x)), self.inv(y))
    }

    pub fn conjugate(&self, x: usize, by: usize) -> usize {
        self.mul(self.mul(self.inv(by), x), by)
    }

    pub fn commutes(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    /// Shortest word (generators before inverses, breadth first) for `x`.
    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn name_word(&self, x: usize) -> &Word {
        &self.name_words[x]
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, &x)| self.generators[i + 1..].iter().all(|&y| self.commutes(x, y)))
    }

    pub fn is_2group(&self) -> bool {
        self.order.is_power_of_two()
    }

    /// Evaluates a word in this group's generators.
    pub fn evaluate(&self, w: &Word) -> usize {
        w.factors().iter().fold(0, |acc, &(g, e)| {
            self.mul(acc, self.pow(self.generators[g], e))
        })
    }

    pub fn parse_element(&self, text: &str) -> Result<usize, ParseError> {
        Ok(self.evaluate(&presdsl::parse_word(text, &self.gen_names)?))
    }

    pub fn parse_elements(&self, text: &str) -> Result<Vec<usize>, ParseError> {
        Ok(presdsl::parse_word_list(text, &self.gen_names)?
            .iter()
            .map(|w| self.evaluate(w))
            .collect())
    }

    /// Full O(n^3) associativity check.
    pub fn verify_associativity(&self) -> Result<(), GroupError> {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(GroupError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    /// Renders the table in the ingestion format accepted by [`parse_cayley_table`].
    pub fn to_table_text(&self) -> String {
        let mut out = format!("order {}\n", self.order);
        for x in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|y| self.mul(x, y).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

fn validate_latin(n: usize, mul: &[u32]) -> Result<(), GroupError> {
    let mut seen = vec![0usize; n];
    let mut stamp = 0;
    for x in 0..n {
        stamp += 1;
        for y in 0..n {
            let v = mul[x * n + y] as usize;
            if v >= n {
                return Err(GroupError::InvalidTable(format!("entry {v} out of range")));
            }
            if seen[v] == stamp {
                return Err(GroupError::InvalidTable(format!("row {x} repeats {v}")));
            }
            seen[v] = stamp;
        }
    }
    for y in 0..n {
        stamp += 1;
        for x in 0..n {
            let v = mul[x * n + y] as usize;
            if seen[v] == stamp {
                return Err(GroupError::InvalidTable(format!("column {y} repeats {v}")));
            }
            seen[v] = stamp;
        }
    }
    for x in 0..n {
        if mul[x] as usize != x || mul[x * n] as usize != x {
            return Err(GroupError::InvalidTable(format!(
                "index 0 is not the identity (fails at {x})"
            )));
        }
    }
    Ok(())
}

/// `count` single-letter names not already in `taken`, starting from `e`.
fn fresh_names(taken: &[String], count: usize) -> Vec<String> {
    ('e'..='z')
        .chain('a'..'e')
        .map(|c| c.to_string())
        .filter(|c| !taken.contains(c))
        .take(count)
        .collect()
}

/// Realizes a presentation as a concrete group by coset enumeration.
pub fn realize(p: &Presentation, coset_limit: usize) -> Result<FiniteGroup, GroupError> {
    if p.generators.is_empty() {
        return Err(GroupError::NoGenerators);
    }
    let t = coset::enumerate(p, coset_limit)?;
    let n = t.index;
    if n > MAX_ORDER {
        return Err(GroupError::TooLarge {
            order: n,
            limit: MAX_ORDER,
        });
    }
    // Right regular action: coset c is the element reached from the identity
    // along its breadth-first word; x*y follows y's word starting at x.
    let mut parent = vec![(usize::MAX, 0usize); n];
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for col in 0..t.cols {
            let d = t.act(c, col);
            if !seen[d] {
                seen[d] = true;
                parent[d] = (c, col);
                order.push(d);
            }
        }
    }
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        mul[x * n] = x as u32;
    }
    for &y in order.iter().skip(1) {
        let (py, col) = parent[y];
        for x in 0..n {
            let xp = mul[x * n + py] as usize;
            mul[x * n + y] = t.act(xp, col) as u32;
        }
    }
    let generators = (0..p.generator_count()).map(|i| t.act(0, 2 * i)).collect();
    FiniteGroup::from_table(n, mul, generators, p.generators.clone())
}

/// Parses and realizes in one step.
pub fn realize_text(text: &str, coset_limit: usize) -> Result<FiniteGroup, GroupError> {
    realize(&presdsl::parse_presentation(text)?, coset_limit)
}

/// Reads a group in the plain-text Cayley table format: a header line
/// `order n` followed by `n` rows of `n` whitespace-separated indices.
/// Generators are chosen greedily and named `a`, `b`, `c`, ...
pub fn parse_cayley_table(text: &str) -> Result<FiniteGroup, GroupError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or(GroupError::TableSyntax {
        line: 1,
        message: "missing `order n` header".into(),
    })?;
    let n: usize = header
        .strip_prefix("order")
        .and_then(|rest| rest.trim().parse().ok())
        .ok_or_else(|| GroupError::TableSyntax {
            line: hl,
            message: format!("expected `order n`, found {header:?}"),
        })?;
    if n == 0 || n > MAX_ORDER {
        return Err(GroupError::TooLarge {
            order: n,
            limit: MAX_ORDER,
        });
    }
    let mut mul = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (ln, line) in lines {
        let row: Result<Vec<u32>, _> = line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|e| GroupError::TableSyntax {
            line: ln,
            message: e.to_string(),
        })?;
        if row.len() != n {
            return Err(GroupError::TableSyntax {
                line: ln,
                message: format!("expected {n} entries, found {}", row.len()),
            });
        }
        rows += 1;
        if rows > n {
            return Err(GroupError::TableSyntax {
                line: ln,
                message: "too many rows".into(),
            });
        }
        mul.extend(row);
    }
    if rows != n {
        return Err(GroupError::TableSyntax {
            line: hl,
            message: format!("expected {n} rows, found {rows}"),
        });
    }
    // Validate with no generators first, then pick a generating sequence.
    validate_latin(n, &mul)?;
    let probe = TableView { n, mul: &mul };
    let gens = probe.greedy_generators();
    let names = (0..gens.len())
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    FiniteGroup::from_table(n, mul, gens, names)
}

struct TableView<'a> {
    n: usize,
    mul: &'a [u32],
}

impl TableView<'_> {
    fn m(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y] as usize
    }

    fn order_of(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 && k <= self.n {
            y = self.m(y, x);
            k += 1;
        }
        k
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut chosen: Vec<usize> = Vec::new();
        while let Some(next) = (0..self.n)
            .filter(|&x| !inside[x])
            .max_by_key(|&x| (self.order_of(x), std::cmp::Reverse(x)))
        {
            chosen.push(next);
            let mut members: Vec<usize> = vec![0];
            inside.iter_mut().for_each(|b| *b = false);
            inside[0] = true;
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                head += 1;
                for &s in &chosen {
                    let y = self.m(x, s);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                    }
                }
            }
        }
        chosen
    }
}

/// Direct product `g × h`; the pair `(x, y)` has index `x*|h| + y`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let (ng, nh) = (g.order(), h.order());
    let n = ng * nh;
    if n > MAX_ORDER {
        return Err(GroupError::TooLarge {
            order: n,
            limit: MAX_ORDER,
        });
    }
    let mut mul = vec![0u32; n * n];
    for x1 in 0..ng {
        for y1 in 0..nh {
            let a = x1 * nh + y1;
            for x2 in 0..ng {
                let gx = g.mul(x1, x2) * nh;
                for y2 in 0..nh {
                    mul[a * n + x2 * nh + y2] = (gx + h.mul(y1, y2)) as u32;
                }
            }
        }
    }
    let mut generators: Vec<usize> = g.generators().iter().map(|&x| x * nh).collect();
    generators.extend(h.generators().iter().copied());
    let mut names: Vec<String> = g.gen_names().to_vec();
    let clashes = h.gen_names().iter().filter(|s| names.contains(s)).count();
    let mut fresh = fresh_names(
        &names.iter().chain(h.gen_names()).cloned().collect::<Vec<_>>(),
        clashes,
    )
    .into_iter();
    for s in h.gen_names() {
        if names.contains(s) {
            names.push(fresh.next().expect("enough fresh generator names"));
        } else {
            names.push(s.clone());
        }
    }
    FiniteGroup::from_table(n, mul, generators, names)
}

/// `g × C2^rank`.
pub fn with_c2_factors(g: &FiniteGroup, rank: u32) -> Result<FiniteGroup, GroupError> {
    if rank == 0 {
        return Ok(g.clone());
    }
    direct_product(g, &FiniteGroup::elementary_abelian(rank)?)
}

/// A subgroup, stored as a sorted member list plus a membership mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

impl Subgroup {
    /// Wraps a member set that is already known to be a subgroup.
    pub fn from_members(group_order: usize, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; group_order];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { members, mask }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup::from_members(g.order(), g.elements().collect())
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup::from_members(g.order(), vec![0])
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_in(&self, g: &FiniteGroup) -> usize {
        g.order() / self.len()
    }

    /// Checks the subgroup axioms against `g`.
    pub fn is_subgroup_of(&self, g: &FiniteGroup) -> bool {
        self.mask.len() == g.order()
            && self.contains(0)
            && self.members.iter().all(|&x| {
                self.contains(g.inv(x)) && self.members.iter().all(|&y| self.contains(g.mul(x, y)))
            })
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        self.members
            .iter()
            .all(|&x| g.generators().iter().all(|&s| self.contains(g.conjugate(x, s))))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.members
            .iter()
            .enumerate()
            .all(|(i, &x)| self.members[i + 1..].iter().all(|&y| g.commutes(x, y)))
    }

    /// Greedy generating sequence: repeatedly the element of largest order
    /// outside the span so far, ties broken by lowest index.
    pub fn greedy_generators(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut chosen = Vec::new();
        let mut span = Subgroup::trivial(g);
        while span.len() < self.len() {
            let next = self
                .members
                .iter()
                .copied()
                .filter(|&x| !span.contains(x))
                .max_by_key(|&x| (g.elem_order(x), std::cmp::Reverse(x)))
                .expect("span is a proper subgroup");
            chosen.push(next);
            span = subgroup_closure(g, &chosen);
        }
        chosen
    }

    /// Display label `<w1,w2,...>` built from a greedy generating sequence.
    pub fn label(&self, g: &FiniteGroup) -> String {
        let gens: Vec<&str> = self.greedy_generators(g).iter().map(|&x| g.name(x)).collect();
        format!("<{}>", gens.join(","))
    }

    /// Materializes the subgroup as a group of its own. Returns the group and
    /// the embedding (index in the subgroup -> index in `g`).
    pub fn as_group(&self, g: &FiniteGroup) -> (FiniteGroup, Vec<usize>) {
        let k = self.len();
        let mut local = vec![usize::MAX; g.order()];
        for (i, &m) in self.members.iter().enumerate() {
            local[m] = i;
        }
        let mut mul = vec![0u32; k * k];
        for (i, &x) in self.members.iter().enumerate() {
            for (j, &y) in self.members.iter().enumerate() {
                mul[i * k + j] = local[g.mul(x, y)] as u32;
            }
        }
        let gens: Vec<usize> = self.greedy_generators(g).iter().map(|&x| local[x]).collect();
        let names = (0..gens.len())
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        let sub = FiniteGroup::from_table(k, mul, gens, names)
            .expect("a subgroup of a valid group is a valid group");
        (sub, self.members.clone())
    }
}

/// Smallest subgroup containing `seeds`.
pub fn subgroup_closure(g: &FiniteGroup, seeds: &[usize]) -> Subgroup {
    let mut mask = vec![false; g.order()];
    mask[0] = true;
    let mut members = vec![0usize];
    let seeds: Vec<usize> = seeds.iter().copied().filter(|&s| s != 0).collect();
    let mut head = 0;
    while head < members.len() {
        let x = members[head];
        head += 1;
        for &s in &seeds {
            let y = g.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                members.push(y);
            }
        }
    }
    members.sort_unstable();
    Subgroup { members, mask }
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let members = g
        .elements()
        .filter(|&z| g.generators().iter().all(|&s| g.commutes(z, s)))
        .collect();
    Subgroup::from_members(g.order(), members)
}

/// Subgroup generated by all commutators and all squares (the Frattini
/// subgroup when `g` is a 2-group).
pub fn derived_and_squares(g: &FiniteGroup) -> Subgroup {
    let mut seeds: Vec<usize> = g.elements().map(|x| g.mul(x, x)).collect();
    for x in g.elements() {
        for y in g.elements() {
            seeds.push(g.commutator(x, y));
        }
    }
    seeds.sort_unstable();
    seeds.dedup();
    subgroup_closure(g, &seeds)
}
