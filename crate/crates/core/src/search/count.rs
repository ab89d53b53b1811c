use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use super::bfs::{b_eff, find_multiple_with, reversed_modulus, Checker, Modulus, NONE};
use super::certificate::ExhaustionCertificate;
use super::store::VertexStore;
use super::{verify_witness_with, DigitSet, InconclusiveReason, SearchConfig, SearchMode, SearchOutcome, SearchStats, Witness};
use crate::roots::{isolate_roots, START_PRECISION};
use crate::{Error, IntPolynomial, Result};

#[derive(Debug, Clone)]
pub enum CountOutcome {
    /// Number of distinct multiples of the minimal degree, one per allowed
    /// leading digit and digit word; `examples` holds a few, verified.
    Counted { degree: u64, count: BigUint, examples: Vec<Witness>, stats: SearchStats },
    /// The `delta = 0` graph outgrew the caps. `count` walks were found in
    /// the graph at `delta`; each is a genuine multiple, so the exact count
    /// is at least this.
    LowerBound {
        degree: u64,
        count: BigUint,
        examples: Vec<Witness>,
        delta: f64,
        reason: InconclusiveReason,
        stats: SearchStats,
    },
    NoMultiple(ExhaustionCertificate, SearchStats),
    Inconclusive(InconclusiveReason, SearchStats),
}

pub fn count_minimal_multiples(p: &IntPolynomial, d: &DigitSet, cfg: &SearchConfig) -> Result<CountOutcome> {
    count_minimal_multiples_with(p, d, cfg, &mut || false)
}

/// Finds the minimal degree `n`, rebuilds the `delta = 0` graph out to
/// depth `n` with its edges, and counts walks of length exactly `n` from the
/// leading digits to `0`. A walk cannot pass through `0` earlier, since that
/// prefix would be a multiple of smaller degree.
///
/// Counting happens in the orientation that found the witness; reversing
/// words is a bijection between the two sets of multiples.
pub fn count_minimal_multiples_with(
    p: &IntPolynomial,
    d: &DigitSet,
    cfg: &SearchConfig,
    interrupt: &mut dyn FnMut() -> bool,
) -> Result<CountOutcome> {
    let mcfg = SearchConfig { mode: SearchMode::MinimalDegree, ..cfg.clone() };
    let (n, found) = match find_multiple_with(p, d, &mcfg, interrupt)? {
        SearchOutcome::Exists(w, s) => (w.degree() as u64, s),
        SearchOutcome::None(c, s) => return Ok(CountOutcome::NoMultiple(c, s)),
        SearchOutcome::Inconclusive(r, s) => return Ok(CountOutcome::Inconclusive(r, s)),
    };
    let q = if found.reciprocal { reversed_modulus(p).expect("reversal was searched") } else { p.clone() };
    let m = Modulus::new(&q)?;
    let leading = mcfg.leading(d)?;
    let nonzero_final = mcfg.nonzero_final(d);
    let rs = match isolate_roots(&q, START_PRECISION) {
        Ok(rs) => rs,
        Err(Error::PrecisionExhausted(_)) => return Ok(CountOutcome::Inconclusive(InconclusiveReason::PrecisionCap, found)),
        Err(e) => return Err(e),
    };
    let mut checker = Checker::new(rs, b_eff(d.bound(), 0, mcfg.delta_step), d.digits())?;
    let layers = Layers { m: &m, digits: d.digits(), leading: &leading, nonzero_final, n, max_vertices: mcfg.max_vertices };

    let back = |ws: Vec<Witness>| -> Vec<Witness> {
        ws.into_iter()
            .map(|w| if found.reciprocal { w.reciprocal(d) } else { w })
            .inspect(|w| assert!(verify_witness_with(p, w, d, &leading), "walk is not a multiple"))
            .collect()
    };
    let mut stats = found.clone();
    let reason = match layers.count(&mut checker, interrupt)? {
        Ok(t) => {
            stats.vertices = t.vertices;
            stats.vertices_total += t.vertices;
            stats.final_delta = 0.0;
            return Ok(CountOutcome::Counted { degree: n, count: t.count, examples: back(t.examples), stats });
        }
        Err(InconclusiveReason::Timeout) => return Ok(CountOutcome::Inconclusive(InconclusiveReason::Timeout, found)),
        Err(r) => r,
    };
    let k = libm::round(found.final_delta / mcfg.delta_step) as u32;
    if k == 0 {
        return Ok(CountOutcome::Inconclusive(reason, found));
    }
    checker.set_bound(b_eff(d.bound(), k, mcfg.delta_step))?;
    match layers.count(&mut checker, interrupt)? {
        Ok(t) => {
            stats.vertices = t.vertices;
            stats.vertices_total += t.vertices;
            let examples = back(t.examples);
            Ok(CountOutcome::LowerBound { degree: n, count: t.count, examples, delta: found.final_delta, reason, stats })
        }
        Err(r) => Ok(CountOutcome::Inconclusive(r, found)),
    }
}

/// Distinct walks kept as examples.
const EXAMPLES: usize = 8;

struct Tally {
    count: BigUint,
    vertices: u64,
    examples: Vec<Witness>,
}

struct Layers<'a> {
    m: &'a Modulus,
    digits: &'a [i64],
    leading: &'a [i64],
    nonzero_final: bool,
    n: u64,
    max_vertices: u64,
}

impl Layers<'_> {
    /// Walk count and vertex count of the graph out to depth `n`.
    fn count(
        &self,
        checker: &mut Checker,
        interrupt: &mut dyn FnMut() -> bool,
    ) -> Result<core::result::Result<Tally, InconclusiveReason>> {
        let m = self.m;
        let k = self.digits.len();
        let mut store = VertexStore::new(m.n);
        let mut r = vec![0i64; m.n];
        let mut s = vec![0i64; m.n];
        for &a in self.leading {
            r[0] = a;
            store.insert(&r);
        }
        let starts = store.count();
        let zero = vec![0i64; m.n];
        let mut zero_id = NONE;
        let mut edges: Vec<u32> = Vec::new();
        let (mut cursor, mut layer_end, mut depth) = (0u32, starts as u32, 0u64);
        while (cursor as usize) < store.count() {
            if cursor == layer_end {
                depth += 1;
                layer_end = store.count() as u32;
            }
            if cursor % 1024 == 0 && interrupt() {
                return Ok(Err(InconclusiveReason::Timeout));
            }
            if depth >= self.n || cursor == zero_id {
                edges.extend(core::iter::repeat(NONE).take(k));
                cursor += 1;
                continue;
            }
            store.get_into(cursor, &mut r);
            for &b in self.digits {
                if !m.step(&r, b, &mut s) {
                    return Err(Error::TooLarge("residue coefficients overflow i64"));
                }
                let child = if s == zero {
                    if self.nonzero_final && b == 0 {
                        NONE
                    } else {
                        let (id, _) = store.insert(&zero);
                        zero_id = id;
                        id
                    }
                } else if let Some(id) = store.find(&s) {
                    id
                } else if checker.keep(&s)? {
                    store.insert(&s).0
                } else {
                    NONE
                };
                edges.push(child);
            }
            if store.count() as u64 > self.max_vertices {
                return Ok(Err(InconclusiveReason::VertexCap));
            }
            cursor += 1;
        }
        let v = store.count();
        debug_assert_eq!(edges.len(), v * k);
        if zero_id == NONE {
            return Ok(Ok(Tally { count: BigUint::zero(), vertices: v as u64, examples: Vec::new() }));
        }
        let dist = distances_to(zero_id, &edges, v, k);
        let count = match count_walks::<u128>(&edges, &dist, starts, zero_id, self.n, k) {
            Some(c) => BigUint::from(c),
            None => count_walks::<BigUint>(&edges, &dist, starts, zero_id, self.n, k).expect("big counts never overflow"),
        };
        let examples = self.walks(&store, &edges, &dist, starts, zero_id);
        Ok(Ok(Tally { count, vertices: v as u64, examples }))
    }

    /// Up to [`EXAMPLES`] distinct walks of length exactly `n` to `0`, in
    /// digit order, by a depth-first search pruned by distance to `0`.
    fn walks(&self, store: &VertexStore, edges: &[u32], dist: &[u32], starts: usize, zero: u32) -> Vec<Witness> {
        let k = self.digits.len();
        let mut out = Vec::new();
        for start in 0..starts as u32 {
            // (vertex, next edge index)
            let mut stack: Vec<(u32, usize)> = vec![(start, 0)];
            let mut word: Vec<i64> = vec![store.get(start)[0]];
            while let Some(&(x, e)) = stack.last() {
                let t = stack.len() as u64 - 1;
                if t == self.n || e == k {
                    if t == self.n && x == zero {
                        out.push(Witness::new(word.clone()));
                        if out.len() == EXAMPLES {
                            return out;
                        }
                    }
                    stack.pop();
                    word.pop();
                    continue;
                }
                let di = e;
                stack.last_mut().expect("nonempty").1 += 1;
                let y = edges[x as usize * k + di];
                if y == NONE || dist[y as usize] as u64 > self.n - t - 1 {
                    continue;
                }
                stack.push((y, 0));
                word.push(self.digits[di]);
            }
        }
        out
    }
}

/// Shortest distance from every vertex to `target` along `edges`.
fn distances_to(target: u32, edges: &[u32], v: usize, k: usize) -> Vec<u32> {
    let mut indeg = vec![0u32; v + 1];
    for &c in edges.iter().filter(|&&c| c != NONE) {
        indeg[c as usize + 1] += 1;
    }
    for i in 0..v {
        indeg[i + 1] += indeg[i];
    }
    let mut fill = indeg.clone();
    let mut rev = vec![0u32; indeg[v] as usize];
    for (e, &c) in edges.iter().enumerate() {
        if c != NONE {
            rev[fill[c as usize] as usize] = (e / k) as u32;
            fill[c as usize] += 1;
        }
    }
    let mut dist = vec![u32::MAX; v];
    let mut queue = vec![target];
    dist[target as usize] = 0;
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head] as usize;
        head += 1;
        for &y in &rev[indeg[x] as usize..indeg[x + 1] as usize] {
            if dist[y as usize] == u32::MAX {
                dist[y as usize] = dist[x] + 1;
                queue.push(y);
            }
        }
    }
    dist
}

trait Count: Clone + Zero {
    fn checked_add_assign(&mut self, other: &Self) -> bool;
    fn one() -> Self;
}

impl Count for u128 {
    fn checked_add_assign(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(x) => {
                *self = x;
                true
            }
            None => false,
        }
    }
    fn one() -> Self {
        1
    }
}

impl Count for BigUint {
    fn checked_add_assign(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }
    fn one() -> Self {
        BigUint::from(1u8)
    }
}

/// Layered dynamic program over exactly `n` steps, pruned by distance to
/// the target. `None` on overflow of the count type.
fn count_walks<C: Count>(edges: &[u32], dist: &[u32], starts: usize, target: u32, n: u64, k: usize) -> Option<C> {
    let v = dist.len();
    let mut cur = vec![C::zero(); v];
    let mut next = vec![C::zero(); v];
    let mut active: Vec<u32> = Vec::new();
    for id in 0..starts {
        if (dist[id] as u64) <= n {
            cur[id] = C::one();
            active.push(id as u32);
        }
    }
    let mut touched = Vec::new();
    for t in 0..n {
        let left = n - t - 1;
        touched.clear();
        for &x in &active {
            let c = core::mem::replace(&mut cur[x as usize], C::zero());
            for &y in &edges[x as usize * k..(x as usize + 1) * k] {
                if y == NONE || dist[y as usize] as u64 > left {
                    continue;
                }
                if next[y as usize].is_zero() {
                    touched.push(y);
                }
                if !next[y as usize].checked_add_assign(&c) {
                    return None;
                }
            }
        }
        core::mem::swap(&mut cur, &mut next);
        core::mem::swap(&mut active, &mut touched);
    }
    Some(cur[target as usize].clone())
}
