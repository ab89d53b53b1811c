use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::certificate::ExhaustionCertificate;
use super::store::VertexStore;
use super::{
    degree_lower_bound, verify_witness_with, DigitSet, InconclusiveReason, SearchConfig, SearchMode, SearchOutcome,
    SearchStats, Witness,
};
use crate::dyadic::Dyadic;
use crate::roots::{build_bound_table, isolate_roots, BoundTable, BoundVerdict, RootSystem, START_PRECISION};
use crate::{Error, IntPolynomial, Result};

pub(crate) const NONE: u32 = u32::MAX;
/// Expansions per orientation between switches and interrupt polls.
const SLICE: u32 = 1024;

/// Monic modulus with `i64` coefficients below the leading one.
pub(crate) struct Modulus {
    pub n: usize,
    low: Vec<i64>,
}

impl Modulus {
    pub fn new(p: &IntPolynomial) -> Result<Self> {
        let n = match p.degree() {
            Some(n) if n >= 1 && p.is_monic() => n,
            _ => return Err(Error::NonMonicModulus),
        };
        if p.constant_term().is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let low = p.coeffs()[..n]
            .iter()
            .map(|c| c.to_i64())
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::TooLarge("modulus coefficients must fit in i64"))?;
        Ok(Modulus { n, low })
    }

    /// `out = X r + b mod P`; `false` on `i64` overflow.
    #[inline]
    pub fn step(&self, r: &[i64], b: i64, out: &mut [i64]) -> bool {
        let top = r[self.n - 1];
        if top == 0 {
            out[0] = b;
            out[1..].copy_from_slice(&r[..self.n - 1]);
            return true;
        }
        let Some(v) = top.checked_mul(self.low[0]).and_then(|t| b.checked_sub(t)) else {
            return false;
        };
        out[0] = v;
        for k in 1..self.n {
            let Some(v) = top.checked_mul(self.low[k]).and_then(|t| r[k - 1].checked_sub(t)) else {
                return false;
            };
            out[k] = v;
        }
        true
    }
}

/// Monic modulus whose multiples are the reversed multiples of `p`: the
/// reciprocal, negated when `p(0) = -1`. `None` unless `p(0) = ±1`.
pub(crate) fn reversed_modulus(p: &IntPolynomial) -> Option<IntPolynomial> {
    let c = p.constant_term();
    if !c.abs().is_one() {
        return None;
    }
    let q = p.reciprocal().ok()?;
    Some(q.scale(&c))
}

/// Bound checks with one lazily built refinement for `Unknown` verdicts.
pub(crate) struct Checker {
    rs: RootSystem,
    refined: Option<RootSystem>,
    b_eff: Dyadic,
    coarse: BoundTable,
    fine: Option<BoundTable>,
    digits: Vec<i64>,
}

impl Checker {
    pub fn new(rs: RootSystem, b_eff: Dyadic, digits: &[i64]) -> Result<Self> {
        let coarse = build_bound_table(&rs, &b_eff)?;
        Ok(Checker { rs, refined: None, b_eff, coarse, fine: None, digits: digits.to_vec() })
    }

    pub fn set_bound(&mut self, b_eff: Dyadic) -> Result<()> {
        self.coarse = build_bound_table(&self.rs, &b_eff)?;
        self.fine = None;
        self.b_eff = b_eff;
        Ok(())
    }

    pub fn excluded(&self) -> usize {
        self.coarse.excluded().len()
    }

    fn is_digit_constant(&self, r: &[i64]) -> bool {
        r[1..].iter().all(|&x| x == 0) && self.digits.binary_search(&r[0]).is_ok()
    }

    /// Whether `r` is a vertex: a digit, or not certifiably out of bounds.
    pub fn keep(&mut self, r: &[i64]) -> Result<bool> {
        if self.is_digit_constant(r) {
            return Ok(true);
        }
        match self.coarse.within_bounds(r) {
            BoundVerdict::In => Ok(true),
            BoundVerdict::Out => Ok(false),
            BoundVerdict::Unknown => {
                if self.fine.is_none() {
                    let refined = self.refined.get_or_insert_with(|| self.rs.refine());
                    self.fine = Some(build_bound_table(refined, &self.b_eff)?);
                }
                let fine = self.fine.as_ref().expect("just built");
                Ok(fine.within_bounds(r) != BoundVerdict::Out)
            }
        }
    }
}

pub(crate) struct Limits {
    pub max_vertices: u64,
    pub max_depth: u64,
    pub nonzero_final: bool,
}

pub(crate) enum RoundEnd {
    /// Path to `0` ending with edge `digit` out of vertex `from`.
    Found { from: u32, digit: u8 },
    /// Frontier emptied (BFS) or every path up to the depth limit was tried
    /// (DFS) without reaching `0`.
    Closed,
    Stopped(InconclusiveReason),
    Overflow,
}

/// Breadth-first construction from the leading digits until `0` is reached
/// or the frontier empties; resumable in slices.
pub(crate) struct BfsRun {
    pub store: VertexStore,
    pub parent: Vec<u32>,
    pub pdigit: Vec<u8>,
    pub max_layer: u64,
    cursor: u32,
    layer_end: u32,
    r: Vec<i64>,
    s: Vec<i64>,
}

impl BfsRun {
    pub fn new(n: usize, leading: &[i64]) -> Self {
        let mut run = BfsRun {
            store: VertexStore::new(n),
            parent: Vec::new(),
            pdigit: Vec::new(),
            max_layer: 0,
            cursor: 0,
            layer_end: 0,
            r: vec![0; n],
            s: vec![0; n],
        };
        for &a in leading {
            run.r[0] = a;
            if run.store.insert(&run.r).1 {
                run.parent.push(NONE);
                run.pdigit.push(0);
            }
        }
        run.layer_end = run.store.count() as u32;
        run
    }

    pub fn advance(
        &mut self,
        m: &Modulus,
        digits: &[i64],
        limits: &Limits,
        checker: &mut Checker,
        budget: u32,
    ) -> Result<Option<RoundEnd>> {
        for _ in 0..budget {
            if self.cursor as usize == self.store.count() {
                return Ok(Some(RoundEnd::Closed));
            }
            if self.cursor == self.layer_end {
                self.max_layer += 1;
                self.layer_end = self.store.count() as u32;
            }
            if self.max_layer + 1 > limits.max_depth {
                return Ok(Some(RoundEnd::Stopped(InconclusiveReason::DepthCap)));
            }
            self.store.get_into(self.cursor, &mut self.r);
            for (di, &b) in digits.iter().enumerate() {
                if !m.step(&self.r, b, &mut self.s) {
                    return Ok(Some(RoundEnd::Overflow));
                }
                if self.s.iter().all(|&x| x == 0) {
                    if limits.nonzero_final && b == 0 {
                        continue;
                    }
                    return Ok(Some(RoundEnd::Found { from: self.cursor, digit: di as u8 }));
                }
                if self.store.find(&self.s).is_some() || !checker.keep(&self.s)? {
                    continue;
                }
                self.store.insert(&self.s);
                self.parent.push(self.cursor);
                self.pdigit.push(di as u8);
                if self.store.count() as u64 > limits.max_vertices {
                    return Ok(Some(RoundEnd::Stopped(InconclusiveReason::VertexCap)));
                }
            }
            self.cursor += 1;
        }
        Ok(None)
    }

    /// Digit word of the path ending with edge `digit` out of `from`.
    pub fn trace(&self, digits: &[i64], from: u32, digit: u8) -> Witness {
        let mut word = vec![digits[digit as usize]];
        let mut v = from;
        while self.parent[v as usize] != NONE {
            word.push(digits[self.pdigit[v as usize] as usize]);
            v = self.parent[v as usize];
        }
        word.push(self.store.get(v)[0]);
        word.reverse();
        Witness::new(word)
    }
}

/// Depth-first search for a path to `0` of length at most `limit`.
///
/// A vertex is expanded again only when reached at a strictly smaller
/// depth, so every path of length `<= limit` is eventually tried. Used when
/// `limit` is a proven lower bound on the degree: the first hit is minimal.
pub(crate) struct DfsRun {
    pub store: VertexStore,
    best: Vec<u32>,
    /// (vertex, next digit index to try, digit index that led here)
    stack: Vec<(u32, u8, u8)>,
    next_start: usize,
    limit: u32,
    found: Option<Witness>,
    r: Vec<i64>,
    s: Vec<i64>,
}

impl DfsRun {
    pub fn new(n: usize, limit: u32) -> Self {
        DfsRun {
            store: VertexStore::new(n),
            best: Vec::new(),
            stack: Vec::new(),
            next_start: 0,
            limit,
            found: None,
            r: vec![0; n],
            s: vec![0; n],
        }
    }

    pub fn take_witness(&mut self) -> Option<Witness> {
        self.found.take()
    }

    #[allow(clippy::too_many_arguments)]
    pub fn advance(
        &mut self,
        m: &Modulus,
        digits: &[i64],
        leading: &[i64],
        limits: &Limits,
        checker: &mut Checker,
        budget: u32,
    ) -> Result<Option<RoundEnd>> {
        if self.limit as u64 > limits.max_depth {
            return Ok(Some(RoundEnd::Stopped(InconclusiveReason::DepthCap)));
        }
        for _ in 0..budget {
            let Some(&(v, next, _)) = self.stack.last() else {
                let Some(&a) = leading.get(self.next_start) else {
                    return Ok(Some(RoundEnd::Closed));
                };
                self.next_start += 1;
                self.r.iter_mut().for_each(|x| *x = 0);
                self.r[0] = a;
                let (root, new) = self.store.insert(&self.r);
                if new {
                    self.best.push(0);
                } else if self.best[root as usize] == 0 {
                    continue;
                } else {
                    self.best[root as usize] = 0;
                }
                self.stack.push((root, 0, 0));
                continue;
            };
            let di = next as usize;
            let depth = self.stack.len() as u32 - 1;
            if di == digits.len() || depth == self.limit {
                self.stack.pop();
                continue;
            }
            self.stack.last_mut().expect("nonempty").1 += 1;
            self.store.get_into(v, &mut self.r);
            let b = digits[di];
            if !m.step(&self.r, b, &mut self.s) {
                return Ok(Some(RoundEnd::Overflow));
            }
            if self.s.iter().all(|&x| x == 0) {
                if limits.nonzero_final && b == 0 {
                    continue;
                }
                let mut word = Vec::with_capacity(self.stack.len() + 1);
                word.push(leading[self.next_start - 1]);
                word.extend(self.stack[1..].iter().map(|f| digits[f.2 as usize]));
                word.push(b);
                self.found = Some(Witness::new(word));
                return Ok(Some(RoundEnd::Found { from: v, digit: di as u8 }));
            }
            let child_depth = depth + 1;
            let id = match self.store.find(&self.s) {
                Some(id) if self.best[id as usize] <= child_depth => continue,
                Some(id) => {
                    self.best[id as usize] = child_depth;
                    id
                }
                None => {
                    if !checker.keep(&self.s)? {
                        continue;
                    }
                    self.best.push(child_depth);
                    let id = self.store.insert(&self.s).0;
                    if self.store.count() as u64 > limits.max_vertices {
                        return Ok(Some(RoundEnd::Stopped(InconclusiveReason::VertexCap)));
                    }
                    id
                }
            };
            self.stack.push((id, 0, di as u8));
        }
        Ok(None)
    }
}

enum Run {
    Bfs(BfsRun),
    Dfs(DfsRun),
}

enum SideEnd {
    Exists(Witness),
    None(ExhaustionCertificate),
    Inconclusive(InconclusiveReason),
    Failed(Error),
}

/// One orientation of the search: the modulus itself, or its reversal
/// (digits read from the constant term up).
struct Side<'a> {
    reciprocal: bool,
    m: Modulus,
    checker: Checker,
    digits: &'a [i64],
    leading: &'a [i64],
    limits: &'a Limits,
    minimal: bool,
    lower: u64,
    delta_step: f64,
    bound: i64,
    k: u32,
    run: Option<Run>,
    stats: SearchStats,
}

impl<'a> Side<'a> {
    #[allow(clippy::too_many_arguments)]
    fn new(
        p: &IntPolynomial,
        reciprocal: bool,
        d: &'a DigitSet,
        leading: &'a [i64],
        limits: &'a Limits,
        cfg: &SearchConfig,
        lower: u64,
        steps: u32,
    ) -> Result<Self> {
        let m = Modulus::new(p)?;
        let rs = isolate_roots(p, START_PRECISION)?;
        let checker = Checker::new(rs, b_eff(d.bound(), steps, cfg.delta_step), d.digits())?;
        let mut side = Side {
            run: None,
            reciprocal,
            m,
            checker,
            digits: d.digits(),
            leading,
            limits,
            minimal: cfg.mode != SearchMode::AnyMultiple,
            lower,
            delta_step: cfg.delta_step,
            bound: d.bound(),
            k: steps,
            stats: SearchStats { reciprocal, ..SearchStats::default() },
        };
        side.start_round();
        Ok(side)
    }

    fn start_round(&mut self) {
        self.stats.excluded_roots = self.checker.excluded();
        self.stats.final_delta = self.k as f64 * self.delta_step;
        self.run = Some(if self.minimal && self.k > 0 {
            Run::Dfs(DfsRun::new(self.m.n, self.lower.min(u32::MAX as u64) as u32))
        } else {
            Run::Bfs(BfsRun::new(self.m.n, self.leading))
        });
    }

    fn vertices(&self) -> u64 {
        match &self.run {
            Some(Run::Bfs(b)) => b.store.count() as u64,
            Some(Run::Dfs(d)) => d.store.count() as u64,
            None => 0,
        }
    }

    fn advance(&mut self, budget: u32) -> Option<SideEnd> {
        match self.try_advance(budget) {
            Ok(x) => x,
            Err(Error::PrecisionExhausted(_)) => Some(SideEnd::Inconclusive(InconclusiveReason::PrecisionCap)),
            Err(e) => Some(SideEnd::Failed(e)),
        }
    }

    fn try_advance(&mut self, budget: u32) -> Result<Option<SideEnd>> {
        let end = match self.run.as_mut().expect("round started") {
            Run::Bfs(b) => b.advance(&self.m, self.digits, self.limits, &mut self.checker, budget)?,
            Run::Dfs(d) => d.advance(&self.m, self.digits, self.leading, self.limits, &mut self.checker, budget)?,
        };
        let Some(end) = end else { return Ok(None) };
        self.stats.vertices = self.vertices();
        self.stats.vertices_total += self.stats.vertices;
        if let Some(Run::Bfs(b)) = &self.run {
            self.stats.max_layer = b.max_layer;
        }
        match end {
            RoundEnd::Found { from, digit } => {
                let w = match self.run.as_mut().expect("round started") {
                    Run::Bfs(b) => b.trace(self.digits, from, digit),
                    Run::Dfs(d) => d.take_witness().expect("found"),
                };
                self.stats.max_layer = w.degree() as u64;
                Ok(Some(SideEnd::Exists(w)))
            }
            RoundEnd::Closed if self.k == 0 => {
                let Some(Run::Bfs(b)) = self.run.take() else {
                    unreachable!("the delta = 0 round is breadth-first")
                };
                if self.stats.excluded_roots > 0 {
                    return Ok(Some(SideEnd::Inconclusive(InconclusiveReason::ExcludedRootsNontermination)));
                }
                Ok(Some(SideEnd::None(ExhaustionCertificate::new(
                    b.store,
                    self.leading.to_vec(),
                    self.digits.to_vec(),
                    self.limits.nonzero_final,
                    self.reciprocal,
                ))))
            }
            RoundEnd::Closed => {
                self.k -= 1;
                self.checker.set_bound(b_eff(self.bound, self.k, self.delta_step))?;
                self.start_round();
                Ok(None)
            }
            // Every later tightened graph contains this one and would trip the
            // same cap, so go straight to the full graph, where paths are
            // shortest.
            RoundEnd::Stopped(InconclusiveReason::VertexCap | InconclusiveReason::DepthCap) | RoundEnd::Overflow
                if self.k > 0 =>
            {
                self.k = 0;
                self.checker.set_bound(b_eff(self.bound, 0, self.delta_step))?;
                self.start_round();
                Ok(None)
            }
            RoundEnd::Stopped(reason) => Ok(Some(SideEnd::Inconclusive(self.stopped(reason)))),
            RoundEnd::Overflow if self.stats.excluded_roots > 0 => {
                Ok(Some(SideEnd::Inconclusive(InconclusiveReason::ExcludedRootsNontermination)))
            }
            RoundEnd::Overflow => Err(Error::TooLarge("residue coefficients overflow i64")),
        }
    }

    fn stopped(&self, reason: InconclusiveReason) -> InconclusiveReason {
        match reason {
            InconclusiveReason::VertexCap | InconclusiveReason::DepthCap if self.stats.excluded_roots > 0 => {
                InconclusiveReason::ExcludedRootsNontermination
            }
            r => r,
        }
    }
}

/// `B - k step`, exactly `B` at `k = 0`.
pub(crate) fn b_eff(bound: i64, k: u32, step: f64) -> Dyadic {
    if k == 0 {
        Dyadic::from_i64(bound)
    } else {
        Dyadic::from_f64(bound as f64 - k as f64 * step)
    }
}

/// Whether reversing words maps the searched words of `p` onto those of
/// its reversed modulus, i.e. first and last digits play symmetric roles.
pub(crate) fn reversible(d: &DigitSet, cfg: &SearchConfig, leading: &[i64]) -> bool {
    let symmetric = d.digits().iter().all(|&x| d.contains(-x));
    let lead_ok = if leading == [1] {
        symmetric || d.is_newman()
    } else {
        leading.iter().copied().eq(d.digits().iter().copied().filter(|&x| x != 0))
    };
    lead_ok && cfg.nonzero_final(d) == d.contains(0)
}

/// The modulus and, when words may be reversed, its reversed partner.
pub(crate) fn orientations(p: &IntPolynomial, d: &DigitSet, cfg: &SearchConfig, leading: &[i64]) -> Vec<(IntPolynomial, bool)> {
    let mut out = vec![(p.clone(), false)];
    if reversible(d, cfg, leading) {
        if let Some(q) = reversed_modulus(p) {
            out.push((q, true));
        }
    }
    out
}

pub fn find_multiple(p: &IntPolynomial, d: &DigitSet, cfg: &SearchConfig) -> Result<SearchOutcome> {
    find_multiple_with(p, d, cfg, &mut || false)
}

/// As [`find_multiple`], polling `interrupt` periodically; a `true` answer
/// ends the search as inconclusive with reason `timeout`.
///
/// When the constant term is `±1` the reversed modulus is searched too,
/// alternating fixed slices of work; the first decisive orientation wins
/// and its stats are reported, with `vertices_total` summed over both.
pub fn find_multiple_with(
    p: &IntPolynomial,
    d: &DigitSet,
    cfg: &SearchConfig,
    interrupt: &mut dyn FnMut() -> bool,
) -> Result<SearchOutcome> {
    Modulus::new(p)?;
    let steps = cfg.delta_steps()?;
    let leading = cfg.leading(d)?;
    let limits = Limits {
        max_vertices: cfg.max_vertices,
        max_depth: cfg.max_depth,
        nonzero_final: cfg.nonzero_final(d),
    };
    let lower = degree_lower_bound(p, d);

    let mut sides: Vec<Side<'_>> = Vec::new();
    let mut ended: Vec<(SideEnd, SearchStats)> = Vec::new();
    for (q, rec) in orientations(p, d, cfg, &leading) {
        match Side::new(&q, rec, d, &leading, &limits, cfg, lower, steps) {
            Ok(s) => sides.push(s),
            Err(Error::PrecisionExhausted(_)) => ended.push((
                SideEnd::Inconclusive(InconclusiveReason::PrecisionCap),
                SearchStats { reciprocal: rec, ..SearchStats::default() },
            )),
            Err(e) if !rec => return Err(e),
            Err(_) => {}
        }
    }

    let mut spent = 0u64;
    let others = |sides: &[Side<'_>], spent: u64| spent + sides.iter().map(|s| s.stats.vertices_total + s.vertices()).sum::<u64>();
    while !sides.is_empty() {
        if interrupt() {
            let mut stats = sides[0].stats.clone();
            stats.vertices = sides[0].vertices();
            stats.vertices_total = others(&sides, spent);
            return Ok(SearchOutcome::Inconclusive(InconclusiveReason::Timeout, stats));
        }
        let mut i = 0;
        while i < sides.len() {
            let Some(end) = sides[i].advance(SLICE) else {
                i += 1;
                continue;
            };
            let side = sides.remove(i);
            let mut stats = side.stats;
            match end {
                SideEnd::Exists(w) => {
                    let w = if side.reciprocal { w.reciprocal(d) } else { w };
                    assert!(verify_witness_with(p, &w, d, &leading), "search produced an invalid witness");
                    stats.vertices_total += others(&sides, spent);
                    return Ok(SearchOutcome::Exists(w, stats));
                }
                SideEnd::None(cert) => {
                    stats.vertices_total += others(&sides, spent);
                    return Ok(SearchOutcome::None(cert, stats));
                }
                other => {
                    spent += stats.vertices_total;
                    ended.push((other, stats));
                }
            }
        }
    }
    // every orientation gave up; report the direct one first
    ended.sort_by_key(|(_, s)| s.reciprocal);
    let mut first_err = None;
    for (end, mut stats) in ended {
        match end {
            SideEnd::Inconclusive(r) => {
                stats.vertices_total = spent;
                return Ok(SearchOutcome::Inconclusive(r, stats));
            }
            SideEnd::Failed(e) => {
                first_err.get_or_insert(e);
            }
            _ => unreachable!("decisive ends return early"),
        }
    }
    Err(first_err.expect("at least one orientation ran"))
}
