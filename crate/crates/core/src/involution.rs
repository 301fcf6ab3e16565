//! Involution detection, enumeration and construction.
//!
//! The square test is exact table comparison. Enumeration backtracks over
//! table entries with two pruning constraints: the map on constant words
//! must itself be an involutive permutation of the state set (those
//! entries are branched on first), and every word whose inner lookups are
//! all assigned immediately pins or checks the squared rule's output
//! against the word's center cell.

use std::sync::Arc;

use rayon::prelude::*;

use crate::perm::{involutive_perms, Perm};
use crate::rule::{
    each_word, rank, table_len, Alphabet, LocalRule1D, Neighborhood, RuleError, State,
};

/// Exact square test: `f∘f` compared entrywise against the identity.
pub fn is_involution(f: &LocalRule1D) -> bool {
    let sq = f
        .compose(f)
        .expect("involution square exceeds the table size limit");
    sq.is_identity().expect("same alphabet")
}

/// A named acceptance predicate evaluated on fully assigned candidates.
#[derive(Clone)]
pub struct Hook {
    pub name: String,
    pub pred: Arc<dyn Fn(&LocalRule1D) -> bool + Send + Sync>,
}

impl std::fmt::Debug for Hook {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hook").field("name", &self.name).finish()
    }
}

/// A rule space to enumerate: all tables over the given alphabet and
/// neighborhood.
#[derive(Debug, Clone)]
pub struct EnumerationSpec {
    pub alphabet: Alphabet,
    pub neighborhood: Neighborhood,
    pub hooks: Vec<Hook>,
    /// Decision-node budget, split evenly over the diagonal branches.
    pub budget: u64,
}

impl EnumerationSpec {
    pub fn new(alphabet: Alphabet, neighborhood: Neighborhood, budget: u64) -> Self {
        assert!(budget > 0, "budget must be positive");
        EnumerationSpec {
            alphabet,
            neighborhood,
            hooks: Vec::new(),
            budget,
        }
    }

    pub fn with_hook(
        mut self,
        name: &str,
        pred: impl Fn(&LocalRule1D) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.hooks.push(Hook {
            name: name.to_string(),
            pred: Arc::new(pred),
        });
        self
    }
}

/// Outcome of a bounded enumeration run.
#[derive(Debug, Clone)]
pub struct SearchReport {
    /// Verified involutions (tables over the spec's neighborhood) that
    /// passed every hook, in deterministic order.
    pub found: Vec<LocalRule1D>,
    /// Decision nodes explored.
    pub nodes: u64,
    /// Assignments abandoned because a squared-word check failed.
    pub word_conflicts: u64,
    /// Complete involutions rejected by a hook.
    pub hook_rejections: u64,
    /// Whether the whole space was covered within budget.
    pub exhausted: bool,
}

struct Word {
    inner: Vec<u32>,
    center: State,
}

struct Searcher<'a> {
    m: usize,
    table: Vec<Option<State>>,
    words: &'a [Word],
    /// entry -> word ids, one per occurrence of the entry as an inner lookup.
    watchers: &'a [Vec<u32>],
    remaining: Vec<u32>,
    trail: Vec<u32>,
    inner_buf: Vec<State>,
    nodes: u64,
    word_conflicts: u64,
    budget: u64,
    budget_hit: bool,
}

impl<'a> Searcher<'a> {
    /// Assigns `entry = value` and runs constraint propagation. On
    /// conflict returns `false`; the caller must rewind with `undo_to`.
    fn assign(&mut self, entry: u32, value: State) -> bool {
        if let Some(v) = self.table[entry as usize] {
            return v == value;
        }
        let mut queue = vec![(entry, value)];
        while let Some((e, v)) = queue.pop() {
            match self.table[e as usize] {
                Some(old) => {
                    if old != v {
                        self.word_conflicts += 1;
                        return false;
                    }
                    continue;
                }
                None => {
                    self.table[e as usize] = Some(v);
                    self.trail.push(e);
                }
            }
            // Decrement every watcher of `e` even past a conflict, so the
            // counters stay in step with the trail for undo.
            let mut ok = true;
            for &w in &self.watchers[e as usize] {
                self.remaining[w as usize] -= 1;
                if !ok || self.remaining[w as usize] != 0 {
                    continue;
                }
                let word = &self.words[w as usize];
                for (slot, &idx) in self.inner_buf.iter_mut().zip(&word.inner) {
                    *slot = self.table[idx as usize].expect("inner assigned");
                }
                let outer = rank(&self.inner_buf[..word.inner.len()], self.m) as u32;
                match self.table[outer as usize] {
                    Some(got) => {
                        if got != word.center {
                            self.word_conflicts += 1;
                            ok = false;
                        }
                    }
                    None => queue.push((outer, word.center)),
                }
            }
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().unwrap();
            self.table[e as usize] = None;
            for &w in &self.watchers[e as usize] {
                self.remaining[w as usize] += 1;
            }
        }
    }

    fn dfs(&mut self, from: usize, emit: &mut impl FnMut(&[Option<State>])) {
        if self.budget_hit {
            return;
        }
        let Some(e) = (from..self.table.len()).find(|&i| self.table[i].is_none()) else {
            emit(&self.table);
            return;
        };
        for v in 0..self.m as State {
            if self.nodes >= self.budget {
                self.budget_hit = true;
                return;
            }
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign(e as u32, v) {
                self.dfs(e + 1, emit);
            }
            self.undo_to(mark);
            if self.budget_hit {
                return;
            }
        }
    }
}

/// Enumerates every involution in the rule space, pruned but complete:
/// when the report says `exhausted`, `found` is exactly the set of
/// involutions over the spec's neighborhood that satisfy all hooks.
pub fn enumerate_involutions(spec: &EnumerationSpec) -> Result<SearchReport, RuleError> {
    let m = spec.alphabet.size();
    let k = spec.neighborhood.len();
    let len = table_len(m, k)?;

    if k == 0 {
        // A constant rule is an involution only on the one-state alphabet.
        let rule = LocalRule1D::new(spec.alphabet, spec.neighborhood.clone(), vec![0; len])?;
        let mut found = Vec::new();
        let mut hook_rejections = 0;
        if m == 1 && is_involution(&rule) {
            if spec.hooks.iter().all(|h| (h.pred)(&rule)) {
                found.push(rule);
            } else {
                hook_rejections = 1;
            }
        }
        return Ok(SearchReport {
            found,
            nodes: 1,
            word_conflicts: 0,
            hook_rejections,
            exhausted: true,
        });
    }

    // Words over (N + N) ∪ {0}; each encodes one output of the squared
    // rule that must equal the word's center cell.
    let sumset = spec.neighborhood.sumset(&spec.neighborhood);
    let zero = Neighborhood::new(vec![0]).expect("singleton");
    let positions = sumset.union(&zero);
    table_len(m, positions.len())?;
    let center_pos = positions
        .offsets()
        .binary_search(&0)
        .expect("center included");
    let gathers: Vec<Vec<usize>> = spec
        .neighborhood
        .offsets()
        .iter()
        .map(|a| {
            let shifted: Vec<i32> = spec.neighborhood.offsets().iter().map(|b| a + b).collect();
            crate::rule::gather_positions(&shifted, positions.offsets())
        })
        .collect();
    let mut words = Vec::new();
    each_word(m, positions.len(), |w| {
        let inner: Vec<u32> = gathers
            .iter()
            .map(|g| g.iter().fold(0usize, |acc, &p| acc * m + w[p] as usize) as u32)
            .collect();
        words.push(Word {
            inner,
            center: w[center_pos],
        });
        true
    });
    let mut watchers: Vec<Vec<u32>> = vec![Vec::new(); len];
    for (wi, word) in words.iter().enumerate() {
        for &e in &word.inner {
            watchers[e as usize].push(wi as u32);
        }
    }
    let diag_entries: Vec<u32> = spec
        .alphabet
        .states()
        .map(|a| rank(&vec![a; k], m) as u32)
        .collect();

    let diagonals = involutive_perms(m);
    let per_branch = (spec.budget / diagonals.len() as u64).max(1);

    struct Branch {
        found: Vec<Vec<State>>,
        nodes: u64,
        word_conflicts: u64,
        complete: bool,
    }

    let branches: Vec<Branch> = diagonals
        .par_iter()
        .map(|d| {
            let mut s = Searcher {
                m,
                table: vec![None; len],
                words: &words,
                watchers: &watchers,
                remaining: words.iter().map(|w| w.inner.len() as u32).collect(),
                trail: Vec::new(),
                inner_buf: vec![0; k],
                nodes: 0,
                word_conflicts: 0,
                budget: per_branch,
                budget_hit: false,
            };
            let mut found = Vec::new();
            let seeded = spec
                .alphabet
                .states()
                .all(|a| s.assign(diag_entries[a as usize], d.apply(a as usize) as State));
            if seeded {
                s.dfs(0, &mut |table| {
                    found.push(table.iter().map(|e| e.unwrap()).collect::<Vec<State>>());
                });
            }
            Branch {
                found,
                nodes: s.nodes,
                word_conflicts: s.word_conflicts,
                complete: !s.budget_hit,
            }
        })
        .collect();

    let mut report = SearchReport {
        found: Vec::new(),
        nodes: 0,
        word_conflicts: 0,
        hook_rejections: 0,
        exhausted: true,
    };
    for b in branches {
        report.nodes += b.nodes;
        report.word_conflicts += b.word_conflicts;
        report.exhausted &= b.complete;
        for table in b.found {
            let rule = LocalRule1D::new(spec.alphabet, spec.neighborhood.clone(), table)?;
            // Full verification before inclusion, independent of the
            // incremental pruning path.
            assert!(is_involution(&rule), "enumerator emitted a non-involution");
            if spec.hooks.iter().all(|h| (h.pred)(&rule)) {
                report.found.push(rule);
            } else {
                report.hook_rejections += 1;
            }
        }
    }
    report.found.sort_by(|a, b| a.table().cmp(b.table()));
    Ok(report)
}

/// Coefficients `a_{-r}, …, a_r` of a mod-`m` additive rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveCoefficients {
    pub modulus: usize,
    pub radius: u32,
    /// Length `2r+1`, entries in `0..m`, index 0 holding `a_{-r}`.
    pub coeffs: Vec<State>,
}

impl AdditiveCoefficients {
    pub fn new(modulus: usize, radius: u32, coeffs: Vec<State>) -> Option<Self> {
        (coeffs.len() == 2 * radius as usize + 1 && coeffs.iter().all(|&c| (c as usize) < modulus))
            .then_some(AdditiveCoefficients {
                modulus,
                radius,
                coeffs,
            })
    }

    fn coeff(&self, i: i32) -> usize {
        self.coeffs[(i + self.radius as i32) as usize] as usize
    }

    /// Whether `a ∗ a ≡ δ (mod m)`: the convolution square has
    /// coefficient 1 at offset 0 and 0 elsewhere. This is exactly the
    /// condition for the additive rule to be an involution.
    pub fn convolution_is_delta(&self) -> bool {
        let r = self.radius as i32;
        let m = self.modulus;
        for j in -2 * r..=2 * r {
            let lo = -r + j.max(0);
            let hi = r + j.min(0);
            let sum: usize = (lo..=hi).map(|i| self.coeff(i) * self.coeff(j - i)).sum();
            let want = usize::from(j == 0);
            if sum % m != want {
                return false;
            }
        }
        true
    }
}

/// The local rule `x ↦ Σ a_i x_i mod m` over `{-r, …, r}`.
pub fn additive_rule(c: &AdditiveCoefficients) -> Result<LocalRule1D, RuleError> {
    let alphabet = Alphabet::new(c.modulus)?;
    let r = c.radius as i32;
    let neighborhood = Neighborhood::contiguous(-r, r);
    LocalRule1D::from_fn(alphabet, neighborhood, |w| {
        let s: usize = w
            .iter()
            .zip(&c.coeffs)
            .map(|(&x, &a)| x as usize * a as usize)
            .sum();
        (s % c.modulus) as State
    })
}

/// All coefficient vectors of radius `r` mod `m` whose additive rule is
/// an involution, found by the convolution condition and cross-checked
/// against the direct square test.
pub fn solve_additive_involutions(
    m: usize,
    r: u32,
) -> Result<Vec<AdditiveCoefficients>, RuleError> {
    let alphabet = Alphabet::new(m)?;
    let len = 2 * r as usize + 1;
    table_len(m, len)?;
    let mut out = Vec::new();
    each_word(alphabet.size(), len, |w| {
        let c = AdditiveCoefficients::new(m, r, w.to_vec()).expect("in-range word");
        if c.convolution_is_delta() {
            let rule = additive_rule(&c).expect("coefficients validated");
            assert!(
                is_involution(&rule),
                "convolution condition disagrees with the square test for {:?}",
                c
            );
            out.push(c);
        }
        true
    });
    Ok(out)
}

fn bijective_in_coordinate(rule: &LocalRule1D, j: usize) -> bool {
    let m = rule.alphabet().size();
    let k = rule.neighborhood().len();
    let stride = m.pow((k - 1 - j) as u32);
    let table = rule.table();
    let mut seen = vec![false; m];
    let mut idx = 0;
    while idx < table.len() {
        if (idx / stride).is_multiple_of(m) {
            seen.iter_mut().for_each(|s| *s = false);
            for v in 0..m {
                let o = table[idx + v * stride] as usize;
                if seen[o] {
                    return false;
                }
                seen[o] = true;
            }
        }
        idx += 1;
    }
    true
}

/// Bijective in the leftmost neighbor once all others are fixed,
/// evaluated on the minimized rule so dummy offsets cannot interfere.
pub fn is_left_permutative(rule: &LocalRule1D) -> bool {
    let min = rule.minimize();
    if min.neighborhood().is_empty() {
        return min.alphabet().size() == 1;
    }
    bijective_in_coordinate(&min, 0)
}

/// Mirror image of [`is_left_permutative`].
pub fn is_right_permutative(rule: &LocalRule1D) -> bool {
    let min = rule.minimize();
    if min.neighborhood().is_empty() {
        return min.alphabet().size() == 1;
    }
    bijective_in_coordinate(&min, min.neighborhood().len() - 1)
}

/// Whether the minimized neighborhood contains no negative offsets.
pub fn is_one_way_right(rule: &LocalRule1D) -> bool {
    rule.minimize()
        .neighborhood()
        .min()
        .is_none_or(|lo| lo >= 0)
}

/// Whether the minimized neighborhood contains no positive offsets.
pub fn is_one_way_left(rule: &LocalRule1D) -> bool {
    rule.minimize()
        .neighborhood()
        .max()
        .is_none_or(|hi| hi <= 0)
}

/// Test-support oracle: filters every table over the given space through
/// the direct square test. Exponential; only for cross-checking the
/// pruned enumerator on small spaces.
pub fn brute_force_involutions(
    alphabet: Alphabet,
    neighborhood: &Neighborhood,
) -> Result<Vec<LocalRule1D>, RuleError> {
    let m = alphabet.size();
    let len = table_len(m, neighborhood.len())?;
    let candidates = table_len(m, len)?;
    let mut out = Vec::new();
    for idx in 0..candidates {
        let mut v = idx;
        let mut table = vec![0 as State; len];
        for slot in table.iter_mut().rev() {
            *slot = (v % m) as State;
            v /= m;
        }
        let rule = LocalRule1D::new(alphabet, neighborhood.clone(), table)?;
        if is_involution(&rule) {
            out.push(rule);
        }
    }
    out.sort_by(|a, b| a.table().cmp(b.table()));
    Ok(out)
}

/// Convenience over [`Perm`]: the radius-0 rule of a state permutation.
pub fn permutation_rule(perm: &Perm) -> Result<LocalRule1D, RuleError> {
    let alphabet = Alphabet::new(perm.len())?;
    let table = perm.as_slice().iter().map(|&v| v as State).collect();
    LocalRule1D::new(alphabet, Neighborhood::new(vec![0])?, table)
}
