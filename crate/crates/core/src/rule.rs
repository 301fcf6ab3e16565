//! Local rules over finite alphabets and integer-offset neighborhoods.
//!
//! A rule stores its full lookup table, indexed by the lexicographic rank
//! of the neighbor tuple read in offset order with the smallest offset
//! most significant. Every operation here is exact: composition and
//! equality work on whole tables, so identities like `f∘f = id` are
//! theorems about the global maps, not sampled observations.

use std::fmt;

use thiserror::Error;

/// A single cell state. Alphabets are `0..m`.
pub type State = u16;

/// Rule tables larger than this are refused (2^26 entries).
pub const MAX_TABLE_LEN: usize = 1 << 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("alphabet must have at least one state")]
    EmptyAlphabet,
    #[error("alphabet size {0} exceeds the state type")]
    AlphabetTooLarge(usize),
    #[error("offsets must be strictly increasing, got {0:?}")]
    OffsetsNotSorted(Vec<i32>),
    #[error("table has {got} entries, neighborhood requires {want}")]
    TableLength { got: usize, want: usize },
    #[error("table entry {entry} out of range for alphabet of size {alphabet}")]
    StateOutOfRange { entry: State, alphabet: usize },
    #[error("table would need {0} entries, over the limit of {MAX_TABLE_LEN}")]
    TableTooLarge(u128),
    #[error("configuration must have at least one cell")]
    EmptyConfig,
    #[error("cell state {entry} out of range for alphabet of size {alphabet}")]
    CellOutOfRange { entry: State, alphabet: usize },
}

/// The state set `0..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    size: usize,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self, RuleError> {
        if size == 0 {
            return Err(RuleError::EmptyAlphabet);
        }
        if size > State::MAX as usize + 1 {
            return Err(RuleError::AlphabetTooLarge(size));
        }
        Ok(Alphabet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn states(&self) -> impl Iterator<Item = State> {
        0..self.size as State
    }

    pub fn contains(&self, s: State) -> bool {
        (s as usize) < self.size
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.size)
    }
}

/// A strictly increasing list of integer offsets. Empty only for
/// constant rules.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Neighborhood {
    offsets: Vec<i32>,
}

impl Neighborhood {
    pub fn new(offsets: Vec<i32>) -> Result<Self, RuleError> {
        if !offsets.windows(2).all(|w| w[0] < w[1]) {
            return Err(RuleError::OffsetsNotSorted(offsets));
        }
        Ok(Neighborhood { offsets })
    }

    pub fn offsets(&self) -> &[i32] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn min(&self) -> Option<i32> {
        self.offsets.first().copied()
    }

    pub fn max(&self) -> Option<i32> {
        self.offsets.last().copied()
    }

    /// `max − min`; zero for empty or singleton neighborhoods.
    pub fn span(&self) -> u32 {
        match (self.min(), self.max()) {
            (Some(a), Some(b)) => (b - a) as u32,
            _ => 0,
        }
    }

    /// Sorted union of the two offset sets.
    pub fn union(&self, other: &Neighborhood) -> Neighborhood {
        let mut v: Vec<i32> = self
            .offsets
            .iter()
            .chain(other.offsets.iter())
            .copied()
            .collect();
        v.sort_unstable();
        v.dedup();
        Neighborhood { offsets: v }
    }

    /// Sorted set `{a + b}` over both offset lists.
    pub fn sumset(&self, other: &Neighborhood) -> Neighborhood {
        let mut v: Vec<i32> = self
            .offsets
            .iter()
            .flat_map(|a| other.offsets.iter().map(move |b| a + b))
            .collect();
        v.sort_unstable();
        v.dedup();
        Neighborhood { offsets: v }
    }

    pub fn contiguous(lo: i32, hi: i32) -> Neighborhood {
        Neighborhood {
            offsets: (lo..=hi).collect(),
        }
    }
}

pub(crate) fn table_len(m: usize, positions: usize) -> Result<usize, RuleError> {
    let mut len: u128 = 1;
    for _ in 0..positions {
        len = len.saturating_mul(m as u128);
        if len > MAX_TABLE_LEN as u128 {
            return Err(RuleError::TableTooLarge(len));
        }
    }
    Ok(len as usize)
}

/// Lexicographic rank of `word` in base `m`, first symbol most significant.
pub(crate) fn rank(word: &[State], m: usize) -> usize {
    word.iter().fold(0usize, |acc, &s| acc * m + s as usize)
}

/// Visits every length-`len` word over `0..m` in lexicographic order.
/// The visitor returns `false` to stop early; the return value is
/// `true` iff the iteration completed.
pub(crate) fn each_word(m: usize, len: usize, mut visit: impl FnMut(&[State]) -> bool) -> bool {
    let mut digits = vec![0 as State; len];
    loop {
        if !visit(&digits) {
            return false;
        }
        let mut j = len;
        loop {
            if j == 0 {
                return true;
            }
            j -= 1;
            digits[j] += 1;
            if (digits[j] as usize) < m {
                break;
            }
            digits[j] = 0;
        }
    }
}

/// For each offset of `sub`, its index within `all`. `sub` must be a
/// subset of `all`; both sorted.
pub(crate) fn gather_positions(sub: &[i32], all: &[i32]) -> Vec<usize> {
    sub.iter()
        .map(|o| all.binary_search(o).expect("offset subset"))
        .collect()
}

/// A sliding block code between (possibly different) finite alphabets.
///
/// This is the general form of a local map; [`LocalRule1D`] is the
/// endomorphic case. Block codes appear as conjugacies, recodings and
/// projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCode {
    input: Alphabet,
    output: Alphabet,
    neighborhood: Neighborhood,
    table: Vec<State>,
}

impl BlockCode {
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        neighborhood: Neighborhood,
        table: Vec<State>,
    ) -> Result<Self, RuleError> {
        let want = table_len(input.size(), neighborhood.len())?;
        if table.len() != want {
            return Err(RuleError::TableLength {
                got: table.len(),
                want,
            });
        }
        if let Some(&bad) = table.iter().find(|&&s| !output.contains(s)) {
            return Err(RuleError::StateOutOfRange {
                entry: bad,
                alphabet: output.size(),
            });
        }
        Ok(BlockCode {
            input,
            output,
            neighborhood,
            table,
        })
    }

    /// Builds the table by evaluating `f` on every neighbor tuple.
    pub fn from_fn(
        input: Alphabet,
        output: Alphabet,
        neighborhood: Neighborhood,
        mut f: impl FnMut(&[State]) -> State,
    ) -> Result<Self, RuleError> {
        let len = table_len(input.size(), neighborhood.len())?;
        let mut table = Vec::with_capacity(len);
        each_word(input.size(), neighborhood.len(), |w| {
            table.push(f(w));
            true
        });
        BlockCode::new(input, output, neighborhood, table)
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let table = alphabet.states().collect();
        BlockCode {
            input: alphabet,
            output: alphabet,
            neighborhood: Neighborhood::new(vec![0]).unwrap(),
            table,
        }
    }

    pub fn input(&self) -> Alphabet {
        self.input
    }

    pub fn output(&self) -> Alphabet {
        self.output
    }

    pub fn neighborhood(&self) -> &Neighborhood {
        &self.neighborhood
    }

    pub fn table(&self) -> &[State] {
        &self.table
    }

    /// Output for a neighbor tuple given in offset order.
    pub fn eval(&self, word: &[State]) -> State {
        debug_assert_eq!(word.len(), self.neighborhood.len());
        self.table[rank(word, self.input.size())]
    }

    fn eval_gathered(&self, word: &[State], gather: &[usize]) -> State {
        let m = self.input.size();
        let idx = gather
            .iter()
            .fold(0usize, |acc, &p| acc * m + word[p] as usize);
        self.table[idx]
    }

    /// The code of `self ∘ inner` (`inner` applied first). The result's
    /// neighborhood is the sumset of the two neighborhoods.
    pub fn compose(&self, inner: &BlockCode) -> Result<BlockCode, RuleError> {
        if inner.output != self.input {
            return Err(RuleError::AlphabetMismatch(
                inner.output.size(),
                self.input.size(),
            ));
        }
        let domain = self.neighborhood.sumset(&inner.neighborhood);
        let len = table_len(inner.input.size(), domain.len())?;
        // For each outer offset a, where a + b lands inside the domain.
        let gathers: Vec<Vec<usize>> = self
            .neighborhood
            .offsets()
            .iter()
            .map(|a| {
                let shifted: Vec<i32> =
                    inner.neighborhood.offsets().iter().map(|b| a + b).collect();
                gather_positions(&shifted, domain.offsets())
            })
            .collect();
        let mut table = Vec::with_capacity(len);
        let mut outer_word = vec![0 as State; self.neighborhood.len()];
        each_word(inner.input.size(), domain.len(), |w| {
            for (slot, gather) in outer_word.iter_mut().zip(&gathers) {
                *slot = inner.eval_gathered(w, gather);
            }
            table.push(self.eval(&outer_word));
            true
        });
        BlockCode::new(inner.input, self.output, domain, table)
    }

    /// Whether the two codes define the same global map, decided by
    /// comparing tables extended to the union neighborhood.
    pub fn equal(&self, other: &BlockCode) -> Result<bool, RuleError> {
        if self.input != other.input {
            return Err(RuleError::AlphabetMismatch(
                self.input.size(),
                other.input.size(),
            ));
        }
        if self.output != other.output {
            return Err(RuleError::AlphabetMismatch(
                self.output.size(),
                other.output.size(),
            ));
        }
        let union = self.neighborhood.union(&other.neighborhood);
        table_len(self.input.size(), union.len())?;
        let ga = gather_positions(self.neighborhood.offsets(), union.offsets());
        let gb = gather_positions(other.neighborhood.offsets(), union.offsets());
        Ok(each_word(self.input.size(), union.len(), |w| {
            self.eval_gathered(w, &ga) == other.eval_gathered(w, &gb)
        }))
    }

    /// Whether varying only the `j`-th neighborhood position can change
    /// the output.
    fn essential(&self, j: usize) -> bool {
        let m = self.input.size();
        if m == 1 {
            return false;
        }
        let k = self.neighborhood.len();
        let stride = m.pow((k - 1 - j) as u32);
        let len = self.table.len();
        let mut idx = 0;
        while idx < len {
            if (idx / stride).is_multiple_of(m) {
                let base = self.table[idx];
                for v in 1..m {
                    if self.table[idx + v * stride] != base {
                        return true;
                    }
                }
            }
            idx += 1;
        }
        false
    }

    fn project_out(&self, j: usize) -> BlockCode {
        let m = self.input.size();
        let k = self.neighborhood.len();
        let mut offsets = self.neighborhood.offsets().to_vec();
        offsets.remove(j);
        let mut table = Vec::with_capacity(self.table.len() / m);
        let mut full = vec![0 as State; k];
        each_word(m, k - 1, |w| {
            full[..j].copy_from_slice(&w[..j]);
            full[j] = 0;
            full[j + 1..].copy_from_slice(&w[j..]);
            table.push(self.eval(&full));
            true
        });
        BlockCode {
            input: self.input,
            output: self.output,
            neighborhood: Neighborhood { offsets },
            table,
        }
    }

    /// The unique equivalent code in which every offset is essential:
    /// removing any remaining offset would change the global map.
    pub fn minimize(&self) -> BlockCode {
        let mut cur = self.clone();
        'outer: loop {
            for j in 0..cur.neighborhood.len() {
                if !cur.essential(j) {
                    cur = cur.project_out(j);
                    continue 'outer;
                }
            }
            return cur;
        }
    }
}

/// A cellular automaton local rule: a block code whose input and output
/// alphabets coincide. The universal currency of this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRule1D {
    code: BlockCode,
}

impl LocalRule1D {
    pub fn new(
        alphabet: Alphabet,
        neighborhood: Neighborhood,
        table: Vec<State>,
    ) -> Result<Self, RuleError> {
        Ok(LocalRule1D {
            code: BlockCode::new(alphabet, alphabet, neighborhood, table)?,
        })
    }

    pub fn from_fn(
        alphabet: Alphabet,
        neighborhood: Neighborhood,
        f: impl FnMut(&[State]) -> State,
    ) -> Result<Self, RuleError> {
        Ok(LocalRule1D {
            code: BlockCode::from_fn(alphabet, alphabet, neighborhood, f)?,
        })
    }

    /// The identity rule with neighborhood `{0}`.
    pub fn identity(alphabet: Alphabet) -> Self {
        LocalRule1D {
            code: BlockCode::identity(alphabet),
        }
    }

    /// Wraps an endomorphic block code; errors on mismatched alphabets.
    pub fn from_code(code: BlockCode) -> Result<Self, RuleError> {
        if code.input() != code.output() {
            return Err(RuleError::AlphabetMismatch(
                code.input().size(),
                code.output().size(),
            ));
        }
        Ok(LocalRule1D { code })
    }

    pub fn as_code(&self) -> &BlockCode {
        &self.code
    }

    pub fn alphabet(&self) -> Alphabet {
        self.code.input()
    }

    pub fn neighborhood(&self) -> &Neighborhood {
        self.code.neighborhood()
    }

    pub fn table(&self) -> &[State] {
        self.code.table()
    }

    pub fn eval(&self, word: &[State]) -> State {
        self.code.eval(word)
    }

    /// The rule of `self ∘ other` (`other` applied first).
    pub fn compose(&self, other: &LocalRule1D) -> Result<LocalRule1D, RuleError> {
        Ok(LocalRule1D {
            code: self.code.compose(&other.code)?,
        })
    }

    /// Exact global-map equality via union-neighborhood table comparison.
    pub fn equal(&self, other: &LocalRule1D) -> Result<bool, RuleError> {
        self.code.equal(&other.code)
    }

    pub fn is_identity(&self) -> Result<bool, RuleError> {
        self.equal(&LocalRule1D::identity(self.alphabet()))
    }

    /// Idempotent: returns the equivalent rule with the smallest
    /// neighborhood.
    pub fn minimize(&self) -> LocalRule1D {
        LocalRule1D {
            code: self.code.minimize(),
        }
    }

    /// `self^e` for `e ≥ 0`, minimized after each composition step.
    pub fn power(&self, e: u32) -> Result<LocalRule1D, RuleError> {
        let mut acc = LocalRule1D::identity(self.alphabet());
        for _ in 0..e {
            acc = acc.compose(self)?.minimize();
        }
        Ok(acc)
    }

    /// Searches for an inverse rule with neighborhood span at most
    /// `max_span`. `None` does not certify irreversibility, only that no
    /// inverse exists within the bound.
    ///
    /// For each candidate window the table of the unknown rule is pinned
    /// entry by entry from the constraint `g∘f = id`: every word over the
    /// composite neighborhood determines one entry of `g`, and two words
    /// demanding different values for the same entry prune the window.
    /// Surviving candidates are re-verified in both directions before
    /// being returned (minimized).
    pub fn find_inverse(&self, max_span: u32) -> Option<LocalRule1D> {
        let f = self.minimize();
        let m = f.alphabet().size();
        if m == 1 {
            return Some(LocalRule1D::identity(f.alphabet()));
        }
        let (lf, rf) = match (f.neighborhood().min(), f.neighborhood().max()) {
            (Some(a), Some(b)) => (a, b),
            // Constant rule on m ≥ 2: never injective.
            _ => return None,
        };
        let id = LocalRule1D::identity(f.alphabet());
        for span in 0..=max_span as i32 {
            for lo in (-span - rf)..=(-lf) {
                let Some(g) = solve_inverse_window(&f, lo, span) else {
                    continue;
                };
                let g = g.minimize();
                let ok = g.compose(&f).and_then(|gf| gf.equal(&id)).unwrap_or(false)
                    && f.compose(&g).and_then(|fg| fg.equal(&id)).unwrap_or(false);
                if ok {
                    return Some(g);
                }
            }
        }
        None
    }
}

/// Constraint solve for `g∘f = id` with `g` on the window `lo..=lo+span`.
/// Returns a candidate (unpinned entries zero-filled) or `None` on
/// conflict; the caller re-verifies.
fn solve_inverse_window(f: &LocalRule1D, lo: i32, span: i32) -> Option<LocalRule1D> {
    let m = f.alphabet().size();
    let g_offsets = Neighborhood::contiguous(lo, lo + span);
    let (lf, rf) = (
        f.neighborhood().min().unwrap(),
        f.neighborhood().max().unwrap(),
    );
    let domain = Neighborhood::contiguous(lo + lf, lo + span + rf);
    let dk = domain.len();
    table_len(m, dk).ok()?;
    let g_len = table_len(m, g_offsets.len()).ok()?;
    let center = (-(lo + lf)) as usize;
    let gathers: Vec<Vec<usize>> = g_offsets
        .offsets()
        .iter()
        .map(|a| {
            let shifted: Vec<i32> = f.neighborhood().offsets().iter().map(|b| a + b).collect();
            gather_positions(&shifted, domain.offsets())
        })
        .collect();
    let mut g_table: Vec<Option<State>> = vec![None; g_len];
    let mut inner = vec![0 as State; g_offsets.len()];
    let complete = each_word(m, dk, |w| {
        for (slot, gather) in inner.iter_mut().zip(&gathers) {
            *slot = f.code.eval_gathered(w, gather);
        }
        let idx = rank(&inner, m);
        let want = w[center];
        match g_table[idx] {
            None => {
                g_table[idx] = Some(want);
                true
            }
            Some(v) => v == want,
        }
    });
    if !complete {
        return None;
    }
    let table: Vec<State> = g_table.into_iter().map(|e| e.unwrap_or(0)).collect();
    LocalRule1D::new(f.alphabet(), g_offsets, table).ok()
}
