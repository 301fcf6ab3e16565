//! Spatially periodic configurations: the finite stand-in for the full
//! shift. Orbits and exact order computation live here; identity and
//! equality of rules are always settled on tables, never on these.

use std::collections::HashMap;

use thiserror::Error;

use crate::perm::Perm;
use crate::rule::{rank, Alphabet, BlockCode, LocalRule1D, RuleError, State};

/// A cyclic configuration of `n ≥ 1` cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicConfig {
    alphabet: Alphabet,
    cells: Vec<State>,
}

impl CyclicConfig {
    pub fn new(alphabet: Alphabet, cells: Vec<State>) -> Result<Self, RuleError> {
        if cells.is_empty() {
            return Err(RuleError::EmptyConfig);
        }
        if let Some(&bad) = cells.iter().find(|&&s| !alphabet.contains(s)) {
            return Err(RuleError::CellOutOfRange {
                entry: bad,
                alphabet: alphabet.size(),
            });
        }
        Ok(CyclicConfig { alphabet, cells })
    }

    pub fn uniform(alphabet: Alphabet, state: State, n: usize) -> Result<Self, RuleError> {
        CyclicConfig::new(alphabet, vec![state; n])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cells(&self) -> &[State] {
        &self.cells
    }

    pub fn get(&self, i: i64) -> State {
        let n = self.cells.len() as i64;
        self.cells[i.rem_euclid(n) as usize]
    }

    /// The configuration rotated so that `rotated[i] = self[i + k]`.
    pub fn rotate(&self, k: i64) -> CyclicConfig {
        let n = self.cells.len() as i64;
        let cells = (0..n).map(|i| self.get(i + k)).collect();
        CyclicConfig {
            alphabet: self.alphabet,
            cells,
        }
    }
}

/// One synchronous application of `rule` to a cyclic configuration.
pub fn apply(rule: &LocalRule1D, c: &CyclicConfig) -> Result<CyclicConfig, RuleError> {
    if rule.alphabet() != c.alphabet() {
        return Err(RuleError::AlphabetMismatch(
            rule.alphabet().size(),
            c.alphabet().size(),
        ));
    }
    Ok(apply_code_unchecked(rule.as_code(), c))
}

/// Applies a block code cellwise; the output configuration lives over the
/// code's output alphabet.
pub fn apply_code(code: &BlockCode, c: &CyclicConfig) -> Result<CyclicConfig, RuleError> {
    if code.input() != c.alphabet() {
        return Err(RuleError::AlphabetMismatch(
            code.input().size(),
            c.alphabet().size(),
        ));
    }
    Ok(apply_code_unchecked(code, c))
}

fn apply_code_unchecked(code: &BlockCode, c: &CyclicConfig) -> CyclicConfig {
    let n = c.len() as i64;
    let mut word = vec![0 as State; code.neighborhood().len()];
    let cells = (0..n)
        .map(|i| {
            for (slot, &o) in word.iter_mut().zip(code.neighborhood().offsets()) {
                *slot = c.get(i + o as i64);
            }
            code.eval(&word)
        })
        .collect();
    CyclicConfig {
        alphabet: code.output(),
        cells,
    }
}

/// A forward orbit `c_0, f(c_0), …, f^t(c_0)` with the first detected
/// repeat, if any, recorded as `(transient, period)`.
#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub configs: Vec<CyclicConfig>,
    pub repeat: Option<(usize, usize)>,
}

pub fn orbit(rule: &LocalRule1D, c0: &CyclicConfig, t: usize) -> Result<OrbitRecord, RuleError> {
    let mut configs = Vec::with_capacity(t + 1);
    let mut seen: HashMap<CyclicConfig, usize> = HashMap::new();
    let mut repeat = None;
    let mut cur = c0.clone();
    for step in 0..=t {
        if repeat.is_none() {
            match seen.get(&cur) {
                Some(&first) => repeat = Some((first, step - first)),
                None => {
                    seen.insert(cur.clone(), step);
                }
            }
        }
        configs.push(cur.clone());
        if step < t {
            cur = apply(rule, &cur)?;
        }
    }
    Ok(OrbitRecord { configs, repeat })
}

/// Hard cap on `m^n` for [`order_on_cycle`].
pub const MAX_CYCLE_SPACE: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleOrder {
    /// Least `p` with `rule^p = id` on all length-`n` cyclic configs.
    Exact(u128),
    /// The order exceeds the requested bound.
    ExceedsBound,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("rule does not act bijectively on cyclic configurations of length {n}")]
    NonBijective { n: usize },
    #[error("state space {space} exceeds the limit of {MAX_CYCLE_SPACE} configurations")]
    SpaceTooLarge { space: u128 },
    #[error(transparent)]
    Rule(#[from] RuleError),
}

/// Order of the permutation induced by `rule` on all `m^n` cyclic
/// configurations of length `n`, as the lcm of its cycle lengths.
pub fn order_on_cycle(rule: &LocalRule1D, n: usize, bound: u128) -> Result<CycleOrder, OrderError> {
    let perm = cycle_permutation(rule, n)?;
    match perm.order_bounded(bound) {
        Some(p) => Ok(CycleOrder::Exact(p)),
        None => Ok(CycleOrder::ExceedsBound),
    }
}

/// The permutation a bijective rule induces on length-`n` cyclic
/// configurations, indexed by base-`m` rank of the cell vector.
pub fn cycle_permutation(rule: &LocalRule1D, n: usize) -> Result<Perm, OrderError> {
    assert!(n >= 1, "cycle length must be positive");
    let m = rule.alphabet().size();
    let space = (1..=n).try_fold(1u128, |acc, _| {
        let next = acc.saturating_mul(m as u128);
        (next <= MAX_CYCLE_SPACE).then_some(next)
    });
    let Some(space) = space else {
        return Err(OrderError::SpaceTooLarge {
            space: (m as u128).saturating_pow(n as u32),
        });
    };
    let space = space as usize;
    let mut image = Vec::with_capacity(space);
    let mut hit = vec![false; space];
    let mut cells = vec![0 as State; n];
    for idx in 0..space {
        // Decode idx into cells, big-endian.
        let mut v = idx;
        for j in (0..n).rev() {
            cells[j] = (v % m) as State;
            v /= m;
        }
        let c = CyclicConfig::new(rule.alphabet(), cells.clone()).expect("decoded config");
        let out = apply(rule, &c)?;
        let target = rank(out.cells(), m);
        if hit[target] {
            return Err(OrderError::NonBijective { n });
        }
        hit[target] = true;
        image.push(target);
    }
    Ok(Perm::new(image).expect("verified bijection"))
}
