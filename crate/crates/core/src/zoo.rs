//! Canonical named rules with machine-checked annotations. Every claim
//! stored on an entry is re-verified when the registry is built; a
//! failing claim aborts loading with a message naming the entry and the
//! check that refuted it.

use thiserror::Error;

use crate::config::{order_on_cycle, CycleOrder};
use crate::involution::is_involution;
use crate::rule::{Alphabet, LocalRule1D, Neighborhood, State};
use crate::symmetry::verify_certificate;

#[derive(Debug, Error)]
pub enum ZooError {
    #[error("zoo entry `{entry}` failed its annotation check: {check}")]
    AnnotationFailed { entry: String, check: String },
    #[error("no zoo entry named `{0}`")]
    UnknownEntry(String),
}

/// A verified claim attached to a zoo entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Annotation {
    Involution,
    NotInvolution,
    /// An inverse exists with neighborhood span within the given bound.
    ReversibleWithinSpan(u32),
    /// Time-symmetric, witnessed by the named companion involution.
    TimeSymmetricWith(String),
    /// Known not time-symmetric; carries the argument, since no bounded
    /// search could establish this.
    NotTimeSymmetricTheorem(String),
    /// The induced order on length-n cyclic configurations exceeds two
    /// for some n within the given bound, with the running maximum
    /// strictly increasing at three or more lengths.
    GrowingCycleOrders {
        max_n: usize,
    },
}

/// A named rule plus verified annotations and companion rules
/// (inverse, certificate involution) where applicable.
#[derive(Debug, Clone)]
pub struct ZooEntry {
    pub name: String,
    pub rule: LocalRule1D,
    pub annotations: Vec<Annotation>,
    pub companions: Vec<(String, LocalRule1D)>,
}

impl ZooEntry {
    pub fn companion(&self, name: &str) -> Option<&LocalRule1D> {
        self.companions
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r)
    }
}

fn binary() -> Alphabet {
    Alphabet::new(2).unwrap()
}

/// The elementary CA of the given Wolfram number: alphabet `{0,1}`,
/// neighborhood `{-1,0,1}`, output for pattern `(x_{-1},x_0,x_1)` read as
/// a 3-bit number `b` equal to bit `b` of `n`.
pub fn eca(n: u8) -> LocalRule1D {
    let table: Vec<State> = (0..8).map(|b| ((n >> b) & 1) as State).collect();
    LocalRule1D::new(binary(), Neighborhood::new(vec![-1, 0, 1]).unwrap(), table).unwrap()
}

/// The Wolfram number of a binary rule whose minimized neighborhood fits
/// in `{-1,0,1}`; `None` otherwise.
pub fn eca_number(rule: &LocalRule1D) -> Option<u8> {
    if rule.alphabet() != binary() {
        return None;
    }
    let min = rule.minimize();
    let nb = min.neighborhood();
    if nb.min().is_some_and(|lo| lo < -1) || nb.max().is_some_and(|hi| hi > 1) {
        return None;
    }
    let mut n = 0u8;
    for b in 0..8u8 {
        let word = [(b >> 2) & 1, (b >> 1) & 1, b & 1].map(|x| x as State);
        let gathered: Vec<State> = nb
            .offsets()
            .iter()
            .map(|&o| word[(o + 1) as usize])
            .collect();
        n |= (min.eval(&gathered) as u8) << b;
    }
    Some(n)
}

/// The shift by `k`: `F(c)_i = c_{i+k}` (binary alphabet).
pub fn shift(k: i32) -> LocalRule1D {
    LocalRule1D::new(binary(), Neighborhood::new(vec![k]).unwrap(), vec![0, 1]).unwrap()
}

/// Negation of the identity over `{0}` (binary alphabet).
pub fn negation() -> LocalRule1D {
    LocalRule1D::new(binary(), Neighborhood::new(vec![0]).unwrap(), vec![1, 0]).unwrap()
}

/// The Hedlund pair: `alpha` = cellwise negation, `beta` = negate `x_0`
/// exactly when `(x_{-1}, x_1, x_2) = (1, 0, 1)`, and their composition
/// `F = alpha∘beta` — a time-symmetric CA whose order on cycles grows
/// without bound.
pub fn hedlund_pair() -> (LocalRule1D, LocalRule1D, LocalRule1D) {
    let alpha = negation();
    let beta = LocalRule1D::from_fn(
        binary(),
        Neighborhood::new(vec![-1, 0, 1, 2]).unwrap(),
        |w| {
            let fires = w[0] == 1 && w[2] == 0 && w[3] == 1;
            if fires {
                1 - w[1]
            } else {
                w[1]
            }
        },
    )
    .unwrap();
    let f = alpha.compose(&beta).unwrap().minimize();
    (alpha, beta, f)
}

/// The permutative involution of radius `r` on `{0,1,2}` that swaps
/// states 1 and 2 when the cell `r` to the left is 0, paired with the
/// partner rule that swaps when that cell is nonzero. Their composition
/// collapses to the radius-0 transposition of 1 and 2.
pub fn permutative_example(r: u32) -> (LocalRule1D, LocalRule1D) {
    assert!(r >= 1, "radius must be at least 1");
    let alphabet = Alphabet::new(3).unwrap();
    let nb = Neighborhood::new(vec![-(r as i32), 0]).unwrap();
    let swap_if = |cond: bool, x: State| -> State {
        match (cond, x) {
            (true, 1) => 2,
            (true, 2) => 1,
            _ => x,
        }
    };
    let rule = LocalRule1D::from_fn(alphabet, nb.clone(), |w| swap_if(w[0] == 0, w[1])).unwrap();
    let partner = LocalRule1D::from_fn(alphabet, nb, |w| swap_if(w[0] != 0, w[1])).unwrap();
    (rule, partner)
}

fn check(entry: &str, check: &str, ok: bool) -> Result<(), ZooError> {
    if ok {
        Ok(())
    } else {
        Err(ZooError::AnnotationFailed {
            entry: entry.to_string(),
            check: check.to_string(),
        })
    }
}

fn verify_annotation(entry: &ZooEntry, a: &Annotation) -> Result<(), ZooError> {
    let name = entry.name.as_str();
    match a {
        Annotation::Involution => check(name, "square equals identity", is_involution(&entry.rule)),
        Annotation::NotInvolution => check(
            name,
            "square differs from identity",
            !is_involution(&entry.rule),
        ),
        Annotation::ReversibleWithinSpan(span) => {
            let found = entry.rule.find_inverse(*span);
            match (&found, entry.companion("inverse")) {
                (Some(inv), Some(stored)) => check(
                    name,
                    "stored inverse matches the bounded search",
                    inv.equal(stored).unwrap_or(false),
                ),
                (Some(_), None) => Ok(()),
                _ => check(name, "inverse found within span", false),
            }
        }
        Annotation::TimeSymmetricWith(h_name) => {
            let h = entry
                .companion(h_name)
                .ok_or_else(|| ZooError::AnnotationFailed {
                    entry: name.to_string(),
                    check: format!("companion `{h_name}` present"),
                })?;
            check(
                name,
                "certificate invariants hold",
                verify_certificate(&entry.rule, h).is_ok(),
            )
        }
        Annotation::NotTimeSymmetricTheorem(_) => Ok(()),
        Annotation::GrowingCycleOrders { max_n } => {
            let mut best = 0u128;
            let mut increases = 0usize;
            let mut beyond_two = false;
            for n in 1..=*max_n {
                let order = match order_on_cycle(&entry.rule, n, 1 << 40) {
                    Ok(CycleOrder::Exact(p)) => p,
                    Ok(CycleOrder::ExceedsBound) => u128::MAX,
                    Err(e) => {
                        return Err(ZooError::AnnotationFailed {
                            entry: name.to_string(),
                            check: format!("order computation failed: {e}"),
                        })
                    }
                };
                if order > 2 {
                    beyond_two = true;
                }
                if order > best {
                    best = order;
                    increases += 1;
                }
            }
            check(
                name,
                "cycle orders exceed two and keep growing",
                beyond_two && increases >= 3,
            )
        }
    }
}

fn build_entries() -> Vec<ZooEntry> {
    let (alpha, beta, hedlund) = hedlund_pair();
    let (eq_r1, eq_g1) = permutative_example(1);
    let (eq_r2, eq_g2) = permutative_example(2);
    vec![
        ZooEntry {
            name: "identity".into(),
            rule: LocalRule1D::identity(binary()),
            annotations: vec![
                Annotation::Involution,
                Annotation::ReversibleWithinSpan(0),
                Annotation::TimeSymmetricWith("h".into()),
            ],
            companions: vec![
                ("inverse".into(), LocalRule1D::identity(binary())),
                ("h".into(), LocalRule1D::identity(binary())),
            ],
        },
        ZooEntry {
            name: "negation".into(),
            rule: negation(),
            annotations: vec![
                Annotation::Involution,
                Annotation::ReversibleWithinSpan(0),
                // Any involution is trivially time-symmetric: take H = id.
                Annotation::TimeSymmetricWith("h".into()),
            ],
            companions: vec![
                ("inverse".into(), negation()),
                ("h".into(), LocalRule1D::identity(binary())),
            ],
        },
        ZooEntry {
            name: "shift".into(),
            rule: shift(1),
            annotations: vec![
                Annotation::NotInvolution,
                Annotation::ReversibleWithinSpan(2),
                Annotation::NotTimeSymmetricTheorem(
                    "every CA commutes with the shift, so (shift∘H)^2 = shift^2 ≠ id \
                     for any involution H"
                        .into(),
                ),
            ],
            companions: vec![("inverse".into(), shift(-1))],
        },
        ZooEntry {
            name: "hedlund-alpha".into(),
            rule: alpha.clone(),
            annotations: vec![Annotation::Involution],
            companions: vec![],
        },
        ZooEntry {
            name: "hedlund-beta".into(),
            rule: beta.clone(),
            annotations: vec![Annotation::Involution],
            companions: vec![],
        },
        ZooEntry {
            name: "hedlund".into(),
            rule: hedlund.clone(),
            annotations: vec![
                Annotation::NotInvolution,
                Annotation::ReversibleWithinSpan(4),
                Annotation::TimeSymmetricWith("beta".into()),
                Annotation::GrowingCycleOrders { max_n: 12 },
            ],
            companions: vec![
                ("inverse".into(), beta.compose(&alpha).unwrap().minimize()),
                ("beta".into(), beta.clone()),
                ("alpha".into(), alpha),
            ],
        },
        ZooEntry {
            name: "transposition-r1".into(),
            rule: eq_r1,
            annotations: vec![Annotation::Involution],
            companions: vec![("partner".into(), eq_g1)],
        },
        ZooEntry {
            name: "transposition-r2".into(),
            rule: eq_r2,
            annotations: vec![Annotation::Involution],
            companions: vec![("partner".into(), eq_g2)],
        },
    ]
}

/// The registry, with every annotation re-verified. Errors name the
/// offending entry and check.
pub fn entries() -> Result<Vec<ZooEntry>, ZooError> {
    let entries = build_entries();
    for e in &entries {
        for a in &e.annotations {
            verify_annotation(e, a)?;
        }
    }
    Ok(entries)
}

/// Looks up one verified entry by name.
pub fn entry(name: &str) -> Result<ZooEntry, ZooError> {
    entries()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| ZooError::UnknownEntry(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{apply, CyclicConfig};

    #[test]
    fn eca_204_is_identity_and_51_is_negation() {
        assert!(eca(204).is_identity().unwrap());
        assert!(eca(51).equal(&negation()).unwrap());
    }

    #[test]
    fn eca_numbering_round_trips() {
        for n in [0u8, 1, 30, 51, 90, 110, 150, 204, 255] {
            assert_eq!(eca_number(&eca(n)), Some(n));
        }
        assert_eq!(eca_number(&shift(2)), None);
    }

    #[test]
    fn beta_acts_by_the_documented_condition() {
        // Independent per-cell oracle for beta on a cyclic configuration.
        let (_, beta, _) = hedlund_pair();
        let oracle = |cells: &[State]| -> Vec<State> {
            let n = cells.len() as i64;
            let at = |i: i64| cells[i.rem_euclid(n) as usize];
            (0..n)
                .map(|i| {
                    let fires = at(i - 1) == 1 && at(i + 1) == 0 && at(i + 2) == 1;
                    if fires {
                        1 - at(i)
                    } else {
                        at(i)
                    }
                })
                .collect()
        };
        for cells in [
            vec![1, 0, 1, 0, 1, 0],
            vec![1, 0, 1, 1, 0, 0],
            vec![0, 1, 1, 0, 1, 1, 0],
            vec![1, 1, 0, 1, 0, 1, 1, 0],
        ] {
            let c = CyclicConfig::new(binary(), cells.clone()).unwrap();
            let got = apply(&beta, &c).unwrap();
            assert_eq!(got.cells(), oracle(&cells), "input {cells:?}");
        }
        // The alternating configuration is fixed: the firing condition
        // needs x_{i+1} = 0 and x_{i+2} = 1 of opposite parity.
        let alt = CyclicConfig::new(binary(), vec![1, 0, 1, 0, 1, 0]).unwrap();
        assert_eq!(apply(&beta, &alt).unwrap(), alt);
    }

    #[test]
    fn hedlund_composition_keeps_all_four_offsets() {
        let (_, _, f) = hedlund_pair();
        assert_eq!(f.neighborhood().offsets(), &[-1, 0, 1, 2]);
    }

    #[test]
    fn hedlund_on_one_cell_is_pure_negation() {
        // On a 1-cell cycle the firing condition would need the single
        // cell to be 1 and 0 at once.
        let (_, _, f) = hedlund_pair();
        assert_eq!(order_on_cycle(&f, 1, 10).unwrap(), CycleOrder::Exact(2));
    }

    #[test]
    fn hedlund_inverse_is_beta_alpha() {
        let (alpha, beta, f) = hedlund_pair();
        let beta_alpha = beta.compose(&alpha).unwrap();
        let inv = f.find_inverse(4).expect("inverse within span 4");
        assert!(inv.equal(&beta_alpha).unwrap());
    }

    #[test]
    fn permutative_example_composes_to_radius0_swap() {
        for r in 1..=3 {
            let (rule, partner) = permutative_example(r);
            let composed = rule.compose(&partner).unwrap().minimize();
            assert_eq!(composed.neighborhood().offsets(), &[0]);
            assert_eq!(composed.table(), &[0, 2, 1], "r = {r}");
        }
    }

    #[test]
    fn registry_verifies_clean() {
        let all = entries().expect("all annotations verify");
        assert!(all.iter().any(|e| e.name == "hedlund"));
        assert!(entry("shift").is_ok());
        assert!(entry("missing").is_err());
    }
}
