//! Time-symmetry certificates: verified witnesses that a rule `F` is the
//! composition of two involutions, together with the constructions that
//! produce such rules (radius-0 permutations, conjugation, products with
//! the inverse, partitioned automata, periodic embeddings) and the
//! alternating-involution dynamics.
//!
//! A certificate stores `F`, the involution `H`, and `G = F∘H`; validity
//! means `H` and `G` are involutions and `G∘H = F`, from which
//! `F^{-1} = H∘F∘H` follows. Certificates are only constructed through
//! verification.

use thiserror::Error;

use crate::config::{apply, apply_code, CyclicConfig};
use crate::involution::{enumerate_involutions, permutation_rule, EnumerationSpec};
use crate::perm::Perm;
use crate::rule::{Alphabet, BlockCode, LocalRule1D, Neighborhood, RuleError, State};

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("alphabet mismatch between F and H")]
    AlphabetMismatch,
    #[error("H is not an involution")]
    HNotInvolution,
    #[error("G = F∘H is not an involution")]
    GNotInvolution,
    #[error("G∘H does not reproduce F")]
    CompositionMismatch,
    #[error("no inverse of F found within span {0}; F may not be reversible")]
    InverseNotFound(u32),
    #[error("H∘F∘H differs from the independently found inverse of F")]
    InverseMismatch,
    #[error("H∘F^i∘H differs from F^-i for i = {0}")]
    PowerIdentityFailed(i32),
    #[error("the supplied partner is not a two-sided inverse of F")]
    InverseCheckFailed,
    #[error("block transformation is not an involution")]
    NonInvolutiveBlock,
    #[error("rule does not have period {0} (F^p differs from the identity)")]
    PeriodMismatch(u32),
    #[error("conjugacy is invalid: {0}")]
    ConjugacyInvalid(String),
    #[error("alternating trace failed post-verification at step {0}")]
    TraceVerificationFailed(usize),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

/// How a certificate's invariants were established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationRoute {
    /// All invariants checked by direct table comparison, plus the
    /// defining identity checked against an inverse found by bounded
    /// search with the given span.
    Direct { inverse_span: u32 },
    /// `H` and `G∘H = F` checked directly; the involution property of
    /// `G = F^i∘H` established through the table-checked identity
    /// `H∘F^i∘H = F^{-i}`, which is equivalent given a valid base
    /// certificate and avoids squaring a wide rule.
    PowerIdentity { exponent: i32 },
}

/// A verified witness of time-symmetry: `F = G∘H` with `G`, `H`
/// involutions and `G = F∘H` (stored minimized).
#[derive(Debug, Clone)]
pub struct SymmetryCertificate {
    f: LocalRule1D,
    h: LocalRule1D,
    g: LocalRule1D,
    route: VerificationRoute,
}

impl SymmetryCertificate {
    pub fn f(&self) -> &LocalRule1D {
        &self.f
    }

    pub fn h(&self) -> &LocalRule1D {
        &self.h
    }

    pub fn g(&self) -> &LocalRule1D {
        &self.g
    }

    pub fn route(&self) -> &VerificationRoute {
        &self.route
    }

    /// The inverse rule `F^{-1} = H∘G`, minimized.
    pub fn inverse_rule(&self) -> Result<LocalRule1D, RuleError> {
        Ok(self.h.compose(&self.g)?.minimize())
    }
}

fn involution_check(rule: &LocalRule1D) -> Result<bool, RuleError> {
    rule.compose(rule)?.is_identity()
}

/// Checks every certificate invariant for the pair `(F, H)` and returns
/// the certificate, or the first invariant that failed.
///
/// Beyond the involution and composition checks, the defining identity is
/// cross-checked against an inverse obtained independently by bounded
/// constraint search: `H∘F∘H` must coincide with it entry for entry.
pub fn verify_certificate(
    f: &LocalRule1D,
    h: &LocalRule1D,
) -> Result<SymmetryCertificate, CertificateError> {
    if f.alphabet() != h.alphabet() {
        return Err(CertificateError::AlphabetMismatch);
    }
    if !involution_check(h)? {
        return Err(CertificateError::HNotInvolution);
    }
    let g = f.compose(h)?.minimize();
    if !involution_check(&g)? {
        return Err(CertificateError::GNotInvolution);
    }
    if !g.compose(h)?.equal(f)? {
        return Err(CertificateError::CompositionMismatch);
    }
    let span = g.neighborhood().span() + h.neighborhood().span();
    let f_inv = f
        .find_inverse(span)
        .ok_or(CertificateError::InverseNotFound(span))?;
    let hfh = h.compose(&f.compose(h)?)?.minimize();
    if !hfh.equal(&f_inv)? {
        return Err(CertificateError::InverseMismatch);
    }
    Ok(SymmetryCertificate {
        f: f.clone(),
        h: h.clone(),
        g,
        route: VerificationRoute::Direct { inverse_span: span },
    })
}

/// Outcome of the bounded time-symmetry search.
#[derive(Debug, Clone)]
pub enum FindSymmetry {
    Found(Box<SymmetryCertificate>),
    /// No certificate within the span bound. Not a proof of
    /// non-symmetry: `complete` only says the bounded space was covered.
    Exhausted {
        max_span: u32,
        complete: bool,
        nodes: u64,
    },
}

/// Searches for an involution `H` with neighborhood span at most
/// `max_span` making `F∘H` an involution. Sound (returns only verified
/// certificates) and complete relative to the bound when the report says
/// so: any involution's minimized neighborhood reaches both sides of the
/// origin, so candidate windows `lo..=lo+span` with `-span ≤ lo ≤ 0`
/// cover the whole space.
pub fn find_symmetry(f: &LocalRule1D, max_span: u32, budget: u64) -> FindSymmetry {
    let mut nodes = 0u64;
    let mut complete = true;
    for span in 0..=max_span {
        for lo in -(span as i32)..=0 {
            let window = Neighborhood::contiguous(lo, lo + span as i32);
            let remaining = budget.saturating_sub(nodes).max(1);
            let spec = EnumerationSpec::new(f.alphabet(), window, remaining).with_hook(
                "F∘H is an involution",
                {
                    let f = f.clone();
                    move |h: &LocalRule1D| {
                        f.compose(h)
                            .and_then(|g| g.compose(&g)?.is_identity())
                            .unwrap_or(false)
                    }
                },
            );
            let report = match enumerate_involutions(&spec) {
                Ok(r) => r,
                Err(_) => {
                    complete = false;
                    continue;
                }
            };
            nodes += report.nodes;
            complete &= report.exhausted;
            for h in &report.found {
                if let Ok(cert) = verify_certificate(f, h) {
                    return FindSymmetry::Found(Box::new(cert));
                }
            }
        }
    }
    FindSymmetry::Exhausted {
        max_span,
        complete,
        nodes,
    }
}

/// The certificate for `F^{-1} = H∘G`: `G` takes over the role of the
/// defining involution and `H` becomes the cofactor. Applying this twice
/// returns a certificate for `F` again.
pub fn inverse_certificate(
    cert: &SymmetryCertificate,
) -> Result<SymmetryCertificate, CertificateError> {
    let f_inv = cert.inverse_rule()?;
    let out = verify_certificate(&f_inv, cert.g())?;
    debug_assert!(out.g().equal(cert.h()).unwrap_or(false));
    Ok(out)
}

/// The certificate for `F^i` (any `i`, negative powers through the
/// verified inverse) with the same involution `H`. Verified by the table
/// comparison `H∘F^i∘H = F^{-i}`, which establishes that `F^i∘H` is an
/// involution without squaring it.
pub fn power_certificate(
    cert: &SymmetryCertificate,
    i: i32,
) -> Result<SymmetryCertificate, CertificateError> {
    let h = cert.h().clone();
    let f_inv = cert.inverse_rule()?;
    let e = i.unsigned_abs();
    let (base, opposite) = if i >= 0 {
        (cert.f(), &f_inv)
    } else {
        (&f_inv, cert.f())
    };
    let f_pow = base.power(e)?;
    let f_pow_neg = opposite.power(e)?;
    if !involution_check(&h)? {
        return Err(CertificateError::HNotInvolution);
    }
    let hfh = h.compose(&f_pow.compose(&h)?)?.minimize();
    if !hfh.equal(&f_pow_neg)? {
        return Err(CertificateError::PowerIdentityFailed(i));
    }
    let g = f_pow.compose(&h)?.minimize();
    if !g.compose(&h)?.equal(&f_pow)? {
        return Err(CertificateError::CompositionMismatch);
    }
    Ok(SymmetryCertificate {
        f: f_pow,
        h,
        g,
        route: VerificationRoute::PowerIdentity { exponent: i },
    })
}

/// Decomposes a state permutation into two radius-0 involutions
/// `(G, H)` with `G∘H = perm` (`H` applied first). Cycles are traversed
/// from their minimal element; on a cycle `e_0 → … → e_{L-1}`, `G`
/// reverses (`e_j ↦ e_{L-1-j}`) and `H = G∘perm`.
pub fn radius0_symmetry(perm: &Perm) -> (LocalRule1D, LocalRule1D) {
    let n = perm.len();
    assert!(n >= 1, "permutation must act on a nonempty state set");
    let mut g_map = vec![0usize; n];
    let mut h_map = vec![0usize; n];
    for cycle in perm.cycles() {
        let len = cycle.len();
        for (j, &e) in cycle.iter().enumerate() {
            g_map[e] = cycle[len - 1 - j];
        }
    }
    for e in 0..n {
        h_map[e] = g_map[perm.apply(e)];
    }
    let g_perm = Perm::new(g_map).expect("reversal is a bijection");
    let h_perm = Perm::new(h_map).expect("composition of bijections");
    assert!(g_perm.is_involution() && h_perm.is_involution());
    assert_eq!(
        &g_perm.compose(&h_perm),
        perm,
        "G∘H must reproduce the input"
    );
    let g = permutation_rule(&g_perm).expect("radius-0 rule");
    let h = permutation_rule(&h_perm).expect("radius-0 rule");
    (g, h)
}

/// A bijective, shift-commuting recoding between two alphabets, given by
/// a block code and its inverse.
#[derive(Debug, Clone)]
pub struct Conjugacy {
    phi: BlockCode,
    phi_inv: BlockCode,
}

impl Conjugacy {
    pub fn new(phi: BlockCode, phi_inv: BlockCode) -> Result<Self, CertificateError> {
        if phi.input() != phi_inv.output() || phi.output() != phi_inv.input() {
            return Err(CertificateError::ConjugacyInvalid(
                "alphabets of the two codes do not pair up".into(),
            ));
        }
        let back = phi_inv.compose(&phi)?;
        if !back.equal(&BlockCode::identity(phi.input()))? {
            return Err(CertificateError::ConjugacyInvalid(
                "phi_inv∘phi is not the identity on the source".into(),
            ));
        }
        let forth = phi.compose(&phi_inv)?;
        if !forth.equal(&BlockCode::identity(phi_inv.input()))? {
            return Err(CertificateError::ConjugacyInvalid(
                "phi∘phi_inv is not the identity on the target".into(),
            ));
        }
        Ok(Conjugacy { phi, phi_inv })
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        Conjugacy {
            phi: BlockCode::identity(alphabet),
            phi_inv: BlockCode::identity(alphabet),
        }
    }

    /// Cellwise state relabeling by a permutation.
    pub fn relabel(perm: &Perm) -> Result<Self, CertificateError> {
        let fwd = permutation_rule(perm)?;
        let bwd = permutation_rule(&perm.inverse())?;
        Conjugacy::new(fwd.as_code().clone(), bwd.as_code().clone())
    }

    pub fn phi(&self) -> &BlockCode {
        &self.phi
    }

    pub fn phi_inv(&self) -> &BlockCode {
        &self.phi_inv
    }
}

/// Transports a certificate for `T` along a conjugacy: the certificate
/// for `F = φ^{-1}∘T∘φ` with involution `φ^{-1}∘H∘φ`.
pub fn conjugate_certificate(
    conj: &Conjugacy,
    cert: &SymmetryCertificate,
) -> Result<SymmetryCertificate, CertificateError> {
    if cert.f().alphabet() != conj.phi.output() {
        return Err(CertificateError::ConjugacyInvalid(
            "certificate alphabet does not match the conjugacy target".into(),
        ));
    }
    let pull = |rule: &LocalRule1D| -> Result<LocalRule1D, CertificateError> {
        let code = conj
            .phi_inv
            .compose(&rule.as_code().compose(&conj.phi)?)?
            .minimize();
        Ok(LocalRule1D::from_code(code)?.minimize())
    };
    let f = pull(cert.f())?;
    let h = pull(cert.h())?;
    verify_certificate(&f, &h)
}

/// The product construction: a time-symmetric rule on the pair alphabet
/// that runs `F` on first components and `F^{-1}` on second components.
#[derive(Debug, Clone)]
pub struct ProductCa {
    /// The rule on the pair alphabet `(x, y) ↦ x·m + y`.
    pub rule: LocalRule1D,
    /// Certificate with `H` the cellwise swap `(x, y) ↦ (y, x)`.
    pub certificate: SymmetryCertificate,
    /// Radius-0 code recovering the `F` track.
    pub project_first: BlockCode,
    /// Radius-0 code recovering the `F^{-1}` track.
    pub project_second: BlockCode,
}

/// Builds the product rule from `F` and a claimed inverse, after checking
/// that the pair really is a two-sided inverse.
pub fn product_ca(f: &LocalRule1D, f_inv: &LocalRule1D) -> Result<ProductCa, CertificateError> {
    if f.alphabet() != f_inv.alphabet() {
        return Err(CertificateError::AlphabetMismatch);
    }
    let id = LocalRule1D::identity(f.alphabet());
    if !f_inv.compose(f)?.equal(&id)? || !f.compose(f_inv)?.equal(&id)? {
        return Err(CertificateError::InverseCheckFailed);
    }
    let f = f.minimize();
    let f_inv = f_inv.minimize();
    let m = f.alphabet().size();
    let pair = Alphabet::new(m * m)?;
    let union = f.neighborhood().union(f_inv.neighborhood());
    let gf = crate::rule::gather_positions(f.neighborhood().offsets(), union.offsets());
    let gi = crate::rule::gather_positions(f_inv.neighborhood().offsets(), union.offsets());
    let mut xs = vec![0 as State; f.neighborhood().len()];
    let mut ys = vec![0 as State; f_inv.neighborhood().len()];
    let rule = LocalRule1D::from_fn(pair, union, |w| {
        for (slot, &p) in xs.iter_mut().zip(&gf) {
            *slot = w[p] / m as State;
        }
        for (slot, &p) in ys.iter_mut().zip(&gi) {
            *slot = w[p] % m as State;
        }
        f.eval(&xs) * m as State + f_inv.eval(&ys)
    })?;
    let swap = LocalRule1D::from_fn(pair, Neighborhood::new(vec![0])?, |w| {
        let (x, y) = (w[0] / m as State, w[0] % m as State);
        y * m as State + x
    })?;
    let certificate = verify_certificate(&rule, &swap)?;
    let project_first = BlockCode::from_fn(pair, f.alphabet(), Neighborhood::new(vec![0])?, |w| {
        w[0] / m as State
    })?;
    let project_second =
        BlockCode::from_fn(pair, f.alphabet(), Neighborhood::new(vec![0])?, |w| {
            w[0] % m as State
        })?;
    Ok(ProductCa {
        rule,
        certificate,
        project_first,
        project_second,
    })
}

/// A partitioned automaton: cells carry a left and a right sub-cell,
/// iteration alternates a neighbor exchange with a cellwise block map.
#[derive(Debug, Clone)]
pub struct PartitionedCa {
    /// `F = B∘E` on the sub-cell pair alphabet `(l, r) ↦ l·s + r`.
    pub rule: LocalRule1D,
    /// Certificate with `H = E` (the exchange) and `G = B`.
    pub certificate: SymmetryCertificate,
    /// The exchange involution: each cell's right sub-cell swaps with the
    /// right neighbor's left sub-cell.
    pub exchange: LocalRule1D,
    /// The cellwise block rule.
    pub block_rule: LocalRule1D,
}

/// Builds a time-symmetric partitioned automaton from an involutive
/// block transformation on sub-cell pairs.
pub fn partitioned_ca(
    block: &Perm,
    sub_alphabet: Alphabet,
) -> Result<PartitionedCa, CertificateError> {
    let s = sub_alphabet.size();
    if block.len() != s * s {
        return Err(CertificateError::ConjugacyInvalid(format!(
            "block permutation acts on {} states, expected {}",
            block.len(),
            s * s
        )));
    }
    if !block.is_involution() {
        return Err(CertificateError::NonInvolutiveBlock);
    }
    let pair = Alphabet::new(s * s)?;
    let exchange = LocalRule1D::from_fn(pair, Neighborhood::new(vec![-1, 1])?, |w| {
        let left_neighbor_right = w[0] % s as State;
        let right_neighbor_left = w[1] / s as State;
        left_neighbor_right * s as State + right_neighbor_left
    })?;
    let block_rule = permutation_rule(block)?;
    let rule = block_rule.compose(&exchange)?;
    let certificate = verify_certificate(&rule, &exchange)?;
    debug_assert!(certificate.g().equal(&block_rule).unwrap_or(false));
    Ok(PartitionedCa {
        rule,
        certificate,
        exchange,
        block_rule,
    })
}

/// Recoding of a period-`p` rule onto the alphabet of `p`-tuples, where
/// the dynamics becomes the radius-0 tuple rotation.
#[derive(Debug, Clone)]
pub struct PeriodicEmbedding {
    /// `φ(x)_i = (x_i, F(x)_i, …, F^{p-1}(x)_i)`, tuples packed
    /// big-endian (first component most significant).
    pub recoding: BlockCode,
    /// The rotation `(a_0, …, a_{p-1}) ↦ (a_1, …, a_{p-1}, a_0)`.
    pub rotation: LocalRule1D,
}

/// Builds the embedding after checking `F^p = id` as rule equality, and
/// verifies the intertwining `φ∘F = F'∘φ` by table comparison.
pub fn periodic_embedding(f: &LocalRule1D, p: u32) -> Result<PeriodicEmbedding, CertificateError> {
    assert!(p >= 1, "period must be positive");
    if !f.power(p)?.is_identity()? {
        return Err(CertificateError::PeriodMismatch(p));
    }
    let m = f.alphabet().size();
    let mut powers = Vec::with_capacity(p as usize);
    let mut acc = LocalRule1D::identity(f.alphabet());
    for _ in 0..p {
        powers.push(acc.clone());
        acc = acc.compose(f)?.minimize();
    }
    let union = powers
        .iter()
        .map(|r| r.neighborhood().clone())
        .reduce(|a, b| a.union(&b))
        .expect("p >= 1");
    let tuple_size = m
        .checked_pow(p)
        .filter(|&t| t <= State::MAX as usize + 1)
        .ok_or(RuleError::AlphabetTooLarge(usize::MAX))?;
    let tuple_alphabet = Alphabet::new(tuple_size)?;
    let gathers: Vec<Vec<usize>> = powers
        .iter()
        .map(|r| crate::rule::gather_positions(r.neighborhood().offsets(), union.offsets()))
        .collect();
    let mut bufs: Vec<Vec<State>> = powers
        .iter()
        .map(|r| vec![0 as State; r.neighborhood().len()])
        .collect();
    let recoding = BlockCode::from_fn(f.alphabet(), tuple_alphabet, union, |w| {
        let mut packed = 0usize;
        for ((rule, gather), buf) in powers.iter().zip(&gathers).zip(bufs.iter_mut()) {
            for (slot, &pos) in buf.iter_mut().zip(gather) {
                *slot = w[pos];
            }
            packed = packed * m + rule.eval(buf) as usize;
        }
        packed as State
    })?;
    let weight = tuple_size / m;
    let rotation = LocalRule1D::from_fn(tuple_alphabet, Neighborhood::new(vec![0])?, |w| {
        let s = w[0] as usize;
        ((s % weight) * m + s / weight) as State
    })?;
    let lhs = recoding.compose(f.as_code())?;
    let rhs = rotation.as_code().compose(&recoding)?;
    if !lhs.equal(&rhs)? {
        return Err(CertificateError::ConjugacyInvalid(
            "recoding does not intertwine the rule with the rotation".into(),
        ));
    }
    Ok(PeriodicEmbedding { recoding, rotation })
}

/// A point of the embedded image that one of the rotation's radius-0
/// certificate involutions maps outside the image.
#[derive(Debug, Clone)]
pub struct EmbeddingWitness {
    pub base: CyclicConfig,
    pub image_point: CyclicConfig,
    pub mapped: CyclicConfig,
    /// The radius-0 involution that moves the image off itself.
    pub involution: LocalRule1D,
}

/// Searches cyclic configurations of length up to `max_n` for a point
/// demonstrating that the recoded image is not invariant under the
/// radius-0 involutions attached to the rotation. Membership of a
/// configuration `d` in the image is decided exactly: the first tuple
/// components determine the only possible preimage.
pub fn embedding_noninvariance_witness(
    f: &LocalRule1D,
    p: u32,
    max_n: usize,
) -> Result<Option<EmbeddingWitness>, CertificateError> {
    let emb = periodic_embedding(f, p)?;
    let rot_perm = Perm::new(emb.rotation.table().iter().map(|&v| v as usize).collect())
        .expect("rotation is a permutation");
    let (g, h) = radius0_symmetry(&rot_perm);
    let m = f.alphabet().size();
    let tuple_m = emb.recoding.output().size();
    let first = BlockCode::from_fn(
        emb.recoding.output(),
        f.alphabet(),
        Neighborhood::new(vec![0])?,
        |w| (w[0] as usize / (tuple_m / m)) as State,
    )?;
    for involution in [g, h] {
        for n in 1..=max_n {
            let space = m.checked_pow(n as u32).filter(|&s| s <= 1 << 20);
            let Some(space) = space else { break };
            let mut cells = vec![0 as State; n];
            for idx in 0..space {
                let mut v = idx;
                for j in (0..n).rev() {
                    cells[j] = (v % m) as State;
                    v /= m;
                }
                let base = CyclicConfig::new(f.alphabet(), cells.clone())?;
                let image_point = apply_code(&emb.recoding, &base)?;
                let mapped = apply(&involution, &image_point)?;
                let preimage = apply_code(&first, &mapped)?;
                if apply_code(&emb.recoding, &preimage)? != mapped {
                    return Ok(Some(EmbeddingWitness {
                        base,
                        image_point,
                        mapped,
                        involution,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// The alternating dynamics `c'_t = H(c_t)`, `c_{t+1} = G(c'_t)`: the
/// unprimed track iterates `F` while the primed track iterates `F^{-1}`.
#[derive(Debug, Clone)]
pub struct AlternatingTrace {
    pub unprimed: Vec<CyclicConfig>,
    pub primed: Vec<CyclicConfig>,
}

/// Runs the alternating dynamics for `t` steps and post-verifies both
/// track identities on every step.
pub fn alternating_orbit(
    cert: &SymmetryCertificate,
    c0: &CyclicConfig,
    t: usize,
) -> Result<AlternatingTrace, CertificateError> {
    let mut unprimed = Vec::with_capacity(t + 1);
    let mut primed = Vec::with_capacity(t + 1);
    let mut cur = c0.clone();
    for _ in 0..=t {
        let primed_cur = apply(cert.h(), &cur)?;
        let next = apply(cert.g(), &primed_cur)?;
        unprimed.push(cur);
        primed.push(primed_cur);
        cur = next;
    }
    let f_inv = cert.inverse_rule()?;
    for k in 0..t {
        if apply(cert.f(), &unprimed[k])? != unprimed[k + 1] {
            return Err(CertificateError::TraceVerificationFailed(k));
        }
        if apply(&f_inv, &primed[k])? != primed[k + 1] {
            return Err(CertificateError::TraceVerificationFailed(k));
        }
    }
    Ok(AlternatingTrace { unprimed, primed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn binary() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    #[test]
    fn negation_with_identity_involution_is_valid() {
        let cert = verify_certificate(&zoo::negation(), &LocalRule1D::identity(binary()))
            .expect("any involution is time-symmetric with H = id");
        assert!(cert.g().equal(&zoo::negation()).unwrap());
    }

    #[test]
    fn hedlund_with_beta_is_valid_and_g_is_alpha() {
        let (alpha, beta, f) = zoo::hedlund_pair();
        let cert = verify_certificate(&f, &beta).expect("valid certificate");
        assert!(cert.g().equal(&alpha).unwrap());
        assert!(cert
            .inverse_rule()
            .unwrap()
            .equal(&beta.compose(&alpha).unwrap())
            .unwrap());
    }

    #[test]
    fn shift_with_identity_is_invalid() {
        let err = verify_certificate(&zoo::shift(1), &LocalRule1D::identity(binary())).unwrap_err();
        assert!(matches!(err, CertificateError::GNotInvolution));
    }

    #[test]
    fn find_symmetry_on_an_involution_returns_identity_involution() {
        match find_symmetry(&zoo::eca(51), 1, 1 << 16) {
            FindSymmetry::Found(cert) => {
                assert!(cert.h().is_identity().unwrap());
            }
            other => panic!("expected a certificate, got {other:?}"),
        }
    }

    #[test]
    fn find_symmetry_on_the_shift_exhausts() {
        match find_symmetry(&zoo::shift(1), 2, 1 << 22) {
            FindSymmetry::Exhausted { complete, .. } => assert!(complete),
            FindSymmetry::Found(c) => panic!("shift cannot be time-symmetric: {c:?}"),
        }
    }

    #[test]
    fn find_symmetry_recovers_hedlund_certificate() {
        let (_, _, f) = zoo::hedlund_pair();
        match find_symmetry(&f, 3, 1 << 22) {
            FindSymmetry::Found(cert) => {
                assert!(cert.f().equal(&f).unwrap());
            }
            other => panic!("expected a certificate, got {other:?}"),
        }
    }

    #[test]
    fn inverse_certificate_round_trips() {
        let (_, beta, f) = zoo::hedlund_pair();
        let cert = verify_certificate(&f, &beta).unwrap();
        let inv = inverse_certificate(&cert).unwrap();
        assert!(inv.f().equal(&cert.inverse_rule().unwrap()).unwrap());
        assert!(inv.h().equal(cert.g()).unwrap());
        let back = inverse_certificate(&inv).unwrap();
        assert!(back.f().equal(&f).unwrap());
    }

    #[test]
    fn inverse_certificate_of_a_self_inverse_swaps_roles() {
        let neg = zoo::negation();
        let cert = verify_certificate(&neg, &LocalRule1D::identity(binary())).unwrap();
        let inv = inverse_certificate(&cert).unwrap();
        assert!(inv.f().equal(&neg).unwrap());
        assert!(inv.h().equal(&neg).unwrap());
        assert!(inv.g().is_identity().unwrap());
    }

    #[test]
    fn power_certificates_verify_for_small_exponents() {
        let (_, beta, f) = zoo::hedlund_pair();
        let cert = verify_certificate(&f, &beta).unwrap();
        for i in -2..=3 {
            let p = power_certificate(&cert, i).unwrap();
            assert!(p.h().equal(&beta).unwrap());
            if i == 0 {
                assert!(p.f().is_identity().unwrap());
            }
            if i == 1 {
                assert!(p.f().equal(&f).unwrap());
            }
        }
    }

    #[test]
    fn radius0_three_cycle_matches_the_known_decomposition() {
        let perm = Perm::new(vec![1, 2, 0]).unwrap();
        let (g, h) = radius0_symmetry(&perm);
        // Reversal (0 2) and partner (0 1).
        assert_eq!(g.table(), &[2, 1, 0]);
        assert_eq!(h.table(), &[1, 0, 2]);
        let f = permutation_rule(&perm).unwrap();
        assert!(g.compose(&h).unwrap().equal(&f).unwrap());
        let cert = verify_certificate(&f, &h).unwrap();
        assert!(cert.g().equal(&g).unwrap());
    }

    #[test]
    fn radius0_identity_and_mixed_cycles() {
        let id = Perm::identity(4);
        let (g, h) = radius0_symmetry(&id);
        assert!(g.is_identity().unwrap());
        assert!(h.is_identity().unwrap());
        // 2-cycle plus fixed point on {0,1,2}.
        let perm = Perm::new(vec![1, 0, 2]).unwrap();
        let (g, h) = radius0_symmetry(&perm);
        let f = permutation_rule(&perm).unwrap();
        assert!(g.compose(&h).unwrap().equal(&f).unwrap());
        verify_certificate(&f, &h).unwrap();
    }

    #[test]
    fn conjugate_certificate_by_relabeling() {
        let cert = verify_certificate(&zoo::negation(), &LocalRule1D::identity(binary())).unwrap();
        let conj = Conjugacy::identity(binary());
        let same = conjugate_certificate(&conj, &cert).unwrap();
        assert!(same.f().equal(&zoo::negation()).unwrap());
        // Relabeling 0 <-> 1 maps negation to itself.
        let swap = Conjugacy::relabel(&Perm::new(vec![1, 0]).unwrap()).unwrap();
        let relabeled = conjugate_certificate(&swap, &cert).unwrap();
        assert!(relabeled.f().equal(&zoo::negation()).unwrap());
    }

    #[test]
    fn conjugacy_rejects_non_inverse_pairs() {
        let neg = zoo::negation();
        let id = LocalRule1D::identity(binary());
        assert!(Conjugacy::new(neg.as_code().clone(), id.as_code().clone()).is_err());
    }

    #[test]
    fn product_of_the_shift_is_time_symmetric() {
        let product = product_ca(&zoo::shift(1), &zoo::shift(-1)).unwrap();
        assert_eq!(product.rule.neighborhood().offsets(), &[-1, 1]);
        // The certificate involution is the cellwise swap.
        let m = 2;
        for s in 0..4u16 {
            let (x, y) = (s / m, s % m);
            assert_eq!(product.certificate.h().eval(&[s]), y * m + x);
        }
    }

    #[test]
    fn product_rejects_wrong_inverse() {
        assert!(matches!(
            product_ca(&zoo::shift(1), &zoo::shift(1)),
            Err(CertificateError::InverseCheckFailed)
        ));
    }

    #[test]
    fn product_projections_recover_both_orbits() {
        let f = zoo::eca(51);
        let product = product_ca(&f, &f).unwrap();
        let m = 2 as State;
        let cells: Vec<State> = vec![0, 1, 1, 0, 1];
        let paired: Vec<State> = cells.iter().map(|&x| x * m + (1 - x)).collect();
        let mut pair_cfg = CyclicConfig::new(product.rule.alphabet(), paired).unwrap();
        let mut first_cfg = CyclicConfig::new(binary(), cells).unwrap();
        for _ in 0..5 {
            let projected = apply_code(&product.project_first, &pair_cfg).unwrap();
            assert_eq!(projected, first_cfg);
            pair_cfg = apply(&product.rule, &pair_cfg).unwrap();
            first_cfg = apply(&f, &first_cfg).unwrap();
        }
    }

    #[test]
    fn partitioned_ca_identity_block_gives_the_exchange() {
        let sub = Alphabet::new(2).unwrap();
        let built = partitioned_ca(&Perm::identity(4), sub).unwrap();
        assert!(built.rule.equal(&built.exchange).unwrap());
        assert!(crate::involution::is_involution(&built.rule));
    }

    #[test]
    fn partitioned_ca_swap_and_negate_block() {
        // (a, b) ↦ (NOT b, NOT a) on sub-alphabet {0,1}: an involution.
        let block = Perm::new(
            (0..4)
                .map(|s| {
                    let (a, b) = (s / 2, s % 2);
                    (1 - b) * 2 + (1 - a)
                })
                .collect(),
        )
        .unwrap();
        let built = partitioned_ca(&block, Alphabet::new(2).unwrap()).unwrap();
        assert!(built.certificate.g().equal(&built.block_rule).unwrap());
    }

    #[test]
    fn partitioned_ca_sub_cell_swap_block() {
        // (a, b) ↦ (b, a): both factors are involutions and F = B∘E.
        let block = Perm::new((0..4).map(|s| (s % 2) * 2 + s / 2).collect()).unwrap();
        let built = partitioned_ca(&block, Alphabet::new(2).unwrap()).unwrap();
        assert!(crate::involution::is_involution(&built.block_rule));
        assert!(crate::involution::is_involution(&built.exchange));
        assert!(built
            .rule
            .equal(&built.block_rule.compose(&built.exchange).unwrap())
            .unwrap());
    }

    #[test]
    fn partitioned_ca_rejects_non_involutive_blocks() {
        let three_cycle = Perm::new(vec![1, 2, 3, 0]).unwrap();
        assert!(matches!(
            partitioned_ca(&three_cycle, Alphabet::new(2).unwrap()),
            Err(CertificateError::NonInvolutiveBlock)
        ));
    }

    #[test]
    fn periodic_embedding_of_identity_is_trivial() {
        let id = LocalRule1D::identity(binary());
        let emb = periodic_embedding(&id, 1).unwrap();
        assert!(emb.rotation.is_identity().unwrap());
        assert_eq!(emb.recoding.neighborhood().offsets(), &[0]);
    }

    #[test]
    fn periodic_embedding_of_negation_intertwines() {
        let emb = periodic_embedding(&zoo::negation(), 2).unwrap();
        // phi(x)_i = (x_i, NOT x_i): states 0b01 = 1 and 0b10 = 2.
        assert_eq!(emb.recoding.table(), &[1, 2]);
        // Rotation on pairs: swaps the two tuple slots.
        assert_eq!(emb.rotation.table(), &[0, 2, 1, 3]);
    }

    #[test]
    fn periodic_embedding_rejects_wrong_period() {
        assert!(matches!(
            periodic_embedding(&zoo::shift(1), 2),
            Err(CertificateError::PeriodMismatch(2))
        ));
    }

    #[test]
    fn alternating_orbit_tracks_both_directions() {
        let (_, beta, f) = zoo::hedlund_pair();
        let cert = verify_certificate(&f, &beta).unwrap();
        let c0 = CyclicConfig::new(binary(), vec![1, 0, 0, 1, 0, 1, 1, 0]).unwrap();
        let trace = alternating_orbit(&cert, &c0, 16).unwrap();
        assert_eq!(trace.unprimed.len(), 17);
        assert_eq!(trace.primed.len(), 17);
        // Constant trace for the identity certificate.
        let id = LocalRule1D::identity(binary());
        let id_cert = verify_certificate(&id, &id).unwrap();
        let t = alternating_orbit(&id_cert, &c0, 4).unwrap();
        assert!(t.unprimed.iter().all(|c| c == &c0));
        assert!(t.primed.iter().all(|c| c == &c0));
    }
}
