//! Exhaustive and randomized invariant suites that cut across modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tsca_core::config::{apply, apply_code, orbit, CyclicConfig};
use tsca_core::grid2d::{
    ant_step, arrow_flip, billiard_step, head_tail_swap, oracle_to_grid, primary_arrow, AntCell,
    AntOracle, Arrow, BilliardCell, Dir, Mark, TorusGrid, TurnConvention,
};
use tsca_core::involution::{
    brute_force_involutions, enumerate_involutions, is_involution, permutation_rule,
    EnumerationSpec,
};
use tsca_core::perm::Perm;
use tsca_core::rule::Neighborhood;
use tsca_core::rule::{Alphabet, State};
use tsca_core::symmetry::{
    alternating_orbit, conjugate_certificate, embedding_noninvariance_witness, product_ca,
    radius0_symmetry, verify_certificate, Conjugacy,
};
use tsca_core::symmetry::{find_symmetry, FindSymmetry};
use tsca_core::zoo;

fn all_perms(n: usize) -> Vec<Perm> {
    fn go(prefix: &mut Vec<usize>, free: &mut Vec<usize>, out: &mut Vec<Perm>) {
        if free.is_empty() {
            out.push(Perm::new(prefix.clone()).unwrap());
            return;
        }
        for i in 0..free.len() {
            let v = free.remove(i);
            prefix.push(v);
            go(prefix, free, out);
            prefix.pop();
            free.insert(i, v);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

#[test]
fn radius0_decomposition_is_exhaustive_up_to_seven_states() {
    for n in 1..=7usize {
        for perm in all_perms(n) {
            let (g, h) = radius0_symmetry(&perm);
            let composed = g.compose(&h).unwrap();
            let f = permutation_rule(&perm).unwrap();
            assert!(
                composed.equal(&f).unwrap(),
                "G∘H differs from the permutation for {:?}",
                perm.as_slice()
            );
            let cert = verify_certificate(&f, &h).unwrap();
            assert!(cert.g().equal(&g).unwrap());
        }
    }
}

#[test]
fn every_involution_is_its_own_bounded_inverse() {
    let spaces = [
        (2usize, vec![0]),
        (2, vec![-1, 0, 1]),
        (3, vec![0]),
        (3, vec![-1, 0]),
    ];
    for (m, offsets) in spaces {
        let spec = EnumerationSpec::new(
            Alphabet::new(m).unwrap(),
            Neighborhood::new(offsets).unwrap(),
            1 << 22,
        );
        let report = enumerate_involutions(&spec).unwrap();
        assert!(report.exhausted);
        for h in &report.found {
            let span = h.minimize().neighborhood().span();
            let inv = h.find_inverse(span).expect("involutions are reversible");
            assert!(inv.equal(h).unwrap(), "table {:?}", h.table());
        }
    }
}

#[test]
fn find_symmetry_agrees_with_brute_force_on_small_spaces() {
    // Brute-force filter: any H over {-1,0,1} with minimized span <= 1
    // such that H and F∘H are involutions. The search must find a
    // certificate exactly when such an H exists.
    let window = Neighborhood::new(vec![-1, 0, 1]).unwrap();
    let (_, beta, _) = zoo::hedlund_pair();
    let candidates: Vec<_> = brute_force_involutions(Alphabet::new(2).unwrap(), &window)
        .unwrap()
        .into_iter()
        .filter(|h| h.minimize().neighborhood().span() <= 1)
        .collect();
    for f in [
        zoo::eca(204),
        zoo::eca(51),
        zoo::eca(90),
        zoo::eca(110),
        zoo::shift(1),
        beta,
    ] {
        let brute_finds = candidates.iter().any(|h| {
            let fh = f.compose(h).unwrap();
            is_involution(&fh)
        });
        let search_finds = matches!(find_symmetry(&f, 1, 1 << 22), FindSymmetry::Found(_));
        assert_eq!(
            search_finds,
            brute_finds,
            "disagreement for table {:?}",
            f.table()
        );
    }
}

#[test]
fn hedlund_defect_on_alternating_background_translates() {
    // A single defect on the alternating background travels: after n/2+1
    // steps the configuration is the initial one rotated by n/2.
    let (_, _, f) = zoo::hedlund_pair();
    let a2 = Alphabet::new(2).unwrap();
    for n in [8usize, 12, 16] {
        let mut cells: Vec<State> = (0..n).map(|i| (i % 2) as State).collect();
        cells[0] = 1 - cells[0];
        let c0 = CyclicConfig::new(a2, cells).unwrap();
        let record = orbit(&f, &c0, n / 2 + 1).unwrap();
        let expected = c0.rotate(n as i64 / 2);
        assert_eq!(
            record.configs[n / 2 + 1],
            expected,
            "signal did not translate for n = {n}"
        );
        assert_ne!(record.configs[n / 2 + 1], c0);
    }
}

#[test]
fn alternating_orbit_of_the_shift_product_moves_both_ways() {
    let product = product_ca(&zoo::shift(1), &zoo::shift(-1)).unwrap();
    let pair = product.rule.alphabet();
    let m = 2 as State;
    // Pair up two independent binary tracks.
    let xs: Vec<State> = vec![1, 0, 0, 0, 1, 0, 1, 0];
    let ys: Vec<State> = vec![0, 1, 1, 0, 0, 0, 0, 1];
    let cells: Vec<State> = xs.iter().zip(&ys).map(|(&x, &y)| x * m + y).collect();
    let c0 = CyclicConfig::new(pair, cells).unwrap();
    let trace = alternating_orbit(&product.certificate, &c0, 8).unwrap();
    let x0 = CyclicConfig::new(Alphabet::new(2).unwrap(), xs).unwrap();
    let y0 = CyclicConfig::new(Alphabet::new(2).unwrap(), ys).unwrap();
    for (t, c) in trace.unprimed.iter().enumerate() {
        // Unprimed track: first components shift left, seconds right.
        let firsts = apply_code(&product.project_first, c).unwrap();
        let seconds = apply_code(&product.project_second, c).unwrap();
        assert_eq!(firsts, x0.rotate(t as i64));
        assert_eq!(seconds, y0.rotate(-(t as i64)));
    }
    // Primed track iterates the inverse on the swapped tracks.
    for (t, c) in trace.primed.iter().enumerate() {
        let firsts = apply_code(&product.project_first, c).unwrap();
        assert_eq!(firsts, y0.rotate(-(t as i64)));
    }
}

#[test]
fn product_certificate_survives_pair_swap_relabeling() {
    let (_, _, f) = zoo::hedlund_pair();
    let f_inv = f.find_inverse(4).unwrap();
    let product = product_ca(&f, &f_inv).unwrap();
    let m = 2usize;
    // Relabel pair states (x, y) -> (y, x).
    let swap = Perm::new((0..m * m).map(|s| (s % m) * m + s / m).collect()).unwrap();
    let conj = Conjugacy::relabel(&swap).unwrap();
    let transported = conjugate_certificate(&conj, &product.certificate).unwrap();
    // The swapped product runs the inverse on first components.
    let expected_first = apply(
        &f_inv,
        &CyclicConfig::new(f.alphabet(), vec![1, 0, 1, 1, 0, 0]).unwrap(),
    )
    .unwrap();
    let paired: Vec<State> = [1u16, 0, 1, 1, 0, 0]
        .iter()
        .zip([0u16, 1, 1, 0, 1, 0].iter())
        .map(|(&x, &y)| x * m as State + y)
        .collect();
    let c = CyclicConfig::new(transported.f().alphabet(), paired).unwrap();
    let stepped = apply(transported.f(), &c).unwrap();
    let firsts = apply_code(&product.project_first, &stepped).unwrap();
    assert_eq!(firsts, expected_first);
}

#[test]
fn embedding_witness_exists_for_a_genuinely_wide_periodic_rule() {
    // Conjugating the 3-cycle relabeling by a radius-1 involution gives a
    // period-3 rule with essential neighborhood {-2,-1,0}; its recoded
    // image is not invariant under the rotation's certificate
    // involutions.
    let (psi, _) = zoo::permutative_example(1);
    let rho = permutation_rule(&Perm::new(vec![1, 2, 0]).unwrap()).unwrap();
    let f = psi.compose(&rho.compose(&psi).unwrap()).unwrap().minimize();
    assert_eq!(f.neighborhood().offsets(), &[-2, -1, 0]);
    assert!(f.power(3).unwrap().is_identity().unwrap());
    let witness = embedding_noninvariance_witness(&f, 3, 4)
        .unwrap()
        .expect("a witness exists at small cycle lengths");
    // Independent re-check: the mapped point has no preimage.
    let emb = tsca_core::symmetry::periodic_embedding(&f, 3).unwrap();
    let mapped = apply(&witness.involution, &witness.image_point).unwrap();
    assert_eq!(mapped, witness.mapped);
    let m = f.alphabet().size();
    let tuple_m = emb.recoding.output().size();
    let firsts: Vec<State> = witness
        .mapped
        .cells()
        .iter()
        .map(|&s| (s as usize / (tuple_m / m)) as State)
        .collect();
    let candidate = CyclicConfig::new(f.alphabet(), firsts).unwrap();
    assert_ne!(
        apply_code(&emb.recoding, &candidate).unwrap(),
        witness.mapped,
        "mapped point unexpectedly lies in the image"
    );
}

#[test]
fn negation_embedding_image_is_invariant_for_both_involutions() {
    // The two-state involution embeds into cellwise pairs, whose image
    // every cellwise involution preserves; no witness can exist.
    assert!(embedding_noninvariance_witness(&zoo::negation(), 2, 6)
        .unwrap()
        .is_none());
}

fn random_billiard(rng: &mut ChaCha8Rng, w: usize, h: usize) -> TorusGrid<BilliardCell> {
    let g = TorusGrid::filled(
        w,
        h,
        BilliardCell {
            black: false,
            arrow: Arrow::Ne,
        },
    );
    g.map(|(x, y), _| BilliardCell {
        black: rng.gen_bool(0.35),
        arrow: primary_arrow(x, y),
    })
}

#[test]
fn billiard_reversal_exhaustive_on_tiny_tori() {
    // Every color pattern on the 2x2 and 2x4 torus.
    for (w, h) in [(2usize, 2usize), (2, 4)] {
        let cells = w * h;
        for bits in 0..(1u32 << cells) {
            let g = TorusGrid::filled(
                w,
                h,
                BilliardCell {
                    black: false,
                    arrow: Arrow::Ne,
                },
            )
            .map(|(x, y), _| BilliardCell {
                black: bits >> (y as usize * w + x as usize) & 1 == 1,
                arrow: primary_arrow(x, y),
            });
            let once = billiard_step(&g).unwrap();
            let back = billiard_step(&arrow_flip(&once)).unwrap();
            assert_eq!(arrow_flip(&back), g, "{w}x{h} pattern {bits:b}");
        }
    }
}

#[test]
fn billiard_reversal_randomized_trials() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..1000 {
        let w = 2 * rng.gen_range(1..=4usize);
        let h = 2 * rng.gen_range(1..=4usize);
        let g = random_billiard(&mut rng, w, h);
        let t = rng.gen_range(1..=8usize);
        let mut fwd = g.clone();
        for _ in 0..t {
            fwd = billiard_step(&fwd).unwrap();
        }
        let mut back = arrow_flip(&fwd);
        for _ in 0..t {
            back = billiard_step(&back).unwrap();
        }
        assert_eq!(arrow_flip(&back), g, "trial {trial}");
    }
}

#[test]
fn billiard_conserves_mass_over_random_runs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut g = random_billiard(&mut rng, 8, 6);
    let count = |g: &TorusGrid<BilliardCell>| g.cells().iter().filter(|c| c.black).count();
    let start = count(&g);
    for _ in 0..500 {
        g = billiard_step(&g).unwrap();
        assert_eq!(count(&g), start);
    }
}

#[test]
fn ant_retrace_on_random_color_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for trial in 0..20 {
        let w = 16usize;
        let h = 16usize;
        let colors = TorusGrid::filled(w, h, false).map(|_, _| rng.gen_bool(0.5));
        let oracle = AntOracle {
            colors,
            x: rng.gen_range(0..w as i64),
            y: rng.gen_range(0..h as i64),
            dir: [Dir::N, Dir::E, Dir::S, Dir::W][rng.gen_range(0..4)],
            convention: TurnConvention::WhiteRight,
        };
        let g0 = oracle_to_grid(&oracle);
        let t = 200;
        let mut fwd = g0.clone();
        for _ in 0..t {
            fwd = ant_step(&fwd, TurnConvention::WhiteRight).unwrap();
        }
        let mut back = head_tail_swap(&fwd);
        for _ in 0..t {
            back = ant_step(&back, TurnConvention::WhiteRight).unwrap();
        }
        assert_eq!(head_tail_swap(&back), g0, "trial {trial}");
    }
}

#[test]
fn ant_grid_states_stay_valid_along_the_orbit() {
    let oracle = AntOracle::on_white(12, 12, 6, 6, Dir::N, TurnConvention::WhiteRight);
    let mut g = oracle_to_grid(&oracle);
    for _ in 0..300 {
        g = ant_step(&g, TurnConvention::WhiteRight).unwrap();
        let heads = g.cells().iter().filter(|c| c.mark == Mark::Head).count();
        let tails = g.cells().iter().filter(|c| c.mark == Mark::Tail).count();
        assert_eq!((heads, tails), (1, 1));
    }
}

#[test]
fn ant_cell_enum_is_compact() {
    assert_eq!(AntCell::empty_white().mark, Mark::Empty);
}
