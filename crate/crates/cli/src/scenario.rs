//! Simulation scenarios: a serializable description of one run plus the
//! engine that executes it into deterministic file contents.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use tsca_core::config::{orbit, CyclicConfig};
use tsca_core::grid2d::{
    ant_step, arrow_flip, billiard_step, head_tail_swap, oracle_to_grid, primary_arrow,
    validate_arrows, AntOracle, AntPose, Arrow, BilliardCell, Dir, TorusGrid, TurnConvention,
};
use tsca_core::io::{self, CertificateFile, RuleFile};
use tsca_core::rule::{Alphabet, LocalRule1D, State};
use tsca_core::symmetry::{alternating_orbit, verify_certificate};
use tsca_core::zoo;

#[derive(Debug)]
pub enum RunError {
    /// The reversal self-test did not recover the initial configuration.
    ReversalFailed,
    Invalid(String),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::ReversalFailed => write!(f, "reversal self-test failed"),
            RunError::Invalid(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for RunError {}

fn invalid(e: impl std::fmt::Display) -> RunError {
    RunError::Invalid(e.to_string())
}

/// Initial 1D configuration: seeded randomness, an explicit digit
/// pattern, or all zeros.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InitSpec {
    Random { seed: u64 },
    Pattern { cells: String },
    Uniform,
}

impl InitSpec {
    pub fn from_flags(
        random: bool,
        seed: Option<u64>,
        pattern: Option<String>,
    ) -> anyhow::Result<Self> {
        match (random, pattern) {
            (true, None) => Ok(InitSpec::Random {
                seed: seed.unwrap_or(0),
            }),
            (false, Some(cells)) => Ok(InitSpec::Pattern { cells }),
            (false, None) => Ok(InitSpec::Uniform),
            (true, Some(_)) => anyhow::bail!("--random and --pattern are mutually exclusive"),
        }
    }

    fn build(&self, alphabet: Alphabet, n: usize) -> Result<CyclicConfig, RunError> {
        let m = alphabet.size();
        let cells: Vec<State> = match self {
            InitSpec::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..n).map(|_| rng.gen_range(0..m) as State).collect()
            }
            InitSpec::Pattern { cells } => {
                let parsed: Option<Vec<State>> = cells
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as State))
                    .collect();
                let parsed =
                    parsed.ok_or_else(|| RunError::Invalid("pattern must be digits".into()))?;
                if parsed.len() != n {
                    return Err(RunError::Invalid(format!(
                        "pattern has {} cells, expected {n}",
                        parsed.len()
                    )));
                }
                parsed
            }
            InitSpec::Uniform => vec![0; n],
        };
        CyclicConfig::new(alphabet, cells).map_err(invalid)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "system", rename_all = "kebab-case")]
pub enum Scenario {
    Ant {
        width: usize,
        height: usize,
        steps: usize,
        reverse_at: Option<usize>,
        turn: String,
    },
    Billiard {
        width: usize,
        height: usize,
        steps: usize,
        balls: Option<Vec<(i64, i64)>>,
        random_fill: Option<f64>,
        seed: u64,
        reverse_at: Option<usize>,
    },
    Hedlund {
        n: usize,
        steps: usize,
        init: InitSpec,
    },
    Rule {
        rule: RuleFile,
        n: usize,
        steps: usize,
        init: InitSpec,
    },
    Alternating {
        certificate: CertificateFile,
        n: usize,
        steps: usize,
        init: InitSpec,
    },
}

pub fn parse_balls(spec: &str) -> anyhow::Result<Vec<(i64, i64)>> {
    spec.split(';')
        .map(|pair| {
            let (x, y) = pair
                .split_once(',')
                .ok_or_else(|| anyhow::anyhow!("ball must be `x,y`"))?;
            Ok((x.trim().parse()?, y.trim().parse()?))
        })
        .collect()
}

/// Executes a scenario into (file name, content) pairs.
pub fn run(scenario: &Scenario) -> Result<Vec<(String, String)>, RunError> {
    match scenario {
        Scenario::Ant {
            width,
            height,
            steps,
            reverse_at,
            turn,
        } => run_ant(*width, *height, *steps, *reverse_at, turn),
        Scenario::Billiard {
            width,
            height,
            steps,
            balls,
            random_fill,
            seed,
            reverse_at,
        } => run_billiard(
            *width,
            *height,
            *steps,
            balls.as_deref(),
            *random_fill,
            *seed,
            *reverse_at,
        ),
        Scenario::Hedlund { n, steps, init } => {
            let (_, _, f) = zoo::hedlund_pair();
            run_rule_orbit(&f, *n, *steps, init)
        }
        Scenario::Rule {
            rule,
            n,
            steps,
            init,
        } => {
            let rule = LocalRule1D::try_from(rule).map_err(invalid)?;
            run_rule_orbit(&rule, *n, *steps, init)
        }
        Scenario::Alternating {
            certificate,
            n,
            steps,
            init,
        } => run_alternating(certificate, *n, *steps, init),
    }
}

fn parse_turn(turn: &str) -> Result<TurnConvention, RunError> {
    match turn {
        "white-right" => Ok(TurnConvention::WhiteRight),
        "white-left" => Ok(TurnConvention::WhiteLeft),
        other => Err(RunError::Invalid(format!(
            "unknown turn convention `{other}`"
        ))),
    }
}

fn run_ant(
    width: usize,
    height: usize,
    steps: usize,
    reverse_at: Option<usize>,
    turn: &str,
) -> Result<Vec<(String, String)>, RunError> {
    let convention = parse_turn(turn)?;
    if width < 3 || height < 3 {
        return Err(RunError::Invalid("ant torus must be at least 3x3".into()));
    }
    let start = AntOracle::on_white(
        width,
        height,
        width as i64 / 2,
        height as i64 / 2,
        Dir::N,
        convention,
    );
    let mut oracle = start.clone();
    let mut rows: Vec<(usize, AntPose, bool)> = vec![(0, oracle.pose(), false)];
    for t in 1..=steps {
        let info = oracle.step();
        rows.push((t, oracle.pose(), !info.read_black));
    }
    let mut outputs = vec![
        ("trajectory.csv".to_string(), io::trajectory_csv(&rows)),
        (
            "initial.ppm".to_string(),
            io::ant_ppm(&oracle_to_grid(&start)),
        ),
        (
            "final.ppm".to_string(),
            io::ant_ppm(&oracle_to_grid(&oracle)),
        ),
        (
            "final.txt".to_string(),
            io::ant_text(&oracle_to_grid(&oracle)),
        ),
    ];
    if let Some(k) = reverse_at {
        let g0 = oracle_to_grid(&start);
        let mut g = g0.clone();
        for _ in 0..k {
            g = ant_step(&g, convention).map_err(invalid)?;
        }
        let mut back = head_tail_swap(&g);
        for _ in 0..k {
            back = ant_step(&back, convention).map_err(invalid)?;
        }
        if head_tail_swap(&back) != g0 {
            return Err(RunError::ReversalFailed);
        }
        outputs.push((
            "reversal.txt".to_string(),
            format!("reversal self-test passed at t = {k}\n"),
        ));
    }
    Ok(outputs)
}

#[allow(clippy::too_many_arguments)]
fn run_billiard(
    width: usize,
    height: usize,
    steps: usize,
    balls: Option<&[(i64, i64)]>,
    random_fill: Option<f64>,
    seed: u64,
    reverse_at: Option<usize>,
) -> Result<Vec<(String, String)>, RunError> {
    let blank = TorusGrid::filled(
        width.max(1),
        height.max(1),
        BilliardCell {
            black: false,
            arrow: Arrow::Ne,
        },
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g0 = blank.map(|(x, y), _| BilliardCell {
        black: match (balls, random_fill) {
            (Some(balls), _) => balls.contains(&(x, y)),
            (None, Some(density)) => rng.gen_bool(density.clamp(0.0, 1.0)),
            (None, None) => false,
        },
        arrow: primary_arrow(x, y),
    });
    validate_arrows(&g0).map_err(invalid)?;
    let mut g = g0.clone();
    for _ in 0..steps {
        g = billiard_step(&g).map_err(invalid)?;
    }
    let mut outputs = vec![
        ("initial.ppm".to_string(), io::billiard_ppm(&g0)),
        ("final.ppm".to_string(), io::billiard_ppm(&g)),
        ("final.txt".to_string(), io::billiard_text(&g)),
    ];
    if let Some(k) = reverse_at {
        let mut back = arrow_flip(&g);
        for _ in 0..k {
            back = billiard_step(&back).map_err(invalid)?;
        }
        if arrow_flip(&back) != g0 {
            return Err(RunError::ReversalFailed);
        }
        outputs.push((
            "reversal.txt".to_string(),
            format!("reversal self-test passed at t = {k}\n"),
        ));
    }
    Ok(outputs)
}

fn run_rule_orbit(
    rule: &LocalRule1D,
    n: usize,
    steps: usize,
    init: &InitSpec,
) -> Result<Vec<(String, String)>, RunError> {
    if n == 0 {
        return Err(RunError::Invalid(
            "configuration length must be positive".into(),
        ));
    }
    let c0 = init.build(rule.alphabet(), n)?;
    let record = orbit(rule, &c0, steps).map_err(invalid)?;
    let image_name = if rule.alphabet().size() == 2 {
        "spacetime.pbm"
    } else {
        "spacetime.pgm"
    };
    Ok(vec![
        (image_name.to_string(), io::orbit_image(&record.configs)),
        ("spacetime.txt".to_string(), io::orbit_text(&record.configs)),
    ])
}

fn run_alternating(
    file: &CertificateFile,
    n: usize,
    steps: usize,
    init: &InitSpec,
) -> Result<Vec<(String, String)>, RunError> {
    let f = LocalRule1D::try_from(&file.f).map_err(invalid)?;
    let h = LocalRule1D::try_from(&file.h).map_err(invalid)?;
    let cert = verify_certificate(&f, &h).map_err(invalid)?;
    let c0 = init.build(f.alphabet(), n)?;
    let trace = alternating_orbit(&cert, &c0, steps).map_err(invalid)?;
    let ext = if f.alphabet().size() == 2 {
        "pbm"
    } else {
        "pgm"
    };
    Ok(vec![
        (format!("unprimed.{ext}"), io::orbit_image(&trace.unprimed)),
        (format!("primed.{ext}"), io::orbit_image(&trace.primed)),
        ("unprimed.txt".to_string(), io::orbit_text(&trace.unprimed)),
        ("primed.txt".to_string(), io::orbit_text(&trace.primed)),
    ])
}
