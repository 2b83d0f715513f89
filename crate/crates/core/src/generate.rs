//! Seeded random diagrams for property runs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{DlDiagram, Role, Sign, Token};

pub const SEED_VAR: &str = "DLKNOT_SEED";

/// A generator seeded from `DLKNOT_SEED` when set, else from `default_seed`.
pub fn rng_from_env(default_seed: u64) -> ChaCha8Rng {
    let seed = std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default_seed);
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A random signed Gauss word with `crossings` crossings and `double_lines`
/// double lines at random places. With `degree_zero`, the count is rounded
/// down to even and the signs balance.
pub fn random_diagram<R: Rng>(rng: &mut R, crossings: usize, double_lines: usize, degree_zero: bool) -> DlDiagram {
    let mut tokens = Vec::with_capacity(2 * crossings + double_lines);
    for id in 1..=crossings as u32 {
        let sign = random_sign(rng);
        tokens.push(Token::passage(id, Role::Over, sign));
        tokens.push(Token::passage(id, Role::Under, sign));
    }
    tokens.shuffle(rng);
    let signs: Vec<Sign> = if degree_zero {
        let half = double_lines / 2;
        let mut v: Vec<Sign> =
            std::iter::repeat_n(Sign::Plus, half).chain(std::iter::repeat_n(Sign::Minus, half)).collect();
        v.shuffle(rng);
        v
    } else {
        (0..double_lines).map(|_| random_sign(rng)).collect()
    };
    for s in signs {
        let at = rng.gen_range(0..=tokens.len());
        tokens.insert(at, Token::DoubleLine(s));
    }
    DlDiagram::new(tokens).expect("generated word is a valid diagram")
}

/// Random diagram with crossing and double-line counts drawn up to the bounds.
pub fn random_bounded<R: Rng>(
    rng: &mut R,
    max_crossings: usize,
    max_double_lines: usize,
    degree_zero: bool,
) -> DlDiagram {
    let c = rng.gen_range(0..=max_crossings);
    let d = rng.gen_range(0..=max_double_lines);
    random_diagram(rng, c, d, degree_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let d = random_diagram(&mut rng, 4, 7, true);
            assert_eq!(d.crossing_count(), 4);
            assert_eq!(d.double_line_count(), 6);
            assert_eq!(d.degree(), 0);
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = random_bounded(&mut ChaCha8Rng::seed_from_u64(3), 5, 5, false);
        let b = random_bounded(&mut ChaCha8Rng::seed_from_u64(3), 5, 5, false);
        assert_eq!(a, b);
    }
}
