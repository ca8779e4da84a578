use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec::Exec;
use crate::syntax::{CalculusLevel, Sequent};

use super::{
    builtin, center_kappa, enumerate_biclosed, eval_sequent, supports, FinBiclosedPoset,
    Valuation, BUILTIN_NAMES, MAX_ENUMERATION_SIZE,
};

pub const DEFAULT_SEED: u64 = 0x5eed_1a3b;

/// The built-in models followed by every biclosed poset with at most three
/// elements; enumerated models carry the centre κ where it exists.
pub fn library_models() -> &'static [FinBiclosedPoset] {
    static MODELS: OnceLock<Vec<FinBiclosedPoset>> = OnceLock::new();
    MODELS.get_or_init(|| {
        let mut out: Vec<FinBiclosedPoset> =
            BUILTIN_NAMES.iter().map(|n| builtin(n).unwrap()).collect();
        for n in 1..=MAX_ENUMERATION_SIZE {
            for mut m in enumerate_biclosed(n, Exec::default()) {
                m.kappa = center_kappa(&m).ok();
                out.push(m);
            }
        }
        out
    })
}

pub fn all_valuations(m: &FinBiclosedPoset, atoms: &[String]) -> Vec<Valuation> {
    let n = m.len();
    let total = n.pow(atoms.len() as u32);
    (0..total)
        .map(|mut code| {
            atoms
                .iter()
                .map(|a| {
                    let v = code % n;
                    code /= n;
                    (a.clone(), v)
                })
                .collect()
        })
        .collect()
}

pub fn sample_valuations(
    m: &FinBiclosedPoset,
    atoms: &[String],
    count: usize,
    seed: u64,
) -> Vec<Valuation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            atoms
                .iter()
                .map(|a| (a.clone(), rng.gen_range(0..m.len())))
                .collect()
        })
        .collect()
}

/// Every valuation when there are at most `sample` of them, else `sample`
/// seeded random ones.
pub fn valuations(m: &FinBiclosedPoset, atoms: &[String], sample: usize, seed: u64) -> Vec<Valuation> {
    let total = (m.len() as u128).saturating_pow(atoms.len() as u32);
    if total <= sample as u128 {
        all_valuations(m, atoms)
    } else {
        sample_valuations(m, atoms, sample, seed)
    }
}

#[derive(Clone, Debug)]
pub struct Countermodel {
    pub model: FinBiclosedPoset,
    pub valuation: Valuation,
}

/// First model and valuation (in the order given) falsifying `s`. Models
/// lacking a modal table needed by `level` are skipped.
pub fn find_countermodel(
    s: &Sequent,
    level: CalculusLevel,
    models: &[FinBiclosedPoset],
    sample: usize,
    seed: u64,
) -> Option<Countermodel> {
    let atoms: Vec<String> = s.atoms().into_iter().collect();
    models
        .iter()
        .filter(|m| {
            supports(m, s)
                && (!level.has_bang() || m.bang.is_some())
                && (!level.has_kappa() || m.kappa.is_some())
        })
        .find_map(|m| {
            valuations(m, &atoms, sample, seed)
                .into_iter()
                .find(|v| eval_sequent(m, v, s) == Ok(false))
                .map(|valuation| Countermodel {
                    model: m.clone(),
                    valuation,
                })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rel_quantale;
    use crate::syntax::parse_sequent;

    #[test]
    fn exchange_is_refuted_by_relations() {
        let s = parse_sequent("a, b |- b * a").unwrap();
        let w = find_countermodel(&s, CalculusLevel::L, &[rel_quantale(2)], 1000, DEFAULT_SEED);
        assert!(w.is_some());
        let ok = parse_sequent("a |- a").unwrap();
        assert!(find_countermodel(&ok, CalculusLevel::L, library_models(), 200, DEFAULT_SEED).is_none());
        let der = parse_sequent("!a |- a").unwrap();
        assert!(find_countermodel(&der, CalculusLevel::LBang, library_models(), 200, DEFAULT_SEED).is_none());
    }

    #[test]
    fn sampling_is_deterministic() {
        let m = rel_quantale(2);
        let atoms = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        assert_eq!(valuations(&m, &atoms, 200, 7), valuations(&m, &atoms, 200, 7));
        assert_eq!(valuations(&m, &atoms, 200, 7).len(), 200);
        assert_eq!(valuations(&m, &atoms[..1], 200, 7).len(), 16);
    }
}
