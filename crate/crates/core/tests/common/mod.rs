#![allow(dead_code)]

use corels_core::{AntecedentSet, BitVec, Lambda, LabeledDataset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LAMBDAS: [&str; 4] = ["0", "0.01", "0.05", "0.1"];

/// A random instance with `N` in [16, 64] and `M` in [4, 8]. Labels lean on
/// a hidden rule so that non-empty optima are common.
pub fn random_instance(seed: u64) -> (LabeledDataset, Lambda) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(16..=64);
    let m = rng.gen_range(4..=8);
    let lambda = LAMBDAS[rng.gen_range(0..LAMBDAS.len())].parse().unwrap();
    sized_instance(&mut rng, n, m, lambda)
}

pub fn sized_instance(rng: &mut ChaCha8Rng, n: usize, m: usize, lambda: Lambda) -> (LabeledDataset, Lambda) {
    let caps: Vec<BitVec> = (0..m)
        .map(|_| {
            let p = rng.gen_range(0.1..0.6);
            BitVec::from_bools((0..n).map(|_| rng.gen_bool(p)))
        })
        .collect();
    let noise = rng.gen_range(0.0..0.4);
    let hidden = rng.gen_range(0..m);
    let labels = BitVec::from_bools((0..n).map(|i| caps[hidden].get(i) != rng.gen_bool(noise)));
    let set = AntecedentSet::from_named(n, caps.into_iter().enumerate().map(|(i, c)| (format!("a{i}"), c))).unwrap();
    (LabeledDataset::new(set, labels).unwrap(), lambda)
}

/// Prefix and default mistakes of `prefix`, scored one sample at a time.
pub fn score(d: &LabeledDataset, prefix: &[u16]) -> (usize, usize) {
    let k = prefix.len();
    let mut totals = vec![0usize; k + 1];
    let mut ones = vec![0usize; k + 1];
    for s in 0..d.n_samples() {
        let slot = prefix
            .iter()
            .position(|&a| d.antecedents.get(a).captures.get(s))
            .unwrap_or(k);
        totals[slot] += 1;
        ones[slot] += d.labels.get(s) as usize;
    }
    let minority = |t: usize, o: usize| if o >= t - o { t - o } else { o };
    let prefix_mistakes = (0..k).map(|j| minority(totals[j], ones[j])).sum();
    (prefix_mistakes, minority(totals[k], ones[k]))
}

/// Every ordered selection of distinct antecedents starting with `prefix`,
/// including `prefix` itself.
pub fn extensions(prefix: &[u16], m: usize, out: &mut Vec<Vec<u16>>) {
    out.push(prefix.to_vec());
    for a in 0..m as u16 {
        if !prefix.contains(&a) {
            let mut p = prefix.to_vec();
            p.push(a);
            extensions(&p, m, out);
        }
    }
}
