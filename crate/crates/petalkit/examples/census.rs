//! Counts the Alexander classes realized by all canonical petal words of a
//! given length (default 7).

use std::collections::BTreeMap;

use petalkit::{alexander_of_petal, PetalPermutation};

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    let mut a = items.to_vec();
    let n = a.len();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn main() {
    let len: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("length must be an odd integer"))
        .unwrap_or(7);
    assert!(len % 2 == 1, "petal words have odd length");

    let tail: Vec<u32> = (1..len as u32).collect();
    let mut classes: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for t in permutations(&tail) {
        let mut word = vec![0u32];
        word.extend(t);
        let sigma = PetalPermutation::new(word).unwrap();
        let inv = alexander_of_petal(&sigma).unwrap();
        *classes.entry(inv.polynomial.coefficient_list()).or_default() += 1;
    }
    for (coeffs, count) in &classes {
        println!("{coeffs:?}: {count} words");
    }
    println!("{} classes over {} words", classes.len(), permutations(&tail).len());
}
