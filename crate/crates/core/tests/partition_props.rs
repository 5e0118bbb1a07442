use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;
use omega_disentangle::partitions::{bell, enumerate_partitions, term_count, SetPartition};

/// Brute force: every labeling of n elements in first-occurrence form,
/// converted to canonical block lists and sorted.
fn oracle_catalog(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let total = n.pow(n as u32);
    for code in 0..total {
        let labels: Vec<usize> = (0..n).map(|i| (code / n.pow(i as u32)) % n).collect();
        // Restricted growth: each label at most one more than the max so far.
        let mut max_seen = None::<usize>;
        let ok = labels.iter().all(|&l| {
            let fine = match max_seen {
                None => l == 0,
                Some(m) => l <= m + 1,
            };
            max_seen = Some(max_seen.map_or(l, |m| m.max(l)));
            fine
        });
        if !ok {
            continue;
        }
        let blocks_n = labels.iter().max().unwrap() + 1;
        if blocks_n == 1 {
            continue;
        }
        let mut blocks = vec![Vec::new(); blocks_n];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l].push(i + 1);
        }
        out.push(blocks);
    }
    out.sort();
    out
}

#[test]
fn enumeration_order_matches_brute_force() {
    for n in 1..=7 {
        let got: Vec<Vec<Vec<usize>>> = enumerate_partitions(n)
            .unwrap()
            .iter()
            .map(|p| p.blocks().to_vec())
            .collect();
        assert_eq!(got, oracle_catalog(n), "n={n}");
    }
}

#[test]
fn enumeration_count_matches_bell_triangle() {
    for n in 1..=10 {
        let catalog = enumerate_partitions(n).unwrap();
        assert_eq!(BigUint::from(catalog.len()), term_count(n), "n={n}");
    }
}

#[test]
fn growth_claim() {
    assert_eq!(term_count(4), BigUint::from(14u32));
    assert!(term_count(4) <= BigUint::from(16u32));
    for n in 5..=12 {
        assert!(term_count(n) > (BigUint::one() << n), "n={n}");
    }
    // The claim fails below five, which is why it is stated for N > 4.
    for n in 1..=4 {
        assert!(term_count(n) <= (BigUint::one() << n));
    }
    assert_eq!(bell(12), BigUint::from(4_213_597u32));
}

#[test]
fn catalogs_are_sorted_distinct_and_valid() {
    for n in 2..=8 {
        let catalog = enumerate_partitions(n).unwrap();
        let parts: Vec<SetPartition> = catalog.iter().collect();
        for w in parts.windows(2) {
            assert!(w[0] < w[1]);
        }
        let unique: HashSet<_> = parts.iter().cloned().collect();
        assert_eq!(unique.len(), parts.len());
        for p in &parts {
            assert!(p.block_count() >= 2);
            let rebuilt = SetPartition::new(n, p.blocks().to_vec()).unwrap();
            assert_eq!(&rebuilt, p);
        }
    }
}

#[test]
fn repeated_enumeration_is_identical() {
    let a = enumerate_partitions(9).unwrap();
    let b = enumerate_partitions(9).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
}

#[test]
fn cap_sized_catalog() {
    let catalog = enumerate_partitions(12).unwrap();
    assert_eq!(catalog.len(), 4_213_596);
    assert_eq!(catalog.get(0).unwrap().block_count(), 12);
    assert!(catalog.get(catalog.len()).is_none());
}

#[test]
fn json_lists_of_lists() {
    let json = enumerate_partitions(3).unwrap().to_json().unwrap();
    assert_eq!(json, "[[[1],[2],[3]],[[1],[2,3]],[[1,2],[3]],[[1,3],[2]]]");
}
