//! Which small topologies do small non-commutative MVSs metrize that no
//! small commutative MVS does?
//!
//! Every MVS with at most 3 elements is enumerated exhaustively, and a sample
//! of 4-element MVSs is added. For each point count up to `max_points`, the
//! metrizable topologies are collected separately for the commutative and
//! non-commutative tables. A topology showing up only on the non-commutative
//! side is a candidate worth a closer look; it settles nothing, since larger
//! commutative MVSs are never tried.
//!
//! Usage: `cargo run --release --example metrizability_experiment [max_points] [samples]`

use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::SeedableRng;

use mvs_core::generate::{numbered_names, random_mvs};
use mvs_core::{check_axioms, search_metrizable, validate, FiniteMvs, FiniteTopology, RawTable, SearchOptions};

fn all_mvs(card: usize) -> Vec<FiniteMvs> {
    let cells = card * card;
    let mut out = Vec::new();
    for code in 0..card.pow(cells as u32) {
        let mut c = code;
        let rows: Vec<Vec<usize>> = (0..card)
            .map(|_| {
                (0..card)
                    .map(|_| {
                        let v = c % card;
                        c /= card;
                        v
                    })
                    .collect()
            })
            .collect();
        let raw = RawTable::new(numbered_names(card), rows).unwrap();
        // only tables with 0 as the neutral, to skip relabelled duplicates
        if check_axioms(&raw).is_mvs() && (0..card).all(|x| raw.rows()[0][x] == x) {
            out.push(validate(&raw).unwrap());
        }
    }
    out
}

fn describe(t: &FiniteTopology) -> String {
    let sets: Vec<String> = t
        .opens()
        .iter()
        .map(|u| format!("{{{}}}", u.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    sets.join(" ")
}

fn main() {
    let mut args = std::env::args().skip(1);
    let max_points: usize = args.next().map_or(3, |a| a.parse().expect("max_points"));
    let samples: usize = args.next().map_or(200, |a| a.parse().expect("samples"));

    let mut tables: Vec<FiniteMvs> = (2..=3).flat_map(all_mvs).collect();
    let mut rng = StdRng::seed_from_u64(0);
    for i in 0..samples {
        tables.push(random_mvs(&mut rng, 4, i % 2 == 0));
    }
    let commutative = tables.iter().filter(|m| m.is_commutative()).count();
    println!(
        "{} tables ({} commutative, {} not)",
        tables.len(),
        commutative,
        tables.len() - commutative
    );

    let options = SearchOptions {
        symmetric: false,
        budget: 1 << 26,
    };
    for n in 1..=max_points {
        let mut seen: BTreeMap<bool, BTreeSet<usize>> = BTreeMap::new();
        let topologies = FiniteTopology::enumerate_all(n);
        for (k, t) in topologies.iter().enumerate() {
            for m in &tables {
                let side = m.is_commutative();
                if seen.get(&side).is_some_and(|s| s.contains(&k)) {
                    continue;
                }
                match search_metrizable(t, m, options) {
                    Ok(Some(_)) => {
                        seen.entry(side).or_default().insert(k);
                    }
                    Ok(None) => {}
                    Err(e) => println!("  skipped a table: {e}"),
                }
            }
        }
        let comm = seen.remove(&true).unwrap_or_default();
        let non = seen.remove(&false).unwrap_or_default();
        println!(
            "{n} points: {} topologies, {} metrizable by a commutative table, {} by a non-commutative one",
            topologies.len(),
            comm.len(),
            non.len()
        );
        for k in non.difference(&comm) {
            println!("  only non-commutative: {}", describe(&topologies[*k]));
        }
    }
}
