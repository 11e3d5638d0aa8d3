//! Acceptance run: one PASS/FAIL line per criterion, with its time limit.
//!
//! Every library answer is compared against a small independent check written
//! here on plain `Vec<Vec<usize>>` tables.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use mvs_core::algebra::Axiom;
use mvs_core::format::{parse, serialize, Document};
use mvs_core::generate::{numbered_names, random_hom, random_mvs, random_quasimetric};
use mvs_core::words::{find_separating_model, verify_representation, check_m4, Refutation};
use mvs_core::{
    canonical_quasimetric, check_axioms, find_isomorphism, first_isomorphism, fixtures, is_congruence, is_sub_mvs,
    mutual_order_congruence, quotient, quotient_metrize, search_metrizable, transform, validate, ElemId,
    ElemRelation, FiniteMvs, FiniteTopology, MvsMap, Presentation, QuasimetricTable, RawTable,
    SearchOptions, Tri, Word,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---------------------------------------------------------------------------
// Oracles on bare tables. The neutral element is whatever index acts as one.

type Table = Vec<Vec<usize>>;

fn table(m: &FiniteMvs) -> Table {
    m.to_raw().rows()
}

fn neutral_of(t: &Table) -> Option<usize> {
    (0..t.len()).find(|&e| (0..t.len()).all(|x| t[e][x] == x && t[x][e] == x))
}

fn leq(t: &Table, a: usize, b: usize) -> bool {
    (0..t.len()).any(|k| t[a][k] == b)
}

fn lt(t: &Table, e: usize, a: usize, b: usize) -> bool {
    (0..t.len()).any(|k| k != e && t[a][k] == b)
}

fn oracle_failures(t: &Table) -> Vec<&'static str> {
    let n = t.len();
    let mut out = Vec::new();
    if n < 2 {
        out.push("card");
    }
    let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
    if !assoc {
        out.push("M1");
    }
    let Some(e) = neutral_of(t) else {
        out.extend(["M2", "M3", "M4"]);
        return out;
    };
    if (0..n).any(|a| (0..n).any(|b| t[a][b] == e && (a != e || b != e))) {
        out.push("M3");
    }
    let nz: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    let m4 = nz.iter().all(|&a| nz.iter().all(|&b| nz.iter().any(|&c| leq(t, c, a) && leq(t, c, b))));
    if !m4 {
        out.push("M4");
    }
    out
}

/// Classes of an equivalence, each sorted, ordered by least member.
fn classes_of(r: &ElemRelation) -> Vec<Vec<usize>> {
    let n = r.size();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for a in 0..n {
        if seen[a] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&b| r.get(ElemId(a), ElemId(b))).collect();
        for &b in &class {
            seen[b] = true;
        }
        out.push(class);
    }
    out
}

/// `[m] + [n] = [m+n]` computed straight from the classes.
fn quotient_table(t: &Table, classes: &[Vec<usize>]) -> Table {
    let mut class_of = vec![0; t.len()];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    classes
        .iter()
        .map(|ca| classes.iter().map(|cb| class_of[t[ca[0]][cb[0]]]).collect())
        .collect()
}

fn is_hom(d: &Table, c: &Table, h: &[usize]) -> bool {
    let (de, ce) = (neutral_of(d).unwrap(), neutral_of(c).unwrap());
    let h1 = (0..d.len()).all(|m| (h[m] == ce) == (m == de));
    h1 && (0..d.len()).all(|a| (0..d.len()).all(|b| h[d[a][b]] == c[h[a]][h[b]]))
}

fn oracle_fine(c: &Table, h: &[usize]) -> bool {
    let ce = neutral_of(c).unwrap();
    let images: BTreeSet<usize> = h.iter().copied().filter(|&x| x != ce).collect();
    (0..c.len()).filter(|&n| n != ce).all(|n| images.iter().any(|&i| leq(c, i, n)))
}

/// Open sets by the neighbourhood-base criterion on a bare distance table.
fn oracle_topology(t: &Table, dist: &[Vec<usize>]) -> BTreeSet<u32> {
    let n = dist.len();
    let e = neutral_of(t).unwrap();
    let ball = |x: usize, m: usize| -> u32 {
        (0..n).filter(|&y| lt(t, e, dist[x][y], m)).fold(0, |acc, y| acc | 1 << y)
    };
    (0..1u32 << n)
        .filter(|&u| {
            (0..n)
                .filter(|&x| u >> x & 1 == 1)
                .all(|x| (0..t.len()).any(|m| m != e && ball(x, m) & !u == 0))
        })
        .collect()
}

fn dist_of(q: &QuasimetricTable) -> Vec<Vec<usize>> {
    q.rows().iter().map(|r| r.iter().map(|v| v.0).collect()).collect()
}

fn opens(t: &FiniteTopology) -> BTreeSet<u32> {
    t.opens().iter().map(|p| p.0).collect()
}

fn permuted(rng: &mut StdRng, m: &FiniteMvs) -> (FiniteMvs, Vec<ElemId>) {
    let n = m.card();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (2..n).rev() {
        let j = rng.gen_range(1..=i);
        perm.swap(i, j);
    }
    let t = table(m);
    let mut rows = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            rows[perm[a]][perm[b]] = perm[t[a][b]];
        }
    }
    let raw = RawTable::new(numbered_names(n), rows).unwrap();
    (validate(&raw).unwrap(), perm.into_iter().map(ElemId).collect())
}

// ---------------------------------------------------------------------------

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn load(name: &str) -> Document {
    parse(&fs::read_to_string(fixture_dir().join(name)).unwrap()).unwrap()
}

fn presentation(name: &str) -> Presentation {
    match load(name) {
        Document::Presentation(p) => p,
        other => panic!("{name} is a {}", other.kind()),
    }
}

fn topology(name: &str) -> FiniteTopology {
    match load(name) {
        Document::Topology(t) => t,
        other => panic!("{name} is a {}", other.kind()),
    }
}

fn criterion_1() -> Outcome {
    for (name, m) in [("MAX2", fixtures::max2()), ("SAT3", fixtures::sat3()), ("M_AB", fixtures::m_ab())] {
        let raw = m.to_raw();
        ensure!(check_axioms(&raw).is_mvs(), "{name} rejected");
        ensure!(oracle_failures(&raw.rows()).is_empty(), "oracle rejects {name}");
    }
    for (name, raw, want, oracle_want) in [
        ("Z2", fixtures::z2_raw(), Axiom::M3, "M3"),
        ("left projection", fixtures::left_projection_raw(), Axiom::M4, "M4"),
    ] {
        let failed = check_axioms(&raw).failed();
        ensure!(failed == [want], "{name} fails {failed:?}");
        ensure!(oracle_failures(&raw.rows()) == [oracle_want], "oracle disagrees on {name}");
    }
    Ok("3 MVSs valid; Z2 fails M3 only; left projection fails M4 only".into())
}

/// Random pairs `(M, R)` with `R` a hom kernel or a mutual-order relation.
fn random_pairs(rng: &mut StdRng, want: usize) -> Vec<(FiniteMvs, ElemRelation)> {
    let mut out = Vec::new();
    while out.len() < want {
        let card = rng.gen_range(2..=6);
        let commutative = rng.gen_bool(0.5);
        let m = random_mvs(rng, card, commutative);
        if commutative && rng.gen_bool(0.5) {
            out.push((m.clone(), mutual_order_congruence(&m).unwrap()));
            continue;
        }
        let target_card = rng.gen_range(2..=card.max(2));
        let comm = rng.gen_bool(0.5);
        let n = random_mvs(rng, target_card, comm);
        if let Some(h) = random_hom(rng, &m, &n) {
            out.push((m, h.kernel()));
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let pairs = random_pairs(&mut rng, 120);
    let mut nontrivial = 0;
    for (m, r) in &pairs {
        ensure!(is_congruence(m, r).is_ok(), "generated relation is not a congruence");
        let t = table(m);
        let classes = classes_of(r);
        let qt = quotient_table(&t, &classes);
        let k = qt.len();
        if k < m.card() {
            nontrivial += 1;
        }
        // i) associativity
        ensure!(
            (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| qt[qt[a][b]][c] == qt[a][qt[b][c]]))),
            "quotient not associative"
        );
        // ii) order transfers
        let cls = |x: usize| classes.iter().position(|c| c.contains(&x)).unwrap();
        for a in 0..t.len() {
            for b in 0..t.len() {
                ensure!(!leq(&t, a, b) || leq(&qt, cls(a), cls(b)), "⊴ not preserved at ({a}, {b})");
            }
        }
        // iii) [e] is neutral
        let ce = cls(0);
        ensure!((0..k).all(|x| qt[ce][x] == x && qt[x][ce] == x), "[e] not neutral");
        // iv) trivial [e] gives an MVS
        if classes[ce] == [0] {
            ensure!(oracle_failures(&qt).is_empty(), "quotient fails {:?}", oracle_failures(&qt));
            let q = quotient(m, r).map_err(|e| e.to_string())?;
            ensure!(table(&q.mvs) == qt, "library quotient differs from class table");
        }
        // v) commutativity
        if m.is_commutative() {
            ensure!((0..k).all(|a| (0..k).all(|b| qt[a][b] == qt[b][a])), "commutativity lost");
        }
    }
    Ok(format!("{} pairs, {nontrivial} with a proper quotient", pairs.len()))
}

fn check_claim(m: &FiniteMvs) -> Result<(), String> {
    let r = mutual_order_congruence(m).map_err(|e| e.to_string())?;
    let q = quotient(m, &r).map_err(|e| e.to_string())?;
    let (t, qt) = (table(m), table(&q.mvs));
    for a in m.elements() {
        for b in m.elements() {
            let (ca, cb) = (q.class(a).0, q.class(b).0);
            ensure!(!leq(&qt, ca, cb) || leq(&t, a.0, b.0), "[m]⊴[n] but not m⊴n at ({}, {})", a.0, b.0);
            ensure!(!lt(&qt, 0, ca, cb) || lt(&t, 0, a.0, b.0), "[m]◁[n] but not m◁n at ({}, {})", a.0, b.0);
        }
    }
    // partially ordered
    let k = qt.len();
    for a in 0..k {
        for b in 0..k {
            ensure!(a == b || !(leq(&qt, a, b) && leq(&qt, b, a)), "quotient order not antisymmetric");
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let m = fixtures::m_ab();
    let q = quotient(&m, &mutual_order_congruence(&m).unwrap()).map_err(|e| e.to_string())?;
    let iso = find_isomorphism(&q.mvs, &fixtures::max2()).ok_or("quotient of M_AB not isomorphic to MAX2")?;
    let h: Vec<usize> = iso.mapping().iter().map(|x| x.0).collect();
    ensure!(is_hom(&table(&q.mvs), &table(&fixtures::max2()), &h), "reported isomorphism is not a hom");
    ensure!(iso.is_bijective(), "reported isomorphism is not bijective");
    check_claim(&m)?;

    let mut checked = 0;
    for f in fixtures::all().iter().filter(|f| f.is_commutative()) {
        check_claim(f)?;
        checked += 1;
    }
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..100 {
        let card = rng.gen_range(2..=6);
        check_claim(&random_mvs(&mut rng, card, true))?;
        checked += 1;
    }
    Ok(format!("M_AB/R ≅ MAX2; claim holds on {checked} commutative MVSs"))
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut homs = 0;
    let mut isos = 0;
    let mut attempts = 0;
    while homs < 120 {
        attempts += 1;
        ensure!(attempts < 20_000, "could not generate enough homomorphisms");
        let dc = rng.gen_range(2..=6);
        let cc = rng.gen_range(2..=6);
        let (dcomm, ccomm) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
        let d = random_mvs(&mut rng, dc, dcomm);
        let c = random_mvs(&mut rng, cc, ccomm);
        let Some(h) = random_hom(&mut rng, &d, &c) else { continue };
        homs += 1;
        let (dt, ct) = (table(&d), table(&c));
        let map: Vec<usize> = h.mapping().iter().map(|x| x.0).collect();
        ensure!(is_hom(&dt, &ct, &map), "generated map is not a homomorphism");

        ensure!(is_sub_mvs(&c, &h.image()).is_ok(), "image is not a sub-MVS");
        let image: BTreeSet<usize> = map.iter().copied().collect();
        ensure!(
            image.iter().all(|&a| image.iter().all(|&b| image.contains(&ct[a][b]))),
            "image not closed"
        );

        let k = h.kernel();
        ensure!(is_congruence(&d, &k).is_ok(), "kernel is not a congruence");
        ensure!(d.nonzero().all(|x| !k.get(x, d.neutral())), "kernel has a non-trivial e-class");
        ensure!(
            d.elements().all(|a| d.elements().all(|b| k.get(a, b) == (map[a.0] == map[b.0]))),
            "kernel differs from h(m) = h(n)"
        );

        let star = first_isomorphism(&h);
        ensure!(star.is_bijective(), "first isomorphism not bijective");
        let star_map: Vec<usize> = star.mapping().iter().map(|x| x.0).collect();
        ensure!(is_hom(&table(star.domain()), &table(star.codomain()), &star_map), "h* is not a hom");
        ensure!(star.domain().card() == image.len(), "M/ker h and h(M) differ in size");

        ensure!(h.order_violation().is_none(), "library reports an order violation");
        let de = 0;
        let ce = c.neutral().0;
        for a in 0..dt.len() {
            for b in 0..dt.len() {
                ensure!(!leq(&dt, a, b) || leq(&ct, map[a], map[b]), "⊴ not preserved");
                ensure!(!lt(&dt, de, a, b) || lt(&ct, ce, map[a], map[b]), "◁ not preserved");
            }
        }

        for iso in [Some(star), h.is_bijective().then(|| h.clone())].into_iter().flatten() {
            isos += 1;
            let m: Vec<usize> = iso.mapping().iter().map(|x| x.0).collect();
            ensure!(iso.is_fine().is_ok(), "isomorphism reported not fine");
            ensure!(oracle_fine(&table(iso.codomain()), &m), "isomorphism not fine by oracle");
        }
    }
    Ok(format!("{homs} homomorphisms, {isos} isomorphisms"))
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let (mut tables, mut fine, mut strict) = (0, 0, 0);
    while tables < 80 {
        let card = rng.gen_range(2..=4);
        let commutative = tables % 2 == 0;
        let m = random_mvs(&mut rng, card, commutative);
        let points = rng.gen_range(1..=4);
        let symmetric = rng.gen_bool(0.3);
        let q = random_quasimetric(&mut rng, numbered_names(points), &m, symmetric);
        tables += 1;
        let t = table(&m);
        let dist = dist_of(&q);
        let tf = oracle_topology(&t, &dist);

        ensure!(q.directedness_failure().is_none(), "balls not directed");
        let e = m.neutral().0;
        for (x, row) in dist.iter().enumerate() {
            for a in m.nonzero() {
                for b in m.nonzero() {
                    let ba: Vec<usize> = (0..points).filter(|&y| lt(&t, e, row[y], a.0)).collect();
                    let bb: Vec<usize> = (0..points).filter(|&y| lt(&t, e, row[y], b.0)).collect();
                    let nested = (1..card).any(|c| {
                        let bc: Vec<usize> = (0..points).filter(|&y| lt(&t, e, row[y], c)).collect();
                        bc.iter().all(|y| ba.contains(y) && bb.contains(y))
                    });
                    ensure!(nested, "no ball inside B({x},{}) ∩ B({x},{})", a.0, b.0);
                }
            }
        }
        ensure!(opens(&q.induced_topology()) == tf, "induced topology differs from oracle");

        // fine homomorphisms coarsen
        let cc = rng.gen_range(2..=4);
        let ncomm = rng.gen_bool(0.5);
        let n = random_mvs(&mut rng, cc, ncomm);
        if let Some(h) = random_hom(&mut rng, &m, &n) {
            let hq = transform(&h, &q).map_err(|e| e.to_string())?;
            let th = oracle_topology(&table(&n), &dist_of(&hq));
            let map: Vec<usize> = h.mapping().iter().map(|x| x.0).collect();
            if oracle_fine(&table(&n), &map) {
                fine += 1;
                ensure!(h.is_fine().is_ok(), "oracle-fine map reported not fine");
                ensure!(th.is_subset(&tf), "fine h gives a topology not inside T_f");
                if th != tf {
                    strict += 1;
                }
            }
        }

        // isomorphisms preserve the topology
        let (pm, perm) = permuted(&mut rng, &m);
        let iso = MvsMap::new(m.clone(), pm.clone(), perm).map_err(|e| e.to_string())?;
        let iq = transform(&iso, &q).map_err(|e| e.to_string())?;
        ensure!(oracle_topology(&table(&pm), &dist_of(&iq)) == tf, "isomorphism changed the topology");

        // inclusion into M∞
        let (inc, ext) = MvsMap::infinity_inclusion(&m);
        let eq = transform(&inc, &q).map_err(|e| e.to_string())?;
        ensure!(oracle_topology(&table(&ext.mvs), &dist_of(&eq)) == tf, "inclusion into M∞ changed the topology");

        // quotient by mutual order
        if commutative {
            let qq = quotient_metrize(&q).map_err(|e| e.to_string())?;
            ensure!(
                oracle_topology(&table(qq.mvs()), &dist_of(&qq)) == tf,
                "quotient_metrize changed the topology"
            );
        }
    }
    ensure!(fine >= 10, "only {fine} fine homomorphisms exercised");
    Ok(format!("{tables} tables, {fine} fine homs ({strict} strictly coarser)"))
}

fn criterion_6() -> Outcome {
    let q = canonical_quasimetric(&fixtures::sat3()).map_err(|e| e.to_string())?;
    let want: BTreeSet<u32> = [0b000, 0b001, 0b011, 0b111].into_iter().collect();
    let got = opens(&q.induced_topology());
    ensure!(got == want, "canonical SAT3 topology is {got:?}");
    ensure!(oracle_topology(&table(&fixtures::sat3()), &dist_of(&q)) == want, "oracle disagrees");
    Ok("{∅, {0}, {0,1}, {0,1,2}}".into())
}

/// Every topology any quasimetric table on `n` points into `m` induces.
fn metrizable_oracle(m: &FiniteMvs, n: usize) -> BTreeSet<BTreeSet<u32>> {
    let t = table(m);
    let k = m.card();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|(x, y)| x != y).collect();
    let mut out = BTreeSet::new();
    for code in 0..k.pow(cells.len() as u32) {
        let mut dist = vec![vec![0; n]; n];
        let mut c = code;
        for &(x, y) in &cells {
            dist[x][y] = c % k;
            c /= k;
        }
        let triangle = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| leq(&t, dist[x][z], t[dist[x][y]][dist[y][z]]))));
        if triangle {
            out.insert(oracle_topology(&t, &dist));
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let options = SearchOptions::default();
    let sierpinski = topology("sierpinski.top");
    let (max2, sat3) = (fixtures::max2(), fixtures::sat3());
    let in_max2 = search_metrizable(&sierpinski, &max2, options).map_err(|e| e.to_string())?;
    ensure!(in_max2.is_none(), "Sierpiński reported MAX2-metrizable");
    ensure!(search_metrizable(&sierpinski, &sat3, options).map_err(|e| e.to_string())?.is_some(), "Sierpiński not SAT3-metrizable");
    for n in 1..=3 {
        let points = numbered_names(n);
        for t in [FiniteTopology::discrete(points.clone()), FiniteTopology::indiscrete(points)] {
            ensure!(search_metrizable(&t, &sat3, options).map_err(|e| e.to_string())?.is_some(), "{n}-point topology not SAT3-metrizable");
        }
    }
    for (name, m) in [("MAX2", &max2), ("SAT3", &sat3)] {
        for n in 1..=3 {
            let oracle = metrizable_oracle(m, n);
            for t in FiniteTopology::enumerate_all(n) {
                let found = search_metrizable(&t, m, options).map_err(|e| e.to_string())?;
                ensure!(found.is_some() == oracle.contains(&opens(&t)), "{name}, n={n}: search disagrees with enumeration on {:?}", opens(&t));
                if let Some(q) = found {
                    ensure!(oracle_topology(&table(m), &dist_of(&q)) == opens(&t), "returned table induces another topology");
                }
            }
        }
    }
    Ok("Sierpiński: MAX2 no, SAT3 yes; all topologies on ≤3 points match enumeration".into())
}

/// Every word reachable from `start` by one-step moves, or `None` if more than
/// `cap` words are found.
fn unbounded_class(p: &Presentation, start: &[usize], cap: usize) -> Option<BTreeSet<Vec<usize>>> {
    let mut seen = BTreeSet::from([start.to_vec()]);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(w) = queue.pop_front() {
        let mut next = Vec::new();
        for r in p.relations() {
            for i in 0..w.len() {
                if i + 1 < w.len() && w[i] == r.a && w[i + 1] == r.b {
                    next.push([&w[..i], &[r.c], &w[i + 2..]].concat());
                }
                if w[i] == r.c {
                    next.push([&w[..i], &[r.a, r.b], &w[i + 1..]].concat());
                }
            }
        }
        for v in next {
            if seen.insert(v.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(v);
            }
        }
    }
    Some(seen)
}

fn one_step_oracle(p: &Presentation, u: &[usize], v: &[usize]) -> bool {
    let short_long = |s: &[usize], l: &[usize]| {
        l.len() == s.len() + 1
            && (0..s.len()).any(|i| {
                p.relations().iter().any(|r| {
                    s[i] == r.c && l[..i] == s[..i] && l[i] == r.a && l[i + 1] == r.b && l[i + 2..] == s[i + 1..]
                })
            })
    };
    short_long(u, v) || short_long(v, u)
}

/// Least member (length, then letters) of every class within length `bound`.
fn class_representatives(p: &Presentation, bound: usize) -> Vec<Vec<usize>> {
    let k = p.alphabet().len();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..bound {
        layer = layer.iter().flat_map(|w| (0..k).map(move |a| [w.as_slice(), &[a]].concat())).collect();
        words.extend(layer.iter().cloned());
    }
    let mut label: Vec<usize> = (0..words.len()).collect();
    loop {
        let mut changed = false;
        for i in 0..words.len() {
            for j in 0..words.len() {
                if label[i] != label[j] && one_step_oracle(p, &words[i], &words[j]) {
                    let l = label[i].min(label[j]);
                    changed |= label[i] != l || label[j] != l;
                    label[i] = l;
                    label[j] = l;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let reps: BTreeSet<usize> = label.into_iter().collect();
    reps.into_iter().map(|i| words[i].clone()).collect()
}

fn criterion_8() -> Outcome {
    let p = presentation("p_abcd.pres");
    let w = |p: &Presentation, s: &str| p.parse_word(s).unwrap();
    let chain = match mvs_core::words::words_equal(&p, &w(&p, "abcd"), &w(&p, "c"), 4).map_err(|e| e.to_string())? {
        Tri::Proved(chain) => chain,
        _ => return Err("(abcd, c) not proved".into()),
    };
    ensure!(chain.len() == 3, "chain has {} steps", chain.len());
    let mut cur = chain.start.letters().to_vec();
    for step in &chain.steps {
        ensure!(step.from.letters() == cur, "chain does not continue");
        ensure!(one_step_oracle(&p, &cur, step.to.letters()), "step is not a one-step move");
        cur = step.to.letters().to_vec();
    }
    ensure!(cur == w(&p, "c").letters(), "chain ends at {cur:?}");

    match mvs_core::words::words_equal(&p, &w(&p, "abcd"), &w(&p, "d"), 4).map_err(|e| e.to_string())? {
        Tri::Refuted(Refutation::ExactClass(rep)) => ensure!(rep == w(&p, "d"), "refuted via {rep:?}"),
        _ => return Err("(abcd, d) not refuted by an exact class".into()),
    }
    let d_class = unbounded_class(&p, w(&p, "d").letters(), 1000).ok_or("class of d is infinite")?;
    ensure!(d_class == BTreeSet::from([w(&p, "d").0]), "class of d is {d_class:?}");

    let free = presentation("p_free.pres");
    ensure!(check_m4(&free, 4).map_err(|e| e.to_string())?.is_refuted(), "free {{a,b}} passes M4");
    let p_ab = presentation("p_ab.pres");
    ensure!(check_m4(&p_ab, 4).map_err(|e| e.to_string())?.is_proved(), "P_AB fails M4");

    let listed = ["0", "a", "b", "aa", "ba", "bb", "aaa", "baa", "bba", "bbb"];
    let mut at4: Vec<&str> = listed.to_vec();
    at4.extend(["aaaa", "baaa", "bbaa", "bbba", "bbbb"]);
    for (bound, want) in [(3, listed.to_vec()), (4, at4)] {
        let closed = mvs_core::words::close(&p_ab, bound).map_err(|e| e.to_string())?;
        let got: Vec<String> = closed.representatives().iter().map(|r| p_ab.format_word(r)).collect();
        ensure!(got == want, "P_AB classes at bound {bound}: {got:?}");
        let oracle: Vec<String> =
            class_representatives(&p_ab, bound).into_iter().map(|r| p_ab.format_word(&Word(r))).collect();
        ensure!(oracle == want, "oracle classes at bound {bound}: {oracle:?}");
    }

    let p5 = presentation("p5.pres");
    let (ab, ba) = (w(&p5, "ab"), w(&p5, "ba"));
    let model = match mvs_core::words::words_equal(&p5, &ab, &ba, 4).map_err(|e| e.to_string())? {
        Tri::Refuted(Refutation::Model(model)) => model,
        Tri::Unknown => find_separating_model(&p5, &ab, &ba, 3).ok_or("no separating model of size ≤ 3")?,
        _ => return Err("(ab, ba) decided without a model".into()),
    };
    ensure!(model.size <= 3, "model of size {}", model.size);
    let s = model.size;
    let mul = |x: usize, y: usize| model.table[x * s + y];
    ensure!((0..s).all(|x| mul(0, x) == x && mul(x, 0) == x), "model has no identity 0");
    ensure!(
        (0..s).all(|x| (0..s).all(|y| (0..s).all(|z| mul(mul(x, y), z) == mul(x, mul(y, z))))),
        "model not associative"
    );
    let eval = |word: &Word| word.letters().iter().fold(0, |acc, &l| mul(acc, model.assignment[l]));
    for r in p5.relations() {
        ensure!(eval(&Word(vec![r.a, r.b])) == eval(&Word(vec![r.c])), "model violates a relation");
    }
    ensure!(eval(&ab) != eval(&ba), "model does not separate ab and ba");
    Ok(format!("3-step chain; {{d}} exact; M4 as expected; 10 + 5 classes; model of size {s}"))
}

fn criterion_9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut all = fixtures::all();
    for i in 0..60 {
        let card = rng.gen_range(2..=5);
        all.push(random_mvs(&mut rng, card, i % 2 == 0));
    }
    for m in &all {
        let report = verify_representation(m, 4).map_err(|e| e.to_string())?;
        ensure!(report.holds(), "representation fails: {:?}", report.failure);
        // h(m) = [m] respects addition: the class of the concatenated
        // representatives evaluates to the sum
        let assignment: Vec<ElemId> = m.nonzero().collect();
        for a in m.elements() {
            let value = mvs_core::words::eval_word(m, &assignment, &report.classes[a.0]);
            ensure!(value == a, "representative of {} evaluates to {}", a.0, value.0);
        }
        let reps: BTreeSet<&Word> = report.classes.iter().collect();
        ensure!(reps.len() == m.card(), "representatives not distinct");
    }
    Ok(format!("{} MVSs at bound 4", all.len()))
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let dir = fixture_dir();
    let mut argv = vec!["mvs".to_string()];
    for a in args {
        let path = dir.join(a);
        argv.push(if path.is_file() { path.to_string_lossy().into_owned() } else { a.to_string() });
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = mvs_core::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn criterion_10() -> Outcome {
    let mut files: Vec<PathBuf> = fs::read_dir(fixture_dir()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    for path in &files {
        let text = fs::read_to_string(path).unwrap();
        let doc = parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure!(parse(&serialize(&doc)).as_ref() == Ok(&doc), "{} does not round-trip", path.display());
    }
    let cases: [(&[&str], i32); 13] = [
        (&["check", "m_sat3.mvs"], 0),
        (&["check", "z2.mvs"], 1),
        (&["check", "missing.mvs"], 2),
        (&["words-eq", "p_abcd.pres", "abcd", "c"], 0),
        (&["words-eq", "p_abcd.pres", "abcd", "d"], 1),
        (&["words-eq", "p_idem.pres", "a", "ab", "--max-model-size", "0"], 3),
        (&["words-m4", "p_ab.pres"], 0),
        (&["words-m4", "p_free.pres"], 1),
        (&["words-m4", "p_idem.pres"], 3),
        (&["metrize", "sierpinski.top", "m_sat3.mvs"], 0),
        (&["metrize", "sierpinski.top", "m_max2.mvs"], 1),
        (&["metrize", "discrete3.top", "m_sat4.mvs", "--budget", "100"], 3),
        (&["words-eq", "p_abcd.pres", "abcz", "c"], 2),
    ];
    let mut codes = BTreeMap::new();
    for (args, want) in cases {
        let (code, out) = run_cli(args);
        ensure!(code == want, "{args:?} exited {code}, expected {want}: {}", out.lines().next().unwrap_or(""));
        *codes.entry(code).or_insert(0) += 1;
    }
    Ok(format!("{} fixtures round-trip; exit codes {codes:?}", files.len()))
}

fn main() -> ExitCode {
    let criteria: [(fn() -> Outcome, Duration); 10] = [
        (criterion_1, Duration::from_secs(1)),
        (criterion_2, Duration::from_secs(10)),
        (criterion_3, Duration::from_secs(10)),
        (criterion_4, Duration::from_secs(30)),
        (criterion_5, Duration::from_secs(30)),
        (criterion_6, Duration::from_secs(1)),
        (criterion_7, Duration::from_secs(5)),
        (criterion_8, Duration::from_secs(30)),
        (criterion_9, Duration::from_secs(60)),
        (criterion_10, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (i, (run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let secs = elapsed.as_secs_f64();
        let line = match outcome {
            Ok(detail) if elapsed <= *limit => format!("PASS ({secs:.2}s, limit {}s): {detail}", limit.as_secs()),
            Ok(detail) => format!("FAIL (took {secs:.2}s, limit {}s): {detail}", limit.as_secs()),
            Err(why) => format!("FAIL ({secs:.2}s): {why}"),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("criterion {}: {line}", i + 1);
    }
    if failed == 0 {
        println!("acceptance: 10/10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria fail");
        ExitCode::FAILURE
    }
}
