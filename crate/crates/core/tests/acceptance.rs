//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest harness so that the
//! report is always printed; the process exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use groupoid_burnside::burnside::grothendieck::{
    grothendieck_equal, pair_add, pair_mul, GrothendieckPair, Naturals, ProductRig,
};
use groupoid_burnside::burnside::{induction_hom, product_decomposition};
use groupoid_burnside::ghost::{ghost_apply, ghost_injective, ghost_matrix, primitive_idempotents};
use groupoid_burnside::group::GroupTable;
use groupoid_burnside::gset::{isomorphic, IsoOutcome};
use groupoid_burnside::random::{self, FixtureRng, GroupoidBounds};
use groupoid_burnside::subconj::{
    conjugally_equivalent, conjugated_isotropy_subgroups, DEFAULT_SEARCH_CAP,
};
use groupoid_burnside::{
    BurnsideRing, FiniteGroupoid, GroupoidMorphism, MarkTable, OneObjectSubgroupoid, RightGSet,
    Subgroupoid, TableOptions,
};

use common::*;

/// Time limits per criterion; `None` where no limit is set.
const LIMITS: [Option<Duration>; 11] = [
    Some(Duration::from_secs(1)),
    Some(Duration::from_secs(1)),
    Some(Duration::from_secs(1)),
    Some(Duration::from_secs(30)),
    Some(Duration::from_secs(60)),
    Some(Duration::from_secs(30)),
    None,
    Some(Duration::from_secs(5)),
    None,
    None,
    None,
];

/// Groupoid count for the table-of-marks shape check, reused by the ghost check.
const SHAPE_GROUPOIDS: usize = 24;
const SHAPE_SEED: u64 = 2024;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring(g: FiniteGroupoid) -> BurnsideRing {
    BurnsideRing::new(&Arc::new(g), &TableOptions::default()).expect("ring")
}

/// Basis indices of `[G/G]` and `[G/1]` for a one-object group.
fn v_and_w(r: &BurnsideRing) -> (usize, usize) {
    let reps = r.table().reps();
    let v = reps
        .iter()
        .position(|h| h.order() == r.groupoid().num_arrows())
        .unwrap();
    let w = reps.iter().position(|h| h.order() == 1).unwrap();
    (v, w)
}

fn cyclic_ring_law() -> Result<String, String> {
    for p in [2usize, 3, 5] {
        let r = ring(FiniteGroupoid::from_group(&GroupTable::cyclic(p)));
        ensure(r.rank() == 2, || format!("C{p}: rank {}", r.rank()))?;
        let (v, w) = v_and_w(&r);
        let (bv, bw) = (r.basis(v), r.basis(w));
        ensure(r.mul(&bv, &bv).unwrap() == bv, || format!("C{p}: v² ≠ v"))?;
        ensure(r.mul(&bv, &bw).unwrap() == bw, || format!("C{p}: vw ≠ w"))?;
        ensure(r.mul(&bw, &bw).unwrap() == bw.scale(p as i64), || {
            format!("C{p}: w² ≠ pw")
        })?;
    }
    Ok("v²=v, vw=w, w²=pw for p = 2, 3, 5".into())
}

fn cyclic_idempotents() -> Result<String, String> {
    for p in [2i64, 3, 5, 7] {
        let r = ring(FiniteGroupoid::from_group(&GroupTable::cyclic(p as usize)));
        let (v, w) = v_and_w(&r);
        let es = primitive_idempotents(&r).map_err(|e| e.to_string())?;
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let mut e1 = vec![q(0, 1); 2];
        e1[w] = q(1, p);
        let mut eg = vec![q(0, 1); 2];
        eg[v] = q(1, 1);
        eg[w] = q(-1, p);
        let mut got: Vec<Vec<BigRational>> = es.iter().map(|e| e.coeffs.clone()).collect();
        got.sort();
        let mut want = vec![e1, eg];
        want.sort();
        ensure(got == want, || format!("C{p}: idempotents {got:?}"))?;
        let sum = es[0].add(&es[1]);
        ensure(
            sum.coeffs == r.one().coeffs.iter().map(|&c| q(c, 1)).collect::<Vec<_>>(),
            || format!("C{p}: Σe ≠ 1"),
        )?;
        for (i, a) in es.iter().enumerate() {
            for (j, b) in es.iter().enumerate() {
                let prod = a.mul(b, &r);
                let ok = if i == j { prod == *a } else { prod.is_zero() };
                ensure(ok, || format!("C{p}: e{i}·e{j} wrong"))?;
            }
        }
    }
    Ok("{(1/p)w, v − (1/p)w} for p = 2, 3, 5, 7; e² = e, eᵢeⱼ = 0, Σe = 1".into())
}

fn trivial_isotropy() -> Result<String, String> {
    let cases = vec![
        (FiniteGroupoid::pair_groupoid(4), 1),
        (FiniteGroupoid::trivial(3), 3),
        (
            FiniteGroupoid::generated_equivalence(7, &[(0, 1), (1, 2), (4, 5)]).unwrap(),
            4,
        ),
        (
            FiniteGroupoid::coproduct(&[
                FiniteGroupoid::pair_groupoid(2),
                FiniteGroupoid::pair_groupoid(3),
            ]),
            2,
        ),
        (FiniteGroupoid::fibered_pair(&[0, 0, 1, 2, 2, 2]), 3),
    ];
    for (g, k) in cases {
        let r = ring(g);
        ensure(r.rank() == k, || format!("rank {} ≠ {k}", r.rank()))?;
        for h in 0..k {
            for kk in 0..k {
                for l in 0..k {
                    let expect = i64::from(h == kk && kk == l);
                    ensure(r.constants().get(h, kk, l) == expect, || {
                        format!("c[{h}][{kk}][{l}]")
                    })?;
                }
            }
        }
        let d = product_decomposition(&r).map_err(|e| e.to_string())?;
        ensure(
            d.components.len() == k && d.components.iter().all(|c| c.ring.rank() == 1),
            || "factors".into(),
        )?;
        ensure(r.one().coeffs == vec![1; k], || "unit".into())?;
    }
    Ok("B(G) ≅ ℤ^k for 5 groupoids with trivial isotropy".into())
}

fn shape_groupoids() -> Vec<Arc<FiniteGroupoid>> {
    let bounds = GroupoidBounds {
        max_arrows: 200,
        max_isotropy: 12,
        max_components: 3,
    };
    groupoids(SHAPE_SEED, SHAPE_GROUPOIDS, &bounds)
}

fn table_shape() -> Result<String, String> {
    let mut cells = 0;
    for g in shape_groupoids() {
        ensure(g.num_arrows() <= 200, || "arrow bound".into())?;
        let t = MarkTable::new(&g, &TableOptions::default()).map_err(|e| e.to_string())?;
        t.verify().map_err(|e| e.to_string())?;
        let n = t.len();
        for h in 0..n {
            for k in 0..n {
                let m = t.mark(h, k);
                if t.block_of(h) != t.block_of(k) || k > h {
                    ensure(m == 0, || {
                        format!("nonzero entry ({h}, {k}) above the diagonal or off the blocks")
                    })?;
                }
                if h == k {
                    ensure(m != 0, || format!("zero diagonal at {h}"))?;
                }
                // the mark is |(G/K)^H|, counted straight from the coset action
                let coset = groupoid_burnside::gset::coset_gset(&t.reps()[k].to_subgroupoid());
                ensure(fixed_count(&coset, &t.reps()[h]) as u64 == m, || {
                    format!("mark ({h}, {k})")
                })?;
                cells += 1;
            }
        }
        let cert = ghost_injective(&t).map_err(|e| e.to_string())?;
        ensure(!cert.determinant.is_zero(), || "zero determinant".into())?;
        ensure(
            cert.determinant == bareiss_determinant(&ghost_matrix(&t)),
            || "determinant oracle".into(),
        )?;
    }
    Ok(format!(
        "{SHAPE_GROUPOIDS} groupoids, {cells} cells checked"
    ))
}

fn verify_outcome(x: &RightGSet, y: &RightGSet, t: &MarkTable) -> Result<bool, String> {
    let equal_vectors = fixed_vector(x, t) == fixed_vector(y, t);
    match isomorphic(x, y, t).map_err(|e| e.to_string())? {
        IsoOutcome::Isomorphic(f) => {
            ensure(equal_vectors, || {
                "isomorphic with different fixed points".into()
            })?;
            ensure(f.is_bijective(), || "witness not bijective".into())?;
            x.check_equivariant(y, f.map()).map_err(|e| e.to_string())?;
            Ok(true)
        }
        IsoOutcome::NotIsomorphic(c) => {
            ensure(!equal_vectors, || {
                "equal fixed points but not isomorphic".into()
            })?;
            ensure(
                fixed_count(x, &c.subgroup) == c.left_count
                    && fixed_count(y, &c.subgroup) == c.right_count
                    && c.left_count != c.right_count,
                || "bad certificate".into(),
            )?;
            Ok(false)
        }
    }
}

fn shuffled(r: &mut FixtureRng, x: &RightGSet) -> RightGSet {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..x.len()).collect();
    perm.shuffle(r);
    x.permuted(&perm)
}

fn burnside_theorem() -> Result<String, String> {
    let mut r = random::rng(77);
    let (mut pos, mut neg) = (0, 0);
    for g in groupoids(78, 20, &GroupoidBounds::default()) {
        let t = MarkTable::new(&g, &TableOptions::default()).map_err(|e| e.to_string())?;
        for i in 0..6 {
            let x = random::random_gset(&mut r, &g, 12);
            let y = if i % 2 == 0 {
                shuffled(&mut r, &x)
            } else {
                random::random_gset(&mut r, &g, 12)
            };
            if verify_outcome(&x, &y, &t)? {
                pos += 1;
            } else {
                neg += 1;
            }
        }
    }
    ensure(pos + neg >= 100 && neg > 0, || {
        format!("{pos} positive, {neg} negative")
    })?;
    Ok(format!(
        "{} pairs: {pos} isomorphic with witnesses, {neg} separated by certificates",
        pos + neg
    ))
}

fn cancellation() -> Result<String, String> {
    let mut r = random::rng(31);
    let gs = groupoids(32, 10, &GroupoidBounds::default());
    let mut hits = 0;
    for i in 0..50 {
        let g = &gs[i % gs.len()];
        let t = MarkTable::new(g, &TableOptions::default()).map_err(|e| e.to_string())?;
        let x = random::random_gset(&mut r, g, 10);
        let z = random::random_gset(&mut r, g, 10);
        let y = if r.gen_bool(0.5) {
            shuffled(&mut r, &x)
        } else {
            random::random_gset(&mut r, g, 10)
        };
        let sums = isomorphic(
            &x.disjoint_union(&z).unwrap(),
            &y.disjoint_union(&z).unwrap(),
            &t,
        )
        .map_err(|e| e.to_string())?
        .is_isomorphic();
        let parts = verify_outcome(&x, &y, &t)?;
        ensure(!sums || parts, || {
            format!("triple {i}: X⊎Z ≅ Y⊎Z but X ≇ Y")
        })?;
        ensure(sums || !parts, || {
            format!("triple {i}: X ≅ Y but X⊎Z ≇ Y⊎Z")
        })?;
        hits += usize::from(sums);
    }
    Ok(format!("50 triples, {hits} with X⊎Z ≅ Y⊎Z, all with X ≅ Y"))
}

fn product_decomposition_check() -> Result<String, String> {
    let bounds = GroupoidBounds {
        max_arrows: 120,
        max_isotropy: 12,
        max_components: 4,
    };
    let mut done = 0;
    let mut seed = 500;
    let mut fixed = vec![Arc::new(FiniteGroupoid::coproduct(&[
        FiniteGroupoid::trivial(1),
        FiniteGroupoid::trg(&GroupTable::cyclic(3), 2),
        FiniteGroupoid::trg(&GroupTable::symmetric(3), 2),
    ]))];
    while done < 12 {
        let g = fixed.pop().unwrap_or_else(|| {
            seed += 1;
            Arc::new(random::random_groupoid(&mut random::rng(seed), &bounds))
        });
        if g.connected_components().len() < 2 {
            continue;
        }
        let r = BurnsideRing::new(&g, &TableOptions::default()).map_err(|e| e.to_string())?;
        let d = product_decomposition(&r).map_err(|e| e.to_string())?;
        let n = r.rank();
        let mut owner = vec![None; n];
        for (i, c) in d.components.iter().enumerate() {
            for (j, &k) in c.global.iter().enumerate() {
                owner[k] = Some((i, j));
            }
        }
        for h in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let (a, b, c) = (owner[h].unwrap(), owner[k].unwrap(), owner[l].unwrap());
                    let expect = if a.0 == b.0 && b.0 == c.0 {
                        d.components[a.0].ring.constants().get(a.1, b.1, c.1)
                    } else {
                        0
                    };
                    ensure(r.constants().get(h, k, l) == expect, || {
                        format!("constant ({h}, {k}, {l})")
                    })?;
                }
            }
        }
        done += 1;
    }
    Ok(format!(
        "{done} multi-component groupoids match the block-diagonal assembly"
    ))
}

fn v4() -> GroupTable {
    GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2))
}

/// Subgroupoid of `trg(G, n)` with the listed objects and arrows `(a, e, b)` for `e` in `elems[b]`
/// whenever `connect` or `a == b`.
fn trg_sub(
    g: &Arc<FiniteGroupoid>,
    objs: &[usize],
    elems: &dyn Fn(usize) -> Vec<&'static str>,
    connect: bool,
) -> Subgroupoid {
    let arrows = g
        .arrows()
        .filter(|&x| {
            let (s, t) = (g.src(x), g.tgt(x));
            objs.contains(&s)
                && objs.contains(&t)
                && (connect || s == t)
                && elems(s)
                    .iter()
                    .any(|e| g.arrow_label(x) == format!("({t},{e},{s})"))
        })
        .collect();
    Subgroupoid::new(Arc::clone(g), objs.to_vec(), arrows).expect("subgroupoid")
}

fn conjugacy_examples() -> Result<String, String> {
    // isomorphic but not conjugated: trg(U×U, J), U = C₂, |J| = 3
    let g = Arc::new(FiniteGroupoid::trg(&v4(), 3));
    let h = trg_sub(&g, &[0, 1], &|_| vec!["(0,0)", "(1,0)"], true);
    let k = trg_sub(&g, &[1, 2], &|_| vec!["(0,0)", "(0,1)"], true);
    ensure(h.arrows().len() == k.arrows().len(), || {
        "H and K differ in size".into()
    })?;
    let hk = conjugally_equivalent(&h, &k, DEFAULT_SEARCH_CAP).map_err(|e| e.to_string())?;
    ensure(hk.is_none(), || "U×1 and 1×U conjugated".into())?;

    // conjugated but not isomorphic: pair groupoids A ⊆ B ⊆ J with |A| = 1, |B| = 2, |J| = 3
    let p = Arc::new(FiniteGroupoid::pair_groupoid(3));
    let full = |objs: &[usize]| {
        let arrows = p
            .arrows()
            .filter(|&x| objs.contains(&p.src(x)) && objs.contains(&p.tgt(x)))
            .collect();
        Subgroupoid::new(Arc::clone(&p), objs.to_vec(), arrows).unwrap()
    };
    let (a, b) = (full(&[0]), full(&[0, 1]));
    ensure(a.arrows().len() != b.arrows().len(), || {
        "A and B have the same size".into()
    })?;
    ensure(
        conjugally_equivalent(&b, &a, DEFAULT_SEARCH_CAP)
            .map_err(|e| e.to_string())?
            .is_some()
            && conjugally_equivalent(&a, &b, DEFAULT_SEARCH_CAP)
                .map_err(|e| e.to_string())?
                .is_some(),
        || "A and B not conjugated".into(),
    )?;

    // conjugated with non-conjugate isotropy: trg(C₂×C₂, S), |S| = 4, H₀ = {x, z}, K₀ = {y, w}
    let g = Arc::new(FiniteGroupoid::trg(&v4(), 4));
    let (x, y, z, w) = (0, 1, 2, 3);
    let split = move |o: usize| {
        if o == x || o == y {
            vec!["(0,0)", "(1,0)"]
        } else {
            vec!["(0,0)", "(0,1)"]
        }
    };
    let h = trg_sub(&g, &[x, z], &split, false);
    let k = trg_sub(&g, &[y, w], &split, false);
    let witness = conjugally_equivalent(&h, &k, DEFAULT_SEARCH_CAP).map_err(|e| e.to_string())?;
    ensure(witness.is_some(), || "H and K not conjugated".into())?;
    let hx = h.isotropy(x);
    let kw = k.isotropy(w);
    ensure(conjugated_isotropy_subgroups(&hx, &kw).is_none(), || {
        "H^x and K^w conjugated".into()
    })?;
    ensure(
        conjugated_isotropy_subgroups(&hx, &k.isotropy(y)).is_some(),
        || "H^x and K^y not conjugated".into(),
    )?;
    Ok("isomorphic-not-conjugated, conjugated-not-isomorphic and non-conjugate isotropy all reproduced".into())
}

fn ghost_injectivity() -> Result<String, String> {
    let mut r = random::rng(909);
    let mut pairs = 0;
    for g in shape_groupoids() {
        let ring = BurnsideRing::new(&g, &TableOptions::default()).map_err(|e| e.to_string())?;
        let cert = ghost_injective(ring.table()).map_err(|e| e.to_string())?;
        ensure(cert.is_injective(), || "singular ghost matrix".into())?;
        let n = ring.rank();
        let mut local = 0;
        while local < 100 {
            let x = ring.element(random::random_coeffs(&mut r, n, 3));
            let mut yc = x.coeffs.clone();
            // perturb a random nonempty set of coordinates so that y ≠ x
            let i = r.gen_range(0..n);
            yc[i] += if r.gen_bool(0.5) { 1 } else { -1 };
            for c in yc.iter_mut() {
                if r.gen_bool(0.2) {
                    *c += r.gen_range(-2..=2);
                }
            }
            let y = ring.element(yc);
            if x == y {
                continue;
            }
            ensure(ghost_apply(&x) != ghost_apply(&y), || {
                "ghost collision".into()
            })?;
            local += 1;
        }
        pairs += local;
    }
    Ok(format!(
        "{SHAPE_GROUPOIDS} groupoids with det ≠ 0; {pairs} unequal pairs separated"
    ))
}

/// `ψ: trg(S, m) -> trg(S, 1)` collapsing objects, and `φ: trg(S, 1) -> trg(S, n)` at object `j`.
fn trg_morphisms(
    s: &GroupTable,
    m: usize,
    n: usize,
    j: usize,
) -> (GroupoidMorphism, GroupoidMorphism) {
    let big = Arc::new(FiniteGroupoid::trg(s, m));
    let one = Arc::new(FiniteGroupoid::trg(s, 1));
    let target = Arc::new(FiniteGroupoid::trg(s, n));
    let element = |g: &FiniteGroupoid, x: usize| {
        let l = g.arrow_label(x);
        let (t, src) = (g.object_label(g.tgt(x)), g.object_label(g.src(x)));
        l[t.len() + 2..l.len() - src.len() - 2].to_string()
    };
    let psi1 = big
        .arrows()
        .map(|x| {
            one.arrow_by_label(&format!("(0,{},0)", element(&big, x)))
                .unwrap()
        })
        .collect();
    let psi = GroupoidMorphism::new(Arc::clone(&big), Arc::clone(&one), vec![0; m], psi1).unwrap();
    let phi1 = one
        .arrows()
        .map(|x| {
            target
                .arrow_by_label(&format!("({j},{},{j})", element(&one, x)))
                .unwrap()
        })
        .collect();
    let phi = GroupoidMorphism::new(Arc::clone(&one), Arc::clone(&target), vec![j], phi1).unwrap();
    (psi, phi)
}

/// `ψ: K -> H` and `φ: H -> G` where `H` is a full subgroupoid of a random `G` and `K` a
/// random connected subgroupoid of `H`.
fn inclusion_morphisms(r: &mut FixtureRng, seed: u64) -> (GroupoidMorphism, GroupoidMorphism) {
    let bounds = GroupoidBounds {
        max_arrows: 80,
        max_isotropy: 8,
        max_components: 3,
    };
    let g = Arc::new(random::random_groupoid(&mut random::rng(seed), &bounds));
    let mut objs: Vec<usize> = g.objects().filter(|_| r.gen_bool(0.6)).collect();
    if objs.is_empty() {
        objs.push(0);
    }
    let phi = g.full_subgroupoid(&objs).unwrap();
    let h = Arc::clone(phi.source());
    let a = r.gen_range(0..h.num_objects());
    let subs = groupoid_burnside::subconj::subgroups_at(&h, a, usize::MAX).unwrap();
    let sub: &OneObjectSubgroupoid = &subs[r.gen_range(0..subs.len())];
    let psi = sub.to_subgroupoid().inclusion();
    (psi, phi)
}

fn table(g: &Arc<FiniteGroupoid>) -> Arc<MarkTable> {
    Arc::new(MarkTable::new(g, &TableOptions::default()).unwrap())
}

fn iso_witness(x: &RightGSet, y: &RightGSet) -> Result<(), String> {
    let t = table(x.groupoid());
    match isomorphic(x, y, &t).map_err(|e| e.to_string())? {
        IsoOutcome::Isomorphic(f) => {
            ensure(f.is_bijective(), || "witness not bijective".into())?;
            x.check_equivariant(y, f.map()).map_err(|e| e.to_string())
        }
        IsoOutcome::NotIsomorphic(_) => Err("expected an isomorphism".into()),
    }
}

/// `φ*` preserves `⊎` and `×_{G₀}` up to verified isomorphisms.
fn laplaza(r: &mut FixtureRng, phi: &GroupoidMorphism) -> Result<(), String> {
    let g = phi.target();
    let x = random::random_gset(r, g, 8);
    let y = random::random_gset(r, g, 8);
    let ind = |z: &RightGSet| z.induction(phi).unwrap();
    iso_witness(
        &ind(&x.disjoint_union(&y).unwrap()),
        &ind(&x).disjoint_union(&ind(&y)).unwrap(),
    )?;
    iso_witness(
        &ind(&x.fibered_product(&y).unwrap()),
        &ind(&x).fibered_product(&ind(&y)).unwrap(),
    )
}

fn induction_functoriality() -> Result<String, String> {
    let mut r = random::rng(4242);
    let mut pairs: Vec<(GroupoidMorphism, GroupoidMorphism)> = vec![
        trg_morphisms(&GroupTable::symmetric(3), 3, 2, 1),
        trg_morphisms(&GroupTable::cyclic(4), 2, 3, 2),
        trg_morphisms(&v4(), 2, 2, 0),
    ];
    for seed in 0..7 {
        let p = inclusion_morphisms(&mut r, 700 + seed);
        pairs.push(p);
    }
    for (i, (psi, phi)) in pairs.iter().enumerate() {
        let (tk, th, tg) = (
            table(psi.source()),
            table(phi.source()),
            table(phi.target()),
        );
        let b_phi = induction_hom(phi, &tg, &th).map_err(|e| e.to_string())?;
        let b_psi = induction_hom(psi, &th, &tk).map_err(|e| e.to_string())?;
        let composite = psi.then(phi).map_err(|e| e.to_string())?;
        let b_comp = induction_hom(&composite, &tg, &tk).map_err(|e| e.to_string())?;
        let chained = b_phi.then(&b_psi).map_err(|e| e.to_string())?;
        ensure(chained.matrix() == b_comp.matrix(), || {
            format!("pair {i}: B(ψ)∘B(φ) ≠ B(φψ)")
        })?;
        // ψ*(φ*X) ≅ (φψ)*X on a random set
        let x = random::random_gset(&mut r, phi.target(), 8);
        iso_witness(
            &x.induction(phi).unwrap().induction(psi).unwrap(),
            &x.induction(&composite).unwrap(),
        )
        .map_err(|e| format!("pair {i}: {e}"))?;
        laplaza(&mut r, phi).map_err(|e| format!("pair {i}, φ: {e}"))?;
        laplaza(&mut r, psi).map_err(|e| format!("pair {i}, ψ: {e}"))?;
    }
    Ok(format!(
        "{} composable pairs; ⊎ and ×_G₀ preserved with verified witnesses",
        pairs.len()
    ))
}

fn grothendieck_sanity() -> Result<String, String> {
    let mut r = random::rng(11);
    for _ in 0..100 {
        let [a, b, c, d] = [0; 4].map(|_| r.gen_range(0..500u64));
        let (p, q) = (GrothendieckPair::new(a, b), GrothendieckPair::new(c, d));
        let (x, y) = (a as i64 - b as i64, c as i64 - d as i64);
        ensure(
            Naturals::to_integer(&pair_add(&Naturals, &p, &q)) == x + y,
            || "sum".into(),
        )?;
        ensure(
            Naturals::to_integer(&pair_mul(&Naturals, &p, &q)) == x * y,
            || "product".into(),
        )?;
        ensure(
            grothendieck_equal(&Naturals, &p, &q).unwrap() == (x == y),
            || "equality".into(),
        )?;
        ensure(
            grothendieck_equal(&Naturals, &Naturals::from_integer(x), &p).unwrap(),
            || "round trip".into(),
        )?;
    }
    ensure(
        grothendieck_equal(
            &Naturals,
            &GrothendieckPair::new(3, 1),
            &GrothendieckPair::new(5, 3),
        )
        .unwrap(),
        || "[3,1] ≠ [5,3]".into(),
    )?;
    // G(ℕ × ℕ) ≅ G(ℕ) × G(ℕ) on an explicit pair of elements
    let rig = ProductRig(Naturals, Naturals);
    let p = GrothendieckPair::new((7, 2), (3, 9));
    let q = GrothendieckPair::new((1, 4), (6, 0));
    type P = ProductRig<Naturals, Naturals>;
    let (p0, p1) = P::split(&p);
    let (q0, q1) = P::split(&q);
    ensure(P::join(&p0, &p1) == p, || "join ∘ split".into())?;
    let (s0, s1) = P::split(&pair_add(&rig, &p, &q));
    let (m0, m1) = P::split(&pair_mul(&rig, &p, &q));
    let ints = |x: &GrothendieckPair<u64>| Naturals::to_integer(x);
    ensure(
        (ints(&s0), ints(&s1)) == (ints(&p0) + ints(&q0), ints(&p1) + ints(&q1)),
        || "split of a sum".into(),
    )?;
    ensure(
        (ints(&m0), ints(&m1)) == (ints(&p0) * ints(&q0), ints(&p1) * ints(&q1)),
        || "split of a product".into(),
    )?;
    ensure((ints(&m0), ints(&m1)) == (4 * -5, -7 * 4), || {
        "explicit product".into()
    })?;
    Ok("100 random pairs match ℤ; G(ℕ×ℕ) ≅ G(ℕ)×G(ℕ) on an explicit product".into())
}

fn main() {
    let checks: [(&str, Check); 11] = [
        ("cyclic-group ring law", cyclic_ring_law),
        ("idempotents of C_p", cyclic_idempotents),
        ("trivial-isotropy decomposition", trivial_isotropy),
        ("table-of-marks shape", table_shape),
        ("Burnside theorem", burnside_theorem),
        ("cancellation", cancellation),
        ("product decomposition", product_decomposition_check),
        ("conjugacy counterexamples", conjugacy_examples),
        ("ghost injectivity", ghost_injectivity),
        ("induction functoriality", induction_functoriality),
        ("Grothendieck sanity", grothendieck_sanity),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, ((name, check), limit)) in checks.iter().zip(LIMITS).enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        let limit = limit.map(|l| format!(" (limit {l:?})")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}{limit}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{elapsed:.2?}{limit}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        checks.len() - failed,
        checks.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
