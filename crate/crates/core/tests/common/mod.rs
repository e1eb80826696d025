//! Shared fixtures: builtin models and a generator of random partial actions.
//!
//! Random actions are built as restrictions of global actions. A global
//! action of `Y² × C_k` on `⊕_{y ∈ Y} S_y` (each `S_y` with `m` primitive
//! idempotents) is determined by a permutation `σ` of `{0..m}` with
//! `σ^k = 1`, bijections `τ_y` from the base block to `S_y`, and an
//! automorphism exponent `a` with `a·k ≡ 0` modulo the order of `Aut(K)`:
//! the morphism `(s, t, c)` sends `τ_s(i)` to `τ_t(σ^c(i))` twisted by `φ^{ac}`.
//! Restricting to an ideal gives a partial action.

#![allow(dead_code)]

use gpd_core::action::{restrict_to_ideal, PartialAction, TwistedPartialMap};
use gpd_core::dsl::{builtin, Model};
use gpd_core::field::CoeffField;
use gpd_core::groupoid::FiniteGroupoid;
use gpd_core::ring::SplitRing;
use rand::seq::SliceRandom;
use rand::Rng;

pub const BUILTIN_NAMES: [&str; 5] = ["exe1", "exe2-global", "ex-invariant", "groupoid-12", "inv-semigroup"];

pub fn model(name: &str) -> Model {
    builtin(name).unwrap_or_else(|| panic!("no builtin {name}")).load().unwrap_or_else(|d| panic!("{name}: {d:?}"))
}

/// Idempotent indices by name, e.g. `idx(&m, &["e1", "e3"])`.
pub fn idx(m: &Model, names: &[&str]) -> Vec<usize> {
    names.iter().map(|n| m.ring().index_by_name(n).unwrap_or_else(|| panic!("no idempotent {n}"))).collect()
}

/// One connected piece of a random global action.
#[derive(Debug, Clone)]
pub struct GlobalShape {
    pub objects: usize,
    pub cyclic: usize,
    pub block: usize,
}

/// Shapes with `|Y|² k ≤ 12` and `|Y| m ≤ n_max`.
pub fn shapes(n_max: usize) -> Vec<GlobalShape> {
    let mut out = Vec::new();
    for r in 1..=3usize {
        for k in 1..=12usize {
            if r * r * k > 12 {
                continue;
            }
            for m in 1..=n_max / r {
                out.push(GlobalShape { objects: r, cyclic: k, block: m });
            }
        }
    }
    out
}

fn random_permutation_of_order_dividing<R: Rng>(rng: &mut R, m: usize, k: usize, semiregular: bool) -> Vec<usize> {
    let mut elems: Vec<usize> = (0..m).collect();
    elems.shuffle(rng);
    let mut perm: Vec<usize> = (0..m).collect();
    let divisors: Vec<usize> = (1..=k).filter(|d| k.is_multiple_of(*d)).collect();
    let mut rest = elems.as_slice();
    while !rest.is_empty() {
        let len = if semiregular && rest.len().is_multiple_of(k) {
            k
        } else {
            *divisors.iter().filter(|&&d| d <= rest.len()).collect::<Vec<_>>().choose(rng).copied().unwrap_or(&1)
        };
        let (cycle, tail) = rest.split_at(len);
        for w in 0..len {
            perm[cycle[w]] = cycle[(w + 1) % len];
        }
        rest = tail;
    }
    perm
}

/// A random global action of one `Y² × C_k`, object names prefixed by `tag`.
pub fn random_global_piece<R: Rng>(rng: &mut R, field: &CoeffField, shape: &GlobalShape, tag: &str, semiregular: bool) -> (FiniteGroupoid, Vec<Vec<(usize, usize, u32)>>) {
    let GlobalShape { objects: r, cyclic: k, block: m } = *shape;
    let names: Vec<String> = (0..r).map(|y| format!("{tag}{y}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let g = FiniteGroupoid::pair_cyclic(&refs, k).renamed(|s| s.replace("g_", &format!("{tag}g_")));
    let sigma = random_permutation_of_order_dividing(rng, m, k, semiregular);
    let taus: Vec<Vec<usize>> = (0..r)
        .map(|y| {
            let mut t: Vec<usize> = (0..m).collect();
            if y > 0 {
                t.shuffle(rng);
            }
            t
        })
        .collect();
    let order = field.aut_order();
    let exps: Vec<u32> = (0..order).filter(|a| (a * k as u32).is_multiple_of(order)).collect();
    let a = *exps.choose(rng).expect("0 always qualifies");
    let mut maps = Vec::with_capacity(g.num_morphisms());
    for s in 0..r {
        for t in 0..r {
            for c in 0..k {
                let mut entries = Vec::with_capacity(m);
                for i in 0..m {
                    let mut j = i;
                    for _ in 0..c {
                        j = sigma[j];
                    }
                    entries.push((s * m + taus[s][i], t * m + taus[t][j], (a * c as u32) % order.max(1)));
                }
                maps.push(entries);
            }
        }
    }
    (g, maps)
}

/// A random (partial) action: one or two global pieces, restricted to a
/// random ideal that meets every object. `full_ideal` keeps the action global.
pub fn random_action<R: Rng>(rng: &mut R, field: &CoeffField, n_max: usize, full_ideal: bool, semiregular: bool) -> PartialAction {
    let all = shapes(n_max);
    let first = all.choose(rng).expect("shapes exist").clone();
    let mut pieces = vec![first.clone()];
    let used_n = first.objects * first.block;
    let used_g = first.objects * first.objects * first.cyclic;
    if rng.gen_bool(0.25) {
        let fits: Vec<&GlobalShape> =
            all.iter().filter(|s| used_n + s.objects * s.block <= n_max && used_g + s.objects * s.objects * s.cyclic <= 12).collect();
        if let Some(s) = fits.choose(rng) {
            pieces.push((*s).clone());
        }
    }
    let mut groupoid: Option<FiniteGroupoid> = None;
    let mut maps: Vec<Vec<(usize, usize, u32)>> = Vec::new();
    let mut owner = Vec::new();
    for (p, shape) in pieces.iter().enumerate() {
        let (g, piece_maps) = random_global_piece(rng, field, shape, ["a", "b"][p], semiregular);
        let offset = owner.len();
        let obj_offset = groupoid.as_ref().map_or(0, |h| h.num_objects());
        for y in 0..shape.objects {
            owner.extend(std::iter::repeat_n(obj_offset + y, shape.block));
        }
        maps.extend(piece_maps.into_iter().map(|es| es.into_iter().map(|(i, j, a)| (i + offset, j + offset, a)).collect()));
        groupoid = Some(match groupoid {
            None => g,
            Some(h) => h.disjoint_union(&g).expect("distinct names"),
        });
    }
    let g = groupoid.expect("at least one piece");
    let names = (1..=owner.len()).map(|i| format!("e{i}")).collect();
    let ring = SplitRing::new(field.clone(), names, owner.clone(), g.num_objects()).expect("every object owns idempotents");
    let maps = maps
        .into_iter()
        .map(|es| TwistedPartialMap::new(es.into_iter().map(|(i, j, a)| (i, j, field.automorphism(a as i64))).collect()))
        .collect();
    let global = PartialAction::new(g.clone(), ring, maps).expect("indices in range");
    if full_ideal {
        return global;
    }
    let mut ideal = Vec::new();
    for y in 0..g.num_objects() {
        let support: Vec<usize> = (0..owner.len()).filter(|&i| owner[i] == y).collect();
        let keep: Vec<usize> = support.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
        if keep.is_empty() {
            ideal.push(*support.choose(rng).expect("nonempty"));
        } else {
            ideal.extend(keep);
        }
    }
    restrict_to_ideal(&global, &ideal).expect("global action").action
}

pub fn small_fields() -> Vec<CoeffField> {
    vec![CoeffField::finite(2, 1).unwrap(), CoeffField::finite(3, 1).unwrap()]
}
