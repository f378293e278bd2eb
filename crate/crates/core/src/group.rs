//! Essentially disjoint subgroup covers of finite abelian groups.
//!
//! Groups are products of cyclic factors `Z_{m1} × … × Z_{mr}` with
//! elements encoded as mixed-radix ranks, and subgroups as bitmasks over
//! ranks (the representation caps the order at 128; the configurable
//! working bound defaults to 64). On top of subgroup enumeration sits an
//! exact backtracking search for inclusion-minimal covers by proper
//! subgroups whose pairwise intersections are trivial, and a verifier for
//! the counting facts every such cover satisfies: each coset `g + H_a`
//! with `g ∉ H_a` meets every other member in at most one element, hence
//! `κ ≥ |H_a|`, and coverage forces `κ·λ ≥ |G|` for `λ = max |H_a|`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::report::{Report, Violation};

/// Hard cap imposed by the bitmask representation.
pub const MAX_REPRESENTABLE_ORDER: usize = 128;

/// Default working bound on the group order.
pub const DEFAULT_ORDER_BOUND: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("cyclic factors must be at least 2")]
    FactorTooSmall,
    #[error("group order {order} exceeds the working bound {bound}")]
    OrderBound { order: usize, bound: usize },
    #[error("group order {order} exceeds the representation cap {MAX_REPRESENTABLE_ORDER}")]
    RepresentationCap { order: usize },
    #[error("subgroup does not belong to this group")]
    MixedGroups,
    #[error("element set is not a subgroup (fails closure or negation)")]
    NotASubgroup,
    #[error("cover verification needs at least two subgroups")]
    TrivialCover,
    #[error("syntax error in group name: {0}")]
    Syntax(String),
}

/// `Z_{m1} × … × Z_{mr}`, with a precomputed Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    factors: Vec<u32>,
    order: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
}

impl FiniteGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self, GroupError> {
        FiniteGroup::with_bound(factors, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(factors: Vec<u32>, bound: usize) -> Result<Self, GroupError> {
        if factors.is_empty() || factors.iter().any(|&m| m < 2) {
            return Err(GroupError::FactorTooSmall);
        }
        let wide: u128 = factors.iter().map(|&m| u128::from(m)).product();
        if wide > MAX_REPRESENTABLE_ORDER as u128 {
            return Err(GroupError::RepresentationCap {
                order: wide.min(usize::MAX as u128) as usize,
            });
        }
        let order = wide as usize;
        if order > bound {
            return Err(GroupError::OrderBound { order, bound });
        }

        let mut add = Vec::with_capacity(order * order);
        for a in 0..order {
            let ta = decode_with(&factors, a);
            for b in 0..order {
                let tb = decode_with(&factors, b);
                let sum: Vec<u32> = ta
                    .iter()
                    .zip(&tb)
                    .zip(&factors)
                    .map(|((x, y), m)| (x + y) % m)
                    .collect();
                add.push(encode_with(&factors, &sum) as u16);
            }
        }
        let neg = (0..order)
            .map(|a| {
                let n: Vec<u32> = decode_with(&factors, a)
                    .iter()
                    .zip(&factors)
                    .map(|(x, m)| (m - x) % m)
                    .collect();
                encode_with(&factors, &n) as u16
            })
            .collect();
        Ok(FiniteGroup {
            factors,
            order,
            add,
            neg,
        })
    }

    /// Parse names like `Z2xZ2` or `Z3xZ3xZ3`.
    pub fn parse(name: &str, bound: usize) -> Result<Self, GroupError> {
        let mut factors = Vec::new();
        for part in name.split('x') {
            let rest = part
                .strip_prefix('Z')
                .ok_or_else(|| GroupError::Syntax(format!("expected Z<n>, found {part:?}")))?;
            let m: u32 = rest
                .parse()
                .map_err(|_| GroupError::Syntax(format!("bad factor {rest:?}")))?;
            factors.push(m);
        }
        FiniteGroup::with_bound(factors, bound)
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> String {
        self.factors
            .iter()
            .map(|m| format!("Z{m}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn decode(&self, rank: usize) -> Vec<u32> {
        decode_with(&self.factors, rank)
    }

    pub fn encode(&self, tuple: &[u32]) -> usize {
        encode_with(&self.factors, tuple)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    fn full_mask(&self) -> u128 {
        if self.order == 128 {
            u128::MAX
        } else {
            (1u128 << self.order) - 1
        }
    }

    pub fn element_name(&self, rank: usize) -> String {
        let tuple = self.decode(rank);
        format!(
            "({})",
            tuple
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        )
    }

    /// Closure of a set of elements under addition and negation.
    fn close(&self, seed: u128) -> u128 {
        let mut mask = seed | 1; // identity has rank 0
        let mut stack: Vec<usize> = (0..self.order).filter(|&r| mask >> r & 1 == 1).collect();
        while let Some(a) = stack.pop() {
            let na = self.neg(a);
            if mask >> na & 1 == 0 {
                mask |= 1 << na;
                stack.push(na);
            }
            for b in 0..self.order {
                if mask >> b & 1 == 1 {
                    let s = self.add(a, b);
                    if mask >> s & 1 == 0 {
                        mask |= 1 << s;
                        stack.push(s);
                    }
                }
            }
        }
        mask
    }

    /// All subgroups, sorted by (order, element list).
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let trivial = 1u128;
        let mut known: BTreeSet<u128> = BTreeSet::from([trivial]);
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for g in 1..self.order {
                if h >> g & 1 == 0 {
                    let bigger = self.close(h | (1 << g));
                    if known.insert(bigger) {
                        frontier.push(bigger);
                    }
                }
            }
        }
        let mut out: Vec<Subgroup> = known
            .into_iter()
            .map(|mask| Subgroup { mask })
            .collect();
        out.sort_by_key(|h| (h.order(), h.elements_vec()));
        out
    }
}

/// A subgroup, stored as a rank bitmask within its group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    mask: u128,
}

impl Subgroup {
    /// Validating constructor from an element list.
    pub fn from_elements(group: &FiniteGroup, elements: &[usize]) -> Result<Self, GroupError> {
        if elements.iter().any(|&r| r >= group.order()) {
            return Err(GroupError::MixedGroups);
        }
        let mask = elements.iter().fold(0u128, |m, &r| m | (1 << r));
        let sub = Subgroup { mask: mask | 1 };
        if sub.mask != mask || !sub.is_valid(group) {
            return Err(GroupError::NotASubgroup);
        }
        Ok(sub)
    }

    pub fn is_valid(&self, group: &FiniteGroup) -> bool {
        if self.mask & 1 == 0 {
            return false;
        }
        for a in self.elements(group.order()) {
            if self.mask >> group.neg(a) & 1 == 0 {
                return false;
            }
            for b in self.elements(group.order()) {
                if self.mask >> group.add(a, b) & 1 == 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn order(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains(&self, rank: usize) -> bool {
        self.mask >> rank & 1 == 1
    }

    pub fn elements(&self, group_order: usize) -> impl Iterator<Item = usize> + '_ {
        let mask = self.mask;
        (0..group_order).filter(move |&r| mask >> r & 1 == 1)
    }

    fn elements_vec(&self) -> Vec<usize> {
        (0..MAX_REPRESENTABLE_ORDER)
            .filter(|&r| self.mask >> r & 1 == 1)
            .collect()
    }

    pub fn is_whole_group(&self, group: &FiniteGroup) -> bool {
        self.mask == group.full_mask()
    }

    pub fn is_trivial(&self) -> bool {
        self.mask == 1
    }

    /// The coset `g + H` as a bitmask.
    pub fn coset_mask(&self, group: &FiniteGroup, g: usize) -> u128 {
        self.elements(group.order())
            .fold(0u128, |m, h| m | (1 << group.add(g, h)))
    }

    /// A short generator list (greedy over sorted elements).
    pub fn generators(&self, group: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closed = 1u128;
        for r in self.elements(group.order()) {
            if closed >> r & 1 == 0 {
                gens.push(r);
                closed = group.close(closed | (1 << r));
            }
        }
        gens
    }

    pub fn describe(&self, group: &FiniteGroup) -> String {
        format!(
            "<{}>",
            self.generators(group)
                .iter()
                .map(|&r| group.element_name(r))
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

fn decode_with(factors: &[u32], mut rank: usize) -> Vec<u32> {
    factors
        .iter()
        .map(|&m| {
            let digit = (rank % m as usize) as u32;
            rank /= m as usize;
            digit
        })
        .collect()
}

fn encode_with(factors: &[u32], tuple: &[u32]) -> usize {
    tuple
        .iter()
        .zip(factors)
        .rev()
        .fold(0usize, |acc, (d, m)| acc * (*m as usize) + *d as usize)
}

/// Whether all pairwise intersections contain only the identity.
pub fn is_essentially_disjoint(subgroups: &[Subgroup]) -> bool {
    for (i, a) in subgroups.iter().enumerate() {
        for b in &subgroups[i + 1..] {
            if a.mask & b.mask != 1 {
                return false;
            }
        }
    }
    true
}

/// A family of essentially disjoint subgroups covering the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupCover {
    pub members: Vec<Subgroup>,
}

impl SubgroupCover {
    pub fn kappa(&self) -> usize {
        self.members.len()
    }

    /// λ: the largest member order.
    pub fn lambda(&self) -> usize {
        self.members.iter().map(Subgroup::order).max().unwrap_or(0)
    }

    pub fn describe(&self, group: &FiniteGroup) -> String {
        format!(
            "cover kappa={} {}",
            self.kappa(),
            self.members
                .iter()
                .map(|h| h.describe(group))
                .collect::<Vec<_>>()
                .join(" ")
        )
    }
}

/// All inclusion-minimal essentially disjoint covers of `group` by
/// proper subgroups (κ ≥ 2), in canonical order. With `allow_trivial`
/// the single-member cover `{G}` is prepended.
///
/// The search always branches on the least uncovered element; since
/// members meet pairwise only in the identity, a nonidentity element
/// pins down the member containing it, so each family is produced along
/// exactly one path.
pub fn find_covers(group: &FiniteGroup, allow_trivial: bool) -> Vec<SubgroupCover> {
    let all = group.subgroups();
    let proper: Vec<Subgroup> = all
        .iter()
        .copied()
        .filter(|h| !h.is_trivial() && !h.is_whole_group(group))
        .collect();
    let full = group.full_mask();

    let mut covers = Vec::new();
    let mut chosen: Vec<Subgroup> = Vec::new();

    fn search(
        group: &FiniteGroup,
        proper: &[Subgroup],
        full: u128,
        covered: u128,
        chosen: &mut Vec<Subgroup>,
        covers: &mut Vec<SubgroupCover>,
    ) {
        if covered == full {
            // inclusion-minimal: no member is redundant
            for skip in 0..chosen.len() {
                let rest = chosen
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .fold(0u128, |m, (_, h)| m | h.mask);
                if rest == full {
                    return;
                }
            }
            covers.push(SubgroupCover {
                members: chosen.clone(),
            });
            return;
        }
        let pivot = (0..group.order())
            .find(|&r| covered >> r & 1 == 0)
            .expect("uncovered element exists");
        for h in proper {
            // pairwise essential disjointness against everything chosen
            // collapses to one mask test against the covered region
            if h.contains(pivot) && h.mask & covered == 1 {
                chosen.push(*h);
                search(group, proper, full, covered | h.mask, chosen, covers);
                chosen.pop();
            }
        }
    }

    search(group, &proper, full, 1, &mut chosen, &mut covers);

    for cover in &mut covers {
        cover.members.sort();
    }
    covers.sort_by(|a, b| a.members.cmp(&b.members));

    if allow_trivial {
        let whole = all
            .iter()
            .copied()
            .find(|h| h.is_whole_group(group))
            .expect("the group is a subgroup of itself");
        covers.insert(
            0,
            SubgroupCover {
                members: vec![whole],
            },
        );
    }
    covers
}

/// The counting facts checked by [`verify_cover_bounds`], with the worst
/// witnesses seen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub group: String,
    pub kappa: usize,
    pub lambda: usize,
    pub group_order: usize,
    /// Largest `|(g + H_a) ∩ H_b|` over `g ∉ H_a`, `b ≠ a`; must be ≤ 1.
    pub max_coset_overlap: usize,
    /// Witness `(a, g, b)` for the largest overlap: member index, coset
    /// representative rank, other member index.
    pub coset_witness: Option<(usize, usize, usize)>,
    pub coset_ok: bool,
    /// κ ≥ |H_a| for every member.
    pub size_ok: bool,
    /// Member index violating κ ≥ |H_a|, if any.
    pub size_witness: Option<usize>,
    /// κ·λ ≥ |G|.
    pub product_ok: bool,
}

impl BoundReport {
    pub fn ok(&self) -> bool {
        self.coset_ok && self.size_ok && self.product_ok
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bounds group={} kappa={} lambda={} order={} coset={} sizes={} product={}",
            self.group,
            self.kappa,
            self.lambda,
            self.group_order,
            if self.coset_ok { "ok" } else { "FAIL" },
            if self.size_ok { "ok" } else { "FAIL" },
            if self.product_ok { "ok" } else { "FAIL" },
        )
    }
}

/// Check the three counting facts on a cover with κ ≥ 2. They are
/// theorems for essentially disjoint covers, so any failure signals a
/// defect in the cover or the search.
pub fn verify_cover_bounds(
    group: &FiniteGroup,
    cover: &SubgroupCover,
) -> Result<BoundReport, GroupError> {
    if cover.kappa() < 2 {
        return Err(GroupError::TrivialCover);
    }
    for h in &cover.members {
        if h.elements_vec().iter().any(|&r| r >= group.order()) {
            return Err(GroupError::MixedGroups);
        }
    }

    let mut max_overlap = 0usize;
    let mut coset_witness = None;
    for (i, h) in cover.members.iter().enumerate() {
        for g in 0..group.order() {
            if h.contains(g) {
                continue;
            }
            let coset = h.coset_mask(group, g);
            for (j, other) in cover.members.iter().enumerate() {
                if i == j {
                    continue;
                }
                let overlap = (coset & other.mask).count_ones() as usize;
                if overlap > max_overlap || coset_witness.is_none() {
                    max_overlap = max_overlap.max(overlap);
                    coset_witness = Some((i, g, j));
                }
            }
        }
    }

    let kappa = cover.kappa();
    let lambda = cover.lambda();
    let size_witness = cover.members.iter().position(|h| kappa < h.order());
    Ok(BoundReport {
        group: group.name(),
        kappa,
        lambda,
        group_order: group.order(),
        max_coset_overlap: max_overlap,
        coset_witness,
        coset_ok: max_overlap <= 1,
        size_ok: size_witness.is_none(),
        size_witness,
        product_ok: kappa * lambda >= group.order(),
    })
}

/// The fixed desk-scale family of groups exercised by the harness: every
/// factor multiset with order ≤ 20, plus `Z5xZ5` and `Z3xZ3xZ3`.
pub fn test_set(bound: usize) -> Vec<FiniteGroup> {
    let mut factor_lists: Vec<Vec<u32>> = Vec::new();
    fn extend(prefix: &mut Vec<u32>, min: u32, limit: usize, out: &mut Vec<Vec<u32>>) {
        let product: usize = prefix.iter().map(|&m| m as usize).product();
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        let mut m = min;
        while product * m as usize <= limit {
            prefix.push(m);
            extend(prefix, m, limit, out);
            prefix.pop();
            m += 1;
        }
    }
    extend(&mut Vec::new(), 2, 20.min(bound), &mut factor_lists);
    factor_lists.push(vec![5, 5]);
    factor_lists.push(vec![3, 3, 3]);
    factor_lists
        .into_iter()
        .filter_map(|f| FiniteGroup::with_bound(f, bound).ok())
        .collect()
}

/// Property suite: subgroup invariants and Lagrange divisibility, cover
/// bounds on every minimal cover in the test set, the absence of covers
/// for prime cyclic groups, and the `p + 1` spreads of `Z_p × Z_p`.
pub fn verify_group(bound: usize) -> Report {
    let mut report = Report::new("group");

    for group in test_set(bound) {
        let subs = group.subgroups();
        report.bump_check("subgroup-invariants", subs.len() as u64);
        for h in &subs {
            if !h.is_valid(&group) || group.order() % h.order() != 0 {
                report.push_violation(Violation::new(
                    "subgroup-invariants",
                    group.name(),
                    h.describe(&group),
                    "closed and of divisor order",
                    "violated",
                ));
            }
        }

        let covers = find_covers(&group, false);
        report.bump_check("covers-found", covers.len() as u64);
        for cover in &covers {
            report.bump_check("cover-bounds", 1);
            if !is_essentially_disjoint(&cover.members) {
                report.push_violation(Violation::new(
                    "essential-disjointness",
                    group.name(),
                    cover.describe(&group),
                    "pairwise trivial intersections",
                    "violated",
                ));
            }
            match verify_cover_bounds(&group, cover) {
                Ok(b) if b.ok() => {}
                Ok(b) => report.push_violation(Violation::new(
                    "cover-bounds",
                    group.name(),
                    cover.describe(&group),
                    "coset/size/product inequalities",
                    b.to_string(),
                )),
                Err(e) => report.push_violation(Violation::new(
                    "cover-bounds",
                    group.name(),
                    cover.describe(&group),
                    "verifiable cover",
                    e.to_string(),
                )),
            }
        }
    }

    // prime cyclic groups admit no proper cover
    for p in [2u32, 3, 5, 7, 11, 13] {
        report.bump_check("prime-cyclic", 1);
        let group = FiniteGroup::with_bound(vec![p], bound).unwrap();
        if !find_covers(&group, false).is_empty() {
            report.push_violation(Violation::new(
                "prime-cyclic",
                group.name(),
                "-",
                "no cover with kappa >= 2",
                "found one",
            ));
        }
    }

    // Z_p × Z_p: unique minimal cover by the p + 1 lines
    for p in [2u32, 3, 5] {
        report.bump_check("plane-spread", 1);
        let group = FiniteGroup::with_bound(vec![p, p], bound).unwrap();
        let covers = find_covers(&group, false);
        let min_kappa = covers.iter().map(SubgroupCover::kappa).min();
        if min_kappa != Some(p as usize + 1) {
            report.push_violation(Violation::new(
                "plane-spread",
                group.name(),
                "-",
                format!("minimal kappa {}", p + 1),
                format!("{min_kappa:?}"),
            ));
        }
    }
    report
}
