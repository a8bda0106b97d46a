//! Dyadic-tree index combinatorics.
//!
//! The gaps of the middle-third Cantor set, ordered left to right, form a
//! countable dense order isomorphic to the dyadic rationals in `(0, 1)`.
//! A gap at level `n` and position `k` corresponds to `(2k - 1) / 2^n`, and
//! the gaps themselves form an infinite binary tree: the children of
//! `(n, k)` are `(n + 1, 2k - 1)` and `(n + 1, 2k)`.
//!
//! Suborders are represented symbolically as finitely many full subtrees,
//! adjusted by finitely many added or removed points. That class is closed
//! under the boolean operations and membership in it is decidable, which is
//! what makes the scattered/dense dichotomy computable here.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::OrderError;

/// Largest level a node may have; keeps positions inside `u64`.
pub const MAX_LEVEL: u32 = 63;

/// A node of the infinite binary tree, i.e. the dyadic rational
/// `(2k - 1) / 2^n` with `1 <= k <= 2^(n-1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DyadicNode {
    level: u32,
    position: u64,
}

impl DyadicNode {
    pub const ROOT: DyadicNode = DyadicNode {
        level: 1,
        position: 1,
    };

    pub fn new(level: u32, position: u64) -> Result<Self, OrderError> {
        if level == 0 || level > MAX_LEVEL {
            return Err(OrderError::LevelOutOfRange(level));
        }
        if position == 0 || position > 1u64 << (level - 1) {
            return Err(OrderError::PositionOutOfRange { level, position });
        }
        Ok(DyadicNode { level, position })
    }

    /// Builds the node for the reduced dyadic rational `numer / denom`.
    pub fn from_rational(numer: u64, denom: u64) -> Result<Self, OrderError> {
        if numer.is_multiple_of(2) || !denom.is_power_of_two() || denom < 2 || numer >= denom {
            return Err(OrderError::NotDyadic { numer, denom });
        }
        let level = denom.trailing_zeros();
        DyadicNode::new(level, numer.div_ceil(2))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    /// Odd numerator of the represented rational.
    pub fn numerator(&self) -> u64 {
        2 * self.position - 1
    }

    /// `log2` of the denominator of the represented rational.
    pub fn denominator_exp(&self) -> u32 {
        self.level
    }

    /// Breadth-first index `2^(n-1) + k - 1`; a bijection onto the positive integers.
    pub fn bfs_index(&self) -> u64 {
        (1u64 << (self.level - 1)) + self.position - 1
    }

    pub fn from_bfs_index(index: u64) -> Result<Self, OrderError> {
        if index == 0 {
            return Err(OrderError::ZeroIndex);
        }
        let level = 64 - index.leading_zeros();
        DyadicNode::new(level, index - (1u64 << (level - 1)) + 1)
    }

    pub fn left_child(&self) -> Option<DyadicNode> {
        (self.level < MAX_LEVEL).then(|| DyadicNode {
            level: self.level + 1,
            position: 2 * self.position - 1,
        })
    }

    pub fn right_child(&self) -> Option<DyadicNode> {
        (self.level < MAX_LEVEL).then(|| DyadicNode {
            level: self.level + 1,
            position: 2 * self.position,
        })
    }

    pub fn parent(&self) -> Option<DyadicNode> {
        (self.level > 1).then(|| DyadicNode {
            level: self.level - 1,
            position: self.position.div_ceil(2),
        })
    }

    /// True if `self` lies in the subtree rooted at `root` (a node is its own descendant).
    pub fn descends_from(&self, root: &DyadicNode) -> bool {
        self.level >= root.level
            && (self.position - 1) >> (self.level - root.level) == root.position - 1
    }

    /// Left/right turns from the root down to this node (`false` = left).
    pub(crate) fn turns(&self) -> impl Iterator<Item = bool> + '_ {
        let bits = self.level - 1;
        (0..bits)
            .rev()
            .map(move |i| (self.position - 1) >> i & 1 == 1)
    }
}

impl Ord for DyadicNode {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = u128::from(self.numerator()) << other.level;
        let rhs = u128::from(other.numerator()) << self.level;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for DyadicNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.position)
    }
}

pub fn compare(a: &DyadicNode, b: &DyadicNode) -> Ordering {
    a.cmp(b)
}

/// The `n` nodes with breadth-first index at most `n`, in increasing order.
pub fn in_order_prefix(n: u64) -> Vec<DyadicNode> {
    let mut nodes: Vec<DyadicNode> = (1..=n)
        .map(|i| DyadicNode::from_bfs_index(i).expect("index in range"))
        .collect();
    nodes.sort();
    nodes
}

/// A full subtree of the dyadic tree: either the whole tree or everything
/// below (and including) a root node.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Subtree {
    Whole,
    Rooted(DyadicNode),
}

impl Subtree {
    pub fn contains(&self, node: &DyadicNode) -> bool {
        match self {
            Subtree::Whole => true,
            Subtree::Rooted(root) => node.descends_from(root),
        }
    }

    pub fn contains_subtree(&self, other: &Subtree) -> bool {
        match (self, other) {
            (Subtree::Whole, _) => true,
            (Subtree::Rooted(_), Subtree::Whole) => false,
            (Subtree::Rooted(_), Subtree::Rooted(r)) => self.contains(r),
        }
    }

    pub fn overlaps(&self, other: &Subtree) -> bool {
        self.contains_subtree(other) || other.contains_subtree(self)
    }

    pub fn root(&self) -> DyadicNode {
        match self {
            Subtree::Whole => DyadicNode::ROOT,
            Subtree::Rooted(r) => *r,
        }
    }
}

impl fmt::Display for Subtree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subtree::Whole => f.write_str("tree"),
            Subtree::Rooted(r) => write!(f, "subtree({},{})", r.level, r.position),
        }
    }
}

/// A function on the nodes of the dyadic tree that is constant on all but
/// finitely many subtrees. `Const` covers a whole subtree; `Split` fixes the
/// value at the current node and recurses into both children.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TreeFn<T> {
    Const(T),
    Split {
        here: T,
        left: Box<TreeFn<T>>,
        right: Box<TreeFn<T>>,
    },
}

impl<T: Clone + PartialEq> TreeFn<T> {
    fn split(here: T, left: TreeFn<T>, right: TreeFn<T>) -> Self {
        if let (TreeFn::Const(l), TreeFn::Const(r)) = (&left, &right) {
            if *l == here && *r == here {
                return TreeFn::Const(here);
            }
        }
        TreeFn::Split {
            here,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// `inside` on the subtree, `outside` elsewhere.
    pub fn subtree_indicator(subtree: &Subtree, inside: T, outside: T) -> Self {
        match subtree {
            Subtree::Whole => TreeFn::Const(inside),
            Subtree::Rooted(root) => {
                let turns: Vec<bool> = root.turns().collect();
                Self::along_path(&turns, TreeFn::Const(inside), outside)
            }
        }
    }

    /// `value` at a single node, `default` elsewhere.
    pub fn point(node: &DyadicNode, value: T, default: T) -> Self {
        let turns: Vec<bool> = node.turns().collect();
        let at = Self::split(
            value,
            TreeFn::Const(default.clone()),
            TreeFn::Const(default.clone()),
        );
        Self::along_path(&turns, at, default)
    }

    fn along_path(turns: &[bool], target: TreeFn<T>, default: T) -> Self {
        turns.iter().rev().fold(target, |acc, &right| {
            let other = TreeFn::Const(default.clone());
            if right {
                Self::split(default.clone(), other, acc)
            } else {
                Self::split(default.clone(), acc, other)
            }
        })
    }

    pub fn value_at(&self, node: &DyadicNode) -> T {
        let mut cur = self;
        let mut turns = node.turns();
        loop {
            match cur {
                TreeFn::Const(v) => return v.clone(),
                TreeFn::Split { here, left, right } => match turns.next() {
                    None => return here.clone(),
                    Some(false) => cur = left,
                    Some(true) => cur = right,
                },
            }
        }
    }

    pub fn map<U: Clone + PartialEq>(&self, f: &impl Fn(&T) -> U) -> TreeFn<U> {
        match self {
            TreeFn::Const(v) => TreeFn::Const(f(v)),
            TreeFn::Split { here, left, right } => {
                TreeFn::split(f(here), left.map(f), right.map(f))
            }
        }
    }

    /// Pointwise combination of two functions.
    pub fn zip_with<U, V>(&self, other: &TreeFn<U>, f: &impl Fn(&T, &U) -> V) -> TreeFn<V>
    where
        U: Clone + PartialEq,
        V: Clone + PartialEq,
    {
        match (self, other) {
            (TreeFn::Const(a), TreeFn::Const(b)) => TreeFn::Const(f(a, b)),
            (TreeFn::Const(a), TreeFn::Split { here, left, right }) => {
                let c = TreeFn::Const(a.clone());
                TreeFn::split(f(a, here), c.zip_with(left, f), c.zip_with(right, f))
            }
            (TreeFn::Split { here, left, right }, TreeFn::Const(b)) => {
                let c = TreeFn::Const(b.clone());
                TreeFn::split(f(here, b), left.zip_with(&c, f), right.zip_with(&c, f))
            }
            (
                TreeFn::Split {
                    here: h1,
                    left: l1,
                    right: r1,
                },
                TreeFn::Split {
                    here: h2,
                    left: l2,
                    right: r2,
                },
            ) => TreeFn::split(f(h1, h2), l1.zip_with(l2, f), r1.zip_with(r2, f)),
        }
    }

    /// The constant regions (maximal `Const` leaves) with their values.
    pub fn regions(&self) -> Vec<(Subtree, T)> {
        let mut out = Vec::new();
        self.walk(None, &mut |node, f| {
            if let TreeFn::Const(v) = f {
                let st = node.map_or(Subtree::Whole, Subtree::Rooted);
                out.push((st, v.clone()));
            }
        });
        out
    }

    /// Values fixed at individual split nodes.
    pub fn split_values(&self) -> Vec<(DyadicNode, T)> {
        let mut out = Vec::new();
        self.walk(None, &mut |node, f| {
            if let TreeFn::Split { here, .. } = f {
                out.push((node.unwrap_or(DyadicNode::ROOT), here.clone()));
            }
        });
        out
    }

    fn walk<'a>(
        &'a self,
        node: Option<DyadicNode>,
        visit: &mut impl FnMut(Option<DyadicNode>, &'a TreeFn<T>),
    ) {
        visit(node, self);
        if let TreeFn::Split { left, right, .. } = self {
            let here = node.unwrap_or(DyadicNode::ROOT);
            left.walk(here.left_child(), visit);
            right.walk(here.right_child(), visit);
        }
    }

    fn any_leaf(&self, pred: &impl Fn(&T) -> bool) -> bool {
        match self {
            TreeFn::Const(v) => pred(v),
            TreeFn::Split { left, right, .. } => left.any_leaf(pred) || right.any_leaf(pred),
        }
    }

    /// Number of `Split` nodes plus leaves.
    pub fn size(&self) -> usize {
        match self {
            TreeFn::Const(_) => 1,
            TreeFn::Split { left, right, .. } => 1 + left.size() + right.size(),
        }
    }
}

/// A suborder of the dyadic order: finitely many full subtrees, minus a
/// finite set of removed points, plus a finite set of extra points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolicDyadicSet {
    indicator: TreeFn<bool>,
}

impl SymbolicDyadicSet {
    /// Validates and builds a set from its parts.
    pub fn new(
        regions: &[Subtree],
        extras: &[DyadicNode],
        removals: &[DyadicNode],
    ) -> Result<Self, OrderError> {
        for (i, a) in regions.iter().enumerate() {
            for b in &regions[i + 1..] {
                if a.overlaps(b) {
                    return Err(OrderError::RegionOverlap(*a, *b));
                }
            }
        }
        for x in extras {
            if removals.contains(x) {
                return Err(OrderError::ExtraAlsoRemoved(*x));
            }
            if regions.iter().any(|r| r.contains(x)) {
                return Err(OrderError::ExtraInsideRegion(*x));
            }
        }
        for x in removals {
            if !regions.iter().any(|r| r.contains(x)) {
                return Err(OrderError::RemovalOutsideRegions(*x));
            }
        }
        let mut set = Self::empty();
        for r in regions {
            set = set.union(&Self::subtree(r));
        }
        for x in extras {
            set = set.union(&Self::point(x));
        }
        for x in removals {
            set = set.difference(&Self::point(x));
        }
        Ok(set)
    }

    pub fn empty() -> Self {
        SymbolicDyadicSet {
            indicator: TreeFn::Const(false),
        }
    }

    pub fn whole() -> Self {
        SymbolicDyadicSet {
            indicator: TreeFn::Const(true),
        }
    }

    pub fn subtree(subtree: &Subtree) -> Self {
        SymbolicDyadicSet {
            indicator: TreeFn::subtree_indicator(subtree, true, false),
        }
    }

    pub fn point(node: &DyadicNode) -> Self {
        SymbolicDyadicSet {
            indicator: TreeFn::point(node, true, false),
        }
    }

    pub fn points<'a>(nodes: impl IntoIterator<Item = &'a DyadicNode>) -> Self {
        nodes
            .into_iter()
            .fold(Self::empty(), |acc, n| acc.union(&Self::point(n)))
    }

    pub fn from_indicator(indicator: TreeFn<bool>) -> Self {
        SymbolicDyadicSet { indicator }
    }

    pub fn indicator(&self) -> &TreeFn<bool> {
        &self.indicator
    }

    pub fn contains(&self, node: &DyadicNode) -> bool {
        self.indicator.value_at(node)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_indicator(self.indicator.zip_with(&other.indicator, &|a, b| *a || *b))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self::from_indicator(self.indicator.zip_with(&other.indicator, &|a, b| *a && *b))
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self::from_indicator(self.indicator.zip_with(&other.indicator, &|a, b| *a && !*b))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.indicator == TreeFn::Const(false)
    }

    /// Canonical decomposition into `(regions, extras, removals)`: each region
    /// is a maximal subtree on which the set is cofinite.
    pub fn parts(&self) -> (Vec<Subtree>, Vec<DyadicNode>, Vec<DyadicNode>) {
        let mut regions = Vec::new();
        let mut extras = Vec::new();
        let mut removals = Vec::new();
        decompose(
            &self.indicator,
            None,
            &mut regions,
            &mut extras,
            &mut removals,
        );
        extras.sort();
        removals.sort();
        (regions, extras, removals)
    }

    pub fn regions(&self) -> Vec<Subtree> {
        self.parts().0
    }

    /// The finitely many members, when the set is finite.
    pub fn finite_members(&self) -> Option<BTreeSet<DyadicNode>> {
        let (regions, extras, _) = self.parts();
        regions.is_empty().then(|| extras.into_iter().collect())
    }
}

fn decompose(
    f: &TreeFn<bool>,
    node: Option<DyadicNode>,
    regions: &mut Vec<Subtree>,
    extras: &mut Vec<DyadicNode>,
    removals: &mut Vec<DyadicNode>,
) {
    let subtree = node.map_or(Subtree::Whole, Subtree::Rooted);
    if !f.any_leaf(&|v| !*v) {
        // cofinite inside this subtree
        regions.push(subtree);
        removals.extend(
            f.split_values()
                .into_iter()
                .filter(|(_, v)| !*v)
                .map(|(n, _)| relocate(n, node)),
        );
        return;
    }
    match f {
        TreeFn::Const(_) => {}
        TreeFn::Split { here, left, right } => {
            let at = node.unwrap_or(DyadicNode::ROOT);
            if *here {
                extras.push(at);
            }
            decompose(left, at.left_child(), regions, extras, removals);
            decompose(right, at.right_child(), regions, extras, removals);
        }
    }
}

/// `split_values` reports nodes relative to the tree it was called on; shift
/// them under `base`.
fn relocate(rel: DyadicNode, base: Option<DyadicNode>) -> DyadicNode {
    match base {
        None => rel,
        Some(b) => {
            let depth = rel.level - 1;
            DyadicNode {
                level: b.level + depth,
                position: ((b.position - 1) << depth) + rel.position,
            }
        }
    }
}

impl fmt::Display for SymbolicDyadicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (regions, extras, removals) = self.parts();
        let mut terms: Vec<String> = regions.iter().map(|r| r.to_string()).collect();
        let list = |ns: &[DyadicNode]| {
            ns.iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        if !extras.is_empty() {
            terms.push(format!("points{{{}}}", list(&extras)));
        }
        if terms.is_empty() {
            f.write_str("empty")?;
        } else {
            f.write_str(&terms.join(" + "))?;
        }
        if !removals.is_empty() {
            write!(f, " - points{{{}}}", list(&removals))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    Scattered,
    ContainsDense,
}

/// Result of classifying a symbolic suborder. A `ContainsDense` verdict
/// carries a full subtree that lies in the set up to finitely many points.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OrderClass {
    kind: OrderKind,
    witness: Option<Subtree>,
}

impl OrderClass {
    pub fn scattered() -> Self {
        OrderClass {
            kind: OrderKind::Scattered,
            witness: None,
        }
    }

    pub fn dense(witness: Subtree) -> Self {
        OrderClass {
            kind: OrderKind::ContainsDense,
            witness: Some(witness),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn witness(&self) -> Option<Subtree> {
        self.witness
    }

    pub fn is_scattered(&self) -> bool {
        self.kind == OrderKind::Scattered
    }
}

/// Decides whether the set contains a densely ordered suborder.
///
/// A full subtree is order-isomorphic to the whole dyadic order, and
/// deleting finitely many points from a dense order without endpoints leaves
/// a dense suborder. A set with no surviving region is finite.
pub fn classify(set: &SymbolicDyadicSet) -> OrderClass {
    match set.regions().first() {
        Some(r) => OrderClass::dense(*r),
        None => OrderClass::scattered(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(n: u32, k: u64) -> DyadicNode {
        DyadicNode::new(n, k).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&node(1, 1), &node(1, 1)), Ordering::Equal);
        assert_eq!(compare(&node(2, 1), &node(1, 1)), Ordering::Less);
        assert_eq!(compare(&node(4, 5), &node(2, 2)), Ordering::Less);
    }

    #[test]
    fn rejects_bad_nodes() {
        assert!(DyadicNode::new(0, 1).is_err());
        assert!(DyadicNode::new(2, 3).is_err());
        assert!(DyadicNode::new(1, 0).is_err());
        assert!(DyadicNode::new(64, 1).is_err());
        assert!(DyadicNode::from_rational(2, 4).is_err());
        assert!(DyadicNode::from_rational(3, 6).is_err());
        assert_eq!(DyadicNode::from_rational(3, 4).unwrap(), node(2, 2));
    }

    #[test]
    fn bfs_index_examples() {
        assert_eq!(node(1, 1).bfs_index(), 1);
        assert_eq!(node(2, 2).bfs_index(), 3);
        assert_eq!(node(3, 1).bfs_index(), 4);
        assert!(DyadicNode::from_bfs_index(0).is_err());
    }

    #[test]
    fn in_order_prefix_examples() {
        assert_eq!(in_order_prefix(1), vec![node(1, 1)]);
        assert_eq!(in_order_prefix(2), vec![node(2, 1), node(1, 1)]);
        assert_eq!(in_order_prefix(3), vec![node(2, 1), node(1, 1), node(2, 2)]);
    }

    #[test]
    fn family_relations() {
        let n = node(3, 3);
        assert_eq!(n.parent(), Some(node(2, 2)));
        assert!(n.descends_from(&node(2, 2)));
        assert!(n.descends_from(&node(1, 1)));
        assert!(!n.descends_from(&node(2, 1)));
        assert_eq!(node(2, 2).left_child(), Some(n));
    }

    #[test]
    fn classify_examples() {
        let finite = SymbolicDyadicSet::new(&[], &[node(1, 1), node(2, 1)], &[]).unwrap();
        assert!(classify(&finite).is_scattered());

        let whole = SymbolicDyadicSet::new(&[Subtree::Whole], &[], &[]).unwrap();
        let c = classify(&whole);
        assert_eq!(c.kind(), OrderKind::ContainsDense);
        assert_eq!(c.witness(), Some(Subtree::Whole));

        let st = Subtree::Rooted(node(2, 1));
        let cut = SymbolicDyadicSet::new(&[st], &[], &[node(2, 1)]).unwrap();
        assert_eq!(classify(&cut).kind(), OrderKind::ContainsDense);
    }

    #[test]
    fn malformed_sets_are_rejected() {
        let a = Subtree::Rooted(node(2, 1));
        let b = Subtree::Rooted(node(3, 2));
        assert!(matches!(
            SymbolicDyadicSet::new(&[a, b], &[], &[]),
            Err(OrderError::RegionOverlap(..))
        ));
        assert!(SymbolicDyadicSet::new(&[a], &[node(3, 1)], &[]).is_err());
        assert!(SymbolicDyadicSet::new(&[a], &[], &[node(2, 2)]).is_err());
        assert!(SymbolicDyadicSet::new(&[a], &[node(2, 2)], &[node(2, 2)]).is_err());
    }

    #[test]
    fn parts_are_canonical() {
        // whole tree minus a subtree: root and the sibling subtrees along the path
        let cut = SymbolicDyadicSet::whole()
            .difference(&SymbolicDyadicSet::subtree(&Subtree::Rooted(node(3, 2))));
        let (regions, extras, removals) = cut.parts();
        assert_eq!(
            regions,
            vec![Subtree::Rooted(node(3, 1)), Subtree::Rooted(node(2, 2))]
        );
        assert_eq!(extras, vec![node(2, 1), node(1, 1)]);
        assert!(removals.is_empty());

        let holes = SymbolicDyadicSet::new(&[Subtree::Whole], &[], &[node(4, 3)]).unwrap();
        assert_eq!(
            holes.parts(),
            (vec![Subtree::Whole], vec![], vec![node(4, 3)])
        );
        let rebuilt = {
            let (r, e, x) = holes.parts();
            SymbolicDyadicSet::new(&r, &e, &x).unwrap()
        };
        assert_eq!(rebuilt, holes);
    }

    #[test]
    fn display_round_trip_shape() {
        let s =
            SymbolicDyadicSet::new(&[Subtree::Rooted(node(2, 2))], &[node(1, 1)], &[node(3, 3)])
                .unwrap();
        assert_eq!(
            s.to_string(),
            "subtree(2,2) + points{(1,1)} - points{(3,3)}"
        );
        assert_eq!(SymbolicDyadicSet::empty().to_string(), "empty");
    }

    #[test]
    fn tree_fn_point_and_subtree_values() {
        let f = TreeFn::point(&node(3, 4), 5i64, 0);
        assert_eq!(f.value_at(&node(3, 4)), 5);
        assert_eq!(f.value_at(&node(2, 2)), 0);
        assert_eq!(f.value_at(&node(4, 8)), 0);
        let g = TreeFn::subtree_indicator(&Subtree::Rooted(node(2, 1)), 1i64, 0);
        assert_eq!(g.value_at(&node(5, 3)), 1);
        assert_eq!(g.value_at(&node(1, 1)), 0);
        let sum = f.zip_with(&g, &|a, b| a + b);
        assert_eq!(sum.zip_with(&sum, &|a, b| a - b), TreeFn::Const(0));
    }
}
