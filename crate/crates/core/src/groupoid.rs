//! Finite groupoids: composition tables, wide subgroupoids, normality,
//! connected components, and transversals for right Λ-equivalence.
//!
//! Morphisms are dense indices.  `comp(σ, τ)` is the composite `στ`, defined
//! exactly when `dom(σ) = cod(τ)`; it has `dom(στ) = dom(τ)` and
//! `cod(στ) = cod(σ)`.  Objects are identified with their identity
//! morphisms.

use std::collections::BTreeSet;

use thiserror::Error;

/// Default construction bounds; inputs beyond these are rejected so the
/// downstream tensor oracle stays tractable.
pub const MAX_OBJECTS: usize = 64;
pub const MAX_MORPHISMS: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("axiom violation ({kind}) at witness {witness:?}")]
    AxiomViolation { kind: &'static str, witness: Vec<usize> },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("size exceeds bounds: {0} (max {1})")]
    SizeExceeded(usize, usize),
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("subgroupoid is not wide: missing identity of object {0}")]
    NotWide(usize),
    #[error("morphism set not closed under {op}: witness {witness:?}")]
    NotClosed { op: &'static str, witness: Vec<usize> },
    #[error("morphisms {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("morphism {0} is not a transversal representative")]
    NotRepresentative(usize),
}

/// A finite groupoid with validated composition, inverse and identity
/// tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    comp: Vec<Option<usize>>,
    inv: Vec<usize>,
    identity: Vec<usize>,
}

impl FiniteGroupoid {
    /// Validates raw tables and builds the groupoid.  Every axiom is checked
    /// eagerly; later operations assume validity.
    pub fn build(
        objects: usize,
        morphisms: &[(usize, usize)],
        comp: &[Vec<Option<usize>>],
        inv: &[usize],
        identity: &[usize],
    ) -> Result<Self, GroupoidError> {
        let n = morphisms.len();
        if objects == 0 || n == 0 {
            return Err(GroupoidError::AxiomViolation { kind: "empty groupoid", witness: vec![] });
        }
        if objects > MAX_OBJECTS {
            return Err(GroupoidError::SizeExceeded(objects, MAX_OBJECTS));
        }
        if n > MAX_MORPHISMS {
            return Err(GroupoidError::SizeExceeded(n, MAX_MORPHISMS));
        }
        if comp.len() != n || inv.len() != n || identity.len() != objects {
            return Err(GroupoidError::IndexOutOfRange("table sizes inconsistent".into()));
        }
        for (i, &(d, c)) in morphisms.iter().enumerate() {
            if d >= objects || c >= objects {
                return Err(GroupoidError::IndexOutOfRange(format!("morphism {i} endpoint")));
            }
        }
        for (i, row) in comp.iter().enumerate() {
            if row.len() != n {
                return Err(GroupoidError::IndexOutOfRange(format!("comp row {i}")));
            }
            for &entry in row {
                if let Some(k) = entry {
                    if k >= n {
                        return Err(GroupoidError::IndexOutOfRange(format!(
                            "comp entry in row {i}"
                        )));
                    }
                }
            }
        }
        for (i, &k) in inv.iter().enumerate() {
            if k >= n {
                return Err(GroupoidError::IndexOutOfRange(format!("inv of {i}")));
            }
        }
        for (e, &k) in identity.iter().enumerate() {
            if k >= n {
                return Err(GroupoidError::IndexOutOfRange(format!("identity of {e}")));
            }
        }
        let g = FiniteGroupoid {
            objects,
            dom: morphisms.iter().map(|&(d, _)| d).collect(),
            cod: morphisms.iter().map(|&(_, c)| c).collect(),
            comp: comp.iter().flat_map(|r| r.iter().copied()).collect(),
            inv: inv.to_vec(),
            identity: identity.to_vec(),
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), GroupoidError> {
        let n = self.morphism_count();
        // Identity morphisms are loops at their objects.
        for e in 0..self.objects {
            let id = self.identity[e];
            if self.dom[id] != e || self.cod[id] != e {
                return Err(GroupoidError::AxiomViolation {
                    kind: "identity is not a loop at its object",
                    witness: vec![e, id],
                });
            }
        }
        // comp defined exactly on composable pairs; endpoint laws.
        for s in 0..n {
            for t in 0..n {
                match self.comp(s, t) {
                    Some(st) => {
                        if self.dom[s] != self.cod[t] {
                            return Err(GroupoidError::AxiomViolation {
                                kind: "comp defined on non-composable pair",
                                witness: vec![s, t],
                            });
                        }
                        if self.dom[st] != self.dom[t] || self.cod[st] != self.cod[s] {
                            return Err(GroupoidError::AxiomViolation {
                                kind: "domain/codomain law fails",
                                witness: vec![s, t, st],
                            });
                        }
                    }
                    None => {
                        if self.dom[s] == self.cod[t] {
                            return Err(GroupoidError::AxiomViolation {
                                kind: "comp undefined on composable pair",
                                witness: vec![s, t],
                            });
                        }
                    }
                }
            }
        }
        // Identity laws.
        for s in 0..n {
            let le = self.identity[self.cod[s]];
            let re = self.identity[self.dom[s]];
            if self.comp(le, s) != Some(s) || self.comp(s, re) != Some(s) {
                return Err(GroupoidError::AxiomViolation {
                    kind: "identity law fails",
                    witness: vec![s],
                });
            }
        }
        // Inverse laws.
        for s in 0..n {
            let si = self.inv[s];
            if self.dom[si] != self.cod[s] || self.cod[si] != self.dom[s] {
                return Err(GroupoidError::AxiomViolation {
                    kind: "inverse has wrong endpoints",
                    witness: vec![s, si],
                });
            }
            if self.comp(s, si) != Some(self.identity[self.cod[s]])
                || self.comp(si, s) != Some(self.identity[self.dom[s]])
            {
                return Err(GroupoidError::AxiomViolation {
                    kind: "inverse law fails",
                    witness: vec![s, si],
                });
            }
        }
        // Associativity on all composable triples.
        for s in 0..n {
            for t in 0..n {
                let Some(st) = self.comp(s, t) else { continue };
                for r in 0..n {
                    let Some(tr) = self.comp(t, r) else { continue };
                    if self.comp(st, r) != self.comp(s, tr) {
                        return Err(GroupoidError::AxiomViolation {
                            kind: "associativity fails",
                            witness: vec![s, t, r],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.dom.len()
    }

    pub fn dom(&self, s: usize) -> usize {
        self.dom[s]
    }

    pub fn cod(&self, s: usize) -> usize {
        self.cod[s]
    }

    /// The composite `στ`, when `dom(σ) = cod(τ)`.
    pub fn comp(&self, s: usize, t: usize) -> Option<usize> {
        self.comp[s * self.morphism_count() + t]
    }

    pub fn inv(&self, s: usize) -> usize {
        self.inv[s]
    }

    pub fn identity(&self, e: usize) -> usize {
        self.identity[e]
    }

    pub fn is_identity(&self, s: usize) -> bool {
        self.identity[self.dom[s]] == s && self.dom[s] == self.cod[s]
    }

    /// Morphisms `e → f`, i.e. with `dom = e` and `cod = f`.
    pub fn hom(&self, e: usize, f: usize) -> Vec<usize> {
        (0..self.morphism_count()).filter(|&s| self.dom[s] == e && self.cod[s] == f).collect()
    }

    /// The isotropy group `Γ(e)` of loops at `e`.
    pub fn loops(&self, e: usize) -> Vec<usize> {
        self.hom(e, e)
    }

    /// The trivial group on one object.
    pub fn trivial() -> Self {
        Self::build(1, &[(0, 0)], &[vec![Some(0)]], &[0], &[0]).expect("trivial groupoid")
    }

    /// The thin groupoid on `n` objects: one morphism `(i,j) : j → i` for
    /// every ordered pair, with `(i,j)(j,k) = (i,k)`.
    pub fn thin(n: usize) -> Result<Self, GroupoidError> {
        if n == 0 {
            return Err(GroupoidError::AxiomViolation {
                kind: "thin groupoid needs at least one object",
                witness: vec![],
            });
        }
        let idx = |i: usize, j: usize| i * n + j;
        let morphisms: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (j, i))).collect();
        let mut comp = vec![vec![None; n * n]; n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    comp[idx(i, j)][idx(j, k)] = Some(idx(i, k));
                }
            }
        }
        let inv: Vec<usize> = (0..n).flat_map(|i| (0..n).map(move |j| idx(j, i))).collect();
        let identity: Vec<usize> = (0..n).map(|i| idx(i, i)).collect();
        Self::build(n, &morphisms, &comp, &inv, &identity)
    }

    /// One-object groupoid from a group multiplication table
    /// (`table[a][b] = a·b`).
    pub fn from_group(table: &[Vec<usize>]) -> Result<Self, GroupoidError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupoidError::NotAGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupoidError::NotAGroup(format!("row {a} has wrong length")));
            }
            for &v in row {
                if v >= n {
                    return Err(GroupoidError::NotAGroup(format!("entry out of range in row {a}")));
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| GroupoidError::NotAGroup("no identity element".into()))?;
        let mut inv = vec![usize::MAX; n];
        for (a, item) in inv.iter_mut().enumerate() {
            *item = (0..n)
                .find(|&b| table[a][b] == e && table[b][a] == e)
                .ok_or_else(|| GroupoidError::NotAGroup(format!("element {a} has no inverse")))?;
        }
        let morphisms: Vec<(usize, usize)> = vec![(0, 0); n];
        let comp: Vec<Vec<Option<usize>>> =
            table.iter().map(|row| row.iter().map(|&v| Some(v)).collect()).collect();
        Self::build(1, &morphisms, &comp, &inv, &[e])
            .map_err(|err| GroupoidError::NotAGroup(err.to_string()))
    }

    /// Disjoint union; there are no morphisms between the two summands.
    pub fn disjoint_union(a: &FiniteGroupoid, b: &FiniteGroupoid) -> Result<Self, GroupoidError> {
        let objects = a.objects + b.objects;
        let na = a.morphism_count();
        let nb = b.morphism_count();
        let mut morphisms = Vec::with_capacity(na + nb);
        for s in 0..na {
            morphisms.push((a.dom[s], a.cod[s]));
        }
        for s in 0..nb {
            morphisms.push((b.dom[s] + a.objects, b.cod[s] + a.objects));
        }
        let mut comp = vec![vec![None; na + nb]; na + nb];
        for s in 0..na {
            for t in 0..na {
                comp[s][t] = a.comp(s, t);
            }
        }
        for s in 0..nb {
            for t in 0..nb {
                comp[na + s][na + t] = b.comp(s, t).map(|k| k + na);
            }
        }
        let inv: Vec<usize> = a.inv.iter().copied().chain(b.inv.iter().map(|&k| k + na)).collect();
        let identity: Vec<usize> =
            a.identity.iter().copied().chain(b.identity.iter().map(|&k| k + na)).collect();
        Self::build(objects, &morphisms, &comp, &inv, &identity)
    }

    /// The product `G × (thin n)`: objects `0..n`, morphisms `(i, g, j)`
    /// from `j` to `i` with `(i,g,j)(j,h,k) = (i, g·h, k)`, indexed as
    /// `(i·n + j)·|G| + g`.
    pub fn product_with_thin(table: &[Vec<usize>], n: usize) -> Result<Self, GroupoidError> {
        let group = Self::from_group(table)?;
        let ng = group.morphism_count();
        if n == 0 {
            return Err(GroupoidError::AxiomViolation {
                kind: "product needs at least one object",
                witness: vec![],
            });
        }
        let idx = |i: usize, g: usize, j: usize| (i * n + j) * ng + g;
        let mut morphisms = Vec::with_capacity(n * n * ng);
        for i in 0..n {
            for j in 0..n {
                for _g in 0..ng {
                    morphisms.push((j, i));
                }
            }
        }
        let total = n * n * ng;
        let mut comp = vec![vec![None; total]; total];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for g in 0..ng {
                        for h in 0..ng {
                            comp[idx(i, g, j)][idx(j, h, k)] = Some(idx(i, table[g][h], k));
                        }
                    }
                }
            }
        }
        let mut inv = vec![0usize; total];
        for i in 0..n {
            for j in 0..n {
                for g in 0..ng {
                    inv[idx(i, g, j)] = idx(j, group.inv[g], i);
                }
            }
        }
        let identity: Vec<usize> = (0..n).map(|i| idx(i, group.identity[0], i)).collect();
        Self::build(n, &morphisms, &comp, &inv, &identity)
    }

    /// Partition of the objects into connected components, together with the
    /// restricted groupoid on each class.
    pub fn connected_components(&self) -> Vec<Component> {
        let mut class = vec![usize::MAX; self.objects];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.objects {
            if class[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            class[start] = id;
            while let Some(e) = stack.pop() {
                members.push(e);
                for s in 0..self.morphism_count() {
                    let (d, c) = (self.dom[s], self.cod[s]);
                    if d == e && class[c] == usize::MAX {
                        class[c] = id;
                        stack.push(c);
                    }
                    if c == e && class[d] == usize::MAX {
                        class[d] = id;
                        stack.push(d);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
            .into_iter()
            .map(|objects| {
                let morphisms = (0..self.morphism_count())
                    .filter(|&s| objects.binary_search(&self.dom[s]).is_ok())
                    .collect();
                Component { objects, morphisms }
            })
            .collect()
    }

    /// Index of the component containing object `e`.
    pub fn component_of(&self, components: &[Component], e: usize) -> usize {
        components
            .iter()
            .position(|c| c.objects.binary_search(&e).is_ok())
            .expect("object in some component")
    }
}

/// One connected component: its objects and every morphism between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

/// A wide subgroupoid, stored as its morphism-index set.  Operations take
/// the parent groupoid explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WideSubgroupoid {
    members: BTreeSet<usize>,
}

impl WideSubgroupoid {
    /// Validates wideness and closure under composition and inverse.
    pub fn new(parent: &FiniteGroupoid, members: &[usize]) -> Result<Self, GroupoidError> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        for &s in &set {
            if s >= parent.morphism_count() {
                return Err(GroupoidError::IndexOutOfRange(format!("member {s}")));
            }
        }
        for e in 0..parent.object_count() {
            if !set.contains(&parent.identity(e)) {
                return Err(GroupoidError::NotWide(e));
            }
        }
        for &s in &set {
            if !set.contains(&parent.inv(s)) {
                return Err(GroupoidError::NotClosed { op: "inverse", witness: vec![s] });
            }
            for &t in &set {
                if let Some(st) = parent.comp(s, t) {
                    if !set.contains(&st) {
                        return Err(GroupoidError::NotClosed {
                            op: "composition",
                            witness: vec![s, t],
                        });
                    }
                }
            }
        }
        Ok(WideSubgroupoid { members: set })
    }

    /// The full subgroupoid on all of `parent`.
    pub fn full(parent: &FiniteGroupoid) -> Self {
        WideSubgroupoid { members: (0..parent.morphism_count()).collect() }
    }

    /// The trivial wide subgroupoid of identities only.
    pub fn identities(parent: &FiniteGroupoid) -> Self {
        WideSubgroupoid {
            members: (0..parent.object_count()).map(|e| parent.identity(e)).collect(),
        }
    }

    pub fn contains(&self, s: usize) -> bool {
        self.members.contains(&s)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn member_vec(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Loops of the subgroupoid at `e`, i.e. `Δ(e)`.
    pub fn loops_at(&self, parent: &FiniteGroupoid, e: usize) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&s| parent.dom(s) == e && parent.cod(s) == e)
            .collect()
    }

    /// The smallest wide subgroupoid containing `seed`.
    pub fn closure(parent: &FiniteGroupoid, seed: &[usize]) -> Self {
        let mut set: BTreeSet<usize> =
            (0..parent.object_count()).map(|e| parent.identity(e)).collect();
        set.extend(seed.iter().copied());
        loop {
            let mut grew = false;
            let current: Vec<usize> = set.iter().copied().collect();
            for &s in &current {
                if set.insert(parent.inv(s)) {
                    grew = true;
                }
                for &t in &current {
                    if let Some(st) = parent.comp(s, t) {
                        if set.insert(st) {
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        WideSubgroupoid { members: set }
    }
}

/// True iff `members` is a wide subgroupoid of `parent`.
pub fn check_wide(parent: &FiniteGroupoid, members: &[usize]) -> bool {
    WideSubgroupoid::new(parent, members).is_ok()
}

/// Tests `σ Δ(e) σ⁻¹ ⊆ Δ(f)` for every `σ ∈ Γ(e, f)`; returns the first
/// failing `(σ, δ)` as a witness.
pub fn check_normal(
    parent: &FiniteGroupoid,
    delta: &WideSubgroupoid,
) -> Result<(), (usize, usize)> {
    for s in 0..parent.morphism_count() {
        let e = parent.dom(s);
        for d in delta.loops_at(parent, e) {
            let sd = parent.comp(s, d).expect("loop composable at dom");
            let conj = parent.comp(sd, parent.inv(s)).expect("conjugate composable");
            if !delta.contains(conj) {
                return Err((s, d));
            }
        }
    }
    Ok(())
}

/// The isotropy subgroupoid `Λ = Iso(Δ)`: all loops of `Δ`.
pub fn isotropy(parent: &FiniteGroupoid, delta: &WideSubgroupoid) -> WideSubgroupoid {
    let members: Vec<usize> =
        delta.members().filter(|&s| parent.dom(s) == parent.cod(s)).collect();
    WideSubgroupoid::new(parent, &members).expect("loops form a wide subgroupoid")
}

/// `[Γ(e) : Δ(e)]`, the isotropy index at `e`.
pub fn isotropy_index(parent: &FiniteGroupoid, delta: &WideSubgroupoid, e: usize) -> usize {
    let full = parent.loops(e).len();
    let sub = delta.loops_at(parent, e).len();
    full / sub
}

/// Tie-breaking rule for transversal representatives; identities are always
/// chosen first, as required.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    SmallestIndex,
    LargestIndex,
}

/// A transversal of right Λ-equivalence: one representative per class
/// `σΛ`, with every identity representing its own class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    reps: Vec<usize>,
    class_of: Vec<usize>,
}

impl Transversal {
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn class_of(&self, s: usize) -> usize {
        self.class_of[s]
    }

    pub fn is_rep(&self, s: usize) -> bool {
        self.class_of[s] == s
    }

    /// Representatives in `T_{f,e}`: those with `dom = f` and `cod = e`.
    pub fn between(&self, parent: &FiniteGroupoid, f: usize, e: usize) -> Vec<usize> {
        self.reps
            .iter()
            .copied()
            .filter(|&s| parent.dom(s) == f && parent.cod(s) == e)
            .collect()
    }

    /// Representatives in `T_e = T_{e,e}`, a left transversal of `Δ(e)` in
    /// `Γ(e)`.
    pub fn at(&self, parent: &FiniteGroupoid, e: usize) -> Vec<usize> {
        self.between(parent, e, e)
    }
}

/// Builds the deterministic transversal: identities first, then smallest
/// morphism index within each remaining class.
pub fn transversal(parent: &FiniteGroupoid, delta: &WideSubgroupoid) -> Transversal {
    transversal_with_tiebreak(parent, delta, TieBreak::SmallestIndex)
}

/// Same partition of `Γ` into classes `σΛ`, with a configurable choice of
/// non-identity representatives.  The trace on `C_R(R_Λ)` must not depend
/// on this choice; tests exercise both orders.
pub fn transversal_with_tiebreak(
    parent: &FiniteGroupoid,
    delta: &WideSubgroupoid,
    tie: TieBreak,
) -> Transversal {
    let lambda = isotropy(parent, delta);
    let n = parent.morphism_count();
    let equivalent = |s: usize, t: usize| -> bool {
        if parent.dom(s) != parent.dom(t) || parent.cod(s) != parent.cod(t) {
            return false;
        }
        let ti_s = parent.comp(parent.inv(t), s).expect("same endpoints compose");
        lambda.contains(ti_s)
    };
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let assign = |rep: usize, class_of: &mut Vec<usize>, reps: &mut Vec<usize>| {
        reps.push(rep);
        for t in 0..n {
            if class_of[t] == usize::MAX && equivalent(rep, t) {
                class_of[t] = rep;
            }
        }
    };
    for e in 0..parent.object_count() {
        assign(parent.identity(e), &mut class_of, &mut reps);
    }
    let order: Vec<usize> = match tie {
        TieBreak::SmallestIndex => (0..n).collect(),
        TieBreak::LargestIndex => (0..n).rev().collect(),
    };
    for s in order {
        if class_of[s] == usize::MAX {
            assign(s, &mut class_of, &mut reps);
        }
    }
    reps.sort_unstable();
    Transversal { reps, class_of }
}

/// The action `τ^σ`: the representative of the class of `στ`, for
/// `τ ∈ T_{f,e'}` and `σ ∈ Γ(e', e)`.
pub fn conj_rep(
    parent: &FiniteGroupoid,
    t: &Transversal,
    tau: usize,
    sigma: usize,
) -> Result<usize, GroupoidError> {
    if !t.is_rep(tau) {
        return Err(GroupoidError::NotRepresentative(tau));
    }
    let st = parent.comp(sigma, tau).ok_or(GroupoidError::NotComposable(sigma, tau))?;
    Ok(t.class_of(st))
}

/// Verifies `Δ(e)·(Γ(f,e)∖Δ(f,e))·Δ(f) ⊆ Γ(f,e)∖Δ(f,e)` for all object
/// pairs.  This always holds in a groupoid; a `false` return indicates
/// corrupt tables.
pub fn complement_closure_check(parent: &FiniteGroupoid, delta: &WideSubgroupoid) -> bool {
    for f in 0..parent.object_count() {
        for e in 0..parent.object_count() {
            let mids: Vec<usize> =
                parent.hom(f, e).into_iter().filter(|&s| !delta.contains(s)).collect();
            for &de in &delta.loops_at(parent, e) {
                for &x in &mids {
                    for &df in &delta.loops_at(parent, f) {
                        let dx = parent.comp(de, x).expect("composable");
                        let dxd = parent.comp(dx, df).expect("composable");
                        if delta.contains(dxd) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Multiplication table of the cyclic group `C_k`.
pub fn cyclic_table(k: usize) -> Vec<Vec<usize>> {
    (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect()
}

/// Multiplication table of the symmetric group `S₃`.
pub fn s3_table() -> Vec<Vec<usize>> {
    // Permutations of {0,1,2} listed as images (p[0], p[1], p[2]).
    let perms: Vec<[usize; 3]> =
        vec![[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
    let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] { [p[q[0]], p[q[1]], p[q[2]]] };
    (0..6)
        .map(|a| {
            (0..6)
                .map(|b| {
                    let r = compose(&perms[a], &perms[b]);
                    perms.iter().position(|p| *p == r).unwrap()
                })
                .collect()
        })
        .collect()
}

/// The groupoid `{0,1} × G × {0,1}` for `G = C_k`, with the wide subgroupoid
/// `Δ = {(0,g,0) : g} ∪ {(1,e,1)}` whose transversal classes have unequal
/// sizes across objects.
pub fn sec4_example(k: usize) -> (FiniteGroupoid, WideSubgroupoid) {
    let table = cyclic_table(k);
    let g = FiniteGroupoid::product_with_thin(&table, 2).expect("product groupoid");
    // Morphism (i, g, j) has index (i*2 + j)*k + g.
    let mut members: Vec<usize> = (0..k).collect(); // (0, g, 0)
    members.push((2 + 1) * k); // (1, e, 1)
    let delta = WideSubgroupoid::new(&g, &members).expect("wide subgroupoid");
    (g, delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group_is_valid() {
        let g = FiniteGroupoid::trivial();
        assert_eq!(g.object_count(), 1);
        assert_eq!(g.morphism_count(), 1);
    }

    #[test]
    fn broken_domain_law_rejected() {
        // Two objects, two identities, and a comp table that wrongly makes
        // id0 ∘ id1 defined.
        let err = FiniteGroupoid::build(
            2,
            &[(0, 0), (1, 1)],
            &[vec![Some(0), Some(0)], vec![None, Some(1)]],
            &[0, 1],
            &[0, 1],
        )
        .unwrap_err();
        assert!(matches!(err, GroupoidError::AxiomViolation { .. }));
    }

    #[test]
    fn sec4_groupoid_is_valid() {
        let (g, _) = sec4_example(2);
        assert_eq!(g.object_count(), 2);
        assert_eq!(g.morphism_count(), 8);
    }

    #[test]
    fn thin_groupoids() {
        assert_eq!(FiniteGroupoid::thin(1).unwrap().morphism_count(), 1);
        let t2 = FiniteGroupoid::thin(2).unwrap();
        assert_eq!(t2.morphism_count(), 4);
        assert_eq!(t2.loops(0).len(), 1);
        let t3 = FiniteGroupoid::thin(3).unwrap();
        assert_eq!(t3.morphism_count(), 9);
        for e in 0..3 {
            assert_eq!(isotropy_index(&t3, &WideSubgroupoid::full(&t3), e), 1);
            assert_eq!(isotropy_index(&t3, &WideSubgroupoid::identities(&t3), e), 1);
        }
        assert!(FiniteGroupoid::thin(0).is_err());
    }

    #[test]
    fn group_builders() {
        let c2 = FiniteGroupoid::from_group(&cyclic_table(2)).unwrap();
        assert_eq!(c2.object_count(), 1);
        assert_eq!(c2.morphism_count(), 2);
        // Non-group table: constant rows have no identity.
        assert!(FiniteGroupoid::from_group(&[vec![0, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn disjoint_union_components() {
        let t2 = FiniteGroupoid::thin(2).unwrap();
        let c2 = FiniteGroupoid::from_group(&cyclic_table(2)).unwrap();
        let u = FiniteGroupoid::disjoint_union(&t2, &c2).unwrap();
        assert_eq!(u.object_count(), 3);
        assert_eq!(u.morphism_count(), 6);
        let comps = u.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].objects, vec![0, 1]);
        assert_eq!(comps[1].objects, vec![2]);

        let uu = FiniteGroupoid::disjoint_union(&c2, &c2).unwrap();
        assert_eq!(uu.connected_components().len(), 2);
    }

    /// Components must agree with the transitive closure of the reachability
    /// relation, computed here by Floyd–Warshall as an independent route.
    #[test]
    fn components_match_transitive_closure() {
        let t2 = FiniteGroupoid::thin(2).unwrap();
        let c3 = FiniteGroupoid::from_group(&cyclic_table(3)).unwrap();
        let g = FiniteGroupoid::disjoint_union(
            &FiniteGroupoid::disjoint_union(&t2, &c3).unwrap(),
            &FiniteGroupoid::thin(3).unwrap(),
        )
        .unwrap();
        let n = g.object_count();
        let mut reach = vec![vec![false; n]; n];
        for (e, row) in reach.iter_mut().enumerate() {
            row[e] = true;
        }
        for s in 0..g.morphism_count() {
            reach[g.dom(s)][g.cod(s)] = true;
            reach[g.cod(s)][g.dom(s)] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        let comps = g.connected_components();
        for i in 0..n {
            for j in 0..n {
                let same = g.component_of(&comps, i) == g.component_of(&comps, j);
                assert_eq!(same, reach[i][j], "objects {i},{j}");
            }
        }
        // Thin groupoids are connected; one-object groupoids trivially so.
        assert_eq!(FiniteGroupoid::thin(3).unwrap().connected_components().len(), 1);
        assert_eq!(c3.connected_components().len(), 1);
    }

    #[test]
    fn isotropy_of_sec4_delta_is_delta() {
        let (g, delta) = sec4_example(2);
        let lam = isotropy(&g, &delta);
        assert_eq!(lam, delta);
        // Identities only.
        let ids = WideSubgroupoid::identities(&g);
        assert_eq!(isotropy(&g, &ids), ids);
        // Thin: only loops are identities.
        let t2 = FiniteGroupoid::thin(2).unwrap();
        let full = WideSubgroupoid::full(&t2);
        assert_eq!(isotropy(&t2, &full), WideSubgroupoid::identities(&t2));
    }

    #[test]
    fn normality() {
        let (g, delta) = sec4_example(2);
        // Conjugating (0,g,0) by a morphism out of object 0 lands outside
        // Δ(1).
        let (sigma, _) = check_normal(&g, &delta).unwrap_err();
        assert_eq!(g.dom(sigma), 0);
        // Identities are always normal.
        assert!(check_normal(&g, &WideSubgroupoid::identities(&g)).is_ok());
        // Iso(Γ) is normal here: loops conjugate to loops and C₂ is abelian.
        let iso = isotropy(&g, &WideSubgroupoid::full(&g));
        assert!(check_normal(&g, &iso).is_ok());
    }

    #[test]
    fn sec4_transversal_sizes() {
        for k in [2usize, 3] {
            let (g, delta) = sec4_example(k);
            let t = transversal(&g, &delta);
            assert_eq!(t.between(&g, 0, 0).len(), 1, "k={k}");
            assert_eq!(t.between(&g, 1, 0).len(), k, "k={k}");
        }
    }

    #[test]
    fn transversal_of_full_and_trivial_subgroupoids() {
        // Δ = Γ = C₂ on one object: a single class per object.
        let c2 = FiniteGroupoid::from_group(&cyclic_table(2)).unwrap();
        let t = transversal(&c2, &WideSubgroupoid::full(&c2));
        assert_eq!(t.at(&c2, 0).len(), 1);
        // Δ = identities in thin(2): all classes are singletons.
        let t2 = FiniteGroupoid::thin(2).unwrap();
        let t = transversal(&t2, &WideSubgroupoid::identities(&t2));
        assert_eq!(t.reps().len(), 4);
    }

    #[test]
    fn transversal_classes_partition() {
        let (g, delta) = sec4_example(3);
        let t = transversal(&g, &delta);
        for s in 0..g.morphism_count() {
            let rep = t.class_of(s);
            assert!(t.reps().contains(&rep));
            assert_eq!(t.class_of(rep), rep, "rep represents itself");
        }
        for e in 0..g.object_count() {
            assert!(t.is_rep(g.identity(e)), "identities are representatives");
        }
    }

    #[test]
    fn conj_rep_examples() {
        // σ = identity fixes representatives.
        let (g, delta) = sec4_example(2);
        let t = transversal(&g, &delta);
        for &tau in t.reps() {
            let e = g.cod(tau);
            assert_eq!(conj_rep(&g, &t, tau, g.identity(e)).unwrap(), tau);
        }
        // C₄ with Δ = {e, g²}: T_e = {e, g}; g·g = g² lies in eΛ.
        let c4 = FiniteGroupoid::from_group(&cyclic_table(4)).unwrap();
        let delta = WideSubgroupoid::new(&c4, &[0, 2]).unwrap();
        let t = transversal(&c4, &delta);
        assert_eq!(t.at(&c4, 0), vec![0, 1]);
        assert_eq!(conj_rep(&c4, &t, 1, 1).unwrap(), 0);
    }

    #[test]
    fn conj_rep_bijectivity() {
        // On the normalized Δ = Iso(Γ) subgroupoid of the product groupoid,
        // τ ↦ τ^σ is a bijection T_{f,e'} → T_{f,e}, inverted by σ⁻¹.
        let (g, _) = sec4_example(2);
        let delta = isotropy(&g, &WideSubgroupoid::full(&g));
        let t = transversal(&g, &delta);
        for sigma in 0..g.morphism_count() {
            let (e1, e) = (g.dom(sigma), g.cod(sigma));
            for f in 0..g.object_count() {
                let from = t.between(&g, f, e1);
                let to = t.between(&g, f, e);
                assert_eq!(from.len(), to.len());
                let mut image: Vec<usize> =
                    from.iter().map(|&tau| conj_rep(&g, &t, tau, sigma).unwrap()).collect();
                image.sort_unstable();
                assert_eq!(image, to, "image is exactly T_f,e");
                for &tau in &from {
                    let fwd = conj_rep(&g, &t, tau, sigma).unwrap();
                    let back = conj_rep(&g, &t, fwd, g.inv(sigma)).unwrap();
                    assert_eq!(back, tau, "σ⁻¹ undoes σ");
                }
            }
        }
    }

    #[test]
    fn normal_index_equality_and_sec4_violation() {
        // Normal Δ: |T_{f,e}| = [Γ(e):Δ(e)] on connected pairs.
        let (g, _) = sec4_example(2);
        let delta = isotropy(&g, &WideSubgroupoid::full(&g));
        assert!(check_normal(&g, &delta).is_ok());
        let t = transversal(&g, &delta);
        for e in 0..2 {
            for f in 0..2 {
                assert_eq!(t.between(&g, f, e).len(), isotropy_index(&g, &delta, e));
            }
        }
        // The example subgroupoid violates exactly this equality.
        let (g, delta) = sec4_example(2);
        let t = transversal(&g, &delta);
        assert_eq!(t.between(&g, 0, 0).len(), 1);
        assert_eq!(isotropy_index(&g, &delta, 0), 1);
        assert_eq!(t.between(&g, 1, 0).len(), 2);
        assert_ne!(t.between(&g, 1, 0).len(), isotropy_index(&g, &delta, 0));
    }

    #[test]
    fn isotropy_indices() {
        let (g, delta) = sec4_example(2);
        assert_eq!(isotropy_index(&g, &delta, 0), 1);
        assert_eq!(isotropy_index(&g, &delta, 1), 2);
        let c4 = FiniteGroupoid::from_group(&cyclic_table(4)).unwrap();
        let h = WideSubgroupoid::new(&c4, &[0, 2]).unwrap();
        assert_eq!(isotropy_index(&c4, &h, 0), 2);
        assert_eq!(isotropy_index(&c4, &WideSubgroupoid::full(&c4), 0), 1);
    }

    #[test]
    fn complement_closure_holds() {
        let (g, delta) = sec4_example(2);
        assert!(complement_closure_check(&g, &delta));
        assert!(complement_closure_check(&g, &WideSubgroupoid::identities(&g)));
        assert!(complement_closure_check(&g, &WideSubgroupoid::full(&g)));
    }

    #[test]
    fn closure_generates_wide_subgroupoid() {
        let (g, _) = sec4_example(3);
        let sub = WideSubgroupoid::closure(&g, &[1]);
        assert!(check_wide(&g, &sub.member_vec()));
    }

    #[test]
    fn s3_is_a_group() {
        let g = FiniteGroupoid::from_group(&s3_table()).unwrap();
        assert_eq!(g.morphism_count(), 6);
    }
}
