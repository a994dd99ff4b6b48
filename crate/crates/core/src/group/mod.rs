//! Finite l-groups as full multiplication tables, with the distinguished
//! abelian index-l subgroup data and the element-level maps the rest of the
//! workbench consumes: m-index, A-hat power, transfer.

pub mod catalog;
pub mod presentation;
pub mod todd_coxeter;

use crate::error::GroupError;
use crate::intmat::{smith_normal_form, IntMatrix};

/// Hard cap on group order: l^6 for the primes in scope.
pub const ORDER_CAP: usize = 729;

#[derive(Debug, Clone)]
pub struct LGroup {
    l: u64,
    name: String,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    gens: Vec<usize>,
    gen_names: Vec<String>,
    /// A defining generator word per element (letters 2g / 2g+1), for display.
    words: Vec<Vec<u8>>,
}

impl LGroup {
    pub fn from_tables(
        l: u64,
        name: String,
        mul: Vec<u16>,
        gens: Vec<usize>,
        gen_names: Vec<String>,
        words: Vec<Vec<u8>>,
    ) -> Result<Self, GroupError> {
        let order = words.len();
        assert_eq!(mul.len(), order * order);
        let mut inv = vec![u16::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == 0 {
                    inv[a] = b as u16;
                }
            }
        }
        if inv.iter().any(|&v| v == u16::MAX) {
            return Err(GroupError::InconsistentPresentation(
                "multiplication table has an element without inverse".into(),
            ));
        }
        let g = LGroup {
            l,
            name,
            order,
            mul,
            inv,
            gens,
            gen_names,
            words,
        };
        if !is_power_of(order as u64, l) {
            return Err(GroupError::InconsistentPresentation(format!(
                "order {order} is not a power of {l}"
            )));
        }
        Ok(g)
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    /// Defining letter word of an element (2g = generator g, 2g+1 inverse).
    pub fn words(&self, x: usize) -> &[u8] {
        &self.words[x]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let (mut base, mut e) = if e < 0 {
            (self.inv(a), (-e) as u64)
        } else {
            (a, e as u64)
        };
        let mut acc = 0usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Conjugate g^x = x^{-1} g x.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }

    /// Commutator [g, h] = g^{-1} h^{-1} g h.
    #[inline]
    pub fn comm(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))
    }

    pub fn order_of(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.order_of(a)).max().unwrap()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_abelian_subset(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .all(|&a| subset.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Closure of a seed set under multiplication (contains the identity).
    pub fn subgroup_closure(&self, seeds: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut queue: Vec<usize> = vec![0];
        for &s in seeds {
            if !in_set[s] {
                in_set[s] = true;
                queue.push(s);
            }
        }
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            i += 1;
            for &s in seeds {
                let b = self.mul(a, s);
                if !in_set[b] {
                    in_set[b] = true;
                    queue.push(b);
                }
            }
        }
        let mut out: Vec<usize> = (0..self.order).filter(|&x| in_set[x]).collect();
        out.sort_unstable();
        out
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut seeds = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.comm(a, b);
                if c != 0 {
                    seeds.push(c);
                }
            }
        }
        seeds.sort_unstable();
        seeds.dedup();
        self.subgroup_closure(&seeds)
    }

    pub fn conjugacy_classes(&self) -> ConjClasses {
        let mut class_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        let mut members = Vec::new();
        for g in 0..self.order {
            if class_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            let mut cls = Vec::new();
            for x in 0..self.order {
                let c = self.conj(g, x);
                if class_of[c] == usize::MAX {
                    class_of[c] = id;
                    cls.push(c);
                }
            }
            cls.sort_unstable();
            reps.push(g);
            members.push(cls);
        }
        ConjClasses {
            reps,
            class_of,
            members,
        }
    }

    /// Materialize the quotient by a normal subgroup; returns the quotient
    /// group and the projection map on element indices.
    pub fn quotient(&self, normal: &[usize]) -> (LGroup, Vec<usize>) {
        let in_n: Vec<bool> = {
            let mut v = vec![false; self.order];
            for &x in normal {
                v[x] = true;
            }
            v
        };
        // Sanity: normality.
        debug_assert!(normal
            .iter()
            .all(|&n| (0..self.order).all(|g| in_n[self.conj(n, g)])));

        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            for &n in normal {
                coset_of[self.mul(g, n)] = id;
            }
            reps.push(g);
        }
        let m = reps.len();
        let mut mul = vec![0u16; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * m + j] = coset_of[self.mul(a, b)] as u16;
            }
        }
        let gens: Vec<usize> = {
            let mut v: Vec<usize> = self.gens.iter().map(|&g| coset_of[g]).collect();
            v.dedup();
            v
        };
        let words = reps.iter().map(|&r| self.words[r].clone()).collect();
        let q = LGroup::from_tables(
            self.l,
            format!("{}/N", self.name),
            mul,
            gens,
            self.gen_names.clone(),
            words,
        )
        .expect("quotient of an l-group is an l-group");
        (q, coset_of)
    }

    pub fn abelianization(&self) -> (LGroup, Vec<usize>) {
        self.quotient(&self.commutator_subgroup())
    }

    /// Human-readable word for an element, from its BFS defining word.
    pub fn word_name(&self, g: usize) -> String {
        if g == 0 {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for &letter in &self.words[g] {
            let gi = (letter / 2) as usize;
            let inv = letter % 2 == 1;
            let name = &self.gen_names[gi];
            let piece = if inv {
                format!("{name}^-1")
            } else {
                name.clone()
            };
            parts.push(piece);
        }
        parts.join("*")
    }
}

fn is_power_of(mut n: u64, l: u64) -> bool {
    while n % l == 0 {
        n /= l;
    }
    n == 1
}

#[derive(Debug, Clone)]
pub struct ConjClasses {
    pub reps: Vec<usize>,
    pub class_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl ConjClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn size(&self, id: usize) -> usize {
        self.members[id].len()
    }
}

// ---------------------------------------------------------------------------
// Abelian structure via Smith normal form
// ---------------------------------------------------------------------------

/// Cyclic decomposition of an abelian group, with coordinates: the map
/// `coords` sends an element to its tuple in prod Z/d_i.
#[derive(Debug, Clone)]
pub struct AbelianStructure {
    pub invariants: Vec<u64>,
    pub coords: Vec<Vec<u64>>,
}

/// Compute a cyclic decomposition of the abelian group formed by `elements`
/// inside `g` (the identity must be in `elements`).
pub fn abelian_structure(g: &LGroup, elements: &[usize]) -> AbelianStructure {
    assert!(g.is_abelian_subset(elements));
    let pos: std::collections::HashMap<usize, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();

    // Greedy small generating set: keep adding elements of maximal order
    // outside the current closure.
    let mut gens: Vec<usize> = Vec::new();
    let mut closure = vec![0usize];
    while closure.len() < elements.len() {
        let next = elements
            .iter()
            .copied()
            .filter(|e| !closure.contains(e))
            .max_by_key(|&e| g.order_of(e))
            .unwrap();
        gens.push(next);
        closure = g.subgroup_closure(&gens);
    }
    if gens.is_empty() {
        gens.push(0);
    }
    let k = gens.len();

    // Preimage vector per element by BFS over the generator action.
    let mut vecs: Vec<Option<Vec<i64>>> = vec![None; elements.len()];
    vecs[pos[&0]] = Some(vec![0; k]);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(h) = queue.pop_front() {
        let base = vecs[pos[&h]].clone().unwrap();
        for (i, &gen) in gens.iter().enumerate() {
            let t = g.mul(h, gen);
            if vecs[pos[&t]].is_none() {
                let mut v = base.clone();
                v[i] += 1;
                vecs[pos[&t]] = Some(v);
                queue.push_back(t);
            }
        }
    }
    let vecs: Vec<Vec<i64>> = vecs.into_iter().map(|v| v.unwrap()).collect();

    // Relation lattice: Cayley relations v_h + e_i - v_{h g_i}, plus the
    // generator orders.
    let mut rel_rows: Vec<Vec<i64>> = Vec::new();
    for (hi, h) in elements.iter().enumerate() {
        for (i, &gen) in gens.iter().enumerate() {
            let t = g.mul(*h, gen);
            let mut row = vecs[hi].clone();
            row[i] += 1;
            for (a, b) in row.iter_mut().zip(&vecs[pos[&t]]) {
                *a -= b;
            }
            if row.iter().any(|&x| x != 0) {
                rel_rows.push(row);
            }
        }
    }
    for (i, &gen) in gens.iter().enumerate() {
        let mut row = vec![0i64; k];
        row[i] = g.order_of(gen) as i64;
        rel_rows.push(row);
    }
    rel_rows.sort();
    rel_rows.dedup();

    // Columns of R span the relation lattice; x mod L <-> (Ux)_i mod d_i.
    let mut r = IntMatrix::zero(k, rel_rows.len());
    for (j, row) in rel_rows.iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            r.set(i, j, num_bigint::BigInt::from(v));
        }
    }
    let snf = smith_normal_form(&r);
    use num_traits::ToPrimitive;
    let invariants: Vec<u64> = (0..k)
        .map(|i| {
            if i < r.rows().min(r.cols()) {
                snf.d.get(i, i).to_u64().unwrap_or(0)
            } else {
                0
            }
        })
        .collect();
    assert!(
        invariants.iter().all(|&d| d > 0),
        "finite group has full-rank relation lattice"
    );

    let coords: Vec<Vec<u64>> = vecs
        .iter()
        .map(|v| {
            (0..k)
                .map(|i| {
                    let mut acc: i128 = 0;
                    for (j, &x) in v.iter().enumerate() {
                        acc += snf.u.get(i, j).to_i128().unwrap() * x as i128;
                    }
                    acc.rem_euclid(invariants[i] as i128) as u64
                })
                .collect()
        })
        .collect();

    // Drop trivial factors.
    let keep: Vec<usize> = (0..k).filter(|&i| invariants[i] > 1).collect();
    AbelianStructure {
        invariants: keep.iter().map(|&i| invariants[i]).collect(),
        coords: coords
            .iter()
            .map(|c| keep.iter().map(|&i| c[i]).collect())
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Markings
// ---------------------------------------------------------------------------

/// A distinguished abelian index-l subgroup G' with a chosen transversal
/// generator a, plus the surjection pi onto the cyclic quotient model of
/// Gamma_k.
#[derive(Debug, Clone)]
pub struct Marking {
    pub gprime: Vec<usize>,
    pub in_gprime: Vec<bool>,
    /// Position of a G'-element in `gprime`, or usize::MAX.
    pub gprime_pos: Vec<usize>,
    pub a: usize,
    /// pi(g) as an exponent of the fixed generator of Gamma = Z/l^M.
    pub pi: Vec<u64>,
    /// M: Gamma has order l^M.
    pub gamma_m: u32,
    /// Index of pi(G') in Gamma: 1 or l.
    pub pi_gprime_index: u64,
    /// Right-coset index: g lies in G' a^j.
    pub coset_idx: Vec<u8>,
}

impl Marking {
    pub fn new(
        g: &LGroup,
        gprime: Vec<usize>,
        a: usize,
        pi: Vec<u64>,
        gamma_m: u32,
    ) -> Result<Self, GroupError> {
        let l = g.l() as usize;
        if gprime.len() * l != g.order() {
            return Err(GroupError::InconsistentPresentation(format!(
                "marked subgroup has index {} != l",
                g.order() / gprime.len()
            )));
        }
        let mut in_gprime = vec![false; g.order()];
        let mut gprime_pos = vec![usize::MAX; g.order()];
        for (i, &x) in gprime.iter().enumerate() {
            in_gprime[x] = true;
            gprime_pos[x] = i;
        }
        if in_gprime[a] {
            return Err(GroupError::InconsistentPresentation(
                "transversal generator a lies in G'".into(),
            ));
        }
        // pi must be a homomorphism onto Z/l^M.
        let order = g.l().pow(gamma_m);
        for x in 0..g.order() {
            for y in 0..g.order() {
                if (pi[x] + pi[y]) % order != pi[g.mul(x, y)] {
                    return Err(GroupError::InconsistentPresentation(
                        "pi is not a homomorphism".into(),
                    ));
                }
            }
        }
        let mut image: Vec<u64> = pi.clone();
        image.sort_unstable();
        image.dedup();
        if image.len() as u64 != order {
            return Err(GroupError::InconsistentPresentation(format!(
                "pi is not onto Z/{order}"
            )));
        }
        let mut gp_image: Vec<u64> = gprime.iter().map(|&x| pi[x]).collect();
        gp_image.sort_unstable();
        gp_image.dedup();
        let idx = order / gp_image.len() as u64;
        if idx != 1 && idx != g.l() {
            return Err(GroupError::InconsistentPresentation(format!(
                "pi(G') has index {idx} in Gamma"
            )));
        }
        let mut coset_idx = vec![u8::MAX; g.order()];
        for x in 0..g.order() {
            for j in 0..l {
                let t = g.pow(a, j as i64);
                if in_gprime[g.mul(x, g.inv(t))] {
                    coset_idx[x] = j as u8;
                    break;
                }
            }
            assert_ne!(coset_idx[x], u8::MAX, "cosets of G' do not cover G");
        }
        Ok(Marking {
            gprime,
            in_gprime,
            gprime_pos,
            a,
            pi,
            gamma_m,
            pi_gprime_index: idx,
            coset_idx,
        })
    }

    pub fn gamma_order(&self, g: &LGroup) -> u64 {
        g.l().pow(self.gamma_m)
    }

    pub fn gprime_is_abelian(&self, g: &LGroup) -> bool {
        g.is_abelian_subset(&self.gprime)
    }
}

/// m(g) = min{r >= 0 : g^{l^r} in G'}.
pub fn m_index(g: &LGroup, mk: &Marking, x: usize) -> u32 {
    let mut r = 0;
    let mut y = x;
    loop {
        if mk.in_gprime[y] {
            return r;
        }
        y = g.pow(y, g.l() as i64);
        r += 1;
        assert!(r <= 12, "m-index runaway");
    }
}

/// g'^(A-hat) = g' g'^a ... g'^{a^{l-1}} for g' in the (abelian) G'.
pub fn hat_a_power(g: &LGroup, mk: &Marking, x: usize) -> Result<usize, GroupError> {
    if !mk.in_gprime[x] {
        return Err(GroupError::NotInSubgroup(x));
    }
    let mut acc = 0usize;
    let mut c = x;
    for _ in 0..g.l() {
        acc = g.mul(acc, c);
        c = g.conj(c, mk.a);
    }
    Ok(acc)
}

/// Classical transfer (Verlagerung) G -> G' over the transversal
/// {1, a, ..., a^{l-1}} of right cosets G' a^j.
pub fn transfer(g: &LGroup, mk: &Marking, x: usize) -> usize {
    let l = g.l() as usize;
    let mut acc = 0usize;
    for j in 0..l {
        let t = g.pow(mk.a, j as i64);
        let tx = g.mul(t, x);
        let k = mk.coset_idx[tx] as i64;
        let factor = g.mul(tx, g.inv(g.pow(mk.a, k)));
        debug_assert!(mk.in_gprime[factor]);
        acc = g.mul(acc, factor);
    }
    acc
}

/// All abelian index-l subgroups, each packaged as a marking with the
/// canonical pi (projection of G^ab onto its largest cyclic factor).
pub fn find_abelian_index_l(g: &LGroup) -> Vec<Marking> {
    let l = g.l();
    // Index-l subgroups correspond to index-l subgroups of the elementary
    // abelian quotient G / (G^l [G,G]).
    let mut seeds = g.commutator_subgroup();
    for x in 0..g.order() {
        seeds.push(g.pow(x, l as i64));
    }
    seeds.sort_unstable();
    seeds.dedup();
    let frat = g.subgroup_closure(&seeds);
    let (v, proj) = g.quotient(&frat);
    let vs = abelian_structure(&v, &(0..v.order()).collect::<Vec<_>>());
    let d = vs.invariants.len();
    assert!(vs.invariants.iter().all(|&x| x == l));

    let mut out = Vec::new();
    // Normalized nonzero functionals phi: V -> Z/l (first nonzero coord 1).
    let mut phi = vec![0u64; d];
    loop {
        // increment
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            phi[i] += 1;
            if phi[i] == l {
                phi[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        if phi.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let value = |x: usize| -> u64 {
            vs.coords[proj[x]]
                .iter()
                .zip(&phi)
                .map(|(c, p)| c * p % l)
                .sum::<u64>()
                % l
        };
        let gprime: Vec<usize> = (0..g.order()).filter(|&x| value(x) == 0).collect();
        if !g.is_abelian_subset(&gprime) {
            continue;
        }
        let a = (0..g.order()).find(|&x| value(x) != 0).unwrap();
        let (pi, m) = canonical_pi(g);
        if let Ok(mk) = Marking::new(g, gprime, a, pi, m) {
            out.push(mk);
        }
    }
}

/// The canonical surjection onto the largest cyclic quotient of G^ab.
pub fn canonical_pi(g: &LGroup) -> (Vec<u64>, u32) {
    let (gab, proj) = g.abelianization();
    let st = abelian_structure(&gab, &(0..gab.order()).collect::<Vec<_>>());
    let (best, dmax) = st
        .invariants
        .iter()
        .enumerate()
        .max_by_key(|(_, &d)| d)
        .map(|(i, &d)| (i, d))
        .expect("nontrivial abelianization");
    let m = {
        let mut m = 0;
        let mut x = dmax;
        while x > 1 {
            x /= g.l();
            m += 1;
        }
        m
    };
    let pi = (0..g.order()).map(|x| st.coords[proj[x]][best]).collect();
    (pi, m)
}

#[cfg(test)]
mod tests {
    use super::catalog::catalog_group;
    use super::*;

    #[test]
    fn heisenberg_classes() {
        let (g, _) = catalog_group("heisenberg", 3).unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.exponent(), 3);
        let cls = g.conjugacy_classes();
        assert_eq!(cls.len(), 11);
        let total: usize = (0..cls.len()).map(|i| cls.size(i)).sum();
        assert_eq!(total, 27);
        for i in 0..cls.len() {
            assert!(is_power_of(cls.size(i) as u64, 3));
        }
    }

    #[test]
    fn heisenberg_markings() {
        let (g, mk) = catalog_group("heisenberg", 3).unwrap();
        let all = find_abelian_index_l(&g);
        assert_eq!(all.len(), 4);
        for m in &all {
            let st = abelian_structure(&g, &m.gprime);
            assert_eq!(st.invariants, vec![3, 3]);
        }
        assert_eq!(mk.gprime.len(), 9);
        assert!(mk.gprime_is_abelian(&g));
    }

    #[test]
    fn modular_l3_cyclic_gprime() {
        let (g, mk) = catalog_group("modular_l3", 3).unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.exponent(), 9);
        let st = abelian_structure(&g, &mk.gprime);
        assert_eq!(st.invariants, vec![9]);
    }

    #[test]
    fn cyclic_nine_unique_marking() {
        let (g, _) = catalog_group("abelian(9)", 3).unwrap();
        let all = find_abelian_index_l(&g);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].gprime.len(), 3);
    }

    #[test]
    fn elem_abelian_marking_count() {
        let (g, _) = catalog_group("elem_abelian(2)", 3).unwrap();
        assert_eq!(find_abelian_index_l(&g).len(), 4);
    }

    #[test]
    fn m_index_values() {
        let (g, mk) = catalog_group("heisenberg", 3).unwrap();
        for &x in &mk.gprime {
            assert_eq!(m_index(&g, &mk, x), 0);
        }
        for x in 0..g.order() {
            assert!(m_index(&g, &mk, x) <= 1);
            // Coset function: m(g g') = m(g).
            for &y in &mk.gprime {
                assert_eq!(m_index(&g, &mk, g.mul(x, y)), m_index(&g, &mk, x));
            }
        }
    }

    #[test]
    fn hat_a_power_identities() {
        let (g, mk) = catalog_group("heisenberg", 3).unwrap();
        // Central elements: g'^A = g'^l.
        let z = g.center();
        for &c in &z {
            if mk.in_gprime[c] {
                assert_eq!(hat_a_power(&g, &mk, c).unwrap(), g.pow(c, 3));
            }
        }
        // (star): commutators have trivial A-hat power.
        for &c in &g.commutator_subgroup() {
            assert_eq!(hat_a_power(&g, &mk, c).unwrap(), 0);
        }
    }

    #[test]
    fn transfer_is_homomorphism_on_ab() {
        for name in ["heisenberg", "modular_l3", "abelian(9)"] {
            let (g, mk) = catalog_group(name, 3).unwrap();
            let comm = g.commutator_subgroup();
            let in_comm: Vec<bool> = {
                let mut v = vec![false; g.order()];
                for &c in &comm {
                    v[c] = true;
                }
                v
            };
            for x in 0..g.order() {
                for y in 0..g.order() {
                    let lhs = transfer(&g, &mk, g.mul(x, y));
                    let rhs = g.mul(transfer(&g, &mk, x), transfer(&g, &mk, y));
                    // Equal modulo [G',G'] = 1 here since G' is abelian; the
                    // homomorphism property on G^ab allows a commutator of G.
                    let diff = g.mul(g.inv(rhs), lhs);
                    assert!(diff == 0 || in_comm[diff]);
                }
            }
            // Transfer of a subgroup element equals its A-hat power.
            for &y in &mk.gprime {
                assert_eq!(transfer(&g, &mk, y), hat_a_power(&g, &mk, y).unwrap());
            }
            // Off-subgroup: ver(g) = g^l times a commutator.
            for x in 0..g.order() {
                if !mk.in_gprime[x] {
                    let c = g.mul(g.inv(g.pow(x, 3)), transfer(&g, &mk, x));
                    assert!(c == 0 || in_comm[c]);
                }
            }
        }
    }

    #[test]
    fn commutator_identity_lemma5() {
        // [b g1', b^i g2'] lies in [G, G'] for all g1', g2' in G', b outside.
        for name in ["heisenberg", "modular_l3"] {
            let (g, mk) = catalog_group(name, 3).unwrap();
            let mut comm_ggp = Vec::new();
            for x in 0..g.order() {
                for &y in &mk.gprime {
                    let c = g.comm(x, y);
                    comm_ggp.push(c);
                }
            }
            comm_ggp.sort_unstable();
            comm_ggp.dedup();
            let sub = g.subgroup_closure(&comm_ggp);
            for b in 0..g.order() {
                if mk.in_gprime[b] {
                    continue;
                }
                for i in 0..g.l() as i64 {
                    for &g1 in &mk.gprime {
                        for &g2 in &mk.gprime {
                            let u = g.mul(b, g1);
                            let v = g.mul(g.pow(b, i), g2);
                            let c = g.comm(u, v);
                            assert!(sub.binary_search(&c).is_ok());
                        }
                    }
                }
            }
        }
    }
}
