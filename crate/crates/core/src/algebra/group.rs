//! Finite abelian groups Z_{n1} × … × Z_{nk}, their subgroups and characters.
//!
//! Elements are encoded as mixed-radix indices `0..order`, with index 0 the
//! identity. Characters are written additively: a character is a residue
//! tuple and its value on an element is an exponent of ζ_e, e the group
//! exponent.

use std::fmt;

use num::integer::{gcd, lcm};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Elem = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.iter().any(|&n| n == 0) {
            return Err(Error::Input("cyclic factor orders must be positive".into()));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn cyclic(n: u64) -> Self {
        AbelianGroup::new(vec![n]).unwrap()
    }

    pub fn trivial() -> Self {
        AbelianGroup { orders: vec![] }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &b| lcm(a, b))
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponent() as usize == self.order()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order()
    }

    pub fn decode(&self, g: Elem) -> Vec<u64> {
        let mut g = g as u64;
        let mut out = vec![0; self.orders.len()];
        for (k, &n) in self.orders.iter().enumerate().rev() {
            out[k] = g % n;
            g /= n;
        }
        out
    }

    pub fn encode(&self, digits: &[u64]) -> Elem {
        let mut idx = 0u64;
        for (d, &n) in digits.iter().zip(&self.orders) {
            idx = idx * n + d % n;
        }
        idx as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let da = self.decode(a);
        let db = self.decode(b);
        let sum: Vec<u64> = da.iter().zip(&db).zip(&self.orders).map(|((x, y), n)| (x + y) % n).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let da = self.decode(a);
        let out: Vec<u64> = da.iter().zip(&self.orders).map(|(x, n)| (n - x) % n).collect();
        self.encode(&out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// k·a
    pub fn mul(&self, k: i64, a: Elem) -> Elem {
        let da = self.decode(a);
        let out: Vec<u64> =
            da.iter().zip(&self.orders).map(|(x, &n)| ((*x as i64 * k).rem_euclid(n as i64)) as u64).collect();
        self.encode(&out)
    }

    pub fn element_order(&self, a: Elem) -> u64 {
        self.decode(a).iter().zip(&self.orders).fold(1, |acc, (&x, &n)| lcm(acc, n / gcd(x, n)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elems: self.elements().collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elems: vec![0] }
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, gens: &[Elem]) -> Subgroup {
        let mut set = vec![false; self.order()];
        set[0] = true;
        let mut elems = vec![0];
        let mut k = 0;
        while k < elems.len() {
            let a = elems[k];
            for &g in gens {
                let b = self.add(a, g);
                if !set[b] {
                    set[b] = true;
                    elems.push(b);
                }
            }
            k += 1;
        }
        elems.sort_unstable();
        Subgroup { elems }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{}", n)).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A character of the ambient group, as a residue tuple (a_1, …, a_k).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    residues: Vec<u64>,
}

impl Character {
    pub fn new(group: &AbelianGroup, residues: Vec<u64>) -> Result<Self> {
        if residues.len() != group.orders.len() {
            return Err(Error::Input(format!(
                "character has {} residues, group has {} factors",
                residues.len(),
                group.orders.len()
            )));
        }
        let residues = residues.iter().zip(&group.orders).map(|(a, n)| a % n).collect();
        Ok(Character { residues })
    }

    /// The character of G with the given values on the sorted elements of G.
    pub fn from_values(group: &AbelianGroup, values: &LocalChar) -> Result<Self> {
        if values.values.len() != group.order() {
            return Err(Error::Input("character values must cover the whole group".into()));
        }
        let e = group.exponent();
        let mut residues = Vec::with_capacity(group.orders.len());
        for (j, &n) in group.orders.iter().enumerate() {
            let mut digits = vec![0; group.orders.len()];
            digits[j] = 1;
            let v = values.values[group.encode(&digits)];
            residues.push(v / (e / n) % n);
        }
        let chi = Character { residues };
        if group.elements().any(|g| chi.eval(group, g) != values.values[g]) {
            return Err(Error::Input("values do not form a character".into()));
        }
        Ok(chi)
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        Character { residues: vec![0; group.orders.len()] }
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// Exponent of ζ_e giving the value on `g`.
    pub fn eval(&self, group: &AbelianGroup, g: Elem) -> u64 {
        let e = group.exponent();
        group
            .decode(g)
            .iter()
            .zip(&self.residues)
            .zip(&group.orders)
            .map(|((gj, aj), nj)| (gj * aj % nj) * (e / nj))
            .sum::<u64>()
            % e
    }

    pub fn add(&self, group: &AbelianGroup, other: &Character) -> Character {
        let residues =
            self.residues.iter().zip(&other.residues).zip(&group.orders).map(|((a, b), n)| (a + b) % n).collect();
        Character { residues }
    }

    pub fn neg(&self, group: &AbelianGroup) -> Character {
        let residues = self.residues.iter().zip(&group.orders).map(|(a, n)| (n - a) % n).collect();
        Character { residues }
    }

    pub fn sub(&self, group: &AbelianGroup, other: &Character) -> Character {
        self.add(group, &other.neg(group))
    }

    pub fn scale(&self, group: &AbelianGroup, k: i64) -> Character {
        let residues = self
            .residues
            .iter()
            .zip(&group.orders)
            .map(|(a, &n)| ((*a as i64 * k).rem_euclid(n as i64)) as u64)
            .collect();
        Character { residues }
    }

    pub fn is_trivial(&self) -> bool {
        self.residues.iter().all(|&a| a == 0)
    }

    /// Restriction to a subgroup.
    pub fn restrict(&self, group: &AbelianGroup, h: &Subgroup) -> LocalChar {
        LocalChar { values: h.elems.iter().map(|&g| self.eval(group, g)).collect() }
    }

    /// {h ∈ H : χ(h) = 0}.
    pub fn kernel_in(&self, group: &AbelianGroup, h: &Subgroup) -> Subgroup {
        Subgroup { elems: h.elems.iter().copied().filter(|&g| self.eval(group, g) == 0).collect() }
    }
}

/// {h ∈ H : χ(h) = 0}.
pub fn char_kernel(group: &AbelianGroup, chi: &Character, h: &Subgroup) -> Subgroup {
    chi.kernel_in(group, h)
}

/// A subgroup, canonically represented by its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    elems: Vec<Elem>,
}

impl Subgroup {
    /// Validates closure; elements may be in any order.
    pub fn from_elements(group: &AbelianGroup, mut elems: Vec<Elem>) -> Result<Self> {
        elems.sort_unstable();
        elems.dedup();
        let g = group.generate(&elems);
        if g.elems != elems {
            return Err(Error::Input("element set is not a subgroup".into()));
        }
        Ok(g)
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.elems.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elems: self.elems.iter().copied().filter(|&g| other.contains(g)).collect() }
    }

    pub fn join(&self, group: &AbelianGroup, other: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = self.elems.iter().chain(&other.elems).copied().collect();
        group.generate(&gens)
    }

    /// [self : sub], asserting containment.
    pub fn index_of(&self, sub: &Subgroup) -> Result<usize> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::AmbientMismatch);
        }
        Ok(self.order() / sub.order())
    }

    /// Canonical coset representatives of G/self: the least element of each
    /// coset, in increasing order.
    pub fn coset_reps(&self, group: &AbelianGroup) -> Vec<Elem> {
        let mut seen = vec![false; group.order()];
        let mut reps = vec![];
        for g in group.elements() {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &h in &self.elems {
                seen[group.add(g, h)] = true;
            }
        }
        reps
    }

    /// Index into `coset_reps` of the coset containing `g`.
    pub fn coset_index(&self, group: &AbelianGroup, reps: &[Elem], g: Elem) -> usize {
        let rep = self.elems.iter().map(|&h| group.add(g, h)).min().unwrap();
        reps.binary_search(&rep).expect("coset representative")
    }

    /// Least element of the coset g + self.
    pub fn coset_rep(&self, group: &AbelianGroup, g: Elem) -> Elem {
        self.elems.iter().map(|&h| group.add(g, h)).min().unwrap()
    }
}

/// A character of a subgroup H, as its values on the sorted elements of H.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocalChar {
    values: Vec<u64>,
}

impl LocalChar {
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn from_values(values: Vec<u64>) -> Self {
        LocalChar { values }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &LocalChar, exponent: u64) -> LocalChar {
        LocalChar { values: self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % exponent).collect() }
    }

    /// Restricts from `from` to its subgroup `to`.
    pub fn restrict(&self, from: &Subgroup, to: &Subgroup) -> LocalChar {
        LocalChar {
            values: to.elems.iter().map(|g| self.values[from.elems.binary_search(g).expect("subgroup")]).collect(),
        }
    }

    pub fn value_at(&self, h: &Subgroup, g: Elem) -> Option<u64> {
        h.elems.binary_search(&g).ok().map(|k| self.values[k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let g = AbelianGroup::new(vec![2, 6]).unwrap();
        assert_eq!(g.elements().count(), 12);
        assert_eq!(g.exponent(), 6);
        for a in g.elements() {
            assert_eq!(g.encode(&g.decode(a)), a);
            assert_eq!(g.add(a, g.neg(a)), 0);
        }
    }

    #[test]
    fn z6_intersection_and_join() {
        let g = AbelianGroup::cyclic(6);
        let h2 = g.generate(&[2]);
        let h3 = g.generate(&[3]);
        assert_eq!(h2.intersect(&h3), g.trivial_subgroup());
        assert_eq!(h2.join(&g, &h3), g.whole());
        assert_eq!(g.whole().index_of(&h2).unwrap(), 2);
        assert!(h2.index_of(&h3).is_err());
    }

    #[test]
    fn kernels() {
        let z15 = AbelianGroup::cyclic(15);
        let two = Character::new(&z15, vec![2]).unwrap();
        assert_eq!(two.kernel_in(&z15, &z15.whole()), z15.trivial_subgroup());
        let chi = Character::new(&z15, vec![5]).unwrap().sub(&z15, &Character::new(&z15, vec![3]).unwrap());
        assert_eq!(chi, two);
        assert_eq!(char_kernel(&z15, &Character::trivial(&z15), &z15.whole()), z15.whole());
        let z7 = AbelianGroup::cyclic(7);
        let one = Character::new(&z7, vec![1]).unwrap();
        assert_eq!(char_kernel(&z7, &one, &z7.whole()), z7.trivial_subgroup());
    }

    #[test]
    fn character_values_use_group_exponent() {
        let g = AbelianGroup::new(vec![2, 3]).unwrap();
        let chi = Character::new(&g, vec![1, 1]).unwrap();
        // (1, 1) has order 6; the character (1, 1) sends it to 3 + 2 = 5 mod 6
        assert_eq!(chi.eval(&g, g.encode(&[1, 1])), 5);
    }

    #[test]
    fn coset_indexing() {
        let g = AbelianGroup::cyclic(6);
        let h = g.generate(&[3]);
        let reps = h.coset_reps(&g);
        assert_eq!(reps, vec![0, 1, 2]);
        assert_eq!(h.coset_index(&g, &reps, 5), 2);
    }
}
