//! Letters, associative words and Lie elements of the free Lie algebra.
//!
//! Lie-valued data is stored in the free associative envelope: a section over
//! `Word` frames whose coefficient vector is a Lie polynomial.  Lie-ness is
//! checked with the Dynkin criterion θ(P) = kP for P homogeneous of degree k,
//! θ(a₁…a_k) = [[…[a₁,a₂],…],a_k].  Lyndon coordinates come from the
//! triangularity P_w = w + (lexicographically larger words).

use std::collections::BTreeMap;
use std::fmt;

use exact_kernel::{slot_connection, Coeff, Frame, OneForm, Section, Q};
use num_traits::{One, Zero};

/// e^m of a basis class: X_class ⊗ SᵐT²ⁿ⁻ᵐ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub class: u16,
    pub n: u16,
    pub m: u16,
}

impl Generator {
    pub fn gm_weight(&self) -> i64 {
        2 * self.m as i64 - 2 * self.n as i64
    }
}

/// An associative word; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: Generator) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Class/half-weight sequence: ∇ never changes it.
    pub fn sigma(&self) -> Vec<(u16, u16)> {
        self.0.iter().map(|g| (g.class, g.n)).collect()
    }
}

impl Frame for Word {
    fn gm_weight(&self) -> i64 {
        self.0.iter().map(Generator::gm_weight).sum()
    }

    /// Leibniz over letters, each letter moving like SᵐT²ⁿ⁻ᵐ.
    fn connection(&self) -> Vec<(OneForm, Self)> {
        let mut out = Vec::new();
        for (i, g) in self.0.iter().enumerate() {
            for (th, m) in slot_connection(g.n as u32, g.m as u32) {
                let mut w = self.0.clone();
                w[i].m = m as u16;
                out.push((th, Word(w)));
            }
        }
        out
    }
}

/// Product rule for concatenation, dropping words longer than `cap`.
pub fn concat_rule(cap: usize) -> impl Fn(&Word, &Word) -> Vec<(Q, Word)> + Copy {
    move |a: &Word, b: &Word| {
        if a.len() + b.len() > cap {
            vec![]
        } else {
            vec![(Q::one(), a.concat(b))]
        }
    }
}

/// Concatenation in the opposite order (for commutators).
pub fn rev_concat_rule(cap: usize) -> impl Fn(&Word, &Word) -> Vec<(Q, Word)> + Copy {
    move |a: &Word, b: &Word| {
        if a.len() + b.len() > cap {
            vec![]
        } else {
            vec![(Q::one(), b.concat(a))]
        }
    }
}

/// θ(w) = left-normed bracketing, expanded.
pub fn dynkin(w: &Word) -> Vec<(Q, Word)> {
    let Some((first, rest)) = w.0.split_first() else {
        return vec![(Q::one(), Word::unit())];
    };
    let mut acc = vec![(Q::one(), vec![*first])];
    for &b in rest {
        let mut next = Vec::with_capacity(acc.len() * 2);
        for (c, x) in acc {
            let mut left = x.clone();
            left.push(b);
            let mut right = Vec::with_capacity(x.len() + 1);
            right.push(b);
            right.extend_from_slice(&x);
            next.push((c.clone(), left));
            next.push((-c, right));
        }
        acc = next;
    }
    acc.into_iter().map(|(c, v)| (c, Word(v))).collect()
}

/// Dynkin projection θ/k applied degree by degree (the unit word is left alone).
pub fn dynkin_project<K: Coeff>(s: &Section<Word, K>) -> Section<Word, K> {
    s.map_frames(|w| {
        if w.is_empty() {
            return vec![(Q::one(), w.clone())];
        }
        let k = Q::from_integer((w.len() as i64).into());
        dynkin(w).into_iter().map(|(c, x)| (c / &k, x)).collect()
    })
}

/// Is every homogeneous component a Lie polynomial (θ(P) = kP)?
pub fn is_lie<K: Coeff>(s: &Section<Word, K>) -> bool {
    if s.labels().any(|w| w.is_empty()) {
        return false;
    }
    dynkin_project(s) == *s
}

/// w is Lyndon iff it is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[Generator]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Bracketed Lie word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LieTree {
    Leaf(Generator),
    Bracket(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    /// Standard bracketing of a Lyndon word: w = uv with v the longest proper
    /// Lyndon suffix.
    pub fn standard(w: &[Generator]) -> LieTree {
        assert!(is_lyndon(w), "not a Lyndon word");
        if w.len() == 1 {
            return LieTree::Leaf(w[0]);
        }
        let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).unwrap();
        LieTree::Bracket(Box::new(LieTree::standard(&w[..split])), Box::new(LieTree::standard(&w[split..])))
    }

    pub fn expand(&self) -> Vec<(Q, Word)> {
        match self {
            LieTree::Leaf(g) => vec![(Q::one(), Word::letter(*g))],
            LieTree::Bracket(a, b) => {
                let (ea, eb) = (a.expand(), b.expand());
                let mut acc: BTreeMap<Word, Q> = BTreeMap::new();
                for (ca, wa) in &ea {
                    for (cb, wb) in &eb {
                        *acc.entry(wa.concat(wb)).or_insert_with(Q::zero) += ca * cb;
                        *acc.entry(wb.concat(wa)).or_insert_with(Q::zero) -= ca * cb;
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (c, w)).collect()
            }
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            LieTree::Leaf(_) => 1,
            LieTree::Bracket(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn render(&self, name: &dyn Fn(&Generator) -> String) -> String {
        match self {
            LieTree::Leaf(g) => name(g),
            LieTree::Bracket(a, b) => format!("[{},{}]", a.render(name), b.render(name)),
        }
    }
}

impl fmt::Display for LieTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |g: &Generator| format!("e{}.{}.{}", g.class, g.n, g.m);
        write!(f, "{}", self.render(&name))
    }
}

/// Coordinates of a Lie-valued section in the Lyndon basis.  Panics if the
/// section is not Lie (the leading word of a Lie polynomial is always Lyndon).
pub fn lyndon_decompose<K: Coeff>(s: &Section<Word, K>) -> Vec<(LieTree, K)> {
    // word → coefficient, consumed from the lexicographically smallest word
    let mut rest: BTreeMap<Word, K> = s.iter().map(|(w, k)| (w.clone(), k.clone())).collect();
    let mut out = Vec::new();
    let one = Q::one();
    while let Some((w, k)) = rest.iter().next().map(|(w, k)| (w.clone(), k.clone())) {
        assert!(is_lyndon(&w.0), "leading word is not Lyndon: the section is not Lie");
        let tree = LieTree::standard(&w.0);
        for (c, x) in tree.expand() {
            let e = rest.entry(x.clone()).or_default();
            e.add_scaled(&k, &-(&c * &one));
            if e.is_zero() {
                rest.remove(&x);
            }
        }
        out.push((tree, k));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: u16) -> Generator {
        Generator { class: 0, n: 1, m }
    }

    #[test]
    fn lyndon_words() {
        assert!(is_lyndon(&[g(0), g(1)]));
        assert!(!is_lyndon(&[g(1), g(0)]));
        assert!(!is_lyndon(&[g(0), g(0)]));
        assert!(is_lyndon(&[g(0), g(0), g(1)]));
        assert!(is_lyndon(&[g(0), g(1), g(1)]));
        assert!(!is_lyndon(&[g(0), g(1), g(0)]));
    }

    #[test]
    fn standard_bracketing() {
        let t = LieTree::standard(&[g(0), g(0), g(1)]);
        assert_eq!(t.to_string(), "[e0.1.0,[e0.1.0,e0.1.1]]");
        let e = t.expand();
        // [a,[a,b]] = aab − 2aba + baa
        assert_eq!(e.len(), 3);
        assert_eq!(e[0], (Q::one(), Word(vec![g(0), g(0), g(1)])));
    }

    #[test]
    fn dynkin_on_brackets() {
        let t = LieTree::standard(&[g(0), g(1), g(2)]);
        let mut p: BTreeMap<Word, Q> = BTreeMap::new();
        for (c, w) in t.expand() {
            for (d, x) in dynkin(&w) {
                *p.entry(x).or_insert_with(Q::zero) += &c * &d;
            }
        }
        p.retain(|_, c| !c.is_zero());
        let want: BTreeMap<Word, Q> = t.expand().into_iter().map(|(c, w)| (w, c * Q::from_integer(3.into()))).collect();
        assert_eq!(p, want);
    }
}
