//! The universal connection Ω̃ = (Ω⁰, Ω¹; F) truncated at word length N.
//!
//! Ω⁰, Ω¹ are Lie-valued 1-forms on U0, U1 and g = 1 + F = exp(G) with G Lie is
//! the transition function on U01.  Integrability mod degree N + 1 reads
//! DΩ̃ + Ω̃∧Ω̃ ≡ 0 with Ω̃∧Ω̃ taken in the associative envelope; its U01 slot is
//! the gauge identity gΩ¹ − Ω⁰g − ∇g = 0.
//!
//! Degree n is solved from degree < n: with T = (Ω̃∧Ω̃)_n and
//! E_n = (exp(G_{<n}) − 1 − G_{<n})_n, the corrected T′ = T − (0, 0; ∇E_n) is
//! closed and Lie, and any Lie X with D X = −T′ gives Ω_n = (X⁰, X¹) and
//! G_n = X_l.

use std::collections::BTreeMap;
use std::fmt;

use cech::{d1, wedge, Cochain1, Cochain2};
use exact_kernel::{nabla_fun, product, Chart, Coeff, Laurent, OneForm, Section, Slot, Q};
use num_traits::One;
use second_kind::{canonical_basis, ClassId, SecondKindCocycle};
use serde::Serialize;

use crate::solver::{solve_lie, CgCache};
use crate::words::{concat_rule, is_lie, lyndon_decompose, rev_concat_rule, Generator, LieTree, Word};
use crate::LieError;

#[derive(Clone, Debug)]
pub struct ClassEntry {
    pub id: ClassId,
    pub cocycle: SecondKindCocycle,
}

/// The generators: one class per canonical basis element of each weight.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    pub classes: Vec<ClassEntry>,
}

impl Registry {
    /// `halves` are the n of S²ⁿH (weight 2n + 2 modular forms).
    pub fn new(halves: &[u32]) -> Result<Self, LieError> {
        let mut classes = Vec::new();
        for &n in halves {
            for c in canonical_basis(n)? {
                classes.push(ClassEntry { id: c.id.clone(), cocycle: c });
            }
        }
        Ok(Self { classes })
    }

    pub fn name(&self, g: &Generator) -> String {
        format!("e^{}_{}", g.m, self.classes[g.class as usize].id)
    }

    pub fn names(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.id.to_string()).collect()
    }

    /// Ω₁: every class cocycle with SᵐT²ⁿ⁻ᵐ replaced by its generator e^m.
    pub fn omega1(&self) -> Cochain1<Word> {
        let mut out = Cochain1::zero();
        for (i, c) in self.classes.iter().enumerate() {
            let relabel =
                |s: &Slot| vec![(Q::one(), Word::letter(Generator { class: i as u16, n: s.n as u16, m: s.s as u16 }))];
            out.add_scaled(&c.cocycle.cochain.map_frames(relabel), &Q::one());
        }
        out
    }
}

fn exact_len_rule(n: usize) -> impl Fn(&Word, &Word) -> Vec<(Q, Word)> + Copy {
    move |a: &Word, b: &Word| if a.len() + b.len() == n { vec![(Q::one(), a.concat(b))] } else { vec![] }
}

fn degree_part<K: Coeff>(s: &Section<Word, K>, n: usize) -> Section<Word, K> {
    s.filter(|w| w.len() == n)
}

fn cochain2_degree(c: &Cochain2<Word>, n: usize) -> Cochain2<Word> {
    c.filter(|w| w.len() == n)
}

fn unit_section() -> Section<Word, Laurent> {
    Section::single(Chart::U01, Word::unit(), Laurent::one()).expect("constant")
}

/// exp(G) − 1 truncated at word length `cap` (G has no constant term).
pub fn exp_minus_one(g: &Section<Word, Laurent>, cap: usize) -> Section<Word, Laurent> {
    let mut out = Section::zero(Chart::U01);
    let mut power = g.clone();
    let mut fact = Q::one();
    for k in 1..=cap {
        if power.is_zero() {
            break;
        }
        fact /= Q::from_integer((k as i64).into());
        out.add_section(&power, &fact);
        power = product(&power, g, Chart::U01, concat_rule(cap));
    }
    out
}

/// g⁻¹ = Σ (−F)ᵏ truncated at `cap`.
pub fn inverse(f: &Section<Word, Laurent>, cap: usize) -> Section<Word, Laurent> {
    let mut out = unit_section();
    let neg = f.neg();
    let mut power = unit_section();
    for _ in 1..=cap {
        power = product(&power, &neg, Chart::U01, concat_rule(cap));
        if power.is_zero() {
            break;
        }
        out.add_section(&power, &Q::one());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    /// T′ was Lie-valued and closed
    pub obstruction_lie: bool,
    /// number of word frames in Ω⁰_n, Ω¹_n, G_n
    pub terms: [usize; 3],
}

#[derive(Clone, Debug)]
pub struct LieConnection {
    pub registry: Registry,
    pub depth: usize,
    /// (Ω⁰, Ω¹; F) with g = 1 + F
    pub omega: Cochain1<Word>,
    /// log g
    pub g_log: Section<Word, Laurent>,
    pub reports: Vec<DegreeReport>,
}

/// Build the connection for the classes of S²ⁿH, n ∈ `halves`, through word
/// length `depth`.
pub fn build_connection(halves: &[u32], depth: usize) -> Result<LieConnection, LieError> {
    let registry = Registry::new(halves)?;
    let mut omega = registry.omega1();
    let mut g_log = omega.l.clone();
    if depth == 0 {
        return Ok(LieConnection {
            registry,
            depth,
            omega: Cochain1::zero(),
            g_log: Section::zero(Chart::U01),
            reports: vec![],
        });
    }
    let mut reports =
        vec![DegreeReport { degree: 1, obstruction_lie: true, terms: [omega.w0.len(), omega.w1.len(), omega.l.len()] }];
    let cache = CgCache::default();
    for n in 2..=depth {
        let mut t = wedge(&omega, &omega, exact_len_rule(n));
        let e_n = degree_part(&exp_minus_one(&g_log, n), n);
        t.m.add_section(&nabla_fun(&e_n), &-Q::one());
        let x = solve_lie(&t, n, &cache)?;
        reports.push(DegreeReport { degree: n, obstruction_lie: true, terms: [x.w0.len(), x.w1.len(), x.l.len()] });
        omega.w0.add_section(&x.w0, &Q::one());
        omega.w1.add_section(&x.w1, &Q::one());
        omega.l.add_section(&x.l, &Q::one());
        omega.l.add_section(&e_n, &Q::one());
        g_log.add_section(&x.l, &Q::one());
    }
    Ok(LieConnection { registry, depth, omega, g_log, reports })
}

/// Per-degree outcome of an identity: true where the residual vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub by_degree: Vec<bool>,
}

impl Check {
    pub fn holds(&self) -> bool {
        self.by_degree.iter().all(|&b| b)
    }
}

fn degrees_of_2(c: &Cochain2<Word>, depth: usize) -> Check {
    Check { by_degree: (1..=depth).map(|n| cochain2_degree(c, n).is_zero()).collect() }
}

fn degrees_of<K: Coeff>(s: &Section<Word, K>, depth: usize) -> Check {
    Check { by_degree: (1..=depth).map(|n| degree_part(s, n).is_zero()).collect() }
}

impl LieConnection {
    /// DΩ̃ + Ω̃∧Ω̃ (associative), through word length N.
    pub fn integrability_residual(&self) -> Cochain2<Word> {
        let mut r = d1(&self.omega);
        r.add_scaled(&wedge(&self.omega, &self.omega, concat_rule(self.depth)), &Q::one());
        r
    }

    pub fn check_integrability(&self) -> Check {
        degrees_of_2(&self.integrability_residual(), self.depth)
    }

    /// Ω⁰ − (−∇g·g⁻¹ + gΩ¹g⁻¹) on U01, through word length N.
    pub fn gauge_residual(&self) -> Section<Word, OneForm> {
        let cap = self.depth;
        let mut g = unit_section();
        g.add_section(&self.omega.l, &Q::one());
        let ginv = inverse(&self.omega.l, cap);
        let mut r = self.omega.w0.restrict(Chart::U01).expect("towards U01");
        r.add_section(&product(&nabla_fun(&self.omega.l), &ginv, Chart::U01, concat_rule(cap)), &Q::one());
        let w1 = self.omega.w1.restrict(Chart::U01).expect("towards U01");
        let gw = product(&g, &w1, Chart::U01, concat_rule(cap));
        r.add_section(&product(&gw, &ginv, Chart::U01, concat_rule(cap)), &-Q::one());
        r
    }

    pub fn check_gauge(&self) -> Check {
        degrees_of(&self.gauge_residual(), self.depth)
    }

    /// F = exp(G) − 1 with Ω⁰, Ω¹, G Lie.
    pub fn check_group_like(&self) -> bool {
        let f = exp_minus_one(&self.g_log, self.depth);
        f == self.omega.l && is_lie(&self.g_log) && is_lie(&self.omega.w0) && is_lie(&self.omega.w1)
    }

    /// The literal Lie-algebra Maurer–Cartan defect D(Ω⁰, Ω¹; G) + ½[Ω, Ω],
    /// which is not expected to vanish beyond degree 2 (the U01 slot of the
    /// true identity is nonlinear in G).
    pub fn bracket_defect(&self) -> Check {
        let x = Cochain1 { w0: self.omega.w0.clone(), w1: self.omega.w1.clone(), l: self.g_log.clone() };
        let mut r = d1(&x);
        r.add_scaled(&bracket_square(&x, self.depth), &Q::one());
        degrees_of_2(&r, self.depth)
    }

    pub fn degree(&self, n: usize) -> Cochain1<Word> {
        Cochain1 {
            w0: degree_part(&self.omega.w0, n),
            w1: degree_part(&self.omega.w1, n),
            l: degree_part(&self.g_log, n),
        }
    }

    /// Lyndon coordinates of (Ω⁰_n, Ω¹_n; G_n): Lie monomial → scalar cochain.
    pub fn lyndon_terms(&self, n: usize) -> BTreeMap<LieTree, Cochain1<Slot>> {
        let x = self.degree(n);
        let mut out: BTreeMap<LieTree, Cochain1<Slot>> = BTreeMap::new();
        for (tree, k) in lyndon_decompose(&x.w0) {
            out.entry(tree).or_insert_with(Cochain1::zero).w0.add_scaled_term(Slot::unit(), &k, &Q::one());
        }
        for (tree, k) in lyndon_decompose(&x.w1) {
            out.entry(tree).or_insert_with(Cochain1::zero).w1.add_scaled_term(Slot::unit(), &k, &Q::one());
        }
        for (tree, k) in lyndon_decompose(&x.l) {
            out.entry(tree).or_insert_with(Cochain1::zero).l.add_scaled_term(Slot::unit(), &k, &Q::one());
        }
        out
    }

    pub fn to_json(&self) -> ConnectionJson {
        let name = |g: &Generator| self.registry.name(g);
        let degrees = (1..=self.depth)
            .map(|n| DegreeJson {
                degree: n,
                terms: self
                    .lyndon_terms(n)
                    .into_iter()
                    .map(|(tree, c)| TermJson {
                        bracket: tree.render(&name),
                        cochain: cech::json::to_json(0, &cech::CechCochain::Deg1(c)),
                    })
                    .collect(),
            })
            .collect();
        ConnectionJson {
            depth: self.depth,
            classes: self.registry.names(),
            degrees,
            integrable: self.check_integrability(),
            gauge: self.check_gauge(),
            group_like: self.check_group_like(),
            bracket_defect: self.bracket_defect(),
        }
    }
}

impl fmt::Display for LieConnection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |g: &Generator| self.registry.name(g);
        for n in 1..=self.depth {
            for (tree, c) in self.lyndon_terms(n) {
                writeln!(f, "{} ⊗ {}", tree.render(&name), cech::render::cochain1(&c))?;
            }
        }
        Ok(())
    }
}

/// ½(Ω∧Ω − Ω∧ᵒᵖΩ): the graded commutator ½[Ω, Ω] in the envelope.
pub fn bracket_square(x: &Cochain1<Word>, cap: usize) -> Cochain2<Word> {
    let mut out = wedge(x, x, concat_rule(cap));
    out.add_scaled(&wedge(x, x, rev_concat_rule(cap)), &-Q::one());
    out.scale(&Q::new(1.into(), 2.into()))
}

/// Ω∧Ω with concatenation.
pub fn envelope_square(x: &Cochain1<Word>, cap: usize) -> Cochain2<Word> {
    wedge(x, x, concat_rule(cap))
}

/// The corrected degree-n obstruction T′ for a connection known through n − 1.
pub fn obstruction(conn: &LieConnection, n: usize) -> Cochain2<Word> {
    let lower = Cochain1 {
        w0: conn.omega.w0.filter(|w| w.len() < n),
        w1: conn.omega.w1.filter(|w| w.len() < n),
        l: conn.omega.l.filter(|w| w.len() < n),
    };
    let g = conn.g_log.filter(|w| w.len() < n);
    let mut t = wedge(&lower, &lower, exact_len_rule(n));
    let e_n = degree_part(&exp_minus_one(&g, n), n);
    t.m.add_section(&nabla_fun(&e_n), &-Q::one());
    t
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub bracket: String,
    pub cochain: cech::json::CochainJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeJson {
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectionJson {
    pub depth: usize,
    pub classes: Vec<String>,
    pub degrees: Vec<DegreeJson>,
    pub integrable: Check,
    pub gauge: Check,
    pub group_like: bool,
    pub bracket_defect: Check,
}
