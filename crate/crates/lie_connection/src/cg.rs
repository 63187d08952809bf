//! Clebsch–Gordan data for S^{d₁}H ⊗ … ⊗ S^{d_k}H.
//!
//! Tensor basis vectors are multi-indices (s₁, …, s_k), encoded mixed-radix so
//! that the integer order agrees with the lexicographic order of words.  The sl₂
//! action is e·SˢTᵗ = t·Sˢ⁺¹Tᵗ⁻¹, f·SˢTᵗ = s·Sˢ⁻¹Tᵗ⁺¹ extended as a derivation.
//! Each highest weight vector v of weight d spans a copy of SᵈH through
//! ι(SˢTᵈ⁻ˢ) = s!/d! · fᵈ⁻ˢv.  Since ∇₀ is the sl₂ action twisted by scalar
//! forms, ι commutes with ∇₀.

use std::collections::BTreeMap;

use exact_kernel::linsolve::{Echelon, SparseRow};
use exact_kernel::Q;
use num_traits::{One, Zero};

/// Sparse tensor vector: mixed-radix index → coefficient.
pub type TVec = BTreeMap<usize, Q>;

#[derive(Clone, Debug)]
pub struct Irrep {
    /// highest weight
    pub d: u32,
    /// ι(SˢTᵈ⁻ˢ) for s = 0..=d
    pub embed: Vec<TVec>,
}

#[derive(Clone, Debug)]
pub struct CgData {
    /// d_i = 2n_i
    pub dims: Vec<u32>,
    pub copies: Vec<Irrep>,
    /// tensor index → Σ c·ι_copy(S^s…) with s fixed by the weight
    pub proj: Vec<Vec<(usize, Q)>>,
}

fn add(v: &mut TVec, i: usize, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(i).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        v.remove(&i);
    }
}

impl CgData {
    pub fn new(dims: &[u32]) -> Self {
        let mut radix = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            radix[i] = radix[i + 1] * (dims[i + 1] as usize + 1);
        }
        let size = dims.iter().map(|&d| d as usize + 1).product::<usize>();
        let total: u32 = dims.iter().sum();
        let digits = |idx: usize| -> Vec<u32> {
            radix.iter().zip(dims).map(|(&r, &d)| ((idx / r) % (d as usize + 1)) as u32).collect()
        };
        // h-weight Σ(2s_i − d_i)
        let weight = |idx: usize| -> i64 { digits(idx).iter().map(|&s| 2 * s as i64).sum::<i64>() - total as i64 };
        let apply = |v: &TVec, raise: bool| -> TVec {
            let mut out = TVec::new();
            for (&idx, c) in v {
                let ds = digits(idx);
                for (i, (&s, &d)) in ds.iter().zip(dims).enumerate() {
                    if raise && s < d {
                        add(&mut out, idx + radix[i], c * Q::from_integer(((d - s) as i64).into()));
                    } else if !raise && s > 0 {
                        add(&mut out, idx - radix[i], c * Q::from_integer((s as i64).into()));
                    }
                }
            }
            out
        };

        let mut spaces: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for idx in 0..size {
            spaces.entry(weight(idx)).or_default().push(idx);
        }

        let mut copies = Vec::new();
        for d in (0..=total as i64).rev().filter(|d| (total as i64 - d) % 2 == 0) {
            let src = &spaces[&d];
            // highest weight vectors: kernel of e on W_d
            let pos: BTreeMap<usize, usize> = src.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let mut rows: BTreeMap<usize, SparseRow> = BTreeMap::new();
            for (k, &idx) in src.iter().enumerate() {
                let img = apply(&TVec::from([(idx, Q::one())]), true);
                for (j, c) in img {
                    rows.entry(j).or_default().insert(k, c);
                }
            }
            let mut e = Echelon::new(src.len(), 0);
            for r in rows.into_values() {
                e.push(r, vec![]).expect("homogeneous");
            }
            for ns in e.nullspace() {
                let v: TVec = ns.into_iter().map(|(k, c)| (src[k], c)).collect();
                debug_assert!(v.keys().all(|i| pos.contains_key(i)));
                let du = d as u32;
                // fᵏv for k = 0..=d, then ι(SˢTᵈ⁻ˢ) = s!/d!·f^{d−s}v
                let mut fk = vec![v];
                for _ in 0..du {
                    let next = apply(fk.last().unwrap(), false);
                    fk.push(next);
                }
                let mut embed = vec![TVec::new(); du as usize + 1];
                let mut ratio = Q::one(); // s!/d! for s = d, d−1, …
                for s in (0..=du).rev() {
                    if s < du {
                        ratio /= Q::from_integer(((s + 1) as i64).into());
                    }
                    embed[s as usize] = fk[(du - s) as usize].iter().map(|(&i, c)| (i, c * &ratio)).collect();
                }
                copies.push(Irrep { d: du, embed });
            }
        }

        // invert the basis change weight space by weight space
        let mut proj = vec![Vec::new(); size];
        for (&mu, idxs) in &spaces {
            let cols: Vec<(usize, usize)> = copies
                .iter()
                .enumerate()
                .filter(|(_, c)| c.d as i64 >= mu.abs())
                .map(|(ci, c)| (ci, ((c.d as i64 + mu) / 2) as usize))
                .collect();
            assert_eq!(cols.len(), idxs.len(), "Clebsch–Gordan count mismatch at weight {mu}");
            let mut e = Echelon::new(cols.len(), idxs.len());
            for (r, &idx) in idxs.iter().enumerate() {
                let row: SparseRow = cols
                    .iter()
                    .enumerate()
                    .filter_map(|(k, &(ci, s))| copies[ci].embed[s].get(&idx).map(|c| (k, c.clone())))
                    .collect();
                let mut rhs = vec![Q::zero(); idxs.len()];
                rhs[r] = Q::one();
                e.push(row, rhs).expect("the copies span the weight space");
            }
            assert_eq!(e.rank(), cols.len());
            for (r, sol) in e.solution().into_iter().enumerate() {
                proj[idxs[r]] = sol.into_iter().map(|(k, c)| (cols[k].0, c)).collect();
            }
        }
        Self { dims: dims.to_vec(), copies, proj }
    }

    pub fn index(&self, digits: &[u32]) -> usize {
        digits.iter().zip(&self.dims).fold(0, |acc, (&s, &d)| acc * (d as usize + 1) + s as usize)
    }

    pub fn digits(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.dims.len()];
        for (o, &d) in out.iter_mut().zip(&self.dims).rev() {
            *o = (idx % (d as usize + 1)) as u32;
            idx /= d as usize + 1;
        }
        out
    }

    /// s of the copy component hit by a tensor index.
    pub fn slot_of(&self, copy: usize, idx: usize) -> u32 {
        let mu: i64 =
            self.digits(idx).iter().map(|&s| 2 * s as i64).sum::<i64>() - self.dims.iter().sum::<u32>() as i64;
        ((self.copies[copy].d as i64 + mu) / 2) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_counts() {
        let cg = CgData::new(&[2, 2]);
        let ds: Vec<u32> = cg.copies.iter().map(|c| c.d).collect();
        assert_eq!(ds, vec![4, 2, 0]);
        let cg = CgData::new(&[4, 2, 2]);
        assert_eq!(cg.copies.iter().map(|c| c.d as usize + 1).sum::<usize>(), 45);
    }

    #[test]
    fn project_then_embed_is_identity() {
        let cg = CgData::new(&[2, 4]);
        for idx in 0..15 {
            let mut v = TVec::new();
            for (ci, c) in &cg.proj[idx] {
                let s = cg.slot_of(*ci, idx);
                for (j, x) in &cg.copies[*ci].embed[s as usize] {
                    add(&mut v, *j, c * x);
                }
            }
            assert_eq!(v, TVec::from([(idx, Q::one())]));
        }
    }

    #[test]
    fn embedding_is_equivariant() {
        // e·ι(SˢTᵈ⁻ˢ) = (d − s)·ι(Sˢ⁺¹Tᵈ⁻ˢ⁻¹), checked through index arithmetic
        let cg = CgData::new(&[2, 2]);
        for c in &cg.copies {
            for s in 0..c.d {
                let mut ev = TVec::new();
                for (&idx, x) in &c.embed[s as usize] {
                    let ds = cg.digits(idx);
                    for i in 0..2 {
                        if ds[i] < 2 {
                            let mut d2 = ds.clone();
                            d2[i] += 1;
                            add(&mut ev, cg.index(&d2), x * Q::from_integer(((2 - ds[i]) as i64).into()));
                        }
                    }
                }
                let want: TVec = c.embed[s as usize + 1]
                    .iter()
                    .map(|(&i, x)| (i, x * Q::from_integer(((c.d - s) as i64).into())))
                    .collect();
                assert_eq!(ev, want);
            }
        }
    }
}
