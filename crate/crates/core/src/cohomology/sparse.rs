//! Sparse vectors keyed by u64 and an incremental echelon basis.

use std::collections::HashMap;

use crate::fields::{Fe, Fq};

/// Sorted by key, no zero coefficients.
pub type SparseVec = Vec<(u64, Fe)>;

pub fn sv_from_unsorted(f: &Fq, mut v: Vec<(u64, Fe)>) -> SparseVec {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 = f.add(last.1, c),
            _ => out.push((k, c)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// x + c·y
pub fn sv_axpy(f: &Fq, x: &[(u64, Fe)], c: Fe, y: &[(u64, Fe)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i]);
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            let v = f.mul(c, y[j].1);
            if v != 0 {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(x[i].1, f.mul(c, y[j].1));
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sv_scale(f: &Fq, x: &[(u64, Fe)], c: Fe) -> SparseVec {
    if c == 0 {
        return Vec::new();
    }
    x.iter().map(|&(k, v)| (k, f.mul(v, c))).collect()
}

/// Echelon basis: every stored vector has a distinct leading (largest) key
/// and leading coefficient 1. Optionally tracks, for each stored vector, its
/// expression in terms of caller-supplied labels.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Fq,
    pivots: HashMap<u64, usize>,
    vecs: Vec<SparseVec>,
    tracks: Vec<SparseVec>,
}

pub enum Inserted {
    Independent,
    /// The vector was dependent; the track of the zero combination.
    Dependent(SparseVec),
}

impl Echelon {
    pub fn new(f: &Fq) -> Echelon {
        Echelon { field: f.clone(), pivots: HashMap::new(), vecs: Vec::new(), tracks: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    /// Eliminate leading terms until the leading key has no pivot.
    pub fn reduce(&self, mut v: SparseVec, mut track: SparseVec) -> (SparseVec, SparseVec) {
        let f = &self.field;
        while let Some(&(k, c)) = v.last() {
            let Some(&idx) = self.pivots.get(&k) else { break };
            let m = f.neg(c);
            v = sv_axpy(f, &v, m, &self.vecs[idx]);
            if !self.tracks[idx].is_empty() || !track.is_empty() {
                track = sv_axpy(f, &track, m, &self.tracks[idx]);
            }
        }
        (v, track)
    }

    /// Eliminate every pivot key, not just the leading one.
    pub fn reduce_full(&self, v: SparseVec) -> SparseVec {
        let f = &self.field;
        let mut v = v;
        let mut pos = v.len();
        while pos > 0 {
            let (k, c) = v[pos - 1];
            if let Some(&idx) = self.pivots.get(&k) {
                v = sv_axpy(f, &v, f.neg(c), &self.vecs[idx]);
                // entries above k are untouched, so resume just below it
                pos = v.partition_point(|e| e.0 < k);
            } else {
                pos -= 1;
            }
        }
        v
    }

    /// Full reduction of a stored vector against the others.
    pub fn reduce_full_except_lead(&self, v: &SparseVec) -> SparseVec {
        let Some(&(lead, c)) = v.last() else { return Vec::new() };
        let rest: SparseVec = v[..v.len() - 1].to_vec();
        let mut out = self.reduce_full(rest);
        out.push((lead, c));
        out
    }

    pub fn insert(&mut self, v: SparseVec, track: SparseVec) -> Inserted {
        let (v, track) = self.reduce(v, track);
        let Some(&(k, c)) = v.last() else { return Inserted::Dependent(track) };
        let f = &self.field;
        let inv = f.inv(c);
        self.pivots.insert(k, self.vecs.len());
        self.vecs.push(sv_scale(f, &v, inv));
        self.tracks.push(sv_scale(f, &track, inv));
        Inserted::Independent
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vecs
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v, Vec::new()).0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_tracks_dependencies() {
        let f = Fq::prime(5).unwrap();
        let mut e = Echelon::new(&f);
        assert!(matches!(e.insert(vec![(1, 1), (3, 2)], vec![(0, 1)]), Inserted::Independent));
        assert!(matches!(e.insert(vec![(1, 4), (2, 1)], vec![(1, 1)]), Inserted::Independent));
        // 2·v0 + v1 = (1,1),(2,1),(3,4) -> dependent on the sum
        match e.insert(vec![(1, 1), (2, 1), (3, 4)], vec![(2, 1)]) {
            Inserted::Dependent(t) => assert_eq!(t, vec![(0, 3), (1, 4), (2, 1)]),
            Inserted::Independent => panic!("should be dependent"),
        }
        assert_eq!(e.rank(), 2);
    }
}
