//! Ladder curves and the two lemmas that grow linking numbers.

use crate::diagram::{Cycle, Diagram};
use crate::error::{Error, Result};
use crate::geometry::Edge;
use crate::invariants::LinkingTable;

/// Ladder between two disjoint cycles `Z` and `W`: `q` selected vertices on
/// each, joined by rungs `v_j w_j`. Walking along `Z` meets `v_1, ..., v_q`
/// in increasing order; walking along `W` meets the `w_j` in decreasing
/// order. Indices are 1-based and taken mod `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderCurve {
    z: Cycle,
    w: Cycle,
    v: Vec<usize>,
    wv: Vec<usize>,
}

impl LadderCurve {
    /// Selects the first `q` vertices of `z` as `v_1..v_q` and the first `q`
    /// of `w` as `w_q..w_1`.
    pub fn new(z: &Cycle, w: &Cycle, q: usize) -> Result<Self> {
        if q < 3 {
            return Err(Error::Precondition(format!("ladder needs q >= 3, got {q}")));
        }
        if z.len() < q || w.len() < q {
            return Err(Error::Precondition(format!("both cycles need at least {q} vertices")));
        }
        if !z.is_disjoint(w) {
            return Err(Error::Precondition("ladder cycles must be disjoint".into()));
        }
        let v = z.vertices()[..q].to_vec();
        let wv = (1..=q).map(|j| w.vertices()[q - j]).collect();
        Ok(LadderCurve { z: z.clone(), w: w.clone(), v, wv })
    }

    pub fn q(&self) -> usize {
        self.v.len()
    }

    pub fn z(&self) -> &Cycle {
        &self.z
    }

    pub fn w(&self) -> &Cycle {
        &self.w
    }

    fn idx(&self, j: usize) -> usize {
        (j + self.q() - 1) % self.q()
    }

    pub fn v(&self, j: usize) -> usize {
        self.v[self.idx(j)]
    }

    pub fn w_vertex(&self, j: usize) -> usize {
        self.wv[self.idx(j)]
    }

    pub fn rung(&self, j: usize) -> Edge {
        Edge::new(self.v(j), self.w_vertex(j))
    }

    fn pz(&self, v: usize) -> usize {
        self.z.position(v).unwrap()
    }

    fn pw(&self, v: usize) -> usize {
        self.w.position(v).unwrap()
    }

    /// `A_j`: `v_j -> w_j`, back along `W` to `w_{j+1}`, across to `v_{j+1}`
    /// and back along `Z` to `v_j`.
    pub fn a(&self, j: usize) -> Cycle {
        let (vj, vn, wj, wn) = (self.v(j), self.v(j + 1), self.w_vertex(j), self.w_vertex(j + 1));
        let mut out = vec![vj];
        let mut wpath = self.w.path(self.pw(wn), self.pw(wj));
        wpath.reverse();
        out.extend(wpath);
        let mut zpath = self.z.path(self.pz(vj), self.pz(vn));
        zpath.reverse();
        zpath.pop();
        out.extend(zpath);
        Cycle::new(out).expect("ladder curves are simple")
    }

    /// Same ladder with index `k` renamed to `q`.
    pub fn relabeled(&self, k: usize) -> LadderCurve {
        let q = self.q();
        let pick = |xs: &[usize]| (1..=q).map(|i| xs[(i + k - 1) % q]).collect();
        LadderCurve { z: self.z.clone(), w: self.w.clone(), v: pick(&self.v), wv: pick(&self.wv) }
    }

    /// `A_1 + ... + A_{q-1}` with the inner rungs removed, oriented so that
    /// `w_1 -> v_1` is positive; its class is `[Z] + [W] + [A_q]`.
    pub fn join(&self) -> Cycle {
        let q = self.q();
        let mut out = self.z.path(self.pz(self.v(1)), self.pz(self.v(q)));
        out.extend(self.w.path(self.pw(self.w_vertex(q)), self.pw(self.w_vertex(1))));
        Cycle::new(out).expect("joined curve is simple")
    }

    /// `W + A_q` with their common arc removed; its class is `[W] + [A_q]`.
    pub fn merge_with_w(&self) -> Cycle {
        let q = self.q();
        let mut out = self.w.path(self.pw(self.w_vertex(q)), self.pw(self.w_vertex(1)));
        let mut zpath = self.z.path(self.pz(self.v(q)), self.pz(self.v(1)));
        zpath.reverse();
        out.extend(zpath);
        Cycle::new(out).expect("merged curve is simple")
    }
}

fn check_disjoint(cycles: &[&Cycle]) -> Result<()> {
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            if !a.is_disjoint(b) {
                return Err(Error::Precondition("cycles must be pairwise disjoint".into()));
            }
        }
    }
    Ok(())
}

fn check_vertices(d: &Diagram, cycles: &[&Cycle]) -> Result<()> {
    for c in cycles {
        if let Some(v) = c.vertices().iter().find(|v| **v >= d.n()) {
            return Err(Error::Precondition(format!("vertex {v} is not in K_{}", d.n())));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Output {
    pub j: Cycle,
    /// Ladder after relabelling, so that `lk(L, A_q) >= 0`.
    pub ladder: LadderCurve,
    /// Index (before relabelling) of the curve `A_j` that became `A_q`.
    pub chosen: usize,
    /// `lk(L, A_j)` for `j = 1..q` before relabelling.
    pub a_lks: Vec<i64>,
    pub p1: i64,
    pub p2: i64,
    pub lk: i64,
}

pub fn lemma1_join(d: &Diagram, l: &Cycle, z: &Cycle, w: &Cycle, q: usize) -> Result<Lemma1Output> {
    lemma1_join_with(&LinkingTable::new(d), d, l, z, w, q)
}

pub(crate) fn lemma1_join_with(
    t: &LinkingTable,
    d: &Diagram,
    l: &Cycle,
    z: &Cycle,
    w: &Cycle,
    q: usize,
) -> Result<Lemma1Output> {
    check_vertices(d, &[l, z, w])?;
    check_disjoint(&[l, z, w])?;
    let (p1, p2) = (t.lk(l, z), t.lk(l, w));
    if p1 <= 0 || p2 <= 0 {
        return Err(Error::Precondition(format!("need lk(L,Z) > 0 and lk(L,W) > 0, got {p1} and {p2}")));
    }
    if (q as i64) <= p1 + p2 {
        return Err(Error::Precondition(format!("q = {q} must exceed p1 + p2 = {}", p1 + p2)));
    }
    let ladder = LadderCurve::new(z, w, q)?;
    let a_lks: Vec<i64> = (1..=q).map(|j| t.lk(l, &ladder.a(j))).collect();
    if a_lks.iter().sum::<i64>() != -(p1 + p2) {
        return Err(Error::Internal("ladder classes do not balance".into()));
    }
    let chosen = a_lks.iter().position(|x| *x >= 0).ok_or_else(|| Error::Internal("no A_j with lk >= 0".into()))? + 1;
    let ladder = ladder.relabeled(chosen);
    let j = ladder.join();
    let lk = t.lk(l, &j);
    if lk != p1 + p2 + a_lks[chosen - 1] {
        return Err(Error::Internal(format!("joined curve has lk {lk}")));
    }
    Ok(Lemma1Output { j, ladder, chosen, a_lks, p1, p2, lk })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma2Case {
    /// `lk(X2, Y1) != 0`: `(L, Z, W) = (X2, Y1, Y2)`.
    LinkedX2Y1,
    /// `lk(Y2, X1) != 0`: `(L, Z, W) = (Y2, X1, X2)`.
    LinkedY2X1,
    /// Ladder over `X1, X2` with `lk(Y1, A_q) = 0`.
    LadderJoin,
    /// Ladder over `X1, X2` with `lk(Y1, A_q) != 0`.
    LadderMerge,
}

impl Lemma2Case {
    pub fn name(self) -> &'static str {
        match self {
            Lemma2Case::LinkedX2Y1 => "linked-x2-y1",
            Lemma2Case::LinkedY2X1 => "linked-y2-x1",
            Lemma2Case::LadderJoin => "ladder-join",
            Lemma2Case::LadderMerge => "ladder-merge",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma2Output {
    pub l: Cycle,
    pub z: Cycle,
    pub w: Cycle,
    pub case: Lemma2Case,
    pub lk_lz: i64,
    pub lk_lw: i64,
}

pub fn lemma2_merge(d: &Diagram, x1: &Cycle, y1: &Cycle, x2: &Cycle, y2: &Cycle, q: usize) -> Result<Lemma2Output> {
    lemma2_merge_with(&LinkingTable::new(d), d, x1, y1, x2, y2, q)
}

fn oriented_towards(t: &LinkingTable, l: &Cycle, c: &Cycle) -> Cycle {
    if t.lk(l, c) < 0 {
        c.reversed()
    } else {
        c.clone()
    }
}

pub(crate) fn lemma2_merge_with(
    t: &LinkingTable,
    d: &Diagram,
    x1: &Cycle,
    y1: &Cycle,
    x2: &Cycle,
    y2: &Cycle,
    q: usize,
) -> Result<Lemma2Output> {
    check_vertices(d, &[x1, y1, x2, y2])?;
    check_disjoint(&[x1, y1, x2, y2])?;
    let (k1, p) = (t.lk(x1, y1), t.lk(x2, y2));
    if k1 < 1 || p < 1 {
        return Err(Error::Precondition(format!("need lk(X1,Y1) >= 1 and lk(X2,Y2) >= 1, got {k1} and {p}")));
    }
    if [x1, y1, x2, y2].iter().any(|c| c.len() < q) {
        return Err(Error::Precondition(format!("every cycle needs at least {q} vertices")));
    }
    if (q as i64) <= p {
        return Err(Error::Precondition(format!("q = {q} must exceed p = {p}")));
    }

    let (l, z, w, case) = if t.lk(x2, y1) != 0 {
        (x2.clone(), oriented_towards(t, x2, y1), y2.clone(), Lemma2Case::LinkedX2Y1)
    } else if t.lk(y2, x1) != 0 {
        (y2.clone(), oriented_towards(t, y2, x1), x2.clone(), Lemma2Case::LinkedY2X1)
    } else {
        let ladder = LadderCurve::new(x1, x2, q)?;
        let a_y2: Vec<i64> = (1..=q).map(|j| t.lk(y2, &ladder.a(j))).collect();
        if a_y2.iter().sum::<i64>() != -p {
            return Err(Error::Internal("ladder classes do not balance around Y2".into()));
        }
        let chosen = a_y2.iter().position(|x| *x >= 0).ok_or_else(|| Error::Internal("no A_j with lk >= 0".into()))?;
        let ladder = ladder.relabeled(chosen + 1);
        if t.lk(y1, &ladder.a(q)) == 0 {
            (ladder.join(), y1.clone(), y2.clone(), Lemma2Case::LadderJoin)
        } else {
            let l = ladder.merge_with_w();
            let z = oriented_towards(t, &l, y1);
            (l, z, y2.clone(), Lemma2Case::LadderMerge)
        }
    };
    let (lk_lz, lk_lw) = (t.lk(&l, &z), t.lk(&l, &w));
    if lk_lz < 1 || lk_lw < p || [&l, &z, &w].iter().any(|c| c.len() < q) {
        return Err(Error::Internal(format!("{} produced lk(L,Z) = {lk_lz}, lk(L,W) = {lk_lw}", case.name())));
    }
    Ok(Lemma2Output { l, z, w, case, lk_lz, lk_lw })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(v: &[usize]) -> Cycle {
        Cycle::new(v.to_vec()).unwrap()
    }

    #[test]
    fn ladder_labels_and_curves() {
        let z = cyc(&[0, 1, 2, 3]);
        let w = cyc(&[4, 5, 6, 7, 8]);
        let lad = LadderCurve::new(&z, &w, 3).unwrap();
        assert_eq!((lad.v(1), lad.v(2), lad.v(3)), (0, 1, 2));
        assert_eq!((lad.w_vertex(1), lad.w_vertex(2), lad.w_vertex(3)), (6, 5, 4));
        assert_eq!(lad.v(4), lad.v(1));
        assert_eq!(lad.a(1), cyc(&[0, 6, 5, 1]));
        // A_3 closes up through the unselected vertices of both cycles.
        assert_eq!(lad.a(3), cyc(&[2, 4, 8, 7, 6, 0, 3]));
        assert_eq!(lad.join(), cyc(&[0, 1, 2, 4, 5, 6]));
        assert_eq!(lad.merge_with_w(), cyc(&[4, 5, 6, 0, 3, 2]));
        let r = lad.relabeled(1);
        assert_eq!((r.v(3), r.w_vertex(3)), (0, 6));
        assert_eq!(r.v(1), 1);
        assert!(LadderCurve::new(&z, &w, 2).is_err());
        assert!(LadderCurve::new(&z, &w, 5).is_err());
    }

    #[test]
    fn every_vertex_edge_of_ladder_cycles_is_used_consistently() {
        let z = cyc(&[0, 1, 2, 3, 4]);
        let w = cyc(&[5, 6, 7, 8, 9]);
        let lad = LadderCurve::new(&z, &w, 4).unwrap();
        // Each rung is traversed once forwards and once backwards overall.
        for j in 1..=4 {
            let r = lad.rung(j);
            let here = lad.a(j).direction_of(r).unwrap();
            let prev = lad.a(if j == 1 { 4 } else { j - 1 }).direction_of(r).unwrap();
            assert_eq!(here, -prev);
        }
    }
}
