//! The two gadget reductions from a validated instance to a labeled graph
//! plus its protected vertex set Z (the vertices that must gain no new
//! neighbors during triangulation).
//!
//! Domination: per variable a K4 on {v, vbar, u, w} where w has no other
//! neighbors; per clause a vertex z adjacent to one vertex per literal,
//! plus a helper v'_h for 2-literal clauses adjacent to both literals and
//! to z. Z = all z_h and all w_i.
//!
//! Power domination: per variable a sextuple {v, vbar, u, v', vbar', u'}
//! inducing K6 minus the matching (v,v'), (vbar,vbar'), (u,u'); per
//! 3-clause a triangle of degree-4 vertices z_{h,i}, z_{h,j}, z_{h,k}, each
//! adjacent to the two literals it is not named after; per 2-clause four
//! degree-4 vertices z_{h,i}, z_{h,j}, z_{h,h}, v_{h,h} wired as K4 minus
//! the edge (z_{h,h}, v_{h,h}), with z_{h,i} adjacent to literal j,
//! z_{h,j} to literal i, and both z_{h,h} and v_{h,h} to both literals.
//! Z = all z vertices and all primed trios. v_{h,h} stays unprotected: its
//! own neighbors may grow, but the three protected z's of its gadget remain
//! unobservable without a pick from the gadget or its literals, which is
//! what the size bound needs.

use crate::instance::{Clause, Pm3SatInstance, Polarity, VariableId};
use crate::planegraph::{GraphBuilder, PlaneGraph, VertexId};
use crate::solvers::VertexSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("instance failed validation: {0}")]
    InvalidInstance(String),
    #[error("clause {0} has {1} literals; clauses must have 2 or 3")]
    BadClauseSize(usize, usize),
}

/// Vertex roles of one domination variable gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomVarGadget {
    pub v: VertexId,
    pub vbar: VertexId,
    pub u: VertexId,
    pub w: VertexId,
}

impl DomVarGadget {
    pub fn literal(&self, polarity: Polarity) -> VertexId {
        match polarity {
            Polarity::Positive => self.v,
            Polarity::Negative => self.vbar,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomClauseGadget {
    pub z: VertexId,
    /// Helper vertex, present exactly for 2-literal clauses.
    pub v_prime: Option<VertexId>,
}

#[derive(Debug, Clone)]
pub struct DomReduction {
    pub graph: PlaneGraph,
    pub n: usize,
    pub vars: Vec<DomVarGadget>,
    pub clauses: Vec<DomClauseGadget>,
    pub protected: VertexSet,
}

/// Vertex roles of one power-domination variable sextuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PdomVarGadget {
    pub v: VertexId,
    pub vbar: VertexId,
    pub u: VertexId,
    pub v_prime: VertexId,
    pub vbar_prime: VertexId,
    pub u_prime: VertexId,
}

impl PdomVarGadget {
    pub fn literal(&self, polarity: Polarity) -> VertexId {
        match polarity {
            Polarity::Positive => self.v,
            Polarity::Negative => self.vbar,
        }
    }

    pub fn all(&self) -> [VertexId; 6] {
        [
            self.v,
            self.vbar,
            self.u,
            self.v_prime,
            self.vbar_prime,
            self.u_prime,
        ]
    }

    pub fn primed(&self) -> [VertexId; 3] {
        [self.v_prime, self.vbar_prime, self.u_prime]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PdomClauseGadget {
    /// z vertices indexed parallel to the clause's variables: z[i] is the
    /// vertex named after literal i, adjacent to the other two literals.
    Triple { z: [VertexId; 3] },
    /// 2-clause: z[0] named after the first literal (adjacent to the
    /// second), z[1] vice versa, plus the z_hh / v_hh pair adjacent to both.
    Pair {
        z: [VertexId; 2],
        z_hh: VertexId,
        v_hh: VertexId,
    },
}

impl PdomClauseGadget {
    pub fn all_vertices(&self) -> Vec<VertexId> {
        match self {
            PdomClauseGadget::Triple { z } => z.to_vec(),
            PdomClauseGadget::Pair { z, z_hh, v_hh } => vec![z[0], z[1], *z_hh, *v_hh],
        }
    }

    /// The protected members (everything but v_hh).
    pub fn protected_vertices(&self) -> Vec<VertexId> {
        match self {
            PdomClauseGadget::Triple { z } => z.to_vec(),
            PdomClauseGadget::Pair { z, z_hh, .. } => vec![z[0], z[1], *z_hh],
        }
    }
}

#[derive(Debug, Clone)]
pub struct PdomReduction {
    pub graph: PlaneGraph,
    pub n: usize,
    pub vars: Vec<PdomVarGadget>,
    pub clauses: Vec<PdomClauseGadget>,
    pub protected: VertexSet,
}

fn precheck(inst: &Pm3SatInstance) -> Result<(), BuildError> {
    let report = inst.validate();
    if !report.passed() {
        return Err(BuildError::InvalidInstance(report.to_string()));
    }
    let pairs = inst.check_pair_condition();
    if !pairs.passed() {
        return Err(BuildError::InvalidInstance(pairs.to_string()));
    }
    for clause in &inst.clauses {
        if clause.len() < 2 || clause.len() > 3 {
            return Err(BuildError::BadClauseSize(clause.id, clause.len()));
        }
    }
    Ok(())
}

/// Builds the domination reduction. |V| = 4n + m3 + 2*m2 and
/// |E| = 6n + 3*m3 + 5*m2.
pub fn build_dom(inst: &Pm3SatInstance) -> Result<DomReduction, BuildError> {
    precheck(inst)?;
    let mut b = GraphBuilder::new();
    let vars: Vec<DomVarGadget> = (0..inst.n)
        .map(|i| {
            let v = b.add_vertex(format!("v:{i}"));
            let vbar = b.add_vertex(format!("vbar:{i}"));
            let u = b.add_vertex(format!("u:{i}"));
            let w = b.add_vertex(format!("w:{i}"));
            for (a, c) in [(v, vbar), (v, u), (v, w), (vbar, u), (vbar, w), (u, w)] {
                b.add_edge(a, c);
            }
            DomVarGadget { v, vbar, u, w }
        })
        .collect();
    let clauses: Vec<DomClauseGadget> = inst
        .clauses
        .iter()
        .map(|clause| {
            let h = clause.id;
            let z = b.add_vertex(format!("z:{h}"));
            for &i in &clause.vars {
                b.add_edge(z, vars[i].literal(clause.polarity));
            }
            let v_prime = (clause.len() == 2).then(|| {
                let vp = b.add_vertex(format!("vh:{h}"));
                for &i in &clause.vars {
                    b.add_edge(vp, vars[i].literal(clause.polarity));
                }
                b.add_edge(vp, z);
                vp
            });
            DomClauseGadget { z, v_prime }
        })
        .collect();
    let graph = b.build().expect("gadget construction is simple and symmetric");
    let mut protected = VertexSet::empty(graph.vertex_count());
    for g in &vars {
        protected.insert(g.w);
    }
    for g in &clauses {
        protected.insert(g.z);
    }
    Ok(DomReduction {
        graph,
        n: inst.n,
        vars,
        clauses,
        protected,
    })
}

/// Builds the power domination reduction. |V| = 6n + 3*m3 + 4*m2 and
/// |E| = 12n + 9*m3 + 11*m2.
pub fn build_pdom(inst: &Pm3SatInstance) -> Result<PdomReduction, BuildError> {
    precheck(inst)?;
    let mut b = GraphBuilder::new();
    let vars: Vec<PdomVarGadget> = (0..inst.n)
        .map(|i| {
            let v = b.add_vertex(format!("v:{i}"));
            let vbar = b.add_vertex(format!("vbar:{i}"));
            let u = b.add_vertex(format!("u:{i}"));
            let v_prime = b.add_vertex(format!("vp:{i}"));
            let vbar_prime = b.add_vertex(format!("vbarp:{i}"));
            let u_prime = b.add_vertex(format!("up:{i}"));
            let g = PdomVarGadget {
                v,
                vbar,
                u,
                v_prime,
                vbar_prime,
                u_prime,
            };
            let members = g.all();
            let matching = [(v, v_prime), (vbar, vbar_prime), (u, u_prime)];
            for (a, x) in members.iter().enumerate() {
                for y in &members[a + 1..] {
                    let skip = matching
                        .iter()
                        .any(|&(p, q)| (p == *x && q == *y) || (p == *y && q == *x));
                    if !skip {
                        b.add_edge(*x, *y);
                    }
                }
            }
            g
        })
        .collect();
    let clauses: Vec<PdomClauseGadget> = inst
        .clauses
        .iter()
        .map(|clause| {
            let h = clause.id;
            let lits: Vec<VertexId> = clause
                .vars
                .iter()
                .map(|&i| vars[i].literal(clause.polarity))
                .collect();
            match clause.len() {
                3 => {
                    let z: Vec<VertexId> = clause
                        .vars
                        .iter()
                        .map(|&i| b.add_vertex(format!("z:{h}:{i}")))
                        .collect();
                    for (a, &za) in z.iter().enumerate() {
                        for &zb in &z[a + 1..] {
                            b.add_edge(za, zb);
                        }
                        // Named after literal a, adjacent to the other two.
                        for (idx, &lit) in lits.iter().enumerate() {
                            if idx != a {
                                b.add_edge(za, lit);
                            }
                        }
                    }
                    PdomClauseGadget::Triple {
                        z: [z[0], z[1], z[2]],
                    }
                }
                2 => {
                    let z0 = b.add_vertex(format!("z:{h}:{}", clause.vars[0]));
                    let z1 = b.add_vertex(format!("z:{h}:{}", clause.vars[1]));
                    let z_hh = b.add_vertex(format!("zz:{h}"));
                    let v_hh = b.add_vertex(format!("vhh:{h}"));
                    // K4 on the gadget minus (z_hh, v_hh).
                    b.add_edge(z0, z1);
                    b.add_edge(z0, z_hh);
                    b.add_edge(z0, v_hh);
                    b.add_edge(z1, z_hh);
                    b.add_edge(z1, v_hh);
                    // Externals: z named after one literal attaches the other.
                    b.add_edge(z0, lits[1]);
                    b.add_edge(z1, lits[0]);
                    b.add_edge(z_hh, lits[0]);
                    b.add_edge(z_hh, lits[1]);
                    b.add_edge(v_hh, lits[0]);
                    b.add_edge(v_hh, lits[1]);
                    PdomClauseGadget::Pair {
                        z: [z0, z1],
                        z_hh,
                        v_hh,
                    }
                }
                other => unreachable!("precheck admits only sizes 2 and 3, got {other}"),
            }
        })
        .collect();
    let graph = b.build().expect("gadget construction is simple and symmetric");
    let mut protected = VertexSet::empty(graph.vertex_count());
    for g in &vars {
        for p in g.primed() {
            protected.insert(p);
        }
    }
    for g in &clauses {
        for z in g.protected_vertices() {
            protected.insert(z);
        }
    }
    Ok(PdomReduction {
        graph,
        n: inst.n,
        vars,
        clauses,
        protected,
    })
}

impl DomReduction {
    pub fn protected_set(&self) -> &VertexSet {
        &self.protected
    }

    /// Per-variable necessity certificates: any dominating set must pick a
    /// member of each closed neighborhood of w_i, which is its K4.
    pub fn necessity_sets(&self) -> Vec<VertexSet> {
        let n = self.graph.vertex_count();
        self.vars
            .iter()
            .map(|g| VertexSet::from_iter(n, [g.v, g.vbar, g.u, g.w]))
            .collect()
    }
}

impl PdomReduction {
    pub fn protected_set(&self) -> &VertexSet {
        &self.protected
    }

    /// Necessity certificates: every power dominating set intersects each
    /// variable sextuple (else its primed trio is unreachable: each trio
    /// neighbor is adjacent to at least two trio members) and each clause
    /// gadget extended by its literal vertices (else the protected z's are
    /// unreachable for the same reason). These survive protected
    /// triangulation because the z and primed neighborhoods are fixed.
    pub fn necessity_sets(&self) -> Vec<VertexSet> {
        let n = self.graph.vertex_count();
        let mut out: Vec<VertexSet> = self
            .vars
            .iter()
            .map(|g| VertexSet::from_iter(n, g.all()))
            .collect();
        for gadget in &self.clauses {
            let mut members = gadget.all_vertices();
            match gadget {
                PdomClauseGadget::Triple { z } => {
                    // Literal vertices are the external neighbors of the z's.
                    for &zv in z {
                        for &nb in self.graph.neighbors(zv) {
                            if !members.contains(&nb) {
                                members.push(nb);
                            }
                        }
                    }
                }
                PdomClauseGadget::Pair { z_hh, .. } => {
                    for &nb in self.graph.neighbors(*z_hh) {
                        if !members.contains(&nb) {
                            members.push(nb);
                        }
                    }
                }
            }
            out.push(VertexSet::from_iter(n, members));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{layout_formula, Layout};
    use crate::workbench::u3_instance;

    fn inst(n: usize, clauses: Vec<Clause>) -> Pm3SatInstance {
        let layout = layout_formula(&clauses, n).expect("layoutable");
        Pm3SatInstance { n, clauses, layout }
    }

    fn clause(id: usize, pol: Polarity, vars: &[usize]) -> Clause {
        Clause::new(id, pol, vars.to_vec())
    }

    #[test]
    fn dom_counts() {
        let r = build_dom(&inst(1, vec![])).unwrap();
        assert_eq!(r.graph.vertex_count(), 4);
        assert_eq!(r.graph.edge_count(), 6);

        let r = build_dom(&inst(3, vec![clause(0, Polarity::Positive, &[0, 1, 2])])).unwrap();
        assert_eq!(r.graph.vertex_count(), 13);
        assert_eq!(r.graph.edge_count(), 21);

        let r = build_dom(&inst(2, vec![clause(0, Polarity::Positive, &[0, 1])])).unwrap();
        assert_eq!(r.graph.vertex_count(), 10);
        assert_eq!(r.graph.edge_count(), 17);
    }

    #[test]
    fn pdom_counts() {
        let r = build_pdom(&inst(1, vec![])).unwrap();
        assert_eq!(r.graph.vertex_count(), 6);
        assert_eq!(r.graph.edge_count(), 12);

        let r = build_pdom(&inst(3, vec![clause(0, Polarity::Positive, &[0, 1, 2])])).unwrap();
        assert_eq!(r.graph.vertex_count(), 21);
        assert_eq!(r.graph.edge_count(), 45);

        let r = build_pdom(&inst(2, vec![clause(0, Polarity::Positive, &[0, 1])])).unwrap();
        assert_eq!(r.graph.vertex_count(), 16);
        assert_eq!(r.graph.edge_count(), 35);
    }

    #[test]
    fn count_formulas_hold_for_u3() {
        let dom = build_dom(&u3_instance()).unwrap();
        assert_eq!(dom.graph.vertex_count(), 24);
        assert_eq!(dom.graph.edge_count(), 48);
        let pdom = build_pdom(&u3_instance()).unwrap();
        assert_eq!(pdom.graph.vertex_count(), 42);
        assert_eq!(pdom.graph.edge_count(), 102);
    }

    #[test]
    fn dom_degrees_and_protection() {
        let instance = inst(
            3,
            vec![
                clause(0, Polarity::Positive, &[0, 1, 2]),
                clause(1, Polarity::Negative, &[0, 1]),
            ],
        );
        let r = build_dom(&instance).unwrap();
        for g in &r.vars {
            assert_eq!(r.graph.degree(g.w), 3, "w has no neighbors outside its K4");
        }
        // z degree is the literal count, plus one when the helper exists.
        assert_eq!(r.graph.degree(r.clauses[0].z), 3);
        assert_eq!(r.graph.degree(r.clauses[1].z), 3);
        let vp = r.clauses[1].v_prime.unwrap();
        assert_eq!(r.graph.degree(vp), 3);
        assert!(r.clauses[0].v_prime.is_none());
        // z is adjacent exactly to the clause literals (plus the helper).
        let z0 = r.clauses[0].z;
        let mut expect = vec![r.vars[0].v, r.vars[1].v, r.vars[2].v];
        expect.sort_unstable();
        assert_eq!(r.graph.neighborhood_sorted(z0), expect);
        let z1 = r.clauses[1].z;
        let mut expect = vec![r.vars[0].vbar, r.vars[1].vbar, vp];
        expect.sort_unstable();
        assert_eq!(r.graph.neighborhood_sorted(z1), expect);
        // Z = all z plus all w.
        let expect: Vec<VertexId> = {
            let mut v: Vec<VertexId> = r.vars.iter().map(|g| g.w).collect();
            v.extend(r.clauses.iter().map(|g| g.z));
            v.sort_unstable();
            v
        };
        assert_eq!(r.protected_set().to_vec(), expect);
    }

    #[test]
    fn dom_w_neighborhoods_are_disjoint() {
        let r = build_dom(&u3_instance()).unwrap();
        let n = r.graph.vertex_count();
        let mut seen = VertexSet::empty(n);
        for g in &r.vars {
            let mut nbhd = VertexSet::from_iter(n, [g.w]);
            for &u in r.graph.neighbors(g.w) {
                nbhd.insert(u);
            }
            assert!(!nbhd.intersects(&seen), "closed neighborhoods of w overlap");
            seen.union_with(&nbhd);
        }
    }

    #[test]
    fn pdom_sextuple_is_octahedron_and_primed_degrees() {
        let r = build_pdom(&inst(1, vec![])).unwrap();
        let g = &r.vars[0];
        assert!(!r.graph.has_edge(g.v, g.v_prime));
        assert!(!r.graph.has_edge(g.vbar, g.vbar_prime));
        assert!(!r.graph.has_edge(g.u, g.u_prime));
        for x in g.all() {
            assert_eq!(r.graph.degree(x), 4);
        }
        assert_eq!(r.protected_set().to_vec(), {
            let mut p = g.primed().to_vec();
            p.sort_unstable();
            p
        });
    }

    #[test]
    fn pdom_clause_gadget_degrees_are_four() {
        let instance = inst(
            3,
            vec![
                clause(0, Polarity::Positive, &[0, 1, 2]),
                clause(1, Polarity::Negative, &[1, 2]),
            ],
        );
        let r = build_pdom(&instance).unwrap();
        for gadget in &r.clauses {
            for v in gadget.all_vertices() {
                assert_eq!(r.graph.degree(v), 4, "clause gadget vertex degree");
            }
        }
        // 2-clause wiring: K4 minus (z_hh, v_hh), externals as specified.
        if let PdomClauseGadget::Pair { z, z_hh, v_hh } = &r.clauses[1] {
            assert!(!r.graph.has_edge(*z_hh, *v_hh));
            let lit1 = r.vars[1].vbar;
            let lit2 = r.vars[2].vbar;
            assert!(r.graph.has_edge(z[0], lit2) && !r.graph.has_edge(z[0], lit1));
            assert!(r.graph.has_edge(z[1], lit1) && !r.graph.has_edge(z[1], lit2));
            for lit in [lit1, lit2] {
                assert!(r.graph.has_edge(*z_hh, lit));
                assert!(r.graph.has_edge(*v_hh, lit));
            }
        } else {
            panic!("clause 1 should be a pair gadget");
        }
    }

    #[test]
    fn pdom_trio_neighbors_see_two_members() {
        // Each neighbor of a primed trio / clause gadget core is adjacent to
        // at least two of its members, which blocks propagation into it.
        let r = build_pdom(&u3_instance()).unwrap();
        let check = |members: &[VertexId]| {
            let mut outside: Vec<VertexId> = Vec::new();
            for &m in members {
                for &nb in r.graph.neighbors(m) {
                    if !members.contains(&nb) && !outside.contains(&nb) {
                        outside.push(nb);
                    }
                }
            }
            for nb in outside {
                let count = r
                    .graph
                    .neighbors(nb)
                    .iter()
                    .filter(|x| members.contains(x))
                    .count();
                assert!(count >= 2, "neighbor {nb} sees only {count} members");
            }
        };
        for g in &r.vars {
            check(&g.primed());
        }
        for gadget in &r.clauses {
            check(&gadget.all_vertices());
        }
    }

    #[test]
    fn rejects_unvalidated_instances() {
        let bad = Pm3SatInstance {
            n: 2,
            clauses: vec![clause(0, Polarity::Positive, &[0, 1])],
            layout: Layout::empty(2),
        };
        assert!(matches!(build_dom(&bad), Err(BuildError::InvalidInstance(_))));
    }

    #[test]
    fn counts_match_formulas_on_random_instances() {
        use crate::instance::{generate, GenParams};
        for seed in 0..50 {
            let inst = generate(&GenParams::new(4, 4, seed)).unwrap();
            let (m2, m3) = inst.clause_profile();
            let dom = build_dom(&inst).unwrap();
            assert_eq!(dom.graph.vertex_count(), 4 * inst.n + m3 + 2 * m2);
            assert_eq!(dom.graph.edge_count(), 6 * inst.n + 3 * m3 + 5 * m2);
            let pdom = build_pdom(&inst).unwrap();
            assert_eq!(pdom.graph.vertex_count(), 6 * inst.n + 3 * m3 + 4 * m2);
            assert_eq!(pdom.graph.edge_count(), 12 * inst.n + 9 * m3 + 11 * m2);
        }
    }
}
