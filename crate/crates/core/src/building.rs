//! Simplices of the Bruhat–Tits building of `PGL_{d+1}(K)` in standard
//! position: representative systems `R_i` and the chart presentations
//! `O_K[X_0..X_d, 1/P_σ] / (∏ X_{d_i} - ϖ)`.

use serde_json::{json, Value};

use crate::base_rings::{FieldElem, Params, Poly, ResidueRing, ResidueRingElem, Ring};
use crate::error::{Error, Result};
use crate::simplex_units::{ui_family, Symbol, SymbolUnit};

/// Type `(e_0, ..., e_k)` of a simplex: the successive jumps of a lattice
/// chain `M_0 ⊂ ... ⊂ M_k` inside `ϖ^{-1} M_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplexType {
    d: usize,
    parts: Vec<usize>,
}

impl SimplexType {
    pub fn new(d: u32, parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) || parts.iter().sum::<usize>() != d as usize + 1 {
            return Err(Error::InvalidType(parts));
        }
        Ok(SimplexType { d: d as usize, parts })
    }

    pub fn vertex(d: u32) -> Self {
        SimplexType { d: d as usize, parts: vec![d as usize + 1] }
    }

    pub fn maximal(d: u32) -> Self {
        SimplexType { d: d as usize, parts: vec![1; d as usize + 1] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Number of blocks `k + 1`.
    pub fn blocks(&self) -> usize {
        self.parts.len()
    }

    /// `d_i = e_0 + ... + e_i - 1`.
    pub fn boundaries(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0usize, |acc, &e| {
                *acc += e;
                Some(*acc - 1)
            })
            .collect()
    }

    pub fn is_vertex(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn is_maximal(&self) -> bool {
        self.parts.iter().all(|&e| e == 1)
    }

    /// `|R_i| = q^{d+1-e_i} (q^{e_i} - 1) / (q - 1)`.
    pub fn block_size(&self, q: u64, i: usize) -> u64 {
        let e = self.parts[i] as u32;
        q.pow(self.d as u32 + 1 - e) * (q.pow(e) - 1) / (q - 1)
    }
}

/// An element of some `R_i`: residues `a_j` with the lifted vector
/// `(ã_0, ..., ã_{d_i}, ϖ ã_{d_i+1}, ..., ϖ ã_d)` at level 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representative {
    pub residues: Vec<FieldElem>,
    pub lifted: Vec<ResidueRingElem>,
    /// Coordinates above this index carry a factor `ϖ`.
    pub boundary: usize,
}

#[derive(Debug, Clone)]
pub struct SimplexPresentation {
    params: Params,
    simplex_type: SimplexType,
    ring: ResidueRing,
    blocks: Vec<Vec<Representative>>,
    charts: Option<Vec<Vec<Poly<ResidueRingElem>>>>,
}

/// Standard simplex of the given type with its representative systems and,
/// for the vertex, the maximal simplex and the type `(1, d)`, the chart
/// polynomials `P_a`.
pub fn standard_simplex(params: Params, simplex_type: &SimplexType) -> Result<SimplexPresentation> {
    if simplex_type.d != params.d as usize {
        return Err(Error::InvalidType(simplex_type.parts.clone()));
    }
    let ring = params.residue_ring(2)?;
    let field = ring.residue_field().clone();
    let q = field.order();
    let d = simplex_type.d;
    let bounds = simplex_type.boundaries();
    let pi = ring.uniformizer();
    let mut blocks = Vec::new();
    for (i, &hi) in bounds.iter().enumerate() {
        let lo = if i == 0 { 0 } else { bounds[i - 1] + 1 };
        let mut reps = Vec::new();
        for code in 0..(q as u64).pow(d as u32 + 1) {
            let residues: Vec<FieldElem> =
                (0..=d).map(|j| FieldElem(((code / (q as u64).pow(j as u32)) % q as u64) as u32)).collect();
            // the block (lo..=hi) must be nonzero with first nonzero entry 1
            match residues[lo..=hi].iter().find(|a| a.0 != 0) {
                Some(a) if a.0 == 1 => {}
                _ => continue,
            }
            let lifted = residues
                .iter()
                .enumerate()
                .map(|(j, &a)| {
                    let t = ring.teichmuller_lift(a);
                    if j > hi {
                        ring.mul(pi, t)
                    } else {
                        t
                    }
                })
                .collect();
            reps.push(Representative { residues, lifted, boundary: hi });
        }
        reps.sort_by(|a, b| a.residues.cmp(&b.residues));
        blocks.push(reps);
    }
    let mut pres = SimplexPresentation { params, simplex_type: simplex_type.clone(), ring, blocks, charts: None };
    pres.charts = pres.build_charts();
    Ok(pres)
}

impl SimplexPresentation {
    pub fn params(&self) -> Params {
        self.params
    }

    pub fn simplex_type(&self) -> &SimplexType {
        &self.simplex_type
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn blocks(&self) -> &[Vec<Representative>] {
        &self.blocks
    }

    pub fn representatives(&self, block: usize) -> &[Representative] {
        &self.blocks[block]
    }

    pub fn is_maximal(&self) -> bool {
        self.simplex_type.is_maximal()
    }

    /// Indices `d_i` of the variables whose product is `ϖ`.
    pub fn relation(&self) -> Vec<usize> {
        self.simplex_type.boundaries()
    }

    pub fn variable_names(&self) -> Vec<String> {
        (0..=self.simplex_type.d).map(|j| format!("X{j}")).collect()
    }

    /// Chart polynomial `P_a` in `X_0..X_d`, when the type is one of the
    /// explicit cases.
    pub fn chart(&self, block: usize, rep: usize) -> Option<&Poly<ResidueRingElem>> {
        self.charts.as_ref().map(|c| &c[block][rep])
    }

    fn build_charts(&self) -> Option<Vec<Vec<Poly<ResidueRingElem>>>> {
        let ring = &self.ring;
        let d = self.simplex_type.d;
        let n = d + 1;
        let teich = |a: FieldElem| ring.teichmuller_lift(a);
        let mono = |vars: &[usize], c: ResidueRingElem| {
            let mut exps = vec![0u32; n];
            for &v in vars {
                exps[v] += 1;
            }
            Poly::monomial(ring, exps, c)
        };
        let parts = self.simplex_type.parts();
        let build = |block: usize, rep: &Representative| -> Poly<ResidueRingElem> {
            let a = &rep.residues;
            let mut p = Poly::zero(n);
            if self.simplex_type.is_maximal() {
                // l_a / z_i with x_k = z_k / z_{k+1} (k < d) and x_d = ϖ z_d / z_0
                let i = block;
                p = p.add(ring, &mono(&[], ring.one()));
                for j in (0..n).filter(|&j| j != i) {
                    let path: Vec<usize> = (0..n).map(|s| (j + s) % n).take_while(|&k| k != i).collect();
                    p = p.add(ring, &mono(&path, teich(a[j])));
                }
            } else if self.simplex_type.is_vertex() || block == 1 {
                // l_a / z_d with X_j = z_j / z_d
                for j in 0..d {
                    p = p.add(ring, &mono(&[j], teich(a[j])));
                }
                p = p.add(ring, &mono(&[], teich(a[d])));
            } else {
                // type (1, d), block 0: l_a / z_0 with X_d = ϖ z_d / z_0
                p = p.add(ring, &mono(&[], ring.one()));
                for j in 1..d {
                    p = p.add(ring, &mono(&[d, j], teich(a[j])));
                }
                p = p.add(ring, &mono(&[d], teich(a[d])));
            }
            p
        };
        let explicit = self.simplex_type.is_maximal()
            || self.simplex_type.is_vertex()
            || (parts.len() == 2 && parts[0] == 1);
        if !explicit {
            return None;
        }
        Some(
            self.blocks
                .iter()
                .enumerate()
                .map(|(b, reps)| reps.iter().map(|r| build(b, r)).collect())
                .collect(),
        )
    }

    /// `∏_{a ∈ R_i} P_a` at level 2.
    pub fn chart_product(&self, block: usize) -> Option<Poly<ResidueRingElem>> {
        let charts = self.charts.as_ref()?;
        let n = self.simplex_type.d + 1;
        Some(charts[block].iter().fold(Poly::one(&self.ring, n), |acc, p| acc.mul(&self.ring, p)))
    }

    /// `∏_{a ∈ R_i} P_a` modulo `ϖ`, over the residue field.
    pub fn chart_product_mod_uniformizer(&self, block: usize) -> Option<Poly<FieldElem>> {
        let field = self.ring.residue_field();
        Some(self.chart_product(block)?.map_coeffs(field, |c| self.ring.residue(c)))
    }

    /// Display string of a representative, e.g. `(1,pi)`.
    pub fn format_representative(&self, rep: &Representative) -> String {
        let field = self.ring.residue_field();
        let parts: Vec<String> = rep
            .residues
            .iter()
            .enumerate()
            .map(|(j, &a)| {
                let s = field.format(a);
                if j <= rep.boundary || a.0 == 0 {
                    s
                } else if s == "1" {
                    "pi".into()
                } else if s.contains('+') {
                    format!("({s})pi")
                } else {
                    format!("{s}pi")
                }
            })
            .collect();
        format!("({})", parts.join(","))
    }

    pub fn symbol_name(&self, s: Symbol) -> String {
        match s {
            Symbol::X(j) => format!("x{j}"),
            Symbol::P { block, rep } => format!("P{}", self.format_representative(&self.blocks[block][rep])),
        }
    }

    pub fn format_unit(&self, u: &SymbolUnit) -> String {
        u.format(|s| self.symbol_name(s))
    }

    fn relation_text(&self) -> String {
        let lhs: Vec<String> = self.relation().iter().map(|j| format!("X{j}")).collect();
        format!("{} = pi", lhs.join("*"))
    }

    pub fn to_text(&self) -> String {
        let q = self.params.q();
        let names = self.variable_names();
        let fmt = |c: ResidueRingElem| self.ring.format(c);
        let mut out = String::new();
        let type_str: Vec<String> = self.simplex_type.parts.iter().map(|e| e.to_string()).collect();
        out.push_str(&format!("simplex of type ({}) for q = {q}, d = {}\n", type_str.join(","), self.params.d));
        out.push_str(&format!("generators: {}\n", names.join(", ")));
        out.push_str(&format!("relation: {}\n", self.relation_text()));
        for (i, reps) in self.blocks.iter().enumerate() {
            out.push_str(&format!("R_{i} ({} elements):\n", reps.len()));
            for (r, rep) in reps.iter().enumerate() {
                match self.chart(i, r) {
                    Some(p) => out.push_str(&format!(
                        "  {}  P = {}\n",
                        self.format_representative(rep),
                        p.format(&names, fmt)
                    )),
                    None => out.push_str(&format!("  {}\n", self.format_representative(rep))),
                }
            }
        }
        if self.simplex_type.is_vertex() && self.charts.is_some() {
            let field = self.ring.residue_field();
            let prod = self.chart_product_mod_uniformizer(0).unwrap();
            let d = self.simplex_type.d;
            out.push_str(&format!(
                "eliminating X{d} = pi: O_K[{}, 1/P] with P = {} mod pi\n",
                names[..d].join(", "),
                prod.format(&names, |c| field.format(c))
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let names = self.variable_names();
        let fmt = |c: ResidueRingElem| self.ring.format(c);
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, reps)| {
                let reps: Vec<Value> = reps
                    .iter()
                    .enumerate()
                    .map(|(r, rep)| {
                        let vector: Vec<String> = rep.lifted.iter().map(|&x| self.ring.format(x)).collect();
                        json!({
                            "name": self.format_representative(rep),
                            "vector": vector,
                            "chart": self.chart(i, r).map(|p| p.format(&names, fmt)),
                        })
                    })
                    .collect();
                json!({ "index": i.to_string(), "count": reps.len().to_string(), "representatives": reps })
            })
            .collect();
        json!({
            "type": self.simplex_type.parts.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "q": self.params.q().to_string(),
            "d": self.params.d.to_string(),
            "generators": names,
            "relation": self.relation_text(),
            "blocks": blocks,
        })
    }
}

/// One relation `y_i^q = u_i · x_{d-i} · y_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringRelation {
    pub index: usize,
    pub power: u64,
    pub unit: SymbolUnit,
    pub x_index: usize,
    pub next: usize,
}

/// After eliminating all other generators: `y_k^{q^{d+1}} = c_k · y_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminatedRelation {
    pub generator: usize,
    pub power: u64,
    pub coefficient: SymbolUnit,
}

#[derive(Debug, Clone)]
pub struct CoveringPresentation {
    pub relations: Vec<CoveringRelation>,
    pub eliminated: Vec<EliminatedRelation>,
}

/// Generators `y_0..y_d` and relations `y_i^q = u_i x_{d-i} y_{i+1}` of the
/// `Π_D`-torsion over a maximal simplex.
pub fn covering_presentation(pres: &SimplexPresentation) -> Result<CoveringPresentation> {
    let u = ui_family(pres)?;
    let d = pres.simplex_type.d;
    let n = d + 1;
    let q = pres.params.q();
    let relations: Vec<CoveringRelation> = (0..n)
        .map(|i| CoveringRelation { index: i, power: q, unit: u.units()[i].clone(), x_index: d - i, next: (i + 1) % n })
        .collect();
    let coeffs: Vec<SymbolUnit> =
        relations.iter().map(|r| r.unit.mul(&SymbolUnit::symbol(Symbol::X(r.x_index)))).collect();
    let eliminated = (0..n)
        .map(|k| {
            // y_k^{q^{d+1}} = ∏_m v_{k+m}^{q^{d-m}} · y_k
            let mut c = SymbolUnit::identity();
            for m in 0..n {
                c = c.mul(&coeffs[(k + m) % n].pow(q.pow((d - m) as u32) as i64));
            }
            EliminatedRelation { generator: k, power: q.pow(n as u32), coefficient: c.normalized(d) }
        })
        .collect();
    Ok(CoveringPresentation { relations, eliminated })
}

impl CoveringPresentation {
    pub fn to_text(&self, pres: &SimplexPresentation) -> String {
        let mut out = String::new();
        for r in &self.relations {
            out.push_str(&format!("y{}^{} = u{} * x{} * y{}\n", r.index, r.power, r.index, r.x_index, r.next));
        }
        for r in &self.relations {
            out.push_str(&format!("u{} = {}\n", r.index, pres.format_unit(&r.unit)));
        }
        for e in &self.eliminated {
            out.push_str(&format!("y{}^{} = {} * y{}\n", e.generator, e.power, pres.format_unit(&e.coefficient), e.generator));
        }
        out
    }

    pub fn to_json(&self, pres: &SimplexPresentation) -> Value {
        let rels: Vec<Value> = self
            .relations
            .iter()
            .map(|r| {
                json!({
                    "lhs": format!("y{}^{}", r.index, r.power),
                    "rhs": format!("u{} * x{} * y{}", r.index, r.x_index, r.next),
                    "unit": r.unit.to_json(|s| pres.symbol_name(s)),
                })
            })
            .collect();
        let elim: Vec<Value> = self
            .eliminated
            .iter()
            .map(|e| {
                json!({
                    "generator": format!("y{}", e.generator),
                    "power": e.power.to_string(),
                    "coefficient": e.coefficient.to_json(|s| pres.symbol_name(s)),
                })
            })
            .collect();
        json!({ "relations": rels, "eliminated": elim })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32, f: u32, d: u32) -> Params {
        Params::unramified(p, f, d).unwrap()
    }

    #[test]
    fn type_validation() {
        assert!(SimplexType::new(2, vec![1, 2]).is_ok());
        assert_eq!(SimplexType::new(2, vec![1, 1]), Err(Error::InvalidType(vec![1, 1])));
        assert_eq!(SimplexType::new(2, vec![1, 2]).unwrap().boundaries(), vec![0, 2]);
        assert!(SimplexType::maximal(3).is_maximal());
    }

    #[test]
    fn maximal_d1_q2() {
        let pres = standard_simplex(params(2, 1, 1), &SimplexType::maximal(1)).unwrap();
        let names: Vec<Vec<String>> = pres
            .blocks()
            .iter()
            .map(|b| b.iter().map(|r| pres.format_representative(r)).collect())
            .collect();
        assert_eq!(names, vec![vec!["(1,0)", "(1,pi)"], vec!["(0,1)", "(1,1)"]]);
        assert_eq!(pres.relation(), vec![0, 1]);
        let field = pres.ring().residue_field();
        let vars = pres.variable_names();
        let fmt = |c: FieldElem| field.format(c);
        // 1 - X^{q-1} mod 2
        assert_eq!(pres.chart_product_mod_uniformizer(0).unwrap().format(&vars, fmt), "X1 + 1");
        assert_eq!(pres.chart_product_mod_uniformizer(1).unwrap().format(&vars, fmt), "X0 + 1");
    }

    #[test]
    fn block_counts() {
        for (p, f, d) in [(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 2), (3, 1, 2)] {
            let prm = params(p, f, d);
            let q = prm.q();
            let types = [SimplexType::vertex(d), SimplexType::maximal(d), SimplexType::new(d, vec![1, d as usize]).unwrap()];
            for t in types {
                let pres = standard_simplex(prm, &t).unwrap();
                for i in 0..t.blocks() {
                    assert_eq!(pres.representatives(i).len() as u64, t.block_size(q, i));
                }
            }
            let max = standard_simplex(prm, &SimplexType::maximal(d)).unwrap();
            assert!(max.blocks().iter().all(|b| b.len() as u64 == q.pow(d)));
            let vertex = standard_simplex(prm, &SimplexType::vertex(d)).unwrap();
            assert_eq!(vertex.representatives(0).len() as u64, prm.component_degree());
        }
        assert!(SimplexType::maximal(2).block_size(2, 0) == 4);
    }

    #[test]
    fn maximal_charts_have_constant_one() {
        for (p, f, d) in [(2, 1, 2), (3, 1, 2), (2, 2, 1)] {
            let pres = standard_simplex(params(p, f, d), &SimplexType::maximal(d)).unwrap();
            let ring = pres.ring();
            for (i, b) in pres.blocks().iter().enumerate() {
                for r in 0..b.len() {
                    let c = pres.chart(i, r).unwrap();
                    assert_eq!(c.coeff(ring, &vec![0; d as usize + 1]), ring.one());
                }
            }
        }
    }

    #[test]
    fn d1_products_are_one_minus_power() {
        for (p, f) in [(3, 1), (5, 1), (2, 2)] {
            let prm = params(p, f, 1);
            let q = prm.q();
            let pres = standard_simplex(prm, &SimplexType::maximal(1)).unwrap();
            let field = pres.ring().residue_field();
            for i in 0..2 {
                let var = 1 - i;
                let mut exps = vec![0u32; 2];
                exps[var] = (q - 1) as u32;
                let expected = Poly::one(field, 2).sub(field, &Poly::monomial(field, exps, field.one()));
                assert_eq!(pres.chart_product_mod_uniformizer(i).unwrap(), expected);
            }
            // for odd q the identity holds at level 2 since -1 is a Teichmüller lift
            if p % 2 == 1 {
                let ring = pres.ring();
                let mut exps = vec![0u32; 2];
                exps[1] = (q - 1) as u32;
                let expected = Poly::one(ring, 2).sub(ring, &Poly::monomial(ring, exps, ring.one()));
                assert_eq!(pres.chart_product(0).unwrap(), expected);
            }
        }
    }

    #[test]
    fn vertex_d1_is_x_minus_xq() {
        for (p, f) in [(2, 1), (3, 1), (2, 2)] {
            let prm = params(p, f, 1);
            let q = prm.q();
            let pres = standard_simplex(prm, &SimplexType::vertex(1)).unwrap();
            let field = pres.ring().residue_field();
            let x = Poly::var(field, 2, 0);
            let expected = x.pow(field, q).sub(field, &x);
            assert_eq!(pres.chart_product_mod_uniformizer(0).unwrap(), expected);
            assert_eq!(pres.relation(), vec![1]);
        }
    }

    #[test]
    fn covering_presentation_shapes() {
        let pres = standard_simplex(params(2, 1, 1), &SimplexType::maximal(1)).unwrap();
        let x = covering_presentation(&pres).unwrap();
        assert_eq!(x.relations.len(), 2);
        assert_eq!((x.relations[0].power, x.relations[0].x_index, x.relations[0].next), (2, 1, 1));
        assert_eq!((x.relations[1].power, x.relations[1].x_index, x.relations[1].next), (2, 0, 0));
        let pres = standard_simplex(params(3, 1, 2), &SimplexType::maximal(2)).unwrap();
        let x = covering_presentation(&pres).unwrap();
        assert_eq!(x.relations.len(), 3);
        assert!(x.relations.iter().all(|r| r.power == 3));
        let vertex = standard_simplex(params(3, 1, 2), &SimplexType::vertex(2)).unwrap();
        assert_eq!(covering_presentation(&vertex).unwrap_err(), Error::NotMaximal);
    }

    #[test]
    fn eliminated_relation_for_y1_has_single_uniformizer() {
        for (p, f, d) in [(2, 1, 1), (3, 1, 1), (2, 1, 2), (3, 1, 2)] {
            let prm = params(p, f, d);
            let pres = standard_simplex(prm, &SimplexType::maximal(d)).unwrap();
            let x = covering_presentation(&pres).unwrap();
            let q = prm.q() as i64;
            let e = &x.eliminated[1];
            assert_eq!(e.power, prm.q().pow(d + 1));
            assert_eq!(e.coefficient.pi_exponent(), 1);
            for j in 0..d as usize {
                assert_eq!(e.coefficient.exponent(Symbol::X(j)), q.pow(j as u32 + 1) - 1);
            }
            // y_0 picks up x_d with exponent q^d
            assert_eq!(x.eliminated[0].coefficient.pi_exponent(), q.pow(d));
        }
    }
}
