//! Quivers and admissible relation sets, with the JSON input format.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::BadInput(format!("duplicate vertex label {v:?}")));
            }
        }
        let index = |l: &str| -> Result<usize> {
            vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::BadInput(format!("unknown vertex {l:?}")))
        };
        let mut alabels = std::collections::HashSet::new();
        let arrows = arrows
            .into_iter()
            .map(|(label, from, to)| {
                if !alabels.insert(label.clone()) {
                    return Err(Error::BadInput(format!("duplicate arrow label {label:?}")));
                }
                Ok(Arrow { source: index(&from)?, target: index(&to)?, label })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Quiver { vertices, arrows })
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for a in &self.arrows {
                if a.source == v {
                    indeg[a.target] -= 1;
                    if indeg[a.target] == 0 {
                        queue.push(a.target);
                    }
                }
            }
        }
        seen == n
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|b| b)
    }
}

/// One path given by composable arrow indices (source to target, left to
/// right), with a coefficient.
#[derive(Clone, Debug)]
pub struct RelationTerm<F: Scalar> {
    pub arrows: Vec<usize>,
    pub coeff: F,
}

/// A formal linear combination of paths of length >= 2 sharing one source
/// and one target.
#[derive(Clone, Debug)]
pub struct Relation<F: Scalar> {
    pub terms: Vec<RelationTerm<F>>,
}

#[derive(Clone, Debug, Default)]
pub struct RelationSet<F: Scalar> {
    pub relations: Vec<Relation<F>>,
}

impl<F: Scalar> RelationSet<F> {
    pub fn empty() -> Self {
        RelationSet { relations: Vec::new() }
    }

    /// Admissibility: every term a composable path of length >= 2, and all
    /// terms of one relation share source and target.
    pub fn validate(&self, q: &Quiver) -> Result<()> {
        for rel in &self.relations {
            if rel.terms.is_empty() {
                return Err(Error::NonAdmissible { context: "empty relation".into() });
            }
            let mut st = None;
            for term in &rel.terms {
                if term.arrows.len() < 2 {
                    return Err(Error::NonAdmissible {
                        context: "relation contains a path of length < 2".into(),
                    });
                }
                for w in term.arrows.windows(2) {
                    if q.arrows[w[0]].target != q.arrows[w[1]].source {
                        return Err(Error::NonAdmissible {
                            context: "non-composable path in relation".into(),
                        });
                    }
                }
                let s = q.arrows[term.arrows[0]].source;
                let t = q.arrows[*term.arrows.last().unwrap()].target;
                match st {
                    None => st = Some((s, t)),
                    Some(prev) if prev != (s, t) => {
                        return Err(Error::NonAdmissible {
                            context: "relation mixes different source/target pairs".into(),
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// JSON input format:
// {"vertices":[...],
//  "arrows":[{"label":..,"from":..,"to":..}],
//  "relations":[[{"path":["a","b"],"coeff":"1"}, ...], ...]}
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct ArrowFile {
    label: String,
    from: String,
    to: String,
}

#[derive(Deserialize)]
struct TermFile {
    path: Vec<String>,
    coeff: String,
}

#[derive(Deserialize)]
struct QuiverFile {
    vertices: Vec<String>,
    arrows: Vec<ArrowFile>,
    #[serde(default)]
    relations: Vec<Vec<TermFile>>,
}

pub fn parse_quiver_json<F: Scalar>(text: &str) -> Result<(Quiver, RelationSet<F>)> {
    let file: QuiverFile =
        serde_json::from_str(text).map_err(|e| Error::BadInput(format!("bad quiver JSON: {e}")))?;
    let quiver = Quiver::new(
        file.vertices,
        file.arrows.into_iter().map(|a| (a.label, a.from, a.to)).collect(),
    )?;
    let mut relations = Vec::new();
    for rel in file.relations {
        let mut terms = Vec::new();
        for term in rel {
            let arrows = term
                .path
                .iter()
                .map(|l| {
                    quiver
                        .arrow_index(l)
                        .ok_or_else(|| Error::BadInput(format!("unknown arrow {l:?} in relation")))
                })
                .collect::<Result<Vec<_>>>()?;
            let coeff = F::from_ratio_str(&term.coeff)
                .map_err(|e| Error::BadInput(format!("bad coefficient: {e}")))?;
            terms.push(RelationTerm { arrows, coeff });
        }
        relations.push(Relation { terms });
    }
    let rels = RelationSet { relations };
    rels.validate(&quiver)?;
    Ok((quiver, rels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn parse_and_validate() {
        let text = r#"{
            "vertices": ["1","2","3"],
            "arrows": [{"label":"a","from":"1","to":"2"},{"label":"b","from":"2","to":"3"}],
            "relations": [[{"path":["a","b"],"coeff":"1"}]]
        }"#;
        let (q, r) = parse_quiver_json::<Q>(text).unwrap();
        assert!(q.is_acyclic());
        assert!(q.is_connected());
        assert_eq!(r.relations.len(), 1);
    }

    #[test]
    fn cycle_detected() {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "1".into()),
            ],
        )
        .unwrap();
        assert!(!q.is_acyclic());
    }

    #[test]
    fn short_relation_rejected() {
        let text = r#"{
            "vertices": ["1","2"],
            "arrows": [{"label":"a","from":"1","to":"2"}],
            "relations": [[{"path":["a"],"coeff":"1"}]]
        }"#;
        assert!(parse_quiver_json::<Q>(text).is_err());
    }
}
