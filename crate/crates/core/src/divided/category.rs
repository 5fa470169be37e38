use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use super::tietze::{self, GroupPresentation, Letter, Simplified};
use super::{divided_set, DividedTuple};
use crate::garside::{GarsideStructure, NormalForm, NormalFormJson, SimpleId};
use crate::par::Execution;
use crate::presentation::{Budget, BudgetExceeded};
use crate::unionfind::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("internal error: {what} {tuple:?} is not in the expected divided set")]
    DanglingEndpoint { what: &'static str, tuple: Vec<u32> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("step {step} does not start at the current object")]
    NotComposable { step: usize },
    #[error("step {step} names unknown morphism {morphism}")]
    UnknownMorphism { step: usize, morphism: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Morphism {
    pub tuple: DividedTuple,
    pub source: usize,
    pub target: usize,
    /// Even-position entries all trivial: the identity of `source`.
    pub identity: bool,
}

/// `first` followed by `second` equals `composite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Relation {
    pub first: usize,
    pub second: usize,
    pub composite: usize,
}

/// A step along a morphism, forwards or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PathStep {
    pub morphism: usize,
    pub forward: bool,
}

impl PathStep {
    pub fn fwd(morphism: usize) -> Self {
        PathStep {
            morphism,
            forward: true,
        }
    }
}

/// Presentation of the category after dropping identities and trivial
/// relations, and eliminating loops that a relation defines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedPresentation {
    pub generators: Vec<usize>,
    /// Pairs of parallel paths (morphism ids, composed left to right).
    pub relations: Vec<(Vec<usize>, Vec<usize>)>,
    /// Loops removed, with the path that replaced them.
    pub eliminated: Vec<(usize, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopGenerator {
    pub morphism: usize,
    /// Tree path to the source, the morphism, then back along the tree.
    pub path: Vec<PathStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexGroupPresentation {
    pub base: usize,
    pub tree_edges: Vec<usize>,
    pub generators: Vec<LoopGenerator>,
    /// Words in `generators` (by index).
    pub relators: Vec<Vec<Letter>>,
    #[serde(skip)]
    pub collapse_images: Vec<NormalForm>,
}

impl VertexGroupPresentation {
    pub fn group_presentation(&self) -> GroupPresentation {
        GroupPresentation {
            generators: (0..self.generators.len()).collect(),
            relators: self.relators.clone(),
        }
    }

    pub fn simplify(&self) -> Simplified {
        tietze::simplify(&self.group_presentation())
    }

    pub fn image_of_word(&self, g: &GarsideStructure, w: &[Letter]) -> NormalForm {
        w.iter().fold(NormalForm::identity(), |acc, &(i, inv)| {
            let x = &self.collapse_images[i];
            if inv {
                g.multiply(&acc, &g.invert(x))
            } else {
                g.multiply(&acc, x)
            }
        })
    }

    /// Relators whose collapse image is not the identity.
    pub fn collapse_violations(&self, g: &GarsideStructure) -> Vec<usize> {
        (0..self.relators.len())
            .filter(|&k| !self.image_of_word(g, &self.relators[k]).is_identity())
            .collect()
    }
}

/// Outcome of simplifying a vertex group, with the surviving generator's
/// collapse image oriented to have positive length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerSummary {
    pub base: String,
    pub loop_generators: usize,
    pub relators: usize,
    pub generators_after: usize,
    pub relators_after: usize,
    pub cyclic: bool,
    pub conclusive: bool,
    pub generator: Option<String>,
    pub collapse: Option<NormalFormJson>,
    #[serde(skip)]
    pub collapse_nf: Option<NormalForm>,
}

#[derive(Clone, Debug)]
pub struct DividedCategory {
    pub p: usize,
    pub q: u64,
    pub objects: Vec<DividedTuple>,
    pub morphisms: Vec<Morphism>,
    pub relations: Vec<Relation>,
}

impl DividedCategory {
    /// Objects `D_p^q`, generators `D_{2p}^{2q}`, relations `D_{3p}^{3q}`.
    pub fn build(
        g: &GarsideStructure,
        p: usize,
        q: u64,
        budget: &Budget,
        exec: Execution,
    ) -> Result<Self, CategoryError> {
        assert!(p >= 1, "categories need p >= 1");
        let objects = divided_set(g, p, q, budget, exec)?;
        if objects.is_empty() {
            return Ok(DividedCategory {
                p,
                q,
                objects,
                morphisms: Vec::new(),
                relations: Vec::new(),
            });
        }
        let obj_index: HashMap<&DividedTuple, usize> =
            objects.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let find_obj = |t: DividedTuple| {
            obj_index
                .get(&t)
                .copied()
                .ok_or_else(|| CategoryError::DanglingEndpoint {
                    what: "endpoint",
                    tuple: t.entries.iter().map(|s| s.0).collect(),
                })
        };
        let mul = |a: SimpleId, b: SimpleId| g.mul(a, b).expect("consecutive entries stay simple");

        let mut morphisms = Vec::new();
        for b in divided_set(g, 2 * p, 2 * q, budget, exec)? {
            let e = &b.entries;
            let src = DividedTuple::new((0..p).map(|k| mul(e[2 * k], e[2 * k + 1])).collect());
            let tgt = DividedTuple::new(
                (0..p)
                    .map(|k| {
                        let next = if k + 1 == p {
                            g.phi(e[0])
                        } else {
                            e[2 * k + 2]
                        };
                        mul(e[2 * k + 1], next)
                    })
                    .collect(),
            );
            let identity = (0..p).all(|k| e[2 * k] == SimpleId::IDENTITY);
            morphisms.push(Morphism {
                source: find_obj(src)?,
                target: find_obj(tgt)?,
                identity,
                tuple: b,
            });
        }

        let mor_index: HashMap<&DividedTuple, usize> = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (&m.tuple, i))
            .collect();
        let find_mor = |t: DividedTuple| {
            mor_index
                .get(&t)
                .copied()
                .ok_or_else(|| CategoryError::DanglingEndpoint {
                    what: "relation morphism",
                    tuple: t.entries.iter().map(|s| s.0).collect(),
                })
        };
        let mut relations = Vec::new();
        for a in divided_set(g, 3 * p, 3 * q, budget, exec)? {
            let e = &a.entries;
            let wrap = |i: usize| {
                if i == 3 * p {
                    g.phi(e[0])
                } else {
                    e[i]
                }
            };
            let mut f = Vec::with_capacity(2 * p);
            let mut s = Vec::with_capacity(2 * p);
            let mut h = Vec::with_capacity(2 * p);
            for k in 0..p {
                f.push(e[3 * k]);
                f.push(mul(e[3 * k + 1], e[3 * k + 2]));
                s.push(e[3 * k + 1]);
                s.push(mul(e[3 * k + 2], wrap(3 * k + 3)));
                h.push(mul(e[3 * k], e[3 * k + 1]));
                h.push(e[3 * k + 2]);
            }
            relations.push(Relation {
                first: find_mor(DividedTuple::new(f))?,
                second: find_mor(DividedTuple::new(s))?,
                composite: find_mor(DividedTuple::new(h))?,
            });
        }
        relations.sort();
        relations.dedup();
        Ok(DividedCategory {
            p,
            q,
            objects,
            morphisms,
            relations,
        })
    }

    pub fn object_label(&self, g: &GarsideStructure, o: usize) -> String {
        g.simple_name(self.objects[o].entries[0])
    }

    pub fn morphism_label(&self, g: &GarsideStructure, m: usize) -> String {
        let e = &self.morphisms[m].tuple.entries;
        format!("({},{})", g.simple_name(e[0]), g.simple_name(e[1]))
    }

    /// Objects grouped by undirected connectivity, each group sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.objects.len());
        for m in &self.morphisms {
            uf.union(m.source, m.target);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for o in 0..self.objects.len() {
            groups.entry(uf.find(o)).or_default().push(o);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Collapse image of a path: product of first entries, inverted on
    /// backward steps.
    pub fn collapse(
        &self,
        g: &GarsideStructure,
        start: usize,
        path: &[PathStep],
    ) -> Result<NormalForm, PathError> {
        let mut at = start;
        let mut acc = NormalForm::identity();
        for (step, s) in path.iter().enumerate() {
            let m = self
                .morphisms
                .get(s.morphism)
                .ok_or(PathError::UnknownMorphism {
                    step,
                    morphism: s.morphism,
                })?;
            let x = g.from_simple(m.tuple.entries[0]);
            if s.forward {
                if m.source != at {
                    return Err(PathError::NotComposable { step });
                }
                acc = g.multiply(&acc, &x);
                at = m.target;
            } else {
                if m.target != at {
                    return Err(PathError::NotComposable { step });
                }
                acc = g.multiply(&acc, &g.invert(&x));
                at = m.source;
            }
        }
        Ok(acc)
    }

    /// Collapse of a composable forward path starting at its first source.
    pub fn collapse_forward(
        &self,
        g: &GarsideStructure,
        ids: &[usize],
    ) -> Result<NormalForm, PathError> {
        let Some(&first) = ids.first() else {
            return Ok(NormalForm::identity());
        };
        let start = self
            .morphisms
            .get(first)
            .ok_or(PathError::UnknownMorphism {
                step: 0,
                morphism: first,
            })?
            .source;
        let steps: Vec<PathStep> = ids.iter().map(|&m| PathStep::fwd(m)).collect();
        self.collapse(g, start, &steps)
    }

    /// Drop identities and trivial relations, then eliminate every
    /// non-identity loop `L` for which some relation reads `L = w` with `L`
    /// absent from `w`, substituting `w` for `L` everywhere else.
    pub fn reduced_presentation(&self) -> ReducedPresentation {
        let is_id = |m: usize| self.morphisms[m].identity;
        let strip =
            |w: &[usize]| -> Vec<usize> { w.iter().copied().filter(|&m| !is_id(m)).collect() };
        let mut gens: Vec<usize> = (0..self.morphisms.len()).filter(|&m| !is_id(m)).collect();
        let mut rels: Vec<(Vec<usize>, Vec<usize>)> = self
            .relations
            .iter()
            .map(|r| (strip(&[r.first, r.second]), strip(&[r.composite])))
            .collect();
        let mut eliminated: Vec<(usize, Vec<usize>)> = Vec::new();
        loop {
            rels.retain(|(l, r)| l != r);
            let found = rels.iter().enumerate().find_map(|(k, (l, r))| {
                let defines = |side: &[usize], other: &[usize]| {
                    if let [x] = side {
                        let m = &self.morphisms[*x];
                        if m.source == m.target && !other.contains(x) {
                            return Some(*x);
                        }
                    }
                    None
                };
                defines(r, l)
                    .map(|x| (k, x, l.clone()))
                    .or_else(|| defines(l, r).map(|x| (k, x, r.clone())))
            });
            let Some((k, x, by)) = found else { break };
            rels.remove(k);
            let sub = |w: &[usize]| -> Vec<usize> {
                w.iter()
                    .flat_map(|&m| if m == x { by.clone() } else { vec![m] })
                    .collect()
            };
            for (l, r) in rels.iter_mut() {
                *l = sub(l);
                *r = sub(r);
            }
            for (_, w) in eliminated.iter_mut() {
                *w = sub(w);
            }
            eliminated.push((x, by));
            gens.retain(|&m| m != x);
        }
        // orient each relation with the longer side first, then dedupe
        let mut seen = BTreeSet::new();
        let relations = rels
            .into_iter()
            .map(|(l, r)| if r.len() > l.len() { (r, l) } else { (l, r) })
            .filter(|rel| seen.insert(rel.clone()))
            .collect();
        ReducedPresentation {
            generators: gens,
            relations,
            eliminated,
        }
    }

    /// Contract a BFS spanning tree of `base`'s component (lowest morphism
    /// ids first) in the reduced presentation.
    pub fn vertex_group(&self, g: &GarsideStructure, base: usize) -> VertexGroupPresentation {
        let red = self.reduced_presentation();
        let mut parent: Vec<Option<PathStep>> = vec![None; self.objects.len()];
        let mut reached = vec![false; self.objects.len()];
        let mut tree = BTreeSet::new();
        let mut queue = VecDeque::from([base]);
        reached[base] = true;
        let gens_sorted: Vec<usize> = red.generators.clone();
        while let Some(o) = queue.pop_front() {
            for &m in &gens_sorted {
                let mo = &self.morphisms[m];
                let (next, step) = if mo.source == o && !reached[mo.target] {
                    (mo.target, PathStep::fwd(m))
                } else if mo.target == o && !reached[mo.source] {
                    (
                        mo.source,
                        PathStep {
                            morphism: m,
                            forward: false,
                        },
                    )
                } else {
                    continue;
                };
                reached[next] = true;
                parent[next] = Some(step);
                tree.insert(m);
                queue.push_back(next);
            }
        }
        // path base -> o along the tree
        let tree_path = |o: usize| -> Vec<PathStep> {
            let mut steps = Vec::new();
            let mut cur = o;
            while let Some(s) = parent[cur] {
                steps.push(s);
                let m = &self.morphisms[s.morphism];
                cur = if s.forward { m.source } else { m.target };
            }
            steps.reverse();
            steps
        };
        let back = |steps: Vec<PathStep>| -> Vec<PathStep> {
            steps
                .into_iter()
                .rev()
                .map(|s| PathStep {
                    morphism: s.morphism,
                    forward: !s.forward,
                })
                .collect()
        };

        let mut generators = Vec::new();
        let mut index_of = HashMap::new();
        for &m in &red.generators {
            let mo = &self.morphisms[m];
            if tree.contains(&m) || !reached[mo.source] {
                continue;
            }
            let mut path = tree_path(mo.source);
            path.push(PathStep::fwd(m));
            path.extend(back(tree_path(mo.target)));
            index_of.insert(m, generators.len());
            generators.push(LoopGenerator { morphism: m, path });
        }
        let word = |w: &[usize], inverse: bool| -> Vec<Letter> {
            let mut out: Vec<Letter> = w
                .iter()
                .filter_map(|m| index_of.get(m).map(|&i| (i, false)))
                .collect();
            if inverse {
                out = tietze::invert(&out);
            }
            out
        };
        let mut relators = Vec::new();
        for (l, r) in &red.relations {
            let first = l.first().or(r.first()).copied();
            if first.is_some_and(|m| !reached[self.morphisms[m].source]) {
                continue;
            }
            let mut rel = word(l, false);
            rel.extend(word(r, true));
            relators.push(rel);
        }
        let collapse_images = generators
            .iter()
            .map(|lg| {
                self.collapse(g, base, &lg.path)
                    .expect("loop paths compose")
            })
            .collect();
        VertexGroupPresentation {
            base,
            tree_edges: tree.into_iter().collect(),
            generators,
            relators,
            collapse_images,
        }
    }

    /// Simplify the vertex group at `base` and report the surviving
    /// generator's collapse image, oriented to positive length.
    pub fn centralizer(&self, g: &GarsideStructure, base: usize) -> CentralizerSummary {
        let v = self.vertex_group(g, base);
        let s = v.simplify();
        let gens = &s.presentation.generators;
        let (generator, collapse_nf) = if gens.len() == 1 {
            let lg = &v.generators[gens[0]];
            let mut img = v.collapse_images[gens[0]].clone();
            let mut label = self.path_label(g, &lg.path);
            if g.length(&img) < 0 {
                img = g.invert(&img);
                label = format!("({label})^-1");
            }
            (Some(label), Some(img))
        } else {
            (None, None)
        };
        CentralizerSummary {
            base: self.object_label(g, base),
            loop_generators: v.generators.len(),
            relators: v.relators.len(),
            generators_after: gens.len(),
            relators_after: s.presentation.relators.len(),
            cyclic: s.is_infinite_cyclic(),
            conclusive: s.conclusive,
            generator,
            collapse: collapse_nf.as_ref().map(|x| g.to_json(x)),
            collapse_nf,
        }
    }

    pub fn path_label(&self, g: &GarsideStructure, path: &[PathStep]) -> String {
        path.iter()
            .map(|s| {
                let l = self.morphism_label(g, s.morphism);
                if s.forward {
                    l
                } else {
                    format!("{l}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join("∘")
    }

    /// Relations of the reduced presentation as `lhs=rhs` label strings.
    pub fn relation_labels(&self, g: &GarsideStructure) -> Vec<String> {
        let side = |w: &[usize]| -> String {
            if w.is_empty() {
                "1".into()
            } else {
                w.iter().map(|&m| self.morphism_label(g, m)).collect()
            }
        };
        self.reduced_presentation()
            .relations
            .iter()
            .map(|(l, r)| format!("{}={}", side(l), side(r)))
            .collect()
    }

    pub fn to_json(&self, g: &GarsideStructure) -> CategoryJson {
        let red = self.reduced_presentation();
        CategoryJson {
            p: self.p,
            q: self.q,
            objects: (0..self.objects.len())
                .map(|o| ObjectJson {
                    id: o,
                    label: self.object_label(g, o),
                    tuple: self.objects[o].names(g),
                })
                .collect(),
            morphisms: (0..self.morphisms.len())
                .map(|m| MorphismJson {
                    id: m,
                    label: self.morphism_label(g, m),
                    tuple: self.morphisms[m].tuple.names(g),
                    source: self.morphisms[m].source,
                    target: self.morphisms[m].target,
                    identity: self.morphisms[m].identity,
                })
                .collect(),
            relations: self.relations.clone(),
            components: self.components(),
            reduced: ReducedJson {
                generators: red.generators.clone(),
                relations: self.relation_labels(g),
                eliminated: red
                    .eliminated
                    .iter()
                    .map(|(m, _)| self.morphism_label(g, *m))
                    .collect(),
            },
        }
    }

    /// Graphviz rendering of the reduced generators.
    pub fn to_dot(&self, g: &GarsideStructure) -> String {
        let mut s = format!("digraph C_{}_{} {{\n", self.p, self.q);
        for o in 0..self.objects.len() {
            s.push_str(&format!(
                "  o{o} [label=\"{}\"];\n",
                self.object_label(g, o)
            ));
        }
        for m in self.reduced_presentation().generators {
            let mo = &self.morphisms[m];
            s.push_str(&format!(
                "  o{} -> o{} [label=\"{}\"];\n",
                mo.source,
                mo.target,
                self.morphism_label(g, m)
            ));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObjectJson {
    pub id: usize,
    pub label: String,
    pub tuple: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphismJson {
    pub id: usize,
    pub label: String,
    pub tuple: Vec<String>,
    pub source: usize,
    pub target: usize,
    pub identity: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReducedJson {
    pub generators: Vec<usize>,
    pub relations: Vec<String>,
    pub eliminated: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CategoryJson {
    pub p: usize,
    pub q: u64,
    pub objects: Vec<ObjectJson>,
    pub morphisms: Vec<MorphismJson>,
    pub relations: Vec<Relation>,
    pub components: Vec<Vec<usize>>,
    pub reduced: ReducedJson,
}
