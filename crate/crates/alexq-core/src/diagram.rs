//! Link diagram data model: arcs, oriented crossing triples and the
//! component function.
//!
//! A crossing records `(over, under_right, under_left)`: the over-arc,
//! the under-arc on its right, and the under-arc on its left, looking
//! along the over-arc's orientation. The component function is the
//! quotient of arcs by the relation joining the two under-arcs at each
//! crossing; crossing-free arcs form their own components.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// One crossing, all fields arc indices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Crossing {
    pub over: usize,
    pub under_right: usize,
    pub under_left: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DiagramError {
    Parse { line: usize, msg: String },
    UnknownArc { name: String },
    DuplicateArc { name: String },
    /// An arc occurs more than twice in under positions.
    UnderOveruse { name: String },
    /// Explicit component indices contradict the under-arc relation.
    ComponentConflict { name: String },
    /// Explicit component indices are not a bijection onto 1..=mu.
    ComponentIndexing { msg: String },
    EmptyDiagram,
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::Parse { line, msg } => write!(f, "line {line}: {msg}"),
            DiagramError::UnknownArc { name } => write!(f, "crossing references undeclared arc {name}"),
            DiagramError::DuplicateArc { name } => write!(f, "arc {name} declared twice"),
            DiagramError::UnderOveruse { name } => {
                write!(f, "arc {name} occurs more than twice as an under-arc")
            }
            DiagramError::ComponentConflict { name } => {
                write!(f, "explicit component of arc {name} conflicts with the crossing relation")
            }
            DiagramError::ComponentIndexing { msg } => write!(f, "component indexing: {msg}"),
            DiagramError::EmptyDiagram => write!(f, "diagram has no arcs"),
        }
    }
}

/// Immutable link diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinkDiagram {
    arcs: Vec<String>,
    crossings: Vec<Crossing>,
    /// Arc index -> 0-based component index.
    kappa: Vec<usize>,
    num_components: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as the representative.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl LinkDiagram {
    /// Build and validate a diagram from arc names, crossing triples of
    /// arc names, and optional explicit 1-based component indices.
    pub fn from_parts(
        arcs: Vec<String>,
        crossings: Vec<[String; 3]>,
        explicit: &BTreeMap<String, usize>,
    ) -> Result<Self, DiagramError> {
        if arcs.is_empty() {
            return Err(DiagramError::EmptyDiagram);
        }
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, a) in arcs.iter().enumerate() {
            if index.insert(a.as_str(), i).is_some() {
                return Err(DiagramError::DuplicateArc { name: a.clone() });
            }
        }
        let mut resolved = Vec::with_capacity(crossings.len());
        for [o, ur, ul] in &crossings {
            let look = |name: &String| {
                index
                    .get(name.as_str())
                    .copied()
                    .ok_or_else(|| DiagramError::UnknownArc { name: name.clone() })
            };
            resolved.push(Crossing {
                over: look(o)?,
                under_right: look(ur)?,
                under_left: look(ul)?,
            });
        }
        let mut under_count = vec![0usize; arcs.len()];
        for c in &resolved {
            under_count[c.under_right] += 1;
            under_count[c.under_left] += 1;
        }
        for (i, &n) in under_count.iter().enumerate() {
            if n > 2 {
                return Err(DiagramError::UnderOveruse {
                    name: arcs[i].clone(),
                });
            }
        }
        let mut uf = UnionFind::new(arcs.len());
        for c in &resolved {
            uf.union(c.under_right, c.under_left);
        }
        // Class representatives in order of smallest member.
        let mut reps: Vec<usize> = Vec::new();
        let mut class_of_arc = vec![0usize; arcs.len()];
        for (i, slot) in class_of_arc.iter_mut().enumerate() {
            let r = uf.find(i);
            *slot = match reps.iter().position(|&x| x == r) {
                Some(k) => k,
                None => {
                    reps.push(r);
                    reps.len() - 1
                }
            };
        }
        let mu = reps.len();
        // Resolve component indices: explicit ones must be constant on
        // classes and pairwise distinct; the rest fill in by class order.
        let mut class_index: Vec<Option<usize>> = vec![None; mu];
        for (name, &comp) in explicit {
            let arc = *index
                .get(name.as_str())
                .ok_or_else(|| DiagramError::UnknownArc { name: name.clone() })?;
            if comp == 0 || comp > mu {
                return Err(DiagramError::ComponentIndexing {
                    msg: format!("component {comp} of arc {name} outside 1..={mu}"),
                });
            }
            let class = class_of_arc[arc];
            match class_index[class] {
                None => class_index[class] = Some(comp - 1),
                Some(existing) if existing == comp - 1 => {}
                Some(_) => {
                    return Err(DiagramError::ComponentConflict { name: name.clone() })
                }
            }
        }
        let mut used = vec![false; mu];
        for idx in class_index.iter().flatten() {
            if used[*idx] {
                return Err(DiagramError::ComponentIndexing {
                    msg: "two components share an explicit index".to_owned(),
                });
            }
            used[*idx] = true;
        }
        let mut next_free = 0usize;
        for slot in class_index.iter_mut() {
            if slot.is_none() {
                while used[next_free] {
                    next_free += 1;
                }
                used[next_free] = true;
                *slot = Some(next_free);
            }
        }
        let kappa: Vec<usize> = class_of_arc
            .iter()
            .map(|&c| class_index[c].unwrap())
            .collect();
        Ok(LinkDiagram {
            arcs,
            crossings: resolved,
            kappa,
            num_components: mu,
        })
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[String] {
        &self.arcs
    }

    pub fn arc_name(&self, i: usize) -> &str {
        &self.arcs[i]
    }

    pub fn arc_id(&self, name: &str) -> Option<usize> {
        self.arcs.iter().position(|a| a == name)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// 0-based component index of an arc.
    pub fn kappa(&self, arc: usize) -> usize {
        self.kappa[arc]
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    /// Number of under-arc occurrences of an arc across all crossings.
    pub fn under_count(&self, arc: usize) -> usize {
        self.crossings
            .iter()
            .map(|c| (c.under_right == arc) as usize + (c.under_left == arc) as usize)
            .sum()
    }

    /// Parse the native text format, one statement per line:
    /// `arc <id> [component]`, `crossing <over> <under_right> <under_left>`,
    /// `#` comments. PD code input (lines of `X[a,b,c,d]`) is detected
    /// and dispatched automatically.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with("X[") || line == "pd" || line.starts_with("pd ") {
                return Self::parse_pd(text);
            }
            break;
        }
        let mut arcs = Vec::new();
        let mut crossings = Vec::new();
        let mut explicit = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            let err = |msg: &str| DiagramError::Parse {
                line: lineno + 1,
                msg: msg.to_owned(),
            };
            match tok.next() {
                Some("arc") => {
                    let name = tok.next().ok_or_else(|| err("arc needs a name"))?;
                    if let Some(comp) = tok.next() {
                        let comp: usize = comp
                            .parse()
                            .map_err(|_| err("component must be a positive integer"))?;
                        if comp == 0 {
                            return Err(err("component indices are 1-based"));
                        }
                        explicit.insert(name.to_owned(), comp);
                    }
                    if tok.next().is_some() {
                        return Err(err("trailing tokens after arc statement"));
                    }
                    arcs.push(name.to_owned());
                }
                Some("crossing") => {
                    let o = tok.next().ok_or_else(|| err("crossing needs three arcs"))?;
                    let ur = tok.next().ok_or_else(|| err("crossing needs three arcs"))?;
                    let ul = tok.next().ok_or_else(|| err("crossing needs three arcs"))?;
                    if tok.next().is_some() {
                        return Err(err("trailing tokens after crossing statement"));
                    }
                    crossings.push([o.to_owned(), ur.to_owned(), ul.to_owned()]);
                }
                Some(other) => {
                    return Err(err(&format!("unknown statement {other:?}")));
                }
                None => unreachable!(),
            }
        }
        Self::from_parts(arcs, crossings, &explicit)
    }

    /// Serialize to the native format; `parse(serialize(d)) == d`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (i, a) in self.arcs.iter().enumerate() {
            out.push_str(&format!("arc {} {}\n", a, self.kappa[i] + 1));
        }
        for c in &self.crossings {
            out.push_str(&format!(
                "crossing {} {} {}\n",
                self.arcs[c.over], self.arcs[c.under_right], self.arcs[c.under_left]
            ));
        }
        out
    }

    /// Import a PD code: statements `X[a,b,c,d]` with edges numbered
    /// along each component, quadrants counterclockwise from the
    /// incoming under-edge. Edges glued across over-passes become arcs.
    pub fn parse_pd(text: &str) -> Result<Self, DiagramError> {
        let mut quads: Vec<[usize; 4]> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() || line == "pd" {
                continue;
            }
            let err = |msg: &str| DiagramError::Parse {
                line: lineno + 1,
                msg: msg.to_owned(),
            };
            for stmt in line.split_whitespace() {
                let stmt = if let Some(rest) = stmt.strip_prefix("pd") {
                    if rest.is_empty() {
                        continue;
                    }
                    rest
                } else {
                    stmt
                };
                let inner = stmt
                    .strip_prefix("X[")
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| err("expected X[a,b,c,d]"))?;
                let nums: Result<Vec<usize>, _> =
                    inner.split(',').map(|t| t.trim().parse::<usize>()).collect();
                let nums = nums.map_err(|_| err("edge labels must be positive integers"))?;
                if nums.len() != 4 || nums.contains(&0) {
                    return Err(err("expected four positive edge labels"));
                }
                quads.push([nums[0], nums[1], nums[2], nums[3]]);
            }
        }
        if quads.is_empty() {
            return Err(DiagramError::EmptyDiagram);
        }
        let max_edge = quads.iter().flatten().copied().max().unwrap();
        let mut seen = vec![0usize; max_edge + 1];
        for q in quads.iter().flatten() {
            seen[*q] += 1;
        }
        for (e, &n) in seen.iter().enumerate().skip(1) {
            if n != 2 {
                return Err(DiagramError::Parse {
                    line: 0,
                    msg: format!("edge {e} occurs {n} times, expected 2"),
                });
            }
        }
        // Glue edges across over-passes: at X[a,b,c,d] the over pair is
        // {b, d} and belongs to one arc.
        let mut uf = UnionFind::new(max_edge + 1);
        for &[_, b, _, d] in &quads {
            uf.union(b, d);
        }
        // Arc per glued class, named after its smallest edge.
        let mut arc_names: Vec<String> = Vec::new();
        let mut arc_of_edge: BTreeMap<usize, String> = BTreeMap::new();
        for e in 1..=max_edge {
            let name = format!("a{}", uf.find(e));
            if !arc_names.contains(&name) {
                arc_names.push(name.clone());
            }
            arc_of_edge.insert(e, name);
        }
        // Quadrants sit counterclockwise from the incoming under edge:
        // a south, b east, c north, d west; the under strand runs
        // south to north. Edge numbers increase along each component
        // (wrapping at the component's end), which orients the over
        // strand. When it runs west to east the incoming under edge is
        // on its right; east to west puts it on the left.
        let mut crossings = Vec::new();
        for &[a, b, c, d] in &quads {
            let west_to_east = if d == b + 1 {
                false // over runs b -> d, i.e. east to west
            } else if b == d + 1 {
                true // over runs d -> b, west to east
            } else {
                // Wrap-around at a component boundary: the larger label
                // is the incoming edge.
                d > b
            };
            let over = arc_of_edge[&b].clone();
            let (ur, ul) = if west_to_east {
                (arc_of_edge[&a].clone(), arc_of_edge[&c].clone())
            } else {
                (arc_of_edge[&c].clone(), arc_of_edge[&a].clone())
            };
            crossings.push([over, ur, ul]);
        }
        Self::from_parts(arc_names, crossings, &BTreeMap::new())
    }
}
