use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{parse_err, Error, Result};
use crate::linalg::{rank, SparseVec};
use crate::models::Face;
use crate::scalar::int;

/// A finite abstract simplicial complex on vertices 0..vertex_count, closed
/// under taking faces. Faces are kept sorted by dimension, then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces: Vec<Face>,
    labels: Vec<i64>,
}

impl SimplicialComplex {
    /// Downward closure of the given faces. Vertices must be 0..m and all used.
    pub fn from_faces(maximal: &[Face]) -> Result<Self> {
        let mut set: BTreeSet<Face> = BTreeSet::new();
        for f in maximal {
            let mut f = f.clone();
            f.sort_unstable();
            if f.is_empty() || f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Domain(format!("invalid face {f:?}")));
            }
            if f.len() > 20 {
                return Err(Error::Domain("faces of dimension above 19 are not supported".into()));
            }
            for mask in 1u64..(1u64 << f.len()) {
                let sub: Face = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                set.insert(sub);
            }
        }
        let vertices: Vec<usize> = set.iter().filter(|f| f.len() == 1).map(|f| f[0]).collect();
        if vertices.is_empty() {
            return Err(Error::Domain("empty complex".into()));
        }
        if vertices.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::Domain("vertices must be numbered 0..m without gaps".into()));
        }
        let mut faces: Vec<Face> = set.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(SimplicialComplex {
            vertex_count: vertices.len(),
            labels: (0..vertices.len() as i64).collect(),
            faces,
        })
    }

    pub fn point() -> Self {
        Self::from_faces(&[vec![0]]).unwrap()
    }

    pub fn simplex(n: usize) -> Self {
        Self::from_faces(&[(0..=n).collect()]).unwrap()
    }

    /// The boundary of Δⁿ, n ≥ 1.
    pub fn simplex_boundary(n: usize) -> Self {
        let faces: Vec<Face> = (0..=n)
            .map(|j| (0..=n).filter(|&v| v != j).collect())
            .collect();
        Self::from_faces(&faces).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Original labels of the renumbered vertices.
    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn dimension(&self) -> usize {
        self.faces.last().map(|f| f.len() - 1).unwrap_or(0)
    }

    pub fn faces_of_dim(&self, p: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.len() == p + 1)
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.faces
            .binary_search_by(|f| f.len().cmp(&face.len()).then_with(|| f.as_slice().cmp(face)))
            .is_ok()
    }

    /// Whether generator names need separators (some vertex index ≥ 10).
    pub fn wide_names(&self) -> bool {
        self.vertex_count > 10
    }

    /// Connected components of the 1-skeleton, each as sorted vertices,
    /// ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in self.faces_of_dim(1) {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.vertex_count {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// The full subcomplex on `vertices`, renumbered in increasing order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let map: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let faces: Vec<Face> = self
            .faces
            .iter()
            .filter(|f| f.iter().all(|v| map.contains_key(v)))
            .map(|f| f.iter().map(|v| map[v]).collect())
            .collect();
        let mut k = Self::from_faces(&faces)?;
        k.labels = vertices.iter().map(|&v| self.labels[v]).collect();
        Ok(k)
    }

    /// Reduced rational Betti numbers b̃₀, …, b̃_dim.
    pub fn reduced_betti(&self) -> Vec<usize> {
        let index: BTreeMap<&Face, usize> = self.faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
        // rank of ∂_p : C_p → C_{p−1}, with ∂₀ the augmentation
        let rank_of = |p: usize| -> usize {
            let cols: Vec<SparseVec<usize>> = self
                .faces_of_dim(p)
                .map(|f| {
                    if p == 0 {
                        return [(usize::MAX, int(1))].into_iter().collect();
                    }
                    (0..f.len())
                        .map(|i| {
                            let mut g = f.clone();
                            g.remove(i);
                            (index[&g], int(if i % 2 == 0 { 1 } else { -1 }))
                        })
                        .collect()
                })
                .collect();
            rank(&cols)
        };
        let dim = self.dimension();
        let ranks: Vec<usize> = (0..=dim + 1).map(rank_of).collect();
        (0..=dim)
            .map(|p| self.faces_of_dim(p).count() - ranks[p] - ranks[p + 1])
            .collect()
    }

    /// Spanning tree of the component of `root` by breadth-first search,
    /// visiting neighbours in increasing order. Edges are (parent, child) in
    /// discovery order.
    pub fn maximal_tree(&self, root: usize) -> Vec<(usize, usize)> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for e in self.faces_of_dim(1) {
            adj[e[0]].push(e[1]);
            adj[e[1]].push(e[0]);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        let mut tree = Vec::new();
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    tree.push((v, w));
                    queue.push_back(w);
                }
            }
        }
        tree
    }
}

/// Parse a list of maximal faces, one per line, as whitespace-separated
/// integer vertex labels. `#` starts a comment. Labels are renumbered
/// 0..m in increasing order.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut raw: Vec<(usize, Vec<i64>)> = Vec::new();
    let mut seen: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let body = line.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let mut face = Vec::new();
        for tok in body.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| parse_err(lineno, format!("not a vertex label: {tok:?}")))?;
            face.push(v);
        }
        let mut sorted = face.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(parse_err(lineno, "repeated vertex in a face"));
        }
        if let Some(prev) = seen.insert(sorted.clone(), lineno) {
            return Err(parse_err(lineno, format!("duplicate face (first given on line {prev})")));
        }
        raw.push((lineno, sorted));
    }
    if raw.is_empty() {
        return Err(parse_err(0, "no faces given"));
    }
    let labels: Vec<i64> = raw
        .iter()
        .flat_map(|(_, f)| f.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let faces: Vec<Face> = raw
        .iter()
        .map(|(_, f)| f.iter().map(|l| index[l]).collect())
        .collect();
    let mut k = SimplicialComplex::from_faces(&faces)?;
    k.labels = labels;
    Ok(k)
}
