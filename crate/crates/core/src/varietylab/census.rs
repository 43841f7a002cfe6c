use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::VarietyError;
use crate::exactfield::{PrimeField, PrimeFieldElement};
use crate::linalg::Matrix;
use crate::pfaffian::SkewLinearFamily;
use crate::reptheory::Subspace;

/// Second Betti number of a K3 surface.
pub const WEIL_BETTI: u64 = 22;

const MAX_DIM: usize = 8;
const CACHE_MAGIC: &[u8; 8] = b"PFKCEN01";

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub samples: usize,
    pub seed: u64,
    pub lambda: Option<String>,
    pub cache_dir: Option<PathBuf>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            samples: 50,
            seed: 7,
            lambda: None,
            cache_dir: None,
        }
    }
}

/// A 2-plane in `V*`, stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Plane {
    pub u: Vec<u64>,
    pub v: Vec<u64>,
}

impl Plane {
    pub fn vectors(&self, field: PrimeField) -> [Vec<PrimeFieldElement>; 2] {
        let lift = |w: &[u64]| w.iter().map(|&c| field.elem(c as i64)).collect();
        [lift(&self.u), lift(&self.v)]
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct K3Census {
    pub p: u64,
    pub lambda: Option<String>,
    pub total: u64,
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    /// Number of distinct 2-planes met by corank-2 points.
    pub plane_count: u64,
    /// `n2 / (p+1)` when `n3 = 0` and the division is exact.
    pub surface_count: Option<u64>,
    pub weil_ok: Option<bool>,
    pub from_cache: bool,
    pub samples: Vec<Plane>,
    #[serde(skip)]
    pub planes: Vec<Plane>,
    #[serde(skip)]
    pub corank2_points: Vec<Vec<u64>>,
}

impl K3Census {
    /// JSON report `{p, lambda, n2, n3, surface_count, weil_ok, samples}`.
    pub fn report(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "lambda": self.lambda,
            "n1": self.n1,
            "n2": self.n2,
            "n3": self.n3,
            "plane_count": self.plane_count,
            "surface_count": self.surface_count,
            "weil_ok": self.weil_ok,
            "samples": self.samples,
        })
    }
}

struct Tables {
    p: u32,
    n: usize,
    m: usize,
    /// `t[i][k][j] = (B_i)_{kj}`
    t: Vec<[[u32; MAX_DIM]; MAX_DIM]>,
    inv: Vec<u32>,
}

impl Tables {
    fn corank(&self, u: &[u32; MAX_DIM]) -> usize {
        let p = self.p;
        let pp = p * p;
        let mut a = [[0u32; MAX_DIM]; MAX_DIM];
        for i in 0..self.m {
            let ti = &self.t[i];
            for j in 0..self.n {
                let mut s = 0u32;
                for k in 0..self.n {
                    s += u[k] * ti[k][j];
                }
                a[i][j] = s % p;
            }
        }
        let mut rank = 0;
        for col in 0..self.n {
            let Some(piv) = (rank..self.m).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let pinv = self.inv[a[rank][col] as usize];
            for r in rank + 1..self.m {
                if a[r][col] == 0 {
                    continue;
                }
                let f = a[r][col] * pinv % p;
                for c in col + 1..self.n {
                    a[r][c] = (a[r][c] + pp - f * a[rank][c]) % p;
                }
                a[r][col] = 0;
            }
            rank += 1;
        }
        self.n - rank
    }
}

#[derive(Default)]
struct Block {
    n1: u64,
    n2: u64,
    n3: u64,
    points: Vec<[u32; MAX_DIM]>,
}

/// Census of `P(V*)(GF(p))` by the corank of `B(u) = (ω_i(u, e_j))_{ij}`.
pub fn k3_census(fam: &SkewLinearFamily<PrimeFieldElement>, opts: &CensusOptions) -> Result<K3Census, VarietyError> {
    let field = fam.ctx().clone();
    let p = field.p();
    let n = fam.size();
    let m = fam.nvars();
    if n > MAX_DIM || m > MAX_DIM {
        return Err(VarietyError::TooManyVariables(n.max(m)));
    }
    if fam.has_lambda() {
        return Err(VarietyError::DimensionMismatch);
    }
    if p >= 1 << 13 {
        return Err(VarietyError::Unsupported(format!("census prime {p} too large")));
    }
    let key = family_key(fam);
    let cache_file = opts
        .cache_dir
        .as_ref()
        .map(|d| d.join(format!("k3-census-p{p}-{}.bin", &key[..16])));

    let cached = cache_file.as_deref().and_then(|f| read_cache(f, p, n));
    let from_cache = cached.is_some();
    let (n1, n2, n3, points) = match cached {
        Some(c) => c,
        None => {
            let c = enumerate(fam, n, m, p as u32);
            if let Some(f) = &cache_file {
                write_cache(f, p, n, &c)?;
            }
            c
        }
    };

    let planes: BTreeSet<Plane> = points.par_iter().map(|u| plane_through(fam, u)).collect();
    let planes: Vec<Plane> = planes.into_iter().collect();
    let surface_count = (n3 == 0 && n2 % (p + 1) == 0).then(|| n2 / (p + 1));
    let weil_ok = surface_count.map(|s| s.abs_diff(1 + p * p) <= WEIL_BETTI * p);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let amount = opts.samples.min(planes.len());
    let mut idx = rand::seq::index::sample(&mut rng, planes.len(), amount).into_vec();
    idx.sort_unstable();
    let samples = idx.iter().map(|&i| planes[i].clone()).collect();

    Ok(K3Census {
        p,
        lambda: opts.lambda.clone(),
        total: n1 + n2 + n3,
        n1,
        n2,
        n3,
        plane_count: planes.len() as u64,
        surface_count,
        weil_ok,
        from_cache,
        samples,
        planes,
        corank2_points: points,
    })
}

type Counts = (u64, u64, u64, Vec<Vec<u64>>);

fn enumerate(fam: &SkewLinearFamily<PrimeFieldElement>, n: usize, m: usize, p: u32) -> Counts {
    let t = fam
        .basis_matrices()
        .iter()
        .map(|b| {
            let mut a = [[0u32; MAX_DIM]; MAX_DIM];
            for k in 0..n {
                for j in 0..n {
                    a[k][j] = b[(k, j)].value() as u32;
                }
            }
            a
        })
        .collect();
    let mut inv = vec![0u32; p as usize];
    for (a, slot) in inv.iter_mut().enumerate().skip(1) {
        *slot = crate::exactfield::inv_mod(a as u64, p as u64) as u32;
    }
    let tables = Tables { p, n, m, t, inv };

    let mut total = Block::default();
    for chart in 0..n {
        // u_chart = 1, u_j = 0 for j > chart, free digits below
        let free = chart;
        let inner = free.min(3);
        let outer = free - inner;
        let block_len = (p as u64).pow(inner as u32);
        let blocks = (p as u64).pow(outer as u32);
        let results: Vec<Block> = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut u = [0u32; MAX_DIM];
                u[chart] = 1;
                let mut hi = b;
                for slot in u.iter_mut().take(free).skip(inner) {
                    *slot = (hi % p as u64) as u32;
                    hi /= p as u64;
                }
                let mut out = Block::default();
                for _ in 0..block_len {
                    match tables.corank(&u) {
                        0 | 1 => out.n1 += 1,
                        2 => {
                            out.n2 += 1;
                            out.points.push(u);
                        }
                        _ => out.n3 += 1,
                    }
                    for slot in u.iter_mut().take(inner) {
                        *slot += 1;
                        if *slot < p {
                            break;
                        }
                        *slot = 0;
                    }
                }
                out
            })
            .collect();
        for r in results {
            total.n1 += r.n1;
            total.n2 += r.n2;
            total.n3 += r.n3;
            total.points.extend(r.points);
        }
    }
    let points = total
        .points
        .iter()
        .map(|u| u[..n].iter().map(|&c| c as u64).collect())
        .collect();
    (total.n1, total.n2, total.n3, points)
}

fn plane_through(fam: &SkewLinearFamily<PrimeFieldElement>, u: &[u64]) -> Plane {
    let field = fam.ctx().clone();
    let n = fam.size();
    let uu: Vec<PrimeFieldElement> = u.iter().map(|&c| field.elem(c as i64)).collect();
    let rows: Vec<Vec<PrimeFieldElement>> = fam
        .basis_matrices()
        .iter()
        .map(|b| b.transpose().mul_vec(&uu))
        .collect();
    let k = Matrix::from_rows(rows).kernel();
    let s = Subspace::span(&k, n, &field);
    let flat = |w: &Vec<PrimeFieldElement>| w.iter().map(|c| c.value()).collect::<Vec<u64>>();
    Plane {
        u: flat(&s.basis()[0]),
        v: flat(&s.basis()[1]),
    }
}

fn family_key(fam: &SkewLinearFamily<PrimeFieldElement>) -> String {
    let mut h = Sha256::new();
    h.update(fam.ctx().p().to_le_bytes());
    h.update((fam.size() as u64).to_le_bytes());
    for b in fam.basis_matrices() {
        for c in b.entries() {
            h.update(c.value().to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

fn read_cache(path: &Path, p: u64, n: usize) -> Option<Counts> {
    let bytes = fs::read(path).ok()?;
    let (head, rest) = bytes.split_at_checked(8 + 8 * 6)?;
    if &head[..8] != CACHE_MAGIC {
        return None;
    }
    let word = |i: usize| u64::from_le_bytes(head[8 + 8 * i..16 + 8 * i].try_into().unwrap());
    if word(0) != p || word(1) != n as u64 {
        return None;
    }
    let (n1, n2, n3, count) = (word(2), word(3), word(4), word(5));
    if count != n2 || rest.len() as u64 != count * n as u64 * 2 {
        return None;
    }
    let points = rest
        .chunks_exact(2 * n)
        .map(|c| c.chunks_exact(2).map(|d| u16::from_le_bytes([d[0], d[1]]) as u64).collect())
        .collect();
    Some((n1, n2, n3, points))
}

fn write_cache(path: &Path, p: u64, n: usize, c: &Counts) -> Result<(), VarietyError> {
    let io = |e: std::io::Error| VarietyError::Cache(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let mut out = Vec::with_capacity(56 + c.3.len() * n * 2);
    out.extend_from_slice(CACHE_MAGIC);
    for w in [p, n as u64, c.0, c.1, c.2, c.3.len() as u64] {
        out.extend_from_slice(&w.to_le_bytes());
    }
    for u in &c.3 {
        for &x in u {
            out.extend_from_slice(&(x as u16).to_le_bytes());
        }
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, out).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}
