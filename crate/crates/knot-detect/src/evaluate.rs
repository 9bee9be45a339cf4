//! Parallel evaluation of invariants over a corpus, with an on-disk cache.
//!
//! Values are canonical strings. Two knots share a value exactly when their
//! strings are equal. A tuple invariant `X+Y` joins the component strings with
//! [`TUPLE_SEPARATOR`].

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use knot_detect_core::invariants::{
    alexander_with, dbc_homology, determinant, homflypt_az_with, jones_with, signature, sl_n_with, Caps, InvariantError,
};
use knot_detect_core::khovanov::{khovanov_f2_with, poincare_poly, specialize_t};
use knot_detect_core::LinkDiagram;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::corpus::KnotRecord;

pub const TUPLE_SEPARATOR: &str = " | ";

/// Conventions that determine every canonical value string. Cached values are
/// filed under a hash of this text, so changing it invalidates the cache.
pub const CONVENTIONS: &str = "\
bracket: <O>=-A^2-A^-2, A-smoothing of X(a,b,c,d) joins a-b and c-d
jones: (-A)^(-3w)<D>, t=A^-4
homflypt: a P(L+) - a^-1 P(L-) = z P(L0), P(unknot)=1, variables (a,z)
sl3: a=q^3, z=q-q^-1
alexander: symmetric, value 1 at t=1
signature: positive trefoil has -2
dbc: invariant factors of H1 of the double branched cover, units dropped
khovanov-f2: sum dim q^j t^i over F2
kt1: khovanov-f2 at t=1
crossing sign: positive when the over strand runs d to b in X(a,b,c,d)
";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariant {
    Jones,
    Alexander,
    Homflypt,
    Sl3,
    Determinant,
    Signature,
    Dbc,
    KhovanovF2,
    Kt1,
}

impl Invariant {
    pub const ALL: [Invariant; 9] = [
        Invariant::Jones,
        Invariant::Alexander,
        Invariant::Homflypt,
        Invariant::Sl3,
        Invariant::Determinant,
        Invariant::Signature,
        Invariant::Dbc,
        Invariant::KhovanovF2,
        Invariant::Kt1,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Invariant::Jones => "jones",
            Invariant::Alexander => "alexander",
            Invariant::Homflypt => "homflypt",
            Invariant::Sl3 => "sl3",
            Invariant::Determinant => "det",
            Invariant::Signature => "signature",
            Invariant::Dbc => "dbc",
            Invariant::KhovanovF2 => "khovanov-f2",
            Invariant::Kt1 => "kt1",
        }
    }

    /// The canonical value string of `d`.
    pub fn compute(self, d: &LinkDiagram, caps: &Caps) -> Result<String, InvariantError> {
        Ok(match self {
            Invariant::Jones => jones_with(d, caps)?.canonical_string(),
            Invariant::Alexander => alexander_with(d, caps)?.canonical_string(),
            Invariant::Homflypt => homflypt_az_with(d, caps)?.canonical_string(),
            Invariant::Sl3 => sl_n_with(d, 3, caps)?.canonical_string(),
            Invariant::Determinant => goeritz_checked(d, caps, determinant)?.to_string(),
            Invariant::Signature => goeritz_checked(d, caps, signature)?.to_string(),
            Invariant::Dbc => {
                let factors = goeritz_checked(d, caps, dbc_homology)?;
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(",")
                }
            }
            Invariant::KhovanovF2 => poincare_poly(&khovanov_f2_with(d, caps)?).canonical_string(),
            Invariant::Kt1 => specialize_t(&khovanov_f2_with(d, caps)?, 1).canonical_string(),
        })
    }
}

fn goeritz_checked<T>(
    d: &LinkDiagram,
    caps: &Caps,
    f: impl Fn(&LinkDiagram) -> Result<T, InvariantError>,
) -> Result<T, InvariantError> {
    if d.n_crossings() > caps.bracket {
        return Err(InvariantError::CrossingCapExceeded { crossings: d.n_crossings(), cap: caps.bracket });
    }
    f(d)
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown invariant {0:?}")]
pub struct UnknownInvariant(pub String);

impl FromStr for Invariant {
    type Err = UnknownInvariant;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Invariant::ALL.into_iter().find(|i| i.id() == s).ok_or_else(|| UnknownInvariant(s.to_string()))
    }
}

/// A single invariant or a tuple `X+Y+…` of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantId(Vec<Invariant>);

impl InvariantId {
    pub fn single(i: Invariant) -> Self {
        InvariantId(vec![i])
    }

    pub fn parts(&self) -> &[Invariant] {
        &self.0
    }
}

impl FromStr for InvariantId {
    type Err = UnknownInvariant;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s.split('+').map(|p| p.trim().parse()).collect::<Result<Vec<_>, _>>()?;
        if parts.is_empty() {
            return Err(UnknownInvariant(s.to_string()));
        }
        Ok(InvariantId(parts))
    }
}

impl fmt::Display for InvariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<&str> = self.0.iter().map(|i| i.id()).collect();
        f.write_str(&ids.join("+"))
    }
}

#[derive(Debug, Clone, Default)]
pub struct EvalOptions {
    pub caps: Caps,
    /// Replace each value by the smaller of the values of the knot and its
    /// mirror image.
    pub fold_mirror: bool,
    /// Worker threads; 0 uses one per core.
    pub jobs: usize,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("cannot build worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("cache {path}: {source}")]
    Cache { path: String, source: std::io::Error },
}

/// Values and failures by knot name. Every evaluated record appears in
/// exactly one of the two maps.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Evaluation {
    pub invariant: String,
    pub values: BTreeMap<String, String>,
    pub failures: BTreeMap<String, String>,
}

pub fn evaluate(records: &[KnotRecord], id: &InvariantId, opts: &EvalOptions) -> Result<Evaluation, EvalError> {
    let cache = opts.cache_dir.as_deref().map(Cache::new);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build()?;
    let results: Vec<(String, Result<String, String>)> = pool.install(|| {
        records
            .par_iter()
            .map(|r| evaluate_one(r, id, opts, cache.as_ref()).map(|v| (r.name.clone(), v)))
            .collect::<Result<_, _>>()
    })?;
    let mut out = Evaluation { invariant: id.to_string(), ..Default::default() };
    for (name, v) in results {
        match v {
            Ok(v) => out.values.insert(name, v),
            Err(e) => out.failures.insert(name, e),
        };
    }
    Ok(out)
}

fn evaluate_one(
    r: &KnotRecord,
    id: &InvariantId,
    opts: &EvalOptions,
    cache: Option<&Cache>,
) -> Result<Result<String, String>, EvalError> {
    let tuple = |mirrored: bool| -> Result<Result<String, String>, EvalError> {
        let mut parts = Vec::with_capacity(id.parts().len());
        for &inv in id.parts() {
            match atom(r, inv, mirrored, &opts.caps, cache)? {
                Ok(v) => parts.push(v),
                Err(e) => return Ok(Err(format!("{inv}: {e}"))),
            }
        }
        Ok(Ok(parts.join(TUPLE_SEPARATOR)))
    };
    let value = tuple(false)?;
    if !opts.fold_mirror {
        return Ok(value);
    }
    Ok(match (value, tuple(true)?) {
        (Ok(a), Ok(b)) => Ok(a.min(b)),
        (Err(e), _) | (_, Err(e)) => Err(e),
    })
}

fn atom(
    r: &KnotRecord,
    inv: Invariant,
    mirrored: bool,
    caps: &Caps,
    cache: Option<&Cache>,
) -> Result<Result<String, InvariantError>, EvalError> {
    let key = if mirrored { format!("{}.mirror", r.name) } else { r.name.clone() };
    if let Some(v) = cache.map(|c| c.get(inv, &key)).transpose()?.flatten() {
        return Ok(Ok(v));
    }
    let value = if mirrored { inv.compute(&r.diagram().mirror(), caps) } else { inv.compute(r.diagram(), caps) };
    if let (Some(c), Ok(v)) = (cache, &value) {
        c.put(inv, &key, v)?;
    }
    Ok(value)
}

/// One file per (invariant, knot) below `root/<conventions hash>/<invariant>/`.
struct Cache {
    dir: PathBuf,
}

impl Cache {
    fn new(root: &Path) -> Self {
        let digest = Sha256::digest(CONVENTIONS.as_bytes());
        let hash: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        Cache { dir: root.join(hash) }
    }

    fn path(&self, inv: Invariant, key: &str) -> PathBuf {
        let file: String =
            key.chars().map(|c| if c.is_ascii_alphanumeric() || "._-".contains(c) { c } else { '_' }).collect();
        self.dir.join(inv.id()).join(file)
    }

    fn get(&self, inv: Invariant, key: &str) -> Result<Option<String>, EvalError> {
        let path = self.path(inv, key);
        match std::fs::read_to_string(&path) {
            Ok(v) => Ok(Some(v)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(source) => Err(EvalError::Cache { path: path.display().to_string(), source }),
        }
    }

    fn put(&self, inv: Invariant, key: &str, value: &str) -> Result<(), EvalError> {
        let path = self.path(inv, key);
        let dir = path.parent().expect("cache files live in a directory");
        let err = |source| EvalError::Cache { path: path.display().to_string(), source };
        std::fs::create_dir_all(dir).map_err(err)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
        tmp.write_all(value.as_bytes()).map_err(err)?;
        tmp.persist(&path).map_err(|e| err(e.error))?;
        Ok(())
    }
}
