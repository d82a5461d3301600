//! From JSON documents to core values.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use qsys_core::functoriality::{DagFunctor, Modification, Transformation};
use qsys_core::qsystem::{trivial_qsystem, Bimodule, QSystem};
use qsys_core::{CMat, OneCell, Presentation, PresentationData, Simple, TwoCell, C64};

use crate::error::{CliError, CliResult, Context};
use crate::schema::{Blocks, Document, Matrix, MultMap, SCHEMA_VERSION};

/// Reads and parses a document without interpreting it.
pub fn read_document(path: &Path) -> CliResult<Document> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    parse_document(&text, &path.display().to_string())
}

/// Parses a document; errors carry the JSON path, line and column.
pub fn parse_document(text: &str, origin: &str) -> CliResult<Document> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let msg = if path == "." {
            e.into_inner().to_string()
        } else {
            format!("at `{path}`: {}", e.into_inner())
        };
        CliError::Parse {
            origin: origin.into(),
            msg,
        }
    })?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(CliError::schema(
            "schema_version",
            format!(
                "unsupported version `{}` (expected `{SCHEMA_VERSION}`)",
                doc.schema_version
            ),
        ));
    }
    Ok(doc)
}

fn c64(z: &[f64; 2]) -> C64 {
    C64::new(z[0], z[1])
}

pub(crate) fn parse_matrix(m: &Matrix, field: &str) -> CliResult<CMat> {
    let rows: Vec<Vec<C64>> = m.iter().map(|row| row.iter().map(c64).collect()).collect();
    CMat::from_rows(&rows).map_err(|_| CliError::schema(field, "rows have different lengths"))
}

fn index_of(names: &[String], name: &str, what: &str, field: &str) -> CliResult<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| CliError::schema(field, format!("unknown {what} `{name}`")))
}

fn object(p: &Presentation, name: &str, field: &str) -> CliResult<usize> {
    index_of(p.objects(), name, "object", field)
}

fn simple(p: &Presentation, id: &str, field: &str) -> CliResult<usize> {
    p.simple_index(id)
        .map_err(|_| CliError::schema(field, format!("unknown simple `{id}`")))
}

/// The 1-cell `src → tgt` with the given multiplicities.
pub(crate) fn parse_one(
    p: &Presentation,
    src: usize,
    tgt: usize,
    m: &MultMap,
    field: &str,
) -> CliResult<OneCell> {
    let mut mult = vec![0; p.num_simples()];
    for (id, &k) in m {
        let s = simple(p, id, field)?;
        let x = &p.simples()[s];
        if x.src != src || x.tgt != tgt {
            return Err(CliError::schema(
                format!("{field}.{id}"),
                format!(
                    "simple runs {} → {}, expected {} → {}",
                    p.objects()[x.src],
                    p.objects()[x.tgt],
                    p.objects()[src],
                    p.objects()[tgt]
                ),
            ));
        }
        mult[s] = k;
    }
    OneCell::from_mult(p, src, tgt, mult).ctx(|| field.into())
}

/// The 2-cell `dom ⇒ cod`; absent blocks are zero.
pub(crate) fn parse_cell(
    p: &Presentation,
    dom: &OneCell,
    cod: &OneCell,
    blocks: &Blocks,
    field: &str,
) -> CliResult<TwoCell> {
    let mut out: Vec<CMat> = (0..p.num_simples())
        .map(|s| CMat::zeros(cod.mult[s], dom.mult[s]))
        .collect();
    for (id, m) in blocks {
        let f = format!("{field}.{id}");
        let s = simple(p, id, field)?;
        let block = parse_matrix(m, &f)?;
        let want = (cod.mult[s], dom.mult[s]);
        if block.shape() != want && !(block.rows() == 0 && want.0 * want.1 == 0) {
            return Err(CliError::schema(
                f,
                format!(
                    "block is {}x{}, expected {}x{}",
                    block.rows(),
                    block.cols(),
                    want.0,
                    want.1
                ),
            ));
        }
        if block.shape() == want {
            out[s] = block;
        }
    }
    TwoCell::new(dom.clone(), cod.clone(), out).ctx(|| field.into())
}

/// The presentation part of a document.
pub fn presentation_from_doc(doc: &Document) -> CliResult<Presentation> {
    if doc.objects.is_empty() {
        return Err(CliError::schema(
            "objects",
            "at least one object is required",
        ));
    }
    let mut seen = HashSet::new();
    for (k, o) in doc.objects.iter().enumerate() {
        if !seen.insert(o) {
            return Err(CliError::schema(
                format!("objects[{k}]"),
                format!("duplicate object `{o}`"),
            ));
        }
    }
    let ids: Vec<String> = doc.simples.iter().map(|s| s.id.clone()).collect();
    let mut seen = HashSet::new();
    let mut simples = Vec::with_capacity(doc.simples.len());
    for (k, s) in doc.simples.iter().enumerate() {
        let f = format!("simples[{k}]");
        if !seen.insert(&s.id) {
            return Err(CliError::schema(
                format!("{f}.id"),
                format!("duplicate simple `{}`", s.id),
            ));
        }
        let src = index_of(&doc.objects, &s.src, "object", &format!("{f}.src"))?;
        let tgt = index_of(&doc.objects, &s.tgt, "object", &format!("{f}.tgt"))?;
        simples.push(Simple {
            id: s.id.clone(),
            src,
            tgt,
        });
    }
    for key in doc.units.keys() {
        index_of(&doc.objects, key, "object", "units")?;
    }
    let units =
        doc.objects
            .iter()
            .map(|o| {
                let id = doc.units.get(o).ok_or_else(|| {
                    CliError::schema("units", format!("no unit for object `{o}`"))
                })?;
                index_of(&ids, id, "simple", &format!("units.{o}"))
            })
            .collect::<CliResult<Vec<_>>>()?;
    let fusion = doc
        .fusion
        .iter()
        .enumerate()
        .map(|(n, e)| {
            let f = format!("fusion[{n}]");
            Ok((
                index_of(&ids, &e.i, "simple", &format!("{f}.i"))?,
                index_of(&ids, &e.j, "simple", &format!("{f}.j"))?,
                index_of(&ids, &e.k, "simple", &format!("{f}.k"))?,
                e.mult,
            ))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut fsymbols = HashMap::new();
    for (n, e) in doc.fsymbols.iter().enumerate() {
        let f = format!("fsymbols[{n}]");
        let key = (
            index_of(&ids, &e.i, "simple", &format!("{f}.i"))?,
            index_of(&ids, &e.j, "simple", &format!("{f}.j"))?,
            index_of(&ids, &e.k, "simple", &format!("{f}.k"))?,
            index_of(&ids, &e.l, "simple", &format!("{f}.l"))?,
        );
        let m = parse_matrix(&e.matrix, &format!("{f}.matrix"))?;
        if fsymbols.insert(key, m).is_some() {
            return Err(CliError::schema(f, "duplicate F entry"));
        }
    }
    let (lunit, runit) = match &doc.unitors {
        None => (None, None),
        Some(u) => {
            let fill = |m: &BTreeMap<String, [f64; 2]>, side: &str| -> CliResult<Vec<C64>> {
                let mut v = vec![C64::new(1.0, 0.0); ids.len()];
                for (id, z) in m {
                    v[index_of(&ids, id, "simple", &format!("unitors.{side}"))?] = c64(z);
                }
                Ok(v)
            };
            (Some(fill(&u.left, "left")?), Some(fill(&u.right, "right")?))
        }
    };
    let data = PresentationData {
        name: doc.name.clone(),
        objects: doc.objects.clone(),
        simples,
        units,
        fusion,
        fsymbols,
        lunit,
        runit,
    };
    Presentation::new(data).ctx(|| "presentation".into())
}

/// A named modification with the names of its transformations.
#[derive(Clone, Debug)]
pub struct NamedModification {
    pub name: String,
    pub source: Arc<Transformation>,
    pub target: Arc<Transformation>,
    pub n: Modification<Presentation>,
}

/// A document with every structure interpreted.
#[derive(Debug)]
pub struct Workspace {
    pub doc: Document,
    pub presentation: Arc<Presentation>,
    pub qsystems: Vec<Arc<QSystem>>,
    pub bimodules: Vec<Arc<Bimodule>>,
    pub functors: Vec<Arc<DagFunctor>>,
    pub transformations: Vec<Arc<Transformation>>,
    pub modifications: Vec<NamedModification>,
}

impl Workspace {
    pub fn load(path: &Path) -> CliResult<Self> {
        let doc = read_document(path)?;
        Self::from_document(doc, path.parent())
    }

    /// Functor targets are resolved against `base_dir`.
    pub fn from_document(doc: Document, base_dir: Option<&Path>) -> CliResult<Self> {
        let p = Arc::new(presentation_from_doc(&doc)?);
        let mut ws = Self {
            doc,
            presentation: p,
            qsystems: vec![],
            bimodules: vec![],
            functors: vec![],
            transformations: vec![],
            modifications: vec![],
        };
        ws.load_qsystems()?;
        ws.load_bimodules()?;
        ws.load_functors(base_dir)?;
        ws.load_transformations()?;
        ws.load_modifications()?;
        Ok(ws)
    }

    fn load_qsystems(&mut self) -> CliResult<()> {
        let p = self.presentation.clone();
        for (n, q) in self.doc.qsystems.iter().enumerate() {
            let f = format!("qsystems[{n}]");
            unique(self.qsystems.iter().map(|x| &x.name), &q.name, &f)?;
            let b = object(&p, &q.base, &format!("{f}.base"))?;
            let qc = parse_one(&p, b, b, &q.q, &format!("{f}.Q"))?;
            let m = parse_cell(
                &p,
                &p.tensor(&qc, &qc).ctx(|| f.clone())?,
                &qc,
                &q.m,
                &format!("{f}.m"),
            )?;
            let i = parse_cell(&p, &OneCell::unit(&p, b), &qc, &q.i, &format!("{f}.i"))?;
            self.qsystems
                .push(QSystem::new(&p, q.name.clone(), b, qc, m, i).ctx(|| f.clone())?);
        }
        Ok(())
    }

    fn load_bimodules(&mut self) -> CliResult<()> {
        let p = self.presentation.clone();
        for (n, x) in self.doc.bimodules.iter().enumerate() {
            let f = format!("bimodules[{n}]");
            unique(self.bimodules.iter().map(|b| &b.label), &x.name, &f)?;
            let left = self.qsystem(&x.left).map_err(|_| {
                CliError::schema(
                    format!("{f}.left"),
                    format!("unknown Q-system `{}`", x.left),
                )
            })?;
            let right = self.qsystem(&x.right).map_err(|_| {
                CliError::schema(
                    format!("{f}.right"),
                    format!("unknown Q-system `{}`", x.right),
                )
            })?;
            let xc = parse_one(&p, left.base, right.base, &x.x, &format!("{f}.X"))?;
            let lam_dom = p.tensor(&left.q, &xc).ctx(|| f.clone())?;
            let rho_dom = p.tensor(&xc, &right.q).ctx(|| f.clone())?;
            let lam = parse_cell(&p, &lam_dom, &xc, &x.lam, &format!("{f}.lam"))?;
            let rho = parse_cell(&p, &rho_dom, &xc, &x.rho, &format!("{f}.rho"))?;
            self.bimodules.push(
                Bimodule::new(&p, x.name.clone(), left, right, xc, lam, rho).ctx(|| f.clone())?,
            );
        }
        Ok(())
    }

    fn load_functors(&mut self, base_dir: Option<&Path>) -> CliResult<()> {
        let src = self.presentation.clone();
        let mut targets: HashMap<PathBuf, Arc<Presentation>> = HashMap::new();
        for (n, fj) in self.doc.functors.iter().enumerate() {
            let f = format!("functors[{n}]");
            unique(self.functors.iter().map(|x| &x.name), &fj.name, &f)?;
            let tgt = match &fj.target {
                None => src.clone(),
                Some(rel) => {
                    let path = base_dir.map_or_else(|| PathBuf::from(rel), |d| d.join(rel));
                    match targets.get(&path) {
                        Some(t) => t.clone(),
                        None => {
                            let t = Arc::new(presentation_from_doc(&read_document(&path)?)?);
                            targets.insert(path, t.clone());
                            t
                        }
                    }
                }
            };
            for key in fj.obj_map.keys() {
                object(&src, key, &format!("{f}.obj_map"))?;
            }
            let obj_map = src
                .objects()
                .iter()
                .map(|o| {
                    let field = format!("{f}.obj_map.{o}");
                    let b = fj
                        .obj_map
                        .get(o)
                        .ok_or_else(|| CliError::schema(&field, "missing image"))?;
                    object(&tgt, b, &field)
                })
                .collect::<CliResult<Vec<_>>>()?;
            for key in fj.cell_map.keys() {
                simple(&src, key, &format!("{f}.cell_map"))?;
            }
            let cell_map = src
                .simples()
                .iter()
                .map(|s| {
                    let field = format!("{f}.cell_map.{}", s.id);
                    let m = fj
                        .cell_map
                        .get(&s.id)
                        .ok_or_else(|| CliError::schema(&field, "missing image"))?;
                    parse_one(&tgt, obj_map[s.src], obj_map[s.tgt], m, &field)
                })
                .collect::<CliResult<Vec<_>>>()?;
            // A functor with identity coheretors gives the shapes of F² and F¹.
            let image = |x: &OneCell| -> CliResult<OneCell> {
                let mut mult = vec![0; tgt.num_simples()];
                for (s, &k) in x.mult.iter().enumerate() {
                    for (t, &c) in cell_map[s].mult.iter().enumerate() {
                        mult[t] += k * c;
                    }
                }
                OneCell::from_mult(&tgt, obj_map[x.src], obj_map[x.tgt], mult).ctx(|| f.clone())
            };
            let mut given = HashMap::new();
            for (k, e) in fj.f2.iter().enumerate() {
                let field = format!("{f}.f2[{k}]");
                let s = simple(&src, &e.s, &format!("{field}.s"))?;
                let t = simple(&src, &e.t, &format!("{field}.t"))?;
                if given.insert((s, t), (k, e)).is_some() {
                    return Err(CliError::schema(field, "duplicate entry"));
                }
            }
            let mut f2 = HashMap::new();
            for (s, x) in src.simples().iter().enumerate() {
                for (t, y) in src.simples().iter().enumerate() {
                    if x.tgt != y.src {
                        continue;
                    }
                    let dom = tgt.tensor(&cell_map[s], &cell_map[t]).ctx(|| f.clone())?;
                    let st = src
                        .tensor(&OneCell::simple(&src, s), &OneCell::simple(&src, t))
                        .ctx(|| f.clone())?;
                    let cod = image(&st)?;
                    let cell = match given.remove(&(s, t)) {
                        Some((k, e)) => {
                            parse_cell(&tgt, &dom, &cod, &e.blocks, &format!("{f}.f2[{k}].blocks"))?
                        }
                        None if dom == cod => TwoCell::identity(&dom),
                        None => {
                            return Err(CliError::schema(
                                format!("{f}.f2"),
                                format!("missing entry for ({}, {})", x.id, y.id),
                            ))
                        }
                    };
                    f2.insert((s, t), cell);
                }
            }
            if let Some((_, (k, _))) = given.into_iter().next() {
                return Err(CliError::schema(
                    format!("{f}.f2[{k}]"),
                    "simples are not composable",
                ));
            }
            for key in fj.f1.keys() {
                object(&src, key, &format!("{f}.f1"))?;
            }
            let f1 = (0..src.num_objects())
                .map(|a| {
                    let dom = OneCell::unit(&tgt, obj_map[a]);
                    let cod = image(&OneCell::unit(&src, a))?;
                    let name = &src.objects()[a];
                    match fj.f1.get(name) {
                        Some(b) => parse_cell(&tgt, &dom, &cod, b, &format!("{f}.f1.{name}")),
                        None if dom == cod => Ok(TwoCell::identity(&dom)),
                        None => Err(CliError::schema(format!("{f}.f1.{name}"), "missing entry")),
                    }
                })
                .collect::<CliResult<Vec<_>>>()?;
            let functor =
                DagFunctor::new(fj.name.clone(), src.clone(), tgt, obj_map, cell_map, f2, f1)
                    .ctx(|| f.clone())?;
            self.functors.push(Arc::new(functor));
        }
        Ok(())
    }

    fn load_transformations(&mut self) -> CliResult<()> {
        let src = self.presentation.clone();
        for (n, tj) in self.doc.transformations.iter().enumerate() {
            let f = format!("transformations[{n}]");
            unique(self.transformations.iter().map(|x| &x.name), &tj.name, &f)?;
            let ff = self.functor(&tj.source).map_err(|_| {
                CliError::schema(
                    format!("{f}.source"),
                    format!("unknown functor `{}`", tj.source),
                )
            })?;
            let gg = self.functor(&tj.target).map_err(|_| {
                CliError::schema(
                    format!("{f}.target"),
                    format!("unknown functor `{}`", tj.target),
                )
            })?;
            if !Arc::ptr_eq(&ff.tgt, &gg.tgt) && ff.tgt.name() != gg.tgt.name() {
                return Err(CliError::schema(
                    &f,
                    "source and target functors land in different presentations",
                ));
            }
            let tgt = ff.tgt.clone();
            for key in tj.comp0.keys() {
                object(&src, key, &format!("{f}.comp0"))?;
            }
            let comp0 = (0..src.num_objects())
                .map(|c| {
                    let name = &src.objects()[c];
                    let field = format!("{f}.comp0.{name}");
                    let m = tj
                        .comp0
                        .get(name)
                        .ok_or_else(|| CliError::schema(&field, "missing component"))?;
                    parse_one(&tgt, ff.obj_map[c], gg.obj_map[c], m, &field)
                })
                .collect::<CliResult<Vec<_>>>()?;
            for key in tj.comp1.keys() {
                simple(&src, key, &format!("{f}.comp1"))?;
            }
            let comp1 = src
                .simples()
                .iter()
                .enumerate()
                .map(|(s, x)| {
                    let field = format!("{f}.comp1.{}", x.id);
                    let b = tj
                        .comp1
                        .get(&x.id)
                        .ok_or_else(|| CliError::schema(&field, "missing component"))?;
                    let dom = tgt
                        .tensor(&ff.cell_map[s], &comp0[x.tgt])
                        .ctx(|| field.clone())?;
                    let cod = tgt
                        .tensor(&comp0[x.src], &gg.cell_map[s])
                        .ctx(|| field.clone())?;
                    parse_cell(&tgt, &dom, &cod, b, &field)
                })
                .collect::<CliResult<Vec<_>>>()?;
            let t = Transformation::new(tj.name.clone(), ff, gg, comp0, comp1).ctx(|| f.clone())?;
            self.transformations.push(Arc::new(t));
        }
        Ok(())
    }

    fn load_modifications(&mut self) -> CliResult<()> {
        let src = self.presentation.clone();
        for (n, mj) in self.doc.modifications.iter().enumerate() {
            let f = format!("modifications[{n}]");
            unique(self.modifications.iter().map(|x| &x.name), &mj.name, &f)?;
            let phi = self.transformation(&mj.source).map_err(|_| {
                CliError::schema(
                    format!("{f}.source"),
                    format!("unknown transformation `{}`", mj.source),
                )
            })?;
            let psi = self.transformation(&mj.target).map_err(|_| {
                CliError::schema(
                    format!("{f}.target"),
                    format!("unknown transformation `{}`", mj.target),
                )
            })?;
            for key in mj.comps.keys() {
                object(&src, key, &format!("{f}.comps"))?;
            }
            let tgt = phi.f.tgt.clone();
            let comps = (0..src.num_objects())
                .map(|a| {
                    let name = &src.objects()[a];
                    let field = format!("{f}.comps.{name}");
                    let b = mj
                        .comps
                        .get(name)
                        .ok_or_else(|| CliError::schema(&field, "missing component"))?;
                    parse_cell(&tgt, &phi.comp0[a], &psi.comp0[a], b, &field)
                })
                .collect::<CliResult<Vec<_>>>()?;
            self.modifications.push(NamedModification {
                name: mj.name.clone(),
                source: phi,
                target: psi,
                n: Modification::new(comps),
            });
        }
        Ok(())
    }

    /// A listed Q-system, or `1_<object>` for a trivial one.
    pub fn qsystem(&self, name: &str) -> CliResult<Arc<QSystem>> {
        if let Some(q) = self.qsystems.iter().find(|q| q.name == name) {
            return Ok(q.clone());
        }
        let p = &self.presentation;
        if let Some(b) = name.strip_prefix("1_").and_then(|o| p.object_index(o).ok()) {
            return trivial_qsystem(p, b).ctx(|| name.into());
        }
        Err(CliError::Usage(format!("no Q-system named `{name}`")))
    }

    pub fn bimodule(&self, name: &str) -> CliResult<Arc<Bimodule>> {
        self.bimodules
            .iter()
            .find(|x| x.label == name)
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("no bimodule named `{name}`")))
    }

    /// A listed functor, or `id` for the identity.
    pub fn functor(&self, name: &str) -> CliResult<Arc<DagFunctor>> {
        if let Some(f) = self.functors.iter().find(|f| f.name == name) {
            return Ok(f.clone());
        }
        if name == "id" {
            let mut f = DagFunctor::identity(&self.presentation);
            f.name = "id".into();
            return Ok(Arc::new(f));
        }
        Err(CliError::Usage(format!("no functor named `{name}`")))
    }

    /// A listed transformation, or `id:<functor>` for an identity.
    pub fn transformation(&self, name: &str) -> CliResult<Arc<Transformation>> {
        if let Some(t) = self.transformations.iter().find(|t| t.name == name) {
            return Ok(t.clone());
        }
        if let Some(f) = name.strip_prefix("id:") {
            let f = self.functor(f)?;
            let mut t = Transformation::identity(&f).ctx(|| name.into())?;
            t.name = name.into();
            return Ok(Arc::new(t));
        }
        Err(CliError::Usage(format!("no transformation named `{name}`")))
    }

    pub fn modification(&self, name: &str) -> CliResult<&NamedModification> {
        self.modifications
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| CliError::Usage(format!("no modification named `{name}`")))
    }
}

fn unique<'a>(
    mut names: impl Iterator<Item = &'a String>,
    name: &str,
    field: &str,
) -> CliResult<()> {
    if names.any(|n| n == name) {
        return Err(CliError::schema(
            format!("{field}.name"),
            format!("duplicate name `{name}`"),
        ));
    }
    Ok(())
}
