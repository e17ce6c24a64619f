use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use super::files::{CliError, FamilyFile};
use super::{cmd_bounds, cmd_certify};
use crate::certificates::{frame_extension_dichotomy, SamplingOptions, TheoremId};
use crate::error::Error;
use crate::gallery::{example21, example22, example31_in, example_remark22, BlockExample};
use crate::hilbert::{riesz_bounds, VectorFamily};
use crate::numerics::PNorm;
use crate::schauder::perturbed_functionals;

/// Above this many vectors the gallery skips the thm31 run on ex31: the
/// projection constant alone needs `N(N+1)/2` operator norms.
const EX31_CERTIFY_MAX_LEN: usize = 100;

pub struct GallerySummary {
    pub files: Vec<String>,
    pub value: Value,
}

struct Writer<'a> {
    dir: &'a Path,
    files: Vec<String>,
}

impl Writer<'_> {
    fn put(&mut self, name: &str, file: &FamilyFile) -> Result<(), CliError> {
        file.write(&self.dir.join(name))?;
        self.files.push(name.to_string());
        Ok(())
    }
}

fn certify(theorem: TheoremId, base: &FamilyFile, pert: &FamilyFile, seed: u64) -> Result<Value, Error> {
    let opts = SamplingOptions { seed, samples: 1000 };
    Ok(serde_json::to_value(cmd_certify(theorem, base, pert, None, None, None, opts)?).expect("report"))
}

fn block_summary(ex: &BlockExample, w: &mut Writer, seed: u64, with_qc: bool) -> Result<Value, CliError> {
    let mut f = FamilyFile::from_family(&ex.f);
    f.dual = Some(ex.g.vectors().to_vec());
    let h = FamilyFile::from_family(&ex.h);
    w.put("f.json", &f)?;
    w.put("h.json", &h)?;
    let mut certs = json!({ "thm21": certify(TheoremId::Thm21, &f, &h, seed)? });
    if with_qc {
        certs["qc"] = certify(TheoremId::QuadraticCloseness, &f, &h, seed)?;
    }
    Ok(json!({
        "offset": ex.offset,
        "block_sizes": ex.block_sizes,
        "bounds": { "f": cmd_bounds(&f)?, "h": cmd_bounds(&h)? },
        "traces": { "lambda": ex.lambda, "mu": ex.mu },
        "certificates": certs,
    }))
}

pub fn cmd_gallery(name: &str, depth: usize, out: &Path, p: PNorm, seed: u64) -> Result<GallerySummary, CliError> {
    if !["ex21", "remark22", "ex22", "ex31", "dichotomy"].contains(&name) {
        return Err(Error::UnknownGallery(name.to_string()).into());
    }
    // generate before touching the file system so bad depths leave nothing behind
    let body = match name {
        "ex21" => Generated::Block(example21(depth)?, false),
        "remark22" => Generated::Block(example_remark22(depth)?, true),
        "ex22" => Generated::Interleaved(example22(depth)?),
        "ex31" => Generated::Schauder(example31_in(depth, p)?),
        _ => {
            let f = VectorFamily::new(1, vec![vec![1.0]])?;
            Generated::Dichotomy(frame_extension_dichotomy(&f, 1 + 2 * depth)?)
        }
    };
    fs::create_dir_all(out).map_err(|e| CliError::Io { path: out.to_path_buf(), message: e.to_string() })?;
    let mut w = Writer { dir: out, files: Vec::new() };

    let details = match body {
        Generated::Block(ex, with_qc) => block_summary(&ex, &mut w, seed, with_qc)?,
        Generated::Interleaved(ex) => {
            let f = FamilyFile::from_family(&ex.f);
            let g = FamilyFile::from_family(&ex.g);
            w.put("f.json", &f)?;
            w.put("g.json", &g)?;
            let nonzero: Vec<Vec<f64>> =
                ex.f.vectors().iter().filter(|v| v.iter().any(|&x| x != 0.0)).cloned().collect();
            let nonzero = VectorFamily::new(ex.f.dim(), nonzero)?;
            json!({
                "ratios": ex.ratios,
                "closeness": ex.closeness,
                "nonzero_f_riesz": riesz_bounds(&nonzero)?,
                "bounds": { "f": cmd_bounds(&f)?, "g": cmd_bounds(&g)? },
            })
        }
        Generated::Schauder(ex) => {
            let base = FamilyFile::from_pair(&ex.pair);
            let mut pert = FamilyFile::from_family(&VectorFamily::new(ex.pair.dim(), ex.y.clone())?);
            pert.functionals = Some(perturbed_functionals(&ex.pair, &ex.y)?);
            pert.p = Some(ex.pair.space().p);
            w.put("pair.json", &base)?;
            w.put("y.json", &pert)?;
            let thm31 = if ex.pair.len() <= EX31_CERTIFY_MAX_LEN {
                certify(TheoremId::Thm31, &base, &pert, seed)?
            } else {
                Value::Null
            };
            json!({
                "offset": ex.offset,
                "block_sizes": ex.block_sizes,
                "reconstruction_residual": ex.pair.reconstruction_residual()?,
                "traces": { "mu": ex.mu, "lambda": ex.lambda },
                "certificates": { "thm31": thm31 },
            })
        }
        Generated::Dichotomy(r) => {
            let f = FamilyFile::from_family(&VectorFamily::new(r.ambient_dim, {
                let mut e1 = vec![0.0; r.ambient_dim];
                e1[0] = 1.0;
                vec![e1]
            })?);
            w.put("f.json", &f)?;
            w.put("g.json", &FamilyFile::from_family(&r.g))?;
            w.put("h.json", &FamilyFile::from_family(&r.h))?;
            json!({
                "ambient_dim": r.ambient_dim,
                "rank": r.rank,
                "codim": r.codim,
                "ratios": r.ratios,
                "closeness": r.closeness,
            })
        }
    };
    let mut value = json!({ "name": name, "depth": depth, "files": w.files });
    if let (Value::Object(v), Value::Object(d)) = (&mut value, details) {
        v.extend(d);
    }
    let summary_path = out.join("summary.json");
    fs::write(&summary_path, serde_json::to_string_pretty(&value).expect("JSON value") + "\n")
        .map_err(|e| CliError::Io { path: summary_path.clone(), message: e.to_string() })?;
    w.files.push("summary.json".into());
    Ok(GallerySummary { files: w.files, value })
}

enum Generated {
    Block(BlockExample, bool),
    Interleaved(crate::gallery::InterleavedExample),
    Schauder(crate::gallery::RepeatedSchauderExample),
    Dichotomy(crate::certificates::DichotomyReport),
}
