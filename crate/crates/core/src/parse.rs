//! Text inputs: group definitions, automorphism specs and `W` matrix files.

use std::path::Path;
use std::sync::Arc;

use crate::auto::AutMap;
use crate::catalogue::named_group;
use crate::ddelta::semidirect;
use crate::error::{Error, Result};
use crate::ffmat::Mat;
use crate::functor_eval::OutRepW;
use crate::gf::Gf;
use crate::group::PermGroup;
use crate::perm::Perm;

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap().trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn bad(line: usize, why: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {why}"))
}

/// A builtin name, or a path to a group definition file.
pub fn load_group(src: &str) -> Result<PermGroup> {
    let path = Path::new(src);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {src}: {e}")))?;
        parse_group(&text)
    } else {
        named_group(src)
    }
}

/// Parses `degree N` + `gen ...` lines, a single `name X` line, or a single
/// `semidirect base=<src> auto=<images>` line.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut degree = None;
    let mut gens: Vec<(usize, &str)> = Vec::new();
    let mut whole = None;
    for (n, l) in lines(text) {
        let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match head {
            "degree" => {
                let d: usize = rest.parse().map_err(|_| bad(n, format!("bad degree `{rest}`")))?;
                if d == 0 || degree.replace(d).is_some() {
                    return Err(bad(n, "degree must be positive and given once"));
                }
            }
            "gen" => gens.push((n, rest)),
            "name" | "semidirect" => {
                if whole.replace((n, head, rest)).is_some() {
                    return Err(bad(n, "more than one group directive"));
                }
            }
            _ => return Err(bad(n, format!("unknown directive `{head}`"))),
        }
    }
    match (whole, degree) {
        (Some((n, _, _)), Some(_)) => Err(bad(n, "cannot mix with degree/gen")),
        (Some((_, "name", rest)), None) if gens.is_empty() => named_group(rest),
        (Some((n, _, rest)), None) if gens.is_empty() => parse_semidirect(n, rest),
        (Some((n, _, _)), None) => Err(bad(n, "cannot mix with gen lines")),
        (None, Some(d)) => {
            let perms = gens
                .iter()
                .map(|&(n, g)| Perm::parse_cycles(g, d).map_err(|e| bad(n, e)))
                .collect::<Result<Vec<_>>>()?;
            PermGroup::from_generators(d, &perms)
        }
        (None, None) => Err(Error::Parse("no group directive".into())),
    }
}

fn parse_semidirect(n: usize, rest: &str) -> Result<PermGroup> {
    let mut base = None;
    let mut auto = None;
    for part in rest.split_whitespace() {
        match part.split_once('=') {
            Some(("base", v)) => base = Some(v),
            Some(("auto", v)) => auto = Some(v),
            _ => return Err(bad(n, format!("unexpected `{part}`"))),
        }
    }
    let (Some(base), Some(auto)) = (base, auto) else {
        return Err(bad(n, "semidirect needs base= and auto="));
    };
    let l = load_group(base)?;
    let u = parse_aut(&l, auto)?;
    Ok(semidirect(&l, &u)?.group)
}

/// `identity`, or images of the elements `0..|L|-1` separated by commas.
pub fn parse_aut(l: &PermGroup, spec: &str) -> Result<AutMap> {
    let spec = spec.trim();
    if spec == "identity" {
        return Ok(AutMap::identity(l.order()));
    }
    let images = spec
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("automorphism `{spec}`: bad index `{s}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    if images.len() != l.order() || images.iter().any(|&x| x >= l.order()) {
        return Err(Error::InvalidInput(format!(
            "automorphism `{spec}` must list {} images in 0..{}",
            l.order(),
            l.order()
        )));
    }
    let m = AutMap::from_images(images);
    let mut seen = vec![false; l.order()];
    if !(0..l.order()).all(|x| !std::mem::replace(&mut seen[m.apply(x)], true)) || !m.is_homomorphism(l, l) {
        return Err(Error::InvalidInput(format!("`{spec}` is not an automorphism")));
    }
    Ok(m)
}

/// `field p m`, `dim d`, then `mat <label> <d·d entries>` per generator.
pub fn parse_w(text: &str) -> Result<OutRepW> {
    let mut it = lines(text);
    let mut header = |key: &str| -> Result<(usize, Vec<u64>)> {
        let (n, l) = it.next().ok_or_else(|| Error::Parse(format!("missing `{key}` line")))?;
        let mut words = l.split_whitespace();
        if words.next() != Some(key) {
            return Err(bad(n, format!("expected `{key}`")));
        }
        let vals = words
            .map(|w| w.parse::<u64>().map_err(|_| bad(n, format!("bad number `{w}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok((n, vals))
    };
    let (n, fv) = header("field")?;
    let [p, m] = fv[..] else {
        return Err(bad(n, "expected `field p m`"));
    };
    let field: Arc<Gf> = Gf::new(p, u32::try_from(m).map_err(|_| bad(n, "degree too large"))?)?;
    let (n, dv) = header("dim")?;
    let [d] = dv[..] else {
        return Err(bad(n, "expected `dim d`"));
    };
    let dim = d as usize;
    if dim == 0 {
        return Err(bad(n, "dimension must be positive"));
    }
    let mut mats = Vec::new();
    for (n, l) in it {
        let mut words = l.split_whitespace();
        if words.next() != Some("mat") {
            return Err(bad(n, "expected `mat <label> <entries>`"));
        }
        let label = words.next().ok_or_else(|| bad(n, "missing label"))?.to_string();
        let entries = words
            .map(|w| match w.parse::<u64>() {
                Ok(v) if v < field.order() => Ok(v as u32),
                _ => Err(bad(n, format!("entry `{w}` is not in 0..{}", field.order()))),
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.len() != dim * dim {
            return Err(bad(n, format!("expected {} entries, got {}", dim * dim, entries.len())));
        }
        if mats.iter().any(|(l, _): &(String, Mat)| *l == label) {
            return Err(bad(n, format!("label {label} repeated")));
        }
        let rows: Vec<Vec<u32>> = entries.chunks(dim).map(<[u32]>::to_vec).collect();
        let mat = Mat::from_rows(&rows);
        if mat.inverse(&field).is_none() {
            return Err(bad(n, format!("matrix {label} is singular")));
        }
        mats.push((label, mat));
    }
    Ok(OutRepW { field, dim, mats })
}

pub fn load_w(path: &str) -> Result<OutRepW> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
    parse_w(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_files() {
        let g = parse_group("# S4\ndegree 4\ngen (1 2 3 4)\ngen (1 2)  # transposition\n").unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(parse_group("name A4").unwrap().order(), 12);
        let g = parse_group("semidirect base=C3 auto=0,2,1").unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert!(parse_group("degree 3\ngen (1 4)").is_err());
        assert!(parse_group("degree 3\nname S3").is_err());
        assert!(parse_group("frobnicate 3").is_err());
        assert!(parse_group("").is_err());
    }

    #[test]
    fn aut_specs() {
        let c3 = named_group("C3").unwrap();
        assert!(parse_aut(&c3, "identity").unwrap().is_identity());
        assert_eq!(parse_aut(&c3, "0, 2, 1").unwrap().order(), 2);
        assert!(parse_aut(&c3, "1,2,0").is_err());
        assert!(parse_aut(&c3, "0,1").is_err());
    }

    #[test]
    fn w_files() {
        let w = parse_w("field 2 1\ndim 2\nmat o1 0 1 1 0\nmat o2 1 1 0 1\n").unwrap();
        assert_eq!(w.dim, 2);
        assert_eq!(w.mats.len(), 2);
        assert!(parse_w("field 2 1\ndim 1\nmat o1 0\n").is_err());
        assert!(parse_w("field 2 1\ndim 1\nmat o1 2\n").is_err());
        assert!(parse_w("dim 1\nfield 2 1\n").is_err());
        let w = parse_w("field 2 2\ndim 1\nmat o1 3\n").unwrap();
        assert_eq!(w.field.order(), 4);
    }
}
