//! Shorthand tree notation: `path:L`, `star:K`, `spider:3,2,1`, `ds:2,1/2`,
//! `as:r,q,c,t`.

use super::{make_as_tree, make_double_spider, make_spider, ASParams, DoubleSpiderProfile, SpiderProfile, Tree};
use crate::error::{Error, Result};

fn numbers(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad integer `{x}`: {e}")))
        })
        .collect()
}

/// Parses a shorthand tree description.
///
/// `path:L` is the path with `L` edges; `star:K` the star with `K` leaves.
pub fn parse_shorthand(s: &str) -> Result<Tree> {
    let (kind, body) = s
        .trim()
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("`{s}` is not of the form kind:args")))?;
    match kind {
        "path" => match numbers(body)?[..] {
            [l] => Tree::path(l),
            _ => Err(Error::Parse("path takes one length".into())),
        },
        "star" => match numbers(body)?[..] {
            [k] if k >= 1 => Tree::star(k),
            _ => Err(Error::Parse("star takes one leaf count >= 1".into())),
        },
        "spider" => Ok(make_spider(&SpiderProfile::new(numbers(body)?)?)),
        "ds" => {
            let (a, b) = body
                .split_once('/')
                .ok_or_else(|| Error::Parse("ds needs `a1,..,ap/b1,..,bq`".into()))?;
            Ok(make_double_spider(&DoubleSpiderProfile::new(
                numbers(a)?,
                numbers(b)?,
            )?))
        }
        "as" => match numbers(body)?[..] {
            [r, q, c, t] => Ok(make_as_tree(&ASParams::new(r, q, c, t)?)),
            _ => Err(Error::Parse("as takes r,q,c,t".into())),
        },
        other => Err(Error::Parse(format!("unknown tree kind `{other}`"))),
    }
}
