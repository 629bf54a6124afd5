//! Scheme shorthand: `kernel:n,v`, `oh:s,n,v`, `thin:c1xc2x...`,
//! `schurian:n:gen;gen;...` (cycle notation on points `1..n`) and
//! `file:path` (a scheme JSON document).

use std::sync::Arc;

use delsarte_core::construct::{kernel_scheme, ordered_hamming, parse_cycles, schurian_scheme, thin_abelian};
use delsarte_core::{Error, Result, Scheme};

use crate::dto::SchemeDoc;

/// Which family a scheme came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Kernel { n: usize, v: u32 },
    OrderedHamming { s: usize, n: usize, v: u32 },
    Thin { orders: Vec<u32> },
    Schurian { n: usize },
    File { path: String },
}

#[derive(Debug, Clone)]
pub struct Built {
    pub family: Family,
    pub scheme: Arc<Scheme>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn numbers<T: std::str::FromStr>(text: &str, sep: char, count: Option<usize>, what: &str) -> Result<Vec<T>> {
    let out = text
        .split(sep)
        .map(|p| p.trim().parse::<T>().map_err(|_| bad(format!("{what}: `{p}` is not a number"))))
        .collect::<Result<Vec<T>>>()?;
    if let Some(c) = count {
        if out.len() != c {
            return Err(bad(format!("{what}: expected {c} numbers, found {}", out.len())));
        }
    }
    Ok(out)
}

/// Parse a shorthand into its family without building anything.
pub fn parse_family(text: &str) -> Result<Family> {
    let (head, rest) = text
        .split_once(':')
        .ok_or_else(|| bad(format!("scheme `{text}`: expected kind:params")))?;
    match head {
        "kernel" => {
            let v: Vec<u64> = numbers(rest, ',', Some(2), "kernel:n,v")?;
            Ok(Family::Kernel {
                n: v[0] as usize,
                v: u32::try_from(v[1]).map_err(|_| bad("v too large"))?,
            })
        }
        "oh" => {
            let v: Vec<u64> = numbers(rest, ',', Some(3), "oh:s,n,v")?;
            Ok(Family::OrderedHamming {
                s: v[0] as usize,
                n: v[1] as usize,
                v: u32::try_from(v[2]).map_err(|_| bad("v too large"))?,
            })
        }
        "thin" => Ok(Family::Thin {
            orders: numbers(rest, 'x', None, "thin:c1xc2")?,
        }),
        "schurian" => {
            let (n, _) = rest
                .split_once(':')
                .ok_or_else(|| bad("schurian:n:generators"))?;
            Ok(Family::Schurian {
                n: n.trim().parse().map_err(|_| bad(format!("schurian: `{n}` is not a number")))?,
            })
        }
        "file" => Ok(Family::File { path: rest.into() }),
        other => Err(bad(format!("unknown scheme kind `{other}`"))),
    }
}

/// Build a scheme from its shorthand.
pub fn build(text: &str) -> Result<Built> {
    let family = parse_family(text)?;
    let scheme = match &family {
        Family::Kernel { n, v } => kernel_scheme(*n, *v)?,
        Family::OrderedHamming { s, n, v } => ordered_hamming(*s, *n, *v)?,
        Family::Thin { orders } => thin_abelian(orders.clone())?,
        Family::Schurian { n } => {
            let gens_text = text.splitn(3, ':').nth(2).unwrap_or("");
            let gens = gens_text
                .split(';')
                .filter(|g| !g.trim().is_empty())
                .map(|g| parse_cycles(g, *n))
                .collect::<Result<Vec<_>>>()?;
            schurian_scheme(*n, &gens)?
        }
        Family::File { path } => {
            let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{path}: {e}")))?;
            let doc: SchemeDoc = serde_json::from_str(&text).map_err(|e| bad(format!("{path}: {e}")))?;
            doc.to_scheme()?
        }
    };
    Ok(Built {
        family,
        scheme: Arc::new(scheme),
    })
}
