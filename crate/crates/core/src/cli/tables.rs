//! Serialized forms of solved series tables.

use serde::{Deserialize, Serialize};

use crate::envelope::{Mono, UTensor};
use crate::exact::{format_scalar, parse_scalar, HSeries};
use crate::hquant::{GenMap, Ser};

use super::input::SchemaError;

/// One term `c·ℏ^order·(m_1⊗…⊗m_k)`, each leg a sorted list of generator
/// indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub order: usize,
    pub legs: Vec<Vec<u8>>,
    pub c: String,
}

pub type SeriesDoc = Vec<TermDoc>;

pub fn series_doc(s: &Ser) -> SeriesDoc {
    let mut out = Vec::new();
    for (k, t) in s.coeffs().iter().enumerate() {
        for (key, c) in t.iter() {
            out.push(TermDoc { order: k, legs: key.clone(), c: format_scalar(c) });
        }
    }
    out
}

/// Rebuilds a series of `legs` tensor legs truncated at `order`.
pub fn series_from_doc(pointer: &str, doc: &SeriesDoc, legs: usize, order: usize) -> Result<Ser, SchemaError> {
    let mut coeffs = vec![UTensor::zero(); order + 1];
    for (p, term) in doc.iter().enumerate() {
        let ptr = format!("{pointer}/{p}");
        if term.order > order {
            return Err(SchemaError::new(format!("{ptr}/order"), format!("order {} exceeds {order}", term.order)));
        }
        if term.legs.len() != legs {
            return Err(SchemaError::new(format!("{ptr}/legs"), format!("expected {legs} legs")));
        }
        if term.legs.iter().any(|m| m.windows(2).any(|w| w[0] > w[1])) {
            return Err(SchemaError::new(format!("{ptr}/legs"), "legs must be sorted monomials"));
        }
        let c = parse_scalar(&term.c).map_err(|e| SchemaError::new(format!("{ptr}/c"), e.to_string()))?;
        let key: Vec<Mono> = term.legs.clone();
        coeffs[term.order].add_term(key, c);
    }
    Ok(HSeries::new(coeffs).expect("nonempty"))
}

/// Images of the generators under an algebra map.
pub fn genmap_doc(m: &GenMap) -> Vec<SeriesDoc> {
    m.gens().iter().map(series_doc).collect()
}

pub fn genmap_from_doc(
    pointer: &str,
    doc: &[SeriesDoc],
    dim: usize,
    legs: usize,
    order: usize,
) -> Result<GenMap, SchemaError> {
    if doc.len() != dim {
        return Err(SchemaError::new(pointer, format!("expected {dim} generator images, got {}", doc.len())));
    }
    let gens = doc
        .iter()
        .enumerate()
        .map(|(i, s)| series_from_doc(&format!("{pointer}/{i}"), s, legs, order))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GenMap::new(legs, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn series_round_trip() {
        let mut coeffs = vec![UTensor::zero(); 3];
        coeffs[0].add_term(vec![vec![], vec![]], q(1, 1));
        coeffs[2].add_term(vec![vec![0, 2], vec![1]], q(-3, 16));
        let s = HSeries::new(coeffs).unwrap();
        let doc = series_doc(&s);
        assert_eq!(doc.len(), 2);
        assert_eq!(doc[1].c, "-3/16");
        assert_eq!(series_from_doc("/x", &doc, 2, 2).unwrap(), s);
    }

    #[test]
    fn rejects_terms_beyond_the_order() {
        let doc = vec![TermDoc { order: 3, legs: vec![vec![]], c: "1".into() }];
        assert_eq!(series_from_doc("/x", &doc, 1, 2).unwrap_err().pointer, "/x/0/order");
    }
}
