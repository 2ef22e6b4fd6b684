use std::collections::HashMap;

use super::distance::{check_compatible, l2};
use crate::error::{Error, Result};
use crate::signature::{Signature, SignatureFile, SignatureMeta};

/// Signatures addressed by graph id, all sharing one set of metadata.
#[derive(Debug, Clone)]
pub struct SignatureCollection {
    meta: SignatureMeta,
    ids: Vec<String>,
    values: Vec<Vec<f64>>,
    labels: Vec<Option<i64>>,
    index: HashMap<String, usize>,
}

impl SignatureCollection {
    pub fn new(meta: SignatureMeta) -> Self {
        SignatureCollection {
            meta,
            ids: Vec::new(),
            values: Vec::new(),
            labels: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn from_file(file: SignatureFile) -> Result<Self> {
        let mut coll = SignatureCollection::new(file.meta);
        for (id, values) in file.rows {
            coll.insert_values(id, values, None)?;
        }
        Ok(coll)
    }

    pub fn to_file(&self) -> SignatureFile {
        SignatureFile {
            meta: self.meta,
            rows: self.ids.iter().cloned().zip(self.values.iter().cloned()).collect(),
        }
    }

    pub fn meta(&self) -> &SignatureMeta {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn insert(&mut self, id: impl Into<String>, sig: Signature, label: Option<i64>) -> Result<()> {
        check_compatible(&self.meta, &sig.meta)?;
        self.insert_values(id.into(), sig.values, label)
    }

    fn insert_values(&mut self, id: String, values: Vec<f64>, label: Option<i64>) -> Result<()> {
        if values.len() != self.meta.grid.count {
            return Err(Error::Incompatible(format!(
                "signature `{id}` has {} values, grid has {}",
                values.len(),
                self.meta.grid.count
            )));
        }
        if self.index.contains_key(&id) {
            return Err(Error::invalid(format!("duplicate graph id `{id}`")));
        }
        self.index.insert(id.clone(), self.ids.len());
        self.ids.push(id);
        self.values.push(values);
        self.labels.push(label);
        Ok(())
    }

    pub fn set_label(&mut self, id: &str, label: i64) -> Result<()> {
        let i = *self.index.get(id).ok_or_else(|| Error::UnknownId(id.to_string()))?;
        self.labels[i] = Some(label);
        Ok(())
    }

    pub fn label(&self, id: &str) -> Option<i64> {
        self.index.get(id).and_then(|&i| self.labels[i])
    }

    pub(crate) fn labels(&self) -> &[Option<i64>] {
        &self.labels
    }

    pub(crate) fn values_at(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    pub fn get(&self, id: &str) -> Option<Signature> {
        self.index.get(id).map(|&i| Signature {
            meta: self.meta,
            values: self.values[i].clone(),
            nodes: None,
        })
    }

    /// The `k` entries nearest to `query` by exact scan, closest first.
    /// Equal distances are ordered by ascending id; `k` larger than the
    /// collection returns everything.
    pub fn knn_query(&self, query: &Signature, k: usize) -> Result<Vec<(String, f64)>> {
        if k == 0 {
            return Err(Error::invalid("k must be at least 1"));
        }
        if self.is_empty() {
            return Err(Error::EmptyCollection);
        }
        check_compatible(&self.meta, &query.meta)?;
        if query.values.len() != self.meta.grid.count {
            return Err(Error::Incompatible("query length differs from the grid".into()));
        }
        let mut hits: Vec<(usize, f64)> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| (i, l2(v, &query.values)))
            .collect();
        hits.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| self.ids[a.0].cmp(&self.ids[b.0])));
        hits.truncate(k);
        Ok(hits.into_iter().map(|(i, d)| (self.ids[i].clone(), d)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{Kernel, Normalization};

    fn meta() -> SignatureMeta {
        SignatureMeta {
            kernel: Kernel::Heat,
            normalization: Normalization::None,
            grid: "2,1,2,lin".parse().unwrap(),
        }
    }

    fn sig(x: f64, y: f64) -> Signature {
        Signature { meta: meta(), values: vec![x, y], nodes: None }
    }

    fn collection(entries: &[(&str, f64)]) -> SignatureCollection {
        let mut c = SignatureCollection::new(meta());
        for &(id, x) in entries {
            c.insert(id, sig(x, 0.0), None).unwrap();
        }
        c
    }

    #[test]
    fn query_itself_first() {
        let c = collection(&[("a", 0.0), ("b", 1.0), ("c", 5.0)]);
        let hits = c.knn_query(&c.get("b").unwrap(), 1).unwrap();
        assert_eq!(hits, vec![("b".to_string(), 0.0)]);
    }

    #[test]
    fn ordering_and_clamping() {
        let c = collection(&[("far", 3.0), ("near", 1.0), ("mid", 2.0)]);
        let q = sig(0.0, 0.0);
        let hits = c.knn_query(&q, 2).unwrap();
        assert_eq!(hits, vec![("near".to_string(), 1.0), ("mid".to_string(), 2.0)]);
        let all = c.knn_query(&q, 10).unwrap();
        assert_eq!(all.len(), 3);
        assert_eq!(all[2].0, "far");
    }

    #[test]
    fn ties_break_by_id_regardless_of_insertion() {
        let a = collection(&[("z", 1.0), ("m", -1.0), ("a", 1.0)]);
        let b = collection(&[("a", 1.0), ("z", 1.0), ("m", -1.0)]);
        let q = sig(0.0, 0.0);
        let ids = |c: &SignatureCollection| c.knn_query(&q, 3).unwrap().into_iter().map(|h| h.0).collect::<Vec<_>>();
        assert_eq!(ids(&a), vec!["a", "m", "z"]);
        assert_eq!(ids(&a), ids(&b));
    }

    #[test]
    fn errors() {
        let empty = SignatureCollection::new(meta());
        assert!(matches!(empty.knn_query(&sig(0.0, 0.0), 1), Err(Error::EmptyCollection)));
        let c = collection(&[("a", 0.0)]);
        assert!(c.knn_query(&sig(0.0, 0.0), 0).is_err());
        let mut wave = sig(0.0, 0.0);
        wave.meta.kernel = Kernel::Wave;
        assert!(matches!(c.knn_query(&wave, 1), Err(Error::Incompatible(_))));
        let mut dup = collection(&[("a", 0.0)]);
        assert!(dup.insert("a", sig(1.0, 1.0), None).is_err());
        assert!(dup.set_label("nope", 1).is_err());
    }
}
