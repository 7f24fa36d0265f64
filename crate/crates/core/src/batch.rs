//! Grid drivers: batch verification and the on-disk table of classes.
//!
//! Work fans out over a rayon pool of the requested size; results are
//! collected in input order, so output bytes do not depend on `jobs`.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::brill_noether::{
    cone_weights, count_special, enumerate_divisorial, BNData, VanishingSequence,
};
use crate::divisor_classes::bn_k_class_direct;
use crate::error::{Error, Result};
use crate::picard::DownClass;
use crate::rational::{self, Q};
use crate::test_families::{verify_dual_path, VerificationReport};

pub const TABLE_SCHEMA: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub genus: RangeInclusive<i64>,
    pub k: RangeInclusive<i64>,
    pub d_max: i64,
    pub r_max: i64,
}

impl Grid {
    /// Every `(datum, k)` pair in the grid, ordered by `(g, r, d, a, k)`.
    pub fn cells(&self) -> Vec<(BNData, i64)> {
        self.genus
            .clone()
            .flat_map(|g| enumerate_divisorial(g, self.r_max, self.d_max))
            .flat_map(|datum| self.k.clone().map(move |k| (datum.clone(), k)))
            .collect()
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start worker pool: {e}")))
}

pub fn verify_grid(grid: &Grid, jobs: usize) -> Result<Vec<VerificationReport>> {
    let cells = grid.cells();
    Ok(pool(jobs)?.install(|| {
        cells
            .par_iter()
            .map(|(d, k)| verify_dual_path(d, *k))
            .collect()
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub g: i64,
    pub k: i64,
    pub d: i64,
    pub a: Vec<i64>,
    #[serde(with = "rational::serde_q")]
    pub n: Q,
    #[serde(with = "rational::serde_q")]
    pub mu: Q,
    #[serde(with = "rational::serde_q")]
    pub nu: Q,
    pub class: DownClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCache {
    pub schema: u64,
    /// SHA-256 of the compact JSON encoding of `cells`.
    pub digest: String,
    pub cells: Vec<TableCell>,
}

fn digest_cells(cells: &[TableCell]) -> Result<String> {
    let bytes = serde_json::to_vec(cells).map_err(|e| Error::Invariant(e.to_string()))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

fn table_cell(datum: &BNData, k: i64) -> Result<Option<TableCell>> {
    let (mu, nu) = match cone_weights(datum) {
        Ok(w) => w,
        Err(Error::Unsupported(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(Some(TableCell {
        g: datum.g,
        k,
        d: datum.d,
        a: datum.a.entries().to_vec(),
        n: Q::from_integer(count_special(datum.g, datum.d, &datum.a)?),
        mu,
        nu,
        class: bn_k_class_direct(datum, k)?,
    }))
}

/// Computes `n`, `mu`, `nu` and the class for every supported grid cell.
/// Genus-2 data other than the Weierstrass datum are left out.
pub fn generate_table(grid: &Grid, jobs: usize) -> Result<TableCache> {
    let cells = grid.cells();
    let computed: Vec<Option<TableCell>> = pool(jobs)?.install(|| {
        cells
            .par_iter()
            .map(|(d, k)| table_cell(d, *k))
            .collect::<Result<_>>()
    })?;
    let cells: Vec<TableCell> = computed.into_iter().flatten().collect();
    Ok(TableCache {
        schema: TABLE_SCHEMA,
        digest: digest_cells(&cells)?,
        cells,
    })
}

impl TableCache {
    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let mut s =
            serde_json::to_string_pretty(self).map_err(|e| Error::Invariant(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    /// Parses a table, rejecting unknown schemas and digest mismatches.
    pub fn from_json(s: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Schema(format!("not JSON: {e}")))?;
        match value.get("schema").and_then(serde_json::Value::as_u64) {
            Some(TABLE_SCHEMA) => {}
            other => {
                return Err(Error::Schema(format!(
                    "expected schema {TABLE_SCHEMA}, found {other:?}"
                )))
            }
        }
        let table: TableCache =
            serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
        if digest_cells(&table.cells)? != table.digest {
            return Err(Error::Schema("digest does not match cells".into()));
        }
        Ok(table)
    }

    pub fn query(&self, g: i64, k: i64, d: i64, a: &VanishingSequence) -> Option<&TableCell> {
        self.cells
            .iter()
            .find(|c| c.g == g && c.k == k && c.d == d && c.a == a.entries())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::test_families::Status;

    fn grid(g: RangeInclusive<i64>, k: RangeInclusive<i64>, d_max: i64, r_max: i64) -> Grid {
        Grid {
            genus: g,
            k,
            d_max,
            r_max,
        }
    }

    #[test]
    fn table_contains_weierstrass_row() {
        let t = generate_table(&grid(3..=3, 1..=1, 4, 3), 1).unwrap();
        let a: VanishingSequence = "0,1,3".parse().unwrap();
        let cell = t.query(3, 1, 4, &a).unwrap();
        assert_eq!(cell.n, int(24));
        assert_eq!(
            cell.class.coefficients(),
            vec![int(-24), int(68), int(-6), int(-12)]
        );
        assert!(t.query(3, 2, 4, &a).is_none());
    }

    #[test]
    fn table_bytes_independent_of_jobs() {
        let g = grid(3..=5, 1..=2, 8, 3);
        let one = generate_table(&g, 1).unwrap().to_json().unwrap();
        let many = generate_table(&g, 8).unwrap().to_json().unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn table_round_trip_and_schema_checks() {
        let t = generate_table(&grid(2..=3, 1..=2, 4, 2), 2).unwrap();
        let s = t.to_json().unwrap();
        assert_eq!(TableCache::from_json(&s).unwrap(), t);
        let bumped = s.replacen("\"schema\": 1", "\"schema\": 2", 1);
        assert!(matches!(
            TableCache::from_json(&bumped),
            Err(Error::Schema(_))
        ));
        let tampered = s.replacen("\"-24\"", "\"-25\"", 1);
        assert!(matches!(
            TableCache::from_json(&tampered),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn genus_two_table_keeps_only_weierstrass() {
        let t = generate_table(&grid(2..=2, 1..=1, 3, 1), 1).unwrap();
        assert_eq!(t.cells.len(), 1);
        assert_eq!(t.cells[0].a, vec![0, 2]);
    }

    #[test]
    fn verify_grid_statuses() {
        let reports = verify_grid(&grid(3..=4, 1..=2, 6, 3), 4).unwrap();
        assert!(!reports.is_empty());
        assert!(reports.iter().all(|r| r.status == Status::Pass));
        let empty = verify_grid(&grid(3..=4, 1..=2, 1, 3), 1).unwrap();
        assert!(empty.is_empty());
        let g2 = verify_grid(&grid(2..=2, 1..=1, 3, 1), 1).unwrap();
        assert_eq!(g2.len(), 2);
        assert_eq!(g2[0].status, Status::Pass);
        assert_eq!(g2[1].status, Status::Unsupported);
    }
}
