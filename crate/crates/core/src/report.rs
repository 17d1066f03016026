//! CSV and JSON renderings of results. Every artifact starts with a `#`
//! comment naming its columns. Output is a pure function of the input, so
//! identical runs give identical bytes.

use serde::Serialize;

use crate::classify::Classified;
use crate::error::Result;
use crate::matricize::{optimal_split, split_capacity, CoefficientMatrix, Split};
use crate::scan::ScanRow;
use crate::slocc::TrialReport;
use crate::state::Dims;

fn csv_body<R: AsRef<[u8]>>(header: &[String], rows: impl IntoIterator<Item = Vec<R>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Columns `state_id,l,sigma_list,ranks,family_label`; lists are `;`-separated.
pub fn classify_csv(items: &[Classified]) -> String {
    let header: Vec<String> = ["state_id", "l", "sigma_list", "ranks", "family_label"]
        .map(String::from)
        .to_vec();
    let rows = items.iter().map(|c| {
        vec![
            c.id.clone(),
            c.signature.split().to_string(),
            join(c.signature.sigmas.iter(), ";"),
            join(&c.signature.ranks, ";"),
            c.label.to_string(),
        ]
    });
    format!("# columns: {}\n{}", header.join(","), csv_body(&header, rows))
}

/// Columns `l0,l1,..,variance,rank_sigma0,..,family_label`.
pub fn scan_csv(levels: usize, n: usize, rows: &[ScanRow]) -> String {
    let m = rows.first().map_or(0, |r| r.signature.ranks.len());
    let mut header: Vec<String> = (0..levels).map(|k| format!("l{k}")).collect();
    header.push("variance".into());
    header.extend((0..m).map(|k| format!("rank_sigma{k}")));
    header.push("family_label".into());
    let sigmas = rows
        .first()
        .map(|r| r.signature.sigmas.to_string())
        .unwrap_or_default();
    let body = rows.iter().map(|r| {
        let mut rec: Vec<String> = r.occupations.iter().map(ToString::to_string).collect();
        rec.push(format!("{:.6}", r.variance_f64()));
        rec.extend(r.signature.ranks.iter().map(ToString::to_string));
        rec.push(r.label.to_string());
        rec
    });
    format!(
        "# dicke scan levels={levels} n={n} l={} sigma_set={sigmas}\n# columns: {}\n{}",
        n / 2,
        header.join(","),
        csv_body(&header, body)
    )
}

/// `# rows=R cols=C split=l sigma=...` then one line per matrix row.
pub fn matrix_dump(cm: &CoefficientMatrix) -> String {
    format!(
        "# rows={} cols={} split={} sigma={}\n{}",
        cm.rows(),
        cm.cols(),
        cm.split,
        cm.sigma,
        cm.matrix
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapacityRow {
    pub l: usize,
    pub sigma_count: usize,
    /// Decimal string; capacities overflow machine integers quickly.
    pub capacity: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapacityReport {
    pub dims: Vec<usize>,
    pub splits: Vec<CapacityRow>,
    pub optimal_l: usize,
}

pub fn capacity_report(dims: &Dims) -> Result<CapacityReport> {
    let n = dims.n();
    let splits = (1..n)
        .map(|l| {
            let split = Split::new(l, n)?;
            Ok(CapacityRow {
                l,
                sigma_count: crate::matricize::permutation_set(n, split).len(),
                capacity: split_capacity(dims, split)?.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CapacityReport {
        dims: dims.sizes().to_vec(),
        splits,
        optimal_l: optimal_split(dims).get(),
    })
}

pub fn capacity_csv(rep: &CapacityReport) -> String {
    let header: Vec<String> = ["l", "sigma_count", "capacity"].map(String::from).to_vec();
    let rows = rep
        .splits
        .iter()
        .map(|r| vec![r.l.to_string(), r.sigma_count.to_string(), r.capacity.clone()]);
    format!(
        "# columns: {}\n{}# optimal_l={}\n",
        header.join(","),
        csv_body(&header, rows),
        rep.optimal_l
    )
}

pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serializes");
    s.push('\n');
    s
}

/// One JSON object per trial.
pub fn trials_jsonl(reports: &[TrialReport]) -> String {
    let mut out = String::from(
        "# columns: seed,dims,invertible,result,identities_held?,ranks[{l,sigma,before,after}]\n",
    );
    for r in reports {
        out.push_str(&to_json_line(r));
    }
    out
}
