//! Rendering: JSON is the primary machine format; CSV is a flat projection
//! for spreadsheets.

use crate::commands::Document;
use crate::config::OutputFormat;

pub fn render(doc: &Document, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => render_json(doc),
        OutputFormat::Csv => render_csv(doc).into_bytes(),
    }
}

fn render_json(doc: &Document) -> Vec<u8> {
    let mut bytes = match doc {
        Document::Solve(d) => serde_json::to_vec_pretty(d),
        Document::Multistart(d) => serde_json::to_vec_pretty(d),
        Document::Scan(d) => serde_json::to_vec_pretty(d),
        Document::Limits(d) => serde_json::to_vec_pretty(d),
        Document::CompareBc(d) => serde_json::to_vec_pretty(d),
    }
    .expect("documents contain only finite numbers");
    bytes.push(b'\n');
    bytes
}

fn render_csv(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Solve(d) => {
            out.push_str("index,quantum_number,root,signed_root_input_order\n");
            let full_n: Vec<i64> = match &d.result.canonicalization {
                Some(c) if c.zero_reduced => std::iter::once(0)
                    .chain(c.canonical_n.iter().copied())
                    .collect(),
                Some(c) => c.canonical_n.to_vec(),
                None => Vec::new(),
            };
            for (i, root) in d.result.roots.iter().enumerate() {
                let nq = full_n.get(i).copied().unwrap_or_default();
                let signed = d.result.signed_roots_input_order.get(i).copied();
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    i + 1,
                    nq,
                    root,
                    signed.map_or(String::new(), |v| v.to_string())
                ));
            }
        }
        Document::Multistart(d) => {
            out.push_str("start,converged,iterations,cluster\n");
            for s in &d.result.per_start {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    s.start_index,
                    s.converged,
                    s.iterations,
                    s.cluster.map_or(String::new(), |c| c.to_string())
                ));
            }
        }
        Document::Scan(d) => {
            out.push_str(
                "sample,all_positive,strictly_increasing,log_minor_last,min_log_increment\n",
            );
            for s in &d.result.per_sample {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    s.index,
                    s.all_positive,
                    s.strictly_increasing,
                    s.log_minor_last,
                    s.min_log_increment
                ));
            }
        }
        Document::Limits(d) => {
            out.push_str("regime,coupling,deviation,in_asymptotic_regime\n");
            for rep in [&d.free, &d.tonks].into_iter().flatten() {
                let name = match rep.regime {
                    gaudin::analysis::LimitRegime::Free => "free",
                    gaudin::analysis::LimitRegime::Tonks => "tonks",
                };
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    name, d.inputs.coupling, rep.deviation, rep.in_asymptotic_regime
                ));
            }
        }
        Document::CompareBc(d) => {
            out.push_str("index,half_root,obstruction,mirror_error,half_residual_norm\n");
            for (i, (root, obs)) in d
                .result
                .positive_half
                .iter()
                .zip(&d.result.obstruction_per_row)
                .enumerate()
            {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    i + 1,
                    root,
                    obs,
                    d.result.mirror_error,
                    d.result.half_residual_norm
                ));
            }
        }
    }
    out
}
