//! Trace CSV output and wall-clock timing.

use std::io::Write;
use std::time::Instant;

use corels_core::solver::{Clock, Observer, TraceRecord};

pub const TRACE_HEADER: &str =
    "elapsed_s,incumbent_objective,popped_lower_bound,incumbent_length,logical_queue,physical_queue,trie_nodes,log10_remaining";

pub fn trace_row(r: &TraceRecord) -> String {
    let opt = |v: Option<String>| v.unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{}",
        r.elapsed_s,
        r.incumbent_objective,
        opt(r.popped_lower_bound.map(|b| b.to_string())),
        r.incumbent_length,
        r.logical_queue,
        r.physical_queue,
        r.trie_nodes,
        opt(r.log10_remaining().map(|l| l.to_string())),
    )
}

/// Writes each trace record as a CSV row. The first write error is kept
/// and later records are dropped.
pub struct CsvTrace<W: Write> {
    out: W,
    error: Option<std::io::Error>,
}

impl<W: Write> CsvTrace<W> {
    pub fn new(mut out: W) -> Self {
        let error = writeln!(out, "{TRACE_HEADER}").err();
        CsvTrace { out, error }
    }

    pub fn finish(mut self) -> std::io::Result<W> {
        if let Some(e) = self.error {
            return Err(e);
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

impl<W: Write> Observer for CsvTrace<W> {
    fn trace(&mut self, r: &TraceRecord) {
        if self.error.is_none() {
            self.error = writeln!(self.out, "{}", trace_row(r)).err();
        }
    }
}

/// Seconds since construction.
#[derive(Debug, Clone, Copy)]
pub struct WallClock(Instant);

impl WallClock {
    pub fn start() -> Self {
        WallClock(Instant::now())
    }
}

impl Clock for WallClock {
    fn elapsed_seconds(&mut self, _pops: u64) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}
