use corels_core::BitVec;

/// Confusion counts and rates of binary predictions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

impl Metrics {
    pub fn new(predictions: &BitVec, labels: &BitVec) -> Self {
        let tp = predictions.and_count(labels);
        let fp = predictions.andnot(labels).count_ones();
        let fn_ = labels.andnot(predictions).count_ones();
        let tn = labels.len() - tp - fp - fn_;
        Metrics { tp, fp, tn, fn_ }
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn accuracy(&self) -> f64 {
        ratio(self.tp + self.tn, self.total())
    }

    pub fn tpr(&self) -> f64 {
        ratio(self.tp, self.tp + self.fn_)
    }

    pub fn fpr(&self) -> f64 {
        ratio(self.fp, self.fp + self.tn)
    }

    pub fn tnr(&self) -> f64 {
        ratio(self.tn, self.fp + self.tn)
    }

    pub fn fnr(&self) -> f64 {
        ratio(self.fn_, self.tp + self.fn_)
    }

    pub const CSV_HEADER: &'static str = "accuracy,tpr,fpr,tnr,fnr,tp,fp,tn,fn";

    pub fn csv_row(&self) -> String {
        format!(
            "{:.6},{:.6},{:.6},{:.6},{:.6},{},{},{},{}",
            self.accuracy(),
            self.tpr(),
            self.fpr(),
            self.tnr(),
            self.fnr(),
            self.tp,
            self.fp,
            self.tn,
            self.fn_
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitVec {
        BitVec::from_bools(s.bytes().map(|b| b == b'1'))
    }

    #[test]
    fn constant_prediction_on_balanced_labels() {
        let m = Metrics::new(&bits("1111"), &bits("1100"));
        assert_eq!(m.accuracy(), 0.5);
        assert_eq!((m.tpr(), m.fpr()), (1.0, 1.0));
    }

    #[test]
    fn perfect_separator() {
        let m = Metrics::new(&bits("1100"), &bits("1100"));
        assert_eq!((m.accuracy(), m.fpr(), m.fnr(), m.tnr()), (1.0, 0.0, 0.0, 1.0));
        assert_eq!(m.csv_row(), "1.000000,1.000000,0.000000,1.000000,0.000000,2,0,2,0");
    }
}
