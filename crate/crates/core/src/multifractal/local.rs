use super::partition::PartitionScheme;
use crate::error::{Error, Result};
use crate::measures::MatrixMeasure;

#[derive(Clone, Debug)]
pub struct LocalDimensionEstimate {
    /// log η⟦w_1..w_k⟧ / log |⟦w_1..w_k⟧| for k = 1..n
    pub slopes: Vec<f64>,
    /// mean over the second half of the levels
    pub tail_average: f64,
}

/// Slopes along the nest of basic intervals coded by the prefixes of `stream`.
pub fn local_dimension(
    measure: &MatrixMeasure<f64>,
    scheme: &PartitionScheme,
    stream: &[usize],
) -> Result<LocalDimensionEstimate> {
    measure.family().check_word(stream)?;
    let Some((&first, rest)) = stream.split_first() else {
        return Err(Error::Spectrum("empty stream".into()));
    };
    let mut slopes = Vec::with_capacity(stream.len());
    let mut row = measure.start_row(first);
    let mut log = 0.0;
    let mut e = scheme.exponents[first];
    let record = |row: &[f64], log: f64, e: u32, k: usize| -> Result<f64> {
        let v = measure.row_value(row);
        if !(v > 0.0) {
            return Err(Error::ZeroMeasure(format!("prefix of length {k}")));
        }
        let log_len = scheme.log_scale(e);
        if log_len >= 0.0 {
            return Ok(f64::NAN);
        }
        Ok((log + v.ln()) / log_len)
    };
    slopes.push(record(&row, log, e, 1)?);
    for (k, &c) in rest.iter().enumerate() {
        row = measure.step_row(&row, c);
        let s: f64 = row.iter().sum();
        if !(s > 0.0) {
            return Err(Error::ZeroMeasure(format!("prefix of length {}", k + 2)));
        }
        row.iter_mut().for_each(|x| *x /= s);
        log += s.ln();
        e += scheme.exponents[c];
        slopes.push(record(&row, log, e, k + 2)?);
    }
    let tail: Vec<f64> = slopes[slopes.len() / 2..].iter().copied().filter(|x| x.is_finite()).collect();
    let tail_average = tail.iter().sum::<f64>() / tail.len().max(1) as f64;
    Ok(LocalDimensionEstimate { slopes, tail_average })
}
