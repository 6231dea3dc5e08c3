//! The pure per-element pass functions. Every kernel is a gather: it reads
//! only the input buffer and its table, and writes each output element
//! exactly once, so any partitioning of the output index space computes the
//! same bits.

use crate::buffer::Buffer2D;
use crate::complex::{Complex, Real};
use crate::error::{Error, Result};
use crate::plan::{Axis, PassDescriptor, PassTable, ScrambleTable, StageTable};

/// A pass instantiated against concrete tables, expressed as an output-row
/// filler. Row passes gather within each line; column passes gather across
/// lines with the whole row sharing one descriptor.
pub(crate) enum Kernel<'a, P: Real> {
    Scramble {
        axis: Axis,
        table: &'a ScrambleTable,
    },
    Butterfly {
        axis: Axis,
        table: &'a StageTable<P>,
    },
    Conjugate,
    Scale {
        factor: P,
    },
}

impl<'a, P: Real> Kernel<'a, P> {
    pub(crate) fn from_pass(pass: &'a PassDescriptor<P>) -> Self {
        match pass.table() {
            PassTable::Scramble(table) => Kernel::Scramble {
                axis: pass.axis(),
                table,
            },
            PassTable::Butterfly(table) => Kernel::Butterfly {
                axis: pass.axis(),
                table,
            },
        }
    }

    pub(crate) fn validate(&self, width: usize, height: usize) -> Result<()> {
        let check = |axis: Axis, len: usize| {
            let extent = axis.extent(width, height);
            if len == extent {
                Ok(())
            } else {
                Err(Error::TableMismatch {
                    axis: axis.label(),
                    table_len: len,
                    extent,
                })
            }
        };
        match self {
            Kernel::Scramble { axis, table } => check(*axis, table.len()),
            Kernel::Butterfly { axis, table } => check(*axis, table.len()),
            Kernel::Conjugate => Ok(()),
            Kernel::Scale { factor } => {
                if factor.is_finite() && !factor.is_zero() {
                    Ok(())
                } else {
                    Err(Error::BadScaleFactor)
                }
            }
        }
    }

    /// Fills output row `row` from the input buffer.
    pub(crate) fn fill_row(&self, input: &Buffer2D<P>, row: usize, out: &mut [Complex<P>]) {
        match self {
            Kernel::Scramble {
                axis: Axis::Rows,
                table,
            } => {
                let line = input.row(row);
                for (o, &src) in out.iter_mut().zip(table.indices()) {
                    *o = line[src];
                }
            }
            Kernel::Scramble {
                axis: Axis::Cols,
                table,
            } => {
                out.copy_from_slice(input.row(table.indices()[row]));
            }
            Kernel::Butterfly {
                axis: Axis::Rows,
                table,
            } => {
                let line = input.row(row);
                for (o, b) in out.iter_mut().zip(table.entries()) {
                    *o = line[b.base] + b.weight * line[b.partner];
                }
            }
            Kernel::Butterfly {
                axis: Axis::Cols,
                table,
            } => {
                let b = table.entries()[row];
                let base = input.row(b.base);
                let partner = input.row(b.partner);
                for (o, (&x, &y)) in out.iter_mut().zip(base.iter().zip(partner)) {
                    *o = x + b.weight * y;
                }
            }
            Kernel::Conjugate => {
                for (o, &z) in out.iter_mut().zip(input.row(row)) {
                    *o = z.conj();
                }
            }
            Kernel::Scale { factor } => {
                for (o, &z) in out.iter_mut().zip(input.row(row)) {
                    *o = z.scale(*factor);
                }
            }
        }
    }
}

fn run_out_of_place<P: Real>(kernel: &Kernel<'_, P>, input: &Buffer2D<P>) -> Result<Buffer2D<P>> {
    kernel.validate(input.width(), input.height())?;
    let mut out = Buffer2D::zeros(input.width(), input.height());
    for row in 0..input.height() {
        kernel.fill_row(input, row, out.row_mut(row));
    }
    Ok(out)
}

/// Applies one butterfly stage along `axis`:
/// `out[line][k] = in[line][base_k] + weight_k * in[line][partner_k]`.
pub fn butterfly_pass<P: Real>(
    input: &Buffer2D<P>,
    table: &StageTable<P>,
    axis: Axis,
) -> Result<Buffer2D<P>> {
    run_out_of_place(&Kernel::Butterfly { axis, table }, input)
}

/// Permutes every line along `axis` by the scramble table:
/// `out[line][k] = in[line][index_k]`.
pub fn scramble_pass<P: Real>(
    input: &Buffer2D<P>,
    table: &ScrambleTable,
    axis: Axis,
) -> Result<Buffer2D<P>> {
    run_out_of_place(&Kernel::Scramble { axis, table }, input)
}

/// Multiplies every sample by a finite nonzero factor.
pub fn scale_pass<P: Real>(input: &Buffer2D<P>, factor: P) -> Result<Buffer2D<P>> {
    run_out_of_place(&Kernel::Scale { factor }, input)
}

/// Conjugates every sample.
pub fn conjugate_pass<P: Real>(input: &Buffer2D<P>) -> Buffer2D<P> {
    run_out_of_place(&Kernel::Conjugate, input).expect("conjugate has no failure mode")
}

/// Renders the buffer as a normalized magnitude grid in [0, 1], row-major.
///
/// `log_scale` maps each magnitude m to ln(1 + m) before normalization;
/// `shift` swaps quadrants so the DC element lands at (height/2, width/2).
/// An all-zero buffer maps to an all-zero grid.
pub fn magnitude_map<P: Real>(input: &Buffer2D<P>, log_scale: bool, shift: bool) -> Vec<f64> {
    let (w, h) = (input.width(), input.height());
    let mut values: Vec<f64> = input
        .as_slice()
        .iter()
        .map(|z| {
            let m = z.widen().norm();
            if log_scale {
                m.ln_1p()
            } else {
                m
            }
        })
        .collect();
    if shift {
        let mut shifted = vec![0.0; values.len()];
        for r in 0..h {
            for c in 0..w {
                shifted[((r + h / 2) % h) * w + (c + w / 2) % w] = values[r * w + c];
            }
        }
        values = shifted;
    }
    let max = values.iter().copied().fold(0.0f64, f64::max);
    if max > 0.0 {
        for v in &mut values {
            *v /= max;
        }
    }
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::{build_scramble_table, build_stage_table};
    use proptest::prelude::*;

    fn row_buffer(values: &[f64]) -> Buffer2D<f64> {
        Buffer2D::from_real_rows(&[values.to_vec()]).unwrap()
    }

    #[test]
    fn two_point_butterfly_is_sum_and_difference() {
        let table = build_stage_table(2, 1).unwrap();
        let out = butterfly_pass(&row_buffer(&[1.0, 0.0]), &table, Axis::Rows).unwrap();
        assert_eq!(out.get(0, 0), Complex::new(1.0, 0.0));
        assert_eq!(out.get(0, 1), Complex::new(1.0, 0.0));

        let out = butterfly_pass(&row_buffer(&[5.0, 3.0]), &table, Axis::Rows).unwrap();
        assert_eq!(out.get(0, 0).re, 8.0);
        assert_eq!(out.get(0, 1).re, 2.0);
    }

    #[test]
    fn impulse_chain_through_both_stages() {
        let scramble = build_scramble_table(4).unwrap();
        let s1 = build_stage_table(4, 1).unwrap();
        let s2 = build_stage_table(4, 2).unwrap();

        let input = row_buffer(&[1.0, 0.0, 0.0, 0.0]);
        let a = scramble_pass(&input, &scramble, Axis::Rows).unwrap();
        let re: Vec<f64> = a.as_slice().iter().map(|z| z.re).collect();
        assert_eq!(re, vec![1.0, 0.0, 0.0, 0.0]);

        let b = butterfly_pass(&a, &s1, Axis::Rows).unwrap();
        let re: Vec<f64> = b.as_slice().iter().map(|z| z.re).collect();
        assert_eq!(re, vec![1.0, 1.0, 0.0, 0.0]);

        let c = butterfly_pass(&b, &s2, Axis::Rows).unwrap();
        for k in 0..4 {
            assert!((c.get(0, k).re - 1.0).abs() < 1e-15);
            assert!(c.get(0, k).im.abs() < 1e-15);
        }
    }

    #[test]
    fn scramble_gathers_by_table() {
        let table = build_scramble_table(4).unwrap();
        let out = scramble_pass(&row_buffer(&[10.0, 20.0, 30.0, 40.0]), &table, Axis::Rows)
            .unwrap();
        let re: Vec<f64> = out.as_slice().iter().map(|z| z.re).collect();
        assert_eq!(re, vec![10.0, 30.0, 20.0, 40.0]);
    }

    #[test]
    fn scramble_of_identity_ramp_reads_out_the_table() {
        let table = build_scramble_table(8).unwrap();
        let ramp: Vec<f64> = (0..8).map(|v| v as f64).collect();
        let out = scramble_pass(&row_buffer(&ramp), &table, Axis::Rows).unwrap();
        let re: Vec<f64> = out.as_slice().iter().map(|z| z.re).collect();
        assert_eq!(re, vec![0.0, 4.0, 2.0, 6.0, 1.0, 5.0, 3.0, 7.0]);
    }

    #[test]
    fn length_two_scramble_is_identity() {
        let table = build_scramble_table(2).unwrap();
        let input = row_buffer(&[7.0, -2.0]);
        let out = scramble_pass(&input, &table, Axis::Rows).unwrap();
        assert_eq!(out, input);
    }

    #[test]
    fn mismatched_table_is_rejected() {
        let table = build_scramble_table(8).unwrap();
        let err = scramble_pass(&row_buffer(&[1.0, 2.0]), &table, Axis::Rows).unwrap_err();
        assert!(matches!(err, Error::TableMismatch { .. }));

        let stage = build_stage_table::<f64>(8, 1).unwrap();
        let err = butterfly_pass(&row_buffer(&[1.0, 2.0]), &stage, Axis::Cols).unwrap_err();
        assert!(matches!(err, Error::TableMismatch { axis: "cols", .. }));
    }

    #[test]
    fn column_passes_use_strided_lines() {
        // 2x4 buffer; columns have length 4.
        let input = Buffer2D::from_real_rows(&[
            vec![0.0, 1.0],
            vec![2.0, 3.0],
            vec![4.0, 5.0],
            vec![6.0, 7.0],
        ])
        .unwrap();
        let table = build_scramble_table(4).unwrap();
        let out = scramble_pass(&input, &table, Axis::Cols).unwrap();
        let col: Vec<f64> = (0..4).map(|r| out.get(r, 0).re).collect();
        assert_eq!(col, vec![0.0, 4.0, 2.0, 6.0]);
    }

    #[test]
    fn scale_pass_examples() {
        let input = Buffer2D::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let same = scale_pass(&input, 1.0).unwrap();
        assert_eq!(same, input);

        let quarter = scale_pass(&input, 0.25).unwrap();
        assert!(quarter
            .as_slice()
            .iter()
            .all(|z| *z == Complex::new(0.25, 0.0)));

        assert_eq!(scale_pass(&input, 0.0).unwrap_err(), Error::BadScaleFactor);
        assert_eq!(
            scale_pass(&input, f64::INFINITY).unwrap_err(),
            Error::BadScaleFactor
        );
    }

    #[test]
    fn scale_completes_a_manual_inverse_chain() {
        let scramble = build_scramble_table(4).unwrap();
        let stages: Vec<_> = (1..=2)
            .map(|s| build_stage_table::<f64>(4, s).unwrap())
            .collect();
        let forward = |mut buf: Buffer2D<f64>| {
            buf = scramble_pass(&buf, &scramble, Axis::Rows).unwrap();
            for stage in &stages {
                buf = butterfly_pass(&buf, stage, Axis::Rows).unwrap();
            }
            buf
        };

        let input = row_buffer(&[1.0, 2.0, 3.0, 4.0]);
        let spectrum = forward(input.clone());
        let restored = scale_pass(
            &conjugate_pass(&forward(conjugate_pass(&spectrum))),
            0.25,
        )
        .unwrap();
        for k in 0..4 {
            assert!((restored.get(0, k) - input.get(0, k)).norm() < 1e-12);
        }
    }

    #[test]
    fn conjugate_pass_examples() {
        let real = row_buffer(&[1.0, 2.0]);
        assert_eq!(conjugate_pass(&real), real);

        let buf = Buffer2D::from_complex(1, 1, vec![Complex::new(0.0, 1.0)]).unwrap();
        assert_eq!(conjugate_pass(&buf).get(0, 0), Complex::new(0.0, -1.0));
        assert_eq!(conjugate_pass(&conjugate_pass(&buf)), buf);
    }

    #[test]
    fn magnitude_map_handles_all_zero_input() {
        let buf = Buffer2D::<f32>::zeros(4, 4);
        let grid = magnitude_map(&buf, true, true);
        assert!(grid.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn magnitude_map_centers_dc_when_shifted() {
        // Spectrum of a constant image: DC only, at the origin.
        let mut buf = Buffer2D::<f64>::zeros(8, 8);
        buf.set(0, 0, Complex::new(64.0, 0.0));
        let grid = magnitude_map(&buf, true, true);
        for r in 0..8 {
            for c in 0..8 {
                let expected = if (r, c) == (4, 4) { 1.0 } else { 0.0 };
                assert_eq!(grid[r * 8 + c], expected, "at ({r},{c})");
            }
        }
    }

    #[test]
    fn magnitude_map_maximum_is_exactly_one() {
        let buf = Buffer2D::from_real_rows(&[vec![0.5, -3.0], vec![2.0, 1.0]]).unwrap();
        let grid = magnitude_map(&buf, false, false);
        assert_eq!(grid.iter().copied().fold(0.0f64, f64::max), 1.0);
    }

    #[test]
    fn every_output_element_is_written() {
        // Prefill the output with NaN and confirm a pass overwrites all of it.
        let stage = build_stage_table::<f64>(4, 2).unwrap();
        let kernel = Kernel::Butterfly {
            axis: Axis::Cols,
            table: &stage,
        };
        let input = Buffer2D::<f64>::zeros(3, 4);
        let mut out = Buffer2D::from_complex(
            3,
            4,
            vec![Complex::new(f64::NAN, f64::NAN); 12],
        )
        .unwrap();
        for row in 0..4 {
            kernel.fill_row(&input, row, out.row_mut(row));
        }
        assert_eq!(out.first_non_finite(), None);
    }

    proptest! {
        #[test]
        fn passes_are_pure(values in proptest::collection::vec(-100.0f64..100.0, 8)) {
            let buf = row_buffer(&values);
            let table = build_stage_table(8, 2).unwrap();
            let a = butterfly_pass(&buf, &table, Axis::Rows).unwrap();
            let b = butterfly_pass(&buf, &table, Axis::Rows).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn scramble_twice_is_identity(values in proptest::collection::vec(-100.0f64..100.0, 16)) {
            let buf = row_buffer(&values);
            let table = build_scramble_table(16).unwrap();
            let once = scramble_pass(&buf, &table, Axis::Rows).unwrap();
            let twice = scramble_pass(&once, &table, Axis::Rows).unwrap();
            prop_assert_eq!(twice, buf);
        }

        #[test]
        fn butterfly_pass_is_linear(
            x in proptest::collection::vec(-10.0f64..10.0, 8),
            y in proptest::collection::vec(-10.0f64..10.0, 8),
            alpha in -2.0f64..2.0,
            beta in -2.0f64..2.0,
        ) {
            let table = build_stage_table(8, 3).unwrap();
            let combined: Vec<f64> = x.iter().zip(&y).map(|(a, b)| alpha * a + beta * b).collect();
            let lhs = butterfly_pass(&row_buffer(&combined), &table, Axis::Rows).unwrap();

            let fx = butterfly_pass(&row_buffer(&x), &table, Axis::Rows).unwrap();
            let fy = butterfly_pass(&row_buffer(&y), &table, Axis::Rows).unwrap();
            for k in 0..8 {
                let rhs = fx.get(0, k).scale(alpha) + fy.get(0, k).scale(beta);
                let delta = (lhs.get(0, k) - rhs).norm();
                prop_assert!(delta <= 1e-12, "k={k} delta={delta}");
            }
        }
    }
}
