#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace tfq {

using cplx = std::complex<double>;

namespace fft {

/// Forward uses exp(-2πi nk/N), Backward uses exp(+2πi nk/N). Neither normalizes.
enum class Direction { Forward, Backward };

/// In-place unnormalized DFT of length data.size().
void transform(std::span<cplx> data, Direction dir);

/// Row-major in-place N-dimensional DFT.
void transform_nd(std::span<cplx> data, std::span<const int> dims, Direction dir);

/// Offset DFT, the single place where the centered-grid twiddles live:
///
///   out[k] = scale * sum_n in[n] * exp(s * 2πi (n + in_offset)(k + out_offset) / N)
///
/// with s = -1 for Forward and +1 for Backward. Offsets must be multiples of 1/2.
/// Evaluated as pre-twiddle exp(s 2πi n out_offset / N), a plain FFT, and the
/// post-twiddle exp(s 2πi in_offset (k + out_offset) / N).
/// A centered grid x_n = (n - N/2 + shift) h and its dual ξ_k = (k - N/2)/(N h)
/// correspond to in_offset = shift - N/2 and out_offset = -N/2.
void offset_dft(std::span<const cplx> in, std::span<cplx> out, Direction dir,
                double in_offset, double out_offset, double scale);

/// Test-harness hook: adds `delta` to every post-twiddle factor. Zero restores
/// correct transforms. Used to check that the verification suite catches a
/// broken transform.
void set_twiddle_fault(double delta);
double twiddle_fault();

}  // namespace fft
}  // namespace tfq
