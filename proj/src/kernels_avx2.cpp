// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// only reached through the dispatch table after a CPU feature check.

#include <immintrin.h>

#include <bit>
#include <cmath>
#include <vector>

#include "dcmpf/kernels.hpp"
#include "kernels_internal.hpp"

namespace dcmpf::kernels::avx2 {
namespace {

// Two interleaved complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// [re, im] -> [im, re] within each complex lane.
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }
// Exchange the two complex lanes.
inline __m256d swap_lanes(__m256d v) { return _mm256_permute2f128_pd(v, v, 0x01); }

// Complex product with per-lane factors given as duplicated real/imag parts.
inline __m256d cmul(__m256d v, __m256d fr, __m256d fi) {
  return _mm256_fmaddsub_pd(v, fr, _mm256_mul_pd(swap_re_im(v), fi));
}

inline __m256d cmul(__m256d v, cplx f) {
  return cmul(v, _mm256_set1_pd(f.real()), _mm256_set1_pd(f.imag()));
}

inline __m256d lane_pair(double lo, double hi) { return _mm256_set_pd(hi, hi, lo, lo); }

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void pauli_rotation(std::span<cplx> amps, PauliMasks p, double angle) {
  const std::uint64_t dim = amps.size();
  if (dim < 4 || p.x == 1) {
    scalar::pauli_rotation(amps, p, angle);
    return;
  }
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const __m256d vc = _mm256_set1_pd(c);
  if (p.x == 0) {
    for (std::uint64_t k = 0; k < dim; k += 2) {
      const __m256d fi = lane_pair(-s * parity_sign(k & p.z), -s * parity_sign((k + 1) & p.z));
      store2(&amps[k], cmul(load2(&amps[k]), vc, fi));
    }
    return;
  }
  const cplx f = cplx(0.0, -s) * i_power(p.y_count);
  const std::uint64_t half = std::uint64_t{1} << (std::bit_width(p.x) - 1);
  const bool reversed_partner = (p.x & 1) != 0;
  for (std::uint64_t base = 0; base < dim; base += 2 * half) {
    for (std::uint64_t k = base; k < base + half; k += 2) {
      const std::uint64_t k2 = k ^ p.x;
      const std::uint64_t k2_next = (k + 1) ^ p.x;
      cplx* partner = &amps[reversed_partner ? k2_next : k2];
      const __m256d a = load2(&amps[k]);
      __m256d b = load2(partner);
      if (reversed_partner) b = swap_lanes(b);

      const double sa0 = parity_sign(k2 & p.z), sa1 = parity_sign(k2_next & p.z);
      const double sb0 = parity_sign(k & p.z), sb1 = parity_sign((k + 1) & p.z);
      const __m256d new_a = _mm256_fmadd_pd(
          vc, a, cmul(b, lane_pair(f.real() * sa0, f.real() * sa1), lane_pair(f.imag() * sa0, f.imag() * sa1)));
      __m256d new_b = _mm256_fmadd_pd(
          vc, b, cmul(a, lane_pair(f.real() * sb0, f.real() * sb1), lane_pair(f.imag() * sb0, f.imag() * sb1)));
      store2(&amps[k], new_a);
      if (reversed_partner) new_b = swap_lanes(new_b);
      store2(partner, new_b);
    }
  }
}

void apply_1q(std::span<cplx> amps, int qubit, const Mat2& m) {
  const std::uint64_t dim = amps.size();
  if (dim < 4) {
    scalar::apply_1q(amps, qubit, m);
    return;
  }
  if (qubit == 0) {
    const __m256d dr = lane_pair(m[0].real(), m[3].real());
    const __m256d di = lane_pair(m[0].imag(), m[3].imag());
    const __m256d orr = lane_pair(m[1].real(), m[2].real());
    const __m256d oi = lane_pair(m[1].imag(), m[2].imag());
    for (std::uint64_t k = 0; k < dim; k += 2) {
      const __m256d v = load2(&amps[k]);
      store2(&amps[k], _mm256_add_pd(cmul(v, dr, di), cmul(swap_lanes(v), orr, oi)));
    }
    return;
  }
  const std::uint64_t half = std::uint64_t{1} << qubit;
  for (std::uint64_t base = 0; base < dim; base += 2 * half) {
    for (std::uint64_t k = base; k < base + half; k += 2) {
      const __m256d a = load2(&amps[k]);
      const __m256d b = load2(&amps[k + half]);
      store2(&amps[k], _mm256_add_pd(cmul(a, m[0]), cmul(b, m[1])));
      store2(&amps[k + half], _mm256_add_pd(cmul(a, m[2]), cmul(b, m[3])));
    }
  }
}

cplx pauli_expectation(std::span<const cplx> amps, PauliMasks p) {
  const std::uint64_t dim = amps.size();
  if (dim < 4) return scalar::pauli_expectation(amps, p);
  const bool reversed_partner = (p.x & 1) != 0;
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  for (std::uint64_t k = 0; k < dim; k += 2) {
    const std::uint64_t k2 = k ^ p.x;
    const std::uint64_t k2_next = (k + 1) ^ p.x;
    const __m256d a = load2(&amps[k]);
    __m256d b = load2(&amps[reversed_partner ? k2_next : k2]);
    if (reversed_partner) b = swap_lanes(b);
    const __m256d sign = lane_pair(parity_sign(k2 & p.z), parity_sign(k2_next & p.z));
    const __m256d sb = _mm256_mul_pd(sign, b);
    // conj(a) * b: re = ar br + ai bi, im = ar bi - ai br
    acc_re = _mm256_fmadd_pd(a, sb, acc_re);
    acc_im = _mm256_fmadd_pd(a, swap_re_im(sb), acc_im);
  }
  alignas(32) double im_lanes[4];
  _mm256_store_pd(im_lanes, acc_im);
  const cplx sum(hsum(acc_re), im_lanes[0] - im_lanes[1] + im_lanes[2] - im_lanes[3]);
  return sum * i_power(p.y_count);
}

double norm_squared(std::span<const cplx> amps) {
  const std::uint64_t dim = amps.size();
  if (dim < 2) return scalar::norm_squared(amps);
  __m256d acc = _mm256_setzero_pd();
  std::uint64_t k = 0;
  for (; k + 2 <= dim; k += 2) {
    const __m256d v = load2(&amps[k]);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double total = hsum(acc);
  for (; k < dim; ++k) total += std::norm(amps[k]);
  return total;
}

void depolarize_pair(std::span<cplx> rho, int n_qubits, int q1, int q2, double p) {
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  if (rho.size() < 4) {
    scalar::depolarize_pair(rho, n_qubits, q1, q2, p);
    return;
  }
  const std::uint64_t pair = (std::uint64_t{1} << q1) | (std::uint64_t{1} << q2);
  const std::uint64_t offsets[4] = {0, std::uint64_t{1} << q1, std::uint64_t{1} << q2, pair};

  // Pair traces from the unscaled matrix, one per (row, col) block.
  std::vector<cplx> traces;
  traces.reserve(rho.size() / 16);
  for (std::uint64_t col = 0; col < dim; ++col) {
    if (col & pair) continue;
    for (std::uint64_t row = 0; row < dim; ++row) {
      if (row & pair) continue;
      cplx trace = 0.0;
      for (std::uint64_t o : offsets) trace += rho[(row | o) | ((col | o) << n_qubits)];
      traces.push_back(trace);
    }
  }

  const __m256d keep = _mm256_set1_pd(1.0 - p);
  for (std::uint64_t k = 0; k < rho.size(); k += 2) store2(&rho[k], _mm256_mul_pd(keep, load2(&rho[k])));

  std::size_t block = 0;
  for (std::uint64_t col = 0; col < dim; ++col) {
    if (col & pair) continue;
    for (std::uint64_t row = 0; row < dim; ++row) {
      if (row & pair) continue;
      const cplx add = 0.25 * p * traces[block++];
      for (std::uint64_t o : offsets) rho[(row | o) | ((col | o) << n_qubits)] += add;
    }
  }
}

}  // namespace dcmpf::kernels::avx2
