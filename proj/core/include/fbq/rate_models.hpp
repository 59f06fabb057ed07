// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FBQ_RATE_MODELS_HPP_
#define FBQ_RATE_MODELS_HPP_

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fbq/problem.hpp"

namespace fbq {

// ---------------------------------------------------------------------------
// SISO uniform-quantizer model. |h|^2 is exponential(1) truncated to
// [0, sigma]; the receiver quantizes sqrt(alpha)*|h|^2 with a uniform
// 2^b-cell quantizer on [0, sigma].

struct SisoModel {
  double alpha = 1.0;   // large-scale gain, linear
  double sigma = 20.0;  // truncation support of |h|^2

  // 1 / (1 - e^{-sigma}), so the truncated density integrates to 1.
  double normalization() const;
};

// Expected quantized rate E[log2(1 + floor_Q(sqrt(alpha)|h|^2))].
// Exact per-cell integration of the truncated exponential; reduces to the
// closed-form sum for alpha = 1. Throws BudgetTooLargeError for bits > 30.
double siso_rate(const SisoModel& model, int bits);

// C(sigma)^{-1} (r[1,b+1] - r[1,b]) in factored form (alpha = 1 only;
// bits <= 29).
double siso_incremental_gain(const SisoModel& model, int bits);

// ---------------------------------------------------------------------------
// 2x1 MISO with RVQ beamformer feedback.

// One-tap expected rate E[log2(1 + snr |h1|^2)], |h1|^2 ~ Exp(1).
// Adaptive quadrature, abs tol 1e-8. Throws std::domain_error for snr <= 0.
double beta1(double snr_bar);

// Two-tap expected rate E[log2(1 + snr ||h||^2)], ||h||^2 ~ Gamma(2,1).
double beta2(double snr_bar);

struct MisoModel {
  double snr_bar = 1.0;  // linear
  double beta1 = 0.0;
  double beta2 = 0.0;

  static MisoModel from_snr(double snr_bar);
};

// beta2 (1 - 2^{-b}) + beta1 2^{-b}: the geometric-loss approximation of
// the RVQ ergodic rate.
double miso_rvq_rate(const MisoModel& model, int bits);
double miso_rvq_rate(double snr_bar, int bits);

// ---------------------------------------------------------------------------
// RVQ codebooks.

using Codeword = std::array<std::complex<double>, 2>;
using Channel = Codeword;

// Family {C*(0), ..., C*(B)}: per bit count b, the best of
// `num_candidates` random 2^b-word codebooks, scored by ergodic rate over
// `num_channels` common channel draws at 0 dB.
struct SuperCodebook {
  std::vector<std::vector<Codeword>> books;  // books[b] has 2^b codewords
  std::uint64_t seed = 0;

  int max_bits() const { return static_cast<int>(books.size()) - 1; }
};

// Deterministic given seed. b = 0 is the fixed codebook {(1,0)}.
SuperCodebook generate_supercodebook(int max_bits, int num_candidates,
                                     int num_channels, std::uint64_t seed);

// log2(1 + snr * max_w |<h, w>|^2). Throws Error on an empty codebook.
double codebook_rate(std::span<const Codeword> codebook, double snr_bar,
                     const Channel& channel);

// ---------------------------------------------------------------------------
// Table construction.

// Per-user rate model selection for build_rate_table.
struct ChannelProfile {
  enum class Kind { kSiso, kMisoRvq, kExplicit };
  struct User {
    Kind kind = Kind::kMisoRvq;
    double snr_bar = 1.0;      // kMisoRvq
    SisoModel siso;            // kSiso
    std::vector<double> row;   // kExplicit, length budget+1
  };
  std::vector<User> users;
};

// Dense L x (B+1) table; monotone/submodular tags set by the checkers.
RateTable build_rate_table(const ChannelProfile& profile, int budget);

}  // namespace fbq

#endif  // FBQ_RATE_MODELS_HPP_
