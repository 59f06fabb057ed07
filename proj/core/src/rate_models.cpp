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

#include "fbq/rate_models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "seed_mix.hpp"

namespace fbq {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// Adaptive Simpson on [a, b].
double simpson_step(const std::function<double(double)>& f, double a,
                    double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

std::complex<double> standard_complex_gaussian(std::mt19937_64& rng,
                                               std::normal_distribution<>& n) {
  // CN(0,1): real and imaginary parts with variance 1/2.
  const double re = n(rng);
  const double im = n(rng);
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

Channel draw_channel(std::mt19937_64& rng, std::normal_distribution<>& n) {
  return {standard_complex_gaussian(rng, n),
          standard_complex_gaussian(rng, n)};
}

std::vector<Codeword> draw_codebook(std::size_t size, std::mt19937_64& rng,
                                    std::normal_distribution<>& n) {
  std::vector<Codeword> book(size);
  for (auto& w : book) {
    w = draw_channel(rng, n);
    const double norm =
        std::sqrt(std::norm(w[0]) + std::norm(w[1]));
    w[0] /= norm;
    w[1] /= norm;
  }
  return book;
}

}  // namespace

double SisoModel::normalization() const {
  return 1.0 / (1.0 - std::exp(-sigma));
}

double siso_rate(const SisoModel& model, int bits) {
  if (bits < 0 || bits > 30) {
    throw BudgetTooLargeError("siso_rate supports 0 <= bits <= 30");
  }
  if (!(model.sigma > 0.0) || !(model.alpha >= 0.0)) {
    throw std::domain_error("siso model requires sigma > 0 and alpha >= 0");
  }
  if (model.alpha == 0.0) return 0.0;
  const std::int64_t cells = std::int64_t{1} << bits;
  const double delta = model.sigma / static_cast<double>(cells);
  const double scale = 1.0 / std::sqrt(model.alpha);
  const double c = model.normalization();
  // The quantizer is piecewise constant, so the expectation over the
  // truncated exponential reduces to exact per-cell probabilities. Cell i
  // holds sqrt(alpha) x in [i delta, (i+1) delta); the top cell absorbs
  // everything above.
  double sum = 0.0;
  for (std::int64_t i = 1; i < cells; ++i) {
    const double lo = std::min(static_cast<double>(i) * delta * scale,
                               model.sigma);
    const double hi = (i + 1 == cells)
                          ? model.sigma
                          : std::min(static_cast<double>(i + 1) * delta *
                                         scale,
                                     model.sigma);
    if (hi <= lo) continue;
    const double p = c * (std::exp(-lo) - std::exp(-hi));
    sum += std::log2(1.0 + static_cast<double>(i) * delta) * p;
  }
  return sum;
}

double siso_incremental_gain(const SisoModel& model, int bits) {
  if (model.alpha != 1.0) {
    throw std::domain_error("incremental gain uses the alpha = 1 closed form");
  }
  if (bits < 0 || bits > 29) {
    throw BudgetTooLargeError("siso_incremental_gain supports bits <= 29");
  }
  const std::int64_t n = std::int64_t{1} << bits;
  const double step = model.sigma / static_cast<double>(n);
  const double inv = static_cast<double>(n) / model.sigma;  // 2^b / sigma
  double sum = 0.0;
  for (std::int64_t j = 0; j < n; ++j) {
    sum += std::exp(-static_cast<double>(j) * step) *
           std::log2(1.0 + 0.5 / (inv + static_cast<double>(j)));
  }
  return (std::exp(-0.5 * step) - std::exp(-step)) * sum;
}

double beta1(double snr_bar) {
  if (!(snr_bar > 0.0)) throw std::domain_error("snr must be positive");
  return integrate(
      [snr_bar](double x) {
        return std::log2(1.0 + snr_bar * x) * std::exp(-x);
      },
      0.0, 40.0, 1e-10);
}

double beta2(double snr_bar) {
  if (!(snr_bar > 0.0)) throw std::domain_error("snr must be positive");
  return integrate(
      [snr_bar](double x) {
        return std::log2(1.0 + snr_bar * x) * x * std::exp(-x);
      },
      0.0, 60.0, 1e-10);
}

MisoModel MisoModel::from_snr(double snr_bar) {
  return {snr_bar, fbq::beta1(snr_bar), fbq::beta2(snr_bar)};
}

double miso_rvq_rate(const MisoModel& model, int bits) {
  const double loss = std::exp2(-static_cast<double>(bits));
  return model.beta2 * (1.0 - loss) + model.beta1 * loss;
}

double miso_rvq_rate(double snr_bar, int bits) {
  return miso_rvq_rate(MisoModel::from_snr(snr_bar), bits);
}

SuperCodebook generate_supercodebook(int max_bits, int num_candidates,
                                     int num_channels, std::uint64_t seed) {
  if (max_bits < 0 || max_bits > 12) {
    throw BudgetTooLargeError("supercodebook supports 0 <= max_bits <= 12");
  }
  if (num_candidates < 1 || num_channels < 1) {
    throw std::domain_error("need at least one candidate and one channel");
  }
  SuperCodebook out;
  out.seed = seed;
  out.books.resize(max_bits + 1);
  out.books[0] = {Codeword{{{1.0, 0.0}, {0.0, 0.0}}}};

  std::normal_distribution<> normal;
  // Common scoring channels, one stream; candidates per bit count on
  // independent streams so books are stable under max_bits changes.
  std::mt19937_64 channel_rng(detail::mix_seed(seed, 0));
  std::vector<Channel> channels(num_channels);
  for (auto& h : channels) h = draw_channel(channel_rng, normal);

  for (int b = 1; b <= max_bits; ++b) {
    std::mt19937_64 rng(detail::mix_seed(seed, static_cast<std::uint64_t>(b)));
    std::vector<Codeword> best;
    double best_rate = -1.0;
    for (int c = 0; c < num_candidates; ++c) {
      auto book = draw_codebook(std::size_t{1} << b, rng, normal);
      double sum = 0.0;
      for (const auto& h : channels) sum += codebook_rate(book, 1.0, h);
      const double rate = sum / static_cast<double>(num_channels);
      if (rate > best_rate) {
        best_rate = rate;
        best = std::move(book);
      }
    }
    out.books[b] = std::move(best);
  }
  return out;
}

double codebook_rate(std::span<const Codeword> codebook, double snr_bar,
                     const Channel& channel) {
  if (codebook.empty()) throw Error("empty codebook");
  double best = 0.0;
  for (const auto& w : codebook) {
    const std::complex<double> dot =
        std::conj(channel[0]) * w[0] + std::conj(channel[1]) * w[1];
    best = std::max(best, std::norm(dot));
  }
  return std::log2(1.0 + snr_bar * best);
}

RateTable build_rate_table(const ChannelProfile& profile, int budget) {
  if (budget < 0) throw std::domain_error("negative budget");
  RateTable table;
  table.entries.reserve(profile.users.size());
  for (const auto& user : profile.users) {
    std::vector<double> row(budget + 1);
    switch (user.kind) {
      case ChannelProfile::Kind::kSiso:
        for (int j = 0; j <= budget; ++j) row[j] = siso_rate(user.siso, j);
        break;
      case ChannelProfile::Kind::kMisoRvq: {
        const MisoModel model = MisoModel::from_snr(user.snr_bar);
        for (int j = 0; j <= budget; ++j) row[j] = miso_rvq_rate(model, j);
        break;
      }
      case ChannelProfile::Kind::kExplicit:
        if (static_cast<int>(user.row.size()) != budget + 1) {
          throw std::invalid_argument("explicit row length != budget + 1");
        }
        row = user.row;
        break;
    }
    table.entries.push_back(std::move(row));
  }
  table.monotone = check_monotone(table);
  table.submodular = check_submodular(table);
  return table;
}

}  // namespace fbq
