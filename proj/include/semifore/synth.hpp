#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semifore/baseline.hpp"
#include "semifore/calendar.hpp"
#include "semifore/series.hpp"

namespace semifore::synth {

enum class Generator {
  kSeasonalArima,       // AR(1) core, optional seasonal integration
  kTrendSeasonalNoise,  // deterministic trend + seasonal pattern + iid noise
  kConstantPlusNoise,   // level + iid noise
};

// Recipe for one synthetic series. The latent signal combines the chosen
// generator's active components; positivity comes either from a positive
// offset added to the signal or, when offset == 0, from exponentiating it.
struct SynthSpec {
  std::string id;
  MonthIndex start;
  int length = 0;
  std::uint64_t seed = 0;
  Generator generator = Generator::kSeasonalArima;

  double base = 0.0;           // constant level of the latent signal
  double trend = 0.0;          // per-month slope (ignored by kConstantPlusNoise)
  double seasonal_amp = 0.0;   // month-of-year pattern size
  double seasonal_phase = 0.0;
  double noise_sigma = 0.0;

  // kSeasonalArima only.
  double phi = 0.0;       // AR(1) coefficient; requires |phi| < 1
  double ar_init = 0.0;   // AR state entering the first month
  int seasonal_diff = 0;  // 1 integrates the AR core at lag 12

  double offset = 0.0;  // > 0 switches from exp() to additive positivity
};

// Deterministic in spec.seed; throws ValidationError on non-causal phi,
// nonpositive length, or a spec whose offset-mode values dip below zero.
MonthlySeries generate(const SynthSpec& spec);

// Emulated expert forecast for every calendar event whose target quarter
// the series fully covers: true quarter total times 1 + (1-advantage)*
// sigma*eta with seeded standard normal eta. advantage = 1 reproduces the
// true totals exactly.
std::vector<baseline::BaselineEvent> synth_baseline(
    const MonthlySeries& series, double advantage, std::uint64_t seed,
    double sigma = 0.05);

struct CorpusOptions {
  int series_count = 10;  // prefix of the ten built-in profiles
  std::uint64_t seed = 2026;
  double advantage = 0.3;
};

// The standard demo corpus: ten profiles ending 2023-09 spanning two Long,
// two Medium, and six Short histories, cycling through the generators.
// Any prefix of at least three series keeps all three length classes.
std::vector<MonthlySeries> make_corpus(const CorpusOptions& options);

// Emits data.csv, baseline.csv, and a runnable config.json into dir.
void write_corpus(const std::string& dir, const CorpusOptions& options);

}  // namespace semifore::synth
