#include "semifore/synth.hpp"

#include <cmath>
#include <iterator>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "semifore/csv.hpp"
#include "semifore/errors.hpp"
#include "semifore/rng.hpp"

namespace semifore::synth {
namespace {

constexpr double kTau = 6.283185307179586;

struct Profile {
  const char* id;
  int year;
  int month;
  int length;
  Generator generator;
};

// All profiles end 2023-09. Lengths split 2 Long / 2 Medium / 6 Short under
// the default 284/359 thresholds, and any prefix of three or more series
// already contains each class once.
constexpr Profile kProfiles[] = {
    {"F01", 1991, 1, 393, Generator::kSeasonalArima},
    {"F02", 1997, 12, 310, Generator::kTrendSeasonalNoise},
    {"F03", 2016, 1, 93, Generator::kConstantPlusNoise},
    {"F04", 2003, 10, 240, Generator::kSeasonalArima},
    {"F05", 2009, 2, 176, Generator::kTrendSeasonalNoise},
    {"F06", 1991, 1, 393, Generator::kConstantPlusNoise},
    {"F07", 1997, 12, 310, Generator::kSeasonalArima},
    {"F08", 2011, 10, 144, Generator::kTrendSeasonalNoise},
    {"F09", 2014, 2, 116, Generator::kConstantPlusNoise},
    {"F10", 2006, 6, 208, Generator::kSeasonalArima},
};

}  // namespace

MonthlySeries generate(const SynthSpec& spec) {
  if (spec.length < 1) {
    throw ValidationError("synth: length must be positive");
  }
  if (spec.noise_sigma < 0.0) {
    throw ValidationError("synth: noise sigma must be nonnegative");
  }
  if (spec.offset < 0.0) {
    throw ValidationError("synth: offset must be nonnegative");
  }
  if (spec.generator == Generator::kSeasonalArima &&
      !(std::abs(spec.phi) < 1.0)) {
    throw ValidationError("synth: AR coefficient outside the causal region");
  }
  if (spec.seasonal_diff != 0 && spec.seasonal_diff != 1) {
    throw ValidationError("synth: seasonal_diff must be 0 or 1");
  }

  rng::CounterRng gen(spec.seed);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(spec.length));
  std::vector<double> integrated;
  double d = 0.0;
  for (int t = 0; t < spec.length; ++t) {
    const int m = (spec.start + t).month_of_year() - 1;
    double signal = spec.base;
    if (spec.generator != Generator::kConstantPlusNoise) {
      signal += spec.trend * t;
      const double angle = kTau * (m + spec.seasonal_phase) / 12.0;
      signal +=
          spec.seasonal_amp * (std::sin(angle) + 0.3 * std::cos(2.0 * angle));
    }
    double latent = 0.0;
    if (spec.generator == Generator::kSeasonalArima) {
      const double eps =
          spec.noise_sigma == 0.0 ? 0.0 : spec.noise_sigma * gen.next_normal();
      d = t == 0 ? spec.ar_init + eps : spec.phi * d + eps;
      latent = d;
      if (spec.seasonal_diff == 1 && t >= 12) latent += integrated[t - 12];
      integrated.push_back(latent);
    } else if (spec.noise_sigma > 0.0) {
      latent = spec.noise_sigma * gen.next_normal();
    }
    const double v = spec.offset > 0.0 ? spec.offset + signal + latent
                                       : std::exp(signal + latent);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError("synth: spec " + spec.id +
                            " produced a nonpositive value at month " +
                            (spec.start + t).label());
    }
    values.push_back(v);
  }
  return MonthlySeries(spec.id, spec.start, std::move(values));
}

std::vector<baseline::BaselineEvent> synth_baseline(
    const MonthlySeries& series, double advantage, std::uint64_t seed,
    double sigma) {
  if (!(advantage >= 0.0 && advantage <= 1.0)) {
    throw ValidationError("synth: advantage must lie in [0, 1]");
  }
  if (sigma < 0.0) {
    throw ValidationError("synth: baseline sigma must be nonnegative");
  }
  rng::CounterRng gen(seed);
  std::vector<baseline::BaselineEvent> events;
  for (const auto& ev :
       baseline::event_calendar(series.start(), series.end())) {
    const MonthIndex m1 = quarter_first_month(ev.target);
    if (m1 < series.start() || m1 + 2 > series.end()) continue;
    const double total =
        series.at(m1) + series.at(m1 + 1) + series.at(m1 + 2);
    const double eta = gen.next_normal();
    double value = total * (1.0 + (1.0 - advantage) * sigma * eta);
    // An abusive sigma could push the factor negative; floor the forecast
    // instead of emitting a file the ingest layer would reject.
    if (!(value > 0.0)) value = 0.01 * total;
    events.push_back(
        baseline::BaselineEvent{series.id(), ev.target, ev.type, value});
  }
  return events;
}

std::vector<MonthlySeries> make_corpus(const CorpusOptions& options) {
  const int available = static_cast<int>(std::size(kProfiles));
  if (options.series_count < 1 || options.series_count > available) {
    throw ValidationError("synth: series_count must lie in 1.." +
                          std::to_string(available));
  }
  std::vector<MonthlySeries> corpus;
  for (int i = 0; i < options.series_count; ++i) {
    const Profile& p = kProfiles[i];
    auto knobs = rng::split_stream(options.seed, 100 + i);
    SynthSpec spec;
    spec.id = p.id;
    spec.start = MonthIndex::from_ym(p.year, p.month);
    spec.length = p.length;
    spec.seed = rng::split_stream(options.seed, i).seed();
    spec.generator = p.generator;
    spec.base = knobs.next_range(std::log(250.0), std::log(2500.0));
    spec.seasonal_phase = knobs.next_range(0.0, 12.0);
    switch (p.generator) {
      case Generator::kSeasonalArima:
        spec.trend = 0.0025;
        spec.seasonal_amp = 0.15;
        spec.phi = 0.7;
        spec.noise_sigma = 0.05;
        break;
      case Generator::kTrendSeasonalNoise:
        spec.trend = 0.004;
        spec.seasonal_amp = 0.25;
        spec.noise_sigma = 0.04;
        break;
      case Generator::kConstantPlusNoise:
        spec.noise_sigma = 0.03;
        break;
    }
    corpus.push_back(generate(spec));
  }
  return corpus;
}

void write_corpus(const std::string& dir, const CorpusOptions& options) {
  const auto corpus = make_corpus(options);
  std::filesystem::create_directories(dir);

  csv::Table data;
  data.header = {"category", "year", "month", "value_musd"};
  for (const auto& s : corpus) {
    for (int t = 0; t < s.length(); ++t) {
      const YearMonth ym = (s.start() + t).to_ym();
      data.rows.push_back({s.id(), std::to_string(ym.year),
                           std::to_string(ym.month),
                           csv::format_double(s.values()[static_cast<std::size_t>(t)])});
    }
  }
  csv::write_file(dir + "/data.csv", data);

  std::vector<baseline::BaselineEvent> events;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto part = synth_baseline(
        corpus[i], options.advantage,
        rng::split_stream(options.seed, 1000 + i).seed());
    events.insert(events.end(), part.begin(), part.end());
  }
  csv::write_file(dir + "/baseline.csv", baseline::baseline_to_table(events));

  nlohmann::ordered_json cfg;
  cfg["data"] = "data.csv";
  cfg["baseline"] = "baseline.csv";
  cfg["models"] = {"SARIMA", "ETS", "SES", "KNN", "GPR",
                   "SVR",    "RF",  "ET",  "Ensemble"};
  cfg["h"] = {2, 3};
  cfg["mode"] = "quarter-event";
  cfg["test_start"] = "2018-01";
  cfg["seed"] = options.seed;
  cfg["workers"] = 1;
  cfg["out_dir"] = "out";
  // The demo forest size: full runs stay desk-scale while tuning still has
  // something to choose between.
  cfg["grids"] = {{"num_trees", 50}};
  std::ofstream out(dir + "/config.json", std::ios::binary);
  if (!out) {
    throw ValidationError("synth: cannot write " + dir + "/config.json");
  }
  out << cfg.dump(2) << "\n";
}

}  // namespace semifore::synth
