#include "semifore/ets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "semifore/decompose.hpp"
#include "semifore/errors.hpp"
#include "semifore/optim.hpp"

namespace semifore::models {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSseFloor = 1e-250;

std::string component_code(EtsError e) {
  return e == EtsError::kAdditive ? "A" : "M";
}
std::string component_code(EtsTrend t) {
  switch (t) {
    case EtsTrend::kNone: return "N";
    case EtsTrend::kAdditive: return "A";
    case EtsTrend::kDamped: return "Ad";
  }
  return "?";
}
std::string component_code(EtsSeason s) {
  switch (s) {
    case EtsSeason::kNone: return "N";
    case EtsSeason::kAdditive: return "A";
    case EtsSeason::kMultiplicative: return "M";
  }
  return "?";
}

struct ParamLayout {
  bool has_beta = false;
  bool has_gamma = false;
  bool has_phi = false;
  bool has_trend_state = false;

  int dims() const {
    return 2 + (has_beta ? 1 : 0) + (has_gamma ? 1 : 0) + (has_phi ? 1 : 0) +
           (has_trend_state ? 1 : 0);
  }
};

struct ParamView {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double phi = 1.0;
  double init_level = 0.0;
  double init_trend = 0.0;
  bool feasible = true;
};

ParamView unpack(const std::vector<double>& x, const ParamLayout& layout) {
  ParamView p;
  int i = 0;
  p.alpha = x[i++];
  if (layout.has_beta) p.beta = x[i++];
  if (layout.has_gamma) p.gamma = x[i++];
  if (layout.has_phi) p.phi = x[i++];
  p.init_level = x[i++];
  if (layout.has_trend_state) p.init_trend = x[i++];

  p.feasible = p.alpha >= 1e-4 && p.alpha <= 0.9999;
  if (layout.has_beta) {
    p.feasible = p.feasible && p.beta >= 1e-4 && p.beta <= p.alpha;
  }
  if (layout.has_gamma) {
    p.feasible = p.feasible && p.gamma >= 1e-4 && p.gamma <= 1.0 - p.alpha;
  }
  if (layout.has_phi) {
    p.feasible = p.feasible && p.phi > 0.8 && p.phi <= 0.98;
  }
  return p;
}

struct FilterResult {
  double sse = kInf;
  double log_mu_sum = 0.0;
  double level = 0.0;
  double trend = 0.0;
  std::vector<double> season;
  bool ok = false;
};

// One pass of the smoothing recursion. Updates are in Holt-Winters form so
// the path depends only on the component structure, not the error type; the
// error type enters through the residual definition and the likelihood.
FilterResult run_filter(const std::vector<double>& y, const EtsSpecKind& kind,
                        const ParamView& p,
                        const std::vector<double>& season_init, int period) {
  FilterResult r;
  double level = p.init_level;
  double trend = p.init_trend;
  std::vector<double> season = season_init;

  const bool mult_error = kind.error == EtsError::kMultiplicative;
  double sse = 0.0;
  double log_mu = 0.0;
  const double beta_star =
      kind.trend == EtsTrend::kNone ? 0.0 : p.beta / p.alpha;

  for (std::size_t t = 0; t < y.size(); ++t) {
    double damped_trend = 0.0;
    if (kind.trend == EtsTrend::kAdditive) damped_trend = trend;
    if (kind.trend == EtsTrend::kDamped) damped_trend = p.phi * trend;
    const double base = level + damped_trend;

    double mu = base;
    double s_j = 0.0;
    const int j = period > 0 ? static_cast<int>(t % period) : 0;
    if (kind.season == EtsSeason::kAdditive) {
      s_j = season[j];
      mu = base + s_j;
    } else if (kind.season == EtsSeason::kMultiplicative) {
      s_j = season[j];
      mu = base * s_j;
    }

    double err;
    if (mult_error) {
      if (!(mu > 1e-10)) return r;
      err = (y[t] - mu) / mu;
      log_mu += std::log(mu);
    } else {
      err = y[t] - mu;
    }
    sse += err * err;

    double new_level;
    if (kind.season == EtsSeason::kAdditive) {
      new_level = p.alpha * (y[t] - s_j) + (1.0 - p.alpha) * base;
    } else if (kind.season == EtsSeason::kMultiplicative) {
      if (!(std::fabs(s_j) > 1e-10)) return r;
      new_level = p.alpha * (y[t] / s_j) + (1.0 - p.alpha) * base;
    } else {
      new_level = p.alpha * y[t] + (1.0 - p.alpha) * base;
    }

    if (kind.trend != EtsTrend::kNone) {
      const double carried =
          kind.trend == EtsTrend::kDamped ? p.phi * trend : trend;
      trend = beta_star * (new_level - level) + (1.0 - beta_star) * carried;
    }
    if (kind.season == EtsSeason::kAdditive) {
      season[j] = p.gamma * (y[t] - base) + (1.0 - p.gamma) * s_j;
    } else if (kind.season == EtsSeason::kMultiplicative) {
      if (!(base > 1e-10)) return r;
      season[j] = p.gamma * (y[t] / base) + (1.0 - p.gamma) * s_j;
    }
    level = new_level;
    if (!std::isfinite(level) || !std::isfinite(trend)) return r;
  }

  r.sse = sse;
  r.log_mu_sum = log_mu;
  r.level = level;
  r.trend = trend;
  r.season = std::move(season);
  r.ok = true;
  return r;
}

double likelihood_of(const FilterResult& f, const EtsSpecKind& kind,
                     std::size_t n) {
  double lik = static_cast<double>(n) * std::log(std::max(f.sse, kSseFloor));
  if (kind.error == EtsError::kMultiplicative) lik += 2.0 * f.log_mu_sum;
  return lik;
}

int param_count(const EtsSpecKind& kind, const ParamLayout& layout,
                int period) {
  int k = 1;  // alpha
  if (layout.has_beta) ++k;
  if (layout.has_gamma) ++k;
  if (layout.has_phi) ++k;
  ++k;  // initial level
  if (layout.has_trend_state) ++k;
  if (kind.season != EtsSeason::kNone) k += period - 1;
  ++k;  // innovation variance
  return k;
}

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
};

LineFit least_squares_line(const std::vector<double>& z) {
  const std::size_t n = z.size();
  const double nn = static_cast<double>(n);
  double sum_t = 0.0, sum_z = 0.0, sum_tt = 0.0, sum_tz = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    sum_t += static_cast<double>(t);
    sum_z += z[t];
    sum_tt += static_cast<double>(t) * t;
    sum_tz += static_cast<double>(t) * z[t];
  }
  const double denom = nn * sum_tt - sum_t * sum_t;
  LineFit fit;
  if (std::fabs(denom) > 1e-12) {
    fit.slope = (nn * sum_tz - sum_t * sum_z) / denom;
    fit.intercept = (sum_z - fit.slope * sum_t) / nn;
  } else {
    fit.intercept = sum_z / nn;
  }
  return fit;
}

double std_dev(const std::vector<double>& y) {
  if (y.size() < 2) return 0.0;
  const double mean =
      std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double ss = 0.0;
  for (double v : y) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (static_cast<double>(y.size()) - 1.0));
}

}  // namespace

std::string EtsSpecKind::code() const {
  return component_code(error) + component_code(trend) + component_code(season);
}

EtsFit fit_ets(const std::vector<double>& y, const EtsOptions& options) {
  const int n = static_cast<int>(y.size());
  const int m = options.period;
  if (m < 2) throw ValidationError("fit_ets: period must be at least 2");
  if (n < 8) throw ValidationError("fit_ets: need at least 8 points");

  const double min_y = *std::min_element(y.begin(), y.end());
  const bool positive = min_y > 0.0;
  const bool seasonal_allowed = n >= 2 * m;
  const double sd = std_dev(y);

  EtsFit best;
  best.aicc = kInf;
  bool have_best = false;

  for (EtsError error : {EtsError::kAdditive, EtsError::kMultiplicative}) {
    for (EtsTrend trend :
         {EtsTrend::kNone, EtsTrend::kAdditive, EtsTrend::kDamped}) {
      for (EtsSeason season : {EtsSeason::kNone, EtsSeason::kAdditive,
                               EtsSeason::kMultiplicative}) {
        if (error == EtsError::kAdditive &&
            season == EtsSeason::kMultiplicative) {
          continue;
        }
        if ((error == EtsError::kMultiplicative ||
             season == EtsSeason::kMultiplicative) &&
            !positive) {
          continue;
        }
        if (season != EtsSeason::kNone && !seasonal_allowed) continue;

        const EtsSpecKind kind{error, trend, season};
        ParamLayout layout;
        layout.has_beta = trend != EtsTrend::kNone;
        layout.has_gamma = season != EtsSeason::kNone;
        layout.has_phi = trend == EtsTrend::kDamped;
        layout.has_trend_state = trend != EtsTrend::kNone;

        // Seasonal initial states are held fixed at decomposition indices;
        // only the level/trend initials join the optimization.
        std::vector<double> season_init;
        if (season != EtsSeason::kNone) {
          const auto dec = decompose::classical(
              y, m, season == EtsSeason::kMultiplicative);
          season_init = dec.indices;
          if (season == EtsSeason::kMultiplicative) {
            const double min_idx = *std::min_element(season_init.begin(),
                                                     season_init.end());
            if (!(min_idx > 1e-10)) continue;
          }
        }

        std::vector<double> deseasoned(y.size());
        for (std::size_t t = 0; t < y.size(); ++t) {
          if (season == EtsSeason::kAdditive) {
            deseasoned[t] = y[t] - season_init[t % m];
          } else if (season == EtsSeason::kMultiplicative) {
            deseasoned[t] = y[t] / season_init[t % m];
          } else {
            deseasoned[t] = y[t];
          }
        }
        const std::size_t head = std::min<std::size_t>(10, deseasoned.size());
        const LineFit line = least_squares_line(
            {deseasoned.begin(), deseasoned.begin() + head});

        std::vector<double> start;
        std::vector<double> steps;
        start.push_back(0.3);
        steps.push_back(0.1);
        if (layout.has_beta) {
          start.push_back(0.1);
          steps.push_back(0.05);
        }
        if (layout.has_gamma) {
          start.push_back(0.05);
          steps.push_back(0.04);
        }
        if (layout.has_phi) {
          start.push_back(0.95);
          steps.push_back(-0.02);
        }
        const double init_level = layout.has_trend_state
                                      ? line.intercept - line.slope
                                      : line.intercept;
        start.push_back(init_level);
        steps.push_back(0.1 * sd + 1e-6 * (1.0 + std::fabs(init_level)));
        if (layout.has_trend_state) {
          start.push_back(line.slope);
          steps.push_back(0.01 * sd + 1e-7 * (1.0 + std::fabs(line.slope)));
        }

        auto objective = [&](const std::vector<double>& x) {
          const ParamView p = unpack(x, layout);
          if (!p.feasible) return kInf;
          const FilterResult f = run_filter(y, kind, p, season_init, m);
          if (!f.ok) return kInf;
          return likelihood_of(f, kind, y.size());
        };

        optim::NelderMeadOptions nm;
        nm.max_evals = options.max_evals_per_candidate;
        const auto result = optim::nelder_mead(objective, start, steps, nm);
        if (!std::isfinite(result.value)) continue;

        const int k = param_count(kind, layout, m);
        if (n - k - 1 <= 0) continue;
        const double aicc = result.value + 2.0 * k +
                            2.0 * k * (k + 1.0) / (n - k - 1.0);
        if (!have_best || aicc < best.aicc) {
          const ParamView p = unpack(result.x, layout);
          const FilterResult f = run_filter(y, kind, p, season_init, m);
          if (!f.ok) continue;
          best.kind = kind;
          best.alpha = p.alpha;
          best.beta = layout.has_beta ? p.beta : 0.0;
          best.gamma = layout.has_gamma ? p.gamma : 0.0;
          best.phi = layout.has_phi ? p.phi : 1.0;
          best.level = f.level;
          best.trend_state = layout.has_trend_state ? f.trend : 0.0;
          best.sse = f.sse;
          best.aicc = aicc;
          best.period = m;
          best.season_state.clear();
          if (season != EtsSeason::kNone) {
            // Rotate so index 0 is the slot the first forecast step uses.
            best.season_state.resize(m);
            for (int j = 0; j < m; ++j) {
              best.season_state[j] = f.season[(n + j) % m];
            }
          }
          have_best = true;
        }
      }
    }
  }

  if (!have_best) throw FitError("fit_ets: no admissible candidate converged");
  return best;
}

std::vector<double> forecast_ets(const EtsFit& fit, int horizon) {
  if (horizon < 1) throw ValidationError("forecast_ets: horizon must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(horizon));
  double level = fit.level;
  double trend = fit.trend_state;
  for (int k = 0; k < horizon; ++k) {
    double damped_trend = 0.0;
    if (fit.kind.trend == EtsTrend::kAdditive) damped_trend = trend;
    if (fit.kind.trend == EtsTrend::kDamped) damped_trend = fit.phi * trend;
    const double base = level + damped_trend;
    double mu = base;
    if (fit.kind.season == EtsSeason::kAdditive) {
      mu = base + fit.season_state[k % fit.period];
    } else if (fit.kind.season == EtsSeason::kMultiplicative) {
      mu = base * fit.season_state[k % fit.period];
    }
    out.push_back(mu);
    // Zero-innovation updates: the level absorbs the trend, the trend decays
    // under damping, the seasonal states are untouched.
    level = base;
    if (fit.kind.trend == EtsTrend::kDamped) trend = fit.phi * trend;
  }
  return out;
}

}  // namespace semifore::models
