#include "semifore/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iterator>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

#include "semifore/baseline.hpp"
#include "semifore/ensemble.hpp"
#include "semifore/errors.hpp"
#include "semifore/ets.hpp"
#include "semifore/forest.hpp"
#include "semifore/gpr.hpp"
#include "semifore/knn.hpp"
#include "semifore/lagmatrix.hpp"
#include "semifore/log.hpp"
#include "semifore/rng.hpp"
#include "semifore/sarima.hpp"
#include "semifore/ses.hpp"
#include "semifore/svr.hpp"

namespace semifore::engine {
namespace {

constexpr int kTuneHoldout = 12;
constexpr double kInf = std::numeric_limits<double>::infinity();


std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Everything a single task may look at: the training window through
// train_end, in both scales, plus the holdout split used for grid tuning.
struct TuneData {
  std::vector<double> z;       // transformed window
  std::vector<double> z_fit;   // z minus the final holdout year
  std::vector<double> y_tail;  // original-scale holdout actuals
  transform::BoxCoxParams lambda;
  int lags = 0;
};

TuneData make_tune_data(const std::vector<double>& window,
                        const transform::BoxCoxParams& lambda) {
  TuneData td;
  td.z = transform::boxcox(window, lambda);
  td.z_fit.assign(td.z.begin(), td.z.end() - kTuneHoldout);
  td.y_tail.assign(window.end() - kTuneHoldout, window.end());
  td.lambda = lambda;
  td.lags = lag_depth_for(static_cast<int>(window.size()));
  return td;
}

// Score of one tuning candidate: recursive holdout-year forecast in
// transformed space, mapped back, mean absolute error against the held-out
// actuals. Any domain escape disqualifies the candidate.
double holdout_mae(const TuneData& td,
                   const std::function<double(const std::vector<double>&)>&
                       predict) {
  try {
    const auto fz =
        models::recursive_forecast(td.z_fit, td.lags, kTuneHoldout, predict);
    double acc = 0.0;
    for (int i = 0; i < kTuneHoldout; ++i) {
      const double f = transform::inv_boxcox(fz[i], td.lambda);
      if (!std::isfinite(f)) return kInf;
      acc += std::fabs(f - td.y_tail[i]);
    }
    return acc / kTuneHoldout;
  } catch (const std::exception&) {
    return kInf;
  }
}

struct FitOutcome {
  std::vector<double> z_forecast;
  std::string hyperparams;
};

FitOutcome fit_knn(const TuneData& td, int horizon,
                   const GridSettings& grids) {
  const auto fit_data = models::build_lag_matrix(td.z_fit, td.lags);
  const auto full_data = models::build_lag_matrix(td.z, td.lags);
  const int rows = static_cast<int>(fit_data.targets.size());

  int best_k = -1, best_p = -1;
  double best = kInf;
  for (int k : grids.knn_k) {
    if (k > rows) continue;
    for (int p : grids.knn_p) {
      const models::KnnModel m(fit_data, k, p);
      const double score = holdout_mae(
          td, [&m](const std::vector<double>& f) { return m.predict(f); });
      if (score < best) {
        best = score;
        best_k = k;
        best_p = p;
      }
    }
  }
  if (best_k < 0) throw FitError("knn tuning found no admissible grid point");

  const models::KnnModel final_model(full_data, best_k, best_p);
  FitOutcome out;
  out.z_forecast = models::recursive_forecast(
      td.z, td.lags, horizon,
      [&final_model](const std::vector<double>& f) {
        return final_model.predict(f);
      });
  out.hyperparams = "{\"K\":" + std::to_string(best_k) +
                    ",\"p\":" + std::to_string(best_p) +
                    ",\"lags\":" + std::to_string(td.lags) + "}";
  return out;
}

FitOutcome fit_svr(const TuneData& td, int horizon,
                   const GridSettings& grids) {
  const auto fit_data = models::build_lag_matrix(td.z_fit, td.lags);
  const auto full_data = models::build_lag_matrix(td.z, td.lags);
  const auto fit_prob = models::svr_prepare(fit_data);

  double best_sigma = -1.0, best_cost = -1.0;
  double best = kInf;
  for (double sigma : grids.svr_sigma) {
    for (double cost : grids.svr_cost) {
      double score = kInf;
      try {
        const auto m = models::SvrModel::fit(fit_prob, sigma, cost);
        score = holdout_mae(td, [&m](const std::vector<double>& f) {
          return m.predict(f);
        });
      } catch (const std::exception&) {
        score = kInf;
      }
      if (score < best) {
        best = score;
        best_sigma = sigma;
        best_cost = cost;
      }
    }
  }
  if (best_sigma < 0.0) {
    throw FitError("svr tuning found no admissible grid point");
  }

  const auto full_prob = models::svr_prepare(full_data);
  const auto final_model = models::SvrModel::fit(full_prob, best_sigma,
                                                 best_cost);
  FitOutcome out;
  out.z_forecast = models::recursive_forecast(
      td.z, td.lags, horizon,
      [&final_model](const std::vector<double>& f) {
        return final_model.predict(f);
      });
  out.hyperparams = "{\"sigma\":" + fmt_g(best_sigma) +
                    ",\"C\":" + fmt_g(best_cost) +
                    ",\"lags\":" + std::to_string(td.lags) + "}";
  return out;
}

// Shared by the bagged-forest and extra-trees families; they differ in the
// split rule dimension of the grid and in bootstrap resampling.
FitOutcome fit_forest_family(const TuneData& td, int horizon,
                             std::uint64_t seed, const GridSettings& grids,
                             bool extra_trees) {
  const auto fit_data = models::build_lag_matrix(td.z_fit, td.lags);
  const auto full_data = models::build_lag_matrix(td.z, td.lags);

  models::ForestOptions base;
  base.num_trees = grids.num_trees;
  base.seed = seed;  // one stream per task; every candidate reuses it
  base.bootstrap = !extra_trees;
  base.extratrees_split = extra_trees;

  models::ForestOptions best_options;
  double best = kInf;
  bool found = false;
  for (int mtry : grids.forest_mtry) {
    if (mtry > td.lags) continue;
    for (int min_node : grids.forest_min_node) {
      const int rule_count = extra_trees ? 1 : 2;
      for (int rule = 0; rule < rule_count; ++rule) {
        models::ForestOptions options = base;
        options.mtry = mtry;
        options.min_node_size = min_node;
        if (!extra_trees) options.extratrees_split = rule == 1;
        const auto m = models::ForestModel::fit(fit_data, options);
        const double score = holdout_mae(
            td, [&m](const std::vector<double>& f) { return m.predict(f); });
        if (score < best) {
          best = score;
          best_options = options;
          found = true;
        }
      }
    }
  }
  if (!found) throw FitError("forest tuning found no admissible grid point");

  const auto final_model = models::ForestModel::fit(full_data, best_options);
  FitOutcome out;
  out.z_forecast = models::recursive_forecast(
      td.z, td.lags, horizon,
      [&final_model](const std::vector<double>& f) {
        return final_model.predict(f);
      });
  out.hyperparams = "{\"mtry\":" + std::to_string(best_options.mtry) +
                    ",\"min_node\":" + std::to_string(best_options.min_node_size);
  if (!extra_trees) {
    out.hyperparams += std::string(",\"split\":\"") +
                       (best_options.extratrees_split ? "extratrees"
                                                      : "variance") +
                       "\"";
  }
  out.hyperparams += ",\"trees\":" + std::to_string(best_options.num_trees) +
                     ",\"lags\":" + std::to_string(td.lags) + "}";
  return out;
}

FitOutcome fit_gpr(const TuneData& td, int horizon) {
  const auto full_data = models::build_lag_matrix(td.z, td.lags);
  const auto model = models::GprModel::fit(full_data);
  FitOutcome out;
  out.z_forecast = models::recursive_forecast(
      td.z, td.lags, horizon,
      [&model](const std::vector<double>& f) { return model.predict(f); });
  out.hyperparams = "{\"bandwidth\":" + fmt_g(model.bandwidth()) +
                    ",\"noise_var\":" + fmt_g(model.noise_var()) +
                    ",\"lags\":" + std::to_string(td.lags) + "}";
  return out;
}

FitOutcome fit_ses_family(const TuneData& td, int horizon) {
  const auto fit = models::fit_ses(td.z);
  FitOutcome out;
  out.z_forecast = models::forecast_ses(fit, horizon);
  out.hyperparams = "{\"alpha\":" + fmt_g(fit.alpha) + "}";
  return out;
}

FitOutcome fit_ets_family(const TuneData& td, int horizon) {
  models::EtsOptions options;
  options.period = 12;
  const auto fit = models::fit_ets(td.z, options);
  FitOutcome out;
  out.z_forecast = models::forecast_ets(fit, horizon);
  out.hyperparams = "{\"form\":\"" + fit.kind.code() + "\"" +
                    ",\"alpha\":" + fmt_g(fit.alpha);
  if (fit.kind.trend != models::EtsTrend::kNone) {
    out.hyperparams += ",\"beta\":" + fmt_g(fit.beta);
  }
  if (fit.kind.season != models::EtsSeason::kNone) {
    out.hyperparams += ",\"gamma\":" + fmt_g(fit.gamma);
  }
  if (fit.kind.trend == models::EtsTrend::kDamped) {
    out.hyperparams += ",\"phi\":" + fmt_g(fit.phi);
  }
  out.hyperparams += "}";
  return out;
}

FitOutcome fit_sarima_family(const TuneData& td, int horizon) {
  models::SarimaOptions options;
  options.period = 12;
  const auto fit = models::fit_sarima(td.z, options);
  FitOutcome out;
  out.z_forecast = models::forecast_sarima(fit, horizon);
  const auto& o = fit.order;
  out.hyperparams = "{\"p\":" + std::to_string(o.p) +
                    ",\"d\":" + std::to_string(o.d) +
                    ",\"q\":" + std::to_string(o.q) +
                    ",\"sp\":" + std::to_string(o.sp) +
                    ",\"sd\":" + std::to_string(o.sd) +
                    ",\"sq\":" + std::to_string(o.sq) +
                    std::string(",\"constant\":") +
                    (fit.with_constant ? "true" : "false") +
                    std::string(",\"ml\":") +
                    (fit.ml_refined ? "true" : "false") + "}";
  return out;
}

struct FitTask {
  const MonthlySeries* series = nullptr;
  const Origin* origin = nullptr;
  ModelFamily family = ModelFamily::kSarima;
  transform::BoxCoxParams lambda;
  std::uint64_t seed = 0;
};

bool failure_order(const TaskFailure& a, const TaskFailure& b) {
  return std::tie(a.series, a.train_end, a.model) <
         std::tie(b.series, b.train_end, b.model);
}

}  // namespace

const char* family_id(ModelFamily f) {
  switch (f) {
    case ModelFamily::kSarima: return "SARIMA";
    case ModelFamily::kEts: return "ETS";
    case ModelFamily::kSes: return "SES";
    case ModelFamily::kKnn: return "KNN";
    case ModelFamily::kGpr: return "GPR";
    case ModelFamily::kSvr: return "SVR";
    case ModelFamily::kForest: return "RF";
    case ModelFamily::kExtraTrees: return "ET";
  }
  throw ValidationError("unknown model family");
}

bool parse_family(const std::string& id, ModelFamily* out) {
  for (ModelFamily f : kAllFamilies) {
    if (id == family_id(f)) {
      *out = f;
      return true;
    }
  }
  return false;
}

int lag_depth_for(int window_length) {
  return std::clamp(window_length - 22, 2, 24);
}

void check_grids(const GridSettings& grids) {
  auto positive = [](const auto& axis, const char* name) {
    if (axis.empty()) {
      throw ValidationError(std::string("grids: ") + name + " is empty");
    }
    for (const auto v : axis) {
      if (!(v > 0)) {
        throw ValidationError(std::string("grids: ") + name +
                              " holds a nonpositive value");
      }
    }
  };
  positive(grids.knn_k, "knn_k");
  positive(grids.knn_p, "knn_p");
  positive(grids.svr_sigma, "svr_sigma");
  positive(grids.svr_cost, "svr_cost");
  positive(grids.forest_mtry, "forest_mtry");
  positive(grids.forest_min_node, "forest_min_node");
  if (grids.num_trees < 1) throw ValidationError("grids: num_trees < 1");
}

std::uint64_t task_seed(std::uint64_t master_seed, const std::string& series_id,
                        MonthIndex train_end, const std::string& model_id) {
  std::uint64_t s = rng::hash_combine(master_seed, series_id);
  s = rng::hash_combine(s, static_cast<std::uint64_t>(
                               static_cast<std::int64_t>(train_end.value())));
  return rng::hash_combine(s, model_id);
}

std::vector<Origin> plan_monthly_origins(const MonthlySeries& series,
                                         MonthIndex test_start, int max_h) {
  if (max_h < 1) throw ValidationError("plan_monthly_origins: horizon < 1");
  std::vector<Origin> origins;
  for (MonthIndex t = test_start; t <= series.end(); t = t + 1) {
    const MonthIndex train_end = t - 1;
    if (train_end < series.start() ||
        months_inclusive(series.start(), train_end) < kMinTrainMonths) {
      continue;
    }
    Origin o;
    o.train_end = train_end;
    for (int h = 1; h <= max_h; ++h) {
      const MonthIndex target = train_end + h;
      if (target > series.end()) break;
      o.targets.push_back(target);
    }
    origins.push_back(std::move(o));
  }
  return origins;
}

std::vector<Origin> plan_event_origins(const MonthlySeries& series,
                                       MonthIndex test_start, int h) {
  if (h != 2 && h != 3) {
    throw ValidationError("plan_event_origins: h must be 2 or 3");
  }
  std::vector<Origin> origins;
  if (test_start > series.end()) return origins;
  for (const auto& ev : baseline::event_calendar(test_start, series.end())) {
    const MonthIndex m1 = quarter_first_month(ev.target);
    if (m1 + 2 > series.end()) continue;  // quarter not fully observable
    Origin o;
    o.train_end = h == 3 ? m1 - 1 : m1;
    if (o.train_end < series.start() ||
        months_inclusive(series.start(), o.train_end) < kMinTrainMonths) {
      continue;
    }
    for (MonthIndex t = o.train_end + 1; t <= m1 + 2; t = t + 1) {
      o.targets.push_back(t);
    }
    origins.push_back(std::move(o));
  }
  return origins;
}

std::vector<ForecastRecord> forecast_task(const MonthlySeries& series,
                                          const Origin& origin,
                                          ModelFamily family,
                                          const transform::BoxCoxParams& lambda,
                                          std::uint64_t seed,
                                          const GridSettings& grids) {
  check_grids(grids);
  if (origin.targets.empty()) {
    throw ValidationError("forecast_task: origin has no targets");
  }
  for (std::size_t i = 0; i < origin.targets.size(); ++i) {
    if (origin.targets[i] != origin.train_end + static_cast<int>(i) + 1) {
      throw ValidationError("forecast_task: targets must be consecutive");
    }
  }
  const auto window = series.window(series.start(), origin.train_end);
  if (static_cast<int>(window.size()) < kMinTrainMonths) {
    throw ValidationError("forecast_task: training window shorter than " +
                          std::to_string(kMinTrainMonths) + " months");
  }
  const TuneData td = make_tune_data(window, lambda);
  const int horizon = static_cast<int>(origin.targets.size());

  FitOutcome outcome;
  switch (family) {
    case ModelFamily::kSarima: outcome = fit_sarima_family(td, horizon); break;
    case ModelFamily::kEts: outcome = fit_ets_family(td, horizon); break;
    case ModelFamily::kSes: outcome = fit_ses_family(td, horizon); break;
    case ModelFamily::kKnn: outcome = fit_knn(td, horizon, grids); break;
    case ModelFamily::kGpr: outcome = fit_gpr(td, horizon); break;
    case ModelFamily::kSvr: outcome = fit_svr(td, horizon, grids); break;
    case ModelFamily::kForest:
      outcome = fit_forest_family(td, horizon, seed, grids, false);
      break;
    case ModelFamily::kExtraTrees:
      outcome = fit_forest_family(td, horizon, seed, grids, true);
      break;
  }

  std::vector<ForecastRecord> records;
  records.reserve(origin.targets.size());
  for (std::size_t i = 0; i < origin.targets.size(); ++i) {
    const double value = transform::inv_boxcox(outcome.z_forecast[i], lambda);
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw FitError(std::string(family_id(family)) +
                     ": forecast left the positive domain");
    }
    ForecastRecord r;
    r.series = series.id();
    r.model = family_id(family);
    r.train_end = origin.train_end;
    r.target_month = origin.targets[i];
    r.value_musd = value;
    r.lambda = lambda.lambda;
    r.hyperparams_json = outcome.hyperparams;
    records.push_back(std::move(r));
  }
  return records;
}

RunResult run_forecasts(const std::vector<MonthlySeries>& corpus,
                        const RunSettings& settings) {
  if (corpus.empty()) throw ValidationError("run_forecasts: empty corpus");
  check_grids(settings.grids);
  if (settings.workers < 1) {
    throw ValidationError("run_forecasts: workers must be >= 1");
  }
  if (settings.horizons.empty()) {
    throw ValidationError("run_forecasts: no horizons requested");
  }
  if (settings.mode == OriginMode::kQuarterEvent) {
    for (int h : settings.horizons) {
      if (h != 2 && h != 3) {
        throw ValidationError(
            "run_forecasts: quarter-event mode supports h in {2, 3}");
      }
    }
  } else {
    for (int h : settings.horizons) {
      if (h < 1) throw ValidationError("run_forecasts: horizon < 1");
    }
  }
  {
    std::set<int> unique_h(settings.horizons.begin(), settings.horizons.end());
    if (unique_h.size() != settings.horizons.size()) {
      throw ValidationError("run_forecasts: duplicate horizon");
    }
  }

  bool want_ensemble = false;
  std::set<std::string> requested;
  for (const auto& id : settings.models) {
    if (!requested.insert(id).second) {
      throw ValidationError("run_forecasts: duplicate model id " + id);
    }
    ModelFamily f;
    if (id == kEnsembleId) {
      want_ensemble = true;
    } else if (!parse_family(id, &f)) {
      throw ValidationError("run_forecasts: unknown model id " + id);
    }
  }
  std::vector<ModelFamily> families;
  for (ModelFamily f : kAllFamilies) {
    if (requested.count(family_id(f))) families.push_back(f);
  }
  if (families.empty()) {
    throw ValidationError("run_forecasts: no fitted model families requested");
  }
  if (want_ensemble && families.size() != std::size(kAllFamilies)) {
    throw ValidationError(
        "run_forecasts: the ensemble needs every fitted family in the pool");
  }

  for (const auto& s : corpus) {
    if (settings.test_start - 1 < s.start() ||
        months_inclusive(s.start(), settings.test_start - 1) <
            kMinTrainMonths) {
      throw ValidationError("run_forecasts: series " + s.id() + " has under " +
                            std::to_string(kMinTrainMonths) +
                            " months before the test start");
    }
  }

  // Origins, then one deterministic λ per (series, origin), both planned
  // sequentially before any worker starts.
  struct PlannedOrigin {
    const MonthlySeries* series;
    Origin origin;
    transform::BoxCoxParams lambda;
  };
  std::vector<PlannedOrigin> planned;
  for (const auto& s : corpus) {
    std::vector<Origin> origins;
    if (settings.mode == OriginMode::kMonthly) {
      const int max_h =
          *std::max_element(settings.horizons.begin(), settings.horizons.end());
      origins = plan_monthly_origins(s, settings.test_start, max_h);
    } else {
      for (int h : settings.horizons) {
        auto part = plan_event_origins(s, settings.test_start, h);
        origins.insert(origins.end(), part.begin(), part.end());
      }
      std::sort(origins.begin(), origins.end(),
                [](const Origin& a, const Origin& b) {
                  return a.train_end < b.train_end;
                });
    }
    for (auto& o : origins) {
      if (!o.targets.empty()) {
        planned.push_back(PlannedOrigin{&s, std::move(o), {}});
      }
    }
  }
  if (planned.empty()) {
    throw ValidationError("run_forecasts: no evaluation origins in range");
  }
  RunResult result;
  for (auto& po : planned) {
    const auto window = po.series->window(po.series->start(),
                                          po.origin.train_end);
    po.lambda = transform::estimate_lambda(window, 12);
    result.lambdas.emplace_back(po.series->id(), po.origin.train_end,
                                po.lambda.lambda);
  }

  std::vector<FitTask> tasks;
  for (const auto& po : planned) {
    for (ModelFamily f : families) {
      FitTask t;
      t.series = po.series;
      t.origin = &po.origin;
      t.family = f;
      t.lambda = po.lambda;
      t.seed = task_seed(settings.seed, po.series->id(), po.origin.train_end,
                         family_id(f));
      tasks.push_back(t);
    }
  }
  result.planned_tasks =
      tasks.size() + (want_ensemble ? planned.size() : 0);

  std::atomic<std::size_t> cursor{0};
  std::mutex collect_mutex;
  auto worker_loop = [&]() {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      const FitTask& t = tasks[i];
      try {
        auto recs = forecast_task(*t.series, *t.origin, t.family, t.lambda,
                                  t.seed, settings.grids);
        const std::lock_guard<std::mutex> lock(collect_mutex);
        for (auto& r : recs) result.records.push_back(std::move(r));
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(collect_mutex);
        result.failures.push_back(TaskFailure{t.series->id(),
                                              t.origin->train_end,
                                              family_id(t.family), e.what()});
      }
    }
  };

  const int thread_count =
      static_cast<int>(std::min<std::size_t>(settings.workers, tasks.size()));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(thread_count));
  for (int w = 0; w < thread_count; ++w) pool.emplace_back(worker_loop);
  for (auto& th : pool) th.join();

  std::sort(result.records.begin(), result.records.end(), record_order);
  std::sort(result.failures.begin(), result.failures.end(), failure_order);

  if (want_ensemble) {
    // (series, train_end, target) -> value, per family; assembled in pool
    // order so the median sees a fixed operand sequence.
    std::map<std::tuple<std::string, int, int>,
             std::map<std::string, double>>
        by_point;
    for (const auto& r : result.records) {
      by_point[{r.series, r.train_end.value(), r.target_month.value()}]
              [r.model] = r.value_musd;
    }
    std::vector<ForecastRecord> ensemble_records;
    for (const auto& po : planned) {
      std::vector<ForecastRecord> recs;
      std::string missing;
      for (const auto target : po.origin.targets) {
        std::vector<double> values;
        const auto it = by_point.find({po.series->id(),
                                       po.origin.train_end.value(),
                                       target.value()});
        for (ModelFamily f : kAllFamilies) {
          if (it == by_point.end()) break;
          const auto vit = it->second.find(family_id(f));
          if (vit == it->second.end()) {
            missing = family_id(f);
            break;
          }
          values.push_back(vit->second);
        }
        if (values.size() != std::size(kAllFamilies)) {
          if (missing.empty()) missing = "all constituents";
          break;
        }
        ForecastRecord r;
        r.series = po.series->id();
        r.model = kEnsembleId;
        r.train_end = po.origin.train_end;
        r.target_month = target;
        r.value_musd = models::combine_median(values);
        r.lambda = po.lambda.lambda;
        r.hyperparams_json =
            "{\"size\":" + std::to_string(std::size(kAllFamilies)) + "}";
        recs.push_back(std::move(r));
      }
      if (recs.size() == po.origin.targets.size()) {
        for (auto& r : recs) ensemble_records.push_back(std::move(r));
      } else {
        result.failures.push_back(
            TaskFailure{po.series->id(), po.origin.train_end, kEnsembleId,
                        "constituent forecast missing: " + missing});
      }
    }
    for (auto& r : ensemble_records) result.records.push_back(std::move(r));
    std::sort(result.records.begin(), result.records.end(), record_order);
    std::sort(result.failures.begin(), result.failures.end(), failure_order);
  }

  for (std::size_t i = 1; i < result.records.size(); ++i) {
    const auto& a = result.records[i - 1];
    const auto& b = result.records[i];
    if (!record_order(a, b)) {
      throw FitError("run_forecasts: duplicate record key " + a.series + "/" +
                     a.model + "/" + a.train_end.label() + "/" +
                     a.target_month.label());
    }
  }

  const double budget = 0.01 * static_cast<double>(result.planned_tasks);
  if (static_cast<double>(result.failures.size()) > budget) {
    std::string detail;
    for (std::size_t i = 0; i < result.failures.size() && i < 5; ++i) {
      const auto& f = result.failures[i];
      detail += "\n  " + f.series + " @ " + f.train_end.label() + " " +
                f.model + ": " + f.reason;
    }
    throw FitError("run_forecasts: " + std::to_string(result.failures.size()) +
                   " of " + std::to_string(result.planned_tasks) +
                   " tasks failed, above the 1% budget" + detail);
  }
  for (const auto& f : result.failures) {
    log_warn("task failed: " + f.series + " @ " + f.train_end.label() + " " +
             f.model + ": " + f.reason);
  }
  return result;
}

}  // namespace semifore::engine
