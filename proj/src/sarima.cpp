#include "semifore/sarima.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "semifore/decompose.hpp"
#include "semifore/errors.hpp"
#include "semifore/optim.hpp"

namespace semifore::models {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSseFloor = 1e-250;
constexpr double kSeasonalStrengthGate = 0.64;
constexpr double kRootMargin = 1e-5;
constexpr double kTwoPi = 6.283185307179586476925286766559;

// (1 - sum c_i B^i)(1 - sum C_k B^{ks}) expanded to "1 - sum a_j B^j".
std::vector<double> expand_ar(const std::vector<double>& c,
                              const std::vector<double>& sc, int s) {
  std::vector<double> full(1 + c.size() + sc.size() * s, 0.0);
  std::vector<double> left(1 + c.size(), 0.0);
  left[0] = 1.0;
  for (std::size_t i = 0; i < c.size(); ++i) left[i + 1] = -c[i];
  std::vector<double> right(1 + sc.size() * s, 0.0);
  right[0] = 1.0;
  for (std::size_t k = 0; k < sc.size(); ++k) right[(k + 1) * s] = -sc[k];
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      full[i + j] += left[i] * right[j];
    }
  }
  std::vector<double> a(full.size() - 1);
  for (std::size_t j = 1; j < full.size(); ++j) a[j - 1] = -full[j];
  return a;
}

// (1 + sum c_i B^i)(1 + sum C_k B^{ks}) expanded to "1 + sum m_j B^j".
std::vector<double> expand_ma(const std::vector<double>& c,
                              const std::vector<double>& sc, int s) {
  std::vector<double> full(1 + c.size() + sc.size() * s, 0.0);
  std::vector<double> left(1 + c.size(), 0.0);
  left[0] = 1.0;
  for (std::size_t i = 0; i < c.size(); ++i) left[i + 1] = c[i];
  std::vector<double> right(1 + sc.size() * s, 0.0);
  right[0] = 1.0;
  for (std::size_t k = 0; k < sc.size(); ++k) right[(k + 1) * s] = sc[k];
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      full[i + j] += left[i] * right[j];
    }
  }
  std::vector<double> m(full.size() - 1);
  for (std::size_t j = 1; j < full.size(); ++j) m[j - 1] = full[j];
  return m;
}

// Inverse roots of the characteristic polynomial are the eigenvalues of the
// companion matrix with `first_row` on top; all must lie strictly inside
// the unit circle with a small margin. AR coefficients c (for 1 - sum c B^i)
// go in directly, MA coefficients negated.
bool inverse_roots_inside(const std::vector<double>& first_row) {
  std::size_t k = first_row.size();
  while (k > 0 && std::fabs(first_row[k - 1]) < 1e-12) --k;
  if (k == 0) return true;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k, k);
  for (std::size_t j = 0; j < k; ++j) companion(0, j) = first_row[j];
  for (std::size_t i = 1; i < k; ++i) companion(i, i - 1) = 1.0;
  const Eigen::VectorXcd eig =
      Eigen::EigenSolver<Eigen::MatrixXd>(companion, false).eigenvalues();
  const double bound = 1.0 / (1.0 + kRootMargin);
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (std::abs(eig[i]) >= bound) return false;
  }
  return true;
}

struct CoefSet {
  std::vector<double> ar, ma, sar, sma;
  double mu = 0.0;
};

CoefSet unpack_coefs(const std::vector<double>& x, int p, int q, int sp,
                     int sq, bool with_constant) {
  CoefSet c;
  int i = 0;
  c.ar.assign(x.begin() + i, x.begin() + i + p);
  i += p;
  c.ma.assign(x.begin() + i, x.begin() + i + q);
  i += q;
  c.sar.assign(x.begin() + i, x.begin() + i + sp);
  i += sp;
  c.sma.assign(x.begin() + i, x.begin() + i + sq);
  i += sq;
  if (with_constant) c.mu = x[i];
  return c;
}

bool roots_admissible(const CoefSet& c) {
  auto negated = [](std::vector<double> v) {
    for (double& x : v) x = -x;
    return v;
  };
  return inverse_roots_inside(c.ar) && inverse_roots_inside(c.sar) &&
         inverse_roots_inside(negated(c.ma)) &&
         inverse_roots_inside(negated(c.sma));
}

// Conditional sum of squares: residual recursion with zero presample
// shocks, scored from `start` so every candidate in one search sees the
// same effective sample.
double css_sse(const std::vector<double>& x, const std::vector<double>& a,
               const std::vector<double>& m, int start) {
  const int n = static_cast<int>(x.size());
  std::vector<double> z(x.size(), 0.0);
  double sse = 0.0;
  for (int t = start; t < n; ++t) {
    double acc = x[t];
    for (std::size_t i = 1; i <= a.size(); ++i) {
      const int lag_t = t - static_cast<int>(i);
      if (lag_t >= 0) acc -= a[i - 1] * x[lag_t];
    }
    for (std::size_t j = 1; j <= m.size(); ++j) {
      const int lag_t = t - static_cast<int>(j);
      if (lag_t >= start) acc -= m[j - 1] * z[lag_t];
    }
    if (!std::isfinite(acc) || std::fabs(acc) > 1e150) return kInf;
    z[t] = acc;
    sse += acc * acc;
  }
  return sse;
}

struct Candidate {
  int p = 0, q = 0, sp = 0, sq = 0;
  double aicc = kInf;
  CoefSet coefs;
  double sigma2 = 0.0;
  bool ok = false;

  int param_count(bool with_constant) const {
    return p + q + sp + sq + (with_constant ? 1 : 0) + 1;
  }
};

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mean = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (static_cast<double>(v.size()) - 1.0));
}

Candidate evaluate_candidate(const std::vector<double>& w, int p, int q,
                             int sp, int sq, bool with_constant, int s,
                             int start) {
  Candidate cand;
  cand.p = p;
  cand.q = q;
  cand.sp = sp;
  cand.sq = sq;

  const int n_eff = static_cast<int>(w.size()) - start;
  const int k = cand.param_count(with_constant);
  if (n_eff - k - 1 <= 0) return cand;

  auto objective_of = [&](const CoefSet& c) {
    for (const auto* coefs : {&c.ar, &c.ma, &c.sar, &c.sma}) {
      for (double v : *coefs) {
        if (std::fabs(v) > 10.0) return kInf;
      }
    }
    const auto a = expand_ar(c.ar, c.sar, s);
    const auto m = expand_ma(c.ma, c.sma, s);
    std::vector<double> x(w.size());
    for (std::size_t t = 0; t < w.size(); ++t) x[t] = w[t] - c.mu;
    const double sse = css_sse(x, a, m, start);
    if (!std::isfinite(sse)) return kInf;
    const double sigma2 = std::max(sse, kSseFloor) / n_eff;
    return n_eff * (std::log(kTwoPi * sigma2) + 1.0);
  };

  const int dim = p + q + sp + sq + (with_constant ? 1 : 0);
  std::vector<double> best_x(dim, 0.0);
  double best_value;
  if (dim == 0) {
    best_value = objective_of(CoefSet{});
  } else {
    std::vector<double> start_x(dim, 0.0);
    std::vector<double> steps(dim, 0.1);
    if (with_constant) {
      start_x.back() = mean_of(w);
      steps.back() = 0.1 * sd_of(w) + 1e-8;
    }
    auto objective = [&](const std::vector<double>& x) {
      return objective_of(unpack_coefs(x, p, q, sp, sq, with_constant));
    };
    optim::NelderMeadOptions nm;
    nm.max_evals = std::min(600, 100 + 120 * dim);
    const auto result = optim::nelder_mead(objective, start_x, steps, nm);
    // Restart with a tight simplex: mixed AR/MA surfaces often leave the
    // first pass hanging on a near-cancelling ridge.
    std::vector<double> polish_steps(steps.size(), 0.02);
    if (with_constant) polish_steps.back() = 0.2 * steps.back() + 1e-10;
    nm.max_evals = std::min(400, 80 + 60 * dim);
    const auto polished =
        optim::nelder_mead(objective, result.x, polish_steps, nm);
    if (polished.value < result.value) {
      best_x = polished.x;
      best_value = polished.value;
    } else {
      best_x = result.x;
      best_value = result.value;
    }
  }
  if (!std::isfinite(best_value)) return cand;

  CoefSet coefs = unpack_coefs(best_x, p, q, sp, sq, with_constant);
  if (!roots_admissible(coefs)) return cand;

  const auto a = expand_ar(coefs.ar, coefs.sar, s);
  const auto m = expand_ma(coefs.ma, coefs.sma, s);
  std::vector<double> x(w.size());
  for (std::size_t t = 0; t < w.size(); ++t) x[t] = w[t] - coefs.mu;
  const double sse = css_sse(x, a, m, start);

  cand.coefs = std::move(coefs);
  cand.sigma2 = std::max(sse, kSseFloor) / n_eff;
  cand.aicc = best_value + 2.0 * k + 2.0 * k * (k + 1.0) / (n_eff - k - 1.0);
  cand.ok = true;
  return cand;
}

// Strictly better under the search's ordering: AICc first, then fewer
// parameters, then lexicographic order.
bool candidate_before(const Candidate& a, const Candidate& b,
                      bool with_constant) {
  if (a.aicc != b.aicc) return a.aicc < b.aicc;
  if (a.param_count(with_constant) != b.param_count(with_constant)) {
    return a.param_count(with_constant) < b.param_count(with_constant);
  }
  return std::array<int, 4>{a.p, a.q, a.sp, a.sq} <
         std::array<int, 4>{b.p, b.q, b.sp, b.sq};
}

struct ExactMl {
  // Exact Gaussian likelihood of an ARMA in state-space form with the
  // innovation variance concentrated out.
  int r = 0;
  std::vector<double> phi;    // expanded AR, padded to r
  std::vector<double> theta;  // (1, expanded MA...), padded to r

  bool load(const CoefSet& c, int s) {
    const auto a = expand_ar(c.ar, c.sar, s);
    const auto m = expand_ma(c.ma, c.sma, s);
    r = std::max(static_cast<int>(a.size()), static_cast<int>(m.size()) + 1);
    if (r == 0) r = 1;
    phi.assign(r, 0.0);
    std::copy(a.begin(), a.end(), phi.begin());
    theta.assign(r, 0.0);
    theta[0] = 1.0;
    std::copy(m.begin(), m.end(), theta.begin() + 1);
    return true;
  }

  // Stationary state covariance by doubling on P <- P + A P A'.
  bool stationary_cov(std::vector<double>& cov) const {
    std::vector<double> a(r * r, 0.0);
    for (int i = 0; i < r; ++i) {
      a[i * r + 0] = phi[i];
      if (i + 1 < r) a[i * r + i + 1] = 1.0;
    }
    cov.assign(r * r, 0.0);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) cov[i * r + j] = theta[i] * theta[j];
    }
    std::vector<double> ax(r * r), axa(r * r), aa(r * r);
    for (int iter = 0; iter < 40; ++iter) {
      double amax = 0.0;
      for (double v : a) amax = std::max(amax, std::fabs(v));
      if (amax < 1e-100) return true;

      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          double acc = 0.0;
          for (int k = 0; k < r; ++k) acc += a[i * r + k] * cov[k * r + j];
          ax[i * r + j] = acc;
        }
      }
      double delta = 0.0;
      double xmax = 0.0;
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          double acc = 0.0;
          for (int k = 0; k < r; ++k) acc += ax[i * r + k] * a[j * r + k];
          axa[i * r + j] = acc;
          delta = std::max(delta, std::fabs(acc));
        }
      }
      for (int i = 0; i < r * r; ++i) {
        cov[i] += axa[i];
        xmax = std::max(xmax, std::fabs(cov[i]));
      }
      if (xmax > 1e12) return false;
      if (delta <= 1e-12 * (1.0 + xmax)) return true;

      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          double acc = 0.0;
          for (int k = 0; k < r; ++k) acc += a[i * r + k] * a[k * r + j];
          aa[i * r + j] = acc;
        }
      }
      a.swap(aa);
    }
    return false;
  }

  // Returns -2 log likelihood, or +inf on a degenerate path. sigma2_out
  // receives the concentrated innovation variance.
  double minus_two_loglik(const std::vector<double>& x,
                          double* sigma2_out) const {
    std::vector<double> p;
    if (!stationary_cov(p)) return kInf;
    const int n = static_cast<int>(x.size());
    std::vector<double> state(r, 0.0);
    std::vector<double> tp(r * r), tpt(r * r), gain(r), tstate(r);
    double sum_log_f = 0.0;
    double ssq = 0.0;
    for (int t = 0; t < n; ++t) {
      const double f = p[0];
      if (!(f > 1e-300) || !std::isfinite(f)) return kInf;
      const double e = x[t] - state[0];
      sum_log_f += std::log(f);
      ssq += e * e / f;

      // The transition's companion structure keeps every product at O(r^2):
      // row i of T*M is phi[i]*row0(M) + row(i+1)(M).
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          tp[i * r + j] = phi[i] * p[j] +
                          (i + 1 < r ? p[(i + 1) * r + j] : 0.0);
        }
      }
      for (int i = 0; i < r; ++i) gain[i] = tp[i * r + 0];
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          tpt[i * r + j] = phi[j] * tp[i * r + 0] +
                           (j + 1 < r ? tp[i * r + j + 1] : 0.0);
        }
      }
      for (int i = 0; i < r; ++i) {
        tstate[i] = phi[i] * state[0] + (i + 1 < r ? state[i + 1] : 0.0) +
                    gain[i] * e / f;
      }
      state.swap(tstate);
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
          p[i * r + j] =
              tpt[i * r + j] + theta[i] * theta[j] - gain[i] * gain[j] / f;
        }
      }
    }
    const double sigma2 = std::max(ssq / n, kSseFloor);
    if (sigma2_out) *sigma2_out = sigma2;
    return n * std::log(sigma2) + sum_log_f + n * (1.0 + std::log(kTwoPi));
  }
};

std::vector<double> difference(const std::vector<double>& a, int lag) {
  std::vector<double> b(a.size() - static_cast<std::size_t>(lag));
  for (std::size_t j = 0; j < b.size(); ++j) b[j] = a[j + lag] - a[j];
  return b;
}

}  // namespace

SarimaFit fit_sarima(const std::vector<double>& y,
                     const SarimaOptions& options) {
  const int s = options.period;
  const int n = static_cast<int>(y.size());
  if (s < 2) throw ValidationError("fit_sarima: period must be at least 2");
  if (n < 16) throw ValidationError("fit_sarima: need at least 16 points");

  SarimaFit fit;
  fit.period = s;
  fit.chain.push_back(y);
  fit.chain_lags.push_back(0);

  // Seasonal difference first, decided by how much of the detrended
  // variance the seasonal component carries.
  int big_d = 0;
  if (n >= 2 * s && decompose::seasonal_strength(y, s) > kSeasonalStrengthGate) {
    big_d = 1;
    fit.chain.push_back(difference(fit.chain.back(), s));
    fit.chain_lags.push_back(s);
  }

  int d = decompose::choose_diff_order(fit.chain.back(), 2);
  const int len_after_sd = static_cast<int>(fit.chain.back().size());
  if (len_after_sd - d < 10) d = std::max(0, len_after_sd - 10);
  for (int i = 0; i < d; ++i) {
    fit.chain.push_back(difference(fit.chain.back(), 1));
    fit.chain_lags.push_back(1);
  }

  fit.order.d = d;
  fit.order.sd = big_d;
  fit.with_constant = d + big_d <= 1;

  const std::vector<double>& w = fit.chain.back();
  const int n_w = static_cast<int>(w.size());

  int max_p = std::min(5, n_w / 4);
  int max_q = max_p;
  int max_sp = n_w >= 2 * s ? std::min(2, n_w / (2 * s)) : 0;
  int max_sq = max_sp;
  // All candidates share one conditioning origin; shrink the AR bounds if
  // that would leave too few scored residuals.
  while (n_w - (max_p + s * max_sp) < 8) {
    if (max_sp > 0) {
      --max_sp;
    } else if (max_p > 1) {
      --max_p;
    } else {
      break;
    }
  }
  const int start = max_p + s * max_sp;

  std::map<std::array<int, 4>, Candidate> memo;
  int evaluated = 0;
  auto eval_memo = [&](int p, int q, int sp, int sq) -> const Candidate& {
    const std::array<int, 4> key{p, q, sp, sq};
    auto it = memo.find(key);
    if (it == memo.end()) {
      ++evaluated;
      it = memo.emplace(key, evaluate_candidate(w, p, q, sp, sq,
                                                fit.with_constant, s, start))
               .first;
    }
    return it->second;
  };

  Candidate best;
  auto consider = [&](const Candidate& cand) {
    if (!cand.ok) return;
    if (!best.ok || candidate_before(cand, best, fit.with_constant)) {
      best = cand;
    }
  };

  if (options.stepwise) {
    const std::array<std::array<int, 4>, 4> starts = {{
        {2, 2, 1, 1}, {0, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}}};
    for (const auto& o : starts) {
      consider(eval_memo(std::min(o[0], max_p), std::min(o[1], max_q),
                         std::min(o[2], max_sp), std::min(o[3], max_sq)));
    }
    bool moved = true;
    while (moved && evaluated < options.max_models) {
      moved = false;
      const int p = best.p, q = best.q, sp = best.sp, sq = best.sq;
      const std::array<std::array<int, 4>, 16> moves = {{
          {p - 1, q, sp, sq}, {p + 1, q, sp, sq},
          {p, q - 1, sp, sq}, {p, q + 1, sp, sq},
          {p, q, sp - 1, sq}, {p, q, sp + 1, sq},
          {p, q, sp, sq - 1}, {p, q, sp, sq + 1},
          {p - 1, q - 1, sp, sq}, {p - 1, q + 1, sp, sq},
          {p + 1, q - 1, sp, sq}, {p + 1, q + 1, sp, sq},
          {p, q, sp - 1, sq - 1}, {p, q, sp - 1, sq + 1},
          {p, q, sp + 1, sq - 1}, {p, q, sp + 1, sq + 1}}};
      Candidate best_neighbor;
      for (const auto& mv : moves) {
        if (evaluated >= options.max_models) break;
        if (mv[0] < 0 || mv[0] > max_p || mv[1] < 0 || mv[1] > max_q ||
            mv[2] < 0 || mv[2] > max_sp || mv[3] < 0 || mv[3] > max_sq) {
          continue;
        }
        const Candidate& cand = eval_memo(mv[0], mv[1], mv[2], mv[3]);
        if (!cand.ok) continue;
        if (!best_neighbor.ok ||
            candidate_before(cand, best_neighbor, fit.with_constant)) {
          best_neighbor = cand;
        }
      }
      if (best_neighbor.ok && best_neighbor.aicc < best.aicc - 1e-10) {
        best = best_neighbor;
        moved = true;
      }
    }
  } else {
    for (int p = 0; p <= std::min(2, max_p); ++p) {
      for (int q = 0; q <= std::min(2, max_q); ++q) {
        for (int sp = 0; sp <= std::min(1, max_sp); ++sp) {
          for (int sq = 0; sq <= std::min(1, max_sq); ++sq) {
            consider(eval_memo(p, q, sp, sq));
          }
        }
      }
    }
  }

  if (!best.ok) throw FitError("fit_sarima: no admissible candidate");

  fit.order.p = best.p;
  fit.order.q = best.q;
  fit.order.sp = best.sp;
  fit.order.sq = best.sq;
  fit.ar = best.coefs.ar;
  fit.ma = best.coefs.ma;
  fit.sar = best.coefs.sar;
  fit.sma = best.coefs.sma;
  fit.mu = best.coefs.mu;
  fit.sigma2 = best.sigma2;
  fit.aicc = best.aicc;

  // Exact-likelihood polish of the selected model. The state dimension is
  // capped; past that the conditional estimates stand.
  const int r_state = std::max(best.p + s * best.sp,
                               best.q + s * best.sq + 1);
  const int dim = best.p + best.q + best.sp + best.sq +
                  (fit.with_constant ? 1 : 0);
  if (options.refine_ml && r_state <= 20 && dim > 0) {
    auto pack = [&](const CoefSet& c) {
      std::vector<double> x;
      x.insert(x.end(), c.ar.begin(), c.ar.end());
      x.insert(x.end(), c.ma.begin(), c.ma.end());
      x.insert(x.end(), c.sar.begin(), c.sar.end());
      x.insert(x.end(), c.sma.begin(), c.sma.end());
      if (fit.with_constant) x.push_back(c.mu);
      return x;
    };
    auto objective = [&](const std::vector<double>& x) {
      const CoefSet c = unpack_coefs(x, best.p, best.q, best.sp, best.sq,
                                     fit.with_constant);
      for (const auto* coefs : {&c.ar, &c.ma, &c.sar, &c.sma}) {
        for (double v : *coefs) {
          if (std::fabs(v) > 10.0) return kInf;
        }
      }
      ExactMl ml;
      ml.load(c, s);
      std::vector<double> x_centered(w.size());
      for (std::size_t t = 0; t < w.size(); ++t) {
        x_centered[t] = w[t] - c.mu;
      }
      return ml.minus_two_loglik(x_centered, nullptr);
    };

    const std::vector<double> start_x = pack(best.coefs);
    std::vector<double> steps(start_x.size(), 0.02);
    if (fit.with_constant) {
      steps.back() = 0.02 * sd_of(w) + 1e-8;
    }
    optim::NelderMeadOptions nm;
    nm.max_evals = 120;
    const auto refined = optim::nelder_mead(objective, start_x, steps, nm);
    if (std::isfinite(refined.value)) {
      const CoefSet c = unpack_coefs(refined.x, best.p, best.q, best.sp,
                                     best.sq, fit.with_constant);
      if (roots_admissible(c)) {
        ExactMl ml;
        ml.load(c, s);
        std::vector<double> x_centered(w.size());
        for (std::size_t t = 0; t < w.size(); ++t) {
          x_centered[t] = w[t] - c.mu;
        }
        double sigma2 = 0.0;
        if (std::isfinite(ml.minus_two_loglik(x_centered, &sigma2))) {
          fit.ar = c.ar;
          fit.ma = c.ma;
          fit.sar = c.sar;
          fit.sma = c.sma;
          fit.mu = c.mu;
          fit.sigma2 = sigma2;
          fit.ml_refined = true;
        }
      }
    }
  }

  return fit;
}

std::vector<double> forecast_sarima(const SarimaFit& fit, int horizon) {
  if (horizon < 1) {
    throw ValidationError("forecast_sarima: horizon must be >= 1");
  }
  if (fit.chain.empty()) throw ValidationError("forecast_sarima: empty fit");

  const int s = fit.period;
  const std::vector<double>& w = fit.chain.back();
  const int n = static_cast<int>(w.size());
  const auto a = expand_ar(fit.ar, fit.sar, s);
  const auto m = expand_ma(fit.ma, fit.sma, s);

  // In-sample shocks via the residual recursion (zero presample), then the
  // mean path continues with future shocks at zero.
  std::vector<double> x(w.size());
  for (int t = 0; t < n; ++t) x[t] = w[t] - fit.mu;
  std::vector<double> z(w.size(), 0.0);
  for (int t = 0; t < n; ++t) {
    double acc = x[t];
    for (std::size_t i = 1; i <= a.size(); ++i) {
      const int lag_t = t - static_cast<int>(i);
      if (lag_t >= 0) acc -= a[i - 1] * x[lag_t];
    }
    for (std::size_t j = 1; j <= m.size(); ++j) {
      const int lag_t = t - static_cast<int>(j);
      if (lag_t >= 0) acc -= m[j - 1] * z[lag_t];
    }
    z[t] = acc;
  }

  std::vector<double> x_ext = x;
  for (int h = 0; h < horizon; ++h) {
    const int t = n + h;
    double acc = 0.0;
    for (std::size_t i = 1; i <= a.size(); ++i) {
      const int lag_t = t - static_cast<int>(i);
      if (lag_t >= 0) acc += a[i - 1] * x_ext[lag_t];
    }
    for (std::size_t j = 1; j <= m.size(); ++j) {
      const int lag_t = t - static_cast<int>(j);
      if (lag_t >= 0 && lag_t < n) acc += m[j - 1] * z[lag_t];
    }
    x_ext.push_back(acc);
  }

  // Walk the difference chain back up, each level consuming the forecasts
  // of the level below it.
  std::vector<std::vector<double>> ext = fit.chain;
  for (int h = 0; h < horizon; ++h) {
    ext.back().push_back(x_ext[n + h] + fit.mu);
  }
  for (int level = static_cast<int>(fit.chain.size()) - 2; level >= 0;
       --level) {
    const int lag = fit.chain_lags[level + 1];
    const std::size_t base = fit.chain[level].size();
    for (int h = 0; h < horizon; ++h) {
      ext[level].push_back(ext[level + 1][base - lag + h] +
                           ext[level][base + h - lag]);
    }
  }
  return {ext[0].end() - horizon, ext[0].end()};
}

}  // namespace semifore::models
