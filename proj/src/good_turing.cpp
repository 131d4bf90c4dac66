#include <cmath>
#include <vector>

#include "mpgen/error.hpp"
#include "mpgen/lm.hpp"

namespace mpgen {

std::string_view regime_name(GoodTuringEstimate::Regime r) {
  switch (r) {
    case GoodTuringEstimate::Regime::kIdentity: return "identity";
    case GoodTuringEstimate::Regime::kTuring: return "turing";
    case GoodTuringEstimate::Regime::kSimple: return "simple";
    case GoodTuringEstimate::Regime::kFallback: return "fallback";
  }
  return "?";
}

double GoodTuringEstimate::adjusted(std::uint64_t r) const {
  auto it = rstar.find(r);
  return it == rstar.end() ? static_cast<double>(r) : it->second;
}

GoodTuringEstimate good_turing_adjust(const std::map<std::uint64_t, std::uint64_t>& freq_of_freq,
                                      const GoodTuringOptions& options) {
  GoodTuringEstimate est;
  std::vector<std::pair<double, double>> table;  // (r, N_r) for N_r > 0
  for (auto [r, n] : freq_of_freq) {
    if (r == 0 || n == 0) continue;
    est.total += r * n;
    table.emplace_back(static_cast<double>(r), static_cast<double>(n));
  }
  if (est.total == 0) throw ModelError("Good-Turing: empty count table");
  auto n_of = [&](std::uint64_t r) -> double {
    auto it = freq_of_freq.find(r);
    return it == freq_of_freq.end() ? 0.0 : static_cast<double>(it->second);
  };
  est.singletons = static_cast<std::uint64_t>(n_of(1));
  const double total = static_cast<double>(est.total);

  if (est.singletons == 0) {
    est.regime = GoodTuringEstimate::Regime::kIdentity;
    for (auto [r, n] : table) {
      est.raw[static_cast<std::uint64_t>(r)] = r;
      est.rstar[static_cast<std::uint64_t>(r)] = r;
    }
    return est;
  }

  if (options.mode == GoodTuringOptions::Mode::kTuring) {
    est.regime = GoodTuringEstimate::Regime::kTuring;
    for (auto [r, n] : table) est.raw[static_cast<std::uint64_t>(r)] = (r + 1) * n_of(static_cast<std::uint64_t>(r) + 1) / n;
  } else if (table.size() < 2) {
    // Every event seen the same number of times: nothing to regress on.
    est.regime = GoodTuringEstimate::Regime::kFallback;
    est.unseen_mass = options.floor;
    for (auto [r, n] : table) {
      est.raw[static_cast<std::uint64_t>(r)] = r;
      est.rstar[static_cast<std::uint64_t>(r)] = r * (1.0 - options.floor);
    }
    return est;
  } else {
    est.regime = GoodTuringEstimate::Regime::kSimple;
    // Z_r = N_r / (0.5 (t - q)) with q, t the neighbouring observed r.
    std::vector<double> log_r, log_z;
    for (std::size_t j = 0; j < table.size(); ++j) {
      double r = table[j].first;
      double q = j == 0 ? 0.0 : table[j - 1].first;
      double t = j + 1 < table.size() ? table[j + 1].first : 2.0 * r - q;
      log_r.push_back(std::log(r));
      log_z.push_back(std::log(table[j].second / (0.5 * (t - q))));
    }
    double mx = 0, my = 0;
    for (std::size_t j = 0; j < log_r.size(); ++j) mx += log_r[j], my += log_z[j];
    mx /= static_cast<double>(log_r.size());
    my /= static_cast<double>(log_r.size());
    double sxy = 0, sxx = 0;
    for (std::size_t j = 0; j < log_r.size(); ++j) {
      sxy += (log_r[j] - mx) * (log_z[j] - my);
      sxx += (log_r[j] - mx) * (log_r[j] - mx);
    }
    est.slope = sxy / sxx;
    est.intercept = my - est.slope * mx;
    auto smoothed = [&](double r) { return std::exp(est.intercept + est.slope * std::log(r)); };

    bool use_line = false;
    for (auto [r, n] : table) {
      double y = (r + 1) * smoothed(r + 1) / smoothed(r);
      if (!use_line) {
        double next = n_of(static_cast<std::uint64_t>(r) + 1);
        if (next == 0) {
          use_line = true;
        } else {
          double x = (r + 1) * next / n;
          double sd = std::sqrt((r + 1) * (r + 1) * (next / (n * n)) * (1 + next / n));
          if (std::abs(x - y) <= options.confidence * sd) {
            use_line = true;
          } else {
            est.raw[static_cast<std::uint64_t>(r)] = x;
            continue;
          }
        }
        est.switch_at = static_cast<std::uint64_t>(r);
      }
      est.raw[static_cast<std::uint64_t>(r)] = y;
    }
  }

  est.unseen_mass = static_cast<double>(est.singletons) / total;
  double seen = 0;
  for (auto [r, n] : table) seen += n * est.raw[static_cast<std::uint64_t>(r)];
  double scale = seen > 0 ? (1.0 - est.unseen_mass) * total / seen : 0.0;
  for (auto [r, raw] : est.raw) est.rstar[r] = raw * scale;
  return est;
}

}  // namespace mpgen
