#include "finconn/walk1d.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "finconn/errors.hpp"

namespace finconn {

std::string to_string(WalkKind kind) {
  switch (kind) {
    case WalkKind::free: return "free";
    case WalkKind::strict_positive: return "strict_positive";
    case WalkKind::weak_nonnegative: return "weak_nonnegative";
    case WalkKind::strict_ladder: return "strict_ladder";
  }
  return "?";
}

Window Window::automatic(const StepLaw1D& law, int n, int start,
                         double n_sigmas) {
  double sigma = std::sqrt(std::max(law.variance(), 1e-12));
  double drift = law.mean() * n;
  int band = static_cast<int>(std::ceil(n_sigmas * sigma * std::sqrt(n + 1.0) +
                                        std::abs(drift))) +
             law.max_abs_step() + 1;
  int reach = n * law.max_abs_step();
  band = std::min(band, reach);
  return Window{start - band, start + band};
}

namespace {

template <typename S>
std::vector<S> law_probs(const StepLaw1D& law);

template <>
std::vector<double> law_probs<double>(const StepLaw1D& law) {
  std::vector<double> p;
  p.reserve(law.support().size());
  for (const auto& a : law.support()) p.push_back(a.prob);
  return p;
}

template <>
std::vector<Rational> law_probs<Rational>(const StepLaw1D& law) {
  if (!law.has_rational())
    throw ValidationError("law " + law.name() +
                          " has no rational probabilities");
  return law.rational_probs();
}

enum class Constraint { none, strict_positive, weak_nonnegative };

template <typename S>
WalkTableT<S> run_dp(const StepLaw1D& law, int n, Window window, int start,
                     Constraint constraint, WalkKind kind) {
  if (n < 0) throw ValidationError("negative horizon");
  if (window.lo > window.hi || start < window.lo || start > window.hi)
    throw ResourceError("window does not contain the start state");
  const auto probs = law_probs<S>(law);
  const auto& support = law.support();
  const int width = window.width();
  if (static_cast<double>(width) * (n + 1) > 2.5e8)
    throw ResourceError("walk table too large");

  WalkTableT<S> table;
  table.law_name = law.name();
  table.kind = kind;
  table.n = n;
  table.start = start;
  table.window = window;
  table.values.assign(n + 1, std::vector<S>(width, S{}));
  table.values[0][start - window.lo] = S{1};
  if (constraint == Constraint::weak_nonnegative && start < 0) {
    table.values[0][start - window.lo] = S{};
  }

  for (int k = 1; k <= n; ++k) {
    const auto& prev = table.values[k - 1];
    auto& cur = table.values[k];
    for (int zi = 0; zi < width; ++zi) {
      if (!(prev[zi] > S{})) continue;
      const S& mass = prev[zi];
      for (std::size_t s = 0; s < support.size(); ++s) {
        int nz = window.lo + zi + support[s].value;
        S moved = mass * probs[s];
        if (nz < window.lo || nz > window.hi) {
          table.leak += moved;
          continue;
        }
        bool killed =
            (constraint == Constraint::strict_positive && nz <= 0) ||
            (constraint == Constraint::weak_nonnegative && nz < 0);
        if (!killed) cur[nz - window.lo] += moved;
      }
    }
  }
  return table;
}

void check_leak(const WalkTableT<double>& table, double max_leak) {
  if (table.leak > max_leak)
    throw ResourceError("window too small: leak " +
                        std::to_string(table.leak) + " for " +
                        table.law_name);
}

}  // namespace

WalkTable q_table(const StepLaw1D& law, int n, Window window, int start,
                  double max_leak) {
  auto t = run_dp<double>(law, n, window, start, Constraint::none,
                          WalkKind::free);
  check_leak(t, max_leak);
  return t;
}

WalkTable u_table(const StepLaw1D& law, int n, Window window, int start,
                  double max_leak) {
  auto t = run_dp<double>(law, n, window, start, Constraint::strict_positive,
                          WalkKind::strict_positive);
  check_leak(t, max_leak);
  return t;
}

WalkTable u0_table(const StepLaw1D& law, int n, Window window, int start,
                   double max_leak) {
  auto t = run_dp<double>(law, n, window, start, Constraint::weak_nonnegative,
                          WalkKind::weak_nonnegative);
  check_leak(t, max_leak);
  return t;
}

WalkTable q_table(const StepLaw1D& law, int n) {
  return q_table(law, n, Window::automatic(law, n, 0));
}
WalkTable u_table(const StepLaw1D& law, int n) {
  return u_table(law, n, Window::automatic(law, n, 0));
}
WalkTable u0_table(const StepLaw1D& law, int n) {
  return u0_table(law, n, Window::automatic(law, n, 0));
}

namespace {
Window full_window(const StepLaw1D& law, int n, int start) {
  int reach = n * law.max_abs_step();
  return Window{start - reach, start + reach};
}
}  // namespace

WalkTableRational q_table_rational(const StepLaw1D& law, int n) {
  return run_dp<Rational>(law, n, full_window(law, n, 0), 0, Constraint::none,
                          WalkKind::free);
}
WalkTableRational u_table_rational(const StepLaw1D& law, int n) {
  return run_dp<Rational>(law, n, full_window(law, n, 0), 0,
                          Constraint::strict_positive,
                          WalkKind::strict_positive);
}
WalkTableRational u0_table_rational(const StepLaw1D& law, int n) {
  return run_dp<Rational>(law, n, full_window(law, n, 0), 0,
                          Constraint::weak_nonnegative,
                          WalkKind::weak_nonnegative);
}

double ladder_mass(const StepLaw1D& law, int m, int r) {
  if (r < 1) throw ValidationError("record height must be >= 1");
  if (m == 0) return 0.0;
  auto t = u_table(law, m);
  return t.at(m, r);
}

double ladder_mass_recordwalk(const StepLaw1D& law, int m, int r) {
  // DP over (value, running strict maximum), feasible for short horizons.
  if (r < 1) throw ValidationError("record height must be >= 1");
  if (m == 0) return 0.0;
  int reach = m * law.max_abs_step();
  int width = 2 * reach + 1;
  auto idx = [&](int z, int mx) {
    return static_cast<std::size_t>((z + reach) * (reach + 1) + mx);
  };
  std::vector<double> cur(static_cast<std::size_t>(width) * (reach + 1), 0.0);
  std::vector<double> next(cur.size(), 0.0);
  cur[idx(0, 0)] = 1.0;
  double out = 0.0;
  for (int k = 1; k <= m; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int z = -reach; z <= reach; ++z)
      for (int mx = 0; mx <= reach; ++mx) {
        double mass = cur[idx(z, mx)];
        if (mass == 0.0) continue;
        for (const auto& a : law.support()) {
          int nz = z + a.value;
          if (nz < -reach || nz > reach) continue;
          int nmx = std::max(mx, nz);
          if (k == m && nz == r && nz > mx) out += mass * a.prob;
          next[idx(nz, nmx)] += mass * a.prob;
        }
      }
    std::swap(cur, next);
  }
  return out;
}

double ladder_count_expectation(const StepLaw1D& law, int n, int z) {
  if (z < 1) throw ValidationError("endpoint must be >= 1");
  auto u = u_table(law, n);
  auto q = q_table(law, n);
  // Records below z at epoch m, then a free bridge to z over n-m steps.
  // The m = 0 record (height 0) contributes q_n(z).
  double total = q.at(n, z);
  for (int m = 1; m <= n; ++m)
    for (int r = 1; r < z; ++r) {
      double um = u.at(m, r);
      if (um == 0.0) continue;
      total += um * q.at(n - m, z - r);
    }
  return total;
}

Rational ladder_count_expectation_rational(const StepLaw1D& law, int n,
                                           int z) {
  if (z < 1) throw ValidationError("endpoint must be >= 1");
  auto u = u_table_rational(law, n);
  auto q = q_table_rational(law, n);
  Rational total = q.at(n, z);
  for (int m = 1; m <= n; ++m)
    for (int r = 1; r < z; ++r) {
      Rational um = u.at(m, r);
      if (um == Rational(0)) continue;
      total += um * q.at(n - m, z - r);
    }
  return total;
}

void write_csv(const WalkTable& table, std::ostream& os) {
  os << "# law=" << table.law_name << " kind=" << to_string(table.kind)
     << " n=" << table.n << " start=" << table.start
     << " window=[" << table.window.lo << "," << table.window.hi << "]"
     << " leak=" << table.leak << "\n";
  os << "k,z,value\n";
  for (int k = 0; k <= table.n; ++k)
    for (int z = table.window.lo; z <= table.window.hi; ++z) {
      double v = table.at(k, z);
      if (v != 0.0) os << k << "," << z << "," << v << "\n";
    }
}

}  // namespace finconn
