#include "finconn/enumeration.hpp"

#include <cmath>

#include "finconn/errors.hpp"

namespace finconn {

namespace {

void guard_size(std::size_t support, int n) {
  double total = std::pow(static_cast<double>(support), n);
  if (total > 1e8) throw ResourceError("enumeration too large");
}

}  // namespace

void enumerate_paths_1d(
    const StepLaw1D& law, int n, int start,
    const std::function<void(std::span<const int>, const Rational&)>& visit) {
  if (!law.has_rational())
    throw ValidationError("law " + law.name() +
                          " has no rational probabilities");
  guard_size(law.support().size(), n);
  const auto& support = law.support();
  const auto& rprobs = law.rational_probs();
  std::vector<int> path(n + 1, start);
  std::vector<Rational> probs(n + 1, Rational(1));

  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      visit(std::span<const int>(path.data(), path.size()), probs[n]);
      return;
    }
    for (std::size_t s = 0; s < support.size(); ++s) {
      path[k + 1] = path[k] + support[s].value;
      probs[k + 1] = probs[k] * rprobs[s];
      rec(k + 1);
    }
  };
  rec(0);
}

void enumerate_paths_1d_real(
    const StepLaw1D& law, int n, int start,
    const std::function<void(std::span<const int>, double)>& visit) {
  guard_size(law.support().size(), n);
  const auto& support = law.support();
  std::vector<int> path(n + 1, start);
  std::vector<double> probs(n + 1, 1.0);

  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      visit(std::span<const int>(path.data(), path.size()), probs[n]);
      return;
    }
    for (const auto& a : support) {
      path[k + 1] = path[k] + a.value;
      probs[k + 1] = probs[k] * a.prob;
      rec(k + 1);
    }
  };
  rec(0);
}

void enumerate_paths_3d(
    const StepLaw3D& law, int n, int start_v, int start_x,
    const std::function<void(std::span<const Step3>, const Rational&)>&
        visit) {
  if (!law.has_rational())
    throw ValidationError("law " + law.name() +
                          " has no rational probabilities");
  guard_size(law.support().size(), n);
  const auto& support = law.support();
  const auto& rprobs = law.rational_probs();
  // path[k] = (T_k, V_k, X_k) with path[0] = (0, start_v, start_x)
  std::vector<Step3> path(n + 1, Step3{0, start_v, start_x});
  std::vector<Rational> probs(n + 1, Rational(1));

  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      visit(std::span<const Step3>(path.data(), path.size()), probs[n]);
      return;
    }
    for (std::size_t s = 0; s < support.size(); ++s) {
      path[k + 1] = Step3{path[k].t + support[s].step.t,
                          path[k].v + support[s].step.v,
                          path[k].x + support[s].step.x};
      probs[k + 1] = probs[k] * rprobs[s];
      rec(k + 1);
    }
  };
  rec(0);
}

namespace pathfn {

bool stays_strictly_positive(std::span<const int> path) {
  for (std::size_t k = 1; k < path.size(); ++k)
    if (path[k] <= 0) return false;
  return true;
}

bool stays_weakly_nonnegative(std::span<const int> path) {
  for (std::size_t k = 0; k < path.size(); ++k)
    if (path[k] < 0) return false;
  return true;
}

bool is_strict_record_time(std::span<const int> path, int m) {
  for (int k = 0; k < m; ++k)
    if (path[static_cast<std::size_t>(k)] >=
        path[static_cast<std::size_t>(m)])
      return false;
  return true;
}

int strict_records_below(std::span<const int> path, int z) {
  int count = 0;
  int running_max = path[0];
  if (path[0] < z) ++count;  // m = 0, vacuously a record
  for (std::size_t m = 1; m < path.size(); ++m) {
    if (path[m] > running_max) {
      running_max = path[m];
      if (path[m] < z) ++count;
    }
  }
  return count;
}

int weak_records_at_most(std::span<const int> path, int z) {
  int count = 0;
  int running_max = path[0];
  if (path[0] <= z) ++count;
  for (std::size_t m = 1; m < path.size(); ++m) {
    if (path[m] >= running_max) {
      running_max = path[m];
      if (path[m] <= z) ++count;
    }
  }
  return count;
}

}  // namespace pathfn

Rational oracle_endpoint_mass(const StepLaw1D& law, int n, int start, int z) {
  Rational total(0);
  enumerate_paths_1d(law, n, start,
                     [&](std::span<const int> path, const Rational& p) {
                       if (path.back() == z) total += p;
                     });
  return total;
}

Rational oracle_stay_positive_mass(const StepLaw1D& law, int n, int start,
                                   int z) {
  Rational total(0);
  enumerate_paths_1d(law, n, start,
                     [&](std::span<const int> path, const Rational& p) {
                       if (path.back() == z &&
                           pathfn::stays_strictly_positive(path))
                         total += p;
                     });
  return total;
}

Rational oracle_weak_nonneg_mass(const StepLaw1D& law, int n, int start,
                                 int z) {
  Rational total(0);
  enumerate_paths_1d(law, n, start,
                     [&](std::span<const int> path, const Rational& p) {
                       if (path.back() == z &&
                           pathfn::stays_weakly_nonnegative(path))
                         total += p;
                     });
  return total;
}

Rational oracle_strict_record_count(const StepLaw1D& law, int n, int z) {
  Rational total(0);
  enumerate_paths_1d(law, n, 0,
                     [&](std::span<const int> path, const Rational& p) {
                       if (path.back() == z)
                         total +=
                             p * Rational(pathfn::strict_records_below(path, z));
                     });
  return total;
}

Rational oracle_record_mass(const StepLaw1D& law, int m, int r) {
  Rational total(0);
  enumerate_paths_1d(law, m, 0,
                     [&](std::span<const int> path, const Rational& p) {
                       if (path.back() == r &&
                           pathfn::is_strict_record_time(path, m))
                         total += p;
                     });
  return total;
}

}  // namespace finconn
