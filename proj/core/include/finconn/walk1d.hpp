#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "finconn/rational.hpp"
#include "finconn/step_law.hpp"

namespace finconn {

enum class WalkKind { free, strict_positive, weak_nonnegative, strict_ladder };

std::string to_string(WalkKind kind);

struct Window {
  int lo = 0;
  int hi = 0;
  int width() const { return hi - lo + 1; }

  // Reachable range clipped to a diffusive band around the start; the DP
  // tracks the clipped mass, and callers reject tables whose leak exceeds
  // their tolerance.
  static Window automatic(const StepLaw1D& law, int n, int start,
                          double n_sigmas = 10.0);
};

// Dense table of constrained or unconstrained transition probabilities:
// values[k][z - lo] = P(walk at z after k steps, constraint held so far).
template <typename S>
struct WalkTableT {
  std::string law_name;
  WalkKind kind = WalkKind::free;
  int n = 0;
  int start = 0;
  Window window;
  std::vector<std::vector<S>> values;
  S leak{};  // mass clipped at the window edges over all steps

  const S& at(int k, int z) const {
    static const S zero{};
    if (k < 0 || k > n || z < window.lo || z > window.hi) return zero;
    return values[static_cast<std::size_t>(k)]
                 [static_cast<std::size_t>(z - window.lo)];
  }
  S row_sum(int k) const {
    S s{};
    for (const auto& v : values[static_cast<std::size_t>(k)]) s += v;
    return s;
  }
};

using WalkTable = WalkTableT<double>;
using WalkTableRational = WalkTableT<Rational>;

inline constexpr double kDefaultMaxLeak = 1e-12;

// Unconstrained transition table from `start`.
WalkTable q_table(const StepLaw1D& law, int n, Window window, int start = 0,
                  double max_leak = kDefaultMaxLeak);
// Mass killed whenever the walk is <= 0 at steps 1..n (start exempt).
WalkTable u_table(const StepLaw1D& law, int n, Window window, int start = 0,
                  double max_leak = kDefaultMaxLeak);
// Mass killed whenever the walk is < 0 at steps 0..n (start included).
WalkTable u0_table(const StepLaw1D& law, int n, Window window, int start = 0,
                   double max_leak = kDefaultMaxLeak);

WalkTable q_table(const StepLaw1D& law, int n);
WalkTable u_table(const StepLaw1D& law, int n);
WalkTable u0_table(const StepLaw1D& law, int n);

WalkTableRational q_table_rational(const StepLaw1D& law, int n);
WalkTableRational u_table_rational(const StepLaw1D& law, int n);
WalkTableRational u0_table_rational(const StepLaw1D& law, int n);

// Probability that step m is a strict ascending record landing at height r.
// Equal to the stay-positive mass u_m(0, r); the running-maximum route in
// ladder_mass_recordwalk provides the independent cross-check.
double ladder_mass(const StepLaw1D& law, int m, int r);
double ladder_mass_recordwalk(const StepLaw1D& law, int m, int r);

// E(number of strict ascending records below z up to the horizon; endpoint
// z): the double convolution of record masses with free transitions.
double ladder_count_expectation(const StepLaw1D& law, int n, int z);
Rational ladder_count_expectation_rational(const StepLaw1D& law, int n, int z);

void write_csv(const WalkTable& table, std::ostream& os);

}  // namespace finconn
