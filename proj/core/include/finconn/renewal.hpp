#pragma once

#include <string>
#include <vector>

#include "finconn/step_law.hpp"

namespace finconn {

// First strict ascent height distribution: f[r] = P(first entry into the
// positive half-line lands at r), r >= 1 (index 0 unused).
struct LadderLaw {
  std::vector<double> f;
  double deficit = 0.0;  // 1 - sum f; zero in the limit for recurrent walks
  int horizon = 0;       // steps of the truncated first-passage sweep (0 = exact)
};

struct ChiBracket {
  double lo = 0.0;
  double hi = 1.0;
  int horizon = 0;
  bool count_one_step = true;
  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

struct RenewalTable {
  std::string law_name;
  LadderLaw ladder;
  std::vector<double> u;  // u[z], z = 0..z_max, u[0] = 1
  std::vector<double> U;  // U[z], z = 1..z_max+1 (index 0 unused), U[1] = 1
  std::vector<double> U_direct;  // independent visit-count route
  ChiBracket chi_bracket;
  double chi = 0.0;
  double mu_plus = 0.0;
};

// --- first ascent height law -------------------------------------------------

// Truncated first-passage sweep: partial sums over at most `horizon` steps,
// remaining mass reported as the deficit.
LadderLaw ladder_height_law(const StepLaw1D& law, int horizon = 10000);

// Occupation-measure route: the expected visits to each nonpositive site
// before the first ascent solve a banded linear system whose tail is flat up
// to exponentially small corrections; the ascent law is one convolution away.
// Deficit is at rounding level.
LadderLaw ladder_height_law_exact(const StepLaw1D& law);

// --- renewal function ---------------------------------------------------------

// u(0)=1, u(z) = sum_r f(r) u(z-r); U(z) = sum_{0..z-1} u.
std::vector<double> renewal_sequence(const LadderLaw& ladder, int z_max);
std::vector<double> renewal_function(const std::vector<double>& u);

// Independent route: expected visits to z in the strictly positive half-line
// before the first nonpositive excursion, summed from the direct definition.
std::vector<double> renewal_u_direct(const StepLaw1D& law, int z_max);

// --- return probability -------------------------------------------------------

// Bracket from partial sums: lo = sum_{n<=M} P(return to 0 at n through a
// strictly negative interior), hi adds all mass still alive or clipped.
// `count_one_step` selects whether the immediate one-step return at n = 1
// (vacuous interior) is counted.
ChiBracket chi_bracket(const StepLaw1D& law, long long horizon = 1000000,
                       bool count_one_step = true);
double chi_exact(const StepLaw1D& law, bool count_one_step = true);

double mu_plus(const LadderLaw& ladder);

// E[#weak ascending records with height <= z], exact occupation-measure
// route over the nonnegative half-line.
double weak_record_expectation_exact(const StepLaw1D& law, int z);

// sup_{r >= r0} |u(r) - 1/mu_plus| for a ladder of thresholds.
struct RenewalLimitRow {
  int r0;
  double sup_deviation;
};
std::vector<RenewalLimitRow> check_renewal_limit(const LadderLaw& ladder,
                                                 int z_max,
                                                 const std::vector<int>& r0s);

// --- tilt continuity ------------------------------------------------------------

struct TiltScanRow {
  double lambda_norm;
  double chi_value;
  double chi_deviation;    // |chi_lambda - chi_0|
  double renewal_deviation;  // max_{z<=z_max} |U_lambda(z)/U(z) - 1|
};

// Tilts the coupled law along (lambda_t, lambda_x) = s*(1,1)/sqrt(2), takes
// the coordinate-difference law, and tabulates the drift of chi and U.
std::vector<TiltScanRow> tilt_continuity(const StepLaw3D& law,
                                         const std::vector<double>& lambda_norms,
                                         int z_max);

RenewalTable make_renewal_table(const StepLaw1D& law, int z_max,
                                long long chi_horizon = 1000000,
                                bool count_one_step = true);

std::string to_json(const RenewalTable& table);
void write_csv(const RenewalTable& table, std::ostream& os);

}  // namespace finconn
