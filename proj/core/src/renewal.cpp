#include "finconn/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Dense>

#include "finconn/errors.hpp"
#include "json.hpp"

namespace finconn {

namespace {

// Expected visits to each site of a half-line before the walk first leaves
// it. Sites are indexed by distance from the boundary: site(i) = first - i
// for the nonpositive side (kill on > 0), site(i) = first + i for mirrored
// uses. The law is assumed symmetric, so one orientation suffices.
//
// g(y) = source(y) + sum_{x in domain} g(x) p(y - x),  y in domain,
//
// solved on a truncated domain of `depth` sites with a flat tail: deviations
// of g from its deep-site limit decay exponentially, which is verified on the
// solution itself.
struct HalfLineGreen {
  std::vector<double> g;  // g[i] = visits at distance i from the boundary site
  double tail_constant = 0.0;
};

// Domain {y <= 0}; source = unit mass at y = 0 counted at time zero.
// Returns visits g[i] for y = -i.
HalfLineGreen green_nonpositive_from_zero(const StepLaw1D& law, int depth) {
  const int k_max = law.max_abs_step();
  const int n = depth + 1;  // unknowns y = 0, -1, ..., -depth
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    int y = -i;
    A(i, i) += 1.0;
    b(i) = (y == 0) ? 1.0 : 0.0;
    for (const auto& atom : law.support()) {
      int x = y - atom.value;  // predecessor site
      if (x > 0) continue;     // outside the domain
      if (x >= -depth) {
        A(i, -x) -= atom.prob;
      } else {
        A(i, depth) -= atom.prob;  // flat tail: g(x) = g(-depth)
      }
    }
  }
  Eigen::VectorXd sol = A.partialPivLu().solve(b);
  HalfLineGreen out;
  out.g.assign(sol.data(), sol.data() + n);
  out.tail_constant = out.g.back();
  // The tail must be flat well inside the truncated region.
  double flat_dev = 0.0;
  for (int i = depth - 4 * k_max; i < depth; ++i)
    flat_dev = std::max(flat_dev, std::abs(out.g[i] - out.tail_constant));
  double scale = std::max(1.0, std::abs(out.tail_constant));
  if (!(flat_dev <= 1e-9 * scale))
    throw ResourceError("half-line occupation solve did not flatten; depth " +
                        std::to_string(depth));
  return out;
}

// Domain {y >= 1}, kill on <= 0; source = one step from the origin.
// Returns g[i] = expected visits to y = 1 + i at times >= 1.
HalfLineGreen green_positive_from_origin_step(const StepLaw1D& law,
                                              int depth) {
  const int k_max = law.max_abs_step();
  const int n = depth + 1;  // unknowns y = 1, ..., 1 + depth
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    int y = 1 + i;
    A(i, i) += 1.0;
    b(i) = law.prob(y);  // first step lands here
    for (const auto& atom : law.support()) {
      int x = y - atom.value;
      if (x < 1) continue;
      if (x <= 1 + depth) {
        A(i, x - 1) -= atom.prob;
      } else {
        A(i, depth) -= atom.prob;
      }
    }
  }
  Eigen::VectorXd sol = A.partialPivLu().solve(b);
  HalfLineGreen out;
  out.g.assign(sol.data(), sol.data() + n);
  out.tail_constant = out.g.back();
  double flat_dev = 0.0;
  for (int i = depth - 4 * k_max; i < depth; ++i)
    flat_dev = std::max(flat_dev, std::abs(out.g[i] - out.tail_constant));
  double scale = std::max(1.0, std::abs(out.tail_constant));
  if (!(flat_dev <= 1e-9 * scale))
    throw ResourceError("half-line occupation solve did not flatten; depth " +
                        std::to_string(depth));
  return out;
}

// Domain {y >= 0}, kill on < 0; source = unit mass at 0 counted at time zero.
HalfLineGreen green_nonnegative_from_zero(const StepLaw1D& law, int depth) {
  const int k_max = law.max_abs_step();
  const int n = depth + 1;  // unknowns y = 0..depth
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (int y = 0; y <= depth; ++y) {
    A(y, y) += 1.0;
    b(y) = (y == 0) ? 1.0 : 0.0;
    for (const auto& atom : law.support()) {
      int x = y - atom.value;
      if (x < 0) continue;
      if (x <= depth) {
        A(y, x) -= atom.prob;
      } else {
        A(y, depth) -= atom.prob;
      }
    }
  }
  Eigen::VectorXd sol = A.partialPivLu().solve(b);
  HalfLineGreen out;
  out.g.assign(sol.data(), sol.data() + n);
  out.tail_constant = out.g.back();
  double flat_dev = 0.0;
  for (int i = depth - 4 * k_max; i < depth; ++i)
    flat_dev = std::max(flat_dev, std::abs(out.g[i] - out.tail_constant));
  double scale = std::max(1.0, std::abs(out.tail_constant));
  if (!(flat_dev <= 1e-9 * scale))
    throw ResourceError("half-line occupation solve did not flatten; depth " +
                        std::to_string(depth));
  return out;
}

int default_depth(const StepLaw1D& law) {
  return std::max(400, 80 * law.max_abs_step());
}

void require_symmetric(const StepLaw1D& law, const char* what) {
  auto rep = validate(law);
  const auto* sym = rep.find("symmetry");
  if (!law.claims_symmetric() || (sym && !sym->pass))
    throw ValidationError(std::string(what) + " requires a symmetric law");
}

}  // namespace

// --- truncated first-passage sweep -------------------------------------------

LadderLaw ladder_height_law(const StepLaw1D& law, int horizon) {
  require_symmetric(law, "ladder height law");
  const int k_max = law.max_abs_step();
  LadderLaw out;
  out.horizon = horizon;
  out.f.assign(k_max + 1, 0.0);

  // Alive mass over nonpositive sites, alive[i] <-> site -i. The window grows
  // diffusively; clipped mass stays in the deficit.
  double sigma = std::sqrt(std::max(law.variance(), 1e-12));
  std::vector<double> alive{1.0}, next;
  for (int m = 1; m <= horizon; ++m) {
    int depth = static_cast<int>(8.0 * sigma * std::sqrt(double(m))) + k_max;
    next.assign(depth + 1, 0.0);
    const int n_alive = static_cast<int>(alive.size());
    for (const auto& atom : law.support()) {
      const int s = atom.value;
      const double p = atom.prob;
      // site -i + s = -(i - s): new index i - s
      for (int i = 0; i < n_alive; ++i) {
        int ni = i - s;
        if (ni < 0) {
          out.f[-ni] += alive[i] * p;  // ascended to height -ni >= 1
        } else if (ni <= depth) {
          next[ni] += alive[i] * p;
        }
      }
    }
    alive.swap(next);
  }
  double total = 0.0;
  for (double v : out.f) total += v;
  out.deficit = 1.0 - total;
  return out;
}

LadderLaw ladder_height_law_exact(const StepLaw1D& law) {
  require_symmetric(law, "ladder height law");
  auto green = green_nonpositive_from_zero(law, default_depth(law));
  const int k_max = law.max_abs_step();
  LadderLaw out;
  out.horizon = 0;
  out.f.assign(k_max + 1, 0.0);
  for (int r = 1; r <= k_max; ++r) {
    double total = 0.0;
    for (int i = 0; i < k_max; ++i) {  // y = -i, only sites within one jump
      double p = law.prob(r + i);
      if (p != 0.0 && i < static_cast<int>(green.g.size()))
        total += green.g[i] * p;
    }
    out.f[r] = total;
  }
  double sum = 0.0;
  for (double v : out.f) sum += v;
  out.deficit = 1.0 - sum;
  return out;
}

// --- renewal function ----------------------------------------------------------

std::vector<double> renewal_sequence(const LadderLaw& ladder, int z_max) {
  std::vector<double> u(z_max + 1, 0.0);
  u[0] = 1.0;
  const int r_max = static_cast<int>(ladder.f.size()) - 1;
  for (int z = 1; z <= z_max; ++z) {
    double acc = 0.0;
    for (int r = 1; r <= std::min(z, r_max); ++r)
      acc += ladder.f[r] * u[z - r];
    u[z] = acc;
  }
  return u;
}

std::vector<double> renewal_function(const std::vector<double>& u) {
  std::vector<double> U(u.size() + 1, 0.0);
  double acc = 0.0;
  for (std::size_t z = 0; z < u.size(); ++z) {
    acc += u[z];
    U[z + 1] = acc;
  }
  return U;
}

std::vector<double> renewal_u_direct(const StepLaw1D& law, int z_max) {
  require_symmetric(law, "renewal visit counts");
  int depth = std::max(default_depth(law), z_max + 8 * law.max_abs_step());
  auto green = green_positive_from_origin_step(law, depth);
  std::vector<double> u(z_max + 1, 0.0);
  u[0] = 1.0;
  for (int z = 1; z <= z_max; ++z) u[z] = green.g[z - 1];
  return u;
}

// --- chi -------------------------------------------------------------------------

ChiBracket chi_bracket(const StepLaw1D& law, long long horizon,
                       bool count_one_step) {
  require_symmetric(law, "return probability");
  const int k_max = law.max_abs_step();
  const double sigma = std::sqrt(std::max(law.variance(), 1e-12));

  ChiBracket out;
  out.horizon = static_cast<int>(std::min<long long>(horizon, INT32_MAX));
  out.count_one_step = count_one_step;

  double lo = 0.0;
  double escaped = 0.0;  // ascended above 0 without touching it: dead paths
  // Alive mass over strictly negative sites, alive[i] <-> site -(i+1).
  // First step: land at 0 (counts iff the one-step convention is on), below
  // zero (alive), or above zero (dead).
  std::vector<double> alive(k_max, 0.0), next;
  for (const auto& atom : law.support()) {
    if (atom.value == 0) {
      if (count_one_step) lo += atom.prob;
      else escaped += atom.prob;
    } else if (atom.value < 0) {
      alive[-atom.value - 1] += atom.prob;
    } else {
      escaped += atom.prob;
    }
  }
  for (long long m = 2; m <= horizon; ++m) {
    int depth =
        static_cast<int>(8.0 * sigma * std::sqrt(double(m))) + k_max;
    next.assign(depth + 1, 0.0);
    const int n_alive = static_cast<int>(alive.size());
    double* __restrict nx = next.data();
    const double* __restrict al = alive.data();
    for (const auto& atom : law.support()) {
      const int s = atom.value;
      const double p = atom.prob;
      // site -(i+1) + s: new index i - s; index -1 is the origin.
      int i_lo = std::max(0, s);          // keep new index >= 0 here
      if (s > 0) {
        for (int i = 0; i < std::min(s, n_alive); ++i) {
          int ny = s - (i + 1);
          double moved = al[i] * p;
          if (ny == 0) lo += moved;
          else escaped += moved;
        }
      }
      // Mass pushed below the window is dropped from `alive` but may still
      // return; it stays inside the bracket through the balance below.
      int i_hi = std::min(n_alive, depth + 1 + s);
      for (int i = i_lo; i < i_hi; ++i) nx[i - s] += al[i] * p;
    }
    alive.swap(next);
  }
  out.lo = lo;
  // Everything not yet returned and not provably dead may still return.
  out.hi = lo + std::max(0.0, 1.0 - lo - escaped);
  return out;
}

double chi_exact(const StepLaw1D& law, bool count_one_step) {
  require_symmetric(law, "return probability");
  auto u = renewal_u_direct(law, law.max_abs_step());
  double chi = count_one_step ? law.prob(0) : 0.0;
  // Mirror of the strictly-negative sweep: by symmetry the expected visits to
  // -y before ascending equal the visits to +y before descending.
  for (int y = 1; y <= law.max_abs_step(); ++y) chi += u[y] * law.prob(y);
  return chi;
}

double mu_plus(const LadderLaw& ladder) {
  double m = 0.0;
  for (std::size_t r = 1; r < ladder.f.size(); ++r) m += double(r) * ladder.f[r];
  return m;
}

double weak_record_expectation_exact(const StepLaw1D& law, int z) {
  require_symmetric(law, "weak record counts");
  int depth = std::max(default_depth(law), z + 8 * law.max_abs_step());
  auto green = green_nonnegative_from_zero(law, depth);
  double total = 0.0;
  for (int r = 0; r <= z; ++r) total += green.g[r];
  return total;
}

std::vector<RenewalLimitRow> check_renewal_limit(const LadderLaw& ladder,
                                                 int z_max,
                                                 const std::vector<int>& r0s) {
  auto u = renewal_sequence(ladder, z_max);
  double limit = 1.0 / mu_plus(ladder);
  std::vector<RenewalLimitRow> rows;
  for (int r0 : r0s) {
    double sup = 0.0;
    for (int r = r0; r <= z_max; ++r)
      sup = std::max(sup, std::abs(u[r] - limit));
    rows.push_back({r0, sup});
  }
  return rows;
}

std::vector<TiltScanRow> tilt_continuity(const StepLaw3D& law,
                                         const std::vector<double>& lambda_norms,
                                         int z_max) {
  StepLaw1D base = difference_law(law);
  auto f0 = ladder_height_law_exact(base);
  auto U0 = renewal_function(renewal_sequence(f0, z_max));
  double chi0 = chi_exact(base);

  std::vector<TiltScanRow> rows;
  for (double s : lambda_norms) {
    TiltParams lambda{s / std::sqrt(2.0), s / std::sqrt(2.0)};
    StepLaw1D diff = difference_law(tilt(law, lambda));
    auto f = ladder_height_law_exact(diff);
    auto U = renewal_function(renewal_sequence(f, z_max));
    double chi = chi_exact(diff);
    double udev = 0.0;
    for (int z = 1; z <= z_max; ++z)
      udev = std::max(udev, std::abs(U[z] / U0[z] - 1.0));
    rows.push_back({s, chi, std::abs(chi - chi0), udev});
  }
  return rows;
}

RenewalTable make_renewal_table(const StepLaw1D& law, int z_max,
                                long long chi_horizon, bool count_one_step) {
  RenewalTable table;
  table.law_name = law.name();
  table.ladder = ladder_height_law_exact(law);
  table.u = renewal_sequence(table.ladder, z_max);
  table.U = renewal_function(table.u);
  auto u_direct = renewal_u_direct(law, z_max);
  table.U_direct = renewal_function(u_direct);
  table.chi_bracket = chi_bracket(law, chi_horizon, count_one_step);
  table.chi = chi_exact(law, count_one_step);
  table.mu_plus = mu_plus(table.ladder);
  return table;
}

std::string to_json(const RenewalTable& table) {
  nlohmann::ordered_json j;
  j["law"] = table.law_name;
  j["ladder_heights"] = nlohmann::ordered_json::array();
  for (std::size_t r = 1; r < table.ladder.f.size(); ++r)
    j["ladder_heights"].push_back(
        nlohmann::ordered_json::array({r, table.ladder.f[r]}));
  j["ladder_deficit"] = table.ladder.deficit;
  j["u"] = table.u;
  j["U"] = std::vector<double>(table.U.begin() + 1, table.U.end());
  j["U_direct"] = std::vector<double>(table.U_direct.begin() + 1,
                                      table.U_direct.end());
  j["chi"] = table.chi;
  j["chi_bracket"] = {{"lo", table.chi_bracket.lo},
                      {"hi", table.chi_bracket.hi},
                      {"horizon", table.chi_bracket.horizon},
                      {"count_one_step", table.chi_bracket.count_one_step}};
  j["mu_plus"] = table.mu_plus;
  return j.dump(2);
}

void write_csv(const RenewalTable& table, std::ostream& os) {
  os << "# law=" << table.law_name << " chi=" << table.chi
     << " mu_plus=" << table.mu_plus << "\n";
  os << "z,u,U\n";
  for (std::size_t z = 0; z < table.u.size(); ++z) {
    os << z << "," << table.u[z] << ",";
    if (z >= 1) os << table.U[z];
    os << "\n";
  }
}

}  // namespace finconn
