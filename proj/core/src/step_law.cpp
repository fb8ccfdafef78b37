#include "finconn/step_law.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"

#include "finconn/errors.hpp"

namespace finconn {

using json = nlohmann::ordered_json;

namespace {

std::string point1_str(int v) { return "(" + std::to_string(v) + ")"; }

std::string point3_str(const Step3& s) {
  std::ostringstream os;
  os << "(t=" << s.t << ", v=" << s.v << ", x=" << s.x << ")";
  return os.str();
}

}  // namespace

// --- StepLaw1D ---------------------------------------------------------------

StepLaw1D::StepLaw1D(std::string name, std::vector<Atom> support,
                     bool claims_symmetric)
    : name_(std::move(name)),
      support_(std::move(support)),
      claims_symmetric_(claims_symmetric) {
  if (support_.empty()) throw ValidationError("1d law with empty support");
  std::sort(support_.begin(), support_.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });
  for (std::size_t i = 1; i < support_.size(); ++i)
    if (support_[i].value == support_[i - 1].value)
      throw ValidationError("duplicate support point in 1d law");
}

double StepLaw1D::prob(int value) const {
  for (const auto& a : support_)
    if (a.value == value) return a.prob;
  return 0.0;
}

int StepLaw1D::max_abs_step() const {
  return std::max(std::abs(min_step()), std::abs(max_step()));
}

double StepLaw1D::mean() const {
  double m = 0;
  for (const auto& a : support_) m += a.value * a.prob;
  return m;
}

double StepLaw1D::variance() const {
  double m = mean(), s = 0;
  for (const auto& a : support_) s += (a.value - m) * (a.value - m) * a.prob;
  return s;
}

void StepLaw1D::set_rational_probs(std::vector<Rational> rp) {
  if (rp.size() != support_.size())
    throw ValidationError("rational probability count mismatch");
  Rational sum(0);
  for (std::size_t i = 0; i < rp.size(); ++i) sum += rp[i];
  if (sum != Rational(1))
    throw ValidationError("rational probabilities of " + name_ +
                          " do not sum to 1");
  rprobs_ = std::move(rp);
}

// --- StepLaw3D ---------------------------------------------------------------

StepLaw3D::StepLaw3D(std::string name, std::vector<Atom> support,
                     double cone_slope, double tail_rate,
                     double tail_prefactor)
    : name_(std::move(name)),
      support_(std::move(support)),
      cone_slope_(cone_slope),
      tail_rate_(tail_rate),
      tail_prefactor_(tail_prefactor) {
  if (support_.empty()) throw ValidationError("3d law with empty support");
  std::sort(support_.begin(), support_.end(),
            [](const Atom& a, const Atom& b) {
              return std::tie(a.step.t, a.step.v, a.step.x) <
                     std::tie(b.step.t, b.step.v, b.step.x);
            });
}

int StepLaw3D::max_t() const {
  int m = support_.front().step.t;
  for (const auto& a : support_) m = std::max(m, a.step.t);
  return m;
}

int StepLaw3D::min_t() const {
  int m = support_.front().step.t;
  for (const auto& a : support_) m = std::min(m, a.step.t);
  return m;
}

int StepLaw3D::max_abs_lateral() const {
  int m = 0;
  for (const auto& a : support_)
    m = std::max({m, std::abs(a.step.v), std::abs(a.step.x)});
  return m;
}

double StepLaw3D::mean_t() const {
  double m = 0;
  for (const auto& a : support_) m += a.step.t * a.prob;
  return m;
}

void StepLaw3D::set_rational_probs(std::vector<Rational> rp) {
  if (rp.size() != support_.size())
    throw ValidationError("rational probability count mismatch");
  Rational sum(0);
  for (const auto& r : rp) sum += r;
  if (sum != Rational(1))
    throw ValidationError("rational probabilities of " + name_ +
                          " do not sum to 1");
  rprobs_ = std::move(rp);
}

// --- BoundaryLaw -------------------------------------------------------------

BoundaryLaw::BoundaryLaw(std::string name,
                         std::vector<StepLaw3D::Atom> support,
                         BoundaryKind kind)
    : name_(std::move(name)), support_(std::move(support)), kind_(kind) {
  if (support_.empty()) throw ValidationError("boundary law with empty support");
}

int BoundaryLaw::max_t() const {
  int m = 0;
  for (const auto& a : support_) m = std::max(m, a.step.t);
  return m;
}

double TiltParams::norm() const {
  return std::sqrt(lambda_t * lambda_t + lambda_x * lambda_x);
}

// --- validation --------------------------------------------------------------

ValidationReport validate(const StepLaw1D& law, double prob_tol) {
  ValidationReport rep;

  ValidationItem nonneg{"probabilities_nonnegative", true, ""};
  ValidationItem sum{"probabilities_sum_to_one", true, ""};
  double total = 0, worst = 0;
  for (const auto& a : law.support()) {
    total += a.prob;
    if (a.prob < 0 && a.prob < worst) {
      worst = a.prob;
      nonneg.pass = false;
      nonneg.detail = point1_str(a.value);
    }
  }
  if (std::abs(total - 1.0) > prob_tol) {
    sum.pass = false;
    sum.detail = "sum=" + std::to_string(total);
  }
  rep.items.push_back(nonneg);
  rep.items.push_back(sum);

  ValidationItem sym{"symmetry", true, ""};
  if (law.claims_symmetric()) {
    double worst_dev = 0;
    for (const auto& a : law.support()) {
      double dev = std::abs(a.prob - law.prob(-a.value));
      if (dev > worst_dev) {
        worst_dev = dev;
        sym.detail = point1_str(std::abs(a.value));
      }
    }
    if (worst_dev > prob_tol) sym.pass = false;
    else sym.detail.clear();
  } else {
    sym.detail = "not claimed";
  }
  rep.items.push_back(sym);
  return rep;
}

ValidationReport validate(const StepLaw3D& law, double prob_tol) {
  ValidationReport rep;

  ValidationItem sum{"probabilities_sum_to_one", true, ""};
  double total = 0;
  for (const auto& a : law.support()) total += a.prob;
  if (std::abs(total - 1.0) > prob_tol) {
    sum.pass = false;
    sum.detail = "sum=" + std::to_string(total);
  }
  rep.items.push_back(sum);

  // P1: every step satisfies |v| < alpha*t and |x| < alpha*t.
  ValidationItem cone{"lateral_cone_bound", true, ""};
  for (const auto& a : law.support()) {
    if (a.step.t < 1) {
      cone.pass = false;
      cone.detail = point3_str(a.step) + " has t < 1";
      break;
    }
    if (std::abs(a.step.v) >= law.cone_slope() * a.step.t ||
        std::abs(a.step.x) >= law.cone_slope() * a.step.t) {
      cone.pass = false;
      cone.detail = point3_str(a.step);
      break;
    }
  }
  rep.items.push_back(cone);

  // P2: marginal tail P(t > s) <= C * exp(-beta s) on the finite support.
  ValidationItem tail{"time_marginal_exponential_tail", true, ""};
  {
    std::map<int, double> t_marginal;
    for (const auto& a : law.support()) t_marginal[a.step.t] += a.prob;
    double above = total;
    for (const auto& [t, p] : t_marginal) {
      above -= p;  // P(rho > t)
      double bound = law.tail_prefactor() * std::exp(-law.tail_rate() * t);
      if (above > bound + prob_tol) {
        tail.pass = false;
        tail.detail = "P(t>" + std::to_string(t) + ")=" +
                      std::to_string(above) + " > " + std::to_string(bound);
        break;
      }
    }
  }
  rep.items.push_back(tail);

  // P3: conditional-on-t lateral law invariant under axis reflections and the
  // coordinate swap.
  ValidationItem sym{"conditional_lateral_symmetry", true, ""};
  {
    std::map<std::array<int, 3>, double> p;
    for (const auto& a : law.support())
      p[{a.step.t, a.step.v, a.step.x}] += a.prob;
    auto lookup = [&](int t, int v, int x) {
      auto it = p.find({t, v, x});
      return it == p.end() ? 0.0 : it->second;
    };
    double worst_dev = 0;
    for (const auto& [key, prob] : p) {
      auto [t, v, x] = key;
      for (double q : {lookup(t, -v, x), lookup(t, v, -x), lookup(t, x, v)}) {
        double dev = std::abs(prob - q);
        if (dev > worst_dev) {
          worst_dev = dev;
          sym.detail = point3_str({t, v, x});
        }
      }
    }
    if (worst_dev > prob_tol) sym.pass = false;
    else sym.detail.clear();
  }
  rep.items.push_back(sym);
  return rep;
}

ValidationReport validate(const BoundaryLaw& law, double prob_tol) {
  ValidationReport rep;
  ValidationItem sum{"probabilities_sum_to_one", true, ""};
  double total = 0;
  for (const auto& a : law.support()) total += a.prob;
  if (std::abs(total - 1.0) > prob_tol) {
    sum.pass = false;
    sum.detail = "sum=" + std::to_string(total);
  }
  rep.items.push_back(sum);

  ValidationItem tmin{"time_displacement_positive", true, ""};
  for (const auto& a : law.support())
    if (a.step.t < 1) {
      tmin.pass = false;
      tmin.detail = point3_str(a.step);
      break;
    }
  rep.items.push_back(tmin);
  return rep;
}

// --- tilting -----------------------------------------------------------------

StepLaw3D tilt(const StepLaw3D& law, const TiltParams& params) {
  double norm = 0;
  std::vector<StepLaw3D::Atom> out = law.support();
  for (auto& a : out) {
    a.prob *= std::exp(params.lambda_t * a.step.t +
                       params.lambda_x * (a.step.v + a.step.x));
    norm += a.prob;
  }
  for (auto& a : out) a.prob /= norm;
  std::ostringstream name;
  name << law.name() << "@tilt(" << params.lambda_t << "," << params.lambda_x
       << ")";
  return StepLaw3D(name.str(), std::move(out), law.cone_slope(),
                   law.tail_rate(), law.tail_prefactor());
}

namespace {

std::array<double, 2> tilted_mean(const StepLaw3D& law, double lt, double lx) {
  double norm = 0, mt = 0, ml = 0;
  for (const auto& a : law.support()) {
    double w = a.prob * std::exp(lt * a.step.t + lx * (a.step.v + a.step.x));
    norm += w;
    mt += w * a.step.t;
    ml += w * 0.5 * (a.step.v + a.step.x);
  }
  return {mt / norm, ml / norm};
}

}  // namespace

TiltParams solve_tilt(const StepLaw3D& law, const MeanTarget& target,
                      double radius, double tol) {
  // The tilted means are increasing in their own tilt coordinate (exponential
  // family), so alternate 1-d bisections until both components match.
  auto mean_at = [&](double lt, double lx) { return tilted_mean(law, lt, lx); };

  auto bisect = [&](int coord, double lo, double hi, double other,
                    double want) {
    auto value = [&](double l) {
      auto m = coord == 0 ? mean_at(l, other) : mean_at(other, l);
      return m[coord];
    };
    double flo = value(lo), fhi = value(hi);
    if (want < flo - tol || want > fhi + tol)
      throw ValidationError("tilt target unreachable within radius");
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (value(mid) < want)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  double lt = 0, lx = 0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    lt = bisect(0, -radius, radius, lx, target.t);
    lx = bisect(1, -radius, radius, lt, target.lateral);
    auto m = mean_at(lt, lx);
    if (std::abs(m[0] - target.t) < tol &&
        std::abs(m[1] - target.lateral) < tol)
      break;
  }
  auto m = mean_at(lt, lx);
  if (std::abs(m[0] - target.t) > 1e-10 ||
      std::abs(m[1] - target.lateral) > 1e-10)
    throw ValidationError("tilt target unreachable within radius");
  return TiltParams{lt, lx};
}

// --- difference law ----------------------------------------------------------

StepLaw1D difference_law(const StepLaw3D& law) {
  std::map<int, double> z;
  for (const auto& a : law.support()) z[a.step.x - a.step.v] += a.prob;
  std::vector<StepLaw1D::Atom> atoms;
  atoms.reserve(z.size());
  for (const auto& [value, prob] : z) atoms.push_back({value, prob});
  StepLaw1D out(law.name() + ".diff", std::move(atoms), true);
  if (law.has_rational()) {
    std::map<int, Rational> rz;
    const auto& rp = law.rational_probs();
    for (std::size_t i = 0; i < law.support().size(); ++i) {
      const auto& s = law.support()[i].step;
      auto [it, inserted] = rz.try_emplace(s.x - s.v, rp[i]);
      if (!inserted) it->second += rp[i];
    }
    std::vector<Rational> rprobs;
    for (const auto& [value, prob] : rz) rprobs.push_back(prob);
    out.set_rational_probs(std::move(rprobs));
  }
  return out;
}

// --- moments -----------------------------------------------------------------

Moments1D moments(const StepLaw1D& law) {
  return Moments1D{law.mean(), law.variance()};
}

Moments3D moments(const StepLaw3D& law) {
  Moments3D m{};
  for (const auto& a : law.support()) {
    m.mean[0] += a.prob * a.step.t;
    m.mean[1] += a.prob * a.step.v;
    m.mean[2] += a.prob * a.step.x;
  }
  for (const auto& a : law.support()) {
    double d[3] = {a.step.t - m.mean[0], a.step.v - m.mean[1],
                   a.step.x - m.mean[2]};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.covariance[i][j] += a.prob * d[i] * d[j];
  }
  return m;
}

// --- built-in laws -----------------------------------------------------------

StepLaw1D make_srw() {
  StepLaw1D law("srw", {{-1, 0.5}, {1, 0.5}});
  law.set_rational_probs({Rational(1, 2), Rational(1, 2)});
  return law;
}

StepLaw1D make_lazy() {
  StepLaw1D law("lazy", {{-1, 0.25}, {0, 0.5}, {1, 0.25}});
  law.set_rational_probs({Rational(1, 4), Rational(1, 2), Rational(1, 4)});
  return law;
}

StepLaw1D make_jump13() {
  StepLaw1D law("jump13", {{-3, 0.125}, {-1, 0.375}, {1, 0.375}, {3, 0.125}});
  law.set_rational_probs(
      {Rational(1, 8), Rational(3, 8), Rational(3, 8), Rational(1, 8)});
  return law;
}

StepLaw3D make_uniform3() {
  std::vector<StepLaw3D::Atom> atoms;
  std::vector<Rational> rprobs;
  for (int v = -1; v <= 1; ++v)
    for (int x = -1; x <= 1; ++x) {
      atoms.push_back({{1, v, x}, 1.0 / 9.0});
      rprobs.emplace_back(1, 9);
    }
  StepLaw3D law("uniform3", std::move(atoms), 2.0, std::log(2.0), 2.0);
  law.set_rational_probs(std::move(rprobs));
  return law;
}

StepLaw3D make_geom3() {
  // Truncated geometric time displacement, independent uniform lateral pair.
  const int t_max = 3;
  double geom_norm = 0;
  for (int t = 1; t <= t_max; ++t) geom_norm += std::pow(0.5, t);
  std::vector<StepLaw3D::Atom> atoms;
  std::vector<Rational> rprobs;
  Rational rnorm(0);
  for (int t = 1; t <= t_max; ++t) rnorm += Rational(1, std::int64_t(1) << t);
  for (int t = 1; t <= t_max; ++t)
    for (int v = -1; v <= 1; ++v)
      for (int x = -1; x <= 1; ++x) {
        atoms.push_back({{t, v, x}, std::pow(0.5, t) / geom_norm / 9.0});
        rprobs.push_back(Rational(1, std::int64_t(1) << t) / rnorm /
                         Rational(9));
      }
  StepLaw3D law("geom3", std::move(atoms), 2.0, std::log(2.0), 2.0);
  law.set_rational_probs(std::move(rprobs));
  return law;
}

BoundaryLaw make_identity_boundary(BoundaryKind kind) {
  return BoundaryLaw(kind == BoundaryKind::initial ? "identity_b"
                                                   : "identity_f",
                     {{{1, 0, 0}, 1.0}}, kind);
}

StepLaw1D step_law_1d_by_name(const std::string& name) {
  if (name == "srw") return make_srw();
  if (name == "lazy") return make_lazy();
  if (name == "jump13") return make_jump13();
  if (name == "uniform3.diff") return difference_law(make_uniform3());
  if (name == "geom3.diff") return difference_law(make_geom3());
  throw ValidationError("unknown 1d law: " + name);
}

StepLaw3D step_law_3d_by_name(const std::string& name) {
  if (name == "uniform3") return make_uniform3();
  if (name == "geom3") return make_geom3();
  throw ValidationError("unknown 3d law: " + name);
}

// --- JSON interchange --------------------------------------------------------

StepLaw1D step_law_1d_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/true);
  if (j.at("kind").get<std::string>() != "1d")
    throw ValidationError("law file kind is not 1d");
  std::vector<StepLaw1D::Atom> atoms;
  for (const auto& entry : j.at("support")) {
    atoms.push_back({entry.at(0).at(0).get<int>(), entry.at(1).get<double>()});
  }
  return StepLaw1D(j.at("name").get<std::string>(), std::move(atoms),
                   j.value("symmetric", true));
}

StepLaw3D step_law_3d_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.at("kind").get<std::string>() != "3d")
    throw ValidationError("law file kind is not 3d");
  std::vector<StepLaw3D::Atom> atoms;
  for (const auto& entry : j.at("support")) {
    const auto& pt = entry.at(0);
    atoms.push_back({{pt.at(0).get<int>(), pt.at(1).get<int>(),
                      pt.at(2).get<int>()},
                     entry.at(1).get<double>()});
  }
  return StepLaw3D(j.at("name").get<std::string>(), std::move(atoms),
                   j.at("alpha").get<double>(), j.at("beta").get<double>(),
                   j.value("tail_prefactor", 1.0));
}

std::string to_json(const StepLaw1D& law) {
  json j;
  j["name"] = law.name();
  j["kind"] = "1d";
  j["symmetric"] = law.claims_symmetric();
  json support = json::array();
  for (const auto& a : law.support())
    support.push_back(json::array({json::array({a.value}), a.prob}));
  j["support"] = support;
  return j.dump(2);
}

std::string to_json(const StepLaw3D& law) {
  json j;
  j["name"] = law.name();
  j["kind"] = "3d";
  j["alpha"] = law.cone_slope();
  j["beta"] = law.tail_rate();
  j["tail_prefactor"] = law.tail_prefactor();
  json support = json::array();
  for (const auto& a : law.support())
    support.push_back(json::array(
        {json::array({a.step.t, a.step.v, a.step.x}), a.prob}));
  j["support"] = support;
  return j.dump(2);
}

}  // namespace finconn
