#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "finconn/rational.hpp"

namespace finconn {

// ---------------------------------------------------------------------------
// Step distributions driving the walk computations. All laws are finite
// support; probabilities are doubles, with an optional exact-rational channel
// carried alongside for the enumeration-oracle regime.
// ---------------------------------------------------------------------------

struct ValidationItem {
  std::string name;
  bool pass = true;
  std::string detail;  // worst violating support point, when failing
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  bool all_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
  const ValidationItem* find(const std::string& name) const {
    for (const auto& it : items)
      if (it.name == name) return &it;
    return nullptr;
  }
};

class StepLaw1D {
 public:
  struct Atom {
    int value;
    double prob;
  };

  StepLaw1D() = default;
  StepLaw1D(std::string name, std::vector<Atom> support,
            bool claims_symmetric = true);

  const std::string& name() const { return name_; }
  const std::vector<Atom>& support() const { return support_; }
  bool claims_symmetric() const { return claims_symmetric_; }

  double prob(int value) const;
  int min_step() const { return support_.front().value; }
  int max_step() const { return support_.back().value; }
  int max_abs_step() const;
  double mean() const;
  double variance() const;

  // Exact probabilities for the oracle regime; empty when the law was not
  // built from rationals.
  const std::vector<Rational>& rational_probs() const { return rprobs_; }
  bool has_rational() const { return !rprobs_.empty(); }
  void set_rational_probs(std::vector<Rational> rp);

 private:
  std::string name_;
  std::vector<Atom> support_;  // sorted by value, unique
  std::vector<Rational> rprobs_;
  bool claims_symmetric_ = true;
};

struct Step3 {
  int t;  // time displacement, >= 1
  int v;  // lower-coordinate displacement
  int x;  // upper-coordinate displacement
  friend bool operator==(const Step3&, const Step3&) = default;
};

class StepLaw3D {
 public:
  struct Atom {
    Step3 step;
    double prob;
  };

  StepLaw3D() = default;
  StepLaw3D(std::string name, std::vector<Atom> support, double cone_slope,
            double tail_rate, double tail_prefactor = 1.0);

  const std::string& name() const { return name_; }
  const std::vector<Atom>& support() const { return support_; }
  double cone_slope() const { return cone_slope_; }
  double tail_rate() const { return tail_rate_; }
  double tail_prefactor() const { return tail_prefactor_; }

  int max_t() const;
  int min_t() const;
  int max_abs_lateral() const;
  double mean_t() const;

  const std::vector<Rational>& rational_probs() const { return rprobs_; }
  bool has_rational() const { return !rprobs_.empty(); }
  void set_rational_probs(std::vector<Rational> rp);

 private:
  std::string name_;
  std::vector<Atom> support_;
  std::vector<Rational> rprobs_;
  double cone_slope_ = 0.0;
  double tail_rate_ = 0.0;
  double tail_prefactor_ = 1.0;
};

enum class BoundaryKind { initial, terminal };

class BoundaryLaw {
 public:
  BoundaryLaw() = default;
  BoundaryLaw(std::string name, std::vector<StepLaw3D::Atom> support,
              BoundaryKind kind);

  const std::string& name() const { return name_; }
  const std::vector<StepLaw3D::Atom>& support() const { return support_; }
  BoundaryKind kind() const { return kind_; }
  int max_t() const;

 private:
  std::string name_;
  std::vector<StepLaw3D::Atom> support_;
  BoundaryKind kind_ = BoundaryKind::initial;
};

struct TiltParams {
  double lambda_t = 0.0;
  double lambda_x = 0.0;  // applied to both lateral coordinates
  double norm() const;
};

struct MeanTarget {
  double t;
  double lateral;  // common target for both lateral coordinates
};

struct Moments1D {
  double mean;
  double variance;
};

struct Moments3D {
  std::array<double, 3> mean;
  std::array<std::array<double, 3>, 3> covariance;
};

// --- operations ------------------------------------------------------------

ValidationReport validate(const StepLaw1D& law, double prob_tol = 1e-12);
ValidationReport validate(const StepLaw3D& law, double prob_tol = 1e-12);
ValidationReport validate(const BoundaryLaw& law, double prob_tol = 1e-12);

StepLaw3D tilt(const StepLaw3D& law, const TiltParams& params);

// Finds lambda with |lambda| <= radius matching the tilted mean to target
// (componentwise within tol). Throws ValidationError when the target is
// outside the reachable range.
TiltParams solve_tilt(const StepLaw3D& law, const MeanTarget& target,
                      double radius = 1.0, double tol = 1e-12);

// Law of the coordinate difference (upper minus lower) of one step.
StepLaw1D difference_law(const StepLaw3D& law);

Moments1D moments(const StepLaw1D& law);
Moments3D moments(const StepLaw3D& law);

// --- built-in laws and JSON interchange -------------------------------------

StepLaw1D make_srw();     // +/-1 with probability 1/2
StepLaw1D make_lazy();    // -1,0,+1 with probabilities 1/4,1/2,1/4
StepLaw1D make_jump13();  // +/-1 w.p. 3/8, +/-3 w.p. 1/8
StepLaw3D make_uniform3();  // t==1, lateral pair uniform on {-1,0,1}^2
StepLaw3D make_geom3();     // truncated-geometric t, independent uniform pair
BoundaryLaw make_identity_boundary(BoundaryKind kind);

StepLaw1D step_law_1d_by_name(const std::string& name);
StepLaw3D step_law_3d_by_name(const std::string& name);

// JSON schema: {name, kind:"1d"|"3d"|"boundary", support:[[point...],prob],
// alpha, beta}. 1d points are [v]; 3d/boundary points are [t,v,x].
StepLaw1D step_law_1d_from_json(const std::string& text);
StepLaw3D step_law_3d_from_json(const std::string& text);
std::string to_json(const StepLaw1D& law);
std::string to_json(const StepLaw3D& law);

}  // namespace finconn
