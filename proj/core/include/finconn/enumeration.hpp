#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "finconn/rational.hpp"
#include "finconn/step_law.hpp"

namespace finconn {

// Exhaustive path enumeration. The visitor receives the full trajectory
// (path[0] = start, path[n] = endpoint) and its exact probability; any path
// functional can be aggregated on top. Guarded by |support|^n <= 1e8.

void enumerate_paths_1d(
    const StepLaw1D& law, int n, int start,
    const std::function<void(std::span<const int>, const Rational&)>& visit);

void enumerate_paths_1d_real(
    const StepLaw1D& law, int n, int start,
    const std::function<void(std::span<const int>, double)>& visit);

void enumerate_paths_3d(
    const StepLaw3D& law, int n, int start_v, int start_x,
    const std::function<void(std::span<const Step3>, const Rational&)>& visit);

// Canned functionals used across the test oracles. `path` holds walk values
// including the start.
namespace pathfn {

bool stays_strictly_positive(std::span<const int> path);   // steps 1..n
bool stays_weakly_nonnegative(std::span<const int> path);  // steps 0..n
// #{m : path[m] < z and m is a strict ascending record (vacuous at m=0)}
int strict_records_below(std::span<const int> path, int z);
// #{m <= n : path[m] <= z and m is a weak ascending record}
int weak_records_at_most(std::span<const int> path, int z);
bool is_strict_record_time(std::span<const int> path, int m);

}  // namespace pathfn

// Convenience oracles on top of the enumerator (rational-exact).
Rational oracle_endpoint_mass(const StepLaw1D& law, int n, int start, int z);
Rational oracle_stay_positive_mass(const StepLaw1D& law, int n, int start,
                                   int z);
Rational oracle_weak_nonneg_mass(const StepLaw1D& law, int n, int start,
                                 int z);
Rational oracle_strict_record_count(const StepLaw1D& law, int n, int z);
Rational oracle_record_mass(const StepLaw1D& law, int m, int r);

}  // namespace finconn
