#include "finconn/walk1d.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "finconn/enumeration.hpp"
#include "finconn/errors.hpp"

using namespace finconn;

namespace {
const StepLaw1D kSrw = make_srw();
const StepLaw1D kLazy = make_lazy();
const StepLaw1D kJump13 = make_jump13();
}  // namespace

TEST(QTable, PointMassAtStart) {
  auto t = q_table(kSrw, 0);
  EXPECT_DOUBLE_EQ(t.at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(t.at(0, 1), 0.0);
}

TEST(QTable, FrozenSrwValues) {
  auto t = q_table(kSrw, 4);
  EXPECT_NEAR(t.at(2, 0), 0.5, 1e-15);       // 2 of 4 paths return
  EXPECT_NEAR(t.at(4, 2), 0.25, 1e-15);      // C(4,3)/16
  EXPECT_NEAR(t.at(4, 4), 1.0 / 16, 1e-15);  // all-up path
  EXPECT_NEAR(t.at(3, 0), 0.0, 0.0);         // parity
}

TEST(QTable, TranslationInvariance) {
  auto from0 = q_table(kLazy, 6);
  auto from3 = q_table(kLazy, 6, Window{-10, 16}, /*start=*/3);
  for (int z = -6; z <= 6; ++z)
    EXPECT_NEAR(from3.at(6, z + 3), from0.at(6, z), 1e-15);
}

TEST(QTable, SymmetryInStartAndEndpoint) {
  auto t = q_table(kJump13, 7);
  for (int z = -21; z <= 21; ++z)
    EXPECT_NEAR(t.at(7, z), t.at(7, -z), 1e-15);
}

TEST(UTable, FrozenSrwValues) {
  auto t = u_table(kSrw, 4);
  EXPECT_NEAR(t.at(1, 1), 0.5, 1e-15);
  EXPECT_NEAR(t.at(4, 2), 0.125, 1e-15);  // ++-+ and +++-
  auto from1 = u_table(kSrw, 3, Window{-5, 8}, /*start=*/1);
  EXPECT_NEAR(from1.at(3, 2), 0.25, 1e-15);  // ++- and +-+
}

TEST(UTable, StartIsExemptFromTheConstraint) {
  auto t = u_table(kSrw, 2, Window{-4, 4}, /*start=*/0);
  EXPECT_NEAR(t.at(2, 2), 0.25, 1e-15);  // ++ survives even though Z_0 = 0
}

TEST(U0Table, FrozenValues) {
  auto t = u0_table(kSrw, 2);
  EXPECT_NEAR(t.at(2, 0), 0.25, 1e-15);  // only +-
  auto lazy = u0_table(kLazy, 1);
  EXPECT_NEAR(lazy.at(1, 0), 0.5, 1e-15);  // the 0-step
  EXPECT_DOUBLE_EQ(u0_table(kSrw, 1).at(1, -1), 0.0);
}

TEST(U0Table, NegativeStartHasNoMass) {
  auto t = u0_table(kSrw, 2, Window{-6, 6}, /*start=*/-1);
  EXPECT_DOUBLE_EQ(t.row_sum(0), 0.0);
  EXPECT_DOUBLE_EQ(t.row_sum(2), 0.0);
}

TEST(ConstrainedTables, RowSumsNonincreasing) {
  for (const auto* law : {&kSrw, &kLazy, &kJump13}) {
    auto u = u_table(*law, 30);
    auto u0 = u0_table(*law, 30);
    for (int k = 1; k <= 30; ++k) {
      EXPECT_LE(u.row_sum(k), u.row_sum(k - 1) + 1e-15);
      EXPECT_LE(u0.row_sum(k), u0.row_sum(k - 1) + 1e-15);
    }
  }
}

TEST(FreeTable, RowSumsStayNearOne) {
  auto q = q_table(kJump13, 50);
  for (int k = 0; k <= 50; ++k) {
    EXPECT_LE(q.row_sum(k), 1.0 + 1e-12);
    EXPECT_GE(q.row_sum(k), 1.0 - 1e-11);
  }
}

TEST(WindowPolicy, TooSmallWindowThrows) {
  EXPECT_THROW(q_table(kSrw, 20, Window{-3, 3}), ResourceError);
}

// --- exhaustive-oracle equivalence ------------------------------------------

TEST(OracleEquivalence, RationalTablesMatchEnumerationExactly) {
  for (const auto* law : {&kSrw, &kLazy, &kJump13}) {
    const int n = 6;
    auto q = q_table_rational(*law, n);
    auto u = u_table_rational(*law, n);
    auto u0 = u0_table_rational(*law, n);
    int reach = n * law->max_abs_step();
    for (int z = -reach; z <= reach; ++z) {
      EXPECT_EQ(q.at(n, z), oracle_endpoint_mass(*law, n, 0, z))
          << law->name() << " z=" << z;
      EXPECT_EQ(u.at(n, z), oracle_stay_positive_mass(*law, n, 0, z));
      EXPECT_EQ(u0.at(n, z), oracle_weak_nonneg_mass(*law, n, 0, z));
    }
  }
}

TEST(OracleEquivalence, FloatTablesMatchEnumeration) {
  for (const auto* law : {&kSrw, &kLazy, &kJump13}) {
    const int n = 8;
    auto u = u_table(*law, n);
    for (int z = 1; z <= n; ++z)
      EXPECT_NEAR(u.at(n, z),
                  oracle_stay_positive_mass(*law, n, 0, z).to_double(), 1e-13);
  }
}

// --- record (ladder) functionals ----------------------------------------------

TEST(LadderMass, FrozenSrwValues) {
  EXPECT_NEAR(ladder_mass(kSrw, 1, 1), 0.5, 1e-15);
  EXPECT_NEAR(ladder_mass(kSrw, 3, 1), 0.125, 1e-15);  // only -++
}

TEST(LadderMass, TimeReversalIdentityAgainstEnumeration) {
  for (const auto* law : {&kSrw, &kLazy, &kJump13}) {
    for (int m = 1; m <= 6; ++m)
      for (int r = 1; r <= 2 * law->max_abs_step(); ++r) {
        double via_table = ladder_mass(*law, m, r);
        double via_paths = oracle_record_mass(*law, m, r).to_double();
        EXPECT_NEAR(via_table, via_paths, 1e-14)
            << law->name() << " m=" << m << " r=" << r;
      }
  }
}

TEST(LadderMass, RecordWalkRouteAgrees) {
  for (const auto* law : {&kSrw, &kLazy}) {
    for (int m = 1; m <= 9; ++m)
      for (int r = 1; r <= 3; ++r)
        EXPECT_NEAR(ladder_mass(*law, m, r),
                    ladder_mass_recordwalk(*law, m, r), 1e-13);
  }
}

TEST(LadderCount, MatchesEnumerationExactly) {
  for (const auto* law : {&kSrw, &kLazy, &kJump13}) {
    for (int n = 1; n <= 7; ++n)
      for (int z = 1; z <= n * law->max_abs_step(); ++z)
        EXPECT_EQ(ladder_count_expectation_rational(*law, n, z),
                  oracle_strict_record_count(*law, n, z))
            << law->name() << " n=" << n << " z=" << z;
  }
}

TEST(LadderCount, SrwFrozenValue) {
  // n=2, z=2: the single surviving path has two records below 2.
  EXPECT_NEAR(ladder_count_expectation(kSrw, 2, 2), 0.5, 1e-15);
  // n=6, z=2: identity value 6*u_6(2)
  auto u = u_table(kSrw, 6);
  EXPECT_NEAR(ladder_count_expectation(kSrw, 6, 2), 6.0 * u.at(6, 2), 1e-14);
  // unreachable endpoint
  EXPECT_DOUBLE_EQ(ladder_count_expectation(kSrw, 4, 7), 0.0);
}

// --- identities -----------------------------------------------------------------

TEST(Identities, CountRepresentationHoldsToFloatTolerance) {
  for (const auto* law : {&kSrw, &kLazy, &kJump13}) {
    const int n = 200;
    auto u = u_table(*law, n);
    for (int z = 1; z <= 12; ++z) {
      double lhs = u.at(n, z);
      double rhs = ladder_count_expectation(*law, n, z) / n;
      EXPECT_NEAR(lhs, rhs, 1e-11) << law->name() << " z=" << z;
    }
  }
}

TEST(Identities, ConstrainedMassBoundedByEndpointShare) {
  for (const auto* law : {&kSrw, &kLazy, &kJump13}) {
    const int n = 60;
    auto u = u_table(*law, n);
    auto q = q_table(*law, n);
    for (int z = 1; z <= n; ++z)
      EXPECT_LE(u.at(n, z), (double(z) / n) * q.at(n, z) + 1e-15);
  }
}

TEST(Identities, BallotEqualityForNearestNeighbourSteps) {
  const int n = 200;
  auto u = u_table(kSrw, n);
  auto q = q_table(kSrw, n);
  for (int z = 1; z <= n; z += 1) {
    double lhs = u.at(n, z);
    double rhs = (double(z) / n) * q.at(n, z);
    EXPECT_NEAR(lhs, rhs, 1e-12);
  }
}

TEST(Identities, FirstMinimumDecomposition) {
  // u_n(w, z) = u0_n(z - w) + sum_{m,r} u_m(w - r) u0_{n-m}(z - r)
  for (const auto* law : {&kSrw, &kLazy}) {
    const int n = 60;
    auto u_from0 = u_table(*law, n);
    auto u0_from0 = u0_table(*law, n);
    for (int w = 1; w <= 4; ++w) {
      auto u_fromw = u_table(*law, n, Window::automatic(*law, n, w), w);
      for (int z = w; z <= 8; ++z) {
        double rhs = u0_from0.at(n, z - w);
        for (int m = 0; m <= n; ++m)
          for (int r = 1; r < w; ++r) {
            double a = u_from0.at(m, w - r);
            if (a == 0.0) continue;
            rhs += a * u0_from0.at(n - m, z - r);
          }
        EXPECT_NEAR(u_fromw.at(n, z), rhs, 1e-10)
            << law->name() << " w=" << w << " z=" << z;
      }
    }
  }
}

TEST(Csv, ExportCarriesMetadataAndValues) {
  auto t = u_table(kSrw, 3);
  std::ostringstream os;
  write_csv(t, os);
  auto text = os.str();
  EXPECT_NE(text.find("law=srw"), std::string::npos);
  EXPECT_NE(text.find("kind=strict_positive"), std::string::npos);
  EXPECT_NE(text.find("k,z,value"), std::string::npos);
  EXPECT_NE(text.find("3,1,0.125"), std::string::npos);
}
