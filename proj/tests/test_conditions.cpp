#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pwsparse/conditions.hpp"
#include "pwsparse/generators.hpp"

using namespace pwsparse;

namespace {

// Expanded N=2 polynomial form of the piecewise ERC, valid when
// alpha1 >= alpha2 and s1 <= s2 (then Z = 1). Independent recomputation path.
bool cond6_expanded_form(double mu, double a1, double a2, int s1, int s2) {
  const double d1 = 1.0 + a1 * mu + (1.0 - a1) * mu * s1;
  const double d2 = 1.0 + a2 * mu + (1.0 - a2) * mu * s2;
  return d2 * (2.0 * a1 * mu * s1 - a1 * mu - 1.0) + 2.0 * mu * s2 * d1 < 0.0;
}

}  // namespace

TEST_CASE("condition 1: general uniqueness bound") {
  CHECK(cond1_general(0.05) == doctest::Approx(10.5).epsilon(1e-12));
  CHECK(cond1_general(0.1) == doctest::Approx(5.5).epsilon(1e-12));
  CHECK(cond1_general(1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(cond1_general(0.0), UsageError);
}

TEST_CASE("conditions 2 and 3: orthogonal pair bounds") {
  CHECK(cond2_pair_orthogonal_uniqueness(0.05) == doctest::Approx(20.0));
  CHECK(cond3_pair_orthogonal_equivalence(0.05) ==
        doctest::Approx(18.284271247461902).epsilon(1e-12));
  CHECK(cond2_pair_orthogonal_uniqueness(0.1) == doctest::Approx(10.0));
  CHECK(cond3_pair_orthogonal_equivalence(0.1) ==
        doctest::Approx(9.142136).epsilon(1e-6));
  for (double mu : {0.01, 0.1, 0.5, 1.0})
    CHECK(cond3_pair_orthogonal_equivalence(mu) <
          cond2_pair_orthogonal_uniqueness(mu));
}

TEST_CASE("orthogonal union bounds") {
  // N = 2 coincides with the pair bounds
  CHECK(cond_orthogonal_union_omp(0.1, 2) ==
        doctest::Approx(cond2_pair_orthogonal_uniqueness(0.1)));
  CHECK(cond_orthogonal_union_bp(0.05, 2) ==
        doctest::Approx(cond3_pair_orthogonal_equivalence(0.05))
            .epsilon(1e-12));
  // large N limit tends to 1/(2 mu) from above
  double prev = cond_orthogonal_union_omp(0.1, 2);
  for (int N = 3; N <= 50; ++N) {
    const double cur = cond_orthogonal_union_omp(0.1, N);
    CHECK(cur < prev);
    CHECK(cur > 5.0);
    prev = cur;
  }
  CHECK(cond_orthogonal_union_omp(0.1, 1000) == doctest::Approx(5.0).epsilon(1e-3));
  CHECK_THROWS_AS(cond_orthogonal_union_omp(0.1, 1), UsageError);
}

TEST_CASE("condition 5: piecewise uniqueness bound") {
  CHECK(cond5_piecewise_uniqueness(0.1, 0.5, 2) == doctest::Approx(7.0).epsilon(1e-13));
  // reductions recorded in the paper's remarks
  for (int N = 2; N <= 10; ++N) {
    for (double mu = 0.01; mu <= 0.5; mu += 0.01) {
      CHECK(cond5_piecewise_uniqueness(mu, 0.0, N) ==
            doctest::Approx(cond_orthogonal_union_omp(mu, N)).epsilon(1e-14));
      CHECK(cond5_piecewise_uniqueness(mu, 1.0, N) ==
            doctest::Approx(cond1_general(mu)).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(cond5_piecewise_uniqueness(0.0, 0.5, 2), UsageError);
}

TEST_CASE("condition 5 is half the piecewise spark lower bound") {
  CHECK(cond5_piecewise_uniqueness(0.1, 0.5, 2) ==
        doctest::Approx(spark_lower_bound_piecewise(0.1, 0.5, 2) / 2.0));
}

TEST_CASE("condition 4: orthogonal-union ERC") {
  SUBCASE("all-zero pattern is trivially true with slack 1/2") {
    const auto c = cond4_orthogonal_erc(0.1, SparsityPattern{{0, 0}});
    CHECK(c.satisfied);
    CHECK(c.slack == doctest::Approx(0.5));
  }
  SUBCASE("N=2 mu=0.1 s=(2,3): 2 mu^2 s1 s2 + mu s2 = 0.42 < 1") {
    CHECK(cond4_orthogonal_erc(0.1, SparsityPattern{{2, 3}}).satisfied);
    CHECK(cond4_orthogonal_erc(0.1, SparsityPattern{{3, 2}}).satisfied);
  }
  SUBCASE("N=2 mu=0.1 s=(9,9): 2.52 >= 1, fails") {
    CHECK(!cond4_orthogonal_erc(0.1, SparsityPattern{{9, 9}}).satisfied);
  }
  SUBCASE("boolean agrees with the Table-1 polynomial form") {
    for (double mu : {0.02, 0.05, 0.1, 0.2}) {
      for (int s1 = 0; s1 <= 15; ++s1) {
        for (int s2 = s1; s2 <= 15; ++s2) {
          const bool table = 2.0 * mu * mu * s1 * s2 + mu * s2 < 1.0;
          CHECK(cond4_orthogonal_erc(mu, SparsityPattern{{s1, s2}}).satisfied ==
                table);
        }
      }
    }
  }
}

TEST_CASE("condition 6: piecewise ERC") {
  SUBCASE("all alpha zero reduces to condition 4 booleans") {
    for (double mu : {0.005, 0.05, 0.1, 0.15, 0.2}) {
      for (int s1 = 0; s1 <= 30; ++s1) {
        for (int s2 = 0; s2 <= 30; ++s2) {
          const auto c6 =
              cond6_piecewise_erc(mu, {0.0, 0.0}, SparsityPattern{{s1, s2}});
          const auto c4 = cond4_orthogonal_erc(mu, SparsityPattern{{s1, s2}});
          CHECK(c6.satisfied == c4.satisfied);
        }
      }
    }
  }
  SUBCASE("example values at mu=0.1 alpha=(0.2,0.5)") {
    CHECK(cond6_piecewise_erc(0.1, {0.2, 0.5}, SparsityPattern{{1, 1}})
              .satisfied);
    CHECK(!cond6_piecewise_erc(0.1, {0.2, 0.5}, SparsityPattern{{8, 8}})
               .satisfied);
  }
  SUBCASE("matches the expanded N=2 form where its assumptions hold") {
    for (double mu : {0.05, 0.1, 0.2}) {
      for (double a1 : {0.95, 0.5, 0.2}) {
        for (double a2 : {0.1, 0.02}) {
          if (a2 > a1) continue;
          for (int s1 = 0; s1 <= 12; ++s1) {
            for (int s2 = s1; s2 <= 12; ++s2) {
              if (s1 + s2 == 0) continue;
              const auto c =
                  cond6_piecewise_erc(mu, {a1, a2}, SparsityPattern{{s1, s2}});
              CHECK(c.satisfied == cond6_expanded_form(mu, a1, a2, s1, s2));
              CHECK(c.z == 0);
            }
          }
        }
      }
    }
  }
  SUBCASE("all-zero pattern is trivially true with no Z") {
    const auto c = cond6_piecewise_erc(0.1, {0.2, 0.5}, SparsityPattern{{0, 0}});
    CHECK(c.satisfied);
    CHECK(!c.z.has_value());
  }
  SUBCASE("alpha = 1 block wins the Z argmax") {
    const auto c = cond6_piecewise_erc(0.1, {0.3, 1.0}, SparsityPattern{{2, 2}});
    CHECK(c.z == 1);
  }
  SUBCASE("enlarging s_i never flips false to true") {
    for (double mu : {0.1, 0.2}) {
      for (int s1 = 0; s1 <= 20; ++s1) {
        for (int s2 = 0; s2 <= 20; ++s2) {
          const auto base =
              cond6_piecewise_erc(mu, {0.3, 0.6}, SparsityPattern{{s1, s2}});
          if (!base.satisfied) {
            CHECK(!cond6_piecewise_erc(mu, {0.3, 0.6},
                                       SparsityPattern{{s1 + 1, s2}})
                       .satisfied);
            CHECK(!cond6_piecewise_erc(mu, {0.3, 0.6},
                                       SparsityPattern{{s1, s2 + 1}})
                       .satisfied);
          }
          const auto c4 = cond4_orthogonal_erc(mu, SparsityPattern{{s1, s2}});
          if (!c4.satisfied) {
            CHECK(!cond4_orthogonal_erc(mu, SparsityPattern{{s1 + 1, s2}})
                       .satisfied);
            CHECK(!cond4_orthogonal_erc(mu, SparsityPattern{{s1, s2 + 1}})
                       .satisfied);
          }
        }
      }
    }
  }
}

TEST_CASE("exact ERC") {
  SUBCASE("orthonormal dictionary: value 0, holds") {
    const Dictionary d(Eigen::MatrixXd::Identity(6, 6), BlockPartition{{3, 3}});
    const auto sp = SupportPartition::from_global({0, 4}, d.partition());
    const auto e = erc_exact(d, sp);
    CHECK(e.value == doctest::Approx(0.0));
    CHECK(e.holds);
  }
  SUBCASE("duplicate atom off support fails strictly") {
    Eigen::MatrixXd m(3, 4);
    m << 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0;
    const Dictionary d(m, BlockPartition{{4}});
    const auto e =
        erc_exact(d, SupportPartition::from_global({0, 1}, d.partition()));
    CHECK(e.value >= 1.0);
    CHECK(!e.holds);
  }
  SUBCASE("matches an independent dense normal-equations solve to 1e-10") {
    const Dictionary d = union_general(8, 2, 0.5, 77);
    const auto sp = SupportPartition::from_global({1, 6, 11}, d.partition());
    const auto e = erc_exact(d, sp);
    const Eigen::MatrixXd as = columns(d, sp.global_support());
    const Eigen::MatrixXd gram_s = as.transpose() * as;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(gram_s);
    double expected = 0.0;
    for (int j : sp.complement()) {
      const Eigen::VectorXd c = lu.solve(as.transpose() * d.column(j));
      expected = std::max(expected, c.lpNorm<1>());
    }
    CHECK(e.value == doctest::Approx(expected).epsilon(1e-10));
  }
  SUBCASE("permutation invariance of the support") {
    const Dictionary d = union_general(8, 2, 0.5, 78);
    const auto a = erc_exact(
        d, SupportPartition::from_global({2, 9, 13}, d.partition()));
    const auto b = erc_exact(
        d, SupportPartition::from_global({13, 2, 9}, d.partition()));
    CHECK(a.value == b.value);
  }
  SUBCASE("rank-deficient support is an error") {
    Eigen::MatrixXd m(3, 4);
    m << 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1;
    const Dictionary d(m, BlockPartition{{4}});
    CHECK_THROWS_AS(
        erc_exact(d, SupportPartition::from_global({0, 1}, d.partition())),
        NumericalError);
  }
}

TEST_CASE("evaluate_all flags assumptions instead of silently applying them") {
  const Dictionary general = union_general(6, 2, 1.0, 5);
  const auto r = evaluate_all(general, SparsityPattern{{1, 1}});
  for (const auto& e : r.entries) {
    if (e.id == "cond2_pair_orthogonal_uniqueness" ||
        e.id == "cond4_orthogonal_erc")
      CHECK(!e.applicable);
    if (e.id == "cond1_general" || e.id == "cond6_piecewise_erc")
      CHECK(e.applicable);
  }

  const auto single = evaluate_all(
      Dictionary(Eigen::MatrixXd::Identity(4, 4), BlockPartition{{4}}),
      std::nullopt);
  for (const auto& e : single.entries)
    if (e.id == "cond5_piecewise_uniqueness") CHECK(!e.applicable);
}

TEST_CASE("bound tables") {
  const auto fig1 = bound_table_mu({"cond1", "cond2", "cond3"}, 0.05, 2);
  CHECK(fig1[0].value == doctest::Approx(10.5));
  CHECK(fig1[1].value == doctest::Approx(20.0));
  CHECK(fig1[2].value == doctest::Approx(18.284271247461902));

  const auto fig2 = bound_table_uniqueness_grid(0.1, 0.5, 10, 10);
  bool saw_cond5 = false;
  for (const auto& row : fig2) {
    if (row.condition == "cond5") {
      saw_cond5 = true;
      CHECK(row.value == doctest::Approx(7.0));
      CHECK(*row.satisfied == (row.param1 + row.param2 < 7.0));
    }
  }
  CHECK(saw_cond5);

  const auto fig3 = bound_table_erc_grid(0.1, 0.05, 0.02, 3, 3);
  for (const auto& row : fig3) {
    if (row.param1 == 1 && row.param2 == 1) CHECK(*row.satisfied);
  }
  CHECK_THROWS_AS(bound_table_mu({"bogus"}, 0.05, 2), UsageError);
}
