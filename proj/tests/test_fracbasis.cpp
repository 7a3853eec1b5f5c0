#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "fracvide/fracbasis.hpp"

using namespace fracvide;

TEST_SUITE("fracbasis") {
  TEST_CASE("Kronecker property and partition of unity") {
    for (double lambda : {1.0, 0.5, 1.0 / 3.0}) {
      for (int n : {0, 1, 4, 13, 32}) {
        const FractionalBasis basis(n, -0.5, -0.5, lambda);
        std::vector<double> f(basis.size());
        for (int i = 0; i < basis.size(); ++i) {
          basis.eval_all(basis.nodes()[i], f);
          for (int j = 0; j < basis.size(); ++j) CHECK(f[j] == (i == j ? 1.0 : 0.0));
        }
        for (double theta : {0.0, 1e-6, 0.137, 0.5, 0.999, 1.0}) {
          basis.eval_all(theta, f);
          double sum = 0.0;
          for (double v : f) sum += v;
          CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("reproduces lambda-polynomials of degree <= N") {
    const double lambda = 0.5;
    const FractionalBasis basis(6, -0.5, 0.0, lambda);
    auto f = [&](double th) {
      const double z = std::pow(th, lambda);
      return 1.0 - 2.0 * z + 0.5 * z * z * z - 0.25 * std::pow(z, 6);
    };
    std::vector<double> values;
    for (double th : basis.nodes()) values.push_back(f(th));
    for (double th : {0.0, 0.01, 0.3, 0.77, 1.0}) {
      CHECK(basis.interpolate(values, th) == doctest::Approx(f(th)).epsilon(1e-12));
    }
  }

  TEST_CASE("eval agrees with eval_all") {
    const FractionalBasis basis(9, 0.2, -0.4, 0.7);
    std::vector<double> f(basis.size());
    for (double th : {0.05, 0.33, 0.9}) {
      basis.eval_all(th, f);
      for (int j = 0; j < basis.size(); ++j) {
        CHECK(eval_basis(basis, j, th) == doctest::Approx(f[j]).epsilon(1e-13));
      }
    }
    CHECK_THROWS_AS(basis.eval(-1, 0.5), std::out_of_range);
    CHECK_THROWS_AS(basis.eval(10, 0.5), std::out_of_range);
  }

  TEST_CASE("interpolate validates length") {
    const FractionalBasis basis(3, -0.5, -0.5, 1.0);
    std::vector<double> v(3, 1.0);
    CHECK_THROWS_AS(interpolate(basis, v, 0.5), std::invalid_argument);
  }

  TEST_CASE("degree zero") {
    const FractionalBasis basis = build_basis(0, -0.5, -0.5, 0.5);
    CHECK(basis.size() == 1);
    CHECK(basis.eval(0, 0.123) == 1.0);
    CHECK(lebesgue_constant(basis, 10) == doctest::Approx(1.0));
  }

  TEST_CASE("lebesgue_constant") {
    const FractionalBasis basis(8, -0.5, -0.5, 1.0);
    CHECK_THROWS_AS(lebesgue_constant(basis, 89), std::invalid_argument);
    const double l = lebesgue_constant(basis, 2000);
    CHECK(l >= 1.0);
    CHECK(l < 4.0);
    CHECK_THROWS_AS(FractionalBasis(-1, 0.0, 0.0, 1.0), std::invalid_argument);
  }

  TEST_CASE("weighted_l2_norm") {
    // ||1||^2 = B(a+1, b+1) for lambda = 1.
    const double a = -0.5, b = -0.5;
    CHECK(weighted_l2_norm([](double) { return 1.0; }, a, b, 1.0) ==
          doctest::Approx(std::sqrt(beta(a + 1.0, b + 1.0))).epsilon(1e-13));
    // ||theta^lambda||^2 = B(a+1, b+3) under the lambda weight.
    CHECK(weighted_l2_norm([](double th) { return std::sqrt(th); }, 0.0, 0.0, 0.5, 20) ==
          doctest::Approx(std::sqrt(beta(1.0, 3.0))).epsilon(1e-13));
    CHECK(weighted_l2_norm([](double) { return 0.0; }, a, b, 1.0) == 0.0);
    CHECK_THROWS_AS(weighted_l2_norm([](double) { return 1.0; }, a, b, 1.0, 0),
                    std::invalid_argument);
  }

  TEST_CASE("grids and sup_norm") {
    const std::vector<double> g = uniform_grid(kDefaultSupGridPoints);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    CHECK_THROWS_AS(uniform_grid(1), std::invalid_argument);

    const FractionalBasis basis(5, -0.5, -0.5, 0.5);
    const std::vector<double> sg = default_sup_grid(basis);
    CHECK(sg.size() == kDefaultSupGridPoints + 6);
    for (std::size_t i = 1; i < sg.size(); ++i) CHECK(sg[i] >= sg[i - 1]);

    CHECK(sup_norm([](double th) { return -3.0 * th; }, sg) == doctest::Approx(3.0));
    CHECK(std::isnan(sup_norm([](double th) { return th > 0.5 ? std::nan("") : 0.0; }, sg)));
    CHECK_THROWS_AS(sup_norm([](double) { return 0.0; }, std::span<const double>{}),
                    std::invalid_argument);
  }
}
