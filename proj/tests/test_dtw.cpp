#include "dtwbench/dtw.hpp"

#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"

using namespace dtwbench;

namespace {

// Resums the local costs along a returned path.
double path_sum(const TimeSeries& x, const TimeSeries& y,
                const WarpPath& path) {
  double sum = 0.0;
  for (const PathPoint& p : path) sum += local_cost(x[p.i - 1], y[p.j - 1]);
  return sum;
}

void check_path_shape(const WarpPath& path, int n, int m) {
  REQUIRE(!path.empty());
  CHECK(path.front() == PathPoint{1, 1});
  CHECK(path.back() == PathPoint{n, m});
  for (std::size_t k = 1; k < path.size(); ++k) {
    const int di = path[k].i - path[k - 1].i;
    const int dj = path[k].j - path[k - 1].j;
    CHECK(di >= 0);
    CHECK(di <= 1);
    CHECK(dj >= 0);
    CHECK(dj <= 1);
    CHECK(di + dj >= 1);
  }
}

}  // namespace

TEST_CASE("local_cost basics") {
  CHECK(local_cost(3, 3) == 0.0);
  CHECK(local_cost(0, 3) == 9.0);
  CHECK(local_cost(-1, 2) == 9.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int t = 0; t < 100; ++t) {
    const double a = u(rng), b = u(rng);
    CHECK(local_cost(a, b) == local_cost(b, a));
    CHECK(local_cost(a, b) >= 0.0);
  }
}

TEST_CASE("band_cells rounding and clamping") {
  CHECK(band_cells(BandSpec(0.04), 945) == 38);
  CHECK(band_cells(BandSpec(0.0), 100) == 0);
  CHECK(band_cells(BandSpec(1.0), 100) == 99);
  CHECK(band_cells(BandSpec(0.0083), 24000) == 199);
  CHECK(band_cells(BandSpec(1.0), 1) == 0);

  // Half-away-from-zero agrees with the floor(x + 0.5) oracle for
  // non-negative arguments.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uf(0.0, 1.0);
  std::uniform_int_distribution<int> un(1, 5000);
  for (int t = 0; t < 2000; ++t) {
    const double f = uf(rng);
    const int n = un(rng);
    long long expect = static_cast<long long>(std::floor(f * n + 0.5));
    expect = std::max(0LL, std::min<long long>(expect, n - 1));
    CHECK(band_cells(BandSpec(f), n) == expect);
  }
}

TEST_CASE("full_dtw identical series cost zero") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const TimeSeries x = oracles::walk_series(rng, 1 + t * 7);
    CHECK(full_dtw(x, x).cost == 0.0);
  }
}

TEST_CASE("full_dtw three-point example, cost and path") {
  const TimeSeries x{0, 0, 1};
  const TimeSeries y{0, 1, 1};
  CHECK(oracles::brute_dtw(x.samples(), y.samples()) == 0.0);

  const DtwResult res = full_dtw(x, y, true);
  CHECK(res.cost == 0.0);
  REQUIRE(res.path.has_value());
  const WarpPath expect{{1, 1}, {2, 1}, {3, 2}, {3, 3}};
  CHECK(*res.path == expect);
}

TEST_CASE("full_dtw single-cell matrix") {
  CHECK(full_dtw(TimeSeries{0}, TimeSeries{3}).cost == 9.0);
}

TEST_CASE("full_dtw equals brute-force enumeration for all N, M <= 8") {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 8; ++n) {
    for (int m = 1; m <= 8; ++m) {
      for (int t = 0; t < 4; ++t) {
        const auto xv = oracles::walk_vec(rng, n);
        const auto yv = oracles::walk_vec(rng, m);
        const double expect = oracles::brute_dtw(xv, yv);
        const double got = full_dtw(TimeSeries(xv), TimeSeries(yv)).cost;
        CHECK(got == doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("full_dtw symmetry, including unequal lengths") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    const TimeSeries x = oracles::walk_series(rng, 2 + t);
    const TimeSeries y = oracles::walk_series(rng, 2 + (t * 3) % 40);
    CHECK(full_dtw(x, y).cost == doctest::Approx(full_dtw(y, x).cost)
                                     .epsilon(1e-12));
  }
}

TEST_CASE("full_dtw path invariants and resummation") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + static_cast<int>(rng() % 50);
    const int m = 2 + static_cast<int>(rng() % 50);
    const TimeSeries x = oracles::walk_series(rng, n);
    const TimeSeries y = oracles::walk_series(rng, m);
    const DtwResult res = full_dtw(x, y, true);
    REQUIRE(res.path.has_value());
    check_path_shape(*res.path, n, m);
    CHECK(path_sum(x, y, *res.path) ==
          doctest::Approx(res.cost).epsilon(1e-9));
  }
  CHECK_FALSE(full_dtw(TimeSeries{1, 2}, TimeSeries{1, 2}, false).path);
}

TEST_CASE("cdtw band 0 equals euclidean exactly") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(rng() % 100);
    const TimeSeries x = oracles::walk_series(rng, n);
    const TimeSeries y = oracles::walk_series(rng, n);
    CHECK(cdtw(x, y, BandSpec(0.0)).cost == euclidean_sq(x, y));
  }
}

TEST_CASE("cdtw band 1 equals full_dtw") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng() % 120);
    const TimeSeries x = oracles::walk_series(rng, n);
    const TimeSeries y = oracles::walk_series(rng, n);
    CHECK(cdtw(x, y, BandSpec(1.0)).cost ==
          doctest::Approx(full_dtw(x, y).cost).epsilon(1e-9));
  }
}

TEST_CASE("cdtw three-point examples") {
  const TimeSeries x{0, 0, 1};
  const TimeSeries y{0, 1, 1};
  CHECK(cdtw(x, y, BandSpec(0.0)).cost == 1.0);

  // fraction 1/3 rounds to one cell of freedom
  REQUIRE(band_cells(BandSpec(1.0 / 3.0), 3) == 1);
  CHECK(oracles::brute_dtw_banded(x.samples(), y.samples(), 1) == 0.0);
  CHECK(cdtw(x, y, BandSpec(1.0 / 3.0)).cost == 0.0);
}

TEST_CASE("cdtw matches the brute banded oracle on small inputs") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const int cells = static_cast<int>(rng() % n);
    const auto xv = oracles::walk_vec(rng, n);
    const auto yv = oracles::walk_vec(rng, n);
    const double frac = static_cast<double>(cells) / n;
    REQUIRE(band_cells(BandSpec(frac), n) == cells);
    const double expect = oracles::brute_dtw_banded(xv, yv, cells);
    CHECK(cdtw(TimeSeries(xv), TimeSeries(yv), BandSpec(frac)).cost ==
          doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("cdtw cost is non-increasing in the band") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 20; ++t) {
    const TimeSeries x = oracles::walk_series(rng, 50);
    const TimeSeries y = oracles::walk_series(rng, 50);
    double prev = cdtw(x, y, BandSpec(0.0)).cost;
    for (int p = 1; p <= 20; ++p) {
      const double cur = cdtw(x, y, BandSpec(p / 100.0)).cost;
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("cdtw length rules") {
  const TimeSeries x{1, 2, 3};
  const TimeSeries y{1, 2, 3, 4};
  CHECK_THROWS_AS(cdtw(x, y, BandSpec(0.5)), UnequalLengthsError);
  CHECK(cdtw(x, y, BandSpec(1.0)).cost ==
        doctest::Approx(full_dtw(x, y).cost).epsilon(1e-12));
}

TEST_CASE("cdtw path stays inside the band and resums") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 20; ++t) {
    const int n = 4 + static_cast<int>(rng() % 60);
    const TimeSeries x = oracles::walk_series(rng, n);
    const TimeSeries y = oracles::walk_series(rng, n);
    const double frac = (rng() % 100) / 100.0;
    const int cells = band_cells(BandSpec(frac), n);
    const DtwResult res = cdtw(x, y, BandSpec(frac), true);
    REQUIRE(res.path.has_value());
    check_path_shape(*res.path, n, n);
    for (const PathPoint& p : *res.path) CHECK(std::abs(p.i - p.j) <= cells);
    CHECK(path_sum(x, y, *res.path) ==
          doctest::Approx(res.cost).epsilon(1e-9));
    CHECK(res.cost == doctest::Approx(cdtw(x, y, BandSpec(frac)).cost)
                          .epsilon(1e-12));
  }
}

TEST_CASE("cdtw cell counter matches the band size") {
  const int n = 37;
  std::mt19937_64 rng(53);
  const TimeSeries x = oracles::walk_series(rng, n);
  const TimeSeries y = oracles::walk_series(rng, n);
  for (int cells : {0, 1, 5, 36}) {
    std::uint64_t counted = 0;
    const double frac = static_cast<double>(cells) / n;
    REQUIRE(band_cells(BandSpec(frac), n) == cells);
    cdtw(x, y, BandSpec(frac), false, &counted);
    std::uint64_t expect = 0;
    for (int i = 0; i < n; ++i)
      expect += std::min(n - 1, i + cells) - std::max(0, i - cells) + 1;
    CHECK(counted == expect);
  }
}

TEST_CASE("euclidean_sq examples and errors") {
  CHECK(euclidean_sq(TimeSeries{1, 2, 3}, TimeSeries{1, 2, 3}) == 0.0);
  CHECK(euclidean_sq(TimeSeries{0, 0, 1}, TimeSeries{0, 1, 1}) == 1.0);
  CHECK(euclidean_sq(TimeSeries{1, 2}, TimeSeries{3, 4}) == 8.0);
  CHECK_THROWS_AS(euclidean_sq(TimeSeries{1}, TimeSeries{1, 2}),
                  UnequalLengthsError);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(TimeSeries(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS((TimeSeries{1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS((TimeSeries{1.0, std::numeric_limits<double>::infinity()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BandSpec(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(BandSpec(1.1), std::invalid_argument);
}
