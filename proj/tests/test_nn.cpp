#include "dtwbench/nn.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "dtwbench/dtw.hpp"
#include "oracles.hpp"

using namespace dtwbench;

TEST_CASE("znorm") {
  CHECK(znorm(TimeSeries{5, 5, 5}).samples() == std::vector<double>{0, 0, 0});

  const TimeSeries z = znorm(TimeSeries{1, 2, 3});
  CHECK(z[0] == doctest::Approx(-1.2247).epsilon(1e-4));
  CHECK(z[1] == doctest::Approx(0.0));
  CHECK(z[2] == doctest::Approx(1.2247).epsilon(1e-4));

  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const TimeSeries x = oracles::walk_series(rng, 2 + t * 3);
    const TimeSeries once = znorm(x);
    const TimeSeries twice = znorm(once);
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(twice[i] == doctest::Approx(once[i]).epsilon(1e-9));
  }
}

TEST_CASE("envelope examples") {
  const Envelope e = envelope(TimeSeries{0, 1, 0}, 1);
  CHECK(e.upper == std::vector<double>{1, 1, 1});
  CHECK(e.lower == std::vector<double>{0, 0, 0});

  const TimeSeries q{3, 1, 4};
  const Envelope e0 = envelope(q, 0);
  CHECK(e0.upper == q.samples());
  CHECK(e0.lower == q.samples());

  const TimeSeries c{2, 2, 2, 2};
  for (int w : {0, 1, 3}) {
    const Envelope ec = envelope(c, w);
    CHECK(ec.upper == c.samples());
    CHECK(ec.lower == c.samples());
  }
  CHECK_THROWS_AS(envelope(q, 3), std::invalid_argument);
  CHECK_THROWS_AS(envelope(q, -1), std::invalid_argument);
}

TEST_CASE("envelope equals the naive sliding min/max") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng() % 64);
    const int w = static_cast<int>(rng() % n);
    const TimeSeries q = oracles::walk_series(rng, n);
    const Envelope e = envelope(q, w);
    for (int i = 0; i < n; ++i) {
      double lo = q[i], hi = q[i];
      for (int j = std::max(0, i - w); j <= std::min(n - 1, i + w); ++j) {
        lo = std::min(lo, q[j]);
        hi = std::max(hi, q[j]);
      }
      CHECK(e.lower[i] == lo);
      CHECK(e.upper[i] == hi);
      CHECK(e.lower[i] <= q[i]);
      CHECK(e.upper[i] >= q[i]);
    }
  }
}

TEST_CASE("lb_keogh basics") {
  const TimeSeries q{0, 1, 0};
  const Envelope e = envelope(q, 1);
  CHECK(lb_keogh(TimeSeries{0.5, 0.5, 0.5}, e) == 0.0);

  const Envelope point = envelope(TimeSeries{0}, 0);
  CHECK(lb_keogh(TimeSeries{2}, point) == 4.0);

  CHECK_THROWS_AS(lb_keogh(TimeSeries{1, 2}, e), UnequalLengthsError);
}

TEST_CASE("lb_keogh lower-bounds cdtw at the same window") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 10000; ++t) {
    const int n = 4 + static_cast<int>(rng() % 28);
    const TimeSeries q = oracles::walk_series(rng, n);
    const TimeSeries c = oracles::walk_series(rng, n);
    const double frac = (rng() % 101) / 100.0;
    const int cells = band_cells(BandSpec(frac), n);
    const double lb = lb_keogh(c, envelope(q, cells));
    const double exact = cdtw(q, c, BandSpec(frac)).cost;
    CHECK(lb <= exact + 1e-9 * std::max(1.0, exact));
  }
}

TEST_CASE("cdtw_early_abandon agrees with cdtw and never lies") {
  std::mt19937_64 rng(17);
  const TimeSeries a = oracles::walk_series(rng, 32);
  const TimeSeries b = oracles::walk_series(rng, 32);
  const double inf = std::numeric_limits<double>::infinity();

  auto r = cdtw_early_abandon(a, b, BandSpec(0.2), inf);
  REQUIRE(r.has_value());
  CHECK(*r == cdtw(a, b, BandSpec(0.2)).cost);

  CHECK_FALSE(cdtw_early_abandon(a, b, BandSpec(0.2), 0.0).has_value());

  int abandoned = 0;
  for (int t = 0; t < 10000; ++t) {
    const int n = 4 + static_cast<int>(rng() % 28);
    const TimeSeries x = oracles::walk_series(rng, n);
    const TimeSeries y = oracles::walk_series(rng, n);
    const double frac = (rng() % 101) / 100.0;
    const double exact = cdtw(x, y, BandSpec(frac)).cost;
    const double threshold = exact * ((rng() % 200) / 100.0) + 1e-12;
    const auto got = cdtw_early_abandon(x, y, BandSpec(frac), threshold);
    if (exact < threshold) {
      REQUIRE(got.has_value());
      CHECK(*got == exact);
    } else {
      CHECK_FALSE(got.has_value());
      ++abandoned;
    }
  }
  CHECK(abandoned > 1000);  // the workload actually exercises both branches
}

TEST_CASE("nn_search basics") {
  std::mt19937_64 rng(19);
  std::vector<TimeSeries> cands;
  for (int i = 0; i < 10; ++i) cands.push_back(oracles::walk_series(rng, 40));
  const BandSpec band(0.1);

  SUBCASE("query present in the candidate set") {
    const NnResult r = nn_search(cands[4], cands, band);
    CHECK(r.index == 4);
    CHECK(r.cost == 0.0);
  }
  SUBCASE("single candidate") {
    const std::vector<TimeSeries> one{cands[3]};
    const NnResult r = nn_search(cands[0], one, band);
    CHECK(r.index == 0);
    CHECK(r.cost == cdtw(cands[0], cands[3], band).cost);
  }
  SUBCASE("ties resolve to the first occurrence") {
    std::vector<TimeSeries> dup{cands[1], cands[2], cands[2]};
    for (NnFlags flags : {NnFlags{}, NnFlags{true, true, false}}) {
      const NnResult r = nn_search(cands[2], dup, band, flags);
      CHECK(r.index == 1);
      CHECK(r.cost == 0.0);
    }
  }
  SUBCASE("empty candidate list") {
    CHECK_THROWS_AS(nn_search(cands[0], {}, band), EmptyCandidatesError);
  }
}

TEST_CASE("nn_search is invariant under acceleration flags") {
  std::mt19937_64 rng(23);
  std::vector<TimeSeries> cands;
  for (int i = 0; i < 60; ++i) cands.push_back(oracles::walk_series(rng, 64));
  const BandSpec band(0.05);

  for (int q = 0; q < 5; ++q) {
    const TimeSeries query = oracles::walk_series(rng, 64);
    const NnResult naive = nn_search(query, cands, band, {});
    const NnResult naive_zn =
        nn_search(query, cands, band, {false, false, true});
    for (bool lb : {false, true}) {
      for (bool ea : {false, true}) {
        for (bool zn : {false, true}) {
          const NnResult r = nn_search(query, cands, band, {lb, ea, zn});
          const NnResult& ref = zn ? naive_zn : naive;
          CHECK(r.index == ref.index);
          CHECK(r.cost == ref.cost);
        }
      }
    }
    const NnResult accel = nn_search(query, cands, band, {true, true, false});
    CHECK(accel.cells_evaluated < naive.cells_evaluated);
  }
}
