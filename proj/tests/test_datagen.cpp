#include "dtwbench/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <doctest.h>

#include "dtwbench/dtw.hpp"
#include "dtwbench/fastdtw.hpp"
#include "oracles.hpp"

using namespace dtwbench;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("dtwbench_test_" + name);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("splitmix64 reproduces the published reference stream") {
  SplitMix64 zero(Seed{0});
  CHECK(zero.next() == 0xE220A8397B1DCDAFULL);
  CHECK(zero.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(zero.next() == 0x06C45D188009454FULL);
  CHECK(zero.next() == 0xF88BB8A8724C81ECULL);

  SplitMix64 other(Seed{1234567});
  CHECK(other.next() == 0x599ED017FB08FC85ULL);
  CHECK(other.next() == 0x2C73F08458540FA5ULL);

  // First Box-Muller pair for seed 42, computed independently.
  SplitMix64 g(Seed{42});
  CHECK(g.next_gaussian() == doctest::Approx(0.4147197504315305).epsilon(1e-15));
  CHECK(g.next_gaussian() == doctest::Approx(0.6526812221519427).epsilon(1e-15));
}

TEST_CASE("random_walk") {
  CHECK(random_walk(1, Seed{99}).samples() == std::vector<double>{0});

  const TimeSeries a = random_walk(1000, Seed{7});
  const TimeSeries b = random_walk(1000, Seed{7});
  CHECK(a.samples() == b.samples());

  const TimeSeries c = random_walk(1000, Seed{8});
  CHECK(a.samples() != c.samples());
  CHECK(a.size() == 1000);
  CHECK(a[0] == 0.0);
  CHECK_THROWS_AS(random_walk(0, Seed{1}), std::invalid_argument);
}

TEST_CASE("fall_pair shapes and event placement") {
  {
    const auto [a, b] = fall_pair(2.0, 100.0, Seed{1});
    CHECK(a.size() == 200);
    CHECK(b.size() == 200);
  }
  {
    const auto [a, b] = fall_pair(4.0, 100.0, Seed{1});
    CHECK(a.size() == 400);
    CHECK(b.size() == 400);
  }
  CHECK_THROWS_AS(fall_pair(0.05, 100.0, Seed{1}), TooShortError);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto [a, b] = fall_pair(3.0, 100.0, Seed{seed});
    const int n = static_cast<int>(a.size());
    auto argmax_abs = [](const TimeSeries& s) {
      int best = 0;
      for (int i = 1; i < static_cast<int>(s.size()); ++i)
        if (std::abs(s[i]) > std::abs(s[best])) best = i;
      return best;
    };
    CHECK(argmax_abs(a) < n / 4);
    CHECK(argmax_abs(b) >= 3 * n / 4);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(a[i]) <= 1.5);
      CHECK(std::abs(b[i]) <= 1.5);
    }
  }
}

TEST_CASE("adversarial_pair shape and feature geometry") {
  CHECK_THROWS_AS(adversarial_pair(100), TooShortError);

  const int n = 1024;
  const AdversarialConfig cfg;
  const auto [a, b] = adversarial_pair(n);
  CHECK(a.size() == 1024);
  CHECK(b.size() == 1024);

  // Spike positions: the global maxima. The spike moves right from A to B.
  auto argmax = [](const TimeSeries& s) {
    return static_cast<int>(std::max_element(s.samples().begin(),
                                             s.samples().end()) -
                            s.samples().begin());
  };
  const int spike_a = argmax(a);
  const int spike_b = argmax(b);
  CHECK(spike_a == n / 8 + 4);
  CHECK(spike_b == n * 13 / 16 + 4);
  CHECK(spike_b > spike_a);

  // Bump centers: peak of the smoothed series once the spike is removed.
  auto bump_peak = [&](const TimeSeries& s, int spike_pos) {
    std::vector<double> v = s.samples();
    for (int i = std::max(0, spike_pos - 4);
         i <= std::min(n - 1, spike_pos + 4); ++i)
      v[i] = 0.0;
    const TimeSeries coarse = paa(TimeSeries(std::move(v)), 32);
    int best = 0;
    for (int i = 1; i < static_cast<int>(coarse.size()); ++i)
      if (coarse[i] > coarse[best]) best = i;
    return best * 32 + 16;
  };
  const int bump_a = bump_peak(a, spike_a);
  const int bump_b = bump_peak(b, spike_b);
  CHECK(bump_b < bump_a);  // the broad feature warps the other way

  // 8:1 PAA flattens the spike: within the spike region the downsampled
  // series stays below a quarter of the spike amplitude.
  for (const auto* s : {&a, &b}) {
    const int spike = argmax(*s);
    const TimeSeries down = paa(*s, 8);
    const int lo = std::max(0, (spike - 8) / 8);
    const int hi = std::min(static_cast<int>(down.size()) - 1, (spike + 8) / 8);
    for (int i = lo; i <= hi; ++i)
      CHECK(down[i] < 0.25 * cfg.spike_amp);
  }
}

TEST_CASE("adversarial_pair defeats fastdtw at radius 20") {
  const auto [a, b] = adversarial_pair(1024);
  const double exact = full_dtw(a, b).cost;
  const double approx = fastdtw(a, b, 20).cost;
  CHECK(exact > 0.0);
  CHECK(exact < approx / 1000.0);
}

TEST_CASE("load_ucr parses labels and samples") {
  const fs::path p = temp_file("basic.tsv");
  {
    std::ofstream out(p);
    out << "2\t0.1\t0.2\t0.3\n";
    out << "-1,4.5,6\n";
  }
  const Dataset ds = load_ucr(p);
  REQUIRE(ds.items.size() == 2);
  CHECK(ds.items[0].label == 2);
  CHECK(ds.items[0].series.samples() == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(ds.items[1].label == -1);
  CHECK(ds.items[1].series.samples() == std::vector<double>{4.5, 6});
  CHECK_FALSE(ds.uniform_length.has_value());
  fs::remove(p);
}

TEST_CASE("load_ucr error paths") {
  CHECK_THROWS_AS(load_ucr("/nonexistent/nowhere.tsv"), IoError);

  const fs::path p = temp_file("bad.tsv");
  {
    std::ofstream out(p);
    out << "1\t0.1\n1\t0.1\tNaN\n";
  }
  try {
    load_ucr(p);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  {
    std::ofstream out(p);
    out << "notalabel\t0.1\n";
  }
  CHECK_THROWS_AS(load_ucr(p), ParseError);
  {
    std::ofstream out(p);
    out << "3\n";
  }
  CHECK_THROWS_AS(load_ucr(p), ParseError);
  {
    std::ofstream out(p);  // truncate to empty
  }
  CHECK_THROWS_AS(load_ucr(p), EmptyFileError);
  fs::remove(p);
}

TEST_CASE("save_ucr round-trips exactly and deterministically") {
  std::mt19937_64 rng(31);
  Dataset ds;
  for (int i = 0; i < 20; ++i) {
    ds.items.push_back({i - 10, oracles::walk_series(rng, 1 + (i * 13) % 50)});
  }
  ds.items.push_back({std::nullopt, TimeSeries{1e-300, 12345.678901234567,
                                               -0.1, 3.0}});
  const fs::path p1 = temp_file("round1.tsv");
  const fs::path p2 = temp_file("round2.tsv");
  save_ucr(ds, p1);
  save_ucr(ds, p2);
  CHECK(slurp(p1) == slurp(p2));

  const Dataset back = load_ucr(p1);
  REQUIRE(back.items.size() == ds.items.size());
  for (std::size_t i = 0; i < ds.items.size(); ++i) {
    CHECK(back.items[i].label.value_or(0) == ds.items[i].label.value_or(0));
    CHECK(back.items[i].series.samples() == ds.items[i].series.samples());
  }
  const fs::path p3 = temp_file("round3.tsv");
  save_ucr(back, p3);
  CHECK(slurp(p1) == slurp(p3));
  fs::remove(p1);
  fs::remove(p2);
  fs::remove(p3);
}

TEST_CASE("load_ucr handles the UWave-sized layout") {
  const fs::path p = temp_file("uwave_shape.tsv");
  {
    std::ofstream out(p);
    char buf[32];
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int row = 0; row < 896; ++row) {
      out << (row % 8 + 1);
      for (int f = 0; f < 945; ++f) {
        std::snprintf(buf, sizeof buf, "%.3f", u(rng));
        out << '\t' << buf;
      }
      out << '\n';
    }
  }
  const Dataset ds = load_ucr(p);
  CHECK(ds.items.size() == 896);
  REQUIRE(ds.uniform_length.has_value());
  CHECK(*ds.uniform_length == 945);
  fs::remove(p);
}
