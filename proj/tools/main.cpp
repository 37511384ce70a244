#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dtwbench/bench.hpp"
#include "dtwbench/cluster.hpp"
#include "dtwbench/datagen.hpp"
#include "dtwbench/dtw.hpp"
#include "dtwbench/fastdtw.hpp"
#include "dtwbench/nn.hpp"
#include "dtwbench/svg_plot.hpp"
#include "dtwbench/types.hpp"

namespace {

using namespace dtwbench;

// An input is either a UCR-format file (a --row selects the record) or an
// inline generator spec "walk:<n>:<seed>".
TimeSeries resolve_series(const std::string& spec, int row) {
  if (spec.rfind("walk:", 0) == 0) {
    std::istringstream in(spec.substr(5));
    long n = 0;
    unsigned long long seed = 0;
    char c1 = 0;
    if (!(in >> n >> c1 >> seed) || c1 != ':' || !in.eof() || n < 1)
      throw std::invalid_argument("bad generator spec '" + spec +
                                  "', expected walk:<n>:<seed>");
    return random_walk(static_cast<int>(n), Seed{seed});
  }
  Dataset ds = load_ucr(spec);
  if (row < 0 || row >= static_cast<int>(ds.items.size()))
    throw std::invalid_argument("row " + std::to_string(row) +
                                " out of range for " + spec);
  return ds.items[static_cast<std::size_t>(row)].series;
}

AlgoSpec make_algo(const std::string& name, const CLI::Option* w_opt, double w,
                   const CLI::Option* r_opt, int r) {
  if (name == "cdtw") {
    if (!*w_opt)
      throw std::invalid_argument("--algo cdtw requires --w");
    return AlgoSpec::cdtw_spec(w);
  }
  if (name == "fastdtw") {
    if (!*r_opt)
      throw std::invalid_argument("--algo fastdtw requires --r");
    return AlgoSpec::fastdtw_spec(r);
  }
  if (name == "full") return AlgoSpec::full_dtw_spec();
  if (name == "euclid") return AlgoSpec::euclidean_spec();
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("write failure on " + path);
}

std::string node_name(int id, int leaves) {
  return id < leaves ? "s" + std::to_string(id) : "c" + std::to_string(id);
}

void print_report(const CaseReport& report) {
  std::printf("case %s  seed=%llu  W=%g  (%s)\n", report.case_id.c_str(),
              static_cast<unsigned long long>(report.seed),
              report.natural_warping, report.hardware_note.c_str());
  std::printf("%-10s %-10s %8s %12s %6s %14s %14s\n", "algo", "param", "n",
              "comparisons", "reps", "mean_ns", "min_ns");
  for (const CaseRow& row : report.rows) {
    std::printf("%-10s %-10g %8d %12lld %6d %14.0f %14.0f\n",
                algo_kind_name(row.algo.kind).c_str(), row.algo.param, row.n,
                static_cast<long long>(row.comparisons), row.stats.reps,
                row.stats.mean_ns, row.stats.min_ns);
  }
}

int run(int argc, char** argv) {
  CLI::App app{
      "dtwbench: exact constrained DTW, FastDTW, and the benchmark suite "
      "comparing them"};
  app.require_subcommand(1);

  // --- dist ------------------------------------------------------------
  auto* dist = app.add_subcommand(
      "dist", "Distance between two series (files or walk:<n>:<seed> specs)");
  std::string dist_a, dist_b, dist_algo = "full";
  double dist_w = 1.0;
  int dist_r = 0, dist_row_a = 0, dist_row_b = 0;
  bool dist_path = false, dist_sqrt = false;
  dist->add_option("a", dist_a, "first input")->required();
  dist->add_option("b", dist_b, "second input")->required();
  dist->add_option("--algo", dist_algo, "cdtw|fastdtw|full|euclid")
      ->check(CLI::IsMember({"cdtw", "fastdtw", "full", "euclid"}));
  auto* dist_w_opt =
      dist->add_option("--w", dist_w, "band fraction in [0,1] for cdtw");
  auto* dist_r_opt = dist->add_option("--r", dist_r, "radius for fastdtw");
  dist->add_option("--row-a", dist_row_a, "record index in the first file");
  dist->add_option("--row-b", dist_row_b, "record index in the second file");
  dist->add_flag("--path", dist_path, "also print the warping path");
  dist->add_flag("--sqrt", dist_sqrt,
                 "display sqrt of the accumulated cost (display only)");

  // --- bench -----------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Run one of the benchmark cases");
  std::string bench_case, bench_scale = "desk", bench_out;
  std::uint64_t bench_seed = 42;
  int bench_reps = 0, bench_k = 0, bench_n = 0;
  bench->add_option("--case", bench_case, "a|b|c|d|micro")
      ->required()
      ->check(CLI::IsMember({"a", "b", "c", "d", "micro"}));
  bench->add_option("--scale", bench_scale, "desk|full")
      ->check(CLI::IsMember({"desk", "full"}));
  bench->add_option("--out", bench_out, "CSV output path");
  bench->add_option("--seed", bench_seed, "PRNG seed");
  bench->add_option("--reps", bench_reps, "override measurement repetitions");
  bench->add_option("--k", bench_k, "override dataset size (cases a, c)");
  bench->add_option("--n", bench_n, "override series length (cases a, b, c)");

  // --- gen -------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Write generated series in UCR format");
  std::string gen_kind, gen_out;
  int gen_n = 1024, gen_count = 1;
  double gen_L = 2.0, gen_rate = 100.0;
  std::uint64_t gen_seed = 42;
  gen->add_option("--kind", gen_kind, "walk|fallpair|adversarial")
      ->required()
      ->check(CLI::IsMember({"walk", "fallpair", "adversarial"}));
  gen->add_option("--n", gen_n, "series length (walk, adversarial)");
  gen->add_option("--count", gen_count, "number of walks");
  gen->add_option("--L", gen_L, "fall-pair duration in seconds");
  gen->add_option("--rate", gen_rate, "fall-pair sample rate in Hz");
  gen->add_option("--seed", gen_seed, "PRNG seed");
  gen->add_option("--out", gen_out, "output path")->required();

  // --- nn ----------------------------------------------------------------
  auto* nn = app.add_subcommand(
      "nn", "Banded-DTW nearest neighbor of a query within a dataset");
  std::string nn_query, nn_in;
  double nn_w = 0.05;
  int nn_row = 0;
  bool nn_lb = false, nn_ea = false, nn_znorm = false;
  nn->add_option("--query", nn_query, "query input (file or walk spec)")
      ->required();
  nn->add_option("--in", nn_in, "candidate dataset")->required();
  nn->add_option("--w", nn_w, "band fraction in [0,1]");
  nn->add_option("--row", nn_row, "record index within the query file");
  nn->add_flag("--lb", nn_lb, "prune with the LB_Keogh lower bound");
  nn->add_flag("--ea", nn_ea, "early-abandon DP rows against the best cost");
  nn->add_flag("--znorm", nn_znorm, "z-normalize query and candidates");

  // --- cluster ---------------------------------------------------------
  auto* cluster = app.add_subcommand(
      "cluster", "Single-linkage clustering of a UCR-format dataset");
  std::string cl_in, cl_algo = "full", cl_newick;
  double cl_w = 1.0;
  int cl_r = 0;
  cluster->add_option("--in", cl_in, "input dataset")->required();
  cluster->add_option("--algo", cl_algo, "cdtw|fastdtw|full|euclid")
      ->check(CLI::IsMember({"cdtw", "fastdtw", "full", "euclid"}));
  auto* cl_w_opt = cluster->add_option("--w", cl_w, "band fraction for cdtw");
  auto* cl_r_opt = cluster->add_option("--r", cl_r, "radius for fastdtw");
  cluster->add_option("--newick", cl_newick, "write the newick text here");

  // --- plot ------------------------------------------------------------
  auto* plot = app.add_subcommand("plot", "Render a benchmark CSV as SVG");
  std::string plot_in, plot_out;
  plot->add_option("--in", plot_in, "benchmark CSV")->required();
  plot->add_option("--out", plot_out, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*dist) {
      const TimeSeries a = resolve_series(dist_a, dist_row_a);
      const TimeSeries b = resolve_series(dist_b, dist_row_b);
      const AlgoSpec algo =
          make_algo(dist_algo, dist_w_opt, dist_w, dist_r_opt, dist_r);
      DtwResult res;
      switch (algo.kind) {
        case AlgoKind::cdtw:
          res = cdtw(a, b, BandSpec(algo.param), dist_path);
          break;
        case AlgoKind::fastdtw:
          res = fastdtw(a, b, static_cast<int>(algo.param), dist_path);
          break;
        case AlgoKind::full_dtw:
          res = full_dtw(a, b, dist_path);
          break;
        case AlgoKind::euclidean:
          res.cost = euclidean_sq(a, b);
          break;
      }
      const double shown = dist_sqrt ? std::sqrt(res.cost) : res.cost;
      std::printf("%.6f\n", shown);
      if (dist_path && res.path) {
        for (const PathPoint& p : *res.path) std::printf("%d %d\n", p.i, p.j);
      }
      return 0;
    }

    if (*bench) {
      const bool full = bench_scale == "full";
      if (bench_case == "a") {
        CaseAConfig cfg;
        cfg.k = full ? 896 : 100;
        cfg.seed = bench_seed;
        if (bench_k) cfg.k = bench_k;
        if (bench_n) cfg.n = bench_n;
        const CaseReport report = run_case_a(std::nullopt, cfg);
        print_report(report);
        if (!bench_out.empty()) write_report_csv(report, bench_out);
      } else if (bench_case == "b") {
        CaseBConfig cfg;
        cfg.reps = full ? 1000 : 100;
        cfg.seed = bench_seed;
        if (bench_reps) cfg.reps = bench_reps;
        if (bench_n) cfg.n = bench_n;
        const CaseReport report = run_case_b(cfg);
        print_report(report);
        if (!bench_out.empty()) write_report_csv(report, bench_out);
      } else if (bench_case == "c") {
        CaseCConfig cfg;
        cfg.k = full ? 1000 : 50;
        cfg.seed = bench_seed;
        if (bench_k) cfg.k = bench_k;
        if (bench_n) cfg.n = bench_n;
        const CaseReport report = run_case_c(cfg);
        print_report(report);
        if (!bench_out.empty()) write_report_csv(report, bench_out);
      } else if (bench_case == "d") {
        CaseDConfig cfg;
        cfg.reps = full ? 1000 : 100;
        cfg.seed = bench_seed;
        if (bench_reps) cfg.reps = bench_reps;
        const CrossoverReport report = run_case_d(cfg);
        std::printf("case D  seed=%llu  reps=%d\n",
                    static_cast<unsigned long long>(report.seed), report.reps);
        std::printf("%10s %8s %16s %16s\n", "L_seconds", "n", "cdtw100_ns",
                    "fastdtw40_ns");
        for (const CrossoverPoint& p : report.sweep)
          std::printf("%10g %8d %16.0f %16.0f\n", p.L_seconds, p.n,
                      p.cdtw100_mean_ns, p.fastdtw40_mean_ns);
        if (report.crossover_L) {
          const int cn = static_cast<int>(
              std::llround(*report.crossover_L * cfg.rate_hz));
          std::printf("crossover_L=%g\ncrossover_N=%d\n", *report.crossover_L,
                      cn);
        } else {
          std::printf("crossover_L=none\ncrossover_N=none\n");
        }
        if (!bench_out.empty()) write_report_csv(report, bench_out);
      } else {  // micro
        const int reps = bench_reps ? bench_reps : 1000;
        const CaseReport report = run_micro_128(reps, bench_seed);
        print_report(report);
        for (const CaseRow& row : report.rows) {
          std::printf(
              "extrapolation: 1e12 comparisons with %s at %.4f ms each = "
              "%.1f years\n",
              algo_kind_name(row.algo.kind).c_str(), row.stats.mean_ns / 1e6,
              extrapolated_years(row.stats.mean_ns, 1e12));
        }
        if (!bench_out.empty()) write_report_csv(report, bench_out);
      }
      return 0;
    }

    if (*gen) {
      Dataset ds;
      if (gen_kind == "walk") {
        if (gen_count < 1)
          throw std::invalid_argument("--count must be >= 1");
        for (int i = 0; i < gen_count; ++i)
          ds.items.push_back(
              {0, random_walk(gen_n, Seed{gen_seed +
                                          static_cast<std::uint64_t>(i)})});
      } else if (gen_kind == "fallpair") {
        auto [a, b] = fall_pair(gen_L, gen_rate, Seed{gen_seed});
        ds.items.push_back({0, std::move(a)});
        ds.items.push_back({0, std::move(b)});
      } else {
        auto [a, b] = adversarial_pair(gen_n);
        ds.items.push_back({0, std::move(a)});
        ds.items.push_back({0, std::move(b)});
        ds.items.push_back({0, adversarial_reference(gen_n, Seed{gen_seed})});
      }
      save_ucr(ds, gen_out);
      return 0;
    }

    if (*nn) {
      const TimeSeries query = resolve_series(nn_query, nn_row);
      const Dataset ds = load_ucr(nn_in);
      std::vector<TimeSeries> candidates;
      for (const auto& item : ds.items) candidates.push_back(item.series);
      const NnResult r = nn_search(query, candidates, BandSpec(nn_w),
                                   {nn_lb, nn_ea, nn_znorm});
      std::printf("index=%zu cost=%.6f cells=%llu\n", r.index, r.cost,
                  static_cast<unsigned long long>(r.cells_evaluated));
      return 0;
    }

    if (*cluster) {
      const Dataset ds = load_ucr(cl_in);
      if (ds.items.size() < 2)
        throw std::invalid_argument("clustering needs at least two series");
      std::vector<TimeSeries> series;
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < ds.items.size(); ++i) {
        series.push_back(ds.items[i].series);
        labels.push_back("s" + std::to_string(i));
      }
      const AlgoSpec algo = make_algo(cl_algo, cl_w_opt, cl_w, cl_r_opt, cl_r);
      const DistanceMatrix dm = distance_matrix(series, algo);
      const Dendrogram tree = single_linkage(dm, labels);
      const int leaves = static_cast<int>(series.size());
      for (std::size_t t = 0; t < tree.merges.size(); ++t) {
        const Merge& m = tree.merges[t];
        std::printf("merge %s + %s -> %s height=%.17g\n",
                    node_name(m.a, leaves).c_str(),
                    node_name(m.b, leaves).c_str(),
                    node_name(leaves + static_cast<int>(t), leaves).c_str(),
                    m.height);
      }
      const std::string newick = to_newick(tree);
      std::printf("%s\n", newick.c_str());
      if (!cl_newick.empty()) write_file(cl_newick, newick + "\n");
      return 0;
    }

    if (*plot) {
      const std::string csv = read_file(plot_in);
      write_file(plot_out, render_csv_plot(csv));
      return 0;
    }
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
