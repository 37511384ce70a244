#include "dtwbench/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <string>

namespace dtwbench {

double SplitMix64::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

TimeSeries random_walk(int n, Seed seed) {
  if (n < 1) throw std::invalid_argument("walk length must be >= 1");
  SplitMix64 rng(seed);
  std::vector<double> out(n);
  out[0] = 0.0;
  for (int t = 1; t < n; ++t) out[t] = out[t - 1] + rng.next_gaussian();
  return TimeSeries(std::move(out));
}

std::pair<TimeSeries, TimeSeries> fall_pair(double L_seconds, double rate_hz,
                                            Seed seed) {
  if (!(L_seconds > 0) || !(rate_hz > 0))
    throw std::invalid_argument("duration and rate must be positive");
  if (L_seconds * rate_hz < 10.0)
    throw TooShortError("fall pair needs L_seconds * rate_hz >= 10");
  const int n = static_cast<int>(std::llround(L_seconds * rate_hz));
  const int burst =
      std::max(1, static_cast<int>(std::llround(
                      std::min(1.0, L_seconds / 4.0) * rate_hz)));

  SplitMix64 rng(seed);
  std::vector<double> a(n), b(n);
  for (int t = 0; t < n; ++t) a[t] = 0.01 * rng.next_gaussian();
  for (int t = 0; t < n; ++t) b[t] = 0.01 * rng.next_gaussian();
  for (int t = 0; t < burst; ++t) {
    const double s = std::sin(std::numbers::pi * (t + 0.5) / burst);
    a[t] += s;
    b[n - burst + t] += s;
  }
  return {TimeSeries(std::move(a)), TimeSeries(std::move(b))};
}

namespace {

void add_bump(std::vector<double>& s, int start, int width, double amp) {
  for (int t = 0; t < width; ++t)
    s[start + t] += amp * std::sin(std::numbers::pi * (t + 0.5) / width);
}

void add_spike(std::vector<double>& s, int center, double amp,
               double shoulder) {
  s[center - 1] += shoulder * amp;
  s[center] += amp;
  s[center + 1] += shoulder * amp;
}

}  // namespace

std::pair<TimeSeries, TimeSeries> adversarial_pair(
    int n, const AdversarialConfig& config) {
  if (n < 256)
    throw TooShortError("adversarial pair needs n >= 256");
  const int bump_width = static_cast<int>(n * config.bump_width_frac);

  std::vector<double> a(n, 0.0), b(n, 0.0);
  // Series A: spike early, bump centered mid-right.
  // Series B: the spike moves right while the bump moves left, far enough
  // that the spike ends up on the other side of the bump. Spike centers sit
  // at 4 (mod 8) so halving-by-averaging cancels the zero-mean wavelet
  // exactly down to an eighth of the original rate.
  add_spike(a, n / 8 + 4, config.spike_amp, config.spike_shoulder);
  add_bump(a, n / 4, bump_width, config.bump_amp);
  add_spike(b, n * 13 / 16 + 4, config.spike_amp, config.spike_shoulder);
  add_bump(b, n / 8, bump_width, config.bump_amp);
  return {TimeSeries(std::move(a)), TimeSeries(std::move(b))};
}

TimeSeries adversarial_reference(int n, Seed seed,
                                 const AdversarialConfig& config) {
  if (n < 1) throw std::invalid_argument("length must be >= 1");
  SplitMix64 rng(seed);
  std::vector<double> out(n);
  for (int t = 0; t < n; ++t)
    out[t] = config.reference_level + config.reference_noise_sd * rng.next_gaussian();
  return TimeSeries(std::move(out));
}

// ---------------------------------------------------------------------------
// UCR text I/O

namespace {

bool parse_long(const std::string& token, long& out) {
  if (token.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(token.c_str(), &end, 10);
  if (errno != 0 || end != token.c_str() + token.size()) return false;
  out = v;
  return true;
}

bool parse_double(const std::string& token, double& out) {
  if (token.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) return false;
  out = v;
  return true;
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

}  // namespace

Dataset load_ucr(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) throw ParseError(line_no, "empty record");

    const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
    const std::vector<std::string> fields = split(line, delim);
    if (fields.size() < 2)
      throw ParseError(line_no, "record needs a label and at least one sample");

    long label = 0;
    if (!parse_long(fields[0], label))
      throw ParseError(line_no, "bad class label '" + fields[0] + "'");

    std::vector<double> samples;
    samples.reserve(fields.size() - 1);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      double v = 0.0;
      if (!parse_double(fields[f], v))
        throw ParseError(line_no, "bad sample '" + fields[f] + "'");
      if (!std::isfinite(v))
        throw ParseError(line_no, "non-finite sample '" + fields[f] + "'");
      samples.push_back(v);
    }
    ds.items.push_back({label, TimeSeries(std::move(samples))});
  }
  if (in.bad()) throw IoError("read failure on " + path.string());
  if (ds.items.empty()) throw EmptyFileError(path.string());

  const std::size_t len = ds.items.front().series.size();
  bool uniform = true;
  for (const auto& item : ds.items)
    if (item.series.size() != len) uniform = false;
  if (uniform) ds.uniform_length = len;
  return ds;
}

void save_ucr(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  char buf[64];
  for (const auto& item : dataset.items) {
    std::snprintf(buf, sizeof buf, "%ld", item.label.value_or(0));
    out << buf;
    for (double v : item.series.samples()) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << '\t' << buf;
    }
    out << '\n';
  }
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace dtwbench
