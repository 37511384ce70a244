#ifndef DTWBENCH_TYPES_HPP
#define DTWBENCH_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dtwbench {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class UnequalLengthsError : public Error {
public:
  UnequalLengthsError(std::size_t n, std::size_t m)
      : Error("series lengths differ: " + std::to_string(n) + " vs " +
              std::to_string(m)) {}
};

class InvalidPathError : public Error {
public:
  explicit InvalidPathError(const std::string& msg)
      : Error("invalid warping path: " + msg) {}
};

class InvalidWindowError : public Error {
public:
  explicit InvalidWindowError(const std::string& msg)
      : Error("invalid search window: " + msg) {}
};

class TooShortError : public Error {
public:
  explicit TooShortError(const std::string& msg)
      : Error("input too short: " + msg) {}
};

class NegativeInputError : public Error {
public:
  explicit NegativeInputError(const std::string& msg)
      : Error("negative input: " + msg) {}
};

class EmptyCandidatesError : public Error {
public:
  EmptyCandidatesError() : Error("candidate list is empty") {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& msg) : Error("i/o error: " + msg) {}
};

class EmptyFileError : public Error {
public:
  explicit EmptyFileError(const std::string& path)
      : Error("file has no records: " + path) {}
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& msg)
      : Error("parse error at line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// ---------------------------------------------------------------------------
// TimeSeries: finite real-valued samples, length >= 1.

class TimeSeries {
public:
  explicit TimeSeries(std::vector<double> samples)
      : samples_(std::move(samples)) {
    if (samples_.empty())
      throw std::invalid_argument("time series must have at least one sample");
    for (double v : samples_) {
      if (!std::isfinite(v))
        throw std::invalid_argument("time series sample is not finite");
    }
  }

  TimeSeries(std::initializer_list<double> samples)
      : TimeSeries(std::vector<double>(samples)) {}

  const std::vector<double>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }

  const double* data() const { return samples_.data(); }

  bool operator==(const TimeSeries& other) const {
    return samples_ == other.samples_;
  }

private:
  std::vector<double> samples_;
};

// ---------------------------------------------------------------------------
// BandSpec: warping constraint as a fraction of series length.

class BandSpec {
public:
  explicit BandSpec(double fraction) : fraction_(fraction) {
    if (!(fraction >= 0.0 && fraction <= 1.0))
      throw std::invalid_argument("band fraction out of range [0, 1]");
  }

  double fraction() const { return fraction_; }

private:
  double fraction_;
};

// Number of cells the path may deviate from the diagonal for a series of
// length n. Rounding is half-away-from-zero; the result is clamped to
// [0, n-1] so fraction 1 always means full freedom.
int band_cells(const BandSpec& band, int n);

// ---------------------------------------------------------------------------
// DtwResult: accumulated squared-difference cost plus optional path.
// Path points are 1-based; a valid path runs (1,1) .. (N,M) with every step
// incrementing i, j, or both by exactly 1.

struct PathPoint {
  int i;
  int j;
  bool operator==(const PathPoint& o) const { return i == o.i && j == o.j; }
};

using WarpPath = std::vector<PathPoint>;

struct DtwResult {
  double cost = 0.0;
  std::optional<WarpPath> path;
};

}  // namespace dtwbench

#endif  // DTWBENCH_TYPES_HPP
