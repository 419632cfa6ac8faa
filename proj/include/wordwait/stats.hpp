#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wordwait {

struct SampleMoments {
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;   // sample standard deviation
  double sem = 0.0;  // sd / sqrt(count)
};

SampleMoments moments(std::span<const double> values);

/// Kolmogorov-Smirnov distance between the empirical law of `samples` and
/// an exponential with the given mean. Ties are handled by comparing the
/// exponential CDF with the empirical CDF on both sides of each jump.
double ks_exponential(std::span<const double> samples, double mean);

double poisson_pmf(int k, double lambda);

/// Total variation distance between a pmf on 0..n-1 and Poisson(lambda);
/// Poisson mass beyond n-1 counts in full.
double tv_to_poisson(std::span<const double> pmf, double lambda);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = intercept + slope x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct HistogramBin {
  std::uint64_t start = 0;
  std::uint64_t count = 0;
};

/// Bins [start, start + width) from 0 up to the largest sample; nothing is
/// emitted past the last occupied bin.
std::vector<HistogramBin> make_histogram(std::span<const std::uint64_t> samples,
                                         std::uint64_t width);

}  // namespace wordwait
