#include "wordwait/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wordwait {

SampleMoments moments(std::span<const double> values) {
  SampleMoments m;
  m.count = values.size();
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(m.count);
  if (m.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.sd = std::sqrt(ss / static_cast<double>(m.count - 1));
    m.sem = m.sd / std::sqrt(static_cast<double>(m.count));
  }
  return m;
}

double ks_exponential(std::span<const double> samples, double mean) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  if (!(mean > 0.0)) throw std::invalid_argument("exponential mean must be positive");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double cdf = 1.0 - std::exp(-sorted[i] / mean);
    d = std::max({d, std::abs(static_cast<double>(i) / n - cdf),
                  std::abs(static_cast<double>(j) / n - cdf)});
    i = j;
  }
  return d;
}

double poisson_pmf(int k, double lambda) {
  if (k < 0) return 0.0;
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

double tv_to_poisson(std::span<const double> pmf, double lambda) {
  double diff = 0.0;
  double covered = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double p = poisson_pmf(static_cast<int>(k), lambda);
    covered += p;
    diff += std::abs(pmf[k] - p);
  }
  diff += std::max(0.0, 1.0 - covered);
  return 0.5 * diff;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("need at least two paired points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

std::vector<HistogramBin> make_histogram(std::span<const std::uint64_t> samples,
                                         std::uint64_t width) {
  if (width == 0) throw std::invalid_argument("bin width must be positive");
  std::vector<HistogramBin> bins;
  for (std::uint64_t s : samples) {
    const std::size_t idx = s / width;
    if (idx >= bins.size()) {
      const std::size_t old = bins.size();
      bins.resize(idx + 1);
      for (std::size_t b = old; b < bins.size(); ++b) bins[b].start = b * width;
    }
    ++bins[idx].count;
  }
  return bins;
}

}  // namespace wordwait
