#pragma once

#include <algorithm>
#include <cmath>

namespace cyclew {

template <typename Cdf>
double ks_one_sample(std::vector<double> sample, Cdf&& cdf) {
  if (sample.empty()) {
    return 0.0;
  }
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sample.size()) {
    // Ties jump the empirical CDF by their total multiplicity at once.
    std::size_t j = i;
    while (j < sample.size() && sample[j] == sample[i]) {
      ++j;
    }
    const double f = cdf(sample[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n),
                  std::abs(static_cast<double>(j) / n - f)});
    i = j;
  }
  return d;
}

}  // namespace cyclew
