#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lpomega {

double mean(std::span<const double> v);
double variance(std::span<const double> v);  // unbiased, n-1
double median(std::vector<double> v);        // by value: scratch copy
double quantile(std::vector<double> v, double q);  // linear interpolation

/// One-sample Kolmogorov-Smirnov statistic against a CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_q(double lambda);

/// Asymptotic p-value for the two-sample statistic with sample sizes n, m.
double ks_two_sample_pvalue(double d, std::size_t n, std::size_t m);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Wigner semicircle CDF on [-1, 1] (density (2/pi) sqrt(1-x^2)).
double semicircle_cdf(double x);

/// Run fn(0..n-1) on a small worker pool. Results must be written to
/// per-index slots; aggregation after the join is then independent of the
/// worker count. threads <= 0 picks hardware concurrency.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace lpomega
