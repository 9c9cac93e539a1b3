#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace mmconc::stats {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of the Beta(a, b) law at x.
double beta_cdf(double x, double a, double b);

struct KsResult {
  double statistic;  // sup |F_n - F|
  double threshold;  // asymptotic critical value at the requested level
  double level;
  std::size_t n;
  bool pass;         // statistic <= threshold
};

/// One-sample Kolmogorov-Smirnov test of `samples` against the continuous
/// CDF `cdf`, at significance `level` (asymptotic two-sided critical value
/// sqrt(-ln(level/2) / 2) / sqrt(n)).
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf,
                 double level);

double ks_critical(double level, std::size_t n);

double mean(const std::vector<double>& v);
/// Unbiased sample standard deviation.
double sample_stddev(const std::vector<double>& v);
/// Standard error of the mean.
double standard_error(const std::vector<double>& v);

} // namespace mmconc::stats
