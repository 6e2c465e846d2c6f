#pragma once

#include <functional>
#include <span>

namespace dctpa::stats {

struct KsResult {
    double statistic = 0.0;  // D
    double p_value = 1.0;
};

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^(j-1) exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

/// One-sample test of `samples` against a continuous CDF.
KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample test.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Critical D for a one-sample test at significance alpha (asymptotic).
double ks_critical(std::size_t n, double alpha);

double mean(std::span<const double> x);
/// Sample standard deviation (n - 1).
double stddev(std::span<const double> x);

}  // namespace dctpa::stats
