// specfun.cpp - Bessel J_n kernels.

#include "dtls/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dtls::specfun {

namespace {

void check_argument(double x) {
  if (!std::isfinite(x)) throw std::domain_error("bessel: non-finite argument");
  if (x < 0.0) throw std::domain_error("bessel: negative argument " + std::to_string(x));
}

// Smallest N such that (x/2)^n / n! < tol for all n > N, N >= ceil(x).
int bound_order(double x, double tol) {
  if (x == 0.0) return 0;
  const double log_half_x = std::log(0.5 * x);
  const double log_tol = std::log(tol);
  int n = static_cast<int>(std::ceil(x));
  // Past n >= x/2 the bound decreases monotonically, so checking n+1 suffices.
  while ((n + 1) * log_half_x - std::lgamma(n + 2.0) >= log_tol) ++n;
  return n;
}

// Ascending series. Only used where the terms decrease from the first one,
// i.e. x^2/4 <= n + 1, so there is no cancellation.
double series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;
  const double q = -half * half;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * (k + n));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

bool series_is_stable(int n, double x) { return 0.25 * x * x <= n + 1.0; }

// Miller's downward recurrence normalised with J_0 + 2 sum J_{2k} = 1.
std::vector<double> miller(int n_max, double x) {
  constexpr double kBig = 1e250;
  constexpr double kRescale = 1e-250;

  int start = std::max(n_max + 16, bound_order(x, 1e-30) + 8);
  if (start % 2 != 0) ++start;

  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  double upper = 0.0;    // j_{k+1}
  double current = 1.0;  // j_k, k = start
  double norm = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k <= n_max) out[static_cast<std::size_t>(k)] = current;
    if (k % 2 == 0) norm += (k == 0 ? 1.0 : 2.0) * current;
    if (k == 0) break;
    const double lower = (2.0 * k / x) * current - upper;
    upper = current;
    current = lower;
    if (std::abs(current) > kBig) {
      current *= kRescale;
      upper *= kRescale;
      norm *= kRescale;
      for (int i = k; i <= n_max; ++i) out[static_cast<std::size_t>(i)] *= kRescale;
    }
  }
  for (double& v : out) v /= norm;
  return out;
}

}  // namespace

double bessel_j(int n, double x) {
  if (n < 0 || n > kMaxOrder) throw std::domain_error("bessel_j: order out of range: " + std::to_string(n));
  check_argument(x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (series_is_stable(n, x)) return series(n, x);
  return miller(n, x)[static_cast<std::size_t>(n)];
}

std::vector<double> bessel_j_sequence(int n_max, double x) {
  if (n_max < 0) throw std::domain_error("bessel_j_sequence: negative order");
  check_argument(x);
  if (x == 0.0) {
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  return miller(n_max, x);
}

double bessel_j_asymptotic(int n, double x) {
  if (!std::isfinite(x) || x < 1.0) throw std::domain_error("bessel_j_asymptotic: requires x >= 1");
  using std::numbers::pi;
  return std::sqrt(2.0 / (pi * x)) * std::cos(x - 0.5 * n * pi - 0.25 * pi);
}

std::vector<double> j0_zeros(int count) {
  if (count < 1 || count > 100) throw std::domain_error("j0_zeros: count must be in [1, 100]");
  constexpr double kScanStep = 0.5;
  constexpr double kWidth = 1e-12;

  std::vector<double> zeros;
  zeros.reserve(static_cast<std::size_t>(count));
  double a = 2.0;
  double fa = bessel_j(0, a);
  while (static_cast<int>(zeros.size()) < count) {
    double b = a + kScanStep;
    double fb = bessel_j(0, b);
    if (std::signbit(fa) != std::signbit(fb)) {
      double lo = a, hi = b, flo = fa;
      while (hi - lo > kWidth) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = bessel_j(0, mid);
        if (fmid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(fmid) == std::signbit(flo)) {
          lo = mid;
          flo = fmid;
        } else {
          hi = mid;
        }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

int truncation_order(double x, double tol) {
  check_argument(x);
  if (!(tol >= 1e-15 && tol < 1.0)) throw std::domain_error("truncation_order: tol must be in [1e-15, 1)");
  return bound_order(x, tol);
}

}  // namespace dtls::specfun
