// specfun.hpp - Bessel functions of the first kind, integer order.
//
// J_n(x) for n >= 0 and x >= 0, the large-argument cosine asymptotics,
// a rigorous series-truncation rule, and the zeros of J_0.

#pragma once

#include <cstddef>
#include <vector>

namespace dtls::specfun {

/// Largest order accepted by bessel_j.
inline constexpr int kMaxOrder = 1000;

/// J_n(x). Throws std::domain_error for n < 0, n > kMaxOrder, x < 0 or
/// non-finite x.
double bessel_j(int n, double x);

/// J_0(x) ... J_{n_max}(x) from a single downward recurrence pass.
/// Same domain as bessel_j except that n_max may exceed kMaxOrder.
std::vector<double> bessel_j_sequence(int n_max, double x);

/// sqrt(2/(pi x)) cos(x - n pi/2 - pi/4). Meaningful for n well below x.
/// Throws std::domain_error for x < 1.
double bessel_j_asymptotic(int n, double x);

/// First `count` positive zeros of J_0, ascending. 1 <= count <= 100.
std::vector<double> j0_zeros(int count);

/// Smallest N >= ceil(x) such that |J_n(x)| < tol for every n > N, based on
/// the bound |J_n(x)| <= (x/2)^n / n!. Requires tol in [1e-15, 1).
int truncation_order(double x, double tol);

}  // namespace dtls::specfun
