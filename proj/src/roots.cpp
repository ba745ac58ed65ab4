#include "ptdomain/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ptdomain/errors.hpp"

namespace ptdomain {

namespace {

constexpr long double kEps = std::numeric_limits<long double>::epsilon();
constexpr long double kTol = 64.0L * kEps;

// Newton steps on a monic polynomial (high-to-low coefficients without the
// leading 1), accepting a step only if the residual shrinks.
long double polish(long double x, std::span<const long double> tail) {
  auto eval = [&](long double t, long double& deriv) {
    long double value = 1.0L;
    deriv = 0.0L;
    for (long double c : tail) {
      deriv = deriv * t + value;
      value = value * t + c;
    }
    return value;
  };
  long double deriv = 0.0L;
  long double fx = eval(x, deriv);
  for (int iter = 0; iter < 8 && fx != 0.0L; ++iter) {
    if (deriv == 0.0L) break;
    const long double candidate = x - fx / deriv;
    long double cd = 0.0L;
    const long double fc = eval(candidate, cd);
    if (!(std::abs(fc) < std::abs(fx))) break;
    x = candidate;
    fx = fc;
    deriv = cd;
  }
  return x;
}

}  // namespace

std::vector<long double> solve_quadratic_real(long double p1, long double p0) {
  const long double half = 0.5L * p1;
  const long double disc = half * half - p0;
  const long double scale = half * half + std::abs(p0);
  if (disc < -kTol * scale) return {};
  if (disc <= kTol * scale) return {-half, -half};
  const long double root = std::sqrt(disc);
  const long double big = half >= 0 ? -(half + root) : -(half - root);
  std::vector<long double> out;
  if (big == 0.0L) {
    out = {-root, root};
  } else {
    out = {big, p0 / big};
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long double> solve_cubic_real(long double p2, long double p1, long double p0) {
  const long double shift = p2 / 3.0L;
  const long double p = p1 - p2 * shift;
  const long double q = 2.0L * shift * shift * shift - shift * p1 + p0;
  const long double half_q = 0.5L * q;
  const long double third_p = p / 3.0L;
  const long double disc = half_q * half_q + third_p * third_p * third_p;
  const long double scale = half_q * half_q + std::abs(third_p * third_p * third_p);

  std::vector<long double> out;
  if (scale == 0.0L) {
    out = {-shift, -shift, -shift};
  } else if (disc > kTol * scale) {
    const long double root = std::sqrt(disc);
    const long double u = std::cbrt(half_q >= 0 ? -(half_q + root) : -(half_q - root));
    const long double v = u == 0.0L ? 0.0L : -third_p / u;
    out = {u + v - shift};
  } else {
    const long double r = std::sqrt(std::max(-third_p, 0.0L));
    if (r == 0.0L) {
      out = {-shift, -shift, -shift};
    } else {
      const long double cos_arg = std::clamp(-half_q / (r * r * r), -1.0L, 1.0L);
      const long double phi = std::acos(cos_arg);
      constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
      for (int k = 0; k < 3; ++k) {
        out.push_back(2.0L * r * std::cos((phi + two_pi * k) / 3.0L) - shift);
      }
    }
  }
  const long double tail[] = {p2, p1, p0};
  for (auto& x : out) x = polish(x, tail);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long double> solve_quartic_real(long double p3, long double p2, long double p1,
                                            long double p0) {
  const long double shift = p3 / 4.0L;
  const long double s2 = shift * shift;
  const long double p = p2 - 6.0L * s2;
  const long double q = p1 - 2.0L * p2 * shift + 8.0L * s2 * shift;
  const long double r = p0 - p1 * shift + p2 * s2 - 3.0L * s2 * s2;

  std::vector<long double> ys;
  const long double q_scale = std::abs(p) * std::sqrt(std::abs(p)) + std::pow(std::abs(r), 0.75L);
  if (std::abs(q) <= kTol * q_scale || q == 0.0L) {
    for (long double z : solve_quadratic_real(p, r)) {
      if (z < 0.0L && z >= -kTol * (std::abs(p) + std::sqrt(std::abs(r)))) z = 0.0L;
      if (z < 0.0L) continue;
      const long double y = std::sqrt(z);
      ys.push_back(-y);
      ys.push_back(y);
    }
  } else {
    const auto resolvent = solve_cubic_real(p, 0.25L * p * p - r, -0.125L * q * q);
    const long double m = resolvent.back();
    if (m <= 0.0L) {
      throw InternalInconsistency("quartic resolvent has no positive root");
    }
    const long double s = std::sqrt(2.0L * m);
    const long double base = 0.5L * p + m;
    const long double offset = q / (2.0L * s);
    for (long double y : solve_quadratic_real(-s, base + offset)) ys.push_back(y);
    for (long double y : solve_quadratic_real(s, base - offset)) ys.push_back(y);
  }
  const long double tail[] = {p3, p2, p1, p0};
  std::vector<long double> out;
  for (long double y : ys) out.push_back(polish(y - shift, tail));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::complex<long double>> polynomial_roots(std::span<const long double> coefficients) {
  using Complex = std::complex<long double>;
  std::size_t size = coefficients.size();
  while (size > 0 && coefficients[size - 1] == 0.0L) --size;
  if (size <= 1) return {};
  const int degree = static_cast<int>(size) - 1;
  std::vector<long double> monic(size);
  for (std::size_t k = 0; k < size; ++k) monic[k] = coefficients[k] / coefficients[size - 1];

  auto eval = [&](Complex z, Complex& deriv) {
    Complex value(1.0L, 0.0L);
    deriv = Complex(0.0L, 0.0L);
    for (int k = degree - 1; k >= 0; --k) {
      deriv = deriv * z + value;
      value = value * z + monic[static_cast<std::size_t>(k)];
    }
    return value;
  };

  // Cauchy bound on root magnitude seeds the starting circle.
  long double bound = 0.0L;
  for (int k = 0; k < degree; ++k) bound = std::max(bound, std::abs(monic[static_cast<std::size_t>(k)]));
  const long double radius = 0.5L * (1.0L + bound);
  std::vector<Complex> z(static_cast<std::size_t>(degree));
  for (int k = 0; k < degree; ++k) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * k / degree + 0.4L;
    z[static_cast<std::size_t>(k)] = std::polar(radius, angle);
  }

  const int max_iterations = 500;
  for (int iter = 0; iter < max_iterations; ++iter) {
    long double worst = 0.0L;
    for (int i = 0; i < degree; ++i) {
      auto& zi = z[static_cast<std::size_t>(i)];
      Complex deriv;
      const Complex value = eval(zi, deriv);
      if (value == Complex(0.0L, 0.0L)) continue;
      const Complex ratio = value / deriv;
      Complex repulsion(0.0L, 0.0L);
      for (int j = 0; j < degree; ++j) {
        if (j != i) repulsion += 1.0L / (zi - z[static_cast<std::size_t>(j)]);
      }
      const Complex step = ratio / (1.0L - ratio * repulsion);
      zi -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(zi)));
    }
    if (worst <= 4.0L * kEps) break;
  }

  long double scale = 1.0L;
  for (long double c : monic) scale = std::max(scale, std::abs(c));
  for (const auto& root : z) {
    Complex deriv;
    const long double residual = std::abs(eval(root, deriv));
    const long double magnitude = std::pow(std::max(1.0L, std::abs(root)), degree);
    if (!(residual <= 1e-6L * scale * magnitude)) {
      throw ConvergenceError("polynomial root finder did not converge (residual " +
                             std::to_string(static_cast<double>(residual)) + ")");
    }
  }
  return z;
}

}  // namespace ptdomain
