#include "eccert/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace eccert {

namespace {

enum class Kind { zero, poly, spline, callable };

/// Natural cubic spline data: knots x, values y, second derivatives m.
struct Spline {
  std::vector<double> x, y, m;

  /// Locate the interval containing r (clamped to the knot range so queries
  /// at the endpoints stay well-defined).
  std::size_t interval(double r) const {
    auto it = std::upper_bound(x.begin(), x.end(), r);
    std::size_t i = static_cast<std::size_t>(it - x.begin());
    if (i == 0) return 0;
    if (i >= x.size()) return x.size() - 2;
    return i - 1;
  }

  double eval(double r) const {
    const std::size_t i = interval(r);
    const double h = x[i + 1] - x[i];
    const double a = (x[i + 1] - r) / h;
    const double b = (r - x[i]) / h;
    return a * y[i] + b * y[i + 1] +
           ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * (h * h) / 6.0;
  }

  double deriv(double r) const {
    const std::size_t i = interval(r);
    const double h = x[i + 1] - x[i];
    const double a = (x[i + 1] - r) / h;
    const double b = (r - x[i]) / h;
    return (y[i + 1] - y[i]) / h +
           ((3.0 * b * b - 1.0) * m[i + 1] - (3.0 * a * a - 1.0) * m[i]) * h / 6.0;
  }

  double deriv2(double r) const {
    const std::size_t i = interval(r);
    const double h = x[i + 1] - x[i];
    const double a = (x[i + 1] - r) / h;
    const double b = (r - x[i]) / h;
    return a * m[i] + b * m[i + 1];
  }
};

Spline build_spline(std::vector<double> x, std::vector<double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) {
    throw std::invalid_argument("ScalarProfile::table: need >= 2 points with matching sizes");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x[i] < x[i + 1])) {
      throw std::invalid_argument("ScalarProfile::table: abscissae must be strictly increasing");
    }
  }
  // Tridiagonal solve for natural-boundary second derivatives.
  std::vector<double> m(n, 0.0);
  if (n > 2) {
    std::vector<double> diag(n - 2), rhs(n - 2), upper(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x[i] - x[i - 1];
      const double h1 = x[i + 1] - x[i];
      diag[i - 1] = 2.0 * (h0 + h1);
      upper[i - 1] = h1;
      rhs[i - 1] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
    }
    // Forward elimination (lower entry of row i is h0 = x[i]-x[i-1]).
    for (std::size_t i = 1; i < n - 2; ++i) {
      const double lower = x[i + 1] - x[i];
      const double w = lower / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i-- > 0;) {
      const double up = (i + 1 < n - 2) ? upper[i] * m[i + 2] : 0.0;
      m[i + 1] = (rhs[i] - up) / diag[i];
    }
  }
  return Spline{std::move(x), std::move(y), std::move(m)};
}

}  // namespace

struct ScalarProfile::Impl {
  Kind kind = Kind::zero;
  std::vector<double> coeffs;        // poly
  Spline spline;                     // spline
  std::function<double(double)> fn;  // callable
  double fd_step = 1e-3;             // callable

  double eval(double r) const {
    switch (kind) {
      case Kind::zero:
        return 0.0;
      case Kind::poly: {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * r + coeffs[k];
        return acc;
      }
      case Kind::spline:
        return spline.eval(r);
      case Kind::callable:
        return fn(r);
    }
    return 0.0;
  }

  double deriv(double r) const {
    switch (kind) {
      case Kind::zero:
        return 0.0;
      case Kind::poly: {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 1;)
          acc = acc * r + coeffs[k] * static_cast<double>(k);
        return acc;
      }
      case Kind::spline:
        return spline.deriv(r);
      case Kind::callable: {
        const double h = fd_step;
        return (-fn(r + 2 * h) + 8 * fn(r + h) - 8 * fn(r - h) + fn(r - 2 * h)) /
               (12 * h);
      }
    }
    return 0.0;
  }

  double deriv2(double r) const {
    switch (kind) {
      case Kind::zero:
        return 0.0;
      case Kind::poly: {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 2;)
          acc = acc * r + coeffs[k] * static_cast<double>(k) * static_cast<double>(k - 1);
        return acc;
      }
      case Kind::spline:
        return spline.deriv2(r);
      case Kind::callable: {
        const double h = fd_step;
        return (-fn(r + 2 * h) + 16 * fn(r + h) - 30 * fn(r) + 16 * fn(r - h) -
                fn(r - 2 * h)) /
               (12 * h * h);
      }
    }
    return 0.0;
  }
};

ScalarProfile::ScalarProfile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

ScalarProfile ScalarProfile::zero() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::zero;
  return ScalarProfile(std::move(impl));
}

ScalarProfile ScalarProfile::polynomial(std::vector<double> coefficients) {
  for (double c : coefficients) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("ScalarProfile::polynomial: non-finite coefficient");
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::poly;
  impl->coeffs = std::move(coefficients);
  return ScalarProfile(std::move(impl));
}

ScalarProfile ScalarProfile::table(std::vector<double> r, std::vector<double> f) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::spline;
  impl->spline = build_spline(std::move(r), std::move(f));
  return ScalarProfile(std::move(impl));
}

ScalarProfile ScalarProfile::callable(std::function<double(double)> f, double scale) {
  if (!f) throw std::invalid_argument("ScalarProfile::callable: empty function");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("ScalarProfile::callable: scale must be positive");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::callable;
  impl->fn = std::move(f);
  impl->fd_step = 1e-3 * scale;
  return ScalarProfile(std::move(impl));
}

double ScalarProfile::operator()(double r) const { return impl_->eval(r); }
double ScalarProfile::derivative(double r) const { return impl_->deriv(r); }
double ScalarProfile::second_derivative(double r) const { return impl_->deriv2(r); }

bool ScalarProfile::is_zero() const {
  if (impl_->kind == Kind::zero) return true;
  if (impl_->kind == Kind::poly) {
    for (double c : impl_->coeffs)
      if (c != 0.0) return false;
    return true;
  }
  return false;
}

std::string ScalarProfile::describe() const {
  switch (impl_->kind) {
    case Kind::zero:
      return "zero";
    case Kind::poly: {
      std::ostringstream os;
      os << "poly:";
      for (std::size_t k = 0; k < impl_->coeffs.size(); ++k) {
        if (k > 0) os << ",";
        os << impl_->coeffs[k];
      }
      if (impl_->coeffs.empty()) os << "0";
      return os.str();
    }
    case Kind::spline:
      return "table[" + std::to_string(impl_->spline.x.size()) + "]";
    case Kind::callable:
      return "callable";
  }
  return "unknown";
}

ScalarProfile parse_profile(const std::string& text) {
  const std::string prefix = "poly:";
  if (text.rfind(prefix, 0) != 0) {
    throw std::invalid_argument("profile spec must look like poly:c0,c1,... (got \"" +
                                text + "\")");
  }
  std::vector<double> coeffs;
  const std::string body = text.substr(prefix.size());
  if (body.empty()) throw std::invalid_argument("profile spec has no coefficients");
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = std::min(body.find(',', pos), body.size());
    const std::string tok = body.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      coeffs.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad profile coefficient \"" + tok + "\"");
    }
    pos = comma + 1;
    if (comma == body.size()) break;
  }
  return ScalarProfile::polynomial(std::move(coeffs));
}

}  // namespace eccert
