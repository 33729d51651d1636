#include "orthotopo/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

#include "orthotopo/kinematics.hpp"

namespace orthotopo {

namespace {

using Complex = std::complex<double>;
using Poly = std::vector<double>;  // ascending

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly poly_pow(const Poly& a, int n) {
  Poly out{1.0};
  for (int i = 0; i < n; ++i) out = poly_mul(out, a);
  return out;
}

template <typename T>
T horner(std::span<const double> c, T u) {
  T acc{0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
  return acc;
}

std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  for (const auto& p : set_partitions(n - 1)) {
    const int item = n - 1;
    for (std::size_t b = 0; b < p.size(); ++b) {
      auto q = p;
      q[b].push_back(item);
      out.push_back(std::move(q));
    }
    auto q = p;
    q.push_back({item});
    out.push_back(std::move(q));
  }
  return out;
}

// Newton on the (m-1)-th derivative, where an m-fold root is simple.  The
// mean of a spread cluster is only accurate to the spread itself.
Complex polish_center(const QuarticPoly& q, Complex c, int m) {
  const QuarticPoly f = q.derivative(m - 1);
  const QuarticPoly fp = q.derivative(m);
  const Complex start = c;
  for (int it = 0; it < 8; ++it) {
    const Complex d = fp(c);
    if (std::abs(d) == 0.0) break;
    const Complex step = f(c) / d;
    c -= step;
    if (std::abs(step) <= 4e-16 * (1.0 + std::abs(c))) break;
  }
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) ||
      std::abs(c - start) > 1e-2 * (1.0 + std::abs(start)))
    return start;
  return c;
}

struct Cluster {
  Complex center;
  int multiplicity;
};

// Fewest clusters whose reconstruction stays within relative backward error.
std::vector<Cluster> cluster_by_backward_error(const QuarticPoly& q,
                                               const std::vector<Complex>& roots,
                                               double tol) {
  const int n = static_cast<int>(roots.size());
  const int deg = q.degree();
  const double lead = q.coeffs[static_cast<std::size_t>(deg)];
  const double scale = q.max_abs_coeff();

  std::vector<Cluster> best;
  int best_count = std::numeric_limits<int>::max();
  double best_err = std::numeric_limits<double>::infinity();

  for (const auto& partition : set_partitions(n)) {
    const int count = static_cast<int>(partition.size());
    if (count > best_count) continue;

    std::vector<Cluster> clusters;
    std::vector<Complex> rec{Complex(lead)};
    for (const auto& block : partition) {
      Complex c{0.0};
      for (int i : block) c += roots[static_cast<std::size_t>(i)];
      c /= static_cast<double>(block.size());
      if (block.size() > 1) c = polish_center(q, c, static_cast<int>(block.size()));
      clusters.push_back({c, static_cast<int>(block.size())});
      for (std::size_t k = 0; k < block.size(); ++k) {
        std::vector<Complex> next(rec.size() + 1, Complex{0.0});
        for (std::size_t i = 0; i < rec.size(); ++i) {
          next[i + 1] += rec[i];
          next[i] -= rec[i] * c;
        }
        rec = std::move(next);
      }
    }
    double err = 0.0;
    for (int k = 0; k <= deg; ++k)
      err = std::max(err, std::abs(rec[static_cast<std::size_t>(k)] -
                                   q.coeffs[static_cast<std::size_t>(k)]));
    err /= scale;
    if (err > tol) continue;
    if (count < best_count || err < best_err) {
      best_count = count;
      best_err = err;
      best = std::move(clusters);
    }
  }
  if (best.empty()) {
    for (const auto& r : roots) best.push_back({r, 1});
  }
  return best;
}

double polish_multiple(const QuarticPoly& q, double x0, int multiplicity) {
  const QuarticPoly f = q.derivative(multiplicity - 1);
  const QuarticPoly fp = q.derivative(multiplicity);
  double x = x0;
  for (int it = 0; it < 12; ++it) {
    const double d = fp(x);
    if (d == 0.0) break;
    const double step = f(x) / d;
    if (!std::isfinite(step) || std::abs(step) > 1e-3 * (1.0 + std::abs(x)))
      return x0;
    x -= step;
    if (std::abs(step) <= 4e-16 * (1.0 + std::abs(x))) break;
  }
  return x;
}

struct Representation {
  QuarticPoly poly;
  std::vector<Complex> roots;
  double score = 0.0;
};

std::optional<Representation> try_representation(const QuarticPoly& q,
                                                 double tol) {
  const double scale = q.max_abs_coeff();
  if (std::abs(q.coeffs[4]) <= tol * scale) return std::nullopt;
  Representation rep{q, complex_roots(q.coeffs), 0.0};
  for (const auto& r : rep.roots) rep.score = std::max(rep.score, std::abs(r));
  return rep;
}

}  // namespace

double QuarticPoly::operator()(double u) const {
  return horner<double>(coeffs, u);
}

std::complex<double> QuarticPoly::operator()(std::complex<double> u) const {
  return horner<Complex>(coeffs, u);
}

double QuarticPoly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

int QuarticPoly::degree() const {
  for (int k = 4; k >= 0; --k)
    if (coeffs[static_cast<std::size_t>(k)] != 0.0) return k;
  return -1;
}

QuarticPoly QuarticPoly::derivative(int order) const {
  QuarticPoly d = *this;
  for (int o = 0; o < order; ++o) {
    QuarticPoly next;
    next.offset = offset;
    for (std::size_t k = 1; k < 5; ++k)
      next.coeffs[k - 1] = static_cast<double>(k) * d.coeffs[k];
    d = next;
  }
  return d;
}

QuarticPoly QuarticPoly::reexpressed(double new_offset) const {
  // u = (sin h + cos h u') / (cos h - sin h u') with h = (new - old) / 2.
  const double h = 0.5 * (new_offset - offset);
  const Poly num{std::sin(h), std::cos(h)};
  const Poly den{std::cos(h), -std::sin(h)};
  Poly acc(5, 0.0);
  for (int k = 0; k <= 4; ++k) {
    const Poly term = poly_mul(poly_pow(num, k), poly_pow(den, 4 - k));
    for (std::size_t i = 0; i < term.size(); ++i)
      acc[i] += coeffs[static_cast<std::size_t>(k)] * term[i];
  }
  QuarticPoly out;
  out.offset = new_offset;
  double m = 0.0;
  for (double c : acc) m = std::max(m, std::abs(c));
  if (m == 0.0) m = 1.0;
  for (std::size_t i = 0; i < 5; ++i) out.coeffs[i] = acc[i] / m;
  return out;
}

double QuarticPoly::theta3_of(double u) const {
  return wrap_angle(offset + 2.0 * std::atan(u));
}

double IkConstraint::value(double theta3) const {
  const double c = std::cos(theta3);
  const double s = std::sin(theta3);
  const double k = k0 + kc * c + ks * s;
  const double g = g0 + gc * c + gs * s;
  return k * k - 4.0 * d2 * d2 * (radial_sq - g * g);
}

QuarticPoly IkConstraint::quartic(double offset) const {
  const double ca = std::cos(offset);
  const double sa = std::sin(offset);
  // Rotate so the trigonometric argument is theta3 - offset.
  const double kc_r = kc * ca + ks * sa;
  const double ks_r = -kc * sa + ks * ca;
  const double gc_r = gc * ca + gs * sa;
  const double gs_r = -gc * sa + gs * ca;

  // (1 + u^2) K and (1 + u^2) G as quadratics in u.
  const Poly kw{k0 + kc_r, 2.0 * ks_r, k0 - kc_r};
  const Poly gw{g0 + gc_r, 2.0 * gs_r, g0 - gc_r};
  const Poly w{1.0, 0.0, 1.0};
  const Poly kk = poly_mul(kw, kw);
  const Poly gg = poly_mul(gw, gw);
  const Poly ww = poly_mul(w, w);

  QuarticPoly out;
  out.offset = offset;
  const double f = 4.0 * d2 * d2;
  for (std::size_t i = 0; i < 5; ++i)
    out.coeffs[i] = kk[i] - f * (radial_sq * ww[i] - gg[i]);
  return out;
}

int RootPattern::total_multiplicity() const {
  int n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

int RootPattern::max_multiplicity() const {
  int m = 0;
  for (const auto& r : roots) m = std::max(m, r.multiplicity);
  return m;
}

int RootPattern::count_at_least(int m) const {
  return static_cast<int>(std::count_if(
      roots.begin(), roots.end(),
      [m](const Root& r) { return r.multiplicity >= m; }));
}

std::vector<std::complex<double>> complex_roots(
    std::span<const double> coeffs) {
  std::size_t n = coeffs.size();
  while (n > 0 && coeffs[n - 1] == 0.0) --n;
  std::vector<Complex> roots;
  if (n <= 1) return roots;
  const auto c = coeffs.first(n);
  if (n == 2) {
    roots.emplace_back(-c[0] / c[1], 0.0);
    return roots;
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = c[i];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(v);
  for (Eigen::Index i = 0; i < solver.roots().size(); ++i)
    roots.push_back(solver.roots()[i]);

  std::vector<double> dc(n - 1);
  for (std::size_t k = 1; k < n; ++k) dc[k - 1] = static_cast<double>(k) * c[k];
  for (auto& r : roots) {
    for (int it = 0; it < 4; ++it) {
      const Complex f = horner<Complex>(c, r);
      const Complex fp = horner<Complex>(dc, r);
      if (std::abs(fp) == 0.0) break;
      const Complex cand = r - f / fp;
      if (std::abs(horner<Complex>(c, cand)) < std::abs(f))
        r = cand;
      else
        break;
    }
    if (r.imag() != 0.0 && std::abs(r.imag()) < 1e-300) r = r.real();
  }
  return roots;
}

RootPattern solve_roots(const QuarticPoly& poly, double tol) {
  RootPattern pattern;
  pattern.tol = tol;
  pattern.offset_used = poly.offset;
  if (poly.max_abs_coeff() == 0.0) {
    pattern.identically_zero = true;
    return pattern;
  }

  std::optional<Representation> chosen = try_representation(poly, tol);
  if (!chosen || chosen->score > 1e2) {
    constexpr double pi = std::numbers::pi;
    for (double shift : {pi, 0.5 * pi, -0.5 * pi, 0.25 * pi, -0.25 * pi,
                         0.75 * pi, -0.75 * pi}) {
      auto rep = try_representation(poly.reexpressed(poly.offset + shift), tol);
      if (rep && (!chosen || rep->score < chosen->score)) chosen = std::move(rep);
    }
  }
  if (!chosen) {
    // Every representation dropped degree: fall back to the stripped input.
    chosen = Representation{poly, complex_roots(poly.coeffs), 0.0};
  }
  const QuarticPoly& q = chosen->poly;
  pattern.offset_used = q.offset;

  struct RealRoot {
    double u;
    int multiplicity;
  };
  std::vector<RealRoot> real;
  for (const auto& cl : cluster_by_backward_error(q, chosen->roots, tol)) {
    const double mag = 1.0 + std::abs(cl.center);
    if (std::abs(cl.center.imag()) > tol * mag) continue;
    double u = cl.center.real();
    u = polish_multiple(q, u, cl.multiplicity);
    real.push_back({u, cl.multiplicity});
  }
  std::sort(real.begin(), real.end(),
            [](const RealRoot& a, const RealRoot& b) { return a.u < b.u; });

  std::vector<RealRoot> merged;
  for (const auto& r : real) {
    if (!merged.empty() &&
        std::abs(r.u - merged.back().u) <= tol * (1.0 + std::abs(merged.back().u))) {
      auto& m = merged.back();
      m.u = (m.u * m.multiplicity + r.u * r.multiplicity) /
            (m.multiplicity + r.multiplicity);
      m.multiplicity += r.multiplicity;
    } else {
      merged.push_back(r);
    }
  }

  for (const auto& r : merged) {
    Root root;
    root.theta3 = q.theta3_of(r.u);
    root.multiplicity = r.multiplicity;
    const double t = std::tan(0.5 * root.theta3);
    root.t = (root.theta3 == -std::numbers::pi || std::abs(t) > 1e15)
                 ? std::numeric_limits<double>::infinity()
                 : t;
    pattern.roots.push_back(root);
  }
  std::sort(pattern.roots.begin(), pattern.roots.end(),
            [](const Root& a, const Root& b) { return a.theta3 < b.theta3; });
  return pattern;
}

int multiplicity_near(const RootPattern& pattern, double theta3,
                      double angle_radius) {
  int m = 0;
  for (const auto& r : pattern.roots)
    if (std::abs(angle_diff(r.theta3, theta3)) <= angle_radius)
      m = std::max(m, r.multiplicity);
  return m;
}

}  // namespace orthotopo
