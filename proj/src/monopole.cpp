#include "epmono/monopole.hpp"

#include <cmath>

#include "epmono/errors.hpp"
#include "epmono/kernels/potential.hpp"
#include "epmono/quadrature.hpp"

namespace epmono {

namespace {

constexpr double kFieldRadius = 1e-9;
constexpr double kStringRadius = 1e-12;

double point_scale(const ComplexTriple& p, double epsilon) {
  return std::max(1.0, std::sqrt(std::norm(p.x) + std::norm(p.y) + std::norm(p.z) + epsilon * epsilon));
}

void require_model(const MonopoleModel& m) {
  if (m.kind == MonopoleKind::NotApplicable) throw Error(ErrorKind::InvalidArgument, "monopole kind not applicable");
  if (!(m.epsilon >= 0.0) || !std::isfinite(m.epsilon))
    throw Error(ErrorKind::InvalidArgument, "epsilon must be finite and non-negative");
  require_finite(m.q, "monopole charge");
}

struct Radius {
  ComplexTriple v;
  Complex r;
  BranchState branch;
};

Radius radius_at(const ComplexTriple& point, const MonopoleModel& model, BranchState branch) {
  require_model(model);
  if (!is_finite(point)) throw Error(ErrorKind::NonFinite, "monopole point");
  const ComplexTriple v = monopole_vector(point, model);
  const Complex r2 = cdot(v, v);
  Radius out{v, {}, branch};
  if (branch.initialised) {
    const ContinuedRoot root = csqrt_continued(r2, branch);
    out.r = root.value;
    out.branch = root.state;
  } else {
    out.r = csqrt_principal(r2);
    out.branch = BranchState::at(out.r, branch.continuation_tolerance);
  }
  if (std::abs(out.r) <= kFieldRadius * point_scale(point, model.epsilon))
    throw Error(ErrorKind::OnSingularSet, "point on the degeneracy set (R = 0)");
  return out;
}

ConnectionSample connection_from(const Radius& rad, const ComplexTriple& point, const MonopoleModel& model,
                                 std::optional<Chart> chart) {
  const Complex X = rad.v.x, Y = rad.v.y, Z = rad.v.z, R = rad.r;
  const double tol = kStringRadius * point_scale(point, model.epsilon);
  Chart use;
  if (is_hyperbolic(model.kind)) {
    if (chart && *chart != Chart::UpperSheet && *chart != Chart::LowerSheet && *chart != Chart::North)
      throw Error(ErrorKind::InvalidArgument, "hyperbolic connection has no south chart");
    use = point.z.real() >= 0.0 ? Chart::UpperSheet : Chart::LowerSheet;
  } else if (chart) {
    if (*chart != Chart::North && *chart != Chart::South)
      throw Error(ErrorKind::InvalidArgument, "sheet charts apply to the two-sheeted model only");
    use = *chart;
  } else {
    const bool on_north_string = std::abs(X * X + Y * Y) <= tol * tol && std::abs(R + Z) <= std::abs(R - Z);
    use = on_north_string ? Chart::South : Chart::North;
  }

  // On a string X² + Y² = 0 and R ± Z = 0; the cancelling sum is evaluated
  // as (X² + Y²)/(R ∓ Z).
  const Complex rho2 = X * X + Y * Y;
  auto stable_sum = [&](Complex s, Complex d) { return std::abs(s) >= std::abs(d) ? s : rho2 / d; };
  Complex denom;
  Complex sign = 1.0;
  if (use == Chart::South) {
    denom = R * stable_sum(R - Z, R + Z);
    sign = -1.0;
  } else {
    denom = R * stable_sum(R + Z, R - Z);
  }
  if (std::abs(denom) == 0.0 || (std::abs(rho2) <= tol * tol && std::abs(denom) <= tol * std::abs(R)))
    throw Error(ErrorKind::OnSingularSet, "point on the string of the chosen chart");
  const Complex f = sign * model.q / denom;
  return {{-f * Y, f * X, 0.0}, use};
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, what);
}

}  // namespace

bool is_hyperbolic(MonopoleKind kind) noexcept {
  return kind == MonopoleKind::OneSheetedHyperbolic || kind == MonopoleKind::TwoSheetedHyperbolic;
}

ComplexTriple monopole_vector(const ComplexTriple& p, const MonopoleModel& model) {
  switch (model.kind) {
    case MonopoleKind::Dirac:
      return p;
    case MonopoleKind::Complex:
    case MonopoleKind::ComplexDirac:
      return {p.x, p.y, p.z - kI * model.epsilon};
    case MonopoleKind::OneSheetedHyperbolic:
    case MonopoleKind::TwoSheetedHyperbolic:
      return {p.x, p.y, kI * p.z};
    case MonopoleKind::NotApplicable:
      break;
  }
  throw Error(ErrorKind::InvalidArgument, "monopole kind not applicable");
}

const char* to_string(Chart c) noexcept {
  switch (c) {
    case Chart::North: return "north";
    case Chart::South: return "south";
    case Chart::UpperSheet: return "upper";
    case Chart::LowerSheet: return "lower";
  }
  return "?";
}

ConnectionSample connection(const ComplexTriple& point, const MonopoleModel& model, std::optional<Chart> chart) {
  return connection_from(radius_at(point, model, BranchState::fresh()), point, model, chart);
}

Complex connection_phi(const ComplexTriple& point, const MonopoleModel& model, std::optional<Chart> chart) {
  const ConnectionSample c = connection(point, model, chart);
  return point.x * c.a.y - point.y * c.a.x;
}

FieldSample field_and_potential(const ComplexTriple& point, const MonopoleModel& model, BranchState branch) {
  const Radius rad = radius_at(point, model, branch);
  const Complex r3 = rad.r * rad.r * rad.r;
  FieldSample s;
  s.point = point;
  s.branch = rad.branch;
  if (is_hyperbolic(model.kind)) {
    s.b = (kI * model.q / r3) * point;
    s.phi = -kI * model.q / rad.r;
  } else {
    s.b = (model.q / r3) * rad.v;
    s.phi = model.q / rad.r;
  }
  // The potential is defined on the whole degeneracy-free set; the connection
  // may still sit on a string there, so it is best effort.
  try {
    const ConnectionSample c = connection_from(rad, point, model, std::nullopt);
    s.a = c.a;
    s.chart = c.chart;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OnSingularSet) throw;
    const ConnectionSample c = connection_from(rad, point, model, Chart::South);
    s.a = c.a;
    s.chart = c.chart;
  }
  return s;
}

Complex multipole_potential(double r, double alpha, const MonopoleModel& model, int order) {
  require_model(model);
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "multipole order must be non-negative");
  if (!(r > model.epsilon)) throw Error(ErrorKind::OutsideConvergence, "multipole series needs r > epsilon");
  const double c = std::cos(alpha);
  double p_prev = 1.0, p = c;  // P_{l-1}, P_l starting at l = 1
  const Complex ratio = kI * model.epsilon / r;
  Complex power = 1.0;
  Complex sum = 1.0;
  for (int l = 1; l <= order; ++l) {
    power *= ratio;
    sum += power * p;
    const double next = ((2.0 * l + 1.0) * c * p - l * p_prev) / (l + 1.0);
    p_prev = p;
    p = next;
  }
  return model.q * sum / r;
}

Contour circle_contour(double rho, double z) {
  return {[rho, z](double s) { return ComplexTriple{rho * std::cos(s), rho * std::sin(s), z}; },
          [rho](double s) { return ComplexTriple{-rho * std::sin(s), rho * std::cos(s), 0.0}; }};
}

Complex contour_phase(const Contour& contour, const MonopoleModel& model, std::optional<Chart> chart, double tol,
                      std::size_t max_samples) {
  require_model(model);
  quad::QuadratureResult res;
  try {
    res = quad::periodic_trapezoid(
        [&](double s) {
          const ComplexTriple p = contour.point(s);
          const ConnectionSample c = connection(p, model, chart);
          const ComplexTriple t = contour.tangent(s);
          return c.a.x * t.x + c.a.y * t.y + c.a.z * t.z;
        },
        0.0, 2.0 * kPi, tol, max_samples);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::OnSingularSet)
      throw Error(ErrorKind::SingularContour, std::string("contour meets the singular set: ") + e.what());
    throw;
  }
  if (!res.converged) throw Error(ErrorKind::SingularContour, "contour quadrature did not converge");
  return res.value;
}

Complex circle_phase_closed(double rho, double z, const MonopoleModel& model) {
  const Radius rad = radius_at({rho, 0.0, z}, model, BranchState::fresh());
  return 2.0 * kPi * model.q * (1.0 - rad.v.z / rad.r);
}

Complex complex_solid_angle(double r, double alpha, double epsilon) {
  const Complex Z = r * std::cos(alpha) - kI * epsilon;
  const double rho = r * std::sin(alpha);
  const Complex R = csqrt_principal(rho * rho + Z * Z);
  if (std::abs(R) <= kFieldRadius * std::max(1.0, r))
    throw Error(ErrorKind::OnSingularSet, "rim on the degeneracy set");
  return 2.0 * kPi * (1.0 - Z / R);
}

namespace {

// ∫_{a}^{b} dα ∫ dβ B·n r² sin α on the sphere of radius r.
Complex sphere_patch(double r, double a, double b, const MonopoleModel& model, double tol) {
  auto inner = [&](double alpha) {
    const double sa = std::sin(alpha), ca = std::cos(alpha);
    const quad::QuadratureResult ring = quad::periodic_trapezoid(
        [&](double beta) {
          const ComplexTriple n{sa * std::cos(beta), sa * std::sin(beta), ca};
          const FieldSample f = field_and_potential(r * n, model);
          return cdot(f.b, n);
        },
        0.0, 2.0 * kPi, tol);
    if (!ring.converged) throw Error(ErrorKind::SingularSurface, "azimuthal flux quadrature did not converge");
    return ring.value * r * r * sa;
  };
  quad::QuadratureResult res;
  try {
    res = quad::romberg(inner, a, b, tol);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::OnSingularSet)
      throw Error(ErrorKind::SingularSurface, std::string("surface meets the singular set: ") + e.what());
    throw;
  }
  if (!res.converged) throw Error(ErrorKind::SingularSurface, "polar flux quadrature did not converge");
  return res.value;
}

}  // namespace

FluxResult flux_solid_angle(double r, double alpha, const MonopoleModel& model, double tol) {
  require_model(model);
  require_positive(r, "sphere radius must be positive");
  if (!(alpha > 0.0 && alpha < kPi)) throw Error(ErrorKind::InvalidArgument, "cap angle must lie in (0, pi)");
  if (is_hyperbolic(model.kind)) throw Error(ErrorKind::InvalidArgument, "caps are defined for spherical models");
  FluxResult out;
  out.surface = sphere_patch(r, 0.0, alpha, model, tol);
  try {
    out.loop = contour_phase(circle_contour(r * std::sin(alpha), r * std::cos(alpha)), model, Chart::North, tol);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularContour) throw Error(ErrorKind::SingularSurface, e.what());
    throw;
  }
  return out;
}

Complex sphere_flux(double r, const MonopoleModel& model, double tol) {
  require_model(model);
  require_positive(r, "sphere radius must be positive");
  if (is_hyperbolic(model.kind)) throw Error(ErrorKind::InvalidArgument, "spheres are defined for spherical models");
  return sphere_patch(r, 0.0, kPi, model, tol);
}

FluxResult hyperboloid_band_flux(double radius, double theta1, double theta2, const MonopoleModel& model,
                                 double tol) {
  require_model(model);
  require_positive(radius, "hyperboloid radius must be positive");
  if (model.kind != MonopoleKind::OneSheetedHyperbolic)
    throw Error(ErrorKind::InvalidArgument, "band flux needs the one-sheeted model");
  if (!(theta2 > theta1)) throw Error(ErrorKind::InvalidArgument, "band needs theta1 < theta2");
  auto inner = [&](double th) {
    const double ch = std::cosh(th), sh = std::sinh(th);
    const quad::QuadratureResult ring = quad::periodic_trapezoid(
        [&](double ph) {
          const double c = std::cos(ph), s = std::sin(ph);
          const ComplexTriple p{radius * ch * c, radius * ch * s, radius * sh};
          // ∂θ × ∂φ
          const ComplexTriple area{-radius * radius * ch * ch * c, -radius * radius * ch * ch * s,
                                   radius * radius * ch * sh};
          return cdot(field_and_potential(p, model).b, area);
        },
        0.0, 2.0 * kPi, tol);
    if (!ring.converged) throw Error(ErrorKind::SingularSurface, "azimuthal flux quadrature did not converge");
    return ring.value;
  };
  const quad::QuadratureResult res = quad::romberg(inner, theta1, theta2, tol);
  if (!res.converged) throw Error(ErrorKind::SingularSurface, "band flux quadrature did not converge");
  FluxResult out;
  out.surface = res.value;
  out.loop = contour_phase(circle_contour(radius * std::cosh(theta2), radius * std::sinh(theta2)), model,
                           std::nullopt, tol) -
             contour_phase(circle_contour(radius * std::cosh(theta1), radius * std::sinh(theta1)), model,
                           std::nullopt, tol);
  return out;
}

Complex two_sheeted_chart_mismatch(double radius, double theta, const MonopoleModel& model) {
  require_model(model);
  require_positive(radius, "hyperboloid radius must be positive");
  if (model.kind != MonopoleKind::TwoSheetedHyperbolic)
    throw Error(ErrorKind::InvalidArgument, "chart mismatch needs the two-sheeted model");
  if (!(theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "theta must be positive");
  const double rho = radius * std::sinh(theta), z = radius * std::cosh(theta);
  return contour_phase(circle_contour(rho, z), model) - contour_phase(circle_contour(rho, -z), model);
}

double GridAxis::at(int i) const noexcept {
  if (count <= 1) return min;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

std::vector<GridCell> level_surface_grid(const MonopoleModel& model, const LevelGridSpec& spec) {
  require_model(model);
  for (const GridAxis* a : {&spec.x, &spec.y, &spec.z}) {
    if (a->count < 1) throw Error(ErrorKind::InvalidArgument, "grid axis needs at least one point");
    if (!std::isfinite(a->min) || !std::isfinite(a->max)) throw Error(ErrorKind::NonFinite, "grid axis bounds");
  }
  const std::size_t n = static_cast<std::size_t>(spec.x.count) * spec.y.count * spec.z.count;
  std::vector<double> xs(n), ys(n), zs(n), re(n), im(n);
  std::vector<std::uint8_t> mask(n);
  std::size_t k = 0;
  for (int i = 0; i < spec.x.count; ++i)
    for (int j = 0; j < spec.y.count; ++j)
      for (int l = 0; l < spec.z.count; ++l, ++k) {
        xs[k] = spec.x.at(i);
        ys[k] = spec.y.at(j);
        zs[k] = spec.z.at(l);
      }

  kernels::PotentialParams params;
  params.hyperbolic = is_hyperbolic(model.kind);
  params.epsilon = model.kind == MonopoleKind::Dirac || params.hyperbolic ? 0.0 : model.epsilon;
  params.q_eff = params.hyperbolic ? -kI * model.q : model.q;
  kernels::potential(params, {xs.data(), ys.data(), zs.data(), n, re.data(), im.data(), mask.data()});

  std::vector<GridCell> out(n);
  for (std::size_t m = 0; m < n; ++m) out[m] = {xs[m], ys[m], zs[m], {re[m], im[m]}, mask[m] != 0};
  return out;
}

}  // namespace epmono
