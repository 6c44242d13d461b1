#include "epmono/atom.hpp"

#include <cmath>
#include <limits>

#include "epmono/errors.hpp"

namespace epmono {

namespace {

constexpr double kResonanceTol = 1e-12;
constexpr double kEpTol = 1e-9;

void require_basic(const AtomParams& p) {
  for (double v : {p.Delta, p.delta, p.lambda, p.omega, p.V0})
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "atom parameter is not finite");
  if (p.delta < 0.0) throw Error(ErrorKind::InvalidArgument, "delta must be non-negative");
  if (p.V0 < 0.0) throw Error(ErrorKind::InvalidArgument, "V0 must be non-negative");
}

bool resonant(const AtomParams& p) {
  return std::abs(p.Delta - p.omega) <= kResonanceTol * std::max({1.0, std::abs(p.Delta), std::abs(p.omega)});
}

void require_resonant(const AtomParams& p, const char* what) {
  if (!resonant(p)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " needs Delta = omega");
}

// cos χ = Z/Ω on the principal root; DegeneratePoint at Ω = 0.
Complex cos_chi(const AtomParams& p) {
  const Complex om = csqrt_principal(p.omega_squared());
  if (std::abs(om) <= 1e-12 * std::max(1.0, std::abs(p.z()) + p.rho()))
    throw DegeneratePointError({DegeneracyLabel::ExceptionalPoint, MonopoleKind::NotApplicable},
                               "cos chi undefined at Omega = 0");
  return p.z() / om;
}

// (Ωt − sin Ωt)/Ω³ as a function of w = Ω².
Complex cubic_remainder(Complex w, double t) {
  const Complex x = w * t * t;
  if (std::abs(x) < 1e-3) {
    // t³ Σ (−x)^k / (2k+3)!
    const double t3 = t * t * t;
    return t3 * (1.0 / 6.0 - x / 120.0 + x * x / 5040.0 - x * x * x / 362880.0 + x * x * x * x / 39916800.0);
  }
  return (t - even_functions(w, t).sinc) / w;
}

// (i/2) ln[(c + iZs)/(c − iZs)] with c = cos(Ωt/2), s = sin(Ωt/2)/Ω.
Complex log_term(Complex c, Complex zs) {
  const Complex num = c + kI * zs;
  const Complex den = c - kI * zs;
  const double scale = std::abs(c) + std::abs(zs);
  if (std::abs(num) <= 1e-14 * scale || std::abs(den) <= 1e-14 * scale)
    throw Error(ErrorKind::UndefinedAtPulse, "geometric phase undefined at a pulse time");
  Complex ratio = num / den;
  if (ratio.imag() == 0.0) ratio = {ratio.real(), 0.0};  // −0 would select −π
  return 0.5 * kI * std::log(ratio);
}

}  // namespace

void validate(const AtomParams& p) {
  require_basic(p);
  if (p.lambda < p.delta) throw Error(ErrorKind::InvalidArgument, "lambda must be at least delta");
}

RegimeReport regime_report(const AtomParams& p) {
  require_basic(p);
  RegimeReport r;
  r.resonant = resonant(p);
  if (r.resonant) {
    const double rho = p.rho();
    r.omega0 = std::sqrt(std::abs(rho * rho - p.delta * p.delta));
    if (std::abs(rho - p.delta) < kEpTol * std::max(rho, p.delta) || (rho == 0.0 && p.delta == 0.0)) {
      r.regime = Regime::ExceptionalPoint;
      r.omega0 = 0.0;
    } else if (rho > p.delta) {
      r.regime = Regime::Coherent;
      r.monopole_kind = MonopoleKind::OneSheetedHyperbolic;
    } else {
      r.regime = Regime::Incoherent;
      r.monopole_kind = MonopoleKind::TwoSheetedHyperbolic;
    }
    return r;
  }
  const RegimeTag tag = regime_of(rotating_hamiltonian(p));
  r.regime = tag.regime;
  r.omega0 = tag.omega0;
  return r;
}

Hamiltonian2 rotating_hamiltonian(const AtomParams& p) {
  require_basic(p);
  return Hamiltonian2::from_block(0.0, {0.5 * p.rho(), 0.0, 0.5 * p.z()});
}

Hamiltonian2 lab_hamiltonian(const AtomParams& p, double t) {
  require_basic(p);
  const double a = p.omega * t;
  return Hamiltonian2::from_block(Complex{0.0, -0.5 * p.lambda},
                                  {0.5 * p.rho() * std::cos(a), 0.5 * p.rho() * std::sin(a),
                                   0.5 * Complex{p.Delta, -p.delta}});
}

ComplexTriple lab_omega(const AtomParams& p, double t) {
  const double a = p.omega * t;
  return {p.rho() * std::cos(a), p.rho() * std::sin(a), Complex{p.Delta, -p.delta}};
}

Ket evolve_driven(const AtomParams& p, const Ket& c0, double t) {
  return propagator(rotating_hamiltonian(p), t) * c0;
}

Ket lab_state(const AtomParams& p, const Ket& c, double t) {
  const double damp = std::exp(-0.5 * p.lambda * t);
  const double a = 0.5 * p.omega * t;
  return {c.a * damp * std::exp(Complex{0.0, -a}), c.b * damp * std::exp(Complex{0.0, a})};
}

ComplexTriple bloch_driven(const AtomParams& p, const ComplexTriple& n0, double t) {
  const ComplexTriple m = bloch_closed_form(rotating_hamiltonian(p), n0, t);
  const double c = std::cos(p.omega * t), s = std::sin(p.omega * t);
  return {c * m.x - s * m.y, s * m.x + c * m.y, m.z};
}

AdjointPair cyclic_state(const AtomParams& p, Branch branch, double t) {
  require_basic(p);
  const Complex om = csqrt_principal(p.omega_squared());
  const Complex cchi = cos_chi(p);
  const Complex schi = p.rho() / om;
  // Half angles with cos² − sin² = cos χ and 2 sin cos = sin χ.
  Complex ch, sh;
  if (std::abs(1.0 + cchi) >= std::abs(1.0 - cchi)) {
    ch = std::sqrt(0.5 * (1.0 + cchi));
    sh = schi / (2.0 * ch);
  } else {
    sh = std::sqrt(0.5 * (1.0 - cchi));
    ch = schi / (2.0 * sh);
  }
  // The lower branch has eigenvalue −Ω/2 in the rotating frame.
  const Complex eig = branch == Branch::Plus ? om : -om;
  const Complex up = std::exp(-0.5 * kI * (p.omega + eig - kI * p.lambda) * t);
  const Complex dn = std::exp(0.5 * kI * (p.omega - eig + kI * p.lambda) * t);
  const Complex ca = branch == Branch::Plus ? ch : -sh;
  const Complex cb = branch == Branch::Plus ? sh : ch;
  return {{ca * up, cb * dn}, {ca / up, cb / dn}};
}

Complex cyclic_phase(const AtomParams& p, Branch branch) {
  require_basic(p);
  const Complex c = cos_chi(p);
  return branch == Branch::Plus ? -kPi * (1.0 - c) : -kPi * (1.0 + c);
}

Complex aa_phase(const AtomParams& p) { return cyclic_phase(p, Branch::Minus) + 2.0 * kPi; }

Complex adiabatic_limit_phase(const AtomParams& p) {
  require_basic(p);
  const Complex d{p.Delta, -p.delta};
  const Complex r = csqrt_principal(p.rho() * p.rho() + d * d);
  if (std::abs(r) <= 1e-12 * std::max(1.0, std::abs(d)))
    throw DegeneratePointError({DegeneracyLabel::ExceptionalPoint, MonopoleKind::NotApplicable},
                               "adiabatic phase undefined at the degeneracy");
  return kPi * (1.0 - d / r);
}

Complex noncyclic_phase(const AtomParams& p, double t) {
  require_basic(p);
  if (!std::isfinite(t)) throw Error(ErrorKind::NonFinite, "time is not finite");
  const Complex z = p.z();
  const Complex w = p.omega_squared();
  const double rho = p.rho();
  const EvenFunctions half = even_functions(w, 0.5 * t);
  return 0.5 * z * t - 0.5 * p.omega * rho * rho * cubic_remainder(w, t) + log_term(half.cos, z * half.sinc);
}

Complex noncyclic_side_limit(const AtomParams& p, double t, ApproachAxis axis, int side) {
  if (side != 1 && side != -1) throw Error(ErrorKind::InvalidArgument, "side must be +1 or -1");
  auto at = [&](double h) {
    AtomParams q = p;
    if (axis == ApproachAxis::Rho) q.V0 += 0.5 * side * h;
    else q.Delta += side * h;
    return noncyclic_phase(q, t);
  };
  const double h1 = 1e-6, h2 = 1e-7;
  const Complex g1 = at(h1), g2 = at(h2);
  return (h1 * g2 - h2 * g1) / (h1 - h2);
}

TunnelingProbabilities tunneling_probabilities(const AtomParams& p, double t) {
  validate(p);
  const double decay = std::exp(-p.lambda * t);
  const RegimeReport r = regime_report(p);
  if (r.resonant) {
    const double d = p.delta, o = r.omega0, rho = p.rho();
    switch (r.regime) {
      case Regime::Coherent: {
        const double c = std::cos(0.5 * o * t), s = std::sin(0.5 * o * t);
        return {decay * (c - d / o * s) * (c - d / o * s), decay * rho * rho / (o * o) * s * s};
      }
      case Regime::Incoherent: {
        const double c = std::cosh(0.5 * o * t), s = std::sinh(0.5 * o * t);
        return {decay * (c - d / o * s) * (c - d / o * s), decay * rho * rho / (o * o) * s * s};
      }
      default: {
        const double h = 0.5 * d * t;
        return {decay * (1.0 - h) * (1.0 - h), decay * h * h};
      }
    }
  }
  const EvenFunctions half = even_functions(p.omega_squared(), 0.5 * t);
  return {decay * std::norm(half.cos - kI * p.z() * half.sinc), decay * std::norm(p.rho() * half.sinc)};
}

double rabi_closed(Regime regime, double omega0, double delta, double lambda, double t) {
  const double decay = std::exp(-lambda * t);
  switch (regime) {
    case Regime::Coherent:
      return decay * (std::cos(omega0 * t) - delta / omega0 * std::sin(omega0 * t));
    case Regime::Incoherent:
      return decay * (std::cosh(omega0 * t) - delta / omega0 * std::sinh(omega0 * t));
    case Regime::ExceptionalPoint:
      return decay * (1.0 - delta * t);
    case Regime::Generic:
      break;
  }
  throw Error(ErrorKind::InvalidArgument, "Rabi function needs a resonant regime");
}

double rabi_function(const AtomParams& p, double t) {
  validate(p);
  require_resonant(p, "Rabi function");
  const RegimeReport r = regime_report(p);
  return rabi_closed(r.regime, r.omega0, p.delta, p.lambda, t);
}

PulseTimes phase_pulse_times(const AtomParams& p, double t_max) {
  require_basic(p);
  require_resonant(p, "pulse times");
  if (p.delta == 0.0) throw Error(ErrorKind::NoPulse, "no phase pulses without dissipation");
  const RegimeReport r = regime_report(p);
  PulseTimes out;
  out.regime = r.regime;
  out.duration = std::numeric_limits<double>::infinity();
  const double o = r.omega0;
  switch (r.regime) {
    case Regime::Coherent: {
      const double a = std::atan(o / p.delta);
      out.duration = (2.0 / o) * (kPi - 2.0 * a);
      for (int n = 0;; ++n) {
        const double down = (2.0 / o) * (kPi * n - a);
        const double up = (2.0 / o) * (kPi * n + a);
        if (down > t_max) break;
        if (n > 0) out.jumps.push_back({down, 0.5 * kPi});
        if (up > t_max) break;
        out.jumps.push_back({up, -0.5 * kPi});
      }
      break;
    }
    case Regime::Incoherent: {
      const double t0 = (2.0 / o) * std::atanh(o / p.delta);
      if (t0 <= t_max) out.jumps.push_back({t0, -0.5 * kPi});
      break;
    }
    default: {
      const double t0 = 2.0 / p.delta;
      if (t0 <= t_max) out.jumps.push_back({t0, -0.5 * kPi});
    }
  }
  return out;
}

Complex coherent_incoherent_phase(const AtomParams& p, double t) {
  require_basic(p);
  require_resonant(p, "resonant phase");
  const RegimeReport r = regime_report(p);
  const double d = p.delta, o = r.omega0, w = p.omega;
  switch (r.regime) {
    case Regime::Coherent: {
      const double x = 0.5 * o * t;
      return w * (d * d + o * o) / (2.0 * o * o * o) * (std::sin(o * t) - o * t) - 0.5 * kI * d * t +
             log_term(std::cos(x), d / o * std::sin(x) * -kI);
    }
    case Regime::Incoherent: {
      const double x = 0.5 * o * t;
      return -w * (d * d - o * o) / (2.0 * o * o * o) * (std::sinh(o * t) - o * t) - 0.5 * kI * d * t +
             log_term(std::cosh(x), d / o * std::sinh(x) * -kI);
    }
    default:
      return -w * d * d * t * t * t / 12.0 - 0.5 * kI * d * t + log_term(1.0, -kI * 0.5 * d * t);
  }
}

}  // namespace epmono
