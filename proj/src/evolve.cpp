#include "epmono/evolve.hpp"

#include <cmath>
#include <sstream>

namespace epmono {

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::Coherent: return "Coherent";
    case Regime::Incoherent: return "Incoherent";
    case Regime::ExceptionalPoint: return "ExceptionalPoint";
    case Regime::Generic: return "Generic";
  }
  return "?";
}

RegimeTag regime_of(const ComplexTriple& omega) noexcept {
  const Complex w = cdot(omega, omega);
  const double scale = std::max(1.0, norm(omega) * norm(omega));
  RegimeTag tag;
  tag.omega0 = std::sqrt(std::abs(w));
  if (std::abs(w) <= 1e-12 * scale) {
    tag.regime = Regime::ExceptionalPoint;
  } else if (std::abs(w.imag()) <= 1e-12 * std::abs(w)) {
    tag.regime = w.real() > 0 ? Regime::Coherent : Regime::Incoherent;
  }
  return tag;
}

EvenFunctions even_functions(Complex w, double tau) {
  const Complex x = w * tau * tau;
  if (std::abs(x) < 1e-8) {
    // Σ (-x)^k/(2k)!, τΣ (-x)^k/(2k+1)!, τ²Σ (-x)^k/(2k+2)!
    const Complex x2 = x * x, x3 = x2 * x;
    return {1.0 - x / 2.0 + x2 / 24.0 - x3 / 720.0,
            tau * (1.0 - x / 6.0 + x2 / 120.0 - x3 / 5040.0),
            tau * tau * (0.5 - x / 24.0 + x2 / 720.0 - x3 / 40320.0)};
  }
  if (std::abs(w.imag()) <= 1e-15 * std::abs(w)) {
    const double w0 = std::sqrt(std::abs(w.real()));
    const double a = w0 * tau;
    if (w.real() > 0) return {std::cos(a), std::sin(a) / w0, (1.0 - std::cos(a)) / w.real()};
    return {std::cosh(a), std::sinh(a) / w0, (1.0 - std::cosh(a)) / w.real()};
  }
  const Complex om = csqrt_principal(w);
  const Complex c = std::cos(om * tau);
  return {c, std::sin(om * tau) / om, (1.0 - c) / w};
}

namespace {

ComplexMat2 rotation(const Hamiltonian2& h, double t, double sign) {
  const ComplexTriple om = h.omega();
  const EvenFunctions f = even_functions(cdot(om, om), 0.5 * t);
  const Complex phase = std::exp(-sign * kI * h.trace() * (0.5 * t));
  return phase * pauli_combination(f.cos, (-sign * kI * f.sinc) * om);
}

void require_unit(const ComplexTriple& n) {
  if (std::abs(cdot(n, n) - 1.0) > 1e-8) throw Error(ErrorKind::NotUnit, "initial Bloch vector has n·n ≠ 1");
}

int step_count(TimeSpan span, double step) {
  if (!(step > 0.0) || !(span.end >= span.start)) {
    throw Error(ErrorKind::InvalidArgument, "integration needs step > 0 and end >= start");
  }
  const double n = std::ceil((span.end - span.start) / step - 1e-9);
  return std::max(1, static_cast<int>(n));
}

std::string describe(TimeSpan span, double step) {
  std::ostringstream s;
  s.precision(17);
  s << "t=[" << span.start << "," << span.end << "] step=" << step;
  return s.str();
}

}  // namespace

ComplexMat2 propagator(const Hamiltonian2& h, double t) { return rotation(h, t, 1.0); }

ComplexMat2 propagator_inverse(const Hamiltonian2& h, double t) { return rotation(h, t, -1.0); }

AdjointPair evolve_pair(const Hamiltonian2& h, const AdjointPair& initial, double t) {
  return {propagator(h, t) * initial.ket, initial.bra * propagator_inverse(h, t)};
}

ComplexTriple bloch_closed_form(const Hamiltonian2& h, const ComplexTriple& n_i, double t) {
  require_unit(n_i);
  const ComplexTriple om = h.omega();
  const EvenFunctions f = even_functions(cdot(om, om), t);
  return f.cos * n_i + (cdot(n_i, om) * f.versc) * om + f.sinc * ccross(om, n_i);
}

TransitionAmplitudes transition_amplitudes(const Hamiltonian2& h, const ComplexTriple& n_i,
                                           const ComplexTriple& n_fi, Complex cos_theta_fi, double t) {
  const ComplexTriple om = h.omega();
  const EvenFunctions f = even_functions(cdot(om, om), 0.5 * t);
  const Complex phase = std::exp(-kI * h.trace() * (0.5 * t));
  return {(f.cos - kI * f.sinc * cdot(n_i, om)) * phase,
          (cos_theta_fi * f.cos - kI * f.sinc * cdot(n_fi, om)) * phase};
}

Trajectory integrate_schrodinger(const HamiltonianFn& h, const AdjointPair& initial, TimeSpan span,
                                 double step, int record_every) {
  const int n = step_count(span, step);
  const double dt = (span.end - span.start) / n;
  const Complex norm0 = overlap(initial);
  record_every = std::max(1, record_every);

  Trajectory traj;
  traj.integrator = "rk4-schrodinger";
  traj.step = dt;
  traj.parameters = describe(span, dt);
  const auto record = [&](double t, const AdjointPair& p) {
    traj.times.push_back(t);
    traj.pairs.push_back(p);
    traj.bloch.push_back(bloch_vector(p));
  };

  const auto ket_rate = [](const ComplexMat2& m, const Ket& u) { return -kI * (m * u); };
  const auto bra_rate = [](const ComplexMat2& m, const Bra& u) { return kI * (u * m); };

  AdjointPair p = initial;
  record(span.start, p);
  for (int k = 0; k < n; ++k) {
    const double t = span.start + k * dt;
    const ComplexMat2 h0 = h(t).matrix();
    const ComplexMat2 hm = h(t + 0.5 * dt).matrix();
    const ComplexMat2 h1 = h(t + dt).matrix();

    const Ket k1 = ket_rate(h0, p.ket);
    const Ket k2 = ket_rate(hm, p.ket + (0.5 * dt) * k1);
    const Ket k3 = ket_rate(hm, p.ket + (0.5 * dt) * k2);
    const Ket k4 = ket_rate(h1, p.ket + Complex{dt} * k3);
    const Bra b1 = bra_rate(h0, p.bra);
    const Bra b2 = bra_rate(hm, p.bra + (0.5 * dt) * b1);
    const Bra b3 = bra_rate(hm, p.bra + (0.5 * dt) * b2);
    const Bra b4 = bra_rate(h1, p.bra + Complex{dt} * b3);
    p.ket = p.ket + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    p.bra = p.bra + (dt / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4);

    const Complex drift = overlap(p) - norm0;
    if (!is_finite(drift) || std::abs(drift) > 1e-6) {
      throw Error(ErrorKind::StepRejected, "bi-orthogonal normalisation drifted at t=" + std::to_string(t + dt));
    }
    if ((k + 1) % record_every == 0 || k + 1 == n) record(k + 1 == n ? span.end : t + dt, p);
  }
  return traj;
}

Trajectory integrate_bloch(const OmegaFn& omega, const ComplexTriple& n_i, TimeSpan span, double step,
                           int record_every) {
  require_unit(n_i);
  const int n = step_count(span, step);
  const double dt = (span.end - span.start) / n;
  record_every = std::max(1, record_every);

  Trajectory traj;
  traj.integrator = "rk4-bloch";
  traj.step = dt;
  traj.parameters = describe(span, dt);

  const auto rate = [](const ComplexTriple& om, const ComplexTriple& v) { return ccross(om, v); };
  ComplexTriple v = n_i;
  traj.times.push_back(span.start);
  traj.bloch.push_back(v);
  for (int k = 0; k < n; ++k) {
    const double t = span.start + k * dt;
    const ComplexTriple o0 = omega(t), om = omega(t + 0.5 * dt), o1 = omega(t + dt);
    const ComplexTriple k1 = rate(o0, v);
    const ComplexTriple k2 = rate(om, v + Complex{0.5 * dt} * k1);
    const ComplexTriple k3 = rate(om, v + Complex{0.5 * dt} * k2);
    const ComplexTriple k4 = rate(o1, v + Complex{dt} * k3);
    v = v + Complex{dt / 6.0} * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double size = norm(v);
    if (!is_finite(v) || std::abs(cdot(v, v) - 1.0) > 1e-6 * std::max(1.0, size * size)) {
      throw Error(ErrorKind::StepRejected, "n·n drifted at t=" + std::to_string(t + dt));
    }
    if ((k + 1) % record_every == 0 || k + 1 == n) {
      traj.times.push_back(k + 1 == n ? span.end : t + dt);
      traj.bloch.push_back(v);
    }
  }
  return traj;
}

}  // namespace epmono
