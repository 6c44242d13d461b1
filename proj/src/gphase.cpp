#include "epmono/gphase.hpp"

#include <cmath>

#include "epmono/quadrature.hpp"

namespace epmono {

namespace {

double uniform_step(const std::vector<double>& times) {
  if (times.size() < 2) throw Error(ErrorKind::InvalidArgument, "trajectory needs at least two samples");
  const double h = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (std::abs(times[k] - times[k - 1] - h) > 1e-9 * h) {
      throw Error(ErrorKind::InvalidArgument, "trajectory samples are not uniformly spaced");
    }
  }
  return h;
}

void require_pairs(const Trajectory& traj) {
  if (traj.pairs.size() != traj.times.size()) {
    throw Error(ErrorKind::InvalidArgument, "trajectory carries no state pairs");
  }
}

// Bloch vector seen after conjugating the states with (σx + σz)/√2.
ComplexTriple hadamard(const ComplexTriple& n) { return {n.z, -n.y, n.x}; }

double pole_margin(const std::vector<ComplexTriple>& n) {
  double m = 1e300;
  for (const auto& v : n) m = std::min(m, std::abs(1.0 + v.z));
  return m;
}

// Picks the frame in which the integrand stays away from n3 = -1. A constant
// change of basis leaves open-curve phases unchanged but can shift a closed
// loop integral by 2π, so loops only switch frame when keep_above is small.
std::vector<ComplexTriple> pole_free(const std::vector<ComplexTriple>& n, double keep_above = 0.1) {
  const double direct = pole_margin(n);
  if (direct >= keep_above) return n;
  std::vector<ComplexTriple> rotated(n.size());
  for (std::size_t k = 0; k < n.size(); ++k) rotated[k] = hadamard(n[k]);
  const double other = pole_margin(rotated);
  if (std::max(direct, other) < 1e-3) {
    throw Error(ErrorKind::PoleUnavoidable, "Bloch curve passes through the pole in both frames");
  }
  return other > direct ? rotated : n;
}

std::vector<Complex> connection_integrand(const std::vector<ComplexTriple>& n,
                                          const std::vector<ComplexTriple>& dn) {
  std::vector<Complex> f(n.size());
  for (std::size_t k = 0; k < n.size(); ++k) {
    f[k] = (n[k].x * dn[k].y - n[k].y * dn[k].x) / (1.0 + n[k].z);
  }
  return f;
}

}  // namespace

Complex dynamical_phase(const Trajectory& traj, const HamiltonianFn& h) {
  require_pairs(traj);
  const double step = uniform_step(traj.times);
  std::vector<Complex> energy(traj.times.size());
  for (std::size_t k = 0; k < energy.size(); ++k) {
    const auto& p = traj.pairs[k];
    energy[k] = pair(p.bra, h(traj.times[k]).matrix() * p.ket);
  }
  return -quad::simpson(energy, step);
}

PhaseDecomposition geometric_phase_from_definition(const Trajectory& traj, const HamiltonianFn* h) {
  require_pairs(traj);
  const double step = uniform_step(traj.times);
  const AdjointPair& first = traj.pairs.front();
  const AdjointPair& last = traj.pairs.back();
  const Complex num = pair(last.bra, first.ket);
  const Complex den = pair(first.bra, last.ket);
  if (std::abs(num) < 1e-12 || std::abs(den) < 1e-12) {
    throw Error(ErrorKind::OverlapVanishes, "initial and final states are orthogonal in the bilinear pairing");
  }
  const std::size_t n = traj.times.size();
  std::vector<Complex> rate(n);
  if (h != nullptr) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& p = traj.pairs[k];
      rate[k] = -kI * pair(p.bra, (*h)(traj.times[k]).matrix() * p.ket);
    }
  } else {
    std::vector<Complex> a(n), b(n);
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = traj.pairs[k].ket.a;
      b[k] = traj.pairs[k].ket.b;
    }
    const auto da = quad::derivative<Complex>(a, step);
    const auto db = quad::derivative<Complex>(b, step);
    for (std::size_t k = 0; k < n; ++k) rate[k] = pair(traj.pairs[k].bra, Ket{da[k], db[k]});
  }
  PhaseDecomposition out;
  out.total = 0.5 * kI * std::log(num / den);
  out.dynamical = -kI * quad::simpson(rate, step);
  out.geometric = out.total - out.dynamical;
  return out;
}

std::vector<Complex> geometric_phase_noncyclic_series(const Trajectory& traj) {
  const double step = uniform_step(traj.times);
  for (const auto& v : traj.bloch) {
    if (std::abs(cdot(v, v) - 1.0) > 1e-6 * std::max(1.0, norm(v) * norm(v))) {
      throw Error(ErrorKind::NotUnit, "Bloch samples leave the complex sphere");
    }
  }
  const std::vector<ComplexTriple> n = pole_free(traj.bloch);
  const auto dn = quad::derivative<ComplexTriple>(n, step);
  const auto integral = quad::cumulative_integral(connection_integrand(n, dn), step);

  // Endpoint term (i/2) ln[(1 + w_i v_f) / (1 + v_i w_f)] with
  // w = tan(α/2) e^{iβ}, v = tan(α/2) e^{-iβ}.
  const auto w = [](const ComplexTriple& v) { return (v.x + kI * v.y) / (1.0 + v.z); };
  const auto v = [](const ComplexTriple& u) { return (u.x - kI * u.y) / (1.0 + u.z); };
  const Complex wi = w(n.front()), vi = v(n.front());
  std::vector<Complex> ratio(n.size());
  for (std::size_t k = 0; k < n.size(); ++k) {
    const Complex top = 1.0 + wi * v(n[k]);
    const Complex bottom = 1.0 + vi * w(n[k]);
    if (std::abs(top) < 1e-12 || std::abs(bottom) < 1e-12) {
      if (k + 1 == n.size()) throw Error(ErrorKind::OverlapVanishes, "final state orthogonal to the initial one");
      // Undefined exactly at this sample; bridge it with the neighbour.
      ratio[k] = Complex{};
      continue;
    }
    ratio[k] = top / bottom;
  }
  // Continued in the end time. A ratio passing through zero or infinity
  // (final state orthogonal to the initial one) is a genuine jump of the
  // phase, so the step there is taken on the principal branch instead of
  // being rejected.
  std::vector<Complex> logs(n.size());
  double arg = 0.0;
  std::size_t last = 0;
  for (std::size_t k = 1; k < n.size(); ++k) {
    if (ratio[k] == Complex{}) {
      logs[k] = logs[last];
      continue;
    }
    arg += std::arg(ratio[k] / ratio[last]);
    logs[k] = {std::log(std::abs(ratio[k])), arg};
    last = k;
  }
  std::vector<Complex> gamma(n.size());
  for (std::size_t k = 0; k < n.size(); ++k) gamma[k] = -0.5 * integral[k] + 0.5 * kI * logs[k];
  return gamma;
}

Complex geometric_phase_noncyclic(const Trajectory& traj) { return geometric_phase_noncyclic_series(traj).back(); }

Complex geometric_phase_cyclic(const std::vector<ComplexTriple>& loop) {
  if (loop.empty()) throw Error(ErrorKind::InvalidArgument, "empty loop");
  const double scale = std::max(1.0, norm(loop.front()));
  if (norm(loop.front() - loop.back()) > 1e-10 * scale) {
    throw Error(ErrorKind::NotClosed, "first and last Bloch samples differ");
  }
  std::vector<ComplexTriple> n(loop.begin(), loop.end() - 1);
  bool moves = false;
  for (const auto& v : n) moves = moves || norm(v - loop.front()) > 1e-14 * scale;
  if (!moves) return 0.0;
  n = pole_free(n, 1e-3);
  const double h = 1.0 / static_cast<double>(n.size());
  const auto dn = quad::periodic_derivative<ComplexTriple>(n, h);
  Complex sum{};
  for (const Complex& f : connection_integrand(n, dn)) sum += f;
  return -0.5 * h * sum;
}

Complex geometric_phase_constant(const Hamiltonian2& h, const ComplexTriple& n_i, double t) {
  const ComplexTriple om = h.omega();
  const Complex p = cdot(n_i, om);
  const EvenFunctions f = even_functions(cdot(om, om), 0.5 * t);
  const Complex num = f.cos + kI * p * f.sinc;
  const Complex den = f.cos - kI * p * f.sinc;
  if (std::abs(num) < 1e-12 || std::abs(den) < 1e-12) {
    throw Error(ErrorKind::OverlapVanishes, "geometric phase undefined at this time");
  }
  return 0.5 * t * p + 0.5 * kI * std::log(num / den);
}

namespace {

struct GaugedState {
  Ket u;
  Bra ut;
};

// One pass of the discrete overlap product over n intervals.
Complex berry_pass(const ParameterLoop& loop, Branch branch, int n) {
  std::vector<GaugedState> states(static_cast<std::size_t>(n) + 1);
  BranchState root;
  Complex r_start{};
  for (int k = 0; k <= n; ++k) {
    const Hamiltonian2 h = loop.sampler(static_cast<double>(k) / n);
    EigenSystem2 e;
    try {
      e = eigensystem(h, root);
    } catch (const DegeneratePointError&) {
      throw Error(ErrorKind::DegeneracyOnLoop, "loop meets a degeneracy");
    }
    if (std::abs(e.R) <= 1e-3 * std::max(1.0, norm(h.r()))) {
      throw Error(ErrorKind::DegeneracyOnLoop, "loop passes within 1e-3 of a degeneracy");
    }
    root = e.branch;
    if (k == 0) r_start = e.R;
    states[static_cast<std::size_t>(k)] =
        branch == Branch::Plus ? GaugedState{e.u_plus, e.ut_plus} : GaugedState{e.u_minus, e.ut_minus};
  }
  if (std::abs(root.current_value - r_start) > 1e-6 * std::abs(r_start)) {
    throw Error(ErrorKind::DegeneracyOnLoop, "eigenvalues are exchanged around the loop (encircled exceptional point)");
  }

  // Smooth gauge: make the component j with the best-separated projector
  // entry u_j ũ_j (gauge invariant) equal its continued square root.
  double margin[2] = {1e300, 1e300};
  for (const auto& s : states) {
    margin[0] = std::min(margin[0], std::abs(s.u.a * s.ut.a));
    margin[1] = std::min(margin[1], std::abs(s.u.b * s.ut.b));
  }
  const bool use_a = margin[0] >= margin[1];
  BranchState gauge;
  for (auto& s : states) {
    const Complex comp = use_a ? s.u.a : s.u.b;
    const Complex proj = use_a ? s.u.a * s.ut.a : s.u.b * s.ut.b;
    const ContinuedRoot r = csqrt_continued(proj, gauge);
    gauge = r.state;
    const Complex kappa = r.value / comp;
    s.u = kappa * s.u;
    s.ut = (1.0 / kappa) * s.ut;
  }

  // Symmetrised link (1/2)[log<ũ_k|u_k+1> - log<ũ_k+1|u_k>]: the one-sided
  // product carries an O(1/n) error for non-Hermitian states, this one
  // starts at O(1/n²).
  states.back() = states.front();
  Complex sum{};
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    sum += std::log(pair(states[k].ut, states[k + 1].u)) - std::log(pair(states[k + 1].ut, states[k].u));
  }
  return 0.5 * kI * sum;
}

}  // namespace

Complex adiabatic_berry_phase(const ParameterLoop& loop, Branch branch) {
  if (loop.samples < 8) throw Error(ErrorKind::InvalidArgument, "loop needs at least 8 samples");
  const Hamiltonian2 a = loop.sampler(0.0), b = loop.sampler(1.0);
  if (max_abs(a.matrix() - b.matrix()) > 1e-12 * std::max(1.0, max_abs(a.matrix()))) {
    throw Error(ErrorKind::NotClosed, "parameter loop does not close");
  }
  const Complex coarse = berry_pass(loop, branch, loop.samples);
  const Complex fine = berry_pass(loop, branch, 2 * loop.samples);
  return fine + (fine - coarse) / 3.0;
}

double adiabaticity_criterion(const HamiltonianFn& h, double t, double fd_step) {
  const EigenSystem2 e = eigensystem(h(t));
  const ComplexMat2 dh = (1.0 / (2.0 * fd_step)) * (h(t + fd_step).matrix() - h(t - fd_step).matrix());
  const double gap2 = std::norm(e.lambda_plus - e.lambda_minus);
  const double up = std::abs(pair(e.ut_minus, dh * e.u_plus)) / gap2;
  const double down = std::abs(pair(e.ut_plus, dh * e.u_minus)) / gap2;
  return std::max(up, down);
}

}  // namespace epmono
