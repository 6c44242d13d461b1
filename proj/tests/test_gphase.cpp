#include "doctest.h"
#include "support.hpp"

#include "epmono/gphase.hpp"

using namespace epmono;
using testsupport::dist;
using testsupport::Rng;

namespace {

AdjointPair random_pair(Rng& rng) {
  const Ket u{rng.complex() + 1.0, rng.complex()};
  Bra ut{rng.complex() + 1.0, rng.complex()};
  ut = (1.0 / pair(ut, u)) * ut;
  return {u, ut};
}

Trajectory run(const Hamiltonian2& h, const AdjointPair& p, double t, double step = 1e-3) {
  return integrate_schrodinger([h](double) { return h; }, p, {0.0, t}, step);
}

ParameterLoop latitude_loop(Complex theta, int samples = 256) {
  return {[theta](double s) {
            const double phi = 2 * kPi * s;
            return Hamiltonian2::from_block(
                0, {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
          },
          samples};
}

double mod_two_pi_distance(Complex a, Complex b) { return std::abs(mod_two_pi(a - b)); }

}  // namespace

TEST_CASE("dynamical phase") {
  const auto h = Hamiltonian2::from_block(0, {0, 0, 0.5});
  const HamiltonianFn hf = [h](double) { return h; };
  const auto traj = run(h, {{1, 0}, {1, 0}}, 3.0);
  CHECK(std::abs(dynamical_phase(traj, hf) + 1.5) < 1e-12);
  const HamiltonianFn zero = [](double) { return Hamiltonian2{}; };
  CHECK(std::abs(dynamical_phase(run(Hamiltonian2{}, {{1, 0}, {1, 0}}, 1.0), zero)) == 0.0);
}

TEST_CASE("decomposition against the constant-H closed form") {
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto h = Hamiltonian2::from_omega(rng.complex(0.5), rng.triple(1.0));
    const HamiltonianFn hf = [h](double) { return h; };
    const AdjointPair p = random_pair(rng);
    const double t = rng.uniform(0.5, 3.0);
    const auto traj = run(h, p, t, 1e-3);
    const PhaseDecomposition d = geometric_phase_from_definition(traj, &hf);
    CHECK(std::abs(d.geometric - (d.total - d.dynamical)) < 1e-10);
    CHECK(std::abs(d.dynamical - dynamical_phase(traj, hf)) < 1e-10 * std::max(1.0, std::abs(d.dynamical)));
    const Complex closed = geometric_phase_constant(h, bloch_vector(p), t);
    CHECK(phase_distance_mod_pi(d.geometric, closed) < 1e-8);
    CHECK(std::abs(d.geometric.imag() - closed.imag()) < 1e-8);

    // The Bloch-curve formula on the same trajectory.
    const Complex bloch = geometric_phase_noncyclic(traj);
    CHECK(phase_distance_mod_pi(bloch, d.geometric) < 1e-6);
  }
  const auto traj = run(Hamiltonian2::from_omega(0, {0.3, 0.1, 1}), random_pair(rng), 0.0 + 1e-3, 1e-3);
  const auto d0 = geometric_phase_from_definition(traj);
  CHECK(std::abs(d0.total) < 1e-3);
}

TEST_CASE("phases vanish at t = 0 and on eigenstates") {
  const auto h = Hamiltonian2::from_omega(0.2, {Complex{1, 0.2}, 0.5, Complex{0, 0.3}});
  CHECK(geometric_phase_constant(h, {0, 0, 1}, 0.0) == Complex{});
  const auto e = eigensystem(h);
  const AdjointPair eig{e.u_plus, e.ut_plus};
  const auto traj = run(h, eig, 2.0);
  CHECK(phase_distance_mod_pi(geometric_phase_noncyclic(traj), 0.0) < 1e-8);
  const HamiltonianFn hf = [h](double) { return h; };
  CHECK(phase_distance_mod_pi(geometric_phase_from_definition(traj, &hf).geometric, 0.0) < 1e-9);
}

TEST_CASE("great circle encloses half the sphere") {
  const auto h = Hamiltonian2::from_omega(0, {0, 0, 1});
  const double s = 1.0 / std::sqrt(2.0);
  const AdjointPair p{{s, s}, {s, s}};
  const auto traj = run(h, p, 2 * kPi, 2 * kPi / 4000);
  CHECK(std::abs(traj.bloch.front().x - 1.0) < 1e-12);
  const Complex g = geometric_phase_noncyclic(traj);
  CHECK(phase_distance_mod_pi(g, -kPi) < 1e-8);
  CHECK(std::abs(geometric_phase_cyclic(traj.bloch) + kPi) < 1e-8);
}

TEST_CASE("gauge invariance under complex time-dependent gauges") {
  Rng rng(4);
  const auto h = Hamiltonian2::from_omega(Complex{0.1, -0.2}, {Complex{0.8, 0.1}, -0.3, Complex{0.4, 0.3}});
  const AdjointPair p = random_pair(rng);
  const auto traj = run(h, p, 2.0, 1e-3);
  const Complex base = geometric_phase_from_definition(traj).geometric;
  for (int i = 0; i < 50; ++i) {
    const Complex a0 = rng.complex(1.4), a1 = rng.complex(1.4);
    Trajectory g = traj;
    for (std::size_t k = 0; k < g.times.size(); ++k) {
      const double t = g.times[k];
      const Complex alpha = a0 * std::cos(0.7 * t) + a1 * t * t / 4.0;
      const Complex f = std::exp(kI * alpha);
      g.pairs[k].ket = f * g.pairs[k].ket;
      g.pairs[k].bra = (1.0 / f) * g.pairs[k].bra;
    }
    CHECK(phase_distance_mod_pi(geometric_phase_from_definition(g).geometric, base) < 1e-9);
  }
}

TEST_CASE("Bloch-curve integrand identity") {
  const double rho = 2.0, det = 0.3, delta = 0.5, w = 1.0;
  const HamiltonianFn h = [&](double t) {
    return Hamiltonian2::from_omega(0, {rho * std::cos(w * t), rho * std::sin(w * t), Complex{det, -delta}});
  };
  const double step = 1e-4;
  const auto traj = integrate_schrodinger(h, {{1, 0}, {1, 0}}, {0, 1}, step);
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < traj.times.size(); k += 97) {
    const auto& n = traj.bloch[k];
    const ComplexTriple dn = (traj.bloch[k + 1] - traj.bloch[k - 1]) / Complex{2 * step};
    const auto& p = traj.pairs[k];
    const auto& pp = traj.pairs[k + 1];
    const auto& pm = traj.pairs[k - 1];
    const Complex da = (pp.ket.a - pm.ket.a) / (2 * step), db = (pp.ket.b - pm.ket.b) / (2 * step);
    const Complex dta = (pp.bra.a - pm.bra.a) / (2 * step);
    const Complex lhs = (n.x * dn.y - n.y * dn.x) / (1.0 + n.z);
    const Complex rhs = -2.0 * kI * ((p.bra.a * da + p.bra.b * db) + 0.5 * (dta / p.bra.a - da / p.ket.a));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("pole handling") {
  // Starting at the south pole forces the rotated frame.
  const auto h = Hamiltonian2::from_omega(0, {Complex{1, 0.2}, 0.3, 0.4});
  const AdjointPair south{{0, 1}, {0, 1}};
  const auto traj = run(h, south, 1.5);
  const HamiltonianFn hf = [h](double) { return h; };
  const Complex ref = geometric_phase_from_definition(traj, &hf).geometric;
  CHECK(phase_distance_mod_pi(geometric_phase_noncyclic(traj), ref) < 1e-6);

  // A curve touching both poles of both frames.
  Trajectory bad;
  bad.times = {0.0, 1.0, 2.0};
  bad.bloch = {{0, 0, -1}, {-1, 0, 0}, {0, 0, 1}};
  CHECK_THROWS_AS(geometric_phase_noncyclic(bad), Error);
}

TEST_CASE("Re γ steps by π/2 near the exceptional point") {
  // With p = n_i·Ω_e = ε + i the jump sits at t0 = 2.
  const ComplexTriple n_i{1, 0, 0};
  for (double eps : {1e-8, -1e-8}) {
    const Complex p{eps, 1.0};
    const auto h = Hamiltonian2::from_omega(0, {p, kI * p, 0});
    CHECK(regime_of(h).regime == Regime::ExceptionalPoint);
    CHECK(std::abs(cdot(n_i, h.omega()) - p) < 1e-15);
    const double before = geometric_phase_constant(h, n_i, 2.0 - 1e-3).real();
    const double after = geometric_phase_constant(h, n_i, 2.0 + 1e-3).real();
    CHECK(std::abs(before) < 1e-2);
    CHECK(after == doctest::Approx(eps > 0 ? -kPi / 2 : kPi / 2).epsilon(1e-2));
  }
}

TEST_CASE("cyclic phase") {
  for (double alpha : {0.3, 1.0, 2.0}) {
    std::vector<ComplexTriple> loop;
    for (int k = 0; k <= 400; ++k) {
      const double b = 2 * kPi * k / 400.0;
      loop.push_back({std::sin(alpha) * std::cos(b), std::sin(alpha) * std::sin(b), std::cos(alpha)});
    }
    CHECK(phase_distance_mod_pi(geometric_phase_cyclic(loop), -kPi * (1 - std::cos(alpha))) < 1e-8);
  }
  CHECK(geometric_phase_cyclic({{0, 0, 1}, {0, 0, 1}}) == Complex{});
  CHECK_THROWS_AS(geometric_phase_cyclic({{0, 0, 1}, {1, 0, 0}}), Error);

  // Complex latitude on the complexified sphere.
  const Complex a{0.8, 0.4};
  std::vector<ComplexTriple> loop;
  for (int k = 0; k <= 600; ++k) {
    const double b = 2 * kPi * k / 600.0;
    loop.push_back({std::sin(a) * std::cos(b), std::sin(a) * std::sin(b), std::cos(a)});
  }
  CHECK(phase_distance_mod_pi(geometric_phase_cyclic(loop), -kPi * (1.0 - std::cos(a))) < 1e-8);

  // A closed constant-H trajectory: cyclic and non-cyclic agree.
  const auto h = Hamiltonian2::from_omega(0, {0.6, 0, 0.8});
  const AdjointPair p{{0.9, std::sqrt(1 - 0.81)}, {0.9, std::sqrt(1 - 0.81)}};
  const auto traj = run(h, p, 2 * kPi, 2 * kPi / 4000);
  CHECK(phase_distance_mod_pi(geometric_phase_noncyclic(traj), geometric_phase_cyclic(traj.bloch)) < 1e-8);
}

TEST_CASE("adiabatic Berry phase") {
  for (double th : {0.4, 1.2, 2.5}) {
    const double cap = kPi * (1 - std::cos(th));
    CHECK(mod_two_pi_distance(adiabatic_berry_phase(latitude_loop(th), Branch::Minus), cap) < 1e-8);
    CHECK(mod_two_pi_distance(adiabatic_berry_phase(latitude_loop(th), Branch::Plus), -cap) < 1e-8);
  }
  // Dissipative loop: x + iy = V0 e^{is}, z - iε = (Δ - iδ)/2.
  const double v0 = 0.7, det = 0.4, del = 0.3;
  const ParameterLoop gw{[&](double s) {
                           const double phi = 2 * kPi * s;
                           return Hamiltonian2::from_block(
                               0, {v0 * std::cos(phi), v0 * std::sin(phi), Complex{det, -del} / 2.0});
                         },
                         256};
  const Complex dz{det, -del};
  const Complex expected = kPi * (1.0 - dz / std::sqrt(4 * v0 * v0 + dz * dz));
  CHECK(mod_two_pi_distance(adiabatic_berry_phase(gw, Branch::Minus), expected) < 1e-8);

  const ParameterLoop back{[&](double s) { return gw.sampler(1.0 - s); }, 256};
  CHECK(mod_two_pi_distance(adiabatic_berry_phase(back, Branch::Minus), -expected) < 1e-8);

  // Encircling an exceptional point exchanges the branches.
  const ParameterLoop around{[](double s) {
                               return Hamiltonian2::from_block(
                                   0, {1, kI + 0.3 * std::exp(2 * kPi * kI * s), 0});
                             },
                             256};
  CHECK_THROWS_AS(adiabatic_berry_phase(around, Branch::Plus), Error);
}

TEST_CASE("adiabaticity criterion") {
  CHECK(adiabaticity_criterion([](double) { return Hamiltonian2::from_block(0, {0.2, 0, 1}); }, 0.0) == 0.0);

  std::vector<double> lr, lv;
  for (int k = 1; k <= 4; ++k) {
    const double z = std::pow(10.0, -k);
    const double v = 0.01;
    const double c = adiabaticity_criterion([&](double t) { return Hamiltonian2::from_block(0, {v * t, 0, z}); }, 0.0);
    CHECK(c == doctest::Approx(v / (4 * z * z)).epsilon(1e-6));
    lr.push_back(std::log(z));
    lv.push_back(std::log(c));
  }
  const double slope = (lv.back() - lv.front()) / (lr.back() - lr.front());
  CHECK(slope == doctest::Approx(-2.0).epsilon(0.01));

  const auto drive = [](double w) {
    return [w](double t) {
      return Hamiltonian2::from_omega(0, {2 * std::cos(w * t), 2 * std::sin(w * t), Complex{0.3, -0.5}});
    };
  };
  const double a = adiabaticity_criterion(drive(0.02), 1.0);
  const double b = adiabaticity_criterion(drive(0.01), 1.0);
  CHECK(a / b == doctest::Approx(2.0).epsilon(0.05));
}
