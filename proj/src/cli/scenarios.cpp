#include <cmath>
#include <limits>

#include "epmono/atom.hpp"
#include "epmono/cli/runner.hpp"
#include "epmono/kernels/potential.hpp"
#include "epmono/monopole.hpp"

namespace epmono::cli {

namespace {

using Row = std::vector<double>;

void put(Row& r, Complex c) {
  r.push_back(c.real());
  r.push_back(c.imag());
}

std::string fmt(double v) { return format_number(v); }
std::string fmt(Complex c) { return format_complex(c); }

ParamSpec real(std::string name, std::string def) { return {std::move(name), ParamKind::Real, std::move(def), {}}; }
ParamSpec cplx(std::string name, std::string def) { return {std::move(name), ParamKind::Complex, std::move(def), {}}; }
ParamSpec text(std::string name, std::string def, std::vector<std::string> choices) {
  return {std::move(name), ParamKind::Text, std::move(def), std::move(choices)};
}

// Atom parameters in the (ρ, z = Δ − ω, δ, ω, λ) coordinates of the figures.
AtomParams atom(const ParamSet& p) {
  const double omega = p.real("omega");
  return {p.real("z") + omega, p.real("delta"), p.real("lambda"), omega, 0.5 * p.real("rho")};
}

void check_atom(const ParamSet& p) {
  if (p.real("delta") < 0) throw ConfigError("delta", "must be non-negative");
  if (p.real("rho") < 0) throw ConfigError("rho", "must be non-negative");
  if (p.real("lambda") < 0) throw ConfigError("lambda", "must be non-negative");
}

std::vector<std::pair<std::string, std::string>> atom_derived(const AtomParams& a) {
  const RegimeReport r = regime_report(a);
  std::vector<std::pair<std::string, std::string>> d{
      {"Omega^2", fmt(a.omega_squared())},
      {"resonant", r.resonant ? "yes" : "no"},
      {"regime", to_string(r.regime)},
      {"omega0", fmt(r.omega0)},
  };
  if (r.monopole_kind != MonopoleKind::NotApplicable) d.emplace_back("monopole", to_string(r.monopole_kind));
  if (r.resonant) d.emplace_back("EP distance |rho - delta|", fmt(std::abs(a.rho() - a.delta)));
  if (r.regime == Regime::ExceptionalPoint) d.emplace_back("classification", "exceptional point, Omega = 0");
  return d;
}

MonopoleKind monopole_kind(const std::string& s) {
  if (s == "dirac") return MonopoleKind::Dirac;
  if (s == "complex-dirac") return MonopoleKind::ComplexDirac;
  if (s == "one-sheeted") return MonopoleKind::OneSheetedHyperbolic;
  return MonopoleKind::TwoSheetedHyperbolic;
}

MonopoleModel monopole(const ParamSet& p) {
  return {monopole_kind(p.text("kind")), p.complex("q"), p.real("epsilon")};
}

const std::vector<std::string> kMonopoleKinds{"dirac", "complex-dirac", "one-sheeted", "two-sheeted"};

kernels::PotentialParams kernel_params(const MonopoleModel& m) {
  kernels::PotentialParams k;
  k.hyperbolic = is_hyperbolic(m.kind);
  k.epsilon = m.kind == MonopoleKind::ComplexDirac ? m.epsilon : 0.0;
  k.q_eff = k.hyperbolic ? -kI * m.q : m.q;
  return k;
}

std::vector<Row> potential_rows(const kernels::PotentialParams& k, const std::vector<double>& x,
                                const std::vector<double>& y, const std::vector<double>& z) {
  const std::size_t n = x.size();
  std::vector<double> re(n), im(n);
  std::vector<std::uint8_t> mask(n);
  kernels::potential(k, {x.data(), y.data(), z.data(), n, re.data(), im.data(), mask.data()});
  std::vector<Row> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = {re[i], im[i], mask[i] ? 1.0 : 0.0};
  return rows;
}

Hamiltonian2 general_hamiltonian(const ParamSet& p) {
  return Hamiltonian2::from_omega(p.complex("lambda"), {p.complex("Ox"), p.complex("Oy"), p.complex("Oz")});
}

ComplexTriple initial_bloch(const ParamSet& p) { return {p.complex("n1"), p.complex("n2"), p.complex("n3")}; }

void check_unit(const ParamSet& p) {
  const ComplexTriple n = initial_bloch(p);
  if (std::abs(cdot(n, n) - 1.0) > 1e-8) throw ConfigError("n1", "initial Bloch vector must satisfy n·n = 1");
}

// Coupling behind a resonant (Ω₀, δ, regime) triple; negative when none exists.
double rho_squared(const ParamSet& p) {
  const double o = p.real("omega0"), d = p.real("delta");
  const std::string& r = p.text("regime");
  if (r == "coherent") return d * d + o * o;
  if (r == "incoherent") return d * d - o * o;
  return d * d;
}

AtomParams resonant_atom(const ParamSet& p, double rho, double lambda) {
  const double omega = p.real("omega");
  return {omega, p.real("delta"), lambda, omega, 0.5 * rho};
}

Regime regime_named(const std::string& s) {
  if (s == "coherent") return Regime::Coherent;
  if (s == "incoherent") return Regime::Incoherent;
  return Regime::ExceptionalPoint;
}

std::vector<Scenario> build() {
  std::vector<Scenario> all;

  {
    Scenario s;
    s.name = "eig";
    s.summary = "closed-form eigensystem of H = lambda0 I + (X,Y,Z)·sigma";
    s.params = {cplx("lambda0", "0"), cplx("X", "0"), cplx("Y", "0"), cplx("Z", "1")};
    s.columns = {{"lambda_plus", true}, {"lambda_minus", true}, {"R", true}, {"theta", true}, {"phi", true},
                 {"diabolic", false},   {"exceptional", false}};
    s.flagged = {ErrorKind::DegeneratePoint, ErrorKind::IndeterminatePhase};
    s.cell = [](const ParamSet& p) {
      const ComplexTriple r{p.complex("X"), p.complex("Y"), p.complex("Z")};
      const Complex l0 = p.complex("lambda0");
      const DegeneracyClass c = classify(r);
      Row row;
      if (c.label != DegeneracyLabel::NonDegenerate) {
        put(row, l0);
        put(row, l0);
        for (int i = 0; i < 6; ++i) row.push_back(0.0);
        row.push_back(c.label == DegeneracyLabel::DiabolicPoint ? 1.0 : 0.0);
        row.push_back(c.label == DegeneracyLabel::ExceptionalPoint ? 1.0 : 0.0);
        row.push_back(1.0);  // singular
        return row;
      }
      const EigenSystem2 e = eigensystem(Hamiltonian2::from_block(l0, r));
      put(row, e.lambda_plus);
      put(row, e.lambda_minus);
      put(row, e.R);
      put(row, e.theta);
      put(row, e.phi);
      row.push_back(0.0);
      row.push_back(0.0);
      return row;
    };
    s.derived = [](const ParamSet& p) {
      const DegeneracyClass c = classify({p.complex("X"), p.complex("Y"), p.complex("Z")});
      return std::vector<std::pair<std::string, std::string>>{{"label", to_string(c.label)}};
    };
    all.push_back(s);
  }

  {
    Scenario s;
    s.name = "evolve";
    s.summary = "Bloch vector n(t) for constant H = (lambda/2) I + (1/2) Omega·sigma";
    s.params = {cplx("lambda", "0"), cplx("Ox", "0"), cplx("Oy", "0"), cplx("Oz", "1"),
                cplx("n1", "0"),     cplx("n2", "0"), cplx("n3", "1"), real("t", "1")};
    s.columns = {{"n1", true}, {"n2", true}, {"n3", true}};
    s.check = check_unit;
    s.cell = [](const ParamSet& p) {
      const ComplexTriple n = bloch_closed_form(general_hamiltonian(p), initial_bloch(p), p.real("t"));
      Row row;
      put(row, n.x);
      put(row, n.y);
      put(row, n.z);
      return row;
    };
    s.derived = [](const ParamSet& p) {
      const RegimeTag r = regime_of(general_hamiltonian(p));
      return std::vector<std::pair<std::string, std::string>>{{"regime", to_string(r.regime)},
                                                              {"omega0", fmt(r.omega0)}};
    };
    all.push_back(s);
  }

  {
    Scenario s;
    s.name = "phase";
    s.summary = "geometric phase for constant H; model=ep uses Omega_e = (p, ip, 0), n_i = (1,0,0)";
    s.params = {text("model", "general", {"general", "ep"}),
                cplx("lambda", "0"),
                cplx("Ox", "0"),
                cplx("Oy", "0"),
                cplx("Oz", "1"),
                cplx("n1", "1"),
                cplx("n2", "0"),
                cplx("n3", "0"),
                cplx("p", "1+1i"),
                real("t", "2")};
    s.columns = {{"gamma", true}};
    s.flagged = {ErrorKind::OverlapVanishes};
    s.check = [](const ParamSet& p) {
      if (p.text("model") == "general") check_unit(p);
    };
    s.cell = [](const ParamSet& p) {
      Row row;
      if (p.text("model") == "ep") {
        const Complex q = p.complex("p");
        put(row, geometric_phase_constant(Hamiltonian2::from_omega(p.complex("lambda"), {q, kI * q, 0.0}),
                                          {1.0, 0.0, 0.0}, p.real("t")));
      } else {
        put(row, geometric_phase_constant(general_hamiltonian(p), initial_bloch(p), p.real("t")));
      }
      return row;
    };
    all.push_back(s);
  }

  {
    Scenario s;
    s.name = "monopole-field";
    s.summary = "complex monopole potential Phi on real (x, y, z) points";
    s.params = {text("kind", "complex-dirac", kMonopoleKinds), cplx("q", "0.5"), real("epsilon", "1"),
                real("x", "0"), real("y", "0"), real("z", "0")};
    s.columns = {{"Phi", true}};
    s.flagged = {ErrorKind::OnSingularSet};
    s.check = [](const ParamSet& p) {
      if (p.real("epsilon") < 0) throw ConfigError("epsilon", "must be non-negative");
    };
    s.cell = [](const ParamSet& p) {
      return potential_rows(kernel_params(monopole(p)), {p.real("x")}, {p.real("y")}, {p.real("z")}).front();
    };
    s.batch = [](const std::vector<ParamSet>& cells) {
      std::vector<double> x(cells.size()), y(cells.size()), z(cells.size());
      for (std::size_t i = 0; i < cells.size(); ++i) {
        x[i] = cells[i].real("x");
        y[i] = cells[i].real("y");
        z[i] = cells[i].real("z");
      }
      return potential_rows(kernel_params(monopole(cells.front())), x, y, z);
    };
    s.batch_axes = {"x", "y", "z"};
    s.derived = [](const ParamSet& p) {
      return std::vector<std::pair<std::string, std::string>>{
          {"kernel", kernels::potential_backend()}, {"monopole", to_string(monopole(p).kind)}};
    };
    all.push_back(s);
  }

  {
    Scenario s;
    s.name = "contour";
    s.summary = "loop integral of A around the horizontal circle (rho, z), with its closed form";
    s.params = {text("kind", "complex-dirac", kMonopoleKinds), cplx("q", "0.5"), real("epsilon", "0"),
                real("rho", "1"), real("z", "0")};
    s.columns = {{"gamma", true}, {"gamma_closed", true}};
    s.flagged = {ErrorKind::SingularContour, ErrorKind::OnSingularSet};
    s.cell = [](const ParamSet& p) {
      const MonopoleModel m = monopole(p);
      Row row;
      put(row, contour_phase(circle_contour(p.real("rho"), p.real("z")), m));
      put(row, circle_phase_closed(p.real("rho"), p.real("z"), m));
      return row;
    };
    all.push_back(s);
  }

  const std::vector<ParamSpec> atom_params{real("rho", "1"), real("z", "0"), real("delta", "0"),
                                           real("omega", "1"), real("lambda", "0")};

  {
    Scenario s;
    s.name = "atom-cyclic";
    s.summary = "cyclic geometric phase of the driven atom (aa = gamma_minus + 2 pi)";
    s.params = atom_params;
    s.params.push_back(text("branch", "aa", {"aa", "plus", "minus"}));
    s.columns = {{"gamma", true}};
    s.flagged = {ErrorKind::DegeneratePoint};
    s.check = check_atom;
    s.cell = [](const ParamSet& p) {
      const AtomParams a = atom(p);
      const std::string& b = p.text("branch");
      Row row;
      put(row, b == "aa" ? aa_phase(a) : cyclic_phase(a, b == "plus" ? Branch::Plus : Branch::Minus));
      return row;
    };
    s.derived = [](const ParamSet& p) { return atom_derived(atom(p)); };
    all.push_back(s);
  }

  {
    Scenario s;
    s.name = "atom-noncyclic";
    s.summary = "non-cyclic geometric phase of the driven atom from the north pole";
    s.params = atom_params;
    s.params.push_back(real("t", "1"));
    s.params.push_back(text("approach", "none", {"none", "rho+", "rho-", "z+", "z-"}));
    s.columns = {{"gamma", true}};
    s.flagged = {ErrorKind::UndefinedAtPulse, ErrorKind::DegeneratePoint};
    s.check = check_atom;
    s.cell = [](const ParamSet& p) {
      const AtomParams a = atom(p);
      const std::string& ap = p.text("approach");
      const double t = p.real("t");
      Row row;
      if (ap == "none") {
        put(row, noncyclic_phase(a, t));
      } else {
        const ApproachAxis axis = ap[0] == 'r' ? ApproachAxis::Rho : ApproachAxis::Detuning;
        put(row, noncyclic_side_limit(a, t, axis, ap.back() == '+' ? 1 : -1));
      }
      return row;
    };
    s.derived = [](const ParamSet& p) { return atom_derived(atom(p)); };
    all.push_back(s);
  }

  {
    Scenario s;
    s.name = "tunneling";
    s.summary = "resonant tunneling probabilities and Rabi function from (omega0, delta, lambda)";
    s.params = {real("omega0", "1"), real("delta", "0"), real("lambda", "0"), real("omega", "1"),
                text("regime", "coherent", {"coherent", "incoherent", "ep"}), real("t", "0")};
    s.columns = {{"P_upup", false}, {"P_downup", false}, {"P", false}, {"formal", false}};
    s.check = [](const ParamSet& p) {
      if (p.real("delta") < 0) throw ConfigError("delta", "must be non-negative");
      if (p.real("omega0") < 0) throw ConfigError("omega0", "must be non-negative");
      if (p.real("lambda") < p.real("delta")) throw ConfigError("lambda", "must be at least delta");
    };
    s.cell = [](const ParamSet& p) {
      const double r2 = rho_squared(p), t = p.real("t");
      if (r2 < 0) {
        // no real coupling: the closed-form Rabi function only
        return Row{0.0, 0.0,
                   rabi_closed(regime_named(p.text("regime")), p.real("omega0"), p.real("delta"), p.real("lambda"), t),
                   1.0};
      }
      const AtomParams a = resonant_atom(p, std::sqrt(r2), p.real("lambda"));
      const TunnelingProbabilities pr = tunneling_probabilities(a, t);
      return Row{pr.up_up, pr.down_up, rabi_function(a, t), 0.0};
    };
    s.derived = [](const ParamSet& p) {
      const double r2 = rho_squared(p);
      std::vector<std::pair<std::string, std::string>> d{{"rho^2", fmt(r2)}};
      if (r2 >= 0) {
        const auto more = atom_derived(resonant_atom(p, std::sqrt(r2), p.real("lambda")));
        d.insert(d.end(), more.begin(), more.end());
      } else {
        d.emplace_back("note", "no real coupling for this (omega0, delta); Rabi function evaluated formally");
      }
      return d;
    };
    all.push_back(s);
  }

  {
    Scenario s;
    s.name = "pulses";
    s.summary = "jump times of Re gamma at resonance";
    s.params = {real("omega0", "2"), real("delta", "0.5"), real("omega", "1"),
                text("regime", "coherent", {"coherent", "incoherent", "ep"}), real("t_max", "20")};
    s.columns = {{"n", false}, {"time", false}, {"step", false}, {"duration", false}};
    s.grid_allowed = false;
    s.check = [](const ParamSet& p) {
      if (rho_squared(p) < 0) throw ConfigError("omega0", "incoherent regime needs omega0 < delta");
    };
    s.table = [](const ParamSet& p) {
      // jump times do not involve lambda
      const AtomParams a = resonant_atom(p, std::sqrt(rho_squared(p)), p.real("delta"));
      const PulseTimes pt = phase_pulse_times(a, p.real("t_max"));
      const double dur = std::isfinite(pt.duration) ? pt.duration : 0.0;
      std::vector<Row> rows;
      for (std::size_t i = 0; i < pt.jumps.size(); ++i)
        rows.push_back({static_cast<double>(i), pt.jumps[i].time, pt.jumps[i].step, dur});
      return rows;
    };
    s.derived = [](const ParamSet& p) {
      const double r2 = rho_squared(p);
      return r2 < 0 ? std::vector<std::pair<std::string, std::string>>{{"rho^2", fmt(r2)}}
                    : atom_derived(resonant_atom(p, std::sqrt(r2), p.real("delta")));
    };
    all.push_back(s);
  }

  {
    Scenario s;
    s.name = "sweep";
    s.summary = "one closed-form atom quantity over a parameter grid";
    s.params = atom_params;
    s.params.push_back(real("t", "1"));
    s.params.push_back(text("target", "aa-phase",
                            {"aa-phase", "cyclic-plus", "cyclic-minus", "adiabatic-phase", "noncyclic-phase",
                             "resonant-phase", "rabi", "p-upup", "p-downup"}));
    s.columns = {{"value", true}};
    s.flagged = {ErrorKind::DegeneratePoint, ErrorKind::UndefinedAtPulse};
    s.check = check_atom;
    s.cell = [](const ParamSet& p) {
      const AtomParams a = atom(p);
      const std::string& target = p.text("target");
      const double t = p.real("t");
      Complex v;
      if (target == "aa-phase") v = aa_phase(a);
      else if (target == "cyclic-plus") v = cyclic_phase(a, Branch::Plus);
      else if (target == "cyclic-minus") v = cyclic_phase(a, Branch::Minus);
      else if (target == "adiabatic-phase") v = adiabatic_limit_phase(a);
      else if (target == "noncyclic-phase") v = noncyclic_phase(a, t);
      else if (target == "resonant-phase") v = coherent_incoherent_phase(a, t);
      else if (target == "rabi") v = rabi_function(a, t);
      else if (target == "p-upup") v = tunneling_probabilities(a, t).up_up;
      else v = tunneling_probabilities(a, t).down_up;
      Row row;
      put(row, v);
      return row;
    };
    s.derived = [](const ParamSet& p) { return atom_derived(atom(p)); };
    all.push_back(s);
  }

  return all;
}

}  // namespace

const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> all = build();
  return all;
}

const Scenario* find_scenario(const std::string& name) {
  for (const Scenario& s : scenarios())
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace epmono::cli
