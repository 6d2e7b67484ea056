// Copyright 2026 The isinggeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "isinggeo/chain_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace isinggeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTimeEps = 1e-12;
constexpr int kMaxDecomposeSites = 8;

using Index = std::size_t;

int bit_of(int site, int n) { return n - site; }

bool spin_down(Index state, int site, int n) { return ((state >> bit_of(site, n)) & 1U) != 0; }

double frobenius(const Matrix& m, int n) { return std::sqrt(m.squaredNorm() / std::ldexp(1.0, n - 2)); }

// Diagonal of the coupling part: sum over bonds of 2 z_a z_b with z = +-1/2.
std::vector<double> coupling_diagonal(const std::vector<Bond>& bonds, int n) {
  const Index dim = Index{1} << n;
  std::vector<double> e(dim, 0.0);
  for (Index i = 0; i < dim; ++i) {
    double acc = 0.0;
    for (const auto& [a, b] : bonds) acc += spin_down(i, a, n) == spin_down(i, b, n) ? 0.5 : -0.5;
    e[i] = acc;
  }
  return e;
}

Eigen::Matrix2cd rotation(Axis axis, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd r;
  switch (axis) {
    case Axis::x: r << c, -i * s, -i * s, c; break;
    case Axis::y: r << c, -s, s, c; break;
    case Axis::z: r << std::exp(-i * (angle / 2)), 0.0, 0.0, std::exp(i * (angle / 2)); break;
  }
  return r;
}

void conjugate_site(Matrix& rho, int site, int n, const Eigen::Matrix2cd& r) {
  const Index dim = Index{1} << n;
  const Index mask = Index{1} << bit_of(site, n);
  const auto d = static_cast<Eigen::Index>(dim);
  for (Index i0 = 0; i0 < dim; ++i0) {
    if (i0 & mask) continue;
    const auto a = static_cast<Eigen::Index>(i0);
    const auto b = static_cast<Eigen::Index>(i0 | mask);
    for (Eigen::Index c = 0; c < d; ++c) {
      const Complex x0 = rho(a, c);
      const Complex x1 = rho(b, c);
      rho(a, c) = r(0, 0) * x0 + r(0, 1) * x1;
      rho(b, c) = r(1, 0) * x0 + r(1, 1) * x1;
    }
  }
  const Eigen::Matrix2cd rc = r.conjugate();
  for (Index j0 = 0; j0 < dim; ++j0) {
    if (j0 & mask) continue;
    const auto a = static_cast<Eigen::Index>(j0);
    const auto b = static_cast<Eigen::Index>(j0 | mask);
    for (Eigen::Index c = 0; c < d; ++c) {
      const Complex x0 = rho(c, a);
      const Complex x1 = rho(c, b);
      rho(c, a) = x0 * rc(0, 0) + x1 * rc(0, 1);
      rho(c, b) = x0 * rc(1, 0) + x1 * rc(1, 1);
    }
  }
}

void apply_diagonal_phase(Matrix& rho, const std::vector<double>& e, double t) {
  const auto d = rho.rows();
  std::vector<Complex> ph(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) ph[i] = std::polar(1.0, -e[i] * t);
  for (Eigen::Index c = 0; c < d; ++c) {
    const Complex pc = std::conj(ph[static_cast<std::size_t>(c)]);
    for (Eigen::Index r = 0; r < d; ++r) rho(r, c) *= ph[static_cast<std::size_t>(r)] * pc;
  }
}

// States grouped by the z pattern of the undriven spins, which the drive
// leaves invariant. Within a block, local index j enumerates driven patterns.
struct BlockLayout {
  Index block_size = 0;
  std::vector<std::vector<Index>> indices;
  std::vector<std::vector<double>> energies;
  Matrix drive;  // sum_s I_sy on the driven subspace
};

BlockLayout make_layout(int n, const std::vector<int>& driven, const std::vector<double>& diag) {
  const int d = static_cast<int>(driven.size());
  BlockLayout layout;
  layout.block_size = Index{1} << d;
  Index driven_mask = 0;
  for (int s : driven) driven_mask |= Index{1} << bit_of(s, n);
  const Index dim = Index{1} << n;
  for (Index base = 0; base < dim; ++base) {
    if (base & driven_mask) continue;
    std::vector<Index> idx(layout.block_size);
    std::vector<double> en(layout.block_size);
    for (Index j = 0; j < layout.block_size; ++j) {
      Index state = base;
      for (int q = 0; q < d; ++q) {
        if ((j >> (d - 1 - q)) & 1U) state |= Index{1} << bit_of(driven[static_cast<std::size_t>(q)], n);
      }
      idx[j] = state;
      en[j] = diag[state];
    }
    layout.indices.push_back(std::move(idx));
    layout.energies.push_back(std::move(en));
  }
  const auto m = static_cast<Eigen::Index>(layout.block_size);
  layout.drive = Matrix::Zero(m, m);
  for (Index j = 0; j < layout.block_size; ++j) {
    for (int q = 0; q < d; ++q) {
      const Index bit = Index{1} << (d - 1 - q);
      // sigma_y |0> = i |1>, sigma_y |1> = -i |0>.
      const Complex v = (j & bit) ? Complex(0.0, -0.5) : Complex(0.0, 0.5);
      layout.drive(static_cast<Eigen::Index>(j ^ bit), static_cast<Eigen::Index>(j)) += v;
    }
  }
  return layout;
}

Matrix block_exponential(const std::vector<double>& energies, const Matrix& drive, double u, double dt) {
  Matrix h = u * drive;
  for (std::size_t j = 0; j < energies.size(); ++j) h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += energies[j];
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw NumericError("Hermitian eigensolver failed");
  Eigen::VectorXcd ph(es.eigenvalues().size());
  for (Eigen::Index j = 0; j < ph.size(); ++j) ph(j) = std::polar(1.0, -es.eigenvalues()(j) * dt);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

void conjugate_blocks(Matrix& rho, const BlockLayout& layout, const std::vector<Matrix>& unitaries) {
  const Eigen::Index dim = rho.rows();
  const auto m = static_cast<Eigen::Index>(layout.block_size);
  Matrix rows(m, dim);
  for (std::size_t b = 0; b < layout.indices.size(); ++b) {
    const auto& idx = layout.indices[b];
    for (Eigen::Index j = 0; j < m; ++j) rows.row(j) = rho.row(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]));
    rows = (unitaries[b] * rows).eval();
    for (Eigen::Index j = 0; j < m; ++j) rho.row(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)])) = rows.row(j);
  }
  Matrix cols(dim, m);
  for (std::size_t b = 0; b < layout.indices.size(); ++b) {
    const auto& idx = layout.indices[b];
    for (Eigen::Index j = 0; j < m; ++j) cols.col(j) = rho.col(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]));
    cols = (cols * unitaries[b].adjoint()).eval();
    for (Eigen::Index j = 0; j < m; ++j) rho.col(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)])) = cols.col(j);
  }
}

class Engine {
 public:
  Engine(const ChainSpec& chain, Matrix rho, const SimulationOptions& options)
      : chain_(chain), options_(options), rho_(std::move(rho)) {
    if (options_.slice_refinement < 1) throw std::invalid_argument("slice refinement must be >= 1");
    if (options_.report_dt < 0.0) throw std::invalid_argument("report spacing must be non-negative");
    norm0_ = frobenius(rho_, chain_.n());
    record(true);
  }

  void hard(const HardPulse& p) {
    const auto [axis, sign] = axis_components(p.axis);
    const Eigen::Matrix2cd r = rotation(axis, sign * p.angle);
    for (int s : p.spins) conjugate_site(rho_, s, chain_.n(), r);
    check_norm();
  }

  void delay(double duration, const std::vector<Bond>& bonds) {
    const std::vector<double> e = coupling_diagonal(bonds, chain_.n());
    double remaining = duration;
    while (remaining > kTimeEps) {
      double step = remaining;
      if (reporting()) step = std::min(step, std::max(next_report_ - time_, 0.0));
      if (step <= kTimeEps) step = std::min(remaining, options_.report_dt);
      apply_diagonal_phase(rho_, e, step);
      time_ += step;
      remaining -= step;
      record(false);
    }
    check_norm();
  }

  void shaped(const ControlPulse& pulse, const HamiltonianSpec& h) {
    if (h.driven.empty()) throw std::invalid_argument("shaped interval without driven spins");
    const std::vector<double> diag = coupling_diagonal(h.bonds, chain_.n());
    const BlockLayout layout = make_layout(chain_.n(), h.driven, diag);
    const Eigen::Index m = static_cast<Eigen::Index>(layout.block_size);
    std::vector<Matrix> acc(layout.indices.size(), Matrix::Identity(m, m));
    bool pending = false;
    auto flush = [&] {
      if (!pending) return;
      conjugate_blocks(rho_, layout, acc);
      for (auto& a : acc) a.setIdentity(m, m);
      pending = false;
    };
    const auto times = pulse.times();
    const int refine = options_.slice_refinement;
    double cached_u = std::nan("");
    double cached_dt = std::nan("");
    std::map<std::vector<double>, Matrix> cache;
    const double t0 = time_;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
      const double dt = (times[k + 1] - times[k]) / refine;
      for (int r = 0; r < refine; ++r) {
        const double mid = times[k] + (r + 0.5) * dt;
        const double u = pulse.at(mid);
        if (!std::isfinite(u)) throw NumericError("non-finite pulse sample");
        if (u != cached_u || dt != cached_dt) {
          cache.clear();
          cached_u = u;
          cached_dt = dt;
        }
        for (std::size_t b = 0; b < layout.indices.size(); ++b) {
          auto it = cache.find(layout.energies[b]);
          if (it == cache.end()) {
            it = cache.emplace(layout.energies[b], block_exponential(layout.energies[b], layout.drive, u, dt)).first;
          }
          acc[b] = (it->second * acc[b]).eval();
        }
        pending = true;
        time_ = t0 + times[k] + (r + 1) * dt;
        if (reporting() && time_ >= next_report_ - kTimeEps) {
          flush();
          record(false);
        }
      }
    }
    time_ = t0 + pulse.duration();
    flush();
    check_norm();
  }

  SimulationResult finish() {
    record(true);
    SimulationResult res;
    res.n = chain_.n();
    res.duration = time_;
    res.initial_norm = norm0_;
    res.norm_drift = drift_;
    res.profile = std::move(profile_);
    if (options_.decompose && chain_.n() <= kMaxDecomposeSites) res.final_operator = decompose(rho_, chain_.n());
    res.final = std::move(rho_);
    return res;
  }

 private:
  bool reporting() const { return options_.report_dt > 0.0; }

  void check_norm() {
    const double nrm = frobenius(rho_, chain_.n());
    if (!std::isfinite(nrm)) throw NumericError("propagated operator became non-finite");
    drift_ = std::max(drift_, std::abs(nrm - norm0_));
  }

  void record(bool force) {
    if (!reporting()) return;
    if (!force && time_ < next_report_ - kTimeEps) return;
    if (!profile_.empty() && std::abs(profile_.back().time - time_) <= kTimeEps) {
      if (!force) return;
      profile_.pop_back();
    }
    ProfileSample s;
    s.time = time_;
    for (const auto& b : options_.basis) s.values.push_back(expectation(rho_, b, chain_.n()));
    profile_.push_back(std::move(s));
    while (next_report_ <= time_ + kTimeEps) next_report_ += options_.report_dt;
    check_norm();
  }

  ChainSpec chain_;
  SimulationOptions options_;
  Matrix rho_;
  double time_ = 0.0;
  double next_report_ = 0.0;
  double norm0_ = 0.0;
  double drift_ = 0.0;
  std::vector<ProfileSample> profile_;
};

std::vector<Bond> bonds_without(int n, const std::vector<int>& decoupled) {
  std::vector<Bond> bonds;
  for (int m = 1; m < n; ++m) {
    const bool off = std::find(decoupled.begin(), decoupled.end(), m) != decoupled.end() ||
                     std::find(decoupled.begin(), decoupled.end(), m + 1) != decoupled.end();
    if (!off) bonds.emplace_back(m, m + 1);
  }
  return bonds;
}

void check_operator(const OperatorSum& op, const ChainSpec& chain) {
  if (op.max_site() > chain.n()) throw std::out_of_range("operator does not fit on the chain");
}

}  // namespace

HamiltonianSpec HamiltonianSpec::coupling(int n, const std::vector<int>& decoupled, std::vector<int> driven) {
  return {bonds_without(n, decoupled), std::move(driven)};
}

OperatorSum HamiltonianSpec::at(double u) const {
  OperatorSum h;
  for (const auto& [a, b] : bonds) h += OperatorSum::spin(a, Axis::z, 2.0) * OperatorSum::spin(b, Axis::z);
  for (int s : driven) h += OperatorSum::spin(s, Axis::y, u);
  return h;
}

SimulationResult propagate(const PulseSequence& seq, const Matrix& initial, const SimulationOptions& options) {
  const ChainSpec& chain = seq.chain();
  const auto dim = static_cast<Eigen::Index>(chain.dim());
  if (initial.rows() != dim || initial.cols() != dim) throw std::invalid_argument("initial operator size mismatch");
  const int n = chain.n();
  Engine engine(chain, initial, options);
  for (const auto& e : seq.elements()) {
    if (const auto* h = std::get_if<HardPulse>(&e)) {
      engine.hard(*h);
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      engine.delay(d->duration, bonds_without(n, d->decoupled));
    } else if (const auto* s = std::get_if<ShapedInterval>(&e)) {
      engine.shaped(s->pulse, HamiltonianSpec::coupling(n, s->decoupled, s->driven));
    }
  }
  return engine.finish();
}

SimulationResult propagate(const PulseSequence& seq, const OperatorSum& initial, const SimulationOptions& options) {
  check_operator(initial, seq.chain());
  return propagate(seq, matrix_of(initial, seq.chain()), options);
}

SimulationResult propagate_hamiltonian(const ChainSpec& chain, const HamiltonianSpec& h, const ControlPulse& pulse,
                                       const OperatorSum& initial, const SimulationOptions& options) {
  check_operator(initial, chain);
  for (const auto& [a, b] : h.bonds) {
    if (a < 1 || b > chain.n() || b != a + 1) throw std::invalid_argument("bond outside the chain");
  }
  for (int s : h.driven) {
    if (s < 1 || s > chain.n()) throw std::invalid_argument("driven spin outside the chain");
  }
  Engine engine(chain, matrix_of(initial, chain), options);
  engine.shaped(pulse, h);
  return engine.finish();
}

double fidelity(const Matrix& a, const Matrix& b, int n) {
  const double na = frobenius(a, n);
  const double nb = frobenius(b, n);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return inner_product(a, b, n) / (na * nb);
}

double expectation(const Matrix& op, const OperatorSum& b, int n) {
  const Index dim = Index{1} << n;
  if (static_cast<Index>(op.rows()) != dim) throw std::invalid_argument("operator size mismatch");
  Complex acc = 0.0;
  for (const auto& term : b.terms()) {
    if (term.max_site() > n) throw std::out_of_range("operator does not fit on the chain");
    Index flip = 0;
    for (const auto& o : term.ops()) {
      if (o.axis != Axis::z) flip |= Index{1} << bit_of(o.site, n);
    }
    Complex sum = 0.0;
    for (Index i = 0; i < dim; ++i) {
      Complex v = term.coefficient();
      for (const auto& o : term.ops()) {
        const bool down = spin_down(i, o.site, n);
        switch (o.axis) {
          case Axis::x: v *= 0.5; break;
          case Axis::y: v *= down ? Complex(0.0, 0.5) : Complex(0.0, -0.5); break;
          case Axis::z: v *= down ? -0.5 : 0.5; break;
        }
      }
      sum += std::conj(v) * op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i ^ flip));
    }
    acc += sum;
  }
  return acc.real() / std::ldexp(1.0, n - 2);
}

double fidelity(const SimulationResult& result, const OperatorSum& target) {
  const double nt = norm(target);
  const double nr = frobenius(result.final, result.n);
  if (nt == 0.0 || nr == 0.0) return 0.0;
  return expectation(result.final, target, result.n) / (nt * nr);
}

std::vector<ProfileSample> expectation_profile(const PulseSequence& seq, const OperatorSum& initial,
                                               const std::vector<OperatorSum>& basis, double dt_report) {
  if (!(dt_report > 0.0)) throw std::invalid_argument("report spacing must be positive");
  SimulationOptions opt;
  opt.report_dt = dt_report;
  opt.basis = basis;
  return propagate(seq, initial, opt).profile;
}

CommutingSplit commuting_split(int k) {
  if (k < 1) throw std::invalid_argument("split index must be >= 1");
  return {HamiltonianSpec{{{k + 2, k + 3}, {k + 3, k + 4}}, {k + 3}},
          HamiltonianSpec{{{k, k + 1}, {k + 1, k + 2}}, {k + 1}}};
}

double verify_commuting_split(int k, const ChainSpec& chain, const std::vector<double>& u_samples, bool perturb) {
  if (k + 4 > chain.n()) throw std::invalid_argument("split needs k + 4 <= n");
  const CommutingSplit split = commuting_split(k);
  double worst = 0.0;
  for (double u : u_samples) {
    const OperatorSum a = split.a.at(u);
    OperatorSum b = split.b.at(u);
    if (perturb) b += OperatorSum::spin(k + 2, Axis::x);
    worst = std::max(worst, norm(commutator(a, b)));
  }
  return worst;
}

ComparisonReport compare_methods(int n, const GeodesicSet& solutions, double j_hz, bool simulate) {
  const ChainSpec chain(n, j_hz);
  ComparisonReport rep;
  rep.n = n;
  rep.j_hz = j_hz;
  rep.tau1 = solutions.first.tau;
  rep.tau2 = solutions.intermediate.tau;
  rep.step_ratio = rep.tau2 / (kPi / 2);
  rep.conventional_total = conventional_duration(n);
  rep.geodesic_total = n >= 4 ? geodesic_order_duration(n, rep.tau1, rep.tau2) : std::nan("");
  rep.approximate_total = kPi * (n - 1) * (std::numbers::sqrt2 - 1);
  auto add = [&](std::string family, std::string method, const PulseSequence& seq, const OperatorSum& target) {
    MethodRow row{std::move(family), std::move(method), seq.duration(), chain.seconds(seq.duration()), std::nullopt};
    if (simulate) row.fidelity = fidelity(propagate(seq, seq.transfers().front().initial), target);
    rep.rows.push_back(std::move(row));
  };
  const PulseSequence conv = conventional_cascade(n, j_hz);
  add("order", "conventional", conv, conv.transfers().front().target);
  PulseSequence local = conv;
  std::vector<int> head;
  for (int m = 1; m <= n - 1; ++m) head.push_back(m);
  local.hard(head, RotationAxis::px, kPi / 2).rename("conventional-z");
  OperatorSum zform = OperatorSum::identity(std::ldexp(1.0, n - 1));
  for (int m = 1; m <= n; ++m) zform = zform * OperatorSum::spin(m, Axis::z);
  add("order", "conventional+local-x", local, zform);
  if (n >= 4) {
    const PulseSequence geo = geodesic_order_sequence(n, solutions, j_hz);
    add("order", "geodesic", geo, geo.transfers().front().target);
  }
  const PulseSequence inept = inept_cascade(n, j_hz);
  add("coherence", "inept", inept, inept.transfers().front().target);
  if (n >= 5) {
    const PulseSequence lam = lambda_transfer(n, solutions.intermediate, j_hz);
    add("coherence", "lambda", lam, lam.transfers().back().target);
  }
  return rep;
}

}  // namespace isinggeo
