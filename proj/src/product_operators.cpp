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

#include "isinggeo/product_operators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace isinggeo {

namespace {

constexpr double kZeroTolerance = 1e-14;

// Product of two single-spin operators I_a I_b = delta_ab/4 + (i/2) eps_abc I_c.
// Returns the scalar factor and the resulting axis (nullopt axis = identity).
struct SiteProduct {
  Complex factor;
  bool identity;
  Axis axis;
};

SiteProduct multiply_site(Axis a, Axis b) {
  if (a == b) return {Complex{0.25, 0.0}, true, Axis::x};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const int ic = 6 - ia - ib;
  // (a, b) cyclic in x -> y -> z -> x gives +1.
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {Complex{0.0, cyclic ? 0.5 : -0.5}, false, static_cast<Axis>(ic)};
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(v);
}

}  // namespace

char axis_char(Axis a) {
  switch (a) {
    case Axis::x: return 'x';
    case Axis::y: return 'y';
    case Axis::z: return 'z';
  }
  return '?';
}

ChainSpec::ChainSpec(int n, double j_hz) : n_(n), j_hz_(j_hz) {
  if (n < 2) throw std::invalid_argument("chain needs at least 2 spins, got " + std::to_string(n));
  if (n > kMaxSites) {
    throw std::out_of_range("chain length " + std::to_string(n) + " exceeds the supported maximum of " +
                            std::to_string(kMaxSites));
  }
  if (!(j_hz > 0.0) || !std::isfinite(j_hz)) throw std::invalid_argument("coupling J must be positive");
}

double ChainSpec::seconds(double t_units) const { return t_units / (std::numbers::pi * j_hz_); }

PauliTerm::PauliTerm(Complex coefficient, std::vector<SiteOp> ops)
    : coefficient_(coefficient), ops_(std::move(ops)) {
  std::sort(ops_.begin(), ops_.end());
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].site < 1) throw std::out_of_range("site indices are 1-based");
    if (i > 0 && ops_[i].site == ops_[i - 1].site) {
      throw std::invalid_argument("PauliTerm lists site " + std::to_string(ops_[i].site) +
                                  " twice; multiply terms instead");
    }
  }
}

PauliTerm PauliTerm::with_coefficient(Complex c) const {
  PauliTerm t = *this;
  t.coefficient_ = c;
  return t;
}

PauliTerm operator*(const PauliTerm& a, const PauliTerm& b) {
  Complex c = a.coefficient_ * b.coefficient_;
  std::vector<SiteOp> out;
  out.reserve(a.ops_.size() + b.ops_.size());
  auto ia = a.ops_.begin();
  auto ib = b.ops_.begin();
  while (ia != a.ops_.end() || ib != b.ops_.end()) {
    if (ib == b.ops_.end() || (ia != a.ops_.end() && ia->site < ib->site)) {
      out.push_back(*ia++);
    } else if (ia == a.ops_.end() || ib->site < ia->site) {
      out.push_back(*ib++);
    } else {
      const SiteProduct p = multiply_site(ia->axis, ib->axis);
      c *= p.factor;
      if (!p.identity) out.push_back({ia->site, p.axis});
      ++ia;
      ++ib;
    }
  }
  PauliTerm t;
  t.coefficient_ = c;
  t.ops_ = std::move(out);
  return t;
}

OperatorSum::OperatorSum(PauliTerm term) {
  terms_.push_back(std::move(term));
  canonicalize();
}

OperatorSum::OperatorSum(std::vector<PauliTerm> terms) : terms_(std::move(terms)) { canonicalize(); }

OperatorSum OperatorSum::identity(Complex c) { return OperatorSum(PauliTerm(c)); }

OperatorSum OperatorSum::spin(int site, Axis axis, Complex c) {
  return OperatorSum(PauliTerm(c, {SiteOp{site, axis}}));
}

void OperatorSum::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.ops() < b.ops(); });
  std::vector<PauliTerm> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().ops() == t.ops()) {
      merged.back() = merged.back().with_coefficient(merged.back().coefficient() + t.coefficient());
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const PauliTerm& t) { return std::abs(t.coefficient()) <= kZeroTolerance; });
  terms_ = std::move(merged);
}

int OperatorSum::max_site() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.max_site());
  return m;
}

bool OperatorSum::is_hermitian() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const PauliTerm& t) { return t.coefficient().imag() == 0.0; });
}

OperatorSum OperatorSum::adjoint() const {
  OperatorSum r = *this;
  for (auto& t : r.terms_) t = t.with_coefficient(std::conj(t.coefficient()));
  return r;
}

OperatorSum OperatorSum::relabeled(const std::vector<int>& site_map) const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<SiteOp> ops;
    for (const auto& op : t.ops()) {
      if (op.site >= static_cast<int>(site_map.size())) throw std::out_of_range("site map too short");
      ops.push_back({site_map[op.site], op.axis});
    }
    out.emplace_back(t.coefficient(), std::move(ops));
  }
  return OperatorSum(std::move(out));
}

OperatorSum OperatorSum::translated(int offset) const {
  std::vector<int> map(static_cast<std::size_t>(max_site() + 1));
  for (std::size_t s = 0; s < map.size(); ++s) map[s] = static_cast<int>(s) + offset;
  return relabeled(map);
}

std::string OperatorSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const Complex c = t.coefficient();
    std::string coef;
    bool negative = false;
    if (c.imag() == 0.0) {
      negative = c.real() < 0.0;
      const double mag = std::abs(c.real());
      if (mag != 1.0 || t.ops().empty()) coef = format_double(mag);
    } else if (c.real() == 0.0) {
      negative = c.imag() < 0.0;
      const double mag = std::abs(c.imag());
      coef = mag == 1.0 ? "i" : format_double(mag) + "*i";
    } else {
      coef = "(" + format_double(c.real()) + (c.imag() < 0 ? "-" : "+") + format_double(std::abs(c.imag())) +
             "*i)";
    }
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (!coef.empty()) {
      os << coef;
      need_star = true;
    }
    for (const auto& op : t.ops()) {
      if (need_star) os << '*';
      os << 'I' << op.site << axis_char(op.axis);
      need_star = true;
    }
  }
  return os.str();
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  canonicalize();
  return *this;
}

OperatorSum& OperatorSum::operator-=(const OperatorSum& o) { return *this += o * Complex{-1.0, 0.0}; }

OperatorSum& OperatorSum::operator*=(Complex c) {
  for (auto& t : terms_) t = t.with_coefficient(t.coefficient() * c);
  canonicalize();
  return *this;
}

OperatorSum operator*(const OperatorSum& a, const OperatorSum& b) {
  std::vector<PauliTerm> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) out.push_back(ta * tb);
  return OperatorSum(std::move(out));
}

bool operator==(const OperatorSum& a, const OperatorSum& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].ops() != b.terms_[i].ops()) return false;
    if (std::abs(a.terms_[i].coefficient() - b.terms_[i].coefficient()) > kZeroTolerance) return false;
  }
  return true;
}

Matrix matrix_of(const PauliTerm& term, const ChainSpec& chain) {
  const int n = chain.n();
  if (term.max_site() > n) {
    throw std::out_of_range("operator touches site " + std::to_string(term.max_site()) + " on a " +
                            std::to_string(n) + "-spin chain");
  }
  const std::size_t dim = chain.dim();
  std::size_t flip = 0;
  for (const auto& op : term.ops()) {
    if (op.axis != Axis::z) flip |= std::size_t{1} << (n - op.site);
  }
  const Complex scale = term.coefficient() * std::pow(0.5, term.weight());
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    Complex phase = scale;
    for (const auto& op : term.ops()) {
      const bool one = (col >> (n - op.site)) & 1U;
      switch (op.axis) {
        case Axis::x: break;
        case Axis::y: phase *= one ? Complex{0.0, -1.0} : Complex{0.0, 1.0}; break;
        case Axis::z:
          if (one) phase = -phase;
          break;
      }
    }
    m(static_cast<Eigen::Index>(col ^ flip), static_cast<Eigen::Index>(col)) = phase;
  }
  return m;
}

Matrix matrix_of(const OperatorSum& op, const ChainSpec& chain) {
  const auto dim = static_cast<Eigen::Index>(chain.dim());
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : op.terms()) m += matrix_of(t, chain);
  return m;
}

double inner_product(const OperatorSum& a, const OperatorSum& b, const ChainSpec& chain) {
  if (a.max_site() > chain.n() || b.max_site() > chain.n()) {
    throw std::out_of_range("operator does not fit on the chain");
  }
  // Tr(P^dag Q) / 2^(n-2) = conj(c_P) c_Q 4^(1-q) for identical strings.
  Complex acc = 0.0;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (ia->ops() < ib->ops()) {
      ++ia;
    } else if (ib->ops() < ia->ops()) {
      ++ib;
    } else {
      acc += std::conj(ia->coefficient()) * ib->coefficient() * std::pow(4.0, 1 - ia->weight());
      ++ia;
      ++ib;
    }
  }
  return acc.real();
}

double inner_product(const Matrix& a, const Matrix& b, int n) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix size mismatch");
  return (a.adjoint() * b).trace().real() / std::ldexp(1.0, n - 2);
}

double norm(const OperatorSum& op) {
  double acc = 0.0;
  for (const auto& t : op.terms()) acc += std::norm(t.coefficient()) * std::pow(4.0, 1 - t.weight());
  return std::sqrt(acc);
}

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b) { return a * b - b * a; }

std::array<OperatorSum, 8> Table1Operators::all() const {
  return {lambda[0], lambda[1], lambda[2], lambda[3], d[0], d[1], d[2], d[3]};
}

Table1Operators table1_operators(int k) {
  if (k < 1) throw std::out_of_range("table anchor k must be >= 1");
  auto term = [](double c, std::vector<SiteOp> ops) { return OperatorSum(PauliTerm(c, std::move(ops))); };
  using A = Axis;
  Table1Operators t;
  t.lambda[0] = term(4, {{k, A::z}, {k + 1, A::y}, {k + 2, A::x}});
  t.lambda[1] = term(8, {{k, A::z}, {k + 1, A::y}, {k + 2, A::y}, {k + 3, A::z}});
  t.lambda[2] = term(2, {{k + 1, A::x}, {k + 2, A::x}});
  t.lambda[3] = term(4, {{k + 1, A::x}, {k + 2, A::y}, {k + 3, A::z}});
  t.d[0] = term(8, {{k, A::z}, {k + 1, A::y}, {k + 2, A::y}, {k + 3, A::x}});
  t.d[1] = term(16, {{k, A::z}, {k + 1, A::y}, {k + 2, A::y}, {k + 3, A::y}, {k + 4, A::z}});
  t.d[2] = term(4, {{k + 1, A::x}, {k + 2, A::y}, {k + 3, A::x}});
  t.d[3] = term(8, {{k + 1, A::x}, {k + 2, A::y}, {k + 3, A::y}, {k + 4, A::z}});
  return t;
}

OperatorSum lambda_k(int k) {
  const auto t = table1_operators(k);
  return (t.lambda[0] + t.lambda[1] + t.lambda[2] + t.lambda[3]) * Complex{0.5, 0.0};
}

OperatorSum multiple_spin_order_target(int n) {
  if (n < 2) throw std::invalid_argument("multiple-spin order needs n >= 2");
  std::vector<SiteOp> ops;
  for (int m = 1; m < n; ++m) ops.push_back({m, Axis::y});
  ops.push_back({n, Axis::z});
  return OperatorSum(PauliTerm(std::ldexp(1.0, n - 1), std::move(ops)));
}

std::vector<OperatorSum> order_basis(int n) {
  if (n < 2) throw std::invalid_argument("order basis needs n >= 2");
  std::vector<OperatorSum> basis;
  basis.reserve(static_cast<std::size_t>(2 * n - 2));
  basis.push_back(OperatorSum::spin(1, Axis::x));
  for (int m = 1; m <= n - 1; ++m) {
    std::vector<SiteOp> ys;
    for (int s = 1; s <= m; ++s) ys.push_back({s, Axis::y});
    auto with_last = [&](Axis last) {
      auto ops = ys;
      ops.push_back({m + 1, last});
      return OperatorSum(PauliTerm(std::ldexp(1.0, m), std::move(ops)));
    };
    basis.push_back(with_last(Axis::z));
    if (m <= n - 2) basis.push_back(with_last(Axis::x));
  }
  return basis;
}

OperatorSum decompose(const Matrix& m, int n, double tolerance) {
  const std::size_t dim = std::size_t{1} << n;
  if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
    throw std::invalid_argument("matrix size does not match chain length");
  }
  std::vector<PauliTerm> terms;
  const std::size_t strings = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < strings; ++code) {
    std::size_t flip = 0;
    std::vector<SiteOp> ops;
    for (int s = 1; s <= n; ++s) {
      const auto label = static_cast<int>((code >> (2 * (n - s))) & 3U);
      if (label == 0) continue;
      const auto axis = static_cast<Axis>(label);
      ops.push_back({s, axis});
      if (axis != Axis::z) flip |= std::size_t{1} << (n - s);
    }
    // Tr(sigma_string^dag M) over the one nonzero per column of the string.
    Complex tr = 0.0;
    for (std::size_t col = 0; col < dim; ++col) {
      Complex phase = 1.0;
      for (const auto& op : ops) {
        const bool one = (col >> (n - op.site)) & 1U;
        if (op.axis == Axis::y) phase *= one ? Complex{0.0, -1.0} : Complex{0.0, 1.0};
        if (op.axis == Axis::z && one) phase = -phase;
      }
      tr += std::conj(phase) * m(static_cast<Eigen::Index>(col ^ flip), static_cast<Eigen::Index>(col));
    }
    // M = sum c_P prod(sigma/2): c_P = 2^q Tr(sigma^dag M) / 2^n.
    const Complex c = tr * std::ldexp(1.0, static_cast<int>(ops.size()) - n);
    if (std::abs(c) > tolerance) terms.emplace_back(c, std::move(ops));
  }
  return OperatorSum(std::move(terms));
}

}  // namespace isinggeo
