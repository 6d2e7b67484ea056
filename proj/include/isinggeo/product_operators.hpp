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

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace isinggeo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Raised when operator text cannot be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a numerical routine produces a non-finite value or fails to
/// converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Axis : std::uint8_t { x = 1, y = 2, z = 3 };

char axis_char(Axis a);

/// Linear chain of spin-1/2 nuclei with equal nearest-neighbour Ising
/// coupling J (Hz). Internal times are measured in units of 1/(pi J).
class ChainSpec {
 public:
  explicit ChainSpec(int n, double j_hz = 1.0);

  int n() const { return n_; }
  double j_hz() const { return j_hz_; }
  /// Hilbert-space dimension 2^n.
  std::size_t dim() const { return std::size_t{1} << n_; }
  /// Converts a duration in units of 1/(pi J) to seconds.
  double seconds(double t_units) const;

  static constexpr int kMaxSites = 12;

 private:
  int n_;
  double j_hz_;
};

struct SiteOp {
  int site;  // 1-based
  Axis axis;
  auto operator<=>(const SiteOp&) const = default;
};

/// Scaled product of single-spin operators I_a = sigma_a / 2. Sites that are
/// not listed carry the identity.
class PauliTerm {
 public:
  PauliTerm() = default;
  explicit PauliTerm(Complex coefficient, std::vector<SiteOp> ops = {});

  const Complex& coefficient() const { return coefficient_; }
  const std::vector<SiteOp>& ops() const { return ops_; }
  /// Number of non-identity sites.
  int weight() const { return static_cast<int>(ops_.size()); }
  int max_site() const { return ops_.empty() ? 0 : ops_.back().site; }

  PauliTerm with_coefficient(Complex c) const;

  friend PauliTerm operator*(const PauliTerm& a, const PauliTerm& b);

 private:
  Complex coefficient_{1.0, 0.0};
  std::vector<SiteOp> ops_;  // sorted by site, at most one op per site
};

/// Canonical sum of PauliTerms: sorted by site-label tuple, duplicates merged,
/// zero terms dropped.
class OperatorSum {
 public:
  OperatorSum() = default;
  OperatorSum(PauliTerm term);  // NOLINT(google-explicit-constructor)
  explicit OperatorSum(std::vector<PauliTerm> terms);

  static OperatorSum identity(Complex c = 1.0);
  static OperatorSum spin(int site, Axis axis, Complex c = 1.0);
  /// Parses text such as "2*I1y*I2z" or "0.5*(4*I1z*I2y*I3x + 2*I2x*I3x)".
  static OperatorSum parse(std::string_view text);

  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int max_site() const;
  bool is_hermitian() const;

  OperatorSum adjoint() const;
  /// Relabels site s to map[s]; used for chain mirroring and translation.
  OperatorSum relabeled(const std::vector<int>& site_map) const;
  OperatorSum translated(int offset) const;

  std::string to_string() const;

  OperatorSum& operator+=(const OperatorSum& o);
  OperatorSum& operator-=(const OperatorSum& o);
  OperatorSum& operator*=(Complex c);

  friend OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }
  friend OperatorSum operator-(OperatorSum a, const OperatorSum& b) { return a -= b; }
  friend OperatorSum operator*(OperatorSum a, Complex c) { return a *= c; }
  friend OperatorSum operator*(Complex c, OperatorSum a) { return a *= c; }
  friend OperatorSum operator*(const OperatorSum& a, const OperatorSum& b);
  friend bool operator==(const OperatorSum& a, const OperatorSum& b);

 private:
  void canonicalize();
  std::vector<PauliTerm> terms_;
};

/// Dense 2^n x 2^n realization. Site 1 is the leftmost Kronecker factor.
Matrix matrix_of(const PauliTerm& term, const ChainSpec& chain);
Matrix matrix_of(const OperatorSum& op, const ChainSpec& chain);

/// Tr(A^dagger B) / 2^(n-2), evaluated algebraically. The result does not
/// depend on n once both operators fit on the chain.
double inner_product(const OperatorSum& a, const OperatorSum& b, const ChainSpec& chain);
/// Same normalization on explicit matrices.
double inner_product(const Matrix& a, const Matrix& b, int n);
double norm(const OperatorSum& op);

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b);

/// Rows of the operator table used for spin-order transfer along the chain,
/// anchored at site k.
struct Table1Operators {
  std::array<OperatorSum, 4> lambda;  // Lambda_{1k} .. Lambda_{4k}
  std::array<OperatorSum, 4> d;       // D_{1k} .. D_{4k}

  std::array<OperatorSum, 8> all() const;
};

Table1Operators table1_operators(int k);

/// (Lambda_1k + Lambda_2k + Lambda_3k + Lambda_4k) / 2.
OperatorSum lambda_k(int k);

/// 2^(n-1) I_1y ... I_(n-1)y I_nz, the multiple-spin order reached by the
/// conventional cascade.
OperatorSum multiple_spin_order_target(int n);

/// The cascade coordinates x_1 .. x_(2n-2):
///   x_1 = I_1x, x_2m = 2^m I_1y..I_my I_(m+1)z, x_(2m+1) = 2^m I_1y..I_my I_(m+1)x.
std::vector<OperatorSum> order_basis(int n);

/// Expands a dense operator back into product operators. Exponential in n;
/// only meant for n <= 8.
OperatorSum decompose(const Matrix& m, int n, double tolerance = 1e-10);

}  // namespace isinggeo
