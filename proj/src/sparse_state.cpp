#include "dcprop/sparse_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dcprop/ir.hpp"

namespace dcprop {

namespace {

constexpr Complex kI{0.0, 1.0};

std::uint64_t extract_bits(std::uint64_t b, const std::vector<int>& positions) {
  std::uint64_t sub = 0;
  for (std::size_t t = 0; t < positions.size(); ++t) {
    sub |= ((b >> positions[t]) & 1u) << t;
  }
  return sub;
}

std::uint64_t scatter_bits(std::uint64_t sub,
                           const std::vector<int>& positions) {
  std::uint64_t b = 0;
  for (std::size_t t = 0; t < positions.size(); ++t) {
    b |= ((sub >> t) & 1u) << positions[t];
  }
  return b;
}

}  // namespace

SparseState::SparseState(int num_qubits, AmplitudeMap amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {
  if (num_qubits_ < 0 || num_qubits_ > 62) {
    throw std::invalid_argument("qubit count out of range");
  }
  for (const auto& [b, a] : amps_) {
    if (num_qubits_ < 62 && b >= (std::uint64_t{1} << num_qubits_)) {
      throw std::invalid_argument("basis index out of range");
    }
    (void)a;
  }
}

SparseState SparseState::basis(int num_qubits, std::uint64_t basis_index) {
  AmplitudeMap amps;
  amps[basis_index] = Complex{1.0, 0.0};
  return SparseState(num_qubits, std::move(amps));
}

Complex SparseState::amplitude(std::uint64_t basis_index) const {
  auto it = amps_.find(basis_index);
  return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

double SparseState::norm_squared() const {
  double total = 0.0;
  for (const auto& [b, a] : amps_) {
    (void)b;
    total += std::norm(a);
  }
  return total;
}

void SparseState::prune_and_renormalize() {
  for (auto it = amps_.begin(); it != amps_.end();) {
    if (std::abs(it->second) < kPruneEps) {
      it = amps_.erase(it);
    } else {
      ++it;
    }
  }
  double n2 = norm_squared();
  if (n2 > 0.0 && std::abs(n2 - 1.0) > kNormDriftEps) {
    double inv = 1.0 / std::sqrt(n2);
    for (auto& [b, a] : amps_) {
      (void)b;
      a *= inv;
    }
  }
}

SparseState apply_matrix(const SparseState& state,
                         const std::vector<Complex>& matrix,
                         const std::vector<int>& positions) {
  const int k = static_cast<int>(positions.size());
  const std::uint64_t dim = std::uint64_t{1} << k;
  if (matrix.size() != dim * dim) {
    throw std::invalid_argument("matrix dimension mismatch");
  }
  for (int p : positions) {
    if (p < 0 || p >= state.num_qubits()) {
      throw std::out_of_range("gate position out of range");
    }
  }

  SparseState::AmplitudeMap out;
  for (const auto& [b, a] : state.amplitudes()) {
    const std::uint64_t sub = extract_bits(b, positions);
    const std::uint64_t rest = b & ~scatter_bits(dim - 1, positions);
    for (std::uint64_t row = 0; row < dim; ++row) {
      const Complex coeff = matrix[row * dim + sub];
      if (coeff == Complex{0.0, 0.0}) continue;
      out[rest | scatter_bits(row, positions)] += coeff * a;
    }
  }
  SparseState result(state.num_qubits(), std::move(out));
  result.prune_and_renormalize();
  return result;
}

std::vector<Complex> gate_matrix(const GateKind& gate) {
  const Complex z0{0.0, 0.0};
  const Complex z1{1.0, 0.0};
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  switch (gate.op) {
    case GateOp::X:
      return {z0, z1, z1, z0};
    case GateOp::Y:
      return {z0, -kI, kI, z0};
    case GateOp::Z:
      return {z1, z0, z0, -z1};
    case GateOp::H:
      return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
    case GateOp::S:
      return {z1, z0, z0, kI};
    case GateOp::Sdg:
      return {z1, z0, z0, -kI};
    case GateOp::T:
      return {z1, z0, z0, std::polar(1.0, std::numbers::pi / 4)};
    case GateOp::Tdg:
      return {z1, z0, z0, std::polar(1.0, -std::numbers::pi / 4)};
    case GateOp::Rx: {
      const double h = gate.params.at(0) / 2;
      const Complex c{std::cos(h), 0.0};
      const Complex s{0.0, -std::sin(h)};
      return {c, s, s, c};
    }
    case GateOp::Ry: {
      const double h = gate.params.at(0) / 2;
      const Complex c{std::cos(h), 0.0};
      const Complex s{std::sin(h), 0.0};
      return {c, -s, s, c};
    }
    case GateOp::Rz: {
      const double h = gate.params.at(0) / 2;
      return {std::polar(1.0, -h), z0, z0, std::polar(1.0, h)};
    }
    case GateOp::Cx: {
      // operand 0 controls, operand 1 is the target; sub bit t = operand t
      std::vector<Complex> m(16, z0);
      m[0 * 4 + 0] = z1;
      m[3 * 4 + 1] = z1;
      m[2 * 4 + 2] = z1;
      m[1 * 4 + 3] = z1;
      return m;
    }
    case GateOp::Cz: {
      std::vector<Complex> m(16, z0);
      m[0 * 4 + 0] = z1;
      m[1 * 4 + 1] = z1;
      m[2 * 4 + 2] = z1;
      m[3 * 4 + 3] = -z1;
      return m;
    }
    case GateOp::Swap: {
      std::vector<Complex> m(16, z0);
      m[0 * 4 + 0] = z1;
      m[2 * 4 + 1] = z1;
      m[1 * 4 + 2] = z1;
      m[3 * 4 + 3] = z1;
      return m;
    }
    case GateOp::Ccx: {
      std::vector<Complex> m(64, z0);
      for (std::uint64_t in = 0; in < 8; ++in) {
        std::uint64_t out = in;
        if ((in & 3) == 3) out = in ^ 4;
        m[out * 8 + in] = z1;
      }
      return m;
    }
  }
  throw std::logic_error("unknown gate");
}

SparseState apply_gate(const SparseState& state, const GateKind& gate,
                       const std::vector<int>& positions) {
  if (static_cast<int>(positions.size()) != gate_arity(gate.op)) {
    throw std::invalid_argument("gate arity mismatch");
  }
  return apply_matrix(state, gate_matrix(gate), positions);
}

namespace {

std::uint64_t delete_bit(std::uint64_t b, int pos) {
  const std::uint64_t low = b & ((std::uint64_t{1} << pos) - 1);
  const std::uint64_t high = b >> (pos + 1);
  return low | (high << pos);
}

std::uint64_t insert_bit(std::uint64_t b, int bit_value, int pos) {
  const std::uint64_t low = b & ((std::uint64_t{1} << pos) - 1);
  const std::uint64_t high = b >> pos;
  return low | (static_cast<std::uint64_t>(bit_value) << pos)
             | (high << (pos + 1));
}

}  // namespace

Decomposition decompose(const SparseState& state, int local_pos) {
  if (local_pos < 0 || local_pos >= state.num_qubits()) {
    throw std::out_of_range("decompose position out of range");
  }
  double weight[2] = {0.0, 0.0};
  Complex first_amp[2] = {Complex{0, 0}, Complex{0, 0}};
  bool seen[2] = {false, false};
  for (const auto& [b, a] : state.amplitudes()) {
    const int bit = static_cast<int>((b >> local_pos) & 1u);
    weight[bit] += std::norm(a);
    if (!seen[bit]) {
      seen[bit] = true;
      first_amp[bit] = a;
    }
  }
  const double total = weight[0] + weight[1];

  Decomposition d;
  for (int bit = 0; bit < 2; ++bit) {
    if (!seen[bit] || std::sqrt(weight[bit]) <= kPruneEps) continue;
    const double mag = std::sqrt(weight[bit] / total);
    const double phase = std::arg(first_amp[bit]);
    const Complex lambda = std::polar(mag, phase);
    // phi carries the residual: amp / lambda, with the bit deleted
    const Complex inv_lambda =
        std::polar(std::sqrt(total / weight[bit]), -phase);
    SparseState::AmplitudeMap phi;
    for (const auto& [b, a] : state.amplitudes()) {
      if (static_cast<int>((b >> local_pos) & 1u) != bit) continue;
      phi[delete_bit(b, local_pos)] = a * inv_lambda;
    }
    SparseState phi_state(state.num_qubits() - 1, std::move(phi));
    phi_state.prune_and_renormalize();
    if (bit == 0) {
      d.lambda0 = lambda;
      d.has_branch0 = true;
      d.phi0 = std::move(phi_state);
    } else {
      d.lambda1 = lambda;
      d.has_branch1 = true;
      d.phi1 = std::move(phi_state);
    }
  }
  return d;
}

SparseState tensor_insert(const SparseState& phi, int bit_value,
                          int local_pos) {
  if (local_pos < 0 || local_pos > phi.num_qubits()) {
    throw std::out_of_range("insert position out of range");
  }
  SparseState::AmplitudeMap out;
  for (const auto& [b, a] : phi.amplitudes()) {
    out[insert_bit(b, bit_value, local_pos)] = a;
  }
  return SparseState(phi.num_qubits() + 1, std::move(out));
}

SparseState merge_groups(const SparseState& a, const std::vector<int>& a_qubits,
                         const SparseState& b,
                         const std::vector<int>& b_qubits) {
  if (static_cast<int>(a_qubits.size()) != a.num_qubits() ||
      static_cast<int>(b_qubits.size()) != b.num_qubits()) {
    throw std::invalid_argument("qubit list does not match state width");
  }
  std::vector<int> merged = a_qubits;
  merged.insert(merged.end(), b_qubits.begin(), b_qubits.end());
  std::sort(merged.begin(), merged.end());
  if (std::adjacent_find(merged.begin(), merged.end()) != merged.end()) {
    throw std::invalid_argument("groups are not disjoint");
  }

  auto rank = [&merged](int qubit) {
    return static_cast<int>(
        std::lower_bound(merged.begin(), merged.end(), qubit) -
        merged.begin());
  };
  std::vector<int> a_pos(a_qubits.size()), b_pos(b_qubits.size());
  for (std::size_t i = 0; i < a_qubits.size(); ++i) a_pos[i] = rank(a_qubits[i]);
  for (std::size_t i = 0; i < b_qubits.size(); ++i) b_pos[i] = rank(b_qubits[i]);

  SparseState::AmplitudeMap out;
  for (const auto& [ba, aa] : a.amplitudes()) {
    std::uint64_t base = 0;
    for (std::size_t i = 0; i < a_pos.size(); ++i) {
      base |= ((ba >> i) & 1u) << a_pos[i];
    }
    for (const auto& [bb, ab] : b.amplitudes()) {
      std::uint64_t idx = base;
      for (std::size_t i = 0; i < b_pos.size(); ++i) {
        idx |= ((bb >> i) & 1u) << b_pos[i];
      }
      out[idx] = aa * ab;
    }
  }
  SparseState result(static_cast<int>(merged.size()), std::move(out));
  result.prune_and_renormalize();
  return result;
}

}  // namespace dcprop
