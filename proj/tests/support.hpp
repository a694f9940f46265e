#pragma once

#include <cmath>
#include <initializer_list>
#include <random>

#include "qcorr/qstate.hpp"

namespace support {

using qcorr::Complex;
using qcorr::PureState;
using qcorr::Vector;

inline PureState basis_state(int n, std::size_t index) {
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return PureState(v);
}

inline PureState ghz(int n) {
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  v[0] = v[v.size() - 1] = 1.0 / std::sqrt(2.0);
  return PureState(v);
}

inline PureState w3() {
  Vector v = Vector::Zero(8);
  v[0b100] = v[0b010] = v[0b001] = 1.0 / std::sqrt(3.0);
  return PureState(v);
}

inline PureState bell() {
  Vector v = Vector::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  return PureState(v);
}

inline PureState from(std::initializer_list<Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) v[i++] = a;
  return qcorr::normalize(v);
}

// Swaps two qubits by permuting amplitudes.
inline PureState swap_qubits(const PureState& s, int a, int b) {
  const int n = s.num_qubits();
  Vector out(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t x = 0; x < s.dim(); ++x) {
    const int ba = qcorr::qubit_bit(x, a, n);
    const int bb = qcorr::qubit_bit(x, b, n);
    std::size_t y = x;
    const std::size_t ma = std::size_t{1} << (n - 1 - a);
    const std::size_t mb = std::size_t{1} << (n - 1 - b);
    y &= ~(ma | mb);
    if (bb) y |= ma;
    if (ba) y |= mb;
    out[static_cast<Eigen::Index>(y)] = s[x];
  }
  return PureState(out);
}

}  // namespace support
