#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "qcorr/cli.hpp"

namespace qcorr::cli {

PureState read_amplitudes(std::istream& in, bool normalize) {
  std::vector<Complex> amps;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double re = 0.0, im = 0.0;
    std::string extra;
    if (!(fields >> re >> im) || (fields >> extra)) {
      throw std::runtime_error("amplitude file line " + std::to_string(line_no) +
                               ": expected two numbers 're im'");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw std::runtime_error("amplitude file line " + std::to_string(line_no) + ": non-finite value");
    }
    amps.emplace_back(re, im);
  }
  const std::size_t dim = amps.size();
  if (dim < 2 || (dim & (dim - 1)) != 0 || dim > (std::size_t{1} << kMaxQubits)) {
    throw std::runtime_error("amplitude file: " + std::to_string(dim) +
                             " amplitudes; need a power of two between 2 and " +
                             std::to_string(1 << kMaxQubits));
  }
  Vector v(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = amps[i];
  if (normalize) return qcorr::normalize(v);
  const double norm2 = v.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "amplitude file: state not normalized, squared norm " << norm2 << " (deficit " << 1.0 - norm2
        << "); pass --normalize to rescale";
    throw std::runtime_error(msg.str());
  }
  return PureState(v);
}

PureState read_amplitude_file(const std::string& path, bool normalize) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open amplitude file '" + path + "'");
  return read_amplitudes(in, normalize);
}

}  // namespace qcorr::cli
