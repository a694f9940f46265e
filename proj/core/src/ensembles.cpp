#include "qcorr/ensembles.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcorr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Complex gaussian_complex(std::mt19937_64& rng, std::normal_distribution<double>& g) {
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

void check_dicke(int n, int r) {
  if (n < 2 || n > kMaxQubits) throw std::invalid_argument("Dicke state needs 2..8 qubits");
  if (r < 1 || r > n - 1) {
    throw std::invalid_argument("Dicke excitation count r=" + std::to_string(r) +
                                " outside [1, n-1]");
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 sample_stream(SeedSpec seed) {
  const std::uint64_t mixed = splitmix64(splitmix64(seed.master_seed) ^ seed.sample_index);
  return std::mt19937_64(mixed);
}

PureState sample_haar(int n, SeedSpec seed) {
  if (n < 2 || n > kMaxQubits) throw std::invalid_argument("sample_haar needs 2..8 qubits");
  auto rng = sample_stream(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gaussian_complex(rng, g);
  return normalize(std::move(v));
}

PureState sample_wclass(SeedSpec seed) {
  auto rng = sample_stream(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v = Vector::Zero(8);
  for (Eigen::Index idx : {0b000, 0b001, 0b010, 0b100}) v[idx] = gaussian_complex(rng, g);
  return normalize(std::move(v));
}

PureState sample_dicke(int n, int r, SeedSpec seed) {
  check_dicke(n, r);
  auto rng = sample_stream(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    if (std::popcount(static_cast<std::uint64_t>(x)) == r) v[x] = gaussian_complex(rng, g);
  }
  return normalize(std::move(v));
}

PureState make_gghz(int n, double alpha) {
  if (n < 2 || n > kMaxQubits) throw std::invalid_argument("gGHZ needs 2..8 qubits");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("gGHZ alpha must be in (0, 1)");
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  v[0] = alpha;
  v[v.size() - 1] = std::sqrt(1.0 - alpha * alpha);
  return normalize(std::move(v));
}

PureState make_dicke_equal(int n, int r) {
  check_dicke(n, r);
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  const double c = 1.0 / std::sqrt(static_cast<double>(binomial(n, r)));
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    if (std::popcount(static_cast<std::uint64_t>(x)) == r) v[x] = c;
  }
  return PureState(std::move(v));
}

PureState make_canonical3(const std::array<double, 5>& a, double phi) {
  double norm2 = 0.0;
  for (double ai : a) {
    if (!(ai >= 0.0)) throw std::invalid_argument("canonical3 coefficients must be >= 0");
    norm2 += ai * ai;
  }
  if (std::abs(norm2 - 1.0) > 1e-9) {
    throw std::invalid_argument("canonical3 coefficients not normalized: sum a_i^2 = " +
                                std::to_string(norm2));
  }
  if (!(phi >= 0.0 && phi <= 2 * std::numbers::pi)) {
    throw std::invalid_argument("canonical3 phase must lie in [0, 2 pi]");
  }
  Vector v = Vector::Zero(8);
  v[0b000] = a[0];
  v[0b100] = std::polar(a[1], phi);
  v[0b101] = a[2];
  v[0b110] = a[3];
  v[0b111] = a[4];
  return normalize(std::move(v));
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t c = 1;
  for (int i = 1; i <= r; ++i) c = c * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return c;
}

void validate(const StateFamily& f) {
  std::visit(overloaded{
                 [](const family::HaarRandom& h) {
                   if (h.n < 2 || h.n > kMaxQubits)
                     throw std::invalid_argument("random family needs 2..8 qubits");
                 },
                 [](const family::WClass&) {},
                 [](const family::Dicke& d) { check_dicke(d.n, d.r); },
                 [](const family::GGHZ& g) { make_gghz(g.n, g.alpha); },
                 [](const family::CanonicalThreeQubit& c) { make_canonical3(c.a, c.phi); },
             },
             f);
}

int num_qubits(const StateFamily& f) {
  return std::visit(overloaded{
                        [](const family::HaarRandom& h) { return h.n; },
                        [](const family::WClass&) { return 3; },
                        [](const family::Dicke& d) { return d.n; },
                        [](const family::GGHZ& g) { return g.n; },
                        [](const family::CanonicalThreeQubit&) { return 3; },
                    },
                    f);
}

std::string family_label(const StateFamily& f) {
  return std::visit(overloaded{
                        [](const family::HaarRandom&) { return std::string("random"); },
                        [](const family::WClass&) { return std::string("wclass"); },
                        [](const family::Dicke&) { return std::string("dicke"); },
                        [](const family::GGHZ&) { return std::string("gghz"); },
                        [](const family::CanonicalThreeQubit&) { return std::string("canonical3"); },
                    },
                    f);
}

PureState sample(const StateFamily& f, SeedSpec seed) {
  return std::visit(overloaded{
                        [&](const family::HaarRandom& h) { return sample_haar(h.n, seed); },
                        [&](const family::WClass&) { return sample_wclass(seed); },
                        [&](const family::Dicke& d) { return sample_dicke(d.n, d.r, seed); },
                        [](const family::GGHZ& g) { return make_gghz(g.n, g.alpha); },
                        [](const family::CanonicalThreeQubit& c) {
                          return make_canonical3(c.a, c.phi);
                        },
                    },
                    f);
}

}  // namespace qcorr
