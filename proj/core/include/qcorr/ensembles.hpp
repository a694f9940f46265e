#pragma once

// Seeded samplers for the surveyed state families and deterministic
// constructors for reference states.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <variant>

#include "qcorr/qstate.hpp"

namespace qcorr {

/// Identifies one sample's random stream: a pure function of both fields.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t sample_index = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Independent generator for one sample.
std::mt19937_64 sample_stream(SeedSpec seed);

/// Gaussian amplitudes (real and imaginary parts from N(0,1)), normalized.
PureState sample_haar(int n, SeedSpec seed);

/// a|000> + b|001> + c|010> + d|100> with complex Gaussian a..d.
PureState sample_wclass(SeedSpec seed);

/// Complex Gaussian coefficients on the C(n, r) basis states carrying r
/// excitations. Requires 1 <= r <= n-1.
PureState sample_dicke(int n, int r, SeedSpec seed);

/// alpha|0...0> + sqrt(1 - alpha^2)|1...1>, alpha in (0, 1).
PureState make_gghz(int n, double alpha);

/// Equal-weight Dicke state with r excitations.
PureState make_dicke_equal(int n, int r);

/// a1|000> + a2 e^{i phi}|100> + a3|101> + a4|110> + a5|111>.
/// Requires a_i >= 0, sum a_i^2 = 1 (1e-9) and phi in [0, 2 pi].
PureState make_canonical3(const std::array<double, 5>& a, double phi);

/// Number of n-qubit basis states with exactly r excitations.
std::uint64_t binomial(int n, int r);

namespace family {
struct HaarRandom {
  int n;
};
struct WClass {};
struct Dicke {
  int n;
  int r;
};
struct GGHZ {
  int n;
  double alpha;
};
struct CanonicalThreeQubit {
  std::array<double, 5> a;
  double phi;
};
}  // namespace family

using StateFamily = std::variant<family::HaarRandom, family::WClass, family::Dicke, family::GGHZ,
                                 family::CanonicalThreeQubit>;

/// Throws std::invalid_argument when the family parameters are infeasible.
void validate(const StateFamily& f);
int num_qubits(const StateFamily& f);
/// Short label used in CSV output: random, wclass, dicke, gghz, canonical3.
std::string family_label(const StateFamily& f);
/// Draws sample `seed.sample_index`; deterministic families ignore the seed.
PureState sample(const StateFamily& f, SeedSpec seed);

}  // namespace qcorr
