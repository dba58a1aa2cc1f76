// Shared basics: error types, entropy units, physical constants, seeded RNG.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace releq {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct non_square_error : error { using error::error; };
struct not_hermitian_error : error { using error::error; };
struct dim_mismatch_error : error { using error::error; };
struct domain_error : error { using error::error; };
struct size_mismatch_error : error { using error::error; };
struct unknown_symbol_error : error { using error::error; };
struct zero_prob_symbol_error : error { using error::error; };
struct invalid_type_error : error { using error::error; };
struct empty_set_error : error { using error::error; };
struct not_bipartite_error : error { using error::error; };
struct bad_rank_error : error { using error::error; };
struct not_trace_preserving_error : error { using error::error; };
struct incomplete_effects_error : error { using error::error; };
struct negative_effect_error : error { using error::error; };
struct too_large_error : error { using error::error; };
struct not_pure_error : error { using error::error; };
struct not_two_qubit_error : error { using error::error; };
struct out_of_range_error : error { using error::error; };
struct non_positive_error : error { using error::error; };
struct validation_error : error { using error::error; };
struct io_error : error { using error::error; };

// Entropy unit for all public entropy-valued results.  Internally
// everything is accumulated in nats and converted on the way out.
enum class units : std::uint8_t { bits, nats };

inline constexpr double ln2 = 0.69314718055994530942;

inline double convert_nats(double nats, units u) {
    if (std::isinf(nats)) return nats;
    return u == units::bits ? nats / ln2 : nats;
}

inline double pos_inf() { return std::numeric_limits<double>::infinity(); }

// x ln x with the 0 ln 0 = 0 convention.
inline double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Physical constants, CODATA to six significant digits.
namespace constants {
inline constexpr double hbar = 1.05457e-34;     // J s
inline constexpr double boltzmann = 1.38065e-23; // J / K
inline constexpr double light_speed = 2.99792e8; // m / s
}  // namespace constants

// Deterministic generator handed around explicitly; never global state.
class rng {
  public:
    explicit rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return unit_(engine_); }
    double gaussian() { return normal_(engine_); }
    std::uint64_t integer(std::uint64_t bound) {
        std::uniform_int_distribution<std::uint64_t> d(0, bound - 1);
        return d(engine_);
    }
    // Independent stream for parallel or restart work.
    rng fork() { return rng(engine_() ^ 0x9e3779b97f4a7c15ull); }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace releq
