// Classical probability layer: Shannon and relative entropy, mutual
// information, the method of types, Sanov estimates, and stochastic
// evolution with its monotonicity property.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "releq/common.hpp"

namespace releq {

using bigint = boost::multiprecision::cpp_int;

struct prob_dist {
    std::vector<double> probs;
    std::vector<std::string> labels;  // optional; empty or one per entry

    static prob_dist make(std::vector<double> probs, std::vector<std::string> labels = {});
    std::size_t size() const { return probs.size(); }
};

// Column-stochastic transition matrix: entry(j, k) = P(j | k), each column
// sums to one.
struct stochastic_matrix {
    std::vector<std::vector<double>> entries;  // entries[j][k]

    static stochastic_matrix make(std::vector<std::vector<double>> entries);
    std::size_t rows() const { return entries.size(); }
    std::size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
};

struct type_record {
    std::size_t n = 0;
    std::size_t alphabet_size = 0;
    prob_dist type_dist;   // empirical frequencies, multiples of 1/n
    bigint class_size;     // exact |T(P)| = n! / prod (n p_a)!

    bool operator==(const type_record& other) const {
        return n == other.n && alphabet_size == other.alphabet_size &&
               type_dist.probs == other.type_dist.probs && class_size == other.class_size;
    }
};

double shannon_entropy(const prob_dist& p, units u = units::bits);

// Relative entropy S(p || q); returns +infinity when p puts mass where q
// has none.  The infinity is a value, not an error.
double kl_divergence(const prob_dist& p, const prob_dist& q, units u = units::bits);

// Mutual information of a joint distribution over pairs laid out with the
// A index slow: joint[a * n_b + b].
double mutual_information(const prob_dist& joint, std::size_t n_a, std::size_t n_b,
                          units u = units::bits);

// Conditional entropy S_A(B) = S(A,B) - S(A) of the same joint layout.
double conditional_entropy(const prob_dist& joint, std::size_t n_a, std::size_t n_b,
                           units u = units::bits);

// Empirical type of a sequence over an explicit alphabet, with the exact
// multinomial size of its type class.
type_record type_of(const std::vector<std::string>& sequence,
                    const std::vector<std::string>& alphabet);
type_record type_of(const std::string& symbols, const std::string& alphabet);

struct type_count_result {
    bigint exact;   // number of types with denominator n
    bigint bound;   // (n + 1)^{|A|}
};
type_count_result type_counting_bounds(std::size_t n, std::size_t alphabet_size);

struct sequence_prob_result {
    double probability;     // product of per-symbol probabilities
    double exponent_form;   // exp(-n (S(P_x) + S(P_x || q))) in nats
    double log_probability; // natural log of the product, safe for large n
    double log_exponent_form;
};
sequence_prob_result sequence_prob(const prob_dist& q, const std::vector<std::string>& x,
                                   const std::vector<std::string>& alphabet);
sequence_prob_result sequence_prob(const prob_dist& q, const std::string& x,
                                   const std::string& alphabet);

struct type_class_prob_result {
    double exact;        // Q^n(T(P)) = |T(P)| prod q_a^{n p_a}
    double lower;        // (n+1)^{-|A|} exp(-n KL(P||Q))
    double upper;        // exp(-n KL(P||Q))
    double log_exact;    // log-space versions, safe for large n
    double log_lower;
    double log_upper;
};
type_class_prob_result type_class_prob(const prob_dist& q, const prob_dist& p_type,
                                       std::size_t n);

struct sanov_result {
    std::size_t argmin_index;
    prob_dist closest;
    double exponent;  // min KL(P || Q) in the requested units
};
sanov_result sanov_exponent(const prob_dist& q, const std::vector<prob_dist>& candidates,
                            units u = units::bits);

prob_dist evolve_stochastic(const prob_dist& p, const stochastic_matrix& t);

bigint binomial(std::size_t n, std::size_t k);

}  // namespace releq
