#include "releq/classical_info.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace releq {

namespace {
constexpr double prob_sum_tol = 1e-12;
// Mass below this is treated as an exact zero for support questions.
constexpr double support_tol = 1e-15;
}  // namespace

prob_dist prob_dist::make(std::vector<double> probs, std::vector<std::string> labels) {
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw validation_error("prob_dist: negative or NaN entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > prob_sum_tol) {
        throw validation_error("prob_dist: entries sum to " + std::to_string(sum));
    }
    if (!labels.empty() && labels.size() != probs.size()) {
        throw validation_error("prob_dist: label count does not match entries");
    }
    return prob_dist{std::move(probs), std::move(labels)};
}

stochastic_matrix stochastic_matrix::make(std::vector<std::vector<double>> entries) {
    if (entries.empty()) throw validation_error("stochastic_matrix: empty");
    const std::size_t cols = entries[0].size();
    for (const auto& row : entries) {
        if (row.size() != cols) throw validation_error("stochastic_matrix: ragged rows");
    }
    for (std::size_t k = 0; k < cols; ++k) {
        double colsum = 0.0;
        for (const auto& row : entries) {
            double v = row[k];
            if (v < -prob_sum_tol || v > 1.0 + prob_sum_tol) {
                throw validation_error("stochastic_matrix: entry outside [0,1]");
            }
            colsum += v;
        }
        if (std::abs(colsum - 1.0) > prob_sum_tol) {
            throw validation_error("stochastic_matrix: column " + std::to_string(k) +
                                   " sums to " + std::to_string(colsum));
        }
    }
    return stochastic_matrix{std::move(entries)};
}

double shannon_entropy(const prob_dist& p, units u) {
    double s = 0.0;
    for (double v : p.probs) s -= xlnx(v);
    return convert_nats(s, u);
}

double kl_divergence(const prob_dist& p, const prob_dist& q, units u) {
    if (p.size() != q.size()) throw size_mismatch_error("kl_divergence: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.probs[i] <= support_tol) continue;
        if (q.probs[i] <= support_tol) return pos_inf();
        s += p.probs[i] * std::log(p.probs[i] / q.probs[i]);
    }
    return convert_nats(std::max(s, 0.0), u);
}

static void check_joint(const prob_dist& joint, std::size_t n_a, std::size_t n_b) {
    if (joint.size() != n_a * n_b) {
        throw dim_mismatch_error("joint distribution does not factor as " +
                                 std::to_string(n_a) + "*" + std::to_string(n_b));
    }
}

static std::pair<prob_dist, prob_dist> marginals(const prob_dist& joint, std::size_t n_a,
                                                 std::size_t n_b) {
    std::vector<double> pa(n_a, 0.0), pb(n_b, 0.0);
    for (std::size_t a = 0; a < n_a; ++a)
        for (std::size_t b = 0; b < n_b; ++b) {
            pa[a] += joint.probs[a * n_b + b];
            pb[b] += joint.probs[a * n_b + b];
        }
    return {prob_dist{std::move(pa), {}}, prob_dist{std::move(pb), {}}};
}

double mutual_information(const prob_dist& joint, std::size_t n_a, std::size_t n_b, units u) {
    check_joint(joint, n_a, n_b);
    auto [pa, pb] = marginals(joint, n_a, n_b);
    double s = shannon_entropy(pa, units::nats) + shannon_entropy(pb, units::nats) -
               shannon_entropy(joint, units::nats);
    return convert_nats(std::max(s, 0.0), u);
}

double conditional_entropy(const prob_dist& joint, std::size_t n_a, std::size_t n_b, units u) {
    check_joint(joint, n_a, n_b);
    auto [pa, pb] = marginals(joint, n_a, n_b);
    (void)pb;
    double s = shannon_entropy(joint, units::nats) - shannon_entropy(pa, units::nats);
    return convert_nats(std::max(s, 0.0), u);
}

bigint binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    bigint result = 1;
    for (std::size_t i = 0; i < std::min(k, n - k); ++i) {
        result *= static_cast<unsigned long long>(n - i);
        result /= static_cast<unsigned long long>(i + 1);
    }
    return result;
}

static bigint factorial(std::size_t n) {
    bigint f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long long>(i);
    return f;
}

type_record type_of(const std::vector<std::string>& sequence,
                    const std::vector<std::string>& alphabet) {
    if (sequence.empty()) throw validation_error("type_of: empty sequence");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < alphabet.size(); ++i) index[alphabet[i]] = i;
    std::vector<std::size_t> counts(alphabet.size(), 0);
    for (const auto& sym : sequence) {
        auto it = index.find(sym);
        if (it == index.end()) throw unknown_symbol_error("type_of: symbol '" + sym + "'");
        ++counts[it->second];
    }
    const std::size_t n = sequence.size();
    std::vector<double> freqs(alphabet.size());
    bigint cls = factorial(n);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        freqs[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
        cls /= factorial(counts[i]);
    }
    return type_record{n, alphabet.size(), prob_dist{std::move(freqs), alphabet}, cls};
}

static std::vector<std::string> explode(const std::string& s) {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (char c : s) out.emplace_back(1, c);
    return out;
}

type_record type_of(const std::string& symbols, const std::string& alphabet) {
    return type_of(explode(symbols), explode(alphabet));
}

type_count_result type_counting_bounds(std::size_t n, std::size_t alphabet_size) {
    if (n < 1 || alphabet_size < 1) throw validation_error("type_counting_bounds: n, |A| >= 1");
    // Compositions of n into |A| nonnegative parts.
    bigint exact = binomial(n + alphabet_size - 1, alphabet_size - 1);
    bigint bound = 1;
    for (std::size_t i = 0; i < alphabet_size; ++i) bound *= static_cast<unsigned long long>(n + 1);
    return {exact, bound};
}

sequence_prob_result sequence_prob(const prob_dist& q, const std::vector<std::string>& x,
                                   const std::vector<std::string>& alphabet) {
    type_record type = type_of(x, alphabet);
    double log_prob = 0.0;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        double freq = type.type_dist.probs[i];
        if (freq <= 0.0) continue;
        if (q.probs[i] <= support_tol) {
            throw zero_prob_symbol_error("sequence_prob: symbol '" + alphabet[i] +
                                         "' has zero probability under q");
        }
        log_prob += static_cast<double>(type.n) * freq * std::log(q.probs[i]);
    }
    const double n = static_cast<double>(type.n);
    double exponent = -n * (shannon_entropy(type.type_dist, units::nats) +
                            kl_divergence(type.type_dist, q, units::nats));
    return {std::exp(log_prob), std::exp(exponent), log_prob, exponent};
}

sequence_prob_result sequence_prob(const prob_dist& q, const std::string& x,
                                   const std::string& alphabet) {
    return sequence_prob(q, explode(x), explode(alphabet));
}

type_class_prob_result type_class_prob(const prob_dist& q, const prob_dist& p_type,
                                       std::size_t n) {
    if (p_type.size() != q.size()) throw size_mismatch_error("type_class_prob: size mismatch");
    // Verify the type has denominator n and collect the counts.
    std::vector<std::size_t> counts(p_type.size());
    for (std::size_t i = 0; i < p_type.size(); ++i) {
        double scaled = p_type.probs[i] * static_cast<double>(n);
        double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) > 1e-9) {
            throw invalid_type_error("type_class_prob: entry " + std::to_string(i) +
                                     " is not a multiple of 1/n");
        }
        counts[i] = static_cast<std::size_t>(rounded);
    }
    bigint cls = factorial(n);
    double log_single = 0.0;  // log prob of one sequence of this type
    for (std::size_t i = 0; i < counts.size(); ++i) {
        cls /= factorial(counts[i]);
        if (counts[i] == 0) continue;
        if (q.probs[i] <= support_tol) {
            log_single = -pos_inf();
            break;
        }
        log_single += static_cast<double>(counts[i]) * std::log(q.probs[i]);
    }
    const double kl = kl_divergence(p_type, q, units::nats);
    const double nn = static_cast<double>(n);
    const double a = static_cast<double>(p_type.size());
    // log |T(P)| via lgamma; the exact big integer is kept in type_of results.
    double log_cls = std::lgamma(nn + 1.0);
    for (std::size_t count : counts) log_cls -= std::lgamma(static_cast<double>(count) + 1.0);
    double log_exact = std::isinf(log_single) ? -pos_inf() : log_cls + log_single;
    double log_upper = -nn * kl;
    double log_lower = log_upper - a * std::log(nn + 1.0);
    return {std::exp(log_exact), std::exp(log_lower), std::exp(log_upper),
            log_exact, log_lower, log_upper};
}

sanov_result sanov_exponent(const prob_dist& q, const std::vector<prob_dist>& candidates,
                            units u) {
    if (candidates.empty()) throw empty_set_error("sanov_exponent: empty candidate set");
    std::size_t best = 0;
    double best_kl = pos_inf();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        double kl = kl_divergence(candidates[i], q, units::nats);
        if (kl < best_kl) {  // ties keep the first index
            best_kl = kl;
            best = i;
        }
    }
    return {best, candidates[best], convert_nats(best_kl, u)};
}

prob_dist evolve_stochastic(const prob_dist& p, const stochastic_matrix& t) {
    if (t.cols() != p.size()) throw dim_mismatch_error("evolve_stochastic: size mismatch");
    std::vector<double> out(t.rows(), 0.0);
    for (std::size_t j = 0; j < t.rows(); ++j)
        for (std::size_t k = 0; k < p.size(); ++k) out[j] += t.entries[j][k] * p.probs[k];
    for (double& v : out) v = std::max(v, 0.0);
    return prob_dist{std::move(out), {}};
}

}  // namespace releq
