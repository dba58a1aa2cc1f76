#include <map>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace releq;
using test_util::random_dist;
using test_util::random_stochastic;

namespace {

// Brute-force oracle: class sizes by enumerating all |A|^n sequences.
std::map<std::vector<std::size_t>, bigint> enumerate_type_classes(std::size_t n,
                                                                  std::size_t alphabet) {
    std::map<std::vector<std::size_t>, bigint> classes;
    std::vector<std::size_t> seq(n, 0);
    while (true) {
        std::vector<std::size_t> counts(alphabet, 0);
        for (std::size_t s : seq) ++counts[s];
        classes[counts] += 1;
        std::size_t pos = 0;
        while (pos < n && ++seq[pos] == alphabet) seq[pos++] = 0;
        if (pos == n) break;
    }
    return classes;
}

}  // namespace

TEST_SUITE("classical_info") {

TEST_CASE("shannon entropy basics") {
    CHECK(shannon_entropy(prob_dist::make({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-12));
    // Two-to-one source: S = ln 3 - (2/3) ln 2 nats (ln 3 - (2/3) ln 2).
    double s = shannon_entropy(prob_dist::make({2.0 / 3.0, 1.0 / 3.0}), units::nats);
    CHECK(s == doctest::Approx(std::log(3.0) - 2.0 / 3.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(s == doctest::Approx(0.6365141683).epsilon(1e-9));
    CHECK(shannon_entropy(prob_dist::make({1.0, 0.0})) == doctest::Approx(0.0));
}

TEST_CASE("kl divergence basics") {
    prob_dist fair = prob_dist::make({0.5, 0.5});
    prob_dist unfair = prob_dist::make({1.0 / 3.0, 2.0 / 3.0});
    CHECK(kl_divergence(unfair, unfair, units::nats) == doctest::Approx(0.0));
    double expect = std::log(1.0 / 3.0) / 3.0 + 2.0 / 3.0 * std::log(2.0 / 3.0) -
                    std::log(0.5);
    CHECK(kl_divergence(unfair, fair, units::nats) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(kl_divergence(unfair, fair, units::nats) == doctest::Approx(0.0566330123).epsilon(1e-8));
    CHECK(std::isinf(kl_divergence(prob_dist::make({1.0, 0.0}), prob_dist::make({0.0, 1.0}),
                                   units::nats)));
    CHECK_THROWS_AS(kl_divergence(fair, prob_dist::make({1.0}), units::nats),
                    size_mismatch_error);
}

TEST_CASE("kl divergence nonnegative, zero only at equality") {
    rng gen(201);
    for (int trial = 0; trial < 1000; ++trial) {
        prob_dist p = random_dist(4, gen), q = random_dist(4, gen);
        double kl = kl_divergence(p, q, units::nats);
        CHECK(kl >= 0.0);
        CHECK(kl_divergence(p, p, units::nats) <= 1e-12);
        if (kl < 1e-12) {
            for (std::size_t i = 0; i < 4; ++i) {
                CHECK(p.probs[i] == doctest::Approx(q.probs[i]).epsilon(1e-4));
            }
        }
    }
}

TEST_CASE("mutual information of the correlated socks") {
    // Perfectly correlated joint (0.75 on blue-blue, 0.25 on red-red).
    prob_dist joint = prob_dist::make({0.75, 0.0, 0.0, 0.25});
    double expect = -0.75 * std::log(0.75) - 0.25 * std::log(0.25);
    CHECK(mutual_information(joint, 2, 2, units::nats) == doctest::Approx(expect).epsilon(1e-12));
    // Uniform perfectly correlated pair carries ln 2.
    prob_dist uniform = prob_dist::make({0.5, 0.0, 0.0, 0.5});
    CHECK(mutual_information(uniform, 2, 2, units::nats) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // Product joints carry none.
    rng gen(202);
    prob_dist pa = random_dist(2, gen), pb = random_dist(3, gen);
    std::vector<double> prod(6);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b) prod[a * 3 + b] = pa.probs[a] * pb.probs[b];
    CHECK(mutual_information(prob_dist::make(prod), 2, 3, units::nats) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("conditional entropy chain rule") {
    rng gen(203);
    for (int trial = 0; trial < 50; ++trial) {
        prob_dist joint = random_dist(9, gen);
        double s_joint = shannon_entropy(joint, units::nats);
        std::vector<double> pa(3, 0.0), pb(3, 0.0);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                pa[a] += joint.probs[a * 3 + b];
                pb[b] += joint.probs[a * 3 + b];
            }
        double s_a = shannon_entropy(prob_dist{pa, {}}, units::nats);
        double s_b = shannon_entropy(prob_dist{pb, {}}, units::nats);
        double cond = conditional_entropy(joint, 3, 3, units::nats);
        CHECK(s_a + cond == doctest::Approx(s_joint).epsilon(1e-12));
        // I = S(B) - S_A(B)
        CHECK(mutual_information(joint, 3, 3, units::nats) ==
              doctest::Approx(s_b - cond).epsilon(1e-10));
    }
    // Independent joint: S_A(B) = S(B); perfectly correlated: 0.
    prob_dist indep = prob_dist::make({0.25, 0.25, 0.25, 0.25});
    CHECK(conditional_entropy(indep, 2, 2, units::nats) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    prob_dist corr = prob_dist::make({0.5, 0.0, 0.0, 0.5});
    CHECK(conditional_entropy(corr, 2, 2, units::nats) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("type_of identifies types and exact class sizes") {
    type_record a = type_of("011010", "01");
    type_record b = type_of("100110", "01");
    CHECK(a == b);
    CHECK(a.class_size == binomial(6, 3));
    CHECK(type_of("0000", "01").class_size == 1);
    CHECK(type_of("0000011111", "01").class_size == 252);  // C(10,5)
    CHECK_THROWS_AS(type_of("012", "01"), unknown_symbol_error);
}

TEST_CASE("type class sizes match brute-force enumeration") {
    for (std::size_t n : {3u, 5u, 8u, 11u}) {
        auto classes = enumerate_type_classes(n, 2);
        for (const auto& [counts, size] : classes) {
            std::string seq(counts[0], '0');
            seq += std::string(counts[1], '1');
            CHECK(type_of(seq, "01").class_size == size);
        }
    }
    auto classes3 = enumerate_type_classes(5, 3);
    for (const auto& [counts, size] : classes3) {
        std::string seq(counts[0], 'a');
        seq += std::string(counts[1], 'b');
        seq += std::string(counts[2], 'c');
        CHECK(type_of(seq, "abc").class_size == size);
    }
}

TEST_CASE("type_counting_bounds matches enumeration and the polynomial cap") {
    type_count_result r = type_counting_bounds(6, 2);
    CHECK(r.exact == 7);
    CHECK(r.bound == 49);
    r = type_counting_bounds(4, 2);
    CHECK(r.exact == 5);
    CHECK(r.bound == 25);
    // Compositions of 1 into 3 parts: (1,0,0),(0,1,0),(0,0,1).
    r = type_counting_bounds(1, 3);
    CHECK(r.exact == 3);
    CHECK(r.bound == 8);  // (n+1)^{|A|} = 2^3
    // Exact counts agree with brute-force enumeration.
    for (std::size_t n : {2u, 4u, 7u}) {
        for (std::size_t a : {2u, 3u, 4u}) {
            auto classes = enumerate_type_classes(n, a);
            CHECK(type_counting_bounds(n, a).exact == bigint(classes.size()));
            CHECK(type_counting_bounds(n, a).exact <= type_counting_bounds(n, a).bound);
        }
    }
}

TEST_CASE("sequence_prob identity and worked examples") {
    prob_dist fair = prob_dist::make({0.5, 0.5});
    sequence_prob_result r = sequence_prob(fair, "0000011111", "01");
    CHECK(r.probability == doctest::Approx(std::pow(2.0, -10)).epsilon(1e-12));
    CHECK(r.exponent_form == doctest::Approx(r.probability).epsilon(1e-9));
    // x of the type of q: probability e^{-n S(q)}.
    prob_dist q = prob_dist::make({2.0 / 3.0, 1.0 / 3.0});
    r = sequence_prob(q, "001", "01");
    CHECK(r.probability ==
          doctest::Approx(std::exp(-3.0 * shannon_entropy(q, units::nats))).epsilon(1e-12));
    // Hand multiplication: q=(2/3,1/3), x = "00" -> 4/9.
    r = sequence_prob(q, "00", "01");
    CHECK(r.probability == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    CHECK(r.exponent_form == doctest::Approx(4.0 / 9.0).epsilon(1e-9));
    CHECK_THROWS_AS(sequence_prob(prob_dist::make({1.0, 0.0}), "01", "01"),
                    zero_prob_symbol_error);
}

TEST_CASE("sequence_prob exponent identity on random draws") {
    rng gen(204);
    for (int trial = 0; trial < 1000; ++trial) {
        prob_dist q = random_dist(3, gen);
        std::string x;
        std::size_t len = 1 + gen.integer(14);
        for (std::size_t i = 0; i < len; ++i) x += "abc"[gen.integer(3)];
        sequence_prob_result r = sequence_prob(q, x, "abc");
        CHECK(std::abs(r.probability - r.exponent_form) <=
              1e-9 * std::max(r.probability, 1e-300));
    }
}

TEST_CASE("type_class_prob n=2 fair oracle by enumeration") {
    prob_dist fair = prob_dist::make({0.5, 0.5});
    // All 4 sequences of length 2; type (1/2,1/2) holds for "01","10".
    type_class_prob_result r = type_class_prob(fair, fair, 2);
    CHECK(r.exact == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.lower == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
    CHECK(r.upper == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.lower <= r.exact);
    CHECK(r.exact <= r.upper);
    // Point type: single sequence under the fair source.
    type_class_prob_result p = type_class_prob(fair, prob_dist::make({1.0, 0.0}), 3);
    CHECK(p.exact == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
    CHECK_THROWS_AS(type_class_prob(fair, prob_dist::make({0.3, 0.7}), 2), invalid_type_error);
}

TEST_CASE("type_class_prob sandwich holds for all binary types up to n=20") {
    rng gen(205);
    for (int trial = 0; trial < 20; ++trial) {
        prob_dist q = random_dist(2, gen);
        for (std::size_t n = 1; n <= 20; ++n) {
            for (std::size_t m = 0; m <= n; ++m) {
                prob_dist p = prob_dist::make({static_cast<double>(m) / n,
                                               static_cast<double>(n - m) / n});
                type_class_prob_result r = type_class_prob(q, p, n);
                CHECK(r.log_lower <= r.log_exact + 1e-9);
                CHECK(r.log_exact <= r.log_upper + 1e-9);
            }
        }
    }
}

TEST_CASE("confusion exponent of the fair vs unfair coin") {
    prob_dist fair = prob_dist::make({0.5, 0.5});
    prob_dist unfair = prob_dist::make({1.0 / 3.0, 2.0 / 3.0});
    double kl = kl_divergence(unfair, fair, units::nats);
    // Per-trial factor e^{-KL} = 3 * 2^{-5/3}: the decay of 3^n 2^{-5n/3}.
    CHECK(std::exp(-kl) == doctest::Approx(3.0 * std::pow(2.0, -5.0 / 3.0)).epsilon(1e-12));
    CHECK(std::exp(-kl) == doctest::Approx(0.9449407874).epsilon(1e-9));
    // The type-class probability tracks the same exponent (to polynomial factors).
    for (std::size_t n : {3u, 9u, 18u}) {
        prob_dist p = prob_dist::make({1.0 / 3.0, 2.0 / 3.0});
        type_class_prob_result r = type_class_prob(fair, p, n);
        CHECK(r.log_exact <= -static_cast<double>(n) * kl + 1e-12);
        CHECK(r.log_exact >= -static_cast<double>(n) * kl -
                                 2.0 * std::log(static_cast<double>(n) + 1.0) - 1e-12);
    }
}

TEST_CASE("sanov_exponent picks the closest candidate") {
    prob_dist fair = prob_dist::make({0.5, 0.5});
    CHECK(sanov_exponent(fair, {fair}).exponent == doctest::Approx(0.0));
    sanov_result r = sanov_exponent(fair, {prob_dist::make({1.0 / 3.0, 2.0 / 3.0})},
                                    units::nats);
    CHECK(r.exponent == doctest::Approx(0.0566330123).epsilon(1e-8));
    // Two candidates: the nearer one wins (compare the two KL values directly).
    std::vector<prob_dist> set = {prob_dist::make({1.0 / 3.0, 2.0 / 3.0}),
                                  prob_dist::make({0.45, 0.55})};
    double kl0 = kl_divergence(set[0], fair, units::nats);
    double kl1 = kl_divergence(set[1], fair, units::nats);
    REQUIRE(kl1 < kl0);
    CHECK(sanov_exponent(fair, set).argmin_index == 1);
    CHECK_THROWS_AS(sanov_exponent(fair, {}), empty_set_error);
}

TEST_CASE("evolve_stochastic basics and monotonicity") {
    prob_dist p = prob_dist::make({0.2, 0.3, 0.5});
    stochastic_matrix id = stochastic_matrix::make(
        {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
    prob_dist evolved = evolve_stochastic(p, id);
    for (int i = 0; i < 3; ++i) CHECK(evolved.probs[i] == doctest::Approx(p.probs[i]));
    // Rank-one map: columns all equal, output independent of the input.
    stochastic_matrix flat = stochastic_matrix::make(
        {{0.1, 0.1, 0.1}, {0.6, 0.6, 0.6}, {0.3, 0.3, 0.3}});
    prob_dist stationary = evolve_stochastic(p, flat);
    CHECK(stationary.probs[1] == doctest::Approx(0.6));
    rng gen(206);
    for (int trial = 0; trial < 1000; ++trial) {
        prob_dist x = random_dist(4, gen), a = random_dist(4, gen);
        stochastic_matrix t = random_stochastic(4, gen);
        CHECK(kl_divergence(evolve_stochastic(x, t), evolve_stochastic(a, t), units::nats) <=
              kl_divergence(x, a, units::nats) + 1e-12);
    }
}

TEST_CASE("mutual information never grows under local stochastic maps") {
    rng gen(207);
    for (int trial = 0; trial < 300; ++trial) {
        prob_dist joint = random_dist(9, gen);
        stochastic_matrix ta = random_stochastic(3, gen), tb = random_stochastic(3, gen);
        // Product map acting independently on each marginal.
        std::vector<std::vector<double>> prod(9, std::vector<double>(9, 0.0));
        for (int a2 = 0; a2 < 3; ++a2)
            for (int b2 = 0; b2 < 3; ++b2)
                for (int a1 = 0; a1 < 3; ++a1)
                    for (int b1 = 0; b1 < 3; ++b1)
                        prod[a2 * 3 + b2][a1 * 3 + b1] = ta.entries[a2][a1] * tb.entries[b2][b1];
        prob_dist evolved = evolve_stochastic(joint, stochastic_matrix{prod});
        CHECK(mutual_information(evolved, 3, 3, units::nats) <=
              mutual_information(joint, 3, 3, units::nats) + 1e-12);
    }
}

TEST_CASE("mixing increases entropy, log-sum inequality holds") {
    rng gen(208);
    for (int trial = 0; trial < 300; ++trial) {
        prob_dist w = random_dist(3, gen);
        prob_dist x1 = random_dist(4, gen), x2 = random_dist(4, gen), x3 = random_dist(4, gen);
        std::vector<double> mix(4, 0.0);
        for (int i = 0; i < 4; ++i) {
            mix[i] = w.probs[0] * x1.probs[i] + w.probs[1] * x2.probs[i] +
                     w.probs[2] * x3.probs[i];
        }
        double mixed = shannon_entropy(prob_dist{mix, {}}, units::nats);
        double averaged = w.probs[0] * shannon_entropy(x1, units::nats) +
                          w.probs[1] * shannon_entropy(x2, units::nats) +
                          w.probs[2] * shannon_entropy(x3, units::nats);
        CHECK(mixed >= averaged - 1e-12);
        // sum x_i ln(x_i / a_i) >= (sum x) ln(sum x / sum a)
        double sx = 0, sa = 0, lsum = 0;
        for (int i = 0; i < 4; ++i) {
            double xi = gen.uniform() + 1e-6, ai = gen.uniform() + 1e-6;
            sx += xi;
            sa += ai;
            lsum += xi * std::log(xi / ai);
        }
        CHECK(lsum >= sx * std::log(sx / sa) - 1e-12);
    }
}

TEST_CASE("units flag converts consistently") {
    prob_dist p = prob_dist::make({0.25, 0.75});
    CHECK(shannon_entropy(p, units::bits) ==
          doctest::Approx(shannon_entropy(p, units::nats) / std::log(2.0)).epsilon(1e-14));
}

}  // TEST_SUITE
