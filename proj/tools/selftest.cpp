// Invariant suite behind `releq selftest`.  One check per library invariant,
// each reporting pass/fail with the observed worst case.
#include "selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "releq/entanglement.hpp"
#include "releq/json_io.hpp"
#include "releq/protocols.hpp"
#include "releq/qalgo.hpp"

namespace {

using namespace releq;

struct check_runner {
    std::string only;
    int failures = 0;
    int ran = 0;

    void run(const std::string& module, const std::string& name,
             const std::function<bool(std::string&)>& body) {
        if (!only.empty() && module != only) return;
        ++ran;
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("%-4s %-14s %-58s %s\n", ok ? "ok" : "FAIL", module.c_str(), name.c_str(),
                    detail.c_str());
    }
};

cxmat random_hermitian(Eigen::Index d, rng& gen) {
    cxmat g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            g(i, j) = std::complex<double>(gen.gaussian(), gen.gaussian());
    return 0.5 * (g + g.adjoint());
}

prob_dist random_dist(std::size_t n, rng& gen) {
    std::vector<double> v(n);
    double sum = 0.0;
    for (double& x : v) {
        x = -std::log(std::max(gen.uniform(), 1e-15));
        sum += x;
    }
    for (double& x : v) x /= sum;
    return prob_dist{v, {}};
}

stochastic_matrix random_stochastic(std::size_t n, rng& gen) {
    std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        prob_dist col = random_dist(n, gen);
        for (std::size_t j = 0; j < n; ++j) t[j][k] = col.probs[j];
    }
    return stochastic_matrix{t};
}

kraus_channel random_local_product_channel(rng& gen) {
    kraus_channel a = random_channel(2, 2, gen);
    kraus_channel b = random_channel(2, 2, gen);
    std::vector<cxmat> ops;
    for (const cxmat& x : a.ops)
        for (const cxmat& y : b.ops) ops.push_back(tensor(x, y));
    return kraus_channel::make(ops);
}

std::string fmt(double v) { return format_sig10(v); }

}  // namespace

int run_selftest(bool fast, std::uint64_t seed, const std::string& only) {
    check_runner t;
    t.only = only;
    const int big = fast ? 100 : 1000;
    const int mid = fast ? 50 : 500;
    const int ree_batch = fast ? 6 : 100;

    // ---------------- matcore ----------------
    t.run("matcore", "eigen reconstruction error <= 1e-10", [&](std::string& d) {
        rng gen(seed + 1);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            Eigen::Index dim = 2 + static_cast<Eigen::Index>(gen.integer(7));
            cxmat m = random_hermitian(dim, gen);
            hermitian_eig_result e = hermitian_eig(m);
            cxmat back = e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.adjoint();
            worst = std::max(worst, max_abs_diff(back, m));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-10;
    });
    t.run("matcore", "tensor associativity within 1e-12", [&](std::string& d) {
        rng gen(seed + 2);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            cxmat a = random_hermitian(2, gen), b = random_hermitian(3, gen),
                  c = random_hermitian(2, gen);
            worst = std::max(worst, max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-12;
    });
    t.run("matcore", "partial trace preserves the trace", [&](std::string& d) {
        rng gen(seed + 3);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            cxmat m = random_hermitian(6, gen);
            double tr = m.trace().real();
            worst = std::max(worst, std::abs(partial_trace(m, 2, 3, 0).trace().real() - tr));
            worst = std::max(worst, std::abs(partial_trace(m, 3, 2, 1).trace().real() - tr));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-12;
    });
    t.run("matcore", "partial transpose preserves trace and Hermiticity", [&](std::string& d) {
        rng gen(seed + 4);
        double worst = 0.0;
        for (int trial = 0; trial < big; ++trial) {
            cxmat m = random_hermitian(6, gen);
            cxmat pt = partial_transpose(m, 2, 3, 1);
            worst = std::max(worst, std::abs(pt.trace().real() - m.trace().real()));
            worst = std::max(worst, hermiticity_defect(pt));
            worst = std::max(worst, max_abs_diff(partial_transpose(pt, 2, 3, 1), m));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-12;
    });

    // ---------------- classical_info ----------------
    t.run("classical", "KL >= 0 with equality iff equal", [&](std::string& d) {
        rng gen(seed + 5);
        double worst = 0.0;
        bool ok = true;
        for (int trial = 0; trial < big; ++trial) {
            prob_dist p = random_dist(4, gen), q = random_dist(4, gen);
            double kl = kl_divergence(p, q, units::nats);
            if (kl < 0.0) ok = false;
            if (kl_divergence(p, p, units::nats) > 1e-12) ok = false;
            worst = std::max(worst, kl_divergence(p, p, units::nats));
        }
        d = "self-KL worst " + fmt(worst);
        return ok;
    });
    t.run("classical", "KL monotone under stochastic evolution", [&](std::string& d) {
        rng gen(seed + 6);
        double worst = -1e300;
        for (int trial = 0; trial < big; ++trial) {
            prob_dist p = random_dist(4, gen), a = random_dist(4, gen);
            stochastic_matrix tr = random_stochastic(4, gen);
            double before = kl_divergence(p, a, units::nats);
            double after = kl_divergence(evolve_stochastic(p, tr), evolve_stochastic(a, tr),
                                         units::nats);
            worst = std::max(worst, after - before);
        }
        d = "max increase " + fmt(worst);
        return worst <= 1e-12;
    });
    t.run("classical", "MI non-increasing under local stochastic maps", [&](std::string& d) {
        rng gen(seed + 7);
        double worst = -1e300;
        for (int trial = 0; trial < mid; ++trial) {
            prob_dist joint = random_dist(9, gen);
            stochastic_matrix ta = random_stochastic(3, gen), tb = random_stochastic(3, gen);
            std::vector<std::vector<double>> prod(9, std::vector<double>(9, 0.0));
            for (int a2 = 0; a2 < 3; ++a2)
                for (int b2 = 0; b2 < 3; ++b2)
                    for (int a1 = 0; a1 < 3; ++a1)
                        for (int b1 = 0; b1 < 3; ++b1)
                            prod[a2 * 3 + b2][a1 * 3 + b1] =
                                ta.entries[a2][a1] * tb.entries[b2][b1];
            prob_dist evolved = evolve_stochastic(joint, stochastic_matrix{prod});
            worst = std::max(worst, mutual_information(evolved, 3, 3, units::nats) -
                                        mutual_information(joint, 3, 3, units::nats));
        }
        d = "max increase " + fmt(worst);
        return worst <= 1e-12;
    });
    t.run("classical", "sequence-probability exponent identity", [&](std::string& d) {
        rng gen(seed + 8);
        double worst = 0.0;
        for (int trial = 0; trial < big; ++trial) {
            prob_dist q = random_dist(3, gen);
            std::string x, alphabet = "abc";
            std::size_t len = 1 + gen.integer(12);
            for (std::size_t i = 0; i < len; ++i) x += alphabet[gen.integer(3)];
            sequence_prob_result r = sequence_prob(q, x, alphabet);
            worst = std::max(worst, std::abs(r.probability - r.exponent_form) /
                                        std::max(r.probability, 1e-300));
        }
        d = "worst rel err " + fmt(worst);
        return worst <= 1e-9;
    });
    t.run("classical", "type-class size sandwich exact for binary n <= 20", [&](std::string& d) {
        bool ok = true;
        for (std::size_t n = 1; n <= 20 && ok; ++n) {
            for (std::size_t m = 0; m <= n && ok; ++m) {
                bigint cls = binomial(n, m);
                double frac = static_cast<double>(m) / static_cast<double>(n);
                double s = -(xlnx(frac) + xlnx(1.0 - frac));
                double upper = static_cast<double>(n) * s;
                double lower = upper - 2.0 * std::log(static_cast<double>(n) + 1.0);
                double log_cls = std::log(cls.convert_to<double>());
                if (log_cls > upper + 1e-9 || log_cls < lower - 1e-9) ok = false;
            }
        }
        d = ok ? "all types n<=20" : "violation";
        return ok;
    });
    t.run("classical", "mixing concavity and log-sum inequality", [&](std::string& d) {
        rng gen(seed + 9);
        bool ok = true;
        for (int trial = 0; trial < big; ++trial) {
            prob_dist w = random_dist(3, gen);
            prob_dist x1 = random_dist(4, gen), x2 = random_dist(4, gen), x3 = random_dist(4, gen);
            std::vector<double> mix(4, 0.0);
            for (int i = 0; i < 4; ++i)
                mix[i] = w.probs[0] * x1.probs[i] + w.probs[1] * x2.probs[i] +
                         w.probs[2] * x3.probs[i];
            double lhs = shannon_entropy(prob_dist{mix, {}}, units::nats);
            double rhs = w.probs[0] * shannon_entropy(x1, units::nats) +
                         w.probs[1] * shannon_entropy(x2, units::nats) +
                         w.probs[2] * shannon_entropy(x3, units::nats);
            if (lhs < rhs - 1e-12) ok = false;
            // log-sum: sum x_i ln(x_i/a_i) >= (sum x) ln(sum x / sum a)
            double sx = 0, sa = 0, lsum = 0;
            for (int i = 0; i < 4; ++i) {
                double xi = gen.uniform() + 1e-6, ai = gen.uniform() + 1e-6;
                sx += xi;
                sa += ai;
                lsum += xi * std::log(xi / ai);
            }
            if (lsum < sx * std::log(sx / sa) - 1e-12) ok = false;
        }
        d = "";
        return ok;
    });

    // ---------------- qstate ----------------
    t.run("qstate", "Schmidt count <= min(dA,dB), reassembly 1e-9", [&](std::string& d) {
        rng gen(seed + 10);
        double worst = 0.0;
        bool ok = true;
        for (int trial = 0; trial < 100; ++trial) {
            ket psi = random_state(12, gen);
            psi.dims = {3, 4};
            schmidt_decomposition sd = schmidt(psi);
            int nonzero = 0;
            for (double g : sd.coeffs)
                if (g > 1e-12) ++nonzero;
            if (nonzero > 3) ok = false;
            ket back = schmidt_reassemble(sd, 3, 4);
            if (!equal_up_to_phase(back.amps, psi.amps, 1e-9)) ok = false;
        }
        d = "worst " + fmt(worst);
        return ok;
    });
    t.run("qstate", "S(rho_A) = S(rho_B) for bipartite pure states", [&](std::string& d) {
        rng gen(seed + 11);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            ket psi = random_state(8, gen);
            psi.dims = {2, 4};
            density_matrix rho = density_matrix::from_ket(psi);
            worst = std::max(worst, std::abs(von_neumann(reduced_state(rho, 0), units::nats) -
                                             von_neumann(reduced_state(rho, 1), units::nats)));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-9;
    });
    t.run("qstate", "purify then partial trace is the identity", [&](std::string& d) {
        rng gen(seed + 12);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            density_matrix rho = random_density(4, 3, gen);
            ket psi = purify(rho);
            cxmat back = partial_trace(projector(psi.amps), 4, 4, 0);
            worst = std::max(worst, max_abs_diff(back, rho.mat));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-9;
    });
    t.run("qstate", "Bures and fidelity satisfy dB^2 + F^2 = 1", [&](std::string& d) {
        rng gen(seed + 13);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            density_matrix a = random_density(3, 2, gen), b = random_density(3, 3, gen);
            double f = fidelity(a, b), db = bures_distance(a, b);
            worst = std::max(worst, std::abs(db * db + f * f - 1.0));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-12;
    });

    // ---------------- qchannel ----------------
    t.run("qchannel", "relative entropy monotone under CP maps", [&](std::string& d) {
        rng gen(seed + 14);
        double worst = -1e300;
        for (int trial = 0; trial < big; ++trial) {
            density_matrix s = random_density(3, 3, gen), r = random_density(3, 3, gen);
            kraus_channel ch = random_channel(3, 2, gen);
            double before = qrelent(s, r, units::nats);
            double after = qrelent(apply(ch, s), apply(ch, r), units::nats);
            worst = std::max(worst, after - before);
        }
        d = "max increase " + fmt(worst);
        return worst <= 1e-9;
    });
    t.run("qchannel", "selective-branch relative entropy sum bound", [&](std::string& d) {
        rng gen(seed + 15);
        double worst = -1e300;
        for (int trial = 0; trial < mid; ++trial) {
            density_matrix s = random_density(3, 3, gen), r = random_density(3, 3, gen);
            kraus_channel ch = random_channel(3, 3, gen);
            double total = 0.0;
            for (const cxmat& v : ch.ops) {
                cxmat si = v * s.mat * v.adjoint();        // kept with its weight
                cxmat ri = v * r.mat * v.adjoint();
                double tri = ri.trace().real();
                if (si.trace().real() < 1e-14 || tri < 1e-14) continue;
                total += qrelent_operators(si, ri / tri, units::nats);
            }
            worst = std::max(worst, total - qrelent(s, r, units::nats));
        }
        d = "max excess " + fmt(worst);
        return worst <= 1e-9;
    });
    t.run("qchannel", "dilation reproduces the Kraus action", [&](std::string& d) {
        rng gen(seed + 16);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            kraus_channel ch = random_channel(2, 3, gen);
            dilation dil = dilate(ch);
            density_matrix rho = random_density(2, 2, gen);
            worst = std::max(worst, max_abs_diff(apply(ch, rho).mat, apply_dilation(dil, rho).mat));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-9;
    });
    t.run("qchannel", "relent: unitary invariance, partial-trace monotonicity, additivity",
          [&](std::string& d) {
              rng gen(seed + 17);
              double worst = 0.0;
              for (int trial = 0; trial < mid; ++trial) {
                  density_matrix s = random_density(2, 2, gen), r = random_density(2, 2, gen);
                  double base = qrelent(s, r, units::nats);
                  cxmat u = random_unitary(2, gen);
                  density_matrix su{u * s.mat * u.adjoint(), s.dims};
                  density_matrix ru{u * r.mat * u.adjoint(), r.dims};
                  worst = std::max(worst, std::abs(qrelent(su, ru, units::nats) - base));
                  density_matrix s2 = random_density(2, 2, gen), r2 = random_density(2, 2, gen);
                  double add = qrelent(s2, r2, units::nats);
                  density_matrix sp{tensor(s.mat, s2.mat), {2, 2}};
                  density_matrix rp{tensor(r.mat, r2.mat), {2, 2}};
                  double joint = qrelent(sp, rp, units::nats);
                  worst = std::max(worst, std::abs(joint - base - add));
                  double traced = qrelent(reduced_state(sp, 0), reduced_state(rp, 0), units::nats);
                  if (traced > base + 1e-9) worst = std::max(worst, traced - base);
              }
              d = "worst " + fmt(worst);
              return worst <= 1e-9;
          });
    t.run("qchannel", "Bures distance contractive under channels", [&](std::string& d) {
        rng gen(seed + 18);
        double worst = -1e300;
        for (int trial = 0; trial < mid; ++trial) {
            density_matrix a = random_density(2, 2, gen), b = random_density(2, 2, gen);
            kraus_channel ch = random_channel(2, 2, gen);
            worst = std::max(worst,
                             bures_distance(apply(ch, a), apply(ch, b)) - bures_distance(a, b));
        }
        d = "max increase " + fmt(worst);
        return worst <= 1e-9;
    });

    // ---------------- qentropy ----------------
    t.run("qentropy", "Araki-Lieb sandwich on random bipartite states", [&](std::string& d) {
        rng gen(seed + 19);
        bool ok = true;
        for (int trial = 0; trial < big; ++trial) {
            density_matrix rho = random_density(6, 1 + static_cast<Eigen::Index>(gen.integer(6)),
                                                gen);
            rho.dims = {2, 3};
            double sa = von_neumann(reduced_state(rho, 0), units::nats);
            double sb = von_neumann(reduced_state(rho, 1), units::nats);
            double sab = von_neumann(rho, units::nats);
            if (sab > sa + sb + 1e-9 || sab < std::abs(sa - sb) - 1e-9) ok = false;
        }
        d = "";
        return ok;
    });
    t.run("qentropy", "entropy additivity and concavity", [&](std::string& d) {
        rng gen(seed + 20);
        double worst = 0.0;
        bool ok = true;
        for (int trial = 0; trial < 200; ++trial) {
            density_matrix a = random_density(3, 2, gen), b = random_density(2, 2, gen);
            density_matrix prod{tensor(a.mat, b.mat), {3, 2}};
            worst = std::max(worst, std::abs(von_neumann(prod, units::nats) -
                                             von_neumann(a, units::nats) -
                                             von_neumann(b, units::nats)));
            density_matrix c = random_density(3, 3, gen);
            double lambda = gen.uniform();
            cxmat mixed = lambda * a.mat + (1 - lambda) * c.mat;
            double mix_s = von_neumann(density_matrix{mixed, {3}}, units::nats);
            double avg_s = lambda * von_neumann(a, units::nats) +
                           (1 - lambda) * von_neumann(c, units::nats);
            if (mix_s < avg_s - 1e-9) ok = false;
        }
        d = "additivity worst " + fmt(worst);
        return ok && worst <= 1e-9;
    });
    t.run("qentropy", "measured Shannon entropy >= von Neumann entropy", [&](std::string& d) {
        rng gen(seed + 21);
        double worst = -1e300;
        for (int trial = 0; trial < 200; ++trial) {
            density_matrix rho = random_density(3, 3, gen);
            cxmat u = random_unitary(3, gen);
            std::vector<cxmat> effects;
            for (Eigen::Index i = 0; i < 3; ++i) effects.push_back(projector(u.col(i)));
            double shannon = shannon_entropy(povm_probs(effects, rho), units::nats);
            worst = std::max(worst, von_neumann(rho, units::nats) - shannon);
        }
        d = "max excess " + fmt(worst);
        return worst <= 1e-9;
    });
    t.run("qentropy", "Holevo equals symbol(x)state mutual information", [&](std::string& d) {
        rng gen(seed + 22);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<ensemble::member> items;
            prob_dist w = random_dist(3, gen);
            for (int i = 0; i < 3; ++i) items.push_back({w.probs[i], random_density(2, 2, gen)});
            ensemble e = ensemble::make(items);
            double chi = holevo(e, units::nats);
            // rho_SymSt = sum p_i |i><i| (x) rho_i, dims (3, 2)
            cxmat joint = cxmat::Zero(6, 6);
            for (int i = 0; i < 3; ++i) {
                cxvec flag = cxvec::Zero(3);
                flag[i] = 1.0;
                joint += e.items[i].prob * tensor(projector(flag), e.items[i].state.mat);
            }
            density_matrix rho_joint{joint, {3, 2}};
            worst = std::max(worst, std::abs(qmutual(rho_joint, units::nats) - chi));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-9;
    });
    t.run("qentropy", "Donald's equality", [&](std::string& d) {
        rng gen(seed + 23);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            prob_dist w = random_dist(3, gen);
            std::vector<ensemble::member> items;
            for (int i = 0; i < 3; ++i) items.push_back({w.probs[i], random_density(3, 3, gen)});
            ensemble e = ensemble::make(items);
            density_matrix avg = e.average();
            density_matrix sigma = random_density(3, 3, gen);
            double lhs = qrelent(avg, sigma, units::nats);
            double rhs = 0.0;
            for (const auto& m : e.items) {
                lhs += m.prob * qrelent(m.state, avg, units::nats);
                rhs += m.prob * qrelent(m.state, sigma, units::nats);
            }
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-9;
    });
    t.run("qentropy", "accessible info <= Holevo over random POVM sweep", [&](std::string& d) {
        rng gen(seed + 24);
        double worst = -1e300;
        for (int trial = 0; trial < (fast ? 5 : 20); ++trial) {
            prob_dist w = random_dist(3, gen);
            std::vector<ensemble::member> items;
            for (int i = 0; i < 3; ++i) items.push_back({w.probs[i], random_density(2, 2, gen)});
            ensemble e = ensemble::make(items);
            double chi = holevo(e, units::nats);
            for (int sweep = 0; sweep < (fast ? 20 : 200); ++sweep) {
                auto povm = random_povm(2, 2 + gen.integer(3), gen);
                worst = std::max(worst, accessible_info(e, povm, units::nats) - chi);
            }
        }
        d = "max excess " + fmt(worst);
        return worst <= 1e-9;
    });

    // ---------------- entanglement ----------------
    t.run("entanglement", "separable states have REE < 1e-3", [&](std::string& d) {
        rng gen(seed + 25);
        double worst = 0.0;
        ree_options opts;
        opts.seed = seed + 250;
        for (int trial = 0; trial < ree_batch; ++trial) {
            separable_ansatz sep = separable_ansatz::random(2, 2, 4, gen);
            density_matrix rho{sep.assemble(), {2, 2}};
            rho.mat /= rho.mat.trace().real();
            worst = std::max(worst, ree(rho, opts).value);
        }
        d = "worst " + fmt(worst);
        return worst < 1e-3;
    });
    t.run("entanglement", "REE invariant under local unitaries (3e-3)", [&](std::string& d) {
        rng gen(seed + 26);
        double worst = 0.0;
        ree_options opts;
        opts.seed = seed + 260;
        for (int trial = 0; trial < (fast ? 2 : 10); ++trial) {
            density_matrix rho = random_density(4, 2, gen);
            rho.dims = {2, 2};
            cxmat u = tensor(random_unitary(2, gen), random_unitary(2, gen));
            density_matrix rotated{u * rho.mat * u.adjoint(), {2, 2}};
            worst = std::max(worst, std::abs(ree(rho, opts).value - ree(rotated, opts).value));
        }
        d = "worst " + fmt(worst);
        return worst <= 3e-3;
    });
    t.run("entanglement", "REE monotone under local channels (3e-3)", [&](std::string& d) {
        rng gen(seed + 27);
        double worst = -1e300;
        ree_options opts;
        opts.seed = seed + 270;
        for (int trial = 0; trial < (fast ? 2 : 10); ++trial) {
            density_matrix rho = random_density(4, 2, gen);
            rho.dims = {2, 2};
            kraus_channel local = random_local_product_channel(gen);
            density_matrix mapped = apply(local, rho);
            worst = std::max(worst, ree(mapped, opts).value - ree(rho, opts).value);
        }
        d = "max increase " + fmt(worst);
        return worst <= 3e-3;
    });
    t.run("entanglement", "REE of pure states equals E_v (2e-3)", [&](std::string& d) {
        rng gen(seed + 28);
        double worst = 0.0;
        ree_options opts;
        opts.seed = seed + 280;
        for (int trial = 0; trial < (fast ? 3 : 10); ++trial) {
            ket psi = random_state(4, gen);
            psi.dims = {2, 2};
            double ev = pure_entanglement(psi, units::bits);
            worst = std::max(worst, std::abs(ree(density_matrix::from_ket(psi), opts).value - ev));
        }
        d = "worst " + fmt(worst);
        return worst <= 2e-3;
    });
    t.run("entanglement", "convexity: REE(average) <= ensemble entanglement",
          [&](std::string& d) {
              rng gen(seed + 29);
              ree_options opts;
              opts.seed = seed + 290;
              double worst = -1e300;
              for (int trial = 0; trial < (fast ? 2 : 10); ++trial) {
                  std::vector<ensemble::member> items;
                  prob_dist w = random_dist(2, gen);
                  for (int i = 0; i < 2; ++i) {
                      ket psi = random_state(4, gen);
                      psi.dims = {2, 2};
                      items.push_back({w.probs[i], density_matrix::from_ket(psi)});
                  }
                  ensemble e = ensemble::make(items);
                  worst = std::max(worst,
                                   ree(e.average(), opts).value - ensemble_entanglement(e));
              }
              d = "max excess " + fmt(worst);
              return worst <= 2e-3;
          });
    t.run("entanglement", "memory-extended loss inequalities", [&](std::string& d) {
        rng gen(seed + 30);
        bool ok = true;
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<ensemble::member> items;
            prob_dist w = random_dist(2, gen);
            for (int i = 0; i < 2; ++i) {
                ket psi = random_state(4, gen);
                psi.dims = {2, 2};
                items.push_back({w.probs[i], density_matrix::from_ket(psi)});
            }
            ensemble e = ensemble::make(items);
            double decomp = ensemble_entanglement(e);
            density_matrix avg = e.average();
            double s_ab = von_neumann(avg, units::bits);
            // Pure overall members: the decomposition value may not exceed
            // the assistance bound plus the mixing entropy.
            if (decomp > assistance_upper_bound(avg) + s_ab + 1e-9) ok = false;
        }
        d = "";
        return ok;
    });

    // ---------------- protocols ----------------
    t.run("protocols", "teleportation exact on all four branches", [&](std::string& d) {
        rng gen(seed + 31);
        double worst_f = 1.0, worst_res = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            ket in = random_state(2, gen);
            for (const auto& [p, outcome] : teleport_branches(in)) {
                worst_f = std::min(worst_f, outcome.fidelity_to_input);
                worst_res = std::max(worst_res,
                                     max_abs_diff(outcome.alice_residual, 0.5 * identity(2)));
                (void)p;
            }
        }
        d = "min fidelity " + fmt(worst_f);
        return worst_f >= 1.0 - 1e-12 && worst_res <= 1e-10;
    });
    t.run("protocols", "SDC capacity = 1 + E_v on pure states", [&](std::string& d) {
        rng gen(seed + 32);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            ket psi = random_state(4, gen);
            psi.dims = {2, 2};
            double c = sdc_capacity(density_matrix::from_ket(psi));
            worst = std::max(worst, std::abs(c - 1.0 - pure_entanglement(psi)));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-9;
    });
    t.run("protocols", "SDC capacity <= CGDC bound on mixed states", [&](std::string& d) {
        rng gen(seed + 33);
        double worst = -1e300;
        for (int trial = 0; trial < 100; ++trial) {
            density_matrix w0 = random_density(4, 1 + static_cast<Eigen::Index>(gen.integer(4)),
                                               gen);
            w0.dims = {2, 2};
            worst = std::max(worst, sdc_capacity(w0) - cgdc_bound(w0));
        }
        d = "max excess " + fmt(worst);
        return worst <= 1e-9;
    });
    t.run("protocols", "Landauer decomposition identity", [&](std::string& d) {
        rng gen(seed + 34);
        double worst = 0.0;
        for (int trial = 0; trial < mid; ++trial) {
            density_matrix rho = random_density(3, 3, gen), omega = random_density(3, 3, gen);
            double er = landauer_erasure(rho, omega, units::nats);
            double decomposed = qrelent(rho, omega, units::nats) + von_neumann(rho, units::nats);
            worst = std::max(worst, std::abs(er - decomposed));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-9;
    });
    t.run("protocols", "compression trend toward the source entropy", [&](std::string& d) {
        const double theta = 3.14159265358979323846 / 6.0;
        double s = 0.0;
        bool ok = true;
        double final_rate = 0.0;
        for (std::size_t n : {4u, 8u, 12u, 16u}) {
            compression_report r = schumacher_compress(theta, n, 8, seed);
            s = r.source_entropy_bits;
            if (r.rate_bits_per_symbol < s - 1e-9) ok = false;
            if (r.success_prob < 0.7) ok = false;
            final_rate = r.rate_bits_per_symbol;
        }
        if (final_rate > s + 0.1) ok = false;
        d = "final rate " + fmt(final_rate) + " vs S " + fmt(s);
        return ok;
    });

    // ---------------- qalgo ----------------
    t.run("qalgo", "Deutsch verdicts correct for all four functions", [&](std::string& d) {
        bool ok = deutsch("00").verdict == deutsch_verdict::constant &&
                  deutsch("11").verdict == deutsch_verdict::constant &&
                  deutsch("01").verdict == deutsch_verdict::varying &&
                  deutsch("10").verdict == deutsch_verdict::varying;
        d = "holevo diag " + fmt(deutsch("00").holevo_diag);
        return ok && std::abs(deutsch("00").holevo_diag - 1.0) < 1e-9;
    });
    t.run("qalgo", "Grover MI matches the block-diagonal three-term form", [&](std::string& d) {
        // n = 3 keeps the explicit rho_MC at 64 dimensions.
        grover_trace_result trace = grover_trace(3, 0.9, 6);
        const Eigen::Index n = 8;
        cxmat rho0 = cxmat::Identity(1, 1), qubit(2, 2);
        qubit << 0.9, 0, 0, 0.1;
        for (int i = 0; i < 3; ++i) rho0 = tensor(rho0, qubit);
        const cxmat h = hadamard_transform(3);
        std::vector<cxmat> blocks;
        for (Eigen::Index i = 0; i < n; ++i) {
            cxmat ub_h = h;
            ub_h.row(i) *= -1.0;
            cxmat w = h * ub_h;
            w.row(0) *= -1.0;
            blocks.push_back(w);
        }
        double worst = 0.0;
        std::vector<cxmat> states(8, rho0);
        for (int k = 0; k <= 6; ++k) {
            if (k > 0)
                for (Eigen::Index i = 0; i < n; ++i)
                    states[i] = blocks[i] * states[i] * blocks[i].adjoint();
            cxmat rho_mc = cxmat::Zero(8 * 8, 8 * 8);
            for (Eigen::Index i = 0; i < n; ++i) {
                cxvec flag = cxvec::Zero(8);
                flag[i] = 1.0;
                rho_mc += (1.0 / 8.0) * tensor(projector(flag), states[i]);
            }
            density_matrix joint{rho_mc, {8, 8}};
            worst = std::max(worst, std::abs(qmutual(joint, units::bits) -
                                             trace.iterations[k].mutual_info_bits));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-9;
    });
    t.run("qalgo", "branch entropies constant under the Grover block", [&](std::string& d) {
        grover_trace_result trace = grover_trace(4, 0.7, 20);
        double worst = 0.0;
        for (const auto& it : trace.iterations) {
            worst = std::max(worst, std::abs(it.branch_entropy_mean_bits - trace.s0_bits));
        }
        d = "worst " + fmt(worst);
        return worst <= 1e-10;
    });
    t.run("qalgo", "MI capped by log2 N - S0 and by log2 N", [&](std::string& d) {
        bool ok = true;
        for (double p : {1.0, 0.7}) {
            grover_trace_result trace = grover_trace(4, p, 40);
            for (const auto& it : trace.iterations) {
                if (it.mutual_info_bits > 4.0 - trace.s0_bits + 1e-9) ok = false;
                if (it.mutual_info_bits < -1e-12) ok = false;
            }
        }
        d = "";
        return ok;
    });
    t.run("qalgo", "near-recurrence trace distance below 0.2", [&](std::string& d) {
        grover_trace_result trace = grover_trace(4, 1.0, 12);
        density_matrix start{trace.averaged_states[0], {16}};
        density_matrix recur{trace.averaged_states[6], {16}};
        double td = trace_distance(start, recur);
        d = "TD(0,6) " + fmt(td);
        return td < 0.2;
    });
    t.run("qalgo", "step bounds hold along the trace", [&](std::string& d) {
        grover_trace_result trace = grover_trace(4, 1.0, 40);
        step_bound_report rep = step_bound_check(trace);
        double worst = -1e300;
        for (const auto& e : rep.entries) worst = std::max(worst, e.delta_s_bits - e.bound_bits);
        bool first = rep.first_step_delta_bits <= rep.first_step_cap_bits + 1e-9;
        d = "max excess " + fmt(worst);
        return worst <= 1e-9 && first;
    });
    t.run("qalgo", "bitwise oracle gains one bit per query", [&](std::string& d) {
        bitwise_trace_result r = bitwise_oracle_trace(4);
        bool ok = r.queries_to_full_correlation == 4;
        for (std::size_t q = 0; q < r.mutual_info_bits.size(); ++q) {
            if (std::abs(r.mutual_info_bits[q] - static_cast<double>(q + 1)) > 1e-9) ok = false;
        }
        d = "";
        return ok;
    });

    std::printf("%d/%d checks passed\n", t.ran - t.failures, t.ran);
    return t.failures == 0 ? 0 : 1;
}
