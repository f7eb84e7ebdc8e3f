#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "itsec2pc/commoninfo.hpp"
#include "itsec2pc/distribution.hpp"

namespace itsec2pc {

struct WynerConfig {
    std::size_t z_size = 0;  // 0 selects the support-size product |X||Y|
    int restarts = 64;
    int iterations = 500;
    std::uint64_t seed = 1;
    double tolerance = 1e-6;
};

// A candidate decomposition (p_z, p_x|z, p_y|z) together with the information
// quantities of the coupling it induces on the true joint. markov_residual is
// always reported, never assumed zero.
struct WynerWitness {
    std::vector<std::string> z_alphabet;
    std::vector<std::string> x_labels, y_labels;  // support symbols (left/right)
    std::vector<double> p_z;
    std::vector<std::vector<double>> p_x_given_z, p_y_given_z;  // [z][symbol]
    double achieved_info = 0.0;     // I(X,Y;Z)
    double conditional_leak = 0.0;  // I(Z;X|Y) + I(Z;Y|X)
    double markov_residual = 0.0;   // I(X;Y|Z)
    bool exact = false;             // deterministic common-part construction
};

// Exact witness Z = W_{X,Y}: valid for any joint, optimal iff trivial.
inline WynerWitness common_part_witness(const JointDistribution& dist,
                                        const std::vector<std::string>& left,
                                        const std::vector<std::string>& right) {
    BipartiteGraph g = graphical_representation(dist, left, right);
    ComponentLabeling lab = common_part(g);
    WynerWitness w;
    w.exact = true;
    for (int c = 0; c < lab.component_count; ++c) w.z_alphabet.push_back(std::to_string(c));
    for (std::uint32_t x = 0; x < g.left_symbols.size(); ++x) w.x_labels.push_back(g.left_label(x));
    for (std::uint32_t y = 0; y < g.right_symbols.size(); ++y) w.y_labels.push_back(g.right_label(y));
    w.p_z.resize(lab.component_count, 0.0);
    w.p_x_given_z.assign(lab.component_count, std::vector<double>(g.left_symbols.size(), 0.0));
    w.p_y_given_z.assign(lab.component_count, std::vector<double>(g.right_symbols.size(), 0.0));
    for (int c = 0; c < lab.component_count; ++c) {
        w.p_z[c] = to_double(lab.component_mass[c]);
        for (std::uint32_t x : lab.left_members[c])
            w.p_x_given_z[c][x] = to_double(g.left_mass[x] / lab.component_mass[c]);
        for (std::uint32_t y : lab.right_members[c])
            w.p_y_given_z[c][y] = to_double(g.right_mass[y] / lab.component_mass[c]);
    }
    w.achieved_info = mutual_information(dist, left, right);
    w.conditional_leak = 0.0;
    w.markov_residual = 0.0;
    return w;
}

namespace detail {

struct WynerProblem {
    std::vector<std::string> x_labels, y_labels;
    std::size_t nx = 0, ny = 0;
    std::vector<double> p;             // nx*ny dense joint
    std::vector<std::uint32_t> cells;  // support cell ids i*ny+j
    std::vector<int> comp_of_cell;     // component label per support cell
    double mutual_info = 0.0;
    std::size_t alphabet_product = 0;
};

inline WynerProblem make_problem(const JointDistribution& dist,
                                 const std::vector<std::string>& left,
                                 const std::vector<std::string>& right) {
    BipartiteGraph g = graphical_representation(dist, left, right);
    ComponentLabeling lab = common_part(g);
    WynerProblem pr;
    pr.nx = g.left_symbols.size();
    pr.ny = g.right_symbols.size();
    for (std::uint32_t x = 0; x < pr.nx; ++x) pr.x_labels.push_back(g.left_label(x));
    for (std::uint32_t y = 0; y < pr.ny; ++y) pr.y_labels.push_back(g.right_label(y));
    pr.p.assign(pr.nx * pr.ny, 0.0);
    for (std::uint32_t x = 0; x < pr.nx; ++x)
        for (const auto& [y, q] : g.adjacency[x]) {
            pr.p[x * pr.ny + y] = to_double(q);
            pr.cells.push_back(x * pr.ny + y);
            pr.comp_of_cell.push_back(lab.left_label(g.left_symbols[x]));
        }
    pr.mutual_info = mutual_information(dist, left, right);
    std::size_t ax = 1, ay = 1;
    for (auto i : dist.group_indices(left)) ax *= dist.variables()[i].alphabet.size();
    for (auto i : dist.group_indices(right)) ay *= dist.variables()[i].alphabet.size();
    pr.alphabet_product = ax * ay;
    return pr;
}

// One run of penalized alternating minimization from a given soft assignment
// q(z | x,y). The exponent beta = lambda/(1+lambda) ramps towards 1, after
// which pure mixture-fitting iterations shrink the Markov residual.
inline WynerWitness wyner_descend(const WynerProblem& pr, std::vector<double> q, std::size_t nz,
                                  int iterations) {
    const std::size_t ncell = pr.cells.size();
    std::vector<double> rz(nz), rx(nz * pr.nx), ry(nz * pr.ny);

    auto accumulate = [&]() {
        std::fill(rz.begin(), rz.end(), 0.0);
        std::fill(rx.begin(), rx.end(), 0.0);
        std::fill(ry.begin(), ry.end(), 0.0);
        for (std::size_t c = 0; c < ncell; ++c) {
            std::uint32_t cell = pr.cells[c];
            std::uint32_t i = cell / pr.ny, j = cell % pr.ny;
            double pij = pr.p[cell];
            for (std::size_t z = 0; z < nz; ++z) {
                double w = pij * q[c * nz + z];
                rz[z] += w;
                rx[z * pr.nx + i] += w;
                ry[z * pr.ny + j] += w;
            }
        }
        for (std::size_t z = 0; z < nz; ++z) {
            if (rz[z] <= 0.0) continue;
            for (std::size_t i = 0; i < pr.nx; ++i) rx[z * pr.nx + i] /= rz[z];
            for (std::size_t j = 0; j < pr.ny; ++j) ry[z * pr.ny + j] /= rz[z];
        }
    };

    const int ramp_end = std::max(1, iterations * 3 / 5);
    const int polish_start = std::max(1, iterations * 4 / 5);
    const double lambda0 = 1.0, lambda_max = 1e6;
    for (int it = 0; it < iterations; ++it) {
        accumulate();
        double beta;
        if (it >= polish_start) {
            beta = 1.0;  // exact mixture-fitting updates
        } else {
            double ramp = std::min(1.0, static_cast<double>(it) / ramp_end);
            double lambda = lambda0 * std::pow(lambda_max / lambda0, ramp);
            beta = lambda / (1.0 + lambda);
        }
        for (std::size_t c = 0; c < ncell; ++c) {
            std::uint32_t cell = pr.cells[c];
            std::uint32_t i = cell / pr.ny, j = cell % pr.ny;
            double norm = 0.0;
            for (std::size_t z = 0; z < nz; ++z) {
                double base = rx[z * pr.nx + i] * ry[z * pr.ny + j];
                double t = rz[z] > 0.0 && base > 0.0 ? rz[z] * std::pow(base, beta) : 0.0;
                q[c * nz + z] = t;
                norm += t;
            }
            if (norm > 0.0) {
                for (std::size_t z = 0; z < nz; ++z) q[c * nz + z] /= norm;
            } else {
                for (std::size_t z = 0; z < nz; ++z) q[c * nz + z] = 1.0 / nz;
            }
        }
    }
    accumulate();

    WynerWitness wit;
    wit.x_labels = pr.x_labels;
    wit.y_labels = pr.y_labels;
    for (std::size_t z = 0; z < nz; ++z) wit.z_alphabet.push_back("z" + std::to_string(z));
    wit.p_z.assign(rz.begin(), rz.end());
    wit.p_x_given_z.assign(nz, std::vector<double>(pr.nx, 0.0));
    wit.p_y_given_z.assign(nz, std::vector<double>(pr.ny, 0.0));
    for (std::size_t z = 0; z < nz; ++z) {
        for (std::size_t i = 0; i < pr.nx; ++i) wit.p_x_given_z[z][i] = rx[z * pr.nx + i];
        for (std::size_t j = 0; j < pr.ny; ++j) wit.p_y_given_z[z][j] = ry[z * pr.ny + j];
    }

    // plug-in information quantities of the coupling w = P(x,y) q(z|x,y)
    std::vector<double> pzy(nz * pr.ny, 0.0), pzx(nz * pr.nx, 0.0);
    std::vector<double> px(pr.nx, 0.0), py(pr.ny, 0.0);
    for (std::size_t c = 0; c < ncell; ++c) {
        std::uint32_t cell = pr.cells[c];
        std::uint32_t i = cell / pr.ny, j = cell % pr.ny;
        px[i] += pr.p[cell];
        py[j] += pr.p[cell];
        for (std::size_t z = 0; z < nz; ++z) {
            double w = pr.p[cell] * q[c * nz + z];
            pzx[z * pr.nx + i] += w;
            pzy[z * pr.ny + j] += w;
        }
    }
    double info = 0.0, residual = 0.0, leak = 0.0;
    for (std::size_t c = 0; c < ncell; ++c) {
        std::uint32_t cell = pr.cells[c];
        std::uint32_t i = cell / pr.ny, j = cell % pr.ny;
        double pij = pr.p[cell];
        for (std::size_t z = 0; z < nz; ++z) {
            double w = pij * q[c * nz + z];
            if (w <= 0.0) continue;
            info += w * std::log2(q[c * nz + z] / rz[z]);
            residual += w * std::log2((w / rz[z]) /
                                      (rx[z * pr.nx + i] * ry[z * pr.ny + j]));
            // I(Z;X|Y) + I(Z;Y|X), plug-in
            leak += w * std::log2(w * py[j] / (pzy[z * pr.ny + j] * pij));
            leak += w * std::log2(w * px[i] / (pzx[z * pr.nx + i] * pij));
        }
    }
    auto clamp0 = [](double v) { return (v < 0.0 && v > -1e-9) ? 0.0 : v; };
    wit.achieved_info = clamp0(info);
    wit.markov_residual = clamp0(residual);
    wit.conditional_leak = clamp0(leak);
    return wit;
}

inline std::vector<WynerWitness> wyner_solve_all(const WynerProblem& pr, std::size_t nz,
                                                 const WynerConfig& cfg) {
    const std::size_t ncell = pr.cells.size();
    std::vector<WynerWitness> results;
    for (int r = 0; r < cfg.restarts; ++r) {
        std::vector<double> q(ncell * nz, 0.0);
        bool init_done = false;
        auto hard = [&](const std::function<std::size_t(std::uint32_t, std::uint32_t)>& pick) {
            for (std::size_t c = 0; c < ncell; ++c) {
                std::uint32_t cell = pr.cells[c];
                q[c * nz + pick(cell / pr.ny, cell % pr.ny)] = 1.0;
            }
            init_done = true;
        };
        // deterministic structured starts, then random soft starts
        if (r == 0 && nz >= pr.nx) {
            hard([&](std::uint32_t i, std::uint32_t) { return i; });
        } else if (r == 1 && nz >= pr.ny) {
            hard([&](std::uint32_t, std::uint32_t j) { return j; });
        } else if (r == 2) {
            // hard assignment to the support component (the common part)
            std::size_t ncomp = 0;
            for (int c : pr.comp_of_cell) ncomp = std::max<std::size_t>(ncomp, c + 1);
            if (nz >= ncomp) {
                for (std::size_t c = 0; c < ncell; ++c)
                    q[c * nz + pr.comp_of_cell[c]] = 1.0;
                init_done = true;
            }
        } else if (r == 3 && nz >= ncell) {
            std::size_t c2 = 0;
            for (std::size_t c = 0; c < ncell; ++c) q[c * nz + c2++] = 1.0;
            init_done = true;
        }
        if (!init_done) {
            std::mt19937_64 gen(cfg.seed * 0x9e3779b97f4a7c15ULL + r);
            std::exponential_distribution<double> ex(1.0);
            for (std::size_t c = 0; c < ncell; ++c) {
                double norm = 0.0;
                for (std::size_t z = 0; z < nz; ++z) {
                    q[c * nz + z] = ex(gen) + 1e-6;
                    norm += q[c * nz + z];
                }
                for (std::size_t z = 0; z < nz; ++z) q[c * nz + z] /= norm;
            }
        }
        results.push_back(wyner_descend(pr, std::move(q), nz, cfg.iterations));
    }
    return results;
}

inline void validate_config(const WynerConfig& cfg) {
    if (cfg.restarts < 1 || cfg.iterations < 1 || !(cfg.tolerance > 0.0))
        throw BadConfig("restarts and iterations must be >= 1, tolerance > 0");
}

}  // namespace detail

// Heuristic upper bound on C(X;Y). Trivial joints bypass the solver: the
// common part is the optimal Z and gives achieved_info = I(X;Y) with zero
// residual, computed from exact rationals.
inline WynerWitness wyner_estimate(const JointDistribution& dist,
                                   const std::vector<std::string>& left,
                                   const std::vector<std::string>& right,
                                   const WynerConfig& config = {}) {
    detail::validate_config(config);
    auto pr = detail::make_problem(dist, left, right);
    std::size_t nz = config.z_size ? config.z_size : pr.nx * pr.ny;
    if (nz < 1 || nz > pr.alphabet_product)
        throw BadConfig("z_size must be between 1 and |X||Y|");
    if (is_trivial(dist, left, right).trivial) return common_part_witness(dist, left, right);

    auto results = detail::wyner_solve_all(pr, nz, config);
    const WynerWitness* best = nullptr;
    double best_score = 0.0;
    for (const auto& w : results) {
        double score = w.achieved_info + 1e6 * w.markov_residual;
        if (!best || score < best_score) {
            best = &w;
            best_score = score;
        }
    }
    return *best;
}

// Lemma-style gap witness search: a Z with markov_residual <= tolerance and
// conditional_leak <= delta. A none-found answer is inconclusive, not a proof
// of absence.
inline std::optional<WynerWitness> privacy_gap_witness(const JointDistribution& dist,
                                                       const std::vector<std::string>& left,
                                                       const std::vector<std::string>& right,
                                                       double delta,
                                                       const WynerConfig& config = {}) {
    detail::validate_config(config);
    if (delta < 0.0) throw BadConfig("delta must be non-negative");
    auto pr = detail::make_problem(dist, left, right);
    std::size_t nz = config.z_size ? config.z_size : pr.nx * pr.ny;
    if (nz < 1 || nz > pr.alphabet_product)
        throw BadConfig("z_size must be between 1 and |X||Y|");
    if (is_trivial(dist, left, right).trivial) return common_part_witness(dist, left, right);

    auto results = detail::wyner_solve_all(pr, nz, config);
    const WynerWitness* best = nullptr;
    for (const auto& w : results) {
        if (w.markov_residual > config.tolerance) continue;
        if (w.conditional_leak > delta + 1e-12) continue;
        if (!best || w.conditional_leak < best->conditional_leak) best = &w;
    }
    if (!best) return std::nullopt;
    return *best;
}

}  // namespace itsec2pc
