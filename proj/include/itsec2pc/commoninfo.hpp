#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itsec2pc/distribution.hpp"

namespace itsec2pc {

// Support bipartite graph of a two-group joint: one node per left/right
// sub-tuple with positive marginal, one weighted edge per support point.
struct BipartiteGraph {
    std::vector<Variable> left_vars, right_vars;
    std::vector<Tuple> left_symbols, right_symbols;  // canonical (sorted) order
    std::map<Tuple, std::uint32_t> left_index, right_index;
    std::vector<std::map<std::uint32_t, Rational>> adjacency;  // by left node
    std::vector<Rational> left_mass, right_mass;

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& row : adjacency) n += row.size();
        return n;
    }

    std::string left_label(std::uint32_t i) const { return join(left_vars, left_symbols[i]); }
    std::string right_label(std::uint32_t j) const { return join(right_vars, right_symbols[j]); }

  private:
    static std::string join(const std::vector<Variable>& vars, const Tuple& t) {
        std::string s;
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (k) s += ",";
            s += vars[k].alphabet.symbol(t[k]);
        }
        return s;
    }
};

// Connected components of the graph. Symbols outside the support never appear
// in the maps; they carry the reserved null label.
struct ComponentLabeling {
    static constexpr int kNullLabel = -1;

    std::map<Tuple, int> component_of_left, component_of_right;
    int component_count = 0;
    std::vector<Rational> component_mass;                       // by label
    std::vector<std::vector<std::uint32_t>> left_members;       // graph node ids by label
    std::vector<std::vector<std::uint32_t>> right_members;

    int left_label(const Tuple& t) const {
        auto it = component_of_left.find(t);
        return it == component_of_left.end() ? kNullLabel : it->second;
    }
    int right_label(const Tuple& t) const {
        auto it = component_of_right.find(t);
        return it == component_of_right.end() ? kNullLabel : it->second;
    }
};

namespace detail {

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

inline void check_two_groups(const JointDistribution& dist, const std::vector<std::string>& left,
                             const std::vector<std::string>& right) {
    if (left.empty() || right.empty())
        throw NeedTwoGroups("left and right groups must both be non-empty");
    auto li = dist.group_indices(left);
    auto ri = dist.group_indices(right);
    for (auto i : li)
        for (auto j : ri)
            if (i == j) throw NeedTwoGroups("left and right groups must be disjoint");
}

}  // namespace detail

inline BipartiteGraph graphical_representation(const JointDistribution& dist,
                                               const std::vector<std::string>& left,
                                               const std::vector<std::string>& right) {
    detail::check_two_groups(dist, left, right);
    auto li = dist.group_indices(left);
    auto ri = dist.group_indices(right);

    BipartiteGraph g;
    for (auto i : li) g.left_vars.push_back(dist.variables()[i]);
    for (auto j : ri) g.right_vars.push_back(dist.variables()[j]);

    auto project = [](const Tuple& t, const std::vector<std::size_t>& idx) {
        Tuple sub(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) sub[k] = t[idx[k]];
        return sub;
    };
    // first pass: collect support symbols in canonical order
    std::map<Tuple, Rational> lmass, rmass;
    for (const auto& [tuple, p] : dist.weights()) {
        lmass[project(tuple, li)] += p;
        rmass[project(tuple, ri)] += p;
    }
    for (auto& [t, m] : lmass) {
        g.left_index.emplace(t, static_cast<std::uint32_t>(g.left_symbols.size()));
        g.left_symbols.push_back(t);
        g.left_mass.push_back(m);
    }
    for (auto& [t, m] : rmass) {
        g.right_index.emplace(t, static_cast<std::uint32_t>(g.right_symbols.size()));
        g.right_symbols.push_back(t);
        g.right_mass.push_back(m);
    }
    g.adjacency.assign(g.left_symbols.size(), {});
    for (const auto& [tuple, p] : dist.weights()) {
        std::uint32_t x = g.left_index.at(project(tuple, li));
        std::uint32_t y = g.right_index.at(project(tuple, ri));
        g.adjacency[x][y] += p;
    }
    return g;
}

// BFS/union-find labeling; labels are contiguous and ordered by the lowest
// left symbol they contain.
inline ComponentLabeling common_part(const BipartiteGraph& g) {
    const std::size_t nl = g.left_symbols.size();
    const std::size_t nr = g.right_symbols.size();
    detail::UnionFind uf(nl + nr);
    for (std::uint32_t x = 0; x < nl; ++x)
        for (const auto& [y, p] : g.adjacency[x]) uf.unite(x, nl + y);

    ComponentLabeling lab;
    std::map<std::size_t, int> root_to_label;
    for (std::uint32_t x = 0; x < nl; ++x) {
        std::size_t r = uf.find(x);
        if (!root_to_label.count(r)) {
            root_to_label.emplace(r, lab.component_count++);
            lab.component_mass.emplace_back(0);
            lab.left_members.emplace_back();
            lab.right_members.emplace_back();
        }
        int label = root_to_label.at(r);
        lab.component_of_left.emplace(g.left_symbols[x], label);
        lab.component_mass[label] += g.left_mass[x];
        lab.left_members[label].push_back(x);
    }
    for (std::uint32_t y = 0; y < nr; ++y) {
        // every support symbol has at least one edge, so its root is labeled
        int label = root_to_label.at(uf.find(nl + y));
        lab.component_of_right.emplace(g.right_symbols[y], label);
        lab.right_members[label].push_back(y);
    }
    return lab;
}

// K(X;Y): entropy of the component label of the support graph.
inline double gacs_korner(const JointDistribution& dist, const std::vector<std::string>& left,
                          const std::vector<std::string>& right) {
    auto lab = common_part(graphical_representation(dist, left, right));
    double h = 0.0;
    for (const auto& m : lab.component_mass) {
        double x = to_double(m);
        if (x > 0.0) h -= x * std::log2(x);
    }
    return h;
}

// Both sides with identical conditional rows merged into equivalence classes.
struct ReducedPair {
    std::map<Tuple, int> class_of_left, class_of_right;  // support symbols only
    int left_class_count = 0, right_class_count = 0;
    JointDistribution reduced_joint;  // over (Xt, Yt)
};

inline ReducedPair remove_redundancy(const JointDistribution& dist,
                                     const std::vector<std::string>& left,
                                     const std::vector<std::string>& right) {
    BipartiteGraph g = graphical_representation(dist, left, right);
    ReducedPair rp;

    // normalized row of each left node, exact
    auto normalized_row = [&](std::uint32_t x) {
        std::map<std::uint32_t, Rational> row;
        for (const auto& [y, p] : g.adjacency[x]) row.emplace(y, p / g.left_mass[x]);
        return row;
    };
    std::vector<std::map<std::uint32_t, Rational>> class_rows;
    std::vector<int> left_class(g.left_symbols.size());
    for (std::uint32_t x = 0; x < g.left_symbols.size(); ++x) {
        auto row = normalized_row(x);
        int cls = -1;
        for (std::size_t c = 0; c < class_rows.size(); ++c)
            if (class_rows[c] == row) {
                cls = static_cast<int>(c);
                break;
            }
        if (cls < 0) {
            cls = static_cast<int>(class_rows.size());
            class_rows.push_back(std::move(row));
        }
        left_class[x] = cls;
        rp.class_of_left.emplace(g.left_symbols[x], cls);
    }
    rp.left_class_count = static_cast<int>(class_rows.size());

    std::vector<std::map<std::uint32_t, Rational>> col(g.right_symbols.size());
    for (std::uint32_t x = 0; x < g.left_symbols.size(); ++x)
        for (const auto& [y, p] : g.adjacency[x]) col[y].emplace(x, p / g.right_mass[y]);
    std::vector<std::map<std::uint32_t, Rational>> class_cols;
    std::vector<int> right_class(g.right_symbols.size());
    for (std::uint32_t y = 0; y < g.right_symbols.size(); ++y) {
        int cls = -1;
        for (std::size_t c = 0; c < class_cols.size(); ++c)
            if (class_cols[c] == col[y]) {
                cls = static_cast<int>(c);
                break;
            }
        if (cls < 0) {
            cls = static_cast<int>(class_cols.size());
            class_cols.push_back(col[y]);
        }
        right_class[y] = cls;
        rp.class_of_right.emplace(g.right_symbols[y], cls);
    }
    rp.right_class_count = static_cast<int>(class_cols.size());

    auto labels = [](int n) {
        std::vector<std::string> v;
        for (int i = 0; i < n; ++i) v.push_back(std::to_string(i));
        return v;
    };
    std::map<Tuple, Rational> cells;
    for (std::uint32_t x = 0; x < g.left_symbols.size(); ++x)
        for (const auto& [y, p] : g.adjacency[x])
            cells[{static_cast<std::uint32_t>(left_class[x]),
                   static_cast<std::uint32_t>(right_class[y])}] += p;
    std::vector<std::pair<Tuple, Rational>> entries(cells.begin(), cells.end());
    rp.reduced_joint = JointDistribution::make(
        {{"Xt", Alphabet(labels(rp.left_class_count))}, {"Yt", Alphabet(labels(rp.right_class_count))}},
        entries);
    return rp;
}

// Evidence for a triviality verdict: either a per-component rank-1
// factorization that reproduces every edge weight, or one component with two
// non-proportional rows.
struct FactorComponent {
    int label;
    Rational weight;                                       // component mass
    std::vector<std::pair<Tuple, Rational>> left_factor;   // P(x)/weight
    std::vector<std::pair<Tuple, Rational>> right_factor;  // P(y)/weight
};

struct NonTrivialWitness {
    int component;
    Tuple x, x_prime;
    // normalized conditional rows over the component's right symbols
    std::vector<std::pair<Tuple, Rational>> row_x, row_x_prime;
};

struct TrivialityCertificate {
    bool trivial = false;
    std::vector<FactorComponent> factorization;
    std::optional<NonTrivialWitness> witness;

    const char* verdict() const { return trivial ? "trivial" : "non_trivial"; }
};

namespace detail {

// Method m1: within every component, all rows proportional to the first one.
inline TrivialityCertificate factorization_verdict(const BipartiteGraph& g,
                                                   const ComponentLabeling& lab) {
    TrivialityCertificate cert;
    cert.trivial = true;
    for (int c = 0; c < lab.component_count; ++c) {
        const auto& lm = lab.left_members[c];
        const auto& rm = lab.right_members[c];
        std::uint32_t base = lm.front();
        for (std::size_t k = 1; k < lm.size() && cert.trivial; ++k) {
            std::uint32_t x = lm[k];
            for (std::uint32_t y : rm) {
                auto wb = g.adjacency[base].find(y);
                auto wx = g.adjacency[x].find(y);
                Rational pb = wb == g.adjacency[base].end() ? Rational(0) : wb->second;
                Rational px = wx == g.adjacency[x].end() ? Rational(0) : wx->second;
                // cross-multiplied proportionality against the base row
                if (pb * g.left_mass[x] != px * g.left_mass[base]) {
                    cert.trivial = false;
                    NonTrivialWitness w;
                    w.component = c;
                    w.x = g.left_symbols[base];
                    w.x_prime = g.left_symbols[x];
                    for (std::uint32_t yy : rm) {
                        auto get = [&](std::uint32_t node, std::uint32_t col) {
                            auto it = g.adjacency[node].find(col);
                            return it == g.adjacency[node].end() ? Rational(0) : it->second;
                        };
                        w.row_x.emplace_back(g.right_symbols[yy], get(base, yy) / g.left_mass[base]);
                        w.row_x_prime.emplace_back(g.right_symbols[yy], get(x, yy) / g.left_mass[x]);
                    }
                    cert.witness = std::move(w);
                    break;
                }
            }
        }
        if (!cert.trivial) break;
    }
    if (cert.trivial) {
        for (int c = 0; c < lab.component_count; ++c) {
            FactorComponent fc;
            fc.label = c;
            fc.weight = lab.component_mass[c];
            for (std::uint32_t x : lab.left_members[c])
                fc.left_factor.emplace_back(g.left_symbols[x], g.left_mass[x] / fc.weight);
            for (std::uint32_t y : lab.right_members[c])
                fc.right_factor.emplace_back(g.right_symbols[y], g.right_mass[y] / fc.weight);
            cert.factorization.push_back(std::move(fc));
        }
    }
    return cert;
}

// Method m2: after redundancy removal the support must be a perfect matching
// between left and right classes (each class determines the other).
inline bool matching_verdict(const ReducedPair& rp) {
    std::map<std::uint32_t, std::uint32_t> xy, yx;
    for (const auto& [cell, p] : rp.reduced_joint.weights()) {
        auto [itx, freshx] = xy.emplace(cell[0], cell[1]);
        if (!freshx && itx->second != cell[1]) return false;
        auto [ity, freshy] = yx.emplace(cell[1], cell[0]);
        if (!freshy && ity->second != cell[0]) return false;
    }
    return true;
}

}  // namespace detail

// Exact triviality test, computed by two independent methods that must agree.
inline TrivialityCertificate is_trivial(const JointDistribution& dist,
                                        const std::vector<std::string>& left,
                                        const std::vector<std::string>& right) {
    BipartiteGraph g = graphical_representation(dist, left, right);
    ComponentLabeling lab = common_part(g);
    TrivialityCertificate cert = detail::factorization_verdict(g, lab);
    bool m2 = detail::matching_verdict(remove_redundancy(dist, left, right));
    if (cert.trivial != m2)
        throw MethodDisagreement("triviality methods disagree: factorization=" +
                                 std::string(cert.trivial ? "trivial" : "non_trivial") +
                                 " matching=" + std::string(m2 ? "trivial" : "non_trivial"));
    return cert;
}

// Re-derives the graph and checks the certificate's evidence against it.
inline bool verify_certificate(const JointDistribution& dist, const std::vector<std::string>& left,
                               const std::vector<std::string>& right,
                               const TrivialityCertificate& cert) {
    BipartiteGraph g = graphical_representation(dist, left, right);
    if (cert.trivial) {
        // every edge must be reproduced exactly as weight * L(x) * R(y)
        std::map<Tuple, std::pair<Rational, Rational>> lf;  // x -> (component weight, factor)
        std::map<Tuple, Rational> rf;
        std::size_t left_seen = 0, right_seen = 0;
        for (const auto& fc : cert.factorization) {
            for (const auto& [x, f] : fc.left_factor) {
                lf.emplace(x, std::make_pair(fc.weight, f));
                ++left_seen;
            }
            for (const auto& [y, f] : fc.right_factor) {
                rf.emplace(y, f);
                ++right_seen;
            }
        }
        if (left_seen != g.left_symbols.size() || right_seen != g.right_symbols.size()) return false;
        for (std::uint32_t x = 0; x < g.left_symbols.size(); ++x) {
            auto itx = lf.find(g.left_symbols[x]);
            if (itx == lf.end()) return false;
            for (const auto& [y, p] : g.adjacency[x]) {
                auto ity = rf.find(g.right_symbols[y]);
                if (ity == rf.end()) return false;
                if (itx->second.first * itx->second.second * ity->second != p) return false;
            }
        }
        return true;
    }
    if (!cert.witness) return false;
    const auto& w = *cert.witness;
    auto lab = common_part(g);
    if (lab.left_label(w.x) != w.component || lab.left_label(w.x_prime) != w.component) return false;
    // the two normalized rows must differ somewhere
    if (w.row_x.size() != w.row_x_prime.size()) return false;
    bool differ = false;
    for (std::size_t k = 0; k < w.row_x.size(); ++k) {
        if (w.row_x[k].first != w.row_x_prime[k].first) return false;
        if (w.row_x[k].second != w.row_x_prime[k].second) differ = true;
    }
    // and they must match the actual conditionals
    auto check_row = [&](const Tuple& x, const std::vector<std::pair<Tuple, Rational>>& row) {
        auto it = g.left_index.find(x);
        if (it == g.left_index.end()) return false;
        std::uint32_t xi = it->second;
        for (const auto& [y, v] : row) {
            auto yit = g.right_index.find(y);
            if (yit == g.right_index.end()) return false;
            auto eit = g.adjacency[xi].find(yit->second);
            Rational p = eit == g.adjacency[xi].end() ? Rational(0) : eit->second;
            if (v * g.left_mass[xi] != p) return false;
        }
        return true;
    };
    return differ && check_row(w.x, w.row_x) && check_row(w.x_prime, w.row_x_prime);
}

// Appends the component label of the (left,right) pair as a deterministic
// column named `name`.
inline JointDistribution adjoin_common_part(const JointDistribution& dist,
                                            const std::vector<std::string>& left,
                                            const std::vector<std::string>& right,
                                            const std::string& name) {
    BipartiteGraph g = graphical_representation(dist, left, right);
    ComponentLabeling lab = common_part(g);
    auto li = dist.group_indices(left);
    std::vector<std::string> labels;
    for (int c = 0; c < std::max(lab.component_count, 1); ++c) labels.push_back(std::to_string(c));
    return adjoin_map(dist, {name, Alphabet(labels)}, [&](const Tuple& t) {
        Tuple sub(li.size());
        for (std::size_t k = 0; k < li.size(); ++k) sub[k] = t[li[k]];
        return static_cast<std::uint32_t>(lab.component_of_left.at(sub));
    });
}

}  // namespace itsec2pc
