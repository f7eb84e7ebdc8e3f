#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "itsec2pc/alphabet.hpp"
#include "itsec2pc/errors.hpp"
#include "itsec2pc/rational.hpp"

namespace itsec2pc {

struct Variable {
    std::string name;
    Alphabet alphabet;

    bool operator==(const Variable& o) const { return name == o.name && alphabet == o.alphabet; }
};

// A point of the product alphabet, one symbol index per variable.
using Tuple = std::vector<std::uint32_t>;

// Exact joint pmf over a finite product alphabet. Weights are non-negative
// rationals summing to exactly 1; zero entries are never stored, so equality
// of the weight maps is equality of distributions.
class JointDistribution {
  public:
    JointDistribution() = default;

    static JointDistribution make(std::vector<Variable> variables,
                                  const std::vector<std::pair<Tuple, Rational>>& entries) {
        JointDistribution d;
        d.variables_ = std::move(variables);
        Rational total = 0;
        for (const auto& [tuple, p] : entries) {
            d.check_tuple(tuple);
            if (p < 0) throw NonUnitMass("negative weight");
            if (d.weights_.count(tuple)) throw DuplicateTuple("duplicate tuple");
            if (p > 0) d.weights_.emplace(tuple, p);
            total += p;
        }
        if (total != 1) throw NonUnitMass("weights sum to " + format_rational(total) + ", expected 1");
        return d;
    }

    const std::vector<Variable>& variables() const { return variables_; }
    const std::map<Tuple, Rational>& weights() const { return weights_; }

    Rational weight(const Tuple& t) const {
        check_tuple(t);
        auto it = weights_.find(t);
        return it == weights_.end() ? Rational(0) : it->second;
    }

    std::size_t var_index(const std::string& name) const {
        for (std::size_t i = 0; i < variables_.size(); ++i)
            if (variables_[i].name == name) return i;
        throw UnknownVariable("unknown variable '" + name + "'");
    }

    // Indices for a group of variable names; names must be distinct.
    std::vector<std::size_t> group_indices(const std::vector<std::string>& names) const {
        std::vector<std::size_t> idx;
        idx.reserve(names.size());
        for (const auto& n : names) {
            std::size_t i = var_index(n);
            if (std::find(idx.begin(), idx.end(), i) != idx.end())
                throw UnknownVariable("repeated variable '" + n + "' in group");
            idx.push_back(i);
        }
        return idx;
    }

    std::vector<std::string> tuple_symbols(const Tuple& t) const {
        check_tuple(t);
        std::vector<std::string> out(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) out[i] = variables_[i].alphabet.symbol(t[i]);
        return out;
    }

    bool operator==(const JointDistribution& o) const {
        return variables_ == o.variables_ && weights_ == o.weights_;
    }
    bool operator!=(const JointDistribution& o) const { return !(*this == o); }

  private:
    friend JointDistribution marginalize(const JointDistribution&, const std::vector<std::string>&);
    friend JointDistribution rename_variables(const JointDistribution&, const std::vector<std::string>&);
    friend JointDistribution adjoin_map(const JointDistribution&, Variable,
                                        const std::function<std::uint32_t(const Tuple&)>&);
    friend JointDistribution product(const JointDistribution&, const JointDistribution&);
    friend std::pair<Rational, JointDistribution> condition_on(
        const JointDistribution&, const std::string&, const std::function<bool(std::uint32_t)>&);

    void check_tuple(const Tuple& t) const {
        if (t.size() != variables_.size()) throw UnknownSymbol("tuple arity mismatch");
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] >= variables_[i].alphabet.size())
                throw UnknownSymbol("symbol index out of range for variable '" + variables_[i].name + "'");
    }

    std::vector<Variable> variables_;
    std::map<Tuple, Rational> weights_;
};

// Entry keyed by symbol labels, the form used by file input.
struct WeightEntry {
    std::vector<std::string> symbols;
    Rational p;
};

inline JointDistribution make_joint(std::vector<Variable> variables,
                                    const std::vector<WeightEntry>& entries) {
    std::vector<std::pair<Tuple, Rational>> indexed;
    indexed.reserve(entries.size());
    for (const auto& e : entries) {
        if (e.symbols.size() != variables.size()) throw UnknownSymbol("tuple arity mismatch");
        Tuple t(e.symbols.size());
        for (std::size_t i = 0; i < e.symbols.size(); ++i)
            t[i] = variables[i].alphabet.index_of(e.symbols[i]);
        indexed.emplace_back(std::move(t), e.p);
    }
    return JointDistribution::make(std::move(variables), indexed);
}

inline JointDistribution marginalize(const JointDistribution& dist,
                                     const std::vector<std::string>& kept) {
    auto idx = dist.group_indices(kept);
    JointDistribution out;
    out.variables_.reserve(idx.size());
    for (auto i : idx) out.variables_.push_back(dist.variables()[i]);
    for (const auto& [tuple, p] : dist.weights()) {
        Tuple sub(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) sub[k] = tuple[idx[k]];
        out.weights_[sub] += p;
    }
    return out;
}

inline JointDistribution rename_variables(const JointDistribution& dist,
                                          const std::vector<std::string>& new_names) {
    if (new_names.size() != dist.variables().size())
        throw UnknownVariable("rename arity mismatch");
    JointDistribution out = dist;
    for (std::size_t i = 0; i < new_names.size(); ++i) out.variables_[i].name = new_names[i];
    // names must stay distinct
    std::vector<std::string> sorted = new_names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw UnknownVariable("duplicate variable name after rename");
    return out;
}

// Appends a column computed deterministically from the full tuple.
inline JointDistribution adjoin_map(const JointDistribution& dist, Variable var,
                                    const std::function<std::uint32_t(const Tuple&)>& fn) {
    for (const auto& v : dist.variables())
        if (v.name == var.name) throw WiringMismatch("variable '" + var.name + "' already present");
    JointDistribution out;
    out.variables_ = dist.variables();
    out.variables_.push_back(std::move(var));
    const Alphabet& alpha = out.variables_.back().alphabet;
    for (const auto& [tuple, p] : dist.weights()) {
        std::uint32_t s = fn(tuple);
        if (s >= alpha.size()) throw WiringMismatch("adjoined map produced out-of-range symbol");
        Tuple t = tuple;
        t.push_back(s);
        out.weights_.emplace(std::move(t), p);
    }
    return out;
}

// Independent product; variable names must not clash.
inline JointDistribution product(const JointDistribution& a, const JointDistribution& b) {
    JointDistribution out;
    out.variables_ = a.variables();
    for (const auto& v : b.variables()) {
        for (const auto& w : a.variables())
            if (w.name == v.name) throw WiringMismatch("variable '" + v.name + "' on both sides");
        out.variables_.push_back(v);
    }
    for (const auto& [ta, pa] : a.weights())
        for (const auto& [tb, pb] : b.weights()) {
            Tuple t = ta;
            t.insert(t.end(), tb.begin(), tb.end());
            out.weights_.emplace(std::move(t), pa * pb);
        }
    return out;
}

// Conditions on {keep(symbol of var)} and renormalizes; returns the exact mass
// of the kept event together with the conditional distribution.
inline std::pair<Rational, JointDistribution> condition_on(
    const JointDistribution& dist, const std::string& var,
    const std::function<bool(std::uint32_t)>& keep) {
    std::size_t vi = dist.var_index(var);
    Rational mass = 0;
    for (const auto& [tuple, p] : dist.weights())
        if (keep(tuple[vi])) mass += p;
    if (mass == 0) throw Error("conditioning on a zero-mass event");
    JointDistribution out;
    out.variables_ = dist.variables();
    for (const auto& [tuple, p] : dist.weights())
        if (keep(tuple[vi])) out.weights_.emplace(tuple, p / mass);
    return {mass, out};
}

namespace detail {

inline std::map<Tuple, Rational> group_marginal(const JointDistribution& dist,
                                                const std::vector<std::size_t>& idx) {
    std::map<Tuple, Rational> acc;
    for (const auto& [tuple, p] : dist.weights()) {
        Tuple sub(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) sub[k] = tuple[idx[k]];
        acc[sub] += p;
    }
    return acc;
}

inline double entropy_of(const std::map<Tuple, Rational>& pmf) {
    double h = 0.0;
    for (const auto& [tuple, p] : pmf) {
        double x = to_double(p);
        if (x > 0.0) h -= x * std::log2(x);
    }
    return h;
}

}  // namespace detail

// Shannon entropy in bits of the exact marginal over `vars`.
inline double entropy(const JointDistribution& dist, const std::vector<std::string>& vars) {
    return detail::entropy_of(detail::group_marginal(dist, dist.group_indices(vars)));
}

// Conditional mutual information I(A;B|C) in bits. Tiny negatives produced by
// float rounding are clamped to zero.
inline double mutual_information(const JointDistribution& dist,
                                 const std::vector<std::string>& group_a,
                                 const std::vector<std::string>& group_b,
                                 const std::vector<std::string>& conditioning = {}) {
    auto ia = dist.group_indices(group_a);
    auto ib = dist.group_indices(group_b);
    auto ic = dist.group_indices(conditioning);
    auto overlap = [](const std::vector<std::size_t>& u, const std::vector<std::size_t>& v) {
        for (auto x : u)
            if (std::find(v.begin(), v.end(), x) != v.end()) return true;
        return false;
    };
    if (overlap(ia, ib) || overlap(ia, ic) || overlap(ib, ic))
        throw OverlappingGroups("mutual information groups must be disjoint");

    auto concat = [](std::vector<std::size_t> u, const std::vector<std::size_t>& v) {
        u.insert(u.end(), v.begin(), v.end());
        return u;
    };
    double hac = detail::entropy_of(detail::group_marginal(dist, concat(ia, ic)));
    double hbc = detail::entropy_of(detail::group_marginal(dist, concat(ib, ic)));
    double habc = detail::entropy_of(detail::group_marginal(dist, concat(concat(ia, ib), ic)));
    double hc = ic.empty() ? 0.0 : detail::entropy_of(detail::group_marginal(dist, ic));
    double value = hac + hbc - habc - hc;
    if (value < 0.0 && value > -1e-9) return 0.0;
    return value;
}

// (1/2) sum |p - q| as an exact rational; both arguments must share variable
// lists and alphabets.
inline Rational variational_distance(const JointDistribution& p, const JointDistribution& q) {
    if (p.variables() != q.variables())
        throw AlphabetMismatch("variational distance needs identical variable lists");
    Rational total = 0;
    auto it = p.weights().begin();
    auto jt = q.weights().begin();
    while (it != p.weights().end() || jt != q.weights().end()) {
        if (jt == q.weights().end() || (it != p.weights().end() && it->first < jt->first)) {
            total += it->second;
            ++it;
        } else if (it == p.weights().end() || jt->first < it->first) {
            total += jt->second;
            ++jt;
        } else {
            total += abs(it->second - jt->second);
            ++it;
            ++jt;
        }
    }
    return total / 2;
}

}  // namespace itsec2pc
