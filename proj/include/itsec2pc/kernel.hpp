#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "itsec2pc/distribution.hpp"

namespace itsec2pc {

// Conditional pmf: one exact output distribution per input tuple, with every
// input tuple of the product alphabet covered.
class ConditionalKernel {
  public:
    ConditionalKernel() = default;

    static ConditionalKernel make(std::vector<Variable> inputs, std::vector<Variable> outputs,
                                  std::map<Tuple, std::map<Tuple, Rational>> rows) {
        ConditionalKernel k;
        k.inputs_ = std::move(inputs);
        k.outputs_ = std::move(outputs);
        std::size_t expected = 1;
        for (const auto& v : k.inputs_) expected *= v.alphabet.size();
        if (rows.size() != expected)
            throw RowMassError("kernel must define exactly one row per input tuple");
        for (auto& [in, row] : rows) {
            k.check_tuple(k.inputs_, in);
            Rational total = 0;
            std::map<Tuple, Rational> cleaned;
            for (auto& [out, p] : row) {
                k.check_tuple(k.outputs_, out);
                if (p < 0) throw RowMassError("negative kernel weight");
                if (p > 0) cleaned.emplace(out, p);
                total += p;
            }
            if (total != 1)
                throw RowMassError("kernel row sums to " + format_rational(total) + ", expected 1");
            k.rows_.emplace(in, std::move(cleaned));
        }
        return k;
    }

    // Deterministic kernel: a single unit-mass output per input tuple.
    static ConditionalKernel deterministic(std::vector<Variable> inputs,
                                           std::vector<Variable> outputs,
                                           const std::function<Tuple(const Tuple&)>& fn) {
        std::map<Tuple, std::map<Tuple, Rational>> rows;
        Tuple in(inputs.size(), 0);
        for (;;) {
            rows[in][fn(in)] = 1;
            std::size_t i = 0;
            for (; i < in.size(); ++i) {
                if (++in[i] < inputs[i].alphabet.size()) break;
                in[i] = 0;
            }
            if (i == in.size()) break;
        }
        return make(std::move(inputs), std::move(outputs), std::move(rows));
    }

    const std::vector<Variable>& inputs() const { return inputs_; }
    const std::vector<Variable>& outputs() const { return outputs_; }
    const std::map<Tuple, std::map<Tuple, Rational>>& rows() const { return rows_; }

    const std::map<Tuple, Rational>& row(const Tuple& in) const {
        auto it = rows_.find(in);
        if (it == rows_.end()) throw WiringMismatch("kernel row lookup for unknown input tuple");
        return it->second;
    }

  private:
    void check_tuple(const std::vector<Variable>& vars, const Tuple& t) const {
        if (t.size() != vars.size()) throw AlphabetError("kernel tuple arity mismatch");
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] >= vars[i].alphabet.size()) throw AlphabetError("kernel symbol out of range");
    }

    std::vector<Variable> inputs_;
    std::vector<Variable> outputs_;
    std::map<Tuple, std::map<Tuple, Rational>> rows_;
};

// Extends `dist` by the kernel outputs, driving the kernel inputs through
// `wiring` (an arbitrary deterministic function of the current tuple).
// weight(x, u) = weight(x) * row(wiring(x))(u), exactly.
inline JointDistribution apply_kernel(const JointDistribution& dist, const ConditionalKernel& kernel,
                                      const std::function<Tuple(const Tuple&)>& wiring) {
    std::vector<Variable> vars = dist.variables();
    for (const auto& out : kernel.outputs()) {
        for (const auto& v : vars)
            if (v.name == out.name)
                throw WiringMismatch("kernel output '" + out.name + "' clashes with existing variable");
        vars.push_back(out);
    }
    std::vector<std::pair<Tuple, Rational>> entries;
    for (const auto& [tuple, p] : dist.weights()) {
        Tuple in = wiring(tuple);
        if (in.size() != kernel.inputs().size())
            throw WiringMismatch("wiring produced tuple of wrong arity");
        for (std::size_t i = 0; i < in.size(); ++i)
            if (in[i] >= kernel.inputs()[i].alphabet.size())
                throw WiringMismatch("wiring produced out-of-range symbol");
        for (const auto& [out, q] : kernel.row(in)) {
            Tuple t = tuple;
            t.insert(t.end(), out.begin(), out.end());
            entries.emplace_back(std::move(t), p * q);
        }
    }
    return JointDistribution::make(std::move(vars), entries);
}

// Wiring by variable name: each kernel input reads the dist variable with the
// same position in `names`; alphabets must match exactly.
inline JointDistribution apply_kernel(const JointDistribution& dist, const ConditionalKernel& kernel,
                                      const std::vector<std::string>& names) {
    if (names.size() != kernel.inputs().size())
        throw WiringMismatch("wiring names count != kernel input count");
    std::vector<std::size_t> idx;
    idx.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        std::size_t vi;
        try {
            vi = dist.var_index(names[i]);
        } catch (const UnknownVariable& e) {
            throw WiringMismatch(e.what());
        }
        if (dist.variables()[vi].alphabet != kernel.inputs()[i].alphabet)
            throw WiringMismatch("alphabet mismatch wiring '" + names[i] + "'");
        idx.push_back(vi);
    }
    return apply_kernel(dist, kernel, [idx](const Tuple& t) {
        Tuple in(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) in[i] = t[idx[i]];
        return in;
    });
}

}  // namespace itsec2pc
