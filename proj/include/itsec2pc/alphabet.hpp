#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itsec2pc/errors.hpp"

namespace itsec2pc {

// Ordered set of distinct symbol labels. The declaration order is canonical
// and defines serialization order everywhere.
class Alphabet {
  public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
        if (symbols_.empty()) throw AlphabetError("alphabet must be non-empty");
        for (std::uint32_t i = 0; i < symbols_.size(); ++i) {
            auto [it, fresh] = index_.emplace(symbols_[i], i);
            if (!fresh) throw AlphabetError("duplicate symbol '" + symbols_[i] + "'");
        }
    }

    std::size_t size() const { return symbols_.size(); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    const std::string& symbol(std::uint32_t i) const { return symbols_.at(i); }

    std::optional<std::uint32_t> find(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::uint32_t index_of(const std::string& label) const {
        auto idx = find(label);
        if (!idx) throw UnknownSymbol("unknown symbol '" + label + "'");
        return *idx;
    }

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

  private:
    std::vector<std::string> symbols_;
    std::map<std::string, std::uint32_t> index_;
};

// Binary {0,1} and the reserved single-symbol pad alphabet used when a party
// gains nothing in a protocol round.
inline Alphabet binary_alphabet() { return Alphabet({"0", "1"}); }
inline Alphabet null_alphabet() { return Alphabet({"_"}); }

}  // namespace itsec2pc
