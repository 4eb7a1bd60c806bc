#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace locfrac {

using Id = std::string;

enum class TieBreak { Lex, RevLex };

enum class ErrorCode {
    AxiomFailure,
    FormulaUnsupported,
    SideUnsupported,
    BudgetExhausted,
    ParseError,
    InternalInconsistency,
    ConstructionFailed,
    NoRetraction,
    BoundExceeded,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string message, std::vector<Id> witnesses = {})
        : std::runtime_error(message), code_(code), witnesses_(std::move(witnesses)) {}

    ErrorCode code() const { return code_; }
    const std::vector<Id>& witnesses() const { return witnesses_; }

  private:
    ErrorCode code_;
    std::vector<Id> witnesses_;
};

// Shared step counter for the exhaustive searches. Exhaustion is an error
// distinct from a negative search result.
class Budget {
  public:
    explicit Budget(long long steps = 50'000'000) : remaining_(steps) {}

    void tick(long long n = 1) {
        remaining_ -= n;
        if (remaining_ < 0)
            throw Error(ErrorCode::BudgetExhausted, "enumeration budget exhausted");
    }

    long long remaining() const { return remaining_; }

  private:
    long long remaining_;
};

inline Budget& default_budget() {
    thread_local Budget b;
    b = Budget();
    return b;
}

template <typename... Ts>
std::string cat_str(const Ts&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
}

// Union-find over dense indices, used by every colimit computation.
class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i)
            parent_[i] = i;
    }

    std::size_t find(std::size_t a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }

    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  private:
    std::vector<std::size_t> parent_;
};

}  // namespace locfrac
