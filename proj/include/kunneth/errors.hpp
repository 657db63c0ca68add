#pragma once

#include <stdexcept>
#include <string>

namespace kunneth {

/// Malformed input text (complex files, barcode JSON, metric files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A product or Rips enumeration would exceed the configured simplex budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(std::size_t budget)
        : std::runtime_error("simplex budget of " + std::to_string(budget) + " exceeded"),
          budget_(budget) {}

    std::size_t budget() const { return budget_; }

private:
    std::size_t budget_;
};

/// Input that parses but violates a mathematical precondition.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace kunneth
