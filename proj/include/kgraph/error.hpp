#pragma once

#include <stdexcept>
#include <string>

namespace kgraph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed documents, dangling ids, non-composable squares, bad tables.
class InputError : public Error {
 public:
  using Error::Error;
};

// A caller broke a documented precondition (wrong rank, disconnected
// factor, non-composable arguments).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace kgraph

#include <cstddef>

namespace kgraph {

// Node counter shared by the search routines. charge() throws once the
// limit is passed so a caller never sees a partial answer.
class Budget {
 public:
  static constexpr std::size_t kDefault = 1'000'000;

  explicit Budget(std::size_t limit = kDefault) : limit_(limit) {}

  void charge(const char* what, std::size_t n = 1) {
    used_ += n;
    if (used_ > limit_) {
      throw BudgetExceeded(std::string(what) + ": budget of " + std::to_string(limit_) +
                           " nodes exceeded");
    }
  }

  std::size_t used() const { return used_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};

}  // namespace kgraph
