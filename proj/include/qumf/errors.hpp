#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qumf {

/// Base of every error thrown by the library.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input data could not be used (bad dimensions, bad indices, bad files).
class data_error : public error {
  public:
    using error::error;
};

/// A solver refused to proceed (size guards, stalled decomposition).
class solver_guard_error : public error {
  public:
    using error::error;
};

class degenerate_sample : public data_error {
  public:
    using data_error::data_error;
};

class index_out_of_range : public data_error {
  public:
    using data_error::data_error;
};

class dimension_mismatch : public data_error {
  public:
    using data_error::data_error;
};

class length_mismatch : public data_error {
  public:
    using data_error::data_error;
};

class invalid_spec : public data_error {
  public:
    using data_error::data_error;
};

class exhausted_redraws : public data_error {
  public:
    using data_error::data_error;
};

class empty_selection : public data_error {
  public:
    using data_error::data_error;
};

class too_large : public solver_guard_error {
  public:
    using solver_guard_error::solver_guard_error;
};

/// Raised by the decomposed solver when a pruning round keeps every column.
class stalled_pruning : public solver_guard_error {
  public:
    stalled_pruning(std::string what, std::vector<int> survivors)
        : solver_guard_error(std::move(what)), survivors_(std::move(survivors)) {}

    /// Original column indices still alive when the round stalled.
    [[nodiscard]] const std::vector<int> &survivors() const noexcept { return survivors_; }

  private:
    std::vector<int> survivors_;
};

}  // namespace qumf
