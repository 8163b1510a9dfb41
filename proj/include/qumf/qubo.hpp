#pragma once

#include "qumf/preference.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qumf {

/// Binary vector; every element is 0 or 1.
using Assignment = std::vector<std::uint8_t>;

/**
 * Objective z^T Q z + s^T z + offset over binary z.
 *
 * Q is dense, row-major and symmetric. The offset lets reduced problems
 * report energies on the scale of the problem they were derived from.
 */
class Qubo {
  public:
    Qubo() = default;
    /// Throws data_error for non-finite coefficients or Q asymmetric beyond 1e-12.
    Qubo(std::size_t d, std::vector<double> quadratic, std::vector<double> linear, double offset = 0.0);

    [[nodiscard]] std::size_t d() const noexcept { return d_; }
    [[nodiscard]] double quadratic(const std::size_t i, const std::size_t j) const noexcept { return q_[i * d_ + j]; }
    [[nodiscard]] std::span<const double> quadratic_row(const std::size_t i) const noexcept { return {q_.data() + i * d_, d_}; }
    [[nodiscard]] const std::vector<double> &quadratic() const noexcept { return q_; }
    [[nodiscard]] const std::vector<double> &linear() const noexcept { return s_; }
    [[nodiscard]] double offset() const noexcept { return offset_; }

  private:
    std::size_t d_{0};
    std::vector<double> q_;
    std::vector<double> s_;
    double offset_{0.0};
};

/// Penalty weight used throughout unless configured otherwise.
inline constexpr double default_lambda = 1.1;

/// Q = lambda * P^T P, s = 1 - 2 lambda P^T 1, offset 0. Throws data_error unless lambda > 0.
[[nodiscard]] Qubo build_mmf_qubo(const PreferenceMatrix &P, double lambda);

/// z^T Q z + s^T z + offset; throws dimension_mismatch when sizes differ.
[[nodiscard]] double energy(const Qubo &q, std::span<const std::uint8_t> z);

/// Forced-variable reduction of a set-cover QUBO.
struct Reduction {
    std::vector<int> forced_ones;  ///< parent variables fixed to 1
    std::vector<int> kept;         ///< reduced variable k is parent variable kept[k]
    Qubo reduced;

    /// Parent-sized assignment: forced ones set, kept variables taken from `reduced_bits`.
    [[nodiscard]] Assignment extend(std::span<const std::uint8_t> reduced_bits) const;
};

/**
 * Fixes to 1 every model that has a nonempty consensus set, shares no point
 * with any other model, and cannot raise the energy when selected. With
 * lambda > 1 the last condition always holds for a nonempty consensus.
 *
 * The fixed variables are substituted into the objective, so the reduced
 * optimum plus the forced ones equals the parent optimum.
 */
[[nodiscard]] Reduction reduce_forced(const PreferenceMatrix &P, const Qubo &q);

namespace reference {

/// Builds the Gram matrix serially; kept to check the parallel kernel.
[[nodiscard]] Qubo build_mmf_qubo(const PreferenceMatrix &P, double lambda);

}  // namespace reference

}  // namespace qumf
