#pragma once

#include <stdexcept>
#include <string>

namespace approxinv {

/// A norm or residual came out as inf/NaN.
class NumericOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative routine did not converge within its cap.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pointwise division by a value at or below the division threshold.
class SingularDivision : public std::runtime_error {
public:
    SingularDivision(const std::string& what, std::size_t index)
        : std::runtime_error(what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// A Fourier coefficient inside the division band is at or below the floor.
/// `factor` identifies which operand failed when several are involved (0 if n/a).
class DivisionFloorError : public std::runtime_error {
public:
    DivisionFloorError(const std::string& what, long frequency, int factor = 0)
        : std::runtime_error(what), frequency_(frequency), factor_(factor) {}

    long frequency() const noexcept { return frequency_; }
    int factor() const noexcept { return factor_; }

private:
    long frequency_;
    int factor_;
};

/// Requested Fourier order does not fit below the Nyquist index of the grid.
class AliasingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A singular value needed for inversion is at or below the rank threshold.
class RankDeficient : public std::runtime_error {
public:
    RankDeficient(const std::string& what, std::size_t k)
        : std::runtime_error(what), k_(k) {}

    /// 1-based index of the first offending singular value.
    std::size_t k() const noexcept { return k_; }

private:
    std::size_t k_;
};

/// No cutoff perturbation satisfies both the distance and the zero contract.
class CannotPerturb : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace approxinv
