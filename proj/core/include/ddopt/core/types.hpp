#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace ddopt {

using Point = Eigen::VectorXd;
using Sample = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Invalid numeric parameter or violated precondition.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operation not available for the given problem family or loss/model pair.
class UnsupportedOperation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// An equilibrium could not be certified; carries the best residual reached.
class NoCertificate : public std::runtime_error {
public:
    NoCertificate(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}

    double best_residual() const { return best_residual_; }

private:
    double best_residual_;
};

inline bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace ddopt
