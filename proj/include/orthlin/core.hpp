#ifndef ORTHLIN_CORE_HPP
#define ORTHLIN_CORE_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace orthlin {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Failure categories; the CLI maps them onto exit codes.
enum class ErrorKind {
    invalid_input,       ///< malformed or unsupported input
    dimension_mismatch,  ///< block sizes or degrees do not fit together
    singular,            ///< regularity required but a singular P or pencil was given
    internal             ///< a numerical invariant failed unexpectedly
};

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) throw Error(kind, msg);
}

/// Block (i, j) of a matrix partitioned into n x n blocks; indices are 0-based.
template <class Derived>
auto block_of(Eigen::MatrixBase<Derived>& m, Eigen::Index i, Eigen::Index j, Eigen::Index n) {
    return m.block(i * n, j * n, n, n);
}

template <class Derived>
auto block_of(const Eigen::MatrixBase<Derived>& m, Eigen::Index i, Eigen::Index j, Eigen::Index n) {
    return m.block(i * n, j * n, n, n);
}

/// Largest singular value.
template <class Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0.0;
    using Plain = typename Derived::PlainObject;
    Eigen::JacobiSVD<Plain> svd(m.eval());
    return svd.singularValues()(0);
}

}  // namespace orthlin

#endif
