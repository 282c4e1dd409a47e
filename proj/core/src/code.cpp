#include "avq/code.hpp"

#include <cmath>
#include <sstream>

#include "avq/enumeration.hpp"

namespace avq {

namespace {

std::string where(const std::string& context) {
  return context.empty() ? std::string{"code"} : context;
}

void check_encoder(const Eigen::MatrixXd& encoder, int J, long long cols,
                   const std::string& context) {
  if (encoder.rows() != J || encoder.cols() != cols) {
    throw_invariant(where(context) + ": encoder is " + std::to_string(encoder.rows()) + "x" +
                    std::to_string(encoder.cols()) + ", expected " + std::to_string(J) + "x" +
                    std::to_string(cols));
  }
  for (Eigen::Index j = 0; j < encoder.rows(); ++j) {
    if (encoder.row(j).minCoeff() < -tol::simplex_neg) {
      throw_invariant(where(context) + ": encoder row " + std::to_string(j) +
                      " has a negative entry");
    }
    const double sum = encoder.row(j).sum();
    if (std::abs(sum - 1.0) > tol::simplex_sum) {
      std::ostringstream os;
      os << where(context) << ": encoder row " << j << " sums to " << sum << ", expected 1";
      throw_invariant(os.str());
    }
  }
}

void check_decoders(const std::vector<CMatrix>& decoders, int J, const std::string& context) {
  if (static_cast<int>(decoders.size()) != J) {
    throw_invariant(where(context) + ": " + std::to_string(decoders.size()) + " decoders for " +
                    std::to_string(J) + " messages");
  }
  const Eigen::Index d = decoders.front().rows();
  for (size_t j = 0; j < decoders.size(); ++j) {
    const CMatrix& m = decoders[j];
    if (m.rows() != d || m.cols() != d) {
      throw_invariant(where(context) + ": decoder " + std::to_string(j) +
                      " has inconsistent dimensions");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::psd) {
      std::ostringstream os;
      os << where(context) << ": decoder " << j << " is not PSD (min eigenvalue "
         << es.eigenvalues().minCoeff() << ")";
      throw_invariant(os.str());
    }
  }
  verify_povm(decoders, context);
}

}  // namespace

void verify_povm(const std::vector<CMatrix>& decoders, const std::string& context) {
  const Eigen::Index d = decoders.front().rows();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& m : decoders) sum += m;
  const double dev = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > tol::povm_complete) {
    std::ostringstream os;
    os << where(context) << ": decoders do not partition the identity (deviation " << dev << ")";
    throw_invariant(os.str());
  }
}

Code::Code(int n_, int num_symbols_, Eigen::MatrixXd encoder_, std::vector<CMatrix> decoders_,
           const std::string& context)
    : n(n_), J(static_cast<int>(encoder_.rows())), num_symbols(num_symbols_),
      encoder(std::move(encoder_)), decoders(std::move(decoders_)) {
  if (n < 0) throw_invariant(where(context) + ": negative blocklength");
  if (num_symbols < 1) throw_invariant(where(context) + ": alphabet must be nonempty");
  if (J < 1) throw_invariant(where(context) + ": need at least one message");
  check_encoder(encoder, J, pow_ll(num_symbols, n), context);
  if (decoders.empty()) throw_invariant(where(context) + ": no decoders");
  check_decoders(decoders, J, context);
}

bool Code::has_deterministic_encoder() const {
  for (Eigen::Index j = 0; j < encoder.rows(); ++j) {
    for (Eigen::Index a = 0; a < encoder.cols(); ++a) {
      const double v = encoder(j, a);
      if (v != 0.0 && std::abs(v - 1.0) > 1e-12) return false;
    }
  }
  return true;
}

long long Code::codeword_index(int j) const {
  for (Eigen::Index a = 0; a < encoder.cols(); ++a) {
    if (std::abs(encoder(j, a) - 1.0) <= 1e-12) return a;
  }
  throw_invariant("code: row " + std::to_string(j) + " has no deterministic codeword");
}

CorrCode::CorrCode(int n_, int num_symbols_, int x_arity_, int y_arity_,
                   std::vector<Eigen::MatrixXd> encoders_,
                   std::vector<std::vector<CMatrix>> decoders_, const std::string& context)
    : n(n_), J(0), num_symbols(num_symbols_), x_arity(x_arity_), y_arity(y_arity_),
      encoders(std::move(encoders_)), decoders(std::move(decoders_)) {
  if (n < 0) throw_invariant(where(context) + ": negative blocklength");
  if (encoders.empty() || decoders.empty()) {
    throw_invariant(where(context) + ": encoder/decoder maps must be nonempty");
  }
  const long long nx = pow_ll(x_arity, n);
  const long long ny = pow_ll(y_arity, n);
  if (static_cast<long long>(encoders.size()) != nx) {
    throw_invariant(where(context) + ": " + std::to_string(encoders.size()) +
                    " encoders, expected one per x-sequence (" + std::to_string(nx) + ")");
  }
  if (static_cast<long long>(decoders.size()) != ny) {
    throw_invariant(where(context) + ": " + std::to_string(decoders.size()) +
                    " decoder sets, expected one per y-sequence (" + std::to_string(ny) + ")");
  }
  J = static_cast<int>(encoders.front().rows());
  const long long cols = pow_ll(num_symbols, n);
  for (size_t i = 0; i < encoders.size(); ++i) {
    check_encoder(encoders[i], J, cols, where(context) + " encoder[" + std::to_string(i) + "]");
  }
  for (size_t i = 0; i < decoders.size(); ++i) {
    check_decoders(decoders[i], J, where(context) + " decoders[" + std::to_string(i) + "]");
  }
}

}  // namespace avq
