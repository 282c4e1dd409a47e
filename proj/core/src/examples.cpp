#include "avq/examples.hpp"

namespace avq::examples {

namespace {

DensityOp ket0() { return DensityOp::basis_projector(2, 0); }
DensityOp ket1() { return DensityOp::basis_projector(2, 1); }

CQChannel binary(DensityOp s0, DensityOp s1) {
  return CQChannel({"0", "1"}, {std::move(s0), std::move(s1)});
}

}  // namespace

AVWC sym_blind() {
  std::vector<CQChannel> legal{
      binary(ket0(), DensityOp::maximally_mixed(2)),
      binary(DensityOp::maximally_mixed(2), ket1()),
  };
  std::vector<CQChannel> wiretap{
      binary(ket0(), ket0()),
      binary(ket0(), ket0()),
  };
  return AVWC("sym-blind", {"0", "1"}, {"1", "2"}, std::move(legal), std::move(wiretap));
}

AVWC robust_copy() {
  const DensityOp heavy0 = DensityOp::diagonal({0.75, 0.25});
  const DensityOp heavy1 = DensityOp::diagonal({0.25, 0.75});
  std::vector<CQChannel> legal{binary(heavy0, heavy1), binary(heavy0, heavy1)};
  std::vector<CQChannel> wiretap{binary(ket0(), ket1()), binary(ket0(), ket1())};
  return AVWC("robust-copy", {"0", "1"}, {"1", "2"}, std::move(legal), std::move(wiretap));
}

AVWC product_channel() { return product_avwc(sym_blind(), robust_copy()); }

std::vector<std::pair<std::string, AVWC>> bundled() {
  std::vector<std::pair<std::string, AVWC>> out;
  out.emplace_back("sym-blind", sym_blind());
  out.emplace_back("robust-copy", robust_copy());
  out.emplace_back("sym-blind x robust-copy", product_channel());
  return out;
}

Eigen::MatrixXd shift_witness() {
  Eigen::MatrixXd tau = Eigen::MatrixXd::Zero(2, 2);
  tau(0, 0) = 1.0;  // input 0 -> jammer state 1
  tau(1, 1) = 1.0;  // input 1 -> jammer state 2
  return tau;
}

AVWC mixable_pair() {
  std::vector<CQChannel> legal{binary(ket0(), ket1()), binary(ket1(), ket0())};
  std::vector<CQChannel> wiretap{binary(ket0(), ket0()), binary(ket0(), ket0())};
  return AVWC("mixable-pair", {"0", "1"}, {"1", "2"}, std::move(legal), std::move(wiretap));
}

Code basis_code() {
  Eigen::MatrixXd enc = Eigen::MatrixXd::Identity(2, 2);
  std::vector<CMatrix> dec{ket0().mat(), ket1().mat()};
  return Code(1, 2, std::move(enc), std::move(dec), "basis code");
}

Code repetition_code() {
  Eigen::MatrixXd enc = Eigen::MatrixXd::Zero(2, 4);
  enc(0, 0) = 1.0;  // codeword 00
  enc(1, 3) = 1.0;  // codeword 11
  CMatrix d0 = CMatrix::Zero(4, 4);
  CMatrix d1 = CMatrix::Zero(4, 4);
  d0(0, 0) = 1.0;
  d1(3, 3) = 1.0;
  d0(1, 1) = d0(2, 2) = 0.5;
  d1(1, 1) = d1(2, 2) = 0.5;
  return Code(2, 2, std::move(enc), {std::move(d0), std::move(d1)}, "repetition code");
}

Code trivial_code() {
  Eigen::MatrixXd enc = Eigen::MatrixXd::Ones(1, 1);
  return Code(0, 1, std::move(enc), {CMatrix::Identity(1, 1)}, "trivial code");
}

}  // namespace avq::examples
