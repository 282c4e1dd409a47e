#pragma once

#include <string>
#include <utility>
#include <vector>

#include "avq/channel.hpp"
#include "avq/code.hpp"

namespace avq::examples {

/// Binary channel whose legal family the jammer can symmetrize (shifting
/// the jammer state with the input reproduces the same averaged output for
/// any input pair) while the wiretapper always sees |0><0|.
AVWC sym_blind();

/// Binary channel whose legal family ignores the jammer state (a fixed
/// binary-symmetric-style pair of outputs) while the wiretapper receives a
/// perfect classical copy of each input letter.
AVWC robust_copy();

/// Product of the two bundled channels: 4 symbols, 4 jammer states.
AVWC product_channel();

/// Channels shipped with the toolkit, keyed by name.
std::vector<std::pair<std::string, AVWC>> bundled();

/// The shift witness tau(t|a) = 1 iff t = a+1 for sym_blind's legal family.
Eigen::MatrixXd shift_witness();

/// Legal family with W_1(0) = W_2(1) = |0><0| and W_1(1) = W_2(0) = |1><1|;
/// the uniform jammer mixture is input-independent. Wiretap outputs are
/// constant.
AVWC mixable_pair();

/// n=1, J=2 code: send the symbol, measure in the computational basis.
Code basis_code();

/// n=2, J=2 code: codewords 00 and 11, basis measurement that splits the
/// mixed-parity outcomes evenly.
Code repetition_code();

/// The empty-prefix code (n=0, J=1).
Code trivial_code();

}  // namespace avq::examples
