#include "ruin/finite_chain.hpp"

#include <stdexcept>

namespace ruin {

FiniteChain::FiniteChain(Eigen::MatrixXd transition, std::vector<std::string> labels)
    : p_(std::move(transition)), labels_(std::move(labels)) {
  if (p_.rows() != p_.cols() || p_.rows() == 0)
    throw std::invalid_argument("FiniteChain: matrix must be square and nonempty");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != p_.rows())
    throw std::invalid_argument("FiniteChain: label count mismatch");
  for (int i = 0; i < p_.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < p_.cols(); ++j) {
      const double v = p_(i, j);
      if (v < 0.0 || v > 1.0 + 1e-12)
        throw std::invalid_argument("FiniteChain: entry outside [0,1]");
      row += v;
    }
    if (std::abs(row - 1.0) > 1e-12)
      throw std::invalid_argument("FiniteChain: row does not sum to 1");
  }
}

StateMask mask_of(int n, std::initializer_list<int> members) {
  StateMask m(n, 0);
  for (int i : members) m.at(i) = 1;
  return m;
}

}  // namespace ruin
