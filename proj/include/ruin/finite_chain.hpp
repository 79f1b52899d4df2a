#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ruin {

/// Row-stochastic transition matrix with optional state labels.
class FiniteChain {
 public:
  explicit FiniteChain(Eigen::MatrixXd transition, std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(p_.rows()); }
  const Eigen::MatrixXd& transition() const { return p_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  Eigen::MatrixXd p_;
  std::vector<std::string> labels_;
};

/// Membership mask over chain states (1 = in the set).
using StateMask = std::vector<std::uint8_t>;

StateMask mask_of(int n, std::initializer_list<int> members);

}  // namespace ruin
