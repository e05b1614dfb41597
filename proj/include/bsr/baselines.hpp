#pragma once

#include <Eigen/Dense>

#include "bsr/lp.hpp"

namespace bsr {

// Full-precision baseline: min ||x||_1 subject to phi x = y_fp, solved as an
// LP with epigraph variables t and equality constraints. y_fp must be
// consistent (it is produced by the harness without quantization); an
// infeasible report therefore signals a harness bug and throws.
Eigen::VectorXd oracle_recover(const Eigen::MatrixXd& phi,
                               const Eigen::VectorXd& y_fp,
                               const lp::LpSettings& settings = {});

}  // namespace bsr
