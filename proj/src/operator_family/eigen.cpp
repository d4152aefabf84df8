#include "spectraflow/operator_family.hpp"

namespace spectraflow::family {

EigenSystem eigen_decompose(const Mat &t) {
  if (t.rows() != t.cols())
    throw Error("eigen_decompose: matrix is not square");
  if (t.rows() == 0)
    throw Error("eigen_decompose: empty matrix");
  if (symmetry_defect(t) > 1e-12)
    throw Error("eigen_decompose: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> solver(t);
  if (solver.info() != Eigen::Success)
    throw Error("eigen_decompose: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<EigenSystem> sample_eigensystems(const OperatorFamily &fam, std::size_t samples) {
  const auto grid = parameter_grid(samples);
  std::vector<EigenSystem> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { out[i] = eigen_decompose(fam.evaluate(grid[i])); });
  return out;
}

} // namespace spectraflow::family
