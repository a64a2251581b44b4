#include "solitonlab/types.hpp"

#include "solitonlab/error.hpp"

#include <cmath>

namespace solitonlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
    case ErrorCode::UnsupportedDerivation: return "UnsupportedDerivation";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SingularityReached: return "SingularityReached";
    case ErrorCode::StiffnessError: return "StiffnessError";
    case ErrorCode::InvalidPerturbation: return "InvalidPerturbation";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::NotInCatalog: return "NotInCatalog";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
  }
  return "Unknown";
}

namespace {

bool symmetric_to(const Mat& m, double rel) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= rel * scale;
}

}  // namespace

SymTensor2::SymTensor2(Mat h) : h_(std::move(h)) {
  if (h_.rows() != h_.cols() || h_.rows() == 0) {
    throw Error(ErrorCode::InvalidInput, "symmetric tensor must be a nonempty square matrix");
  }
  if (!h_.allFinite()) throw Error(ErrorCode::InvalidInput, "symmetric tensor has non-finite entries");
  if (!symmetric_to(h_, 1e-14)) throw Error(ErrorCode::InvalidInput, "tensor is not symmetric");
}

Metric::Metric(Mat g) : g_(std::move(g)) {
  if (g_.rows() != g_.cols() || g_.rows() == 0) {
    throw Error(ErrorCode::InvalidMetric, "metric must be a nonempty square matrix");
  }
  if (!g_.allFinite()) throw Error(ErrorCode::InvalidMetric, "metric has non-finite entries");
  if (!symmetric_to(g_, 1e-14)) throw Error(ErrorCode::InvalidMetric, "metric is not symmetric");
  if (!is_positive_definite(g_)) throw Error(ErrorCode::InvalidMetric, "metric is not positive definite");
}

LinearMap::LinearMap(Mat m, MapRole r) : a(std::move(m)), role(r) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidInput, "linear map must be square");
  if (!a.allFinite()) throw Error(ErrorCode::InvalidInput, "linear map has non-finite entries");
  if (role == MapRole::BasisChange) {
    const double det = a.determinant();
    if (!(std::abs(det) > kTolAlg)) throw Error(ErrorCode::InvalidInput, "basis change is singular");
  }
}

bool is_positive_definite(const Mat& g) {
  if (g.rows() != g.cols() || !g.allFinite()) return false;
  Eigen::LLT<Mat> llt(g);
  return llt.info() == Eigen::Success;
}

std::size_t sym_dim(Eigen::Index n) { return static_cast<std::size_t>(n * (n + 1) / 2); }

Mat sym_basis_element(Eigen::Index n, std::size_t index) {
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j, ++count) {
      if (count != index) continue;
      Mat e = Mat::Zero(n, n);
      if (i == j) {
        e(i, i) = 1.0;
      } else {
        e(i, j) = e(j, i) = M_SQRT1_2;
      }
      return e;
    }
  }
  throw Error(ErrorCode::InvalidInput, "symmetric basis index out of range");
}

Vec sym_coords(const Mat& h) {
  const Eigen::Index n = h.rows();
  Vec out(static_cast<Eigen::Index>(sym_dim(n)));
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      out(c++) = (i == j) ? h(i, i) : M_SQRT1_2 * (h(i, j) + h(j, i));
    }
  }
  return out;
}

Mat sym_from_coords(const Vec& coords, Eigen::Index n) {
  Mat h = Mat::Zero(n, n);
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      if (i == j) {
        h(i, i) = coords(c++);
      } else {
        h(i, j) = h(j, i) = M_SQRT1_2 * coords(c++);
      }
    }
  }
  return h;
}

}  // namespace solitonlab
