#include "twistlab/tensor.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <json.hpp>

namespace twistlab {

Mat PositiveSpectral::matrix() const {
  return eigenbasis * eigenvalues.cast<Cplx>().asDiagonal() * eigenbasis.adjoint();
}

PositiveSpectral PositiveSpectral::identity(Eigen::Index d) {
  PositiveSpectral s;
  s.eigenvalues = RVec::Ones(d);
  s.eigenbasis = Mat::Identity(d, d);
  return s;
}

PositiveSpectral PositiveSpectral::from_diagonal(const RVec& lambdas) {
  for (Eigen::Index i = 0; i < lambdas.size(); ++i)
    if (!(lambdas[i] > 0.0))
      throw std::invalid_argument("from_diagonal: eigenvalue " + std::to_string(i) +
                                  " is not strictly positive");
  PositiveSpectral s;
  s.eigenvalues = lambdas;
  s.eigenbasis = Mat::Identity(lambdas.size(), lambdas.size());
  // keep the ascending-order invariant
  std::vector<Eigen::Index> idx(lambdas.size());
  for (Eigen::Index i = 0; i < lambdas.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](Eigen::Index a, Eigen::Index b) { return lambdas[a] < lambdas[b]; });
  PositiveSpectral out;
  out.eigenvalues = RVec(lambdas.size());
  out.eigenbasis = Mat::Zero(lambdas.size(), lambdas.size());
  for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
    out.eigenvalues[i] = lambdas[idx[i]];
    out.eigenbasis(idx[i], i) = 1.0;
  }
  return out;
}

Mat identity(Eigen::Index d) { return Mat::Identity(d, d); }

void check_finite(const Mat& a, const char* what) {
  if (!a.allFinite())
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

void check_finite(const Vec& v, const char* what) {
  if (!v.allFinite())
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

Mat kron_pow(const Mat& a, int n) {
  if (n < 0) throw std::invalid_argument("kron_pow: negative power");
  Mat out = Mat::Identity(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, a);
  return out;
}

Mat leg_embed(const Mat& t, int k, int n, int d) {
  if (t.rows() != Eigen::Index(d) * d || t.cols() != Eigen::Index(d) * d)
    throw std::invalid_argument("leg_embed: operator is not d^2 x d^2");
  if (k < 1 || k > n - 1)
    throw std::out_of_range("leg_embed: leg index " + std::to_string(k) +
                            " out of range for n=" + std::to_string(n));
  const Eigen::Index left = Eigen::Index(std::pow(double(d), k - 1) + 0.5);
  const Eigen::Index right = Eigen::Index(std::pow(double(d), n - k - 1) + 0.5);
  return kron(kron(Mat::Identity(left, left), t), Mat::Identity(right, right));
}

Mat reversal_permutation(int n, int d) {
  const Eigen::Index dim = Eigen::Index(std::pow(double(d), n) + 0.5);
  Mat y = Mat::Zero(dim, dim);
  std::vector<int> digits(std::max(n, 1), 0);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index rest = col;
    for (int p = n - 1; p >= 0; --p) {
      digits[p] = int(rest % d);
      rest /= d;
    }
    Eigen::Index row = 0;
    for (int p = n - 1; p >= 0; --p) row = row * d + digits[p];
    y(row, col) = 1.0;
  }
  return y;
}

double op_norm(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()[0];
}

double trace_norm(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues().sum();
}

Spectrum herm_eig(const Mat& a) {
  check_finite(a, "herm_eig");
  const double dev = op_norm(Mat(a - a.adjoint()));
  if (dev > tol::kSelfAdjoint * (1.0 + op_norm(a)))
    throw std::invalid_argument("herm_eig: input is not self-adjoint (residual " +
                                std::to_string(dev) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("herm_eig: eigensolver failed");
  Spectrum s;
  s.eigenvalues = solver.eigenvalues();
  s.eigenbasis = solver.eigenvectors();
  return s;
}

PositiveSpectral herm_eig_positive(const Mat& a) {
  Spectrum s = herm_eig(a);
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    if (!(s.eigenvalues[i] > 0.0))
      throw std::invalid_argument("herm_eig_positive: nonpositive eigenvalue " +
                                  std::to_string(s.eigenvalues[i]));
  return PositiveSpectral{s.eigenvalues, s.eigenbasis};
}

Mat spectral_power(const PositiveSpectral& d, Cplx z) {
  Vec powers(d.dim());
  for (Eigen::Index i = 0; i < d.dim(); ++i)
    powers[i] = std::exp(z * std::log(d.eigenvalues[i]));
  return d.eigenbasis * powers.asDiagonal() * d.eigenbasis.adjoint();
}

std::string matrix_to_json(const Mat& a) {
  nlohmann::ordered_json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  auto data = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      data.push_back({a(i, k).real(), a(i, k).imag()});
  j["data"] = std::move(data);
  return j.dump();
}

Mat matrix_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (Eigen::Index(data.size()) != rows * cols)
    throw std::invalid_argument("matrix_from_json: data length does not match rows*cols");
  Mat a(rows, cols);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k, ++idx)
      a(i, k) = Cplx(data[idx].at(0).get<double>(), data[idx].at(1).get<double>());
  check_finite(a, "matrix_from_json");
  return a;
}

Mat load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_matrix: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return matrix_from_json(ss.str());
}

void save_matrix(const std::string& path, const Mat& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_matrix: cannot open " + path);
  out << matrix_to_json(a) << "\n";
}

}  // namespace twistlab
