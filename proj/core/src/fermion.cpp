#include "modflow/fermion.hpp"

#include <cctype>

namespace modflow::fermion {

Model::Model(int modes, double lambda) : modes_(modes), lambda_(lambda) {
  if (modes < 1 || modes > kMaxModes)
    throw std::invalid_argument("fermion model needs 1 <= modes <= 10");
  if (!(lambda > 0.0 && lambda < 0.5))
    throw std::invalid_argument("fermion model needs lambda in (0, 1/2)");
}

Matrix Model::generator(int j) const {
  if (j < 1 || j > modes_) throw std::invalid_argument("fermion mode index out of range");
  const long dim = dimension();
  Matrix a = Matrix::Zero(dim, dim);
  // a_j |b> : acts on bit (modes - j) with leading sign string over modes < j.
  const long bit = 1L << (modes_ - j);
  for (long col = 0; col < dim; ++col) {
    if (col & bit) continue;  // step block annihilates an occupied source mode
    int sign = 0;
    for (int p = 1; p < j; ++p)
      if (col & (1L << (modes_ - p))) ++sign;
    // single-mode block [[0,0],[1,0]] maps e_0 -> e_1 on mode j; sigma_3 =
    // diag(-1, 1) contributes -1 per unoccupied leading mode.
    const int unoccupied_leading = (j - 1) - sign;
    a(col | bit, col) = (unoccupied_leading % 2 == 0) ? 1.0 : -1.0;
  }
  return a;
}

Model::Component Model::mul(const Component& a, const Component& b) const {
  return {modes_, a.mat * b.mat};
}

Model::Component Model::adj(const Component& a) const {
  return {modes_, a.mat.adjoint()};
}

Model::Component Model::add(const Component& a, const Component& b) const {
  return {modes_, a.mat + b.mat};
}

Model::Component Model::scale(const Scalar& s, const Component& a) const {
  return {modes_, s * a.mat};
}

Model::Component Model::one() const {
  return {modes_, Matrix::Identity(dimension(), dimension())};
}

std::complex<double> Model::state(const Matrix& x) const {
  std::complex<double> acc = 0.0;
  for (long i = 0; i < dimension(); ++i) {
    const int occ = occupation(i);
    const double w = std::pow(1.0 - lambda_, modes_ - occ) * std::pow(lambda_, occ);
    acc += w * x(i, i);
  }
  return acc;
}

bool Model::is_positive(const Component& a) const {
  if ((a.mat - a.mat.adjoint()).norm() > 1e-9) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -1e-9;
}

Element degree_decompose(const Model& m, const Matrix& x) {
  Element out;
  const long dim = m.dimension();
  if (x.rows() != dim || x.cols() != dim)
    throw std::invalid_argument("degree_decompose: dimension mismatch");
  for (int k = -m.modes(); k <= m.modes(); ++k) {
    Matrix part = Matrix::Zero(dim, dim);
    bool any = false;
    for (long r = 0; r < dim; ++r) {
      for (long c = 0; c < dim; ++c) {
        if (Model::occupation(r) - Model::occupation(c) == k && x(r, c) != 0.0) {
          part(r, c) = x(r, c);
          any = true;
        }
      }
    }
    if (any) out.set(m, k, {m.modes(), std::move(part)});
  }
  return out;
}

Element generator_element(const Model& m, int j) {
  return Element::homogeneous(m, +1, {m.modes(), m.generator(j)});
}

Element parse_word(const Model& m, const std::string& text) {
  Element acc = Element::unit(m);
  std::size_t pos = 0;
  bool any = false;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != 'a') throw ParseError(pos, "expected generator 'a<mode>'");
    ++pos;
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError(pos, "expected mode number");
    int j = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      j = j * 10 + (text[pos] - '0');
      ++pos;
    }
    if (j < 1 || j > m.modes()) throw ParseError(pos, "mode index out of range");
    Element g = generator_element(m, j);
    if (pos < text.size() && text[pos] == '*') {
      ++pos;
      g = adj(m, g);
    }
    acc = mul(m, acc, g);
    any = true;
  }
  if (!any) throw ParseError(0, "empty fermion word");
  return acc;
}

double spectral_trace(const Model& m, const Element& f, long n) {
  if (f.is_zero()) return 0.0;
  if (f.min_degree() != 0 || f.max_degree() != 0)
    throw std::invalid_argument("spectral_trace: degree-zero element required");
  const auto t = m.tau(f.part(0));
  if (std::abs(t.imag()) > 1e-10)
    throw std::invalid_argument("spectral_trace: non-real trace value");
  return std::exp(double(n) * m.beta()) * t.real();
}

}  // namespace modflow::fermion
