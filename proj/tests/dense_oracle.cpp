#include "dense_oracle.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace oracle {

using cd = std::complex<double>;

Mat pauli(char op) {
  Mat m(2, 2);
  switch (op) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cd(0, -1), cd(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli");
  }
  return m;
}

Mat kron_all(const std::vector<Mat>& factors) {
  Mat out = Mat::Identity(1, 1);
  for (const auto& f : factors) {
    Mat next(out.rows() * f.rows(), out.cols() * f.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
    out = next;
  }
  return out;
}

Mat majorana(std::size_t L, std::size_t k) {
  std::size_t q = k / 2;
  std::vector<Mat> f;
  for (std::size_t j = 0; j < L; ++j) {
    if (j < q)
      f.push_back(pauli('X'));
    else if (j == q)
      f.push_back(pauli(k % 2 == 0 ? 'Z' : 'Y'));
    else
      f.push_back(pauli('I'));
  }
  return kron_all(f);
}

static cd phase_value(scramble::Phase p) {
  static const cd v[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
  return v[p.exponent()];
}

Mat dense(const scramble::MajoranaString& s) {
  std::size_t L = s.num_modes() / 2;
  Mat m = Mat::Identity(std::size_t{1} << L, std::size_t{1} << L);
  std::size_t q = 0;
  s.modes().for_each_set([&](std::size_t k) {
    m = m * majorana(L, k);
    ++q;
  });
  return phase_value(s.phase()) * phase_value(scramble::Phase(scramble::hermitian_exponent(q))) * m;
}

Mat dense(const scramble::PauliString& p) {
  std::vector<Mat> f;
  for (std::size_t q = 0; q < p.num_qubits(); ++q) f.push_back(pauli(p.at(q)));
  return phase_value(p.phase()) * kron_all(f);
}

Mat dense(scramble::Pauli2 p) { return dense(scramble::to_pauli_string(p)); }

Mat braid_unitary(std::size_t L, std::size_t a, std::size_t b) {
  Mat id = Mat::Identity(std::size_t{1} << L, std::size_t{1} << L);
  return (id - majorana(L, a) * majorana(L, b)) / std::sqrt(2.0);
}

Mat stabilizer_state(const std::vector<scramble::MajoranaString>& gens) {
  std::size_t L = gens.front().num_modes() / 2;
  Mat id = Mat::Identity(std::size_t{1} << L, std::size_t{1} << L);
  Mat rho = id;
  for (const auto& g : gens) rho = rho * (id + dense(g)) / 2.0;
  return rho;
}

Mat partial_trace_keep(const Mat& rho, std::size_t L, std::size_t lo, std::size_t hi) {
  // Qubit q (1-based) is bit L - q of the basis index.
  std::vector<std::size_t> keep, drop;
  for (std::size_t q = 1; q <= L; ++q) (q >= lo && q <= hi ? keep : drop).push_back(L - q);
  std::size_t dk = std::size_t{1} << keep.size(), dd = std::size_t{1} << drop.size();
  auto compose = [&](std::size_t a, std::size_t b) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < keep.size(); ++i)
      if ((a >> i) & 1) idx |= std::size_t{1} << keep[i];
    for (std::size_t i = 0; i < drop.size(); ++i)
      if ((b >> i) & 1) idx |= std::size_t{1} << drop[i];
    return idx;
  };
  Mat out = Mat::Zero(dk, dk);
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t a2 = 0; a2 < dk; ++a2)
      for (std::size_t b = 0; b < dd; ++b) out(a, a2) += rho(compose(a, b), compose(a2, b));
  return out;
}

double renyi2_bits(const Mat& rho) { return -std::log2((rho * rho).trace().real()); }

bool close(const Mat& a, const Mat& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).cwiseAbs().maxCoeff() < tol;
}

scramble::Pauli2 identify_pauli2(const Mat& m) {
  static const std::vector<Mat> bare = [] {
    std::vector<Mat> v;
    for (unsigned bits = 0; bits < 16; ++bits) v.push_back(dense(scramble::Pauli2{static_cast<std::uint8_t>(bits), 0}));
    return v;
  }();
  static const cd phases[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
  for (unsigned bits = 0; bits < 16; ++bits) {
    cd c = (bare[bits].adjoint() * m).trace() / 4.0;
    for (unsigned e = 0; e < 4; ++e)
      if (std::abs(c - phases[e]) < 1e-9) {
        scramble::Pauli2 p{static_cast<std::uint8_t>(bits), static_cast<std::uint8_t>(e)};
        if (!close(c * bare[bits], m, 1e-9)) throw std::runtime_error("not a Pauli");
        return p;
      }
  }
  throw std::runtime_error("not a Pauli");
}

const std::vector<CliffordElement>& clifford_group_by_closure() {
  static const std::vector<CliffordElement> group = [] {
    Mat I2 = pauli('I');
    Mat H(2, 2);
    H << 1, 1, 1, -1;
    H /= std::sqrt(2.0);
    Mat S(2, 2);
    S << 1, 0, 0, cd(0, 1);
    Mat cnot = Mat::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
    std::vector<Mat> gens = {kron_all({H, I2}), kron_all({I2, H}), kron_all({S, I2}), kron_all({I2, S}), cnot};
    const scramble::Pauli2 basis[4] = {{0b0001, 0}, {0b0010, 0}, {0b0100, 0}, {0b1000, 0}};
    auto key_of = [](const std::array<scramble::Pauli2, 4>& im) {
      unsigned k = 0;
      for (int c = 0; c < 4; ++c) k = k * 64 + im[c].bits * 4 + im[c].exp;
      return k;
    };
    auto images_of = [&](const Mat& u) {
      std::array<scramble::Pauli2, 4> im;
      for (int c = 0; c < 4; ++c) im[c] = identify_pauli2(u * dense(basis[c]) * u.adjoint());
      return im;
    };
    std::vector<CliffordElement> out;
    std::map<unsigned, std::size_t> seen;
    Mat id = Mat::Identity(4, 4);
    out.push_back({images_of(id), id});
    seen[key_of(out[0].images)] = 0;
    for (std::size_t head = 0; head < out.size(); ++head) {
      for (const auto& g : gens) {
        Mat u = g * out[head].unitary;
        auto im = images_of(u);
        unsigned key = key_of(im);
        if (seen.count(key)) continue;
        seen[key] = out.size();
        out.push_back({im, u});
      }
    }
    return out;
  }();
  return group;
}

}  // namespace oracle
