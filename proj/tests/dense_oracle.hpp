#pragma once

// Dense-matrix reference implementations used as independent oracles. Built
// directly from Pauli matrices, without the library's own string arithmetic.

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <vector>

#include "scramble/clifford.hpp"
#include "scramble/majorana.hpp"
#include "scramble/pauli.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;

Mat pauli(char op);
Mat kron_all(const std::vector<Mat>& factors);
// g_k (0-based) on L qubits: g_{2i} = X..X Z_i, g_{2i+1} = X..X Y_i, qubit 1 leftmost.
Mat majorana(std::size_t L, std::size_t k);
Mat dense(const scramble::MajoranaString& s);
Mat dense(const scramble::PauliString& p);
Mat dense(scramble::Pauli2 p);
// exp(-pi/4 g_a g_b)
Mat braid_unitary(std::size_t L, std::size_t a, std::size_t b);
Mat stabilizer_state(const std::vector<scramble::MajoranaString>& gens);
Mat partial_trace_keep(const Mat& rho, std::size_t L, std::size_t lo, std::size_t hi);
double renyi2_bits(const Mat& rho);
bool close(const Mat& a, const Mat& b, double tol = 1e-10);

// The two-qubit Clifford group generated by H, S and CNOT, as a map from the
// images of X1, Z1, X2, Z2 to a unitary realizing them.
struct CliffordElement {
  std::array<scramble::Pauli2, 4> images;
  Mat unitary;
};
const std::vector<CliffordElement>& clifford_group_by_closure();
// Identify a dense Hermitian two-qubit Pauli up to sign.
scramble::Pauli2 identify_pauli2(const Mat& m);

}  // namespace oracle
